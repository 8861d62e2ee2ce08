use sijection::{Element, Error};
use subsets::format_bset;

use crate::families::{Asm, Dpp};
use crate::problems::Bijection;

/// Which of the two bijections a table lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Problem {
    /// `DPP_{n-1} × B_{n,1} × ASM_{n,i} → DPP_{n-1} × ASM_{n,1} × B_{n,i}`
    Main,
    /// `DPP_{n-1} × ASM_{n,i} → ASM_{n,1} × DPP_{n,i}`
    AsmDpp,
}

/// The full correspondence of a checked bijection, in the enumeration order
/// of its domain.
#[derive(Clone, Debug)]
pub struct Table {
    pub problem: Problem,
    pub rows: Vec<(Element, Element)>,
}

impl Table {
    /// Fails with the reason if the bijection is not total and injective.
    pub fn new(problem: Problem, bij: &Bijection) -> Result<Table, Error> {
        bij.check().map_err(Error::InvalidParameter)?;
        Ok(Table { problem, rows: bij.pairs() })
    }

    /// One line per pair, e.g. `(∅, 12345, [[0,1,0],[1,0,0],[0,0,1]]) ↔ (∅, [[1,0,0],[0,1,0],[0,0,1]], 23457)`.
    pub fn lines(&self) -> Vec<String> {
        self.rows.iter().map(|(l, r)| format!("{} ↔ {}", self.left(l), self.right(r))).collect()
    }

    fn left(&self, e: &Element) -> String {
        match self.problem {
            Problem::Main => {
                let (d, ba) = e.pair_parts();
                let (b, a) = ba.pair_parts();
                format!("({}, {}, {})", Dpp::from_element(d), format_bset(b.ints()), Asm::from_element(a))
            }
            Problem::AsmDpp => {
                let (d, a) = e.pair_parts();
                format!("({}, {})", Dpp::from_element(d), Asm::from_element(a))
            }
        }
    }

    fn right(&self, e: &Element) -> String {
        match self.problem {
            Problem::Main => {
                let (d, ab) = e.pair_parts();
                let (a, b) = ab.pair_parts();
                format!("({}, {}, {})", Dpp::from_element(d), Asm::from_element(a), format_bset(b.ints()))
            }
            Problem::AsmDpp => {
                let (a, d) = e.pair_parts();
                format!("({}, {})", Asm::from_element(a), Dpp::from_element(d))
            }
        }
    }
}
