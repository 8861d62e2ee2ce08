//! Counting, table emission, verification targets and the acceptance
//! criteria behind the `asmdpp` binary.

pub mod criteria;

use std::time::{Duration, Instant};

use asm_dpp::{
    asm_formula, asm_recurrence_with, asm_refined_formula, asm_to_dpp_with, enumerate_asm, enumerate_asm_i,
    enumerate_dpp, enumerate_dpp_i, from_det, lgv_dpp_sij, main_bijection_with, mti_sij, Bijection, Problem, Table,
};
use patterns::Impl;
use serde::Serialize;
use serde_json::{json, Value};
use sijection::{Element, Report, Sign, SignedSet, Sijection};
use subsets::{binomial, bset};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags or parameters; exit code 2.
    #[error("usage: {0}")]
    Usage(String),
    /// A check ran and failed; exit code 1.
    #[error("verification failed: {0}")]
    Failed(String),
    #[error("time budget of {0:?} exhausted")]
    Budget(Duration),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl From<sijection::Error> for CliError {
    fn from(e: sijection::Error) -> CliError {
        CliError::Usage(e.to_string())
    }
}

/// Wall-clock allowance for a run.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    start: Instant,
    limit: Duration,
}

impl Budget {
    pub fn new(seconds: f64) -> Result<Budget, CliError> {
        if seconds.is_nan() || seconds <= 0.0 || seconds.is_infinite() {
            return Err(CliError::Usage(format!("budget must be positive, got {seconds}")));
        }
        Ok(Budget { start: Instant::now(), limit: Duration::from_secs_f64(seconds) })
    }

    pub fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }

    pub fn check(&self) -> Result<(), CliError> {
        if self.start.elapsed() > self.limit {
            Err(CliError::Budget(self.limit))
        } else {
            Ok(())
        }
    }
}

pub fn check_ni(n: usize, i: usize) -> Result<(), CliError> {
    if n == 0 || i == 0 || i > n {
        return Err(CliError::Usage(format!("need 1 <= i <= n, got n = {n}, i = {i}")));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct Counts {
    pub n: usize,
    pub asm: usize,
    pub asm_i: Vec<usize>,
    pub dpp: usize,
    pub dpp_i: Vec<usize>,
    pub b: usize,
    pub b_i: Vec<usize>,
    pub asm_formula: u128,
    pub asm_i_formula: Vec<u128>,
    pub b_formula: i64,
    pub ok: bool,
}

/// Brute-force counts with the closed formulas alongside.
pub fn counts(n: usize) -> Result<Counts, CliError> {
    if n == 0 {
        return Err(CliError::Usage("n must be at least 1".into()));
    }
    let nn = n as i64;
    let asm = enumerate_asm(n).len();
    let asm_i: Vec<usize> = (1..=n).map(|i| enumerate_asm_i(n, i).len()).collect();
    let dpp = enumerate_dpp(n).len();
    let dpp_i: Vec<usize> = (1..=n).map(|i| enumerate_dpp_i(n, i).len()).collect();
    let b_i: Vec<usize> = (1..=nn).map(|i| bset(nn, i).elements().len()).collect();
    let b = b_i.iter().sum();
    let asm_formula = asm_formula(n as u64);
    let asm_i_formula: Vec<u128> = (1..=n as u64).map(|i| asm_refined_formula(n as u64, i)).collect();
    let b_formula = binomial(3 * nn - 2, 2 * nn - 1);
    let ok = asm as u128 == asm_formula
        && asm_i.iter().zip(&asm_i_formula).all(|(&a, &f)| a as u128 == f)
        && asm_i == dpp_i
        && asm == dpp
        && b as i64 == b_formula;
    Ok(Counts { n, asm, asm_i, dpp, dpp_i, b, b_i, asm_formula, asm_i_formula, b_formula, ok })
}

fn tuple(xs: &[usize]) -> String {
    format!("({})", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

impl Counts {
    pub fn lines(&self) -> Vec<String> {
        vec![
            format!("|ASM_n| = {}", self.asm),
            format!("|ASM_n,i| = {}", tuple(&self.asm_i)),
            format!("|DPP_n| = {}", self.dpp),
            format!("|DPP_n,i| = {}", tuple(&self.dpp_i)),
            format!("|B_n| = {}", self.b),
            format!("|B_n,i| = {}", tuple(&self.b_i)),
            format!(
                "formulas: {} {} {} ({})",
                self.asm_formula,
                format!("({})", self.asm_i_formula.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
                self.b_formula,
                if self.ok { "agree" } else { "DISAGREE" }
            ),
        ]
    }
}

pub fn bijection(problem: Problem, n: usize, i: usize, x: i64, imp: Impl) -> Result<Bijection, CliError> {
    check_ni(n, i)?;
    Ok(match problem {
        Problem::Main => main_bijection_with(n, i, x, imp)?,
        Problem::AsmDpp => asm_to_dpp_with(n, i, x, imp)?,
    })
}

/// The checked correspondence; a bijection that fails its check is a
/// verification failure.
pub fn table(problem: Problem, n: usize, i: usize, x: i64, imp: Impl) -> Result<Table, CliError> {
    let bij = bijection(problem, n, i, x, imp)?;
    Table::new(problem, &bij).map_err(|e| CliError::Failed(e.to_string()))
}

pub fn table_json(t: &Table, n: usize, i: usize, x: i64) -> Value {
    let problem = match t.problem {
        Problem::Main => "main",
        Problem::AsmDpp => "asmdpp",
    };
    json!({
        "problem": problem,
        "n": n,
        "i": i,
        "x": x,
        "rows": t.rows.iter().map(|(l, r)| json!({ "left": l.to_json(), "right": r.to_json() })).collect::<Vec<_>>(),
    })
}

/// Things `verify` can check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    /// α over a, b, c in [-3, 3]
    Alpha,
    /// Chu–Vandermonde for 1 <= a <= 4, 0 <= b, c <= 4
    Cv,
    /// the B recurrence for n <= 3
    Brec,
    /// det_product and Cramer toys up to 3 × 3
    Det,
    /// E/F vanishing and the preparatory normal sijections, n <= 3
    Elementary,
    /// rotate_mt for n <= 3, entries in [0, 3]
    Rotate,
    /// MT_i(1..n) for i <= n
    Mti,
    /// the ASM recurrence at --n
    Asmrec,
    /// det W ⇒ DPP_{n-1} at --n
    Lgv,
    /// det P ⇒ ±DPP_{n-1} at --n
    Fromdet,
    /// the first bijection at --n, every i
    Main,
    /// the second bijection at --n, every i
    Asmdpp,
    /// a deliberately broken sijection, to exercise the failure path
    Corrupted,
}

/// A run of verifications: reports in order, or the first failure.
#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub target: String,
    pub ok: bool,
    pub checked: usize,
    pub failure: Option<Report>,
    pub note: Option<String>,
}

fn run_reports(target: &str, sijs: impl IntoIterator<Item = Result<Sijection, CliError>>, budget: &Budget) -> Result<Outcome, CliError> {
    let mut checked = 0;
    for s in sijs {
        budget.check()?;
        let r = s?.verify();
        checked += r.checked;
        if !r.ok {
            return Ok(Outcome { target: target.into(), ok: false, checked, failure: Some(r), note: None });
        }
    }
    Ok(Outcome { target: target.into(), ok: true, checked, failure: None, note: None })
}

fn run_bijections(target: &str, bijs: impl IntoIterator<Item = Result<Bijection, CliError>>, budget: &Budget) -> Result<Outcome, CliError> {
    let mut checked = 0;
    for b in bijs {
        budget.check()?;
        let b = b?;
        let r = b.sijection().verify();
        checked += r.checked;
        let note = match (&r.ok, b.check()) {
            (true, Ok(_)) => continue,
            (_, Err(e)) => Some(e),
            (false, Ok(_)) => None,
        };
        return Ok(Outcome { target: target.into(), ok: false, checked, failure: (!r.ok).then_some(r), note });
    }
    Ok(Outcome { target: target.into(), ok: true, checked, failure: None, note: None })
}

/// The involution fixing one positive point and sending it to itself:
/// fails the sign-crossing test.
pub fn corrupted() -> Sijection {
    let a = SignedSet::singleton(vec![1], Sign::Plus);
    Sijection::new(a.clone(), a, "corrupted", |side, e: &Element| (side, e.clone()))
}

pub fn verify(target: Target, n: usize, x: i64, imp: Impl, budget: &Budget) -> Result<Outcome, CliError> {
    let name = format!("{target:?}").to_lowercase();
    let need_n = |lo: usize| if n < lo { Err(CliError::Usage(format!("{name} needs n >= {lo}"))) } else { Ok(()) };
    match target {
        Target::Alpha => run_reports(&name, criteria::alpha_grid().into_iter().map(Ok), budget),
        Target::Cv => run_reports(&name, criteria::cv_grid(), budget),
        Target::Brec => run_reports(&name, criteria::brec_grid(), budget),
        Target::Det => run_reports(&name, criteria::det_toys(), budget),
        Target::Elementary => run_reports(&name, criteria::elementary_grid(), budget),
        Target::Rotate => run_reports(&name, criteria::rotate_grid(x, imp), budget),
        Target::Mti => {
            need_n(1)?;
            let k: Vec<i64> = (1..=n as i64).collect();
            run_reports(&name, (1..=n).map(|i| mti_sij(&k, i).map_err(CliError::from)), budget)
        }
        Target::Asmrec => {
            need_n(1)?;
            run_reports(&name, (1..=n).map(|i| asm_recurrence_with(n, i, x, imp).map_err(CliError::from)), budget)
        }
        Target::Lgv => {
            need_n(2)?;
            run_reports(&name, [Ok(lgv_dpp_sij(n))], budget)
        }
        Target::Fromdet => {
            need_n(2)?;
            run_reports(&name, [from_det(n).map_err(CliError::from)], budget)
        }
        Target::Main => {
            need_n(1)?;
            run_bijections(&name, (1..=n).map(|i| bijection(Problem::Main, n, i, x, imp)), budget)
        }
        Target::Asmdpp => {
            need_n(1)?;
            run_bijections(&name, (1..=n).map(|i| bijection(Problem::AsmDpp, n, i, x, imp)), budget)
        }
        Target::Corrupted => run_reports(&name, [Ok(corrupted())], budget),
    }
}
