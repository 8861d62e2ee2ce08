use std::collections::HashMap;
use std::sync::Arc;

use crate::{Element, Error, Side, Sign, SignedSet, Sijection};

/// The enumerative matcher: inside each side, positive and negative members
/// are paired off in canonical order; the survivors of both sides (all of
/// one sign) are then matched in canonical order.
///
/// Fails if the signed sizes differ.
pub fn matching(dom: SignedSet, cod: SignedSet, name: impl Into<String>) -> Result<Sijection, Error> {
    let (ds, cs) = (dom.size(), cod.size());
    if ds != cs {
        return Err(Error::SizeMismatch(ds, cs));
    }
    let table = Arc::new(build_table(&dom, &cod));
    Ok(Sijection::new(dom, cod, name, move |side, e| {
        table
            .get(&(side, e.clone()))
            .cloned()
            .unwrap_or_else(|| panic!("{e:?} is not a member of the {side:?} side"))
    }))
}

fn sorted(set: &SignedSet, sign: Sign) -> Vec<Element> {
    let mut v: Vec<(Vec<u8>, Element)> = set
        .iter()
        .filter(|(_, s)| *s == sign)
        .map(|(e, _)| (e.canonical_encode(), e))
        .collect();
    v.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    v.into_iter().map(|(_, e)| e).collect()
}

type Table = HashMap<(Side, Element), (Side, Element)>;

fn build_table(dom: &SignedSet, cod: &SignedSet) -> Table {
    let mut table = HashMap::new();
    let mut survivors = Vec::new();
    for (side, set) in [(Side::Dom, dom), (Side::Cod, cod)] {
        let plus = sorted(set, Sign::Plus);
        let minus = sorted(set, Sign::Minus);
        let k = plus.len().min(minus.len());
        for (p, m) in plus.iter().zip(&minus) {
            table.insert((side, p.clone()), (side, m.clone()));
            table.insert((side, m.clone()), (side, p.clone()));
        }
        let rest = if plus.len() > k { plus[k..].to_vec() } else { minus[k..].to_vec() };
        survivors.push(rest);
    }
    let cod_rest = survivors.pop().unwrap();
    let dom_rest = survivors.pop().unwrap();
    debug_assert_eq!(dom_rest.len(), cod_rest.len());
    for (d, c) in dom_rest.into_iter().zip(cod_rest) {
        table.insert((Side::Dom, d.clone()), (Side::Cod, c.clone()));
        table.insert((Side::Cod, c), (Side::Dom, d));
    }
    table
}
