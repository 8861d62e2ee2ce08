use std::fmt;
use std::ops::{Mul, Neg};
use std::sync::Arc;

use serde_json::{json, Value};

use crate::Error;

/// Sign of a member of a signed set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^n`.
    pub fn parity(n: i64) -> Sign {
        if n.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A member of a [`SignedSet`](crate::SignedSet), tagged with the path that
/// produced it.
///
/// `Left`/`Right` mark the two halves of a binary disjoint union, `Pair` a
/// product, and `At(t, e)` the member `e` of the fiber over index `t` in an
/// indexed union.  Opposite sets do not tag their members.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Int(Arc<[i64]>),
    Left(Arc<Element>),
    Right(Arc<Element>),
    Pair(Arc<Element>, Arc<Element>),
    At(Arc<Element>, Arc<Element>),
}

impl Element {
    pub fn int(values: impl Into<Vec<i64>>) -> Element {
        Element::Int(values.into().into())
    }

    pub fn unit() -> Element {
        Element::Int(Arc::from([]))
    }

    pub fn left(e: Element) -> Element {
        Element::Left(Arc::new(e))
    }

    pub fn right(e: Element) -> Element {
        Element::Right(Arc::new(e))
    }

    pub fn pair(a: Element, b: Element) -> Element {
        Element::Pair(Arc::new(a), Arc::new(b))
    }

    pub fn at(t: Element, e: Element) -> Element {
        Element::At(Arc::new(t), Arc::new(e))
    }

    /// Right-nested pairs, matching [`SignedSet::product_all`](crate::SignedSet::product_all).
    pub fn tuple(parts: Vec<Element>) -> Element {
        let mut it = parts.into_iter().rev();
        match it.next() {
            None => Element::unit(),
            Some(last) => it.fold(last, |acc, e| Element::pair(e, acc)),
        }
    }

    /// Inverse of [`Element::tuple`] for a known arity.
    pub fn untuple(&self, arity: usize) -> Option<Vec<Element>> {
        let mut out = Vec::with_capacity(arity);
        let mut cur = self;
        if arity == 0 {
            return match cur {
                Element::Int(v) if v.is_empty() => Some(out),
                _ => None,
            };
        }
        for _ in 1..arity {
            let (a, b) = cur.as_pair()?;
            out.push(a.clone());
            cur = b;
        }
        out.push(cur.clone());
        Some(out)
    }

    pub fn as_ints(&self) -> Option<&[i64]> {
        match self {
            Element::Int(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&Element, &Element)> {
        match self {
            Element::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_at(&self) -> Option<(&Element, &Element)> {
        match self {
            Element::At(t, e) => Some((t, e)),
            _ => None,
        }
    }

    pub fn as_left(&self) -> Option<&Element> {
        match self {
            Element::Left(e) => Some(e),
            _ => None,
        }
    }

    pub fn as_right(&self) -> Option<&Element> {
        match self {
            Element::Right(e) => Some(e),
            _ => None,
        }
    }

    /// Unwraps an `Int` element, panicking otherwise.  Used where the shape
    /// is fixed by construction.
    pub fn ints(&self) -> &[i64] {
        self.as_ints()
            .unwrap_or_else(|| panic!("expected an integer tuple, found {self:?}"))
    }

    pub fn pair_parts(&self) -> (&Element, &Element) {
        self.as_pair()
            .unwrap_or_else(|| panic!("expected a pair, found {self:?}"))
    }

    pub fn at_parts(&self) -> (&Element, &Element) {
        self.as_at()
            .unwrap_or_else(|| panic!("expected an indexed element, found {self:?}"))
    }

    /// Concatenation of all integers in the element, in tree order.
    ///
    /// This is the projection of an elementary set: indices of indexed unions
    /// are skipped, products concatenate.
    pub fn flatten(&self) -> Vec<i64> {
        let mut out = Vec::new();
        self.flatten_into(&mut out);
        out
    }

    fn flatten_into(&self, out: &mut Vec<i64>) {
        match self {
            Element::Int(v) => out.extend_from_slice(v),
            Element::Left(e) | Element::Right(e) => e.flatten_into(out),
            Element::Pair(a, b) => {
                a.flatten_into(out);
                b.flatten_into(out);
            }
            Element::At(_, e) => e.flatten_into(out),
        }
    }

    /// Injective, order-stable byte encoding.
    pub fn canonical_encode(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.encode_into(&mut out);
        out
    }

    fn encode_into(&self, out: &mut Vec<u8>) {
        match self {
            Element::Int(v) => {
                out.push(0);
                out.extend_from_slice(&(v.len() as u32).to_be_bytes());
                for x in v.iter() {
                    out.extend_from_slice(&((*x as u64) ^ (1 << 63)).to_be_bytes());
                }
            }
            Element::Left(e) => {
                out.push(1);
                e.encode_into(out);
            }
            Element::Right(e) => {
                out.push(2);
                e.encode_into(out);
            }
            Element::Pair(a, b) => {
                out.push(3);
                a.encode_into(out);
                b.encode_into(out);
            }
            Element::At(t, e) => {
                out.push(4);
                t.encode_into(out);
                e.encode_into(out);
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Element::Int(v) => json!({ "i": v.to_vec() }),
            Element::Left(e) => json!({ "L": e.to_json() }),
            Element::Right(e) => json!({ "R": e.to_json() }),
            Element::Pair(a, b) => json!({ "p": [a.to_json(), b.to_json()] }),
            Element::At(t, e) => json!({ "x": { "t": t.to_json(), "e": e.to_json() } }),
        }
    }

    /// JSON form with the sign attached at the top level.
    pub fn to_json_signed(&self, sign: Sign) -> Value {
        let mut v = self.to_json();
        v["s"] = json!(sign.as_i64());
        v
    }

    pub fn from_json(v: &Value) -> Result<Element, Error> {
        let bad = || Error::Json(v.to_string());
        let obj = v.as_object().ok_or_else(bad)?;
        if let Some(xs) = obj.get("i") {
            let xs = xs.as_array().ok_or_else(bad)?;
            let ints = xs
                .iter()
                .map(|x| x.as_i64().ok_or_else(bad))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(Element::int(ints));
        }
        if let Some(e) = obj.get("L") {
            return Ok(Element::left(Element::from_json(e)?));
        }
        if let Some(e) = obj.get("R") {
            return Ok(Element::right(Element::from_json(e)?));
        }
        if let Some(p) = obj.get("p") {
            let p = p.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
            return Ok(Element::pair(Element::from_json(&p[0])?, Element::from_json(&p[1])?));
        }
        if let Some(x) = obj.get("x") {
            let t = x.get("t").ok_or_else(bad)?;
            let e = x.get("e").ok_or_else(bad)?;
            return Ok(Element::at(Element::from_json(t)?, Element::from_json(e)?));
        }
        Err(bad())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Int(v) => write!(f, "{:?}", &v[..]),
            Element::Left(e) => write!(f, "L({e:?})"),
            Element::Right(e) => write!(f, "R({e:?})"),
            Element::Pair(a, b) => write!(f, "({a:?}, {b:?})"),
            Element::At(t, e) => write!(f, "{t:?}@{e:?}"),
        }
    }
}

impl From<Vec<i64>> for Element {
    fn from(v: Vec<i64>) -> Element {
        Element::int(v)
    }
}
