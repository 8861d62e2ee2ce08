use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::{Element, Error, Sign};

type Family = dyn Fn(&Element) -> SignedSet + Send + Sync;

/// Number of positive and negative members.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counts {
    pub plus: u64,
    pub minus: u64,
}

impl Counts {
    pub fn size(self) -> i64 {
        self.plus as i64 - self.minus as i64
    }

    pub fn total(self) -> u64 {
        self.plus + self.minus
    }

    fn flip(self) -> Counts {
        Counts { plus: self.minus, minus: self.plus }
    }
}

/// A finite signed set, described structurally.
///
/// Cloning is cheap.  Indexed unions evaluate their fibers on demand and
/// memoize them, so only the branches that are visited get built.
#[derive(Clone)]
pub struct SignedSet(Arc<Node>);

struct Node {
    kind: Kind,
    counts: OnceLock<Counts>,
    dim: OnceLock<Result<Option<usize>, Error>>,
}

enum Kind {
    Empty,
    Interval(i64, i64),
    Singleton(Arc<[i64]>, Sign),
    Opposite(SignedSet),
    Product(SignedSet, SignedSet),
    Union(SignedSet, SignedSet),
    Indexed(Indexed),
    Atoms(Atoms),
}

struct Indexed {
    index: SignedSet,
    tag: String,
    family: Arc<Family>,
    memo: Mutex<HashMap<Element, SignedSet>>,
}

struct Atoms {
    tag: String,
    list: Vec<(Arc<[i64]>, Sign)>,
    lookup: HashMap<Arc<[i64]>, Sign>,
}

impl SignedSet {
    fn new(kind: Kind) -> SignedSet {
        SignedSet(Arc::new(Node { kind, counts: OnceLock::new(), dim: OnceLock::new() }))
    }

    pub fn empty() -> SignedSet {
        SignedSet::new(Kind::Empty)
    }

    /// The signed interval `[a, b]`: `{a..=b}` if `a <= b`, otherwise the
    /// negative set `{b+1..=a-1}`.
    pub fn interval(a: i64, b: i64) -> SignedSet {
        SignedSet::new(Kind::Interval(a, b))
    }

    pub fn singleton(v: impl Into<Vec<i64>>, sign: Sign) -> SignedSet {
        SignedSet::new(Kind::Singleton(v.into().into(), sign))
    }

    /// The one-element positive set whose member is the empty tuple.
    pub fn unit() -> SignedSet {
        SignedSet::singleton(Vec::new(), Sign::Plus)
    }

    pub fn product(a: SignedSet, b: SignedSet) -> SignedSet {
        SignedSet::new(Kind::Product(a, b))
    }

    pub fn union(a: SignedSet, b: SignedSet) -> SignedSet {
        SignedSet::new(Kind::Union(a, b))
    }

    /// Right-nested product; the empty product is [`SignedSet::unit`].
    pub fn product_all(parts: Vec<SignedSet>) -> SignedSet {
        let mut it = parts.into_iter().rev();
        match it.next() {
            None => SignedSet::unit(),
            Some(last) => it.fold(last, |acc, s| SignedSet::product(s, acc)),
        }
    }

    /// Right-nested disjoint union; the empty union is [`SignedSet::empty`].
    /// Members are addressed with [`SignedSet::inject`].
    pub fn union_all(parts: Vec<SignedSet>) -> SignedSet {
        let mut it = parts.into_iter().rev();
        match it.next() {
            None => SignedSet::empty(),
            Some(last) => it.fold(last, |acc, s| SignedSet::union(s, acc)),
        }
    }

    /// Tags `e` as a member of branch `i` of a `union_all` of `k` parts.
    pub fn inject(i: usize, k: usize, e: Element) -> Element {
        assert!(i < k, "branch {i} out of {k}");
        let mut out = if i + 1 == k { e } else { Element::left(e) };
        for _ in 0..i {
            out = Element::right(out);
        }
        out
    }

    /// Inverse of [`SignedSet::inject`].
    pub fn branch(k: usize, e: &Element) -> Option<(usize, Element)> {
        let mut cur = e;
        for i in 0..k {
            if i + 1 == k {
                return Some((i, cur.clone()));
            }
            match cur {
                Element::Left(x) => return Some((i, (**x).clone())),
                Element::Right(x) => cur = x,
                _ => return None,
            }
        }
        None
    }

    /// `⨆_{t ∈ index} family(t)`.  The tag must identify the family together
    /// with all of its parameters; it is used for structural comparison.
    pub fn indexed(
        index: SignedSet,
        tag: impl Into<String>,
        family: impl Fn(&Element) -> SignedSet + Send + Sync + 'static,
    ) -> SignedSet {
        SignedSet::new(Kind::Indexed(Indexed {
            index,
            tag: tag.into(),
            family: Arc::new(family),
            memo: Mutex::new(HashMap::new()),
        }))
    }

    /// Index set for a signed sum `⨆_j ±X_j`: the labels `j` as one-entry
    /// tuples carrying the term signs.
    pub fn labels(tag: impl Into<String>, labels: Vec<(i64, Sign)>) -> SignedSet {
        SignedSet::atoms(tag, labels.into_iter().map(|(j, s)| (vec![j], s)).collect())
    }

    /// `⨆_j sign_j · X_j` over explicitly given terms; members are
    /// `At([j], x)`.
    pub fn signed_sum(tag: impl Into<String>, terms: Vec<(i64, Sign, SignedSet)>) -> SignedSet {
        let tag = tag.into();
        let index = SignedSet::labels(format!("{tag}#"), terms.iter().map(|(j, s, _)| (*j, *s)).collect());
        let fibers: HashMap<i64, SignedSet> = terms.into_iter().map(|(j, _, x)| (j, x)).collect();
        SignedSet::indexed(index, tag, move |t| fibers[&t.ints()[0]].clone())
    }

    /// An explicitly listed set of integer tuples.  The listing order is the
    /// enumeration order; tuples must be distinct.
    pub fn atoms(tag: impl Into<String>, list: Vec<(Vec<i64>, Sign)>) -> SignedSet {
        let list: Vec<(Arc<[i64]>, Sign)> = list.into_iter().map(|(v, s)| (v.into(), s)).collect();
        let lookup: HashMap<_, _> = list.iter().cloned().collect();
        assert_eq!(lookup.len(), list.len(), "duplicate atoms");
        SignedSet::new(Kind::Atoms(Atoms { tag: tag.into(), list, lookup }))
    }

    /// The opposite set `-S`, with positive and negative parts exchanged.
    pub fn neg(&self) -> SignedSet {
        match &self.0.kind {
            Kind::Empty => self.clone(),
            Kind::Opposite(inner) => inner.clone(),
            Kind::Union(a, b) => SignedSet::union(a.neg(), b.neg()),
            _ => SignedSet::new(Kind::Opposite(self.clone())),
        }
    }

    /// `S` if `sign` is plus, `-S` otherwise.
    pub fn signed(&self, sign: Sign) -> SignedSet {
        if sign.is_plus() {
            self.clone()
        } else {
            self.neg()
        }
    }

    pub fn counts(&self) -> Counts {
        *self.0.counts.get_or_init(|| match &self.0.kind {
            Kind::Empty => Counts::default(),
            Kind::Interval(a, b) => {
                if a <= b {
                    Counts { plus: (b - a + 1) as u64, minus: 0 }
                } else {
                    Counts { plus: 0, minus: (a - b - 1) as u64 }
                }
            }
            Kind::Singleton(_, s) => {
                if s.is_plus() {
                    Counts { plus: 1, minus: 0 }
                } else {
                    Counts { plus: 0, minus: 1 }
                }
            }
            Kind::Opposite(s) => s.counts().flip(),
            Kind::Product(a, b) => {
                let (x, y) = (a.counts(), b.counts());
                Counts {
                    plus: x.plus * y.plus + x.minus * y.minus,
                    minus: x.plus * y.minus + x.minus * y.plus,
                }
            }
            Kind::Union(a, b) => {
                let (x, y) = (a.counts(), b.counts());
                Counts { plus: x.plus + y.plus, minus: x.minus + y.minus }
            }
            Kind::Indexed(ix) => {
                let mut c = Counts::default();
                for (t, st) in ix.index.iter() {
                    let f = self.fiber_of(ix, &t).counts();
                    let f = if st.is_plus() { f } else { f.flip() };
                    c.plus += f.plus;
                    c.minus += f.minus;
                }
                c
            }
            Kind::Atoms(at) => {
                let plus = at.list.iter().filter(|(_, s)| s.is_plus()).count() as u64;
                Counts { plus, minus: at.list.len() as u64 - plus }
            }
        })
    }

    /// Signed size `|S⁺| - |S⁻|`.
    pub fn size(&self) -> i64 {
        self.counts().size()
    }

    /// True if the set has no members at all (of either sign).
    pub fn is_void(&self) -> bool {
        self.counts().total() == 0
    }

    fn fiber_of(&self, ix: &Indexed, t: &Element) -> SignedSet {
        if let Some(s) = ix.memo.lock().unwrap().get(t) {
            return s.clone();
        }
        let s = (ix.family)(t);
        ix.memo.lock().unwrap().entry(t.clone()).or_insert(s).clone()
    }

    /// For an indexed union, the index set and the fiber over `t`.
    pub fn fiber(&self, t: &Element) -> Option<SignedSet> {
        match &self.0.kind {
            Kind::Indexed(ix) => Some(self.fiber_of(ix, t)),
            Kind::Opposite(s) => s.fiber(t).map(|f| f.neg()),
            _ => None,
        }
    }

    /// The index set of an indexed union (through opposites).
    pub fn index(&self) -> Option<SignedSet> {
        match &self.0.kind {
            Kind::Indexed(ix) => Some(ix.index.clone()),
            Kind::Opposite(s) => s.index(),
            _ => None,
        }
    }

    /// The two halves of a binary disjoint union.
    pub fn union_halves(&self) -> Option<(SignedSet, SignedSet)> {
        match &self.0.kind {
            Kind::Union(a, b) => Some((a.clone(), b.clone())),
            _ => None,
        }
    }

    /// Sign of `e` if it is a member, `None` otherwise.
    pub fn sign_of(&self, e: &Element) -> Option<Sign> {
        match (&self.0.kind, e) {
            (Kind::Empty, _) => None,
            (Kind::Interval(a, b), Element::Int(v)) if v.len() == 1 => {
                let x = v[0];
                if a <= b {
                    (*a <= x && x <= *b).then_some(Sign::Plus)
                } else {
                    (*b < x && x < *a).then_some(Sign::Minus)
                }
            }
            (Kind::Singleton(w, s), Element::Int(v)) => (w == v).then_some(*s),
            (Kind::Opposite(s), _) => s.sign_of(e).map(|x| -x),
            (Kind::Product(a, b), Element::Pair(x, y)) => Some(a.sign_of(x)? * b.sign_of(y)?),
            (Kind::Union(a, _), Element::Left(x)) => a.sign_of(x),
            (Kind::Union(_, b), Element::Right(x)) => b.sign_of(x),
            (Kind::Indexed(ix), Element::At(t, x)) => {
                let st = ix.index.sign_of(t)?;
                Some(st * self.fiber_of(ix, t).sign_of(x)?)
            }
            (Kind::Atoms(at), Element::Int(v)) => at.lookup.get(v).copied(),
            _ => None,
        }
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.sign_of(e).is_some()
    }

    /// Sign of a member, panicking with context if `e` is not one.
    pub fn sign(&self, e: &Element) -> Sign {
        self.sign_of(e)
            .unwrap_or_else(|| panic!("{e:?} is not a member of {self:?}"))
    }

    /// All members with their signs, in the documented order: intervals
    /// ascending, unions left before right, products lexicographic with the
    /// left factor outermost, indexed unions in index order, atoms as listed.
    pub fn iter(&self) -> Box<dyn Iterator<Item = (Element, Sign)> + Send> {
        match &self.0.kind {
            Kind::Empty => Box::new(std::iter::empty()),
            Kind::Interval(a, b) => {
                let (lo, hi, s) = if a <= b { (*a, *b, Sign::Plus) } else { (*b + 1, *a - 1, Sign::Minus) };
                Box::new((lo..=hi).map(move |x| (Element::int(vec![x]), s)))
            }
            Kind::Singleton(v, s) => Box::new(std::iter::once((Element::Int(v.clone()), *s))),
            Kind::Opposite(inner) => Box::new(inner.iter().map(|(e, s)| (e, -s))),
            Kind::Product(a, b) => {
                let b = b.clone();
                Box::new(a.iter().flat_map(move |(x, sx)| {
                    b.iter().map(move |(y, sy)| (Element::pair(x.clone(), y), sx * sy))
                }))
            }
            Kind::Union(a, b) => Box::new(
                a.iter()
                    .map(|(e, s)| (Element::left(e), s))
                    .chain(b.iter().map(|(e, s)| (Element::right(e), s))),
            ),
            Kind::Indexed(ix) => {
                let this = self.clone();
                Box::new(ix.index.iter().flat_map(move |(t, st)| {
                    let f = this.fiber(&t).expect("indexed");
                    f.iter().map(move |(x, sx)| (Element::at(t.clone(), x), st * sx))
                }))
            }
            Kind::Atoms(at) => {
                let list = at.list.clone();
                Box::new(list.into_iter().map(|(v, s)| (Element::Int(v), s)))
            }
        }
    }

    pub fn elements(&self) -> Vec<(Element, Sign)> {
        self.iter().collect()
    }

    /// Dimension of an elementary set (`None` for a set without members of
    /// any shape, e.g. `Empty`).
    pub fn dimension(&self) -> Result<Option<usize>, Error> {
        self.0
            .dim
            .get_or_init(|| {
                let merge = |x: Option<usize>, y: Option<usize>| match (x, y) {
                    (Some(p), Some(q)) if p != q => Err(Error::DimensionMismatch(p, q)),
                    (Some(p), _) | (_, Some(p)) => Ok(Some(p)),
                    _ => Ok(None),
                };
                match &self.0.kind {
                    Kind::Empty => Ok(None),
                    Kind::Interval(..) => Ok(Some(1)),
                    Kind::Singleton(v, _) => Ok(Some(v.len())),
                    Kind::Opposite(s) => s.dimension(),
                    Kind::Product(a, b) => match (a.dimension()?, b.dimension()?) {
                        (Some(p), Some(q)) => Ok(Some(p + q)),
                        _ => Ok(None),
                    },
                    Kind::Union(a, b) => merge(a.dimension()?, b.dimension()?),
                    Kind::Indexed(ix) => {
                        let mut d = None;
                        for (t, _) in ix.index.iter() {
                            d = merge(d, self.fiber_of(ix, &t).dimension()?)?;
                        }
                        Ok(d)
                    }
                    Kind::Atoms(at) => {
                        let mut d = None;
                        for (v, _) in &at.list {
                            d = merge(d, Some(v.len()))?;
                        }
                        Ok(d)
                    }
                }
            })
            .clone()
    }

    /// The projection ξ of an elementary set to integer tuples.
    pub fn project(&self, e: &Element) -> Result<Vec<i64>, Error> {
        if !self.contains(e) {
            return Err(Error::NotAMember(format!("{e:?}")));
        }
        self.dimension()?;
        Ok(e.flatten())
    }

    /// Structural equality: same construction tree, with indexed unions and
    /// atom lists compared by tag.
    pub fn same(&self, other: &SignedSet) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&self.0.kind, &other.0.kind) {
            (Kind::Empty, Kind::Empty) => true,
            (Kind::Interval(a, b), Kind::Interval(c, d)) => a == c && b == d,
            (Kind::Singleton(v, s), Kind::Singleton(w, t)) => v == w && s == t,
            (Kind::Opposite(a), Kind::Opposite(b)) => a.same(b),
            (Kind::Product(a, b), Kind::Product(c, d)) | (Kind::Union(a, b), Kind::Union(c, d)) => {
                a.same(c) && b.same(d)
            }
            (Kind::Indexed(x), Kind::Indexed(y)) => x.tag == y.tag && x.index.same(&y.index),
            (Kind::Atoms(x), Kind::Atoms(y)) => x.tag == y.tag && x.list.len() == y.list.len(),
            _ => false,
        }
    }

    /// A short human-readable description of the top of the construction tree.
    pub fn describe(&self) -> String {
        match &self.0.kind {
            Kind::Empty => "∅".into(),
            Kind::Interval(a, b) => format!("[{a},{b}]"),
            Kind::Singleton(v, s) => format!("{s}{{{:?}}}", &v[..]),
            Kind::Opposite(s) => format!("-({})", s.describe()),
            Kind::Product(a, b) => format!("{} × {}", a.describe(), b.describe()),
            Kind::Union(a, b) => format!("({} ⊔ {})", a.describe(), b.describe()),
            Kind::Indexed(ix) => ix.tag.clone(),
            Kind::Atoms(at) => at.tag.clone(),
        }
    }
}

impl fmt::Debug for SignedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &SignedSet) -> Vec<(i64, Sign)> {
        s.iter().map(|(e, s)| (e.ints()[0], s)).collect()
    }

    #[test]
    fn intervals() {
        assert_eq!(ints(&SignedSet::interval(1, 3)), vec![(1, Sign::Plus), (2, Sign::Plus), (3, Sign::Plus)]);
        assert!(SignedSet::interval(3, 2).is_void());
        assert_eq!(ints(&SignedSet::interval(3, 1)), vec![(2, Sign::Minus)]);
        assert_eq!(SignedSet::interval(5, 1).size(), -3);
        assert_eq!(SignedSet::empty().size(), 0);
    }

    #[test]
    fn product_size() {
        let p = SignedSet::product(SignedSet::interval(1, 2), SignedSet::interval(3, 1));
        assert_eq!(p.size(), -2);
        assert_eq!(p.elements().len(), 2);
    }

    #[test]
    fn union_with_empty_right() {
        let u = SignedSet::union(SignedSet::interval(1, 1), SignedSet::interval(2, 1));
        let els = u.elements();
        assert_eq!(els, vec![(Element::left(Element::int(vec![1])), Sign::Plus)]);
    }

    #[test]
    fn inject_and_branch() {
        for k in 1..5 {
            for i in 0..k {
                let e = SignedSet::inject(i, k, Element::int(vec![7]));
                assert_eq!(SignedSet::branch(k, &e), Some((i, Element::int(vec![7]))));
            }
        }
        let u = SignedSet::union_all(vec![
            SignedSet::interval(0, 0),
            SignedSet::interval(1, 1),
            SignedSet::interval(2, 2),
        ]);
        let got: Vec<_> = u.iter().map(|(e, _)| SignedSet::branch(3, &e).unwrap().0).collect();
        assert_eq!(got, vec![0, 1, 2]);
    }

    #[test]
    fn indexed_union_signs() {
        let s = SignedSet::indexed(SignedSet::interval(3, 1), "toy", |t| {
            SignedSet::interval(0, t.ints()[0])
        });
        // index {2} with sign -, fiber [0,2]
        assert_eq!(s.size(), -3);
        let e = Element::at(Element::int(vec![2]), Element::int(vec![1]));
        assert_eq!(s.sign_of(&e), Some(Sign::Minus));
        assert_eq!(s.project(&e).unwrap(), vec![1]);
    }

    #[test]
    fn opposite_is_transparent() {
        let s = SignedSet::interval(1, 2);
        assert!(s.neg().neg().same(&s));
        let e = Element::int(vec![1]);
        assert_eq!(s.neg().sign_of(&e), Some(Sign::Minus));
    }

    #[test]
    fn dimension_mismatch() {
        let u = SignedSet::union(
            SignedSet::interval(0, 1),
            SignedSet::product(SignedSet::interval(0, 1), SignedSet::interval(0, 1)),
        );
        let e = Element::left(Element::int(vec![0]));
        assert_eq!(u.project(&e), Err(Error::DimensionMismatch(1, 2)));
        let s = SignedSet::indexed(SignedSet::interval(0, 2), "toy", |_| SignedSet::interval(4, 4));
        assert_eq!(s.project(&Element::at(Element::int(vec![1]), Element::int(vec![4]))).unwrap(), vec![4]);
    }
}
