use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::{Element, Error, SignedSet};

/// Which of the two sets of a sijection an element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Dom,
    Cod,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Dom => Side::Cod,
            Side::Cod => Side::Dom,
        }
    }
}

type MapFn = dyn Fn(Side, &Element) -> (Side, Element) + Send + Sync;

/// A signed bijection `dom ⇒ cod`: an involution on `dom ⊔ cod` mapping
/// `dom⁺ ⊔ cod⁻` onto `dom⁻ ⊔ cod⁺`.
///
/// The involution is a closure over the construction; nothing is
/// materialized unless a combinator needs it.
#[derive(Clone)]
pub struct Sijection {
    dom: SignedSet,
    cod: SignedSet,
    name: Arc<str>,
    map: Arc<MapFn>,
}

impl fmt::Debug for Sijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {:?} ⇒ {:?}", self.name, self.dom, self.cod)
    }
}

impl Sijection {
    pub fn new(
        dom: SignedSet,
        cod: SignedSet,
        name: impl Into<String>,
        map: impl Fn(Side, &Element) -> (Side, Element) + Send + Sync + 'static,
    ) -> Sijection {
        Sijection { dom, cod, name: name.into().into(), map: Arc::new(map) }
    }

    pub fn dom(&self) -> &SignedSet {
        &self.dom
    }

    pub fn cod(&self) -> &SignedSet {
        &self.cod
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set(&self, side: Side) -> &SignedSet {
        match side {
            Side::Dom => &self.dom,
            Side::Cod => &self.cod,
        }
    }

    pub fn apply(&self, side: Side, e: &Element) -> (Side, Element) {
        (self.map)(side, e)
    }

    /// Same involution under a new name.
    pub fn named(self, name: impl Into<String>) -> Sijection {
        Sijection { name: name.into().into(), ..self }
    }

    /// Same involution, with the two sets replaced by structurally different
    /// descriptions of the same members (e.g. after distributing a sign).
    pub fn retype(self, dom: SignedSet, cod: SignedSet) -> Sijection {
        Sijection { dom, cod, ..self }
    }

    pub fn identity(s: SignedSet) -> Sijection {
        Sijection::new(s.clone(), s, "id", |side, e| (side.other(), e.clone()))
    }

    /// Identity on members, between two descriptions of the same signed set.
    pub fn same_members(dom: SignedSet, cod: SignedSet, name: impl Into<String>) -> Sijection {
        Sijection::new(dom, cod, name, |side, e| (side.other(), e.clone()))
    }

    /// A sign-preserving bijection `fwd` with inverse `back`.
    pub fn relabel(
        dom: SignedSet,
        cod: SignedSet,
        name: impl Into<String>,
        fwd: impl Fn(&Element) -> Element + Send + Sync + 'static,
        back: impl Fn(&Element) -> Element + Send + Sync + 'static,
    ) -> Sijection {
        Sijection::new(dom, cod, name, move |side, e| match side {
            Side::Dom => (Side::Cod, fwd(e)),
            Side::Cod => (Side::Dom, back(e)),
        })
    }

    /// `S ⇒ ∅` from a sign-reversing involution without fixed points.
    pub fn cancel(
        s: SignedSet,
        name: impl Into<String>,
        inv: impl Fn(&Element) -> Element + Send + Sync + 'static,
    ) -> Sijection {
        Sijection::new(s, SignedSet::empty(), name, move |side, e| {
            assert_eq!(side, Side::Dom, "the empty set has no members");
            (Side::Dom, inv(e))
        })
    }

    /// `S ⇒ ∅` for a set without members.
    pub fn vanishing(s: SignedSet) -> Sijection {
        Sijection::new(s, SignedSet::empty(), "vanishing", |side, e| {
            panic!("vanishing sijection applied to {side:?} {e:?}")
        })
    }

    /// The inverse sijection `cod ⇒ dom`.
    pub fn invert(&self) -> Sijection {
        let map = self.map.clone();
        Sijection {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            name: format!("({})⁻¹", self.name).into(),
            map: Arc::new(move |side, e| {
                let (s, x) = map(side.other(), e);
                (s.other(), x)
            }),
        }
    }

    /// `-dom ⇒ -cod` with the same involution.
    pub fn neg(&self) -> Sijection {
        Sijection {
            dom: self.dom.neg(),
            cod: self.cod.neg(),
            name: format!("-({})", self.name).into(),
            map: self.map.clone(),
        }
    }

    /// `φ × ψ : S×S' ⇒ T×T'`.
    pub fn product(phi: &Sijection, psi: &Sijection) -> Sijection {
        let (f, g) = (phi.map.clone(), psi.map.clone());
        Sijection::new(
            SignedSet::product(phi.dom.clone(), psi.dom.clone()),
            SignedSet::product(phi.cod.clone(), psi.cod.clone()),
            format!("{} × {}", phi.name, psi.name),
            move |side, e| {
                let (x, y) = e.pair_parts();
                let (sx, x2) = f(side, x);
                if sx == side {
                    return (side, Element::pair(x2, y.clone()));
                }
                let (sy, y2) = g(side, y);
                if sy == side {
                    (side, Element::pair(x.clone(), y2))
                } else {
                    (side.other(), Element::pair(x2, y2))
                }
            },
        )
    }

    /// Right-nested product of sijections, matching `SignedSet::product_all`.
    pub fn product_all(parts: Vec<Sijection>) -> Sijection {
        let mut it = parts.into_iter().rev();
        match it.next() {
            None => Sijection::identity(SignedSet::unit()),
            Some(last) => it.fold(last, |acc, s| Sijection::product(&s, &acc)),
        }
    }

    /// `φ ⊔ ψ : S⊔S' ⇒ T⊔T'`.
    pub fn sum(phi: &Sijection, psi: &Sijection) -> Sijection {
        let (f, g) = (phi.map.clone(), psi.map.clone());
        Sijection::new(
            SignedSet::union(phi.dom.clone(), psi.dom.clone()),
            SignedSet::union(phi.cod.clone(), psi.cod.clone()),
            format!("{} ⊔ {}", phi.name, psi.name),
            move |side, e| match e {
                Element::Left(x) => {
                    let (s, y) = f(side, x);
                    (s, Element::left(y))
                }
                Element::Right(x) => {
                    let (s, y) = g(side, x);
                    (s, Element::right(y))
                }
                _ => panic!("expected a union member, found {e:?}"),
            },
        )
    }

    /// Right-nested disjoint union of sijections, matching `SignedSet::union_all`.
    pub fn sum_all(parts: Vec<Sijection>) -> Sijection {
        let mut it = parts.into_iter().rev();
        match it.next() {
            None => Sijection::identity(SignedSet::empty()),
            Some(last) => it.fold(last, |acc, s| Sijection::sum(&s, &acc)),
        }
    }

    /// Disjoint union of a family of sijections along a sijection of index
    /// sets.
    ///
    /// `psi : T ⇒ T~`; `dom_family` and `cod_family` give the fibers over
    /// `T` and `T~`.  `fiber(side, t)` must return a sijection from the
    /// fiber over `(side, t)` to the fiber over `psi(side, t)`.  It is only
    /// consulted for one point of every `psi`-orbit, and the other point gets
    /// the inverse, so the compatibility condition holds by construction.
    pub fn union_over(
        psi: &Sijection,
        dom_tag: impl Into<String>,
        dom_family: impl Fn(&Element) -> SignedSet + Send + Sync + 'static,
        cod_tag: impl Into<String>,
        cod_family: impl Fn(&Element) -> SignedSet + Send + Sync + 'static,
        fiber: impl Fn(Side, &Element) -> Sijection + Send + Sync + 'static,
    ) -> Sijection {
        let dom = SignedSet::indexed(psi.dom.clone(), dom_tag, dom_family);
        let cod = SignedSet::indexed(psi.cod.clone(), cod_tag, cod_family);
        let psi_map = psi.map.clone();
        let memo: Mutex<HashMap<(Side, Element), Sijection>> = Mutex::new(HashMap::new());
        let fiber_at = move |side: Side, t: &Element| -> Sijection {
            let key = (side, t.clone());
            if let Some(f) = memo.lock().unwrap().get(&key) {
                return f.clone();
            }
            let (os, ot) = psi_map(side, t);
            let canonical = (side, t.canonical_encode()) <= (os, ot.canonical_encode());
            let f = if canonical { fiber(side, t) } else { fiber(os, &ot).invert() };
            memo.lock().unwrap().entry(key).or_insert(f).clone()
        };
        let psi_map = psi.map.clone();
        Sijection::new(dom, cod, format!("⨆ along {}", psi.name), move |side, e| {
            let (t, s) = e.at_parts();
            let (ts, t2) = psi_map(side, t);
            let f = fiber_at(side, t);
            let (ss, s2) = f.apply(Side::Dom, s);
            match ss {
                Side::Dom => (side, Element::at(t.clone(), s2)),
                Side::Cod => (ts, Element::at(t2, s2)),
            }
        })
    }

    /// `⨆_{t∈T} S_t ⇒ ⨆_{t∈T} S~_t` from sijections `S_t ⇒ S~_t`.
    pub fn fiberwise(
        index: SignedSet,
        dom_tag: impl Into<String>,
        dom_family: impl Fn(&Element) -> SignedSet + Send + Sync + 'static,
        cod_tag: impl Into<String>,
        cod_family: impl Fn(&Element) -> SignedSet + Send + Sync + 'static,
        fiber: impl Fn(&Element) -> Sijection + Send + Sync + 'static,
    ) -> Sijection {
        let id = Sijection::identity(index);
        Sijection::union_over(&id, dom_tag, dom_family, cod_tag, cod_family, move |side, t| {
            match side {
                Side::Dom => fiber(t),
                Side::Cod => fiber(t).invert(),
            }
        })
    }

    /// `⨆_{t∈T} F(ξ(t)) ⇒ ⨆_{t∈T~} F(ξ(t))` along a normal `psi : T ⇒ T~`,
    /// with identity fibers.  Normality is checked on all of `T ⊔ T~`.
    pub fn normal_union(
        psi: &Sijection,
        tag: impl Into<String>,
        family: impl Fn(&[i64]) -> SignedSet + Send + Sync + 'static,
    ) -> Result<Sijection, Error> {
        for side in [Side::Dom, Side::Cod] {
            for (t, _) in psi.set(side).iter() {
                let (os, ot) = psi.apply(side, &t);
                if t.flatten() != ot.flatten() {
                    return Err(Error::NotNormal(format!("{side:?} {t:?} ↦ {os:?} {ot:?}")));
                }
            }
        }
        Ok(Sijection::normal_union_unchecked(psi, tag, family))
    }

    /// [`Sijection::normal_union`] without the up-front normality scan; the
    /// map still asserts normality of every index it touches.
    pub fn normal_union_unchecked(
        psi: &Sijection,
        tag: impl Into<String>,
        family: impl Fn(&[i64]) -> SignedSet + Send + Sync + 'static,
    ) -> Sijection {
        let tag = tag.into();
        let family = Arc::new(family);
        let (f1, f2) = (family.clone(), family);
        let dom = SignedSet::indexed(psi.dom.clone(), tag.clone(), move |t| f1(&t.flatten()));
        let cod = SignedSet::indexed(psi.cod.clone(), tag, move |t| f2(&t.flatten()));
        let psi_map = psi.map.clone();
        Sijection::new(dom, cod, format!("normal ⨆ along {}", psi.name), move |side, e| {
            let (t, s) = e.at_parts();
            let (ts, t2) = psi_map(side, t);
            debug_assert_eq!(t.flatten(), t2.flatten(), "index sijection is not normal");
            (ts, Element::at(t2, s.clone()))
        })
    }

    /// Garsia–Milne composition `self ∘ then : dom(self) ⇒ cod(then)`.
    pub fn compose(&self, then: &Sijection) -> Result<Sijection, Error> {
        if !self.cod.same(&then.dom) {
            return Err(Error::MiddleMismatch(self.cod.describe(), then.dom.describe()));
        }
        let (f, g) = (self.map.clone(), then.map.clone());
        let memo: Mutex<HashMap<(Side, Element), (Side, Element)>> = Mutex::new(HashMap::new());
        Ok(Sijection::new(
            self.dom.clone(),
            then.cod.clone(),
            format!("{} ; {}", self.name, then.name),
            move |side, e| {
                let key = (side, e.clone());
                if let Some(r) = memo.lock().unwrap().get(&key) {
                    return r.clone();
                }
                let r = chase(&*f, &*g, side, e);
                let mut m = memo.lock().unwrap();
                m.insert((r.0, r.1.clone()), (side, e.clone()));
                m.insert(key, r.clone());
                r
            },
        ))
    }

    /// Like [`Sijection::compose`], panicking on a middle-set mismatch.
    pub fn then(&self, next: &Sijection) -> Sijection {
        self.compose(next).unwrap_or_else(|err| panic!("{}: {err}", self.name))
    }

    /// Composes a pipeline of sijections left to right.
    pub fn chain(stages: Vec<Sijection>) -> Sijection {
        let mut it = stages.into_iter();
        let first = it.next().expect("empty chain");
        it.fold(first, |acc, s| acc.then(&s))
    }

    /// From `σ : A ⊔ B ⇒ ∅` build `A ⇒ -B`.
    pub fn split_from_zero(sigma: &Sijection) -> Sijection {
        let (a, b) = union_parts(&sigma.dom);
        let map = sigma.map.clone();
        Sijection::new(a, b.neg(), format!("split({})", sigma.name), move |side, e| {
            let probe = match side {
                Side::Dom => Element::left(e.clone()),
                Side::Cod => Element::right(e.clone()),
            };
            let (s, r) = map(Side::Dom, &probe);
            assert_eq!(s, Side::Dom, "a sijection to ∅ must stay in its domain");
            match r {
                Element::Left(x) => (Side::Dom, (*x).clone()),
                Element::Right(x) => (Side::Cod, (*x).clone()),
                _ => panic!("expected a union member, found {r:?}"),
            }
        })
    }

    /// From `φ : A ⇒ -B` build `A ⊔ B ⇒ ∅`; inverse of [`Sijection::split_from_zero`].
    pub fn merge_to_zero(phi: &Sijection, b: SignedSet) -> Sijection {
        let map = phi.map.clone();
        Sijection::new(
            SignedSet::union(phi.dom.clone(), b),
            SignedSet::empty(),
            format!("merge({})", phi.name),
            move |_, e| {
                let (side, x) = match e {
                    Element::Left(x) => (Side::Dom, x),
                    Element::Right(x) => (Side::Cod, x),
                    _ => panic!("expected a union member, found {e:?}"),
                };
                match map(side, x) {
                    (Side::Dom, y) => (Side::Dom, Element::left(y)),
                    (Side::Cod, y) => (Side::Dom, Element::right(y)),
                }
            },
        )
    }

    /// `A×B ⇒ B×A`.
    pub fn product_comm(a: SignedSet, b: SignedSet) -> Sijection {
        let swap = |e: &Element| {
            let (x, y) = e.pair_parts();
            Element::pair(y.clone(), x.clone())
        };
        Sijection::relabel(SignedSet::product(a.clone(), b.clone()), SignedSet::product(b, a), "comm ×", swap, swap)
    }

    /// `(A×B)×C ⇒ A×(B×C)`.
    pub fn product_assoc(a: SignedSet, b: SignedSet, c: SignedSet) -> Sijection {
        Sijection::relabel(
            SignedSet::product(SignedSet::product(a.clone(), b.clone()), c.clone()),
            SignedSet::product(a, SignedSet::product(b, c)),
            "assoc ×",
            |e| {
                let (ab, z) = e.pair_parts();
                let (x, y) = ab.pair_parts();
                Element::pair(x.clone(), Element::pair(y.clone(), z.clone()))
            },
            |e| {
                let (x, yz) = e.pair_parts();
                let (y, z) = yz.pair_parts();
                Element::pair(Element::pair(x.clone(), y.clone()), z.clone())
            },
        )
    }

    /// `1×A ⇒ A`, where `1` is [`SignedSet::unit`].
    pub fn product_unit_left(a: SignedSet) -> Sijection {
        Sijection::relabel(
            SignedSet::product(SignedSet::unit(), a.clone()),
            a,
            "unit ×",
            |e| e.pair_parts().1.clone(),
            |e| Element::pair(Element::unit(), e.clone()),
        )
    }

    /// `A×1 ⇒ A`.
    pub fn product_unit_right(a: SignedSet) -> Sijection {
        Sijection::relabel(
            SignedSet::product(a.clone(), SignedSet::unit()),
            a,
            "× unit",
            |e| e.pair_parts().0.clone(),
            |e| Element::pair(e.clone(), Element::unit()),
        )
    }

    /// `A⊔B ⇒ B⊔A`.
    pub fn union_comm(a: SignedSet, b: SignedSet) -> Sijection {
        let swap = |e: &Element| match e {
            Element::Left(x) => Element::Right(x.clone()),
            Element::Right(x) => Element::Left(x.clone()),
            _ => panic!("expected a union member, found {e:?}"),
        };
        Sijection::relabel(SignedSet::union(a.clone(), b.clone()), SignedSet::union(b, a), "comm ⊔", swap, swap)
    }

    /// `(A⊔B)⊔C ⇒ A⊔(B⊔C)`.
    pub fn union_assoc(a: SignedSet, b: SignedSet, c: SignedSet) -> Sijection {
        Sijection::relabel(
            SignedSet::union(SignedSet::union(a.clone(), b.clone()), c.clone()),
            SignedSet::union(a, SignedSet::union(b, c)),
            "assoc ⊔",
            |e| match e {
                Element::Left(x) => match &**x {
                    Element::Left(y) => Element::Left(y.clone()),
                    Element::Right(y) => Element::right(Element::Left(y.clone())),
                    _ => panic!("bad member {e:?}"),
                },
                Element::Right(z) => Element::right(Element::Right(z.clone())),
                _ => panic!("bad member {e:?}"),
            },
            |e| match e {
                Element::Left(x) => Element::left(Element::Left(x.clone())),
                Element::Right(yz) => match &**yz {
                    Element::Left(y) => Element::left(Element::Right(y.clone())),
                    Element::Right(z) => Element::Right(z.clone()),
                    _ => panic!("bad member {e:?}"),
                },
                _ => panic!("bad member {e:?}"),
            },
        )
    }

    /// `A⊔∅ ⇒ A`.
    pub fn union_unit(a: SignedSet) -> Sijection {
        Sijection::relabel(
            SignedSet::union(a.clone(), SignedSet::empty()),
            a,
            "⊔ ∅",
            |e| e.as_left().expect("left member").clone(),
            |e| Element::left(e.clone()),
        )
    }

    /// `A ⊔ -A ⇒ ∅`, cancelling each member against its copy.
    pub fn cancel_opposites(a: SignedSet) -> Sijection {
        Sijection::cancel(SignedSet::union(a.clone(), a.neg()), "A ⊔ -A", |e| match e {
            Element::Left(x) => Element::Right(x.clone()),
            Element::Right(x) => Element::Left(x.clone()),
            _ => panic!("bad member {e:?}"),
        })
    }
}

fn union_parts(s: &SignedSet) -> (SignedSet, SignedSet) {
    s.union_halves().unwrap_or_else(|| panic!("expected a disjoint union, found {s:?}"))
}

fn chase(f: &MapFn, g: &MapFn, side: Side, e: &Element) -> (Side, Element) {
    let mut visited: HashSet<Element> = HashSet::new();
    let (mut s, mut x) = match side {
        Side::Dom => f(Side::Dom, e),
        Side::Cod => g(Side::Cod, e),
    };
    // whether x was produced by f (true) or by g
    let mut from_f = side == Side::Dom;
    loop {
        if from_f {
            if s == Side::Dom {
                return (Side::Dom, x);
            }
            if !visited.insert(x.clone()) {
                panic!("involution chase revisited {x:?}");
            }
            let (s2, y) = g(Side::Dom, &x);
            s = s2;
            x = y;
            from_f = false;
        } else {
            if s == Side::Cod {
                return (Side::Cod, x);
            }
            let (s2, y) = f(Side::Cod, &x);
            s = s2;
            x = y;
            from_f = true;
        }
    }
}
