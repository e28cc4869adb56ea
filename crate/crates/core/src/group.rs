//! Exact arithmetic in the supported group family.
//!
//! The family is closed: the integers, finite cyclic groups, binary direct
//! products of supported groups, and the semidirect product `Z ⋊ Z/2Z` where
//! the non-trivial element of `Z/2Z` acts on `Z` by negation. Integers are
//! arbitrary precision throughout.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A group element in canonical form.
///
/// The variant must match the [`GroupDescriptor`] it is used with; the
/// descriptor validates elements at the edges (see [`GroupDescriptor::check`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Element {
    Int(#[serde(with = "crate::bigstr")] BigInt),
    Mod(u64),
    Pair(Box<Element>, Box<Element>),
    /// `(n, b)` in `Z ⋊ Z/2Z`; `b = true` is the reflection `x`.
    Semi(#[serde(with = "crate::bigstr")] BigInt, bool),
}

impl Element {
    pub fn int(n: impl Into<BigInt>) -> Self {
        Element::Int(n.into())
    }

    pub fn pair(a: Element, b: Element) -> Self {
        Element::Pair(Box::new(a), Box::new(b))
    }

    pub fn semi(n: impl Into<BigInt>, reflect: bool) -> Self {
        Element::Semi(n.into(), reflect)
    }

    /// The integer payload of an `Int` element.
    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Element::Int(n) => Some(n),
            _ => None,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Int(n) => write!(f, "{n}"),
            Element::Mod(r) => write!(f, "{r}"),
            Element::Pair(a, b) => write!(f, "({a},{b})"),
            Element::Semi(n, false) => write!(f, "({n},0)"),
            Element::Semi(n, true) => write!(f, "({n},x)"),
        }
    }
}

/// A finitely generated group from the supported family.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupDescriptor {
    Integers,
    Cyclic(u64),
    Product(Box<GroupDescriptor>, Box<GroupDescriptor>),
    Semidirect,
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Integers => write!(f, "Z"),
            GroupDescriptor::Cyclic(n) => write!(f, "Z/{n}"),
            GroupDescriptor::Product(a, b) => write!(f, "product({a}, {b})"),
            GroupDescriptor::Semidirect => write!(f, "semidirect_Z_Z2"),
        }
    }
}

impl GroupDescriptor {
    pub fn product(a: GroupDescriptor, b: GroupDescriptor) -> Self {
        GroupDescriptor::Product(Box::new(a), Box::new(b))
    }

    pub fn identity(&self) -> Element {
        match self {
            GroupDescriptor::Integers => Element::Int(BigInt::zero()),
            GroupDescriptor::Cyclic(_) => Element::Mod(0),
            GroupDescriptor::Product(a, b) => Element::pair(a.identity(), b.identity()),
            GroupDescriptor::Semidirect => Element::Semi(BigInt::zero(), false),
        }
    }

    /// Validates that `g` is a well-formed element of this group.
    pub fn check(&self, g: &Element) -> Result<()> {
        let ok = match (self, g) {
            (GroupDescriptor::Integers, Element::Int(_)) => true,
            (GroupDescriptor::Cyclic(n), Element::Mod(r)) => r < n,
            (GroupDescriptor::Product(a, b), Element::Pair(x, y)) => {
                return a
                    .check(x)
                    .and_then(|_| b.check(y))
                    .map_err(|_| self.foreign(g));
            }
            (GroupDescriptor::Semidirect, Element::Semi(..)) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(self.foreign(g))
        }
    }

    fn foreign(&self, g: &Element) -> Error {
        Error::ForeignElement {
            element: g.to_string(),
            group: self.to_string(),
        }
    }

    /// The group law. Panics on elements of the wrong shape; elements coming
    /// from outside the crate are validated with [`check`](Self::check).
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        match (self, a, b) {
            (GroupDescriptor::Integers, Element::Int(x), Element::Int(y)) => Element::Int(x + y),
            (GroupDescriptor::Cyclic(n), Element::Mod(x), Element::Mod(y)) => {
                Element::Mod(((*x as u128 + *y as u128) % *n as u128) as u64)
            }
            (GroupDescriptor::Product(ga, gb), Element::Pair(x1, y1), Element::Pair(x2, y2)) => {
                Element::pair(ga.mul(x1, x2), gb.mul(y1, y2))
            }
            (GroupDescriptor::Semidirect, Element::Semi(m, u), Element::Semi(n, v)) => {
                let n = if *u { -n } else { n.clone() };
                Element::Semi(m + n, u ^ v)
            }
            _ => panic!("mul: elements {a}, {b} do not belong to {self}"),
        }
    }

    pub fn inv(&self, a: &Element) -> Element {
        match (self, a) {
            (GroupDescriptor::Integers, Element::Int(x)) => Element::Int(-x),
            (GroupDescriptor::Cyclic(n), Element::Mod(x)) => Element::Mod((n - x) % n),
            (GroupDescriptor::Product(ga, gb), Element::Pair(x, y)) => {
                Element::pair(ga.inv(x), gb.inv(y))
            }
            (GroupDescriptor::Semidirect, Element::Semi(m, false)) => Element::Semi(-m, false),
            (GroupDescriptor::Semidirect, Element::Semi(m, true)) => Element::Semi(m.clone(), true),
            _ => panic!("inv: element {a} does not belong to {self}"),
        }
    }

    /// Product of a list of elements, left to right.
    pub fn mul_all<'a>(&self, items: impl IntoIterator<Item = &'a Element>) -> Element {
        items
            .into_iter()
            .fold(self.identity(), |acc, g| self.mul(&acc, g))
    }

    /// `a · b⁻¹`.
    pub fn div(&self, a: &Element, b: &Element) -> Element {
        self.mul(a, &self.inv(b))
    }

    pub fn is_identity(&self, g: &Element) -> bool {
        *g == self.identity()
    }

    /// Declared generators with labels, in the order used by [`ball`](Self::ball).
    pub fn generators(&self) -> Vec<(String, Element)> {
        match self {
            GroupDescriptor::Integers => vec![("t".into(), Element::int(1))],
            GroupDescriptor::Cyclic(1) => Vec::new(),
            GroupDescriptor::Cyclic(_) => vec![("c".into(), Element::Mod(1))],
            GroupDescriptor::Product(a, b) => {
                let ea = a.identity();
                let eb = b.identity();
                let left = a
                    .generators()
                    .into_iter()
                    .map(|(l, g)| (format!("{l}.1"), Element::pair(g, eb.clone())));
                let right = b
                    .generators()
                    .into_iter()
                    .map(|(l, g)| (format!("{l}.2"), Element::pair(ea.clone(), g)));
                left.chain(right).collect()
            }
            GroupDescriptor::Semidirect => vec![
                ("t".into(), Element::semi(1, false)),
                ("x".into(), Element::semi(0, true)),
            ],
        }
    }

    /// `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        match self {
            GroupDescriptor::Integers | GroupDescriptor::Semidirect => None,
            GroupDescriptor::Cyclic(n) => Some(BigInt::from(*n)),
            GroupDescriptor::Product(a, b) => Some(a.order()? * b.order()?),
        }
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            GroupDescriptor::Integers | GroupDescriptor::Cyclic(_) => true,
            GroupDescriptor::Product(a, b) => a.is_abelian() && b.is_abelian(),
            GroupDescriptor::Semidirect => false,
        }
    }

    /// The letters of the word alphabet: each generator followed by its
    /// inverse, skipping inverses that coincide with the generator.
    fn letters(&self) -> Vec<Element> {
        let mut out = Vec::new();
        for (_, g) in self.generators() {
            let gi = self.inv(&g);
            let same = gi == g;
            out.push(g);
            if !same {
                out.push(gi);
            }
        }
        out
    }

    /// All elements of word length at most `radius`, deduplicated, listed in
    /// shortlex order of their least word over the declared generators.
    pub fn ball(&self, radius: usize) -> Vec<Element> {
        let letters = self.letters();
        let e = self.identity();
        let mut seen: HashSet<Element> = HashSet::from([e.clone()]);
        let mut out = vec![e.clone()];
        let mut frontier = vec![e];
        for _ in 0..radius {
            let mut next = Vec::new();
            for g in &frontier {
                for l in &letters {
                    let h = self.mul(g, l);
                    if seen.insert(h.clone()) {
                        next.push(h);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Word length with respect to the declared generators, computed by
    /// closed form for the supported kinds.
    pub fn word_length(&self, g: &Element) -> BigInt {
        match (self, g) {
            (GroupDescriptor::Integers, Element::Int(n)) => n.abs(),
            (GroupDescriptor::Cyclic(n), Element::Mod(r)) => BigInt::from((*r).min(n - r)),
            (GroupDescriptor::Product(a, b), Element::Pair(x, y)) => {
                a.word_length(x) + b.word_length(y)
            }
            (GroupDescriptor::Semidirect, Element::Semi(n, b)) => {
                // (n,x) = t^n x, and x t^k x = t^-k, so reflections cost one letter.
                n.abs() + if *b { BigInt::one() } else { BigInt::zero() }
            }
            _ => panic!("word_length: element {g} does not belong to {self}"),
        }
    }
}
