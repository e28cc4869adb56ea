//! Observable systems: a group action presented through a region basis and
//! an exact emptiness oracle for finite constraint conjunctions.
//!
//! A constraint `(g, R)` asks for a point `x` with `α_g(x) ∈ R`; a query is a
//! finite conjunction of constraints. Compact spaces never appear directly.

mod finite;
mod memo;
mod product;
mod restrict;
mod sft;
mod shift;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::coset::Coset;
use crate::error::{Error, Result};
use crate::group::{Element, GroupDescriptor};
use crate::x1::PointRef;

pub use finite::TrivialFinite;
pub use memo::Memo;
pub use product::ProductSystem;
pub use restrict::Restriction;
pub use sft::ShiftOfFiniteType;
pub use shift::FullShift;

/// Largest finite universe any system will enumerate for cover computations.
pub const UNIVERSE_CAP: usize = 1 << 16;

/// Center of an `X₁` neighborhood: an integer `j` or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Center {
    Finite(BigInt),
    Infinity,
}

impl fmt::Display for Center {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Center::Finite(j) => write!(f, "{j}"),
            Center::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Center {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Center {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "inf" {
            Ok(Center::Infinity)
        } else {
            s.parse()
                .map(Center::Finite)
                .map_err(serde::de::Error::custom)
        }
    }
}

/// A basic open (or clopen) set in some system.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Whole,
    /// Shift cylinder: coordinate ↦ symbol, sorted by coordinate.
    Cylinder(Vec<(Element, u32)>),
    /// Point set of a finite system, optionally complemented.
    Points {
        points: BTreeSet<u32>,
        complement: bool,
    },
    /// `U^level(a_center) ∩ X₁`.
    Nbhd {
        level: u32,
        center: Center,
    },
    /// The singleton `{a_center}` in `X₁`.
    APoint(Center),
    /// Finitely supported product region of a co-induced system, one base
    /// region per constrained coset, sorted by coset.
    Coords(Vec<(Coset, Region)>),
    /// Region of a product system `X^k`, one base region per factor.
    Tuple(Vec<Region>),
}

impl Region {
    /// A cylinder from coordinate/symbol pairs. Conflicting symbols at one
    /// coordinate are rejected.
    pub fn cylinder(pairs: impl IntoIterator<Item = (Element, u32)>) -> Result<Region> {
        let mut map = BTreeMap::new();
        for (c, v) in pairs {
            if let Some(old) = map.insert(c.clone(), v) {
                if old != v {
                    return Err(Error::Invalid(format!(
                        "cylinder assigns both {old} and {v} to coordinate {c}"
                    )));
                }
            }
        }
        Ok(Region::Cylinder(map.into_iter().collect()))
    }

    pub fn points(points: impl IntoIterator<Item = u32>) -> Region {
        Region::Points {
            points: points.into_iter().collect(),
            complement: false,
        }
    }

    pub fn nbhd(level: u32, center: impl Into<BigInt>) -> Region {
        Region::Nbhd {
            level,
            center: Center::Finite(center.into()),
        }
    }

    pub fn nbhd_inf(level: u32) -> Region {
        Region::Nbhd {
            level,
            center: Center::Infinity,
        }
    }

    /// A product region from per-coset base regions. Each coset may appear
    /// once.
    pub fn coords(entries: impl IntoIterator<Item = (Coset, Region)>) -> Result<Region> {
        let mut map = BTreeMap::new();
        for (c, r) in entries {
            if map.insert(c.clone(), r).is_some() {
                return Err(Error::Invalid(format!("coset {c} constrained twice")));
            }
        }
        Ok(Region::Coords(map.into_iter().collect()))
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Whole => write!(f, "whole"),
            Region::Cylinder(pairs) => {
                write!(f, "cyl(")?;
                for (i, (c, v)) in pairs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}:{v}")?;
                }
                write!(f, ")")
            }
            Region::Points { points, complement } => {
                write!(f, "{}pts{{", if *complement { "not " } else { "" })?;
                for (i, p) in points.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, "}}")
            }
            Region::Nbhd { level, center } => write!(f, "nb({level}, {center})"),
            Region::APoint(c) => write!(f, "a({c})"),
            Region::Coords(entries) => {
                write!(f, "prod{{")?;
                for (i, (c, r)) in entries.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{} => {r}", c.0)?;
                }
                write!(f, "}}")
            }
            Region::Tuple(parts) => {
                write!(f, "tup(")?;
                for (i, r) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{r}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// `α_g(x) ∈ region`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Constraint {
    pub g: Element,
    pub region: Region,
}

/// A finite conjunction of constraints, kept sorted and deduplicated so
/// equal queries hash equally.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Query {
    constraints: Vec<Constraint>,
}

impl Query {
    pub fn new(constraints: impl IntoIterator<Item = Constraint>) -> Self {
        let mut constraints: Vec<Constraint> = constraints.into_iter().collect();
        constraints.sort();
        constraints.dedup();
        Query { constraints }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Element, Region)>) -> Self {
        Query::new(
            pairs
                .into_iter()
                .map(|(g, region)| Constraint { g, region }),
        )
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    /// Conjunction of two queries.
    pub fn and(&self, other: &Query) -> Query {
        Query::new(self.constraints.iter().chain(&other.constraints).cloned())
    }

    /// `α_{g⁻¹}` of the set this query describes: `(h, R) ↦ (h·g, R)`.
    pub fn pull_back(&self, group: &GroupDescriptor, g: &Element) -> Query {
        Query::new(self.constraints.iter().map(|c| Constraint {
            g: group.mul(&c.g, g),
            region: c.region.clone(),
        }))
    }
}

/// A finite description of a point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    /// Shift point: finite pattern, extended by any admissible completion.
    Pattern {
        coordinates: Vec<Element>,
        symbols: Vec<u32>,
    },
    /// Point of a finite system.
    Point { point: u32 },
    /// Symbolic point of `X₁`.
    X1 { x1: PointRef },
    /// Point of a co-induced system, given on finitely many cosets.
    Coords { cosets: Vec<(Coset, Witness)> },
    /// Point of a product system.
    Tuple { components: Vec<Witness> },
}

impl Witness {
    pub fn pattern(map: BTreeMap<Element, u32>) -> Witness {
        let (coordinates, symbols) = map.into_iter().unzip();
        Witness::Pattern {
            coordinates,
            symbols,
        }
    }

    /// The coordinate → symbol map of a pattern witness.
    pub fn as_pattern(&self) -> Option<BTreeMap<Element, u32>> {
        match self {
            Witness::Pattern {
                coordinates,
                symbols,
            } if coordinates.len() == symbols.len() => Some(
                coordinates
                    .iter()
                    .cloned()
                    .zip(symbols.iter().copied())
                    .collect(),
            ),
            _ => None,
        }
    }
}

/// Answer of the emptiness oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Witness(Witness),
    Empty,
}

impl Verdict {
    pub fn is_empty(&self) -> bool {
        matches!(self, Verdict::Empty)
    }

    pub fn witness(self) -> Option<Witness> {
        match self {
            Verdict::Witness(w) => Some(w),
            Verdict::Empty => None,
        }
    }
}

/// How far an `Empty` verdict can be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    Exact,
    /// Only orbits of level at most `k_max` are searched.
    WithinTruncation {
        k_max: u32,
    },
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scope::Exact => write!(f, "exact"),
            Scope::WithinTruncation { k_max } => {
                write!(f, "exact within truncation K_max={k_max}")
            }
        }
    }
}

impl Scope {
    /// The weaker of two scopes.
    pub fn meet(self, other: Scope) -> Scope {
        match (self, other) {
            (Scope::Exact, s) | (s, Scope::Exact) => s,
            (Scope::WithinTruncation { k_max: a }, Scope::WithinTruncation { k_max: b }) => {
                Scope::WithinTruncation { k_max: a.min(b) }
            }
        }
    }
}

/// A group action presented by regions and an emptiness oracle.
///
/// Implementations are immutable after construction and must be safe to
/// query from several threads.
pub trait System: Send + Sync + fmt::Debug {
    fn group(&self) -> &GroupDescriptor;

    fn name(&self) -> String;

    /// `Witness` for a point satisfying every constraint, or `Empty`.
    fn emptiness(&self, query: &Query) -> Result<Verdict>;

    /// Point membership `w ∈ region`.
    fn contains(&self, w: &Witness, region: &Region) -> Result<bool>;

    /// `α_g(w)`.
    fn act(&self, g: &Element, w: &Witness) -> Result<Witness>;

    /// Whether `w` denotes a point of the space at all (for SFTs, whether the
    /// pattern extends to an admissible bi-infinite sequence).
    fn admissible(&self, _w: &Witness) -> Result<bool> {
        Ok(true)
    }

    /// Representatives of every atom of the algebra generated by the regions
    /// in `queries`: two points with equal answers on all of those regions
    /// are represented by one witness.
    fn universe(&self, _queries: &[Query]) -> Result<Vec<Witness>> {
        Err(Error::Unsupported {
            system: self.name(),
            what: "finite universe enumeration".into(),
        })
    }

    fn scope(&self) -> Scope {
        Scope::Exact
    }

    /// Replays `w` against every constraint of `query`.
    fn satisfies(&self, w: &Witness, query: &Query) -> Result<bool> {
        if !self.admissible(w)? {
            return Ok(false);
        }
        for c in query.constraints() {
            let moved = self.act(&c.g, w)?;
            if !self.contains(&moved, &c.region)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub(crate) fn unknown_region(sys: &dyn System, r: &Region) -> Error {
    Error::UnknownRegion {
        region: r.to_string(),
        system: sys.name(),
    }
}

pub(crate) fn unknown_witness(sys: &dyn System) -> Error {
    Error::UnknownWitness(sys.name())
}

/// Every combination of one entry per list, in odometer order with the last
/// list varying fastest. Fails when the product would exceed `cap`.
pub(crate) fn cartesian<T: Clone>(lists: &[Vec<T>], cap: usize) -> Result<Vec<Vec<T>>> {
    let mut total: usize = 1;
    for l in lists {
        total = total
            .checked_mul(l.len())
            .filter(|t| *t <= cap)
            .ok_or_else(|| Error::Budget(format!("universe larger than {cap} atoms")))?;
    }
    let mut out = Vec::with_capacity(total);
    let mut idx = vec![0usize; lists.len()];
    if total == 0 {
        return Ok(out);
    }
    loop {
        out.push(idx.iter().zip(lists).map(|(&i, l)| l[i].clone()).collect());
        let mut pos = lists.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < lists[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn query_canonical_form() {
        let r = Region::points([0]);
        let a = Query::from_pairs([(Element::int(2), r.clone()), (Element::int(1), r.clone())]);
        let b = Query::from_pairs([
            (Element::int(1), r.clone()),
            (Element::int(2), r.clone()),
            (Element::int(1), r),
        ]);
        assert_eq!(a, b);
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn cylinder_rejects_clash() {
        assert!(Region::cylinder([(Element::int(0), 0), (Element::int(0), 1)]).is_err());
        assert!(Region::cylinder([(Element::int(0), 1), (Element::int(0), 1)]).is_ok());
    }

    #[test]
    fn witness_json_shapes() {
        let w = Witness::pattern(BTreeMap::from([(Element::int(0), 0), (Element::int(1), 1)]));
        let s = serde_json::to_value(&w).unwrap();
        assert_eq!(s["symbols"], serde_json::json!([0, 1]));
        assert!(s["coordinates"].is_array());
        let p = Witness::Point { point: 3 };
        assert_eq!(
            serde_json::to_value(&p).unwrap(),
            serde_json::json!({"point": 3})
        );
        let back: Witness = serde_json::from_value(s).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn cartesian_order_and_cap() {
        let lists = vec![vec![0, 1], vec![5, 6, 7]];
        let all = cartesian(&lists, 100).unwrap();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 5]);
        assert_eq!(all[1], vec![0, 6]);
        assert_eq!(all[5], vec![1, 7]);
        assert!(cartesian(&lists, 5).is_err());
        assert_eq!(cartesian::<u8>(&[], 5).unwrap(), vec![Vec::<u8>::new()]);
    }
}
