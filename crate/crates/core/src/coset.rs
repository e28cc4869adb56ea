//! Subgroups, right coset spaces `H\G` with a fixed section, and the
//! H-valued cocycle that drives co-induction.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, GroupDescriptor};

/// `[G:H]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Index {
    Finite(#[serde(with = "crate::bigstr")] BigInt),
    Infinite,
}

impl Index {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Index::Finite(n) => Some(n),
            Index::Infinite => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Index::Finite(_))
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => write!(f, "inf"),
        }
    }
}

/// The shapes of subgroup the toolkit knows how to compute with.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubgroupKind {
    Whole,
    Trivial,
    /// `kZ ≤ Z`, or the subgroup generated by `k` in `Z/nZ` (with `k | n`).
    Multiples(u64),
    /// `H₁ × H₂ ≤ G₁ × G₂`.
    Product(Box<SubgroupKind>, Box<SubgroupKind>),
    /// `Z × {0}` inside `Z ⋊ Z/2Z`.
    ZFactor,
    /// Kernel of the right action of `G` on the cosets of another subgroup.
    /// Only membership and index are available.
    Kernel(Box<CosetSpace>),
}

impl fmt::Display for SubgroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupKind::Whole => write!(f, "whole"),
            SubgroupKind::Trivial => write!(f, "trivial"),
            SubgroupKind::Multiples(k) => write!(f, "multiples({k})"),
            SubgroupKind::Product(a, b) => write!(f, "product({a}, {b})"),
            SubgroupKind::ZFactor => write!(f, "Z_factor"),
            SubgroupKind::Kernel(cs) => write!(f, "core({})", cs.subgroup().kind),
        }
    }
}

/// A subgroup `H` of a parent group `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgroup {
    parent: GroupDescriptor,
    kind: SubgroupKind,
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} of {}", self.kind, self.parent)
    }
}

impl Subgroup {
    pub fn new(parent: GroupDescriptor, kind: SubgroupKind) -> Result<Self> {
        validate(&parent, &kind)?;
        Ok(Subgroup { parent, kind })
    }

    pub fn whole(parent: GroupDescriptor) -> Self {
        Subgroup {
            parent,
            kind: SubgroupKind::Whole,
        }
    }

    pub fn trivial(parent: GroupDescriptor) -> Self {
        Subgroup {
            parent,
            kind: SubgroupKind::Trivial,
        }
    }

    pub fn parent(&self) -> &GroupDescriptor {
        &self.parent
    }

    pub fn kind(&self) -> &SubgroupKind {
        &self.kind
    }

    pub fn contains(&self, g: &Element) -> bool {
        if self.parent.check(g).is_err() {
            return false;
        }
        match &self.kind {
            SubgroupKind::Kernel(cs) => cs.fixes_every_coset(g),
            kind => rep(&self.parent, kind, g) == self.parent.identity(),
        }
    }

    pub fn generators(&self) -> Vec<Element> {
        generators(&self.parent, &self.kind)
    }

    pub fn index(&self) -> Index {
        match &self.kind {
            SubgroupKind::Kernel(cs) => Index::Finite(cs.action_image_order()),
            kind => index(&self.parent, kind),
        }
    }

    /// The group an `H`-system is written over, together with the
    /// isomorphism from `H` onto its image there.
    ///
    /// Most subgroups act through their parent by inclusion. `Z × {0}` in the
    /// semidirect product, and direct products with a trivial factor, act
    /// through the integers.
    pub fn base_group(&self) -> GroupDescriptor {
        base_group(&self.parent, &self.kind)
    }

    /// Image of `h ∈ H` in [`base_group`](Self::base_group).
    pub fn embed(&self, h: &Element) -> Element {
        embed(&self.parent, &self.kind, h)
    }

    /// Inverse of [`embed`](Self::embed).
    pub fn lift(&self, b: &Element) -> Element {
        lift(&self.parent, &self.kind, b)
    }
}

fn validate(parent: &GroupDescriptor, kind: &SubgroupKind) -> Result<()> {
    let bad = || Error::UnsupportedSubgroup {
        subgroup: kind.to_string(),
        group: parent.to_string(),
    };
    match (parent, kind) {
        (_, SubgroupKind::Whole | SubgroupKind::Trivial) => Ok(()),
        (GroupDescriptor::Integers, SubgroupKind::Multiples(k)) if *k > 0 => Ok(()),
        (GroupDescriptor::Cyclic(n), SubgroupKind::Multiples(k)) if *k > 0 && n % k == 0 => Ok(()),
        (GroupDescriptor::Product(ga, gb), SubgroupKind::Product(ka, kb)) => validate(ga, ka)
            .and_then(|_| validate(gb, kb))
            .map_err(|_| bad()),
        (GroupDescriptor::Semidirect, SubgroupKind::ZFactor) => Ok(()),
        (_, SubgroupKind::Kernel(cs)) if cs.group() == parent => Ok(()),
        _ => Err(bad()),
    }
}

/// Canonical representative of the right coset `Hg`.
fn rep(parent: &GroupDescriptor, kind: &SubgroupKind, g: &Element) -> Element {
    match (parent, kind, g) {
        (_, SubgroupKind::Whole, _) => parent.identity(),
        (_, SubgroupKind::Trivial, _) => g.clone(),
        (GroupDescriptor::Integers, SubgroupKind::Multiples(k), Element::Int(n)) => {
            Element::Int(n.mod_floor(&BigInt::from(*k)))
        }
        (GroupDescriptor::Cyclic(_), SubgroupKind::Multiples(k), Element::Mod(r)) => {
            Element::Mod(r % k)
        }
        (GroupDescriptor::Product(ga, gb), SubgroupKind::Product(ka, kb), Element::Pair(x, y)) => {
            Element::pair(rep(ga, ka, x), rep(gb, kb, y))
        }
        (GroupDescriptor::Semidirect, SubgroupKind::ZFactor, Element::Semi(_, b)) => {
            Element::Semi(BigInt::zero(), *b)
        }
        _ => panic!("no coset representative for {g} under {kind} of {parent}"),
    }
}

fn generators(parent: &GroupDescriptor, kind: &SubgroupKind) -> Vec<Element> {
    match (parent, kind) {
        (_, SubgroupKind::Whole) => parent.generators().into_iter().map(|(_, g)| g).collect(),
        (_, SubgroupKind::Trivial) | (_, SubgroupKind::Kernel(_)) => Vec::new(),
        (GroupDescriptor::Integers, SubgroupKind::Multiples(k)) => vec![Element::int(*k)],
        (GroupDescriptor::Cyclic(n), SubgroupKind::Multiples(k)) => {
            if k == n {
                Vec::new()
            } else {
                vec![Element::Mod(*k)]
            }
        }
        (GroupDescriptor::Product(ga, gb), SubgroupKind::Product(ka, kb)) => {
            let ea = ga.identity();
            let eb = gb.identity();
            generators(ga, ka)
                .into_iter()
                .map(|g| Element::pair(g, eb.clone()))
                .chain(
                    generators(gb, kb)
                        .into_iter()
                        .map(|g| Element::pair(ea.clone(), g)),
                )
                .collect()
        }
        (GroupDescriptor::Semidirect, SubgroupKind::ZFactor) => vec![Element::semi(1, false)],
        _ => unreachable!("validated subgroup"),
    }
}

fn index(parent: &GroupDescriptor, kind: &SubgroupKind) -> Index {
    match (parent, kind) {
        (_, SubgroupKind::Whole) => Index::Finite(BigInt::one()),
        (_, SubgroupKind::Trivial) => match parent.order() {
            Some(n) => Index::Finite(n),
            None => Index::Infinite,
        },
        (_, SubgroupKind::Multiples(k)) => Index::Finite(BigInt::from(*k)),
        (GroupDescriptor::Product(ga, gb), SubgroupKind::Product(ka, kb)) => {
            match (index(ga, ka), index(gb, kb)) {
                (Index::Finite(a), Index::Finite(b)) => Index::Finite(a * b),
                _ => Index::Infinite,
            }
        }
        (_, SubgroupKind::ZFactor) => Index::Finite(BigInt::from(2)),
        _ => unreachable!("validated subgroup"),
    }
}

fn coset_reps(parent: &GroupDescriptor, kind: &SubgroupKind) -> Option<Vec<Element>> {
    match (parent, kind) {
        (_, SubgroupKind::Whole) => Some(vec![parent.identity()]),
        (_, SubgroupKind::Trivial) => {
            let n = parent.order()?;
            let mut all = parent.ball(usize::try_from(n).ok()?);
            all.sort();
            Some(all)
        }
        (GroupDescriptor::Integers, SubgroupKind::Multiples(k)) => {
            Some((0..*k).map(Element::int).collect())
        }
        (GroupDescriptor::Cyclic(_), SubgroupKind::Multiples(k)) => {
            Some((0..*k).map(Element::Mod).collect())
        }
        (GroupDescriptor::Product(ga, gb), SubgroupKind::Product(ka, kb)) => {
            let left = coset_reps(ga, ka)?;
            let right = coset_reps(gb, kb)?;
            Some(
                left.iter()
                    .flat_map(|a| {
                        right
                            .iter()
                            .map(move |b| Element::pair(a.clone(), b.clone()))
                    })
                    .collect(),
            )
        }
        (GroupDescriptor::Semidirect, SubgroupKind::ZFactor) => {
            Some(vec![Element::semi(0, false), Element::semi(0, true)])
        }
        _ => None,
    }
}

fn is_trivial(kind: &SubgroupKind) -> bool {
    matches!(kind, SubgroupKind::Trivial)
}

fn base_group(parent: &GroupDescriptor, kind: &SubgroupKind) -> GroupDescriptor {
    match (parent, kind) {
        (GroupDescriptor::Semidirect, SubgroupKind::ZFactor) => GroupDescriptor::Integers,
        (GroupDescriptor::Product(ga, gb), SubgroupKind::Product(ka, kb)) => {
            if is_trivial(kb) {
                base_group(ga, ka)
            } else if is_trivial(ka) {
                base_group(gb, kb)
            } else {
                GroupDescriptor::product(base_group(ga, ka), base_group(gb, kb))
            }
        }
        _ => parent.clone(),
    }
}

fn embed(parent: &GroupDescriptor, kind: &SubgroupKind, h: &Element) -> Element {
    match (parent, kind, h) {
        (GroupDescriptor::Semidirect, SubgroupKind::ZFactor, Element::Semi(n, _)) => {
            Element::Int(n.clone())
        }
        (GroupDescriptor::Product(ga, gb), SubgroupKind::Product(ka, kb), Element::Pair(x, y)) => {
            if is_trivial(kb) {
                embed(ga, ka, x)
            } else if is_trivial(ka) {
                embed(gb, kb, y)
            } else {
                Element::pair(embed(ga, ka, x), embed(gb, kb, y))
            }
        }
        _ => h.clone(),
    }
}

fn lift(parent: &GroupDescriptor, kind: &SubgroupKind, b: &Element) -> Element {
    match (parent, kind) {
        (GroupDescriptor::Semidirect, SubgroupKind::ZFactor) => match b {
            Element::Int(n) => Element::Semi(n.clone(), false),
            _ => panic!("lift: {b} is not an integer"),
        },
        (GroupDescriptor::Product(ga, gb), SubgroupKind::Product(ka, kb)) => {
            if is_trivial(kb) {
                Element::pair(lift(ga, ka, b), gb.identity())
            } else if is_trivial(ka) {
                Element::pair(ga.identity(), lift(gb, kb, b))
            } else {
                match b {
                    Element::Pair(x, y) => Element::pair(lift(ga, ka, x), lift(gb, kb, y)),
                    _ => panic!("lift: {b} is not a pair"),
                }
            }
        }
        _ => b.clone(),
    }
}

/// A right coset `Hg`, identified by its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coset(pub Element);

impl fmt::Display for Coset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H{}", self.0)
    }
}

/// `H\G` with a fixed section `s` satisfying `s(H) = e`.
///
/// The default section sends each coset to its canonical representative.
/// A non-identity `shift ∈ H` gives the alternative section
/// `s'(θ) = shift · s(θ)` on every coset other than `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetSpace {
    sub: Subgroup,
    shift: Option<Element>,
}

impl CosetSpace {
    pub fn new(sub: Subgroup) -> Result<Self> {
        if matches!(sub.kind, SubgroupKind::Kernel(_)) {
            return Err(Error::UnsupportedSubgroup {
                subgroup: sub.kind.to_string(),
                group: sub.parent.to_string(),
            });
        }
        Ok(CosetSpace { sub, shift: None })
    }

    pub fn with_shift(sub: Subgroup, shift: Element) -> Result<Self> {
        let mut cs = CosetSpace::new(sub)?;
        if !cs.sub.contains(&shift) {
            return Err(Error::BadSectionShift(shift.to_string()));
        }
        if !cs.group().is_identity(&shift) {
            cs.shift = Some(shift);
        }
        Ok(cs)
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.sub.parent
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.sub
    }

    pub fn shift(&self) -> Option<&Element> {
        self.shift.as_ref()
    }

    pub fn index(&self) -> Index {
        self.sub.index()
    }

    pub fn identity_coset(&self) -> Coset {
        Coset(self.group().identity())
    }

    pub fn coset_of(&self, g: &Element) -> Coset {
        Coset(rep(&self.sub.parent, &self.sub.kind, g))
    }

    pub fn section(&self, theta: &Coset) -> Element {
        let g = self.group();
        match &self.shift {
            Some(shift) if !g.is_identity(&theta.0) => g.mul(shift, &theta.0),
            _ => theta.0.clone(),
        }
    }

    /// The right action `θ ↦ θg`.
    pub fn act(&self, theta: &Coset, g: &Element) -> Coset {
        self.coset_of(&self.group().mul(&theta.0, g))
    }

    /// Writes `g = h · s(θ)` with `h ∈ H`.
    pub fn decompose(&self, g: &Element) -> (Element, Coset) {
        let theta = self.coset_of(g);
        let h = self.group().div(g, &self.section(&theta));
        (h, theta)
    }

    /// `(s(θ)·g₀·s(θg₀)⁻¹, θg₀)`.
    pub fn cocycle(&self, theta: &Coset, g0: &Element) -> (Element, Coset) {
        let g = self.group();
        let next = self.act(theta, g0);
        let h = g.div(&g.mul(&self.section(theta), g0), &self.section(&next));
        (h, next)
    }

    /// The cosets, when there are finitely many.
    pub fn cosets(&self) -> Result<Vec<Coset>> {
        match coset_reps(&self.sub.parent, &self.sub.kind) {
            Some(reps) => Ok(reps.into_iter().map(Coset).collect()),
            None => Err(Error::InfiniteIndex),
        }
    }

    /// Splits `F` as the disjoint union of `F_θ · s(θ)` with `F_θ ⊆ H`.
    /// Each block keeps the order of `F`.
    pub fn coset_partition(&self, elements: &[Element]) -> BTreeMap<Coset, Vec<Element>> {
        let mut out: BTreeMap<Coset, Vec<Element>> = BTreeMap::new();
        for g in elements {
            let (h, theta) = self.decompose(g);
            let block = out.entry(theta).or_default();
            if !block.contains(&h) {
                block.push(h);
            }
        }
        out
    }

    fn fixes_every_coset(&self, g: &Element) -> bool {
        match self.cosets() {
            Ok(cosets) => cosets.iter().all(|t| self.act(t, g) == *t),
            Err(_) => false,
        }
    }

    /// Permutations of the coset list induced by each generator of `G`.
    fn generator_permutations(&self) -> Result<Vec<Vec<usize>>> {
        let cosets = self.cosets()?;
        let position: HashMap<&Coset, usize> =
            cosets.iter().enumerate().map(|(i, c)| (c, i)).collect();
        Ok(self
            .group()
            .generators()
            .iter()
            .map(|(_, g)| cosets.iter().map(|t| position[&self.act(t, g)]).collect())
            .collect())
    }

    /// Order of the permutation group `G` induces on `H\G`, by closure.
    fn action_image_order(&self) -> BigInt {
        let Ok(perms) = self.generator_permutations() else {
            return BigInt::zero();
        };
        let r = perms
            .first()
            .map_or_else(|| self.cosets().map_or(1, |c| c.len()), Vec::len);
        let id: Vec<usize> = (0..r).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for gen in &perms {
                let q: Vec<usize> = p.iter().map(|&i| gen[i]).collect();
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        BigInt::from(seen.len())
    }

    /// The normal core `⋂ g⁻¹Hg`, computed as the kernel of the permutation
    /// action of `G` on `H\G`.
    pub fn normal_core(&self) -> Result<Subgroup> {
        if !self.index().is_finite() {
            return Err(Error::InfiniteIndex);
        }
        let normal = self
            .sub
            .generators()
            .iter()
            .all(|h| self.fixes_every_coset(h));
        if normal {
            return Ok(self.sub.clone());
        }
        Ok(Subgroup {
            parent: self.sub.parent.clone(),
            kind: SubgroupKind::Kernel(Box::new(self.clone())),
        })
    }

    /// First element of `ball(radius)` outside every listed set `a⁻¹·H·b·g`.
    ///
    /// Only meaningful for infinite index, where finitely many such cosets
    /// never cover `G`; the search radius is the caller's budget.
    pub fn neumann_witness(
        &self,
        excluded: &[(Element, Element, Element)],
        radius: usize,
    ) -> Result<Element> {
        if let Index::Finite(n) = self.index() {
            return Err(Error::FiniteIndex(n.to_string()));
        }
        let g = self.group();
        let outside = |x: &Element| {
            excluded.iter().all(|(a, b, t)| {
                let probe = g.mul(&g.mul(&g.mul(a, x), &g.inv(t)), &g.inv(b));
                !self.sub.contains(&probe)
            })
        };
        g.ball(radius).into_iter().find(outside).ok_or_else(|| {
            Error::Budget(format!(
                "no element of word length <= {radius} avoids {} excluded cosets",
                excluded.len()
            ))
        })
    }
}
