//! Co-induction: lifting an `H`-system `X` to the `G`-system on `X^{H\G}`
//! with `α_{g₀}(f)(θ) = α_{c(θ,g₀)} f(θg₀)`, where `c` is the cocycle of the
//! coset space.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coset::{Coset, CosetSpace};
use crate::error::{Error, Result};
use crate::group::{Element, GroupDescriptor};
use crate::system::{
    cartesian, unknown_region, unknown_witness, Constraint, Query, Region, Scope, System, Verdict,
    Witness, UNIVERSE_CAP,
};

/// Per-coordinate base queries of a query over the co-induced system.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecomposedQuery {
    pub parts: BTreeMap<Coset, Query>,
}

impl DecomposedQuery {
    /// Number of base constraints over all coordinates.
    pub fn constraint_count(&self) -> usize {
        self.parts.values().map(Query::len).sum()
    }
}

fn coords_of<'a>(sys: &dyn System, region: &'a Region) -> Result<&'a [(Coset, Region)]> {
    match region {
        Region::Whole => Ok(&[]),
        Region::Coords(entries) => Ok(entries),
        other => Err(unknown_region(sys, other)),
    }
}

fn coords_witness(sys: &dyn System, w: &Witness) -> Result<BTreeMap<Coset, Witness>> {
    match w {
        Witness::Coords { cosets } => Ok(cosets.iter().cloned().collect()),
        _ => Err(unknown_witness(sys)),
    }
}

/// Runs the base oracle on every coordinate; empty as soon as one is.
fn solve_parts(base: &dyn System, parts: &BTreeMap<Coset, Query>) -> Result<Verdict> {
    let mut cosets = Vec::with_capacity(parts.len());
    for (phi, q) in parts {
        match base.emptiness(q)? {
            Verdict::Witness(w) => cosets.push((phi.clone(), w)),
            Verdict::Empty => return Ok(Verdict::Empty),
        }
    }
    Ok(Verdict::Witness(Witness::Coords { cosets }))
}

#[derive(Debug, Clone)]
pub struct CoinducedSystem {
    base: Arc<dyn System>,
    cs: CosetSpace,
}

impl CoinducedSystem {
    pub fn new(base: Arc<dyn System>, cs: CosetSpace) -> Result<Self> {
        let expected = cs.subgroup().base_group();
        if *base.group() != expected {
            return Err(Error::GroupMismatch {
                expected: expected.to_string(),
                found: base.group().to_string(),
            });
        }
        Ok(CoinducedSystem { base, cs })
    }

    pub fn base(&self) -> &Arc<dyn System> {
        &self.base
    }

    pub fn coset_space(&self) -> &CosetSpace {
        &self.cs
    }

    /// Constraint `(g₀, ∏ V_θ)` places `(c(θ,g₀), V_θ)` on coordinate `θg₀`.
    pub fn translate_query(&self, query: &Query) -> Result<DecomposedQuery> {
        let sub = self.cs.subgroup();
        let mut parts: BTreeMap<Coset, Vec<Constraint>> = BTreeMap::new();
        for c in query.constraints() {
            self.cs.group().check(&c.g)?;
            for (theta, v) in coords_of(self, &c.region)? {
                let (h, phi) = self.cs.cocycle(theta, &c.g);
                parts.entry(phi).or_default().push(Constraint {
                    g: sub.embed(&h),
                    region: v.clone(),
                });
            }
        }
        Ok(DecomposedQuery {
            parts: parts.into_iter().map(|(k, v)| (k, Query::new(v))).collect(),
        })
    }

    /// `f(θ)` of a co-induced witness.
    pub fn coordinate(&self, w: &Witness, theta: &Coset) -> Result<Witness> {
        coords_witness(self, w)?
            .remove(theta)
            .ok_or_else(|| Error::Unconstrained(theta.to_string()))
    }
}

impl System for CoinducedSystem {
    fn group(&self) -> &GroupDescriptor {
        self.cs.group()
    }

    fn name(&self) -> String {
        format!(
            "coinduce({}, {}, {})",
            self.base.name(),
            self.cs.subgroup().kind(),
            self.cs.group()
        )
    }

    fn emptiness(&self, query: &Query) -> Result<Verdict> {
        solve_parts(self.base.as_ref(), &self.translate_query(query)?.parts)
    }

    fn contains(&self, w: &Witness, region: &Region) -> Result<bool> {
        let f = coords_witness(self, w)?;
        for (theta, v) in coords_of(self, region)? {
            let x = f
                .get(theta)
                .ok_or_else(|| Error::Unconstrained(theta.to_string()))?;
            if !self.base.contains(x, v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn act(&self, g0: &Element, w: &Witness) -> Result<Witness> {
        let g = self.cs.group();
        let gi = g.inv(g0);
        let sub = self.cs.subgroup();
        let mut cosets = Vec::new();
        for (phi, x) in coords_witness(self, w)? {
            let theta = self.cs.act(&phi, &gi);
            let (h, back) = self.cs.cocycle(&theta, g0);
            debug_assert_eq!(back, phi);
            cosets.push((theta, self.base.act(&sub.embed(&h), &x)?));
        }
        cosets.sort();
        Ok(Witness::Coords { cosets })
    }

    fn admissible(&self, w: &Witness) -> Result<bool> {
        for x in coords_witness(self, w)?.values() {
            if !self.base.admissible(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn universe(&self, queries: &[Query]) -> Result<Vec<Witness>> {
        let mut per_coset: BTreeMap<Coset, Vec<Query>> = BTreeMap::new();
        for q in queries {
            for (phi, part) in self.translate_query(q)?.parts {
                per_coset.entry(phi).or_default().push(part);
            }
        }
        let keys: Vec<Coset> = per_coset.keys().cloned().collect();
        let lists = per_coset
            .values()
            .map(|qs| self.base.universe(qs))
            .collect::<Result<Vec<_>>>()?;
        Ok(cartesian(&lists, UNIVERSE_CAP)?
            .into_iter()
            .map(|xs| Witness::Coords {
                cosets: keys.iter().cloned().zip(xs).collect(),
            })
            .collect())
    }

    fn scope(&self) -> Scope {
        self.base.scope()
    }
}

/// The two-coordinate action of `ℤ⋊ℤ/2ℤ` on `X × X` written out by hand:
/// `(n,0)` sends `(f₀, f₁)` to `(Tⁿf₀, T⁻ⁿf₁)` and `(n,x)` sends it to
/// `(Tⁿf₁, T⁻ⁿf₀)`. Coordinates are the cosets `H(0,0)` and `H(0,x)`.
#[derive(Debug, Clone)]
pub struct DihedralPairSystem {
    base: Arc<dyn System>,
    group: GroupDescriptor,
}

impl DihedralPairSystem {
    pub fn new(base: Arc<dyn System>) -> Result<Self> {
        if *base.group() != GroupDescriptor::Integers {
            return Err(Error::GroupMismatch {
                expected: GroupDescriptor::Integers.to_string(),
                found: base.group().to_string(),
            });
        }
        Ok(DihedralPairSystem {
            base,
            group: GroupDescriptor::Semidirect,
        })
    }

    pub fn even() -> Coset {
        Coset(Element::semi(0, false))
    }

    pub fn odd() -> Coset {
        Coset(Element::semi(0, true))
    }

    fn slot(&self, theta: &Coset) -> Result<bool> {
        match &theta.0 {
            Element::Semi(n, u) if n == &0.into() => Ok(*u),
            other => Err(Error::UnknownRegion {
                region: format!("coordinate {other}"),
                system: self.name(),
            }),
        }
    }

    fn split(&self, g: &Element) -> Result<(num_bigint::BigInt, bool)> {
        match g {
            Element::Semi(n, u) => Ok((n.clone(), *u)),
            other => Err(Error::ForeignElement {
                element: other.to_string(),
                group: self.group.to_string(),
            }),
        }
    }

    fn coset(odd: bool) -> Coset {
        if odd {
            Self::odd()
        } else {
            Self::even()
        }
    }

    pub fn translate_query(&self, query: &Query) -> Result<DecomposedQuery> {
        let mut parts: BTreeMap<Coset, Vec<Constraint>> = BTreeMap::new();
        for c in query.constraints() {
            let (n, u) = self.split(&c.g)?;
            for (theta, v) in coords_of(self, &c.region)? {
                // α_g(f)(0) reads coordinate u under n; α_g(f)(x) reads the
                // other coordinate under −n.
                let (target, t) = if self.slot(theta)? {
                    (!u, -n.clone())
                } else {
                    (u, n.clone())
                };
                parts
                    .entry(Self::coset(target))
                    .or_default()
                    .push(Constraint {
                        g: Element::Int(t),
                        region: v.clone(),
                    });
            }
        }
        Ok(DecomposedQuery {
            parts: parts.into_iter().map(|(k, v)| (k, Query::new(v))).collect(),
        })
    }
}

impl System for DihedralPairSystem {
    fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    fn name(&self) -> String {
        format!("dihedral_pair({})", self.base.name())
    }

    fn emptiness(&self, query: &Query) -> Result<Verdict> {
        solve_parts(self.base.as_ref(), &self.translate_query(query)?.parts)
    }

    fn contains(&self, w: &Witness, region: &Region) -> Result<bool> {
        let f = coords_witness(self, w)?;
        for (theta, v) in coords_of(self, region)? {
            self.slot(theta)?;
            let x = f
                .get(theta)
                .ok_or_else(|| Error::Unconstrained(theta.to_string()))?;
            if !self.base.contains(x, v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn act(&self, g: &Element, w: &Witness) -> Result<Witness> {
        let (n, u) = self.split(g)?;
        let f = coords_witness(self, w)?;
        let mut cosets = Vec::new();
        // new(0) = Tⁿ f(u), new(x) = T⁻ⁿ f(1-u)
        if let Some(x) = f.get(&Self::coset(u)) {
            cosets.push((Self::even(), self.base.act(&Element::Int(n.clone()), x)?));
        }
        if let Some(x) = f.get(&Self::coset(!u)) {
            cosets.push((Self::odd(), self.base.act(&Element::Int(-n), x)?));
        }
        cosets.sort();
        Ok(Witness::Coords { cosets })
    }

    fn admissible(&self, w: &Witness) -> Result<bool> {
        for (theta, x) in coords_witness(self, w)? {
            self.slot(&theta)?;
            if !self.base.admissible(&x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn scope(&self) -> Scope {
        self.base.scope()
    }
}
