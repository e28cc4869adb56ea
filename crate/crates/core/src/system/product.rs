use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Element, GroupDescriptor};

use super::{
    cartesian, unknown_region, unknown_witness, Constraint, Query, Region, System, Verdict,
    Witness, UNIVERSE_CAP,
};

/// The diagonal action of `G` on `X^k`.
#[derive(Debug, Clone)]
pub struct ProductSystem {
    base: Arc<dyn System>,
    factors: usize,
}

impl ProductSystem {
    pub fn new(base: Arc<dyn System>, factors: usize) -> Result<Self> {
        if factors == 0 {
            return Err(Error::InvalidSystem(
                "product needs at least one factor".into(),
            ));
        }
        Ok(ProductSystem { base, factors })
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn base(&self) -> &Arc<dyn System> {
        &self.base
    }

    /// Per-factor queries.
    fn split(&self, query: &Query) -> Result<Vec<Query>> {
        let mut parts: Vec<Vec<Constraint>> = vec![Vec::new(); self.factors];
        for c in query.constraints() {
            match &c.region {
                Region::Whole => {}
                Region::Tuple(regions) if regions.len() == self.factors => {
                    for (part, r) in parts.iter_mut().zip(regions) {
                        part.push(Constraint {
                            g: c.g.clone(),
                            region: r.clone(),
                        });
                    }
                }
                other => return Err(unknown_region(self, other)),
            }
        }
        Ok(parts.into_iter().map(Query::new).collect())
    }

    fn components<'a>(&self, w: &'a Witness) -> Result<&'a [Witness]> {
        match w {
            Witness::Tuple { components } if components.len() == self.factors => Ok(components),
            _ => Err(unknown_witness(self)),
        }
    }
}

impl System for ProductSystem {
    fn group(&self) -> &GroupDescriptor {
        self.base.group()
    }

    fn name(&self) -> String {
        format!("product({}, {})", self.base.name(), self.factors)
    }

    fn emptiness(&self, query: &Query) -> Result<Verdict> {
        let mut components = Vec::with_capacity(self.factors);
        for part in self.split(query)? {
            match self.base.emptiness(&part)? {
                Verdict::Witness(w) => components.push(w),
                Verdict::Empty => return Ok(Verdict::Empty),
            }
        }
        Ok(Verdict::Witness(Witness::Tuple { components }))
    }

    fn contains(&self, w: &Witness, region: &Region) -> Result<bool> {
        let parts = self.components(w)?;
        match region {
            Region::Whole => Ok(true),
            Region::Tuple(regions) if regions.len() == self.factors => {
                for (p, r) in parts.iter().zip(regions) {
                    if !self.base.contains(p, r)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            other => Err(unknown_region(self, other)),
        }
    }

    fn act(&self, g: &Element, w: &Witness) -> Result<Witness> {
        let components = self
            .components(w)?
            .iter()
            .map(|p| self.base.act(g, p))
            .collect::<Result<_>>()?;
        Ok(Witness::Tuple { components })
    }

    fn admissible(&self, w: &Witness) -> Result<bool> {
        for p in self.components(w)? {
            if !self.base.admissible(p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn universe(&self, queries: &[Query]) -> Result<Vec<Witness>> {
        let mut per_factor: Vec<Vec<Query>> = vec![Vec::new(); self.factors];
        for q in queries {
            for (slot, part) in per_factor.iter_mut().zip(self.split(q)?) {
                slot.push(part);
            }
        }
        let lists = per_factor
            .iter()
            .map(|qs| self.base.universe(qs))
            .collect::<Result<Vec<_>>>()?;
        Ok(cartesian(&lists, UNIVERSE_CAP)?
            .into_iter()
            .map(|components| Witness::Tuple { components })
            .collect())
    }

    fn scope(&self) -> super::Scope {
        self.base.scope()
    }
}
