use std::sync::Arc;

use crate::coset::Subgroup;
use crate::error::{Error, Result};
use crate::group::{Element, GroupDescriptor};

use super::{Constraint, Query, Region, Scope, System, Verdict, Witness};

/// The action of a subgroup `H ≤ G` on the same space, written over the
/// group `H` acts through (see [`Subgroup::base_group`]).
#[derive(Debug, Clone)]
pub struct Restriction {
    inner: Arc<dyn System>,
    sub: Subgroup,
    group: GroupDescriptor,
}

impl Restriction {
    pub fn new(inner: Arc<dyn System>, sub: Subgroup) -> Result<Self> {
        if sub.parent() != inner.group() {
            return Err(Error::GroupMismatch {
                expected: sub.parent().to_string(),
                found: inner.group().to_string(),
            });
        }
        Ok(Restriction {
            group: sub.base_group(),
            inner,
            sub,
        })
    }

    pub fn inner(&self) -> &Arc<dyn System> {
        &self.inner
    }

    /// The element of `G` that `h` stands for.
    pub fn lift(&self, h: &Element) -> Result<Element> {
        self.group.check(h)?;
        let g = self.sub.lift(h);
        if !self.sub.contains(&g) {
            return Err(Error::ForeignElement {
                element: h.to_string(),
                group: self.sub.to_string(),
            });
        }
        Ok(g)
    }

    fn lift_query(&self, q: &Query) -> Result<Query> {
        Ok(Query::new(
            q.constraints()
                .iter()
                .map(|c| {
                    Ok(Constraint {
                        g: self.lift(&c.g)?,
                        region: c.region.clone(),
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        ))
    }
}

impl System for Restriction {
    fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    fn name(&self) -> String {
        format!("{} restricted to {}", self.inner.name(), self.sub)
    }

    fn emptiness(&self, query: &Query) -> Result<Verdict> {
        self.inner.emptiness(&self.lift_query(query)?)
    }

    fn contains(&self, w: &Witness, region: &Region) -> Result<bool> {
        self.inner.contains(w, region)
    }

    fn act(&self, h: &Element, w: &Witness) -> Result<Witness> {
        self.inner.act(&self.lift(h)?, w)
    }

    fn admissible(&self, w: &Witness) -> Result<bool> {
        self.inner.admissible(w)
    }

    fn universe(&self, queries: &[Query]) -> Result<Vec<Witness>> {
        let lifted = queries
            .iter()
            .map(|q| self.lift_query(q))
            .collect::<Result<Vec<_>>>()?;
        self.inner.universe(&lifted)
    }

    fn scope(&self) -> Scope {
        self.inner.scope()
    }
}
