use dashmap::DashMap;

use crate::error::Result;
use crate::group::{Element, GroupDescriptor};

use super::{Query, Region, Scope, System, Verdict, Witness};

/// Caches emptiness answers by canonical query. Concurrent callers may both
/// compute a missing entry; the oracle is deterministic, so either result
/// is the same.
#[derive(Debug)]
pub struct Memo<'a> {
    inner: &'a dyn System,
    cache: DashMap<Query, Verdict>,
}

impl<'a> Memo<'a> {
    pub fn new(inner: &'a dyn System) -> Self {
        Memo {
            inner,
            cache: DashMap::new(),
        }
    }

    pub fn cached(&self) -> usize {
        self.cache.len()
    }
}

impl System for Memo<'_> {
    fn group(&self) -> &GroupDescriptor {
        self.inner.group()
    }

    fn name(&self) -> String {
        self.inner.name()
    }

    fn emptiness(&self, query: &Query) -> Result<Verdict> {
        if let Some(v) = self.cache.get(query) {
            return Ok(v.clone());
        }
        let v = self.inner.emptiness(query)?;
        self.cache.insert(query.clone(), v.clone());
        Ok(v)
    }

    fn contains(&self, w: &Witness, region: &Region) -> Result<bool> {
        self.inner.contains(w, region)
    }

    fn act(&self, g: &Element, w: &Witness) -> Result<Witness> {
        self.inner.act(g, w)
    }

    fn admissible(&self, w: &Witness) -> Result<bool> {
        self.inner.admissible(w)
    }

    fn universe(&self, queries: &[Query]) -> Result<Vec<Witness>> {
        self.inner.universe(queries)
    }

    fn scope(&self) -> Scope {
        self.inner.scope()
    }
}
