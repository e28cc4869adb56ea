use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::group::Element;
use crate::independence::{
    max_independence, refute, IndependenceCertificate, RefutationRecord, SearchConfig,
};
use crate::system::{Query, Region, Scope, System};

use super::{pattern_complexity, Cover};

/// Inputs for [`h_star_report`].
#[derive(Clone, Debug)]
pub struct HStarRequest {
    /// Candidate region tuples; only pairwise disjoint, nonempty ones count.
    pub tuples: Vec<Vec<Region>>,
    pub pool: Vec<Element>,
    /// Independence-set size a tuple must reach to count as certified.
    pub target_size: usize,
    /// Size refuted for tuples one longer than the certified length.
    pub refute_size: Option<usize>,
    pub cover: Option<Cover>,
    /// Cover-route samples are taken for `n = 1..=max_n`.
    pub max_n: usize,
    pub config: SearchConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TupleOutcome {
    pub tuple: Vec<Region>,
    pub intrinsic: bool,
    /// Largest independence set found in the pool.
    pub best_size: usize,
    pub exhaustive: bool,
    pub certificate: Option<IndependenceCertificate>,
    pub refutation: Option<RefutationRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    pub k: usize,
    pub log_k: f64,
    pub certified_size: usize,
    /// Tuple lengths that reached the target size.
    pub certified_lengths: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ceiling {
    pub k: usize,
    pub log_k: f64,
    pub refuted_size: usize,
    pub scope: Scope,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverSample {
    pub n: usize,
    pub p_star: u64,
    pub exact: bool,
    /// `log p*(n) / n`.
    pub rate: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub system: String,
    pub pool_size: usize,
    pub lower: LowerBound,
    pub ceiling: Option<Ceiling>,
    /// `log k` when the ceiling meets the lower bound.
    pub pinned: Option<f64>,
    pub samples: Vec<CoverSample>,
    /// Smallest sample rate, which bounds `h*` of the cover within the pool.
    pub sample_inf: Option<f64>,
    pub scope: Scope,
    pub tuples: Vec<TupleOutcome>,
    pub notes: Vec<String>,
}

fn is_intrinsic(sys: &dyn System, tuple: &[Region]) -> Result<bool> {
    let e = sys.group().identity();
    let at_e = |rs: &[&Region]| Query::from_pairs(rs.iter().map(|r| (e.clone(), (*r).clone())));
    for (i, a) in tuple.iter().enumerate() {
        if sys.emptiness(&at_e(&[a]))?.is_empty() {
            return Ok(false);
        }
        for b in &tuple[i + 1..] {
            if !sys.emptiness(&at_e(&[a, b]))?.is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Bounds on `h*` by both routes: certified intrinsic tuples give `log k`
/// from below, refuted longer tuples give a ceiling within scope, and cover
/// samples `log p*(n)/n` are attached.
pub fn h_star_report(sys: &dyn System, req: &HStarRequest) -> Result<EntropyReport> {
    let cfg = &req.config;
    let mut notes = Vec::new();
    let mut tuples = Vec::new();
    let mut lower = LowerBound {
        k: 1,
        log_k: 0.0,
        certified_size: 0,
        certified_lengths: Vec::new(),
    };
    for t in &req.tuples {
        let intrinsic = is_intrinsic(sys, t)?;
        if !intrinsic {
            notes.push(format!(
                "tuple of length {} skipped: not pairwise disjoint",
                t.len()
            ));
            tuples.push(TupleOutcome {
                tuple: t.clone(),
                intrinsic,
                best_size: 0,
                exhaustive: false,
                certificate: None,
                refutation: None,
            });
            continue;
        }
        let m = max_independence(sys, t, &req.pool, cfg)?;
        if let Some(why) = &m.stopped {
            notes.push(format!("length {} search stopped: {why}", t.len()));
        }
        let size = m.best.set.len();
        if size >= req.target_size {
            lower.certified_lengths.push(t.len());
            if t.len() > lower.k || (t.len() == lower.k && size > lower.certified_size) {
                lower.k = t.len();
                lower.certified_size = size;
            }
        }
        tuples.push(TupleOutcome {
            tuple: t.clone(),
            intrinsic,
            best_size: size,
            exhaustive: m.exhaustive,
            certificate: Some(m.best),
            refutation: None,
        });
    }
    lower.certified_lengths.sort_unstable();
    lower.certified_lengths.dedup();
    lower.log_k = (lower.k as f64).ln();

    let mut ceiling = None;
    if let Some(size) = req.refute_size {
        let mut all_refuted = true;
        let mut any = false;
        let mut scope = sys.scope();
        for out in tuples.iter_mut() {
            if !out.intrinsic || out.tuple.len() != lower.k + 1 {
                continue;
            }
            any = true;
            let rec = refute(sys, &out.tuple, &req.pool, size, cfg)?;
            scope = scope.meet(rec.scope);
            all_refuted &= rec.refuted;
            out.refutation = Some(rec);
        }
        if any && all_refuted {
            ceiling = Some(Ceiling {
                k: lower.k,
                log_k: lower.log_k,
                refuted_size: size,
                scope,
            });
            notes.push(format!(
                "ceiling covers the supplied tuples of length {} and the pool only",
                lower.k + 1
            ));
        } else if !any {
            notes.push(format!(
                "no tuple of length {} supplied for refutation",
                lower.k + 1
            ));
        }
    }
    if ceiling.is_none() && !lower.certified_lengths.is_empty() {
        notes.push(format!(
            ">= log k for every certified length k in {:?}",
            lower.certified_lengths
        ));
    }
    let pinned = ceiling.as_ref().filter(|c| c.k == lower.k).map(|c| c.log_k);

    let mut samples = Vec::new();
    if let Some(cover) = &req.cover {
        for n in 1..=req.max_n {
            let p = pattern_complexity(sys, cover, n, &req.pool, cfg)?;
            samples.push(CoverSample {
                n,
                p_star: p.value,
                exact: p.exact,
                rate: p.rate(),
            });
        }
        notes.push("cover samples are prefix samples over the pool".into());
    }
    let sample_inf = samples.iter().map(|s| s.rate).reduce(f64::min);
    Ok(EntropyReport {
        system: sys.name(),
        pool_size: req.pool.len(),
        lower,
        ceiling,
        pinned,
        samples,
        sample_inf,
        scope: sys.scope(),
        tuples,
        notes,
    })
}
