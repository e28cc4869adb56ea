//! Covering numbers, pattern complexity `p*(n)`, sequence-entropy prefix
//! samples and `h*` reports.
//!
//! A cover is a finite list of cells, each a [`Query`]; a region `R` is the
//! one-constraint cell `(e, R)`. Covering numbers are computed on the atoms
//! returned by [`System::universe`].

mod report;
mod setcover;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::Element;
use crate::independence::SearchConfig;
use crate::system::{Query, Region, System, UNIVERSE_CAP};

pub use report::{
    h_star_report, Ceiling, CoverSample, EntropyReport, HStarRequest, LowerBound, TupleOutcome,
};

use setcover::Bits;

/// Largest atom count for the exact set-cover solver.
pub const EXACT_UNIVERSE: usize = 4096;
/// Largest number of (reduced) cells for the exact set-cover solver.
pub const EXACT_CELLS: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cover {
    cells: Vec<Query>,
}

impl Cover {
    /// A cover by regions, checked against the atoms of `sys`.
    pub fn new(sys: &dyn System, regions: Vec<Region>) -> Result<Cover> {
        let e = sys.group().identity();
        Cover::from_cells(
            sys,
            regions
                .into_iter()
                .map(|r| Query::from_pairs([(e.clone(), r)]))
                .collect(),
        )
    }

    pub fn from_cells(sys: &dyn System, cells: Vec<Query>) -> Result<Cover> {
        if cells.is_empty() {
            return Err(Error::NotACover("no cells".into()));
        }
        let cover = Cover { cells };
        if !cover.has_whole_cell() {
            atom_table(sys, &cover)?;
        }
        Ok(cover)
    }

    pub fn cells(&self) -> &[Query] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    fn has_whole_cell(&self) -> bool {
        self.cells
            .iter()
            .any(|c| c.constraints().iter().all(|k| k.region == Region::Whole))
    }
}

/// Atom count and, per cell, the atoms it contains. Fails when some atom
/// lies in no cell.
fn atom_table(sys: &dyn System, cover: &Cover) -> Result<(usize, Vec<Bits>)> {
    let atoms = sys.universe(&cover.cells)?;
    if atoms.len() > UNIVERSE_CAP {
        return Err(Error::Budget(format!(
            "universe larger than {UNIVERSE_CAP} atoms"
        )));
    }
    let mut sets = vec![Bits::empty(atoms.len()); cover.cells.len()];
    for (a, w) in atoms.iter().enumerate() {
        let mut hit = false;
        for (cell, set) in cover.cells.iter().zip(sets.iter_mut()) {
            if sys.satisfies(w, cell)? {
                set.set(a);
                hit = true;
            }
        }
        if !hit {
            return Err(Error::NotACover(format!("no cell contains {w:?}")));
        }
    }
    Ok((atoms.len(), sets))
}

/// `N(U)` with its bounds. `exact` holds when the solver was exact or the
/// two bounds met.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringNumber {
    pub value: u64,
    pub lower: u64,
    pub upper: u64,
    pub exact: bool,
    pub atoms: u64,
}

impl CoveringNumber {
    fn exact(value: u64, atoms: u64) -> Self {
        CoveringNumber {
            value,
            lower: value,
            upper: value,
            exact: true,
            atoms,
        }
    }
}

/// Minimal subcover size. Exact branch and bound on small instances,
/// otherwise greedy (upper) and a pairwise-separated atom family (lower).
pub fn covering_number(sys: &dyn System, cover: &Cover) -> Result<CoveringNumber> {
    if cover.has_whole_cell() {
        return Ok(CoveringNumber::exact(1, 1));
    }
    let (n, sets) = atom_table(sys, cover)?;
    let sets = setcover::reduce(&sets);
    if n <= EXACT_UNIVERSE && sets.len() <= EXACT_CELLS {
        return Ok(CoveringNumber::exact(
            setcover::exact(n, &sets) as u64,
            n as u64,
        ));
    }
    let upper = setcover::greedy(n, &sets) as u64;
    let lower = setcover::packing(n, &sets) as u64;
    Ok(CoveringNumber {
        value: upper,
        lower,
        upper,
        exact: lower == upper,
        atoms: n as u64,
    })
}

/// `⋁ α_{g_i⁻¹}(U)` with empty cells dropped. Cells are listed in
/// lexicographic order of their cell indices.
pub fn join_pullback(sys: &dyn System, cover: &Cover, tuple: &[Element]) -> Result<Cover> {
    let group = sys.group();
    let mut cells = vec![Query::default()];
    for g in tuple {
        group.check(g)?;
        let pulled: Vec<Query> = cover.cells.iter().map(|c| c.pull_back(group, g)).collect();
        let mut next = Vec::new();
        for acc in &cells {
            for p in &pulled {
                let cell = acc.and(p);
                if !sys.emptiness(&cell)?.is_empty() {
                    if next.len() >= UNIVERSE_CAP {
                        return Err(Error::Budget(format!(
                            "join has more than {UNIVERSE_CAP} cells"
                        )));
                    }
                    next.push(cell);
                }
            }
        }
        cells = next;
    }
    Ok(Cover { cells })
}

/// `p*(n)` restricted to `n`-tuples from `pool`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternComplexity {
    pub n: usize,
    /// Largest lower bound over the tuples.
    pub value: u64,
    /// Largest upper bound over the tuples.
    pub upper: u64,
    pub exact: bool,
    pub argmax: Vec<Element>,
    pub tuples: u64,
}

impl PatternComplexity {
    pub fn rate(&self) -> f64 {
        (self.value as f64).ln() / self.n as f64
    }
}

/// Multisets of size `n` from `0..m`, as non-decreasing index vectors.
fn multisets(m: usize, n: usize, cap: u64) -> Result<Vec<Vec<usize>>> {
    // C(m + n - 1, n), checked against the cap.
    let mut count: u128 = 1;
    for i in 0..n as u128 {
        count = count * (m as u128 + i) / (i + 1);
        if count > cap as u128 {
            return Err(Error::Budget(format!(
                "more than {cap} {n}-tuples from a pool of {m}"
            )));
        }
    }
    let mut out = Vec::with_capacity(count as usize);
    if m == 0 {
        return Ok(out);
    }
    let mut cur = vec![0usize; n];
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n).rev().find(|&i| cur[i] + 1 < m) else {
            return Ok(out);
        };
        let v = cur[i] + 1;
        for slot in &mut cur[i..] {
            *slot = v;
        }
    }
}

/// Maximum of `N(⋁ α_{g_i⁻¹}(U))` over `n`-tuples from `pool`, with
/// repetition. A lower bound for the supremum over `Gⁿ`.
pub fn pattern_complexity(
    sys: &dyn System,
    cover: &Cover,
    n: usize,
    pool: &[Element],
    cfg: &SearchConfig,
) -> Result<PatternComplexity> {
    if n == 0 {
        return Err(Error::Invalid("p*(n) needs n >= 1".into()));
    }
    if pool.is_empty() {
        return Err(Error::Invalid(
            "pattern complexity needs a non-empty pool".into(),
        ));
    }
    let tuples = multisets(pool.len(), n, cfg.search_cap)?;
    let results = cfg.exec.map_slice(&tuples, |idx| {
        let t: Vec<Element> = idx.iter().map(|&i| pool[i].clone()).collect();
        covering_number(sys, &join_pullback(sys, cover, &t)?)
    });
    let mut best: Option<(CoveringNumber, usize)> = None;
    let mut upper = 0;
    for (i, r) in results.into_iter().enumerate() {
        let c = r?;
        upper = upper.max(c.upper);
        if best.is_none_or(|(b, _)| c.lower > b.lower) {
            best = Some((c, i));
        }
    }
    let (b, i) = best.expect("at least one tuple");
    Ok(PatternComplexity {
        n,
        value: b.lower,
        upper,
        exact: b.lower == upper,
        argmax: tuples[i].iter().map(|&j| pool[j].clone()).collect(),
        tuples: tuples.len() as u64,
    })
}

/// One point of a sequence-entropy prefix sample path.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeqSample {
    pub n: usize,
    pub covering: CoveringNumber,
    /// `log N / n`.
    pub rate: f64,
}

/// `(n, log N(⋁_{i≤n} α_{g_i⁻¹}(U)) / n)` for every prefix of `sequence`.
/// These are prefix samples of a limsup; no limit is claimed.
pub fn seq_entropy_sample(
    sys: &dyn System,
    cover: &Cover,
    sequence: &[Element],
) -> Result<Vec<SeqSample>> {
    let group = sys.group();
    let mut join = Cover {
        cells: vec![Query::default()],
    };
    let mut out = Vec::with_capacity(sequence.len());
    for (i, g) in sequence.iter().enumerate() {
        group.check(g)?;
        let step = join_pullback(sys, cover, std::slice::from_ref(g))?;
        let mut cells = Vec::new();
        for a in &join.cells {
            for b in &step.cells {
                let cell = a.and(b);
                if !sys.emptiness(&cell)?.is_empty() {
                    cells.push(cell);
                }
            }
        }
        join = Cover { cells };
        let covering = covering_number(sys, &join)?;
        let n = i + 1;
        out.push(SeqSample {
            n,
            covering,
            rate: (covering.value as f64).ln() / n as f64,
        });
    }
    Ok(out)
}

/// First `g` in `pool` with `U₁ ∩ α_g(V₁)` and `U₂ ∩ α_g(V₂)` both nonempty.
/// `α_g(V)` is the constraint `(g⁻¹, V)`.
pub fn weak_mixing_witness(
    sys: &dyn System,
    u1: &Region,
    u2: &Region,
    v1: &Region,
    v2: &Region,
    pool: &[Element],
    exec: Exec,
) -> Result<Option<Element>> {
    let group = sys.group();
    let e = group.identity();
    for r in [u1, u2, v1, v2] {
        if sys
            .emptiness(&Query::from_pairs([(e.clone(), r.clone())]))?
            .is_empty()
        {
            return Err(Error::Invalid(format!("region {r} is empty")));
        }
    }
    for g in pool {
        group.check(g)?;
    }
    let found = exec.find_first(pool.len(), |i| {
        let gi = group.inv(&pool[i]);
        let hits = |u: &Region, v: &Region| -> Result<bool> {
            let q = Query::from_pairs([(e.clone(), u.clone()), (gi.clone(), v.clone())]);
            Ok(!sys.emptiness(&q)?.is_empty())
        };
        match hits(u1, v1).and_then(|a| Ok(a && hits(u2, v2)?)) {
            Ok(true) => Some(Ok(i)),
            Ok(false) => None,
            Err(err) => Some(Err(err)),
        }
    });
    match found {
        Some(r) => Ok(Some(pool[r?].clone())),
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupDescriptor;
    use crate::system::{FullShift, ShiftOfFiniteType, TrivialFinite};

    fn cyl(v: u32) -> Region {
        Region::cylinder([(Element::int(0), v)]).unwrap()
    }

    fn ints(xs: impl IntoIterator<Item = i64>) -> Vec<Element> {
        xs.into_iter().map(Element::int).collect()
    }

    fn shift2() -> FullShift {
        FullShift::new(2, GroupDescriptor::Integers).unwrap()
    }

    #[test]
    fn two_cell_cover() {
        let sys = shift2();
        let cover = Cover::new(&sys, vec![cyl(0), cyl(1)]).unwrap();
        assert_eq!(covering_number(&sys, &cover).unwrap().value, 2);
        let whole = Cover::new(&sys, vec![cyl(0), Region::Whole]).unwrap();
        assert_eq!(covering_number(&sys, &whole).unwrap().value, 1);
    }

    #[test]
    fn non_cover_rejected() {
        let sys = shift2();
        assert!(matches!(
            Cover::new(&sys, vec![cyl(0)]),
            Err(Error::NotACover(_))
        ));
    }

    #[test]
    fn joins() {
        let sys = shift2();
        let cover = Cover::new(&sys, vec![cyl(0), cyl(1)]).unwrap();
        assert_eq!(join_pullback(&sys, &cover, &ints([0])).unwrap(), cover);
        assert_eq!(join_pullback(&sys, &cover, &ints([0, 5])).unwrap().len(), 4);
        let gm = ShiftOfFiniteType::golden_mean();
        let cover = Cover::new(&gm, vec![cyl(0), cyl(1)]).unwrap();
        assert_eq!(join_pullback(&gm, &cover, &ints([0, 1])).unwrap().len(), 3);
    }

    #[test]
    fn full_shift_words() {
        let sys = shift2();
        let cover = Cover::new(&sys, vec![cyl(0), cyl(1)]).unwrap();
        for n in 1..=8 {
            let join = join_pullback(&sys, &cover, &ints(0..n)).unwrap();
            let c = covering_number(&sys, &join).unwrap();
            assert!(c.exact);
            assert_eq!(c.value, 1 << n);
        }
    }

    #[test]
    fn trivial_pattern_complexity() {
        let sys = TrivialFinite::new(2, GroupDescriptor::Integers).unwrap();
        let cover = Cover::new(&sys, vec![Region::points([0]), Region::points([1])]).unwrap();
        let p = pattern_complexity(&sys, &cover, 3, &ints(0..4), &SearchConfig::default()).unwrap();
        assert_eq!(p.value, 2);
        assert!(p.exact);
        let path = seq_entropy_sample(&sys, &cover, &ints(1..=4)).unwrap();
        assert!(path.iter().all(|s| s.covering.value == 2));
        assert!((path[3].rate - 2f64.ln() / 4.0).abs() < 1e-12);
    }

    #[test]
    fn full_shift_p_star() {
        let sys = shift2();
        let cover = Cover::new(&sys, vec![cyl(0), cyl(1)]).unwrap();
        let p = pattern_complexity(&sys, &cover, 3, &ints(0..3), &SearchConfig::default()).unwrap();
        assert_eq!(p.value, 8);
        assert_eq!(p.argmax, ints(0..3));
        let path = seq_entropy_sample(&sys, &cover, &ints(1..=5)).unwrap();
        assert!(path.iter().all(|s| (s.rate - 2f64.ln()).abs() < 1e-12));
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(3, 2, 100).unwrap().len(), 6);
        assert_eq!(multisets(1, 4, 100).unwrap(), vec![vec![0; 4]]);
        assert!(matches!(multisets(20, 10, 100), Err(Error::Budget(_))));
    }

    #[test]
    fn trivial_action_cannot_mix() {
        let sys = TrivialFinite::new(2, GroupDescriptor::Integers).unwrap();
        let (a, b) = (Region::points([0]), Region::points([1]));
        let w = weak_mixing_witness(&sys, &a, &a, &b, &a, &ints(-3..=3), Exec::Sequential);
        assert_eq!(w.unwrap(), None);
        let w = weak_mixing_witness(
            &sys,
            &Region::Whole,
            &Region::Whole,
            &Region::Whole,
            &Region::Whole,
            &ints([0, 1]),
            Exec::Parallel,
        );
        assert_eq!(w.unwrap(), Some(Element::int(0)));
    }
}
