//! Certifying and refuting independence sets.
//!
//! A set `I` is independent for a region tuple `(A₁, …, A_k)` when every
//! assignment `ω: I → {1..k}` leaves `⋂_{g∈I} α_g⁻¹(A_{ω(g)})` nonempty.
//! Certificates store one witness per assignment; refutations store one
//! failing assignment per candidate set. Both replay through the oracle.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::coinduce::CoinducedSystem;
use crate::coset::{Coset, CosetSpace, Index};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::Element;
use crate::system::{Memo, Query, Region, Scope, System, Verdict, Witness};

/// Default cap on emptiness calls per independence check.
pub const DEFAULT_ASSIGNMENT_CAP: u64 = 1 << 18;

/// Limits and execution mode for the search engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest `k^|I|` a single independence check may enumerate.
    pub assignment_cap: u64,
    /// Total emptiness calls a maximization or refutation may spend.
    pub search_cap: u64,
    pub exec: Exec,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            assignment_cap: DEFAULT_ASSIGNMENT_CAP,
            search_cap: 1 << 22,
            exec: Exec::Parallel,
        }
    }
}

impl SearchConfig {
    pub fn with_exec(self, exec: Exec) -> Self {
        SearchConfig { exec, ..self }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceCertificate {
    pub system: String,
    pub tuple: Vec<Region>,
    pub set: Vec<Element>,
    /// One entry per assignment, in lexicographic order with the first
    /// element of `set` most significant.
    pub witnesses: Vec<(Vec<u32>, Witness)>,
    pub scope: Scope,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailingAssignment {
    pub set: Vec<Element>,
    pub assignment: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndependenceOutcome {
    Certificate(IndependenceCertificate),
    Failure(FailingAssignment),
}

impl IndependenceOutcome {
    pub fn certificate(self) -> Option<IndependenceCertificate> {
        match self {
            IndependenceOutcome::Certificate(c) => Some(c),
            IndependenceOutcome::Failure(_) => None,
        }
    }
}

fn check_tuple(tuple: &[Region]) -> Result<()> {
    if tuple.is_empty() {
        return Err(Error::Invalid("region tuple must be non-empty".into()));
    }
    Ok(())
}

/// `k^n`, or `None` past `cap`.
fn assignment_count(k: usize, n: usize, cap: u64) -> Option<u64> {
    let mut total: u64 = 1;
    for _ in 0..n {
        total = total.checked_mul(k as u64).filter(|&t| t <= cap)?;
    }
    Some(total)
}

/// Digits of `idx` in base `k`, most significant first.
fn assignment(mut idx: u64, k: usize, n: usize) -> Vec<u32> {
    let mut out = vec![0u32; n];
    for slot in out.iter_mut().rev() {
        *slot = (idx % k as u64) as u32;
        idx /= k as u64;
    }
    out
}

/// The query `{(g, A_{ω(g)}) : g ∈ set}`.
pub fn assignment_query(tuple: &[Region], set: &[Element], omega: &[u32]) -> Query {
    Query::from_pairs(
        set.iter()
            .zip(omega)
            .map(|(g, &w)| (g.clone(), tuple[w as usize].clone())),
    )
}

fn dedup_in_order(set: &[Element]) -> Vec<Element> {
    let mut seen = HashSet::new();
    set.iter()
        .filter(|g| seen.insert((*g).clone()))
        .cloned()
        .collect()
}

/// Checks every assignment on `set`. Returns a certificate, or the first
/// failing assignment in lexicographic order.
pub fn is_independent(
    sys: &dyn System,
    tuple: &[Region],
    set: &[Element],
    cfg: &SearchConfig,
) -> Result<IndependenceOutcome> {
    check_tuple(tuple)?;
    let set = dedup_in_order(set);
    for g in &set {
        sys.group().check(g)?;
    }
    let k = tuple.len();
    let total = assignment_count(k, set.len(), cfg.assignment_cap).ok_or_else(|| {
        Error::Budget(format!(
            "{k}^{} assignments exceed the cap of {}",
            set.len(),
            cfg.assignment_cap
        ))
    })?;
    let verdicts = cfg.exec.map_range(total as usize, |idx| {
        let omega = assignment(idx as u64, k, set.len());
        sys.emptiness(&assignment_query(tuple, &set, &omega))
            .map(|v| (omega, v))
    });
    let mut witnesses = Vec::with_capacity(verdicts.len());
    for r in verdicts {
        let (omega, v) = r?;
        match v {
            Verdict::Witness(w) => witnesses.push((omega, w)),
            Verdict::Empty => {
                return Ok(IndependenceOutcome::Failure(FailingAssignment {
                    set,
                    assignment: omega,
                }))
            }
        }
    }
    Ok(IndependenceOutcome::Certificate(IndependenceCertificate {
        system: sys.name(),
        tuple: tuple.to_vec(),
        set,
        witnesses,
        scope: sys.scope(),
    }))
}

/// Replays every stored witness and checks that all `k^|I|` assignments are
/// present exactly once.
pub fn verify_certificate(sys: &dyn System, cert: &IndependenceCertificate) -> Result<bool> {
    let k = cert.tuple.len();
    let n = cert.set.len();
    let Some(total) = assignment_count(k, n, u64::MAX) else {
        return Ok(false);
    };
    if cert.witnesses.len() as u64 != total {
        return Ok(false);
    }
    let distinct: HashSet<&Vec<u32>> = cert.witnesses.iter().map(|(o, _)| o).collect();
    if distinct.len() != cert.witnesses.len() {
        return Ok(false);
    }
    for (omega, w) in &cert.witnesses {
        if omega.len() != n || omega.iter().any(|&i| i as usize >= k) {
            return Ok(false);
        }
        if !sys.satisfies(w, &assignment_query(&cert.tuple, &cert.set, omega))? {
            return Ok(false);
        }
    }
    Ok(true)
}

impl IndependenceCertificate {
    /// The certificate for a subset, reusing witnesses of assignments that
    /// extend by the first region elsewhere.
    pub fn restrict(&self, subset: &[Element]) -> Result<IndependenceCertificate> {
        let positions: Vec<usize> = subset
            .iter()
            .map(|g| {
                self.set
                    .iter()
                    .position(|h| h == g)
                    .ok_or_else(|| Error::Invalid(format!("{g} is not in the certified set")))
            })
            .collect::<Result<_>>()?;
        let lookup: HashMap<&Vec<u32>, &Witness> =
            self.witnesses.iter().map(|(o, w)| (o, w)).collect();
        let k = self.tuple.len();
        let total = assignment_count(k, subset.len(), u64::MAX).expect("subset of a stored set");
        let mut witnesses = Vec::with_capacity(total as usize);
        for idx in 0..total {
            let omega = assignment(idx, k, subset.len());
            let mut full = vec![0u32; self.set.len()];
            for (&p, &w) in positions.iter().zip(&omega) {
                full[p] = w;
            }
            let w = lookup
                .get(&full)
                .ok_or_else(|| Error::Invalid("certificate is missing an assignment".into()))?;
            witnesses.push((omega, (*w).clone()));
        }
        Ok(IndependenceCertificate {
            system: self.system.clone(),
            tuple: self.tuple.clone(),
            set: subset.to_vec(),
            witnesses,
            scope: self.scope,
        })
    }

    /// Right translate by `g₀`: the set becomes `I·g₀` and each witness
    /// `x` becomes `α_{g₀⁻¹}(x)`.
    pub fn translate(&self, sys: &dyn System, g0: &Element) -> Result<IndependenceCertificate> {
        let g = sys.group();
        let back = g.inv(g0);
        Ok(IndependenceCertificate {
            system: self.system.clone(),
            tuple: self.tuple.clone(),
            set: self.set.iter().map(|h| g.mul(h, g0)).collect(),
            witnesses: self
                .witnesses
                .iter()
                .map(|(o, w)| Ok((o.clone(), sys.act(&back, w)?)))
                .collect::<Result<_>>()?,
            scope: self.scope,
        })
    }
}

/// Result of a maximization over subsets of a pool.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxIndependence {
    pub best: IndependenceCertificate,
    /// Every subset of the pool was decided.
    pub exhaustive: bool,
    /// Why the search stopped early, when it did.
    pub stopped: Option<String>,
    /// Candidate sets checked through the oracle.
    pub checked: u64,
}

/// Sorted position sets of one size, with heredity: a candidate of size
/// `n + 1` is generated only when all of its `n`-subsets are independent.
fn next_level(level: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let known: HashSet<&Vec<usize>> = level.iter().collect();
    let mut out = Vec::new();
    for (i, a) in level.iter().enumerate() {
        for b in &level[i + 1..] {
            let n = a.len();
            if a[..n - 1] != b[..n - 1] {
                // Levels are sorted, so no later `b` shares `a`'s prefix.
                break;
            }
            let mut cand = a.clone();
            cand.push(b[n - 1]);
            let all_subsets = (0..cand.len()).all(|skip| {
                let sub: Vec<usize> = cand
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != skip)
                    .map(|(_, &x)| x)
                    .collect();
                known.contains(&sub)
            });
            if all_subsets {
                out.push(cand);
            }
        }
    }
    out
}

fn pick(pool: &[Element], positions: &[usize]) -> Vec<Element> {
    positions.iter().map(|&i| pool[i].clone()).collect()
}

/// Largest independent subset of `pool`, searched level by level in pool
/// order. The first maximum-size set found is returned.
pub fn max_independence(
    sys: &dyn System,
    tuple: &[Region],
    pool: &[Element],
    cfg: &SearchConfig,
) -> Result<MaxIndependence> {
    check_tuple(tuple)?;
    let pool = dedup_in_order(pool);
    let memo = Memo::new(sys);
    let inner = SearchConfig {
        exec: Exec::Sequential,
        ..*cfg
    };
    let empty = is_independent(&memo, tuple, &[], &inner)?
        .certificate()
        .ok_or_else(|| Error::Invalid("the empty query has no witness".into()))?;
    let mut best = empty;
    let mut level: Vec<Vec<usize>> = (0..pool.len()).map(|i| vec![i]).collect();
    let mut spent: u64 = 0;
    let mut checked: u64 = 0;
    let k = tuple.len();
    while !level.is_empty() {
        let size = level[0].len();
        let per_set = match assignment_count(k, size, cfg.assignment_cap) {
            Some(c) => c,
            None => {
                return Ok(MaxIndependence {
                    best,
                    exhaustive: false,
                    stopped: Some(format!(
                        "{k}^{size} assignments exceed the cap of {}",
                        cfg.assignment_cap
                    )),
                    checked,
                })
            }
        };
        let cost = per_set.saturating_mul(level.len() as u64);
        if spent.saturating_add(cost) > cfg.search_cap {
            return Ok(MaxIndependence {
                best,
                exhaustive: false,
                stopped: Some(format!(
                    "{} candidate sets of size {size} exceed the search cap of {} calls",
                    level.len(),
                    cfg.search_cap
                )),
                checked,
            });
        }
        spent += cost;
        checked += level.len() as u64;
        let outcomes = cfg.exec.map_slice(&level, |pos| {
            is_independent(&memo, tuple, &pick(&pool, pos), &inner)
        });
        let mut survivors = Vec::new();
        for (pos, outcome) in level.iter().zip(outcomes) {
            if let IndependenceOutcome::Certificate(c) = outcome? {
                if survivors.is_empty() {
                    best = c;
                }
                survivors.push(pos.clone());
            }
        }
        level = next_level(&survivors);
    }
    Ok(MaxIndependence {
        best,
        exhaustive: true,
        stopped: None,
        checked,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefutationEntry {
    pub set: Vec<Element>,
    pub assignment: Vec<u32>,
}

/// Exhaustive evidence that no `size`-subset of `pool` is independent,
/// valid within `scope`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefutationRecord {
    pub system: String,
    pub tuple: Vec<Region>,
    pub pool: Vec<Element>,
    pub size: usize,
    pub scope: Scope,
    /// True when every `size`-subset has a failing assignment.
    pub refuted: bool,
    /// One entry per `size`-subset in lexicographic pool order.
    pub entries: Vec<RefutationEntry>,
    /// An independent `size`-subset, when the refutation fails.
    pub counterexample: Option<IndependenceCertificate>,
}

fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if size > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..size).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..size).rev().find(|&i| cur[i] != i + n - size) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..size {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Failing assignments by position set, filled in level order. Sets pruned
/// by heredity inherit the assignment of a failing subset, extended by the
/// first region on the new positions.
struct Failures {
    direct: HashMap<Vec<usize>, Vec<u32>>,
    independent: HashSet<Vec<usize>>,
}

impl Failures {
    fn failing(&mut self, set: &[usize]) -> Option<Vec<u32>> {
        if let Some(w) = self.direct.get(set) {
            return Some(w.clone());
        }
        if self.independent.contains(set) || set.len() <= 1 {
            return None;
        }
        for skip in 0..set.len() {
            let sub: Vec<usize> = set
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != skip)
                .map(|(_, &x)| x)
                .collect();
            if let Some(w) = self.failing(&sub) {
                let mut full = w;
                full.insert(skip, 0);
                self.direct.insert(set.to_vec(), full.clone());
                return Some(full);
            }
        }
        None
    }
}

/// Searches for an independent `size`-subset of `pool`; when none exists,
/// records a failing assignment for every `size`-subset and re-verifies
/// each one as `Empty`.
pub fn refute(
    sys: &dyn System,
    tuple: &[Region],
    pool: &[Element],
    size: usize,
    cfg: &SearchConfig,
) -> Result<RefutationRecord> {
    check_tuple(tuple)?;
    if size == 0 {
        return Err(Error::Invalid("refutation size must be at least 1".into()));
    }
    let pool = dedup_in_order(pool);
    let memo = Memo::new(sys);
    let inner = SearchConfig {
        exec: Exec::Sequential,
        ..*cfg
    };
    let k = tuple.len();
    let mut failures = Failures {
        direct: HashMap::new(),
        independent: HashSet::new(),
    };
    let mut level: Vec<Vec<usize>> = (0..pool.len()).map(|i| vec![i]).collect();
    let mut spent: u64 = 0;
    let mut counterexample = None;
    for n in 1..=size {
        let per_set = assignment_count(k, n, cfg.assignment_cap).ok_or_else(|| {
            Error::Budget(format!(
                "{k}^{n} assignments exceed the cap of {}",
                cfg.assignment_cap
            ))
        })?;
        spent = spent.saturating_add(per_set.saturating_mul(level.len() as u64));
        if spent > cfg.search_cap {
            return Err(Error::Budget(format!(
                "refutation needs more than {} emptiness calls",
                cfg.search_cap
            )));
        }
        let outcomes = cfg.exec.map_slice(&level, |pos| {
            is_independent(&memo, tuple, &pick(&pool, pos), &inner)
        });
        let mut survivors = Vec::new();
        for (pos, outcome) in level.iter().zip(outcomes) {
            match outcome? {
                IndependenceOutcome::Certificate(c) => {
                    failures.independent.insert(pos.clone());
                    survivors.push(pos.clone());
                    if n == size && counterexample.is_none() {
                        counterexample = Some(c);
                    }
                }
                IndependenceOutcome::Failure(f) => {
                    failures.direct.insert(pos.clone(), f.assignment);
                }
            }
        }
        if n == size {
            break;
        }
        level = next_level(&survivors);
    }

    let mut entries = Vec::new();
    if counterexample.is_none() {
        for pos in subsets_of_size(pool.len(), size) {
            let assignment = failures
                .failing(&pos)
                .expect("every non-independent set has a failing subset");
            entries.push(RefutationEntry {
                set: pick(&pool, &pos),
                assignment,
            });
        }
    }
    let record = RefutationRecord {
        system: sys.name(),
        tuple: tuple.to_vec(),
        pool,
        size,
        scope: sys.scope(),
        refuted: counterexample.is_none(),
        entries,
        counterexample,
    };
    if record.refuted && !verify_refutation(sys, &record, cfg.exec)? {
        return Err(Error::Invalid(
            "refutation entry failed re-verification".into(),
        ));
    }
    Ok(record)
}

/// Checks that the record covers every `size`-subset of its pool and that
/// each stored assignment is `Empty` under the oracle.
pub fn verify_refutation(sys: &dyn System, rec: &RefutationRecord, exec: Exec) -> Result<bool> {
    if !rec.refuted {
        return Ok(false);
    }
    let expected = subsets_of_size(rec.pool.len(), rec.size);
    if expected.len() != rec.entries.len() {
        return Ok(false);
    }
    for (pos, e) in expected.iter().zip(&rec.entries) {
        if pick(&rec.pool, pos) != e.set || e.assignment.len() != rec.size {
            return Ok(false);
        }
        if e.assignment.iter().any(|&w| w as usize >= rec.tuple.len()) {
            return Ok(false);
        }
    }
    let verdicts = exec.map_slice(&rec.entries, |e| {
        sys.emptiness(&assignment_query(&rec.tuple, &e.set, &e.assignment))
    });
    for v in verdicts {
        if !v?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Folds a certificate over `G` onto the largest block `F_θ∘ ⊆ H` of its
/// coset partition. Witnesses move by `α_{s(θ∘)}`; the result is replayed.
pub fn independence_fold(
    sys: &dyn System,
    cert: &IndependenceCertificate,
    cs: &CosetSpace,
) -> Result<(Coset, IndependenceCertificate)> {
    if !cs.index().is_finite() {
        return Err(Error::InfiniteIndex);
    }
    let g = cs.group();
    let blocks = cs.coset_partition(&cert.set);
    let (theta, block) = blocks
        .iter()
        .fold(None::<(&Coset, &Vec<Element>)>, |acc, (t, b)| match acc {
            Some((_, best)) if best.len() >= b.len() => acc,
            _ => Some((t, b)),
        })
        .ok_or_else(|| Error::Invalid("cannot fold an empty certificate".into()))?;
    let s = cs.section(theta);
    let originals: Vec<Element> = block.iter().map(|h| g.mul(h, &s)).collect();
    let restricted = cert.restrict(&originals)?;
    let folded = IndependenceCertificate {
        system: cert.system.clone(),
        tuple: cert.tuple.clone(),
        set: block.clone(),
        witnesses: restricted
            .witnesses
            .iter()
            .map(|(o, w)| Ok((o.clone(), sys.act(&s, w)?)))
            .collect::<Result<_>>()?,
        scope: cert.scope,
    };
    if !verify_certificate(sys, &folded)? {
        return Err(Error::Invalid("folded certificate failed replay".into()));
    }
    Ok((theta.clone(), folded))
}

/// Reads coordinate `θ` of a certificate over a co-induced system. Every
/// element of the set must fix `θ`; the base set is the cocycle image
/// `c(θ, g)` and the base witnesses are `f(θ)`.
pub fn coordinate_project(
    co: &CoinducedSystem,
    cert: &IndependenceCertificate,
    theta: &Coset,
) -> Result<IndependenceCertificate> {
    let cs = co.coset_space();
    let sub = cs.subgroup();
    let tuple = cert
        .tuple
        .iter()
        .map(|r| match r {
            Region::Coords(entries) => entries
                .iter()
                .find(|(t, _)| t == theta)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| Error::Unconstrained(theta.to_string())),
            _ => Err(Error::Unconstrained(theta.to_string())),
        })
        .collect::<Result<Vec<_>>>()?;
    let mut set = Vec::with_capacity(cert.set.len());
    for g in &cert.set {
        let (h, next) = cs.cocycle(theta, g);
        if next != *theta {
            return Err(Error::Invalid(format!(
                "{g} moves coordinate {theta} to {next}"
            )));
        }
        set.push(sub.embed(&h));
    }
    let witnesses = cert
        .witnesses
        .iter()
        .map(|(o, w)| Ok((o.clone(), co.coordinate(w, theta)?)))
        .collect::<Result<_>>()?;
    let projected = IndependenceCertificate {
        system: co.base().name(),
        tuple,
        set,
        witnesses,
        scope: co.base().scope(),
    };
    if !verify_certificate(co.base().as_ref(), &projected)? {
        return Err(Error::Invalid("projected certificate failed replay".into()));
    }
    Ok(projected)
}

/// Cosets constrained by a tuple of product regions.
fn tuple_cosets(tuple: &[Region]) -> Result<Vec<Coset>> {
    let mut out: BTreeMap<Coset, ()> = BTreeMap::new();
    for r in tuple {
        match r {
            Region::Coords(entries) => out.extend(entries.iter().map(|(c, _)| (c.clone(), ()))),
            Region::Whole => {}
            other => {
                return Err(Error::Invalid(format!(
                    "witness streams need product regions, got {other}"
                )))
            }
        }
    }
    Ok(out.into_keys().collect())
}

/// `g₁ = e`, then each `g_p` is the first ball element (smallest radius
/// first, up to `max_radius`) outside every `a_i⁻¹·H·a_j·g_q` with `q < p`,
/// where the `Ha_i` are the constrained cosets. Translated supports are then
/// pairwise disjoint, so every prefix is an independence set.
pub fn witness_stream(
    cs: &CosetSpace,
    tuple: &[Region],
    n: usize,
    max_radius: usize,
) -> Result<Vec<Element>> {
    if let Index::Finite(i) = cs.index() {
        return Err(Error::FiniteIndex(i.to_string()));
    }
    let reps: Vec<Element> = tuple_cosets(tuple)?.iter().map(|c| cs.section(c)).collect();
    let mut stream: Vec<Element> = Vec::with_capacity(n);
    if n == 0 {
        return Ok(stream);
    }
    stream.push(cs.group().identity());
    while stream.len() < n {
        let mut excluded: Vec<(Element, Element, Element)> = Vec::new();
        for g in &stream {
            for a in &reps {
                for b in &reps {
                    excluded.push((a.clone(), b.clone(), g.clone()));
                }
            }
        }
        // With no constrained cosets any new element works; still keep the
        // stream duplicate-free.
        let excluded = if excluded.is_empty() {
            stream
                .iter()
                .map(|g| (cs.group().identity(), cs.group().identity(), g.clone()))
                .collect()
        } else {
            excluded
        };
        let mut found = None;
        let mut last_err = None;
        for radius in 1..=max_radius {
            match cs.neumann_witness(&excluded, radius) {
                Ok(g) => {
                    found = Some(g);
                    break;
                }
                Err(e @ Error::Budget(_)) => last_err = Some(e),
                Err(e) => return Err(e),
            }
        }
        match found {
            Some(g) => stream.push(g),
            None => {
                return Err(last_err.unwrap_or_else(|| {
                    Error::Budget(format!("radius budget {max_radius} is zero"))
                }))
            }
        }
    }
    Ok(stream)
}

/// A certificate of size `n` for a tuple of product regions over an
/// infinite-index co-induced system, built from [`witness_stream`].
pub fn it_witness_stream(
    co: &CoinducedSystem,
    tuple: &[Region],
    n: usize,
    max_radius: usize,
    cfg: &SearchConfig,
) -> Result<IndependenceCertificate> {
    let stream = witness_stream(co.coset_space(), tuple, n, max_radius)?;
    match is_independent(co, tuple, &stream, cfg)? {
        IndependenceOutcome::Certificate(c) => Ok(c),
        IndependenceOutcome::Failure(f) => Err(Error::Invalid(format!(
            "stream set is not independent: assignment {:?} is empty (are the base regions non-empty?)",
            f.assignment
        ))),
    }
}
