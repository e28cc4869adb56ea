//! Resolution of a parsed spec against the engines, and report assembly.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value as Json};

use crate::coinduce::{CoinducedSystem, DihedralPairSystem};
use crate::coset::{CosetSpace, Subgroup, SubgroupKind};
use crate::entropy::{h_star_report, seq_entropy_sample, weak_mixing_witness, Cover, HStarRequest};
use crate::error::Error;
use crate::exec::Exec;
use crate::group::{Element, GroupDescriptor};
use crate::independence::{
    is_independent, max_independence, refute, verify_certificate, verify_refutation,
    IndependenceOutcome, SearchConfig,
};
use crate::system::{
    Center, FullShift, ProductSystem, Query, Region, ShiftOfFiniteType, System, TrivialFinite,
};
use crate::x1::{similar_positions_verify, slice_scan, JumpTable, X1System};

use super::ast::*;
use super::parser::{parse_spec, ParseError};

/// Version of the JSON report layout.
pub const SCHEMA: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum DslError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid spec: {0}")]
    Spec(String),
    #[error(transparent)]
    Engine(#[from] Error),
}

impl DslError {
    /// 2 for budget exhaustion, 3 for specs that cannot be run, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            DslError::Parse(_) | DslError::Spec(_) => 3,
            DslError::Engine(e) => match e {
                Error::Budget(_) => 2,
                Error::ForeignElement { .. }
                | Error::UnsupportedSubgroup { .. }
                | Error::BadSectionShift(_)
                | Error::UnknownRegion { .. }
                | Error::GroupMismatch { .. }
                | Error::InvalidSystem(_)
                | Error::NotACover(_)
                | Error::SliceRange { .. } => 3,
                _ => 1,
            },
        }
    }
}

type DResult<T> = Result<T, DslError>;

fn spec_err(msg: impl Into<String>) -> DslError {
    DslError::Spec(msg.into())
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Overrides the per-check assignment cap.
    pub budget: Option<u64>,
    pub exec: Exec,
}

/// A finished experiment. `json` is deterministic for a given spec.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub json: String,
    pub table: String,
    pub csv: Option<String>,
}

#[derive(Clone)]
enum Shape {
    Plain,
    Coinduced {
        co: Arc<CoinducedSystem>,
        base: Box<Built>,
    },
    Dihedral {
        cs: CosetSpace,
        base: Box<Built>,
    },
    Product {
        base: Box<Built>,
    },
}

#[derive(Clone)]
struct Built {
    sys: Arc<dyn System>,
    shape: Shape,
}

struct Env<'a> {
    groups: HashMap<&'a str, GroupDescriptor>,
    subgroups: HashMap<&'a str, Subgroup>,
    systems: HashMap<&'a str, Built>,
    tuples: HashMap<&'a str, &'a [RegionExpr]>,
    covers: HashMap<&'a str, &'a [RegionExpr]>,
    pools: HashMap<&'a str, &'a PoolExpr>,
}

fn group_of(env: &Env, e: &GroupExpr) -> GroupDescriptor {
    match e {
        GroupExpr::Integers => GroupDescriptor::Integers,
        GroupExpr::Cyclic(n) => GroupDescriptor::Cyclic(*n),
        GroupExpr::Product(a, b) => GroupDescriptor::product(group_of(env, a), group_of(env, b)),
        GroupExpr::Semidirect => GroupDescriptor::Semidirect,
        GroupExpr::Named(n) => env.groups[n.as_str()].clone(),
    }
}

fn sub_kind(env: &Env, parent: &GroupDescriptor, e: &SubExpr) -> DResult<SubgroupKind> {
    Ok(match e {
        SubExpr::Whole => SubgroupKind::Whole,
        SubExpr::Trivial => SubgroupKind::Trivial,
        SubExpr::Multiples(k) => SubgroupKind::Multiples(*k),
        SubExpr::ZFactor => SubgroupKind::ZFactor,
        SubExpr::Product(a, b) => {
            let GroupDescriptor::Product(ga, gb) = parent else {
                return Err(spec_err(format!(
                    "product subgroup needs a product group, not {parent}"
                )));
            };
            SubgroupKind::Product(
                Box::new(sub_kind(env, ga, a)?),
                Box::new(sub_kind(env, gb, b)?),
            )
        }
        SubExpr::Core(h) => {
            let h = &env.subgroups[h.as_str()];
            if h.parent() != parent {
                return Err(spec_err(format!(
                    "core({}) lives in {}, not {parent}",
                    h,
                    h.parent()
                )));
            }
            CosetSpace::new(h.clone())?.normal_core()?.kind().clone()
        }
    })
}

fn element(e: &ElemExpr, g: &GroupDescriptor) -> DResult<Element> {
    let bad = || spec_err(format!("{e} is not an element of {g}"));
    Ok(match (g, e) {
        (GroupDescriptor::Integers, ElemExpr::Int(n)) => Element::Int(n.clone()),
        (GroupDescriptor::Cyclic(m), ElemExpr::Int(n)) => match n.to_u64() {
            Some(v) if v < *m => Element::Mod(v),
            _ => return Err(bad()),
        },
        (GroupDescriptor::Product(a, b), ElemExpr::Pair(x, y)) => {
            Element::pair(element(x, a)?, element(y, b)?)
        }
        (GroupDescriptor::Semidirect, ElemExpr::Pair(n, r)) => {
            let ElemExpr::Int(n) = n.as_ref() else {
                return Err(bad());
            };
            let refl = match r.as_ref() {
                ElemExpr::Refl => true,
                ElemExpr::Int(z) if z.is_zero() => false,
                _ => return Err(bad()),
            };
            Element::Semi(n.clone(), refl)
        }
        _ => return Err(bad()),
    })
}

fn center(c: &CenterExpr) -> Center {
    match c {
        CenterExpr::Finite(n) => Center::Finite(n.clone()),
        CenterExpr::Infinity => Center::Infinity,
    }
}

fn region(e: &RegionExpr, b: &Built) -> DResult<Region> {
    let group = b.sys.group();
    Ok(match e {
        RegionExpr::Whole => Region::Whole,
        RegionExpr::Cyl(pairs) => Region::cylinder(
            pairs
                .iter()
                .map(|(g, v)| Ok((element(g, group)?, *v)))
                .collect::<DResult<Vec<_>>>()?,
        )?,
        RegionExpr::Pts(p) => Region::points(p.iter().copied()),
        RegionExpr::NotPts(p) => Region::Points {
            points: p.iter().copied().collect(),
            complement: true,
        },
        RegionExpr::Nb(k, c) => Region::Nbhd {
            level: *k,
            center: center(c),
        },
        RegionExpr::APt(c) => Region::APoint(center(c)),
        RegionExpr::Coords(entries) => {
            let (cs, base) = match &b.shape {
                Shape::Coinduced { co, base } => (co.coset_space(), base),
                Shape::Dihedral { cs, base } => (cs, base),
                _ => {
                    return Err(spec_err(format!(
                        "coords(..) needs a co-induced system, not {}",
                        b.sys.name()
                    )))
                }
            };
            Region::coords(
                entries
                    .iter()
                    .map(|(g, r)| Ok((cs.coset_of(&element(g, group)?), region(r, base)?)))
                    .collect::<DResult<Vec<_>>>()?,
            )?
        }
        RegionExpr::Tuple(rs) => {
            let Shape::Product { base } = &b.shape else {
                return Err(spec_err(format!(
                    "tuple(..) needs a product system, not {}",
                    b.sys.name()
                )));
            };
            Region::Tuple(rs.iter().map(|r| region(r, base)).collect::<DResult<_>>()?)
        }
    })
}

fn pool(e: &PoolExpr, g: &GroupDescriptor) -> DResult<Vec<Element>> {
    match e {
        PoolExpr::Ball(r) => Ok(g.ball(*r as usize)),
        PoolExpr::List(xs) => xs.iter().map(|x| element(x, g)).collect(),
    }
}

fn build_system(env: &Env, e: &SysExpr) -> DResult<Built> {
    let plain = |sys: Arc<dyn System>| Built {
        sys,
        shape: Shape::Plain,
    };
    Ok(match e {
        SysExpr::FullShift { alphabet, group } => {
            plain(Arc::new(FullShift::new(*alphabet, group_of(env, group))?))
        }
        SysExpr::Trivial { points, group } => {
            plain(Arc::new(TrivialFinite::new(*points, group_of(env, group))?))
        }
        SysExpr::GoldenMean => plain(Arc::new(ShiftOfFiniteType::golden_mean())),
        SysExpr::Sft { rows } => plain(Arc::new(ShiftOfFiniteType::new(
            rows.iter()
                .map(|r| r.chars().map(|c| c == '1').collect())
                .collect(),
        )?)),
        SysExpr::X1 { k_max } => {
            let table = Arc::new(JumpTable::build(*k_max)?);
            plain(Arc::new(X1System::new(table, *k_max)?))
        }
        SysExpr::Coinduce {
            base,
            subgroup,
            shift,
        } => {
            let base = env.systems[base.as_str()].clone();
            let sub = env.subgroups[subgroup.as_str()].clone();
            let cs = match shift {
                Some(s) => {
                    let s = element(s, sub.parent())?;
                    CosetSpace::with_shift(sub, s)?
                }
                None => CosetSpace::new(sub)?,
            };
            let co = Arc::new(CoinducedSystem::new(base.sys.clone(), cs)?);
            Built {
                sys: co.clone(),
                shape: Shape::Coinduced {
                    co,
                    base: Box::new(base),
                },
            }
        }
        SysExpr::DihedralPair { base } => {
            let base = env.systems[base.as_str()].clone();
            let cs = CosetSpace::new(Subgroup::new(
                GroupDescriptor::Semidirect,
                SubgroupKind::ZFactor,
            )?)?;
            Built {
                sys: Arc::new(DihedralPairSystem::new(base.sys.clone())?),
                shape: Shape::Dihedral {
                    cs,
                    base: Box::new(base),
                },
            }
        }
        SysExpr::Product { base, factors } => {
            let base = env.systems[base.as_str()].clone();
            Built {
                sys: Arc::new(ProductSystem::new(base.sys.clone(), *factors as usize)?),
                shape: Shape::Product {
                    base: Box::new(base),
                },
            }
        }
    })
}

fn build_env(spec: &ExperimentSpec) -> DResult<Env<'_>> {
    let mut env = Env {
        groups: HashMap::new(),
        subgroups: HashMap::new(),
        systems: HashMap::new(),
        tuples: HashMap::new(),
        covers: HashMap::new(),
        pools: HashMap::new(),
    };
    for d in &spec.decls {
        match d {
            Decl::Group { name, expr } => {
                let g = group_of(&env, expr);
                env.groups.insert(name, g);
            }
            Decl::Subgroup { name, expr, group } => {
                let parent = env.groups[group.as_str()].clone();
                let kind = sub_kind(&env, &parent, expr)?;
                env.subgroups.insert(name, Subgroup::new(parent, kind)?);
            }
            Decl::System { name, expr } => {
                let b = build_system(&env, expr)?;
                env.systems.insert(name, b);
            }
            Decl::Tuple { name, regions } => {
                env.tuples.insert(name, regions);
            }
            Decl::Cover { name, regions } => {
                env.covers.insert(name, regions);
            }
            Decl::Pool { name, expr } => {
                env.pools.insert(name, expr);
            }
        }
    }
    Ok(env)
}

struct Args<'a> {
    verb: &'a Verb,
}

impl Args<'_> {
    fn name(&self, key: &str) -> Option<&str> {
        match self.verb.args.get(key) {
            Some(Value::Name(n)) => Some(n),
            _ => None,
        }
    }

    fn names(&self, key: &str) -> Vec<&str> {
        match self.verb.args.get(key) {
            Some(Value::List(ns)) => ns.iter().map(String::as_str).collect(),
            _ => Vec::new(),
        }
    }

    fn int(&self, key: &str) -> DResult<Option<u64>> {
        match self.verb.args.get(key) {
            Some(Value::Int(n)) => n.to_u64().map(Some).ok_or_else(|| {
                spec_err(format!("argument {key}={n} must be a non-negative integer"))
            }),
            _ => Ok(None),
        }
    }

    fn req_int(&self, key: &str) -> DResult<u64> {
        Ok(self.int(key)?.expect("required by the parser"))
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Json {
    serde_json::to_value(v).expect("reports serialize")
}

/// Parses and runs a spec.
pub fn run_text(text: &str, opts: &RunOptions) -> DResult<Report> {
    run_experiment(&parse_spec(text)?, opts)
}

/// Runs the verb of `spec`. Identical specs give byte-identical JSON; no
/// timings are embedded.
pub fn run_experiment(spec: &ExperimentSpec, opts: &RunOptions) -> DResult<Report> {
    let env = build_env(spec)?;
    let mut cfg = SearchConfig::default().with_exec(opts.exec);
    if let Some(b) = opts.budget {
        cfg.assignment_cap = b;
    }
    let args = Args { verb: &spec.verb };
    let system = args.name("system").map(|n| &env.systems[n]);
    let sys_ref = || system.expect("every verb but x1verify names a system");
    let tuple = |key: &str| -> DResult<Option<Vec<Region>>> {
        args.name(key)
            .map(|n| env.tuples[n].iter().map(|r| region(r, sys_ref())).collect())
            .transpose()
    };
    let pool_of = |key: &str| -> DResult<Option<Vec<Element>>> {
        args.name(key)
            .map(|n| pool(env.pools[n], sys_ref().sys.group()))
            .transpose()
    };
    let mut table = String::new();
    let mut csv = None;
    let result = match spec.verb.kind {
        VerbKind::Indep => {
            let b = sys_ref();
            let t = tuple("tuple")?.expect("required");
            let set = pool_of("set")?.expect("required");
            let out = is_independent(b.sys.as_ref(), &t, &set, &cfg)?;
            let verified = match &out {
                IndependenceOutcome::Certificate(c) => Some(verify_certificate(b.sys.as_ref(), c)?),
                IndependenceOutcome::Failure(_) => None,
            };
            match &out {
                IndependenceOutcome::Certificate(c) => writeln!(
                    table,
                    "independent: yes, {} assignments, replay {}",
                    c.witnesses.len(),
                    if verified == Some(true) {
                        "ok"
                    } else {
                        "FAILED"
                    }
                ),
                IndependenceOutcome::Failure(f) => {
                    writeln!(
                        table,
                        "independent: no, assignment {:?} is empty",
                        f.assignment
                    )
                }
            }
            .expect("string write");
            json!({ "outcome": to_json(&out), "replayed": verified })
        }
        VerbKind::MaxIndep => {
            let b = sys_ref();
            let t = tuple("tuple")?.expect("required");
            let p = pool_of("pool")?.expect("required");
            let m = max_independence(b.sys.as_ref(), &t, &p, &cfg)?;
            let ok = verify_certificate(b.sys.as_ref(), &m.best)?;
            writeln!(
                table,
                "largest independent subset: {} of {} (exhaustive: {}, replay {})",
                m.best.set.len(),
                p.len(),
                m.exhaustive,
                if ok { "ok" } else { "FAILED" }
            )
            .expect("string write");
            json!({ "search": to_json(&m), "replayed": ok })
        }
        VerbKind::Refute => {
            let b = sys_ref();
            let t = tuple("tuple")?.expect("required");
            let p = pool_of("pool")?.expect("required");
            let size = args.req_int("size")? as usize;
            let rec = refute(b.sys.as_ref(), &t, &p, size, &cfg)?;
            let ok = rec.refuted && verify_refutation(b.sys.as_ref(), &rec, cfg.exec)?;
            writeln!(
                table,
                "size {size} refuted: {} ({} subsets, scope {})",
                rec.refuted,
                rec.entries.len(),
                rec.scope
            )
            .expect("string write");
            json!({ "record": to_json(&rec), "replayed": ok })
        }
        VerbKind::Entropy => {
            let b = sys_ref();
            let regions: Vec<Region> = env.covers[args.name("cover").expect("required")]
                .iter()
                .map(|r| region(r, b))
                .collect::<DResult<_>>()?;
            let cover = Cover::new(b.sys.as_ref(), regions)?;
            let p = pool_of("pool")?.expect("required");
            let tuples = args
                .names("tuples")
                .into_iter()
                .map(|n| env.tuples[n].iter().map(|r| region(r, b)).collect())
                .collect::<DResult<Vec<Vec<Region>>>>()?;
            let req = HStarRequest {
                tuples,
                target_size: args.int("target")?.map_or(p.len(), |t| t as usize),
                refute_size: args.int("refute")?.map(|t| t as usize),
                pool: p,
                cover: Some(cover.clone()),
                max_n: args.req_int("n")? as usize,
                config: cfg,
            };
            let report = h_star_report(b.sys.as_ref(), &req)?;
            let sequence = match pool_of("seq")? {
                Some(s) => Some(seq_entropy_sample(b.sys.as_ref(), &cover, &s)?),
                None => None,
            };
            let mut rows = String::from("n,p_star,rate\n");
            writeln!(table, "{:>3}  {:>8}  {:>10}", "n", "p*", "log p*/n").expect("string write");
            for s in &report.samples {
                writeln!(rows, "{},{},{}", s.n, s.p_star, s.rate).expect("string write");
                writeln!(table, "{:>3}  {:>8}  {:>10.6}", s.n, s.p_star, s.rate)
                    .expect("string write");
            }
            writeln!(
                table,
                "lower bound: log {} = {:.6}",
                report.lower.k, report.lower.log_k
            )
            .expect("string write");
            if let Some(c) = &report.ceiling {
                writeln!(table, "ceiling: log {} within {}", c.k, c.scope).expect("string write");
            }
            csv = Some(rows);
            json!({ "report": to_json(&report), "sequence": to_json(&sequence) })
        }
        VerbKind::WeakMix => {
            let b = sys_ref();
            let t = tuple("tuple")?.expect("required");
            let [u1, u2, v1, v2] = t.as_slice() else {
                return Err(spec_err(
                    "weakmix needs a tuple of four regions: U1, U2, V1, V2",
                ));
            };
            let p = pool_of("pool")?.expect("required");
            let w = weak_mixing_witness(b.sys.as_ref(), u1, u2, v1, v2, &p, cfg.exec)?;
            match &w {
                Some(g) => writeln!(table, "weak-mixing witness: {g}"),
                None => writeln!(table, "no witness among {} elements", p.len()),
            }
            .expect("string write");
            json!({ "witness": to_json(&w), "pool_size": p.len() })
        }
        VerbKind::X1Verify => {
            let levels = u32::try_from(args.req_int("levels")?)
                .map_err(|_| spec_err("levels out of range"))?;
            let jt = JumpTable::build(levels)?;
            let invariants = jt.check_invariants();
            let similar = similar_positions_verify(&jt, levels.min(3))?;
            let scan_to = args.int("scan")?.map_or(levels.min(2), |s| s as u32);
            if scan_to > levels {
                return Err(spec_err(format!("scan={scan_to} exceeds levels={levels}")));
            }
            let scans = (1..=scan_to)
                .map(|k| slice_scan(&jt, k, cfg.exec))
                .collect::<Result<Vec<_>, _>>()?;
            writeln!(
                table,
                "jump table levels 1..={levels}: {} invariant violations",
                invariants.len()
            )
            .expect("string write");
            writeln!(
                table,
                "similar positions up to level {}: {} quadruples, {} violations",
                similar.bound,
                similar.quadruples,
                similar.violations.len()
            )
            .expect("string write");
            for s in &scans {
                writeln!(
                    table,
                    "slice scan level {}: {} comparisons, {} discrepancies",
                    s.level,
                    s.comparisons,
                    s.discrepancies.len()
                )
                .expect("string write");
            }
            json!({
                "jump_table": to_json(&jt.export()),
                "invariant_violations": invariants,
                "similar_positions": to_json(&similar),
                "slice_scans": to_json(&scans),
            })
        }
        VerbKind::CoinduceCheck => coinduce_check(
            sys_ref(),
            &pool_of("pool")?.expect("required"),
            tuple("tuple")?,
            &mut table,
        )?,
    };
    let config = match spec.verb.kind {
        VerbKind::X1Verify | VerbKind::CoinduceCheck | VerbKind::WeakMix => Json::Null,
        _ => json!({ "assignment_cap": cfg.assignment_cap, "search_cap": cfg.search_cap }),
    };
    let doc = json!({
        "schema": SCHEMA,
        "verb": spec.verb.kind.keyword(),
        "system": system.map(|b| b.sys.name()),
        "spec": spec.to_string(),
        "budget": config,
        "result": result,
    });
    let mut json = serde_json::to_string_pretty(&doc).expect("reports serialize");
    json.push('\n');
    Ok(Report { json, table, csv })
}

/// Cocycle identity `c(θ, g₁g₂) = c(θ, g₁)·c(θg₁, g₂)` over the pool, and
/// replay of `α_{g⁻¹}(w)` against `(g, R)` for each tuple region.
fn coinduce_check(
    b: &Built,
    pool: &[Element],
    tuple: Option<Vec<Region>>,
    table: &mut String,
) -> DResult<Json> {
    let Shape::Coinduced { co, .. } = &b.shape else {
        return Err(spec_err(format!(
            "coinduce-check needs a co-induced system, not {}",
            b.sys.name()
        )));
    };
    let cs = co.coset_space();
    let g = cs.group();
    let cosets: Vec<_> = match cs.cosets() {
        Ok(c) => c,
        Err(_) => pool
            .iter()
            .map(|x| cs.coset_of(x))
            .chain([cs.identity_coset()])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect(),
    };
    let mut checks = 0u64;
    let mut violations = Vec::new();
    if !g.is_identity(&cs.section(&cs.identity_coset())) {
        violations.push("section of H is not the identity".to_string());
    }
    for theta in &cosets {
        for g1 in pool {
            let (h1, t1) = cs.cocycle(theta, g1);
            if !cs.subgroup().contains(&h1) {
                violations.push(format!("c({theta}, {g1}) = {h1} lies outside H"));
            }
            for g2 in pool {
                let (h2, t2) = cs.cocycle(&t1, g2);
                let (h, t) = cs.cocycle(theta, &g.mul(g1, g2));
                checks += 1;
                if t != t2 || h != g.mul(&h1, &h2) {
                    violations.push(format!("cocycle identity fails at ({theta}, {g1}, {g2})"));
                }
            }
        }
    }
    let mut replays = 0u64;
    let mut replay_failures = Vec::new();
    let e = g.identity();
    for r in tuple.iter().flatten() {
        let Some(w) = b
            .sys
            .emptiness(&Query::from_pairs([(e.clone(), r.clone())]))?
            .witness()
        else {
            continue;
        };
        for x in pool {
            let moved = b.sys.act(&g.inv(x), &w)?;
            replays += 1;
            if !b
                .sys
                .satisfies(&moved, &Query::from_pairs([(x.clone(), r.clone())]))?
            {
                replay_failures.push(format!("{r} under {x}"));
            }
        }
    }
    writeln!(
        table,
        "{} cosets, {checks} cocycle checks, {} violations; {replays} action replays, {} failures",
        cosets.len(),
        violations.len(),
        replay_failures.len()
    )
    .expect("string write");
    Ok(json!({
        "index": cs.index().to_string(),
        "cosets": cosets.len(),
        "cocycle_checks": checks,
        "violations": violations,
        "replays": replays,
        "replay_failures": replay_failures,
    }))
}
