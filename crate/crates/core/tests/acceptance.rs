//! Acceptance run. Prints one line per criterion and exits nonzero when any
//! criterion fails. Time limits are wall-clock, measured in this process.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use coinduct::coinduce::{CoinducedSystem, DihedralPairSystem};
use coinduct::coset::{CosetSpace, Subgroup, SubgroupKind};
use coinduct::dsl::{parse_spec, run_text, RunOptions};
use coinduct::entropy::{pattern_complexity, weak_mixing_witness, Cover};
use coinduct::group::{Element, GroupDescriptor};
use coinduct::independence::{
    independence_fold, is_independent, it_witness_stream, max_independence, refute,
    verify_certificate, verify_refutation, IndependenceCertificate, SearchConfig,
};
use coinduct::system::{
    FullShift, ProductSystem, Region, Restriction, Scope, ShiftOfFiniteType, System, TrivialFinite,
};
use coinduct::x1::{
    similar_positions_verify, slice_probe, slice_scan, words, JumpTable, PointRef, X1System,
};
use coinduct::Exec;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_2024;
/// Relative slack for floating comparisons of `log p*`.
const LOG_TOL: f64 = 1e-12;
/// Word-length budget for witness streams.
const RADIUS: usize = 512;

type Outcome = Result<String, String>;

/// Certificates collected along the way, replayed from JSON by criterion 11.
type Replay = Vec<(Arc<dyn System>, String)>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn keep(replay: &mut Replay, sys: &Arc<dyn System>, cert: &IndependenceCertificate) {
    replay.push((
        sys.clone(),
        serde_json::to_string(cert).expect("certificate serializes"),
    ));
}

fn ints(xs: impl IntoIterator<Item = i64>) -> Vec<Element> {
    xs.into_iter().map(Element::int).collect()
}

fn cyl(v: u32) -> Region {
    Region::cylinder([(Element::int(0), v)]).unwrap()
}

fn semi0(n: &BigInt) -> Element {
    Element::semi(n.clone(), false)
}

fn dihedral_cs() -> CosetSpace {
    CosetSpace::new(Subgroup::new(GroupDescriptor::Semidirect, SubgroupKind::ZFactor).unwrap())
        .unwrap()
}

fn c1_jump_table() -> Outcome {
    let jt = JumpTable::build(6).map_err(e)?;
    let bad = jt.check_invariants();
    ensure(bad.is_empty(), || {
        format!("{} violations, first: {}", bad.len(), bad[0])
    })?;
    ensure(*jt.n(1, 1) == BigInt::from(9), || {
        format!("n_1^1 = {}", jt.n(1, 1))
    })?;
    Ok(format!(
        "levels=6, n_6^6 has {} digits",
        jt.n(6, 6).to_string().len()
    ))
}

fn c2_slices() -> Outcome {
    let jt = JumpTable::build(3).map_err(e)?;
    let mut comparisons = 0;
    for k in 1..=2 {
        let r = slice_scan(&jt, k, Exec::Parallel).map_err(e)?;
        ensure(r.discrepancies.is_empty(), || {
            format!("k={k}: {}", r.discrepancies[0])
        })?;
        comparisons += r.comparisons;
    }
    // A plainer walk at level 1: every index of the window tested against
    // every admissible neighbourhood directly.
    let mut walked = 0;
    for k in 1..=1u32 {
        let nk = jt.n(k, k).clone();
        let lo = -(nk.clone() + (k + 2));
        let hi = &nk * 2u32;
        for s in 0..words(k) {
            let b = jt.slice_bound(k, s);
            let mut j = -b.clone();
            while j <= b {
                let region = Region::nbhd(k, j.clone());
                let mut members = Vec::new();
                let mut i = lo.clone();
                while i <= hi {
                    if jt
                        .member(&PointRef::orbit(k, s, i.clone()), &region)
                        .map_err(e)?
                    {
                        members.push(i.clone());
                    }
                    i += 1;
                }
                let formula = jt.orbit_slice(k, s, k, &j).map_err(e)?;
                ensure(members == formula, || {
                    format!("k={k} s={s} j={j}: walk {members:?} vs formula {formula:?}")
                })?;
                walked += 1;
                j += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..50 {
        let s = rng.gen_range(0..words(3));
        let b = jt.slice_bound(3, s);
        let span: i64 = b.clone().try_into().map_err(e)?;
        let j = BigInt::from(rng.gen_range(-span..=span));
        let bad = slice_probe(&jt, 3, s, &j).map_err(e)?;
        ensure(bad.is_empty(), || format!("k=3 s={s} j={j}: {}", bad[0]))?;
    }
    Ok(format!(
        "{comparisons} scan comparisons, {walked} walked slices, 50 probes at k=3"
    ))
}

fn c3_similar_positions() -> Outcome {
    let jt = JumpTable::build(2).map_err(e)?;
    let r = similar_positions_verify(&jt, 2).map_err(e)?;
    ensure(r.violations.is_empty(), || r.violations[0].clone())?;
    Ok(format!("{} quadruples, 0 violations", r.quadruples))
}

fn c4_in_pair(replay: &mut Replay) -> Outcome {
    let jt = Arc::new(JumpTable::build(3).map_err(e)?);
    let mut sizes = Vec::new();
    for k in 1..=3u32 {
        let sys: Arc<dyn System> = Arc::new(X1System::new(jt.clone(), k).map_err(e)?);
        let tuple = [Region::nbhd(k, 0), Region::nbhd(k, 1)];
        let pool: Vec<Element> = jt.row(k).iter().map(|n| Element::int(n.clone())).collect();
        let m =
            max_independence(sys.as_ref(), &tuple, &pool, &SearchConfig::default()).map_err(e)?;
        let size = m.best.set.len();
        ensure(size == k as usize + 1, || {
            format!("k={k}: best size {size}")
        })?;
        ensure(
            verify_certificate(sys.as_ref(), &m.best).map_err(e)?,
            || format!("k={k}: certificate does not replay"),
        )?;
        keep(replay, &sys, &m.best);
        sizes.push(size);
    }
    Ok(format!("certificate sizes {sizes:?} for k=1,2,3"))
}

fn c5_dihedral_refutation() -> Outcome {
    let jt = Arc::new(JumpTable::build(5).map_err(e)?);
    let cfg = SearchConfig::default();
    let mut lines = Vec::new();
    for k in 1..=2u32 {
        let base: Arc<dyn System> = Arc::new(X1System::new(jt.clone(), k + 3).map_err(e)?);
        let co = CoinducedSystem::new(base, dihedral_cs()).map_err(e)?;
        let mut pool = Vec::new();
        for kk in k..=k + 3 {
            for n in jt.row(kk) {
                for b in 0..=1u32 {
                    let g = semi0(&(n - b));
                    if !pool.contains(&g) {
                        pool.push(g);
                    }
                }
            }
        }
        for j in 0..=1i64 {
            let region = Region::coords([
                (DihedralPairSystem::even(), Region::nbhd(k, 0)),
                (DihedralPairSystem::odd(), Region::nbhd(k, j)),
            ])
            .map_err(e)?;
            let tuple = [region];
            let size = k as usize + 2;
            let rec = refute(&co, &tuple, &pool, size, &cfg).map_err(e)?;
            ensure(rec.refuted, || {
                format!(
                    "k={k} j={j}: independent set {:?}",
                    rec.counterexample.as_ref().map(|c| &c.set)
                )
            })?;
            ensure(
                rec.scope == Scope::WithinTruncation { k_max: k + 3 },
                || format!("k={k} j={j}: scope {}", rec.scope),
            )?;
            ensure(
                verify_refutation(&co, &rec, Exec::Parallel).map_err(e)?,
                || format!("k={k} j={j}: refutation does not replay"),
            )?;
            lines.push(format!("k={k} j={j}: {} sets", rec.entries.len()));
        }
    }
    Ok(format!("{}; K_max=k+3", lines.join("; ")))
}

fn c6_log2_witness(replay: &mut Replay) -> Outcome {
    let jt = Arc::new(JumpTable::build(5).map_err(e)?);
    let base: Arc<dyn System> = Arc::new(X1System::new(jt.clone(), 5).map_err(e)?);
    let co: Arc<dyn System> = Arc::new(CoinducedSystem::new(base, dihedral_cs()).map_err(e)?);
    let f = |j: i64| {
        Region::coords([
            (DihedralPairSystem::even(), Region::nbhd(1, j)),
            (DihedralPairSystem::odd(), Region::nbhd_inf(1)),
        ])
        .unwrap()
    };
    let tuple = [f(0), f(1)];
    let pool: Vec<Element> = jt.row(5).iter().map(semi0).collect();
    let cfg = SearchConfig::default();
    for n in 1..=6 {
        let cert = is_independent(co.as_ref(), &tuple, &pool[..n], &cfg)
            .map_err(e)?
            .certificate()
            .ok_or_else(|| format!("prefix of size {n} is not independent"))?;
        ensure(verify_certificate(co.as_ref(), &cert).map_err(e)?, || {
            format!("size {n}: replay failed")
        })?;
        keep(replay, &co, &cert);
    }
    Ok("sizes 1..6 certified with the second coordinate in every neighbourhood of infinity".into())
}

fn c7_infinite_index(replay: &mut Replay) -> Outcome {
    let cfg = SearchConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let z = GroupDescriptor::Integers;
    let zz = GroupDescriptor::product(z.clone(), z.clone());
    let setups: Vec<(CosetSpace, Box<dyn Fn(i64) -> Element>)> = vec![
        (
            CosetSpace::new(Subgroup::trivial(z.clone())).map_err(e)?,
            Box::new(Element::int),
        ),
        (
            CosetSpace::new(
                Subgroup::new(
                    zz.clone(),
                    SubgroupKind::Product(
                        Box::new(SubgroupKind::Whole),
                        Box::new(SubgroupKind::Trivial),
                    ),
                )
                .map_err(e)?,
            )
            .map_err(e)?,
            Box::new(|b| Element::pair(Element::int(0), Element::int(b))),
        ),
    ];
    let mut count = 0;
    for (cs, rep) in setups {
        let base: Arc<dyn System> = Arc::new(TrivialFinite::new(2, z.clone()).map_err(e)?);
        let co = Arc::new(CoinducedSystem::new(base, cs.clone()).map_err(e)?);
        let dyn_co: Arc<dyn System> = co.clone();
        let coset = |b: i64| cs.coset_of(&rep(b));
        // Random disjoint pairs: both constrain a shared coset with opposite
        // points, plus a few free coordinates each.
        for _ in 0..4 {
            let shared = rng.gen_range(-3..=3);
            let p = rng.gen_range(0..2u32);
            let mut a = vec![(coset(shared), Region::points([p]))];
            let mut b = vec![(coset(shared), Region::points([1 - p]))];
            for side in [&mut a, &mut b] {
                for _ in 0..rng.gen_range(0..3) {
                    let c = coset(rng.gen_range(-6..=6));
                    if side.iter().all(|(t, _)| *t != c) {
                        side.push((c, Region::points([rng.gen_range(0..2u32)])));
                    }
                }
            }
            let tuple = [Region::coords(a).map_err(e)?, Region::coords(b).map_err(e)?];
            for n in 1..=8 {
                let cert = it_witness_stream(&co, &tuple, n, RADIUS, &cfg).map_err(e)?;
                ensure(cert.set.len() == n, || {
                    format!("stream gave {} of {n}", cert.set.len())
                })?;
                if n == 8 {
                    keep(replay, &dyn_co, &cert);
                }
                count += 1;
            }
        }
        let triple = [
            Region::coords([
                (coset(0), Region::points([0])),
                (coset(1), Region::points([0])),
            ])
            .map_err(e)?,
            Region::coords([
                (coset(0), Region::points([0])),
                (coset(1), Region::points([1])),
            ])
            .map_err(e)?,
            Region::coords([(coset(0), Region::points([1]))]).map_err(e)?,
        ];
        let cert = it_witness_stream(&co, &triple, 5, RADIUS, &cfg).map_err(e)?;
        ensure(cert.witnesses.len() == 3usize.pow(5), || {
            "3-tuple certificate incomplete".into()
        })?;
        keep(replay, &dyn_co, &cert);
        count += 1;
    }
    Ok(format!("{count} stream certificates over Z and Z x Z"))
}

/// Folds every found certificate onto `H` and replays every `H`-certificate
/// found on the restriction as a `G`-certificate.
fn transfer(
    sys: Arc<dyn System>,
    cs: &CosetSpace,
    tuple: &[Region],
    g_pool: &[Element],
    h_pool: &[Element],
    replay: &mut Replay,
) -> Result<usize, String> {
    let cfg = SearchConfig::default();
    let index = 2;
    let m = max_independence(sys.as_ref(), tuple, g_pool, &cfg).map_err(e)?;
    let mut certs = vec![m.best.clone()];
    for r in 1..m.best.set.len() {
        certs.push(m.best.restrict(&m.best.set[..r]).map_err(e)?);
    }
    for c in &certs {
        let (_, folded) = independence_fold(sys.as_ref(), c, cs).map_err(e)?;
        ensure(folded.set.len() * index >= c.set.len(), || {
            format!("fold of {} kept only {}", c.set.len(), folded.set.len())
        })?;
        ensure(folded.set.iter().all(|g| cs.subgroup().contains(g)), || {
            "folded set leaves H".into()
        })?;
        keep(replay, &sys, &folded);
    }
    let restricted = Restriction::new(sys.clone(), cs.subgroup().clone()).map_err(e)?;
    let mh = max_independence(&restricted, tuple, h_pool, &cfg).map_err(e)?;
    let lifted = IndependenceCertificate {
        system: sys.name(),
        tuple: mh.best.tuple.clone(),
        set: mh
            .best
            .set
            .iter()
            .map(|h| restricted.lift(h))
            .collect::<coinduct::Result<_>>()
            .map_err(e)?,
        witnesses: mh.best.witnesses.clone(),
        scope: mh.best.scope,
    };
    ensure(
        verify_certificate(sys.as_ref(), &lifted).map_err(e)?,
        || "H-certificate does not replay over G".into(),
    )?;
    keep(replay, &sys, &lifted);
    Ok(certs.len() + 1)
}

fn c8_finite_index(replay: &mut Replay) -> Outcome {
    let z = GroupDescriptor::Integers;
    let two_z = CosetSpace::new(Subgroup::new(z.clone(), SubgroupKind::Multiples(2)).map_err(e)?)
        .map_err(e)?;
    let golden: Arc<dyn System> = Arc::new(ShiftOfFiniteType::golden_mean());
    let mut checked = transfer(
        golden,
        &two_z,
        &[cyl(0), cyl(1)],
        &ints(-3..=3),
        &ints((-3..=3).map(|n| 2 * n)),
        replay,
    )?;

    let dcs = dihedral_cs();
    let shift: Arc<dyn System> = Arc::new(FullShift::new(2, z.clone()).map_err(e)?);
    let desk: Vec<Arc<dyn System>> = vec![
        Arc::new(DihedralPairSystem::new(shift.clone()).map_err(e)?),
        Arc::new(CoinducedSystem::new(shift, dcs.clone()).map_err(e)?),
    ];
    let g_pool: Vec<Element> = (0..3)
        .flat_map(|n| [Element::semi(n, false), Element::semi(n, true)])
        .collect();
    for sys in desk {
        let tuple = [
            Region::coords([(DihedralPairSystem::even(), cyl(0))]).map_err(e)?,
            Region::coords([(DihedralPairSystem::even(), cyl(1))]).map_err(e)?,
        ];
        checked += transfer(sys, &dcs, &tuple, &g_pool, &ints(0..4), replay)?;
    }

    let trivial: Arc<dyn System> = Arc::new(TrivialFinite::new(2, z.clone()).map_err(e)?);
    let co = CoinducedSystem::new(trivial, two_z.clone()).map_err(e)?;
    let h0 = two_z.identity_coset();
    let h1 = two_z.coset_of(&Element::int(1));
    let pairs = [
        [
            Region::coords([(h0.clone(), Region::points([0]))]).map_err(e)?,
            Region::coords([(h0.clone(), Region::points([1]))]).map_err(e)?,
        ],
        [
            Region::coords([
                (h0.clone(), Region::points([0])),
                (h1.clone(), Region::points([1])),
            ])
            .map_err(e)?,
            Region::coords([(h1, Region::points([0]))]).map_err(e)?,
        ],
    ];
    for tuple in &pairs {
        let rec = refute(&co, tuple, &ints(-3..=3), 3, &SearchConfig::default()).map_err(e)?;
        ensure(rec.refuted && rec.scope == Scope::Exact, || {
            format!("null transfer: refuted={} scope={}", rec.refuted, rec.scope)
        })?;
        ensure(
            verify_refutation(&co, &rec, Exec::Parallel).map_err(e)?,
            || "null refutation does not replay".into(),
        )?;
    }
    Ok(format!(
        "{checked} certificates transferred, null pairs refuted at size 3 (exact)"
    ))
}

fn p_star(sys: &dyn System, cover: &Cover, n: usize, pool: &[Element]) -> Result<u64, String> {
    let p = pattern_complexity(sys, cover, n, pool, &SearchConfig::default()).map_err(e)?;
    ensure(p.exact, || {
        format!("p*({n}) only bounded: {}..={}", p.value, p.upper)
    })?;
    Ok(p.value)
}

fn c9_entropy() -> Outcome {
    let z = GroupDescriptor::Integers;
    let shift = FullShift::new(2, z.clone()).map_err(e)?;
    let cover = Cover::new(&shift, vec![cyl(0), cyl(1)]).map_err(e)?;
    for n in 1..=8 {
        let p = p_star(&shift, &cover, n, &ints(0..n as i64))?;
        ensure(p == 1 << n, || format!("full shift p*({n}) = {p}"))?;
    }

    let golden: Arc<dyn System> = Arc::new(ShiftOfFiniteType::golden_mean());
    let gcover = Cover::new(golden.as_ref(), vec![cyl(0), cyl(1)]).map_err(e)?;
    let pool = ints(0..4);
    let mut logs = vec![0.0];
    for n in 1..=4 {
        logs.push((p_star(golden.as_ref(), &gcover, n, &pool)? as f64).ln());
    }
    let mut pairs = 0;
    for n in 1..=4 {
        for m in 1..=4 - n {
            ensure(logs[n + m] <= logs[n] + logs[m] + LOG_TOL, || {
                format!("sub-additivity fails at ({n},{m})")
            })?;
            pairs += 1;
        }
    }

    let co = CoinducedSystem::new(golden.clone(), dihedral_cs()).map_err(e)?;
    let co_cover = Cover::new(
        &co,
        (0..2)
            .map(|v| Region::coords([(DihedralPairSystem::even(), cyl(v))]))
            .collect::<coinduct::Result<_>>()
            .map_err(e)?,
    )
    .map_err(e)?;
    let co_pool: Vec<Element> = (0..4).map(|n| Element::semi(n, false)).collect();
    for n in 1..=4 {
        let base = p_star(golden.as_ref(), &gcover, n, &pool)?;
        let lifted = p_star(&co, &co_cover, n, &co_pool)?;
        ensure(lifted >= base, || {
            format!("pullback at n={n}: {lifted} < {base}")
        })?;
    }

    let square = ProductSystem::new(golden.clone(), 2).map_err(e)?;
    let cells = (0..4)
        .map(|i| Region::Tuple(vec![cyl(i / 2), cyl(i % 2)]))
        .collect();
    let scover = Cover::new(&square, cells).map_err(e)?;
    let small = ints(0..3);
    for n in 1..=3 {
        let one = p_star(golden.as_ref(), &gcover, n, &small)?;
        let two = p_star(&square, &scover, n, &small)?;
        ensure(two == one * one, || {
            format!("product at n={n}: {two} vs {one}^2")
        })?;
    }
    Ok(format!(
        "2^n to n=8, {pairs} sub-additive pairs, pullback n<=4, product n<=3"
    ))
}

fn c10_weak_mixing() -> Outcome {
    let z = GroupDescriptor::Integers;
    let zz = GroupDescriptor::product(z.clone(), z.clone());
    let cs = CosetSpace::new(
        Subgroup::new(
            zz.clone(),
            SubgroupKind::Product(
                Box::new(SubgroupKind::Whole),
                Box::new(SubgroupKind::Trivial),
            ),
        )
        .map_err(e)?,
    )
    .map_err(e)?;
    let base: Arc<dyn System> = Arc::new(TrivialFinite::new(2, z.clone()).map_err(e)?);
    let co = CoinducedSystem::new(base, cs.clone()).map_err(e)?;
    let at = |b: i64, p: u32| {
        Region::coords([(
            cs.coset_of(&Element::pair(Element::int(0), Element::int(b))),
            Region::points([p]),
        )])
        .unwrap()
    };
    let ball = zz.ball(4);
    let w = weak_mixing_witness(
        &co,
        &at(0, 0),
        &at(1, 1),
        &at(0, 1),
        &at(1, 0),
        &ball,
        Exec::Parallel,
    )
    .map_err(e)?
    .ok_or("no witness in ball(4)")?;

    let triv = TrivialFinite::new(2, z.clone()).map_err(e)?;
    let none = weak_mixing_witness(
        &triv,
        &Region::points([0]),
        &Region::points([0]),
        &Region::points([1]),
        &Region::points([0]),
        &z.ball(4),
        Exec::Parallel,
    )
    .map_err(e)?;
    ensure(none.is_none(), || {
        format!("trivial action mixed by {}", none.unwrap())
    })?;
    Ok(format!("witness {w}, none for the trivial action"))
}

fn corpus() -> Vec<(String, String)> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/corpus");
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .expect("corpus directory")
        .map(|d| d.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "coind"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, std::fs::read_to_string(&p).unwrap())
        })
        .collect()
}

fn c11_engineering(replay: &Replay) -> Outcome {
    let files = corpus();
    ensure(files.len() >= 20, || {
        format!("corpus has {} files", files.len())
    })?;
    let opts = RunOptions::default();
    for (name, text) in &files {
        let spec = parse_spec(text).map_err(|err| format!("{name}: {err}"))?;
        let again =
            parse_spec(&spec.to_string()).map_err(|err| format!("{name} reprint: {err}"))?;
        ensure(again == spec, || {
            format!("{name}: round-trip changed the spec")
        })?;
        let a = run_text(text, &opts).map_err(|err| format!("{name}: {err}"))?;
        let b = run_text(text, &opts).map_err(|err| format!("{name}: {err}"))?;
        ensure(a.json == b.json, || {
            format!("{name}: reports differ between runs")
        })?;
    }
    for (i, (sys, json)) in replay.iter().enumerate() {
        let cert: IndependenceCertificate = serde_json::from_str(json).map_err(e)?;
        ensure(verify_certificate(sys.as_ref(), &cert).map_err(e)?, || {
            format!("serialized certificate {i} ({}) fails replay", cert.system)
        })?;
    }
    Ok(format!(
        "{} corpus files, {} certificates replayed",
        files.len(),
        replay.len()
    ))
}

fn main() -> ExitCode {
    let mut replay: Replay = Vec::new();
    let mut failed = 0;
    let mut report = |id: u32,
                      limit: Duration,
                      f: &mut dyn FnMut(&mut Replay) -> Outcome,
                      replay: &mut Replay| {
        let start = Instant::now();
        let out = f(replay);
        let took = start.elapsed();
        let verdict = match &out {
            Ok(_) if took > limit => Err(format!("over time limit {:?}", limit)),
            Ok(msg) => Ok(msg.clone()),
            Err(msg) => Err(msg.clone()),
        };
        match verdict {
            Ok(msg) => println!("criterion {id}: PASS ({msg}; {:.2?} of {:?})", took, limit),
            Err(msg) => {
                failed += 1;
                println!("criterion {id}: FAIL ({msg}; {:.2?})", took);
            }
        }
    };
    let s = Duration::from_secs;
    report(1, s(1), &mut |_| c1_jump_table(), &mut replay);
    report(2, s(30), &mut |_| c2_slices(), &mut replay);
    report(3, s(10), &mut |_| c3_similar_positions(), &mut replay);
    report(4, s(60), &mut c4_in_pair, &mut replay);
    report(5, s(300), &mut |_| c5_dihedral_refutation(), &mut replay);
    report(6, s(60), &mut c6_log2_witness, &mut replay);
    report(7, s(120), &mut c7_infinite_index, &mut replay);
    report(8, s(120), &mut c8_finite_index, &mut replay);
    report(9, s(120), &mut |_| c9_entropy(), &mut replay);
    report(10, s(10), &mut |_| c10_weak_mixing(), &mut replay);
    let snapshot = std::mem::take(&mut replay);
    report(11, s(120), &mut |_| c11_engineering(&snapshot), &mut replay);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
