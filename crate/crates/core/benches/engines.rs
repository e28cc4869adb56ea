//! Sequential against parallel execution on the three hot loops.

use std::hint::black_box;
use std::sync::Arc;

use coinduct::coinduce::{CoinducedSystem, DihedralPairSystem};
use coinduct::coset::{CosetSpace, Subgroup, SubgroupKind};
use coinduct::entropy::{pattern_complexity, Cover};
use coinduct::group::{Element, GroupDescriptor};
use coinduct::independence::{max_independence, refute, SearchConfig};
use coinduct::system::{FullShift, Region, ShiftOfFiniteType, System};
use coinduct::x1::{JumpTable, X1System};
use coinduct::Exec;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn cyl(v: u32) -> Region {
    Region::cylinder([(Element::int(0), v)]).unwrap()
}

fn ints(xs: impl IntoIterator<Item = i64>) -> Vec<Element> {
    xs.into_iter().map(Element::int).collect()
}

fn bench_max_independence(c: &mut Criterion) {
    let sys = ShiftOfFiniteType::golden_mean();
    let tuple = [cyl(0), cyl(1)];
    let pool = ints(-5..=5);
    let mut group = c.benchmark_group("max_independence/golden_mean");
    for (name, exec) in MODES {
        let cfg = SearchConfig::default().with_exec(exec);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| max_independence(&sys, black_box(&tuple), &pool, &cfg).unwrap())
        });
    }
    group.finish();
}

fn bench_pattern_complexity(c: &mut Criterion) {
    let sys = FullShift::new(2, GroupDescriptor::Integers).unwrap();
    let cover = Cover::new(&sys, vec![cyl(0), cyl(1)]).unwrap();
    let pool = ints(0..6);
    let mut group = c.benchmark_group("pattern_complexity/full_shift_n4");
    for (name, exec) in MODES {
        let cfg = SearchConfig::default().with_exec(exec);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| pattern_complexity(&sys, &cover, black_box(4), &pool, &cfg).unwrap())
        });
    }
    group.finish();
}

fn bench_refute(c: &mut Criterion) {
    let jt = Arc::new(JumpTable::build(4).unwrap());
    let base: Arc<dyn System> = Arc::new(X1System::new(jt.clone(), 4).unwrap());
    let cs =
        CosetSpace::new(Subgroup::new(GroupDescriptor::Semidirect, SubgroupKind::ZFactor).unwrap())
            .unwrap();
    let co = CoinducedSystem::new(base, cs).unwrap();
    let region = Region::coords([
        (DihedralPairSystem::even(), Region::nbhd(1, 0)),
        (DihedralPairSystem::odd(), Region::nbhd(1, 0)),
    ])
    .unwrap();
    let mut pool = Vec::new();
    for k in 1..=4 {
        for n in jt.row(k) {
            let g = Element::semi(n.clone(), false);
            if !pool.contains(&g) {
                pool.push(g);
            }
        }
    }
    let mut group = c.benchmark_group("refute/dihedral_x1_k1");
    group.sample_size(10);
    for (name, exec) in MODES {
        let cfg = SearchConfig::default().with_exec(exec);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                refute(
                    &co,
                    black_box(std::slice::from_ref(&region)),
                    &pool,
                    3,
                    &cfg,
                )
                .unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_max_independence,
    bench_pattern_complexity,
    bench_refute
);
criterion_main!(benches);
