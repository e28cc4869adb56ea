use std::sync::Arc;

use coinduct::entropy::{
    covering_number, h_star_report, join_pullback, pattern_complexity, Cover, HStarRequest,
};
use coinduct::group::{Element, GroupDescriptor};
use coinduct::independence::SearchConfig;
use coinduct::system::{FullShift, ProductSystem, Region, ShiftOfFiniteType, System};
use proptest::prelude::*;

fn cyl(v: u32) -> Region {
    Region::cylinder([(Element::int(0), v)]).unwrap()
}

fn ints(xs: impl IntoIterator<Item = i64>) -> Vec<Element> {
    xs.into_iter().map(Element::int).collect()
}

/// Irreducible-enough adjacency on three symbols with every row nonempty.
fn adjacency() -> impl Strategy<Value = Vec<Vec<bool>>> {
    prop::collection::vec(prop::collection::vec(any::<bool>(), 3), 3).prop_map(|mut m| {
        for (i, row) in m.iter_mut().enumerate() {
            row[i] |= !row.iter().any(|&b| b);
        }
        m
    })
}

fn p_star(sys: &dyn System, cover: &Cover, n: usize, pool: &[Element]) -> (u64, bool) {
    let p = pattern_complexity(sys, cover, n, pool, &SearchConfig::default()).unwrap();
    (p.value, p.exact)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn log_p_star_is_sub_additive(adj in adjacency()) {
        let Ok(sys) = ShiftOfFiniteType::new(adj) else { return Ok(()); };
        let symbols = sys.symbols() as u32;
        let cover = Cover::new(&sys, (0..symbols).map(cyl).collect()).unwrap();
        let pool = ints(0..4);
        let mut logs = vec![0.0f64];
        for n in 1..=4 {
            let (p, exact) = p_star(&sys, &cover, n, &pool);
            prop_assert!(exact);
            logs.push((p as f64).ln());
        }
        for n in 1..=4 {
            for m in 1..=4 - n {
                prop_assert!(logs[n + m] <= logs[n] + logs[m] + 1e-12);
            }
        }
    }

    #[test]
    fn covering_number_of_a_join_is_at_most_the_product(a in 0i64..6, b in 0i64..6) {
        let sys = ShiftOfFiniteType::golden_mean();
        let cover = Cover::new(&sys, vec![cyl(0), cyl(1)]).unwrap();
        let one = covering_number(&sys, &join_pullback(&sys, &cover, &ints([a])).unwrap()).unwrap();
        let two = covering_number(&sys, &join_pullback(&sys, &cover, &ints([a, b])).unwrap()).unwrap();
        prop_assert!(one.exact && two.exact);
        prop_assert!(two.value <= one.value * 2);
        prop_assert!(two.value >= one.value);
    }
}

#[test]
fn full_shift_routes_agree() {
    let sys = FullShift::new(2, GroupDescriptor::Integers).unwrap();
    let cover = Cover::new(&sys, vec![cyl(0), cyl(1)]).unwrap();
    let req = HStarRequest {
        tuples: vec![vec![cyl(0), cyl(1)]],
        pool: ints(0..5),
        target_size: 5,
        refute_size: None,
        cover: Some(cover),
        max_n: 4,
        config: SearchConfig::default(),
    };
    let r = h_star_report(&sys, &req).unwrap();
    assert_eq!(r.lower.k, 2);
    for s in &r.samples {
        assert!(s.exact);
        assert_eq!(s.p_star, 1 << s.n);
        // log 2 from certificates never exceeds an exact cover sample.
        assert!(r.lower.log_k <= s.rate + 1e-12);
    }
}

#[test]
fn product_of_full_shifts_squares() {
    let base: Arc<dyn System> = Arc::new(FullShift::new(2, GroupDescriptor::Integers).unwrap());
    let square = ProductSystem::new(base.clone(), 2).unwrap();
    let cover = Cover::new(base.as_ref(), vec![cyl(0), cyl(1)]).unwrap();
    let cells = (0..4)
        .map(|i| Region::Tuple(vec![cyl(i / 2), cyl(i % 2)]))
        .collect();
    let scover = Cover::new(&square, cells).unwrap();
    for n in 1..=3 {
        let pool = ints(0..n as i64);
        let (one, _) = p_star(base.as_ref(), &cover, n, &pool);
        let (two, exact) = p_star(&square, &scover, n, &pool);
        assert!(exact);
        assert_eq!(two, one * one);
    }
}

#[test]
fn a_non_cover_is_rejected() {
    let sys = FullShift::new(3, GroupDescriptor::Integers).unwrap();
    assert!(Cover::new(&sys, vec![cyl(0), cyl(1)]).is_err());
}
