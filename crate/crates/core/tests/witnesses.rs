use fingerhut_core::geom::{h_ratio, Point, EPS_GEO};
use fingerhut_core::matching::exact_max_sum;
use fingerhut_core::witness::{caratheodory_support, h_max, minimize_h, steiner_star};
use fingerhut_core::PointSet;
use proptest::prelude::*;

fn point_set(min_pairs: usize, max_pairs: usize) -> impl Strategy<Value = PointSet> {
    (min_pairs..=max_pairs)
        .prop_flat_map(|k| proptest::collection::vec((0.0..1.0f64, 0.0..1.0f64), 2 * k))
        .prop_map(|v| {
            PointSet::new(v.into_iter().map(|(x, y)| Point::new(x, y)).collect()).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn witness_value_is_the_max(s in point_set(1, 6)) {
        let m = exact_max_sum(&s).unwrap();
        let w = minimize_h(&s, &m).unwrap();
        for (a, b) in m.segments(&s) {
            prop_assert!(h_ratio(a, b, w.o_star).unwrap() <= w.lambda_star + EPS_GEO);
        }
        prop_assert!(!w.active.is_empty());
    }

    #[test]
    fn certified_witness_is_global(s in point_set(2, 6), probes in proptest::collection::vec((-0.5..1.5f64, -0.5..1.5f64), 100)) {
        let m = exact_max_sum(&s).unwrap();
        let w = minimize_h(&s, &m).unwrap();
        prop_assume!(w.residual <= 1e-7);
        let segments = m.segments(&s);
        for (x, y) in probes {
            prop_assert!(h_max(&segments, Point::new(x, y)).unwrap() >= w.lambda_star - 1e-5);
        }
    }

    #[test]
    fn support_has_two_or_three_edges(s in point_set(2, 6)) {
        let m = exact_max_sum(&s).unwrap();
        let w = minimize_h(&s, &m).unwrap();
        prop_assume!(w.lambda_star > 1.0 + 1e-6);
        let support = caratheodory_support(&s, &m, &w.active, w.o_star).unwrap();
        prop_assert!((2..=3).contains(&support.edges.len()), "{:?}", support);
        prop_assert!(support.edges.iter().all(|k| w.active.contains(k)));
    }

    #[test]
    fn similarity_equivariance(
        s in point_set(2, 5),
        scale in 0.01..100.0f64,
        theta in 0.0..std::f64::consts::TAU,
        shift in (-50.0..50.0f64, -50.0..50.0f64),
    ) {
        let m = exact_max_sum(&s).unwrap();
        let w = minimize_h(&s, &m).unwrap();
        prop_assume!(w.converged);
        let shift = Point::new(shift.0, shift.1);
        let map = |p: Point| p.rotate(theta) * scale + shift;
        let t = s.map(map);
        let wt = minimize_h(&t, &m).unwrap();
        prop_assert!((wt.lambda_star - w.lambda_star).abs() <= 1e-9);
        // the minimizer is unique once lambda > 1
        if w.lambda_star > 1.0 + 1e-6 {
            prop_assert!((wt.o_star - map(w.o_star)).norm() <= 1e-6 * scale);
        }
    }

    #[test]
    fn steiner_star_dominates(s in point_set(1, 8)) {
        let star = steiner_star(s.points());
        let cost = |c: Point| s.points().iter().map(|p| (*p - c).norm()).sum::<f64>();
        let centroid = s.points().iter().fold(Point::ORIGIN, |acc, p| acc + *p) * (1.0 / s.len() as f64);
        prop_assert!(star.total <= cost(centroid) + 1e-12);
        for &p in s.points() {
            prop_assert!(star.total <= cost(p) + 1e-12);
        }
        prop_assert!((cost(star.center) - star.total).abs() <= 1e-12 * (1.0 + star.total));
    }
}
