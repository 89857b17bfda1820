use idcode::bounds::frames::{
    canonicalize, classify_min_configs, default_margin, frame_min_count, FrameCount, FrameShape,
    DEFAULT_BUDGET,
};
use idcode::lattice::{ball, Point, PointSet, RadiusPair, SqRadius, Symmetry};
use idcode::patterns::{
    diag_ball_formula, exists_code, max_mod, sym_diff_pattern, LineDirection, PatternGeometry,
};
use proptest::prelude::*;

fn pair() -> impl Strategy<Value = (i64, i64)> {
    (1i64..60).prop_flat_map(|r2| (Just(r2), r2..r2 + 40))
}

fn point(span: i64) -> impl Strategy<Value = Point> {
    (-span..=span, -span..=span).prop_map(|(x, y)| Point::new(x, y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn larger_tolerance_shrinks_patterns((r2, big) in pair(), extra in 0i64..20, u in point(6), v in point(6)) {
        prop_assume!(u != v);
        let small = sym_diff_pattern(u, v, RadiusPair::ints(r2, big)).unwrap();
        let large = sym_diff_pattern(u, v, RadiusPair::ints(r2, big + extra)).unwrap();
        prop_assert!(large.is_subset(&small));
    }

    #[test]
    fn patterns_are_symmetric_and_even((r2, big) in pair(), u in point(6), v in point(6)) {
        prop_assume!(u != v);
        let rp = RadiusPair::ints(r2, big);
        let s = sym_diff_pattern(u, v, rp).unwrap();
        prop_assert_eq!(&s, &sym_diff_pattern(v, u, rp).unwrap());
        prop_assert_eq!(s.len() % 2, 0);
        let mirrored: PointSet = s.iter().map(|&p| u + v - p).collect();
        prop_assert_eq!(&mirrored, &s);
    }

    #[test]
    fn patterns_follow_square_symmetries((r2, big) in pair(), u in point(6), v in point(6), g in 0usize..8) {
        prop_assume!(u != v);
        let rp = RadiusPair::ints(r2, big);
        let g = Symmetry::ALL[g];
        let moved = g.apply_set(&sym_diff_pattern(u, v, rp).unwrap());
        prop_assert_eq!(moved, sym_diff_pattern(g.apply(u), g.apply(v), rp).unwrap());
    }

    #[test]
    fn pattern_points_lie_in_exactly_one_ball((r2, big) in pair(), u in point(6), v in point(6)) {
        prop_assume!(u != v);
        let rp = RadiusPair::ints(r2, big);
        let bu = ball(u, rp.r2);
        let bv = ball(v, rp.r2);
        for p in &PatternGeometry::new(rp).collect(u, v) {
            prop_assert!(bu.contains(p) != bv.contains(p));
        }
    }

    #[test]
    fn existence_is_downward_closed((r2, big) in pair(), extra in 0i64..20) {
        if exists_code(RadiusPair::ints(r2, big + extra)) {
            prop_assert!(exists_code(RadiusPair::ints(r2, big)));
        }
    }

    #[test]
    fn radius_text_round_trip(num in 0i64..1_000_000, den in 1i64..1000) {
        let r = SqRadius::new(num, den).unwrap();
        prop_assert_eq!(r.to_string().parse::<SqRadius>().unwrap(), r);
    }
}

#[test]
fn diagonal_formula_small_radii() {
    for r2 in 0..=300 {
        let r = SqRadius::int(r2);
        let b = ball(Point::ORIGIN, r);
        assert_eq!(
            diag_ball_formula(r),
            max_mod(&b, LineDirection::Diagonal).unwrap(),
            "r² = {r2}"
        );
    }
}

#[test]
fn frame_counts_grow_with_margin() {
    for (rp, f) in [
        (RadiusPair::ints(2, 4), FrameShape::f12()),
        (RadiusPair::ints(5, 8), FrameShape::f20()),
        (RadiusPair::ints(8, 9), FrameShape::f14()),
    ] {
        let mut last = 0;
        for m in 0..=default_margin(rp) {
            let FrameCount::Proved { min } = frame_min_count(rp, &f, m, DEFAULT_BUDGET).unwrap() else {
                panic!("inconclusive at margin {m}");
            };
            assert!(min >= last);
            last = min;
        }
    }
}

#[test]
fn class_representatives_are_canonical() {
    for (rp, f, k) in [
        (RadiusPair::ints(2, 4), FrameShape::f12(), 3),
        (RadiusPair::ints(5, 8), FrameShape::f20(), 3),
        (RadiusPair::ints(8, 9), FrameShape::f14(), 2),
    ] {
        for c in classify_min_configs(rp, &f, k).unwrap() {
            let again = canonicalize(&f, &c.representative);
            assert_eq!(again, c.representative);
            assert_eq!(canonicalize(&f, &again), again);
        }
    }
}
