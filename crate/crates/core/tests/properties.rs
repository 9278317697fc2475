use proptest::prelude::*;

use qheine_core::geomtest::{
    bn_sequence, boundary_curve, kq_conditions_check, kq_membership_test, t1_threshold,
    vertical_convexity_check, CurveMap, KqGrid, KqRoute, SequenceVerdict, DEFAULT_FLAT_TOL,
};
use qheine_core::gfrac::{
    gfraction_coeffs, gfraction_eval, hypothesis_check, ratio_moments, series_ratio,
    totally_monotone_check, RatioForm, RatioVariant,
};
use qheine_core::qcore::{heine_coeffs, heine_phi, q_diff, q_pochhammer};
use qheine_core::{Complex64, ParamSet, PowerSeries};

/// Parameters satisfying the `(b, c)`-shift hypotheses:
/// `c < a <= 1` and `c <= b <= c + (1 - cq)/q`.
fn bc_params() -> impl Strategy<Value = ParamSet> {
    (0.1..0.95f64, 0.0..0.95f64, 0.001..=1.0f64, 0.0..=1.0f64).prop_map(|(q, c, u, v)| {
        let a = c + u * (1.0 - c);
        let b = c + v * (1.0 - c * q) / q;
        ParamSet::new(a, b, c, q).unwrap()
    })
}

/// Parameters satisfying the `a`-shift hypotheses with `a <= 1`:
/// `0 < c <= a <= 1` and `c <= b < 1`.
fn a_params() -> impl Strategy<Value = ParamSet> {
    (0.1..0.95f64, 0.0..0.95f64, 0.01..=1.0f64, 0.0..0.999f64).prop_map(|(q, c, u, v)| {
        let a = c + u * (1.0 - c);
        let b = c + v * (1.0 - c);
        ParamSet::new(a, b, c, q).unwrap()
    })
}

/// Any valid set with `c` away from the poles.
fn any_params() -> impl Strategy<Value = ParamSet> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..0.95f64, 0.1..0.95f64)
        .prop_map(|(a, b, c, q)| ParamSet::new(a, b, c, q).unwrap())
}

fn disk_point(r_max: f64) -> impl Strategy<Value = Complex64> {
    (0.0..=r_max, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

/// Sets on route T1 (`a, b < 1`, `0 <= c <= T_1`).
fn t1_params() -> impl Strategy<Value = ParamSet> {
    (0.0..0.99f64, 0.0..0.99f64, 0.1..0.95f64, 0.0..=1.0f64).prop_filter_map(
        "T_1 < 0",
        |(a, b, q, u)| {
            let t1 = t1_threshold(a, b, q);
            (t1 >= 0.0).then(|| ParamSet::new(a, b, u * t1, q).unwrap())
        },
    )
}

fn rel_close(got: Complex64, want: Complex64, tol: f64) -> bool {
    (got - want).norm() <= tol * want.norm().max(1e-300)
}

proptest! {
    #[test]
    fn pochhammer_shift_relation(a in -0.9..0.9f64, q in 0.05..0.95f64, n in 0usize..30) {
        let az = Complex64::new(a, 0.0);
        let lhs = (1.0 - a) * q_pochhammer(az * q, q, n);
        let mid = q_pochhammer(az, q, n) * (1.0 - a * q.powi(n as i32));
        let rhs = q_pochhammer(az, q, n + 1);
        prop_assert!(rel_close(lhs, rhs, 1e-14), "{lhs} vs {rhs}");
        prop_assert!(rel_close(mid, rhs, 1e-14), "{mid} vs {rhs}");
    }

    #[test]
    fn heine_phi_is_the_truncated_dot_product(p in any_params(), z in disk_point(0.8)) {
        let r = heine_phi(&p, z, 1e-14).unwrap();
        let s = heine_coeffs(&p, r.terms_used - 1).unwrap();
        let mut zn = Complex64::new(1.0, 0.0);
        let mut dot = Complex64::new(0.0, 0.0);
        let mut scale = 0.0;
        for a in &s.coeffs {
            dot += a * zn;
            scale += (a * zn).norm();
            zn *= z;
        }
        prop_assert!((r.value - dot).norm() <= r.est_error + 1e-13 * scale);
        prop_assert!(r.est_error >= 0.0 && r.terms_used >= 1);
    }

    #[test]
    fn q_diff_monomial_rule(n in 1usize..20, q in 0.1..0.95f64, z in disk_point(1.0)) {
        prop_assume!(z.norm() > 0.05);
        let got = q_diff(&PowerSeries::monomial(n), q, z).unwrap();
        let want = (1.0 - q.powi(n as i32)) / (1.0 - q) * z.powi(n as i32 - 1);
        prop_assert!(rel_close(got, want, 1e-13), "{got} vs {want}");
    }

    #[test]
    fn t1_is_symmetric(a in 0.0..1.0f64, b in 0.0..1.0f64, q in 0.1..0.95f64) {
        prop_assert_eq!(t1_threshold(a, b, q), t1_threshold(b, a, q));
    }

    #[test]
    fn first_bn_is_one(p in any_params()) {
        prop_assert_eq!(bn_sequence(&p, 10).unwrap().b[0], 1.0);
    }

    #[test]
    fn t1_route_gives_decreasing_sequence(p in t1_params()) {
        let k = kq_conditions_check(&p).unwrap();
        prop_assert_eq!(k.route, KqRoute::T1);
        prop_assert_eq!(bn_sequence(&p, 100).unwrap().verdict, SequenceVerdict::Decreasing01);
    }

    #[test]
    fn g_values_stay_in_unit_interval_bc(p in bc_params()) {
        prop_assert!(hypothesis_check(RatioVariant::ShiftBc, &p).pass);
        let gf = gfraction_coeffs(RatioVariant::ShiftBc, &p, 200).unwrap();
        for (k, g) in gf.g.iter().enumerate().skip(1) {
            prop_assert!((-1e-14..=1.0 + 1e-14).contains(g), "g_{} = {}", k, g);
        }
    }

    #[test]
    fn g_values_stay_in_unit_interval_a(p in a_params()) {
        prop_assert!(hypothesis_check(RatioVariant::ShiftA, &p).pass);
        let gf = gfraction_coeffs(RatioVariant::ShiftA, &p, 200).unwrap();
        for (k, g) in gf.g.iter().enumerate() {
            prop_assert!((-1e-14..=1.0 + 1e-14).contains(g), "g_{} = {}", k, g);
        }
    }

    #[test]
    fn moments_are_totally_monotone(p in bc_params(), pa in a_params()) {
        let m = ratio_moments(RatioVariant::ShiftBc, &p, 15).unwrap();
        prop_assert!(totally_monotone_check(&m, 1e-9).pass, "{:?}", p);
        let m = ratio_moments(RatioVariant::ShiftA, &pa, 15).unwrap();
        prop_assert!(totally_monotone_check(&m, 1e-9).pass, "{:?}", pa);
    }

    #[test]
    fn shift_all_moments_scaled_by_a_are_totally_monotone(p in a_params()) {
        let m = ratio_moments(RatioVariant::ShiftAll, &p, 12).unwrap().scaled(p.a);
        prop_assert!(totally_monotone_check(&m, 1e-9).pass, "{:?}", p);
    }

    #[test]
    fn fraction_taylor_coefficients_are_the_moments(p in bc_params(), pa in a_params()) {
        for (v, p) in [(RatioVariant::ShiftBc, p), (RatioVariant::ShiftA, pa)] {
            let gf = gfraction_coeffs(v, &p, 20).unwrap();
            let t = gf.taylor_coeffs(9).unwrap();
            let m = ratio_moments(v, &p, 9).unwrap();
            for (k, (x, y)) in t.iter().zip(&m.m).enumerate() {
                prop_assert!((x - y).abs() <= 1e-12, "{} k={}: {} vs {}", v.name(), k, x, y);
            }
        }
    }

    #[test]
    fn substituting_aq_for_a_keeps_the_representation(p in bc_params(), z in disk_point(0.8)) {
        let pq = p.shifted(1, 0, 0);
        let gf = gfraction_coeffs(RatioVariant::ShiftBc, &pq, 64).unwrap();
        let f = gfraction_eval(&gf, z, 1e-14).unwrap().value;
        let w = z * p.q;
        let want = heine_phi(&p.shifted(1, 1, 1), w, 1e-15).unwrap().value
            / heine_phi(&pq, w, 1e-15).unwrap().value;
        prop_assert!(rel_close(f, want, 1e-9), "{f} vs {want}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fraction_matches_series(p in bc_params(), pa in a_params(), z in disk_point(0.8)) {
        let gf = gfraction_coeffs(RatioVariant::ShiftBc, &p, 64).unwrap();
        let got = gfraction_eval(&gf, z, 1e-14).unwrap().value;
        let want = series_ratio(RatioVariant::ShiftBc, &p, z * p.q, 1e-15).unwrap();
        prop_assert!(rel_close(got, want, 1e-9), "bc {got} vs {want}");

        let gf = gfraction_coeffs(RatioVariant::ShiftA, &pa, 64).unwrap();
        let got = gfraction_eval(&gf, z, 1e-14).unwrap().value;
        let want = series_ratio(RatioVariant::ShiftA, &pa, z, 1e-15).unwrap();
        prop_assert!(rel_close(got, want, 1e-9), "a {got} vs {want}");
    }

    #[test]
    fn vconvex_is_translation_invariant(p in bc_params(), x in -3.0..3.0f64, y in -3.0..3.0f64) {
        let map = CurveMap::Ratio { variant: RatioVariant::ShiftBc, form: RatioForm::Moment, params: p };
        let curve = boundary_curve(&map, 0.9, 512).unwrap();
        let base = vertical_convexity_check(&curve, DEFAULT_FLAT_TOL).unwrap();
        let up = vertical_convexity_check(&curve.map(|w| w + Complex64::new(0.0, y)), DEFAULT_FLAT_TOL).unwrap();
        let moved = vertical_convexity_check(&curve.map(|w| w + Complex64::new(x, y)), DEFAULT_FLAT_TOL).unwrap();
        prop_assert_eq!(base.pass, moved.pass);
        prop_assert_eq!(base.extrema_count, up.extrema_count);
        prop_assert_eq!(base.pass, up.pass);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn theorem_maps_are_vertically_convex(p in bc_params(), pa in a_params()) {
        let maps = [
            (RatioVariant::ShiftBc, p),
            (RatioVariant::ShiftA, pa),
            (RatioVariant::ShiftAll, pa),
        ];
        for (variant, params) in maps {
            let map = CurveMap::Ratio { variant, form: RatioForm::Moment, params };
            for r in [0.9, 0.99] {
                let curve = boundary_curve(&map, r, 1024).unwrap();
                let v = vertical_convexity_check(&curve, DEFAULT_FLAT_TOL).unwrap();
                prop_assert!(v.pass, "{} {:?} r={}: {} extrema", variant.name(), params, r, v.extrema_count);
            }
        }
    }

    #[test]
    fn monotone_bn_implies_kq(p in t1_params()) {
        prop_assert_ne!(bn_sequence(&p, 100).unwrap().verdict, SequenceVerdict::Neither);
        let grid = KqGrid::new(64, 64, 0.99).unwrap();
        let r = kq_membership_test(&p, &grid).unwrap();
        prop_assert!(r.pass, "{:?}: {}", p, r.max_ratio);
    }
}

// the C_EQ_AB route holds on a thin band of (a, b, q), so most draws are rejected
proptest! {
    #![proptest_config(ProptestConfig {
        cases: 24,
        max_global_rejects: 1 << 20,
        ..ProptestConfig::default()
    })]

    #[test]
    fn c_eq_ab_route_gives_increasing_sequence(a in 0.3..0.99f64, b in 0.3..0.99f64, q in 0.3..0.95f64) {
        let p = ParamSet::new(a, b, a * b, q).unwrap();
        let k = kq_conditions_check(&p).unwrap();
        prop_assume!(k.route == KqRoute::CEqAb);
        let s = bn_sequence(&p, 100).unwrap();
        prop_assert_eq!(s.verdict, SequenceVerdict::Increasing12);
        if let Some(l) = s.limit_estimate {
            prop_assert!(l <= 2.0 + 1e-8);
        }
        let grid = KqGrid::new(64, 64, 0.99).unwrap();
        prop_assert!(kq_membership_test(&p, &grid).unwrap().pass);
    }
}
