use std::f64::consts::PI;

use bfamily_core::estimates::{estimate1, estimate2, estimate3};
use bfamily_core::kernel::KernelConvolver;
use bfamily_core::{
    check_convolution_bound, check_criterion, compute_j, eval_dp, eval_p, eval_w, legendre_p,
    legendre_ratio, rhs, TorusField, TrigPolynomial, WeightProfile, BETA_MAX,
};
use proptest::prelude::*;

fn trig_poly(modes: usize) -> impl Strategy<Value = TrigPolynomial> {
    (
        -1.0..1.0f64,
        prop::collection::vec(-1.0..1.0f64, modes),
        prop::collection::vec(-1.0..1.0f64, modes),
    )
        .prop_map(|(mean, cos, sin)| TrigPolynomial { mean, cos, sin })
}

fn field_of(u: &TrigPolynomial, n: usize) -> TorusField {
    TorusField::from_fn(n, |x| u.eval(x)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn p_is_even_and_periodic(x in -3.0..3.0f64, m in -2i32..3) {
        let shifted = x + m as f64;
        prop_assert!((eval_p(x) - eval_p(-x)).abs() < 1e-14);
        prop_assert!((eval_p(x) - eval_p(shifted)).abs() < 1e-12);
    }

    #[test]
    fn dp_is_odd(x in 0.001..0.999f64) {
        prop_assert!((eval_dp(x) + eval_dp(-x)).abs() < 1e-14);
    }

    #[test]
    fn weight_is_nonnegative(beta in -BETA_MAX..BETA_MAX, x in 0.0..1.0f64) {
        prop_assert!(eval_w(beta, x).unwrap() >= -1e-15);
    }

    #[test]
    fn weight_has_unit_mass(beta in -BETA_MAX..BETA_MAX) {
        let w = WeightProfile::new(beta).unwrap();
        prop_assert!((w.integral(0.0, 1.0) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn weight_reflection(beta in 0.0..BETA_MAX, x in 0.01..0.99f64) {
        let a = eval_w(beta, x).unwrap();
        let b = eval_w(-beta, 1.0 - x).unwrap();
        prop_assert!((a - b).abs() < 1e-13);
    }

    #[test]
    fn legendre_three_term_recurrence(nu in 0.0..3.0f64, z in 1.0..2.5f64) {
        // (nu+1) P_{nu+1} = (2nu+1) z P_nu - nu P_{nu-1}
        let lhs = (nu + 1.0) * legendre_p(nu + 1.0, z).unwrap();
        let rhs = (2.0 * nu + 1.0) * z * legendre_p(nu, z).unwrap() - nu * legendre_p(nu - 1.0, z).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-11 * lhs.abs().max(1.0));
    }

    #[test]
    fn legendre_ratio_is_positive(nu in 0.01..3.0f64, z in 1.01..2.5f64) {
        prop_assert!(legendre_ratio(nu, z).unwrap() > 0.0);
    }

    #[test]
    fn estimates_are_ordered(b in 1.28..3.0f64) {
        let e1 = estimate1(b).unwrap().bound().unwrap();
        let e2 = estimate2(b).unwrap().bound().unwrap();
        let e3 = estimate3(b).unwrap().bound().unwrap();
        prop_assert!(e3 <= e2 + 1e-12 && e2 <= e1 + 1e-12, "{e3} {e2} {e1}");
    }

    #[test]
    fn convolution_identity(u in trig_poly(6)) {
        // p * (f - f'') = f
        let n = 256;
        let f = field_of(&u, n);
        let d2: Vec<f64> = f.grid().apply(f.values(), |k| {
            let kk = 2.0 * PI * k as f64;
            (-kk * kk).into()
        });
        let g: Vec<f64> = f.values().iter().zip(&d2).map(|(a, b)| a - b).collect();
        let back = KernelConvolver::new(n).unwrap().convolve_p(&g);
        for (a, b) in back.iter().zip(f.values()) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn rhs_mean_vanishes(u in trig_poly(8), b in 1.01..3.0f64) {
        let r = rhs(&field_of(&u, 128), b).unwrap();
        let scale = r.values().iter().fold(1.0_f64, |m, v| m.max(v.abs()));
        prop_assert!(r.mean().abs() < 1e-12 * scale);
    }

    #[test]
    fn criterion_matches_scan(u in trig_poly(4), beta in 0.0..5.0f64) {
        let n = 256;
        let f = field_of(&u, n);
        let pts = check_criterion(&f, beta).unwrap();
        let scan: Vec<usize> = (0..n)
            .filter(|&j| {
                let x = j as f64 / n as f64;
                u.derivative(x) < -beta * u.eval(x).abs() - 1e-9
            })
            .collect();
        for j in &scan {
            prop_assert!(pts.iter().any(|p| p.index == *j));
        }
        for p in &pts {
            prop_assert!(p.margin > 0.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn j_is_even_and_bounded(b in 1.05..2.99f64, beta in 0.0..BETA_MAX) {
        let plus = compute_j(b, beta).unwrap().value;
        let minus = compute_j(b, -beta).unwrap().value;
        let zero = compute_j(b, 0.0).unwrap().value;
        prop_assert!((plus - minus).abs() < 1e-8);
        prop_assert!(plus <= zero + 1e-8);
        prop_assert!(zero <= 0.5 * b + 1e-8);
        prop_assert!(plus >= 0.0);
    }

    #[test]
    fn convolution_bound_holds(u in trig_poly(8), bi in 0usize..4, beta in prop::sample::select(vec![0.0, 1.0])) {
        let b = [1.5, 2.0, 2.5, 3.0][bi];
        let rep = check_convolution_bound(&u, b, beta).unwrap();
        prop_assert!(rep.min_slack >= -1e-8, "{rep:?}");
    }
}
