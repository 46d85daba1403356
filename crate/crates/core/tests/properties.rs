//! Property tests for the model and dynamics invariants.

use lambda_cavity::dynamics::{
    cubic_coefficients, initial_weights, solve_cubic_trig, BlockCouplings, BlockSolution,
};
use lambda_cavity::model::{choose_truncation, CoherentModeSpec, NonlinearitySpec};
use num_complex::Complex64 as C64;
use proptest::prelude::*;

fn couplings_strategy() -> impl Strategy<Value = BlockCouplings> {
    (
        -5.0..5.0f64,
        -5.0..5.0f64,
        -5.0..5.0f64,
        0.05..6.0f64,
        0.05..6.0f64,
        -8.0..8.0f64,
        -8.0..8.0f64,
    )
        .prop_map(|(v_a, v_b, v_c, kappa1, kappa2, delta2, delta3)| BlockCouplings {
            v_a,
            v_b,
            v_c,
            kappa1,
            kappa2,
            delta2,
            delta3,
        })
}

fn spec_strategy() -> impl Strategy<Value = NonlinearitySpec> {
    prop_oneof![
        Just(NonlinearitySpec::Constant),
        Just(NonlinearitySpec::SqrtN),
        Just(NonlinearitySpec::InverseSqrtN),
        proptest::collection::vec(0.0..10.0f64, 64..80).prop_map(NonlinearitySpec::Tabulated),
    ]
}

proptest! {
    #[test]
    fn nonlinearity_weights_finite_and_nonnegative(spec in spec_strategy(), n in 0usize..60) {
        // the bare 1/√n value is undefined on the vacuum; everything else
        // must be a finite nonnegative real
        if !(matches!(spec, NonlinearitySpec::InverseSqrtN) && n == 0) {
            let w = spec.eval(n).unwrap();
            prop_assert!(w.is_finite() && w >= 0.0);
        }
        let kerr = spec.kerr_weight(n).unwrap();
        prop_assert!(kerr.is_finite() && kerr >= 0.0);
        prop_assert_eq!(spec.kerr_weight(0).unwrap(), 0.0);
    }

    #[test]
    fn cubic_roots_are_real_with_tiny_residuals(c in couplings_strategy()) {
        let x = cubic_coefficients(&c);
        let sol = solve_cubic_trig(x).unwrap();
        for &mu in &sol.mu {
            prop_assert!(mu.is_finite());
            let p = ((mu + x[0]) * mu + x[1]) * mu + x[2];
            let xinf = x[0].abs().max(x[1].abs()).max(x[2].abs());
            prop_assert!(p.abs() <= 1e-9 * 1.0f64.max(xinf * mu * mu));
        }
    }

    #[test]
    fn weights_encode_initial_conditions(c in couplings_strategy()) {
        let sol = solve_cubic_trig(cubic_coefficients(&c)).unwrap();
        prop_assume!(!sol.degenerate);
        let b = initial_weights(&sol, &c).unwrap();
        let sum_b: f64 = b.iter().sum();
        let sum_a: f64 = (0..3).map(|j| (sol.mu[j] + c.v_b) * b[j]).sum();
        prop_assert!(sum_b.abs() < 1e-10);
        prop_assert!((sum_a + 1.0).abs() < 1e-10);
    }

    #[test]
    fn block_norm_is_conserved(c in couplings_strategy(), t in 0.0..25.0f64) {
        let sol = solve_cubic_trig(cubic_coefficients(&c)).unwrap();
        prop_assume!(!sol.degenerate);
        let b = initial_weights(&sol, &c).unwrap();
        let block = BlockSolution { couplings: c, cubic: sol, b };
        let norm = block.amplitudes_at(t).norm_sqr();
        prop_assert!((norm - 1.0).abs() < 1e-8, "norm {} at t={}", norm, t);
    }

    #[test]
    fn coherent_partial_norm_bounded_and_monotone(
        re in -3.0..3.0f64,
        im in -3.0..3.0f64,
        n_max in 1usize..40,
    ) {
        let mode = CoherentModeSpec::new(C64::new(re, im));
        let q = mode.amplitudes(n_max).unwrap();
        let mut partial = 0.0;
        let mut prev = 0.0;
        for z in &q {
            partial += z.norm_sqr();
            prop_assert!(partial >= prev);
            prev = partial;
        }
        prop_assert!(partial <= 1.0 + 1e-12);
    }

    #[test]
    fn truncation_monotone(mean in 0.0..40.0f64, exp_a in 2u32..12, exp_b in 2u32..12) {
        let (lo, hi) = if exp_a > exp_b { (exp_b, exp_a) } else { (exp_a, exp_b) };
        let tol_loose = 10f64.powi(-(lo as i32));
        let tol_tight = 10f64.powi(-(hi as i32));
        prop_assert!(choose_truncation(mean, tol_loose) <= choose_truncation(mean, tol_tight));
    }
}
