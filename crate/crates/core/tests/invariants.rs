use std::f64::consts::PI;

use lie_squeeze::algebra::{
    evolution_matrix, metric_residual, structure_frequency, trig_kernels, AlgebraKind,
    CouplingTriple, Regime,
};
use lie_squeeze::coherent::{
    coefficients, moments_closed, moments_series, BarutGirardelloState, BlochState,
    CoherentState, PerelomovState, DEFAULT_CUTOFF_CAP,
};
use lie_squeeze::oracle::{OracleConfig, VarianceOracle};
use lie_squeeze::special::{bessel_i_scaled, bessel_ratio};
use lie_squeeze::squeezing::{
    squeezing_factor, variances_bgcs, variances_bloch, variances_from_moments, variances_pcs,
};
use proptest::prelude::*;

fn coupling() -> impl Strategy<Value = CouplingTriple> {
    (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b, c)| CouplingTriple::new(a, b, c))
}

fn kind() -> impl Strategy<Value = AlgebraKind> {
    prop_oneof![Just(AlgebraKind::Su11), Just(AlgebraKind::Su2)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn flow_preserves_the_metric(c in coupling(), k in kind(), t in 0.0..20.0f64) {
        let m = evolution_matrix(&c, k, t);
        let scale = m.m.amax().max(1.0);
        prop_assert!(metric_residual(&m, k) <= 1e-11 * scale * scale);
        prop_assert!((m.determinant() - 1.0).abs() <= 1e-10 * scale.powi(3));
    }

    #[test]
    fn flow_composes(c in coupling(), k in kind(), s in 0.0..3.0f64, t in 0.0..3.0f64) {
        let ab = evolution_matrix(&c, k, s).m * evolution_matrix(&c, k, t).m;
        let direct = evolution_matrix(&c, k, s + t).m;
        prop_assert!((ab - direct).amax() <= 1e-10 * direct.amax().max(1.0));
    }

    #[test]
    fn trigonometric_flow_is_periodic(c in coupling(), k in kind(), t in 0.0..10.0f64) {
        let sf = structure_frequency(&c, k);
        prop_assume!(sf.regime == Regime::Trigonometric && sf.g_abs > 0.2);
        let p = sf.quoted_period().unwrap();
        let a = evolution_matrix(&c, k, t);
        let b = evolution_matrix(&c, k, t + p);
        prop_assert!(a.max_abs_diff(&b) < 1e-9);
    }

    #[test]
    fn kernels_are_continuous_across_zero(t in 0.0..5.0f64, e in 1e-14..1e-9f64) {
        for tau in [e, -e] {
            let kern = trig_kernels(tau, t);
            prop_assert!((kern.c - 1.0).abs() < 1e-7);
            prop_assert!((kern.s1 - t).abs() < 1e-7);
            prop_assert!((kern.s2 - t * t / 4.0).abs() < 1e-7);
        }
    }

    #[test]
    fn squeezing_is_independent_of_k(
        c in coupling(), t in 0.0..8.0f64, xi in 0.0..0.9f64, phi in 0.0..6.3f64,
    ) {
        let base = variances_pcs(&PerelomovState::from_polar(0.25, xi, phi).unwrap(), &c, t);
        let sx0 = squeezing_factor(base.vx, base.kz).unwrap();
        for k in [0.75, 1.0, 2.0] {
            let v = variances_pcs(&PerelomovState::from_polar(k, xi, phi).unwrap(), &c, t);
            let sx = squeezing_factor(v.vx, v.kz).unwrap();
            prop_assert!((sx - sx0).abs() <= 1e-10 * sx0.abs().max(1.0));
        }
    }

    #[test]
    fn bloch_squeezing_is_independent_of_j(
        c in coupling(), t in 0.0..8.0f64, mu in 0.0..5.0f64, arg in 0.0..6.3f64,
    ) {
        let base = variances_bloch(&BlochState::from_polar(0.5, mu, arg).unwrap(), &c, t);
        let s0 = squeezing_factor(base.vx, base.kz);
        prop_assume!(s0.is_some_and(|s| s.abs() < 1e6));
        for j in [1.0, 2.5, 5.0] {
            let v = variances_bloch(&BlochState::from_polar(j, mu, arg).unwrap(), &c, t);
            let s = squeezing_factor(v.vx, v.kz).unwrap();
            prop_assert!((s - s0.unwrap()).abs() <= 1e-8 * s.abs().max(1.0));
        }
    }

    #[test]
    fn bgcs_starts_at_minimum_uncertainty(n in 0.5..4.0f64, z in 0.0..40.0f64, arg in 0.0..6.3f64) {
        let v = variances_bgcs(&BarutGirardelloState::from_polar(n, z, arg).unwrap(), &CouplingTriple::new(0.1, 0.25, 1.0), 0.0);
        let bound = 0.25 * v.kz * v.kz;
        prop_assert!((v.vx * v.vy - bound).abs() <= 1e-12 * bound);
    }

    #[test]
    fn closed_forms_agree_with_covariance_route(
        c in coupling(), t in 0.0..5.0f64, r in 0.0..0.85f64, arg in 0.0..6.3f64, which in 0..3usize,
    ) {
        let state: CoherentState = match which {
            0 => PerelomovState::from_polar(0.75, r, arg).unwrap().into(),
            1 => BarutGirardelloState::from_polar(1.5, 10.0 * r, arg).unwrap().into(),
            _ => BlochState::from_polar(3.5, 4.0 * r, arg).unwrap().into(),
        };
        let kind = state.kind();
        let closed = match state {
            CoherentState::Perelomov(s) => variances_pcs(&s, &c, t),
            CoherentState::BarutGirardello(s) => variances_bgcs(&s, &c, t),
            CoherentState::Bloch(s) => variances_bloch(&s, &c, t),
        };
        let generic = variances_from_moments(&moments_closed(&state), &evolution_matrix(&c, kind, t));
        let scale = closed.vx.abs().max(closed.vy.abs()).max(closed.kz.abs()).max(1.0);
        prop_assert!((closed.vx - generic.vx).abs() <= 1e-9 * scale);
        prop_assert!((closed.vy - generic.vy).abs() <= 1e-9 * scale);
        prop_assert!((closed.kz - generic.kz).abs() <= 1e-9 * scale);
    }

    #[test]
    fn moment_paths_agree(k in 0.2..3.0f64, xi in 0.0..0.85f64, phi in 0.0..6.3f64) {
        let s: CoherentState = PerelomovState::from_polar(k, xi, phi).unwrap().into();
        prop_assume!(xi > 1e-3);
        // entries of order |ξ|² need the tail far below |ξ|²
        let series = moments_series(&coefficients(&s, 1e-30, DEFAULT_CUTOFF_CAP).unwrap());
        prop_assert!(moments_closed(&s).relative_gap(&series) < 1e-9);
    }

    #[test]
    fn bessel_ratio_is_a_probability_like_quotient(nu in -0.9..10.0f64, x in 0.0..200.0f64) {
        let r = bessel_ratio(nu, x).unwrap();
        prop_assert!(r >= 0.0);
        if nu >= -0.5 {
            prop_assert!(r <= 1.0);
        }
        prop_assume!(x > 1e-3 && x < 50.0);
        let direct = bessel_i_scaled(nu + 1.0, x).unwrap() / bessel_i_scaled(nu, x).unwrap();
        prop_assert!((r - direct).abs() <= 1e-10 * direct.max(1e-300));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn su2_oracle_is_exact(
        c in coupling(), t in 0.0..10.0f64, two_j in 1usize..9, mu in 0.0..4.0f64, arg in 0.0..6.3f64,
    ) {
        let s = BlochState::from_polar(two_j as f64 / 2.0, mu, arg).unwrap();
        let mut o = VarianceOracle::new(&s.into(), &c, OracleConfig::default()).unwrap();
        let got = o.sample(t).unwrap();
        let want = variances_bloch(&s, &c, t);
        for (a, b) in [(got.vx, want.vx), (got.vy, want.vy), (got.kz, want.kz)] {
            prop_assert!((a - b).abs() <= 1e-8 * b.abs().max(1.0), "{a} vs {b}");
        }
    }

    #[test]
    fn su11_oracle_matches_in_periodic_regime(
        t in 0.0..12.0f64, xi in 0.0..0.7f64, phi in 0.0..6.3f64,
    ) {
        let c = CouplingTriple::new(0.1, 0.25, 1.0);
        let s = PerelomovState::from_polar(0.5, xi, phi).unwrap();
        let mut o = VarianceOracle::new(&s.into(), &c, OracleConfig::default()).unwrap();
        let got = o.sample(t).unwrap();
        let want = variances_pcs(&s, &c, t);
        prop_assert!((got.vx - want.vx).abs() <= 1e-6 * want.vx);
        prop_assert!((got.vy - want.vy).abs() <= 1e-6 * want.vy);
        prop_assert!(got.trunc_estimate <= OracleConfig::default().convergence_tol);
    }
}

#[test]
fn quadrature_exchange_for_figure_presets() {
    let c = CouplingTriple::new(0.1, 0.25, 1.0);
    let p = structure_frequency(&c, AlgebraKind::Su11).quoted_period().unwrap();
    for xi in [0.5, 0.8] {
        let s = PerelomovState::from_polar(0.25, xi, PI / 2.0).unwrap();
        let min_sy = (0..=1000)
            .map(|i| {
                let v = variances_pcs(&s, &c, p * i as f64 / 1000.0);
                squeezing_factor(v.vy, v.kz).unwrap()
            })
            .fold(f64::INFINITY, f64::min);
        assert!(min_sy < 0.0);
    }
}
