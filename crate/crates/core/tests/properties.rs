//! Property tests for the structural invariants: transform round trips,
//! conjugation symmetry, and basis-change round trips on random inputs.

use funksphere_core::*;
use proptest::prelude::*;
use std::f64::consts::PI;

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn coeff_strategy(n_max: usize) -> impl Strategy<Value = ScalarCoeffs> {
    let count = (n_max + 1) * (n_max + 1);
    proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), count).prop_map(move |raw| {
        let mut it = raw.into_iter();
        ScalarCoeffs::from_fn(n_max, |_, _| {
            let (re, im) = it.next().unwrap();
            cx(re, im)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn analysis_synthesis_round_trip(
        n_max in 0usize..=8,
        seed in any::<u64>(),
    ) {
        let mut state = seed;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let c = ScalarCoeffs::from_fn(n_max, |_, _| cx(next(), next()));
        let grid = make_grid(n_max);
        let back = analysis(&synthesis(&c, &grid).unwrap());
        prop_assert!(back.max_abs_diff(&c) <= 1e-11);
    }

    #[test]
    fn conjugation_symmetry(
        n in 0usize..=12,
        l_frac in 0.0..1.0f64,
        theta in 0.05..(PI - 0.05),
        phi in 0.0..(2.0 * PI),
    ) {
        let l = (l_frac * n as f64) as i64;
        let y = sph_harmonic(n, l, theta, phi).unwrap();
        let ym = sph_harmonic(n, -l, theta, phi).unwrap();
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((y.conj() - sign * ym).norm() <= 1e-14);
    }

    #[test]
    fn pure_orbit_round_trip(c in coeff_strategy(6)) {
        // reuse scalar tables as channel content
        let mut v = VectorCoeffs::zeros(6);
        for (n, l, value) in c.iter() {
            v.set(VshChannel::Radial, n, l, value);
            if n > 0 {
                v.set(VshChannel::Gradient, n, l, value * cx(0.0, 1.0));
                v.set(VshChannel::CurlGradient, n, l, value.conj());
            }
        }
        let back = from_pure_orbit(&to_pure_orbit(&v));
        prop_assert!(back.max_abs_diff(&v) <= 1e-13);
    }

    #[test]
    fn multiplier_application_is_linear(c in coeff_strategy(5), factor in -3.0..3.0f64) {
        let spec = laplace_beltrami_spec(5);
        let scaled_first = apply_multiplier(&c.scale(cx(factor, 0.0)), &spec).unwrap();
        let applied_first = apply_multiplier(&c, &spec).unwrap().scale(cx(factor, 0.0));
        prop_assert!(scaled_first.max_abs_diff(&applied_first) <= 1e-11);
    }

    #[test]
    fn parseval_between_field_and_coefficients(c in coeff_strategy(6)) {
        let grid = make_grid(6);
        let f = synthesis(&c, &grid).unwrap();
        let field_norm = inner_product(&f, &f).unwrap().re;
        let coeff_norm = c.l2_norm() * c.l2_norm();
        prop_assert!((field_norm - coeff_norm).abs() <= 1e-10 * coeff_norm.max(1.0));
    }
}
