//! Quadrature realizations of the great-circle transform and the
//! principal-value convolution, independent of the spectral path.
//!
//! These are the trusted-against witnesses for the multiplier machinery in
//! [`crate::zonal`]: deliberately simple, deliberately slow. The circle
//! average uses an equispaced (midpoint-offset) rule, spectrally exact for
//! band-limited integrands; the principal-value integral is folded over
//! `t -> -t` so the `1/t` singularity meets only the odd part of the zonal
//! average, which vanishes linearly at `t = 0`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::grid::{eval_gradient, eval_point, ScalarCoeffs};
use crate::Complex64;
use core::f64::consts::PI;

/// Truncation cutoffs used by the dyadic convergence studies of
/// [`hilbert_direct`]; halving steps so Richardson extrapolation applies.
pub const DEFAULT_EPS_SCHEDULE: [f64; 4] = [0.2, 0.1, 0.05, 0.025];

/// Orthonormal moving frame at a point of the sphere: `e1 = d(xi)/d(theta)`,
/// `e2 = (1/sin theta) d(xi)/d(phi)`, with `e1 x e2 = xi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalFrame {
    pub e1: [f64; 3],
    pub e2: [f64; 3],
    pub xi: [f64; 3],
}

pub(crate) fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Unit direction from angular coordinates.
pub fn direction(theta: f64, phi: f64) -> [f64; 3] {
    let (st, ct) = (libm::sin(theta), libm::cos(theta));
    [st * libm::cos(phi), st * libm::sin(phi), ct]
}

/// Angular coordinates of a unit direction.
pub fn angles(xi: [f64; 3]) -> (f64, f64) {
    (libm::acos(xi[2].clamp(-1.0, 1.0)), libm::atan2(xi[1], xi[0]))
}

/// The coordinate frame at `(theta, phi)`, rejecting poles where the
/// longitude direction degenerates.
pub fn frame_at(theta: f64, phi: f64) -> Result<LocalFrame> {
    let st = libm::sin(theta);
    if st.abs() < 1e-12 {
        return Err(Error::PoleProximity { sin_theta: st });
    }
    let (ct, sp, cp) = (libm::cos(theta), libm::sin(phi), libm::cos(phi));
    Ok(LocalFrame {
        e1: [ct * cp, ct * sp, -st],
        e2: [-sp, cp, 0.0],
        xi: [st * cp, st * sp, ct],
    })
}

/// Any orthonormal pair spanning the plane orthogonal to `xi`, oriented so
/// `e1 x e2 = xi`. Great-circle integrals are invariant under the choice,
/// so this works at the poles too.
fn orthonormal_basis(xi: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let helper = if xi[2].abs() < 0.9 { [0.0, 0.0, 1.0] } else { [1.0, 0.0, 0.0] };
    let mut e1 = cross(helper, xi);
    let norm = libm::sqrt(dot(e1, e1));
    e1 = [e1[0] / norm, e1[1] / norm, e1[2] / norm];
    let e2 = cross(xi, e1);
    (e1, e2)
}

/// Circle nodes are offset by half a step so structured directions (grid
/// nodes on the equator) never place a node on a pole of the gradient
/// evaluation. The offset rule is exact for the same trigonometric degree.
fn circle_node(e1: [f64; 3], e2: [f64; 3], xi: [f64; 3], t: f64, k: usize, n: usize) -> [f64; 3] {
    let omega = 2.0 * PI * (k as f64 + 0.5) / n as f64;
    let (c, s) = (libm::cos(omega), libm::sin(omega));
    let r = libm::sqrt((1.0 - t) * (1.0 + t));
    [
        t * xi[0] + r * (c * e1[0] + s * e2[0]),
        t * xi[1] + r * (c * e1[1] + s * e2[1]),
        t * xi[2] + r * (c * e1[2] + s * e2[2]),
    ]
}

fn check_n_omega(coeffs: &ScalarCoeffs, n_omega: usize) -> Result<()> {
    let needed = 2 * coeffs.band_limit() + 2;
    if n_omega < needed {
        return Err(Error::QuadratureTooCoarse { needed, got: n_omega });
    }
    Ok(())
}

/// Great-circle average `(1/2pi) int_0^{2pi} f(e1 cos w + e2 sin w) dw`
/// of the band-limited series, evaluated by the equispaced rule.
pub fn funk_direct(coeffs: &ScalarCoeffs, xi: [f64; 3], n_omega: usize) -> Result<Complex64> {
    check_n_omega(coeffs, n_omega)?;
    let (e1, e2) = orthonormal_basis(xi);
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n_omega {
        let p = circle_node(e1, e2, xi, 0.0, k, n_omega);
        let (th, ph) = angles(p);
        acc += eval_point(coeffs, th, ph);
    }
    Ok(acc / n_omega as f64)
}

/// Componentwise great-circle average of the surface gradient of the
/// series: the quadrature realization of `F grad f` at one direction.
pub fn funk_direct_gradient(
    coeffs: &ScalarCoeffs,
    xi: [f64; 3],
    n_omega: usize,
) -> Result<[Complex64; 3]> {
    check_n_omega(coeffs, n_omega)?;
    let (e1, e2) = orthonormal_basis(xi);
    let mut acc = [Complex64::new(0.0, 0.0); 3];
    for k in 0..n_omega {
        let p = circle_node(e1, e2, xi, 0.0, k, n_omega);
        let (th, ph) = angles(p);
        let g = eval_gradient(coeffs, th, ph)?;
        for (a, gi) in acc.iter_mut().zip(g) {
            *a += gi;
        }
    }
    Ok(acc.map(|a| a / n_omega as f64))
}

/// Truncated principal-value convolution
/// `(1/4pi) int_{|xi.eta| > eps} f(eta)/(xi.eta) d eta`.
///
/// Written in the zonal coordinate `t = xi . eta` the integral becomes
/// `(1/2) int_eps^1 (A(t) - A(-t))/t dt` where `A(t)` is the circle average
/// at polar distance `t`; the symmetric pairing makes the integrand an even
/// polynomial for band-limited input, so Gauss-Legendre in `t` is exact and
/// the only error left is the truncation itself. Convergence over an `eps`
/// schedule is the caller's test.
pub fn hilbert_direct(coeffs: &ScalarCoeffs, xi: [f64; 3], eps: f64) -> Result<Complex64> {
    if !(eps > 0.0 && eps <= 0.5) {
        return Err(Error::InvalidCutoff { eps });
    }
    let band = coeffs.band_limit();
    let n_omega = 2 * band + 2;
    let (e1, e2) = orthonormal_basis(xi);
    let (x, w) = crate::legendre::gauss_legendre(band + 2);
    let mid = 0.5 * (1.0 + eps);
    let half = 0.5 * (1.0 - eps);
    let mut acc = Complex64::new(0.0, 0.0);
    for (&xk, &wk) in x.iter().zip(&w) {
        let t = mid + half * xk;
        let mut plus = Complex64::new(0.0, 0.0);
        let mut minus = Complex64::new(0.0, 0.0);
        for k in 0..n_omega {
            let p = circle_node(e1, e2, xi, t, k, n_omega);
            let (th, ph) = angles(p);
            plus += eval_point(coeffs, th, ph);
            let q = circle_node(e1, e2, xi, -t, k, n_omega);
            let (th, ph) = angles(q);
            minus += eval_point(coeffs, th, ph);
        }
        let band_avg = (plus - minus) / n_omega as f64;
        acc += half * wk * band_avg / t;
    }
    Ok(acc * 0.5)
}

/// Richardson extrapolation for values computed on a halving cutoff
/// schedule, cancelling the odd-power error expansion `a1 eps + a3 eps^3 + ...`.
pub fn richardson_extrapolate(values: &[Complex64]) -> Complex64 {
    assert!(!values.is_empty());
    let mut row: Vec<Complex64> = values.to_vec();
    let mut level = 1usize;
    while row.len() > 1 {
        let factor = libm::pow(2.0, (2 * level - 1) as f64);
        row = row
            .windows(2)
            .map(|pair| (factor * pair[1] - pair[0]) / (factor - 1.0))
            .collect();
        level += 1;
    }
    row[0]
}

/// Runs [`hilbert_direct`] over a halving `eps` schedule and extrapolates.
pub fn hilbert_extrapolated(
    coeffs: &ScalarCoeffs,
    xi: [f64; 3],
    schedule: &[f64],
) -> Result<Complex64> {
    let mut values = Vec::with_capacity(schedule.len());
    for &eps in schedule {
        values.push(hilbert_direct(coeffs, xi, eps)?);
    }
    Ok(richardson_extrapolate(&values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::ScalarCoeffs;
    use crate::legendre::sph_harmonic;
    use approx::assert_abs_diff_eq;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn lcg(seed: &mut u64) -> f64 {
        *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
        (*seed >> 11) as f64 / (1u64 << 53) as f64
    }

    #[test]
    fn frame_component_formulas() {
        let f = frame_at(PI / 2.0, 0.0).unwrap();
        for (got, want) in [
            (f.e1, [0.0, 0.0, -1.0]),
            (f.e2, [0.0, 1.0, 0.0]),
            (f.xi, [1.0, 0.0, 0.0]),
        ] {
            for k in 0..3 {
                assert_abs_diff_eq!(got[k], want[k], epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn frame_orthonormal_at_random_points() {
        let mut seed = 42u64;
        for _ in 0..100 {
            let theta = 0.01 + (PI - 0.02) * lcg(&mut seed);
            let phi = 2.0 * PI * lcg(&mut seed);
            let f = frame_at(theta, phi).unwrap();
            assert!(dot(f.xi, f.e1).abs() < 1e-14);
            assert!(dot(f.xi, f.e2).abs() < 1e-14);
            assert!(dot(f.e1, f.e2).abs() < 1e-14);
            for v in [f.e1, f.e2, f.xi] {
                assert_abs_diff_eq!(dot(v, v), 1.0, epsilon = 1e-14);
            }
            let c = cross(f.e1, f.e2);
            for k in 0..3 {
                assert_abs_diff_eq!(c[k], f.xi[k], epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn frame_rejects_poles() {
        assert!(matches!(frame_at(0.0, 0.3), Err(Error::PoleProximity { .. })));
        assert!(frame_at(PI, 0.3).is_err());
    }

    #[test]
    fn funk_direct_constant() {
        let c = ScalarCoeffs::unit(2, 0, 0)
            .unwrap()
            .scale(cx((4.0 * PI).sqrt(), 0.0));
        for xi in [[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.6, 0.48, 0.64]] {
            let v = funk_direct(&c, xi, 8).unwrap();
            assert!((v - cx(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn funk_direct_even_harmonic_at_pole() {
        // the great circle of the pole is the equator, where Y_20 is constant
        let c = ScalarCoeffs::unit(2, 2, 0).unwrap();
        let v = funk_direct(&c, [0.0, 0.0, 1.0], 8).unwrap();
        let expect = -0.5 * (5.0 / (4.0 * PI)).sqrt();
        assert_abs_diff_eq!(v.re, expect, epsilon = 1e-13);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn funk_direct_matches_multiplier() {
        let mut seed = 7u64;
        for (n, l) in [(2usize, 1i64), (4, -3), (6, 0), (3, 2), (5, -1)] {
            let c = ScalarCoeffs::unit(6, n, l).unwrap();
            let lam = crate::zonal::funk_minkowski_spec(6).lambda(n);
            for _ in 0..10 {
                let xi = direction(0.1 + 2.9 * lcg(&mut seed), 2.0 * PI * lcg(&mut seed));
                let v = funk_direct(&c, xi, 14).unwrap();
                let y = sph_harmonic(n, l, angles(xi).0, angles(xi).1).unwrap();
                assert!((v - lam * y).norm() < 1e-12, "n={n} l={l}");
            }
        }
    }

    #[test]
    fn funk_direct_is_even_in_direction() {
        let c = ScalarCoeffs::from_fn(5, |n, l| cx(0.4 / (n + 1) as f64, 0.1 * l as f64));
        let mut seed = 99u64;
        for _ in 0..20 {
            let xi = direction(0.2 + 2.7 * lcg(&mut seed), 2.0 * PI * lcg(&mut seed));
            let anti = [-xi[0], -xi[1], -xi[2]];
            let a = funk_direct(&c, xi, 12).unwrap();
            let b = funk_direct(&c, anti, 12).unwrap();
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn funk_direct_quadrature_guard() {
        let c = ScalarCoeffs::zeros(6);
        assert!(matches!(
            funk_direct(&c, [0.0, 0.0, 1.0], 8),
            Err(Error::QuadratureTooCoarse { needed: 14, got: 8 })
        ));
    }

    #[test]
    fn hilbert_direct_kills_even_input() {
        let c = ScalarCoeffs::from_fn(6, |n, l| {
            if n % 2 == 0 { cx(1.0 / (n + 1) as f64, 0.2 * l as f64) } else { cx(0.0, 0.0) }
        });
        for eps in DEFAULT_EPS_SCHEDULE {
            let v = hilbert_direct(&c, [0.0, 0.0, 1.0], eps).unwrap();
            assert!(v.norm() < 1e-13, "eps={eps}");
        }
    }

    #[test]
    fn hilbert_direct_degree_one_converges() {
        let c = ScalarCoeffs::unit(3, 1, 0).unwrap();
        let xi = [0.0, 0.0, 1.0];
        let target = sph_harmonic(1, 0, 0.0, 0.0).unwrap(); // multiplier is 1
        let mut errs = [0.0; 3];
        for (k, eps) in [0.1, 0.05, 0.025].iter().enumerate() {
            let v = hilbert_direct(&c, xi, *eps).unwrap();
            errs[k] = (v - target).norm();
        }
        assert!(errs[1] < errs[0] && errs[2] < errs[1], "errs={errs:?}");
        assert!(errs[2] < 2e-2);
    }

    #[test]
    fn hilbert_extrapolated_degree_three() {
        let c = ScalarCoeffs::unit(4, 3, 0).unwrap();
        let mut seed = 5u64;
        for _ in 0..5 {
            let (th, ph) = (0.3 + 2.5 * lcg(&mut seed), 2.0 * PI * lcg(&mut seed));
            let xi = direction(th, ph);
            let v = hilbert_extrapolated(&c, xi, &DEFAULT_EPS_SCHEDULE).unwrap();
            let expect = -(2.0 / 3.0) * sph_harmonic(3, 0, th, ph).unwrap();
            assert!((v - expect).norm() < 1e-7, "v={v} expect={expect}");
        }
    }

    #[test]
    fn hilbert_direct_is_odd_in_direction() {
        let c = ScalarCoeffs::from_fn(5, |n, l| {
            if n % 2 == 1 { cx(0.5 / (n + 1) as f64, 0.1 * l as f64) } else { cx(0.0, 0.0) }
        });
        let mut seed = 31u64;
        for _ in 0..10 {
            let xi = direction(0.2 + 2.7 * lcg(&mut seed), 2.0 * PI * lcg(&mut seed));
            let anti = [-xi[0], -xi[1], -xi[2]];
            let a = hilbert_direct(&c, xi, 0.05).unwrap();
            let b = hilbert_direct(&c, anti, 0.05).unwrap();
            assert!((a + b).norm() < 1e-12);
        }
    }

    #[test]
    fn hilbert_direct_cutoff_guard() {
        let c = ScalarCoeffs::zeros(2);
        assert!(hilbert_direct(&c, [0.0, 0.0, 1.0], 0.0).is_err());
        assert!(hilbert_direct(&c, [0.0, 0.0, 1.0], 0.7).is_err());
    }

    #[test]
    fn richardson_cancels_odd_powers() {
        // synthetic data V(eps) = L + 2 eps + 5 eps^3 on a halving schedule
        let exact = cx(3.0, -1.0);
        let vals: Vec<Complex64> = [0.2, 0.1, 0.05, 0.025]
            .iter()
            .map(|e| exact + cx(2.0 * e + 5.0 * e * e * e, 0.0))
            .collect();
        let r = richardson_extrapolate(&vals);
        assert!((r - exact).norm() < 1e-13);
    }
}
