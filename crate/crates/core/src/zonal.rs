//! Fourier multiplier operators and zonal convolution kernels.
//!
//! A zonal convolution acts diagonally on spherical harmonic coefficients:
//! the whole operator is a degree-indexed sequence `lambda_N` plus a parity
//! mask recording which degrees it annihilates. The two operators at the
//! center of this crate are spectrally exact here:
//!
//! * `F` (great-circle averaging): `lambda_N = P_N(0)` on even degrees;
//! * `S` (Hilbert-type convolution): `lambda_N = 1/(N P_{N-1}(0))` on odd
//!   degrees.
//!
//! Their kernels (a delta line measure and `1/x`) are never quadratured
//! here; the quadrature realizations live in [`crate::oracle`] as
//! independent cross-checks. Integrable kernels go through the Funk-Hecke
//! identity `lambda_N = 2 pi int K(t) P_N(t) dt`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::grid::ScalarCoeffs;
use crate::legendre::legendre_zeros;

/// Degrees a multiplier sequence annihilates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Parity {
    All,
    EvenOnly,
    OddOnly,
}

impl Parity {
    /// Whether degree `n` survives the mask.
    pub fn admits(self, n: usize) -> bool {
        match self {
            Parity::All => true,
            Parity::EvenOnly => n % 2 == 0,
            Parity::OddOnly => n % 2 == 1,
        }
    }
}

/// A zonal convolution operator in spectral form: `lambda_N` for
/// `0 <= N <= N_max` plus the parity mask of annihilated degrees.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MultiplierSpec {
    parity: Parity,
    lambda: Vec<f64>,
}

impl MultiplierSpec {
    /// Validates finiteness and that parity-excluded degrees carry zero.
    pub fn new(lambda: Vec<f64>, parity: Parity) -> Result<Self> {
        for (n, &v) in lambda.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFiniteMultiplier { degree: n });
            }
            if !parity.admits(n) && v != 0.0 {
                return Err(Error::ParityViolation { degree: n });
            }
        }
        Ok(Self { parity, lambda })
    }

    pub fn band_limit(&self) -> usize {
        self.lambda.len() - 1
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn lambda(&self, n: usize) -> f64 {
        self.lambda[n]
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambda
    }

    /// Pointwise product, the spectral form of operator composition.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.band_limit() != other.band_limit() {
            return Err(Error::BandLimitMismatch {
                left: self.band_limit(),
                right: other.band_limit(),
            });
        }
        let lambda = self
            .lambda
            .iter()
            .zip(&other.lambda)
            .map(|(a, b)| a * b)
            .collect();
        let parity = match (self.parity, other.parity) {
            (Parity::All, p) | (p, Parity::All) => p,
            (a, b) if a == b => a,
            // disjoint parities annihilate everything; either mask is valid
            _ => Parity::EvenOnly,
        };
        Self::new(lambda, parity)
    }
}

/// Applies the operator: `u_{Nl} -> lambda_N u_{Nl}`.
pub fn apply_multiplier(coeffs: &ScalarCoeffs, spec: &MultiplierSpec) -> Result<ScalarCoeffs> {
    if coeffs.band_limit() != spec.band_limit() {
        return Err(Error::BandLimitMismatch {
            left: coeffs.band_limit(),
            right: spec.band_limit(),
        });
    }
    let mut out = ScalarCoeffs::zeros(coeffs.band_limit());
    for (n, l, v) in coeffs.iter() {
        out.set(n, l, v * spec.lambda(n));
    }
    Ok(out)
}

/// Great-circle averaging transform: `lambda_N = P_N(0)` on even degrees,
/// zero on odd degrees.
pub fn funk_minkowski_spec(n_max: usize) -> MultiplierSpec {
    let lambda = legendre_zeros(n_max);
    MultiplierSpec { parity: Parity::EvenOnly, lambda }
}

/// Hilbert-type spherical convolution: `lambda_N = 1/(N P_{N-1}(0))` on odd
/// degrees, zero on even degrees.
pub fn hilbert_spec(n_max: usize) -> MultiplierSpec {
    let zeros = legendre_zeros(n_max.max(1));
    let lambda = (0..=n_max)
        .map(|n| {
            if n % 2 == 1 {
                1.0 / (n as f64 * zeros[n - 1])
            } else {
                0.0
            }
        })
        .collect();
    MultiplierSpec { parity: Parity::OddOnly, lambda }
}

/// Laplace-Beltrami operator: `lambda_N = -N(N+1)`.
pub fn laplace_beltrami_spec(n_max: usize) -> MultiplierSpec {
    let lambda = (0..=n_max).map(|n| -((n * (n + 1)) as f64)).collect();
    MultiplierSpec { parity: Parity::All, lambda }
}

/// Multipliers of the zonal convolution with kernel `K(xi . eta)` via the
/// Funk-Hecke identity, `lambda_N = 2 pi int_{-1}^{1} K(t) P_N(t) dt`, by
/// Gauss-Legendre quadrature of the stated order.
pub fn funk_hecke_spec(
    kernel: impl Fn(f64) -> f64,
    n_max: usize,
    quad_order: usize,
) -> Result<MultiplierSpec> {
    if quad_order < n_max + 1 {
        return Err(Error::QuadratureTooCoarse { needed: n_max + 1, got: quad_order });
    }
    let (x, w) = crate::legendre::gauss_legendre(quad_order);
    let mut lambda = vec![0.0; n_max + 1];
    let mut p = vec![0.0; n_max + 1];
    for (&t, &wt) in x.iter().zip(&w) {
        let k = kernel(t);
        if !k.is_finite() {
            return Err(Error::NonFiniteKernel { t });
        }
        legendre_column(t, &mut p);
        for (slot, pn) in lambda.iter_mut().zip(&p) {
            *slot += wt * k * pn;
        }
    }
    for v in lambda.iter_mut() {
        *v *= 2.0 * PI;
    }
    MultiplierSpec::new(lambda, Parity::All)
}

/// `P_0(t) .. P_{n}(t)` into `out` by the degree recurrence.
fn legendre_column(t: f64, out: &mut [f64]) {
    out[0] = 1.0;
    if out.len() > 1 {
        out[1] = t;
    }
    for k in 2..out.len() {
        out[k] =
            ((2 * k - 1) as f64 * t * out[k - 1] - (k - 1) as f64 * out[k - 2]) / k as f64;
    }
}

/// Moments of the logarithmic kernel, `c_N = int_{-1}^{1} ln|t| P_N(t) dt`.
///
/// The integrand is even in `t` for even `N` (zero for odd `N`), so the
/// integral is folded to `2 int_0^1`. Composite Gauss-Legendre on dyadic
/// panels `[2^-k-1, 2^-k]` resolves the integrable endpoint: plain
/// Gauss-Legendre stalls near 1e-5 regardless of order, the graded panels
/// reach ~1e-11.
pub fn log_kernel_moments(n_max: usize) -> Vec<f64> {
    const PANELS: usize = 60;
    let per_panel = (n_max / 2 + 12).max(16);
    let (x, w) = crate::legendre::gauss_legendre(per_panel);
    let mut c = vec![0.0; n_max + 1];
    let mut p = vec![0.0; n_max + 1];
    let mut hi = 1.0f64;
    for _ in 0..PANELS {
        let lo = hi * 0.5;
        let mid = 0.5 * (hi + lo);
        let half = 0.5 * (hi - lo);
        for (&xi, &wi) in x.iter().zip(&w) {
            let t = mid + half * xi;
            let wt = half * wi * libm::log(t);
            legendre_column(t, &mut p);
            for (slot, pn) in c.iter_mut().zip(&p).step_by(1) {
                *slot += wt * pn;
            }
        }
        hi = lo;
    }
    for (n, v) in c.iter_mut().enumerate() {
        *v = if n % 2 == 0 { 2.0 * *v } else { 0.0 };
    }
    c
}

/// Zonal convolution with kernel `ln|t| / (4 pi)` in spectral form:
/// `lambda_N = c_N / 2` on even degrees.
pub fn log_kernel_spec(n_max: usize) -> MultiplierSpec {
    let lambda = log_kernel_moments(n_max).iter().map(|c| c / 2.0).collect();
    MultiplierSpec { parity: Parity::EvenOnly, lambda }
}

/// Largest annihilated-channel mass tolerated by [`pseudo_inverse`].
pub const KERNEL_MASS_TOL: f64 = 1e-8;
/// Multiplier magnitude below which inversion of a populated channel is
/// reported as ill-posed.
pub const MULTIPLIER_FLOOR: f64 = 1e-14;

/// Divides surviving channels by `lambda_N` and zeroes annihilated ones.
///
/// Errors with [`Error::KernelViolation`] when the input carries more than
/// [`KERNEL_MASS_TOL`] L2 mass on parity-annihilated degrees, and with
/// [`Error::IllPosed`] when a populated degree meets a multiplier below
/// [`MULTIPLIER_FLOOR`]. Sub-floor multipliers on unpopulated degrees are
/// treated as annihilation.
pub fn pseudo_inverse(spec: &MultiplierSpec, coeffs: &ScalarCoeffs) -> Result<ScalarCoeffs> {
    if coeffs.band_limit() != spec.band_limit() {
        return Err(Error::BandLimitMismatch {
            left: coeffs.band_limit(),
            right: spec.band_limit(),
        });
    }
    let annihilated = coeffs.mass_where(|n| !spec.parity().admits(n));
    if annihilated > KERNEL_MASS_TOL {
        return Err(Error::KernelViolation { mass: annihilated });
    }
    let mut out = ScalarCoeffs::zeros(coeffs.band_limit());
    for n in 0..=coeffs.band_limit() {
        if !spec.parity().admits(n) {
            continue;
        }
        let lam = spec.lambda(n);
        if lam.abs() < MULTIPLIER_FLOOR {
            let mass = coeffs.mass_where(|k| k == n);
            if mass > KERNEL_MASS_TOL {
                return Err(Error::IllPosed { degree: n, magnitude: lam.abs() });
            }
            continue;
        }
        for l in -(n as i64)..=(n as i64) {
            out.set(n, l, coeffs.get(n, l) / lam);
        }
    }
    Ok(out)
}
