//! Legendre polynomials, normalized associated Legendre functions and
//! complex spherical harmonics.
//!
//! Everything here runs on three-term recurrences. The normalization
//! constant `N_{Nl} = sqrt((2N+1)/(4pi) * (N-l)!/(N+l)!)` is folded into
//! the associated Legendre recurrence so no factorial ratio is ever formed;
//! the fully normalized values stay O(1) for degrees well past 2048.
//!
//! The closed-form equator values `P_N(0)` (and through them
//! `C^(3/2)_{N-1}(0) = N P_{N-1}(0)`) define every multiplier sequence in
//! this crate, so they get dedicated, exactly-recursive evaluators.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::Complex64;

/// Largest tolerated excursion of an evaluation argument past |t| = 1.
const T_SLACK: f64 = 1e-12;

/// Degree/order pair with `|l| <= n` enforced at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeOrder {
    pub n: usize,
    pub l: i64,
}

impl DegreeOrder {
    pub fn new(n: usize, l: i64) -> Result<Self> {
        if l.unsigned_abs() as usize > n {
            return Err(Error::OrderOutOfRange { n, l });
        }
        Ok(Self { n, l })
    }
}

fn check_t(t: f64) -> Result<f64> {
    if !(t.abs() <= 1.0 + T_SLACK) {
        return Err(Error::ArgOutOfRange { t });
    }
    Ok(t.clamp(-1.0, 1.0))
}

/// Legendre polynomial `P_n(t)` by the degree recurrence
/// `(k+1) P_{k+1} = (2k+1) t P_k - k P_{k-1}`.
pub fn legendre_poly(n: usize, t: f64) -> Result<f64> {
    let t = check_t(t)?;
    Ok(legendre_pair(n, t).0)
}

/// `(P_n(t), P_{n-1}(t))` without the domain check; `P_{-1}` is reported as 0.
fn legendre_pair(n: usize, t: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut prev = 1.0;
    let mut curr = t;
    for k in 1..n {
        let next = ((2 * k + 1) as f64 * t * curr - k as f64 * prev) / (k + 1) as f64;
        prev = curr;
        curr = next;
    }
    (curr, prev)
}

/// `P_n(0)` in closed form: zero for odd `n`, otherwise the double-factorial
/// ratio `(-1)^j (2j-1)!!/(2j)!!` built multiplicatively.
pub fn legendre_zero(n: usize) -> f64 {
    if n % 2 == 1 {
        return 0.0;
    }
    let mut v = 1.0;
    let mut j = 1;
    while 2 * j <= n {
        v *= -((2 * j - 1) as f64) / (2 * j) as f64;
        j += 1;
    }
    v
}

/// All of `P_0(0) .. P_{n_max}(0)` in one pass of the ratio recurrence.
pub(crate) fn legendre_zeros(n_max: usize) -> Vec<f64> {
    let mut out = vec![0.0; n_max + 1];
    let mut v = 1.0;
    out[0] = 1.0;
    let mut n = 2;
    while n <= n_max {
        v *= -((n - 1) as f64) / n as f64;
        out[n] = v;
        n += 2;
    }
    out
}

/// `C^(3/2)_{n-1}(0) = n P_{n-1}(0)` for odd `n`; the reciprocal of the
/// odd-degree convolution multiplier. Even degrees are rejected because the
/// value would multiply an annihilated channel.
pub fn gegenbauer_three_halves_zero(n: usize) -> Result<f64> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::EvenDegree { n });
    }
    Ok(n as f64 * legendre_zero(n - 1))
}

/// Flat index into a triangular (degree, non-negative order) table.
#[inline]
pub(crate) fn tri_index(n: usize, m: usize) -> usize {
    n * (n + 1) / 2 + m
}

/// Fills `q[tri_index(n, m)] = N_{nm} P^m_n(t)` for all `0 <= m <= n <= n_max`.
///
/// Fully normalized ascending recurrence: diagonal seeds
/// `Q^m_m = sin(theta) sqrt((2m+1)/(2m)) Q^{m-1}_{m-1}` starting from
/// `Q^0_0 = 1/sqrt(4 pi)`, then degree ascent at fixed order.
pub(crate) fn normalized_table(n_max: usize, t: f64, q: &mut [f64]) {
    debug_assert!(q.len() >= tri_index(n_max, n_max) + 1);
    let s = libm::sqrt((1.0 - t) * (1.0 + t));
    let mut diag = 1.0 / libm::sqrt(4.0 * PI);
    for m in 0..=n_max {
        if m > 0 {
            diag *= s * libm::sqrt((2 * m + 1) as f64 / (2 * m) as f64);
        }
        q[tri_index(m, m)] = diag;
        if m + 1 <= n_max {
            q[tri_index(m + 1, m)] = t * libm::sqrt((2 * m + 3) as f64) * diag;
        }
        for n in (m + 2)..=n_max {
            let nf = n as f64;
            let mf = m as f64;
            let a = libm::sqrt((4.0 * nf * nf - 1.0) / (nf * nf - mf * mf));
            let b = libm::sqrt(
                ((2.0 * nf + 1.0) / (2.0 * nf - 3.0)) * ((nf - 1.0) * (nf - 1.0) - mf * mf)
                    / (nf * nf - mf * mf),
            );
            q[tri_index(n, m)] = a * t * q[tri_index(n - 1, m)] - b * q[tri_index(n - 2, m)];
        }
    }
}

/// Theta-derivatives of the normalized table:
/// `dq[n,m] = d/dtheta (N_{nm} P^m_n(cos theta))`, valid off the poles.
///
/// Uses `sin(theta) dQ^m_n/dtheta = n t Q^m_n - sqrt((2n+1)/(2n-1) (n^2-m^2)) Q^m_{n-1}`.
pub(crate) fn normalized_table_deriv(n_max: usize, t: f64, q: &[f64], dq: &mut [f64]) {
    let s = libm::sqrt((1.0 - t) * (1.0 + t));
    debug_assert!(s > 0.0);
    for m in 0..=n_max {
        for n in m..=n_max {
            let nf = n as f64;
            let mf = m as f64;
            let lower = if n > m {
                let d = libm::sqrt(((2.0 * nf + 1.0) / (2.0 * nf - 1.0)) * (nf * nf - mf * mf));
                d * q[tri_index(n - 1, m)]
            } else {
                0.0
            };
            dq[tri_index(n, m)] = (nf * t * q[tri_index(n, m)] - lower) / s;
        }
    }
}

/// `N_{nl} P^l_n(t)` for `0 <= l <= n`: the associated Legendre function with
/// the orthonormality constant folded in. No Condon-Shortley phase.
pub fn assoc_legendre_normalized(n: usize, l: usize, t: f64) -> Result<f64> {
    if l > n {
        return Err(Error::OrderOutOfRange { n, l: l as i64 });
    }
    let t = check_t(t)?;
    let s = libm::sqrt((1.0 - t) * (1.0 + t));
    let mut diag = 1.0 / libm::sqrt(4.0 * PI);
    for m in 1..=l {
        diag *= s * libm::sqrt((2 * m + 1) as f64 / (2 * m) as f64);
    }
    if n == l {
        return Ok(diag);
    }
    let mut prev = diag;
    let mut curr = t * libm::sqrt((2 * l + 3) as f64) * diag;
    for k in (l + 2)..=n {
        let kf = k as f64;
        let mf = l as f64;
        let a = libm::sqrt((4.0 * kf * kf - 1.0) / (kf * kf - mf * mf));
        let b = libm::sqrt(
            ((2.0 * kf + 1.0) / (2.0 * kf - 3.0)) * ((kf - 1.0) * (kf - 1.0) - mf * mf)
                / (kf * kf - mf * mf),
        );
        let next = a * t * curr - b * prev;
        prev = curr;
        curr = next;
    }
    Ok(curr)
}

/// Sign carried by the order: the Condon-Shortley phase `(-1)^l` for
/// `l >= 0`, and `+1` for negative orders (so that
/// `conj(Y_{nl}) = (-1)^l Y_{n,-l}` holds exactly).
#[inline]
pub(crate) fn order_sign(l: i64) -> f64 {
    if l >= 0 && l % 2 != 0 {
        -1.0
    } else {
        1.0
    }
}

/// Complex spherical harmonic `Y_{nl}(theta, phi)` with the Condon-Shortley
/// phase, `Y_{nl} = (-1)^l N_{nl} e^{i l phi} P^l_n(cos theta)`; negative
/// orders via `P^{-l}_n = (-1)^l (n-l)!/(n+l)! P^l_n`.
pub fn sph_harmonic(n: usize, l: i64, theta: f64, phi: f64) -> Result<Complex64> {
    if l.unsigned_abs() as usize > n {
        return Err(Error::OrderOutOfRange { n, l });
    }
    let q = assoc_legendre_normalized(n, l.unsigned_abs() as usize, libm::cos(theta))?;
    let arg = l as f64 * phi;
    let phase = Complex64::new(libm::cos(arg), libm::sin(arg));
    Ok(order_sign(l) * q * phase)
}

/// Gauss-Legendre nodes (ascending) and weights on [-1, 1].
///
/// Newton iteration on `P_n` from the Tricomi initial guess; the rule is
/// symmetrized bitwise so `x[i] = -x[n-1-i]` holds exactly.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "quadrature order must be positive");
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        // root i counted from the largest; iterate on the positive half
        let mut t = libm::cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        for _ in 0..100 {
            let (p, pm1) = legendre_pair(n, t);
            let dp = n as f64 * (t * p - pm1) / (t * t - 1.0);
            let dt = p / dp;
            t -= dt;
            if dt.abs() < 1e-15 {
                break;
            }
        }
        let (p, pm1) = legendre_pair(n, t);
        let dp = n as f64 * (t * p - pm1) / (t * t - 1.0);
        let weight = 2.0 / ((1.0 - t * t) * dp * dp);
        x[n - 1 - i] = t;
        w[n - 1 - i] = weight;
        x[i] = -t;
        w[i] = weight;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
        let (_, pm1) = legendre_pair(n, 0.0);
        let dp = n as f64 * (0.0 - pm1) / (0.0 - 1.0);
        w[n / 2] = 2.0 / (dp * dp);
    }
    (x, w)
}
