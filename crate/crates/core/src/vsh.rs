//! Vector spherical harmonics, surface differential operators, and the
//! vector-valued actions of the great-circle transform `F` and the
//! Hilbert-type convolution `S`.
//!
//! Vector fields are stored spectrally over the orthonormal pure-spin basis
//!
//! ```text
//! y1_{Nl} = xi Y_{Nl}                      (radial,     N >= 0)
//! y2~_{Nl} = grad Y_{Nl} / sqrt(N(N+1))    (gradient,   N >= 1)
//! y3~_{Nl} = xi x grad Y_{Nl} / sqrt(N(N+1)) (curl-grad, N >= 1)
//! ```
//!
//! The pure-orbit system `{h_e, h_i, y3}` with `h_e = -(N+1) y1 + y2`,
//! `h_i = N y1 + y2` (unnormalized bookkeeping) diagonalizes the vector
//! actions of `F` and `S`; it is a conversion view, not storage. All
//! multiplier formulas below are written against the unnormalized
//! `y2 = sqrt(N(N+1)) y2~`, with the conversion factors applied at the
//! formula boundary.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::grid::{analysis_to, ScalarCoeffs, ScalarField, SphericalGrid};
use crate::legendre::legendre_zeros;
use crate::legendre::{
    normalized_table, normalized_table_deriv, order_sign, tri_index, DegreeOrder,
};
use crate::Complex64;

/// Radial mass above which a field is rejected as non-tangential.
pub const TANGENT_TOL: f64 = 1e-8;

/// The three pure-spin families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VshChannel {
    /// `xi Y` — radial.
    Radial,
    /// `grad Y` — tangential, curl-free.
    Gradient,
    /// `xi x grad Y` — tangential, divergence-free.
    CurlGradient,
}

impl VshChannel {
    pub fn from_index(k: u8) -> Result<Self> {
        match k {
            1 => Ok(Self::Radial),
            2 => Ok(Self::Gradient),
            3 => Ok(Self::CurlGradient),
            _ => Err(Error::InvalidChannel { channel: k }),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Self::Radial => 1,
            Self::Gradient => 2,
            Self::CurlGradient => 3,
        }
    }
}

#[inline]
fn coeff_index(n: usize, l: i64) -> usize {
    n * n + (l + n as i64) as usize
}

#[inline]
fn nn1(n: usize) -> f64 {
    (n * (n + 1)) as f64
}

/// Spectral vector field: three coefficient channels over the orthonormal
/// pure-spin basis. Channels 2 and 3 have no degree-0 entry.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorCoeffs {
    n_max: usize,
    c1: Vec<Complex64>,
    c2: Vec<Complex64>,
    c3: Vec<Complex64>,
}

impl VectorCoeffs {
    pub fn zeros(n_max: usize) -> Self {
        let len = (n_max + 1) * (n_max + 1);
        Self {
            n_max,
            c1: vec![Complex64::new(0.0, 0.0); len],
            c2: vec![Complex64::new(0.0, 0.0); len],
            c3: vec![Complex64::new(0.0, 0.0); len],
        }
    }

    /// Unit coefficient in one channel.
    pub fn unit(n_max: usize, channel: VshChannel, n: usize, l: i64) -> Result<Self> {
        if n > n_max {
            return Err(Error::BandLimitMismatch { left: n_max, right: n });
        }
        DegreeOrder::new(n, l)?;
        if n == 0 && channel != VshChannel::Radial {
            return Err(Error::DegreeZeroChannel { channel: channel.index() });
        }
        let mut v = Self::zeros(n_max);
        v.set(channel, n, l, Complex64::new(1.0, 0.0));
        Ok(v)
    }

    pub fn band_limit(&self) -> usize {
        self.n_max
    }

    fn channel(&self, channel: VshChannel) -> &[Complex64] {
        match channel {
            VshChannel::Radial => &self.c1,
            VshChannel::Gradient => &self.c2,
            VshChannel::CurlGradient => &self.c3,
        }
    }

    pub fn get(&self, channel: VshChannel, n: usize, l: i64) -> Complex64 {
        assert!(n <= self.n_max && l.unsigned_abs() as usize <= n);
        self.channel(channel)[coeff_index(n, l)]
    }

    pub fn set(&mut self, channel: VshChannel, n: usize, l: i64, v: Complex64) {
        assert!(n <= self.n_max && l.unsigned_abs() as usize <= n);
        assert!(
            n > 0 || channel == VshChannel::Radial || v.norm() == 0.0,
            "channels 2 and 3 start at degree 1"
        );
        match channel {
            VshChannel::Radial => self.c1[coeff_index(n, l)] = v,
            VshChannel::Gradient => self.c2[coeff_index(n, l)] = v,
            VshChannel::CurlGradient => self.c3[coeff_index(n, l)] = v,
        }
    }

    pub fn iter(
        &self,
        channel: VshChannel,
    ) -> impl Iterator<Item = (usize, i64, Complex64)> + '_ {
        let data = self.channel(channel);
        (0..=self.n_max).flat_map(move |n| {
            (-(n as i64)..=(n as i64)).map(move |l| (n, l, data[coeff_index(n, l)]))
        })
    }

    pub fn channel_mass(&self, channel: VshChannel) -> f64 {
        libm::sqrt(self.channel(channel).iter().map(|v| v.norm_sqr()).sum())
    }

    pub fn l2_norm(&self) -> f64 {
        libm::sqrt(
            self.c1
                .iter()
                .chain(&self.c2)
                .chain(&self.c3)
                .map(|v| v.norm_sqr())
                .sum(),
        )
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n_max, other.n_max);
        let d = |a: &[Complex64], b: &[Complex64]| {
            a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
        };
        d(&self.c1, &other.c1)
            .max(d(&self.c2, &other.c2))
            .max(d(&self.c3, &other.c3))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n_max != other.n_max {
            return Err(Error::BandLimitMismatch { left: self.n_max, right: other.n_max });
        }
        let mut out = self.clone();
        for (a, b) in out.c1.iter_mut().zip(&other.c1) {
            *a += b;
        }
        for (a, b) in out.c2.iter_mut().zip(&other.c2) {
            *a += b;
        }
        for (a, b) in out.c3.iter_mut().zip(&other.c3) {
            *a += b;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        for v in out.c1.iter_mut().chain(&mut out.c2).chain(&mut out.c3) {
            *v *= factor;
        }
        out
    }
}

/// Coefficients over the pure-orbit system: `h_e` (degrees shifted up),
/// `h_i` (degrees shifted down) and the unnormalized `y3`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureOrbitCoeffs {
    n_max: usize,
    pub(crate) he: Vec<Complex64>,
    pub(crate) hi: Vec<Complex64>,
    pub(crate) y3: Vec<Complex64>,
}

impl PureOrbitCoeffs {
    pub fn zeros(n_max: usize) -> Self {
        let len = (n_max + 1) * (n_max + 1);
        Self {
            n_max,
            he: vec![Complex64::new(0.0, 0.0); len],
            hi: vec![Complex64::new(0.0, 0.0); len],
            y3: vec![Complex64::new(0.0, 0.0); len],
        }
    }

    pub fn band_limit(&self) -> usize {
        self.n_max
    }

    pub fn he(&self, n: usize, l: i64) -> Complex64 {
        self.he[coeff_index(n, l)]
    }

    pub fn hi(&self, n: usize, l: i64) -> Complex64 {
        self.hi[coeff_index(n, l)]
    }

    pub fn y3(&self, n: usize, l: i64) -> Complex64 {
        self.y3[coeff_index(n, l)]
    }
}

/// Tangential point values in the local frame `(e1, e2)` on a pole-free grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentField {
    grid: Arc<SphericalGrid>,
    v1: Vec<Complex64>,
    v2: Vec<Complex64>,
}

impl TangentField {
    pub fn grid(&self) -> &Arc<SphericalGrid> {
        &self.grid
    }

    pub fn component1(&self, i: usize, j: usize) -> Complex64 {
        self.v1[i * self.grid.n_phi() + j]
    }

    pub fn component2(&self, i: usize, j: usize) -> Complex64 {
        self.v2[i * self.grid.n_phi() + j]
    }

    /// Grid-quadrature L2 inner product of tangent fields.
    pub fn inner_product(&self, other: &Self) -> Result<Complex64> {
        if self.grid.band_limit() != other.grid.band_limit() {
            return Err(Error::GridMismatch);
        }
        let dphi = self.grid.phi_step();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.grid.n_theta() {
            let mut row = Complex64::new(0.0, 0.0);
            for j in 0..self.grid.n_phi() {
                row += self.component1(i, j) * other.component1(i, j).conj()
                    + self.component2(i, j) * other.component2(i, j).conj();
            }
            acc += self.grid.weight(i) * dphi * row;
        }
        Ok(acc)
    }
}

/// Unnormalized pure-spin harmonic `y^(channel)_{nl}` at a point, as a
/// Cartesian 3-vector. Channels 2 and 3 need `n >= 1` and an off-pole point.
pub fn eval_vsh(
    channel: VshChannel,
    n: usize,
    l: i64,
    theta: f64,
    phi: f64,
) -> Result<[Complex64; 3]> {
    DegreeOrder::new(n, l)?;
    let m = l.unsigned_abs() as usize;
    let t = libm::cos(theta);
    let st = libm::sin(theta);
    let arg = l as f64 * phi;
    let phase = order_sign(l) * Complex64::new(libm::cos(arg), libm::sin(arg));
    let (sp, cp) = (libm::sin(phi), libm::cos(phi));
    let xi = [st * cp, st * sp, t];
    if channel == VshChannel::Radial {
        let y = crate::legendre::assoc_legendre_normalized(n, m, t)? * phase;
        return Ok([y * xi[0], y * xi[1], y * xi[2]]);
    }
    if n == 0 {
        return Err(Error::DegreeZeroChannel { channel: channel.index() });
    }
    if st.abs() < 1e-12 {
        return Err(Error::PoleProximity { sin_theta: st });
    }
    // dQ/dtheta from the same-order recurrence, 1/sin(theta) applied off-pole
    let q = crate::legendre::assoc_legendre_normalized(n, m, t)?;
    let lower = if n > m {
        let nf = n as f64;
        let mf = m as f64;
        let d = libm::sqrt(((2.0 * nf + 1.0) / (2.0 * nf - 1.0)) * (nf * nf - mf * mf));
        d * crate::legendre::assoc_legendre_normalized(n - 1, m, t)?
    } else {
        0.0
    };
    let dq = (n as f64 * t * q - lower) / st;
    let d_theta = phase * dq;
    let d_phi = phase * q * Complex64::new(0.0, l as f64 / st);
    let e1 = [t * cp, t * sp, -st];
    let e2 = [-sp, cp, 0.0];
    let out = match channel {
        VshChannel::Gradient => [
            d_theta * e1[0] + d_phi * e2[0],
            d_theta * e1[1] + d_phi * e2[1],
            d_theta * e1[2] + d_phi * e2[2],
        ],
        VshChannel::CurlGradient => [
            d_theta * e2[0] - d_phi * e1[0],
            d_theta * e2[1] - d_phi * e1[1],
            d_theta * e2[2] - d_phi * e1[2],
        ],
        VshChannel::Radial => unreachable!(),
    };
    Ok(out)
}

/// Surface gradient in spectral form: channel-2 entries
/// `sqrt(N(N+1)) u_{Nl}`.
pub fn grad_coeffs(scalar: &ScalarCoeffs) -> VectorCoeffs {
    let mut out = VectorCoeffs::zeros(scalar.band_limit());
    for (n, l, v) in scalar.iter() {
        if n > 0 {
            out.c2[coeff_index(n, l)] = v * libm::sqrt(nn1(n));
        }
    }
    out
}

/// Rotated surface gradient: channel-3 entries `sqrt(N(N+1)) u_{Nl}`.
pub fn curl_grad_coeffs(scalar: &ScalarCoeffs) -> VectorCoeffs {
    let mut out = VectorCoeffs::zeros(scalar.band_limit());
    for (n, l, v) in scalar.iter() {
        if n > 0 {
            out.c3[coeff_index(n, l)] = v * libm::sqrt(nn1(n));
        }
    }
    out
}

/// Surface divergence: `div y1 = 2 Y`, `div y2~ = -sqrt(N(N+1)) Y`,
/// `div y3~ = 0`.
pub fn div_coeffs(v: &VectorCoeffs) -> ScalarCoeffs {
    let mut out = ScalarCoeffs::zeros(v.band_limit());
    for (n, l, c1) in v.iter(VshChannel::Radial) {
        let c2 = v.get(VshChannel::Gradient, n, l);
        out.set(n, l, 2.0 * c1 - libm::sqrt(nn1(n)) * c2);
    }
    out
}

/// Scalar surface rotation of the tangential part: `curl y3~ = -sqrt(N(N+1)) Y`,
/// `curl y2~ = 0`; the radial channel does not contribute.
pub fn curl_coeffs(v: &VectorCoeffs) -> ScalarCoeffs {
    let mut out = ScalarCoeffs::zeros(v.band_limit());
    for (n, l, c3) in v.iter(VshChannel::CurlGradient) {
        out.set(n, l, -libm::sqrt(nn1(n)) * c3);
    }
    out
}

/// Change of basis into the pure-orbit system, solving the 2x2 system
/// `c1 = -(N+1) a_e + N a_i`, `c2/sqrt(N(N+1)) = a_e + a_i` per `(N, l)`.
pub fn to_pure_orbit(v: &VectorCoeffs) -> PureOrbitCoeffs {
    let mut out = PureOrbitCoeffs::zeros(v.band_limit());
    out.he[coeff_index(0, 0)] = -v.c1[coeff_index(0, 0)];
    for n in 1..=v.band_limit() {
        let s = libm::sqrt(nn1(n));
        for l in -(n as i64)..=(n as i64) {
            let idx = coeff_index(n, l);
            let beta = v.c2[idx] / s;
            let a_i = (v.c1[idx] + (n + 1) as f64 * beta) / (2 * n + 1) as f64;
            let a_e = (n as f64 * beta - v.c1[idx]) / (2 * n + 1) as f64;
            out.hi[idx] = a_i;
            out.he[idx] = a_e;
            out.y3[idx] = v.c3[idx] / s;
        }
    }
    out
}

/// Inverse of [`to_pure_orbit`].
pub fn from_pure_orbit(p: &PureOrbitCoeffs) -> VectorCoeffs {
    let mut out = VectorCoeffs::zeros(p.band_limit());
    out.c1[coeff_index(0, 0)] = -p.he[coeff_index(0, 0)];
    for n in 1..=p.band_limit() {
        let s = libm::sqrt(nn1(n));
        for l in -(n as i64)..=(n as i64) {
            let idx = coeff_index(n, l);
            out.c1[idx] = n as f64 * p.hi[idx] - (n + 1) as f64 * p.he[idx];
            out.c2[idx] = s * (p.he[idx] + p.hi[idx]);
            out.c3[idx] = s * p.y3[idx];
        }
    }
    out
}

/// Componentwise great-circle transform of a vector field, in spectral form.
///
/// On odd degrees `F y1 = P_{N-1}(0) y2/(N+1)` and
/// `F y2 = P_{N-1}(0) (N y1 + y2/(N+1))`; on even degrees `F y3 = P_N(0) y3`.
/// Everything else is annihilated. In the normalized channels the `y1 <-> y2~`
/// coupling is the symmetric factor `P_{N-1}(0) sqrt(N/(N+1))`.
pub fn vec_funk(v: &VectorCoeffs) -> VectorCoeffs {
    let zeros = legendre_zeros(v.band_limit().max(1));
    let mut out = VectorCoeffs::zeros(v.band_limit());
    for n in 1..=v.band_limit() {
        for l in -(n as i64)..=(n as i64) {
            let idx = coeff_index(n, l);
            if n % 2 == 1 {
                let p = zeros[n - 1];
                let couple = p * libm::sqrt(n as f64 / (n + 1) as f64);
                out.c1[idx] = couple * v.c2[idx];
                out.c2[idx] = couple * v.c1[idx] + p / (n + 1) as f64 * v.c2[idx];
            } else {
                out.c3[idx] = zeros[n] * v.c3[idx];
            }
        }
    }
    out
}

/// Componentwise Hilbert-type convolution of a vector field, in spectral form.
///
/// `S y1_00 = y1_00`; on even degrees `N >= 2`,
/// `S y1 = -y2 / (P_N(0) N(N+1))` and `S y2 = -(y1 + y2/(N(N+1)))/P_N(0)`;
/// on odd degrees `S y3 = y3 / (N P_{N-1}(0))`. Everything else is
/// annihilated.
pub fn vec_hilbert(v: &VectorCoeffs) -> VectorCoeffs {
    let zeros = legendre_zeros(v.band_limit().max(1));
    let mut out = VectorCoeffs::zeros(v.band_limit());
    out.c1[coeff_index(0, 0)] = v.c1[coeff_index(0, 0)];
    for n in 1..=v.band_limit() {
        for l in -(n as i64)..=(n as i64) {
            let idx = coeff_index(n, l);
            if n % 2 == 0 {
                let g = -1.0 / zeros[n];
                let couple = g / libm::sqrt(nn1(n));
                out.c1[idx] = couple * v.c2[idx];
                out.c2[idx] = couple * v.c1[idx] + g / nn1(n) * v.c2[idx];
            } else {
                out.c3[idx] = v.c3[idx] / (n as f64 * zeros[n - 1]);
            }
        }
    }
    out
}

/// Radial projection `xi . v` in spectral form: `xi . y1 = Y`, tangential
/// channels vanish.
pub fn dot_radial(v: &VectorCoeffs) -> ScalarCoeffs {
    let mut out = ScalarCoeffs::zeros(v.band_limit());
    for (n, l, c1) in v.iter(VshChannel::Radial) {
        out.set(n, l, c1);
    }
    out
}

/// Rotation `xi x v` in spectral form: `xi x y2~ = y3~`, `xi x y3~ = -y2~`,
/// `xi x y1 = 0`.
pub fn cross_radial(v: &VectorCoeffs) -> VectorCoeffs {
    let mut out = VectorCoeffs::zeros(v.band_limit());
    out.c3.copy_from_slice(&v.c2);
    for (slot, c3) in out.c2.iter_mut().zip(&v.c3) {
        *slot = -c3;
    }
    out
}

/// Point values of the tangential channels in the local frame at every grid
/// node. Rejects fields with radial mass above [`TANGENT_TOL`].
pub fn synthesize_tangent(v: &VectorCoeffs, grid: &Arc<SphericalGrid>) -> Result<TangentField> {
    let radial = v.channel_mass(VshChannel::Radial);
    if radial > TANGENT_TOL {
        return Err(Error::NotTangential { mass: radial });
    }
    let n_max = v.band_limit();
    if n_max > grid.band_limit() {
        return Err(Error::GridTooSmall { grid: grid.band_limit(), requested: n_max });
    }
    let len = tri_index(n_max, n_max) + 1;
    let mut q = vec![0.0; len];
    let mut dq = vec![0.0; len];
    let np = grid.n_phi();
    let mut v1 = vec![Complex64::new(0.0, 0.0); grid.n_theta() * np];
    let mut v2 = vec![Complex64::new(0.0, 0.0); grid.n_theta() * np];
    for i in 0..grid.n_theta() {
        let t = grid.cos_theta(i);
        let st = grid.sin_theta(i);
        normalized_table(n_max, t, &mut q);
        normalized_table_deriv(n_max, t, &q, &mut dq);
        for j in 0..np {
            let phi = grid.phi(j);
            let mut a1 = Complex64::new(0.0, 0.0);
            let mut a2 = Complex64::new(0.0, 0.0);
            for n in 1..=n_max {
                let s = libm::sqrt(nn1(n));
                for l in -(n as i64)..=(n as i64) {
                    let idx = coeff_index(n, l);
                    let c2 = v.c2[idx];
                    let c3 = v.c3[idx];
                    if c2.norm_sqr() == 0.0 && c3.norm_sqr() == 0.0 {
                        continue;
                    }
                    let m = l.unsigned_abs() as usize;
                    let arg = l as f64 * phi;
                    let phase = order_sign(l) * Complex64::new(libm::cos(arg), libm::sin(arg));
                    let d_th = phase * dq[tri_index(n, m)];
                    let d_ph = phase * q[tri_index(n, m)] * Complex64::new(0.0, l as f64 / st);
                    a1 += (c2 * d_th - c3 * d_ph) / s;
                    a2 += (c2 * d_ph + c3 * d_th) / s;
                }
            }
            v1[i * np + j] = a1;
            v2[i * np + j] = a2;
        }
    }
    Ok(TangentField { grid: Arc::clone(grid), v1, v2 })
}

/// Cartesian component fields of the full spectral vector field on a grid.
pub fn synthesize_cartesian(
    v: &VectorCoeffs,
    grid: &Arc<SphericalGrid>,
) -> Result<[ScalarField; 3]> {
    let n_max = v.band_limit();
    if n_max > grid.band_limit() {
        return Err(Error::GridTooSmall { grid: grid.band_limit(), requested: n_max });
    }
    let len = tri_index(n_max, n_max) + 1;
    let mut q = vec![0.0; len];
    let mut dq = vec![0.0; len];
    let mut fields = [
        ScalarField::zeros(grid),
        ScalarField::zeros(grid),
        ScalarField::zeros(grid),
    ];
    for i in 0..grid.n_theta() {
        let t = grid.cos_theta(i);
        let st = grid.sin_theta(i);
        normalized_table(n_max, t, &mut q);
        normalized_table_deriv(n_max, t, &q, &mut dq);
        for j in 0..grid.n_phi() {
            let phi = grid.phi(j);
            let (sp, cp) = (libm::sin(phi), libm::cos(phi));
            let xi = [st * cp, st * sp, t];
            let e1 = [t * cp, t * sp, -st];
            let e2 = [-sp, cp, 0.0];
            let mut radial = Complex64::new(0.0, 0.0);
            let mut tang1 = Complex64::new(0.0, 0.0);
            let mut tang2 = Complex64::new(0.0, 0.0);
            for n in 0..=n_max {
                let s = if n > 0 { libm::sqrt(nn1(n)) } else { 1.0 };
                for l in -(n as i64)..=(n as i64) {
                    let idx = coeff_index(n, l);
                    let m = l.unsigned_abs() as usize;
                    let arg = l as f64 * phi;
                    let phase = order_sign(l) * Complex64::new(libm::cos(arg), libm::sin(arg));
                    radial += v.c1[idx] * phase * q[tri_index(n, m)];
                    if n > 0 {
                        let d_th = phase * dq[tri_index(n, m)];
                        let d_ph = phase * q[tri_index(n, m)] * Complex64::new(0.0, l as f64 / st);
                        tang1 += (v.c2[idx] * d_th - v.c3[idx] * d_ph) / s;
                        tang2 += (v.c2[idx] * d_ph + v.c3[idx] * d_th) / s;
                    }
                }
            }
            for k in 0..3 {
                *fields[k].value_mut(i, j) = radial * xi[k] + tang1 * e1[k] + tang2 * e2[k];
            }
        }
    }
    Ok(fields)
}

/// Projects Cartesian component samples of a vector field onto the
/// pure-spin channels by grid quadrature.
///
/// Exact when the field's harmonic band limit is at most one below the
/// grid's (the Cartesian components of degree-`N` vector harmonics reach
/// scalar degree `N + 1`).
pub fn vector_analysis(fields: &[ScalarField; 3], n_out: usize) -> Result<VectorCoeffs> {
    let grid = fields[0].grid();
    if fields[1].grid().band_limit() != grid.band_limit()
        || fields[2].grid().band_limit() != grid.band_limit()
    {
        return Err(Error::GridMismatch);
    }
    if n_out > grid.band_limit() {
        return Err(Error::GridTooSmall { grid: grid.band_limit(), requested: n_out });
    }
    let np = grid.n_phi();
    let dphi = grid.phi_step();
    // radial scalar samples and tangential frame components
    let mut radial = ScalarField::zeros(grid);
    let mut t1 = vec![Complex64::new(0.0, 0.0); grid.n_theta() * np];
    let mut t2 = vec![Complex64::new(0.0, 0.0); grid.n_theta() * np];
    for i in 0..grid.n_theta() {
        let t = grid.cos_theta(i);
        let st = grid.sin_theta(i);
        for j in 0..np {
            let phi = grid.phi(j);
            let (sp, cp) = (libm::sin(phi), libm::cos(phi));
            let h = [fields[0].value(i, j), fields[1].value(i, j), fields[2].value(i, j)];
            let xi = [st * cp, st * sp, t];
            let e1 = [t * cp, t * sp, -st];
            let e2 = [-sp, cp, 0.0];
            *radial.value_mut(i, j) = h[0] * xi[0] + h[1] * xi[1] + h[2] * xi[2];
            t1[i * np + j] = h[0] * e1[0] + h[1] * e1[1] + h[2] * e1[2];
            t2[i * np + j] = h[0] * e2[0] + h[1] * e2[1] + h[2] * e2[2];
        }
    }
    let c1 = analysis_to(&radial, n_out)?;
    let mut out = VectorCoeffs::zeros(n_out);
    for (n, l, v) in c1.iter() {
        out.c1[coeff_index(n, l)] = v;
    }
    // tangential channels: quadrature against conj(y2~), conj(y3~)
    let len = tri_index(n_out, n_out) + 1;
    let mut q = vec![0.0; len];
    let mut dq = vec![0.0; len];
    let roots: Vec<Complex64> = (0..np)
        .map(|k| {
            let a = -2.0 * core::f64::consts::PI * k as f64 / np as f64;
            Complex64::new(libm::cos(a), libm::sin(a))
        })
        .collect();
    for i in 0..grid.n_theta() {
        let t = grid.cos_theta(i);
        let st = grid.sin_theta(i);
        normalized_table(n_out, t, &mut q);
        normalized_table_deriv(n_out, t, &q, &mut dq);
        let w = grid.weight(i);
        for l in -(n_out as i64)..=(n_out as i64) {
            let mut g1 = Complex64::new(0.0, 0.0);
            let mut g2 = Complex64::new(0.0, 0.0);
            for j in 0..np {
                let root = roots[(l * j as i64).rem_euclid(np as i64) as usize];
                g1 += t1[i * np + j] * root;
                g2 += t2[i * np + j] * root;
            }
            g1 *= dphi;
            g2 *= dphi;
            let m = l.unsigned_abs() as usize;
            for n in m.max(1)..=n_out {
                let s = libm::sqrt(nn1(n));
                let sign = order_sign(l);
                let dth = sign * dq[tri_index(n, m)];
                let dph = sign * q[tri_index(n, m)] * Complex64::new(0.0, -(l as f64) / st);
                let idx = coeff_index(n, l);
                out.c2[idx] += w * (g1 * dth + g2 * dph) / s;
                out.c3[idx] += w * (g2 * dth - g1 * dph) / s;
            }
        }
    }
    Ok(out)
}
