//! Spherical grids, quadrature and the scalar spherical harmonic transform.
//!
//! Sampling is Gauss-Legendre in colatitude crossed with equispaced
//! longitudes: `n_theta = N_max + 1` nodes and `n_phi = 2 N_max + 2`
//! longitudes make the analysis/synthesis pair exact at band limit `N_max`
//! with the fewest nodes. `n_phi` is kept even so the grid is closed under
//! the antipodal map and even/odd parity can be tested on-grid.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::legendre::{normalized_table, normalized_table_deriv, order_sign, tri_index};
use crate::Complex64;

/// Gauss-Legendre colatitudes x equispaced longitudes with quadrature
/// weights on `t = cos(theta)`. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SphericalGrid {
    n_max: usize,
    theta: Vec<f64>,
    cos_theta: Vec<f64>,
    sin_theta: Vec<f64>,
    weights: Vec<f64>,
    n_phi: usize,
}

impl SphericalGrid {
    /// Band limit the grid transforms exactly.
    pub fn band_limit(&self) -> usize {
        self.n_max
    }

    pub fn n_theta(&self) -> usize {
        self.theta.len()
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn theta(&self, i: usize) -> f64 {
        self.theta[i]
    }

    pub fn cos_theta(&self, i: usize) -> f64 {
        self.cos_theta[i]
    }

    pub fn sin_theta(&self, i: usize) -> f64 {
        self.sin_theta[i]
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn theta_nodes(&self) -> &[f64] {
        &self.theta
    }

    pub fn gl_weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn phi_step(&self) -> f64 {
        2.0 * PI / self.n_phi as f64
    }

    pub fn phi(&self, j: usize) -> f64 {
        j as f64 * self.phi_step()
    }

    /// Unit direction of node `(i, j)`.
    pub fn direction(&self, i: usize, j: usize) -> [f64; 3] {
        let (st, ct) = (self.sin_theta[i], self.cos_theta[i]);
        let phi = self.phi(j);
        [st * libm::cos(phi), st * libm::sin(phi), ct]
    }

    fn compatible(&self, other: &Self) -> bool {
        self.n_max == other.n_max
    }
}

/// Builds the minimal exact grid for band limit `n_max`.
pub fn make_grid(n_max: usize) -> Arc<SphericalGrid> {
    let (t, w) = crate::legendre::gauss_legendre(n_max + 1);
    let theta: Vec<f64> = t.iter().map(|&ti| libm::acos(ti)).collect();
    let sin_theta: Vec<f64> = t.iter().map(|&ti| libm::sqrt((1.0 - ti) * (1.0 + ti))).collect();
    Arc::new(SphericalGrid {
        n_max,
        theta,
        cos_theta: t,
        sin_theta,
        weights: w,
        n_phi: 2 * n_max + 2,
    })
}

/// Triangular table of spherical harmonic coefficients `u_{nl}`,
/// `0 <= n <= n_max`, `|l| <= n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarCoeffs {
    n_max: usize,
    data: Vec<Complex64>,
}

#[inline]
fn coeff_index(n: usize, l: i64) -> usize {
    n * n + (l + n as i64) as usize
}

impl ScalarCoeffs {
    pub fn zeros(n_max: usize) -> Self {
        Self {
            n_max,
            data: vec![Complex64::new(0.0, 0.0); (n_max + 1) * (n_max + 1)],
        }
    }

    /// Single unit coefficient at `(n, l)`.
    pub fn unit(n_max: usize, n: usize, l: i64) -> Result<Self> {
        if n > n_max {
            return Err(Error::BandLimitMismatch { left: n_max, right: n });
        }
        crate::legendre::DegreeOrder::new(n, l)?;
        let mut c = Self::zeros(n_max);
        c.data[coeff_index(n, l)] = Complex64::new(1.0, 0.0);
        Ok(c)
    }

    pub fn from_fn(n_max: usize, mut f: impl FnMut(usize, i64) -> Complex64) -> Self {
        let mut c = Self::zeros(n_max);
        for n in 0..=n_max {
            for l in -(n as i64)..=(n as i64) {
                c.data[coeff_index(n, l)] = f(n, l);
            }
        }
        c
    }

    pub fn band_limit(&self) -> usize {
        self.n_max
    }

    /// Panics if `|l| > n` or `n > n_max`.
    pub fn get(&self, n: usize, l: i64) -> Complex64 {
        assert!(n <= self.n_max && l.unsigned_abs() as usize <= n);
        self.data[coeff_index(n, l)]
    }

    /// Panics if `|l| > n` or `n > n_max`.
    pub fn set(&mut self, n: usize, l: i64, v: Complex64) {
        assert!(n <= self.n_max && l.unsigned_abs() as usize <= n);
        self.data[coeff_index(n, l)] = v;
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i64, Complex64)> + '_ {
        (0..=self.n_max).flat_map(move |n| {
            (-(n as i64)..=(n as i64)).map(move |l| (n, l, self.data[coeff_index(n, l)]))
        })
    }

    pub fn l2_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|v| v.norm_sqr()).sum())
    }

    pub fn linf_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n_max, other.n_max);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// L2 mass carried by degrees selected by `keep`.
    pub fn mass_where(&self, mut keep: impl FnMut(usize) -> bool) -> f64 {
        let mut acc = 0.0;
        for (n, _, v) in self.iter() {
            if keep(n) {
                acc += v.norm_sqr();
            }
        }
        libm::sqrt(acc)
    }

    /// New table with band limit `new_max`; higher degrees are dropped,
    /// missing ones are zero.
    pub fn truncated(&self, new_max: usize) -> Self {
        let mut out = Self::zeros(new_max);
        for n in 0..=new_max.min(self.n_max) {
            for l in -(n as i64)..=(n as i64) {
                out.data[coeff_index(n, l)] = self.data[coeff_index(n, l)];
            }
        }
        out
    }

    /// Zeroes all degrees above `cutoff`, keeping the band limit.
    pub fn lowpass(&self, cutoff: usize) -> Self {
        let mut out = self.clone();
        for n in (cutoff + 1)..=self.n_max {
            for l in -(n as i64)..=(n as i64) {
                out.data[coeff_index(n, l)] = Complex64::new(0.0, 0.0);
            }
        }
        out
    }

    /// True when the coefficients describe a real-valued field:
    /// `u_{n,-l} = (-1)^l conj(u_{nl})` within `tol`.
    pub fn is_real_symmetric(&self, tol: f64) -> bool {
        for n in 0..=self.n_max {
            for l in 0..=(n as i64) {
                let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
                let lhs = self.data[coeff_index(n, -l)];
                let rhs = sign * self.data[coeff_index(n, l)].conj();
                if (lhs - rhs).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n_max != other.n_max {
            return Err(Error::BandLimitMismatch { left: self.n_max, right: other.n_max });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.n_max != other.n_max {
            return Err(Error::BandLimitMismatch { left: self.n_max, right: other.n_max });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= factor;
        }
        out
    }
}

/// Complex point values on a [`SphericalGrid`], row-major over
/// `(theta_node, phi_node)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    grid: Arc<SphericalGrid>,
    values: Vec<Complex64>,
}

impl ScalarField {
    pub fn zeros(grid: &Arc<SphericalGrid>) -> Self {
        Self {
            grid: Arc::clone(grid),
            values: vec![Complex64::new(0.0, 0.0); grid.n_theta() * grid.n_phi()],
        }
    }

    /// Samples `f(theta, phi)` at every node.
    pub fn from_fn(
        grid: &Arc<SphericalGrid>,
        mut f: impl FnMut(f64, f64) -> Complex64,
    ) -> Self {
        let mut field = Self::zeros(grid);
        for i in 0..grid.n_theta() {
            for j in 0..grid.n_phi() {
                field.values[i * grid.n_phi() + j] = f(grid.theta(i), grid.phi(j));
            }
        }
        field
    }

    pub fn grid(&self) -> &Arc<SphericalGrid> {
        &self.grid
    }

    pub fn value(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.grid.n_phi() + j]
    }

    pub fn value_mut(&mut self, i: usize, j: usize) -> &mut Complex64 {
        let np = self.grid.n_phi();
        &mut self.values[i * np + j]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert!(self.grid.compatible(&other.grid));
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Longitude roots of unity `e^{-2 pi i k / n_phi}`, used by both transform
/// directions; phase exponents are reduced mod `n_phi` so equal residues
/// give bitwise-equal phases.
fn phase_table(n_phi: usize) -> Vec<Complex64> {
    (0..n_phi)
        .map(|k| {
            let a = -2.0 * PI * k as f64 / n_phi as f64;
            Complex64::new(libm::cos(a), libm::sin(a))
        })
        .collect()
}

#[inline]
fn phase_at(table: &[Complex64], l: i64, j: usize) -> Complex64 {
    let np = table.len() as i64;
    table[(l * j as i64).rem_euclid(np) as usize]
}

/// Forward transform: `u_{nl} = (f, Y_{nl})` by longitude Fourier sums
/// followed by Gauss-Legendre colatitude sums. Exact for band-limited `f`.
pub fn analysis(field: &ScalarField) -> ScalarCoeffs {
    analysis_to(field, field.grid.band_limit()).expect("grid supports its own band limit")
}

/// Forward transform truncated to band `n_out <=` grid band limit.
pub fn analysis_to(field: &ScalarField, n_out: usize) -> Result<ScalarCoeffs> {
    let grid = &field.grid;
    if n_out > grid.band_limit() {
        return Err(Error::GridTooSmall { grid: grid.band_limit(), requested: n_out });
    }
    let np = grid.n_phi();
    let dphi = grid.phi_step();
    let roots = phase_table(np);
    let mut coeffs = ScalarCoeffs::zeros(n_out);
    let mut q = vec![0.0; tri_index(n_out, n_out) + 1];
    let mut fourier = vec![Complex64::new(0.0, 0.0); 2 * n_out + 1];
    for i in 0..grid.n_theta() {
        // longitude sums G_l = dphi * sum_j f_ij e^{-i l phi_j}
        for (slot, l) in fourier.iter_mut().zip(-(n_out as i64)..=(n_out as i64)) {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..np {
                acc += field.value(i, j) * phase_at(&roots, l, j);
            }
            *slot = acc * dphi;
        }
        normalized_table(n_out, grid.cos_theta(i), &mut q);
        let w = grid.weight(i);
        for n in 0..=n_out {
            for l in -(n as i64)..=(n as i64) {
                let lam = order_sign(l) * q[tri_index(n, l.unsigned_abs() as usize)];
                let g = fourier[(l + n_out as i64) as usize];
                let v = coeffs.get(n, l) + w * lam * g;
                coeffs.set(n, l, v);
            }
        }
    }
    Ok(coeffs)
}

/// Inverse transform: pointwise sum of `u_{nl} Y_{nl}` at every grid node.
pub fn synthesis(coeffs: &ScalarCoeffs, grid: &Arc<SphericalGrid>) -> Result<ScalarField> {
    let n_max = coeffs.band_limit();
    if n_max > grid.band_limit() {
        return Err(Error::GridTooSmall { grid: grid.band_limit(), requested: n_max });
    }
    let np = grid.n_phi();
    let roots = phase_table(np);
    let mut field = ScalarField::zeros(grid);
    let mut q = vec![0.0; tri_index(n_max, n_max) + 1];
    let mut by_order = vec![Complex64::new(0.0, 0.0); 2 * n_max + 1];
    for i in 0..grid.n_theta() {
        normalized_table(n_max, grid.cos_theta(i), &mut q);
        for (slot, l) in by_order.iter_mut().zip(-(n_max as i64)..=(n_max as i64)) {
            let mut acc = Complex64::new(0.0, 0.0);
            for n in (l.unsigned_abs() as usize)..=n_max {
                acc += coeffs.get(n, l) * (order_sign(l) * q[tri_index(n, l.unsigned_abs() as usize)]);
            }
            *slot = acc;
        }
        for j in 0..np {
            let mut acc = Complex64::new(0.0, 0.0);
            for l in -(n_max as i64)..=(n_max as i64) {
                // e^{+i l phi_j} is the conjugate root
                acc += by_order[(l + n_max as i64) as usize] * phase_at(&roots, -l, j);
            }
            *field.value_mut(i, j) = acc;
        }
    }
    Ok(field)
}

/// Hermitian L2 inner product `(f, h)` by grid quadrature.
pub fn inner_product(f: &ScalarField, h: &ScalarField) -> Result<Complex64> {
    if !f.grid.compatible(&h.grid) {
        return Err(Error::GridMismatch);
    }
    let grid = &f.grid;
    let dphi = grid.phi_step();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..grid.n_theta() {
        let mut row = Complex64::new(0.0, 0.0);
        for j in 0..grid.n_phi() {
            row += f.value(i, j) * h.value(i, j).conj();
        }
        acc += grid.weight(i) * dphi * row;
    }
    Ok(acc)
}

/// Direct summation of the series at an arbitrary point.
pub fn eval_point(coeffs: &ScalarCoeffs, theta: f64, phi: f64) -> Complex64 {
    let n_max = coeffs.band_limit();
    let mut q = vec![0.0; tri_index(n_max, n_max) + 1];
    normalized_table(n_max, libm::cos(theta), &mut q);
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 0..=n_max {
        acc += coeffs.get(n, 0) * q[tri_index(n, 0)];
        for m in 1..=(n as i64) {
            let a = m as f64 * phi;
            let e = Complex64::new(libm::cos(a), libm::sin(a));
            let qv = q[tri_index(n, m as usize)];
            acc += qv * (order_sign(m) * coeffs.get(n, m) * e + coeffs.get(n, -m) * e.conj());
        }
    }
    acc
}

/// Cartesian components of the surface gradient of the series at a point.
/// Requires an off-pole evaluation point for the `1/sin(theta)` factor.
pub fn eval_gradient(coeffs: &ScalarCoeffs, theta: f64, phi: f64) -> Result<[Complex64; 3]> {
    let st = libm::sin(theta);
    if st.abs() < 1e-12 {
        return Err(Error::PoleProximity { sin_theta: st });
    }
    let n_max = coeffs.band_limit();
    let len = tri_index(n_max, n_max) + 1;
    let mut q = vec![0.0; len];
    let mut dq = vec![0.0; len];
    let t = libm::cos(theta);
    normalized_table(n_max, t, &mut q);
    normalized_table_deriv(n_max, t, &q, &mut dq);
    // d/dtheta and (1/sin theta) d/dphi components in the local frame
    let mut comp_theta = Complex64::new(0.0, 0.0);
    let mut comp_phi = Complex64::new(0.0, 0.0);
    for n in 0..=n_max {
        for l in -(n as i64)..=(n as i64) {
            let m = l.unsigned_abs() as usize;
            let a = l as f64 * phi;
            let e = Complex64::new(libm::cos(a), libm::sin(a));
            let c = coeffs.get(n, l) * order_sign(l) * e;
            comp_theta += c * dq[tri_index(n, m)];
            comp_phi += c * Complex64::new(0.0, l as f64 / st) * q[tri_index(n, m)];
        }
    }
    let (sp, cp) = (libm::sin(phi), libm::cos(phi));
    let (stt, ctt) = (st, t);
    let e1 = [ctt * cp, ctt * sp, -stt];
    let e2 = [-sp, cp, 0.0];
    Ok([
        comp_theta * e1[0] + comp_phi * e2[0],
        comp_theta * e1[1] + comp_phi * e2[1],
        comp_theta * e1[2] + comp_phi * e2[2],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::legendre::sph_harmonic;
    use approx::assert_abs_diff_eq;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn grid_shapes_and_weight_sum() {
        let g0 = make_grid(0);
        assert_eq!((g0.n_theta(), g0.n_phi()), (1, 2));
        assert_abs_diff_eq!(g0.gl_weights().iter().sum::<f64>(), 2.0, epsilon = 1e-14);

        let g16 = make_grid(16);
        assert_eq!((g16.n_theta(), g16.n_phi()), (17, 34));
        assert_abs_diff_eq!(g16.gl_weights().iter().sum::<f64>(), 2.0, epsilon = 1e-13);
        for i in 0..g16.n_theta() {
            assert!(g16.theta(i) > 0.0 && g16.theta(i) < core::f64::consts::PI);
        }
    }

    #[test]
    fn quadrature_t_squared() {
        let g = make_grid(16);
        let v: f64 = (0..g.n_theta())
            .map(|i| g.weight(i) * g.cos_theta(i) * g.cos_theta(i))
            .sum();
        assert_abs_diff_eq!(v, 2.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn analysis_constant_field() {
        let g = make_grid(8);
        let f = ScalarField::from_fn(&g, |_, _| cx(1.0, 0.0));
        let c = analysis(&f);
        assert_abs_diff_eq!(c.get(0, 0).re, (4.0 * PI).sqrt(), epsilon = 1e-12);
        for (n, _, v) in c.iter() {
            if n > 0 {
                assert!(v.norm() < 1e-12);
            }
        }
    }

    #[test]
    fn analysis_picks_out_single_harmonic() {
        let g = make_grid(8);
        let f = ScalarField::from_fn(&g, |th, ph| sph_harmonic(5, 3, th, ph).unwrap());
        let c = analysis(&f);
        for (n, l, v) in c.iter() {
            let expect = if (n, l) == (5, 3) { 1.0 } else { 0.0 };
            assert!((v - cx(expect, 0.0)).norm() < 1e-12, "n={n} l={l} v={v}");
        }
    }

    #[test]
    fn synthesis_of_delta_is_constant() {
        let g = make_grid(4);
        let c = ScalarCoeffs::unit(4, 0, 0).unwrap();
        let f = synthesis(&c, &g).unwrap();
        for i in 0..g.n_theta() {
            for j in 0..g.n_phi() {
                assert_abs_diff_eq!(f.value(i, j).re, 1.0 / (4.0 * PI).sqrt(), epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn synthesis_band_limit_guard() {
        let g = make_grid(4);
        let c = ScalarCoeffs::zeros(6);
        assert!(matches!(synthesis(&c, &g), Err(Error::GridTooSmall { .. })));
    }

    #[test]
    fn synthesis_analysis_round_trip_on_samples() {
        let g = make_grid(8);
        let f = ScalarField::from_fn(&g, |th, ph| sph_harmonic(7, -2, th, ph).unwrap());
        let back = synthesis(&analysis(&f), &g).unwrap();
        assert!(f.max_abs_diff(&back) < 1e-12);
    }

    #[test]
    fn inner_product_orthonormality() {
        let g = make_grid(6);
        let y21 = ScalarField::from_fn(&g, |th, ph| sph_harmonic(2, 1, th, ph).unwrap());
        let y31 = ScalarField::from_fn(&g, |th, ph| sph_harmonic(3, 1, th, ph).unwrap());
        let one = ScalarField::from_fn(&g, |_, _| cx(1.0, 0.0));
        assert_abs_diff_eq!(inner_product(&y21, &y21).unwrap().re, 1.0, epsilon = 1e-13);
        assert!(inner_product(&y21, &y31).unwrap().norm() < 1e-13);
        assert_abs_diff_eq!(inner_product(&one, &one).unwrap().re, 4.0 * PI, epsilon = 1e-11);
        // hermitian symmetry
        let a = inner_product(&y21, &y31).unwrap();
        let b = inner_product(&y31, &y21).unwrap();
        assert!((a - b.conj()).norm() < 1e-14);
    }

    #[test]
    fn parseval_identity() {
        let g = make_grid(10);
        let c = ScalarCoeffs::from_fn(10, |n, l| {
            cx((n as f64 * 0.3 - l as f64 * 0.11).sin(), (n as f64 + l as f64).cos() * 0.2)
        });
        let f = synthesis(&c, &g).unwrap();
        let norm_field = inner_product(&f, &f).unwrap().re;
        let norm_coeff: f64 = c.iter().map(|(_, _, v)| v.norm_sqr()).sum();
        assert_abs_diff_eq!(norm_field, norm_coeff, epsilon = 1e-11 * norm_coeff.max(1.0));
    }

    #[test]
    fn eval_point_consistency() {
        let g = make_grid(7);
        let c = ScalarCoeffs::from_fn(7, |n, l| cx(0.1 * n as f64, 0.05 * l as f64));
        // constant coefficient table evaluates like synthesis at grid nodes
        let f = synthesis(&c, &g).unwrap();
        for i in [0, 3, 6] {
            for j in [0, 5, 11] {
                let p = eval_point(&c, g.theta(i), g.phi(j));
                assert!((p - f.value(i, j)).norm() < 1e-12);
            }
        }
        let one = ScalarCoeffs::unit(3, 0, 0).unwrap().scale(cx((4.0 * PI).sqrt(), 0.0));
        assert!((eval_point(&one, 0.77, 1.9) - cx(1.0, 0.0)).norm() < 1e-14);
        let y10 = ScalarCoeffs::unit(3, 1, 0).unwrap();
        assert_abs_diff_eq!(
            eval_point(&y10, 0.0, 0.0).re,
            (3.0 / (4.0 * PI)).sqrt(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn eval_gradient_matches_finite_difference() {
        let c = ScalarCoeffs::from_fn(5, |n, l| cx(0.3 / (1 + n) as f64, 0.1 * l as f64));
        let (theta, phi) = (1.05, 2.3);
        let h = 1e-6;
        let grad = eval_gradient(&c, theta, phi).unwrap();
        // compare against finite differences of the scalar evaluation
        let dth = (eval_point(&c, theta + h, phi) - eval_point(&c, theta - h, phi)) / (2.0 * h);
        let dph = (eval_point(&c, theta, phi + h) - eval_point(&c, theta, phi - h)) / (2.0 * h);
        let st = theta.sin();
        let e1 = [theta.cos() * phi.cos(), theta.cos() * phi.sin(), -st];
        let e2 = [-phi.sin(), phi.cos(), 0.0];
        for k in 0..3 {
            let expect = dth * e1[k] + dph / st * e2[k];
            assert!((grad[k] - expect).norm() < 1e-6, "component {k}");
        }
        assert!(eval_gradient(&c, 1e-14, 0.0).is_err());
    }

    #[test]
    fn real_symmetry_flag() {
        let mut c = ScalarCoeffs::zeros(3);
        c.set(2, 1, cx(0.4, -0.2));
        c.set(2, -1, cx(-0.4, -0.2));
        assert!(c.is_real_symmetric(1e-14));
        c.set(2, -1, cx(0.4, 0.2));
        assert!(!c.is_real_symmetric(1e-14));
    }

    #[test]
    fn truncation_and_lowpass() {
        let c = ScalarCoeffs::from_fn(6, |n, _| cx(n as f64, 0.0));
        let t = c.truncated(3);
        assert_eq!(t.band_limit(), 3);
        assert_abs_diff_eq!(t.get(3, 0).re, 3.0);
        let lp = c.lowpass(2);
        assert_eq!(lp.band_limit(), 6);
        assert_abs_diff_eq!(lp.get(5, 0).norm(), 0.0);
        assert_abs_diff_eq!(lp.get(2, 0).re, 2.0);
    }
}
