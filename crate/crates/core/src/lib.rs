//! Band-limited spherical harmonic computation engine.
//!
//! The crate implements, over the unit sphere in R^3:
//!
//! * stable evaluation of Legendre polynomials, normalized associated
//!   Legendre functions and complex spherical harmonics ([`legendre`]);
//! * Gauss-Legendre x equispaced-longitude grids with the forward
//!   (analysis) and inverse (synthesis) scalar transforms ([`grid`]);
//! * Fourier multiplier operators, in particular the great-circle
//!   averaging transform `F` (even multipliers `P_N(0)`) and the
//!   Hilbert-type spherical convolution `S` (odd multipliers
//!   `1/(N P_{N-1}(0))`), together with Funk-Hecke quadrature for
//!   arbitrary zonal kernels ([`zonal`]);
//! * independent quadrature realizations of `F` and `S` used to validate
//!   the spectral path ([`oracle`]);
//! * pure-spin and pure-orbit vector spherical harmonics, surface
//!   differential operators and the vector-valued actions of `F` and `S`
//!   ([`vsh`]);
//! * the two constructive pipelines built from `F` and `S`: recovery of a
//!   scalar field from the pair `(F f, F grad f)` and the
//!   Helmholtz-Hodge decomposition of a tangent field ([`reconstruct`]).
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the command
//! line live in the companion `funksphere` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod grid;
pub mod legendre;
pub mod oracle;
pub mod reconstruct;
pub mod vsh;
pub mod zonal;

pub use error::{Error, Result};
pub use grid::{
    analysis, eval_gradient, eval_point, inner_product, make_grid, synthesis, ScalarCoeffs,
    ScalarField, SphericalGrid,
};
pub use legendre::{
    assoc_legendre_normalized, gauss_legendre, gegenbauer_three_halves_zero, legendre_poly,
    legendre_zero, sph_harmonic, DegreeOrder,
};
pub use oracle::{
    angles, direction, frame_at, funk_direct, funk_direct_gradient, hilbert_direct,
    hilbert_extrapolated, richardson_extrapolate, LocalFrame, DEFAULT_EPS_SCHEDULE,
};
pub use reconstruct::{
    helmholtz_hodge, hodge_oracle, invert_even_rubin, invert_even_spectral, reconstruct_commutator,
    reconstruct_full, solve_surface_gradient, tangent_from_potentials, FmPair, HodgePair,
    Reconstruction,
};
pub use vsh::{
    cross_radial, curl_coeffs, curl_grad_coeffs, div_coeffs, dot_radial, eval_vsh, from_pure_orbit,
    grad_coeffs, synthesize_cartesian, synthesize_tangent, to_pure_orbit, vec_funk, vec_hilbert,
    vector_analysis, PureOrbitCoeffs, TangentField, VectorCoeffs, VshChannel, TANGENT_TOL,
};
pub use zonal::{
    apply_multiplier, funk_hecke_spec, funk_minkowski_spec, hilbert_spec, laplace_beltrami_spec,
    log_kernel_moments, log_kernel_spec, pseudo_inverse, MultiplierSpec, Parity,
};

/// Complex scalar used throughout the crate.
pub type Complex64 = num_complex::Complex<f64>;
