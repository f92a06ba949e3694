//! Legendre polynomials in dimension `d`, Gauss–Jacobi and sphere
//! quadrature, slice integrals and spherical-harmonic mode correlations.

mod correlations;
mod legendre;
mod quadrature;
pub mod real_sh;
mod sphere;

pub use correlations::{
    addition_correlations, mode_correlations, mode_correlations_of, project_correlation,
    ModeCorrelations,
};
pub use legendre::{dim_harmonic, dim_harmonic_f64, legendre, legendre_all, legendre_pair};
pub use quadrature::JacobiRule;
pub use sphere::{slice_integral, sphere_rule, SphereLayout, SphereRule};

use std::f64::consts::PI;

/// Surface measure `ω_d` of the unit sphere `S^{d-1}` in `R^d`, for `d >= 1`.
pub fn omega(d: usize) -> f64 {
    match d {
        0 => 0.0,
        1 => 2.0,
        2 => 2.0 * PI,
        _ => 2.0 * PI * omega(d - 2) / (d - 2) as f64,
    }
}

/// Volume `κ_d` of the unit ball in `R^d` (`κ_0 = 1`).
pub fn kappa(d: usize) -> f64 {
    if d == 0 {
        1.0
    } else {
        omega(d) / d as f64
    }
}

/// The constants of a fixed dimension that recur throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionConstants {
    pub d: usize,
    /// Surface measure of `S^{d-1}`.
    pub omega_d: f64,
    /// Volume of the unit ball.
    pub kappa_d: f64,
    /// Mean-width constant `2 κ_{d-1} / (d κ_d)`, so that `W = c_d V_1`.
    pub c_d: f64,
}

impl DimensionConstants {
    pub fn new(d: usize) -> crate::Result<Self> {
        if d < 2 {
            return Err(crate::Error::Domain(format!("dimension must be >= 2, got {d}")));
        }
        let omega_d = omega(d);
        let kappa_d = kappa(d);
        Ok(Self {
            d,
            omega_d,
            kappa_d,
            c_d: 2.0 * kappa(d - 1) / (d as f64 * kappa_d),
        })
    }
}
