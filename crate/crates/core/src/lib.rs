//! Pair-Crofton functionals of convex bodies.
//!
//! For convex bodies `K1`, `K2` and a translation invariant measure `Θ` on
//! pairs of hyperplanes (or lines), `I(K1, K2, Θ)` is the `Θ`-measure of the
//! pairs whose first element meets `K1` and whose second element meets `K2`;
//! `J` is the line analogue. This crate evaluates both through three
//! independent routes:
//!
//! * a spectral series over spherical-harmonic modes of the width
//!   (brightness) functions, weighted by the Legendre moments `β_m[Θ]`,
//! * direct double quadrature over pairs of directions,
//! * Monte Carlo sampling of hyperplane or line pairs,
//!
//! plus an exact path for measures with finitely many direction-pair atoms.
//! The [`diagnostics`] module uses Legendre-probe measures to certify
//! constant width and constant brightness up to a finite mode.
//!
//! Bodies and measures are supported in the plane and in space; the
//! polynomial and quadrature utilities in [`harmonics`] work in any
//! dimension `d >= 2`.

pub mod bodies;
pub mod diagnostics;
pub mod error;
pub mod functionals;
pub mod geometry;
pub mod harmonics;
pub mod measures;

pub use error::{Error, Result};

/// Points and directions. Planar data lives in the `z = 0` plane.
pub type Vector = nalgebra::Vector3<f64>;
/// Symmetric matrices of ellipsoids (planar ones are padded with a unit `z` entry).
pub type Matrix = nalgebra::Matrix3<f64>;
