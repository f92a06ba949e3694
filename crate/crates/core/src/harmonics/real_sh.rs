//! Real orthonormal spherical harmonics on `S²`.
//!
//! `Y_l^0 = P̄_l^0(z)`, `Y_l^{m} = √2 P̄_l^m(z) cos(mφ)` and
//! `Y_l^{-m} = √2 P̄_l^m(z) sin(mφ)` for `m > 0`, where `P̄_l^m` are the
//! associated Legendre functions scaled so that `2π ∫ P̄² dz = 1`
//! (no Condon–Shortley phase).

use std::f64::consts::{PI, SQRT_2};

use crate::Vector;

/// Index of `P̄_l^m` in a triangular table.
#[inline]
pub fn tri_index(l: usize, m: usize) -> usize {
    l * (l + 1) / 2 + m
}

/// Index of `Y_l^m`, `-l <= m <= l`, in a table of `(lmax + 1)²` entries.
#[inline]
pub fn sh_index(l: usize, m: i64) -> usize {
    ((l * l + l) as i64 + m) as usize
}

/// Fills `out[tri_index(l, m)] = P̄_l^m(z)` for `0 <= m <= l <= lmax`,
/// given `s = √(1 - z²)`.
pub fn normalized_legendre(lmax: usize, z: f64, s: f64, out: &mut [f64]) {
    debug_assert!(out.len() > tri_index(lmax, lmax));
    out[0] = (0.25 / PI).sqrt();
    for m in 1..=lmax {
        let mf = m as f64;
        out[tri_index(m, m)] = ((2.0 * mf + 1.0) / (2.0 * mf)).sqrt() * s * out[tri_index(m - 1, m - 1)];
    }
    for m in 0..lmax {
        let mf = m as f64;
        out[tri_index(m + 1, m)] = (2.0 * mf + 3.0).sqrt() * z * out[tri_index(m, m)];
        for l in m + 2..=lmax {
            let lf = l as f64;
            let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
            let lm1 = lf - 1.0;
            let b = ((lm1 * lm1 - mf * mf) / (4.0 * lm1 * lm1 - 1.0)).sqrt();
            out[tri_index(l, m)] = a * (z * out[tri_index(l - 1, m)] - b * out[tri_index(l - 2, m)]);
        }
    }
}

/// All real harmonics up to `lmax` at the unit vector `u`, indexed by [`sh_index`].
pub fn real_sh_all(lmax: usize, u: &Vector) -> Vec<f64> {
    let z = u.z.clamp(-1.0, 1.0);
    let s = (u.x * u.x + u.y * u.y).sqrt();
    let phi = u.y.atan2(u.x);
    let mut p = vec![0.0; tri_index(lmax, lmax) + 1];
    normalized_legendre(lmax, z, s, &mut p);
    let mut out = vec![0.0; (lmax + 1) * (lmax + 1)];
    for l in 0..=lmax {
        out[sh_index(l, 0)] = p[tri_index(l, 0)];
        for m in 1..=l {
            let (sn, cs) = (m as f64 * phi).sin_cos();
            let v = SQRT_2 * p[tri_index(l, m)];
            out[sh_index(l, m as i64)] = v * cs;
            out[sh_index(l, -(m as i64))] = v * sn;
        }
    }
    out
}

/// A single real harmonic `Y_l^m(u)`.
pub fn real_sh(l: usize, m: i64, u: &Vector) -> f64 {
    assert!(m.unsigned_abs() as usize <= l, "|m| must not exceed l");
    real_sh_all(l, u)[sh_index(l, m)]
}
