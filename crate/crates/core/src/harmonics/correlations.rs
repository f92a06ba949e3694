use std::f64::consts::PI;

use rayon::prelude::*;

use super::legendre::{dim_harmonic_f64, legendre_all, legendre_pair};
use super::real_sh::{normalized_legendre, real_sh_all, sh_index, tri_index};
use super::{omega, SphereRule};
use crate::{Error, Result, Vector};

/// Mode correlations `(π_m f, π_m g)` for `m = 0..=M`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ModeCorrelations {
    pub d: usize,
    pub values: Vec<f64>,
}

impl ModeCorrelations {
    /// Truncation order `M`.
    pub fn max_order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }
}

fn check_values(f: &[f64], g: &[f64], rule: &SphereRule) -> Result<()> {
    if f.len() != rule.len() || g.len() != rule.len() {
        return Err(Error::Domain(format!(
            "sampled functions have {} and {} values for a rule with {} nodes",
            f.len(),
            g.len(),
            rule.len()
        )));
    }
    Ok(())
}

/// `(π_m f, π_m g)` through the addition theorem,
/// `(N(d,m)/ω_d) ∬ f(u) P_m(d; ⟨u,v⟩) g(v) σ(du) σ(dv)`, by double quadrature.
pub fn project_correlation(
    f: impl Fn(&Vector) -> f64 + Sync,
    g: impl Fn(&Vector) -> f64 + Sync,
    m: usize,
    rule: &SphereRule,
) -> f64 {
    let fv = rule.sample(f);
    let gv = rule.sample(g);
    let d = rule.d;
    let inner: f64 = rule
        .nodes
        .par_iter()
        .zip(&fv)
        .zip(&rule.weights)
        .map(|((u, &fu), &wu)| {
            let s: f64 = rule
                .nodes
                .iter()
                .zip(&gv)
                .zip(&rule.weights)
                .map(|((v, &gv), &wv)| wv * gv * legendre_pair(d, m, u.dot(v).clamp(-1.0, 1.0)).0)
                .sum();
            wu * fu * s
        })
        .sum();
    dim_harmonic_f64(d, m) / omega(d) * inner
}

/// All correlations up to `M` through the addition theorem (`O(N² M)`).
pub fn addition_correlations(f: &[f64], g: &[f64], max_order: usize, rule: &SphereRule) -> Result<ModeCorrelations> {
    check_values(f, g, rule)?;
    let d = rule.d;
    let n = max_order + 1;
    let sums = rule
        .nodes
        .par_iter()
        .zip(f)
        .zip(&rule.weights)
        .map(|((u, &fu), &wu)| {
            let mut p = vec![0.0; n];
            let mut acc = vec![0.0; n];
            for ((v, &gv), &wv) in rule.nodes.iter().zip(g).zip(&rule.weights) {
                legendre_all(d, u.dot(v).clamp(-1.0, 1.0), &mut p);
                let c = wu * fu * wv * gv;
                for (a, pm) in acc.iter_mut().zip(&p) {
                    *a += c * pm;
                }
            }
            acc
        })
        .reduce(
            || vec![0.0; n],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    let om = omega(d);
    let values = sums
        .iter()
        .enumerate()
        .map(|(m, s)| dim_harmonic_f64(d, m) / om * s)
        .collect();
    Ok(ModeCorrelations { d, values })
}

/// Mode correlations of sampled functions.
///
/// In the plane these come from trigonometric coefficients; on `S²` from
/// coefficients against the real orthonormal harmonics, accumulated ring by
/// ring on product rules. [`addition_correlations`] is the basis-free
/// counterpart.
pub fn mode_correlations(f: &[f64], g: &[f64], max_order: usize, rule: &SphereRule) -> Result<ModeCorrelations> {
    check_values(f, g, rule)?;
    let values = match rule.d {
        2 => {
            let cf = fourier_coefficients(f, max_order, rule);
            let cg = if std::ptr::eq(f, g) { cf.clone() } else { fourier_coefficients(g, max_order, rule) };
            (0..=max_order)
                .map(|m| {
                    if m == 0 {
                        cf[0].0 * cg[0].0 / (2.0 * PI)
                    } else {
                        (cf[m].0 * cg[m].0 + cf[m].1 * cg[m].1) / PI
                    }
                })
                .collect()
        }
        3 => {
            let cf = harmonic_coefficients(f, max_order, rule);
            let cg = if std::ptr::eq(f, g) { cf.clone() } else { harmonic_coefficients(g, max_order, rule) };
            (0..=max_order)
                .map(|l| {
                    let lo = sh_index(l, -(l as i64));
                    let hi = sh_index(l, l as i64);
                    (lo..=hi).map(|i| cf[i] * cg[i]).sum()
                })
                .collect()
        }
        d => return Err(Error::Dimension { expected: 3, found: d }),
    };
    Ok(ModeCorrelations { d: rule.d, values })
}

/// Closure form of [`mode_correlations`].
pub fn mode_correlations_of(
    f: impl Fn(&Vector) -> f64 + Sync,
    g: impl Fn(&Vector) -> f64 + Sync,
    max_order: usize,
    rule: &SphereRule,
) -> Result<ModeCorrelations> {
    mode_correlations(&rule.sample(f), &rule.sample(g), max_order, rule)
}

/// `(Σ w f cos mθ, Σ w f sin mθ)` for `m = 0..=M`.
fn fourier_coefficients(f: &[f64], max_order: usize, rule: &SphereRule) -> Vec<(f64, f64)> {
    let mut out = vec![(0.0, 0.0); max_order + 1];
    for ((u, &fv), &w) in rule.nodes.iter().zip(f).zip(&rule.weights) {
        let theta = u.y.atan2(u.x);
        for (m, c) in out.iter_mut().enumerate() {
            let (s, co) = (m as f64 * theta).sin_cos();
            c.0 += w * fv * co;
            c.1 += w * fv * s;
        }
    }
    out
}

/// Quadrature coefficients `(f, Y_l^m)` indexed by `sh_index`.
pub(crate) fn harmonic_coefficients(f: &[f64], lmax: usize, rule: &SphereRule) -> Vec<f64> {
    let n = (lmax + 1) * (lmax + 1);
    let Some((rings, azimuth)) = rule.product_parts() else {
        let mut out = vec![0.0; n];
        for ((u, &fv), &w) in rule.nodes.iter().zip(f).zip(&rule.weights) {
            for (o, y) in out.iter_mut().zip(real_sh_all(lmax, u)) {
                *o += w * fv * y;
            }
        }
        return out;
    };
    let n_az = azimuth.len();
    let mut trig = vec![(0.0, 0.0); n_az * (lmax + 1)];
    for (k, &(phi, _)) in azimuth.iter().enumerate() {
        for m in 0..=lmax {
            trig[k * (lmax + 1) + m] = (m as f64 * phi).sin_cos();
        }
    }
    rings
        .par_iter()
        .enumerate()
        .map(|(r, ring)| {
            let row = &f[r * n_az..(r + 1) * n_az];
            let mut cs = vec![(0.0, 0.0); lmax + 1];
            for (k, (&fv, &(_, w))) in row.iter().zip(azimuth).enumerate() {
                let wf = w * fv;
                for (m, c) in cs.iter_mut().enumerate() {
                    let (s, co) = trig[k * (lmax + 1) + m];
                    c.0 += wf * co;
                    c.1 += wf * s;
                }
            }
            let mut p = vec![0.0; tri_index(lmax, lmax) + 1];
            normalized_legendre(lmax, ring.z, ring.s, &mut p);
            let mut out = vec![0.0; n];
            for l in 0..=lmax {
                out[sh_index(l, 0)] = ring.weight * p[tri_index(l, 0)] * cs[0].0;
                for m in 1..=l {
                    let v = std::f64::consts::SQRT_2 * ring.weight * p[tri_index(l, m)];
                    out[sh_index(l, m as i64)] = v * cs[m].0;
                    out[sh_index(l, -(m as i64))] = v * cs[m].1;
                }
            }
            out
        })
        .reduce(
            || vec![0.0; n],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}
