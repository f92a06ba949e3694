use std::f64::consts::PI;

use super::legendre::{dim_harmonic_f64, legendre_pair};
use super::omega;
use crate::{Error, Result};

const NEWTON_TOL: f64 = 1e-14;
const MAX_NEWTON: usize = 60;

/// Gauss rule for `∫_{-1}^{1} f(t) (1 - t²)^{(d-3)/2} dt`.
///
/// The nodes are the zeros of `P_n(d; ·)`, so the rule is exact for
/// polynomials of degree `<= 2n - 1`. For `d = 2` this is Gauss–Chebyshev.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiRule {
    pub d: usize,
    /// Ascending abscissae in `(-1, 1)`, symmetric about 0.
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl JacobiRule {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::Domain(format!("dimension must be >= 2, got {d}")));
        }
        if n == 0 {
            return Err(Error::Domain("node count must be >= 1".into()));
        }
        if d == 2 {
            return Ok(Self::chebyshev(n));
        }
        let positive = positive_roots(d, n)?;
        let mass = omega(d) / omega(d - 1);
        let nf = n as f64;
        let dd = d as f64;
        let lead_ratio = (2.0 * nf + dd - 4.0) / (nf + dd - 3.0);
        let norm_prev = mass / dim_harmonic_f64(d, n - 1);
        let weight = |x: f64| {
            let (_, p_prev) = legendre_pair(d, n, x);
            lead_ratio * norm_prev * (1.0 - x * x) / (nf * p_prev * p_prev)
        };
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for &x in positive.iter().rev() {
            nodes.push(-x);
            weights.push(weight(x));
        }
        if n % 2 == 1 {
            nodes.push(0.0);
            weights.push(weight(0.0));
        }
        for &x in &positive {
            nodes.push(x);
            weights.push(weight(x));
        }
        if weights.iter().any(|w| !w.is_finite() || *w <= 0.0) {
            return Err(Error::Numerical(format!("non-positive Gauss weight (d={d}, n={n})")));
        }
        Ok(Self { d, nodes, weights })
    }

    fn chebyshev(n: usize) -> Self {
        let nf = n as f64;
        let mut nodes: Vec<f64> = (0..n)
            .map(|k| -((2 * k + 1) as f64 * PI / (2.0 * nf)).cos())
            .collect();
        // exact symmetry
        for k in 0..n / 2 {
            let x = 0.5 * (nodes[n - 1 - k] - nodes[k]);
            nodes[k] = -x;
            nodes[n - 1 - k] = x;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self {
            d: 2,
            nodes,
            weights: vec![PI / nf; n],
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Highest polynomial degree integrated exactly.
    pub fn degree(&self) -> usize {
        2 * self.nodes.len() - 1
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Roots of `P_n(d; ·)` in `(0, 1)`, ascending, found by bracketing on a
/// grid in `θ = arccos t` and polishing with safeguarded Newton steps.
fn positive_roots(d: usize, n: usize) -> Result<Vec<f64>> {
    let f = |x: f64| legendre_pair(d, n, x);
    let grid = 16 * n + 16;
    let mut roots = Vec::with_capacity(n / 2);
    // θ from just above 0 to π/2 (exclusive); t = cos θ decreasing
    let mut prev_t = 1.0;
    let mut prev_v = 1.0_f64;
    for j in 1..=grid {
        let theta = 0.5 * PI * j as f64 / grid as f64;
        let t = if j == grid { 0.0 } else { theta.cos() };
        let v = f(t).0;
        if j == grid && n % 2 == 1 {
            // zero at the origin belongs to the centre node
            break;
        }
        if v == 0.0 {
            // grid point on a root: the sign flips across it
            roots.push(t);
            prev_v = -prev_v;
        } else {
            if v.signum() != prev_v.signum() {
                roots.push(polish(d, n, t, prev_t)?);
            }
            prev_v = v;
        }
        prev_t = t;
    }
    if roots.len() != n / 2 {
        return Err(Error::Numerical(format!(
            "found {} of {} positive roots of P_{n}({d}; ·)",
            roots.len(),
            n / 2
        )));
    }
    roots.reverse();
    Ok(roots)
}

fn polish(d: usize, n: usize, mut lo: f64, mut hi: f64) -> Result<f64> {
    let value = |x: f64| legendre_pair(d, n, x).0;
    let f_lo = value(lo);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    let mut x = 0.5 * (lo + hi);
    let nf = n as f64;
    for _ in 0..MAX_NEWTON {
        let (p, p_prev) = legendre_pair(d, n, x);
        if p == 0.0 {
            return Ok(x);
        }
        if p.signum() == f_lo.signum() {
            lo = x;
        } else {
            hi = x;
        }
        // (1 - t²) P_n' = n (P_{n-1} - t P_n)
        let dp = nf * (p_prev - x * p) / (1.0 - x * x);
        let mut next = x - p / dp;
        if !(next > lo.min(hi) && next < lo.max(hi)) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() < NEWTON_TOL {
            // quadratic convergence: two more steps reach rounding level
            let mut y = next;
            for _ in 0..2 {
                let (p, p_prev) = legendre_pair(d, n, y);
                let dp = nf * (p_prev - y * p) / (1.0 - y * y);
                y -= p / dp;
            }
            return Ok(y);
        }
        x = next;
    }
    Err(Error::Numerical(format!("Newton iteration for P_{n}({d}; ·) did not converge")))
}
