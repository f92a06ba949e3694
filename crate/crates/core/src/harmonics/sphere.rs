use std::f64::consts::PI;

use super::JacobiRule;
use crate::geometry::orthonormal_basis;
use crate::{Error, Result, Vector};

/// A latitude ring of a product rule on `S²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ring {
    /// `cos θ` of the polar angle.
    pub z: f64,
    /// `sin θ`.
    pub s: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SphereLayout {
    /// Equally spaced angles on `S¹`.
    Circle,
    /// Gauss–Legendre in `cos θ` times a uniform azimuth grid.
    GaussUniform { rings: Vec<Ring>, azimuth: Vec<(f64, f64)> },
    /// Gauss–Legendre in `θ` on each hemisphere times Gauss–Legendre in `φ`
    /// on each quadrant; every octant is integrated by its own smooth chart.
    Octant { rings: Vec<Ring>, azimuth: Vec<(f64, f64)> },
}

/// Quadrature on `S^{d-1}` for `d ∈ {2, 3}`; nodes are stored ring-major for
/// the product layouts.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereRule {
    pub d: usize,
    pub nodes: Vec<Vector>,
    pub weights: Vec<f64>,
    pub layout: SphereLayout,
}

/// Equally spaced rule on the circle (`d = 2`), or Gauss–Legendre in `cos θ`
/// with `resolution` rings times `2 · resolution` uniform azimuths (`d = 3`).
pub fn sphere_rule(d: usize, resolution: usize) -> Result<SphereRule> {
    match d {
        2 => SphereRule::circle(resolution),
        3 => SphereRule::gauss_uniform(resolution),
        _ => Err(Error::Dimension { expected: 3, found: d }),
    }
}

impl SphereRule {
    pub fn circle(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::Domain(format!("circle rule needs >= 4 nodes, got {n}")));
        }
        let h = 2.0 * PI / n as f64;
        let nodes = (0..n).map(|k| crate::geometry::planar(k as f64 * h)).collect();
        Ok(Self {
            d: 2,
            nodes,
            weights: vec![h; n],
            layout: SphereLayout::Circle,
        })
    }

    pub fn gauss_uniform(resolution: usize) -> Result<Self> {
        if resolution < 4 {
            return Err(Error::Domain(format!(
                "sphere resolution must be >= 4, got {resolution}"
            )));
        }
        let gl = JacobiRule::new(3, resolution)?;
        let rings = gl
            .nodes
            .iter()
            .zip(&gl.weights)
            .map(|(&z, &w)| Ring {
                z,
                s: (1.0 - z * z).sqrt(),
                weight: w,
            })
            .collect();
        let n_az = 2 * resolution;
        let h = 2.0 * PI / n_az as f64;
        let azimuth = (0..n_az).map(|k| (k as f64 * h, h)).collect();
        Ok(Self::from_product(SphereLayout::GaussUniform { rings, azimuth }))
    }

    /// Octant-aligned rule with `q` Gauss points per hemisphere in `θ` and
    /// per quadrant in `φ` (`8 q²` nodes). Functions that are analytic on
    /// each closed coordinate octant, such as the width of an axis-parallel
    /// box, are integrated with spectral accuracy.
    pub fn octant(q: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::Domain(format!("octant rule needs q >= 2, got {q}")));
        }
        let gl = JacobiRule::new(3, q)?;
        let quarter = 0.25 * PI;
        let mut north = Vec::with_capacity(q);
        for (&x, &w) in gl.nodes.iter().zip(&gl.weights) {
            let theta = quarter * (1.0 + x);
            north.push(Ring {
                z: theta.cos(),
                s: theta.sin(),
                weight: quarter * w * theta.sin(),
            });
        }
        let mut rings: Vec<Ring> = north.iter().rev().map(|r| Ring { z: -r.z, ..*r }).collect();
        rings.extend(north);
        let mut azimuth = Vec::with_capacity(4 * q);
        for quadrant in 0..4 {
            for (&x, &w) in gl.nodes.iter().zip(&gl.weights) {
                azimuth.push((quadrant as f64 * 2.0 * quarter + quarter * (1.0 + x), quarter * w));
            }
        }
        Ok(Self::from_product(SphereLayout::Octant { rings, azimuth }))
    }

    fn from_product(layout: SphereLayout) -> Self {
        let (rings, azimuth) = match &layout {
            SphereLayout::GaussUniform { rings, azimuth } | SphereLayout::Octant { rings, azimuth } => {
                (rings, azimuth)
            }
            SphereLayout::Circle => unreachable!(),
        };
        let mut nodes = Vec::with_capacity(rings.len() * azimuth.len());
        let mut weights = Vec::with_capacity(nodes.capacity());
        for r in rings {
            for &(phi, w) in azimuth {
                nodes.push(Vector::new(r.s * phi.cos(), r.s * phi.sin(), r.z));
                weights.push(r.weight * w);
            }
        }
        Self {
            d: 3,
            nodes,
            weights,
            layout,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Highest harmonic order integrated exactly, when the rule has one.
    pub fn exactness_degree(&self) -> Option<usize> {
        match &self.layout {
            SphereLayout::Circle => Some(self.nodes.len() - 1),
            SphereLayout::GaussUniform { rings, azimuth } => {
                Some((2 * rings.len() - 1).min(azimuth.len() - 1))
            }
            SphereLayout::Octant { .. } => None,
        }
    }

    /// Rings and azimuth nodes of a product layout.
    pub fn product_parts(&self) -> Option<(&[Ring], &[(f64, f64)])> {
        match &self.layout {
            SphereLayout::GaussUniform { rings, azimuth } | SphereLayout::Octant { rings, azimuth } => {
                Some((rings, azimuth))
            }
            SphereLayout::Circle => None,
        }
    }

    pub fn sample(&self, f: impl Fn(&Vector) -> f64 + Sync) -> Vec<f64> {
        use rayon::prelude::*;
        self.nodes.par_iter().map(&f).collect()
    }

    pub fn integrate(&self, f: impl Fn(&Vector) -> f64 + Sync) -> f64 {
        self.integrate_values(&self.sample(f))
    }

    pub fn integrate_values(&self, values: &[f64]) -> f64 {
        values.iter().zip(&self.weights).map(|(v, w)| v * w).sum()
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Average of `f` over `S_{v,t} = {x ∈ S^{d-1} : ⟨v, x⟩ = t}` with respect to
/// the normalized measure on that `(d-2)`-sphere.
///
/// In the plane the slice is two points; in space it is a circle sampled at
/// `circle_resolution` equally spaced points (exact for trigonometric degree
/// below the resolution). At `|t| = 1` the slice collapses to `±v`.
pub fn slice_integral(
    f: impl Fn(&Vector) -> f64,
    d: usize,
    v: &Vector,
    t: f64,
    circle_resolution: usize,
) -> Result<f64> {
    crate::geometry::check_unit(v, d)?;
    if !(t.abs() <= 1.0 + 1e-12) {
        return Err(Error::Domain(format!("slice height {t} outside [-1, 1]")));
    }
    let t = t.clamp(-1.0, 1.0);
    let r = (1.0 - t * t).max(0.0).sqrt();
    let centre = v * t;
    match d {
        2 => {
            let w = crate::geometry::rot90(v) * r;
            Ok(0.5 * (f(&(centre + w)) + f(&(centre - w))))
        }
        3 => {
            if circle_resolution == 0 {
                return Err(Error::Domain("circle resolution must be positive".into()));
            }
            if r == 0.0 {
                return Ok(f(&centre));
            }
            let (e1, e2) = orthonormal_basis(v);
            let h = 2.0 * PI / circle_resolution as f64;
            let sum: f64 = (0..circle_resolution)
                .map(|k| {
                    let a = k as f64 * h;
                    f(&(centre + (e1 * a.cos() + e2 * a.sin()) * r))
                })
                .sum();
            Ok(sum / circle_resolution as f64)
        }
        _ => Err(Error::Dimension { expected: 3, found: d }),
    }
}
