use std::f64::consts::PI;

use rand::Rng;

use super::DensityEval;
use crate::geometry::{orthonormal_basis, planar, rot90};
use crate::harmonics::{kappa, omega};
use crate::{Error, Result, Vector};

/// A weighted hyperplane pair `{⟨x, u_i⟩ = s_i}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperplanePair {
    pub u1: Vector,
    pub s1: f64,
    pub u2: Vector,
    pub s2: f64,
    pub weight: f64,
}

/// A weighted line pair `y_i + ℝ u_i` with `y_i ∈ u_i^⊥`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinePair {
    pub u1: Vector,
    pub y1: Vector,
    pub u2: Vector,
    pub y2: Vector,
    pub weight: f64,
}

/// Uniform direction on `S^{d-1}`, `d ∈ {2, 3}`.
pub fn uniform_direction<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vector {
    let phi = 2.0 * PI * rng.random::<f64>();
    if d == 2 {
        return planar(phi);
    }
    let z = 2.0 * rng.random::<f64>() - 1.0;
    let r = (1.0 - z * z).max(0.0).sqrt();
    Vector::new(r * phi.cos(), r * phi.sin(), z)
}

fn check_radius(d: usize, radius: f64) -> Result<()> {
    crate::error::check_body_dim(d)?;
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::Domain(format!("reference radius must be positive, got {radius}")));
    }
    Ok(())
}

/// Uniform point of the radius-`r` ball in `u^⊥`.
fn offset<R: Rng + ?Sized>(u: &Vector, d: usize, r: f64, rng: &mut R) -> Vector {
    if d == 2 {
        return rot90(u) * (r * (2.0 * rng.random::<f64>() - 1.0));
    }
    let (e1, e2) = orthonormal_basis(u);
    let rho = r * rng.random::<f64>().sqrt();
    let (s, c) = (2.0 * PI * rng.random::<f64>()).sin_cos();
    (e1 * c + e2 * s) * rho
}

/// Directions uniform on the sphere, offsets uniform on `[-R, R]`, weight
/// `(2 R ω_d)² F(|⟨u₁, u₂⟩|)`.
pub fn sample_hyperplane_pair<R: Rng + ?Sized>(
    density: &DensityEval,
    d: usize,
    radius: f64,
    rng: &mut R,
) -> Result<HyperplanePair> {
    check_radius(d, radius)?;
    let u1 = uniform_direction(d, rng);
    let s1 = radius * (2.0 * rng.random::<f64>() - 1.0);
    let u2 = uniform_direction(d, rng);
    let s2 = radius * (2.0 * rng.random::<f64>() - 1.0);
    let weight = (2.0 * radius * omega(d)).powi(2) * density.eval(u1.dot(&u2));
    Ok(HyperplanePair { u1, s1, u2, s2, weight })
}

/// Directions uniform on the sphere, offsets uniform on the radius-`R`
/// ball of `u_i^⊥`, weight `(ω_d κ_{d-1} R^{d-1})² F(|⟨u₁, u₂⟩|)`.
pub fn sample_line_pair<R: Rng + ?Sized>(
    density: &DensityEval,
    d: usize,
    radius: f64,
    rng: &mut R,
) -> Result<LinePair> {
    check_radius(d, radius)?;
    let u1 = uniform_direction(d, rng);
    let y1 = offset(&u1, d, radius, rng);
    let u2 = uniform_direction(d, rng);
    let y2 = offset(&u2, d, radius, rng);
    let area = omega(d) * kappa(d - 1) * radius.powi(d as i32 - 1);
    let weight = area * area * density.eval(u1.dot(&u2));
    Ok(LinePair { u1, y1, u2, y2, weight })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::ZonalDensity;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn weights_and_determinism() {
        let one = ZonalDensity::constant(1.0).unwrap().evaluator(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = sample_hyperplane_pair(&one, 3, 2.0, &mut rng).unwrap();
        assert_eq!(p.weight, (4.0 * omega(3)).powi(2));
        assert!(p.s1.abs() <= 2.0 && (p.u1.norm() - 1.0).abs() < 1e-14);
        let l = sample_line_pair(&one, 3, 1.5, &mut rng).unwrap();
        assert_eq!(l.weight, (4.0 * PI * PI * 2.25).powi(2));
        assert!(l.u1.dot(&l.y1).abs() < 1e-12 && l.y1.norm() <= 1.5);

        let probe = ZonalDensity::probe(2).unwrap().evaluator(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 200_000;
        let mean: f64 = (0..n)
            .map(|_| sample_hyperplane_pair(&probe, 3, 1.0, &mut rng).unwrap().weight)
            .sum::<f64>()
            / n as f64;
        // E[P₂] = 0 and |P₂| <= 1, so the mean is within a few (2ω)²/sqrt(n)
        assert!(mean.abs() < 5.0 * (2.0 * omega(3)).powi(2) / (n as f64).sqrt());

        let a = sample_line_pair(&one, 2, 1.0, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        let b = sample_line_pair(&one, 2, 1.0, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert_eq!(a, b);
        assert!(a.u1.dot(&a.y1).abs() < 1e-12);
    }
}
