use serde::Serialize;

use super::{PsiMeasure, ZonalDensity};
use crate::harmonics::{kappa, legendre_all, omega, JacobiRule};
use crate::Result;

/// Legendre moments `β_m[Θ] = ∫ P_m(d; t) ψ(dt)` for `m = 0..=M`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetaTable {
    pub d: usize,
    pub values: Vec<f64>,
    /// Upper bound for `|β_m|` at every order: the total variation of `ψ`.
    pub mass_bound: f64,
}

impl BetaTable {
    pub fn max_order(&self) -> usize {
        self.values.len() - 1
    }

    /// `β_m`, or `None` beyond the truncation order.
    pub fn get(&self, m: usize) -> Option<f64> {
        self.values.get(m).copied()
    }

    pub fn beta0(&self) -> f64 {
        self.values[0]
    }

    fn from_raw(d: usize, mut values: Vec<f64>, mass_bound: f64) -> Self {
        for (m, v) in values.iter_mut().enumerate() {
            if m % 2 == 1 {
                *v = 0.0;
            }
        }
        Self { d, values, mass_bound }
    }
}

/// `β_m = ω_{d-1} ∫ F(|t|) P_m(d; t) (1 - t²)^{(d-3)/2} dt` by a Gauss–Jacobi
/// rule exact for the integrand's degree.
pub fn beta_from_density(density: &ZonalDensity, d: usize, max_order: usize) -> Result<BetaTable> {
    let eval = density.evaluator(d)?;
    if density.is_zero() {
        return Ok(BetaTable::from_raw(d, vec![0.0; max_order + 1], 0.0));
    }
    let degree = density.degree() + max_order;
    let rule = JacobiRule::new(d, degree / 2 + 1)?;
    let scale = omega(d - 1);
    let mut p = vec![0.0; max_order + 1];
    let mut values = vec![0.0; max_order + 1];
    for (t, w) in rule.nodes.iter().zip(&rule.weights) {
        let f = eval.eval(*t) * w * scale;
        legendre_all(d, *t, &mut p);
        for (v, pm) in values.iter_mut().zip(&p) {
            *v += f * pm;
        }
    }
    let mass_bound = density.variation_bound(d)?;
    Ok(BetaTable::from_raw(d, values, mass_bound))
}

/// `β_m = Σ mass · P_m(d; t)` over atoms; induced measures delegate to
/// [`beta_from_density`].
pub fn beta_from_psi(psi: &PsiMeasure, d: usize, max_order: usize) -> Result<BetaTable> {
    match psi {
        PsiMeasure::Induced { density, dim } => {
            crate::error::check_dim(*dim, d)?;
            beta_from_density(density, d, max_order)
        }
        PsiMeasure::Atoms(atoms) => {
            if d < 2 {
                return Err(crate::Error::Domain(format!("dimension must be >= 2, got {d}")));
            }
            let mut p = vec![0.0; max_order + 1];
            let mut values = vec![0.0; max_order + 1];
            for &(t, mass) in atoms {
                legendre_all(d, t, &mut p);
                for (v, pm) in values.iter_mut().zip(&p) {
                    *v += mass * pm;
                }
            }
            Ok(BetaTable::from_raw(d, values, psi.variation_bound(d)?))
        }
    }
}

/// Gauss–Jacobi discretization of the `ψ` induced by `F`: `nodes` atoms
/// `(t_i, ω_{d-1} w_i F(|t_i|))`, dropping zero masses. Exact for moments
/// up to order `2 · nodes - 1 - deg F`.
pub fn psi_from_density(density: &ZonalDensity, d: usize, nodes: usize) -> Result<PsiMeasure> {
    crate::error::check_body_dim(d)?;
    let eval = density.evaluator(d)?;
    if density.is_zero() {
        return Ok(PsiMeasure::Atoms(Vec::new()));
    }
    let rule = JacobiRule::new(d, nodes)?;
    let scale = omega(d - 1);
    let atoms = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(t, w)| (*t, scale * w * eval.eval(*t)))
        .filter(|a| a.1 != 0.0)
        .collect();
    Ok(PsiMeasure::Atoms(atoms))
}

/// `λ[Θ] = β₀ ω_d`.
pub fn lambda_theta(beta: &BetaTable) -> f64 {
    beta.beta0() * omega(beta.d)
}

/// `κ[Θ] = β₀ κ_{d-1}² / ω_d`.
pub fn kappa_theta(beta: &BetaTable) -> f64 {
    beta.beta0() * kappa(beta.d - 1).powi(2) / omega(beta.d)
}
