//! The pair functionals `I(K₁, K₂, Θ)` (hyperplanes) and `J(K₁, K₂, Θ)`
//! (lines), the classical Crofton checks and theorem residuals.
//!
//! `I` pairs width functions and `J` brightness functions; every route below
//! is written once for a [`FunctionKind`] and exposed under both names.
//!
//! | route | measure | evaluation |
//! |---|---|---|
//! | spectral | zonal, ψ | `Σ_{even m <= M} β_m (π_m f₁, π_m f₂)` |
//! | direct | zonal | `∬ f₁(u) F(\|⟨u, v⟩\|) f₂(v) dσ dσ` |
//! | direct | ψ atoms | `Σ mass ∫ f₁(u) ⨍_{S_{u,t}} f₂ dσ(u)` |
//! | discrete | atoms `Θ₀` | `Σ c f₁(u) f₂(v)`, exact |
//! | montecarlo | zonal | weighted hits of sampled pairs |

mod montecarlo;
mod theorems;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bodies::{Body, FunctionKind};
use crate::error::check_dim;
use crate::harmonics::{kappa, mode_correlations, omega, slice_integral, SphereRule};
use crate::measures::{BetaTable, DiscretePairMeasure, PairMeasure, PsiMeasure, ZonalDensity};
use crate::{Error, Result};

pub use montecarlo::{montecarlo, MonteCarloConfig};
pub use theorems::{theorem_residuals, Theorem, TheoremResidual};

/// Default spectral truncation order.
pub const DEFAULT_MODES: usize = 40;
/// Default resolution of slice circles in the ψ route.
pub const DEFAULT_SLICE_RESOLUTION: usize = 256;

/// Which affine subspaces the pair measure lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Element {
    Hyperplanes,
    Lines,
}

impl Element {
    /// Width for hyperplanes, brightness for lines.
    pub fn function(self) -> FunctionKind {
        match self {
            Element::Hyperplanes => FunctionKind::Width,
            Element::Lines => FunctionKind::Brightness,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Spectral,
    Direct,
    Montecarlo,
    Discrete,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Spectral, Method::Direct, Method::Montecarlo, Method::Discrete];

    pub fn name(self) -> &'static str {
        match self {
            Method::Spectral => "spectral",
            Method::Direct => "direct",
            Method::Montecarlo => "montecarlo",
            Method::Discrete => "discrete",
        }
    }
}

/// Value of `I` or `J` with the error information of its route.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairIntegralResult {
    pub value: f64,
    pub method: Method,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none")]
    pub modes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stderr: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl PairIntegralResult {
    fn exact(value: f64, method: Method) -> Self {
        Self { value, method, modes: None, tail_bound: None, stderr: None, n: None, seed: None }
    }
}

fn check_pair(k1: &Body, k2: &Body, d: usize) -> Result<()> {
    check_dim(k1.dim(), k2.dim())?;
    check_dim(k1.dim(), d)
}

fn finite(r: PairIntegralResult) -> Result<PairIntegralResult> {
    if r.value.is_finite() {
        Ok(r)
    } else {
        Err(Error::Numerical(format!("{} evaluation produced {}", r.method.name(), r.value)))
    }
}

/// Quadrature used by the spectral route when none is given: the octant
/// rule on `S²`, 1024 equally spaced points on `S¹`.
pub fn default_spectral_rule(d: usize) -> Result<SphereRule> {
    match d {
        2 => SphereRule::circle(1024),
        3 => SphereRule::octant(48),
        _ => Err(Error::Dimension { expected: 3, found: d }),
    }
}

/// Quadrature used by the direct route, whose cost is quadratic in the
/// node count.
pub fn default_direct_rule(d: usize) -> Result<SphereRule> {
    match d {
        2 => SphereRule::circle(512),
        3 => SphereRule::octant(12),
        _ => Err(Error::Dimension { expected: 3, found: d }),
    }
}

/// `Σ_{even m <= M} β_m (π_m f₁, π_m f₂)` with the Parseval tail bound
/// `β_cap √(r₁ r₂)`, `r_i = (f_i, f_i) - Σ_{m <= M} ‖π_m f_i‖²`.
pub fn spectral(
    k1: &Body,
    k2: &Body,
    kind: FunctionKind,
    beta: &BetaTable,
    max_order: usize,
    rule: &SphereRule,
) -> Result<PairIntegralResult> {
    check_pair(k1, k2, rule.d)?;
    check_dim(rule.d, beta.d)?;
    if beta.max_order() < max_order {
        return Err(Error::Domain(format!(
            "beta table stops at order {}, truncation asks for {max_order}",
            beta.max_order()
        )));
    }
    let f1 = k1.function(kind).sample(rule)?;
    let f2 = k2.function(kind).sample(rule)?;
    let c12 = mode_correlations(&f1, &f2, max_order, rule)?;
    let c11 = mode_correlations(&f1, &f1, max_order, rule)?;
    let c22 = mode_correlations(&f2, &f2, max_order, rule)?;
    let value: f64 = (0..=max_order).step_by(2).map(|m| beta.values[m] * c12.values[m]).sum();
    let energy = |f: &[f64]| f.iter().zip(&rule.weights).map(|(x, w)| x * x * w).sum::<f64>();
    let r1 = (energy(&f1) - c11.total()).max(0.0);
    let r2 = (energy(&f2) - c22.total()).max(0.0);
    finite(PairIntegralResult {
        modes: Some(max_order),
        tail_bound: Some(beta.mass_bound * (r1 * r2).sqrt()),
        ..PairIntegralResult::exact(value, Method::Spectral)
    })
}

pub fn i_spectral(k1: &Body, k2: &Body, beta: &BetaTable, max_order: usize, rule: &SphereRule) -> Result<PairIntegralResult> {
    spectral(k1, k2, FunctionKind::Width, beta, max_order, rule)
}

pub fn j_spectral(k1: &Body, k2: &Body, beta: &BetaTable, max_order: usize, rule: &SphereRule) -> Result<PairIntegralResult> {
    spectral(k1, k2, FunctionKind::Brightness, beta, max_order, rule)
}

/// `∬ f₁(u) F(|⟨u, v⟩|) f₂(v) σ(du) σ(dv)` by the product of `rule` with itself.
pub fn direct(
    k1: &Body,
    k2: &Body,
    kind: FunctionKind,
    density: &ZonalDensity,
    rule: &SphereRule,
) -> Result<PairIntegralResult> {
    check_pair(k1, k2, rule.d)?;
    let eval = density.evaluator(rule.d)?;
    let f1 = k1.function(kind).sample(rule)?;
    let f2 = k2.function(kind).sample(rule)?;
    let g: Vec<f64> = f2.iter().zip(&rule.weights).map(|(f, w)| f * w).collect();
    let rows: Vec<f64> = rule
        .nodes
        .par_iter()
        .zip(&f1)
        .zip(&rule.weights)
        .map(|((u, fu), wu)| {
            let inner: f64 = rule.nodes.iter().zip(&g).map(|(v, gv)| eval.eval(u.dot(v)) * gv).sum();
            fu * wu * inner
        })
        .collect();
    finite(PairIntegralResult::exact(rows.iter().sum(), Method::Direct))
}

pub fn i_direct(k1: &Body, k2: &Body, density: &ZonalDensity, rule: &SphereRule) -> Result<PairIntegralResult> {
    direct(k1, k2, FunctionKind::Width, density, rule)
}

pub fn j_direct(k1: &Body, k2: &Body, density: &ZonalDensity, rule: &SphereRule) -> Result<PairIntegralResult> {
    direct(k1, k2, FunctionKind::Brightness, density, rule)
}

/// The ψ-disintegrated form `Σ mass ∫ f₁(u) ⨍_{S_{u,t}} f₂ dσ(u)`.
pub fn direct_psi(
    k1: &Body,
    k2: &Body,
    kind: FunctionKind,
    atoms: &[(f64, f64)],
    rule: &SphereRule,
    slice_resolution: usize,
) -> Result<PairIntegralResult> {
    check_pair(k1, k2, rule.d)?;
    let f1 = k1.function(kind).sample(rule)?;
    let g = k2.function(kind);
    let rows = rule
        .nodes
        .par_iter()
        .zip(&f1)
        .zip(&rule.weights)
        .map(|((u, fu), wu)| {
            let mut s = 0.0;
            for &(t, mass) in atoms {
                s += mass * slice_integral(|v| g.eval(v), rule.d, u, t, slice_resolution)?;
            }
            Ok(fu * wu * s)
        })
        .collect::<Result<Vec<f64>>>()?;
    finite(PairIntegralResult::exact(rows.iter().sum(), Method::Direct))
}

/// `Σ c f₁(u) f₂(v)` over the atoms of `Θ₀`; no quadrature.
pub fn discrete(k1: &Body, k2: &Body, kind: FunctionKind, theta0: &DiscretePairMeasure) -> Result<PairIntegralResult> {
    check_pair(k1, k2, theta0.d)?;
    let (g1, g2) = (k1.function(kind), k2.function(kind));
    let value = theta0.atoms.iter().map(|a| a.c * g1.eval(&a.u) * g2.eval(&a.v)).sum();
    finite(PairIntegralResult::exact(value, Method::Discrete))
}

pub fn i_discrete(k1: &Body, k2: &Body, theta0: &DiscretePairMeasure) -> Result<PairIntegralResult> {
    discrete(k1, k2, FunctionKind::Width, theta0)
}

pub fn j_discrete(k1: &Body, k2: &Body, theta0: &DiscretePairMeasure) -> Result<PairIntegralResult> {
    discrete(k1, k2, FunctionKind::Brightness, theta0)
}

/// Everything a dispatched evaluation may need; `None` rules fall back to
/// [`default_spectral_rule`] and [`default_direct_rule`].
#[derive(Debug, Clone)]
pub struct EvalOptions {
    pub modes: usize,
    pub spectral_rule: Option<SphereRule>,
    pub direct_rule: Option<SphereRule>,
    pub slice_resolution: usize,
    pub montecarlo: Option<MonteCarloConfig>,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            modes: DEFAULT_MODES,
            spectral_rule: None,
            direct_rule: None,
            slice_resolution: DEFAULT_SLICE_RESOLUTION,
            montecarlo: None,
        }
    }
}

fn unsupported(method: Method, measure: &PairMeasure) -> Error {
    Error::Unsupported(format!("the {} route does not apply to a {} measure", method.name(), measure.kind()))
}

/// Evaluates `I` (hyperplanes) or `J` (lines) by one route.
pub fn evaluate(
    k1: &Body,
    k2: &Body,
    element: Element,
    measure: &PairMeasure,
    method: Method,
    opts: &EvalOptions,
) -> Result<PairIntegralResult> {
    let d = k1.dim();
    let kind = element.function();
    if let Some(md) = measure.dim() {
        check_dim(d, md)?;
    }
    match (method, measure) {
        (Method::Spectral, PairMeasure::Zonal(_) | PairMeasure::Psi(_)) => {
            let rule = match &opts.spectral_rule {
                Some(r) => r.clone(),
                None => default_spectral_rule(d)?,
            };
            let beta = measure.beta(d, opts.modes)?;
            spectral(k1, k2, kind, &beta, opts.modes, &rule)
        }
        (Method::Direct, PairMeasure::Zonal(_) | PairMeasure::Psi(_)) => {
            let rule = match &opts.direct_rule {
                Some(r) => r.clone(),
                None => default_direct_rule(d)?,
            };
            match measure {
                PairMeasure::Zonal(f) | PairMeasure::Psi(PsiMeasure::Induced { density: f, .. }) => {
                    direct(k1, k2, kind, f, &rule)
                }
                PairMeasure::Psi(PsiMeasure::Atoms(atoms)) => {
                    direct_psi(k1, k2, kind, atoms, &rule, opts.slice_resolution)
                }
                PairMeasure::Discrete(_) => unreachable!(),
            }
        }
        (Method::Discrete, PairMeasure::Discrete(theta0)) => discrete(k1, k2, kind, theta0),
        (Method::Montecarlo, PairMeasure::Zonal(f) | PairMeasure::Psi(PsiMeasure::Induced { density: f, .. })) => {
            let cfg = opts
                .montecarlo
                .clone()
                .ok_or_else(|| Error::Domain("the montecarlo route needs a sample count and a seed".into()))?;
            montecarlo(k1, k2, element, f, &cfg)
        }
        _ => Err(unsupported(method, measure)),
    }
}

/// Routes that apply to `measure`, in the order of [`Method::ALL`].
pub fn applicable_methods(measure: &PairMeasure) -> Vec<Method> {
    Method::ALL
        .into_iter()
        .filter(|m| match (m, measure) {
            (Method::Discrete, PairMeasure::Discrete(_)) => true,
            (Method::Discrete, _) | (_, PairMeasure::Discrete(_)) => false,
            (Method::Montecarlo, PairMeasure::Psi(PsiMeasure::Atoms(_))) => false,
            _ => true,
        })
        .collect()
}

/// Crofton's hyperplane formula with the normalized motion-invariant
/// measure: `ω_d^{-1} ∫ (h(u) + h(-u)) dσ(u)`, the mean width.
pub fn crofton_hyperplanes(body: &Body, rule: &SphereRule) -> Result<f64> {
    check_dim(body.dim(), rule.d)?;
    // slab of offsets s with -h(-u) <= s <= h(u), averaged over directions
    let slab = rule.integrate(|u| body.function(FunctionKind::Width).eval(u));
    Ok(slab / omega(body.dim()))
}

/// Crofton's line formula `a ∫ b dσ` with `a = 4 / ω_d`, which equals
/// `2 c_d S(K)` for `c_d = 2 κ_{d-1} / ω_d`.
pub fn crofton_lines(body: &Body, rule: &SphereRule) -> Result<f64> {
    check_dim(body.dim(), rule.d)?;
    let d = body.dim();
    Ok(4.0 / omega(d) * rule.integrate(|u| body.function(FunctionKind::Brightness).eval(u)))
}

/// `2 c_d` in the normalization of [`crofton_lines`].
pub fn crofton_lines_constant(d: usize) -> f64 {
    4.0 * kappa(d - 1) / omega(d)
}
