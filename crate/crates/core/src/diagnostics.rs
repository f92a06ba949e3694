//! Mode spectra of width and brightness functions, Legendre probes, and
//! finite-mode constant width / constant brightness verdicts.
//!
//! A body has constant width exactly when every probe `I(K, K, P_k)`,
//! `k >= 2` even, vanishes, since the probe isolates `(ω_d / N(d,k)) ‖π_k w‖²`.
//! Only modes up to `M` can be scanned, so a verdict is a certificate up to
//! that order and tolerance; the energy beyond `M` is reported alongside.

use serde::Serialize;

use crate::bodies::{Body, FunctionKind};
use crate::error::check_dim;
use crate::functionals::spectral;
use crate::harmonics::{mode_correlations, SphereRule};
use crate::measures::{beta_from_density, ZonalDensity};
use crate::{Error, Result};

/// Default relative tolerance of verdicts.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;
/// Default highest mode scanned by verdicts.
pub const DEFAULT_MAX_ORDER: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeEnergy {
    pub m: usize,
    pub energy: f64,
}

/// Even-mode energies `‖π_m f‖²` of a width or brightness function.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub kind: FunctionKind,
    pub d: usize,
    #[serde(rename = "M")]
    pub max_order: usize,
    pub tolerance: f64,
    pub energies: Vec<ModeEnergy>,
    /// `(f, f)`.
    pub total_energy: f64,
    /// `(f, f) - Σ_{m <= M} ‖π_m f‖²`, the part above `M`.
    pub residual_energy: f64,
    /// `Σ_{2 <= m <= M, m even} ‖π_m f‖²`.
    pub nonconstant_energy: f64,
    pub verdict: bool,
    /// Smallest even `m >= 2` whose energy exceeds `tol · (f, f)`.
    pub first_failing_mode: Option<usize>,
}

impl SpectrumReport {
    pub fn energy(&self, m: usize) -> Option<f64> {
        self.energies.iter().find(|e| e.m == m).map(|e| e.energy)
    }
}

/// Spectrum of `w_K` (or `b_K`) up to order `max_order`. Odd modes vanish
/// by evenness and are left out.
pub fn spectrum(body: &Body, kind: FunctionKind, max_order: usize, tol: f64, rule: &SphereRule) -> Result<SpectrumReport> {
    check_dim(body.dim(), rule.d)?;
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::Domain(format!("tolerance must be finite and >= 0, got {tol}")));
    }
    let f = body.function(kind).sample(rule)?;
    let corr = mode_correlations(&f, &f, max_order, rule)?;
    let total_energy: f64 = f.iter().zip(&rule.weights).map(|(x, w)| x * x * w).sum();
    let energies: Vec<ModeEnergy> = (0..=max_order)
        .step_by(2)
        .map(|m| ModeEnergy { m, energy: corr.values[m] })
        .collect();
    let captured: f64 = energies.iter().map(|e| e.energy).sum();
    let nonconstant_energy: f64 = energies.iter().filter(|e| e.m >= 2).map(|e| e.energy).sum();
    let residual_energy = total_energy - captured;
    let bound = tol * total_energy;
    let first_failing_mode = energies.iter().find(|e| e.m >= 2 && e.energy > bound).map(|e| e.m);
    Ok(SpectrumReport {
        kind,
        d: body.dim(),
        max_order,
        tolerance: tol,
        verdict: nonconstant_energy <= bound && residual_energy <= bound,
        energies,
        total_energy,
        residual_energy,
        nonconstant_energy,
        first_failing_mode,
    })
}

pub fn width_spectrum(body: &Body, max_order: usize, tol: f64, rule: &SphereRule) -> Result<SpectrumReport> {
    spectrum(body, FunctionKind::Width, max_order, tol, rule)
}

pub fn brightness_spectrum(body: &Body, max_order: usize, tol: f64, rule: &SphereRule) -> Result<SpectrumReport> {
    spectrum(body, FunctionKind::Brightness, max_order, tol, rule)
}

/// `I(K, K, Θ_k)` (or `J`) for the probe density `F = P_k(d; ·)`, i.e.
/// `β_k ‖π_k f‖²` with `β_k` from the Gauss–Jacobi moment formula.
pub fn probe(body: &Body, k: usize, kind: FunctionKind, rule: &SphereRule) -> Result<f64> {
    let density = ZonalDensity::probe(k)?;
    let beta = beta_from_density(&density, body.dim(), k)?;
    Ok(spectral(body, body, kind, &beta, k, rule)?.value)
}

/// Both verdicts with their spectra.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub constant_width: bool,
    pub constant_brightness: bool,
    #[serde(rename = "M")]
    pub max_order: usize,
    pub tolerance: f64,
    pub width: SpectrumReport,
    pub brightness: SpectrumReport,
}

/// Constant width and constant brightness verdicts, certified for modes
/// `<= max_order` at relative tolerance `tol`.
pub fn classify(body: &Body, max_order: usize, tol: f64, rule: &SphereRule) -> Result<Classification> {
    if max_order < 4 {
        return Err(Error::Domain(format!("classification needs M >= 4, got {max_order}")));
    }
    let width = width_spectrum(body, max_order, tol, rule)?;
    let brightness = brightness_spectrum(body, max_order, tol, rule)?;
    Ok(Classification {
        constant_width: width.verdict,
        constant_brightness: brightness.verdict,
        max_order,
        tolerance: tol,
        width,
        brightness,
    })
}
