use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{default_spectral_rule, evaluate, Element, EvalOptions, Method, PairIntegralResult};
use crate::bodies::Body;
use crate::measures::PairMeasure;
use crate::{Error, Result};

/// The identities checked by [`theorem_residuals`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    /// Constant width pair: `I = λ[Θ] W(K₁) W(K₂)`.
    #[serde(rename = "T1.1")]
    ConstantWidth,
    /// Constant brightness pair: `J = κ[Θ] S(K₁) S(K₂)`.
    #[serde(rename = "T1.2")]
    ConstantBrightness,
    /// `K₁` of constant width and `Θ` rotation invariant: `I = λ[Θ] W(K₁) W(K₂)`.
    #[serde(rename = "T1.3")]
    OneConstantWidth,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::ConstantWidth => "T1.1",
            Theorem::ConstantBrightness => "T1.2",
            Theorem::OneConstantWidth => "T1.3",
        }
    }

    pub fn element(self) -> Element {
        match self {
            Theorem::ConstantBrightness => Element::Lines,
            _ => Element::Hyperplanes,
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim_start_matches(['T', 't']) {
            "1.1" => Ok(Theorem::ConstantWidth),
            "1.2" => Ok(Theorem::ConstantBrightness),
            "1.3" => Ok(Theorem::OneConstantWidth),
            _ => Err(Error::Spec(format!("unknown theorem `{s}`; expected T1.1, T1.2 or T1.3"))),
        }
    }
}

/// Left side, prediction and their discrepancy for one theorem.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremResidual {
    pub theorem: Theorem,
    pub value: f64,
    pub predicted: f64,
    /// `λ[Θ]` or `κ[Θ]`.
    pub constant: f64,
    /// `W(K_i)` or `S(K_i)`.
    pub global: [f64; 2],
    pub absolute: f64,
    /// `absolute / |predicted|`, or `absolute` when the prediction is 0.
    pub relative: f64,
    pub evaluation: PairIntegralResult,
}

/// Evaluates a theorem identity. `method` defaults to the exact route for
/// discrete measures and to the spectral route otherwise; global
/// quantities use the spectral quadrature rule.
pub fn theorem_residuals(
    k1: &Body,
    k2: &Body,
    measure: &PairMeasure,
    theorem: Theorem,
    method: Option<Method>,
    opts: &EvalOptions,
) -> Result<TheoremResidual> {
    if theorem == Theorem::OneConstantWidth && matches!(measure, PairMeasure::Discrete(_)) {
        return Err(Error::Unsupported(
            "T1.3 needs a rotation invariant measure (zonal density or psi), not discrete atoms".into(),
        ));
    }
    let d = k1.dim();
    let method = method.unwrap_or(match measure {
        PairMeasure::Discrete(_) => Method::Discrete,
        _ => Method::Spectral,
    });
    let evaluation = evaluate(k1, k2, theorem.element(), measure, method, opts)?;
    let rule = match &opts.spectral_rule {
        Some(r) => r.clone(),
        None => default_spectral_rule(d)?,
    };
    let (constant, global) = match theorem.element() {
        Element::Hyperplanes => (measure.lambda(d)?, [k1.mean_width(&rule)?, k2.mean_width(&rule)?]),
        Element::Lines => (measure.kappa(d)?, [k1.surface_area(&rule)?, k2.surface_area(&rule)?]),
    };
    let predicted = constant * global[0] * global[1];
    let absolute = (evaluation.value - predicted).abs();
    let relative = if predicted != 0.0 { absolute / predicted.abs() } else { absolute };
    Ok(TheoremResidual {
        theorem,
        value: evaluation.value,
        predicted,
        constant,
        global,
        absolute,
        relative,
        evaluation,
    })
}
