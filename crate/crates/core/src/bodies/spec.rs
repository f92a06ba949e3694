//! JSON body descriptions and their validation.

use serde::{Deserialize, Serialize};

/// One `order`-th harmonic term `cos · cos(kθ) + sin · sin(kθ)` of a planar
/// support function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrigTerm {
    pub order: usize,
    #[serde(default)]
    pub cos: f64,
    #[serde(default)]
    pub sin: f64,
}

/// Variant-specific fields of a body description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ShapeSpec {
    Ball {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        center: Option<Vec<f64>>,
        radius: f64,
    },
    Polytope {
        vertices: Vec<Vec<f64>>,
    },
    Ellipsoid {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        center: Option<Vec<f64>>,
        shape: Vec<Vec<f64>>,
    },
    /// `h(θ) = mean + Σ cos_k cos kθ + sin_k sin kθ`.
    #[serde(rename = "trig2d")]
    Trig2D {
        mean: f64,
        #[serde(default)]
        coefficients: Vec<TrigTerm>,
    },
    Reuleaux {
        n: usize,
        width: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        center: Option<Vec<f64>>,
        /// Polar angle of the first vertex relative to `+y`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        angle: Option<f64>,
    },
    /// Solid swept by a planar profile turned about `axis`. The profile's
    /// `y` axis is mapped to `axis`.
    Revolution {
        axis: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        center: Option<Vec<f64>>,
        profile: Box<BodySpec>,
    },
}

/// A body description as read from a file: `{"dim": 2|3, "kind": ..., ...}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BodySpec {
    pub dim: usize,
    #[serde(flatten)]
    pub shape: ShapeSpec,
}

impl BodySpec {
    pub fn kind(&self) -> &'static str {
        match self.shape {
            ShapeSpec::Ball { .. } => "ball",
            ShapeSpec::Polytope { .. } => "polytope",
            ShapeSpec::Ellipsoid { .. } => "ellipsoid",
            ShapeSpec::Trig2D { .. } => "trig2d",
            ShapeSpec::Reuleaux { .. } => "reuleaux",
            ShapeSpec::Revolution { .. } => "revolution",
        }
    }
}
