//! Translation invariant pair measures `Θ` and their Legendre moments.
//!
//! A measure is given in one of three forms:
//!
//! * a [`ZonalDensity`] `F`, meaning `Θ = F(|⟨u₁, u₂⟩|) (σ ⊗ ds) ⊗ (σ ⊗ ds)`
//!   on pairs `(u_i, s_i) ∈ S^{d-1} × ℝ`. The parametrization is the
//!   unnormalized one: each hyperplane is reached from both `±u`.
//! * a [`PsiMeasure`], the even measure `ψ` on `[-1, 1]` of the inner
//!   product of the two directions. `F` induces
//!   `ψ(dt) = ω_{d-1} F(|t|) (1 - t²)^{(d-3)/2} dt`.
//! * a [`DiscretePairMeasure`] `Θ₀ = Σ c δ_(u, v)` on direction pairs, for
//!   which `I = Σ c w₁(u) w₂(v)` exactly.
//!
//! Signed densities are accepted. Legendre probes `F = P_k(d; ·)` are
//! signed, and every identity used here is linear in `Θ`.

mod beta;
mod sampling;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{check_body_dim, check_dim, spec_err};
use crate::geometry::{check_unit, vector_from_slice};
use crate::harmonics::{kappa, omega, SphereRule};
use crate::{Error, Result, Vector};

pub use beta::{beta_from_density, beta_from_psi, kappa_theta, lambda_theta, psi_from_density, BetaTable};
pub use sampling::{sample_hyperplane_pair, sample_line_pair, uniform_direction, HyperplanePair, LinePair};

/// Density `F` of a zonal pair measure, evaluated at `|⟨u₁, u₂⟩|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ZonalDensity {
    Constant { value: f64 },
    /// `F(t) = Σ c_m P_m(dim; t)` over even `m`.
    Legendre {
        dim: usize,
        #[serde(with = "coeff_map")]
        coeffs: BTreeMap<usize, f64>,
    },
    /// `F = P_k(d; ·)` in the dimension of use.
    Probe { k: usize },
}

impl ZonalDensity {
    pub fn constant(value: f64) -> Result<Self> {
        let f = Self::Constant { value };
        f.validate()?;
        Ok(f)
    }

    pub fn legendre(dim: usize, coeffs: impl IntoIterator<Item = (usize, f64)>) -> Result<Self> {
        let f = Self::Legendre { dim, coeffs: coeffs.into_iter().collect() };
        f.validate()?;
        Ok(f)
    }

    pub fn probe(k: usize) -> Result<Self> {
        let f = Self::Probe { k };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Constant { value } => {
                if !(value.is_finite() && *value >= 0.0) {
                    return Err(spec_err(format!("constant density must be finite and >= 0, got {value}")));
                }
            }
            Self::Legendre { dim, coeffs } => {
                if *dim < 2 {
                    return Err(spec_err(format!("legendre density dimension must be >= 2, got {dim}")));
                }
                for (&m, c) in coeffs {
                    if m % 2 == 1 {
                        return Err(spec_err(format!("legendre density carries odd order {m}")));
                    }
                    if !c.is_finite() {
                        return Err(spec_err(format!("legendre coefficient {m} is not finite")));
                    }
                }
            }
            Self::Probe { k } => {
                if *k < 2 || k % 2 == 1 {
                    return Err(spec_err(format!("probe order must be even and >= 2, got {k}")));
                }
            }
        }
        Ok(())
    }

    /// The dimension the density is tied to, if any.
    pub fn dim(&self) -> Option<usize> {
        match self {
            Self::Legendre { dim, .. } => Some(*dim),
            _ => None,
        }
    }

    fn check_dim(&self, d: usize) -> Result<()> {
        match self.dim() {
            Some(own) => check_dim(own, d),
            None if d < 2 => Err(Error::Domain(format!("dimension must be >= 2, got {d}"))),
            None => Ok(()),
        }
    }

    /// Polynomial degree of `F`.
    pub fn degree(&self) -> usize {
        match self {
            Self::Constant { .. } => 0,
            Self::Legendre { coeffs, .. } => {
                coeffs.iter().filter(|(_, c)| **c != 0.0).map(|(m, _)| *m).max().unwrap_or(0)
            }
            Self::Probe { k } => *k,
        }
    }

    /// Legendre coefficients in dimension `d`.
    pub fn coefficients(&self, d: usize) -> Result<BTreeMap<usize, f64>> {
        self.check_dim(d)?;
        Ok(match self {
            Self::Constant { value } => BTreeMap::from([(0, *value)]),
            Self::Legendre { coeffs, .. } => coeffs.clone(),
            Self::Probe { k } => BTreeMap::from([(*k, 1.0)]),
        })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Self::Constant { value } => *value == 0.0,
            Self::Legendre { coeffs, .. } => coeffs.values().all(|c| *c == 0.0),
            Self::Probe { .. } => false,
        }
    }

    /// Whether `F >= 0` is guaranteed by construction.
    pub fn is_nonnegative(&self) -> bool {
        match self {
            Self::Constant { .. } => true,
            Self::Legendre { coeffs, .. } => coeffs.iter().all(|(m, c)| *m == 0 && *c >= 0.0),
            Self::Probe { .. } => false,
        }
    }

    /// Total variation bound `ω_d Σ |c_m|` of the induced `ψ`: `|P_m| <= 1`,
    /// and `ψ` of `F ≡ 1` has mass `ω_d`.
    pub fn variation_bound(&self, d: usize) -> Result<f64> {
        Ok(omega(d) * self.coefficients(d)?.values().map(|c| c.abs()).sum::<f64>())
    }

    /// A dense evaluator of `F(|t|)` in dimension `d`.
    pub fn evaluator(&self, d: usize) -> Result<DensityEval> {
        let coeffs = self.coefficients(d)?;
        let degree = self.degree();
        let mut dense = vec![0.0; degree + 1];
        for (m, c) in coeffs {
            if m <= degree {
                dense[m] = c;
            }
        }
        Ok(DensityEval { d, coeffs: dense })
    }

    /// `F(|t|)` in dimension `d`.
    pub fn eval(&self, d: usize, t: f64) -> Result<f64> {
        if !(t.abs() <= 1.0 + 1e-12) {
            return Err(Error::Domain(format!("density argument {t} outside [-1, 1]")));
        }
        Ok(self.evaluator(d)?.eval(t))
    }
}

/// `F(|t|)` with Legendre coefficients laid out densely.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityEval {
    d: usize,
    coeffs: Vec<f64>,
}

impl DensityEval {
    pub fn eval(&self, t: f64) -> f64 {
        let t = t.abs().min(1.0);
        let c = &self.coeffs;
        if c.len() == 1 {
            return c[0];
        }
        let dd = self.d as f64;
        let (mut prev, mut cur) = (1.0, t);
        let mut sum = c[0] + c[1] * t;
        for k in 1..c.len() - 1 {
            let kf = k as f64;
            let next = ((2.0 * kf + dd - 2.0) * t * cur - kf * prev) / (kf + dd - 2.0);
            prev = cur;
            cur = next;
            sum += c[k + 1] * cur;
        }
        sum
    }
}

/// Even measure on `[-1, 1]`, either as atoms or induced by a density.
#[derive(Debug, Clone, PartialEq)]
pub enum PsiMeasure {
    /// `(t, mass)` pairs; masses may be signed.
    Atoms(Vec<(f64, f64)>),
    Induced { density: ZonalDensity, dim: usize },
}

impl PsiMeasure {
    /// Validates evenness: each atom `(t, m)` with `t != 0` has a partner `(-t, m)`.
    pub fn atoms(atoms: Vec<(f64, f64)>) -> Result<Self> {
        for &(t, m) in &atoms {
            if !(t.is_finite() && t.abs() <= 1.0) || !m.is_finite() {
                return Err(spec_err(format!("psi atom ({t}, {m}) is not a finite point of [-1, 1]")));
            }
        }
        let mut pending: Vec<(f64, f64)> = atoms.iter().copied().filter(|a| a.0 != 0.0).collect();
        pending.sort_by(|a, b| a.0.abs().total_cmp(&b.0.abs()).then(a.0.total_cmp(&b.0)));
        let mut used = vec![false; pending.len()];
        for i in 0..pending.len() {
            if used[i] {
                continue;
            }
            let (t, m) = pending[i];
            let partner = (0..pending.len()).find(|&j| {
                !used[j] && j != i && (pending[j].0 + t).abs() <= 1e-12 && (pending[j].1 - m).abs() <= 1e-12 * m.abs().max(1e-300)
            });
            match partner {
                Some(j) => {
                    used[i] = true;
                    used[j] = true;
                }
                None => return Err(spec_err(format!("psi is not even: atom ({t}, {m}) has no mirror"))),
            }
        }
        Ok(Self::Atoms(atoms))
    }

    pub fn induced(density: ZonalDensity, dim: usize) -> Result<Self> {
        density.validate()?;
        density.check_dim(dim)?;
        Ok(Self::Induced { density, dim })
    }

    /// Total mass; for induced measures this is `β₀`.
    pub fn total_mass(&self) -> Result<f64> {
        match self {
            Self::Atoms(a) => Ok(a.iter().map(|x| x.1).sum()),
            Self::Induced { density, dim } => Ok(beta_from_density(density, *dim, 0)?.values[0]),
        }
    }

    /// `Σ |mass|`, an upper bound for every `|β_m|`.
    pub fn variation_bound(&self, d: usize) -> Result<f64> {
        match self {
            Self::Atoms(a) => Ok(a.iter().map(|x| x.1.abs()).sum()),
            Self::Induced { density, dim } => {
                check_dim(*dim, d)?;
                density.variation_bound(d)
            }
        }
    }
}

/// One atom `c · δ_(u, v)` of a discrete direction-pair measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairAtom {
    pub u: Vector,
    pub v: Vector,
    pub c: f64,
}

/// `Θ₀ = Σ c δ_(u, v)` on pairs of directions.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretePairMeasure {
    pub d: usize,
    pub atoms: Vec<PairAtom>,
}

impl DiscretePairMeasure {
    /// Atoms need unit directions and finite nonnegative weights.
    pub fn new(d: usize, atoms: Vec<PairAtom>) -> Result<Self> {
        check_body_dim(d)?;
        for a in &atoms {
            check_unit(&a.u, d).map_err(|e| spec_err(e.to_string()))?;
            check_unit(&a.v, d).map_err(|e| spec_err(e.to_string()))?;
            if !(a.c.is_finite() && a.c >= 0.0) {
                return Err(spec_err(format!("atom weight must be finite and >= 0, got {}", a.c)));
            }
        }
        Ok(Self { d, atoms })
    }

    /// Product discretization `Σ_ij w_i w_j F(|⟨u_i, u_j⟩|) δ_(u_i, u_j)`
    /// of a zonal measure over the nodes of `rule`. Weights carry the sign
    /// of `F`.
    pub fn from_density(density: &ZonalDensity, rule: &SphereRule) -> Result<Self> {
        let eval = density.evaluator(rule.d)?;
        let mut atoms = Vec::with_capacity(rule.len() * rule.len());
        for (u, wu) in rule.nodes.iter().zip(&rule.weights) {
            for (v, wv) in rule.nodes.iter().zip(&rule.weights) {
                let c = wu * wv * eval.eval(u.dot(v));
                if c != 0.0 {
                    atoms.push(PairAtom { u: *u, v: *v, c });
                }
            }
        }
        Ok(Self { d: rule.d, atoms })
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.c).sum()
    }
}

/// A pair measure in any of its supported representations.
#[derive(Debug, Clone, PartialEq)]
pub enum PairMeasure {
    Zonal(ZonalDensity),
    Psi(PsiMeasure),
    Discrete(DiscretePairMeasure),
}

impl PairMeasure {
    pub fn from_spec(spec: &MeasureSpec) -> Result<Self> {
        Ok(match spec {
            MeasureSpec::Constant { value } => Self::Zonal(ZonalDensity::constant(*value)?),
            MeasureSpec::Legendre { dim, coeffs } => {
                Self::Zonal(ZonalDensity::legendre(*dim, coeffs.iter().map(|(m, c)| (*m, *c)))?)
            }
            MeasureSpec::Probe { k } => Self::Zonal(ZonalDensity::probe(*k)?),
            MeasureSpec::Discrete { dim, atoms } => {
                let atoms = atoms
                    .iter()
                    .map(|a| {
                        Ok(PairAtom {
                            u: vector_from_slice(&a.u, *dim, "atom direction u")?,
                            v: vector_from_slice(&a.v, *dim, "atom direction v")?,
                            c: a.c,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::Discrete(DiscretePairMeasure::new(*dim, atoms)?)
            }
            MeasureSpec::Psi { dim, atoms, density } => match (atoms, density) {
                (Some(atoms), None) => Self::Psi(PsiMeasure::atoms(atoms.iter().map(|a| (a.t, a.mass)).collect())?),
                (None, Some(density)) => {
                    let dim = dim.ok_or_else(|| spec_err("induced psi needs `dim`"))?;
                    Self::Psi(PsiMeasure::induced((**density).clone(), dim)?)
                }
                _ => return Err(spec_err("psi needs exactly one of `atoms` or `density`")),
            },
        })
    }

    /// The dimension fixed by the measure itself, if any.
    pub fn dim(&self) -> Option<usize> {
        match self {
            Self::Zonal(f) => f.dim(),
            Self::Psi(PsiMeasure::Induced { dim, .. }) => Some(*dim),
            Self::Psi(PsiMeasure::Atoms(_)) => None,
            Self::Discrete(m) => Some(m.d),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Zonal(ZonalDensity::Constant { .. }) => "constant",
            Self::Zonal(ZonalDensity::Legendre { .. }) => "legendre",
            Self::Zonal(ZonalDensity::Probe { .. }) => "probe",
            Self::Psi(_) => "psi",
            Self::Discrete(_) => "discrete",
        }
    }

    /// `β_m[Θ]` for `m <= max_order`; discrete measures have no zonal moments.
    pub fn beta(&self, d: usize, max_order: usize) -> Result<BetaTable> {
        match self {
            Self::Zonal(f) => beta_from_density(f, d, max_order),
            Self::Psi(psi) => beta_from_psi(psi, d, max_order),
            Self::Discrete(_) => Err(Error::Unsupported(
                "discrete pair measures are not rotation invariant and have no Legendre moments".into(),
            )),
        }
    }

    /// `λ[Θ] = I(B^d, B^d, Θ) / 4`.
    pub fn lambda(&self, d: usize) -> Result<f64> {
        match self {
            Self::Discrete(m) => {
                check_dim(m.d, d)?;
                Ok(m.total_mass())
            }
            _ => Ok(lambda_theta(&self.beta(d, 0)?)),
        }
    }

    /// `κ[Θ] = J(B^d, B^d, Θ) / S(B^d)²`.
    pub fn kappa(&self, d: usize) -> Result<f64> {
        match self {
            Self::Discrete(m) => {
                check_dim(m.d, d)?;
                Ok(m.total_mass() * (kappa(d - 1) / omega(d)).powi(2))
            }
            _ => Ok(kappa_theta(&self.beta(d, 0)?)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomSpec {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsiAtomSpec {
    pub t: f64,
    pub mass: f64,
}

/// Legendre coefficients keyed by order. JSON object keys are strings, and
/// internally tagged enums do not coerce them to integers on their own.
mod coeff_map {
    use std::collections::BTreeMap;

    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(map: &BTreeMap<usize, f64>, s: S) -> Result<S::Ok, S::Error> {
        map.iter().map(|(m, c)| (m.to_string(), *c)).collect::<BTreeMap<String, f64>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<usize, f64>, D::Error> {
        let raw = BTreeMap::<String, f64>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, c)| {
                k.trim()
                    .parse::<usize>()
                    .map(|m| (m, c))
                    .map_err(|_| D::Error::custom(format!("Legendre order `{k}` is not a non-negative integer")))
            })
            .collect()
    }
}

/// Measure description as read from a file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MeasureSpec {
    Constant {
        value: f64,
    },
    Legendre {
        dim: usize,
        #[serde(with = "coeff_map")]
        coeffs: BTreeMap<usize, f64>,
    },
    Probe {
        k: usize,
    },
    Discrete {
        dim: usize,
        atoms: Vec<AtomSpec>,
    },
    Psi {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        atoms: Option<Vec<PsiAtomSpec>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        density: Option<Box<ZonalDensity>>,
    },
}
