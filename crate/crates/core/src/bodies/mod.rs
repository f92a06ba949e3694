//! Convex bodies in the plane and in space.
//!
//! A [`Body`] is a validated [`BodySpec`]. Every body exposes its support
//! function `h`, the width `w(u) = h(u) + h(-u)`, the brightness `b(u)`
//! (area or length of the shadow on `u^⊥`), hit tests for hyperplanes and
//! lines, and the global quantities `W(K)` (mean width) and `S(K)`
//! (surface area).
//!
//! Planar bodies live in the `z = 0` plane of [`Vector`]; planar directions
//! must have a zero `z` component.

pub mod hull;
pub mod spec;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{check_body_dim, check_dim, spec_err};
use crate::geometry::{check_unit, orthonormal_basis, planar, rot90, vector_from_slice};
use crate::harmonics::{kappa, omega, SphereRule};
use crate::{Error, Matrix, Result, Vector};

pub use spec::{BodySpec, ShapeSpec, TrigTerm};

/// Grid on which planar support series are checked for convexity.
pub const CONVEXITY_GRID: usize = 4096;
/// Directions scanned by the generic line-hit test in `u^⊥`.
pub const LINE_SCAN_DIRECTIONS: usize = 512;
/// Trapezoid nodes along the shadow boundary of a body of revolution.
pub const SHADOW_NODES: usize = 2048;

#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Ball {
        center: Vector,
        radius: f64,
    },
    Polytope {
        vertices: Vec<Vector>,
    },
    /// `{x : (x - c)ᵀ Q⁻¹ (x - c) <= 1}`; planar shapes carry `Q₃₃ = 1`.
    Ellipsoid {
        center: Vector,
        q: Matrix,
        q_inv: Matrix,
        det: f64,
    },
    Trig {
        mean: f64,
        terms: Vec<TrigTerm>,
    },
    /// Vertices are stored relative to `center`.
    Reuleaux {
        n: usize,
        width: f64,
        center: Vector,
        angle: f64,
        vertices: Vec<Vector>,
    },
    Revolution {
        axis: Vector,
        center: Vector,
        profile: Box<Body>,
    },
}

/// A validated convex body. Immutable; evaluation is pure.
#[derive(Debug, Clone, PartialEq)]
pub struct Body {
    dim: usize,
    shape: Shape,
}

/// Which body function a computation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FunctionKind {
    Width,
    Brightness,
}

impl FunctionKind {
    pub fn name(self) -> &'static str {
        match self {
            FunctionKind::Width => "width",
            FunctionKind::Brightness => "brightness",
        }
    }
}

/// A width or brightness function bound to a body.
#[derive(Debug, Clone, Copy)]
pub struct BodyFunction<'a> {
    pub body: &'a Body,
    pub kind: FunctionKind,
}

impl BodyFunction<'_> {
    pub fn value(&self, u: &Vector) -> Result<f64> {
        match self.kind {
            FunctionKind::Width => self.body.width(u),
            FunctionKind::Brightness => self.body.brightness(u),
        }
    }

    pub(crate) fn eval(&self, u: &Vector) -> f64 {
        match self.kind {
            FunctionKind::Width => self.body.w(u),
            FunctionKind::Brightness => self.body.b(u),
        }
    }

    /// Values at the nodes of `rule`.
    pub fn sample(&self, rule: &SphereRule) -> Result<Vec<f64>> {
        check_dim(self.body.dim, rule.d)?;
        Ok(rule.sample(|u| self.eval(u)))
    }
}

fn finite(x: f64, what: &str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(spec_err(format!("{what} is not finite")))
    }
}

fn positive(x: f64, what: &str) -> Result<f64> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(spec_err(format!("{what} must be positive, got {x}")))
    }
}

fn check_point(p: &Vector, d: usize, what: &str) -> Result<()> {
    if !(p.x.is_finite() && p.y.is_finite() && p.z.is_finite()) {
        return Err(spec_err(format!("{what} is not finite")));
    }
    if d == 2 && p.z != 0.0 {
        return Err(spec_err(format!("{what} of a planar body has a z component")));
    }
    Ok(())
}

fn to_vec(p: &Vector, d: usize) -> Vec<f64> {
    p.iter().take(d).copied().collect()
}

/// Representative of `±u` used wherever a computation must be exactly even.
fn canonical(u: &Vector) -> Vector {
    let first = [u.x, u.y, u.z].into_iter().find(|c| *c != 0.0).unwrap_or(0.0);
    if first < 0.0 {
        -u
    } else {
        *u
    }
}

fn wrap_angle(a: f64) -> f64 {
    let r = a.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

fn trig_series(mean: f64, terms: &[TrigTerm], theta: f64) -> (f64, f64, f64) {
    let (mut h, mut dh, mut ddh) = (mean, 0.0, 0.0);
    for t in terms {
        let k = t.order as f64;
        let (s, c) = (k * theta).sin_cos();
        let v = t.cos * c + t.sin * s;
        h += v;
        dh += k * (t.sin * c - t.cos * s);
        ddh -= k * k * v;
    }
    (h, dh, ddh)
}

fn reuleaux_vertices(n: usize, width: f64, angle: f64) -> Vec<Vector> {
    let r = width / (2.0 * (PI / (2.0 * n as f64)).cos());
    (0..n).map(|j| r * planar(vertex_angle(n, angle, j))).collect()
}

fn vertex_angle(n: usize, angle: f64, j: usize) -> f64 {
    PI / 2.0 + angle + 2.0 * PI * j as f64 / n as f64
}

impl Body {
    pub fn from_spec(spec: &BodySpec) -> Result<Self> {
        let d = spec.dim;
        check_body_dim(d)?;
        let point = |p: &Option<Vec<f64>>, what: &str| match p {
            Some(v) => vector_from_slice(v, d, what),
            None => Ok(Vector::zeros()),
        };
        match &spec.shape {
            ShapeSpec::Ball { center, radius } => Self::ball(d, point(center, "ball center")?, *radius),
            ShapeSpec::Polytope { vertices } => {
                let vs = vertices
                    .iter()
                    .map(|v| vector_from_slice(v, d, "vertex"))
                    .collect::<Result<Vec<_>>>()?;
                Self::polytope(d, vs)
            }
            ShapeSpec::Ellipsoid { center, shape } => {
                if shape.len() != d || shape.iter().any(|row| row.len() != d) {
                    return Err(spec_err(format!("ellipsoid shape must be a {d}x{d} matrix")));
                }
                let mut q = Matrix::identity();
                for i in 0..d {
                    for j in 0..d {
                        q[(i, j)] = finite(shape[i][j], "ellipsoid shape entry")?;
                    }
                }
                Self::ellipsoid(d, point(center, "ellipsoid center")?, q)
            }
            ShapeSpec::Trig2D { mean, coefficients } => {
                check_dim(2, d)?;
                Self::trig2d(*mean, coefficients.clone())
            }
            ShapeSpec::Reuleaux { n, width, center, angle } => {
                check_dim(2, d)?;
                Self::reuleaux_at(*n, *width, point(center, "reuleaux center")?, angle.unwrap_or(0.0))
            }
            ShapeSpec::Revolution { axis, center, profile } => {
                check_dim(3, d)?;
                let axis = vector_from_slice(axis, 3, "axis")?;
                let profile = Self::from_spec(profile)?;
                Self::revolution(axis, point(center, "revolution center")?, profile)
            }
        }
    }

    pub fn to_spec(&self) -> BodySpec {
        let d = self.dim;
        let shape = match &self.shape {
            Shape::Ball { center, radius } => ShapeSpec::Ball {
                center: Some(to_vec(center, d)),
                radius: *radius,
            },
            Shape::Polytope { vertices } => ShapeSpec::Polytope {
                vertices: vertices.iter().map(|v| to_vec(v, d)).collect(),
            },
            Shape::Ellipsoid { center, q, .. } => ShapeSpec::Ellipsoid {
                center: Some(to_vec(center, d)),
                shape: (0..d).map(|i| (0..d).map(|j| q[(i, j)]).collect()).collect(),
            },
            Shape::Trig { mean, terms } => ShapeSpec::Trig2D {
                mean: *mean,
                coefficients: terms.clone(),
            },
            Shape::Reuleaux { n, width, center, angle, .. } => ShapeSpec::Reuleaux {
                n: *n,
                width: *width,
                center: Some(to_vec(center, d)),
                angle: Some(*angle),
            },
            Shape::Revolution { axis, center, profile } => ShapeSpec::Revolution {
                axis: to_vec(axis, 3),
                center: Some(to_vec(center, 3)),
                profile: Box::new(profile.to_spec()),
            },
        };
        BodySpec { dim: d, shape }
    }

    pub fn ball(dim: usize, center: Vector, radius: f64) -> Result<Self> {
        check_body_dim(dim)?;
        check_point(&center, dim, "ball center")?;
        let radius = positive(radius, "ball radius")?;
        Ok(Self { dim, shape: Shape::Ball { center, radius } })
    }

    pub fn unit_ball(dim: usize) -> Result<Self> {
        Self::ball(dim, Vector::zeros(), 1.0)
    }

    pub fn polytope(dim: usize, vertices: Vec<Vector>) -> Result<Self> {
        check_body_dim(dim)?;
        if vertices.is_empty() {
            return Err(spec_err("polytope needs at least one vertex"));
        }
        for v in &vertices {
            check_point(v, dim, "vertex")?;
        }
        Ok(Self { dim, shape: Shape::Polytope { vertices } })
    }

    /// Axis-parallel box `[lo, hi]` in space.
    pub fn cuboid(lo: Vector, hi: Vector) -> Result<Self> {
        if (0..3).any(|i| lo[i] > hi[i]) {
            return Err(spec_err("cuboid corners are not ordered"));
        }
        let vertices = (0..8)
            .map(|k: usize| Vector::from_fn(|i, _| if k >> i & 1 == 1 { hi[i] } else { lo[i] }))
            .collect();
        Self::polytope(3, vertices)
    }

    /// The planar polygon or spatial box `[lo, hi]^d`.
    pub fn cube(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        match dim {
            3 => Self::cuboid(Vector::repeat(lo), Vector::repeat(hi)),
            2 => Self::polytope(
                2,
                vec![
                    Vector::new(lo, lo, 0.0),
                    Vector::new(hi, lo, 0.0),
                    Vector::new(hi, hi, 0.0),
                    Vector::new(lo, hi, 0.0),
                ],
            ),
            _ => Err(Error::Dimension { expected: 3, found: dim }),
        }
    }

    /// `q` is read in its leading `dim x dim` block.
    pub fn ellipsoid(dim: usize, center: Vector, q: Matrix) -> Result<Self> {
        check_body_dim(dim)?;
        check_point(&center, dim, "ellipsoid center")?;
        let mut q = q;
        if dim == 2 {
            for i in 0..3 {
                q[(i, 2)] = 0.0;
                q[(2, i)] = 0.0;
            }
            q[(2, 2)] = 1.0;
        }
        if q.iter().any(|x| !x.is_finite()) {
            return Err(spec_err("ellipsoid shape is not finite"));
        }
        let scale = q.amax();
        if (q - q.transpose()).amax() > 1e-12 * scale {
            return Err(spec_err("ellipsoid shape is not symmetric"));
        }
        let q = (q + q.transpose()) * 0.5;
        let eig = q.symmetric_eigen();
        if eig.eigenvalues.min() <= 0.0 {
            return Err(spec_err("ellipsoid shape is not positive definite"));
        }
        let q_inv = q
            .try_inverse()
            .ok_or_else(|| spec_err("ellipsoid shape is singular"))?;
        let det = q.determinant();
        Ok(Self { dim, shape: Shape::Ellipsoid { center, q, q_inv, det } })
    }

    /// Planar body with support `mean + Σ cos_k cos kθ + sin_k sin kθ`.
    /// Convexity `h + h'' >= 0` is checked on [`CONVEXITY_GRID`] angles.
    pub fn trig2d(mean: f64, terms: Vec<TrigTerm>) -> Result<Self> {
        let mean = positive(mean, "trig2d mean")?;
        let mut terms = terms;
        terms.sort_by_key(|t| t.order);
        for (i, t) in terms.iter().enumerate() {
            if t.order == 0 {
                return Err(spec_err("trig2d orders start at 1; use `mean` for the constant"));
            }
            if i > 0 && terms[i - 1].order == t.order {
                return Err(spec_err(format!("trig2d order {} listed twice", t.order)));
            }
            finite(t.cos, "trig2d coefficient")?;
            finite(t.sin, "trig2d coefficient")?;
        }
        let scale = mean + terms.iter().map(|t| t.cos.abs() + t.sin.abs()).sum::<f64>();
        let worst = (0..CONVEXITY_GRID)
            .map(|k| {
                let (h, _, ddh) = trig_series(mean, &terms, 2.0 * PI * k as f64 / CONVEXITY_GRID as f64);
                h + ddh
            })
            .fold(f64::INFINITY, f64::min);
        if worst < -1e-12 * scale {
            return Err(spec_err(format!(
                "trig2d support is not convex: min h + h'' = {worst:e}"
            )));
        }
        Ok(Self { dim: 2, shape: Shape::Trig { mean, terms } })
    }

    /// Reuleaux polygon centred at the origin with a vertex on `+y`.
    pub fn reuleaux(n: usize, width: f64) -> Result<Self> {
        Self::reuleaux_at(n, width, Vector::zeros(), 0.0)
    }

    /// Reuleaux polygon with vertices rotated by `angle` from `+y`.
    pub fn reuleaux_at(n: usize, width: f64, center: Vector, angle: f64) -> Result<Self> {
        if n < 3 || n % 2 == 0 {
            return Err(spec_err(format!("reuleaux polygon needs odd n >= 3, got {n}")));
        }
        let width = positive(width, "reuleaux width")?;
        let angle = finite(angle, "reuleaux angle")?;
        check_point(&center, 2, "reuleaux center")?;
        let vertices = reuleaux_vertices(n, width, angle);
        let body = Self {
            dim: 2,
            shape: Shape::Reuleaux { n, width, center, angle, vertices },
        };
        let grid = 4 * CONVEXITY_GRID;
        for k in 0..grid {
            let u = planar(2.0 * PI * k as f64 / grid as f64);
            let w = body.w(&u);
            if (w - width).abs() > 1e-12 * width.max(1.0) {
                return Err(Error::Numerical(format!(
                    "reuleaux construction failed its constant-width check: {w} vs {width}"
                )));
            }
        }
        Ok(body)
    }

    /// Solid of revolution of a planar `profile` whose `y` axis becomes
    /// `axis`. The profile must be mirror symmetric in its `y` axis.
    pub fn revolution(axis: Vector, center: Vector, profile: Body) -> Result<Self> {
        check_dim(2, profile.dim)?;
        check_point(&center, 3, "revolution center")?;
        let len = axis.norm();
        if !len.is_finite() || (len - 1.0).abs() > crate::geometry::UNIT_TOL {
            return Err(spec_err(format!("revolution axis has norm {len}, expected 1")));
        }
        let scale = 1.0 + profile.enclosing_radius();
        for k in 0..LINE_SCAN_DIRECTIONS {
            let u = planar(2.0 * PI * k as f64 / LINE_SCAN_DIRECTIONS as f64);
            let mirrored = Vector::new(-u.x, u.y, 0.0);
            if (profile.h(&u) - profile.h(&mirrored)).abs() > 1e-9 * scale {
                return Err(spec_err("revolution profile is not symmetric about its y axis"));
            }
        }
        Ok(Self {
            dim: 3,
            shape: Shape::Revolution {
                axis: axis / len,
                center,
                profile: Box::new(profile),
            },
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn kind(&self) -> &'static str {
        match self.shape {
            Shape::Ball { .. } => "ball",
            Shape::Polytope { .. } => "polytope",
            Shape::Ellipsoid { .. } => "ellipsoid",
            Shape::Trig { .. } => "trig2d",
            Shape::Reuleaux { .. } => "reuleaux",
            Shape::Revolution { .. } => "revolution",
        }
    }

    pub fn function(&self, kind: FunctionKind) -> BodyFunction<'_> {
        BodyFunction { body: self, kind }
    }

    fn check_direction(&self, u: &Vector) -> Result<()> {
        check_unit(u, self.dim)
    }

    /// Support function `h(u) = max ⟨x, u⟩` over the body.
    pub fn support(&self, u: &Vector) -> Result<f64> {
        self.check_direction(u)?;
        Ok(self.h(u))
    }

    pub fn width(&self, u: &Vector) -> Result<f64> {
        self.check_direction(u)?;
        Ok(self.w(u))
    }

    /// `(d-1)`-volume of the orthogonal projection onto `u^⊥`.
    pub fn brightness(&self, u: &Vector) -> Result<f64> {
        self.check_direction(u)?;
        Ok(self.b(u))
    }

    /// A point of the body at which `⟨·, u⟩` attains `h(u)`.
    pub fn support_point(&self, u: &Vector) -> Result<Vector> {
        self.check_direction(u)?;
        Ok(self.x(u))
    }

    pub(crate) fn h(&self, u: &Vector) -> f64 {
        match &self.shape {
            Shape::Ball { center, radius } => center.dot(u) + radius,
            Shape::Polytope { vertices } => vertices.iter().map(|v| v.dot(u)).fold(f64::NEG_INFINITY, f64::max),
            Shape::Ellipsoid { center, q, .. } => center.dot(u) + u.dot(&(q * u)).sqrt(),
            Shape::Trig { mean, terms } => trig_series(*mean, terms, u.y.atan2(u.x)).0,
            Shape::Reuleaux { center, .. } => center.dot(u) + self.reuleaux_piece(u).0,
            Shape::Revolution { center, profile, axis } => {
                let (s, z, _) = Self::meridian(axis, u);
                center.dot(u) + profile.h(&Vector::new(s, z, 0.0))
            }
        }
    }

    pub(crate) fn w(&self, u: &Vector) -> f64 {
        self.h(u) + self.h(&-u)
    }

    pub(crate) fn b(&self, u: &Vector) -> f64 {
        if self.dim == 2 {
            return self.w(&rot90(u));
        }
        match &self.shape {
            Shape::Ball { radius, .. } => PI * radius * radius,
            Shape::Ellipsoid { det, q_inv, .. } => PI * (det * u.dot(&(q_inv * u))).sqrt(),
            Shape::Polytope { vertices } => {
                hull::polygon_area(&hull::convex_hull(&hull::project(vertices, &canonical(u))))
            }
            Shape::Revolution { axis, profile, .. } => Self::revolution_shadow(axis, profile, &canonical(u)),
            Shape::Trig { .. } | Shape::Reuleaux { .. } => unreachable!("planar shapes have dim 2"),
        }
    }

    pub(crate) fn x(&self, u: &Vector) -> Vector {
        match &self.shape {
            Shape::Ball { center, radius } => center + u * *radius,
            Shape::Polytope { vertices } => {
                let h = self.h(u);
                let scale = 1.0 + self.enclosing_radius();
                let (sum, count) = vertices
                    .iter()
                    .filter(|v| v.dot(u) >= h - 1e-12 * scale)
                    .fold((Vector::zeros(), 0usize), |(s, c), v| (s + v, c + 1));
                sum / count as f64
            }
            Shape::Ellipsoid { center, q, .. } => {
                let qu = q * u;
                let mut p = center + qu / u.dot(&qu).sqrt();
                if self.dim == 2 {
                    p.z = 0.0;
                }
                p
            }
            Shape::Trig { mean, terms } => {
                let (h, dh, _) = trig_series(*mean, terms, u.y.atan2(u.x));
                h * u + dh * rot90(u)
            }
            Shape::Reuleaux { center, .. } => center + self.reuleaux_piece(u).1,
            Shape::Revolution { axis, center, profile } => center + Self::revolution_point(axis, profile, u),
        }
    }

    /// Support value and point relative to the centre: the maximum over the
    /// vertices and over the arcs whose normal range contains `u`.
    fn reuleaux_piece(&self, u: &Vector) -> (f64, Vector) {
        let Shape::Reuleaux { n, width, angle, vertices, .. } = &self.shape else {
            unreachable!()
        };
        let phi = u.y.atan2(u.x);
        let half = PI / (2.0 * *n as f64);
        let mut best = (f64::NEG_INFINITY, Vector::zeros());
        for (j, v) in vertices.iter().enumerate() {
            let hv = v.dot(u);
            if hv > best.0 {
                best = (hv, *v);
            }
            let delta = wrap_angle(phi - vertex_angle(*n, *angle, j) - PI);
            if delta.abs() <= half + 1e-15 && hv + width > best.0 {
                best = (hv + width, v + u * *width);
            }
        }
        best
    }

    /// `(sin θ, cos θ, meridian direction)` of `u` relative to `axis`.
    fn meridian(axis: &Vector, u: &Vector) -> (f64, f64, Vector) {
        let z = u.dot(axis);
        let perp = u - z * axis;
        let s = perp.norm();
        let e = if s > 1e-14 { perp / s } else { orthonormal_basis(axis).0 };
        (s, z, e)
    }

    fn revolution_point(axis: &Vector, profile: &Body, u: &Vector) -> Vector {
        let (s, z, e) = Self::meridian(axis, u);
        let p = profile.x(&Vector::new(s, z, 0.0));
        p.x * e + p.y * axis
    }

    /// Shadow area `½ ∮ (h² - h'²) dφ` of a centred body of revolution.
    fn revolution_shadow(axis: &Vector, profile: &Body, u: &Vector) -> f64 {
        let (e1, e2) = orthonormal_basis(u);
        let n = SHADOW_NODES;
        let step = 2.0 * PI / n as f64;
        let sum: f64 = (0..n)
            .map(|k| {
                let (s, c) = (k as f64 * step).sin_cos();
                let v = c * e1 + s * e2;
                let dv = -s * e1 + c * e2;
                let (ms, mz, _) = Self::meridian(axis, &v);
                let h = profile.h(&Vector::new(ms, mz, 0.0));
                let hp = Self::revolution_point(axis, profile, &v).dot(&dv);
                h * h - hp * hp
            })
            .sum();
        0.5 * sum * step
    }

    /// Radius of a ball about the origin containing the body. Exact for
    /// balls and polytopes, and for ellipsoids and Reuleaux polygons centred
    /// at the origin; otherwise `|centre|` plus the centred radius, and an
    /// upper bound for trigonometric support series.
    pub fn enclosing_radius(&self) -> f64 {
        match &self.shape {
            Shape::Ball { center, radius } => center.norm() + radius,
            Shape::Polytope { vertices } => vertices.iter().map(|v| v.norm()).fold(0.0, f64::max),
            Shape::Ellipsoid { center, q, .. } => center.norm() + q.symmetric_eigen().eigenvalues.max().sqrt(),
            Shape::Trig { mean, terms } => mean + terms.iter().map(|t| t.cos.hypot(t.sin)).sum::<f64>(),
            Shape::Reuleaux { center, vertices, width, .. } => {
                // farthest point of an arc from the centre lies on the opposite side
                let r = vertices[0].norm();
                center.norm() + r.max(width - r)
            }
            Shape::Revolution { center, profile, .. } => center.norm() + profile.enclosing_radius(),
        }
    }

    /// Mean width `ω_d^{-1} ∫ w dσ`.
    pub fn mean_width(&self, rule: &SphereRule) -> Result<f64> {
        check_dim(self.dim, rule.d)?;
        Ok(rule.integrate(|u| self.w(u)) / omega(self.dim))
    }

    /// Surface area (perimeter in the plane). Balls and polytopes are
    /// exact; other bodies use `κ_{d-1}^{-1} ∫ b dσ` with `rule`.
    pub fn surface_area(&self, rule: &SphereRule) -> Result<f64> {
        check_dim(self.dim, rule.d)?;
        let d = self.dim;
        Ok(match &self.shape {
            Shape::Ball { radius, .. } => omega(d) * radius.powi(d as i32 - 1),
            Shape::Polytope { vertices } if d == 2 => {
                let pts: Vec<_> = vertices.iter().map(|v| (v.x, v.y)).collect();
                hull::polygon_perimeter(&hull::convex_hull(&pts))
            }
            Shape::Polytope { vertices } => hull::polytope_surface_area(vertices),
            _ => rule.integrate(|u| self.b(u)) / kappa(d - 1),
        })
    }

    /// Whether the hyperplane `{x : ⟨x, u⟩ = s}` meets the body.
    pub fn hits_hyperplane(&self, u: &Vector, s: f64) -> Result<bool> {
        self.check_direction(u)?;
        Ok(self.hits_hyperplane_unchecked(u, s))
    }

    pub(crate) fn hits_hyperplane_unchecked(&self, u: &Vector, s: f64) -> bool {
        -self.h(&-u) <= s && s <= self.h(u)
    }

    /// Whether the line `y + ℝu` meets the body; `y` must lie in `u^⊥`.
    ///
    /// Exact for every planar body and for balls, ellipsoids and polytopes
    /// in space. Bodies of revolution compare `⟨y, v⟩` with `h(v)` on
    /// [`LINE_SCAN_DIRECTIONS`] directions `v ∈ u^⊥`; a point outside the
    /// shadow by less than the polygonal sampling defect (relative size
    /// about `(π / 512)² / 2`) can be reported as a hit.
    pub fn hits_line(&self, u: &Vector, y: &Vector) -> Result<bool> {
        self.check_direction(u)?;
        check_point(y, self.dim, "line offset").map_err(|e| Error::Domain(e.to_string()))?;
        if u.dot(y).abs() > 1e-10 * y.norm().max(1.0) {
            return Err(Error::Domain("line offset is not orthogonal to its direction".into()));
        }
        Ok(self.hits_line_unchecked(u, y))
    }

    pub(crate) fn hits_line_unchecked(&self, u: &Vector, y: &Vector) -> bool {
        if self.dim == 2 {
            let v = rot90(u);
            let s = y.dot(&v);
            return self.hits_hyperplane_unchecked(&v, s);
        }
        match &self.shape {
            Shape::Ball { center, radius } => {
                let z = y - center;
                (z - z.dot(u) * u).norm() <= *radius
            }
            Shape::Ellipsoid { center, q_inv, .. } => {
                let z = y - center;
                let az = q_inv * z;
                let au = q_inv * u;
                z.dot(&az) - u.dot(&az).powi(2) / u.dot(&au) <= 1.0 + 1e-14
            }
            Shape::Polytope { vertices } => {
                let poly = hull::convex_hull(&hull::project(vertices, u));
                let p = hull::project(std::slice::from_ref(y), u)[0];
                hull::contains(&poly, p, 1e-12 * (1.0 + self.enclosing_radius()))
            }
            _ => {
                let (e1, e2) = orthonormal_basis(u);
                let slack = 1e-12 * (1.0 + self.enclosing_radius());
                (0..LINE_SCAN_DIRECTIONS).all(|k| {
                    let (s, c) = (2.0 * PI * k as f64 / LINE_SCAN_DIRECTIONS as f64).sin_cos();
                    let v = c * e1 + s * e2;
                    y.dot(&v) <= self.h(&v) + slack
                })
            }
        }
    }

    /// The body shifted by `t`.
    pub fn translated(&self, t: &Vector) -> Result<Self> {
        check_point(t, self.dim, "translation")?;
        let shape = match &self.shape {
            Shape::Ball { center, radius } => Shape::Ball { center: center + t, radius: *radius },
            Shape::Polytope { vertices } => Shape::Polytope {
                vertices: vertices.iter().map(|v| v + t).collect(),
            },
            Shape::Ellipsoid { center, q, q_inv, det } => Shape::Ellipsoid {
                center: center + t,
                q: *q,
                q_inv: *q_inv,
                det: *det,
            },
            Shape::Trig { mean, terms } => {
                let mut terms = terms.clone();
                match terms.iter_mut().find(|term| term.order == 1) {
                    Some(term) => {
                        term.cos += t.x;
                        term.sin += t.y;
                    }
                    None => {
                        terms.insert(0, TrigTerm { order: 1, cos: t.x, sin: t.y });
                    }
                }
                Shape::Trig { mean: *mean, terms }
            }
            Shape::Reuleaux { n, width, center, angle, vertices } => Shape::Reuleaux {
                n: *n,
                width: *width,
                center: center + t,
                angle: *angle,
                vertices: vertices.clone(),
            },
            Shape::Revolution { axis, center, profile } => Shape::Revolution {
                axis: *axis,
                center: center + t,
                profile: profile.clone(),
            },
        };
        Ok(Self { dim: self.dim, shape })
    }

    /// The body scaled about the origin by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let l = positive(factor, "scale factor")?;
        let shape = match &self.shape {
            Shape::Ball { center, radius } => Shape::Ball { center: l * center, radius: l * radius },
            Shape::Polytope { vertices } => Shape::Polytope {
                vertices: vertices.iter().map(|v| l * v).collect(),
            },
            Shape::Ellipsoid { center, q, .. } => {
                let mut q = q * (l * l);
                if self.dim == 2 {
                    q[(2, 2)] = 1.0;
                }
                return Self::ellipsoid(self.dim, l * center, q);
            }
            Shape::Trig { mean, terms } => Shape::Trig {
                mean: l * mean,
                terms: terms
                    .iter()
                    .map(|t| TrigTerm { order: t.order, cos: l * t.cos, sin: l * t.sin })
                    .collect(),
            },
            Shape::Reuleaux { n, width, center, angle, .. } => {
                return Self::reuleaux_at(*n, l * width, l * center, *angle);
            }
            Shape::Revolution { axis, center, profile } => Shape::Revolution {
                axis: *axis,
                center: l * center,
                profile: Box::new(profile.scaled(l)?),
            },
        };
        Ok(Self { dim: self.dim, shape })
    }

    /// The body under the proper rotation `r` about the origin. Planar
    /// bodies accept only rotations about the `z` axis.
    pub fn rotated(&self, r: &Matrix) -> Result<Self> {
        if (r.transpose() * r - Matrix::identity()).amax() > 1e-10 || r.determinant() < 0.0 {
            return Err(Error::Domain("not a proper rotation".into()));
        }
        if self.dim == 2
            && [(0, 2), (1, 2), (2, 0), (2, 1)].iter().any(|&ij| r[ij].abs() > 1e-12)
        {
            return Err(Error::Domain("planar bodies rotate about the z axis only".into()));
        }
        let alpha = r[(1, 0)].atan2(r[(0, 0)]);
        let shape = match &self.shape {
            Shape::Ball { center, radius } => Shape::Ball { center: r * center, radius: *radius },
            Shape::Polytope { vertices } => Shape::Polytope {
                vertices: vertices.iter().map(|v| r * v).collect(),
            },
            Shape::Ellipsoid { center, q, .. } => {
                return Self::ellipsoid(self.dim, r * center, r * q * r.transpose());
            }
            Shape::Trig { mean, terms } => Shape::Trig {
                mean: *mean,
                terms: terms
                    .iter()
                    .map(|t| {
                        let (s, c) = (t.order as f64 * alpha).sin_cos();
                        TrigTerm {
                            order: t.order,
                            cos: t.cos * c - t.sin * s,
                            sin: t.cos * s + t.sin * c,
                        }
                    })
                    .collect(),
            },
            Shape::Reuleaux { n, width, center, angle, .. } => {
                return Self::reuleaux_at(*n, *width, r * center, angle + alpha);
            }
            Shape::Revolution { axis, center, profile } => Shape::Revolution {
                axis: r * axis,
                center: r * center,
                profile: profile.clone(),
            },
        };
        let mut body = Self { dim: self.dim, shape };
        if body.dim == 2 {
            body.flatten();
        }
        Ok(body)
    }

    fn flatten(&mut self) {
        match &mut self.shape {
            Shape::Ball { center, .. } => center.z = 0.0,
            Shape::Polytope { vertices } => vertices.iter_mut().for_each(|v| v.z = 0.0),
            _ => {}
        }
    }
}
