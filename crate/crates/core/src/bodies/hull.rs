//! Planar convex hulls and the facet decomposition of vertex-described polytopes.

use crate::geometry::orthonormal_basis;
use crate::Vector;

pub type P2 = (f64, f64);

fn cross(o: P2, a: P2, b: P2) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Andrew's monotone chain. Returns the hull in counter-clockwise order
/// without repeated or collinear points.
pub fn convex_hull(points: &[P2]) -> Vec<P2> {
    let mut pts: Vec<P2> = points.to_vec();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<P2> = Vec::with_capacity(2 * pts.len());
    // lower hull
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    // upper hull
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Shoelace area of a counter-clockwise polygon.
pub fn polygon_area(poly: &[P2]) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let mut a = 0.0;
    for i in 0..poly.len() {
        let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
        a += p.0 * q.1 - p.1 * q.0;
    }
    0.5 * a
}

/// Boundary length; a degenerate hull (segment) counts both sides.
pub fn polygon_perimeter(poly: &[P2]) -> f64 {
    match poly.len() {
        0 | 1 => 0.0,
        n => (0..n)
            .map(|i| {
                let (p, q) = (poly[i], poly[(i + 1) % n]);
                (q.0 - p.0).hypot(q.1 - p.1)
            })
            .sum(),
    }
}

/// Whether `p` lies in the closed convex polygon, up to an absolute slack.
pub fn contains(poly: &[P2], p: P2, slack: f64) -> bool {
    match poly.len() {
        0 => false,
        1 => (p.0 - poly[0].0).hypot(p.1 - poly[0].1) <= slack,
        2 => {
            let (a, b) = (poly[0], poly[1]);
            let len = (b.0 - a.0).hypot(b.1 - a.1);
            let t = ((p.0 - a.0) * (b.0 - a.0) + (p.1 - a.1) * (b.1 - a.1)) / (len * len);
            let t = t.clamp(0.0, 1.0);
            let q = (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1));
            (p.0 - q.0).hypot(p.1 - q.1) <= slack
        }
        n => (0..n).all(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            let len = (b.0 - a.0).hypot(b.1 - a.1);
            cross(a, b, p) >= -slack * len
        }),
    }
}

/// Coordinates of the projections of `points` onto the plane `n^⊥`.
pub fn project(points: &[Vector], n: &Vector) -> Vec<P2> {
    let (e1, e2) = orthonormal_basis(n);
    points.iter().map(|p| (p.dot(&e1), p.dot(&e2))).collect()
}

/// Surface area of the convex hull of `points` in space.
///
/// Facets are found by brute force over vertex triples whose plane supports
/// the point set; each facet's area is that of the planar hull of its
/// vertices. Lower-dimensional hulls count both sides.
pub fn polytope_surface_area(points: &[Vector]) -> f64 {
    let n = points.len();
    if n < 3 {
        return 0.0;
    }
    let centroid = points.iter().sum::<Vector>() / n as f64;
    let scale = points.iter().map(|p| (p - centroid).norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    let eps = 1e-10 * scale;
    // affine rank
    let a = points[0];
    let Some(b) = points.iter().copied().max_by(|p, q| (p - a).norm().total_cmp(&(q - a).norm())) else {
        return 0.0;
    };
    if (b - a).norm() <= eps {
        return 0.0;
    }
    let dir = (b - a).normalize();
    let off_line = |p: &Vector| ((p - a) - dir * (p - a).dot(&dir)).norm();
    let c = *points.iter().max_by(|p, q| off_line(p).total_cmp(&off_line(q))).unwrap();
    if off_line(&c) <= eps {
        // a segment: both sides of a zero-area hull
        return 0.0;
    }
    let normal = (b - a).cross(&(c - a)).normalize();
    if points.iter().all(|p| (p - a).dot(&normal).abs() <= eps) {
        return 2.0 * polygon_area(&convex_hull(&project(points, &normal)));
    }

    let mut facets: Vec<(Vector, f64)> = Vec::new();
    let mut area = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (p, q, r) = (points[i], points[j], points[k]);
                let cr = (q - p).cross(&(r - p));
                let len = cr.norm();
                if len <= eps * scale {
                    continue;
                }
                let mut nrm = cr / len;
                let (mut above, mut below) = (false, false);
                for v in points {
                    let s = (v - p).dot(&nrm);
                    above |= s > eps;
                    below |= s < -eps;
                }
                if above && below {
                    continue;
                }
                if above {
                    nrm = -nrm;
                }
                let offset = p.dot(&nrm);
                if facets
                    .iter()
                    .any(|(m, o)| m.dot(&nrm) > 1.0 - 1e-9 && (o - offset).abs() <= eps)
                {
                    continue;
                }
                let on_facet: Vec<Vector> = points
                    .iter()
                    .copied()
                    .filter(|v| (v.dot(&nrm) - offset).abs() <= eps)
                    .collect();
                area += polygon_area(&convex_hull(&project(&on_facet, &nrm)));
                facets.push((nrm, offset));
            }
        }
    }
    area
}
