use crate::{Error, Result, Vector};

pub(crate) const UNIT_TOL: f64 = 1e-10;

/// Two unit vectors completing `v` to a right-handed orthonormal frame.
pub fn orthonormal_basis(v: &Vector) -> (Vector, Vector) {
    let helper = if v.x.abs() < 0.9 {
        Vector::x()
    } else {
        Vector::y()
    };
    let e1 = (helper - v * v.dot(&helper)).normalize();
    let e2 = v.cross(&e1);
    (e1, e2)
}

/// Planar rotation by +90°.
pub fn rot90(u: &Vector) -> Vector {
    Vector::new(-u.y, u.x, 0.0)
}

pub fn planar(theta: f64) -> Vector {
    Vector::new(theta.cos(), theta.sin(), 0.0)
}

pub(crate) fn check_unit(u: &Vector, d: usize) -> Result<()> {
    let n = u.norm();
    if !n.is_finite() || (n - 1.0).abs() > UNIT_TOL {
        return Err(Error::Domain(format!("direction has norm {n}, expected 1")));
    }
    if d == 2 && u.z != 0.0 {
        return Err(Error::Domain("planar direction has a nonzero z component".into()));
    }
    Ok(())
}

pub(crate) fn vector_from_slice(v: &[f64], d: usize, what: &str) -> Result<Vector> {
    if v.len() != d {
        return Err(Error::Spec(format!(
            "{what} has {} coordinates, expected {d}",
            v.len()
        )));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::Spec(format!("{what} has non-finite coordinates")));
    }
    Ok(Vector::new(v[0], v[1], if d == 3 { v[2] } else { 0.0 }))
}
