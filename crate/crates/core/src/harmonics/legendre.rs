use crate::{Error, Result};

const DOMAIN_SLACK: f64 = 1e-12;

fn check_args(d: usize, t: f64) -> Result<f64> {
    if d < 2 {
        return Err(Error::Domain(format!("dimension must be >= 2, got {d}")));
    }
    if !t.is_finite() || t.abs() > 1.0 + DOMAIN_SLACK {
        return Err(Error::Domain(format!("argument {t} outside [-1, 1]")));
    }
    Ok(t.clamp(-1.0, 1.0))
}

/// Legendre polynomial `P_m(d; t)` of dimension `d`, normalized by `P_m(d; 1) = 1`.
///
/// `d = 3` gives the classical Legendre polynomials and `d = 2` the Chebyshev
/// polynomials `cos(m arccos t)`.
pub fn legendre(d: usize, m: usize, t: f64) -> Result<f64> {
    let t = check_args(d, t)?;
    Ok(legendre_pair(d, m, t).0)
}

/// `(P_m(d; t), P_{m-1}(d; t))` by forward recurrence; `P_{-1}` is reported as 0.
///
/// No argument checks.
pub fn legendre_pair(d: usize, m: usize, t: f64) -> (f64, f64) {
    if m == 0 {
        return (1.0, 0.0);
    }
    let dd = d as f64;
    let (mut prev, mut cur) = (1.0, t);
    for k in 1..m {
        let kf = k as f64;
        let next = ((2.0 * kf + dd - 2.0) * t * cur - kf * prev) / (kf + dd - 2.0);
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// Fills `out[m] = P_m(d; t)` for `m < out.len()`. No argument checks.
pub fn legendre_all(d: usize, t: f64, out: &mut [f64]) {
    let n = out.len();
    if n == 0 {
        return;
    }
    out[0] = 1.0;
    if n == 1 {
        return;
    }
    out[1] = t;
    let dd = d as f64;
    for k in 1..n - 1 {
        let kf = k as f64;
        out[k + 1] = ((2.0 * kf + dd - 2.0) * t * out[k] - kf * out[k - 1]) / (kf + dd - 2.0);
    }
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.checked_mul(n - i)? / (i + 1);
    }
    Some(r)
}

/// Dimension `N(d, m)` of the space of spherical harmonics of order `m` on `S^{d-1}`.
pub fn dim_harmonic(d: usize, m: usize) -> Result<u64> {
    if d < 2 {
        return Err(Error::Domain(format!("dimension must be >= 2, got {d}")));
    }
    if m == 0 {
        return Ok(1);
    }
    // N(d, m) = C(m+d-1, d-1) - C(m+d-3, d-1)
    let overflow = || Error::Overflow(format!("N({d}, {m}) exceeds u64"));
    let (d, m) = (d as u128, m as u128);
    let a = binomial(m + d - 1, d - 1).ok_or_else(overflow)?;
    let b = if m + d >= 3 + d - 1 {
        binomial(m + d - 3, d - 1).ok_or_else(overflow)?
    } else {
        0
    };
    u64::try_from(a - b).map_err(|_| overflow())
}

/// Floating-point `N(d, m)` that never overflows; used for quadrature weights.
pub fn dim_harmonic_f64(d: usize, m: usize) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let mf = m as f64;
    let dd = d as f64;
    // (2m+d-2)/(m+d-2) · C(m+d-2, d-2)
    let mut c = 1.0;
    for i in 1..=d.saturating_sub(2) {
        c *= (mf + i as f64) / i as f64;
    }
    (2.0 * mf + dd - 2.0) / (mf + dd - 2.0) * c
}
