//! Closed-form distances for three points and for linear chains.

use crate::error::{Error, Result};

fn check_coupling(name: &str, v: f64) -> Result<f64> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::input(name, "coupling must be a nonnegative real"));
    }
    Ok(v)
}

/// (d12, d13, d23) for three points with real couplings Δ12, Δ13, Δ23.
pub fn distance_three_point(d12: f64, d13: f64, d23: f64) -> Result<(f64, f64, f64)> {
    let (a, b, c) = (check_coupling("delta12", d12)?, check_coupling("delta13", d13)?, check_coupling("delta23", d23)?);
    let (a2, b2, c2) = (a * a, b * b, c * c);
    let s = b2 * c2 + c2 * a2 + a2 * b2;
    if s == 0.0 {
        // at most one link: it alone is finite
        let one = |x: f64| if x > 0.0 { 1.0 / x } else { f64::INFINITY };
        return Ok((one(a), one(b), one(c)));
    }
    Ok((((b2 + c2) / s).sqrt(), ((a2 + c2) / s).sqrt(), ((a2 + b2) / s).sqrt()))
}

/// Couplings (Δ12, Δ13, Δ23) reproducing three given distances.
pub fn deltas_from_distances(d12: f64, d13: f64, d23: f64) -> Result<(f64, f64, f64)> {
    for (n, v) in [("d12", d12), ("d13", d13), ("d23", d23)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::input(n, "distance must be positive and finite"));
        }
    }
    let (s12, s13, s23) = (d12 * d12, d13 * d13, d23 * d23);
    // star resistances: d_ij² = r_i + r_j
    let r1 = (s12 + s13 - s23) / 2.0;
    let r2 = (s12 + s23 - s13) / 2.0;
    let r3 = (s13 + s23 - s12) / 2.0;
    let eps = 1e-14 * (s12 + s13 + s23);
    if r1 < -eps || r2 < -eps || r3 < -eps {
        return Err(Error::domain("not realizable: d_ij² ≤ d_ik² + d_kj² is violated"));
    }
    let (r1, r2, r3) = (r1.max(0.0), r2.max(0.0), r3.max(0.0));
    let p = r1 * r2 + r1 * r3 + r2 * r3;
    Ok(((r3 / p).sqrt(), (r2 / p).sqrt(), (r1 / p).sqrt()))
}

/// d14 on the chain 1–2–3–4.
pub fn distance_chain4(d12: f64, d23: f64, d34: f64) -> Result<f64> {
    let (a, b, g) = (check_coupling("delta12", d12)?, check_coupling("delta23", d23)?, check_coupling("delta34", d34)?);
    if a == 0.0 || b == 0.0 || g == 0.0 {
        return Ok(f64::INFINITY);
    }
    let (a2, b2, g2) = (a * a, b * b, g * g);
    if b2 >= a * g {
        // the optimum sits on the boundary |[Δ,x]| blocks 12 and 34 saturated, x2 = x3
        return Ok(1.0 / a + 1.0 / g);
    }
    let (p, q) = ((b2 + a2).sqrt(), (b2 + g2).sqrt());
    Ok(b / (a * g) * (q / p + p / q + (a2 * g2 - b2 * b2) / (b2 * p * q)))
}

/// d_1n on a chain of n points with every coupling 1/L.
pub fn chain_uniform(n: usize, l: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::input("n", "chain needs at least two points"));
    }
    let nf = n as f64;
    Ok(if n % 2 == 0 { nf * l / 2.0 } else { ((nf - 1.0) * (nf + 1.0)).sqrt() * l / 2.0 })
}
