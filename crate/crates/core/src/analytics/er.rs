//! Rate function `φ(x) = x ln x + 1 − x` and the Erdős–Rényi time bound.

use crate::error::{Error, Result};

/// Bisection stops once the bracket is narrower than this.
pub const PHI_INVERSE_TOLERANCE: f64 = 1e-12;

/// `φ(x) = x ln x + 1 − x` on `[0, 1]`, with `0 ln 0 = 0` so `φ(0) = 1`.
pub fn phi(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("φ is defined on [0, 1], got {x}")));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    // ln_1p keeps φ(x) ≈ (1 − x)²/2 positive right up to x = 1, which the
    // bisection in `phi_inverse` relies on.
    let d = x - 1.0;
    Ok(x * d.ln_1p() - d)
}

/// The `x ∈ [0, 1]` with `φ(x) = y`, by bisection. `φ` decreases from 1
/// to 0 on `[0, 1]`.
pub fn phi_inverse(y: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::Domain(format!("φ⁻¹ is defined on [0, 1], got {y}")));
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > PHI_INVERSE_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if phi(mid)? > y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `ln n / ((2α − 1) φ⁻¹(2/(c(2α − 1))))`, the leading term of the
/// high-probability bound on each phase for `G(n, c ln(n)/n)`. The `O(1)`
/// remainder is omitted. Requires `c > 2/(2α − 1)`.
pub fn er_time_bound(n: usize, c: f64, alpha: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidSize(format!("need n >= 2, got {n}")));
    }
    let delta = crate::spectral::closed_form::delta_er_bound(n, c, alpha)?;
    Ok((n as f64).ln() / delta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_values() {
        assert_eq!(phi(1.0).unwrap(), 0.0);
        assert_eq!(phi(0.0).unwrap(), 1.0);
        assert!((phi(0.19).unwrap() - 0.4945).abs() < 1e-4);
        assert!((phi(0.18).unwrap() - 0.5113).abs() < 1e-4);
        assert!(phi(-0.1).is_err() && phi(1.1).is_err());
        let mut prev = 1.0 + 1e-9;
        for k in 0..=100 {
            let v = phi(k as f64 / 100.0).unwrap();
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn phi_inverse_values() {
        let x = phi_inverse(0.5).unwrap();
        assert!((0.18..0.19).contains(&x), "{x}");
        assert!(phi_inverse(1.0).unwrap() < 1e-11);
        assert!(phi_inverse(0.0).unwrap() > 1.0 - 1e-11);
        assert!(phi_inverse(1.5).is_err());
        for k in 1..=19 {
            let x = k as f64 * 0.05;
            assert!((phi_inverse(phi(x).unwrap()).unwrap() - x).abs() < 1e-10);
        }
    }

    #[test]
    fn er_bound_examples() {
        let b = er_time_bound(1000, 100.0, 0.75).unwrap();
        let expected = (1000f64).ln() / (0.5 * phi_inverse(0.04).unwrap());
        assert!((b - expected).abs() < 1e-12);

        // Large c approaches the complete-graph value ln n / (2α − 1).
        let b = er_time_bound(1000, 1e9, 0.75).unwrap();
        assert!((b / ((1000f64).ln() / 0.5) - 1.0).abs() < 1e-3);

        assert!(matches!(er_time_bound(1000, 4.0, 0.75), Err(Error::Domain(_))));
    }
}
