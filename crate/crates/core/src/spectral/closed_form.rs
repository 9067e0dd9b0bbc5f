//! Closed forms for `δ(Q, α)` on the named topologies.
//!
//! Functions taking a real `α` assume `(2α − 1)n` is an integer and do no
//! rounding of their own; callers holding integer counts should pass
//! `α = s0 / n`.

use std::f64::consts::PI;

use crate::analytics::er::phi_inverse;
use crate::error::{Error, Result};

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.5 && alpha <= 1.0) {
        return Err(Error::Domain(format!("α = {alpha} must lie in (1/2, 1]")));
    }
    Ok(())
}

fn check_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::InvalidSize(format!("need n >= {min}, got {n}")));
    }
    Ok(())
}

/// Complete graph with rates `1/(n-1)`: `δ = (s0 − s1)/(n − 1)`, or `1`
/// when `s1 = 0` (then `S = V` and `Q_S = −I`).
pub fn closed_form_complete(n: usize, s0: usize, s1: usize) -> Result<f64> {
    check_n(n, 2)?;
    if s0 + s1 != n || s0 <= s1 {
        return Err(Error::InvalidArgument(format!(
            "need s0 > s1 with s0 + s1 = n (got s0 = {s0}, s1 = {s1}, n = {n})"
        )));
    }
    let k = s0 - s1;
    Ok(if k == n { 1.0 } else { k as f64 / (n - 1) as f64 })
}

/// Path with unit rates: `2(1 − cos(π / (4(1 − α)n + 1)))`.
pub fn closed_form_path(n: usize, alpha: f64) -> Result<f64> {
    check_n(n, 2)?;
    check_alpha(alpha)?;
    let m = 4.0 * (1.0 - alpha) * n as f64;
    Ok(2.0 * (1.0 - (PI / (m + 1.0)).cos()))
}

/// Leading-order form `π² / (16(1 − α)² n²)` of [`closed_form_path`].
pub fn path_asymptotic(n: usize, alpha: f64) -> f64 {
    let d = (1.0 - alpha) * n as f64;
    PI * PI / (16.0 * d * d)
}

/// Cycle with unit rates: `2(1 − cos(π / (2(1 − α)n + 1)))`.
pub fn closed_form_cycle(n: usize, alpha: f64) -> Result<f64> {
    check_n(n, 3)?;
    check_alpha(alpha)?;
    let m = 2.0 * (1.0 - alpha) * n as f64;
    Ok(2.0 * (1.0 - (PI / (m + 1.0)).cos()))
}

/// Leading-order form `π² / (4(1 − α)² n²)` of [`closed_form_cycle`].
pub fn cycle_asymptotic(n: usize, alpha: f64) -> f64 {
    let d = (1.0 - alpha) * n as f64;
    PI * PI / (4.0 * d * d)
}

/// Star with leaf rates `1/(n-1)`:
/// `n / (2(n − 1)) · (1 − √(1 − 4(2α − 1)/n))`.
pub fn closed_form_star(n: usize, alpha: f64) -> Result<f64> {
    check_n(n, 2)?;
    check_alpha(alpha)?;
    let nf = n as f64;
    let disc = 1.0 - 4.0 * (2.0 * alpha - 1.0) / nf;
    if disc < 0.0 {
        return Err(Error::Domain(format!(
            "1 − 4(2α − 1)/n = {disc} is negative (n = {n}, α = {alpha})"
        )));
    }
    Ok(nf / (2.0 * (nf - 1.0)) * (1.0 - disc.sqrt()))
}

/// High-probability lower bound `(2α − 1)·φ⁻¹(2 / (c(2α − 1)))` on `δ` for
/// Erdős–Rényi graphs with `p_n = c log(n)/n`. The `O(1/log n)` correction
/// is not included. Requires `c > 2/(2α − 1)`.
pub fn delta_er_bound(n: usize, c: f64, alpha: f64) -> Result<f64> {
    check_n(n, 2)?;
    check_alpha(alpha)?;
    let margin = 2.0 * alpha - 1.0;
    if !(c * margin > 2.0) {
        return Err(Error::Domain(format!(
            "the Erdős–Rényi bound needs c > 2/(2α − 1) = {} (got c = {c})",
            2.0 / margin
        )));
    }
    Ok(margin * phi_inverse(2.0 / (c * margin))?)
}

/// `k`-th eigenvalue (`k = 1..=m`) of the `m × m` tridiagonal block with
/// `-2` on the diagonal and `1` off it: `−2(1 − cos(πk/(m+1)))`.
pub fn interior_block_eigenvalue(m: usize, k: usize) -> f64 {
    -2.0 * (1.0 - (PI * k as f64 / (m + 1) as f64).cos())
}

/// `k`-th eigenvalue of the same block with one corner entry raised to
/// `-1` (a path end): `−2(1 − cos((2k−1)π/(2m+1)))`.
pub fn end_block_eigenvalue(m: usize, k: usize) -> f64 {
    -2.0 * (1.0 - ((2 * k - 1) as f64 * PI / (2 * m + 1) as f64).cos())
}
