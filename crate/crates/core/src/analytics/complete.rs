//! Complete graph: exact expected duration of the first phase and its
//! dependence on the voting margin.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `H_k = Σ_{j=1}^{k} 1/j` by direct summation (smallest terms first).
pub fn harmonic(k: usize) -> f64 {
    (1..=k).rev().map(|j| 1.0 / j as f64).sum()
}

fn check_counts(n: usize, s0: usize, s1: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidSize(format!("need n >= 2, got {n}")));
    }
    if s0 + s1 != n {
        return Err(Error::InvalidArgument(format!(
            "counts s0 = {s0}, s1 = {s1} must sum to n = {n}"
        )));
    }
    if s1 > s0 {
        return Err(Error::InvalidArgument(format!(
            "s1 = {s1} exceeds s0 = {s0}; relabel so that Zero is the majority"
        )));
    }
    Ok(())
}

/// `(n − 1) Σ_{i=0}^{s1−1} 1/((s0 − i)(s1 − i))`: one exponential epoch per
/// depletion of a `One` node.
pub fn expected_t1_complete_epoch_sum(n: usize, s0: usize, s1: usize) -> Result<f64> {
    check_counts(n, s0, s1)?;
    let sum: f64 = (0..s1)
        .rev()
        .map(|i| 1.0 / ((s0 - i) as f64 * (s1 - i) as f64))
        .sum();
    Ok((n - 1) as f64 * sum)
}

/// `(n − 1)/(s0 − s1) · (H_{s1} + H_{s0−s1} − H_{s0})`, for `s0 > s1`.
pub fn expected_t1_complete_harmonic(n: usize, s0: usize, s1: usize) -> Result<f64> {
    check_counts(n, s0, s1)?;
    if s0 == s1 {
        return Err(Error::Domain("the harmonic form needs s0 > s1".into()));
    }
    let k = s0 - s1;
    // H_{s0} − H_{s0−s1} summed directly to avoid cancellation.
    let tail: f64 = (k + 1..=s0).rev().map(|j| 1.0 / j as f64).sum();
    Ok((n - 1) as f64 / k as f64 * (harmonic(s1) - tail))
}

/// Exact `E(T_1)` on the complete graph with rates `1/(n − 1)`: the
/// harmonic form when `s0 > s1`, the epoch sum at a draw.
pub fn expected_t1_complete(n: usize, s0: usize, s1: usize) -> Result<f64> {
    check_counts(n, s0, s1)?;
    if s0 > s1 {
        expected_t1_complete_harmonic(n, s0, s1)
    } else {
        expected_t1_complete_epoch_sum(n, s0, s1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "regime", rename_all = "snake_case")]
pub enum MarginRegime {
    /// Margin of order `1/n`: `E(T_1) = Θ(n)`.
    Linear,
    /// Margin bounded away from zero (here `μ ≥ 1/ln n`): `Θ(log n)`.
    Logarithmic,
    /// `μ = n^{−a}` with `0 < a < 1`: `E(T_1) ≈ (1 − a) n^a log n`.
    PowerLaw { a: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarginAsymptotics {
    /// `(1/μ) log(nμ)`.
    pub dominant_term: f64,
    pub regime: MarginRegime,
    /// The regime's leading-order expression evaluated at `(n, μ)`: `n`,
    /// `log(n)/μ` or `(1 − a) n^a log n`.
    pub leading_form: f64,
}

/// Classifies the voting margin `μ = (s0 − s1)/n` and evaluates the
/// dominant term `(1/μ) log(nμ)` of `E(T_1)` on the complete graph.
///
/// A single finite `(n, μ)` has no asymptotic class, so the boundaries are
/// fixed thresholds: `nμ ≤ e` is linear, `μ ≥ 1/ln n` logarithmic, and
/// anything in between is reported as a power law with `a = −ln μ / ln n`.
pub fn margin_asymptotics(n: usize, mu: f64) -> Result<MarginAsymptotics> {
    if n < 2 {
        return Err(Error::InvalidSize(format!("need n >= 2, got {n}")));
    }
    let nf = n as f64;
    if !(mu > 0.0 && mu <= 1.0) || nf * mu < 1.0 - 1e-12 {
        return Err(Error::Domain(format!(
            "need 0 < μ <= 1 and nμ >= 1 (got μ = {mu}, n = {n})"
        )));
    }
    let ln_n = nf.ln();
    let dominant_term = (nf * mu).max(1.0).ln() / mu;
    let (regime, leading_form) = if nf * mu <= std::f64::consts::E {
        (MarginRegime::Linear, nf)
    } else if mu >= 1.0 / ln_n {
        (MarginRegime::Logarithmic, ln_n / mu)
    } else {
        let a = -mu.ln() / ln_n;
        (MarginRegime::PowerLaw { a }, (1.0 - a) * nf.powf(a) * ln_n)
    };
    Ok(MarginAsymptotics {
        dominant_term,
        regime,
        leading_form,
    })
}
