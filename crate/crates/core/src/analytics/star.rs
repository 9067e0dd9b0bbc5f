//! Star graph: first-phase duration via the embedded chain of hub contacts.
//!
//! The hub meets each leaf at rate `1/(n − 1)`, so hub contacts form a
//! unit-rate Poisson process and mean hitting times in contacts equal mean
//! times. Between two depletions of `One` nodes (a *mode*), the leaf counts
//! only change through the hub, and the hub state is one of `0`, `1` or
//! `e` (either undecided state). A mode ends when the hub and a leaf hold
//! `0` and `1`.

use serde::{Deserialize, Serialize};

use super::linalg::solve_dense;
use crate::error::{Error, Result};
use crate::protocol::NodeState;

/// Counts during mode `i`, hub included.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarModeState {
    pub i: usize,
    pub x0: usize,
    pub x1: usize,
    pub xe: usize,
}

impl StarModeState {
    /// Mode `i` of a star started with `s0` `Zero` and `s1` `One` nodes.
    pub fn new(n: usize, s0: usize, s1: usize, i: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidSize(format!("star needs n >= 3, got {n}")));
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
        if i >= s1 {
            return Err(Error::ModeRange { mode: i, limit: s1 });
        }
        Ok(StarModeState {
            i,
            x0: s0 - i,
            x1: s1 - i,
            xe: 2 * i,
        })
    }
}

/// Mean remaining time in mode `i` with the hub in state `0`, `1` and `e`.
pub fn star_hitting_times(n: usize, s0: usize, s1: usize, i: usize) -> Result<(f64, f64, f64)> {
    let m = StarModeState::new(n, s0, s1, i)?;
    let nf = n as f64;
    let (x0, x1, xe) = (m.x0 as f64, m.x1 as f64, m.xe as f64);
    let common = x0 * x1 * (nf + xe);
    let phi0 = nf * (nf - 1.0) * (nf - x1) / common;
    let phi1 = nf * (nf - 1.0) * (nf - x0) / common;
    let phie = (nf - 1.0) * (nf * nf - x0 * x1) / common;
    Ok((phi0, phi1, phie))
}

/// The same hitting times from the first-step equations, solved directly.
pub fn star_hitting_oracle(n: usize, s0: usize, s1: usize, i: usize) -> Result<(f64, f64, f64)> {
    let m = StarModeState::new(n, s0, s1, i)?;
    let d = (n - 1) as f64;
    let (x0, x1, xe) = (m.x0 as f64, m.x1 as f64, m.xe as f64);
    // Unknowns (φ0, φe, φ1). Row r: φ_r − Σ_s p_rs φ_s = 1.
    #[rustfmt::skip]
    let a = [
        1.0 - (x0 - 1.0) / d, -xe / d,               0.0,
        -x0 / d,              1.0 - (xe - 1.0) / d,  -x1 / d,
        0.0,                  -xe / d,               1.0 - (x1 - 1.0) / d,
    ];
    let x = solve_dense(&a, &[1.0, 1.0, 1.0])?;
    Ok((x[0], x[2], x[1]))
}

/// Exact `E(T_1)` on the star: `φ_s(0) + Σ_{i=1}^{s1−1} φ_e(i)` with `s`
/// the initial hub state.
pub fn expected_t1_star(n: usize, s0: usize, s1: usize, hub_initial: NodeState) -> Result<f64> {
    if s1 == 0 {
        return Err(Error::InvalidArgument("the star mode sum needs s1 >= 1".into()));
    }
    let (phi0, phi1, _) = star_hitting_times(n, s0, s1, 0)?;
    let first = match hub_initial {
        NodeState::Zero => phi0,
        NodeState::One => phi1,
        other => {
            return Err(Error::Unsupported(format!(
                "hub must start in Zero or One, got {other:?}"
            )))
        }
    };
    let mut rest = 0.0;
    for i in 1..s1 {
        rest += star_hitting_times(n, s0, s1, i)?.2;
    }
    Ok(first + rest)
}

/// Leading term `n ln n / ((2α − 1)(3 − 2α))` of [`expected_t1_star`].
pub fn star_dominant_term(n: usize, s0: usize) -> Result<f64> {
    let nf = n as f64;
    let alpha = s0 as f64 / nf;
    if !(alpha > 0.5 && alpha <= 1.0) {
        return Err(Error::Domain(format!("α = {alpha} must lie in (1/2, 1]")));
    }
    Ok(nf * nf.ln() / ((2.0 * alpha - 1.0) * (3.0 - 2.0 * alpha)))
}
