//! Independent trials with derived seeds and their summaries.
//!
//! Trial `k` uses seed `base_seed + k`, so any trial can be replayed alone
//! and results do not depend on how trials are scheduled.

use serde::{Deserialize, Serialize};

use super::{simulate_trial_observed, ContactSampler, TrialOutcome, TrialStatus};
use crate::error::{Error, Result};
use crate::graph::ContactMatrix;
use crate::par::Execution;
use crate::protocol::InitSpec;

/// Normal quantile for two-sided 95% intervals.
pub const Z95: f64 = 1.96;

/// Runs `trials` trials and returns them in trial order.
pub fn run_trials(
    q: &ContactMatrix,
    init: &InitSpec,
    trials: usize,
    base_seed: u64,
    t_max: Option<f64>,
    exec: Execution,
) -> Result<Vec<TrialOutcome>> {
    let sampler = ContactSampler::new(q);
    exec.map_range(trials as u64, |k| {
        simulate_trial_observed(q, &sampler, init, base_seed.wrapping_add(k), t_max, &mut ())
    })
    .into_iter()
    .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleStats {
    pub count: usize,
    pub mean: f64,
    /// Sample standard deviation (`m − 1` denominator); zero when `m < 2`.
    pub sd: f64,
    pub stderr: f64,
    /// `1.96 · sd / √m`.
    pub ci95: f64,
}

impl SampleStats {
    pub fn from_values(values: &[f64]) -> Option<Self> {
        let m = values.len();
        if m == 0 {
            return None;
        }
        let mean = values.iter().sum::<f64>() / m as f64;
        let sd = if m < 2 {
            0.0
        } else {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1) as f64).sqrt()
        };
        let stderr = sd / (m as f64).sqrt();
        Some(SampleStats {
            count: m,
            mean,
            sd,
            stderr,
            ci95: Z95 * stderr,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloSummary {
    pub trials: usize,
    pub seed: u64,
    pub completed: usize,
    pub draws: usize,
    pub truncated: usize,
    /// Over trials that reached the end of phase 1.
    pub t1: Option<SampleStats>,
    /// Over completed trials only.
    pub t2: Option<SampleStats>,
    /// Every completed trial ended in the correct consensus.
    pub all_correct: bool,
}

impl MonteCarloSummary {
    pub fn from_outcomes(outcomes: &[TrialOutcome], seed: u64) -> Self {
        let t1: Vec<f64> = outcomes.iter().filter_map(|o| o.t1).collect();
        let t2: Vec<f64> = outcomes.iter().filter_map(|o| o.t2).collect();
        let count = |s: TrialStatus| outcomes.iter().filter(|o| o.status == s).count();
        MonteCarloSummary {
            trials: outcomes.len(),
            seed,
            completed: count(TrialStatus::Completed),
            draws: count(TrialStatus::Draw),
            truncated: count(TrialStatus::Truncated),
            t1: SampleStats::from_values(&t1),
            t2: SampleStats::from_values(&t2),
            all_correct: outcomes
                .iter()
                .filter(|o| o.status == TrialStatus::Completed)
                .all(|o| o.correct),
        }
    }

    pub fn mean_t1(&self) -> Option<f64> {
        self.t1.map(|s| s.mean)
    }

    pub fn mean_t2(&self) -> Option<f64> {
        self.t2.map(|s| s.mean)
    }

    pub fn ci95_t1(&self) -> Option<f64> {
        self.t1.map(|s| s.ci95)
    }

    pub fn ci95_t2(&self) -> Option<f64> {
        self.t2.map(|s| s.ci95)
    }

    /// `false` when no trial produced a phase-2 time (all draws or all
    /// truncated).
    pub fn t2_usable(&self) -> bool {
        self.t2.is_some()
    }
}

pub fn run_monte_carlo(
    q: &ContactMatrix,
    init: &InitSpec,
    trials: usize,
    base_seed: u64,
    t_max: Option<f64>,
) -> Result<MonteCarloSummary> {
    run_monte_carlo_with(q, init, trials, base_seed, t_max, Execution::default())
}

pub fn run_monte_carlo_with(
    q: &ContactMatrix,
    init: &InitSpec,
    trials: usize,
    base_seed: u64,
    t_max: Option<f64>,
    exec: Execution,
) -> Result<MonteCarloSummary> {
    if trials < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 trials, got {trials}")));
    }
    let outcomes = run_trials(q, init, trials, base_seed, t_max, exec)?;
    Ok(MonteCarloSummary::from_outcomes(&outcomes, base_seed))
}

/// Empirical survival of both phases on a time grid. Phase-2 times are
/// measured from the end of phase 1; trials that never finish a phase
/// count as surviving at every grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurvivalCurve {
    pub trials: usize,
    pub grid: Vec<f64>,
    /// Fraction with `T1 > t` (some `One` node left at `t`).
    pub phase1: Vec<f64>,
    /// Fraction with `T2 > t`.
    pub phase2: Vec<f64>,
}

impl SurvivalCurve {
    fn from_outcomes(outcomes: &[TrialOutcome], grid: &[f64]) -> Self {
        let m = outcomes.len() as f64;
        let frac = |pick: &dyn Fn(&TrialOutcome) -> Option<f64>, t: f64| {
            outcomes.iter().filter(|o| pick(o).is_none_or(|v| v > t)).count() as f64 / m
        };
        SurvivalCurve {
            trials: outcomes.len(),
            grid: grid.to_vec(),
            phase1: grid.iter().map(|&t| frac(&|o| o.t1, t)).collect(),
            phase2: grid.iter().map(|&t| frac(&|o| o.t2, t)).collect(),
        }
    }

    /// Binomial standard error `√(p(1 − p)/m)` of each phase-1 point.
    pub fn phase1_stderr(&self) -> Vec<f64> {
        binomial_stderr(&self.phase1, self.trials)
    }

    pub fn phase2_stderr(&self) -> Vec<f64> {
        binomial_stderr(&self.phase2, self.trials)
    }
}

fn binomial_stderr(p: &[f64], m: usize) -> Vec<f64> {
    p.iter().map(|p| (p * (1.0 - p) / m as f64).sqrt()).collect()
}

pub fn survival_curve(
    q: &ContactMatrix,
    init: &InitSpec,
    trials: usize,
    base_seed: u64,
    grid: &[f64],
    t_max: Option<f64>,
    exec: Execution,
) -> Result<SurvivalCurve> {
    if trials == 0 {
        return Err(Error::InvalidArgument("need at least one trial".into()));
    }
    if grid.iter().any(|t| !(*t >= 0.0 && t.is_finite())) || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "time grid must be finite, nonnegative and strictly increasing".into(),
        ));
    }
    let outcomes = run_trials(q, init, trials, base_seed, t_max, exec)?;
    Ok(SurvivalCurve::from_outcomes(&outcomes, grid))
}
