//! Exact simulation of the contact process.
//!
//! Every pair `(i, j)` meets at the points of an independent Poisson process
//! of rate `q_ij`. The superposition is sampled directly: waiting times are
//! exponential with the total rate `R = Σ_{i<j} q_ij` and the pair is drawn
//! with probability `q_ij / R` from a cumulative table.

pub mod montecarlo;

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::ContactMatrix;
use crate::protocol::{Configuration, InitSpec, NodeState};

pub use montecarlo::{
    run_monte_carlo, run_monte_carlo_with, run_trials, survival_curve, MonteCarloSummary,
    SurvivalCurve,
};

/// Time limit used when no `δ` estimate is available.
pub const FALLBACK_T_MAX: f64 = 1e6;

/// `50 · (2/δ)(ln n + 1)`, fifty times the expected-time bound for both
/// phases, or [`FALLBACK_T_MAX`] without `δ`.
pub fn default_t_max(n: usize, delta: Option<f64>) -> f64 {
    match delta {
        Some(d) if d > 0.0 && d.is_finite() => 50.0 * (2.0 / d) * ((n as f64).ln() + 1.0),
        _ => FALLBACK_T_MAX,
    }
}

/// Draws contacts from a contact-rate matrix.
#[derive(Debug, Clone)]
pub struct ContactSampler {
    pairs: Vec<(u32, u32)>,
    cumulative: Vec<f64>,
    total: f64,
}

impl ContactSampler {
    pub fn new(q: &ContactMatrix) -> Self {
        let mut pairs = Vec::new();
        let mut cumulative = Vec::new();
        let mut total = 0.0;
        for (i, j, r) in q.edges() {
            total += r;
            pairs.push((i as u32, j as u32));
            cumulative.push(total);
        }
        ContactSampler {
            pairs,
            cumulative,
            total,
        }
    }

    /// Aggregate rate `R`.
    pub fn total_rate(&self) -> f64 {
        self.total
    }

    /// Waiting time to the next contact.
    #[inline]
    pub fn waiting_time<R: Rng>(&self, rng: &mut R) -> f64 {
        let e: f64 = rng.sample(Exp1);
        e / self.total
    }

    /// The next contacted pair `(i, j)` with `i < j`.
    #[inline]
    pub fn pair<R: Rng>(&self, rng: &mut R) -> (usize, usize) {
        let u = rng.random::<f64>() * self.total;
        let k = self
            .cumulative
            .partition_point(|&c| c <= u)
            .min(self.pairs.len() - 1);
        let (i, j) = self.pairs[k];
        (i as usize, j as usize)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrialStatus {
    /// Both phases finished.
    Completed,
    /// `s0 = s1`: stopped at the end of phase 1, phase 2 cannot finish.
    Draw,
    /// `t_max` reached first.
    Truncated,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    /// First instant with no `One` node; absent if truncated before it.
    pub t1: Option<f64>,
    /// Time from `t1` until no `E1` node remains; absent for draws and
    /// truncated trials.
    pub t2: Option<f64>,
    pub total_events: u64,
    pub final_config: Configuration,
    pub status: TrialStatus,
    /// Completed with exactly `s0 − s1` `Zero` and `2·s1` `E0` nodes.
    pub correct: bool,
    /// Simulated time at which the trial stopped.
    pub end_time: f64,
}

impl TrialOutcome {
    pub fn is_truncated(&self) -> bool {
        self.status == TrialStatus::Truncated
    }
}

/// One contact as seen by an [`EventObserver`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactEvent {
    /// 1-based event count within the trial.
    pub index: u64,
    pub time: f64,
    pub i: usize,
    pub j: usize,
    pub before: (NodeState, NodeState),
    pub after: (NodeState, NodeState),
}

/// Receives every contact of a trial, with the configuration after it.
pub trait EventObserver {
    fn on_event(&mut self, event: &ContactEvent, config: &Configuration);
}

impl EventObserver for () {
    #[inline]
    fn on_event(&mut self, _: &ContactEvent, _: &Configuration) {}
}

/// Per-event CSV log of a trial.
#[derive(Debug, Default, Clone)]
pub struct TrialLog {
    buf: String,
}

impl TrialLog {
    pub const HEADER: &'static str =
        "event_index,time,i,j,state_i_before,state_j_before,state_i_after,state_j_after";

    pub fn new() -> Self {
        TrialLog {
            buf: format!("{}\n", Self::HEADER),
        }
    }

    pub fn as_csv(&self) -> &str {
        &self.buf
    }

    pub fn into_csv(self) -> String {
        self.buf
    }
}

impl EventObserver for TrialLog {
    fn on_event(&mut self, e: &ContactEvent, _: &Configuration) {
        let _ = writeln!(
            self.buf,
            "{},{},{},{},{},{},{},{}",
            e.index,
            e.time,
            e.i + 1,
            e.j + 1,
            e.before.0,
            e.before.1,
            e.after.0,
            e.after.1
        );
    }
}

pub fn simulate_trial(
    q: &ContactMatrix,
    init: &InitSpec,
    seed: u64,
    t_max: Option<f64>,
) -> Result<TrialOutcome> {
    simulate_trial_observed(q, &ContactSampler::new(q), init, seed, t_max, &mut ())
}

/// Runs one trial with a prebuilt sampler, reporting every contact to
/// `observer`. `t_max = None` means no limit.
pub fn simulate_trial_observed<O: EventObserver>(
    q: &ContactMatrix,
    sampler: &ContactSampler,
    init: &InitSpec,
    seed: u64,
    t_max: Option<f64>,
    observer: &mut O,
) -> Result<TrialOutcome> {
    let n = q.n();
    if init.s1 > init.s0 {
        return Err(Error::InvalidArgument(format!(
            "s1 = {} exceeds s0 = {}; relabel so that Zero is the majority",
            init.s1, init.s0
        )));
    }
    if let Some(t) = t_max {
        if !(t > 0.0) {
            return Err(Error::InvalidArgument(format!("t_max must be positive, got {t}")));
        }
    }
    let limit = t_max.unwrap_or(f64::INFINITY);
    let mut config = init.configuration(n)?;
    let invariant = config.conserved_difference();
    let draw = init.is_draw();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut time = 0.0;
    let mut events = 0u64;
    let mut t1 = (config.count(NodeState::One) == 0).then_some(0.0);
    let mut t2 = None;
    let finished = |t1: Option<f64>, t2: Option<f64>| t2.is_some() || (draw && t1.is_some());
    if t1.is_some() && !draw && config.count(NodeState::E1) == 0 {
        t2 = Some(0.0);
    }

    while !finished(t1, t2) {
        if sampler.total_rate() == 0.0 {
            time = limit;
            break;
        }
        let next = time + sampler.waiting_time(&mut rng);
        if next > limit {
            time = limit;
            break;
        }
        time = next;
        let (i, j) = sampler.pair(&mut rng);
        let before = (config.state(i), config.state(j));
        let after = config.contact(i, j);
        events += 1;
        debug_assert_eq!(config.conserved_difference(), invariant);
        observer.on_event(
            &ContactEvent {
                index: events,
                time,
                i,
                j,
                before,
                after,
            },
            &config,
        );
        if before == after {
            continue;
        }
        match t1 {
            None => {
                if config.count(NodeState::One) == 0 {
                    t1 = Some(time);
                    if !draw && config.count(NodeState::E1) == 0 {
                        t2 = Some(0.0);
                    }
                }
            }
            Some(start) => {
                if config.count(NodeState::E1) == 0 {
                    t2 = Some(time - start);
                }
            }
        }
    }

    assert_eq!(
        config.conserved_difference(),
        invariant,
        "conserved difference changed during a trial"
    );
    let status = if t2.is_some() {
        TrialStatus::Completed
    } else if draw && t1.is_some() {
        TrialStatus::Draw
    } else {
        TrialStatus::Truncated
    };
    let correct = status == TrialStatus::Completed
        && config.count(NodeState::Zero) == init.s0 - init.s1
        && config.count(NodeState::E0) == 2 * init.s1
        && config.count(NodeState::One) == 0
        && config.count(NodeState::E1) == 0;
    Ok(TrialOutcome {
        t1,
        t2,
        total_events: events,
        final_config: config,
        status,
        correct,
        end_time: time,
    })
}
