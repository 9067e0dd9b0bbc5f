//! Expected-time bounds and exact formulas.
//!
//! All functions are pure. Initial conditions are given as integer counts
//! `(s0, s1)` with `Zero` as the majority; `α = s0 / n` is derived where a
//! formula is stated in terms of `α`.

pub mod bounds;
pub mod complete;
pub mod er;
pub mod linalg;
pub mod star;

pub use bounds::{theorem_bound, AnalyticReport, TheoremBound};
pub use complete::{
    expected_t1_complete, expected_t1_complete_epoch_sum, expected_t1_complete_harmonic,
    harmonic, margin_asymptotics, MarginAsymptotics, MarginRegime,
};
pub use er::{er_time_bound, phi, phi_inverse};
pub use star::{
    expected_t1_star, star_dominant_term, star_hitting_oracle, star_hitting_times, StarModeState,
};
