//! Binary interval consensus: a four-state gossip protocol that lets every
//! node of a connected graph learn which of two opinions was initially held
//! by a majority.
//!
//! The crate is organised around the contact-rate matrix of the graph:
//!
//! - [`graph`] builds and validates contact-rate matrices (complete, path,
//!   cycle, star, Erdős–Rényi, or loaded from an edge list).
//! - [`protocol`] is the pure state machine: node states, the pairwise
//!   update rules and configuration bookkeeping.
//! - [`sim`] samples the continuous-time contact process exactly and
//!   aggregates independent trials into Monte Carlo summaries.
//! - [`spectral`] computes the decay rate `δ(Q, α)` from the killed
//!   generator matrices, exhaustively or in closed form.
//! - [`analytics`] holds the expected-time bounds and exact formulas.
//! - [`experiment`] drives batch experiments and renders CSV/JSON tables.
//!
//! Data-parallel loops go through [`par`], which uses rayon when the
//! `parallel` feature is enabled and runs sequentially otherwise. Results
//! are identical either way.

// `!(x > 0.0)` rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytics;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod par;
pub mod protocol;
pub mod sim;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{ContactMatrix, ErParams, Topology};
pub use par::Execution;
pub use protocol::{Configuration, InitSpec, NodeState, Placement};
