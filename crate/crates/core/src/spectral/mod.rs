//! Spectral decay rate `δ(Q, α)` of the killed generators `Q_S`.

pub mod closed_form;
pub mod delta;
pub mod eigen;
pub mod killed;

pub use closed_form::{
    closed_form_complete, closed_form_cycle, closed_form_path, closed_form_star, delta_er_bound,
};
pub use delta::{
    delta_closed_form, delta_exhaustive, delta_exhaustive_with, delta_rate_lower_bound,
    delta_sampled, EnumerationOptions, Method, SpectralResult, DEFAULT_MAX_ENUMERATION_N,
};
pub use killed::{build_qs, dominant_eigenvalue, KilledMatrix, SubsetMask};
