//! Execution policy for the data-parallel loops (Monte Carlo trials and
//! subset enumeration).
//!
//! Every parallel loop here is an *ordered* map over an index range, so a
//! reduction performed afterwards sees results in index order no matter how
//! the work was scheduled.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    /// Run on the rayon global pool. Falls back to [`Execution::Sequential`]
    /// when the crate is built without the `parallel` feature.
    #[cfg_attr(feature = "parallel", default)]
    Parallel,
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Evaluates `f(0), f(1), …, f(len - 1)` and returns the results in
    /// index order.
    pub fn map_range<T, F>(self, len: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Execution::Parallel {
            return (0..len).into_par_iter().map(f).collect();
        }
        (0..len).map(f).collect()
    }
}
