//! `δ(Q, α)`: the smallest `|λ_{Q_S}|` over subsets `S` with
//! `|S| = s0 - s1`.
//!
//! Subsets of a fixed size are visited in colexicographic order, split into
//! contiguous rank ranges for parallel evaluation. The reduction keeps the
//! first subset (lowest rank) attaining the minimum, so the reported
//! minimiser does not depend on scheduling.

use std::ops::RangeInclusive;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::closed_form;
use super::killed::{dominant_for_mask, SubsetMask, MAX_MASK_NODES};
use crate::error::{Error, Result};
use crate::graph::{ContactMatrix, Topology};
use crate::par::Execution;

/// Default limit on `n` for exhaustive enumeration.
pub const DEFAULT_MAX_ENUMERATION_N: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exhaustive,
    ClosedForm,
    /// Minimum over randomly sampled subsets. This over-estimates `δ` (it
    /// is a minimum over fewer candidates) and is not certified.
    Sampled,
    /// Certified lower bound from the contact rates alone
    /// ([`delta_rate_lower_bound`]).
    RateBound,
    /// High-probability lower bound for Erdős–Rényi graphs.
    ErBound,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exhaustive => "exhaustive",
            Method::ClosedForm => "closed_form",
            Method::Sampled => "sampled",
            Method::RateBound => "rate_bound",
            Method::ErBound => "er_bound",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    pub delta: f64,
    /// 1-based node labels.
    pub argmin_subset: Vec<usize>,
    pub method: Method,
    pub subset_size: usize,
}

impl SpectralResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("SpectralResult serialises")
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EnumerationOptions {
    pub max_n: usize,
    pub execution: Execution,
    /// Use one anchored representative per rotation class on
    /// vertex-transitive topologies.
    pub symmetry_pruning: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            max_n: DEFAULT_MAX_ENUMERATION_N,
            execution: Execution::default(),
            symmetry_pruning: true,
        }
    }
}

fn subset_size(n: usize, s0: usize, s1: usize) -> Result<usize> {
    if s0 + s1 != n {
        return Err(Error::InvalidArgument(format!(
            "counts s0 = {s0}, s1 = {s1} must sum to n = {n}"
        )));
    }
    if s0 <= s1 {
        return Err(Error::InvalidArgument(format!(
            "δ needs a strict majority (s0 = {s0} > s1 = {s1})"
        )));
    }
    Ok(s0 - s1)
}

pub fn delta_exhaustive(q: &ContactMatrix, s0: usize, s1: usize) -> Result<SpectralResult> {
    delta_exhaustive_with(q, s0, s1, EnumerationOptions::default())
}

pub fn delta_exhaustive_with(
    q: &ContactMatrix,
    s0: usize,
    s1: usize,
    opts: EnumerationOptions,
) -> Result<SpectralResult> {
    let k = subset_size(q.n(), s0, s1)?;
    let (delta, mask) = min_abs_eigenvalue_over_sizes(q, k..=k, opts)?;
    Ok(SpectralResult {
        delta,
        argmin_subset: mask.labels(),
        method: Method::Exhaustive,
        subset_size: k,
    })
}

/// Minimum of `|λ_{Q_S}|` over all `S` whose size lies in `sizes`, with a
/// minimiser (smallest size first, then lowest colex rank).
pub fn min_abs_eigenvalue_over_sizes(
    q: &ContactMatrix,
    sizes: RangeInclusive<usize>,
    opts: EnumerationOptions,
) -> Result<(f64, SubsetMask)> {
    let n = q.n();
    let limit = opts.max_n.min(MAX_MASK_NODES);
    if n > limit {
        return Err(Error::TooLarge { n, max_n: limit });
    }
    if *sizes.start() == 0 || *sizes.end() > n || sizes.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "subset sizes {sizes:?} must lie in 1..={n}"
        )));
    }
    let degrees: Vec<f64> = (0..n).map(|i| q.degree_rate(i)).collect();
    let anchored = opts.symmetry_pruning && q.topology().is_vertex_transitive();

    let mut best: Option<(f64, SubsetMask)> = None;
    for k in sizes {
        let candidate = if anchored {
            // Rotate any subset so that it contains node 0.
            min_over_combinations(opts.execution, n - 1, k - 1, |sub| {
                SubsetMask(sub << 1 | 1)
            }, q, &degrees)?
        } else {
            min_over_combinations(opts.execution, n, k, SubsetMask, q, &degrees)?
        };
        if best.is_none_or(|(b, _)| candidate.0 < b) {
            best = Some(candidate);
        }
    }
    Ok(best.expect("non-empty size range"))
}

/// Smallest `|λ|` over all `k`-subsets of `m` items, each mapped to a node
/// subset by `to_mask`.
fn min_over_combinations(
    exec: Execution,
    m: usize,
    k: usize,
    to_mask: impl Fn(u64) -> SubsetMask + Sync + Send,
    q: &ContactMatrix,
    degrees: &[f64],
) -> Result<(f64, SubsetMask)> {
    let total = binomial(m as u64, k as u64);
    let chunks = total.div_ceil(CHUNK).max(1);
    let partials = exec.map_range(chunks, |c| -> Result<Option<(f64, SubsetMask)>> {
        let start = c * CHUNK;
        let end = (start + CHUNK).min(total);
        let (mut rest, mut block) = (Vec::with_capacity(m + 1), Vec::new());
        let mut bits = unrank_colex(start, k);
        let mut best: Option<(f64, SubsetMask)> = None;
        for rank in start..end {
            let mask = to_mask(bits);
            let lambda = dominant_for_mask(q, degrees, mask, &mut rest, &mut block)?;
            let value = lambda.abs();
            if best.is_none_or(|(b, _)| value < b) {
                best = Some((value, mask));
            }
            if rank + 1 < end {
                bits = next_combination(bits);
            }
        }
        Ok(best)
    });
    let mut best: Option<(f64, SubsetMask)> = None;
    for partial in partials {
        if let Some((v, mask)) = partial? {
            if best.is_none_or(|(b, _)| v < b) {
                best = Some((v, mask));
            }
        }
    }
    best.ok_or_else(|| Error::InvalidArgument("no subsets to enumerate".into()))
}

const CHUNK: u64 = 2048;

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Bit mask of the `rank`-th `k`-subset in colexicographic order.
fn unrank_colex(mut rank: u64, k: usize) -> u64 {
    let mut bits = 0u64;
    for i in (1..=k as u64).rev() {
        // Largest c with C(c, i) <= rank.
        let mut c = i - 1;
        while binomial(c + 1, i) <= rank {
            c += 1;
        }
        rank -= binomial(c, i);
        bits |= 1 << c;
    }
    bits
}

/// Next mask with the same popcount (Gosper's hack).
#[inline]
fn next_combination(x: u64) -> u64 {
    if x == 0 {
        return 0;
    }
    let c = x & x.wrapping_neg();
    let r = x.wrapping_add(c);
    (((r ^ x) >> 2) / c) | r
}

/// Minimum of `|λ_{Q_S}|` over `samples` uniformly random subsets of size
/// `s0 - s1`. An upper estimate of `δ`, tagged [`Method::Sampled`].
pub fn delta_sampled(
    q: &ContactMatrix,
    s0: usize,
    s1: usize,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<SpectralResult> {
    let n = q.n();
    let k = subset_size(n, s0, s1)?;
    if n > MAX_MASK_NODES {
        return Err(Error::InvalidSize(format!(
            "subset masks support at most {MAX_MASK_NODES} nodes, got {n}"
        )));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let degrees: Vec<f64> = (0..n).map(|i| q.degree_rate(i)).collect();
    let values = exec.map_range(samples as u64, |s| -> Result<(f64, SubsetMask)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(s));
        let picked = index::sample(&mut rng, n, k).into_vec();
        let mask = SubsetMask::from_indices(&picked)?;
        let (mut rest, mut block) = (Vec::new(), Vec::new());
        let lambda = dominant_for_mask(q, &degrees, mask, &mut rest, &mut block)?;
        Ok((lambda.abs(), mask))
    });
    let mut best: Option<(f64, SubsetMask)> = None;
    for v in values {
        let (value, mask) = v?;
        if best.is_none_or(|(b, _)| value < b) {
            best = Some((value, mask));
        }
    }
    let (delta, mask) = best.expect("samples > 0");
    Ok(SpectralResult {
        delta,
        argmin_subset: mask.labels(),
        method: Method::Sampled,
        subset_size: k,
    })
}

/// Exact `δ` for the named topologies, with a minimising subset.
///
/// When `s1 = 0` the only admissible subset is `S = V` and `δ` is the
/// smallest total node rate; the closed forms are used otherwise.
pub fn delta_closed_form(q: &ContactMatrix, s0: usize, s1: usize) -> Result<SpectralResult> {
    let n = q.n();
    let k = subset_size(n, s0, s1)?;
    let alpha = s0 as f64 / n as f64;
    let (delta, members): (f64, Vec<usize>) = if k == n {
        let min_rate = (0..n).map(|i| q.degree_rate(i)).fold(f64::INFINITY, f64::min);
        (min_rate, (1..=n).collect())
    } else {
        match q.topology() {
            Topology::Complete => (closed_form::closed_form_complete(n, s0, s1)?, (1..=k).collect()),
            Topology::Path => (closed_form::closed_form_path(n, alpha)?, (1..=k).collect()),
            Topology::Cycle => (closed_form::closed_form_cycle(n, alpha)?, (1..=k).collect()),
            // Hub (node 1) stays outside S.
            Topology::Star => (closed_form::closed_form_star(n, alpha)?, (2..=k + 1).collect()),
            other => {
                return Err(Error::Unsupported(format!(
                    "no closed form for δ on {other:?} graphs"
                )))
            }
        }
    };
    Ok(SpectralResult {
        delta,
        argmin_subset: members,
        method: Method::ClosedForm,
        subset_size: k,
    })
}

/// Certified lower bound on `δ` for any graph: every eigenvalue of `Q_S`
/// is at most `-min(min_{i∈S} q_i, min_{i∉S} Σ_{j∈S} q_ij)`, and the inner
/// sum is at least the sum of the `k` smallest off-diagonal rates of row `i`.
pub fn delta_rate_lower_bound(q: &ContactMatrix, s0: usize, s1: usize) -> Result<f64> {
    let n = q.n();
    let k = subset_size(n, s0, s1)?;
    let mut bound = f64::INFINITY;
    for i in 0..n {
        let mut row: Vec<f64> = (0..n).filter(|&j| j != i).map(|j| q.rate(i, j)).collect();
        row.sort_by(f64::total_cmp);
        bound = bound.min(q.degree_rate(i));
        if k < n {
            bound = bound.min(row[..k].iter().sum());
        }
    }
    Ok(bound)
}
