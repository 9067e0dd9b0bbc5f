//! Killed generator matrices `Q_S` and their dominant eigenvalue.
//!
//! For a non-empty `S ⊆ V`, `Q_S` keeps the diagonal `-q_i` on every row,
//! keeps the off-diagonal rates on rows outside `S`, and zeroes the
//! off-diagonal entries of rows in `S`. Its spectrum is `{-q_i : i ∈ S}`
//! together with the spectrum of the symmetric principal block `M_S` on
//! `S^c`, so the dominant eigenvalue can be found with a symmetric solver.

use serde::{Deserialize, Serialize};

use super::eigen::{jacobi_eigen, residual, frobenius_norm};
use crate::error::{Error, Result};
use crate::graph::ContactMatrix;

/// Largest graph a [`SubsetMask`] can index.
pub const MAX_MASK_NODES: usize = 64;

/// A subset of `{0, …, n-1}` as a bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubsetMask(pub u64);

impl SubsetMask {
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        for &i in indices {
            if i >= MAX_MASK_NODES {
                return Err(Error::InvalidArgument(format!(
                    "node index {} exceeds the {MAX_MASK_NODES}-node subset limit",
                    i + 1
                )));
            }
            bits |= 1 << i;
        }
        Ok(SubsetMask(bits))
    }

    /// The whole vertex set of an `n`-node graph.
    pub fn full(n: usize) -> Self {
        SubsetMask(if n >= 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Members as 0-based indices in increasing order.
    pub fn indices(self) -> Vec<usize> {
        (0..64).filter(|&i| self.contains(i)).collect()
    }

    /// Members as 1-based node labels.
    pub fn labels(self) -> Vec<usize> {
        self.indices().into_iter().map(|i| i + 1).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KilledMatrix {
    n: usize,
    subset: SubsetMask,
    entries: Vec<f64>,
}

impl KilledMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn subset(&self) -> SubsetMask {
        self.subset
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// The symmetric block `M_S` on `S^c`, with the indices of `S^c` it was
    /// taken from.
    pub fn restricted_block(&self) -> (Vec<usize>, Vec<f64>) {
        let rest: Vec<usize> = (0..self.n).filter(|&i| !self.subset.contains(i)).collect();
        let m = rest.len();
        let mut block = vec![0.0; m * m];
        for (a, &i) in rest.iter().enumerate() {
            for (b, &j) in rest.iter().enumerate() {
                block[a * m + b] = self.entry(i, j);
            }
        }
        (rest, block)
    }
}

pub fn build_qs(q: &ContactMatrix, s: SubsetMask) -> Result<KilledMatrix> {
    let n = q.n();
    if n > MAX_MASK_NODES {
        return Err(Error::InvalidSize(format!(
            "subset masks support at most {MAX_MASK_NODES} nodes, got {n}"
        )));
    }
    if s.is_empty() {
        return Err(Error::InvalidArgument("subset S must be non-empty".into()));
    }
    if s.0 & !SubsetMask::full(n).0 != 0 {
        return Err(Error::InvalidArgument(format!("subset contains nodes beyond n = {n}")));
    }
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        entries[i * n + i] = -q.degree_rate(i);
        if !s.contains(i) {
            for j in 0..n {
                if j != i {
                    entries[i * n + j] = q.rate(i, j);
                }
            }
        }
    }
    Ok(KilledMatrix {
        n,
        subset: s,
        entries,
    })
}

/// Largest eigenvalue of `Q_S`: the larger of `max_{i∈S} -q_i` and the top
/// eigenvalue of `M_S`. Strictly negative on a connected graph.
pub fn dominant_eigenvalue(qs: &KilledMatrix) -> Result<f64> {
    let killed_max = qs
        .subset
        .indices()
        .into_iter()
        .map(|i| qs.entry(i, i))
        .fold(f64::NEG_INFINITY, f64::max);
    let (rest, block) = qs.restricted_block();
    if rest.is_empty() {
        return Ok(killed_max);
    }
    let top = jacobi_eigen(&block, rest.len(), false)?.max_value();
    Ok(killed_max.max(top))
}

/// Top eigenpair of `M_S` with its residual `‖M_S x − λ x‖₂`, and the
/// Frobenius norm of `M_S`. `None` when `S = V`.
pub fn block_eigenpair(qs: &KilledMatrix) -> Result<Option<BlockEigenpair>> {
    let (rest, block) = qs.restricted_block();
    if rest.is_empty() {
        return Ok(None);
    }
    let m = rest.len();
    let e = jacobi_eigen(&block, m, true)?;
    let k = e.argmax();
    let vector = e.vector(k).expect("vectors requested");
    Ok(Some(BlockEigenpair {
        value: e.values[k],
        residual: residual(&block, m, &vector, e.values[k]),
        norm: frobenius_norm(&block),
        vector,
        support: rest,
    }))
}

#[derive(Debug, Clone)]
pub struct BlockEigenpair {
    pub value: f64,
    pub vector: Vec<f64>,
    pub support: Vec<usize>,
    pub residual: f64,
    pub norm: f64,
}

/// Dominant eigenvalue for `mask` without materialising `Q_S`. `degrees`
/// holds `q_i` per node and `block` is scratch space of at least `n²`.
pub(crate) fn dominant_for_mask(
    q: &ContactMatrix,
    degrees: &[f64],
    mask: SubsetMask,
    rest: &mut Vec<usize>,
    block: &mut Vec<f64>,
) -> Result<f64> {
    let n = q.n();
    let mut killed_max = f64::NEG_INFINITY;
    rest.clear();
    for (i, &d) in degrees.iter().enumerate().take(n) {
        if mask.contains(i) {
            killed_max = killed_max.max(-d);
        } else {
            rest.push(i);
        }
    }
    let m = rest.len();
    if m == 0 {
        return Ok(killed_max);
    }
    block.clear();
    block.resize(m * m, 0.0);
    for (a, &i) in rest.iter().enumerate() {
        for (b, &j) in rest.iter().enumerate() {
            block[a * m + b] = if i == j { -degrees[i] } else { q.rate(i, j) };
        }
    }
    let top = jacobi_eigen(block, m, false)?.max_value();
    Ok(killed_max.max(top))
}
