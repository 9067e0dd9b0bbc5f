//! The generic bound `E(T_i) ≤ (log n + 1)/δ` and the report that carries
//! it alongside family-specific exact values.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Topology;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoremBound {
    pub bound_t1: f64,
    pub bound_t2: f64,
    pub bound_total: f64,
}

/// `bound_t1 = bound_t2 = (ln n + 1)/δ`, `bound_total = 2(ln n + 1)/δ`.
pub fn theorem_bound(delta: f64, n: f64) -> Result<TheoremBound> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::Domain(format!("δ must be positive, got {delta}")));
    }
    if !(n >= 2.0) {
        return Err(Error::Domain(format!("need n >= 2, got {n}")));
    }
    let b = (n.ln() + 1.0) / delta;
    Ok(TheoremBound {
        bound_t1: b,
        bound_t2: b,
        bound_total: 2.0 * b,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticReport {
    pub graph_family: Topology,
    pub n: usize,
    pub s0: usize,
    pub s1: usize,
    pub delta: f64,
    pub bound_t1: f64,
    pub bound_t2: f64,
    pub bound_total: f64,
    pub exact_t1: Option<f64>,
    pub dominant_term: Option<f64>,
    /// Names of the formulas behind each number, e.g. `harmonic_closed_form`.
    pub notes: Vec<String>,
}

impl AnalyticReport {
    pub fn new(family: Topology, n: usize, s0: usize, s1: usize, delta: f64) -> Result<Self> {
        let b = theorem_bound(delta, n as f64)?;
        Ok(AnalyticReport {
            graph_family: family,
            n,
            s0,
            s1,
            delta,
            bound_t1: b.bound_t1,
            bound_t2: b.bound_t2,
            bound_total: b.bound_total,
            exact_t1: None,
            dominant_term: None,
            notes: vec!["theorem_bound".into()],
        })
    }

    pub fn with_exact(mut self, value: f64, note: &str) -> Self {
        self.exact_t1 = Some(value);
        self.notes.push(note.into());
        self
    }

    pub fn with_dominant(mut self, value: f64, note: &str) -> Self {
        self.dominant_term = Some(value);
        self.notes.push(note.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("AnalyticReport serialises")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let b = theorem_bound(0.5, 100.0).unwrap();
        assert!((b.bound_t1 - 11.2103).abs() < 1e-4);
        assert_eq!(b.bound_t1, b.bound_t2);
        assert_eq!(b.bound_total, b.bound_t1 + b.bound_t2);

        let b = theorem_bound(1.0, std::f64::consts::E).unwrap();
        assert!((b.bound_t1 - 2.0).abs() < 1e-15);

        // Star with δ = (2α − 1)/n.
        let n = 200.0;
        let b = theorem_bound(0.5 / n, n).unwrap();
        assert!((b.bound_t1 - n * (n.ln() + 1.0) / 0.5).abs() < 1e-9);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(theorem_bound(0.0, 10.0), Err(Error::Domain(_))));
        assert!(theorem_bound(-1.0, 10.0).is_err());
        assert!(theorem_bound(f64::NAN, 10.0).is_err());
        assert!(theorem_bound(1.0, 1.0).is_err());
    }

    #[test]
    fn report_json_carries_notes() {
        let r = AnalyticReport::new(Topology::Complete, 5, 3, 2, 0.25)
            .unwrap()
            .with_exact(8.0 / 3.0, "harmonic_closed_form");
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["graph_family"], "complete");
        assert_eq!(v["notes"][1], "harmonic_closed_form");
        assert!(v["dominant_term"].is_null());
        assert_eq!(r.bound_total, r.bound_t1 + r.bound_t2);
    }
}
