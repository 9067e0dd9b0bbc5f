//! Small dense linear solves used as oracles for the closed forms.

use crate::error::{Error, Result};

/// Solves `A x = b` for a row-major `n × n` matrix by Gaussian elimination
/// with partial pivoting.
pub fn solve_dense(a: &[f64], b: &[f64]) -> Result<Vec<f64>> {
    let n = b.len();
    assert_eq!(a.len(), n * n, "matrix has wrong length");
    let mut m = a.to_vec();
    let mut x = b.to_vec();
    let scale = a.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r, &s| m[r * n + col].abs().total_cmp(&m[s * n + col].abs()))
            .expect("non-empty range");
        if m[pivot * n + col].abs() <= 1e-14 * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::Singular(format!("zero pivot in column {col}")));
        }
        if pivot != col {
            for k in 0..n {
                m.swap(pivot * n + k, col * n + k);
            }
            x.swap(pivot, col);
        }
        for r in col + 1..n {
            let f = m[r * n + col] / m[col * n + col];
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                m[r * n + k] -= f * m[col * n + k];
            }
            x[r] -= f * x[col];
        }
    }
    for col in (0..n).rev() {
        let tail: f64 = (col + 1..n).map(|k| m[col * n + k] * x[k]).sum();
        x[col] = (x[col] - tail) / m[col * n + col];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_systems() {
        // 2x + y = 3, x + 3y = 5 → x = 0.8, y = 1.4
        let x = solve_dense(&[2.0, 1.0, 1.0, 3.0], &[3.0, 5.0]).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-15 && (x[1] - 1.4).abs() < 1e-15);
        // Needs a row swap.
        let x = solve_dense(&[0.0, 1.0, 1.0, 0.0], &[2.0, 7.0]).unwrap();
        assert_eq!(x, vec![7.0, 2.0]);
    }

    #[test]
    fn singular_is_reported() {
        assert!(matches!(
            solve_dense(&[1.0, 2.0, 2.0, 4.0], &[1.0, 2.0]),
            Err(Error::Singular(_))
        ));
    }
}
