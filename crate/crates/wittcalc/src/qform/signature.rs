//! Signature of a symmetric integer matrix by exact congruence diagonalisation.

use num_rational::Ratio;

use crate::error::{validation, Result};
use crate::matrix::Matrix;

use super::QForm;

type Q = Ratio<i128>;

/// Number of positive minus number of negative diagonal entries after diagonalising over the rationals.
pub fn signature_of_matrix(m: &Matrix) -> i64 {
    let n = m.rows();
    let mut a: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| Q::from_integer(m[(i, j)] as i128)).collect()).collect();
    let zero = Q::from_integer(0);
    let mut sig = 0i64;
    for k in 0..n {
        if a[k][k] == zero {
            if let Some(p) = (k + 1..n).find(|&p| a[p][p] != zero) {
                a.swap(k, p);
                for row in a.iter_mut() {
                    row.swap(k, p);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| a[k][j] != zero) {
                // e_k ← e_k + e_j gives a non-zero diagonal entry 2·a[k][j].
                for c in 0..n {
                    let v = a[j][c];
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j];
                    a[r][k] += v;
                }
            } else {
                continue;
            }
        }
        let pivot = a[k][k];
        for i in k + 1..n {
            let f = a[i][k] / pivot;
            if f == zero {
                continue;
            }
            for c in k..n {
                let v = a[k][c];
                a[i][c] -= f * v;
            }
            for r in k..n {
                let v = a[r][k];
                a[r][i] -= f * v;
            }
        }
        sig += if pivot > zero { 1 } else { -1 };
    }
    sig
}

/// Signature of a symmetric form.
pub fn signature(f: &QForm) -> Result<i64> {
    if f.epsilon() != 1 {
        return validation("signature is defined for symmetric forms");
    }
    Ok(signature_of_matrix(f.lambda()))
}
