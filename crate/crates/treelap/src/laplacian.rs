//! Laplacian transform machinery: the generalized Laplacian of a symmetric
//! matrix, the difference/summation matrix pair with its exact identities,
//! the compressed (n-1)x(n-1) matrix, eigenvector compression and lifting,
//! and sign-pattern classification of the compressed matrix.

use crate::error::Result;
use crate::matrix::{RectMatrix, SquareMatrix, SymMatrix};
use serde::{Deserialize, Serialize};

/// A symmetric matrix together with its generalized Laplacian: off-diagonal
/// (i,j) entry `-a_ij`, diagonal (i,i) entry `sum_{j != i} a_ij`. Row sums
/// are zero and the all-ones vector is always in the kernel.
#[derive(Debug, Clone)]
pub struct GeneralizedLaplacian {
    base: SymMatrix,
    matrix: SymMatrix,
}

impl GeneralizedLaplacian {
    pub fn base(&self) -> &SymMatrix {
        &self.base
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }
}

/// Builds the generalized Laplacian of a symmetric matrix. The diagonal of
/// the input is ignored: the definition sums only over j != i.
pub fn laplacian_of(a: &SymMatrix) -> GeneralizedLaplacian {
    let n = a.n();
    let mut e = vec![0f64; n * n];
    for i in 0..n {
        let mut row_sum = 0f64;
        for j in 0..n {
            if i == j {
                continue;
            }
            let aij = a.get(i, j);
            e[i * n + j] = -aij;
            row_sum += aij;
        }
        e[i * n + i] = row_sum;
    }
    let matrix = SymMatrix::from_entries(n, &e).expect("laplacian is symmetric");
    GeneralizedLaplacian {
        base: a.clone(),
        matrix,
    }
}

/// The (n-1) x n forward-difference matrix: rows (..., -1, 1, ...).
pub fn build_s(n: usize) -> Result<RectMatrix> {
    if n < 2 {
        return Err(crate::error::Error::SizeOutOfRange {
            n,
            min: 2,
            max: usize::MAX,
        });
    }
    let mut s = RectMatrix::zeros(n - 1, n);
    for i in 0..n - 1 {
        s.set(i, i, -1);
        s.set(i, i + 1, 1);
    }
    Ok(s)
}

/// The n x (n-1) summation matrix: zero first row, then a lower triangle of
/// ones.
pub fn build_t(n: usize) -> Result<RectMatrix> {
    if n < 2 {
        return Err(crate::error::Error::SizeOutOfRange {
            n,
            min: 2,
            max: usize::MAX,
        });
    }
    let mut t = RectMatrix::zeros(n, n - 1);
    for r in 1..n {
        for c in 0..r {
            t.set(r, c, 1);
        }
    }
    Ok(t)
}

/// The compressed matrix S * L * T, generally nonsymmetric, of size
/// (n-1) x (n-1). Entries are exact integers whenever the base matrix is.
///
/// Entry (i, j) equals `sum_{r > j} (L[i+1][r] - L[i][r])`, computed with
/// suffix sums.
pub fn compress(lap: &GeneralizedLaplacian) -> SquareMatrix {
    let l = lap.matrix();
    let n = l.n();
    debug_assert!(n >= 2, "compression needs n >= 2");
    let m = n - 1;
    let mut out = vec![0f64; m * m];
    let mut suffix = vec![0f64; n + 1];
    for i in 0..m {
        // suffix[j] = sum_{r >= j} (L[i+1][r] - L[i][r])
        suffix[n] = 0.0;
        for r in (0..n).rev() {
            suffix[r] = suffix[r + 1] + (l.get(i + 1, r) - l.get(i, r));
        }
        for j in 0..m {
            out[i * m + j] = suffix[j + 1];
        }
    }
    SquareMatrix::new(m, out, l.exact())
}

/// Applies the difference matrix to a vector: consecutive differences.
pub fn compress_vector(y: &[f64]) -> Vec<f64> {
    y.windows(2).map(|w| w[1] - w[0]).collect()
}

/// Applies the summation matrix (prefix sums with a leading zero), then
/// centers the result so it is orthogonal to the all-ones vector.
pub fn lift_vector(y: &[f64]) -> Vec<f64> {
    let n = y.len() + 1;
    let mut x = Vec::with_capacity(n);
    let mut acc = 0f64;
    x.push(0.0);
    for &v in y {
        acc += v;
        x.push(acc);
    }
    let mean = x.iter().sum::<f64>() / n as f64;
    for xi in x.iter_mut() {
        *xi -= mean;
    }
    x
}

/// Sign classification of the off-diagonal entries of a square matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignClass {
    AllNonneg,
    AllNonpos,
    AllPositive,
    AllNegative,
    Mixed,
}

/// Outcome of [`sign_pattern`]: classification plus entry counts and, when
/// mixed, the first offending position (1-indexed).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignPattern {
    pub classification: SignClass,
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
    pub witness: Option<(usize, usize)>,
}

impl SignPattern {
    /// Every off-diagonal entry is >= 0.
    pub fn all_nonneg(&self) -> bool {
        self.negative == 0
    }

    /// Every off-diagonal entry is <= 0.
    pub fn all_nonpos(&self) -> bool {
        self.positive == 0
    }
}

/// Classifies the off-diagonal entries of a square matrix. Comparisons are
/// exact for exact matrices; otherwise entries within `1e-12 * max|entry|`
/// of zero count as zero, so the integer and float paths agree on integer
/// input.
pub fn sign_pattern(m: &SquareMatrix) -> SignPattern {
    let n = m.n();
    let zero_tol = if m.exact() { 0.0 } else { 1e-12 * m.scale() };
    let mut positive = 0usize;
    let mut negative = 0usize;
    let mut zero = 0usize;
    let mut first_sign: i8 = 0;
    let mut witness = None;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let v = m.get(i, j);
            let s: i8 = if v.abs() <= zero_tol {
                0
            } else if v > 0.0 {
                1
            } else {
                -1
            };
            match s {
                0 => zero += 1,
                1 => positive += 1,
                -1 => negative += 1,
                _ => unreachable!(),
            }
            if s != 0 {
                if first_sign == 0 {
                    first_sign = s;
                } else if s != first_sign && witness.is_none() {
                    witness = Some((i + 1, j + 1));
                }
            }
        }
    }
    let classification = if positive > 0 && negative > 0 {
        SignClass::Mixed
    } else if negative == 0 && zero == 0 && positive > 0 {
        SignClass::AllPositive
    } else if positive == 0 && zero == 0 && negative > 0 {
        SignClass::AllNegative
    } else if negative == 0 {
        SignClass::AllNonneg
    } else {
        SignClass::AllNonpos
    };
    SignPattern {
        classification,
        positive,
        negative,
        zero,
        witness: if classification == SignClass::Mixed {
            witness
        } else {
            None
        },
    }
}
