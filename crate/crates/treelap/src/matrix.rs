//! Dense matrix types.
//!
//! [`SymMatrix`] is the workhorse: a real symmetric matrix with an exactness
//! flag tracking whether every entry is an integer, so downstream sign checks
//! can rely on exact comparisons. [`SquareMatrix`] holds general (possibly
//! nonsymmetric) square matrices such as the compressed form produced by
//! [`crate::laplacian::compress`]. [`RectMatrix`] is integer-only and covers
//! the difference/summation matrices.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub(crate) const ASYMMETRY_REL_TOL: f64 = 1e-12;

fn is_integral(x: f64) -> bool {
    x.fract() == 0.0 && x.abs() < 2f64.powi(53)
}

/// Dense real symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymMatrix {
    n: usize,
    entries: Vec<f64>,
    exact: bool,
}

impl SymMatrix {
    /// Builds a symmetric matrix from row-major entries.
    ///
    /// Entries are symmetrized by averaging; asymmetry beyond
    /// `1e-12 * max|entry|` is rejected. The exactness flag is set when every
    /// stored entry is an integer.
    pub fn from_entries(n: usize, entries: &[f64]) -> Result<Self> {
        if n == 0 {
            return Err(Error::SizeOutOfRange {
                n,
                min: 1,
                max: usize::MAX,
            });
        }
        if entries.len() != n * n {
            return Err(Error::NotSquare {
                rows: n,
                len: entries.len(),
            });
        }
        let mut scale = 0f64;
        for (idx, &e) in entries.iter().enumerate() {
            if !e.is_finite() {
                return Err(Error::NonFinite {
                    i: idx / n,
                    j: idx % n,
                });
            }
            scale = scale.max(e.abs());
        }
        // One part in a thousand of slack keeps inputs sitting exactly on
        // the decimal threshold on the accepted side of the rounding.
        let tol = ASYMMETRY_REL_TOL * scale * 1.001;
        let mut out = vec![0f64; n * n];
        for i in 0..n {
            out[i * n + i] = entries[i * n + i];
            for j in (i + 1)..n {
                let a = entries[i * n + j];
                let b = entries[j * n + i];
                if (a - b).abs() > tol {
                    return Err(Error::Asymmetric { i, j, delta: a - b });
                }
                let avg = 0.5 * (a + b);
                out[i * n + j] = avg;
                out[j * n + i] = avg;
            }
        }
        let exact = out.iter().all(|&x| is_integral(x));
        Ok(SymMatrix {
            n,
            entries: out,
            exact,
        })
    }

    /// Zero matrix of size n.
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            entries: vec![0.0; n * n],
            exact: true,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn exact(&self) -> bool {
        self.exact
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    /// Sets the (i, j) and (j, i) entries. Clears the exactness flag when the
    /// value is not an integer.
    pub fn set_sym(&mut self, i: usize, j: usize, value: f64) {
        self.entries[i * self.n + j] = value;
        self.entries[j * self.n + i] = value;
        if !is_integral(value) {
            self.exact = false;
        }
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Largest absolute entry. Used as the scale for relative tolerances.
    pub fn scale(&self) -> f64 {
        self.entries.iter().fold(0f64, |m, &x| m.max(x.abs()))
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Parses the CSV matrix format: one row per line, comma-separated
    /// decimal or integer literals. The exactness flag is set only when every
    /// token parses as an integer literal.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rows: Vec<Vec<f64>> = Vec::new();
        let mut all_int = true;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut row = Vec::new();
            for tok in line.split(',') {
                let tok = tok.trim();
                if tok.parse::<i64>().is_err() {
                    all_int = false;
                }
                let v: f64 = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad matrix entry '{tok}'")))?;
                row.push(v);
            }
            rows.push(row);
        }
        let n = rows.len();
        if n == 0 {
            return Err(Error::Parse("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    len: row.len() * n,
                });
            }
            entries.extend_from_slice(row);
        }
        let mut m = SymMatrix::from_entries(n, &entries)?;
        m.exact = m.exact && all_int;
        Ok(m)
    }

    /// View as a general square matrix.
    pub fn to_square(&self) -> SquareMatrix {
        SquareMatrix::new(self.n, self.entries.clone(), self.exact)
    }

    /// Writes the CSV matrix format; integer literals when exact.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n {
            let row: Vec<String> = self
                .row(i)
                .iter()
                .map(|&x| {
                    if self.exact {
                        format!("{}", x as i64)
                    } else {
                        format!("{x}")
                    }
                })
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// General (possibly nonsymmetric) square matrix, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SquareMatrix {
    n: usize,
    entries: Vec<f64>,
    exact: bool,
}

impl SquareMatrix {
    pub fn new(n: usize, entries: Vec<f64>, exact: bool) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        SquareMatrix { n, entries, exact }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn exact(&self) -> bool {
        self.exact
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn scale(&self) -> f64 {
        self.entries.iter().fold(0f64, |m, &x| m.max(x.abs()))
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Exact integer view of the entries, available when the matrix is exact.
    pub fn to_int(&self) -> Option<Vec<i128>> {
        if !self.exact {
            return None;
        }
        Some(self.entries.iter().map(|&x| x as i128).collect())
    }
}

/// Rectangular matrix with exact integer entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl RectMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<i64>) -> Self {
        debug_assert_eq!(entries.len(), rows * cols);
        RectMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RectMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RectMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.cols + j] = v;
    }

    /// Exact integer matrix product.
    pub fn mul(&self, rhs: &RectMatrix) -> RectMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = RectMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

pub(crate) fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0f64, |m, &x| m.max(x.abs()))
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm2(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}
