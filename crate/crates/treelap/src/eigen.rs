//! Symmetric eigendecomposition by cyclic Jacobi rotations.
//!
//! Jacobi is chosen over faster methods because the matrices here are small
//! to moderate, eigenvector accuracy matters more than asymptotic speed, and
//! the fixed rotation order makes the output bit-reproducible: two calls on
//! identical input return identical bits.

use crate::error::{Error, Result};
use crate::matrix::{dot, inf_norm, SymMatrix};
use std::ops::Range;

/// Default relative convergence tolerance for [`eigh`].
pub const EIGH_TOL: f64 = 1e-12;
/// Sweep cap; exceeding it is reported as an error, never silently.
pub const MAX_SWEEPS: usize = 100;
/// Eigenvalues closer than `1e-8 * max(1, scale)` are treated as one cluster.
pub const CLUSTER_REL_TOL: f64 = 1e-8;
/// Nonnegativity slack for Perron screening, relative to the vector scale.
pub const PERRON_SIGN_REL_TOL: f64 = 1e-10;

/// Full eigendecomposition of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct EigenDecomp {
    /// Eigenvalues in nondecreasing order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors; `vectors[k]` pairs with `values[k]`.
    pub vectors: Vec<Vec<f64>>,
    /// Maximal runs of indices whose consecutive gaps fall below the cluster
    /// threshold.
    pub clusters: Vec<Range<usize>>,
    /// `max_k ||A v_k - lambda_k v_k||_inf`.
    pub residual: f64,
    /// Absolute gap threshold used to form `clusters`.
    pub cluster_tol: f64,
}

impl EigenDecomp {
    /// The cluster containing eigenvalue index `k`.
    pub fn cluster_of(&self, k: usize) -> Range<usize> {
        self.clusters
            .iter()
            .find(|r| r.contains(&k))
            .cloned()
            .expect("index within 0..n")
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }
}

/// Eigendecomposition by cyclic Jacobi sweeps.
///
/// Iteration stops once the off-diagonal Frobenius mass falls below
/// `tol * ||A||_F`. Eigenvectors are sign-fixed (largest-magnitude component
/// nonnegative, lowest index on ties) and sorted with their eigenvalues.
pub fn eigh(a: &SymMatrix, tol: f64) -> Result<EigenDecomp> {
    eigh_opts(a, tol, CLUSTER_REL_TOL)
}

/// [`eigh`] with an explicit relative cluster threshold.
pub fn eigh_opts(a: &SymMatrix, tol: f64, cluster_rel: f64) -> Result<EigenDecomp> {
    assert!(tol > 0.0, "tolerance must be positive");
    let n = a.n();
    let mut w = a.entries().to_vec();
    let mut v = vec![0f64; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let fro: f64 = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    let stop = tol * fro;
    // If every off-diagonal element is at most stop/n the total mass is
    // already below stop, so elements under this floor can be skipped
    // without stalling convergence.
    let skip = if n > 1 { stop / n as f64 } else { 0.0 };

    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        let mut off = 0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                let x = w[p * n + q];
                off += 2.0 * x * x;
            }
        }
        if off.sqrt() <= stop {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = w[p * n + q];
                if apq == 0.0 || apq.abs() <= skip {
                    continue;
                }
                let theta = (w[q * n + q] - w[p * n + p]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                let h = t * apq;
                w[p * n + p] -= h;
                w[q * n + q] += h;
                w[p * n + q] = 0.0;
                w[q * n + p] = 0.0;
                for j in 0..n {
                    if j == p || j == q {
                        continue;
                    }
                    let g = w[j * n + p];
                    let h = w[j * n + q];
                    let gp = g - s * (h + g * tau);
                    let hq = h + s * (g - h * tau);
                    w[j * n + p] = gp;
                    w[p * n + j] = gp;
                    w[j * n + q] = hq;
                    w[q * n + j] = hq;
                }
                for j in 0..n {
                    let g = v[j * n + p];
                    let h = v[j * n + q];
                    v[j * n + p] = g - s * (h + g * tau);
                    v[j * n + q] = h + s * (g - h * tau);
                }
            }
        }
    }
    if !converged {
        return Err(Error::NonConvergence { sweeps: MAX_SWEEPS });
    }

    // Sort by eigenvalue, ties by original position for determinism.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        w[i * n + i]
            .partial_cmp(&w[j * n + j])
            .expect("finite eigenvalues")
            .then(i.cmp(&j))
    });

    let mut values = Vec::with_capacity(n);
    let mut vectors = Vec::with_capacity(n);
    for &k in &order {
        values.push(w[k * n + k]);
        let mut col: Vec<f64> = (0..n).map(|j| v[j * n + k]).collect();
        sign_fix(&mut col);
        vectors.push(col);
    }

    let scale = a.scale();
    let cluster_tol = cluster_rel * scale.max(1.0);
    let clusters = cluster_ranges(&values, cluster_tol);

    let mut residual = 0f64;
    for k in 0..n {
        let av = a.mul_vec(&vectors[k]);
        let r = av
            .iter()
            .zip(&vectors[k])
            .fold(0f64, |m, (&avi, &vi)| m.max((avi - values[k] * vi).abs()));
        residual = residual.max(r);
    }

    Ok(EigenDecomp {
        values,
        vectors,
        clusters,
        residual,
        cluster_tol,
    })
}

/// Flips the vector so its largest-magnitude component (lowest index on
/// ties) is nonnegative.
pub fn sign_fix(v: &mut [f64]) {
    let mut best = 0usize;
    for i in 1..v.len() {
        if v[i].abs() > v[best].abs() {
            best = i;
        }
    }
    if v[best] < 0.0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

fn cluster_ranges(values: &[f64], tol: f64) -> Vec<Range<usize>> {
    let n = values.len();
    let mut out = Vec::new();
    let mut start = 0usize;
    for i in 1..n {
        if values[i] - values[i - 1] > tol {
            out.push(start..i);
            start = i;
        }
    }
    if n > 0 {
        out.push(start..n);
    }
    out
}

/// Eigenvector of the largest eigenvalue with entrywise-nonnegative
/// components, for matrices with nonnegative off-diagonal entries.
///
/// The shift trick of Perron-Frobenius theory is not materialized; instead
/// the top eigenvalue cluster is screened for a vector that is nonnegative
/// after a sign flip making its component sum nonnegative.
pub fn perron_vector(a: &SymMatrix) -> Result<Vec<f64>> {
    let n = a.n();
    for i in 0..n {
        for j in 0..n {
            if i != j && a.get(i, j) < 0.0 {
                return Err(Error::NegativeOffDiagonal {
                    i,
                    j,
                    value: a.get(i, j),
                });
            }
        }
    }
    let decomp = eigh(a, EIGH_TOL)?;
    let cluster = decomp.cluster_of(n - 1);
    for k in cluster {
        let mut v = decomp.vectors[k].clone();
        if v.iter().sum::<f64>() < 0.0 {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
        let eps = PERRON_SIGN_REL_TOL * inf_norm(&v);
        if v.iter().all(|&x| x >= -eps) {
            return Ok(v);
        }
    }
    Err(Error::NoNonnegativeVector)
}

/// `max_ij |V^T V - I|`, a measure of basis orthonormality.
pub fn orthonormality_defect(vectors: &[Vec<f64>]) -> f64 {
    let n = vectors.len();
    let mut worst = 0f64;
    for i in 0..n {
        for j in 0..n {
            let d = dot(&vectors[i], &vectors[j]) - if i == j { 1.0 } else { 0.0 };
            worst = worst.max(d.abs());
        }
    }
    worst
}
