//! Dense LU factorization and inverse iteration.
//!
//! Used to refine eigenpairs before a violation is reported, and to extract
//! eigenvectors of the (nonsymmetric) compressed matrix for small sizes.

use crate::matrix::{inf_norm, norm2, SquareMatrix};

/// LU factorization with partial pivoting, stored in place.
pub struct Lu {
    n: usize,
    lu: Vec<f64>,
    pivots: Vec<usize>,
}

impl Lu {
    /// Factors `a - shift * I`. Zero pivots are replaced by a tiny signed
    /// floor so nearly singular solves blow up along the null direction
    /// rather than fail, which is exactly what inverse iteration wants. The
    /// floor is relative to the matrix scale, keeping the blow-up factor
    /// around 1e30 and every intermediate finite.
    pub fn factor_shifted(a: &SquareMatrix, shift: f64) -> Lu {
        let n = a.n();
        let mut lu = a.entries().to_vec();
        for i in 0..n {
            lu[i * n + i] -= shift;
        }
        let floor = 1e-30 * a.scale().max(shift.abs()).max(1.0);
        let mut pivots = vec![0usize; n];
        for col in 0..n {
            let mut best = col;
            for r in (col + 1)..n {
                if lu[r * n + col].abs() > lu[best * n + col].abs() {
                    best = r;
                }
            }
            pivots[col] = best;
            if best != col {
                for j in 0..n {
                    lu.swap(col * n + j, best * n + j);
                }
            }
            let mut piv = lu[col * n + col];
            if piv.abs() < floor {
                piv = if piv >= 0.0 { floor } else { -floor };
                lu[col * n + col] = piv;
            }
            for r in (col + 1)..n {
                let f = lu[r * n + col] / piv;
                lu[r * n + col] = f;
                for j in (col + 1)..n {
                    lu[r * n + j] -= f * lu[col * n + j];
                }
            }
        }
        Lu { n, lu, pivots }
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x = b.to_vec();
        for col in 0..n {
            x.swap(col, self.pivots[col]);
        }
        for col in 0..n {
            for r in (col + 1)..n {
                x[r] -= self.lu[r * n + col] * x[col];
            }
        }
        for col in (0..n).rev() {
            x[col] /= self.lu[col * n + col];
            for r in 0..col {
                x[r] -= self.lu[r * n + col] * x[col];
            }
        }
        x
    }
}

/// Result of inverse-iteration refinement.
#[derive(Debug, Clone)]
pub struct Refined {
    pub value: f64,
    pub vector: Vec<f64>,
    /// `||A x - value * x||_inf` for the refined pair.
    pub residual: f64,
}

/// Refines an approximate eigenpair of a general square matrix by inverse
/// iteration with Rayleigh-quotient updates.
pub fn inverse_iteration(a: &SquareMatrix, value: f64, start: &[f64], iters: usize) -> Refined {
    let mut x = start.to_vec();
    let nrm = norm2(&x);
    if nrm > 0.0 {
        for xi in x.iter_mut() {
            *xi /= nrm;
        }
    }
    let mut mu = value;
    for _ in 0..iters {
        let lu = Lu::factor_shifted(a, mu);
        let mut y = lu.solve(&x);
        // Normalize by the max first; the solve can legitimately return
        // entries around 1e30 whose squares would overflow.
        let peak = inf_norm(&y);
        if !peak.is_finite() || peak == 0.0 {
            break;
        }
        for yi in y.iter_mut() {
            *yi /= peak;
        }
        let nrm = norm2(&y);
        if nrm == 0.0 {
            break;
        }
        for yi in y.iter_mut() {
            *yi /= nrm;
        }
        x = y;
        let ax = a.mul_vec(&x);
        let num: f64 = ax.iter().zip(&x).map(|(p, q)| p * q).sum();
        mu = num;
    }
    crate::eigen::sign_fix(&mut x);
    let ax = a.mul_vec(&x);
    let diff: Vec<f64> = ax.iter().zip(&x).map(|(&p, &q)| p - mu * q).collect();
    Refined {
        value: mu,
        vector: x,
        residual: inf_norm(&diff),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lu_solves_small_system() {
        let a = SquareMatrix::new(3, vec![2.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 2.0], true);
        let b = [3.0, 5.0, 3.0];
        let x = Lu::factor_shifted(&a, 0.0).solve(&b);
        for xi in &x {
            assert!((xi - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn inverse_iteration_locks_onto_eigenpair() {
        // [[4,1],[1,4]] has eigenpair (5, (1,1)/sqrt 2)
        let a = SquareMatrix::new(2, vec![4.0, 1.0, 1.0, 4.0], true);
        let r = inverse_iteration(&a, 4.9, &[1.0, 0.0], 4);
        assert!((r.value - 5.0).abs() < 1e-10);
        assert!(r.residual < 1e-10);
        let s = 0.5f64.sqrt();
        assert!((r.vector[0] - s).abs() < 1e-8 && (r.vector[1] - s).abs() < 1e-8);
    }
}
