//! Exact characteristic polynomials and real-root extraction.
//!
//! This is the independent route to the spectrum of the compressed matrix:
//! coefficients are computed exactly over the integers, and the roots (all
//! real, since the compressed matrix is similar to a symmetric one) are
//! isolated by recursive derivative splitting and resolved by bisection with
//! compensated polynomial evaluation.

use crate::error::{Error, Result};

/// Coefficients of the monic characteristic polynomial of an integer square
/// matrix, lowest degree first: `p(x) = c[0] + c[1] x + ... + x^n`.
///
/// Faddeev-LeVerrier recurrence with checked 128-bit arithmetic; the trace
/// divisions are exact for integer input.
pub fn char_poly_int(entries: &[i128], n: usize) -> Result<Vec<i128>> {
    assert_eq!(entries.len(), n * n);
    let overflow = || Error::Overflow("characteristic polynomial".into());

    // b holds B_k, starting with B_1 = M; a_k are the monic coefficients.
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    let mut b = entries.to_vec();
    for k in 1..=n {
        let mut tr: i128 = 0;
        for i in 0..n {
            tr = tr.checked_add(b[i * n + i]).ok_or_else(overflow)?;
        }
        if tr % (k as i128) != 0 {
            return Err(Error::Overflow("inexact trace division".into()));
        }
        let a_k = -tr / (k as i128);
        coeffs[n - k] = a_k;
        if k == n {
            break;
        }
        // B_{k+1} = M (B_k + a_k I)
        let mut shifted = b.clone();
        for i in 0..n {
            shifted[i * n + i] = shifted[i * n + i].checked_add(a_k).ok_or_else(overflow)?;
        }
        let mut next = vec![0i128; n * n];
        for i in 0..n {
            for l in 0..n {
                let m_il = entries[i * n + l];
                if m_il == 0 {
                    continue;
                }
                for j in 0..n {
                    let prod = m_il.checked_mul(shifted[l * n + j]).ok_or_else(overflow)?;
                    next[i * n + j] = next[i * n + j].checked_add(prod).ok_or_else(overflow)?;
                }
            }
        }
        b = next;
    }
    Ok(coeffs)
}

/// Compensated Horner evaluation: returns `p(x)` with roughly doubled
/// working precision. Coefficients lowest degree first.
fn eval_compensated(coeffs: &[f64], x: f64) -> f64 {
    let m = coeffs.len() - 1;
    let mut s = coeffs[m];
    let mut e = 0f64;
    for k in (0..m).rev() {
        let p = s * x;
        let pe = f64::mul_add(s, x, -p);
        let t = p + coeffs[k];
        let z = t - p;
        let se = (p - (t - z)) + (coeffs[k] - z);
        s = t;
        e = e * x + (pe + se);
    }
    s + e
}

/// `sum_k |c_k| |x|^k`, the natural magnitude scale for `p` near `x`.
fn eval_magnitude(coeffs: &[f64], x: f64) -> f64 {
    let ax = x.abs();
    let mut m = 0f64;
    for &c in coeffs.iter().rev() {
        m = m * ax + c.abs();
    }
    m
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect()
}

/// Bisection on a monotone bracket; runs to floating-point fixpoint.
fn bisect(coeffs: &[f64], mut lo: f64, mut hi: f64, mut flo: f64) -> f64 {
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return mid;
        }
        let fm = eval_compensated(coeffs, mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
}

const ROOT_AT_BREAKPOINT_REL: f64 = 1e-12;

/// All real roots (with multiplicity, nondecreasing) of a polynomial whose
/// roots are known to be real. Coefficients lowest degree first, leading
/// coefficient nonzero.
pub fn real_roots(coeffs: &[f64]) -> Vec<f64> {
    let m = coeffs.len() - 1;
    if m == 0 {
        return Vec::new();
    }
    if m == 1 {
        return vec![-coeffs[0] / coeffs[1]];
    }
    let deriv = derivative(coeffs);
    let crit = real_roots(&deriv);

    // Cauchy bound on root magnitude.
    let lead = coeffs[m].abs();
    let bound = 1.0
        + coeffs[..m]
            .iter()
            .fold(0f64, |acc, &c| acc.max(c.abs() / lead));

    // Distinct breakpoints with the multiplicity each carries as a root of p'.
    let mut breaks: Vec<(f64, usize)> = Vec::new();
    for &r in &crit {
        match breaks.last_mut() {
            Some((prev, count)) if r == *prev => *count += 1,
            _ => breaks.push((r, 1)),
        }
    }

    let mut roots = Vec::new();
    let mut endpoints = vec![-bound];
    for &(r, _) in &breaks {
        endpoints.push(r);
    }
    endpoints.push(bound);

    // A breakpoint where p itself vanishes is a multiple root: multiplicity
    // one more than its multiplicity in p'.
    let mut is_root_break = vec![false; breaks.len()];
    for (idx, &(r, mult)) in breaks.iter().enumerate() {
        let val = eval_compensated(coeffs, r);
        if val.abs() <= ROOT_AT_BREAKPOINT_REL * eval_magnitude(coeffs, r) {
            is_root_break[idx] = true;
            for _ in 0..=mult {
                roots.push(r);
            }
        }
    }

    // Between consecutive breakpoints p is strictly monotone: at most one
    // simple root, present exactly when the endpoint signs differ.
    for w in 0..endpoints.len() - 1 {
        let (lo, hi) = (endpoints[w], endpoints[w + 1]);
        if lo >= hi {
            continue;
        }
        let boundary_root =
            (w > 0 && is_root_break[w - 1]) || (w < breaks.len() && is_root_break[w]);
        if boundary_root {
            continue;
        }
        let flo = eval_compensated(coeffs, lo);
        let fhi = eval_compensated(coeffs, hi);
        if flo == 0.0 || fhi == 0.0 {
            // Landed exactly on a root at an outer bound; treat as bracket edge.
            if flo == 0.0 {
                roots.push(lo);
            } else {
                roots.push(hi);
            }
            continue;
        }
        if (flo > 0.0) != (fhi > 0.0) {
            roots.push(bisect(coeffs, lo, hi, flo));
        }
    }

    roots.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
    roots
}

/// Real roots of an exact integer polynomial, lowest degree first.
pub fn real_roots_int(coeffs: &[i128]) -> Vec<f64> {
    let f: Vec<f64> = coeffs.iter().map(|&c| c as f64).collect();
    real_roots(&f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_poly_of_compressed_path3() {
        // M = [[4,1],[1,4]] -> x^2 - 8x + 15, roots 3 and 5.
        let coeffs = char_poly_int(&[4, 1, 1, 4], 2).unwrap();
        assert_eq!(coeffs, vec![15, -8, 1]);
        let roots = real_roots_int(&coeffs);
        assert!((roots[0] - 3.0).abs() < 1e-12);
        assert!((roots[1] - 5.0).abs() < 1e-12);
    }

    #[test]
    fn double_root_is_reported_twice() {
        // (x - 2)^2 (x + 1) = x^3 - 3x^2 + 4
        let roots = real_roots(&[4.0, 0.0, -3.0, 1.0]);
        assert_eq!(roots.len(), 3);
        assert!((roots[0] + 1.0).abs() < 1e-10);
        assert!((roots[1] - 2.0).abs() < 1e-7);
        assert!((roots[2] - 2.0).abs() < 1e-7);
    }

    #[test]
    fn triple_root() {
        // (x - 1)^3 = x^3 - 3x^2 + 3x - 1
        let roots = real_roots(&[-1.0, 3.0, -3.0, 1.0]);
        assert_eq!(roots.len(), 3);
        for r in roots {
            assert!((r - 1.0).abs() < 1e-4);
        }
    }

    #[test]
    fn fully_degenerate_scaled_identity() {
        // char poly of 5*I_4 is (x-5)^4
        let mut m = vec![0i128; 16];
        for i in 0..4 {
            m[i * 4 + i] = 5;
        }
        let coeffs = char_poly_int(&m, 4).unwrap();
        assert_eq!(coeffs, vec![625, -500, 150, -20, 1]);
        let roots = real_roots_int(&coeffs);
        assert_eq!(roots.len(), 4);
        for r in roots {
            assert!((r - 5.0).abs() < 1e-6);
        }
    }

    #[test]
    fn well_separated_integer_roots() {
        // (x-1)(x-4)(x-9)(x-16) expanded
        let coeffs = [576.0, -820.0, 273.0, -30.0, 1.0];
        let roots = real_roots(&coeffs);
        let expect = [1.0, 4.0, 9.0, 16.0];
        for (r, e) in roots.iter().zip(expect) {
            assert!((r - e).abs() < 1e-10, "{roots:?}");
        }
    }

    #[test]
    fn char_poly_traces_match_power_sums() {
        // 3x3 integer matrix: validate coefficients against direct expansion
        // det(xI - M) for M = [[2,1,0],[1,3,1],[0,1,2]]:
        // x^3 - 7x^2 + 14x - 8, roots 1, 2, 4 (hand-checked).
        let coeffs = char_poly_int(&[2, 1, 0, 1, 3, 1, 0, 1, 2], 3).unwrap();
        assert_eq!(coeffs, vec![-8, 14, -7, 1]);
        let roots = real_roots_int(&coeffs);
        for (r, e) in roots.iter().zip([1.0, 2.0, 4.0]) {
            assert!((r - e).abs() < 1e-11);
        }
    }
}
