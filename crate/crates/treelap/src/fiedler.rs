//! Two-case structure test for eigenvectors on trees.
//!
//! A vector either has no zero components, in which case it must have a
//! single sign-change edge with values growing away from its positive end
//! and shrinking away from its negative end, or it has zeros, in which case
//! a single zero vertex may border the nonzero part and every branch from it
//! must be monotone or identically zero. Anything else is a violation, with
//! a witness.

use crate::error::{Error, Result};
use crate::matrix::inf_norm;
use crate::tree::Tree;
use serde::{Deserialize, Serialize};

/// Default zero threshold, relative to the max-norm of the vector.
pub const ZERO_REL_TOL: f64 = 1e-8;
/// Default monotonicity slack, relative to the max-norm of the vector.
pub const MONOTONE_SLACK_REL: f64 = 1e-10;

/// Why a vector fails the structure test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ViolationReason {
    /// No zero components but not exactly one sign-change edge.
    SignChangeEdges { count: usize },
    /// Values fail to grow strictly along a path leaving the sign-change
    /// edge; the offending rooted edge is recorded.
    NonMonotonePath { from: usize, edge: (usize, usize) },
    /// Not exactly one zero vertex adjacent to a nonzero vertex.
    ZeroBoundaryCount { count: usize, witnesses: Vec<usize> },
    /// A branch from the zero vertex is neither monotone nor identically
    /// zero; one rising and one falling rooted edge are recorded.
    NonMonotoneBranch {
        root: usize,
        branch: usize,
        rising: (usize, usize),
        falling: (usize, usize),
    },
}

/// Classification outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum CaseOutcome {
    /// Unique sign-change edge, endpoints ordered low to high.
    CaseI {
        edge: (usize, usize),
    },
    /// Unique zero vertex bordering the nonzero part.
    CaseII {
        vertex: usize,
    },
    Violation {
        reason: ViolationReason,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseClassification {
    pub outcome: CaseOutcome,
    pub zero_threshold_used: f64,
}

impl CaseClassification {
    pub fn holds(&self) -> bool {
        !matches!(self.outcome, CaseOutcome::Violation { .. })
    }

    pub fn characteristic_edge(&self) -> Option<(usize, usize)> {
        match self.outcome {
            CaseOutcome::CaseI { edge } => Some(edge),
            _ => None,
        }
    }

    pub fn characteristic_vertex(&self) -> Option<usize> {
        match self.outcome {
            CaseOutcome::CaseII { vertex } => Some(vertex),
            _ => None,
        }
    }
}

/// Classifies a vector on a tree. Components with `|f(v)| <= zero_tol`
/// count as zero; `zero_tol` defaults to `1e-8 * max|f|`.
pub fn classify(tree: &Tree, f: &[f64], zero_tol: Option<f64>) -> Result<CaseClassification> {
    let n = tree.n();
    if f.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: f.len(),
        });
    }
    let scale = inf_norm(f);
    if scale == 0.0 {
        return Err(Error::ZeroVector);
    }
    let tol = zero_tol.unwrap_or(ZERO_REL_TOL * scale);
    let is_zero: Vec<bool> = f.iter().map(|x| x.abs() <= tol).collect();
    if is_zero.iter().all(|&z| z) {
        return Err(Error::ZeroVector);
    }
    let done = |outcome| {
        Ok(CaseClassification {
            outcome,
            zero_threshold_used: tol,
        })
    };

    if !is_zero.iter().any(|&z| z) {
        // No zeros: count edges with strictly opposite signs.
        let mut change = Vec::new();
        for &(u, v) in tree.edges() {
            if (f[u - 1] > 0.0) != (f[v - 1] > 0.0) {
                change.push((u, v));
            }
        }
        if change.len() != 1 {
            return done(CaseOutcome::Violation {
                reason: ViolationReason::SignChangeEdges {
                    count: change.len(),
                },
            });
        }
        let (u, v) = change[0];
        let (pos, neg) = if f[u - 1] > 0.0 { (u, v) } else { (v, u) };
        // Values must grow along every path leaving `pos` (not through
        // `neg`) and shrink along every path leaving `neg`; strictness is
        // softened by the zero threshold.
        if let Some(edge) = first_slack_violation(tree, f, pos, neg, tol, true) {
            return done(CaseOutcome::Violation {
                reason: ViolationReason::NonMonotonePath { from: pos, edge },
            });
        }
        if let Some(edge) = first_slack_violation(tree, f, neg, pos, tol, false) {
            return done(CaseOutcome::Violation {
                reason: ViolationReason::NonMonotonePath { from: neg, edge },
            });
        }
        return done(CaseOutcome::CaseI {
            edge: (pos.min(neg), pos.max(neg)),
        });
    }

    // Zeros exist: the boundary zero vertex must be unique.
    let mut boundary = Vec::new();
    for v in 1..=n {
        if is_zero[v - 1] && tree.neighbors(v).iter().any(|&w| !is_zero[w - 1]) {
            boundary.push(v);
        }
    }
    if boundary.len() != 1 {
        return done(CaseOutcome::Violation {
            reason: ViolationReason::ZeroBoundaryCount {
                count: boundary.len(),
                witnesses: boundary,
            },
        });
    }
    let u = boundary[0];
    for &w in tree.neighbors(u) {
        let mut rising: Option<(usize, usize)> = None;
        let mut falling: Option<(usize, usize)> = None;
        let mut all_zero = true;
        // Walk the branch through w, rooted at u.
        let mut stack = vec![(u, w)];
        while let Some((p, c)) = stack.pop() {
            if !is_zero[c - 1] {
                all_zero = false;
            }
            let d = f[c - 1] - f[p - 1];
            if d > tol && rising.is_none() {
                rising = Some((p, c));
            }
            if d < -tol && falling.is_none() {
                falling = Some((p, c));
            }
            for &x in tree.neighbors(c) {
                if x != p {
                    stack.push((c, x));
                }
            }
        }
        if all_zero {
            continue;
        }
        if let (Some(r), Some(fa)) = (rising, falling) {
            return done(CaseOutcome::Violation {
                reason: ViolationReason::NonMonotoneBranch {
                    root: u,
                    branch: w,
                    rising: r,
                    falling: fa,
                },
            });
        }
    }
    done(CaseOutcome::CaseII { vertex: u })
}

/// First rooted edge along which the values fail to strictly grow (or
/// shrink, for `increasing = false`) with slack; traversal avoids `blocked`.
fn first_slack_violation(
    tree: &Tree,
    f: &[f64],
    start: usize,
    blocked: usize,
    slack: f64,
    increasing: bool,
) -> Option<(usize, usize)> {
    let mut stack: Vec<(usize, usize)> = tree
        .neighbors(start)
        .iter()
        .filter(|&&w| w != blocked)
        .map(|&w| (start, w))
        .collect();
    while let Some((p, c)) = stack.pop() {
        let d = f[c - 1] - f[p - 1];
        let bad = if increasing { d <= -slack } else { d >= slack };
        if bad {
            return Some((p, c));
        }
        for &x in tree.neighbors(c) {
            if x != p {
                stack.push((c, x));
            }
        }
    }
    None
}

/// Monotonicity verdict for a vector in index order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Monotonicity {
    Nondecreasing,
    Nonincreasing,
    Both,
    Neither,
}

impl Monotonicity {
    pub fn is_monotone(self) -> bool {
        !matches!(self, Monotonicity::Neither)
    }
}

/// Checks whether the components are nondecreasing or nonincreasing, with
/// slack (default `1e-10 * max|f|`). `Both` appears only for near-constant
/// vectors.
pub fn is_monotone(f: &[f64], slack: Option<f64>) -> Monotonicity {
    let s = slack.unwrap_or(MONOTONE_SLACK_REL * inf_norm(f));
    let mut nondec = true;
    let mut noninc = true;
    for w in f.windows(2) {
        let d = w[1] - w[0];
        if d < -s {
            nondec = false;
        }
        if d > s {
            noninc = false;
        }
    }
    match (nondec, noninc) {
        (true, true) => Monotonicity::Both,
        (true, false) => Monotonicity::Nondecreasing,
        (false, true) => Monotonicity::Nonincreasing,
        (false, false) => Monotonicity::Neither,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{path_graph, star_graph};

    #[test]
    fn two_vertex_path_is_case_one() {
        let t = path_graph(2).unwrap();
        let c = classify(&t, &[-1.0, 1.0], None).unwrap();
        assert_eq!(c.characteristic_edge(), Some((1, 2)));
        assert!(c.holds());
    }

    #[test]
    fn path3_with_zero_middle_is_case_two() {
        let t = path_graph(3).unwrap();
        let c = classify(&t, &[-1.0, 0.0, 1.0], None).unwrap();
        assert_eq!(c.characteristic_vertex(), Some(2));
    }

    #[test]
    fn star4_eigenvector_is_case_two_at_center() {
        // eigenvector of the star distance Laplacian for its doubled top
        // eigenvalue; the branch to leaf 4 is identically zero
        let t = star_graph(4).unwrap();
        let c = classify(&t, &[0.0, 1.0, -1.0, 0.0], None).unwrap();
        assert_eq!(c.characteristic_vertex(), Some(1));
    }

    #[test]
    fn alternating_path_is_violation() {
        let t = path_graph(4).unwrap();
        let c = classify(&t, &[1.0, -1.0, 1.0, -1.0], None).unwrap();
        assert_eq!(
            c.outcome,
            CaseOutcome::Violation {
                reason: ViolationReason::SignChangeEdges { count: 3 }
            }
        );
    }

    #[test]
    fn non_monotone_side_is_violation() {
        // signs change once, but values dip after the positive end
        let t = path_graph(4).unwrap();
        let c = classify(&t, &[-1.0, 2.0, 1.0, 3.0], None).unwrap();
        assert!(matches!(
            c.outcome,
            CaseOutcome::Violation {
                reason: ViolationReason::NonMonotonePath { .. }
            }
        ));
    }

    #[test]
    fn two_zero_boundaries_are_a_violation() {
        let t = path_graph(4).unwrap();
        let c = classify(&t, &[-1.0, 0.0, 0.0, 1.0], None).unwrap();
        assert!(matches!(
            c.outcome,
            CaseOutcome::Violation {
                reason: ViolationReason::ZeroBoundaryCount { count: 2, .. }
            }
        ));
    }

    #[test]
    fn zero_vector_is_an_error() {
        let t = path_graph(2).unwrap();
        assert!(matches!(
            classify(&t, &[0.0, 0.0], None),
            Err(Error::ZeroVector)
        ));
        // everything below an absolute threshold counts as zero
        assert!(matches!(
            classify(&t, &[1e-12, -1e-12], Some(1e-6)),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn sign_flip_and_scaling_invariance() {
        let t = path_graph(5).unwrap();
        let f = [-2.0, -1.0, 0.0, 1.5, 3.0];
        let base = classify(&t, &f, None).unwrap();
        let flipped: Vec<f64> = f.iter().map(|x| -x).collect();
        let scaled: Vec<f64> = f.iter().map(|x| 17.0 * x).collect();
        assert_eq!(base.outcome, classify(&t, &flipped, None).unwrap().outcome);
        assert_eq!(base.outcome, classify(&t, &scaled, None).unwrap().outcome);
    }

    #[test]
    fn monotone_verdicts() {
        assert_eq!(
            is_monotone(&[-1.0, 0.0, 1.0], None),
            Monotonicity::Nondecreasing
        );
        assert_eq!(is_monotone(&[0.0, 0.0], None), Monotonicity::Both);
        assert_eq!(is_monotone(&[1.0, 0.0, 2.0], None), Monotonicity::Neither);
        let s5 = 5f64.sqrt();
        let v = [-1.0, 2.0 - s5, s5 - 2.0, 1.0];
        assert_eq!(is_monotone(&v, None), Monotonicity::Nondecreasing);
    }

    #[test]
    fn monotone_mean_zero_vectors_classify_on_paths() {
        // a mean-zero monotone vector crosses zero once, so the structure
        // test must accept it
        let mut rng = crate::rng::CounterRng::new(314);
        for trial in 0..500 {
            let n = 2 + (trial % 19) as usize;
            let t = path_graph(n).unwrap();
            let mut f: Vec<f64> = (0..n).map(|_| rng.next_f64() - 0.5).collect();
            f.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let mean = f.iter().sum::<f64>() / n as f64;
            for x in f.iter_mut() {
                *x -= mean;
            }
            if inf_norm(&f) == 0.0 {
                continue;
            }
            let c = classify(&t, &f, None).unwrap();
            assert!(c.holds(), "f = {f:?}, outcome {:?}", c.outcome);
        }
    }
}
