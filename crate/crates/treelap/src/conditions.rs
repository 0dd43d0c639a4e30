//! Monotonicity conditions on symmetric matrices relative to a tree or to
//! the natural vertex order of a path, together with deterministic
//! generators of integer matrix families satisfying each condition.

use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::rng::CounterRng;
use crate::tree::{path_graph, Tree};
use serde::{Deserialize, Serialize};

/// The four hypothesis shapes.
///
/// The tree kinds constrain entries against tree distances: whenever j and k
/// are adjacent and `d_ij > d_ik`, `Conj1Tree` demands `a_ij <= a_ik`
/// (entries shrink with distance) and `Conj2Tree` demands `a_ij >= a_ik`
/// (entries grow with distance). The path kinds constrain entries against
/// the vertex label order: `PathGrowing` demands `a_ij >= a_ik` for
/// `j < k < i` and `a_ij <= a_ik` for `i < j < k`; `PathShrinking` reverses
/// both inequalities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConditionKind {
    Conj1Tree,
    Conj2Tree,
    /// Entries nondecreasing in label distance (distance-matrix-like).
    PathGrowing,
    /// Entries nonincreasing in label distance (adjacency-matrix-like).
    PathShrinking,
}

impl ConditionKind {
    pub fn needs_tree(self) -> bool {
        matches!(self, ConditionKind::Conj1Tree | ConditionKind::Conj2Tree)
    }

    /// Whether entries grow (true) or shrink (false) with distance.
    fn growing(self) -> bool {
        matches!(self, ConditionKind::Conj2Tree | ConditionKind::PathGrowing)
    }
}

/// Outcome of a condition check: pass, or the first violating triple
/// (i, j, k), 1-indexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionCheck {
    Pass,
    Fail { i: usize, j: usize, k: usize },
}

impl ConditionCheck {
    pub fn passed(self) -> bool {
        matches!(self, ConditionCheck::Pass)
    }
}

fn validate_input(a: &SymMatrix, kind: ConditionKind, tree: Option<&Tree>) -> Result<()> {
    let n = a.n();
    for i in 0..n {
        let d = a.get(i, i);
        if d != 0.0 {
            return Err(Error::NonzeroDiagonal { i: i + 1, value: d });
        }
        for j in 0..n {
            if i != j && a.get(i, j) < 0.0 {
                return Err(Error::NegativeOffDiagonal {
                    i: i + 1,
                    j: j + 1,
                    value: a.get(i, j),
                });
            }
        }
    }
    match (kind.needs_tree(), tree) {
        (true, None) => return Err(Error::MissingTree),
        (false, Some(_)) => return Err(Error::UnexpectedTree),
        (true, Some(t)) if t.n() != n => {
            return Err(Error::DimensionMismatch {
                expected: t.n(),
                got: n,
            })
        }
        _ => {}
    }
    Ok(())
}

/// Tests every ordered triple of distinct vertices against the side
/// condition of `kind`. Comparisons are exact on integer input.
pub fn check_condition(
    a: &SymMatrix,
    kind: ConditionKind,
    strict: bool,
    tree: Option<&Tree>,
) -> Result<ConditionCheck> {
    validate_input(a, kind, tree)?;
    let n = a.n();
    // `far` is the entry at the larger distance, `near` at the smaller.
    let ok = |far: f64, near: f64| -> bool {
        if kind.growing() {
            if strict {
                far > near
            } else {
                far >= near
            }
        } else if strict {
            far < near
        } else {
            far <= near
        }
    };

    if kind.needs_tree() {
        let t = tree.expect("validated above");
        let dist = t.distance_matrix();
        for i in 1..=n {
            for &(u, v) in t.edges() {
                for &(j, k) in &[(u, v), (v, u)] {
                    if i == j || i == k {
                        continue;
                    }
                    if dist.get(i - 1, j - 1) > dist.get(i - 1, k - 1)
                        && !ok(a.get(i - 1, j - 1), a.get(i - 1, k - 1))
                    {
                        return Ok(ConditionCheck::Fail { i, j, k });
                    }
                }
            }
        }
    } else {
        for i in 1..=n {
            // j < k < i: position j is farther from i than position k
            for j in 1..i {
                for k in (j + 1)..i {
                    if !ok(a.get(i - 1, j - 1), a.get(i - 1, k - 1)) {
                        return Ok(ConditionCheck::Fail { i, j, k });
                    }
                }
            }
            // i < j < k: position k is farther from i than position j
            for j in (i + 1)..=n {
                for k in (j + 1)..=n {
                    if !ok(a.get(i - 1, k - 1), a.get(i - 1, j - 1)) {
                        return Ok(ConditionCheck::Fail { i, j, k });
                    }
                }
            }
        }
    }
    Ok(ConditionCheck::Pass)
}

/// Matrix families the generator can draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GenFamily {
    /// `a_ij = g(d_ij)` for a random monotone nonnegative integer step
    /// function g; satisfies the condition by construction.
    DistanceTransform,
    /// Random nonnegative integer matrix repaired to a fixpoint by raising
    /// deficient entries, then validated.
    RepairedRandom,
}

/// Generates an integer matrix satisfying `kind` (strictly, when asked) on
/// the given tree; path kinds use the path with natural labels.
pub fn gen_condition_matrix(
    kind: ConditionKind,
    strict: bool,
    tree: Option<&Tree>,
    n: usize,
    seed: u64,
    family: GenFamily,
) -> Result<SymMatrix> {
    let owned;
    let t: &Tree = if kind.needs_tree() {
        tree.ok_or(Error::MissingTree)?
    } else {
        owned = path_graph(n)?;
        &owned
    };
    let a = match family {
        GenFamily::DistanceTransform => transform_matrix(t, kind, strict, seed),
        GenFamily::RepairedRandom => repaired_matrix(t, kind, strict, seed)?,
    };
    // Final assert only; the generators never consult the predicate while
    // constructing.
    let tree_arg = if kind.needs_tree() { Some(t) } else { None };
    match check_condition(&a, kind, strict, tree_arg)? {
        ConditionCheck::Pass => Ok(a),
        ConditionCheck::Fail { .. } => Err(Error::RepairNonConvergence {
            passes: REPAIR_PASSES,
        }),
    }
}

fn transform_matrix(t: &Tree, kind: ConditionKind, strict: bool, seed: u64) -> SymMatrix {
    let n = t.n();
    let dist = t.distance_matrix();
    let diam = dist.entries().iter().fold(0f64, |m, &x| m.max(x)) as usize;
    let mut rng = CounterRng::new(seed);
    let mut g = vec![0i64; diam + 1];
    if diam >= 1 {
        if kind.growing() {
            g[1] = rng.next_range_i64(0, 3);
            for d in 2..=diam {
                let step = rng.next_range_i64(0, 2) + if strict { 1 } else { 0 };
                g[d] = g[d - 1] + step;
            }
        } else {
            g[diam] = rng.next_range_i64(0, 3);
            for d in (1..diam).rev() {
                let step = rng.next_range_i64(0, 2) + if strict { 1 } else { 0 };
                g[d] = g[d + 1] + step;
            }
        }
    }
    let mut e = vec![0f64; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                e[i * n + j] = g[dist.get(i, j) as usize] as f64;
            }
        }
    }
    SymMatrix::from_entries(n, &e).expect("transform matrix is symmetric")
}

const REPAIR_PASSES: usize = 50;

fn repaired_matrix(t: &Tree, kind: ConditionKind, strict: bool, seed: u64) -> Result<SymMatrix> {
    let n = t.n();
    let mut rng = CounterRng::new(seed);
    let mut a = vec![0i64; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = rng.next_range_i64(0, 9);
            a[i * n + j] = v;
            a[j * n + i] = v;
        }
    }
    let dist = t.distance_matrix();
    let bump = i64::from(strict);

    fn raise(a: &mut [i64], n: usize, fi: usize, fj: usize, to: i64) -> bool {
        if a[fi * n + fj] < to {
            a[fi * n + fj] = to;
            a[fj * n + fi] = to;
            true
        } else {
            false
        }
    }

    // Raise the deficient entry of each violated triple (symmetrically)
    // until a fixpoint. Entries only grow, so the loop terminates or the
    // pass cap trips.
    let mut converged = false;
    for _ in 0..REPAIR_PASSES {
        let mut changed = false;
        if kind.needs_tree() {
            for i in 0..n {
                for &(u, v) in t.edges() {
                    for &(j, k) in &[(u - 1, v - 1), (v - 1, u - 1)] {
                        if i == j || i == k || dist.get(i, j) <= dist.get(i, k) {
                            continue;
                        }
                        // far entry (i,j), near entry (i,k)
                        if kind.growing() {
                            let to = a[i * n + k] + bump;
                            changed |= raise(&mut a, n, i, j, to);
                        } else {
                            let to = a[i * n + j] + bump;
                            changed |= raise(&mut a, n, i, k, to);
                        }
                    }
                }
            }
        } else {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let far_near = if j < k && k < i {
                            Some((j, k))
                        } else if i < j && j < k {
                            Some((k, j))
                        } else {
                            None
                        };
                        if let Some((far, near)) = far_near {
                            if kind.growing() {
                                let to = a[i * n + near] + bump;
                                changed |= raise(&mut a, n, i, far, to);
                            } else {
                                let to = a[i * n + far] + bump;
                                changed |= raise(&mut a, n, i, near, to);
                            }
                        }
                    }
                }
            }
        }
        if !changed {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::RepairNonConvergence {
            passes: REPAIR_PASSES,
        });
    }
    let e: Vec<f64> = a.iter().map(|&x| x as f64).collect();
    Ok(SymMatrix::from_entries(n, &e).expect("repaired matrix is symmetric"))
}
