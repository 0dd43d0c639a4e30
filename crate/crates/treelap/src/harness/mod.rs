//! Verification and search harness.
//!
//! [`search_conjecture`] sweeps (tree, matrix) instances, eigendecomposes
//! the generalized Laplacian, and classifies an eigenvector of the target
//! eigenvalue. Both conjectures are existential, so a multiplicity that the
//! eigenspace sampling cannot resolve is reported as inconclusive, never as
//! a violation; a simple-eigenvalue classification failure is refined by
//! inverse iteration before it may become a violation candidate.

pub mod report;
pub mod suites;
mod verify;

pub use report::{ConjectureReport, StatusCounts, ViolationRecord};
pub use verify::{
    verify_corollary, verify_lemma7, verify_lemma8, verify_thm11, CorollaryOutcome, Lemma7Report,
    Lemma8Report, Thm11Outcome, Thm11Part,
};

use crate::conditions::{check_condition, ConditionCheck, ConditionKind};
use crate::eigen::{eigh_opts, sign_fix, EigenDecomp};
use crate::error::{Error, Result};
use crate::family::FamilyRegistry;
use crate::fiedler::{classify, CaseOutcome};
use crate::laplacian::laplacian_of;
use crate::matrix::{inf_norm, norm2, SymMatrix};
use crate::rng::{mix, CounterRng};
use crate::solve::inverse_iteration;
use crate::tree::{random_tree, tree_count, Tree, TreeEnumeration, ENUM_MAX, ENUM_MIN};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::ops::Range;

/// Which conjecture a search targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConjectureKind {
    /// Second-smallest eigenvalue of the Laplacian of a matrix whose entries
    /// shrink with tree distance.
    Conj1,
    /// Largest eigenvalue of the Laplacian of a matrix whose entries grow
    /// with tree distance.
    Conj2,
}

impl ConjectureKind {
    pub fn condition(self) -> ConditionKind {
        match self {
            ConjectureKind::Conj1 => ConditionKind::Conj1Tree,
            ConjectureKind::Conj2 => ConditionKind::Conj2Tree,
        }
    }

    pub fn target(self) -> EigenTarget {
        match self {
            ConjectureKind::Conj1 => EigenTarget::Lambda2,
            ConjectureKind::Conj2 => EigenTarget::LambdaMax,
        }
    }

    pub fn target_index(self, n: usize) -> usize {
        self.target().index(n)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ConjectureKind::Conj1 => "conj1",
            ConjectureKind::Conj2 => "conj2",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "conj1" => Ok(ConjectureKind::Conj1),
            "conj2" => Ok(ConjectureKind::Conj2),
            other => Err(Error::Config(format!("unknown conjecture kind '{other}'"))),
        }
    }
}

/// Which eigenvalue of the Laplacian a classification targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EigenTarget {
    /// Second-smallest eigenvalue.
    Lambda2,
    /// Largest eigenvalue.
    LambdaMax,
}

impl EigenTarget {
    pub fn index(self, n: usize) -> usize {
        match self {
            EigenTarget::Lambda2 => 1.min(n - 1),
            EigenTarget::LambdaMax => n - 1,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "lambda2" => Ok(EigenTarget::Lambda2),
            "lambdamax" => Ok(EigenTarget::LambdaMax),
            other => Err(Error::Config(format!(
                "unknown eigenvalue selector '{other}'"
            ))),
        }
    }
}

/// Where the trees of a search come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TreeSource {
    /// Every labeled tree on n vertices, in enumeration order.
    Exhaustive { n: usize },
    /// `count` uniform labeled trees on n vertices.
    Random { n: usize, count: u64 },
}

impl TreeSource {
    pub fn trials(&self) -> Result<u64> {
        match *self {
            TreeSource::Exhaustive { n } => {
                if !(ENUM_MIN..=ENUM_MAX).contains(&n) {
                    return Err(Error::SizeOutOfRange {
                        n,
                        min: ENUM_MIN,
                        max: ENUM_MAX,
                    });
                }
                Ok(tree_count(n))
            }
            TreeSource::Random { n, count } => {
                if n < 2 {
                    return Err(Error::SizeOutOfRange {
                        n,
                        min: 2,
                        max: usize::MAX,
                    });
                }
                Ok(count)
            }
        }
    }

    fn tree_for(&self, trial: u64, master_seed: u64) -> Result<Tree> {
        match *self {
            TreeSource::Exhaustive { n } => Ok(TreeEnumeration::tree_at(n, trial)),
            TreeSource::Random { n, .. } => random_tree(n, mix(master_seed, 3 * trial)),
        }
    }

    /// `exhaustive:N` or `random:N:COUNT`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || {
            Error::Config(format!(
                "bad tree source '{s}' (expected exhaustive:N or random:N:COUNT)"
            ))
        };
        match parts.as_slice() {
            ["exhaustive", n] => Ok(TreeSource::Exhaustive {
                n: n.parse().map_err(|_| bad())?,
            }),
            ["random", n, count] => Ok(TreeSource::Random {
                n: n.parse().map_err(|_| bad())?,
                count: count.parse().map_err(|_| bad())?,
            }),
            _ => Err(bad()),
        }
    }
}

impl std::fmt::Display for TreeSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            TreeSource::Exhaustive { n } => write!(f, "exhaustive:{n}"),
            TreeSource::Random { n, count } => write!(f, "random:{n}:{count}"),
        }
    }
}

/// Every tolerance of the pipeline, pinned in one place.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Eigensolver convergence, relative to the Frobenius norm.
    pub eigh_tol: f64,
    /// Cluster gap threshold, relative to max(1, matrix scale).
    pub cluster_rel: f64,
    /// Classification zero threshold, relative to the vector max-norm.
    pub zero_rel: f64,
    /// Tightened zero threshold used after refinement.
    pub refine_zero_rel: f64,
    /// Required residual after inverse-iteration refinement, relative to
    /// max(1, matrix scale).
    pub refine_residual_rel: f64,
    /// Residual accepted when confirming an eigenpair, relative to
    /// max(1, matrix scale).
    pub residual_rel: f64,
    /// Nonnegativity slack in Perron-style screens, relative to the vector
    /// max-norm.
    pub sign_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eigh_tol: 1e-12,
            cluster_rel: 1e-8,
            zero_rel: 1e-8,
            refine_zero_rel: 1e-10,
            refine_residual_rel: 1e-13,
            residual_rel: 1e-8,
            sign_rel: 1e-10,
        }
    }
}

/// Outcome of one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceStatus {
    Holds,
    ViolationCandidate,
    InconclusiveMultiplicity,
    InconclusiveNumeric,
}

impl InstanceStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            InstanceStatus::Holds => "holds",
            InstanceStatus::ViolationCandidate => "violation_candidate",
            InstanceStatus::InconclusiveMultiplicity => "inconclusive_multiplicity",
            InstanceStatus::InconclusiveNumeric => "inconclusive_numeric",
        }
    }
}

/// Compact per-instance record, kept for summary output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub trial: u64,
    pub status: InstanceStatus,
    pub eigenvalue: f64,
    pub cluster_size: usize,
}

/// Full result of running the pipeline on one (tree, matrix) instance.
#[derive(Debug, Clone)]
pub struct InstanceOutcome {
    pub status: InstanceStatus,
    pub eigenvalue: f64,
    pub cluster_size: usize,
    /// The classification that resolved a `Holds` verdict.
    pub resolution: Option<CaseOutcome>,
    /// Populated for violation candidates: the refined vector, its residual,
    /// and the violation reason.
    pub violation: Option<(Vec<f64>, f64, String)>,
}

fn numeric_failure(n: usize) -> InstanceOutcome {
    InstanceOutcome {
        status: InstanceStatus::InconclusiveNumeric,
        eigenvalue: f64::NAN,
        cluster_size: n,
        resolution: None,
        violation: None,
    }
}

/// Number of sampled unit combinations used to explore a cluster of
/// dimension d, beyond its basis vectors.
pub fn samples_for(d: usize) -> usize {
    if d <= 3 {
        1000
    } else {
        (1000usize >> (d - 3)).max(125)
    }
}

fn project_out_ones(v: &[f64]) -> Option<Vec<f64>> {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let mut w: Vec<f64> = v.iter().map(|x| x - mean).collect();
    let nrm = norm2(&w);
    if nrm <= 1e-8 {
        return None;
    }
    for x in w.iter_mut() {
        *x /= nrm;
    }
    sign_fix(&mut w);
    Some(w)
}

/// Candidate eigenvectors for an eigenvalue cluster: first the basis
/// vectors, then seeded unit combinations, all centered against the
/// all-ones direction. The stream is a pure function of (decomp, cluster,
/// seed), independent of how far it is consumed.
pub fn cluster_candidates<'a>(
    decomp: &'a EigenDecomp,
    cluster: Range<usize>,
    seed: u64,
    samples: usize,
) -> impl Iterator<Item = Vec<f64>> + 'a {
    let basis: Vec<usize> = cluster.collect();
    let d = basis.len();
    let basis_iter = {
        let basis = basis.clone();
        (0..d).filter_map(move |i| project_out_ones(&decomp.vectors[basis[i]]))
    };
    let sample_iter = (0..samples as u64).filter_map(move |s| {
        let mut rng = CounterRng::new(mix(seed, s));
        let n = decomp.n();
        let mut combo = vec![0f64; n];
        for &k in &basis {
            let c = rng.next_centered();
            for (ci, vi) in combo.iter_mut().zip(&decomp.vectors[k]) {
                *ci += c * vi;
            }
        }
        project_out_ones(&combo)
    });
    basis_iter.chain(sample_iter)
}

/// Runs the classification pipeline for one instance.
///
/// `sample_seed` drives the eigenspace sampling when the target eigenvalue
/// is clustered.
pub fn run_instance(
    tree: &Tree,
    a: &SymMatrix,
    kind: ConjectureKind,
    tol: &Tolerances,
    sample_seed: u64,
) -> InstanceOutcome {
    classify_instance(tree, a, kind.target(), tol, sample_seed)
}

/// [`run_instance`] with the target eigenvalue named directly.
pub fn classify_instance(
    tree: &Tree,
    a: &SymMatrix,
    eigen: EigenTarget,
    tol: &Tolerances,
    sample_seed: u64,
) -> InstanceOutcome {
    let n = a.n();
    debug_assert_eq!(n, tree.n());
    let lap = laplacian_of(a);
    let decomp = match eigh_opts(lap.matrix(), tol.eigh_tol, tol.cluster_rel) {
        Ok(d) => d,
        Err(_) => return numeric_failure(n),
    };
    let target = eigen.index(n);
    let cluster = decomp.cluster_of(target);
    let eigenvalue = decomp.values[target];
    let cluster_size = cluster.len();

    if cluster_size == 1 {
        let f = &decomp.vectors[target];
        let outcome = match classify(tree, f, Some(tol.zero_rel * inf_norm(f))) {
            Ok(c) => c.outcome,
            Err(_) => return numeric_failure(n),
        };
        if !matches!(outcome, CaseOutcome::Violation { .. }) {
            return InstanceOutcome {
                status: InstanceStatus::Holds,
                eigenvalue,
                cluster_size,
                resolution: Some(outcome),
                violation: None,
            };
        }
        // Refine before believing a violation: one round of inverse
        // iteration, then re-classify at a tightened zero threshold.
        let square = lap.matrix().to_square();
        let refined = inverse_iteration(&square, eigenvalue, f, 3);
        let scale = lap.matrix().scale().max(1.0);
        if refined.residual > tol.refine_residual_rel * scale {
            return numeric_failure(n);
        }
        let tight = tol.refine_zero_rel * inf_norm(&refined.vector);
        let re = match classify(tree, &refined.vector, Some(tight)) {
            Ok(c) => c.outcome,
            Err(_) => return numeric_failure(n),
        };
        return match re {
            CaseOutcome::Violation { ref reason } => InstanceOutcome {
                status: InstanceStatus::ViolationCandidate,
                eigenvalue: refined.value,
                cluster_size,
                resolution: None,
                violation: Some((
                    refined.vector.clone(),
                    refined.residual,
                    format!("{reason:?}"),
                )),
            },
            resolved => InstanceOutcome {
                status: InstanceStatus::Holds,
                eigenvalue: refined.value,
                cluster_size,
                resolution: Some(resolved),
                violation: None,
            },
        };
    }

    // Clustered target: the claim is existential, so sample the eigenspace
    // and accept the first well-structured vector; absence of one in the
    // sample is inconclusive, not a violation.
    for cand in cluster_candidates(&decomp, cluster, sample_seed, samples_for(cluster_size)) {
        if let Ok(c) = classify(tree, &cand, Some(tol.zero_rel * inf_norm(&cand))) {
            if !matches!(c.outcome, CaseOutcome::Violation { .. }) {
                return InstanceOutcome {
                    status: InstanceStatus::Holds,
                    eigenvalue,
                    cluster_size,
                    resolution: Some(c.outcome),
                    violation: None,
                };
            }
        }
    }
    InstanceOutcome {
        status: InstanceStatus::InconclusiveMultiplicity,
        eigenvalue,
        cluster_size,
        resolution: None,
        violation: None,
    }
}

/// Search configuration; a value of this struct fully determines the
/// report digest (workers only affect scheduling).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchConfig {
    pub kind: ConjectureKind,
    pub trees: TreeSource,
    pub family: String,
    pub master_seed: u64,
    pub tolerances: Tolerances,
    /// Worker threads; 0 uses the default pool size.
    pub workers: usize,
}

impl SearchConfig {
    pub fn new(kind: ConjectureKind, trees: TreeSource, family: &str, master_seed: u64) -> Self {
        SearchConfig {
            kind,
            trees,
            family: family.to_string(),
            master_seed,
            tolerances: Tolerances::default(),
            workers: 0,
        }
    }
}

fn run_trial(
    cfg: &SearchConfig,
    registry: &FamilyRegistry,
    trial: u64,
) -> Result<(InstanceRecord, Option<ViolationRecord>)> {
    let family = registry.get(&cfg.family)?;
    let tree = cfg.trees.tree_for(trial, cfg.master_seed)?;
    let a = family.build(
        &tree,
        cfg.kind.condition(),
        mix(cfg.master_seed, 3 * trial + 1),
    )?;
    if a.n() != tree.n() {
        return Err(Error::DimensionMismatch {
            expected: tree.n(),
            got: a.n(),
        });
    }
    match check_condition(&a, cfg.kind.condition(), false, Some(&tree))? {
        ConditionCheck::Pass => {}
        ConditionCheck::Fail { i, j, k } => {
            return Err(Error::Config(format!(
                "family '{}' violates the {} hypothesis at trial {trial} (triple {i},{j},{k})",
                cfg.family,
                cfg.kind.as_str()
            )));
        }
    }
    let outcome = run_instance(
        &tree,
        &a,
        cfg.kind,
        &cfg.tolerances,
        mix(cfg.master_seed, 3 * trial + 2),
    );
    let record = InstanceRecord {
        trial,
        status: outcome.status,
        eigenvalue: outcome.eigenvalue,
        cluster_size: outcome.cluster_size,
    };
    let violation = outcome
        .violation
        .map(|(vector, residual, reason)| ViolationRecord {
            trial,
            n: tree.n(),
            edges: tree.edges().to_vec(),
            matrix_csv: a.to_csv(),
            eigenvalue: outcome.eigenvalue,
            vector,
            residual,
            reason,
        });
    Ok((record, violation))
}

/// Runs a full search. Worker count affects wall time only: trials draw
/// their seeds from (master_seed, trial index) and results are merged in
/// trial order before the digest is computed.
pub fn search_conjecture(
    cfg: &SearchConfig,
    registry: &FamilyRegistry,
) -> Result<ConjectureReport> {
    registry.get(&cfg.family)?;
    let trials = cfg.trees.trials()?;
    let started = std::time::Instant::now();

    let body =
        |range: std::ops::Range<u64>| -> Vec<Result<(InstanceRecord, Option<ViolationRecord>)>> {
            range
                .into_par_iter()
                .map(|i| run_trial(cfg, registry, i))
                .collect()
        };
    let results = if cfg.workers == 0 {
        body(0..trials)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
        pool.install(|| body(0..trials))
    };

    let mut instances = Vec::with_capacity(results.len());
    let mut candidates = Vec::new();
    let mut counts = StatusCounts::default();
    for r in results {
        let (record, violation) = r?;
        counts.bump(record.status);
        if let Some(v) = violation {
            candidates.push(v);
        }
        instances.push(record);
    }
    let wall_ms = started.elapsed().as_millis() as u64;
    Ok(ConjectureReport::assemble(
        cfg, trials, counts, candidates, instances, wall_ms,
    ))
}

/// Re-validates a stored violation candidate from scratch: rebuilds the
/// matrix and tree, recomputes the Laplacian and its decomposition, and
/// reruns the classification pipeline.
pub fn revalidate(record: &ViolationRecord, cfg: &SearchConfig) -> Result<bool> {
    let tree = Tree::new(record.n, record.edges.clone())?;
    let a = SymMatrix::from_csv(&record.matrix_csv)?;
    let outcome = run_instance(
        &tree,
        &a,
        cfg.kind,
        &cfg.tolerances,
        mix(cfg.master_seed, 3 * record.trial + 2),
    );
    Ok(outcome.status == InstanceStatus::ViolationCandidate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fiedler::CaseOutcome;
    use crate::tree::{path_graph, star_graph};

    #[test]
    fn path3_distance_instance_holds() {
        let t = path_graph(3).unwrap();
        let d = t.distance_matrix();
        let out = run_instance(&t, &d, ConjectureKind::Conj2, &Tolerances::default(), 1);
        assert_eq!(out.status, InstanceStatus::Holds);
        assert!((out.eigenvalue - 5.0).abs() < 1e-10);
        assert_eq!(out.cluster_size, 1);
        assert!(matches!(
            out.resolution,
            Some(CaseOutcome::CaseII { vertex: 2 })
        ));
    }

    #[test]
    fn star4_distance_cluster_resolves_to_center() {
        let t = star_graph(4).unwrap();
        let d = t.distance_matrix();
        let out = run_instance(&t, &d, ConjectureKind::Conj2, &Tolerances::default(), 1);
        assert_eq!(out.status, InstanceStatus::Holds);
        assert_eq!(out.cluster_size, 2);
        assert!((out.eigenvalue - 7.0).abs() < 1e-9);
        assert!(matches!(
            out.resolution,
            Some(CaseOutcome::CaseII { vertex: 1 })
        ));
    }

    #[test]
    fn fiedler_instance_on_path_holds() {
        let t = path_graph(5).unwrap();
        let a = t.adjacency_matrix();
        let out = run_instance(&t, &a, ConjectureKind::Conj1, &Tolerances::default(), 1);
        assert_eq!(out.status, InstanceStatus::Holds);
    }

    #[test]
    fn exhaustive_n4_has_sixteen_trials() {
        let cfg = SearchConfig::new(
            ConjectureKind::Conj2,
            TreeSource::Exhaustive { n: 4 },
            "distance",
            42,
        );
        let report = search_conjecture(&cfg, &FamilyRegistry::builtin()).unwrap();
        assert_eq!(report.totals.trials, 16);
        assert_eq!(report.status_counts.violation_candidate, 0);
    }

    #[test]
    fn tree_source_parsing() {
        assert_eq!(
            TreeSource::parse("exhaustive:7").unwrap(),
            TreeSource::Exhaustive { n: 7 }
        );
        assert_eq!(
            TreeSource::parse("random:12:1000").unwrap(),
            TreeSource::Random { n: 12, count: 1000 }
        );
        assert!(TreeSource::parse("all").is_err());
        assert_eq!(TreeSource::Exhaustive { n: 7 }.to_string(), "exhaustive:7");
    }

    #[test]
    fn unknown_family_is_config_error() {
        let cfg = SearchConfig::new(
            ConjectureKind::Conj2,
            TreeSource::Exhaustive { n: 3 },
            "bogus",
            1,
        );
        assert!(matches!(
            search_conjecture(&cfg, &FamilyRegistry::builtin()),
            Err(Error::UnknownFamily(_))
        ));
    }

    #[test]
    fn mismatched_family_is_config_error() {
        // adjacency matrices do not satisfy the growing hypothesis
        let cfg = SearchConfig::new(
            ConjectureKind::Conj2,
            TreeSource::Exhaustive { n: 4 },
            "adjacency",
            1,
        );
        assert!(matches!(
            search_conjecture(&cfg, &FamilyRegistry::builtin()),
            Err(Error::Config(_))
        ));
    }
}
