//! Verification suites behind a common trait, registered by name and
//! selected at runtime ("lemma7", "lemma8", "thm11", "corollary").

use super::verify::{
    verify_corollary, verify_lemma7, verify_lemma8, verify_thm11, Thm11Part, COMPANION_MAX_N,
};
use super::{InstanceStatus, Tolerances};
use crate::conditions::{gen_condition_matrix, ConditionKind, GenFamily};
use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::rng::{mix, CounterRng};
use serde::{Deserialize, Serialize};

/// Knobs a suite may consume; unset fields fall back to suite defaults.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct SuiteParams {
    pub n: Option<usize>,
    pub n_max: Option<usize>,
    pub trials: Option<usize>,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckLine>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            passed: true,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, passed: bool, detail: String) {
        self.passed &= passed;
        self.checks.push(CheckLine {
            name: name.to_string(),
            passed,
            detail,
        });
    }

    /// One "ok/FAIL name: detail" line per check.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{} {}::{}: {}\n",
                if c.passed { "ok  " } else { "FAIL" },
                self.suite,
                c.name,
                c.detail
            ));
        }
        out
    }
}

/// A named verification suite.
pub trait VerifySuite: Send + Sync {
    /// Registry key; also the CLI value for `--target`.
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    fn run(&self, params: &SuiteParams) -> SuiteReport;
}

/// Name-keyed registry of verification suites.
pub struct SuiteRegistry {
    items: Vec<Box<dyn VerifySuite>>,
}

impl SuiteRegistry {
    pub fn empty() -> Self {
        SuiteRegistry { items: Vec::new() }
    }

    pub fn builtin() -> Self {
        let mut r = SuiteRegistry::empty();
        r.register(Box::new(Lemma7Suite));
        r.register(Box::new(Lemma8Suite));
        r.register(Box::new(Thm11Suite));
        r.register(Box::new(CorollarySuite));
        r
    }

    pub fn register(&mut self, suite: Box<dyn VerifySuite>) {
        self.items.retain(|s| s.name() != suite.name());
        self.items.push(suite);
    }

    pub fn get(&self, name: &str) -> Result<&dyn VerifySuite> {
        self.items
            .iter()
            .map(|b| b.as_ref())
            .find(|s| s.name() == name)
            .ok_or_else(|| Error::UnknownSuite(name.to_string()))
    }

    pub fn all(&self) -> impl Iterator<Item = &dyn VerifySuite> {
        self.items.iter().map(|b| b.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.items.iter().map(|s| s.name()).collect()
    }
}

/// Exact identity checks for the difference/summation matrix pair.
pub struct Lemma7Suite;

impl VerifySuite for Lemma7Suite {
    fn name(&self) -> &'static str {
        "lemma7"
    }

    fn description(&self) -> &'static str {
        "exact product identities of the difference and summation matrices"
    }

    fn run(&self, params: &SuiteParams) -> SuiteReport {
        let n_max = params.n_max.unwrap_or(128);
        let mut rep = SuiteReport::new(self.name());
        match verify_lemma7(n_max) {
            Ok(r) => rep.check(
                "identities",
                r.passed,
                match r.first_failure {
                    None => format!("exact for all sizes 2..={n_max}"),
                    Some(n) => format!("first failure at size {n}"),
                },
            ),
            Err(e) => rep.check("identities", false, e.to_string()),
        }
        rep
    }
}

fn random_symmetric_int(n: usize, seed: u64, lo: i64, hi: i64) -> SymMatrix {
    let mut rng = CounterRng::new(seed);
    let mut e = vec![0f64; n * n];
    for i in 0..n {
        for j in i..n {
            let v = rng.next_range_i64(lo, hi) as f64;
            e[i * n + j] = v;
            e[j * n + i] = v;
        }
    }
    SymMatrix::from_entries(n, &e).expect("symmetric by construction")
}

/// Compression spectrum and lifting checks on random integer matrices.
pub struct Lemma8Suite;

impl VerifySuite for Lemma8Suite {
    fn name(&self) -> &'static str {
        "lemma8"
    }

    fn description(&self) -> &'static str {
        "compressed-matrix spectrum, eigenvector compression and lifting"
    }

    fn run(&self, params: &SuiteParams) -> SuiteReport {
        let trials = params.trials.unwrap_or(100);
        let tol = Tolerances::default();
        let mut rep = SuiteReport::new(self.name());
        let mut max_comp = 0f64;
        let mut max_lift = 0f64;
        let mut max_ones = 0f64;
        let mut max_companion = 0f64;
        let mut companion_runs = 0usize;
        let mut failures = 0usize;
        for t in 0..trials as u64 {
            let n = 2 + (mix(params.seed, t) % 39) as usize;
            let a = random_symmetric_int(n, mix(params.seed ^ 0x5eed, t), -5, 5);
            match verify_lemma8(&a, &tol, mix(params.seed, 7000 + t)) {
                Ok(r) => {
                    max_comp = max_comp.max(r.compression_residual_rel);
                    max_lift = max_lift.max(r.lift_residual_rel);
                    max_ones = max_ones.max(r.lift_ones_defect);
                    if let Some(e) = r.companion_spectrum_rel_err {
                        companion_runs += 1;
                        max_companion = max_companion.max(e);
                        max_companion =
                            max_companion.max(r.companion_lift_residual_rel.unwrap_or(0.0));
                    }
                    if !r.passes(&tol) {
                        failures += 1;
                    }
                }
                Err(_) => failures += 1,
            }
        }
        rep.check(
            "compression_residual",
            max_comp <= tol.residual_rel,
            format!(
                "max {max_comp:.3e} over {trials} matrices (bound {:.0e})",
                tol.residual_rel
            ),
        );
        rep.check(
            "lift_residual",
            max_lift <= tol.residual_rel,
            format!("max {max_lift:.3e} (bound {:.0e})", tol.residual_rel),
        );
        rep.check(
            "lift_centering",
            max_ones <= 1e-10,
            format!("max {max_ones:.3e} (bound 1e-10)"),
        );
        rep.check(
            "independent_spectrum",
            companion_runs > 0 && max_companion <= tol.residual_rel,
            format!(
                "exact characteristic polynomial cross-check on {companion_runs} matrices up to size {COMPANION_MAX_N}, max deviation {max_companion:.3e}"
            ),
        );
        rep.check(
            "failures",
            failures == 0,
            format!("{failures} failing matrices"),
        );
        rep
    }
}

/// Monotone-eigenvector checks: pinned small anchors plus generated
/// instances for both parts.
pub struct Thm11Suite;

impl VerifySuite for Thm11Suite {
    fn name(&self) -> &'static str {
        "thm11"
    }

    fn description(&self) -> &'static str {
        "monotone eigenvectors for matrices ordered along a path"
    }

    fn run(&self, params: &SuiteParams) -> SuiteReport {
        let tol = Tolerances::default();
        let trials = params.trials.unwrap_or(100);
        let mut rep = SuiteReport::new(self.name());

        // Anchors with hand-derived spectra.
        let d3 = crate::tree::path_graph(3).unwrap().distance_matrix();
        match verify_thm11(&d3, Thm11Part::I, &tol, params.seed) {
            Ok(out) => rep.check(
                "path3_distance_anchor",
                out.status == InstanceStatus::Holds && (out.eigenvalue - 5.0).abs() < 1e-10,
                format!("eigenvalue {:.12} (expect 5)", out.eigenvalue),
            ),
            Err(e) => rep.check("path3_distance_anchor", false, e.to_string()),
        }
        let d4 = crate::tree::path_graph(4).unwrap().distance_matrix();
        let s5 = 5f64.sqrt();
        match verify_thm11(&d4, Thm11Part::I, &tol, params.seed) {
            Ok(out) => rep.check(
                "path4_distance_anchor",
                out.status == InstanceStatus::Holds && (out.eigenvalue - (7.0 + s5)).abs() < 1e-9,
                format!(
                    "eigenvalue {:.12} (expect 7+sqrt5 = {:.9})",
                    out.eigenvalue,
                    7.0 + s5
                ),
            ),
            Err(e) => rep.check("path4_distance_anchor", false, e.to_string()),
        }
        let a3 = crate::tree::path_graph(3).unwrap().adjacency_matrix();
        match verify_thm11(&a3, Thm11Part::II, &tol, params.seed) {
            Ok(out) => rep.check(
                "path3_adjacency_anchor",
                out.status == InstanceStatus::Holds && (out.eigenvalue - 1.0).abs() < 1e-10,
                format!("second eigenvalue {:.12} (expect 1)", out.eigenvalue),
            ),
            Err(e) => rep.check("path3_adjacency_anchor", false, e.to_string()),
        }

        // Generated instances: every simple-cluster instance must verify;
        // clustered ones may stay inconclusive (the statement is existential
        // and the eigenspace is only sampled).
        let mut holds = 0usize;
        let mut multiplicity = 0usize;
        let mut hard_failures = 0usize;
        for t in 0..trials as u64 {
            let part = if t % 2 == 0 {
                Thm11Part::I
            } else {
                Thm11Part::II
            };
            let kind = match part {
                Thm11Part::I => ConditionKind::PathGrowing,
                Thm11Part::II => ConditionKind::PathShrinking,
            };
            let family = if t % 4 < 2 {
                GenFamily::DistanceTransform
            } else {
                GenFamily::RepairedRandom
            };
            let n = 2 + (mix(params.seed, 900 + t) % 11) as usize;
            let a =
                match gen_condition_matrix(kind, false, None, n, mix(params.seed, 300 + t), family)
                {
                    Ok(a) => a,
                    Err(_) => {
                        hard_failures += 1;
                        continue;
                    }
                };
            match verify_thm11(&a, part, &tol, mix(params.seed, 600 + t)) {
                Ok(out) => match out.status {
                    InstanceStatus::Holds => holds += 1,
                    InstanceStatus::InconclusiveMultiplicity => multiplicity += 1,
                    _ => hard_failures += 1,
                },
                Err(_) => hard_failures += 1,
            }
        }
        rep.check(
            "generated_instances",
            hard_failures == 0,
            format!("{holds} verified, {multiplicity} inconclusive (multiplicity), {hard_failures} failures out of {trials}"),
        );
        rep
    }
}

/// Path simplicity and monotonicity sweep with its hand anchors.
pub struct CorollarySuite;

impl VerifySuite for CorollarySuite {
    fn name(&self) -> &'static str {
        "corollary"
    }

    fn description(&self) -> &'static str {
        "simple top eigenvalue and monotone top eigenvector on path distances"
    }

    fn run(&self, params: &SuiteParams) -> SuiteReport {
        let tol = Tolerances::default();
        let n_max = params.n.or(params.n_max).unwrap_or(64);
        let mut rep = SuiteReport::new(self.name());
        let mut all = true;
        let mut first_fail = None;
        for n in 2..=n_max {
            match verify_corollary(n, &tol) {
                Ok(r) if r.passed => {}
                Ok(_) => {
                    all = false;
                    first_fail = Some(n);
                    break;
                }
                Err(_) => {
                    all = false;
                    first_fail = Some(n);
                    break;
                }
            }
        }
        rep.check(
            "sweep",
            all,
            match first_fail {
                None => {
                    format!("positivity, simplicity and monotonicity for all paths 2..={n_max}")
                }
                Some(n) => format!("first failure at n = {n}"),
            },
        );
        if n_max >= 4 {
            let r3 = verify_corollary(3, &tol).unwrap();
            rep.check(
                "path3_anchor",
                (r3.top_eigenvalue - 5.0).abs() < 1e-10 && r3.top_simple,
                format!(
                    "top eigenvalue {:.12} (expect 5), simple: {}",
                    r3.top_eigenvalue, r3.top_simple
                ),
            );
            let s5 = 5f64.sqrt();
            let r4 = verify_corollary(4, &tol).unwrap();
            rep.check(
                "path4_anchor",
                (r4.top_eigenvalue - (7.0 + s5)).abs() < 1e-9 && (r4.gap - (1.0 + s5)).abs() < 1e-9,
                format!(
                    "top eigenvalue {:.9} (expect {:.9}), gap {:.9} (expect {:.9})",
                    r4.top_eigenvalue,
                    7.0 + s5,
                    r4.gap,
                    1.0 + s5
                ),
            );
        }
        rep
    }
}
