//! Search reports: JSON object model, per-instance summary lines, and a
//! deterministic content digest.
//!
//! The digest is a SHA-256 over the canonical JSON serialization of
//! everything that defines the run's outcome (configuration minus worker
//! count, totals minus timing, status counts, candidates). Two runs with the
//! same configuration produce byte-identical digests regardless of worker
//! count or scheduling.

use super::{InstanceRecord, InstanceStatus, SearchConfig, Tolerances};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// A violation candidate, stored with everything needed to re-check it from
/// scratch.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ViolationRecord {
    pub trial: u64,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    /// Instance matrix in the CSV matrix format (integer literals keep the
    /// exactness flag on re-parse).
    pub matrix_csv: String,
    pub eigenvalue: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatusCounts {
    pub holds: u64,
    pub violation_candidate: u64,
    pub inconclusive_multiplicity: u64,
    pub inconclusive_numeric: u64,
}

impl StatusCounts {
    pub fn bump(&mut self, status: InstanceStatus) {
        match status {
            InstanceStatus::Holds => self.holds += 1,
            InstanceStatus::ViolationCandidate => self.violation_candidate += 1,
            InstanceStatus::InconclusiveMultiplicity => self.inconclusive_multiplicity += 1,
            InstanceStatus::InconclusiveNumeric => self.inconclusive_numeric += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.holds
            + self.violation_candidate
            + self.inconclusive_multiplicity
            + self.inconclusive_numeric
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub kind: String,
    pub trees: String,
    pub family: String,
    pub master_seed: u64,
    pub tolerances: Tolerances,
    pub workers: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Totals {
    pub trials: u64,
    pub wall_ms: u64,
}

/// Everything the digest covers, in a fixed field order.
#[derive(Serialize)]
struct DigestBody<'a> {
    kind: &'a str,
    trees: String,
    family: &'a str,
    master_seed: u64,
    tolerances: &'a Tolerances,
    trials: u64,
    status_counts: &'a StatusCounts,
    candidates: &'a [ViolationRecord],
}

/// Outcome record of one search run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub config: ConfigEcho,
    pub totals: Totals,
    pub status_counts: StatusCounts,
    pub candidates: Vec<ViolationRecord>,
    pub digest: String,
    /// Per-instance records back the summary format; omitted from JSON.
    #[serde(skip)]
    pub instances: Vec<InstanceRecord>,
}

impl ConjectureReport {
    pub(super) fn assemble(
        cfg: &SearchConfig,
        trials: u64,
        status_counts: StatusCounts,
        candidates: Vec<ViolationRecord>,
        instances: Vec<InstanceRecord>,
        wall_ms: u64,
    ) -> Self {
        debug_assert_eq!(status_counts.total(), trials);
        let digest = compute_digest(cfg, trials, &status_counts, &candidates);
        ConjectureReport {
            config: ConfigEcho {
                kind: cfg.kind.as_str().to_string(),
                trees: cfg.trees.to_string(),
                family: cfg.family.clone(),
                master_seed: cfg.master_seed,
                tolerances: cfg.tolerances,
                workers: cfg.workers,
            },
            totals: Totals { trials, wall_ms },
            status_counts,
            candidates,
            digest,
            instances,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per instance: trial id, status, eigenvalue, cluster size.
    pub fn to_csv_summary(&self) -> String {
        let mut out = String::from("trial,status,eigenvalue,cluster_size\n");
        for r in &self.instances {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.trial,
                r.status.as_str(),
                r.eigenvalue,
                r.cluster_size
            ));
        }
        out
    }

    /// Fraction of instances whose multiplicity resisted the eigenspace
    /// sampling.
    pub fn inconclusive_fraction(&self) -> f64 {
        if self.totals.trials == 0 {
            return 0.0;
        }
        self.status_counts.inconclusive_multiplicity as f64 / self.totals.trials as f64
    }
}

fn compute_digest(
    cfg: &SearchConfig,
    trials: u64,
    status_counts: &StatusCounts,
    candidates: &[ViolationRecord],
) -> String {
    let body = DigestBody {
        kind: cfg.kind.as_str(),
        trees: cfg.trees.to_string(),
        family: &cfg.family,
        master_seed: cfg.master_seed,
        tolerances: &cfg.tolerances,
        trials,
        status_counts,
        candidates,
    };
    let canonical = serde_json::to_string(&body).expect("digest body serializes");
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    let out = hasher.finalize();
    let mut hex = String::with_capacity(64);
    for b in out {
        hex.push_str(&format!("{b:02x}"));
    }
    hex
}

#[cfg(test)]
mod tests {
    use super::super::{ConjectureKind, SearchConfig, TreeSource};
    use super::*;

    #[test]
    fn digest_ignores_workers_and_timing() {
        let mut cfg = SearchConfig::new(
            ConjectureKind::Conj2,
            TreeSource::Exhaustive { n: 4 },
            "distance",
            7,
        );
        let counts = StatusCounts {
            holds: 16,
            ..Default::default()
        };
        let a = ConjectureReport::assemble(&cfg, 16, counts, vec![], vec![], 123);
        cfg.workers = 8;
        let b = ConjectureReport::assemble(&cfg, 16, counts, vec![], vec![], 456);
        assert_eq!(a.digest, b.digest);
    }

    #[test]
    fn digest_tracks_outcomes() {
        let cfg = SearchConfig::new(
            ConjectureKind::Conj2,
            TreeSource::Exhaustive { n: 4 },
            "distance",
            7,
        );
        let a = ConjectureReport::assemble(
            &cfg,
            16,
            StatusCounts {
                holds: 16,
                ..Default::default()
            },
            vec![],
            vec![],
            0,
        );
        let b = ConjectureReport::assemble(
            &cfg,
            16,
            StatusCounts {
                holds: 15,
                inconclusive_multiplicity: 1,
                ..Default::default()
            },
            vec![],
            vec![],
            0,
        );
        assert_ne!(a.digest, b.digest);
    }

    #[test]
    fn json_round_trips() {
        let cfg = SearchConfig::new(
            ConjectureKind::Conj1,
            TreeSource::Random { n: 6, count: 3 },
            "transform",
            11,
        );
        let report = ConjectureReport::assemble(
            &cfg,
            3,
            StatusCounts {
                holds: 3,
                ..Default::default()
            },
            vec![],
            vec![],
            5,
        );
        let back: ConjectureReport = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(back.digest, report.digest);
        assert_eq!(back.config.trees, "random:6:3");
    }
}
