//! Command-line frontend: verification suites, conjecture search, and
//! one-off classification on user-supplied trees and matrices.
//!
//! Exit codes: 0 success, 1 verification failure, 2 configuration or parse
//! error, 3 a violation candidate survived re-validation.

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;
use treelap::family::FamilyRegistry;
use treelap::fiedler::CaseOutcome;
use treelap::harness::suites::{SuiteParams, SuiteRegistry, SuiteReport};
use treelap::harness::{
    classify_instance, revalidate, search_conjecture, ConjectureKind, EigenTarget, SearchConfig,
    Tolerances, TreeSource,
};
use treelap::matrix::SymMatrix;
use treelap::tree::Tree;

const EXIT_OK: u8 = 0;
const EXIT_VERIFY_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_CANDIDATE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "treelap",
    about = "Spectral verification and conjecture search for generalized Laplacians on trees",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite (lemma7, lemma8, thm11, corollary, or all).
    Verify(VerifyArgs),
    /// Sweep (tree, matrix) instances for structural violations.
    Search(SearchArgs),
    /// Classify one eigenvector on a user-supplied tree.
    Classify(ClassifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name or "all".
    #[arg(long)]
    target: String,
    /// Size parameter (suite-specific, e.g. the largest path length).
    #[arg(long)]
    n: Option<usize>,
    /// Largest size for sized sweeps.
    #[arg(long = "n-max")]
    n_max: Option<usize>,
    /// Number of randomized trials where the suite samples instances.
    #[arg(long)]
    trials: Option<usize>,
    /// Master seed for randomized instances.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, default_value = "json", value_parser = ["json", "csv-summary"])]
    format: String,
}

#[derive(Args)]
struct SearchArgs {
    /// Conjecture to test: conj1 or conj2.
    #[arg(long)]
    kind: String,
    /// Tree source: exhaustive:N or random:N:COUNT.
    #[arg(long)]
    trees: String,
    /// Matrix family: distance, adjacency, transform, or repaired.
    #[arg(long)]
    family: String,
    /// Master seed; fully determines every randomized choice.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trial count override for random tree sources given as random:N.
    #[arg(long)]
    trials: Option<u64>,
    /// Worker threads (0 = default pool). The report is identical for any
    /// worker count.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Classification zero threshold, relative to the vector max-norm.
    #[arg(long = "zero-tol")]
    zero_tol: Option<f64>,
    /// Eigenvalue cluster threshold, relative to max(1, matrix scale).
    #[arg(long = "cluster-tol")]
    cluster_tol: Option<f64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, default_value = "json", value_parser = ["json", "csv-summary"])]
    format: String,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Tree file: first line n, then one "u v" edge per line.
    #[arg(long)]
    tree: PathBuf,
    /// Matrix CSV file, or "distance"/"adjacency" to derive it from the
    /// tree.
    #[arg(long)]
    matrix: String,
    /// Which eigenvalue to classify: lambda2 or lambdamax.
    #[arg(long, default_value = "lambdamax", value_parser = ["lambda2", "lambdamax"])]
    eigen: String,
    /// Classification zero threshold, relative to the vector max-norm.
    #[arg(long = "zero-tol")]
    zero_tol: Option<f64>,
    /// Eigenvalue cluster threshold, relative to max(1, matrix scale).
    #[arg(long = "cluster-tol")]
    cluster_tol: Option<f64>,
    /// Sampling seed used when the target eigenvalue is clustered.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, default_value = "json", value_parser = ["json", "csv-summary"])]
    format: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Verify(args) => cmd_verify(&args),
        Command::Search(args) => cmd_search(&args),
        Command::Classify(args) => cmd_classify(&args),
    };
    match code {
        Ok(c) => ExitCode::from(c),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| e.to_string()),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct VerifyReport {
    target: String,
    passed: bool,
    suites: Vec<SuiteReport>,
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8, String> {
    let registry = SuiteRegistry::builtin();
    let params = SuiteParams {
        n: args.n,
        n_max: args.n_max,
        trials: args.trials,
        seed: args.seed,
    };
    let suites: Vec<SuiteReport> = if args.target == "all" {
        registry.all().map(|s| s.run(&params)).collect()
    } else {
        let suite = registry.get(&args.target).map_err(|e| e.to_string())?;
        vec![suite.run(&params)]
    };
    let passed = suites.iter().all(|s| s.passed);
    for s in &suites {
        eprint!("{}", s.render_text());
    }
    let report = VerifyReport {
        target: args.target.clone(),
        passed,
        suites,
    };
    let text = match args.format.as_str() {
        "csv-summary" => {
            let mut out = String::from("suite,check,passed,detail\n");
            for s in &report.suites {
                for c in &s.checks {
                    out.push_str(&format!(
                        "{},{},{},\"{}\"\n",
                        s.suite,
                        c.name,
                        c.passed,
                        c.detail.replace('"', "'")
                    ));
                }
            }
            out
        }
        _ => serde_json::to_string_pretty(&report).expect("report serializes"),
    };
    emit(&args.out, &text)?;
    Ok(if passed { EXIT_OK } else { EXIT_VERIFY_FAIL })
}

fn cmd_search(args: &SearchArgs) -> Result<u8, String> {
    let kind = ConjectureKind::parse(&args.kind).map_err(|e| e.to_string())?;
    let mut trees = TreeSource::parse(&args.trees).map_err(|e| e.to_string())?;
    if let (TreeSource::Random { n, .. }, Some(t)) = (trees, args.trials) {
        trees = TreeSource::Random { n, count: t };
    }
    let mut tolerances = Tolerances::default();
    if let Some(z) = args.zero_tol {
        tolerances.zero_rel = z;
    }
    if let Some(c) = args.cluster_tol {
        tolerances.cluster_rel = c;
    }
    let cfg = SearchConfig {
        kind,
        trees,
        family: args.family.clone(),
        master_seed: args.seed,
        tolerances,
        workers: args.workers,
    };
    let registry = FamilyRegistry::builtin();
    let report = search_conjecture(&cfg, &registry).map_err(|e| e.to_string())?;

    // Candidates only count after an independent from-scratch re-check.
    let mut survivors = 0usize;
    for record in &report.candidates {
        if revalidate(record, &cfg).map_err(|e| e.to_string())? {
            survivors += 1;
        }
    }
    eprintln!(
        "{} trials: {} hold, {} violation candidates ({} survive re-validation), {} inconclusive (multiplicity), {} inconclusive (numeric)",
        report.totals.trials,
        report.status_counts.holds,
        report.status_counts.violation_candidate,
        survivors,
        report.status_counts.inconclusive_multiplicity,
        report.status_counts.inconclusive_numeric,
    );
    let text = match args.format.as_str() {
        "csv-summary" => report.to_csv_summary(),
        _ => report.to_json(),
    };
    emit(&args.out, &text)?;
    Ok(if survivors > 0 {
        EXIT_CANDIDATE
    } else {
        EXIT_OK
    })
}

#[derive(Serialize)]
struct ClassifyReport {
    eigen: String,
    eigenvalue: f64,
    cluster_size: usize,
    status: String,
    outcome: Option<CaseOutcome>,
    characteristic_edge: Option<(usize, usize)>,
    characteristic_vertex: Option<usize>,
}

fn cmd_classify(args: &ClassifyArgs) -> Result<u8, String> {
    let tree_text =
        std::fs::read_to_string(&args.tree).map_err(|e| format!("{}: {e}", args.tree.display()))?;
    let tree = Tree::parse(&tree_text).map_err(|e| e.to_string())?;
    let matrix = match args.matrix.as_str() {
        "distance" => tree.distance_matrix(),
        "adjacency" => tree.adjacency_matrix(),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
            SymMatrix::from_csv(&text).map_err(|e| e.to_string())?
        }
    };
    if matrix.n() != tree.n() {
        return Err(format!(
            "matrix size {} does not match tree size {}",
            matrix.n(),
            tree.n()
        ));
    }
    let eigen = EigenTarget::parse(&args.eigen).map_err(|e| e.to_string())?;
    let mut tolerances = Tolerances::default();
    if let Some(z) = args.zero_tol {
        tolerances.zero_rel = z;
    }
    if let Some(c) = args.cluster_tol {
        tolerances.cluster_rel = c;
    }
    let out = classify_instance(&tree, &matrix, eigen, &tolerances, args.seed);
    let (edge, vertex) = match &out.resolution {
        Some(CaseOutcome::CaseI { edge }) => (Some(*edge), None),
        Some(CaseOutcome::CaseII { vertex }) => (None, Some(*vertex)),
        _ => (None, None),
    };
    let report = ClassifyReport {
        eigen: args.eigen.clone(),
        eigenvalue: out.eigenvalue,
        cluster_size: out.cluster_size,
        status: out.status.as_str().to_string(),
        outcome: out.resolution.clone(),
        characteristic_edge: edge,
        characteristic_vertex: vertex,
    };
    let text = match args.format.as_str() {
        "csv-summary" => format!(
            "eigen,eigenvalue,cluster_size,status\n{},{},{},{}\n",
            report.eigen, report.eigenvalue, report.cluster_size, report.status
        ),
        _ => serde_json::to_string_pretty(&report).expect("report serializes"),
    };
    emit(&args.out, &text)?;
    Ok(EXIT_OK)
}
