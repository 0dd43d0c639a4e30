//! Acceptance suite. Each test prints one pass/fail line; run with
//! `cargo test -p treelap --test acceptance -- --nocapture` to see them all.

use std::time::Instant;
use treelap::conditions::{gen_condition_matrix, ConditionKind, GenFamily};
use treelap::eigen::{eigh, EIGH_TOL};
use treelap::family::FamilyRegistry;
use treelap::fiedler::{classify, is_monotone, CaseOutcome};
use treelap::harness::{
    run_instance, search_conjecture, verify_corollary, verify_lemma7, verify_lemma8,
    ConjectureKind, InstanceStatus, SearchConfig, Tolerances, TreeSource,
};
use treelap::laplacian::{compress, laplacian_of, sign_pattern, SignClass};
use treelap::matrix::SymMatrix;
use treelap::rng::{mix, CounterRng};
use treelap::tree::{path_graph, star_graph};

fn report(criterion: &str, passed: bool, detail: &str) {
    println!(
        "acceptance {criterion}: {} - {detail}",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "{criterion}: {detail}");
}

fn workers() -> usize {
    std::thread::available_parallelism()
        .map_or(1, |p| p.get())
        .min(8)
}

fn collinearity(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    (dot / (na * nb)).abs()
}

#[test]
fn criterion_1_exact_identities() {
    let start = Instant::now();
    let r = verify_lemma7(128).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    report(
        "criterion 1 (exact identities, sizes 2..=128)",
        r.passed && elapsed < 5.0,
        &format!(
            "exact integer products, first failure {:?}, {elapsed:.2}s (< 5s)",
            r.first_failure
        ),
    );
}

#[test]
fn criterion_2_compression_spectrum_and_lifting() {
    let start = Instant::now();
    let tol = Tolerances::default();
    let seed = 0u64;
    let trials = 100u64;
    let mut max_comp = 0f64;
    let mut max_lift = 0f64;
    let mut max_ones = 0f64;
    let mut max_companion = 0f64;
    let mut companion_runs = 0usize;
    for t in 0..trials {
        let n = 2 + (mix(seed, t) % 39) as usize;
        let mut rng = CounterRng::new(mix(seed ^ 0x5eed, t));
        let mut e = vec![0f64; n * n];
        for i in 0..n {
            for j in i..n {
                let v = rng.next_range_i64(-5, 5) as f64;
                e[i * n + j] = v;
                e[j * n + i] = v;
            }
        }
        let a = SymMatrix::from_entries(n, &e).unwrap();
        let r = verify_lemma8(&a, &tol, mix(seed, 7000 + t)).unwrap();
        max_comp = max_comp.max(r.compression_residual_rel);
        max_lift = max_lift.max(r.lift_residual_rel);
        max_ones = max_ones.max(r.lift_ones_defect);
        if let Some(err) = r.companion_spectrum_rel_err {
            companion_runs += 1;
            max_companion = max_companion.max(err);
            max_companion = max_companion.max(r.companion_lift_residual_rel.unwrap_or(0.0));
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let passed = max_comp <= 1e-8
        && max_lift <= 1e-8
        && max_ones <= 1e-10
        && companion_runs > 0
        && max_companion <= 1e-8
        && elapsed < 30.0;
    report(
        "criterion 2 (compressed spectrum and lifting, 100 matrices, n <= 40)",
        passed,
        &format!(
            "compression {max_comp:.2e}, lift {max_lift:.2e}, centering {max_ones:.2e}, independent spectrum {max_companion:.2e} on {companion_runs} runs, {elapsed:.2}s (< 30s)"
        ),
    );
}

#[test]
fn criterion_3_sign_patterns() {
    let start = Instant::now();
    let per_class = 100u64;
    let mut checked = 0usize;
    let mut ok = true;
    let mut first_bad = String::new();

    let mut run = |kind: ConditionKind, strict: bool, label: &str| {
        for t in 0..per_class {
            let n = if strict {
                3 + (mix(11 + strict as u64, t) % 28) as usize
            } else {
                2 + (mix(11, t) % 29) as usize
            };
            let family = if !strict && t % 2 == 1 {
                GenFamily::RepairedRandom
            } else {
                GenFamily::DistanceTransform
            };
            let a = gen_condition_matrix(kind, strict, None, n, mix(900, t), family).unwrap();
            let m = compress(&laplacian_of(&a));
            assert!(m.exact());
            let p = sign_pattern(&m);
            let class_ok = match (kind, strict) {
                (ConditionKind::PathGrowing, false) => p.all_nonneg(),
                (ConditionKind::PathShrinking, false) => p.all_nonpos(),
                (ConditionKind::PathGrowing, true) => p.classification == SignClass::AllPositive,
                (ConditionKind::PathShrinking, true) => p.classification == SignClass::AllNegative,
                _ => unreachable!(),
            };
            if !class_ok && ok {
                ok = false;
                first_bad = format!("{label} trial {t} n={n}: {:?}", p.classification);
            }
            checked += 1;
        }
    };
    run(ConditionKind::PathGrowing, false, "growing/weak");
    run(ConditionKind::PathShrinking, false, "shrinking/weak");
    run(ConditionKind::PathGrowing, true, "growing/strict");
    run(ConditionKind::PathShrinking, true, "shrinking/strict");

    let elapsed = start.elapsed().as_secs_f64();
    report(
        "criterion 3 (sign patterns of the compressed matrix, exact)",
        ok && checked == 400 && elapsed < 20.0,
        &format!("{checked} generated matrices across 4 condition classes, {first_bad}{elapsed:.2}s (< 20s)"),
    );
}

#[test]
fn criterion_4_path_anchors_and_sweep() {
    let start = Instant::now();
    let tol = Tolerances::default();

    // path-3 distance Laplacian: top eigenvalue 5, eigenvector (-1, 0, 1)
    let d3 = path_graph(3).unwrap().distance_matrix();
    let dec3 = eigh(laplacian_of(&d3).matrix(), EIGH_TOL).unwrap();
    let anchor3 = (dec3.values[2] - 5.0).abs() < 1e-10
        && collinearity(&dec3.vectors[2], &[-1.0, 0.0, 1.0]) > 1.0 - 1e-10;

    // path-4: top eigenvalue 7 + sqrt5, monotone eigenvector
    let s5 = 5f64.sqrt();
    let d4 = path_graph(4).unwrap().distance_matrix();
    let dec4 = eigh(laplacian_of(&d4).matrix(), EIGH_TOL).unwrap();
    let expect4 = [-1.0, 2.0 - s5, s5 - 2.0, 1.0];
    let anchor4 = (dec4.values[3] - (7.0 + s5)).abs() < 1e-9
        && collinearity(&dec4.vectors[3], &expect4) > 1.0 - 1e-9
        && is_monotone(&dec4.vectors[3], None).is_monotone();

    // every path up to 200: simple top eigenvalue, monotone top eigenvector
    let mut sweep_ok = true;
    let mut first_fail = 0usize;
    for n in 2..=200 {
        let r = verify_corollary(n, &tol).unwrap();
        if !(r.passed && r.top_simple) {
            sweep_ok = false;
            first_fail = n;
            break;
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        "criterion 4 (path anchors and simplicity sweep to n = 200)",
        anchor3 && anchor4 && sweep_ok && elapsed < 60.0,
        &format!(
            "anchor3 {anchor3}, anchor4 {anchor4}, sweep {} (first failure n={first_fail}), {elapsed:.2}s (< 60s)",
            sweep_ok
        ),
    );
}

#[test]
fn criterion_5_exhaustive_growing_sweep() {
    let start = Instant::now();
    let registry = FamilyRegistry::builtin();
    let mut total = 0u64;
    let mut candidates = 0u64;
    let mut inconclusive = 0u64;
    let mut other = 0u64;
    for n in 2..=8 {
        let cfg = SearchConfig {
            workers: workers(),
            ..SearchConfig::new(
                ConjectureKind::Conj2,
                TreeSource::Exhaustive { n },
                "distance",
                2024,
            )
        };
        let rep = search_conjecture(&cfg, &registry).unwrap();
        total += rep.totals.trials;
        candidates += rep.status_counts.violation_candidate;
        inconclusive += rep.status_counts.inconclusive_multiplicity;
        other += rep.status_counts.inconclusive_numeric;
    }
    let frac = inconclusive as f64 / total as f64;
    let elapsed = start.elapsed().as_secs_f64();
    report(
        "criterion 5 (exhaustive distance sweep, all trees n <= 8)",
        candidates == 0 && other == 0 && frac < 0.05 && elapsed < 600.0,
        &format!(
            "{total} instances, {candidates} violation candidates, inconclusive fraction {frac:.4} (< 0.05), {elapsed:.1}s (< 600s single-threaded budget, ran on {} workers)",
            workers()
        ),
    );
}

#[test]
fn criterion_6_exhaustive_adjacency_sweep() {
    let start = Instant::now();
    let registry = FamilyRegistry::builtin();
    let mut total = 0u64;
    let mut candidates = 0u64;
    let mut numeric = 0u64;
    for n in 2..=7 {
        let cfg = SearchConfig {
            workers: workers(),
            ..SearchConfig::new(
                ConjectureKind::Conj1,
                TreeSource::Exhaustive { n },
                "adjacency",
                2024,
            )
        };
        let rep = search_conjecture(&cfg, &registry).unwrap();
        total += rep.totals.trials;
        candidates += rep.status_counts.violation_candidate;
        numeric += rep.status_counts.inconclusive_numeric;
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        "criterion 6 (exhaustive adjacency sweep, all trees n <= 7)",
        candidates == 0 && numeric == 0 && elapsed < 120.0,
        &format!("{total} instances, {candidates} violation candidates, {elapsed:.1}s (< 120s)"),
    );
}

#[test]
fn criterion_7_star_multiplicity_anchor() {
    let star = star_graph(4).unwrap();
    let d = star.distance_matrix();
    let dec = eigh(laplacian_of(&d).matrix(), EIGH_TOL).unwrap();
    let expect = [0.0, 4.0, 7.0, 7.0];
    let spectrum_ok = dec
        .values
        .iter()
        .zip(expect)
        .all(|(got, want)| (got - want).abs() < 1e-9);
    let cluster_ok = dec.cluster_of(3) == (2..4);

    // the doubled eigenvalue resolves through the basis vector (0,1,-1,0)
    let basis_ok = matches!(
        classify(&star, &[0.0, 1.0, -1.0, 0.0], None)
            .unwrap()
            .outcome,
        CaseOutcome::CaseII { vertex: 1 }
    );
    let out = run_instance(&star, &d, ConjectureKind::Conj2, &Tolerances::default(), 1);
    let resolved_ok = out.status == InstanceStatus::Holds
        && out.cluster_size == 2
        && matches!(out.resolution, Some(CaseOutcome::CaseII { vertex: 1 }));
    report(
        "criterion 7 (star multiplicity anchor)",
        spectrum_ok && cluster_ok && basis_ok && resolved_ok,
        &format!(
            "spectrum {:?} (expect {expect:?}), cluster {:?}, basis vector case II at center {basis_ok}, harness resolution {resolved_ok}",
            dec.values,
            dec.cluster_of(3)
        ),
    );
}

#[test]
fn criterion_8_determinism() {
    let registry = FamilyRegistry::builtin();
    let digest_with = |workers: usize, seed: u64| {
        let cfg = SearchConfig {
            workers,
            ..SearchConfig::new(
                ConjectureKind::Conj2,
                TreeSource::Exhaustive { n: 6 },
                "distance",
                seed,
            )
        };
        search_conjecture(&cfg, &registry).unwrap().digest
    };
    let a1 = digest_with(1, 5);
    let a4 = digest_with(4, 5);
    let a1_again = digest_with(1, 5);

    let random_digest = |workers: usize| {
        let cfg = SearchConfig {
            workers,
            ..SearchConfig::new(
                ConjectureKind::Conj1,
                TreeSource::Random { n: 9, count: 300 },
                "repaired",
                99,
            )
        };
        search_conjecture(&cfg, &registry).unwrap().digest
    };
    let b2 = random_digest(2);
    let b5 = random_digest(5);
    report(
        "criterion 8 (determinism across runs and worker counts)",
        a1 == a4 && a1 == a1_again && b2 == b5,
        &format!("exhaustive digest {a1} stable, random-tree digest {b2} stable"),
    );
}
