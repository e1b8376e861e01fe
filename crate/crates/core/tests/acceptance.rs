//! Acceptance criteria 1-7. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

// The tolerance is pinned at zero but kept as a named bound.
#![allow(clippy::absurd_extreme_comparisons)]

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hz4::coloring::EdgeColoring;
use hz4::graph::{emit_graph6, parse_graph6, Graph};
use hz4::harness::{random_h4, sweep_lines, verify, RunConfig, Scale, Suite};
use hz4::structure::{enumerate_configurations, find_configuration, find_configuration_at, in_h_k};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

/// Exact agreement everywhere.
const MAX_MISMATCHES: usize = 0;
const SWEEP_TIME_LIMIT: Duration = Duration::from_secs(15 * 60);
const EXTENSION_RUNS_PER_KIND: usize = 1000;
const EXTENSION_MAX_N: usize = 30;
const BFS_CUTOFF: usize = 14;
const SAMPLED_ABOVE_TEN: usize = 300;
const RANDOM_HOSTS: usize = 10_000;
const RANDOM_HOST_MAX_N: usize = 60;
const KEMPE_TRIALS: usize = 100_000;
const SEED: u64 = 2024;

fn corpus(prefix: &str, ns: impl IntoIterator<Item = usize>) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut out = Vec::new();
    for n in ns {
        let path = dir.join(format!("{prefix}{n}.g6"));
        let text = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        out.extend(text.lines().filter(|l| !l.is_empty()).map(str::to_string));
    }
    out
}

fn graphs(lines: &[String]) -> Vec<Graph> {
    lines
        .iter()
        .map(|l| parse_graph6(l).expect("corpus line parses"))
        .collect()
}

fn cfg() -> RunConfig {
    RunConfig {
        seed: SEED,
        ..RunConfig::default()
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// Re-checks a class-1 record's coloring against the graph.
fn coloring_verifies(rec: &Value) -> bool {
    let Some(g6) = rec["graph6"].as_str() else {
        return false;
    };
    let Ok(g) = parse_graph6(g6) else {
        return false;
    };
    let Some(map) = rec["coloring"].as_object() else {
        return false;
    };
    let pairs: Option<Vec<(String, u8)>> = map
        .iter()
        .map(|(k, v)| Some((k.clone(), v.as_u64()? as u8)))
        .collect();
    let Some(pairs) = pairs else { return false };
    let Ok(c) = EdgeColoring::from_json_map(&g, 4, &pairs.into_iter().collect()) else {
        return false;
    };
    c.k() == 4 && c.is_proper() && c.is_total()
}

fn criteria_1_and_2() -> (Outcome, Outcome) {
    let lines = corpus("conn_d4_n", 5..=10);
    let t = Instant::now();
    let (records, summary) = sweep_lines(&lines, &cfg());
    let elapsed = t.elapsed();
    let mut class2: Vec<&str> = Vec::new();
    let mut bad_colorings = 0;
    for r in &records {
        match r["verdict"].as_str() {
            Some("class2") => class2.push(r["graph6"].as_str().unwrap_or("")),
            Some("class1") if !coloring_verifies(r) => bad_colorings += 1,
            _ => {}
        }
    }
    let only_k5e = class2.len() == 1 && parse_graph6(class2[0]).is_ok_and(|g| g.is_k5_minus_e());
    let in_scope = summary.class1 + summary.class2;
    let c1 = outcome(
        only_k5e
            && summary.unexpected_class2 <= MAX_MISMATCHES
            && bad_colorings <= MAX_MISMATCHES
            && summary.errors == 0
            && summary.malformed == 0
            && elapsed <= SWEEP_TIME_LIMIT,
        format!(
            "{} graphs, {in_scope} in scope, class 2: {:?}, unverified colorings {bad_colorings}, errors {}, {:.1?}",
            lines.len(),
            class2,
            summary.errors,
            elapsed
        ),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut sampled = Vec::new();
    while sampled.len() < SAMPLED_ABOVE_TEN {
        let n = rng.gen_range(11..=12);
        if let Ok(g) = random_h4(n, rng.gen()) {
            sampled.push(g);
        }
    }
    let report = verify(
        Suite::Theorem,
        &cfg(),
        &Scale::default_for(Suite::Theorem),
        Some(&sampled),
    );
    let checked = summary.oracle_checked + report.stats.get("oracle_checked").copied().unwrap_or(0);
    let mismatches = summary.oracle_mismatches + report.failures.len();
    let c2 = outcome(
        mismatches <= MAX_MISMATCHES && summary.oracle_checked == in_scope && report.trials == SAMPLED_ABOVE_TEN,
        format!(
            "{checked} oracle comparisons ({} exhaustive n<=10, {} sampled n=11..12), {mismatches} mismatches",
            summary.oracle_checked, report.trials
        ),
    );
    (c1, c2)
}

fn criterion_3() -> Outcome {
    let scale = Scale {
        trials: EXTENSION_RUNS_PER_KIND,
        max_n: EXTENSION_MAX_N,
        bfs_cutoff: BFS_CUTOFF,
        bfs_states: 200_000,
    };
    let report = verify(Suite::Lemmas, &cfg(), &scale, None);
    let stat = |k: &str| report.stats.get(k).copied().unwrap_or(0);
    for f in report.failures.iter().take(5) {
        eprintln!(
            "  extension failure: {} seed {}: {}",
            f.graph6, f.seed, f.detail
        );
    }
    let per_kind = [stat("kind_a"), stat("kind_b"), stat("kind_c")];
    outcome(
        report.failures.len() <= MAX_MISMATCHES && per_kind.iter().all(|&k| k >= EXTENSION_RUNS_PER_KIND),
        format!(
            "succeeded A/B/C {per_kind:?}, failures {}, hard inputs {}, swap-search cross-checks {}",
            report.failures.len(),
            stat("hard"),
            stat("bfs_agrees")
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut hosts: Vec<Graph> = graphs(&corpus("conn_d4_n", 5..=10))
        .into_iter()
        .filter(|g| in_h_k(g, 4))
        .collect();
    let exhaustive = hosts.len();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    while hosts.len() < exhaustive + RANDOM_HOSTS {
        let n = rng.gen_range(5..=RANDOM_HOST_MAX_N);
        if let Ok(g) = random_h4(n, rng.gen()) {
            hosts.push(g);
        }
    }
    let mut exceptions = Vec::new();
    for g in &hosts {
        let all = enumerate_configurations(g);
        if g.is_k5_minus_e() {
            if !all.is_empty() || find_configuration(g).is_ok() {
                exceptions.push(format!("{}: K5-e has a configuration", emit_graph6(g)));
            }
            continue;
        }
        let keys: BTreeSet<String> = all.iter().map(|m| m.to_string()).collect();
        match find_configuration(g) {
            Ok(m) if keys.contains(&m.to_string()) => {}
            Ok(m) => exceptions.push(format!("{}: {m} not enumerated", emit_graph6(g))),
            Err(e) => exceptions.push(format!("{}: {e}", emit_graph6(g))),
        }
        for v in g.vertices().filter(|&v| g.degree(v) == 4) {
            if find_configuration_at(g, v).is_err() {
                exceptions.push(format!("{}: none found from vertex {v}", emit_graph6(g)));
            }
        }
    }
    for e in exceptions.iter().take(5) {
        eprintln!("  {e}");
    }
    outcome(
        exceptions.len() <= MAX_MISMATCHES,
        format!(
            "{exhaustive} exhaustive + {RANDOM_HOSTS} random hosts, {} exceptions",
            exceptions.len()
        ),
    )
}

fn criterion_5() -> Outcome {
    let scale = Scale {
        trials: KEMPE_TRIALS,
        ..Scale::default_for(Suite::Kempe)
    };
    let report = verify(Suite::Kempe, &cfg(), &scale, None);
    outcome(
        report.failures.len() <= MAX_MISMATCHES && report.trials == KEMPE_TRIALS,
        format!(
            "{} trials, {} violations",
            report.trials,
            report.failures.len()
        ),
    )
}

fn criterion_6() -> Outcome {
    let corpus8 = graphs(&corpus("conn_n", 1..=8));
    let scale = Scale::default_for(Suite::Val);
    let val = verify(Suite::Val, &cfg(), &scale, Some(&corpus8));
    let hz = verify(Suite::Hz, &cfg(), &scale, Some(&corpus8));
    let stat = |r: &hz4::harness::VerifyReport, k: &str| r.stats.get(k).copied().unwrap_or(0);
    for f in val.failures.iter().chain(&hz.failures).take(5) {
        eprintln!("  {}: {}", f.graph6, f.detail);
    }
    let violations = val.failures.len() + hz.failures.len();
    outcome(
        violations <= MAX_MISMATCHES && stat(&hz, "class2") == 1 && stat(&hz, "petersen_minus_vertex") == 1,
        format!(
            "{} graphs: {} critical, {} overfull, {} class-2 in the degree-4 class, P* checked; {violations} violations",
            corpus8.len(),
            stat(&val, "critical"),
            stat(&val, "overfull"),
            stat(&hz, "class2"),
        ),
    )
}

fn criterion_7() -> Outcome {
    let lines = corpus("all_n", 1..=7);
    let mismatched = lines
        .iter()
        .filter(|l| {
            parse_graph6(l)
                .map(|g| emit_graph6(&g) != **l)
                .unwrap_or(true)
        })
        .count();

    let mut input = corpus("conn_d4_n", 7..=8);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let base = input.len();
    while input.len() < base + 200 {
        if let Ok(g) = random_h4(rng.gen_range(7..=30), rng.gen()) {
            input.push(emit_graph6(&g));
        }
    }
    let run = |jobs: Option<usize>| {
        let c = RunConfig {
            trace: true,
            jobs,
            ..cfg()
        };
        let (records, summary) = sweep_lines(&input, &c);
        let mut out = String::new();
        for r in records {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out.push_str(&summary.to_json().to_string());
        out
    };
    let first = run(None);
    let identical = first == run(None) && first == run(Some(1));
    outcome(
        mismatched == 0 && identical,
        format!(
            "{} graph6 lines round-trip ({mismatched} mismatches); {} sweep lines byte-identical across runs: {identical}",
            lines.len(),
            input.len()
        ),
    )
}

fn main() -> ExitCode {
    let t = Instant::now();
    let mut results: Vec<(usize, Outcome)> = Vec::new();
    let mut report = |n: usize, o: Outcome| {
        println!(
            "criterion {n}: {} ({})",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        results.push((n, o));
    };
    let (c1, c2) = criteria_1_and_2();
    report(1, c1);
    report(2, c2);
    report(3, criterion_3());
    report(4, criterion_4());
    report(5, criterion_5());
    report(6, criterion_6());
    report(7, criterion_7());
    let failed: Vec<usize> = results
        .iter()
        .filter(|(_, o)| !o.pass)
        .map(|(n, _)| *n)
        .collect();
    println!(
        "acceptance: {} of 7 passed in {:.1?}",
        7 - failed.len(),
        t.elapsed()
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
