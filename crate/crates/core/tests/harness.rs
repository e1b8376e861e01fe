mod common;

use common::corpus;
use hz4::harness::{par_map, seq_map, sweep_lines, sweep_stream, verify, RunConfig, Scale, Suite};
use proptest::prelude::*;
use serde_json::Value;

fn cfg(jobs: Option<usize>) -> RunConfig {
    RunConfig {
        seed: 11,
        jobs,
        ..RunConfig::default()
    }
}

proptest! {
    #![proptest_config(common::prop_config(64))]

    #[test]
    fn par_map_keeps_order(items in proptest::collection::vec(any::<u32>(), 0..300), jobs in 1usize..5) {
        let f = |i: usize, x: &u32| (i as u64) * 31 + u64::from(*x);
        let want: Vec<u64> = items.iter().enumerate().map(|(i, x)| f(i, x)).collect();
        prop_assert_eq!(&par_map(&items, Some(jobs), f), &want);
        prop_assert_eq!(&seq_map(&items, f), &want);
    }
}

#[test]
fn sweep_stream_writes_records_then_summary() {
    let mut lines: Vec<String> = corpus("conn_d4_n", 6..=6)
        .into_iter()
        .map(|(s, _)| s)
        .collect();
    lines.push("not graph6".into());
    lines.push(String::new());
    lines.push(hz4::graph::emit_graph6(&hz4::graph::families::k5_minus_e()));
    let input = lines.join("\n");
    let mut out = Vec::new();
    let summary = sweep_stream(input.as_bytes(), &mut out, &cfg(None)).unwrap();
    let text = String::from_utf8(out).unwrap();
    let records: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let last = records.last().unwrap();
    assert_eq!(last["summary"]["lines"], lines.len() - 1);
    assert_eq!(summary.lines, lines.len() - 1);
    assert_eq!(summary.malformed, 1);
    assert_eq!(summary.class2, 1);
    assert_eq!(
        summary.skipped + summary.malformed + summary.class1 + summary.class2 + summary.errors,
        summary.lines
    );
    assert_eq!(summary.errors, 0);
    assert_eq!(summary.oracle_checked, summary.class1 + summary.class2);
    assert!(!summary.clean());
    assert_eq!(records.len(), summary.lines + 1);
    for r in records[..records.len() - 1]
        .iter()
        .filter(|r| r.get("graph6").is_some())
    {
        assert_eq!(r["millis"], 0);
    }
}

#[test]
fn sweep_is_deterministic_across_job_counts() {
    let lines: Vec<String> = corpus("conn_d4_n", 7..=7)
        .into_iter()
        .map(|(s, _)| s)
        .collect();
    let (a, sa) = sweep_lines(&lines, &cfg(None));
    let (b, sb) = sweep_lines(&lines, &cfg(Some(1)));
    let (c, sc) = sweep_lines(&lines, &cfg(Some(3)));
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert_eq!(sa, sb);
    assert_eq!(sa, sc);
    assert!(sa.clean());
}

#[test]
fn per_component_splits_disconnected_lines() {
    // two disjoint copies of K5 - e
    let g = hz4::graph::Graph::from_edges(
        10,
        hz4::graph::families::k5_minus_e()
            .edges()
            .iter()
            .flat_map(|e| [(e.u(), e.v()), (e.u() + 5, e.v() + 5)]),
    )
    .unwrap();
    let line = hz4::graph::emit_graph6(&g);
    let run = RunConfig {
        per_component: true,
        ..cfg(None)
    };
    let (records, summary) = sweep_lines(&[line], &run);
    assert_eq!(records.len(), 2);
    assert_eq!(summary.class2, 2);
    assert_eq!(records[1]["component"], 1);
}

#[test]
fn small_suites_pass() {
    for (suite, trials) in [
        (Suite::Lemmas, 30),
        (Suite::Kempe, 2000),
        (Suite::Theorem, 40),
    ] {
        let scale = Scale {
            trials,
            max_n: 20,
            ..Scale::default_for(suite)
        };
        let r = verify(suite, &cfg(None), &scale, None);
        assert!(r.passed(), "{}: {:?}", suite.as_str(), r.failures.first());
        assert!(r.trials > 0);
        assert_eq!(r.to_json()["suite"], suite.as_str());
    }
}
