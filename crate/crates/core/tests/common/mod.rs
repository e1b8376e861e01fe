//! Reference implementations used as oracles by the integration tests.
//! They work on plain vectors and share no code with the library.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;

use hz4::graph::{parse_graph6, Graph};

pub type Pair = (usize, usize);

pub fn edge_list(g: &Graph) -> Vec<Pair> {
    g.edges()
        .iter()
        .map(|e| (e.u().min(e.v()), e.u().max(e.v())))
        .collect()
}

pub fn degrees(n: usize, edges: &[Pair]) -> Vec<usize> {
    let mut d = vec![0; n];
    for &(a, b) in edges {
        d[a] += 1;
        d[b] += 1;
    }
    d
}

/// No two edges at a vertex share a color; uncolored edges are ignored.
pub fn proper(n: usize, edges: &[Pair], colors: &[Option<u8>]) -> bool {
    let mut seen: Vec<BTreeSet<u8>> = vec![BTreeSet::new(); n];
    for (&(a, b), c) in edges.iter().zip(colors) {
        if let Some(c) = *c {
            if !seen[a].insert(c) || !seen[b].insert(c) {
                return false;
            }
        }
    }
    true
}

/// Every proper `k`-coloring of `edges` up to renaming colors, at most `cap`.
/// Edges in `skip` stay uncolored.
pub fn colorings(
    n: usize,
    edges: &[Pair],
    k: u8,
    skip: &[usize],
    cap: usize,
) -> Vec<Vec<Option<u8>>> {
    let mut out = Vec::new();
    let mut cur = vec![None; edges.len()];
    let mut used = vec![0u8; n];
    let order: Vec<usize> = (0..edges.len()).filter(|i| !skip.contains(i)).collect();
    #[allow(clippy::too_many_arguments)]
    fn go(
        pos: usize,
        fresh: u8,
        order: &[usize],
        edges: &[Pair],
        k: u8,
        cur: &mut Vec<Option<u8>>,
        used: &mut Vec<u8>,
        out: &mut Vec<Vec<Option<u8>>>,
        cap: usize,
    ) {
        if out.len() >= cap {
            return;
        }
        if pos == order.len() {
            out.push(cur.clone());
            return;
        }
        let idx = order[pos];
        let (a, b) = edges[idx];
        for c in 0..k.min(fresh + 1) {
            let bit = 1 << c;
            if used[a] & bit != 0 || used[b] & bit != 0 {
                continue;
            }
            used[a] |= bit;
            used[b] |= bit;
            cur[idx] = Some(c);
            go(
                pos + 1,
                fresh.max(c + 1),
                order,
                edges,
                k,
                cur,
                used,
                out,
                cap,
            );
            cur[idx] = None;
            used[a] &= !bit;
            used[b] &= !bit;
        }
    }
    go(0, 0, &order, edges, k, &mut cur, &mut used, &mut out, cap);
    out
}

pub fn colorable(n: usize, edges: &[Pair], k: u8) -> bool {
    !colorings(n, edges, k, &[], 1).is_empty()
}

/// Chromatic index by trying Δ, Δ+1, ... colors.
pub fn chromatic_index(n: usize, edges: &[Pair]) -> usize {
    let delta = degrees(n, edges).into_iter().max().unwrap_or(0);
    (delta..).find(|&k| colorable(n, edges, k as u8)).unwrap()
}

pub fn connected(n: usize, edges: &[Pair]) -> bool {
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

pub fn is_k5_minus_e(n: usize, edges: &[Pair]) -> bool {
    let mut d = degrees(n, edges);
    d.sort();
    n == 5 && edges.len() == 9 && d == [3, 3, 4, 4, 4]
}

/// Maximum degree inside the subgraph induced by the Δ-vertices.
pub fn core_max_degree(n: usize, edges: &[Pair]) -> usize {
    let d = degrees(n, edges);
    let delta = d.iter().copied().max().unwrap_or(0);
    let core: Vec<Pair> = edges
        .iter()
        .copied()
        .filter(|&(a, b)| d[a] == delta && d[b] == delta)
        .collect();
    degrees(n, &core).into_iter().max().unwrap_or(0)
}

pub fn corpus(prefix: &str, ns: impl IntoIterator<Item = usize>) -> Vec<(String, Graph)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut out = Vec::new();
    for n in ns {
        let path = dir.join(format!("{prefix}{n}.g6"));
        let text = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        for line in text.lines().filter(|l| !l.is_empty()) {
            out.push((line.to_string(), parse_graph6(line).unwrap()));
        }
    }
    out
}

/// Proptest settings without the regression file, which has no home beside
/// integration tests.
pub fn prop_config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        failure_persistence: None,
        ..Default::default()
    }
}
