//! Verification suites. Each runs a fixed number of independent seeded
//! trials and reports every failing instance with its graph6 and seed.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::classify::{
    classify, color_minus_e, greedy_kempe, random_permutation, scramble, Verdict,
};
use super::gen::random_h4;
use super::par::par_map;
use super::RunConfig;
use crate::coloring::{ChainShape, Color, EdgeColoring, KempeChain};
use crate::graph::{emit_graph6, families, Graph, GraphBuilder};
use crate::oracle::{check_hz_lemma, check_val, chromatic_index, is_class_one, is_critical};
use crate::reducibility::{extend, finishes_quickly, kempe_search_extend, SearchResult};
use crate::structure::{enumerate_kind, in_g_k, in_h_k, ConfigKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Randomized extension runs for each configuration kind.
    Lemmas,
    /// Classification against the exact oracle.
    Theorem,
    /// The adjacency bound on critical graphs and overfull graphs being class 2.
    Val,
    /// Class-2 members of the degree-4 class are critical with a 2-regular core.
    Hz,
    /// Kempe chain shape and swap properties.
    Kempe,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Lemmas,
        Suite::Theorem,
        Suite::Val,
        Suite::Hz,
        Suite::Kempe,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Lemmas => "lemmas",
            Suite::Theorem => "theorem",
            Suite::Val => "val",
            Suite::Hz => "hz",
            Suite::Kempe => "kempe",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| {
                format!("unknown suite {s:?} (expected lemmas, theorem, val, hz or kempe)")
            })
    }
}

/// How much work a suite does.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scale {
    /// Trials; per kind for the extension suite.
    pub trials: usize,
    /// Largest generated order.
    pub max_n: usize,
    /// Largest order at which extension runs are cross-checked by the
    /// breadth-first swap search.
    pub bfs_cutoff: usize,
    /// State limit for that search.
    pub bfs_states: usize,
}

impl Scale {
    pub fn default_for(suite: Suite) -> Scale {
        let base = Scale {
            trials: 1000,
            max_n: 30,
            bfs_cutoff: 14,
            bfs_states: 200_000,
        };
        match suite {
            Suite::Kempe => Scale {
                trials: 100_000,
                ..base
            },
            Suite::Theorem => Scale { max_n: 12, ..base },
            _ => base,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub graph6: String,
    pub seed: u64,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub suite: Suite,
    pub trials: usize,
    pub failures: Vec<Failure>,
    /// Named tallies, such as how often each case label was reached.
    pub stats: BTreeMap<String, usize>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite.as_str(),
            "trials": self.trials,
            "passed": self.passed(),
            "failures": self.failures.iter().map(|f| json!({
                "graph6": f.graph6, "seed": f.seed, "detail": f.detail,
            })).collect::<Vec<_>>(),
            "stats": self.stats,
        })
    }
}

type Trial = Result<Vec<String>, Failure>;

fn collect(suite: Suite, outcomes: Vec<Trial>) -> VerifyReport {
    let mut report = VerifyReport {
        suite,
        trials: outcomes.len(),
        failures: Vec::new(),
        stats: BTreeMap::new(),
    };
    for o in outcomes {
        match o {
            Ok(tags) => {
                for t in tags {
                    *report.stats.entry(t).or_default() += 1;
                }
            }
            Err(f) => report.failures.push(f),
        }
    }
    report
}

fn trial_rng(seed: u64, stream: u64, i: usize) -> (u64, ChaCha8Rng) {
    let s = seed
        ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (i as u64).wrapping_mul(0xD1B5_4A32_D192_ED03);
    (s, ChaCha8Rng::seed_from_u64(s))
}

fn fail(g: &Graph, seed: u64, detail: impl Into<String>) -> Failure {
    Failure {
        graph6: emit_graph6(g),
        seed,
        detail: detail.into(),
    }
}

/// Runs `suite`. The graph-driven suites (theorem, val, hz) use `input`
/// when given and a built-in set otherwise.
pub fn verify(
    suite: Suite,
    cfg: &RunConfig,
    scale: &Scale,
    input: Option<&[Graph]>,
) -> VerifyReport {
    match suite {
        Suite::Lemmas => lemmas(cfg, scale),
        Suite::Kempe => kempe(cfg, scale),
        Suite::Theorem => {
            let graphs = match input {
                Some(gs) => gs.to_vec(),
                None => generated_hosts(cfg.seed, scale),
            };
            collect(
                suite,
                par_map(&graphs, cfg.jobs, |i, g| theorem_trial(g, cfg, i)),
            )
        }
        Suite::Val => {
            let graphs = input
                .map(<[Graph]>::to_vec)
                .unwrap_or_else(|| small_graphs(6));
            collect(suite, par_map(&graphs, cfg.jobs, |_, g| val_trial(g, cfg)))
        }
        Suite::Hz => {
            let mut graphs = input
                .map(<[Graph]>::to_vec)
                .unwrap_or_else(|| small_graphs(6));
            graphs.retain(|g| g.max_degree() == 4 && in_g_k(g, 4) && g.is_connected());
            let mut out = par_map(&graphs, cfg.jobs, |_, g| hz_trial(g, cfg));
            out.push(petersen_minus_vertex_trial(cfg));
            collect(suite, out)
        }
    }
}

fn generated_hosts(seed: u64, scale: &Scale) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![families::k5_minus_e()];
    while out.len() < scale.trials {
        let n = rng.gen_range(5..=scale.max_n.max(5));
        if let Ok(g) = random_h4(n, rng.gen()) {
            out.push(g);
        }
    }
    out
}

/// Every labelled graph with at least one edge on 2 to `max_n` vertices.
pub fn small_graphs(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        for mask in 1u64..(1u64 << pairs.len()) {
            let mut b = GraphBuilder::new(n);
            for (k, &(a, c)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    b.add_edge(a, c).expect("distinct vertices");
                }
            }
            out.push(b.build());
        }
    }
    out
}

fn theorem_trial(g: &Graph, cfg: &RunConfig, i: usize) -> Trial {
    let seed = cfg.seed.wrapping_add(i as u64);
    let run = RunConfig {
        seed,
        ..cfg.clone()
    };
    let res = classify(g, &run).map_err(|e| fail(g, seed, e.to_string()))?;
    let mut tags = Vec::new();
    match res.verdict {
        Verdict::Class2 if !g.is_k5_minus_e() => {
            return Err(fail(g, seed, "class 2 verdict on a graph other than K5-e"))
        }
        Verdict::Class2 => tags.push("class2".into()),
        Verdict::Class1 => {
            let ok = res
                .coloring
                .as_ref()
                .is_some_and(|c| c.k() == 4 && c.is_proper() && c.is_total());
            if !ok {
                return Err(fail(g, seed, "class 1 verdict without a verified coloring"));
            }
            tags.push("class1".into());
        }
    }
    if g.n() <= cfg.oracle_cutoff {
        let ci = chromatic_index(g, &cfg.budget).map_err(|e| fail(g, seed, e.to_string()))?;
        if (ci.value == 4) != (res.verdict == Verdict::Class1) {
            return Err(fail(
                g,
                seed,
                format!("oracle gives chromatic index {}", ci.value),
            ));
        }
        tags.push("oracle_checked".into());
    }
    Ok(tags)
}

fn val_trial(g: &Graph, cfg: &RunConfig) -> Trial {
    if g.m() == 0 {
        return Ok(vec!["edgeless".into()]);
    }
    let class1 = is_class_one(g, &cfg.budget).map_err(|e| fail(g, cfg.seed, e.to_string()))?;
    let mut tags = Vec::new();
    let overfull = g
        .is_overfull()
        .map_err(|e| fail(g, cfg.seed, e.to_string()))?;
    if overfull {
        if class1 {
            return Err(fail(g, cfg.seed, "overfull graph is class 1"));
        }
        tags.push("overfull".into());
    }
    if !class1 && is_critical(g, &cfg.budget).map_err(|e| fail(g, cfg.seed, e.to_string()))? {
        if !check_val(g) {
            return Err(fail(
                g,
                cfg.seed,
                "critical graph violates the adjacency bound",
            ));
        }
        tags.push("critical".into());
    }
    Ok(tags)
}

fn hz_trial(g: &Graph, cfg: &RunConfig) -> Trial {
    let err = |e: String| fail(g, cfg.seed, e);
    if is_class_one(g, &cfg.budget).map_err(|e| err(e.to_string()))? {
        return Ok(vec!["class1".into()]);
    }
    if !check_hz_lemma(g, 4, &cfg.budget).map_err(|e| err(e.to_string()))? {
        return Err(err(
            "class-2 member is not critical with a 2-regular core".into()
        ));
    }
    if g.is_connected() && !g.is_k5_minus_e() {
        return Err(err("connected class-2 member other than K5-e".into()));
    }
    Ok(vec!["class2".into()])
}

fn petersen_minus_vertex_trial(cfg: &RunConfig) -> Trial {
    let g = families::petersen_minus_vertex();
    let ci = chromatic_index(&g, &cfg.budget).map_err(|e| fail(&g, cfg.seed, e.to_string()))?;
    let critical = is_critical(&g, &cfg.budget).map_err(|e| fail(&g, cfg.seed, e.to_string()))?;
    if ci.value != 4 || !critical || !in_h_k(&g, 3) {
        return Err(fail(
            &g,
            cfg.seed,
            format!("chromatic index {}, critical {critical}", ci.value),
        ));
    }
    Ok(vec!["petersen_minus_vertex".into()])
}

const KINDS: [ConfigKind; 3] = [ConfigKind::A, ConfigKind::B, ConfigKind::C];

fn lemmas(cfg: &RunConfig, scale: &Scale) -> VerifyReport {
    let jobs: Vec<(ConfigKind, usize)> = KINDS
        .iter()
        .flat_map(|&k| (0..scale.trials).map(move |i| (k, i)))
        .collect();
    collect(
        Suite::Lemmas,
        par_map(&jobs, cfg.jobs, |_, &(kind, i)| {
            extension_trial(kind, i, cfg, scale)
        }),
    )
}

fn kind_tag(kind: ConfigKind) -> &'static str {
    match kind {
        ConfigKind::A => "kind_a",
        ConfigKind::B => "kind_b",
        ConfigKind::C => "kind_c",
    }
}

/// One randomized extension: a generated host holding a configuration of
/// `kind`, a 4-coloring of the host minus `e` under a random color renaming,
/// role symmetry and Kempe scrambling. Odd trials are rescrambled until `e`
/// cannot be colored by at most one swap.
pub fn extension_trial(kind: ConfigKind, i: usize, cfg: &RunConfig, scale: &Scale) -> Trial {
    let (seed, mut rng) = trial_rng(cfg.seed, kind as u64 + 1, i);
    let (g, m) = loop {
        let n = rng.gen_range(7..=scale.max_n.max(7));
        let Ok(g) = random_h4(n, rng.gen()) else {
            continue;
        };
        let mut found = Vec::new();
        enumerate_kind(&g, kind, &mut found);
        if let Some(m) = found.choose(&mut rng) {
            let sym = kind
                .role_symmetries()
                .choose(&mut rng)
                .expect("identity present");
            let m = m.permuted(sym);
            break (g, m);
        }
    };
    let c =
        color_minus_e(&g, m.e(), seed, &cfg.budget).map_err(|e| fail(&g, seed, e.to_string()))?;
    let c = c
        .apply_color_permutation(&random_permutation(&mut rng))
        .expect("valid permutation");
    let mut c = scramble(&c, 20, &mut rng);
    let mut tags = vec![kind_tag(kind).to_string()];
    if i % 2 == 1 {
        for _ in 0..200 {
            if !finishes_quickly(&m, &c) {
                break;
            }
            c = scramble(&c, 5, &mut rng);
        }
        if !finishes_quickly(&m, &c) {
            tags.push("hard".into());
        }
    }
    let trace = extend(&g, &m, &c).map_err(|e| fail(&g, seed, format!("{m}: {e}")))?;
    let fin = &trace.final_coloring;
    if !(fin.k() == 4 && fin.is_proper() && fin.is_total()) {
        return Err(fail(
            &g,
            seed,
            format!("{m}: final coloring does not verify"),
        ));
    }
    match trace.replay() {
        Ok(r) if r == *fin => {}
        Ok(_) => return Err(fail(&g, seed, format!("{m}: replay differs"))),
        Err(e) => return Err(fail(&g, seed, format!("{m}: replay: {e}"))),
    }
    let mut labels: Vec<String> = trace
        .steps
        .iter()
        .map(|s| format!("label {}", s.label))
        .collect();
    labels.sort();
    labels.dedup();
    tags.extend(labels);
    if g.n() <= scale.bfs_cutoff {
        match kempe_search_extend(&g, m.e(), &c, m.vertices(), scale.bfs_states) {
            Ok(SearchResult::Extended { .. }) => tags.push("bfs_agrees".into()),
            Ok(SearchResult::Exhausted { states }) => {
                return Err(fail(
                    &g,
                    seed,
                    format!("{m}: swap search exhausted after {states} states"),
                ))
            }
            Err(e) => return Err(fail(&g, seed, format!("{m}: swap search: {e}"))),
        }
    }
    Ok(tags)
}

/// Trials per generated graph and coloring in the Kempe suite.
const KEMPE_BATCH: usize = 100;

fn kempe(cfg: &RunConfig, scale: &Scale) -> VerifyReport {
    let batches: Vec<usize> = (0..scale.trials.div_ceil(KEMPE_BATCH)).collect();
    let outcomes = par_map(&batches, cfg.jobs, |_, &b| {
        let count = KEMPE_BATCH.min(scale.trials - b * KEMPE_BATCH);
        kempe_batch(b, count, cfg, scale)
    });
    collect(Suite::Kempe, outcomes.into_iter().flatten().collect())
}

fn kempe_batch(b: usize, count: usize, cfg: &RunConfig, scale: &Scale) -> Vec<Trial> {
    let (seed, mut rng) = trial_rng(cfg.seed, 99, b);
    let g = loop {
        let n = rng.gen_range(5..=scale.max_n.max(5));
        if let Ok(g) = random_h4(n, rng.gen()) {
            break g;
        }
    };
    let k = rng.gen_range(4..=5);
    let mut c = match greedy_kempe(&g, k, &mut rng) {
        Ok(c) | Err(c) => c,
    };
    for idx in 0..g.m() {
        if rng.gen_bool(0.1) {
            c.set_index(idx, None);
        }
    }
    (0..count)
        .map(|_| {
            let v = rng.gen_range(0..g.n());
            let i = rng.gen_range(0..k as Color);
            let j = (i + rng.gen_range(1..k as Color)) % k as Color;
            kempe_trial(&c, v, i, j)
                .map(|()| vec!["trial".to_string()])
                .map_err(|d| fail(&g, seed, d))
        })
        .collect()
}

/// Chain shape, maximality, and the effect of swapping it once and twice.
pub fn kempe_trial(c: &EdgeColoring<'_>, v: usize, i: Color, j: Color) -> Result<(), String> {
    let g = c.graph();
    let chain = c.kempe_chain(v, i, j).map_err(|e| e.to_string())?;
    check_chain_shape(c, &chain, v, i, j)?;
    let once = c.swap(&chain).map_err(|e| e.to_string())?;
    if c.is_proper() && !once.is_proper() {
        return Err(format!("swap at {v} ({i},{j}) broke properness"));
    }
    let uncolored = |x: &EdgeColoring<'_>| x.uncolored().collect::<Vec<_>>();
    if uncolored(c) != uncolored(&once) {
        return Err("swap changed the uncolored edges".into());
    }
    for e in g.edges() {
        let changed = c.get(*e) != once.get(*e);
        if changed != chain.contains_edge(*e) {
            return Err(format!("swap touched {e} outside the chain"));
        }
    }
    let back = once.kempe_chain(v, i, j).map_err(|e| e.to_string())?;
    let twice = once.swap(&back).map_err(|e| e.to_string())?;
    if twice != *c {
        return Err("double swap is not the identity".into());
    }
    Ok(())
}

fn check_chain_shape(
    c: &EdgeColoring<'_>,
    chain: &KempeChain,
    v: usize,
    i: Color,
    j: Color,
) -> Result<(), String> {
    let vs = &chain.vertices;
    let es = &chain.edges;
    if !vs.contains(&v) {
        return Err("chain misses its start vertex".into());
    }
    match chain.shape {
        ChainShape::Path => {
            if es.len() + 1 != vs.len() {
                return Err("path has inconsistent lengths".into());
            }
            let mut sorted = vs.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != vs.len() {
                return Err("path repeats a vertex".into());
            }
        }
        ChainShape::EvenCycle => {
            if es.len() + 1 != vs.len()
                || vs.first() != vs.last()
                || !es.len().is_multiple_of(2)
                || es.len() < 4
            {
                return Err("cycle is not closed and even".into());
            }
        }
    }
    for (k, e) in es.iter().enumerate() {
        let (a, b) = (vs[k], vs[k + 1]);
        if !(e.contains(a) && e.contains(b)) {
            return Err(format!("edge {e} does not join consecutive chain vertices"));
        }
        if k > 0 && c.get(*e) == c.get(es[k - 1]) {
            return Err("chain colors do not alternate".into());
        }
        if !matches!(c.get(*e), Some(x) if x == i || x == j) {
            return Err(format!("edge {e} has a color outside the pair"));
        }
    }
    for &x in vs {
        for &idx in c.graph().incident(x) {
            let e = c.graph().edge(idx);
            if matches!(c.get(e), Some(col) if col == i || col == j) && !chain.contains_edge(e) {
                return Err(format!("chain is not maximal at {x}"));
            }
        }
    }
    Ok(())
}
