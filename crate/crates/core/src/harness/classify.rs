use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{HarnessError, RunConfig};
use crate::coloring::{Color, EdgeColoring};
use crate::graph::{Edge, Graph};
use crate::oracle::{
    find_edge_coloring, find_edge_coloring_with_hint, OracleBudget, SearchOutcome,
};
use crate::reducibility::{extend, ExtensionTrace};
use crate::structure::{find_configuration, in_g_k, in_h_k, ConfigMatch};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Class1,
    Class2,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Class1 => "class1",
            Verdict::Class2 => "class2",
        }
    }
}

/// Why a graph needs five colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// `m > Δ·⌊n/2⌋`.
    Overfull { m: usize, bound: usize },
    /// The graph is K5 − e (which is also overfull: 9 > 8).
    K5MinusE,
    /// Exhaustive search found no 4-coloring.
    OracleProof,
}

impl Certificate {
    pub fn describe(&self) -> String {
        match self {
            Certificate::Overfull { m, bound } => format!("overfull: {m} > {bound}"),
            Certificate::K5MinusE => "K5-e: overfull 9 > 8".to_string(),
            Certificate::OracleProof => "oracle: no 4-edge-coloring".to_string(),
        }
    }
}

/// How a class-1 coloring was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Method {
    /// Exact search on the whole graph (the graph is outside the class with a
    /// 2-regular core, where no configuration is needed).
    Direct,
    /// A coloring of `G − e` extended across the configuration's edge.
    Extension(ConfigMatch),
}

#[derive(Debug, Clone)]
pub struct ClassificationResult<'g> {
    pub verdict: Verdict,
    pub coloring: Option<EdgeColoring<'g>>,
    pub certificate: Option<Certificate>,
    pub method: Option<Method>,
    pub trace: Option<ExtensionTrace<'g>>,
    pub timings: Vec<(&'static str, Duration)>,
}

impl ClassificationResult<'_> {
    pub fn total_time(&self) -> Duration {
        self.timings.iter().map(|(_, d)| *d).sum()
    }

    pub fn to_json(&self, with_trace: bool) -> Value {
        let mut v = json!({ "verdict": self.verdict.as_str() });
        if let Some(c) = &self.coloring {
            v["coloring"] = json!(c.to_json_map());
        }
        if let Some(cert) = &self.certificate {
            v["certificate"] = json!(cert.describe());
        }
        match &self.method {
            Some(Method::Direct) => v["method"] = json!("direct"),
            Some(Method::Extension(m)) => {
                v["method"] = json!("extension");
                v["config"] = m.to_json();
            }
            None => {}
        }
        if with_trace {
            if let Some(t) = &self.trace {
                v["trace"] = t.to_json()["steps"].clone();
            }
        }
        v
    }
}

/// Checks that `g` is connected with `Δ = 4` and core maximum degree at
/// most 2.
pub fn check_scope(g: &Graph) -> Result<(), HarnessError> {
    if g.m() == 0 || !g.is_connected() {
        return Err(HarnessError::OutOfScope("graph is not connected".into()));
    }
    if g.max_degree() != 4 {
        return Err(HarnessError::OutOfScope(format!(
            "maximum degree is {}, not 4",
            g.max_degree()
        )));
    }
    if !in_g_k(g, 4) {
        return Err(HarnessError::OutOfScope(
            "core has a vertex of degree more than 2".into(),
        ));
    }
    Ok(())
}

/// Whether `g` is connected, has `Δ = 4` and core maximum degree at most 2.
pub fn in_scope(g: &Graph) -> bool {
    check_scope(g).is_ok()
}

/// A proper 4-coloring of `g` with `e` uncolored.
///
/// A seeded greedy pass with Kempe repairs colors `G − e`; if it gets stuck,
/// its partial coloring seeds the exact search, which then decides.
pub fn color_minus_e<'g>(
    g: &'g Graph,
    e: Edge,
    seed: u64,
    budget: &OracleBudget,
) -> Result<EdgeColoring<'g>, HarnessError> {
    let h = g.without_edge(e)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let found = match greedy_kempe(&h, 4, &mut rng) {
        Ok(c) => c,
        Err(partial) => match find_edge_coloring_with_hint(&h, 4, budget, Some(partial.as_slice()))
        {
            SearchOutcome::Found(c) => c,
            SearchOutcome::NotFound => {
                return Err(HarnessError::NotColorable(format!(
                    "G - {e} has no 4-edge-coloring"
                )))
            }
            SearchOutcome::BudgetExhausted { nodes } => {
                return Err(HarnessError::Budget(format!(
                    "coloring G - {e}: {nodes} nodes"
                )))
            }
        },
    };
    let mut out = EdgeColoring::new(g, 4)?;
    for (idx, &f) in h.edges().iter().enumerate() {
        out.set(f, found.get_index(idx))?;
    }
    Ok(out)
}

const REPAIR_TRIES: usize = 200;

/// Colors edges in random order. An edge whose ends share no missing color
/// is colored after one Kempe swap at an end when some pair of missing
/// colors is unlinked; otherwise random swaps near the edge are tried.
/// Returns the partial coloring when an edge cannot be placed.
pub fn greedy_kempe<'g>(
    g: &'g Graph,
    k: usize,
    rng: &mut ChaCha8Rng,
) -> Result<EdgeColoring<'g>, EdgeColoring<'g>> {
    let mut c = EdgeColoring::new(g, k).expect("palette within limits");
    let mut order: Vec<usize> = (0..g.m()).collect();
    order.shuffle(rng);
    for idx in order {
        let f = g.edge(idx);
        if !place(&mut c, f, rng) {
            return Err(c);
        }
    }
    Ok(c)
}

fn place(c: &mut EdgeColoring<'_>, f: Edge, rng: &mut ChaCha8Rng) -> bool {
    let g = c.graph();
    let (a, b) = f.endpoints();
    let k = c.k() as Color;
    for _ in 0..REPAIR_TRIES {
        let (ma, mb) = (c.missing_colors(a), c.missing_colors(b));
        let common: Vec<Color> = ma.intersection(mb).iter().collect();
        if let Some(&col) = common.choose(rng) {
            c.set(f, Some(col)).expect("edge in graph");
            return true;
        }
        for i in ma.iter() {
            for j in mb.iter() {
                let chain = c.kempe_chain(b, i, j).expect("distinct colors");
                if !chain.contains_vertex(a) {
                    c.swap_in_place(&chain).expect("fresh chain");
                    c.set(f, Some(i)).expect("edge in graph");
                    return true;
                }
            }
        }
        let near: Vec<usize> = [a, b]
            .iter()
            .flat_map(|&v| std::iter::once(v).chain(g.neighbors(v).iter().copied()))
            .collect();
        let v = *near.choose(rng).expect("non-empty");
        let i = rng.gen_range(0..k);
        let j = (i + rng.gen_range(1..k)) % k;
        let chain = c.kempe_chain(v, i, j).expect("distinct colors");
        c.swap_in_place(&chain).expect("fresh chain");
    }
    false
}

/// A uniformly random renaming of the four colors.
pub fn random_permutation(rng: &mut impl Rng) -> Vec<Color> {
    let mut p: Vec<Color> = (0..4).collect();
    p.shuffle(rng);
    p
}

/// Applies `swaps` random Kempe swaps; the uncolored edges stay uncolored.
pub fn scramble<'g>(c: &EdgeColoring<'g>, swaps: usize, rng: &mut impl Rng) -> EdgeColoring<'g> {
    let g = c.graph();
    let mut out = c.clone();
    if g.n() == 0 {
        return out;
    }
    for _ in 0..swaps {
        let v = rng.gen_range(0..g.n());
        let i = rng.gen_range(0..4);
        let j = (i + rng.gen_range(1..4)) % 4;
        let chain = out.kempe_chain(v, i, j).expect("valid colors");
        out.swap_in_place(&chain).expect("fresh chain");
    }
    out
}

/// Decides whether `g` needs four or five colors and backs the answer with
/// a verified coloring or a certificate.
pub fn classify<'g>(
    g: &'g Graph,
    cfg: &RunConfig,
) -> Result<ClassificationResult<'g>, HarnessError> {
    check_scope(g)?;
    let mut timings = Vec::new();
    let class2 = |cert, timings| ClassificationResult {
        verdict: Verdict::Class2,
        coloring: None,
        certificate: Some(cert),
        method: None,
        trace: None,
        timings,
    };
    if g.is_k5_minus_e() {
        return Ok(class2(Certificate::K5MinusE, timings));
    }
    if g.is_overfull()? {
        let bound = 4 * (g.n() / 2);
        return Ok(class2(Certificate::Overfull { m: g.m(), bound }, timings));
    }
    if !in_h_k(g, 4) {
        let t = Instant::now();
        let out = find_edge_coloring(g, 4, &cfg.budget);
        timings.push(("search", t.elapsed()));
        return match out {
            SearchOutcome::Found(c) => finish(c, Method::Direct, None, timings),
            SearchOutcome::NotFound => Ok(class2(Certificate::OracleProof, timings)),
            SearchOutcome::BudgetExhausted { nodes } => {
                Err(HarnessError::Budget(format!("{nodes} nodes")))
            }
        };
    }
    let t = Instant::now();
    let m = find_configuration(g)?;
    timings.push(("locate", t.elapsed()));
    let t = Instant::now();
    let c = color_minus_e(g, m.e(), cfg.seed, &cfg.budget)?;
    timings.push(("color_minus_e", t.elapsed()));
    let t = Instant::now();
    let trace = extend(g, &m, &c)?;
    timings.push(("extend", t.elapsed()));
    let colored = trace.final_coloring.clone();
    finish(colored, Method::Extension(m), Some(trace), timings)
}

fn finish<'g>(
    c: EdgeColoring<'g>,
    method: Method,
    trace: Option<ExtensionTrace<'g>>,
    timings: Vec<(&'static str, Duration)>,
) -> Result<ClassificationResult<'g>, HarnessError> {
    if !(c.is_proper() && c.is_total() && c.k() == 4) {
        return Err(HarnessError::Internal(
            "class-1 coloring failed verification".into(),
        ));
    }
    Ok(ClassificationResult {
        verdict: Verdict::Class1,
        coloring: Some(c),
        certificate: None,
        method: Some(method),
        trace,
        timings,
    })
}
