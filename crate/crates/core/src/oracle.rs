//! Ground-truth engines: exact edge-coloring search, Vizing's constructive
//! (Δ+1)-coloring, critical-subgraph extraction and the Vizing adjacency
//! checks.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::coloring::{Color, ColorSet, EdgeColoring};
use crate::graph::{Graph, Vertex};
use crate::structure;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },
    #[error("graph has no edges")]
    Edgeless,
    #[error("graph is class 1")]
    Class1,
    #[error("graph is not in G_{0}")]
    NotInGk(usize),
    #[error("graph is {0}-edge-colorable")]
    Colorable(usize),
    #[error("budget limits must be positive")]
    InvalidBudget,
    #[error("internal oracle error: {0}")]
    Internal(String),
}

/// Limits for one exact search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    node_limit: u64,
    time_limit: Duration,
}

impl OracleBudget {
    pub const DEFAULT_NODES: u64 = 10_000_000;
    pub const DEFAULT_SECS: f64 = 30.0;

    pub fn new(node_limit: u64, time_limit: Duration) -> Result<Self, OracleError> {
        if node_limit == 0 || time_limit.is_zero() {
            return Err(OracleError::InvalidBudget);
        }
        Ok(OracleBudget {
            node_limit,
            time_limit,
        })
    }

    pub fn node_limit(&self) -> u64 {
        self.node_limit
    }

    pub fn time_limit(&self) -> Duration {
        self.time_limit
    }
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            node_limit: Self::DEFAULT_NODES,
            time_limit: Duration::from_secs_f64(Self::DEFAULT_SECS),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<'g> {
    Found(EdgeColoring<'g>),
    NotFound,
    BudgetExhausted { nodes: u64 },
}

impl<'g> SearchOutcome<'g> {
    pub fn found(self) -> Option<EdgeColoring<'g>> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            _ => None,
        }
    }
}

/// Exact decision procedure: a total proper `k`-edge-coloring of `g`, or a
/// proof by exhaustion that none exists.
///
/// Edges are tried in a fixed order (descending endpoint-degree sum, then
/// lexicographic), lowest color first. The edges at the lowest-numbered
/// maximum-degree vertex are pinned to colors `0..d`.
pub fn find_edge_coloring<'g>(g: &'g Graph, k: usize, budget: &OracleBudget) -> SearchOutcome<'g> {
    find_edge_coloring_with_hint(g, k, budget, None)
}

/// As [`find_edge_coloring`], but when `hint[e]` is set that color is tried
/// first for edge `e`. The hint only reorders values, so the search stays
/// exhaustive.
pub fn find_edge_coloring_with_hint<'g>(
    g: &'g Graph,
    k: usize,
    budget: &OracleBudget,
    hint: Option<&[Option<Color>]>,
) -> SearchOutcome<'g> {
    if k < g.max_degree() || k > crate::coloring::MAX_COLORS {
        return SearchOutcome::NotFound;
    }
    if g.m() == 0 {
        return SearchOutcome::Found(EdgeColoring::new(g, k).unwrap());
    }
    let mut s = Search::new(g, k, budget, hint);
    match s.run() {
        Status::Found => {
            let c = EdgeColoring::from_vec(g, k, s.colors.clone()).expect("colors within palette");
            debug_assert!(c.is_proper() && c.is_total());
            SearchOutcome::Found(c)
        }
        Status::NotFound => SearchOutcome::NotFound,
        Status::Exhausted => SearchOutcome::BudgetExhausted { nodes: s.nodes },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Found,
    NotFound,
    Exhausted,
}

struct Search<'a> {
    g: &'a Graph,
    full: u64,
    order: Vec<usize>,
    colors: Vec<Option<Color>>,
    seen: Vec<u64>,
    open_deg: Vec<usize>,
    open: usize,
    hint: Option<&'a [Option<Color>]>,
    nodes: u64,
    node_limit: u64,
    deadline: Instant,
}

impl<'a> Search<'a> {
    fn new(
        g: &'a Graph,
        k: usize,
        budget: &OracleBudget,
        hint: Option<&'a [Option<Color>]>,
    ) -> Self {
        let deg_sum = |i: usize| {
            let e = g.edge(i);
            g.degree(e.u()) + g.degree(e.v())
        };
        let mut order: Vec<usize> = (0..g.m()).collect();
        order.sort_by(|&a, &b| deg_sum(b).cmp(&deg_sum(a)).then(g.edge(a).cmp(&g.edge(b))));
        let mut s = Search {
            g,
            full: ColorSet::full(k).bits(),
            order,
            colors: vec![None; g.m()],
            seen: vec![0; g.n()],
            open_deg: g.vertices().map(|v| g.degree(v)).collect(),
            open: g.m(),
            hint,
            nodes: 0,
            node_limit: budget.node_limit(),
            deadline: Instant::now() + budget.time_limit(),
        };
        // symmetry breaking: pin the edges at one maximum-degree vertex
        let delta = g.max_degree();
        let root = g.vertices().find(|&v| g.degree(v) == delta).unwrap();
        for (c, &idx) in g.incident(root).iter().enumerate() {
            s.assign(idx, c as Color);
        }
        s
    }

    fn assign(&mut self, idx: usize, c: Color) {
        let e = self.g.edge(idx);
        self.colors[idx] = Some(c);
        self.seen[e.u()] |= 1 << c;
        self.seen[e.v()] |= 1 << c;
        self.open_deg[e.u()] -= 1;
        self.open_deg[e.v()] -= 1;
        self.open -= 1;
    }

    fn unassign(&mut self, idx: usize, c: Color) {
        let e = self.g.edge(idx);
        self.colors[idx] = None;
        self.seen[e.u()] &= !(1 << c);
        self.seen[e.v()] &= !(1 << c);
        self.open_deg[e.u()] += 1;
        self.open_deg[e.v()] += 1;
        self.open += 1;
    }

    fn available(&self, idx: usize) -> u64 {
        let e = self.g.edge(idx);
        self.full & !(self.seen[e.u()] | self.seen[e.v()])
    }

    /// Every open edge still has a color, and the open edges fit into the
    /// matchings still possible in each color class.
    fn feasible(&self, from: usize) -> bool {
        for &idx in &self.order[from..] {
            if self.colors[idx].is_none() && self.available(idx) == 0 {
                return false;
            }
        }
        let mut capacity = 0usize;
        let mut bits = self.full;
        while bits != 0 {
            let c = bits.trailing_zeros();
            bits &= bits - 1;
            let free = self
                .g
                .vertices()
                .filter(|&v| self.open_deg[v] > 0 && self.seen[v] & (1 << c) == 0)
                .count();
            capacity += free / 2;
        }
        capacity >= self.open
    }

    fn run(&mut self) -> Status {
        if !self.feasible(0) {
            return Status::NotFound;
        }
        self.descend(0)
    }

    fn descend(&mut self, mut pos: usize) -> Status {
        while pos < self.order.len() && self.colors[self.order[pos]].is_some() {
            pos += 1;
        }
        if pos == self.order.len() {
            return Status::Found;
        }
        let idx = self.order[pos];
        let avail = self.available(idx);
        let preferred = self
            .hint
            .and_then(|h| h[idx])
            .filter(|&c| avail & (1 << c) != 0);
        let rest = preferred.map_or(avail, |c| avail & !(1 << c));
        let candidates = preferred
            .into_iter()
            .chain(ColorSet::from_bits(rest).iter());
        for c in candidates {
            self.nodes += 1;
            if self.nodes >= self.node_limit
                || (self.nodes & 0x3ff == 0 && Instant::now() >= self.deadline)
            {
                return Status::Exhausted;
            }
            self.assign(idx, c);
            let status = if self.feasible(pos + 1) {
                self.descend(pos + 1)
            } else {
                Status::NotFound
            };
            if status != Status::NotFound {
                return status;
            }
            self.unassign(idx, c);
        }
        Status::NotFound
    }
}

/// χ′ together with a witness coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticIndexResult<'g> {
    pub value: usize,
    pub witness: EdgeColoring<'g>,
    /// Set when the Δ-search ran out of budget; `value` is then only the
    /// Vizing upper bound.
    pub exhausted: bool,
}

/// χ′(g): tries Δ colors exactly, falling back to the Vizing witness.
/// Budget exhaustion is reported as an error.
pub fn chromatic_index<'g>(
    g: &'g Graph,
    budget: &OracleBudget,
) -> Result<ChromaticIndexResult<'g>, OracleError> {
    let r = chromatic_index_bounded(g, budget)?;
    if r.exhausted {
        return Err(OracleError::BudgetExhausted {
            nodes: budget.node_limit(),
        });
    }
    Ok(r)
}

/// Like [`chromatic_index`] but returns the upper bound with `exhausted` set
/// instead of failing.
pub fn chromatic_index_bounded<'g>(
    g: &'g Graph,
    budget: &OracleBudget,
) -> Result<ChromaticIndexResult<'g>, OracleError> {
    if g.m() == 0 {
        return Err(OracleError::Edgeless);
    }
    let delta = g.max_degree();
    let (exhausted, found) = match find_edge_coloring(g, delta, budget) {
        SearchOutcome::Found(c) => (false, Some(c)),
        SearchOutcome::NotFound => (false, None),
        SearchOutcome::BudgetExhausted { .. } => (true, None),
    };
    if let Some(witness) = found {
        return Ok(ChromaticIndexResult {
            value: delta,
            witness,
            exhausted,
        });
    }
    let witness = vizing_color(g);
    let used = witness.colors_used().len();
    if !exhausted && used != delta + 1 {
        return Err(OracleError::Internal(format!(
            "Vizing coloring used {used} colors on a graph with no {delta}-coloring"
        )));
    }
    Ok(ChromaticIndexResult {
        value: delta + 1,
        witness,
        exhausted,
    })
}

/// Whether `g` has a `Δ(g)`-edge-coloring, as an exact yes/no.
pub fn is_class_one(g: &Graph, budget: &OracleBudget) -> Result<bool, OracleError> {
    if g.m() == 0 {
        return Err(OracleError::Edgeless);
    }
    match find_edge_coloring(g, g.max_degree(), budget) {
        SearchOutcome::Found(_) => Ok(true),
        SearchOutcome::NotFound => Ok(false),
        SearchOutcome::BudgetExhausted { nodes } => Err(OracleError::BudgetExhausted { nodes }),
    }
}

/// Misra–Gries fan recoloring: a proper coloring with at most Δ+1 colors.
///
/// Edges are processed in index order; fans grow through the lowest-index
/// eligible neighbor.
pub fn vizing_color(g: &Graph) -> EdgeColoring<'_> {
    let k = g.max_degree() + 1;
    let mut st = FanState::new(g, k);
    for idx in 0..g.m() {
        let e = g.edge(idx);
        st.color_edge(e.u(), e.v());
    }
    let c = EdgeColoring::from_vec(g, k, st.colors).expect("palette of size Δ+1");
    debug_assert!(c.is_proper() && c.is_total());
    c
}

struct FanState<'a> {
    g: &'a Graph,
    k: usize,
    colors: Vec<Option<Color>>,
    // at[v][c] = neighbor of v across the edge colored c
    at: Vec<Vec<Option<Vertex>>>,
}

impl<'a> FanState<'a> {
    fn new(g: &'a Graph, k: usize) -> Self {
        FanState {
            g,
            k,
            colors: vec![None; g.m()],
            at: vec![vec![None; k]; g.n()],
        }
    }

    fn color(&self, a: Vertex, b: Vertex) -> Option<Color> {
        self.colors[self.g.edge_index(a, b).unwrap()]
    }

    fn set(&mut self, a: Vertex, b: Vertex, c: Option<Color>) {
        let idx = self.g.edge_index(a, b).unwrap();
        if let Some(old) = self.colors[idx] {
            self.at[a][old as usize] = None;
            self.at[b][old as usize] = None;
        }
        self.colors[idx] = c;
        if let Some(new) = c {
            self.at[a][new as usize] = Some(b);
            self.at[b][new as usize] = Some(a);
        }
    }

    fn is_free(&self, v: Vertex, c: Color) -> bool {
        self.at[v][c as usize].is_none()
    }

    fn lowest_free(&self, v: Vertex) -> Color {
        (0..self.k as Color)
            .find(|&c| self.is_free(v, c))
            .expect("Δ+1 colors leave one free")
    }

    fn color_edge(&mut self, u: Vertex, v: Vertex) {
        // maximal fan at u starting with v
        let mut fan = vec![v];
        loop {
            let last = *fan.last().unwrap();
            let next = self.g.neighbors(u).iter().copied().find(|&f| {
                !fan.contains(&f) && self.color(u, f).is_some_and(|c| self.is_free(last, c))
            });
            match next {
                Some(f) => fan.push(f),
                None => break,
            }
        }
        let c = self.lowest_free(u);
        let d = self.lowest_free(*fan.last().unwrap());

        // invert the cd-path through u (u misses c, so it starts with d)
        if c != d {
            let mut path = Vec::new();
            let mut cur = u;
            let mut want = d;
            while let Some(nxt) = self.at[cur][want as usize] {
                path.push((cur, nxt));
                cur = nxt;
                want = if want == c { d } else { c };
            }
            let old: Vec<Option<Color>> = path.iter().map(|&(a, b)| self.color(a, b)).collect();
            for &(a, b) in &path {
                self.set(a, b, None);
            }
            for (&(a, b), col) in path.iter().zip(old) {
                let flipped = col.map(|x| if x == c { d } else { c });
                self.set(a, b, flipped);
            }
        }

        // first w with d free such that fan[..=w] is still a fan
        let mut end = None;
        for i in 0..fan.len() {
            if i > 0 {
                let ok = self
                    .color(u, fan[i])
                    .is_some_and(|col| self.is_free(fan[i - 1], col));
                if !ok {
                    break;
                }
            }
            if self.is_free(fan[i], d) {
                end = Some(i);
                break;
            }
        }
        let w = end.expect("Misra–Gries guarantees a rotatable prefix");

        // rotate the prefix and color uw with d
        for i in 0..w {
            let next = self.color(u, fan[i + 1]);
            self.set(u, fan[i + 1], None);
            self.set(u, fan[i], next);
        }
        self.set(u, fan[w], Some(d));
    }
}

/// A critical subgraph with its vertex map back to the host.
#[derive(Debug, Clone)]
pub struct CriticalSubgraph {
    pub graph: Graph,
    pub map: Vec<Vertex>,
}

/// Greedy edge deletion in index order, keeping a deletion whenever the rest
/// is still not Δ-colorable; isolated vertices are dropped at the end and the
/// result is re-verified.
pub fn critical_subgraph(
    g: &Graph,
    budget: &OracleBudget,
) -> Result<CriticalSubgraph, OracleError> {
    if is_class_one(g, budget)? {
        return Err(OracleError::Class1);
    }
    let delta = g.max_degree();
    let mut kept = vec![true; g.m()];
    for idx in 0..g.m() {
        kept[idx] = false;
        let trial = g.filter_edges(|e| kept[g.edge_index_of(e).unwrap()]);
        let colorable = match find_edge_coloring(&trial, delta, budget) {
            SearchOutcome::Found(_) => true,
            SearchOutcome::NotFound => false,
            SearchOutcome::BudgetExhausted { nodes } => {
                return Err(OracleError::BudgetExhausted { nodes })
            }
        };
        if colorable {
            kept[idx] = true;
        }
    }
    let h = g.filter_edges(|e| kept[g.edge_index_of(e).unwrap()]);
    let (graph, map) = h.without_isolated();
    if graph.max_degree() != delta || !is_critical(&graph, budget)? {
        return Err(OracleError::Internal(
            "greedy deletion did not produce a critical graph".into(),
        ));
    }
    Ok(CriticalSubgraph { graph, map })
}

/// Class 2, and deleting any edge leaves a Δ(g)-colorable graph.
pub fn is_critical(g: &Graph, budget: &OracleBudget) -> Result<bool, OracleError> {
    if is_class_one(g, budget)? {
        return Ok(false);
    }
    let delta = g.max_degree();
    for &e in g.edges() {
        let h = g.without_edge(e).expect("edge from the graph");
        match find_edge_coloring(&h, delta, budget) {
            SearchOutcome::Found(_) => {}
            SearchOutcome::NotFound => return Ok(false),
            SearchOutcome::BudgetExhausted { nodes } => {
                return Err(OracleError::BudgetExhausted { nodes })
            }
        }
    }
    Ok(true)
}

/// The Vizing adjacency bound: for every edge vw, w has at least
/// `max(Δ + 1 − d(v), 2)` neighbors of degree Δ.
pub fn check_val(g: &Graph) -> bool {
    let delta = g.max_degree();
    let heavy: Vec<usize> = g
        .vertices()
        .map(|w| {
            g.neighbors(w)
                .iter()
                .filter(|&&x| g.degree(x) == delta)
                .count()
        })
        .collect();
    g.edges().iter().all(|e| {
        let (a, b) = e.endpoints();
        [(a, b), (b, a)].iter().all(|&(v, w)| {
            let need = (delta + 1).saturating_sub(g.degree(v)).max(2);
            heavy[w] >= need
        })
    })
}

/// For `g ∈ G_k` with χ′(g) > k: checks that `g ∈ H_k` and `g` is critical.
pub fn check_hz_lemma(g: &Graph, k: usize, budget: &OracleBudget) -> Result<bool, OracleError> {
    if !structure::in_g_k(g, k) {
        return Err(OracleError::NotInGk(k));
    }
    if is_class_one(g, budget)? {
        return Err(OracleError::Colorable(k));
    }
    Ok(structure::in_h_k(g, k) && is_critical(g, budget)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::graph::Edge;

    fn budget() -> OracleBudget {
        OracleBudget::default()
    }

    /// Independent brute force: try every assignment of k colors.
    fn brute_force_colorable(g: &Graph, k: usize) -> bool {
        let m = g.m();
        let mut colors = vec![0u8; m];
        loop {
            let c =
                EdgeColoring::from_vec(g, k, colors.iter().map(|&x| Some(x)).collect()).unwrap();
            if c.is_proper() {
                return true;
            }
            let mut i = 0;
            loop {
                if i == m {
                    return false;
                }
                colors[i] += 1;
                if (colors[i] as usize) < k {
                    break;
                }
                colors[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn k4_is_three_colorable() {
        assert!(brute_force_colorable(&complete(4), 3));
        let g = complete(4);
        let c = find_edge_coloring(&g, 3, &budget()).found().unwrap();
        assert!(c.is_proper() && c.is_total());
        assert_eq!(c.colors_used().len(), 3);
    }

    #[test]
    fn k5_minus_e_is_not_four_colorable() {
        let g = k5_minus_e();
        assert_eq!(
            find_edge_coloring(&g, 4, &budget()),
            SearchOutcome::NotFound
        );
    }

    #[test]
    fn single_edge_one_color() {
        let g = path(2);
        assert!(find_edge_coloring(&g, 1, &budget()).found().is_some());
        assert_eq!(
            find_edge_coloring(&g, 0, &budget()),
            SearchOutcome::NotFound
        );
    }

    #[test]
    fn chromatic_index_examples() {
        assert!(!brute_force_colorable(&cycle(5), 2));
        assert_eq!(chromatic_index(&cycle(5), &budget()).unwrap().value, 3);
        assert_eq!(
            chromatic_index(&petersen_minus_vertex(), &budget())
                .unwrap()
                .value,
            4
        );
        assert_eq!(chromatic_index(&k5_minus_e(), &budget()).unwrap().value, 5);
        assert_eq!(chromatic_index(&cycle(6), &budget()).unwrap().value, 2);
        assert_eq!(chromatic_index(&petersen(), &budget()).unwrap().value, 4);
        assert_eq!(
            chromatic_index(&Graph::empty(3), &budget()).unwrap_err(),
            OracleError::Edgeless
        );
    }

    #[test]
    fn witnesses_use_exactly_value_colors() {
        for g in [
            cycle(5),
            k5_minus_e(),
            complete(4),
            complete(6),
            complete(7),
            petersen(),
        ] {
            let r = chromatic_index(&g, &budget()).unwrap();
            assert!(r.witness.is_proper() && r.witness.is_total());
            assert_eq!(r.witness.colors_used().len(), r.value, "{g:?}");
        }
    }

    #[test]
    fn vizing_examples() {
        let g = path(2);
        assert_eq!(vizing_color(&g).colors_used().len(), 1);
        for g in [complete(4), petersen(), complete(7), k5_minus_e(), star(5)] {
            let c = vizing_color(&g);
            assert!(c.is_proper() && c.is_total());
            assert!(c.colors_used().len() <= g.max_degree() + 1);
        }
    }

    #[test]
    fn budget_exhaustion_is_distinct() {
        let tiny = OracleBudget::new(2, Duration::from_secs(10)).unwrap();
        assert!(matches!(
            find_edge_coloring(&petersen(), 3, &tiny),
            SearchOutcome::BudgetExhausted { .. }
        ));
        assert!(OracleBudget::new(0, Duration::from_secs(1)).is_err());
    }

    #[test]
    fn search_is_deterministic() {
        let g = petersen_minus_vertex();
        let a = find_edge_coloring(&g, 4, &budget());
        let b = find_edge_coloring(&g, 4, &budget());
        assert_eq!(a, b);
    }

    #[test]
    fn critical_subgraph_examples() {
        // K5 - e: every single deletion is 4-colorable (brute force)
        let g = k5_minus_e();
        for &e in g.edges() {
            assert!(brute_force_colorable(&g.without_edge(e).unwrap(), 4));
        }
        let h = critical_subgraph(&g, &budget()).unwrap();
        assert_eq!(h.graph, g);

        let c3 = cycle(3);
        assert_eq!(critical_subgraph(&c3, &budget()).unwrap().graph, c3);

        // a pendant at a triangle vertex would raise Δ to 3 (and be class 1),
        // so the Δ=2 reading is a triangle plus a separate edge
        let tri_edge = Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();
        let h = critical_subgraph(&tri_edge, &budget()).unwrap();
        assert_eq!(h.graph, c3);
        assert_eq!(h.map, vec![0, 1, 2]);
        let tadpole = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert_eq!(
            critical_subgraph(&tadpole, &budget()).unwrap_err(),
            OracleError::Class1
        );

        assert_eq!(
            critical_subgraph(&cycle(4), &budget()).unwrap_err(),
            OracleError::Class1
        );
    }

    #[test]
    fn val_examples() {
        assert!(check_val(&k5_minus_e()));
        assert!(check_val(&cycle(3)));
        assert!(check_val(&cycle(7)));
        // a pendant edge on a triangle violates the bound
        let tadpole = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert!(!check_val(&tadpole));
    }

    #[test]
    fn hz_check_examples() {
        assert_eq!(check_hz_lemma(&k5_minus_e(), 4, &budget()), Ok(true));
        assert_eq!(
            check_hz_lemma(&petersen_minus_vertex(), 3, &budget()),
            Ok(true)
        );
        assert_eq!(
            check_hz_lemma(&star(4), 4, &budget()),
            Err(OracleError::Colorable(4))
        );
        assert_eq!(
            check_hz_lemma(&complete(5), 4, &budget()),
            Err(OracleError::NotInGk(4))
        );
        let _ = Edge::new(0, 1);
    }
}
