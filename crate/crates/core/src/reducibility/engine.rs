//! Move primitives shared by the three procedures.
//!
//! Every move goes through [`Ext`], which records it, enforces the swap
//! budget, checks properness and, after each move, tries the two cheap
//! finishes (a common missing color at the ends of `e`, or one swap that
//! creates one).

use std::collections::{HashSet, VecDeque};

use super::{Action, ExtendError, ExtensionTrace, TraceStep, K, SWAP_BUDGET};
use crate::coloring::{Color, ColorSet, EdgeColoring, KempeChain};
use crate::graph::{Edge, Graph, Vertex};
use crate::structure::{ConfigKind, ConfigMatch};

pub(super) enum Stop {
    Done,
    Redispatch,
    Fail(ExtendError),
}

pub(super) type Flow = Result<(), Stop>;

pub(super) fn fail<T>(e: ExtendError) -> Result<T, Stop> {
    Err(Stop::Fail(e))
}

/// `(degree-3 end, degree-4 end)` of the designated edge.
pub(crate) fn endpoints(g: &Graph, m: &ConfigMatch) -> (Vertex, Vertex) {
    let e = m.e();
    if g.degree(e.u()) == 3 {
        (e.u(), e.v())
    } else {
        (e.v(), e.u())
    }
}

pub(crate) fn flip(c: &mut EdgeColoring<'_>, edges: &[Edge], i: Color, j: Color) {
    let g = c.graph();
    for &e in edges {
        let idx = g.edge_index_of(e).expect("chain edge in graph");
        let new = match c.get_index(idx) {
            Some(x) if x == i => Some(j),
            Some(x) if x == j => Some(i),
            other => other,
        };
        c.set_index(idx, new);
    }
}

/// Which edges a chain may not use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) enum Outside {
    /// Kempe chain of `G − e`.
    Nothing,
    /// Chain in `G` minus the configuration edges.
    Config,
    /// Chain in `G` minus every edge with both ends on role vertices.
    Induced,
}

/// Where the far end of a chain started at a role vertex lies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) enum End {
    Role(Vertex),
    Infinity,
    /// The start is not an endpoint (interior vertex, cycle or no chain).
    Interior,
}

/// Read-only queries against a coloring and role assignment.
pub(super) struct View<'a, 'g> {
    pub g: &'g Graph,
    pub m: &'a ConfigMatch,
    pub c: &'a EdgeColoring<'g>,
}

impl<'a, 'g> View<'a, 'g> {
    pub fn r(&self, name: char) -> Vertex {
        self.m.role(name)
    }

    pub fn col(&self, a: Vertex, b: Vertex) -> Option<Color> {
        self.c.color_between(a, b)
    }

    pub fn misses(&self, v: Vertex, c: Color) -> bool {
        self.c.misses(v, c)
    }

    pub fn sees(&self, v: Vertex, c: Color) -> bool {
        self.c.sees(v, c)
    }

    pub fn missing(&self, v: Vertex) -> ColorSet {
        self.c.missing_colors(v)
    }

    pub fn linked(&self, a: Vertex, b: Vertex, i: Color, j: Color) -> bool {
        self.c.linked(a, b, i, j).expect("valid colors")
    }

    /// Edges at `v` outside the configuration.
    pub fn pendants(&self, v: Vertex) -> Vec<Edge> {
        let cfg = self.m.edges();
        self.g
            .incident(v)
            .iter()
            .map(|&i| self.g.edge(i))
            .filter(|e| !cfg.contains(e))
            .collect()
    }

    /// Color of the single pendant edge at `v`.
    pub fn pc(&self, v: Vertex) -> Option<Color> {
        match self.pendants(v).as_slice() {
            [e] => self.c.get(*e),
            _ => None,
        }
    }

    pub fn pendant_colors(&self, v: Vertex) -> ColorSet {
        self.pendants(v)
            .iter()
            .filter_map(|&e| self.c.get(e))
            .collect()
    }

    pub fn chain(&self, v: Vertex, i: Color, j: Color, outside: Outside) -> KempeChain {
        let roles = self.m.vertices();
        let cfg = self.m.edges();
        match outside {
            Outside::Nothing => self.c.kempe_chain(v, i, j),
            Outside::Config => self.c.kempe_chain_filtered(v, i, j, |e| !cfg.contains(&e)),
            Outside::Induced => self.c.kempe_chain_filtered(v, i, j, |e| {
                !(roles.contains(&e.u()) && roles.contains(&e.v()))
            }),
        }
        .expect("valid colors")
    }

    /// Far end of the `(i,j)`-chain that starts at `v` outside the
    /// configuration edges.
    pub fn end(&self, v: Vertex, i: Color, j: Color, outside: Outside) -> End {
        let ch = self.chain(v, i, j, outside);
        if ch.is_trivial() {
            return End::Interior;
        }
        match ch.other_end(v) {
            None => End::Interior,
            Some(w) if self.m.vertices().contains(&w) => End::Role(w),
            Some(_) => End::Infinity,
        }
    }

    /// The degree-3 end of `e` misses 2 and 3, the other end misses 1.
    pub fn entry_ok(&self) -> bool {
        let (tip, hub) = endpoints(self.g, self.m);
        self.missing(tip) == [2, 3].into_iter().collect()
            && self.missing(hub) == ColorSet::single(1)
    }
}

pub(super) enum Goal {
    Pending,
    Reached,
    /// The state belongs to another case; re-enter the procedure.
    Exit,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Hit {
    Finish,
    Goal,
    Exit,
    /// An exit to a state the procedure has already entered.
    Dead,
}

/// What [`Ext::search`] may do and where it stops.
pub(super) struct Search<'s, 'g> {
    /// Kempe swaps `(vertex, i, j)` in the whole graph.
    pub plain: &'s [(Vertex, Color, Color)],
    /// Color pairs of chains avoiding the edges among role vertices, flipped
    /// at any role vertex; the edges among role vertices are then recolored
    /// if needed.
    pub outside: &'s [(Color, Color)],
    /// Also stop where recoloring the edges among role vertices colors `e`.
    pub local: bool,
    pub goal: &'s dyn Fn(&View<'_, 'g>) -> Goal,
    pub max_depth: usize,
    pub max_states: usize,
}

#[derive(Clone)]
enum Move {
    Plain(Vertex, Color, Color),
    Outside(Vertex, Color, Color, Vec<(Edge, Option<Color>)>),
}

pub(super) struct Ext<'g> {
    pub g: &'g Graph,
    pub m: ConfigMatch,
    pub c: EdgeColoring<'g>,
    original: ConfigMatch,
    initial: EdgeColoring<'g>,
    steps: Vec<TraceStep>,
    swaps: usize,
    visited: HashSet<(String, Vec<Option<Color>>)>,
    entered: HashSet<Vec<Option<Color>>>,
}

impl<'g> Ext<'g> {
    /// Swaps `(i, j)` at each named role for each listed pair.
    pub fn moves(&self, roles: &str, pairs: &[(Color, Color)]) -> Vec<(Vertex, Color, Color)> {
        roles
            .chars()
            .flat_map(|r| pairs.iter().map(move |&(i, j)| (r, i, j)))
            .map(|(r, i, j)| (self.r(r), i, j))
            .collect()
    }

    pub fn new(g: &'g Graph, m: ConfigMatch, c: EdgeColoring<'g>) -> Self {
        Ext {
            g,
            original: m.clone(),
            m,
            initial: c.clone(),
            c,
            steps: Vec::new(),
            swaps: 0,
            visited: HashSet::new(),
            entered: HashSet::new(),
        }
    }

    pub fn view(&self) -> View<'_, 'g> {
        View {
            g: self.g,
            m: &self.m,
            c: &self.c,
        }
    }

    pub fn r(&self, name: char) -> Vertex {
        self.m.role(name)
    }

    pub fn e(&self) -> Edge {
        self.m.e()
    }

    fn record(&mut self, label: &str, action: Action) {
        self.steps.push(TraceStep {
            label: label.to_string(),
            action,
        });
    }

    fn check_proper(&self, label: &str) -> Flow {
        if self.c.is_proper() {
            Ok(())
        } else {
            fail(ExtendError::Improper(label.to_string()))
        }
    }

    /// Ends the procedure if `e` is colored and the coloring is complete.
    fn done_if_total(&self, label: &str) -> Flow {
        if self.c.get(self.e()).is_some() {
            if !self.c.is_total() {
                return fail(ExtendError::Improper(format!(
                    "{label}: incomplete coloring"
                )));
            }
            return Err(Stop::Done);
        }
        Ok(())
    }

    /// Continues with the roles in `changes` reassigned; fails if the result
    /// is not a valid match.
    pub fn reassign(&mut self, label: &str, changes: &[(char, Vertex)]) -> Flow {
        let mut named: Vec<(char, Vertex)> = self
            .m
            .kind
            .role_names()
            .iter()
            .map(|&r| (r, self.m.role(r)))
            .collect();
        for &(r, v) in changes {
            for slot in named.iter_mut().filter(|s| s.0 == r) {
                slot.1 = v;
            }
        }
        let m = ConfigMatch::from_named(self.m.kind, &named)
            .ok()
            .filter(|m| m.validate(self.g).is_ok());
        let Some(m) = m else {
            return fail(ExtendError::Improper(format!(
                "{label}: invalid role change"
            )));
        };
        self.m = m.clone();
        self.record(label, Action::Roles(m));
        Ok(())
    }

    /// Exchanges the vertices playing roles `a` and `b`.
    pub fn swap_roles(&mut self, label: &str, a: char, b: char) -> Flow {
        let (va, vb) = (self.r(a), self.r(b));
        self.reassign(label, &[(a, vb), (b, va)])
    }

    /// Switches to a configuration of another kind.
    pub fn switch_match(&mut self, label: &str, m: ConfigMatch) -> Flow {
        if m.validate(self.g).is_err() {
            return fail(ExtendError::Improper(format!("{label}: invalid match")));
        }
        self.m = m.clone();
        self.record(label, Action::Roles(m));
        Ok(())
    }

    pub fn permute(&mut self, label: &str, perm: &[Color]) {
        self.c = self
            .c
            .apply_color_permutation(perm)
            .expect("valid permutation");
        self.record(label, Action::Permute(perm.to_vec()));
    }

    /// Exchanges colors 2 and 3.
    pub fn swap_23(&mut self, label: &str) {
        self.permute(label, &[0, 1, 3, 2]);
    }

    fn count_swap(&mut self, label: &str) -> Flow {
        self.swaps += 1;
        if self.swaps > SWAP_BUDGET {
            return fail(ExtendError::SwapBudget(label.to_string()));
        }
        Ok(())
    }

    /// Kempe swap of the `(i,j)`-chain at `v` in `G − e`.
    pub fn swap(&mut self, label: &str, v: Vertex, i: Color, j: Color) -> Flow {
        self.swap_then(label, v, i, j, Outside::Nothing, &[])
    }

    /// Swaps a chain and then recolors the listed edges, as one move.
    pub fn swap_then(
        &mut self,
        label: &str,
        v: Vertex,
        i: Color,
        j: Color,
        outside: Outside,
        then: &[(Edge, Option<Color>)],
    ) -> Flow {
        let chain = self.view().chain(v, i, j, outside);
        if chain.is_trivial() && then.is_empty() {
            return Ok(());
        }
        self.count_swap(label)?;
        flip(&mut self.c, &chain.edges, i, j);
        for &(e, col) in then {
            self.c.set(e, col).expect("edge in graph");
        }
        let excluded = match outside {
            Outside::Nothing => Vec::new(),
            Outside::Config => self.m.edges(),
            Outside::Induced => induced_edges(self.g, &self.m),
        };
        self.record(
            label,
            Action::Swap {
                at: v,
                colors: (i, j),
                excluded,
                edges: chain.edges,
                then: then.to_vec(),
            },
        );
        self.check_proper(label)?;
        self.done_if_total(label)?;
        self.try_finish()
    }

    /// Swap of the chain at `v` avoiding the configuration edges, followed
    /// by `then`.
    pub fn outside_then(
        &mut self,
        label: &str,
        v: Vertex,
        i: Color,
        j: Color,
        then: &[(Edge, Option<Color>)],
    ) -> Flow {
        self.swap_then(label, v, i, j, Outside::Config, then)
    }

    pub fn assign(&mut self, label: &str, list: &[(Edge, Option<Color>)]) -> Flow {
        for &(e, col) in list {
            self.c.set(e, col).expect("edge in graph");
        }
        self.record(label, Action::Assign(list.to_vec()));
        self.check_proper(label)?;
        self.done_if_total(label)?;
        self.try_finish()
    }

    /// Assignment that must complete the coloring.
    pub fn finish_with(&mut self, label: &str, list: &[(Edge, Option<Color>)]) -> Flow {
        self.assign(label, list)?;
        fail(ExtendError::FallThrough(format!(
            "{label}: assignment did not color e"
        )))
    }

    /// Colors `e` directly, or after one swap at its degree-3 end.
    pub fn try_finish(&mut self) -> Flow {
        match quick_finish(&self.view()) {
            None => Ok(()),
            Some((swap, col)) => {
                if let Some((i, j)) = swap {
                    let (tip, _) = endpoints(self.g, &self.m);
                    let chain = self.c.kempe_chain(tip, i, j).expect("valid colors");
                    self.count_swap("finish")?;
                    flip(&mut self.c, &chain.edges, i, j);
                    self.record(
                        "finish",
                        Action::Swap {
                            at: tip,
                            colors: (i, j),
                            excluded: Vec::new(),
                            edges: chain.edges,
                            then: Vec::new(),
                        },
                    );
                }
                let e = self.e();
                self.c.set(e, Some(col)).expect("edge in graph");
                self.record("finish", Action::Assign(vec![(e, Some(col))]));
                self.check_proper("finish")?;
                self.done_if_total("finish")?;
                fail(ExtendError::Improper("finish".into()))
            }
        }
    }

    /// Restarts the procedure from the current coloring. The same label may
    /// not see the same coloring twice.
    pub fn redispatch(&mut self, label: &str) -> Flow {
        let key = (label.to_string(), self.c.as_slice().to_vec());
        if !self.visited.insert(key) {
            return fail(ExtendError::Loop(label.to_string()));
        }
        Err(Stop::Redispatch)
    }

    pub fn fall(&self, label: &str) -> Flow {
        fail(ExtendError::FallThrough(label.to_string()))
    }

    pub fn expect(&self, cond: bool, label: &str) -> Flow {
        if cond {
            Ok(())
        } else {
            self.fall(label)
        }
    }

    /// Direct finish or the entry permutation; every procedure starts here.
    pub fn enter(&mut self, label: &str) -> Flow {
        self.try_finish()?;
        let (tip, hub) = endpoints(self.g, &self.m);
        let perm = super::entry_permutation(&self.c, tip, hub).map_err(Stop::Fail)?;
        if perm.iter().enumerate().any(|(i, &p)| p as usize != i) {
            self.permute(label, &perm);
        }
        if let Some(key) = normal_form(self.g, &self.m, &self.c) {
            self.entered.insert(key);
        }
        Ok(())
    }

    /// Breadth-first search from the current coloring (see [`Search`]).
    /// A finishing state ends the procedure, a goal state returns `Ok`, and
    /// when only exit states are reachable the first one found re-enters the
    /// procedure.
    pub fn search(&mut self, label: &str, spec: &Search<'_, 'g>) -> Flow {
        let m = self.m.clone();
        let g = self.g;
        let roles: Vec<Vertex> = m.vertices().to_vec();
        let plain = spec.plain;
        let entered = &self.entered;
        let accept = |c: &EdgeColoring<'g>| {
            let v = View { g, m: &m, c };
            if quick_finish(&v).is_some() || (spec.local && solve_induced(g, &m, c, true).is_some())
            {
                return Some(Hit::Finish);
            }
            match (spec.goal)(&v) {
                Goal::Reached => Some(Hit::Goal),
                Goal::Exit => match normal_form(g, &m, c) {
                    Some(key) if entered.contains(&key) => Some(Hit::Dead),
                    _ => Some(Hit::Exit),
                },
                Goal::Pending => None,
            }
        };
        let expand = |c: &EdgeColoring<'g>| {
            let mut out = Vec::new();
            for &(v, i, j) in plain {
                let ch = c.kempe_chain(v, i, j).expect("valid colors");
                if ch.is_trivial() {
                    continue;
                }
                let mut next = c.clone();
                flip(&mut next, &ch.edges, i, j);
                out.push((Move::Plain(v, i, j), next));
            }
            let view = View { g, m: &m, c };
            let mut seen_chains: HashSet<Vec<Edge>> = HashSet::new();
            for &(i, j) in spec.outside {
                for &s in &roles {
                    let ch = view.chain(s, i, j, Outside::Induced);
                    if ch.is_trivial() || ch.other_end(s).is_none() {
                        continue;
                    }
                    let mut key = ch.edges.clone();
                    key.sort();
                    if !seen_chains.insert(key) {
                        continue;
                    }
                    let mut next = c.clone();
                    flip(&mut next, &ch.edges, i, j);
                    let then = if next.is_proper() {
                        Vec::new()
                    } else {
                        match solve_induced(g, &m, &next, false) {
                            Some(t) => t,
                            None => continue,
                        }
                    };
                    for &(f, col) in &then {
                        next.set(f, col).expect("edge in graph");
                    }
                    out.push((Move::Outside(s, i, j, then), next));
                }
            }
            out
        };
        let Some((path, hit)) = bfs(&self.c, spec.max_depth, spec.max_states, accept, expand)
        else {
            return self.fall(&format!("{label}: search exhausted"));
        };
        self.apply_path(label, &path)?;
        match hit {
            Hit::Finish => {
                if let Some(list) = solve_induced(self.g, &self.m, &self.c, true) {
                    self.finish_with(label, &list)
                } else {
                    self.fall(label)
                }
            }
            Hit::Goal => Ok(()),
            Hit::Exit => self.redispatch(label),
            Hit::Dead => unreachable!("dead states are never returned"),
        }
    }

    fn apply_path(&mut self, label: &str, path: &[Move]) -> Flow {
        for mv in path {
            match mv {
                Move::Plain(v, i, j) => self.swap(label, *v, *i, *j)?,
                Move::Outside(v, i, j, then) => {
                    self.swap_then(label, *v, *i, *j, Outside::Induced, then)?
                }
            }
        }
        Ok(())
    }

    pub fn into_trace(self) -> ExtensionTrace<'g> {
        ExtensionTrace {
            config: self.original,
            initial: self.initial,
            steps: self.steps,
            final_coloring: self.c,
        }
    }
}

/// Breadth-first search returning the move path to the first finishing or
/// goal state; exit states are not expanded and the first one is kept as a
/// fallback.
fn bfs<'g>(
    start: &EdgeColoring<'g>,
    max_depth: usize,
    max_states: usize,
    accept: impl Fn(&EdgeColoring<'g>) -> Option<Hit>,
    expand: impl Fn(&EdgeColoring<'g>) -> Vec<(Move, EdgeColoring<'g>)>,
) -> Option<(Vec<Move>, Hit)> {
    struct Node<'g> {
        c: EdgeColoring<'g>,
        parent: Option<(usize, Move)>,
        depth: usize,
    }
    let path_to = |nodes: &[Node<'g>], mut cur: usize| {
        let mut path = Vec::new();
        while let Some((p, mv)) = nodes[cur].parent.clone() {
            path.push(mv);
            cur = p;
        }
        path.reverse();
        path
    };
    let mut nodes = vec![Node {
        c: start.clone(),
        parent: None,
        depth: 0,
    }];
    let mut seen: HashSet<Vec<Option<Color>>> = HashSet::new();
    seen.insert(start.as_slice().to_vec());
    let mut queue = VecDeque::from([0usize]);
    let mut fallback = None;
    'outer: while let Some(n) = queue.pop_front() {
        match accept(&nodes[n].c) {
            Some(Hit::Exit) => {
                fallback.get_or_insert(n);
                continue;
            }
            Some(Hit::Dead) => continue,
            Some(hit) => return Some((path_to(&nodes, n), hit)),
            None => {}
        }
        if nodes[n].depth >= max_depth {
            continue;
        }
        for (mv, next) in expand(&nodes[n].c) {
            if nodes.len() >= max_states {
                break 'outer;
            }
            if seen.insert(next.as_slice().to_vec()) {
                let depth = nodes[n].depth + 1;
                nodes.push(Node {
                    c: next,
                    parent: Some((n, mv)),
                    depth,
                });
                queue.push_back(nodes.len() - 1);
            }
        }
    }
    fallback.map(|n| (path_to(&nodes, n), Hit::Exit))
}

/// The coloring after the entry permutation, with the smaller of the two
/// orders of 2 and 3; `None` when the entry conditions fail.
fn normal_form(g: &Graph, m: &ConfigMatch, c: &EdgeColoring<'_>) -> Option<Vec<Option<Color>>> {
    let (tip, hub) = endpoints(g, m);
    let perm = super::entry_permutation(c, tip, hub).ok()?;
    let a = c.apply_color_permutation(&perm).ok()?;
    let b = a.apply_color_permutation(&[0, 1, 3, 2]).ok()?;
    Some(a.as_slice().to_vec().min(b.as_slice().to_vec()))
}

/// `Some((swap, color))` when `e` can be colored with `color`, after the
/// optional swap at its degree-3 end.
pub(super) fn quick_finish(v: &View<'_, '_>) -> Option<(Option<(Color, Color)>, Color)> {
    let (tip, hub) = endpoints(v.g, v.m);
    let mt = v.missing(tip);
    let mh = v.missing(hub);
    if let Some(c) = mt.intersection(mh).first() {
        return Some((None, c));
    }
    for i in mt.iter() {
        for j in mh.iter() {
            if !v.linked(tip, hub, i, j) {
                return Some((Some((i, j)), j));
            }
        }
    }
    None
}

pub(super) fn induced_edges(g: &Graph, m: &ConfigMatch) -> Vec<Edge> {
    let roles = m.vertices();
    let mut out = Vec::new();
    for (a, &x) in roles.iter().enumerate() {
        for &y in &roles[a + 1..] {
            if g.has_edge(x, y) {
                out.push(Edge::new(x, y));
            }
        }
    }
    out.sort();
    out
}

/// Colors for the edges among role vertices (with or without `e`) that fit
/// the fixed colors elsewhere; current colors are tried first. Returns only
/// the edges whose color changes.
pub(super) fn solve_induced(
    g: &Graph,
    m: &ConfigMatch,
    c: &EdgeColoring<'_>,
    include_e: bool,
) -> Option<Vec<(Edge, Option<Color>)>> {
    let e = m.e();
    let edges: Vec<Edge> = induced_edges(g, m)
        .into_iter()
        .filter(|&f| include_e || f != e)
        .collect();
    let free: HashSet<Edge> = edges.iter().copied().collect();
    // colors seen at each vertex through fixed edges
    let fixed = |v: Vertex| -> ColorSet {
        g.incident(v)
            .iter()
            .map(|&i| g.edge(i))
            .filter(|f| !free.contains(f))
            .filter_map(|f| c.get(f))
            .collect()
    };
    let roles = m.vertices();
    let mut used: Vec<(Vertex, ColorSet)> = roles.iter().map(|&v| (v, fixed(v))).collect();
    let slot = |v: Vertex| roles.iter().position(|&r| r == v).unwrap();
    let mut chosen: Vec<Color> = Vec::with_capacity(edges.len());

    fn go(
        k: usize,
        edges: &[Edge],
        c: &EdgeColoring<'_>,
        used: &mut Vec<(Vertex, ColorSet)>,
        slot: &dyn Fn(Vertex) -> usize,
        chosen: &mut Vec<Color>,
    ) -> bool {
        if k == edges.len() {
            return true;
        }
        let f = edges[k];
        let (a, b) = (slot(f.u()), slot(f.v()));
        let blocked = used[a].1.union(used[b].1);
        let current = c.get(f).filter(|&x| !blocked.contains(x));
        let order = current
            .into_iter()
            .chain((0..K as Color).filter(|&x| Some(x) != current));
        for col in order {
            if blocked.contains(col) {
                continue;
            }
            used[a].1.insert(col);
            used[b].1.insert(col);
            chosen.push(col);
            if go(k + 1, edges, c, used, slot, chosen) {
                return true;
            }
            chosen.pop();
            used[a].1.remove(col);
            used[b].1.remove(col);
        }
        false
    }

    if !go(0, &edges, c, &mut used, &slot, &mut chosen) {
        return None;
    }
    Some(
        edges
            .iter()
            .zip(chosen)
            .filter(|&(&f, col)| c.get(f) != Some(col))
            .map(|(&f, col)| (f, Some(col)))
            .collect(),
    )
}

/// Runs the procedure for the current kind until it finishes.
pub(super) fn run<'g>(
    g: &'g Graph,
    m: ConfigMatch,
    c: EdgeColoring<'g>,
) -> Result<ExtensionTrace<'g>, ExtendError> {
    let mut x = Ext::new(g, m, c);
    loop {
        let flow = match x.m.kind {
            ConfigKind::A => super::kind_a::run(&mut x),
            ConfigKind::B => super::kind_b::run(&mut x),
            ConfigKind::C => super::kind_c::run(&mut x),
        };
        match flow {
            Ok(()) => {
                return Err(ExtendError::FallThrough(format!(
                    "end of case analysis for kind {}",
                    x.m.kind
                )))
            }
            Err(Stop::Done) => break,
            Err(Stop::Redispatch) => continue,
            Err(Stop::Fail(e)) => return Err(e),
        }
    }
    if !(x.c.is_proper() && x.c.is_total()) {
        return Err(ExtendError::Improper("final coloring".into()));
    }
    Ok(x.into_trace())
}
