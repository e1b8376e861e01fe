//! Extension procedures: turn a proper 4-coloring of `G − e` into one of
//! `G`, where `e` is the designated edge of a located configuration.
//!
//! Each configuration kind has its own case analysis (`kind_a`, `kind_b`,
//! `kind_c`). They share the move primitives in `engine`, and every move is
//! recorded in an [`ExtensionTrace`] that can be replayed and audited.
//! [`kempe_search_extend`] is an independent breadth-first cross-check.

mod engine;
mod kind_a;
mod kind_b;
mod kind_c;

use std::collections::{HashMap, VecDeque};

use serde_json::{json, Value};
use thiserror::Error;

use crate::coloring::{check_permutation, Color, ColorSet, EdgeColoring};
use crate::graph::{Edge, Graph, Vertex};
use crate::structure::{ConfigKind, ConfigMatch};

/// Colors available to every procedure here.
pub const K: usize = 4;

/// Maximum number of Kempe swaps one extension may use.
pub const SWAP_BUDGET: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtendError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("case analysis fell through at {0}")]
    FallThrough(String),
    #[error("swap budget of {SWAP_BUDGET} exceeded at {0}")]
    SwapBudget(String),
    #[error("re-dispatch loop at {0}")]
    Loop(String),
    #[error("move at {0} left an improper coloring")]
    Improper(String),
    #[error("trace replay failed at step {step}: {reason}")]
    Replay { step: usize, reason: String },
}

/// One recorded move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Action {
    /// Exchange colors `i` and `j` on `edges`, the `(i,j)`-chain at `at` in
    /// the graph without `excluded`, then apply `then`.
    Swap {
        at: Vertex,
        colors: (Color, Color),
        excluded: Vec<Edge>,
        edges: Vec<Edge>,
        then: Vec<(Edge, Option<Color>)>,
    },
    Assign(Vec<(Edge, Option<Color>)>),
    /// Rename every color `c` to `perm[c]`.
    Permute(Vec<Color>),
    /// The procedure continues with a different role assignment.
    Roles(ConfigMatch),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub label: String,
    pub action: Action,
}

/// The audited history of one extension.
#[derive(Debug, Clone)]
pub struct ExtensionTrace<'g> {
    pub config: ConfigMatch,
    pub initial: EdgeColoring<'g>,
    pub steps: Vec<TraceStep>,
    pub final_coloring: EdgeColoring<'g>,
}

impl<'g> ExtensionTrace<'g> {
    pub fn swap_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s.action, Action::Swap { .. }))
            .count()
    }

    /// Re-applies every step to `initial`, checking chain locality and
    /// properness after each one, and compares with `final_coloring`.
    pub fn replay(&self) -> Result<EdgeColoring<'g>, ExtendError> {
        let g = self.initial.graph();
        let mut c = self.initial.clone();
        let fail = |step: usize, reason: String| ExtendError::Replay { step, reason };
        for (n, s) in self.steps.iter().enumerate() {
            match &s.action {
                Action::Swap {
                    at,
                    colors: (i, j),
                    excluded,
                    edges,
                    then,
                } => {
                    let chain = c
                        .kempe_chain_filtered(*at, *i, *j, |e| !excluded.contains(&e))
                        .map_err(|e| fail(n, e.to_string()))?;
                    let mut want = chain.edges.clone();
                    let mut got = edges.clone();
                    want.sort();
                    got.sort();
                    if want != got {
                        return Err(fail(
                            n,
                            format!("edges are not the ({i},{j})-chain at {at}"),
                        ));
                    }
                    engine::flip(&mut c, edges, *i, *j);
                    for &(e, col) in then {
                        c.set(e, col).map_err(|er| fail(n, er.to_string()))?;
                    }
                }
                Action::Assign(list) => {
                    for &(e, col) in list {
                        c.set(e, col).map_err(|er| fail(n, er.to_string()))?;
                    }
                }
                Action::Permute(perm) => {
                    c = c
                        .apply_color_permutation(perm)
                        .map_err(|er| fail(n, er.to_string()))?;
                }
                Action::Roles(m) => {
                    m.validate(g).map_err(|er| fail(n, er.to_string()))?;
                }
            }
            if !c.is_proper() {
                return Err(fail(n, "coloring became improper".into()));
            }
        }
        if c != self.final_coloring {
            return Err(fail(
                self.steps.len(),
                "replay does not reproduce the final coloring".into(),
            ));
        }
        Ok(c)
    }

    pub fn to_json(&self) -> Value {
        let pairs = |list: &[(Edge, Option<Color>)]| -> Value {
            list.iter()
                .map(|(e, c)| json!([e.to_string(), c]))
                .collect::<Vec<_>>()
                .into()
        };
        let steps: Vec<Value> = self
            .steps
            .iter()
            .map(|s| {
                let action = match &s.action {
                    Action::Swap {
                        at,
                        colors,
                        excluded,
                        edges,
                        then,
                    } => json!({
                        "swap": {
                            "at": at,
                            "colors": [colors.0, colors.1],
                            "excluded": excluded.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                            "edges": edges.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                            "then": pairs(then),
                        }
                    }),
                    Action::Assign(list) => json!({ "assign": pairs(list) }),
                    Action::Permute(p) => json!({ "permute": p }),
                    Action::Roles(m) => json!({ "roles": m.to_json() }),
                };
                json!({ "label": s.label, "action": action })
            })
            .collect();
        json!({
            "config": self.config.to_json(),
            "steps": steps,
            "final": self.final_coloring.to_json_map(),
        })
    }
}

/// Checks the common preconditions: valid match, proper 4-coloring that is
/// total on `G − e` and leaves `e` uncolored.
pub fn check_input(g: &Graph, m: &ConfigMatch, c: &EdgeColoring<'_>) -> Result<(), ExtendError> {
    let pre = |s: String| Err(ExtendError::Precondition(s));
    if !std::ptr::eq(c.graph(), g) && c.graph() != g {
        return pre("coloring belongs to a different graph".into());
    }
    m.validate(g)
        .map_err(|e| ExtendError::Precondition(e.to_string()))?;
    if c.k() != K {
        return pre(format!(
            "coloring palette has {} colors, expected {K}",
            c.k()
        ));
    }
    let e = m.e();
    if c.get(e).is_some() {
        return pre(format!("designated edge {e} is colored"));
    }
    if let Some(f) = c.uncolored().find(|&f| f != e) {
        return pre(format!("edge {f} is uncolored"));
    }
    if !c.is_proper() {
        return pre("coloring is not proper".into());
    }
    Ok(())
}

/// The color renaming that puts the endpoints of `e` into the entry
/// convention: the degree-3 endpoint sees 0 and 1, the degree-4 endpoint
/// sees 0, 2 and 3.
///
/// Fails when the endpoints already share a missing color, since `e` can
/// then be colored directly.
pub fn normalize<'g>(
    m: &ConfigMatch,
    c: &EdgeColoring<'g>,
) -> Result<(EdgeColoring<'g>, Vec<Color>), ExtendError> {
    let g = c.graph();
    check_input(g, m, c)?;
    let (tip, hub) = engine::endpoints(g, m);
    let perm = entry_permutation(c, tip, hub)?;
    let out = c.apply_color_permutation(&perm).expect("valid permutation");
    Ok((out, perm))
}

pub(crate) fn entry_permutation(
    c: &EdgeColoring<'_>,
    tip: Vertex,
    hub: Vertex,
) -> Result<Vec<Color>, ExtendError> {
    let mt = c.missing_colors(tip);
    let mh = c.missing_colors(hub);
    if !mt.intersection(mh).is_empty() {
        return Err(ExtendError::Precondition(format!(
            "endpoints {tip} and {hub} share a missing color"
        )));
    }
    if mt.len() != 2 || mh.len() != 1 {
        return Err(ExtendError::Precondition(
            "endpoint degrees do not match the configuration".into(),
        ));
    }
    let r = mh.first().unwrap();
    let s = ColorSet::full(K)
        .difference(mt)
        .difference(mh)
        .first()
        .unwrap();
    let mut missing = mt.iter();
    let (p, q) = (missing.next().unwrap(), missing.next().unwrap());
    let mut perm = vec![0 as Color; K];
    perm[s as usize] = 0;
    perm[r as usize] = 1;
    perm[p as usize] = 2;
    perm[q as usize] = 3;
    check_permutation(&perm, K).expect("four distinct colors");
    Ok(perm)
}

/// Whether `e` can be colored directly or after a single Kempe swap at its
/// degree-3 end. Inputs where this fails exercise the case analysis.
pub fn finishes_quickly(m: &ConfigMatch, c: &EdgeColoring<'_>) -> bool {
    let view = engine::View { g: c.graph(), m, c };
    engine::quick_finish(&view).is_some()
}

/// Extends through the procedure for `m.kind`.
pub fn extend<'g>(
    g: &'g Graph,
    m: &ConfigMatch,
    c: &EdgeColoring<'g>,
) -> Result<ExtensionTrace<'g>, ExtendError> {
    check_input(g, m, c)?;
    engine::run(g, m.clone(), c.clone())
}

fn extend_kind<'g>(
    kind: ConfigKind,
    g: &'g Graph,
    m: &ConfigMatch,
    c: &EdgeColoring<'g>,
) -> Result<ExtensionTrace<'g>, ExtendError> {
    if m.kind != kind {
        return Err(ExtendError::Precondition(format!(
            "expected a kind {kind} match, got {}",
            m.kind
        )));
    }
    extend(g, m, c)
}

pub fn extend_a<'g>(
    g: &'g Graph,
    m: &ConfigMatch,
    c: &EdgeColoring<'g>,
) -> Result<ExtensionTrace<'g>, ExtendError> {
    extend_kind(ConfigKind::A, g, m, c)
}

pub fn extend_b<'g>(
    g: &'g Graph,
    m: &ConfigMatch,
    c: &EdgeColoring<'g>,
) -> Result<ExtensionTrace<'g>, ExtendError> {
    extend_kind(ConfigKind::B, g, m, c)
}

pub fn extend_c<'g>(
    g: &'g Graph,
    m: &ConfigMatch,
    c: &EdgeColoring<'g>,
) -> Result<ExtensionTrace<'g>, ExtendError> {
    extend_kind(ConfigKind::C, g, m, c)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchResult<'g> {
    Extended {
        coloring: EdgeColoring<'g>,
        swaps: usize,
    },
    Exhausted {
        states: usize,
    },
}

/// Breadth-first search over colorings reachable by Kempe swaps at vertices
/// of `tracked`, until both ends of `e` miss a common color; that color is
/// then put on `e`. `max_states` bounds the number of distinct colorings
/// visited.
pub fn kempe_search_extend<'g>(
    g: &'g Graph,
    e: Edge,
    c: &EdgeColoring<'g>,
    tracked: &[Vertex],
    max_states: usize,
) -> Result<SearchResult<'g>, ExtendError> {
    let pre = |s: &str| Err(ExtendError::Precondition(s.into()));
    if !g.has_edge(e.u(), e.v()) {
        return pre("edge not in graph");
    }
    if c.get(e).is_some() || c.uncolored().any(|f| f != e) || !c.is_proper() || c.k() != K {
        return pre("coloring must be a proper total 4-coloring of G - e");
    }
    let (a, b) = e.endpoints();
    let finish = |col: &EdgeColoring<'g>| {
        col.missing_colors(a)
            .intersection(col.missing_colors(b))
            .first()
    };
    let mut depth: HashMap<Vec<Option<Color>>, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    depth.insert(c.as_slice().to_vec(), 0);
    queue.push_back(c.clone());
    while let Some(cur) = queue.pop_front() {
        let d = depth[cur.as_slice()];
        if let Some(col) = finish(&cur) {
            let mut out = cur;
            out.set(e, Some(col)).expect("edge in graph");
            return Ok(SearchResult::Extended {
                coloring: out,
                swaps: d,
            });
        }
        for &v in tracked {
            for i in 0..K as Color {
                for j in i + 1..K as Color {
                    let chain = cur.kempe_chain(v, i, j).expect("valid colors");
                    if chain.is_trivial() {
                        continue;
                    }
                    let next = cur.swap(&chain).expect("fresh chain");
                    if depth.contains_key(next.as_slice()) {
                        continue;
                    }
                    if depth.len() >= max_states {
                        return Ok(SearchResult::Exhausted {
                            states: depth.len(),
                        });
                    }
                    depth.insert(next.as_slice().to_vec(), d + 1);
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(SearchResult::Exhausted {
        states: depth.len(),
    })
}
