//! Membership predicates for the degree-constrained classes and the three
//! reducible configurations, with a constructive locator and a brute-force
//! enumerator.

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};

/// `Δ(g) = k` and every `k`-vertex has at most two `k`-neighbors.
pub fn in_g_k(g: &Graph, k: usize) -> bool {
    g.max_degree() == k
        && g.vertices()
            .filter(|&v| g.degree(v) == k)
            .all(|v| g.max_degree_neighbors(v) <= 2)
}

/// `Δ = k`, `δ = k − 1`, the core is a disjoint union of cycles and every
/// vertex has a neighbor of degree `k`.
pub fn in_h_k(g: &Graph, k: usize) -> bool {
    if k == 0 || g.n() == 0 || g.max_degree() != k || g.min_degree() != k - 1 {
        return false;
    }
    g.vertices().all(|v| {
        let heavy = g.max_degree_neighbors(v);
        heavy >= 1 && (g.degree(v) != k || heavy == 2)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConfigKind {
    A,
    B,
    C,
}

struct Pattern {
    roles: &'static [char],
    degrees: &'static [usize],
    // the first edge is the designated edge e
    edges: &'static [(usize, usize)],
    // search order; each role after the first touches an earlier one
    order: &'static [usize],
    symmetries: &'static [&'static [usize]],
}

const PATTERN_A: Pattern = Pattern {
    roles: &['v', 'z', 'w', 'x', 'y'],
    degrees: &[4, 3, 4, 3, 3],
    edges: &[(0, 1), (0, 2), (0, 3), (2, 3), (2, 4)],
    order: &[0, 1, 2, 3, 4],
    symmetries: &[&[0, 1, 2, 3, 4]],
};

const PATTERN_B: Pattern = Pattern {
    roles: &['u', 'v', 'w', 'x', 'y', 'z'],
    degrees: &[3, 4, 3, 4, 4, 3],
    edges: &[(0, 3), (3, 2), (1, 0), (1, 2), (3, 4), (4, 5)],
    order: &[3, 0, 2, 1, 4, 5],
    symmetries: &[&[0, 1, 2, 3, 4, 5]],
};

const PATTERN_C: Pattern = Pattern {
    roles: &['s', 't', 'u', 'v', 'w', 'x', 'y', 'z'],
    degrees: &[4, 3, 3, 4, 4, 3, 3, 3],
    edges: &[(0, 1), (0, 2), (0, 3), (0, 4), (3, 5), (3, 6), (4, 7)],
    order: &[0, 1, 2, 3, 4, 5, 6, 7],
    symmetries: &[&[0, 1, 2, 3, 4, 5, 6, 7], &[0, 1, 2, 3, 4, 6, 5, 7]],
};

impl ConfigKind {
    pub const ALL: [ConfigKind; 3] = [ConfigKind::A, ConfigKind::B, ConfigKind::C];

    fn pattern(self) -> &'static Pattern {
        match self {
            ConfigKind::A => &PATTERN_A,
            ConfigKind::B => &PATTERN_B,
            ConfigKind::C => &PATTERN_C,
        }
    }

    pub fn role_names(self) -> &'static [char] {
        self.pattern().roles
    }

    /// Degree in the host graph required of each role.
    pub fn role_degrees(self) -> &'static [usize] {
        self.pattern().degrees
    }

    /// Configuration edges as role-index pairs; the first is `e`.
    pub fn role_edges(self) -> &'static [(usize, usize)] {
        self.pattern().edges
    }

    /// Role permutations mapping the pattern onto itself, identity first.
    pub fn role_symmetries(self) -> &'static [&'static [usize]] {
        self.pattern().symmetries
    }

    pub fn role_index(self, name: char) -> Option<usize> {
        self.role_names().iter().position(|&r| r == name)
    }
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConfigKind::A => "A",
            ConfigKind::B => "B",
            ConfigKind::C => "C",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is not in H_4")]
    NotInH4,
    #[error("graph is K5-e, which contains no configuration")]
    IsK5MinusE,
    #[error("invalid configuration match: {0}")]
    InvalidMatch(String),
    #[error("no configuration found at vertex {0}")]
    NoMatch(Vertex),
}

/// One embedding of a configuration: `roles[i]` is the vertex playing
/// `kind.role_names()[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConfigMatch {
    pub kind: ConfigKind,
    pub roles: Vec<Vertex>,
}

impl ConfigMatch {
    /// Builds a match from `(role name, vertex)` pairs in any order.
    pub fn from_named(kind: ConfigKind, named: &[(char, Vertex)]) -> Result<Self, StructureError> {
        let names = kind.role_names();
        let mut roles = vec![usize::MAX; names.len()];
        for &(r, v) in named {
            let i = kind.role_index(r).ok_or_else(|| {
                StructureError::InvalidMatch(format!("unknown role {r} for kind {kind}"))
            })?;
            roles[i] = v;
        }
        if let Some(i) = roles.iter().position(|&v| v == usize::MAX) {
            return Err(StructureError::InvalidMatch(format!(
                "role {} unassigned",
                names[i]
            )));
        }
        Ok(ConfigMatch { kind, roles })
    }

    pub fn role(&self, name: char) -> Vertex {
        self.roles[self.kind.role_index(name).expect("role of this kind")]
    }

    /// The designated edge whose removal the extension procedures undo.
    pub fn e(&self) -> Edge {
        let (a, b) = self.kind.role_edges()[0];
        Edge::new(self.roles[a], self.roles[b])
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.kind
            .role_edges()
            .iter()
            .map(|&(a, b)| Edge::new(self.roles[a], self.roles[b]))
            .collect()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.roles
    }

    /// Applies a role permutation from [`ConfigKind::role_symmetries`].
    pub fn permuted(&self, perm: &[usize]) -> ConfigMatch {
        ConfigMatch {
            kind: self.kind,
            roles: perm.iter().map(|&i| self.roles[i]).collect(),
        }
    }

    /// Distinct roles, exact degree stamps and all configuration edges present.
    pub fn validate(&self, g: &Graph) -> Result<(), StructureError> {
        let bad = |msg: String| Err(StructureError::InvalidMatch(msg));
        let names = self.kind.role_names();
        if self.roles.len() != names.len() {
            return bad(format!("kind {} needs {} roles", self.kind, names.len()));
        }
        for (i, &v) in self.roles.iter().enumerate() {
            if v >= g.n() {
                return bad(format!("role {} = {v} out of range", names[i]));
            }
            if self.roles[..i].contains(&v) {
                return bad(format!("vertex {v} plays two roles"));
            }
            if g.degree(v) != self.kind.role_degrees()[i] {
                return bad(format!(
                    "role {} = {v} has degree {}, expected {}",
                    names[i],
                    g.degree(v),
                    self.kind.role_degrees()[i]
                ));
            }
        }
        for e in self.edges() {
            if !g.has_edge(e.u(), e.v()) {
                return bad(format!("edge {e} missing"));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let roles: serde_json::Map<String, Value> = self
            .kind
            .role_names()
            .iter()
            .zip(&self.roles)
            .map(|(r, &v)| (r.to_string(), json!(v)))
            .collect();
        json!({
            "kind": self.kind.to_string(),
            "roles": roles,
            "e": self.e().to_string(),
        })
    }
}

impl fmt::Display for ConfigMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.kind)?;
        for (i, (r, v)) in self.kind.role_names().iter().zip(&self.roles).enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{r}={v}")?;
        }
        f.write_str("]")
    }
}

fn split_neighbors(g: &Graph, v: Vertex) -> (Vec<Vertex>, Vec<Vertex>) {
    g.neighbors(v).iter().partition(|&&w| g.degree(w) == 3)
}

/// Locates a configuration by following the case analysis at the first
/// 4-vertex.
pub fn find_configuration(g: &Graph) -> Result<ConfigMatch, StructureError> {
    check_locator_input(g)?;
    let probe = g
        .vertices()
        .find(|&v| g.degree(v) == 4)
        .expect("H_4 has 4-vertices");
    find_configuration_at(g, probe)
}

fn check_locator_input(g: &Graph) -> Result<(), StructureError> {
    if !g.is_connected() {
        return Err(StructureError::NotConnected);
    }
    if !in_h_k(g, 4) {
        return Err(StructureError::NotInH4);
    }
    if g.is_k5_minus_e() {
        return Err(StructureError::IsK5MinusE);
    }
    Ok(())
}

/// [`find_configuration`] with a chosen 4-vertex as the probe.
pub fn find_configuration_at(g: &Graph, probe: Vertex) -> Result<ConfigMatch, StructureError> {
    check_locator_input(g)?;
    if probe >= g.n() || g.degree(probe) != 4 {
        return Err(StructureError::InvalidMatch(format!(
            "probe {probe} is not a 4-vertex"
        )));
    }
    let m = locate(g, probe).ok_or(StructureError::NoMatch(probe))?;
    m.validate(g)?;
    Ok(m)
}

fn locate(g: &Graph, p: Vertex) -> Option<ConfigMatch> {
    use ConfigKind::*;
    let (threes, fours) = split_neighbors(g, p);
    if threes.len() != 2 || fours.len() != 2 {
        return None;
    }
    let other = |list: &[Vertex], x: Vertex| *list.iter().find(|&&y| y != x).unwrap();

    let chord = threes
        .iter()
        .flat_map(|&a| fours.iter().map(move |&b| (a, b)))
        .find(|&(a, b)| g.has_edge(a, b));

    if let Some((w2, w3)) = chord {
        let w1 = other(&threes, w2);
        let w4 = other(&fours, w3);
        let (w3_threes, _) = split_neighbors(g, w3);
        let y = other(&w3_threes, w2);
        if y != w1 {
            return ConfigMatch::from_named(
                A,
                &[('v', p), ('z', w1), ('w', w3), ('x', w2), ('y', y)],
            )
            .ok();
        }
        let (w4_threes, w4_fours) = split_neighbors(g, w4);
        if let Some(&zz) = w4_threes.iter().find(|&&t| t != w1 && t != w2) {
            return ConfigMatch::from_named(
                B,
                &[
                    ('x', p),
                    ('u', w1),
                    ('w', w2),
                    ('v', w3),
                    ('y', w4),
                    ('z', zz),
                ],
            )
            .ok();
        }
        if g.has_edge(w3, w4) {
            // only K5-e closes up here, and it was excluded
            return None;
        }
        let x2 = *w4_fours.iter().find(|&&f| f != p && f != w3)?;
        let (x2_threes, _) = split_neighbors(g, x2);
        let zz = *x2_threes.iter().find(|&&t| t != w1 && t != w2)?;
        return ConfigMatch::from_named(
            B,
            &[
                ('x', w4),
                ('u', w1),
                ('w', w2),
                ('v', p),
                ('y', x2),
                ('z', zz),
            ],
        )
        .ok();
    }

    let (w1, w2) = (threes[0], threes[1]);
    let (w3, w4) = (fours[0], fours[1]);
    let (t3, _) = split_neighbors(g, w3);
    let (t4, _) = split_neighbors(g, w4);
    let common: Vec<Vertex> = t3.iter().copied().filter(|a| t4.contains(a)).collect();
    if common.len() <= 1 {
        let z = *t4.iter().find(|a| !t3.contains(a))?;
        ConfigMatch::from_named(
            C,
            &[
                ('s', p),
                ('t', w1),
                ('u', w2),
                ('v', w3),
                ('x', t3[0]),
                ('y', t3[1]),
                ('w', w4),
                ('z', z),
            ],
        )
        .ok()
    } else {
        ConfigMatch::from_named(
            B,
            &[
                ('u', common[0]),
                ('w', common[1]),
                ('v', w3),
                ('x', w4),
                ('y', p),
                ('z', w1),
            ],
        )
        .ok()
    }
}

/// Every embedding of every configuration (subgraph, not necessarily
/// induced, exact degree stamps), by brute-force role assignment.
pub fn enumerate_configurations(g: &Graph) -> Vec<ConfigMatch> {
    let mut out = Vec::new();
    for kind in ConfigKind::ALL {
        enumerate_kind(g, kind, &mut out);
    }
    out
}

pub fn enumerate_kind(g: &Graph, kind: ConfigKind, out: &mut Vec<ConfigMatch>) {
    let pat = kind.pattern();
    let mut roles = vec![usize::MAX; pat.roles.len()];
    for v in g.vertices() {
        if g.degree(v) == pat.degrees[pat.order[0]] {
            roles[pat.order[0]] = v;
            extend_embedding(g, kind, 1, &mut roles, out);
        }
    }
}

fn extend_embedding(
    g: &Graph,
    kind: ConfigKind,
    depth: usize,
    roles: &mut Vec<Vertex>,
    out: &mut Vec<ConfigMatch>,
) {
    let pat = kind.pattern();
    if depth == pat.order.len() {
        out.push(ConfigMatch {
            kind,
            roles: roles.clone(),
        });
        return;
    }
    let r = pat.order[depth];
    let placed = &pat.order[..depth];
    let links: Vec<usize> = pat
        .edges
        .iter()
        .filter_map(|&(a, b)| {
            if a == r && placed.contains(&b) {
                Some(b)
            } else if b == r && placed.contains(&a) {
                Some(a)
            } else {
                None
            }
        })
        .collect();
    let anchor = roles[*links
        .first()
        .expect("search order keeps the pattern connected")];
    for &c in g.neighbors(anchor) {
        if g.degree(c) != pat.degrees[r]
            || placed.iter().any(|&q| roles[q] == c)
            || !links.iter().all(|&q| g.has_edge(roles[q], c))
        {
            continue;
        }
        roles[r] = c;
        extend_embedding(g, kind, depth + 1, roles, out);
    }
    roles[r] = usize::MAX;
}
