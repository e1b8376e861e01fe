//! Partial edge-colorings and Kempe chains.
//!
//! An [`EdgeColoring`] borrows its [`Graph`] and assigns each edge either
//! nothing or a color in `0..k`. Kempe chains are extracted as snapshots;
//! [`EdgeColoring::swap_in_place`] re-validates a chain against the current
//! colors before recoloring it.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};

pub type Color = u8;

/// Largest palette a [`ColorSet`] can hold.
pub const MAX_COLORS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("color {color} out of range for a {k}-coloring")]
    ColorOutOfRange { color: Color, k: usize },
    #[error("palettes larger than {MAX_COLORS} colors are not supported (asked for {0})")]
    TooManyColors(usize),
    #[error("a Kempe chain needs two distinct colors, got ({0}, {0})")]
    SameColors(Color),
    #[error("edge {0} is not in the graph")]
    NotInGraph(Edge),
    #[error("stale Kempe chain: {0}")]
    StaleChain(String),
    #[error("`{0}` is not an edge key of the form u-v")]
    BadEdgeKey(String),
    #[error("color map is not a permutation of 0..{0}")]
    NotBijection(usize),
}

/// A set of colors as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ColorSet(u64);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub fn full(k: usize) -> Self {
        if k >= 64 {
            ColorSet(u64::MAX)
        } else {
            ColorSet((1u64 << k) - 1)
        }
    }

    pub fn single(c: Color) -> Self {
        ColorSet(1 << c)
    }

    pub fn from_bits(bits: u64) -> Self {
        ColorSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, c: Color) -> bool {
        (c as usize) < 64 && self.0 & (1 << c) != 0
    }

    pub fn insert(&mut self, c: Color) {
        self.0 |= 1 << c;
    }

    pub fn remove(&mut self, c: Color) {
        self.0 &= !(1 << c);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: ColorSet) -> ColorSet {
        ColorSet(self.0 | o.0)
    }

    pub fn intersection(self, o: ColorSet) -> ColorSet {
        ColorSet(self.0 & o.0)
    }

    pub fn difference(self, o: ColorSet) -> ColorSet {
        ColorSet(self.0 & !o.0)
    }

    /// Smallest member.
    pub fn first(self) -> Option<Color> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as Color)
    }

    pub fn iter(self) -> impl Iterator<Item = Color> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let c = bits.trailing_zeros() as Color;
            bits &= bits - 1;
            Some(c)
        })
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        let mut s = ColorSet::EMPTY;
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainShape {
    Path,
    EvenCycle,
}

/// An `(i,j)`-component, stored in walk order.
///
/// For a path, `vertices` runs from one endpoint to the other and
/// `edges[k]` joins `vertices[k]` and `vertices[k + 1]`. For a cycle the
/// first vertex is repeated at the end.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KempeChain {
    pub colors: (Color, Color),
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub shape: ChainShape,
    /// Color of `edges[0]` at extraction time.
    pub first_color: Option<Color>,
}

impl KempeChain {
    pub fn is_trivial(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    /// Both path endpoints (equal for a trivial chain); `None` for cycles.
    pub fn endpoints(&self) -> Option<(Vertex, Vertex)> {
        match self.shape {
            ChainShape::EvenCycle => None,
            ChainShape::Path => Some((self.vertices[0], *self.vertices.last().unwrap())),
        }
    }

    /// For a path having `v` as an endpoint, the opposite endpoint.
    pub fn other_end(&self, v: Vertex) -> Option<Vertex> {
        let (a, b) = self.endpoints()?;
        if a == v {
            Some(b)
        } else if b == v {
            Some(a)
        } else {
            None
        }
    }
}

/// Where a chain end lies relative to a tracked vertex set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainEnd {
    AtVertex(Vertex),
    AtInfinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainEnds {
    Path(ChainEnd, ChainEnd),
    Cycle,
}

/// Classifies the endpoints of `chain` against `tracked`.
pub fn chain_ends(chain: &KempeChain, tracked: &[Vertex]) -> ChainEnds {
    match chain.endpoints() {
        None => ChainEnds::Cycle,
        Some((a, b)) => {
            let end = |x: Vertex| {
                if tracked.contains(&x) {
                    ChainEnd::AtVertex(x)
                } else {
                    ChainEnd::AtInfinity
                }
            };
            ChainEnds::Path(end(a), end(b))
        }
    }
}

/// A partial proper-or-not assignment of colors `0..k` to the edges of a
/// borrowed graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring<'g> {
    graph: &'g Graph,
    k: usize,
    colors: Vec<Option<Color>>,
}

impl fmt::Debug for EdgeColoring<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let assigned: Vec<String> = self
            .graph
            .edges()
            .iter()
            .zip(&self.colors)
            .filter_map(|(e, c)| c.map(|c| format!("{e}:{c}")))
            .collect();
        write!(f, "EdgeColoring(k={}, [{}])", self.k, assigned.join(" "))
    }
}

impl<'g> EdgeColoring<'g> {
    /// The empty assignment.
    pub fn new(graph: &'g Graph, k: usize) -> Result<Self, ColoringError> {
        if k > MAX_COLORS {
            return Err(ColoringError::TooManyColors(k));
        }
        Ok(EdgeColoring {
            graph,
            k,
            colors: vec![None; graph.m()],
        })
    }

    /// Builds a coloring from `(edge, color)` pairs. Properness is not
    /// checked here.
    pub fn from_assignment<I>(graph: &'g Graph, k: usize, pairs: I) -> Result<Self, ColoringError>
    where
        I: IntoIterator<Item = (Edge, Color)>,
    {
        let mut c = Self::new(graph, k)?;
        for (e, color) in pairs {
            c.set(e, Some(color))?;
        }
        Ok(c)
    }

    /// Builds a coloring from a per-edge-index color vector.
    pub fn from_vec(
        graph: &'g Graph,
        k: usize,
        colors: Vec<Option<Color>>,
    ) -> Result<Self, ColoringError> {
        assert_eq!(colors.len(), graph.m(), "one entry per edge");
        let mut c = Self::new(graph, k)?;
        for (idx, col) in colors.into_iter().enumerate() {
            if let Some(x) = col {
                c.check_color(x)?;
            }
            c.colors[idx] = col;
        }
        Ok(c)
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn as_slice(&self) -> &[Option<Color>] {
        &self.colors
    }

    fn check_color(&self, c: Color) -> Result<(), ColoringError> {
        if (c as usize) < self.k {
            Ok(())
        } else {
            Err(ColoringError::ColorOutOfRange {
                color: c,
                k: self.k,
            })
        }
    }

    fn index(&self, e: Edge) -> Result<usize, ColoringError> {
        self.graph
            .edge_index_of(e)
            .ok_or(ColoringError::NotInGraph(e))
    }

    pub fn get(&self, e: Edge) -> Option<Color> {
        self.graph.edge_index_of(e).and_then(|i| self.colors[i])
    }

    pub fn get_index(&self, idx: usize) -> Option<Color> {
        self.colors[idx]
    }

    /// Color of the edge `ab`, if present and colored.
    pub fn color_between(&self, a: Vertex, b: Vertex) -> Option<Color> {
        self.graph.edge_index(a, b).and_then(|i| self.colors[i])
    }

    /// Assigns (or clears) the color of `e` in place.
    pub fn set(&mut self, e: Edge, color: Option<Color>) -> Result<(), ColoringError> {
        let idx = self.index(e)?;
        if let Some(c) = color {
            self.check_color(c)?;
        }
        self.colors[idx] = color;
        Ok(())
    }

    pub fn set_index(&mut self, idx: usize, color: Option<Color>) {
        self.colors[idx] = color;
    }

    /// Colors on assigned edges at `v`.
    pub fn seen(&self, v: Vertex) -> ColorSet {
        self.graph
            .incident(v)
            .iter()
            .filter_map(|&i| self.colors[i])
            .collect()
    }

    /// `{0..k-1}` minus the colors `v` sees.
    pub fn missing_colors(&self, v: Vertex) -> ColorSet {
        ColorSet::full(self.k).difference(self.seen(v))
    }

    pub fn sees(&self, v: Vertex, c: Color) -> bool {
        self.edge_at(v, c).is_some()
    }

    pub fn misses(&self, v: Vertex, c: Color) -> bool {
        !self.sees(v, c)
    }

    /// The edge at `v` colored `c` (the first one, if the coloring is
    /// improper).
    pub fn edge_at(&self, v: Vertex, c: Color) -> Option<Edge> {
        let g = self.graph;
        g.incident(v)
            .iter()
            .find(|&&i| self.colors[i] == Some(c))
            .map(|&i| g.edge(i))
    }

    /// The neighbor of `v` across the edge colored `c`.
    pub fn neighbor_via(&self, v: Vertex, c: Color) -> Option<Vertex> {
        self.edge_at(v, c).map(|e| e.other(v))
    }

    /// Uncolored edges, in index order.
    pub fn uncolored(&self) -> impl Iterator<Item = Edge> + '_ {
        self.graph
            .edges()
            .iter()
            .zip(&self.colors)
            .filter(|(_, c)| c.is_none())
            .map(|(e, _)| *e)
    }

    pub fn colors_used(&self) -> ColorSet {
        self.colors.iter().flatten().copied().collect()
    }

    /// No two assigned edges sharing an endpoint carry the same color.
    pub fn is_proper(&self) -> bool {
        self.graph.vertices().all(|v| {
            let mut seen = ColorSet::EMPTY;
            for &i in self.graph.incident(v) {
                if let Some(c) = self.colors[i] {
                    if seen.contains(c) {
                        return false;
                    }
                    seen.insert(c);
                }
            }
            true
        })
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    /// The `(i,j)`-component containing `v`.
    pub fn kempe_chain(&self, v: Vertex, i: Color, j: Color) -> Result<KempeChain, ColoringError> {
        self.kempe_chain_filtered(v, i, j, |_| true)
    }

    /// The `(i,j)`-component containing `v` in the subgraph of edges accepted
    /// by `allow`.
    pub fn kempe_chain_filtered(
        &self,
        v: Vertex,
        i: Color,
        j: Color,
        allow: impl Fn(Edge) -> bool,
    ) -> Result<KempeChain, ColoringError> {
        self.check_color(i)?;
        self.check_color(j)?;
        if i == j {
            return Err(ColoringError::SameColors(i));
        }
        let step = |x: Vertex, c: Color| -> Option<Edge> {
            let g = self.graph;
            g.incident(x)
                .iter()
                .map(|&idx| (idx, g.edge(idx)))
                .find(|&(idx, e)| self.colors[idx] == Some(c) && allow(e))
                .map(|(_, e)| e)
        };
        let other = |c: Color| if c == i { j } else { i };

        // walk from `start` leaving along color `c`
        let walk = |start: Vertex, c: Color| -> (Vec<Vertex>, Vec<Edge>, bool) {
            let mut verts = vec![start];
            let mut edges = Vec::new();
            let mut cur = start;
            let mut col = c;
            while let Some(e) = step(cur, col) {
                let nxt = e.other(cur);
                edges.push(e);
                verts.push(nxt);
                if nxt == start {
                    return (verts, edges, true);
                }
                cur = nxt;
                col = other(col);
            }
            (verts, edges, false)
        };

        let has_i = step(v, i).is_some();
        let has_j = step(v, j).is_some();
        let (vertices, edges, shape, first_color) = match (has_i, has_j) {
            (false, false) => (vec![v], Vec::new(), ChainShape::Path, None),
            (true, false) => {
                let (vs, es, _) = walk(v, i);
                (vs, es, ChainShape::Path, Some(i))
            }
            (false, true) => {
                let (vs, es, _) = walk(v, j);
                (vs, es, ChainShape::Path, Some(j))
            }
            (true, true) => {
                let (vs, es, closed) = walk(v, i);
                if closed {
                    debug_assert!(es.len() % 2 == 0, "odd Kempe cycle in a proper coloring");
                    (vs, es, ChainShape::EvenCycle, Some(i))
                } else {
                    let (mut back_v, mut back_e, _) = walk(v, j);
                    back_v.reverse();
                    back_e.reverse();
                    back_v.pop();
                    back_v.extend(vs);
                    back_e.extend(es);
                    let first = back_e.first().and_then(|&e| self.get(e));
                    (back_v, back_e, ChainShape::Path, first)
                }
            }
        };
        Ok(KempeChain {
            colors: (i.min(j), i.max(j)),
            vertices,
            edges,
            shape,
            first_color,
        })
    }

    /// Whether `v` and `w` lie in the same `(i,j)`-component.
    pub fn linked(&self, v: Vertex, w: Vertex, i: Color, j: Color) -> Result<bool, ColoringError> {
        if v == w {
            return Ok(true);
        }
        Ok(self.kempe_chain(v, i, j)?.contains_vertex(w))
    }

    /// Checks that `chain` still matches the current colors: edges alternate
    /// its two colors and a path cannot be extended at either end.
    pub fn validate_chain(&self, chain: &KempeChain) -> Result<(), ColoringError> {
        let (a, b) = chain.colors;
        let stale = |why: String| Err(ColoringError::StaleChain(why));
        let Some(first) = chain.first_color else {
            return Ok(());
        };
        for (pos, &e) in chain.edges.iter().enumerate() {
            let want = if pos % 2 == 0 {
                first
            } else if first == a {
                b
            } else {
                a
            };
            match self.graph.edge_index_of(e).map(|i| self.colors[i]) {
                None => return Err(ColoringError::NotInGraph(e)),
                Some(got) if got != Some(want) => {
                    return stale(format!("edge {e} has color {got:?}, chain expects {want}"))
                }
                _ => {}
            }
        }
        if let Some((s, t)) = chain.endpoints() {
            let first_edge = chain.edges[0];
            let last_edge = *chain.edges.last().unwrap();
            for (x, end_edge) in [(s, first_edge), (t, last_edge)] {
                let c = self.get(end_edge).unwrap();
                let other = if c == a { b } else { a };
                if let Some(e) = self.edge_at(x, other) {
                    if !chain.contains_edge(e) {
                        return stale(format!("endpoint {x} also sees {other} on {e}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Recolors `chain` in place, exchanging its two colors.
    pub fn swap_in_place(&mut self, chain: &KempeChain) -> Result<(), ColoringError> {
        self.validate_chain(chain)?;
        let (a, b) = chain.colors;
        for &e in &chain.edges {
            let idx = self.index(e)?;
            self.colors[idx] = match self.colors[idx] {
                Some(c) if c == a => Some(b),
                Some(c) if c == b => Some(a),
                other => other,
            };
        }
        Ok(())
    }

    /// A copy with `chain` recolored.
    pub fn swap(&self, chain: &KempeChain) -> Result<EdgeColoring<'g>, ColoringError> {
        let mut out = self.clone();
        out.swap_in_place(chain)?;
        Ok(out)
    }

    /// Replaces every assigned color `c` by `perm[c]`.
    pub fn apply_color_permutation(
        &self,
        perm: &[Color],
    ) -> Result<EdgeColoring<'g>, ColoringError> {
        check_permutation(perm, self.k)?;
        let mut out = self.clone();
        for c in out.colors.iter_mut().flatten() {
            *c = perm[*c as usize];
        }
        Ok(out)
    }

    /// Assigned colors keyed by `"u-v"` (canonical `u < v`).
    pub fn to_json_map(&self) -> BTreeMap<String, Color> {
        self.graph
            .edges()
            .iter()
            .zip(&self.colors)
            .filter_map(|(e, c)| c.map(|c| (e.to_string(), c)))
            .collect()
    }

    /// Inverse of [`EdgeColoring::to_json_map`].
    pub fn from_json_map(
        graph: &'g Graph,
        k: usize,
        map: &BTreeMap<String, Color>,
    ) -> Result<Self, ColoringError> {
        let mut out = Self::new(graph, k)?;
        for (key, &c) in map {
            let edge = key
                .split_once('-')
                .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
                .and_then(|(a, b)| Edge::try_new(a, b).ok())
                .ok_or_else(|| ColoringError::BadEdgeKey(key.clone()))?;
            out.set(edge, Some(c))?;
        }
        Ok(out)
    }
}

/// Validates that `perm` is a bijection on `0..k`.
pub fn check_permutation(perm: &[Color], k: usize) -> Result<(), ColoringError> {
    if perm.len() != k {
        return Err(ColoringError::NotBijection(k));
    }
    let mut seen = ColorSet::EMPTY;
    for &c in perm {
        if c as usize >= k || seen.contains(c) {
            return Err(ColoringError::NotBijection(k));
        }
        seen.insert(c);
    }
    Ok(())
}

/// Inverse of a permutation of `0..perm.len()`.
pub fn invert_permutation(perm: &[Color]) -> Vec<Color> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p as usize] = i as Color;
    }
    inv
}
