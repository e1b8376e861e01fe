//! Random members of the class with a 2-regular core, `δ = 3` and `Δ = 4`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, GraphBuilder, Vertex};
use crate::structure::in_h_k;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("no instance exists on {0} vertices")]
    NoSuchOrder(usize),
    #[error("no valid instance on {n} vertices after {tries} attempts (seed {seed})")]
    RetriesExhausted { n: usize, seed: u64, tries: usize },
}

const MAX_TRIES: usize = 2000;

/// Orders `n4` of degree-4 vertices that admit an instance on `n` vertices.
///
/// Each 4-vertex sends two edges to 3-vertices and each 3-vertex receives
/// between one and three of them, so `n3 ≤ 2·n4 ≤ 3·n3`; the core needs at
/// least three vertices and the degree sum forces `n3` even.
pub fn feasible_heavy_counts(n: usize) -> Vec<usize> {
    (3..n)
        .filter(|&n4| {
            let n3 = n - n4;
            n3.is_multiple_of(2) && n3 <= 2 * n4 && 2 * n4 <= 3 * n3
        })
        .collect()
}

/// Uniformly random composition of `k` into parts of size at least 3.
fn cycle_lengths(k: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut count = vec![0u128; k + 1];
    count[0] = 1;
    for t in 3..=k {
        count[t] = (3..=t).map(|p| count[t - p]).sum();
    }
    let mut out = Vec::new();
    let mut left = k;
    while left > 0 {
        let mut pick = rng.gen_range(0..count[left]);
        for p in 3..=left {
            if pick < count[left - p] {
                out.push(p);
                left -= p;
                break;
            }
            pick -= count[left - p];
        }
    }
    out
}

fn attempt(n: usize, n4: usize, rng: &mut ChaCha8Rng) -> Option<Graph> {
    let n3 = n - n4;
    let mut b = GraphBuilder::new(n);
    // vertices 0..n4 have degree 4
    let mut start = 0;
    for len in cycle_lengths(n4, rng) {
        for i in 0..len {
            b.add_edge(start + i, start + (i + 1) % len).ok()?;
        }
        start += len;
    }
    let mut heavy = vec![1usize; n3];
    let mut extra = 2 * n4 - n3;
    while extra > 0 {
        let i = rng.gen_range(0..n3);
        if heavy[i] < 3 {
            heavy[i] += 1;
            extra -= 1;
        }
    }
    let mut four: Vec<Vertex> = (0..n4).flat_map(|v| [v, v]).collect();
    let mut three: Vec<Vertex> = (0..n3)
        .flat_map(|i| std::iter::repeat_n(n4 + i, heavy[i]))
        .collect();
    four.shuffle(rng);
    three.shuffle(rng);
    for (&a, &c) in four.iter().zip(&three) {
        if b.has_edge(a, c) {
            return None;
        }
        b.add_edge(a, c).ok()?;
    }
    let mut light: Vec<Vertex> = (0..n3)
        .flat_map(|i| std::iter::repeat_n(n4 + i, 3 - heavy[i]))
        .collect();
    light.shuffle(rng);
    for pair in light.chunks(2) {
        let (a, c) = (pair[0], pair[1]);
        if a == c || b.has_edge(a, c) {
            return None;
        }
        b.add_edge(a, c).ok()?;
    }
    let g = b.build();
    let mut labels: Vec<Vertex> = (0..n).collect();
    labels.shuffle(rng);
    let g = g.relabel(&labels).ok()?;
    (g.is_connected() && in_h_k(&g, 4)).then_some(g)
}

/// A connected random member on `n` vertices, determined by `seed`.
///
/// The number of 4-vertices is uniform over the feasible orders, the core
/// cycle lengths are a uniform composition, and the edges between the core
/// and the 3-vertices and among the 3-vertices come from random stub
/// matchings, resampled until the result is simple and connected.
pub fn random_h4(n: usize, seed: u64) -> Result<Graph, GenError> {
    let orders = feasible_heavy_counts(n);
    if n < 5 || orders.is_empty() {
        return Err(GenError::NoSuchOrder(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_TRIES {
        let n4 = *orders.choose(&mut rng).expect("non-empty");
        if let Some(g) = attempt(n, n4, &mut rng) {
            return Ok(g);
        }
    }
    Err(GenError::RetriesExhausted {
        n,
        seed,
        tries: MAX_TRIES,
    })
}
