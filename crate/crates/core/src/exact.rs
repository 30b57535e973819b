//! Exact local metric dimension as a minimum hitting set.
//!
//! For every edge `uv` let `D(uv)` be the vertices that see `u` and `v` at
//! different distances; `u` and `v` are always in it. A set is locally
//! resolving exactly when it meets every `D(uv)`: either it contains an
//! endpoint, or it contains a vertex that distinguishes them.
//!
//! Search is iterative deepening on the cardinality with branch and bound.
//! True twins (adjacent vertices with equal closed neighborhoods) are
//! distinguished only by themselves, and swapping two of them is an
//! automorphism, so all but the largest member of each twin class are
//! fixed into the solution before searching.

use crate::distance::distance_matrix;
use crate::graph::{Graph, Vertex};
use serde::Serialize;
use thiserror::Error;

pub const DEFAULT_EXACT_LIMIT: usize = 16;
/// Sets are `u64` masks.
pub const MAX_EXACT_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("graph has {n} vertices, above the exact-solver limit of {limit}")]
    SizeLimit { n: usize, limit: usize },
    #[error("exact-solver limit {0} exceeds the supported maximum of {MAX_EXACT_LIMIT}")]
    LimitTooLarge(usize),
    #[error("input graph is not connected")]
    Disconnected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactResult {
    pub dimension: usize,
    /// A minimum local resolving set, sorted.
    pub witness: Vec<Vertex>,
    /// Vertices fixed by twin reduction (a subset of `witness`).
    pub forced: Vec<Vertex>,
}

pub fn exact_local_metric_dimension(g: &Graph) -> Result<ExactResult, ExactError> {
    exact_with_limit(g, DEFAULT_EXACT_LIMIT)
}

pub fn exact_with_limit(g: &Graph, limit: usize) -> Result<ExactResult, ExactError> {
    if limit > MAX_EXACT_LIMIT {
        return Err(ExactError::LimitTooLarge(limit));
    }
    if g.n() > limit {
        return Err(ExactError::SizeLimit { n: g.n(), limit });
    }
    if !g.is_connected() {
        return Err(ExactError::Disconnected);
    }
    let family = distinguisher_family(g);
    let forced = twin_forced(g);
    let forced_mask = forced.iter().fold(0u64, |m, &v| m | 1 << v);
    let remaining: Vec<u64> = family
        .into_iter()
        .filter(|&s| s & forced_mask == 0)
        .collect();
    let chosen = min_hitting_set(&remaining) | forced_mask;
    let witness: Vec<Vertex> = (0..g.n()).filter(|&v| chosen >> v & 1 == 1).collect();
    Ok(ExactResult {
        dimension: witness.len(),
        witness,
        forced,
    })
}

/// `D(uv)` for every edge, deduplicated, with supersets dropped.
pub fn distinguisher_family(g: &Graph) -> Vec<u64> {
    let dist = distance_matrix(g);
    let mut sets: Vec<u64> = g
        .edges()
        .map(|(u, v)| {
            g.vertices()
                .filter(|&w| dist[w][u] != dist[w][v])
                .fold(0u64, |m, w| m | 1 << w)
        })
        .collect();
    sets.sort_unstable_by_key(|s| (s.count_ones(), *s));
    sets.dedup();
    let mut minimal: Vec<u64> = Vec::with_capacity(sets.len());
    for s in sets {
        if !minimal.iter().any(|&t| t & !s == 0) {
            minimal.push(s);
        }
    }
    minimal
}

/// Every true-twin class but its largest member.
fn twin_forced(g: &Graph) -> Vec<Vertex> {
    let closed = |v: Vertex| {
        let mut c = g.neighbors(v).to_vec();
        c.push(v);
        c.sort_unstable();
        c
    };
    let mut taken = vec![false; g.n()];
    let mut forced = Vec::new();
    for v in g.vertices() {
        if taken[v] {
            continue;
        }
        let cv = closed(v);
        let class: Vec<Vertex> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| w > v && !taken[w] && closed(w) == cv)
            .collect();
        if class.is_empty() {
            continue;
        }
        taken[v] = true;
        forced.push(v);
        for &w in &class[..class.len() - 1] {
            taken[w] = true;
            forced.push(w);
        }
        taken[*class.last().unwrap()] = true;
    }
    forced.sort_unstable();
    forced
}

/// Minimum hitting set of `sets` by iterative deepening. Returns the mask.
pub fn min_hitting_set(sets: &[u64]) -> u64 {
    if sets.is_empty() {
        return 0;
    }
    let upper = greedy_hitting_set(sets);
    let lower = disjoint_packing(sets, 0, !0);
    for k in lower..upper.count_ones() as usize {
        let mut search = Search { sets, budget: k };
        if let Some(found) = search.run(0, 0, 0) {
            return found;
        }
    }
    upper
}

/// Picks the element hitting most unhit sets until all are hit.
fn greedy_hitting_set(sets: &[u64]) -> u64 {
    let mut chosen = 0u64;
    loop {
        let unhit: Vec<u64> = sets.iter().copied().filter(|s| s & chosen == 0).collect();
        if unhit.is_empty() {
            return chosen;
        }
        let best = (0..64)
            .max_by_key(|&e| {
                (
                    unhit.iter().filter(|&&s| s >> e & 1 == 1).count(),
                    std::cmp::Reverse(e),
                )
            })
            .unwrap();
        chosen |= 1 << best;
    }
}

/// Lower bound: number of pairwise disjoint unhit sets, restricted to
/// `allowed` elements, picked greedily smallest first.
fn disjoint_packing(sets: &[u64], chosen: u64, allowed: u64) -> usize {
    let mut unhit: Vec<u64> = sets
        .iter()
        .filter(|&&s| s & chosen == 0)
        .map(|&s| s & allowed)
        .collect();
    unhit.sort_unstable_by_key(|s| s.count_ones());
    let mut used = 0u64;
    let mut count = 0;
    for s in unhit {
        if s & used == 0 {
            used |= s;
            count += 1;
        }
    }
    count
}

struct Search<'a> {
    sets: &'a [u64],
    budget: usize,
}

impl Search<'_> {
    /// `forbidden` holds elements already fully explored at an ancestor.
    fn run(&mut self, chosen: u64, size: usize, forbidden: u64) -> Option<u64> {
        let allowed = !forbidden;
        let unhit: Vec<u64> = self
            .sets
            .iter()
            .copied()
            .filter(|s| s & chosen == 0)
            .collect();
        if unhit.is_empty() {
            return Some(chosen);
        }
        if size >= self.budget {
            return None;
        }
        if unhit.iter().any(|s| s & allowed == 0) {
            return None;
        }
        if size + disjoint_packing(self.sets, chosen, allowed) > self.budget {
            return None;
        }
        let branch = unhit
            .iter()
            .copied()
            .min_by_key(|s| ((s & allowed).count_ones(), *s))
            .unwrap()
            & allowed;
        let mut elements: Vec<u32> = (0..64).filter(|&e| branch >> e & 1 == 1).collect();
        elements.sort_by_key(|&e| {
            (
                std::cmp::Reverse(unhit.iter().filter(|&&s| s >> e & 1 == 1).count()),
                e,
            )
        });
        let mut forbidden = forbidden;
        for e in elements {
            if let Some(found) = self.run(chosen | 1 << e, size + 1, forbidden) {
                return Some(found);
            }
            forbidden |= 1 << e;
        }
        None
    }
}
