//! Local resolving set checks with per-edge witnesses.

use crate::distance::{bfs_distances, DistanceCache};
use crate::graph::{Graph, Vertex};
use fixedbitset::FixedBitSet;
use serde::Serialize;

/// Vertices `w` with `d(w, u) != d(w, v)`. Always contains `u` and `v`.
pub fn distinguishers(g: &Graph, u: Vertex, v: Vertex) -> Vec<Vertex> {
    let du = bfs_distances(g, u);
    let dv = bfs_distances(g, v);
    g.vertices().filter(|&w| du[w] != dv[w]).collect()
}

/// A witness `w` for the edge `(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub edge: (Vertex, Vertex),
    pub by: Vertex,
}

/// Proof that `set` is a local resolving set: a witness for every edge with
/// both endpoints outside it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub set: Vec<Vertex>,
    pub witnesses: Vec<Witness>,
}

impl Certificate {
    /// Recomputes every witness distance and coverage from scratch.
    pub fn recheck(&self, g: &Graph) -> bool {
        let mut in_set = FixedBitSet::with_capacity(g.n());
        for &v in &self.set {
            if v >= g.n() {
                return false;
            }
            in_set.insert(v);
        }
        let mut covered = 0;
        for w in &self.witnesses {
            let (u, v) = w.edge;
            if !g.has_edge(u, v)
                || in_set.contains(u)
                || in_set.contains(v)
                || !in_set.contains(w.by)
            {
                return false;
            }
            let row = bfs_distances(g, w.by);
            if row[u] == row[v] {
                return false;
            }
            covered += 1;
        }
        covered
            == g.edges()
                .filter(|&(u, v)| !in_set.contains(u) && !in_set.contains(v))
                .count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum LocalCheck {
    Certificate(Certificate),
    /// An edge outside the set that no member distinguishes.
    Failure {
        edge: (Vertex, Vertex),
    },
}

impl LocalCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, LocalCheck::Certificate(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            LocalCheck::Certificate(c) => Some(c),
            LocalCheck::Failure { .. } => None,
        }
    }
}

/// Checks every edge with both endpoints outside `set`. The witness for an
/// edge is the smallest member of `set` that distinguishes it; the failure
/// is the first uncovered edge in lexicographic order.
///
/// Vertices of `set` outside `0..n` are ignored.
pub fn is_local_resolving(g: &Graph, set: &[Vertex]) -> LocalCheck {
    let mut in_set = FixedBitSet::with_capacity(g.n());
    for &v in set {
        if v < g.n() {
            in_set.insert(v);
        }
    }
    let members: Vec<Vertex> = in_set.ones().collect();
    let mut cache = DistanceCache::new(g);
    let mut witnesses = Vec::new();
    for (u, v) in g.edges() {
        if in_set.contains(u) || in_set.contains(v) {
            continue;
        }
        let (du, dv) = cache.pair(u, v);
        match members.iter().find(|&&w| du[w] != dv[w]) {
            Some(&by) => witnesses.push(Witness { edge: (u, v), by }),
            None => return LocalCheck::Failure { edge: (u, v) },
        }
    }
    LocalCheck::Certificate(Certificate {
        set: members,
        witnesses,
    })
}
