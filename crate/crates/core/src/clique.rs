//! Clique number via Bron-Kerbosch with Tomita pivoting.
//!
//! The outer level walks a degeneracy ordering, so each top-level call only
//! sees a vertex's later neighbors. Worst case is still exponential
//! (`3^(n/3)` maximal cliques); graphs here are sparse or small.

use crate::graph::{Graph, Vertex};
use fixedbitset::FixedBitSet;

/// Size of a maximum clique. Zero for the empty graph.
pub fn clique_number(g: &Graph) -> usize {
    max_clique(g).len()
}

/// A maximum clique, sorted.
pub fn max_clique(g: &Graph) -> Vec<Vertex> {
    let mut found = search(g, usize::MAX);
    found.sort_unstable();
    found
}

/// True when `g` contains a clique on `k` vertices. Stops at the first one.
pub fn has_clique_of_size(g: &Graph, k: usize) -> bool {
    k == 0 || search(g, k).len() >= k
}

struct Search<'g> {
    g: &'g Graph,
    target: usize,
    best: Vec<Vertex>,
    current: Vec<Vertex>,
}

fn search(g: &Graph, target: usize) -> Vec<Vertex> {
    let mut s = Search {
        g,
        target,
        best: Vec::new(),
        current: Vec::new(),
    };
    let order = degeneracy_order(g);
    let mut position = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    for &v in &order {
        let mut p = FixedBitSet::with_capacity(g.n());
        let mut x = FixedBitSet::with_capacity(g.n());
        for &w in g.neighbors(v) {
            if position[w] > position[v] {
                p.insert(w);
            } else {
                x.insert(w);
            }
        }
        s.current.push(v);
        s.expand(p, x);
        s.current.pop();
        if s.done() {
            break;
        }
    }
    s.best
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.best.len() >= self.target
    }

    fn expand(&mut self, mut p: FixedBitSet, mut x: FixedBitSet) {
        if p.is_clear() {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return;
        }
        if self.current.len() + p.count_ones(..) <= self.best.len() {
            return;
        }
        let pivot = p
            .ones()
            .chain(x.ones())
            .max_by_key(|&u| p.intersection(self.g.neighbor_row(u)).count())
            .expect("p is nonempty");
        let mut candidates = p.clone();
        candidates.difference_with(self.g.neighbor_row(pivot));
        for v in candidates.ones() {
            let row = self.g.neighbor_row(v);
            let mut p_next = p.clone();
            p_next.intersect_with(row);
            let mut x_next = x.clone();
            x_next.intersect_with(row);
            self.current.push(v);
            self.expand(p_next, x_next);
            self.current.pop();
            if self.done() {
                return;
            }
            p.set(v, false);
            x.insert(v);
        }
    }
}

/// Repeatedly removes a minimum-degree vertex. Ties go to the smaller id.
fn degeneracy_order(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let max_deg = degree.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<std::collections::BTreeSet<Vertex>> =
        vec![Default::default(); max_deg + 1];
    for v in g.vertices() {
        buckets[degree[v]].insert(v);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut low = 0;
    for _ in 0..n {
        while buckets[low].is_empty() {
            low += 1;
        }
        let v = buckets[low].pop_first().unwrap();
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                buckets[degree[w]].remove(&w);
                degree[w] -= 1;
                buckets[degree[w]].insert(w);
                low = low.min(degree[w]);
            }
        }
    }
    order
}
