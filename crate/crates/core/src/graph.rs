//! Simple undirected graphs on dense vertex ids `0..n`.

use fixedbitset::FixedBitSet;
use std::collections::VecDeque;
use thiserror::Error;

/// Vertex ids are dense indices into the graph.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
}

/// An immutable simple undirected graph.
///
/// Neighbor lists are kept sorted, and a bit row per vertex backs O(1)
/// adjacency tests. The bit rows make memory quadratic in `n`, which is fine
/// for the graph sizes this crate targets (a few thousand vertices).
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    rows: Vec<FixedBitSet>,
    m: usize,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            rows: vec![FixedBitSet::with_capacity(n); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge iterator. Duplicate edges are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }

    fn insert_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::OutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if !self.rows[u].contains(v) {
            self.rows[u].insert(v);
            self.rows[v].insert(u);
            self.adj[u].push(v);
            self.adj[v].push(u);
            self.m += 1;
        }
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// Sorted neighbor list of `v`.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    /// Neighborhood of `v` as a bit row of length `n`.
    #[inline]
    pub fn neighbor_row(&self, v: Vertex) -> &FixedBitSet {
        &self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.rows[u].contains(v)
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// A bit set sized for this graph with every vertex present.
    pub fn full_mask(&self) -> FixedBitSet {
        let mut mask = FixedBitSet::with_capacity(self.n());
        mask.insert_range(..);
        mask
    }

    /// Number of neighbors of `v` among `vs`.
    pub fn degree_into(&self, v: Vertex, vs: &[Vertex]) -> usize {
        vs.iter().filter(|&&w| self.has_edge(v, w)).count()
    }

    /// True when `vs` spans a complete subgraph.
    pub fn is_clique(&self, vs: &[Vertex]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// True when BFS from vertex 0 reaches every vertex.
    ///
    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        let all: Vec<Vertex> = self.vertices().collect();
        self.is_connected_within(&all)
    }

    /// Connectivity of the induced subgraph on `vs`, without materializing it.
    pub fn is_connected_within(&self, vs: &[Vertex]) -> bool {
        let Some(&start) = vs.first() else {
            return true;
        };
        let mut inside = FixedBitSet::with_capacity(self.n());
        for &v in vs {
            inside.insert(v);
        }
        let mut seen = FixedBitSet::with_capacity(self.n());
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &w in self.neighbors(u) {
                if inside.contains(w) && !seen.put(w) {
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == inside.count_ones(..)
    }

    /// Two-coloring by BFS layering, component by component.
    pub fn is_bipartite(&self) -> bool {
        let mut color: Vec<Option<bool>> = vec![None; self.n()];
        for s in self.vertices() {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &w in self.neighbors(u) {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    /// The subgraph induced on `vs`, in the order given.
    pub fn induced_subgraph(&self, vs: &[Vertex]) -> Result<InducedSubgraph, GraphError> {
        let n = self.n();
        let mut old_to_new = vec![None; n];
        let mut new_to_old = Vec::with_capacity(vs.len());
        for &v in vs {
            if v >= n {
                return Err(GraphError::OutOfRange { vertex: v, n });
            }
            if old_to_new[v].is_none() {
                old_to_new[v] = Some(new_to_old.len());
                new_to_old.push(v);
            }
        }
        let mut edges = Vec::new();
        for (i, &u) in new_to_old.iter().enumerate() {
            for &w in self.neighbors(u) {
                if let Some(j) = old_to_new[w] {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        let graph = Graph::from_edges(new_to_old.len(), edges)?;
        Ok(InducedSubgraph {
            graph,
            old_to_new,
            new_to_old,
        })
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.m)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Result of [`Graph::induced_subgraph`].
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `old_to_new[v]` is the id of `v` in `graph`, if selected.
    pub old_to_new: Vec<Option<Vertex>>,
    pub new_to_old: Vec<Vertex>,
}
