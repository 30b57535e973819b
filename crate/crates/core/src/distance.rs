//! Unweighted shortest-path distances.

use crate::graph::{Graph, Vertex};
use std::collections::VecDeque;

/// Hop count marking a vertex that cannot be reached from the source.
pub const UNREACHABLE: u32 = u32::MAX;

/// BFS distances from one source vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceRow {
    pub source: Vertex,
    pub dist: Vec<u32>,
}

impl DistanceRow {
    #[inline]
    pub fn get(&self, v: Vertex) -> Option<u32> {
        match self.dist[v] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }
}

impl std::ops::Index<Vertex> for DistanceRow {
    type Output = u32;
    fn index(&self, v: Vertex) -> &u32 {
        &self.dist[v]
    }
}

/// Panics if `source` is not a vertex of `g`.
pub fn bfs_distances(g: &Graph, source: Vertex) -> DistanceRow {
    assert!(source < g.n(), "source {source} out of range");
    let mut dist = vec![UNREACHABLE; g.n()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let next = dist[u] + 1;
        for &w in g.neighbors(u) {
            if dist[w] == UNREACHABLE {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
    DistanceRow { source, dist }
}

/// All-pairs distances, one BFS per vertex.
pub fn distance_matrix(g: &Graph) -> Vec<DistanceRow> {
    g.vertices().map(|s| bfs_distances(g, s)).collect()
}

/// Lazily filled per-source BFS rows.
pub struct DistanceCache<'g> {
    graph: &'g Graph,
    rows: Vec<Option<DistanceRow>>,
}

impl<'g> DistanceCache<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        DistanceCache {
            graph,
            rows: vec![None; graph.n()],
        }
    }

    pub fn row(&mut self, source: Vertex) -> &DistanceRow {
        let graph = self.graph;
        self.rows[source].get_or_insert_with(|| bfs_distances(graph, source))
    }

    /// Fills both rows and returns them together.
    pub fn pair(&mut self, a: Vertex, b: Vertex) -> (&DistanceRow, &DistanceRow) {
        self.row(a);
        self.row(b);
        (
            self.rows[a].as_ref().unwrap(),
            self.rows[b].as_ref().unwrap(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paths_and_cliques() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(bfs_distances(&p3, 0).dist, vec![0, 1, 2]);

        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(bfs_distances(&k4, 2).dist, vec![1, 1, 0, 1]);
    }

    #[test]
    fn unreachable_sentinel() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let row = bfs_distances(&g, 0);
        assert_eq!(row.dist, vec![0, 1, UNREACHABLE, UNREACHABLE]);
        assert_eq!(row.get(2), None);
        assert_eq!(row.get(1), Some(1));
    }

    #[test]
    fn cache_matches_direct_bfs() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let mut cache = DistanceCache::new(&g);
        let (a, b) = cache.pair(0, 2);
        assert_eq!(a, &bfs_distances(&g, 0));
        assert_eq!(b, &bfs_distances(&g, 2));
    }
}
