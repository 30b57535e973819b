//! Brute-force references used only by tests. Nothing here calls the
//! library's distance, clique, or search code.

#![allow(dead_code)]

use locdim_core::Graph;
use proptest::prelude::*;

pub const INF: u32 = u32::MAX / 4;

/// All-pairs distances by Floyd-Warshall on the adjacency predicate.
#[allow(clippy::needless_range_loop)]
pub fn floyd(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.n();
    let mut d = vec![vec![INF; n]; n];
    for u in 0..n {
        d[u][u] = 0;
        for v in 0..n {
            if u != v && g.has_edge(u, v) {
                d[u][v] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Every adjacent pair outside `mask` is told apart by some member.
pub fn resolves(g: &Graph, d: &[Vec<u32>], mask: u64) -> bool {
    let n = g.n();
    let inside = |v: usize| mask >> v & 1 == 1;
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) || inside(u) || inside(v) {
                continue;
            }
            if !(0..n).any(|w| inside(w) && d[w][u] != d[w][v]) {
                return false;
            }
        }
    }
    true
}

pub fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0, |m, &v| m | 1 << v)
}

/// Smallest cardinality of a local resolving set, by trying every subset.
pub fn naive_dim_l(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 20, "naive enumeration is for tiny graphs");
    let d = floyd(g);
    (0u64..1 << n)
        .filter(|&m| resolves(g, &d, m))
        .map(|m| m.count_ones() as usize)
        .min()
        .unwrap()
}

pub fn naive_clique_number(g: &Graph) -> usize {
    let n = g.n();
    let mut best = 0;
    for m in 0u64..1 << n {
        let vs: Vec<usize> = (0..n).filter(|&v| m >> v & 1 == 1).collect();
        if vs.len() > best
            && vs
                .iter()
                .enumerate()
                .all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.has_edge(a, b)))
        {
            best = vs.len();
        }
    }
    best
}

pub fn is_bipartite_naive(g: &Graph) -> bool {
    // 2-colorable iff no odd closed walk; test all colorings
    let n = g.n();
    (0u64..1 << n).any(|c| g.edges().all(|(u, v)| (c >> u & 1) != (c >> v & 1)))
}

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges.iter().copied()).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

/// Arbitrary graphs on `1..=max_n` vertices.
pub fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

/// Connected graphs: a random spanning tree plus random extra edges.
pub fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let parents = (1..n).map(|i| 0..i).collect::<Vec<_>>();
        let extra = proptest::collection::vec(any::<bool>(), n * (n - 1) / 2);
        (parents, extra).prop_map(move |(parents, extra)| {
            let tree = parents.into_iter().enumerate().map(|(i, p)| (p, i + 1));
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let more = pairs.zip(extra).filter(|(_, b)| *b).map(|(e, _)| e);
            Graph::from_edges(n, tree.chain(more)).unwrap()
        })
    })
}

/// Connected graphs containing no K5.
pub fn k5_free_connected(max_n: usize) -> impl Strategy<Value = Graph> {
    connected_graph(max_n).prop_filter("K5-free", |g| naive_clique_number(g) <= 4)
}

/// A core H1, H2 or H3 with `1..=4` K4s bridged to it by one to three
/// random edges, plus occasional K4-K4 bridges. The K4s end up in the
/// pool, so these graphs reach every case of processes 1-3. May contain
/// a K5; callers filter.
pub fn pooled_graph(seed: u64) -> Graph {
    use rand_core::Rng;
    let mut rng = locdim_core::generators::rng_for(seed);
    let mut r = |k: usize| (rng.next_u64() % k as u64) as usize;
    let mut e: Vec<(usize, usize)> = (0..4)
        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
        .collect();
    let attach = 3 - r(3);
    e.extend((0..attach).map(|i| (i, 4)));
    let l = 1 + r(4);
    for k in 0..l {
        let b = 5 + 4 * k;
        e.extend((0..4).flat_map(|i| (i + 1..4).map(move |j| (b + i, b + j))));
        for _ in 0..1 + r(3) {
            e.push((r(5), b + r(4)));
        }
        if k > 0 && r(3) == 0 {
            e.push((b + r(4), 5 + r(4 * k)));
        }
    }
    Graph::from_edges(5 + 4 * l, e).unwrap()
}
