//! Layered packing of the patterns H1..H7 and the structural audit of the
//! resulting decomposition.
//!
//! The patterns, with role labels ordered by decreasing degree inside the copy:
//!
//! | kind | shape                                   | degrees       |
//! |------|-----------------------------------------|---------------|
//! | H1   | K5 minus an edge                        | 4, 4, 4, 3, 3 |
//! | H2   | K4 plus a vertex with 2 neighbors in it | 4, 4, 3, 3, 2 |
//! | H3   | K4 plus a vertex with 1 neighbor in it  | 4, 3, 3, 3, 1 |
//! | H4   | K4                                      |               |
//! | H5   | K3                                      |               |
//! | H6   | K2                                      |               |
//! | H7   | K1                                      |               |
//!
//! Layer `i` is a maximal set of vertex-disjoint induced copies of `Hi` in the
//! residual graph `G_i`, which is `G` minus every vertex packed in layers
//! `1..i`. Copies are taken greedily in lexicographic order of their sorted
//! vertex sets, so the output is deterministic. Whatever survives layer 6 is
//! edgeless and becomes H7 singletons.

use crate::clique::has_clique_of_size;
use crate::graph::{Graph, Vertex};
use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PatternKind {
    H1,
    H2,
    H3,
    H4,
    H5,
    H6,
    H7,
}

impl PatternKind {
    pub const ALL: [PatternKind; 7] = [
        Self::H1,
        Self::H2,
        Self::H3,
        Self::H4,
        Self::H5,
        Self::H6,
        Self::H7,
    ];
    /// The kinds packed by search; H7 is whatever is left over.
    pub const PACKED: [PatternKind; 6] =
        [Self::H1, Self::H2, Self::H3, Self::H4, Self::H5, Self::H6];

    /// Zero-based layer index.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn order(self) -> usize {
        self.degrees().len()
    }

    /// Degrees of the role labels within one copy, in label order.
    pub fn degrees(self) -> &'static [usize] {
        match self {
            Self::H1 => &[4, 4, 4, 3, 3],
            Self::H2 => &[4, 4, 3, 3, 2],
            Self::H3 => &[4, 3, 3, 3, 1],
            Self::H4 => &[3, 3, 3, 3],
            Self::H5 => &[2, 2, 2],
            Self::H6 => &[1, 1],
            Self::H7 => &[0],
        }
    }

    /// For the K4-based kinds, how many K4 vertices the extra vertex sees.
    fn attachment(self) -> Option<usize> {
        match self {
            Self::H1 => Some(3),
            Self::H2 => Some(2),
            Self::H3 => Some(1),
            _ => None,
        }
    }

    fn clique_size(self) -> Option<usize> {
        match self {
            Self::H4 => Some(4),
            Self::H5 => Some(3),
            Self::H6 => Some(2),
            Self::H7 => Some(1),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        ["H1", "H2", "H3", "H4", "H5", "H6", "H7"][self.index()]
    }
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One placed copy of a pattern. `labels[k]` is role `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PackedSubgraph {
    pub kind: PatternKind,
    pub labels: Vec<Vertex>,
}

impl PackedSubgraph {
    /// Assigns role labels to the vertex set `vs` of an induced copy of
    /// `kind`: decreasing degree within the copy, ties by vertex id.
    pub fn labelled(g: &Graph, kind: PatternKind, vs: &[Vertex]) -> Self {
        let mut labels = vs.to_vec();
        labels.sort_by_key(|&v| (std::cmp::Reverse(g.degree_into(v, vs)), v));
        PackedSubgraph { kind, labels }
    }

    /// Vertex with one-based role `role`.
    pub fn role(&self, role: usize) -> Vertex {
        self.labels[role - 1]
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.labels
    }

    pub fn sorted_vertices(&self) -> Vec<Vertex> {
        let mut vs = self.labels.clone();
        vs.sort_unstable();
        vs
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.labels.contains(&v)
    }

    /// True when the labels induce `kind` in `g` with degrees in role order.
    pub fn matches(&self, g: &Graph) -> bool {
        let vs = &self.labels;
        let degrees = self.kind.degrees();
        vs.len() == degrees.len()
            && vs
                .iter()
                .zip(degrees)
                .all(|(&v, &d)| g.degree_into(v, vs) == d)
            && (self.kind.attachment().is_none() || induces_kind(g, vs, self.kind))
    }
}

/// For the five-vertex kinds the degree sequence is not quite enough on its
/// own (it is for these three, but check the K4 core explicitly anyway).
fn induces_kind(g: &Graph, vs: &[Vertex], kind: PatternKind) -> bool {
    let Some(attach) = kind.attachment() else {
        return g.is_clique(vs);
    };
    (0..vs.len()).any(|skip| {
        let core: Vec<Vertex> = vs
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &v)| v)
            .collect();
        g.is_clique(&core) && g.degree_into(vs[skip], &core) == attach
    })
}

/// All k-cliques inside `mask`, each sorted, in lexicographic order.
pub fn cliques_in(g: &Graph, mask: &FixedBitSet, k: usize) -> Vec<Vec<Vertex>> {
    fn extend(
        g: &Graph,
        cand: &FixedBitSet,
        k: usize,
        current: &mut Vec<Vertex>,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for v in cand.ones() {
            let mut next = cand.clone();
            next.intersect_with(g.neighbor_row(v));
            // keep only ids above v so each clique is produced once
            next.remove_range(..v + 1);
            current.push(v);
            extend(g, &next, k, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    let mut current = Vec::with_capacity(k);
    extend(g, mask, k, &mut current, &mut out);
    out
}

/// Every induced copy of `kind` inside `mask`, sorted lexicographically by
/// vertex set, each exactly once.
pub fn pattern_copies(g: &Graph, mask: &FixedBitSet, kind: PatternKind) -> Vec<PackedSubgraph> {
    let mut sets: Vec<Vec<Vertex>> = if let Some(size) = kind.clique_size() {
        cliques_in(g, mask, size)
    } else {
        let attach = kind.attachment().expect("five-vertex kind");
        let mut sets = Vec::new();
        for core in cliques_in(g, mask, 4) {
            let mut touching = FixedBitSet::with_capacity(g.n());
            for &c in &core {
                touching.union_with(g.neighbor_row(c));
            }
            touching.intersect_with(mask);
            for v in touching.ones() {
                if !core.contains(&v) && g.degree_into(v, &core) == attach {
                    let mut set = core.clone();
                    set.push(v);
                    set.sort_unstable();
                    sets.push(set);
                }
            }
        }
        sets.sort_unstable();
        // an H1 copy contains two K4 cores and is found twice
        sets.dedup();
        sets
    };
    sets.sort_unstable();
    sets.into_iter()
        .map(|vs| PackedSubgraph::labelled(g, kind, &vs))
        .collect()
}

/// The lexicographically least induced copy of `kind` inside `mask`.
pub fn find_pattern_copy(
    g: &Graph,
    mask: &FixedBitSet,
    kind: PatternKind,
) -> Option<PackedSubgraph> {
    pattern_copies(g, mask, kind).into_iter().next()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PackingError {
    #[error("input graph is not connected")]
    Disconnected,
    #[error("input graph has no vertices")]
    Empty,
    #[error("layers do not partition the vertex set: {0}")]
    NotAPartition(String),
}

/// The seven packing layers and the residual vertex masks `G_1..G_7`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    n: usize,
    layers: [Vec<PackedSubgraph>; 7],
    residuals: [FixedBitSet; 7],
}

impl Decomposition {
    /// Assembles a decomposition from hand-built layers. Only checks that
    /// the layers partition `0..n`; use [`validate_decomposition`] for the
    /// structural properties.
    pub fn from_layers(n: usize, layers: [Vec<PackedSubgraph>; 7]) -> Result<Self, PackingError> {
        let mut seen = FixedBitSet::with_capacity(n);
        for (i, layer) in layers.iter().enumerate() {
            for copy in layer {
                if copy.kind.index() != i {
                    return Err(PackingError::NotAPartition(format!(
                        "{} copy in layer {}",
                        copy.kind,
                        i + 1
                    )));
                }
                for &v in &copy.labels {
                    if v >= n {
                        return Err(PackingError::NotAPartition(format!(
                            "vertex {v} out of range"
                        )));
                    }
                    if seen.put(v) {
                        return Err(PackingError::NotAPartition(format!(
                            "vertex {v} packed twice"
                        )));
                    }
                }
            }
        }
        if seen.count_ones(..) != n {
            return Err(PackingError::NotAPartition(format!(
                "{} of {n} vertices covered",
                seen.count_ones(..)
            )));
        }
        let mut residuals: [FixedBitSet; 7] = Default::default();
        let mut mask = FixedBitSet::with_capacity(n);
        mask.insert_range(..);
        for (i, layer) in layers.iter().enumerate() {
            residuals[i] = mask.clone();
            for copy in layer {
                for &v in &copy.labels {
                    mask.set(v, false);
                }
            }
        }
        Ok(Decomposition {
            n,
            layers,
            residuals,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn layer(&self, kind: PatternKind) -> &[PackedSubgraph] {
        &self.layers[kind.index()]
    }

    pub fn layers(&self) -> &[Vec<PackedSubgraph>; 7] {
        &self.layers
    }

    /// Vertex mask of the residual `G_i` in which layer `kind` was packed.
    pub fn residual(&self, kind: PatternKind) -> &FixedBitSet {
        &self.residuals[kind.index()]
    }

    /// Layer index of every vertex.
    pub fn kind_of(&self) -> Vec<PatternKind> {
        let mut out = vec![PatternKind::H7; self.n];
        for layer in &self.layers {
            for copy in layer {
                for &v in &copy.labels {
                    out[v] = copy.kind;
                }
            }
        }
        out
    }

    /// Layer sizes `|H1|..|H7|`.
    pub fn counts(&self) -> [usize; 7] {
        std::array::from_fn(|i| self.layers[i].len())
    }

    pub fn to_json_layers(&self) -> DecompositionLayers {
        let get = |k: PatternKind| self.layer(k).iter().map(|c| c.labels.clone()).collect();
        DecompositionLayers {
            h1: get(PatternKind::H1),
            h2: get(PatternKind::H2),
            h3: get(PatternKind::H3),
            h4: get(PatternKind::H4),
            h5: get(PatternKind::H5),
            h6: get(PatternKind::H6),
            h7: get(PatternKind::H7),
        }
    }
}

/// Serialized form: `{"H1": [[v, ...], ...], ..., "H7": [[v], ...]}` with
/// labels in role order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionLayers {
    #[serde(rename = "H1")]
    pub h1: Vec<Vec<Vertex>>,
    #[serde(rename = "H2")]
    pub h2: Vec<Vec<Vertex>>,
    #[serde(rename = "H3")]
    pub h3: Vec<Vec<Vertex>>,
    #[serde(rename = "H4")]
    pub h4: Vec<Vec<Vertex>>,
    #[serde(rename = "H5")]
    pub h5: Vec<Vec<Vertex>>,
    #[serde(rename = "H6")]
    pub h6: Vec<Vec<Vertex>>,
    #[serde(rename = "H7")]
    pub h7: Vec<Vec<Vertex>>,
}

impl DecompositionLayers {
    pub fn into_decomposition(self, n: usize) -> Result<Decomposition, PackingError> {
        let wrap = |kind: PatternKind, sets: Vec<Vec<Vertex>>| {
            sets.into_iter()
                .map(|labels| PackedSubgraph { kind, labels })
                .collect::<Vec<_>>()
        };
        use PatternKind::*;
        Decomposition::from_layers(
            n,
            [
                wrap(H1, self.h1),
                wrap(H2, self.h2),
                wrap(H3, self.h3),
                wrap(H4, self.h4),
                wrap(H5, self.h5),
                wrap(H6, self.h6),
                wrap(H7, self.h7),
            ],
        )
    }
}

/// Greedy maximal layered packing. Requires a connected, nonempty graph.
pub fn greedy_packing(g: &Graph) -> Result<Decomposition, PackingError> {
    if g.n() == 0 {
        return Err(PackingError::Empty);
    }
    if !g.is_connected() {
        return Err(PackingError::Disconnected);
    }
    Ok(pack_unchecked(g))
}

/// The packing itself, also usable on disconnected graphs.
///
/// Enumerating every copy of the stage graph once and keeping those that
/// avoid already taken vertices is the same as repeatedly taking the least
/// copy of the shrinking residual: removing vertices never creates or
/// destroys an induced copy on the vertices that remain.
pub fn pack_unchecked(g: &Graph) -> Decomposition {
    let mut mask = g.full_mask();
    let mut layers: [Vec<PackedSubgraph>; 7] = Default::default();
    for kind in PatternKind::PACKED {
        for copy in pattern_copies(g, &mask, kind) {
            if copy.labels.iter().all(|&v| mask.contains(v)) {
                for &v in &copy.labels {
                    mask.set(v, false);
                }
                layers[kind.index()].push(copy);
            }
        }
    }
    layers[PatternKind::H7.index()] = mask
        .ones()
        .map(|v| PackedSubgraph {
            kind: PatternKind::H7,
            labels: vec![v],
        })
        .collect();
    Decomposition::from_layers(g.n(), layers).expect("greedy layers partition V")
}

/// Outcome of one audited property: each witness is a vertex tuple that
/// breaks it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub description: &'static str,
    pub witnesses: Vec<Vec<Vertex>>,
}

impl PropertyCheck {
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Results of [`validate_decomposition`]. `properties` holds (I)..(VII) in
/// order; `structure` holds partition, labeling, and maximality checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub properties: Vec<PropertyCheck>,
    pub structure: Vec<PropertyCheck>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.properties
            .iter()
            .chain(&self.structure)
            .all(PropertyCheck::passed)
    }

    pub fn property(&self, name: &str) -> Option<&PropertyCheck> {
        self.properties
            .iter()
            .chain(&self.structure)
            .find(|p| p.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyCheck> {
        self.properties
            .iter()
            .chain(&self.structure)
            .filter(|p| !p.passed())
    }
}

/// Checks properties (I)..(VII) literally, plus the partition, role labels,
/// and maximality of each layer.
///
/// The clique-based clauses are the ones guaranteed by maximality when
/// `g` has no K5; for graphs that do, the report simply lists the
/// violations.
pub fn validate_decomposition(g: &Graph, d: &Decomposition) -> AuditReport {
    use PatternKind::*;
    let others = |mask: &FixedBitSet, copy: &PackedSubgraph| -> Vec<Vertex> {
        mask.ones().filter(|&v| !copy.contains(v)).collect()
    };
    let all = g.full_mask();

    let mut p1 = Vec::new();
    for h in d.layer(H1) {
        for j in [4, 5] {
            let base = [h.role(1), h.role(2), h.role(3), h.role(j)];
            for v in others(&all, h) {
                let mut five = base.to_vec();
                five.push(v);
                if g.is_clique(&five) {
                    p1.push(five);
                }
            }
        }
    }

    let k4_avoid = |kind: PatternKind, fixed: [usize; 2], js: [usize; 2]| {
        let mut out = Vec::new();
        for h in d.layer(kind) {
            for j in js {
                for v in others(d.residual(kind), h) {
                    let four = vec![h.role(fixed[0]), h.role(fixed[1]), h.role(j), v];
                    if g.is_clique(&four) {
                        out.push(four);
                    }
                }
            }
        }
        out
    };
    let p2 = k4_avoid(H2, [1, 4], [2, 3]);
    let p3 = k4_avoid(H3, [3, 4], [1, 2]);

    let mut p4 = Vec::new();
    let mut p5 = Vec::new();
    let g4 = d.residual(H4);
    for h in d.layer(H4) {
        for (j, &hj) in h.labels.iter().enumerate() {
            for &v in g.neighbors(hj) {
                if h.contains(v) {
                    continue;
                }
                if g4.contains(v) {
                    p4.push(vec![hj, v]);
                } else {
                    let has_p3 = h
                        .labels
                        .iter()
                        .enumerate()
                        .any(|(l, &hl)| l != j && !g.has_edge(hl, v));
                    if !has_p3 {
                        p5.push(vec![hj, v]);
                    }
                }
            }
        }
    }

    let completion = |kind: PatternKind| {
        let mut out = Vec::new();
        for h in d.layer(kind) {
            for v in others(d.residual(kind), h) {
                if h.labels.iter().all(|&x| g.has_edge(x, v)) {
                    let mut t = h.labels.clone();
                    t.push(v);
                    out.push(t);
                }
            }
        }
        out
    };
    let p6 = completion(H5);
    let p7 = completion(H6);

    let properties = vec![
        PropertyCheck {
            name: "I",
            description: "no H1 copy with a degree-3 role vertex extends to K5",
            witnesses: p1,
        },
        PropertyCheck {
            name: "II",
            description: "no {h1,h4,h2|h3,v} K4 for H2 copies within G2",
            witnesses: p2,
        },
        PropertyCheck {
            name: "III",
            description: "no {h3,h4,h1|h2,v} K4 for H3 copies within G3",
            witnesses: p3,
        },
        PropertyCheck {
            name: "IV",
            description: "no edge from an H4 copy to the rest of G4",
            witnesses: p4,
        },
        PropertyCheck {
            name: "V",
            description:
                "every edge from an H4 copy to V(G)-V(G4) extends to an induced P3 in the copy",
            witnesses: p5,
        },
        PropertyCheck {
            name: "VI",
            description: "no H5 copy completes to K4 within G5",
            witnesses: p6,
        },
        PropertyCheck {
            name: "VII",
            description: "no H6 copy completes to K3 within G6",
            witnesses: p7,
        },
    ];

    let mut labels = Vec::new();
    for layer in d.layers() {
        for copy in layer {
            if !copy.matches(g) {
                labels.push(copy.labels.clone());
            }
        }
    }
    let mut maximal = Vec::new();
    for kind in PatternKind::PACKED {
        let next = &d.residuals[kind.index() + 1];
        if let Some(copy) = find_pattern_copy(g, next, kind) {
            maximal.push(copy.sorted_vertices());
        }
    }
    let mut singletons = Vec::new();
    let h7 = d.residual(H7);
    for c in d.layer(H7) {
        let v = c.labels[0];
        for &w in g.neighbors(v) {
            if h7.contains(w) && v < w {
                singletons.push(vec![v, w]);
            }
        }
    }
    let structure = vec![
        PropertyCheck {
            name: "labels",
            description: "every copy induces its pattern with role degrees in label order",
            witnesses: labels,
        },
        PropertyCheck {
            name: "maximal",
            description: "no residual G_{i+1} contains an induced copy of Hi",
            witnesses: maximal,
        },
        PropertyCheck {
            name: "isolated",
            description: "the H7 residual is edgeless",
            witnesses: singletons,
        },
    ];
    AuditReport {
        properties,
        structure,
    }
}

/// True when `g` has no K5, i.e. is in the regime the audit's clique
/// clauses rely on.
pub fn is_k5_free(g: &Graph) -> bool {
    !has_clique_of_size(g, 5)
}
