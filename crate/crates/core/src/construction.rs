//! The five selection processes that turn a [`Decomposition`] into a local
//! resolving set `S`.
//!
//! Processes 1-3 walk the H1, H2 and H3 copies in layer order. Each copy
//! claims the K4s of the pool that it touches (its `tau`) and decides which
//! of its own vertices, and which two vertices of every claimed K4, stay out
//! of `S`. The two K4 vertices left out form an induced P3 with an anchor
//! vertex of the copy that is kept in `S`, so the anchor sees them at
//! distances 1 and 2. Process 4 keeps two vertices of every triangle,
//! process 5 one endpoint of every H6 edge and then handles the singletons.
//!
//! Every choice is checked before it is committed: each newly excluded
//! vertex must be distinguished, by the current `S`, from each of its
//! already-excluded neighbors. `S` only grows, so a commit never invalidates
//! an earlier one and the final set is locally resolving. The first
//! admissible choice in a fixed scan order wins. When no choice of the
//! case is admissible the copy falls back to keeping all of its own
//! vertices, tagged `fallback` in the trace.

use crate::clique::has_clique_of_size;
use crate::distance::DistanceCache;
use crate::graph::{Graph, Vertex};
use crate::packing::{Decomposition, PackedSubgraph, PatternKind};
use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

/// Backtracking limit per copy when assigning P3 pairs to claimed K4s.
const PAIR_SEARCH_BUDGET: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("input graph has no vertices")]
    Empty,
    #[error("input graph is not connected")]
    Disconnected,
    #[error(
        "input graph contains K5; the construction covers clique number at most 4 \
         (the bound for 5 <= omega <= n-4 is an open conjecture)"
    )]
    CliqueTooLarge,
    #[error("K4 copies {0:?} were never claimed by any H1/H2/H3 copy")]
    PoolResidue(Vec<usize>),
    #[error("no anchor of {kind} copy {copy} forms an induced P3 with K4 copy {k4}")]
    NoP3Pair {
        kind: PatternKind,
        copy: usize,
        k4: usize,
    },
    #[error("no excluded role of {kind} copy {copy} satisfies the connectivity requirement for K4s {k4s:?}")]
    NoConnectedChoice {
        kind: PatternKind,
        copy: usize,
        k4s: Vec<usize>,
    },
    #[error("postcondition failed: {0}")]
    Postcondition(String),
}

/// What to do with the H7 singletons in process 5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum SingletonPolicy {
    /// Put every singleton into `S`.
    AddAll,
    /// Leave a singleton out when all of its excluded neighbors are already
    /// distinguished from it.
    #[default]
    AddIfNeeded,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ConstructOptions {
    pub singletons: SingletonPolicy,
}

/// An anchor kept in `S` and a K4 edge `x1 x2` with `anchor ~ x1`,
/// `anchor !~ x2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct P3Choice {
    pub anchor: Vertex,
    pub pair: (Vertex, Vertex),
}

impl P3Choice {
    pub fn is_valid(&self, g: &Graph) -> bool {
        let (x1, x2) = self.pair;
        x1 != x2
            && g.has_edge(x1, x2)
            && g.has_edge(self.anchor, x1)
            && !g.has_edge(self.anchor, x2)
    }
}

/// A K4 claimed by a copy. `choice` is `None` when the whole K4 went into
/// `S` during a fallback.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssignedK4 {
    pub k4: usize,
    pub choice: Option<P3Choice>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub process: u8,
    pub kind: PatternKind,
    /// Index of the copy within its layer.
    pub copy: usize,
    /// Step number of the case that fired, `"1.3"` .. `"5.3"`.
    pub case: &'static str,
    pub tau: usize,
    /// One-based roles of the copy that stay out of `S`.
    pub excluded_roles: Vec<usize>,
    pub assigned: Vec<AssignedK4>,
    pub added: Vec<Vertex>,
    pub excluded: Vec<Vertex>,
    pub fallback: bool,
}

impl StepRecord {
    /// Vertices decided by this step: the copy plus its claimed K4s.
    pub fn consumed(&self) -> usize {
        self.added.len() + self.excluded.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct ConstructionTrace {
    pub singletons: SingletonPolicy,
    pub steps: Vec<StepRecord>,
}

impl ConstructionTrace {
    /// `(case, count)` pairs in step order of first appearance.
    pub fn case_histogram(&self) -> Vec<(&'static str, usize)> {
        let mut out: Vec<(&'static str, usize)> = Vec::new();
        for step in &self.steps {
            let tag = step.case;
            match out.iter_mut().find(|(c, _)| *c == tag) {
                Some((_, k)) => *k += 1,
                None => out.push((tag, 1)),
            }
        }
        out
    }

    pub fn fallbacks(&self) -> usize {
        self.steps.iter().filter(|s| s.fallback).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Construction {
    /// The constructed set, sorted.
    pub set: Vec<Vertex>,
    pub trace: ConstructionTrace,
}

/// The claimed K4s (`tau`) of `copy`: pool members with at least one edge
/// to it, in pool order.
pub fn tau<'p>(
    g: &Graph,
    copy: &PackedSubgraph,
    pool: &'p [PackedSubgraph],
) -> Vec<&'p PackedSubgraph> {
    pool.iter()
        .filter(|x| touches(g, copy.vertices(), x.vertices()))
        .collect()
}

fn touches(g: &Graph, a: &[Vertex], b: &[Vertex]) -> bool {
    a.iter().any(|&u| b.iter().any(|&v| g.has_edge(u, v)))
}

/// Every P3 choice for `k4`, scanning anchors in the given order, then the
/// anchor's neighbors in `k4` label order, then its non-neighbors.
pub fn p3_choices<'a>(
    g: &'a Graph,
    anchors: &'a [Vertex],
    k4: &'a PackedSubgraph,
) -> impl Iterator<Item = P3Choice> + 'a {
    anchors.iter().flat_map(move |&h| {
        let (near, far): (Vec<Vertex>, Vec<Vertex>) =
            k4.labels.iter().partition(|&&x| g.has_edge(h, x));
        near.into_iter().flat_map(move |x1| {
            far.clone().into_iter().map(move |x2| P3Choice {
                anchor: h,
                pair: (x1, x2),
            })
        })
    })
}

/// The first P3 choice for `k4` in scan order, if any.
///
/// An anchor adjacent to all four K4 vertices has no choice; under
/// clique number 4 that cannot happen.
pub fn select_p3_pair(g: &Graph, anchors: &[Vertex], k4: &PackedSubgraph) -> Option<P3Choice> {
    p3_choices(g, anchors, k4).next()
}

/// Runs the construction with default options.
pub fn construct(g: &Graph, d: &Decomposition) -> Result<Construction, ConstructError> {
    construct_with(g, d, ConstructOptions::default())
}

pub fn construct_with(
    g: &Graph,
    d: &Decomposition,
    options: ConstructOptions,
) -> Result<Construction, ConstructError> {
    if g.n() == 0 {
        return Err(ConstructError::Empty);
    }
    if !g.is_connected() {
        return Err(ConstructError::Disconnected);
    }
    if has_clique_of_size(g, 5) {
        return Err(ConstructError::CliqueTooLarge);
    }
    let mut b = Builder::new(g, d);
    b.trace.singletons = options.singletons;
    for (process, kind) in [
        (1, PatternKind::H1),
        (2, PatternKind::H2),
        (3, PatternKind::H3),
    ] {
        for (idx, copy) in d.layer(kind).iter().enumerate() {
            b.pattern_step(process, kind, idx, copy)?;
        }
    }
    if !b.pool.is_empty() {
        return Err(ConstructError::PoolResidue(b.pool.clone()));
    }
    for (idx, copy) in d.layer(PatternKind::H5).iter().enumerate() {
        b.clique_step(4, "4.3", PatternKind::H5, idx, copy);
    }
    for (idx, copy) in d.layer(PatternKind::H6).iter().enumerate() {
        b.clique_step(5, "5.3", PatternKind::H6, idx, copy);
    }
    for (idx, copy) in d.layer(PatternKind::H7).iter().enumerate() {
        b.singleton_step(idx, copy.labels[0], options.singletons);
    }
    b.finish()
}

/// One way to treat the copy itself: the roles left out and the anchors
/// allowed for the claimed K4s.
struct CopyOption {
    excluded_roles: Vec<usize>,
    anchor_roles: Vec<usize>,
}

struct Builder<'g> {
    g: &'g Graph,
    d: &'g Decomposition,
    cache: DistanceCache<'g>,
    in_s: FixedBitSet,
    out: FixedBitSet,
    pool: Vec<usize>,
    trace: ConstructionTrace,
    budget: usize,
}

impl<'g> Builder<'g> {
    fn new(g: &'g Graph, d: &'g Decomposition) -> Self {
        Builder {
            g,
            d,
            cache: DistanceCache::new(g),
            in_s: FixedBitSet::with_capacity(g.n()),
            out: FixedBitSet::with_capacity(g.n()),
            pool: (0..d.layer(PatternKind::H4).len()).collect(),
            trace: ConstructionTrace::default(),
            budget: 0,
        }
    }

    fn k4(&self, id: usize) -> &'g PackedSubgraph {
        &self.d.layer(PatternKind::H4)[id]
    }

    /// Some vertex of the current `S` sees `a` and `b` at different distances.
    fn distinguished(&mut self, a: Vertex, b: Vertex) -> bool {
        let g = self.g;
        let local = g
            .neighbors(a)
            .iter()
            .chain(g.neighbors(b))
            .any(|&w| self.in_s.contains(w) && g.has_edge(w, a) != g.has_edge(w, b));
        if local {
            return true;
        }
        let (da, db) = self.cache.pair(a, b);
        self.in_s.ones().any(|w| da[w] != db[w])
    }

    /// Commits `added` and `excluded` if every new exclusion is
    /// distinguished from its excluded neighbors; leaves state untouched
    /// otherwise.
    fn try_commit(&mut self, added: &[Vertex], excluded: &[Vertex]) -> bool {
        self.budget += 1;
        for &v in added {
            self.in_s.insert(v);
        }
        for &v in excluded {
            self.out.insert(v);
        }
        let g = self.g;
        let mut ok = true;
        'outer: for &e in excluded {
            for &u in g.neighbors(e) {
                if self.out.contains(u) && !self.distinguished(e, u) {
                    ok = false;
                    break 'outer;
                }
            }
        }
        if !ok {
            self.rollback(added, excluded);
        }
        ok
    }

    fn rollback(&mut self, added: &[Vertex], excluded: &[Vertex]) {
        for &v in added {
            self.in_s.set(v, false);
        }
        for &v in excluded {
            self.out.set(v, false);
        }
    }

    fn pattern_step(
        &mut self,
        process: u8,
        kind: PatternKind,
        idx: usize,
        copy: &PackedSubgraph,
    ) -> Result<(), ConstructError> {
        let g = self.g;
        let claimed: Vec<usize> = self
            .pool
            .iter()
            .copied()
            .filter(|&id| touches(g, copy.vertices(), self.k4(id).vertices()))
            .collect();
        self.pool.retain(|id| !claimed.contains(id));

        for &id in &claimed {
            if select_p3_pair(g, copy.vertices(), self.k4(id)).is_none() {
                return Err(ConstructError::NoP3Pair {
                    kind,
                    copy: idx,
                    k4: id,
                });
            }
        }

        let case = case_tag(process, claimed.len());
        let options = self.copy_options(process, kind, idx, copy, &claimed)?;
        self.budget = 0;
        for option in &options {
            if let Some(assigned) = self.apply_option(copy, option, &claimed, false) {
                self.record(
                    process,
                    kind,
                    idx,
                    case,
                    claimed.len(),
                    copy,
                    option,
                    assigned,
                    false,
                );
                return Ok(());
            }
        }
        self.budget = 0;
        let keep_all = CopyOption {
            excluded_roles: vec![],
            anchor_roles: (1..=copy.labels.len()).collect(),
        };
        let assigned = self
            .apply_option(copy, &keep_all, &claimed, true)
            .expect("keeping the copy and allowing whole K4s always commits");
        self.record(
            process,
            kind,
            idx,
            case,
            claimed.len(),
            copy,
            &keep_all,
            assigned,
            true,
        );
        Ok(())
    }

    fn copy_options(
        &self,
        process: u8,
        kind: PatternKind,
        idx: usize,
        copy: &PackedSubgraph,
        claimed: &[usize],
    ) -> Result<Vec<CopyOption>, ConstructError> {
        let g = self.g;
        let all_roles: Vec<usize> = (1..=5).collect();
        let without =
            |l: usize| -> Vec<usize> { all_roles.iter().copied().filter(|&r| r != l).collect() };
        let kept_vertices = |l: usize| -> Vec<Vertex> {
            (1..=5).filter(|&r| r != l).map(|r| copy.role(r)).collect()
        };
        let single = |l: usize| CopyOption {
            excluded_roles: vec![l],
            anchor_roles: without(l),
        };
        let connected_with = |l: usize| {
            let mut vs = kept_vertices(l);
            for &id in claimed {
                vs.extend_from_slice(self.k4(id).vertices());
            }
            g.is_connected_within(&vs)
        };
        let touches_all = |l: usize| {
            let kept = kept_vertices(l);
            claimed
                .iter()
                .all(|&id| touches(g, &kept, self.k4(id).vertices()))
        };

        let options: Vec<CopyOption> = match (process, claimed.len()) {
            (_, 0) => {
                let roles = match process {
                    1 => vec![4, 5],
                    2 => vec![2, 3],
                    _ => vec![1, 2],
                };
                vec![CopyOption {
                    excluded_roles: roles,
                    anchor_roles: vec![],
                }]
            }
            // any two distinct roles; prefer leaving out a degree-3 role
            (1, 1) => [4, 5, 1, 2, 3].into_iter().map(single).collect(),
            (1, 2) => (1..=5).filter(|&l| connected_with(l)).map(single).collect(),
            (2, 1 | 2) => (1..=4).filter(|&l| connected_with(l)).map(single).collect(),
            (3, 1 | 2) => (1..=4).filter(|&l| touches_all(l)).map(single).collect(),
            _ => vec![CopyOption {
                excluded_roles: vec![],
                anchor_roles: all_roles.clone(),
            }],
        };
        if options.is_empty() {
            return Err(ConstructError::NoConnectedChoice {
                kind,
                copy: idx,
                k4s: claimed.to_vec(),
            });
        }
        Ok(options)
    }

    /// Tries one copy option with backtracking over the P3 pairs of the
    /// claimed K4s. On success everything is committed.
    fn apply_option(
        &mut self,
        copy: &PackedSubgraph,
        option: &CopyOption,
        claimed: &[usize],
        allow_whole: bool,
    ) -> Option<Vec<AssignedK4>> {
        let excluded: Vec<Vertex> = option
            .excluded_roles
            .iter()
            .map(|&r| copy.role(r))
            .collect();
        let added: Vec<Vertex> = copy
            .labels
            .iter()
            .copied()
            .filter(|v| !excluded.contains(v))
            .collect();
        if !self.try_commit(&added, &excluded) {
            return None;
        }
        let anchors: Vec<Vertex> = option.anchor_roles.iter().map(|&r| copy.role(r)).collect();
        let mut assigned = Vec::with_capacity(claimed.len());
        if self.assign_pairs(&anchors, claimed, allow_whole, &mut assigned) {
            Some(assigned)
        } else {
            self.rollback(&added, &excluded);
            None
        }
    }

    fn assign_pairs(
        &mut self,
        anchors: &[Vertex],
        claimed: &[usize],
        allow_whole: bool,
        assigned: &mut Vec<AssignedK4>,
    ) -> bool {
        let Some((&id, rest)) = claimed.split_first() else {
            return true;
        };
        let g = self.g;
        let k4 = self.k4(id);
        let choices: Vec<P3Choice> = p3_choices(g, anchors, k4).collect();
        for choice in choices {
            if self.budget > PAIR_SEARCH_BUDGET {
                break;
            }
            let (x1, x2) = choice.pair;
            let added: Vec<Vertex> = k4
                .labels
                .iter()
                .copied()
                .filter(|&v| v != x1 && v != x2)
                .collect();
            if self.try_commit(&added, &[x1, x2]) {
                assigned.push(AssignedK4 {
                    k4: id,
                    choice: Some(choice),
                });
                if self.assign_pairs(anchors, rest, allow_whole, assigned) {
                    return true;
                }
                assigned.pop();
                self.rollback(&added, &[x1, x2]);
            }
        }
        if allow_whole {
            let committed = self.try_commit(&k4.labels, &[]);
            debug_assert!(committed);
            assigned.push(AssignedK4 {
                k4: id,
                choice: None,
            });
            return self.assign_pairs(anchors, rest, allow_whole, assigned);
        }
        false
    }

    #[allow(clippy::too_many_arguments)]
    fn record(
        &mut self,
        process: u8,
        kind: PatternKind,
        copy_idx: usize,
        case: &'static str,
        tau: usize,
        copy: &PackedSubgraph,
        option: &CopyOption,
        assigned: Vec<AssignedK4>,
        fallback: bool,
    ) {
        let mut added = Vec::new();
        let mut excluded = Vec::new();
        let mut push = |v: Vertex| {
            if self.in_s.contains(v) {
                added.push(v)
            } else {
                excluded.push(v)
            }
        };
        copy.labels.iter().copied().for_each(&mut push);
        for a in &assigned {
            self.d.layer(PatternKind::H4)[a.k4]
                .labels
                .iter()
                .copied()
                .for_each(&mut push);
        }
        self.trace.steps.push(StepRecord {
            process,
            kind,
            copy: copy_idx,
            case,
            tau,
            excluded_roles: option.excluded_roles.clone(),
            assigned,
            added,
            excluded,
            fallback,
        });
    }

    /// Triangles and edges: leave out the last role if possible, then the
    /// earlier ones; otherwise keep the whole copy.
    fn clique_step(
        &mut self,
        process: u8,
        case: &'static str,
        kind: PatternKind,
        idx: usize,
        copy: &PackedSubgraph,
    ) {
        let k = copy.labels.len();
        for role in (1..=k).rev() {
            let out = copy.role(role);
            let added: Vec<Vertex> = copy.labels.iter().copied().filter(|&v| v != out).collect();
            if self.try_commit(&added, &[out]) {
                self.trace.steps.push(StepRecord {
                    process,
                    kind,
                    copy: idx,
                    case,
                    tau: 0,
                    excluded_roles: vec![role],
                    assigned: vec![],
                    added,
                    excluded: vec![out],
                    fallback: false,
                });
                return;
            }
        }
        self.try_commit(&copy.labels, &[]);
        self.trace.steps.push(StepRecord {
            process,
            kind,
            copy: idx,
            case,
            tau: 0,
            excluded_roles: vec![],
            assigned: vec![],
            added: copy.labels.clone(),
            excluded: vec![],
            fallback: true,
        });
    }

    fn singleton_step(&mut self, idx: usize, v: Vertex, policy: SingletonPolicy) {
        let left_out = policy == SingletonPolicy::AddIfNeeded && self.try_commit(&[], &[v]);
        if !left_out {
            self.try_commit(&[v], &[]);
        }
        let (added, excluded) = if left_out {
            (vec![], vec![v])
        } else {
            (vec![v], vec![])
        };
        self.trace.steps.push(StepRecord {
            process: 5,
            kind: PatternKind::H7,
            copy: idx,
            case: "5.2",
            tau: 0,
            excluded_roles: if left_out { vec![1] } else { vec![] },
            assigned: vec![],
            added,
            excluded,
            fallback: false,
        });
    }

    fn finish(mut self) -> Result<Construction, ConstructError> {
        for step in &self.trace.steps {
            for a in &step.assigned {
                let Some(choice) = a.choice else { continue };
                let (x1, x2) = choice.pair;
                let ok = choice.is_valid(self.g)
                    && self.in_s.contains(choice.anchor)
                    && !self.in_s.contains(x1)
                    && !self.in_s.contains(x2);
                let (dx1, dx2) = {
                    let row = self.cache.row(choice.anchor);
                    (row[x1], row[x2])
                };
                if !ok || dx1 == dx2 {
                    return Err(ConstructError::Postcondition(format!(
                        "K4 copy {} pair {:?} is not separated by anchor {}",
                        a.k4, choice.pair, choice.anchor
                    )));
                }
            }
        }
        let decided = self.in_s.union_count(&self.out);
        if decided != self.g.n() || self.in_s.intersection_count(&self.out) != 0 {
            return Err(ConstructError::Postcondition(format!(
                "{decided} of {} vertices decided",
                self.g.n()
            )));
        }
        Ok(Construction {
            set: self.in_s.ones().collect(),
            trace: self.trace,
        })
    }
}

fn case_tag(process: u8, tau: usize) -> &'static str {
    const TAGS: [[&str; 4]; 3] = [
        ["1.3", "1.4", "1.5", "1.6"],
        ["2.3", "2.4", "2.5", "2.6"],
        ["3.3", "3.4", "3.5", "3.6"],
    ];
    TAGS[usize::from(process) - 1][tau.min(3)]
}

/// Per-step size accounting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepSize {
    pub step: usize,
    pub case: &'static str,
    pub added: usize,
    pub consumed: usize,
    /// `added <= 2/3 * consumed`.
    pub within_two_thirds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeAudit {
    pub n: usize,
    pub size: usize,
    /// `floor(2n/3)`.
    pub bound: usize,
    pub within_bound: bool,
    pub steps: Vec<StepSize>,
    /// Processes 1-3 steps whose count exceeds `2/3 (4l + 5)` for `l`
    /// claimed K4s (five-vertex copy plus `4l` pool vertices).
    pub lambda_violations: Vec<usize>,
}

/// Reports the size accounting of a trace. Nothing here fails; violations
/// are listed.
pub fn size_audit(g: &Graph, trace: &ConstructionTrace) -> SizeAudit {
    let steps: Vec<StepSize> = trace
        .steps
        .iter()
        .enumerate()
        .map(|(i, s)| StepSize {
            step: i,
            case: s.case,
            added: s.added.len(),
            consumed: s.consumed(),
            within_two_thirds: 3 * s.added.len() <= 2 * s.consumed(),
        })
        .collect();
    let lambda_violations = trace
        .steps
        .iter()
        .enumerate()
        .filter(|(_, s)| s.process <= 3 && 3 * s.added.len() > 2 * (4 * s.assigned.len() + 5))
        .map(|(i, _)| i)
        .collect();
    let size: usize = trace.steps.iter().map(|s| s.added.len()).sum();
    let bound = 2 * g.n() / 3;
    SizeAudit {
        n: g.n(),
        size,
        bound,
        within_bound: size <= bound,
        steps,
        lambda_violations,
    }
}
