//! Graph families for tests and sweeps.
//!
//! Random graphs use PCG XSL RR 128/64 (`rand_pcg::Pcg64`) started from
//! state `seed` and a fixed stream constant, with one 64-bit draw per vertex
//! pair `(u, v)`, `u < v`, in lexicographic order. A pair becomes an edge
//! when its draw is below `floor(p * 2^64)`. Rejection sampling keeps drawing
//! from the same stream, so a seed pins the whole attempt sequence.

use crate::clique::{clique_number, has_clique_of_size};
use crate::graph::{Graph, Vertex};
use rand_core::Rng;
use rand_pcg::Pcg64;
use serde::Serialize;
use thiserror::Error;

/// Stream selector passed to [`Pcg64::new`].
pub const PCG_STREAM: u128 = 0xa02b_dbf7_bb3c_0a7a_c28f_a16a_64ab_f96d;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("{family}: invalid size {value} ({reason})")]
    InvalidSize {
        family: &'static str,
        value: usize,
        reason: &'static str,
    },
    #[error("edge probability {0} outside (0, 1)")]
    InvalidProbability(f64),
    #[error("target clique number {0} outside 2..=4")]
    InvalidOmega(usize),
    #[error("no connected graph with clique number {omega} after {attempts} attempts")]
    Exhausted { omega: usize, attempts: usize },
}

/// A reproducible graph recipe.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GenSpec {
    Extremal {
        t: usize,
    },
    Complete {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Path {
        n: usize,
    },
    CompleteMinusEdge {
        n: usize,
    },
    Gnp {
        n: usize,
        p: f64,
        seed: u64,
    },
    GnpOmega {
        n: usize,
        p: f64,
        omega: usize,
        seed: u64,
        max_tries: usize,
    },
}

impl GenSpec {
    pub fn generate(&self) -> Result<Graph, GenError> {
        match *self {
            GenSpec::Extremal { t } => gen_extremal(t),
            GenSpec::Complete { n } => gen_named(NamedFamily::Complete, n),
            GenSpec::Cycle { n } => gen_named(NamedFamily::Cycle, n),
            GenSpec::Path { n } => gen_named(NamedFamily::Path, n),
            GenSpec::CompleteMinusEdge { n } => gen_named(NamedFamily::CompleteMinusEdge, n),
            GenSpec::Gnp { n, p, seed } => {
                check_p(p)?;
                Ok(gen_gnp(n, p, seed))
            }
            GenSpec::GnpOmega {
                n,
                p,
                omega,
                seed,
                max_tries,
            } => gen_random_with_omega(n, p, omega, seed, max_tries),
        }
    }
}

/// `t` disjoint triangles plus an apex joined to all of them. Vertex `3t`
/// is the apex; triangle `i` is `{3i, 3i+1, 3i+2}`.
pub fn gen_extremal(t: usize) -> Result<Graph, GenError> {
    if t < 2 {
        return Err(GenError::InvalidSize {
            family: "extremal",
            value: t,
            reason: "t >= 2 required (t = 1 is K4, below n = 5)",
        });
    }
    let apex = 3 * t;
    let mut edges = Vec::with_capacity(6 * t);
    for i in 0..t {
        let (a, b, c) = (3 * i, 3 * i + 1, 3 * i + 2);
        edges.extend([(a, b), (a, c), (b, c), (a, apex), (b, apex), (c, apex)]);
    }
    Ok(Graph::from_edges(3 * t + 1, edges).expect("valid edges"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedFamily {
    Complete,
    Path,
    Cycle,
    CompleteMinusEdge,
}

impl std::str::FromStr for NamedFamily {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "complete" => Ok(Self::Complete),
            "path" => Ok(Self::Path),
            "cycle" => Ok(Self::Cycle),
            "complete-minus-edge" => Ok(Self::CompleteMinusEdge),
            other => Err(format!("unknown family {other:?}")),
        }
    }
}

/// `K_n`, `P_n`, `C_n`, or `K_n` minus the edge `{n-2, n-1}`.
pub fn gen_named(family: NamedFamily, n: usize) -> Result<Graph, GenError> {
    let (name, min) = match family {
        NamedFamily::Complete => ("complete", 1),
        NamedFamily::Path => ("path", 1),
        NamedFamily::Cycle => ("cycle", 3),
        NamedFamily::CompleteMinusEdge => ("complete-minus-edge", 2),
    };
    if n < min {
        return Err(GenError::InvalidSize {
            family: name,
            value: n,
            reason: "too small",
        });
    }
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let edges: Vec<(Vertex, Vertex)> = match family {
        NamedFamily::Complete => pairs.collect(),
        NamedFamily::CompleteMinusEdge => pairs.filter(|&e| e != (n - 2, n - 1)).collect(),
        NamedFamily::Path => (1..n).map(|v| (v - 1, v)).collect(),
        NamedFamily::Cycle => (0..n).map(|v| (v, (v + 1) % n)).collect(),
    };
    Ok(Graph::from_edges(n, edges).expect("valid edges"))
}

fn check_p(p: f64) -> Result<(), GenError> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(GenError::InvalidProbability(p))
    }
}

fn threshold(p: f64) -> u64 {
    // 2^64 * p, exact for dyadic p and monotone otherwise
    (p * 18_446_744_073_709_551_616.0) as u64
}

fn sample(rng: &mut Pcg64, n: usize, cut: u64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.next_u64() < cut {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid edges")
}

pub fn rng_for(seed: u64) -> Pcg64 {
    Pcg64::new(u128::from(seed), PCG_STREAM)
}

/// One `G(n, p)` sample.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Graph {
    sample(&mut rng_for(seed), n, threshold(p))
}

/// The first connected `G(n, p)` sample whose clique number is exactly
/// `target_omega`.
pub fn gen_random_with_omega(
    n: usize,
    p: f64,
    target_omega: usize,
    seed: u64,
    max_tries: usize,
) -> Result<Graph, GenError> {
    check_p(p)?;
    if !(2..=4).contains(&target_omega) {
        return Err(GenError::InvalidOmega(target_omega));
    }
    let mut rng = rng_for(seed);
    let cut = threshold(p);
    for _ in 0..max_tries {
        let g = sample(&mut rng, n, cut);
        if g.is_connected()
            && !has_clique_of_size(&g, target_omega + 1)
            && clique_number(&g) == target_omega
        {
            return Ok(g);
        }
    }
    Err(GenError::Exhausted {
        omega: target_omega,
        attempts: max_tries,
    })
}

/// An edge probability for `n` vertices targeting clique number `omega`:
/// about one expected `K_{omega+1}`, but never below `ln(n)/n` so that
/// connected samples are common.
pub fn default_p(n: usize, omega: usize) -> f64 {
    let k = omega + 1;
    let subsets = (0..k).fold(1.0f64, |acc, i| {
        acc * (n - i.min(n)) as f64 / (i + 1) as f64
    });
    let edges = (k * (k - 1) / 2) as f64;
    let p = if subsets >= 1.0 {
        subsets.powf(-1.0 / edges)
    } else {
        0.9
    };
    let floor = if n > 1 {
        (n as f64).ln() / n as f64
    } else {
        0.0
    };
    p.max(floor).clamp(0.05, 0.95)
}
