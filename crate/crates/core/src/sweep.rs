//! Per-graph analysis rows and seeded corpus sweeps.

use crate::bounds::{bounds_with_omega, BoundsReport};
use crate::clique::clique_number;
use crate::construction::{construct, ConstructError, Construction};
use crate::exact::{exact_with_limit, ExactError, ExactResult};
use crate::generators::{default_p, gen_random_with_omega, GenError};
use crate::graph::Graph;
use crate::io::to_graph6;
use crate::packing::{greedy_packing, validate_decomposition, PackingError};
use crate::verify::is_local_resolving;
use rayon::prelude::*;
use serde::Serialize;
use std::time::Instant;
use thiserror::Error;

/// CSV header, without the timing columns.
pub const CSV_COLUMNS: [&str; 11] = [
    "graph6",
    "n",
    "m",
    "omega",
    "construct_size",
    "bound",
    "exact",
    "valid",
    "lb_log",
    "lb_gap",
    "case_histogram",
];
pub const TIMING_COLUMNS: [&str; 2] = ["construct_us", "exact_us"];

#[derive(Debug, Error)]
pub enum AnalyzeError {
    #[error(transparent)]
    Packing(#[from] PackingError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub omega: usize,
    pub construct_size: usize,
    /// The bound for this clique number, when one applies.
    pub bound: Option<usize>,
    pub exact: Option<usize>,
    /// The constructed set passed the local resolving check.
    pub valid: bool,
    pub lb_log: usize,
    pub lb_gap: i64,
    pub case_histogram: String,
    pub audit_passed: bool,
    pub fallbacks: usize,
    pub construct_us: u128,
    pub exact_us: Option<u128>,
}

impl SweepRow {
    /// `floor(2n/3)`, which the construction must meet for every clique
    /// number up to 4.
    pub fn construct_bound(&self) -> usize {
        2 * self.n / 3
    }

    pub fn construct_within_bound(&self) -> bool {
        self.construct_size <= self.construct_bound()
    }

    /// Exact value within the clique-number bound and above the lower bound.
    pub fn exact_consistent(&self) -> bool {
        let Some(e) = self.exact else { return true };
        let lower = self.lb_log.max(usize::try_from(self.lb_gap).unwrap_or(0));
        e >= lower && self.bound.is_none_or(|b| e <= b) && e <= self.construct_size
    }

    pub fn is_violation(&self) -> bool {
        !self.valid
            || !self.construct_within_bound()
            || !self.exact_consistent()
            || !self.audit_passed
    }

    pub fn csv(&self, timing: bool) -> String {
        let opt = |v: Option<usize>| v.map_or_else(String::new, |x| x.to_string());
        let mut fields = vec![
            self.graph6.clone(),
            self.n.to_string(),
            self.m.to_string(),
            self.omega.to_string(),
            self.construct_size.to_string(),
            opt(self.bound),
            opt(self.exact),
            self.valid.to_string(),
            self.lb_log.to_string(),
            self.lb_gap.to_string(),
            self.case_histogram.clone(),
        ];
        if timing {
            fields.push(self.construct_us.to_string());
            fields.push(self.exact_us.map_or_else(String::new, |t| t.to_string()));
        }
        fields.join(",")
    }
}

/// Everything the pipeline computes for one graph.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub row: SweepRow,
    pub construction: Construction,
    pub bounds: BoundsReport,
    pub exact: Option<ExactResult>,
}

/// Decompose, construct, verify, and optionally solve exactly.
pub fn analyze(g: &Graph, exact_limit: Option<usize>) -> Result<Analysis, AnalyzeError> {
    let omega = clique_number(g);
    let start = Instant::now();
    let d = greedy_packing(g)?;
    let construction = construct(g, &d)?;
    let construct_us = start.elapsed().as_micros();
    let audit_passed = validate_decomposition(g, &d).passed();
    let valid = is_local_resolving(g, &construction.set).is_valid();
    let bounds = bounds_with_omega(g, omega);
    let (exact, exact_us) = match exact_limit {
        Some(limit) => {
            let t = Instant::now();
            let r = exact_with_limit(g, limit)?;
            (Some(r), Some(t.elapsed().as_micros()))
        }
        None => (None, None),
    };
    let case_histogram = construction
        .trace
        .case_histogram()
        .iter()
        .map(|(c, k)| format!("{c}:{k}"))
        .collect::<Vec<_>>()
        .join(";");
    let row = SweepRow {
        graph6: to_graph6(g),
        n: g.n(),
        m: g.m(),
        omega,
        construct_size: construction.set.len(),
        bound: bounds.upper_by_omega,
        exact: exact.as_ref().map(|e| e.dimension),
        valid,
        lb_log: bounds.lower_log,
        lb_gap: bounds.lower_gap,
        case_histogram,
        audit_passed,
        fallbacks: construction.trace.fallbacks(),
        construct_us,
        exact_us,
    };
    Ok(Analysis {
        row,
        construction,
        bounds,
        exact,
    })
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub count: usize,
    pub omega: usize,
    pub seed: u64,
    /// Edge probability; [`default_p`] per `n` when absent.
    pub p: Option<f64>,
    pub exact_limit: Option<usize>,
    pub max_tries: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            n_min: 5,
            n_max: 9,
            count: 50,
            omega: 4,
            seed: 42,
            p: None,
            exact_limit: None,
            max_tries: 100_000,
        }
    }
}

#[derive(Debug, Clone)]
pub enum SweepOutcome {
    Row(Box<SweepRow>),
    Skipped { n: usize, seed: u64, reason: String },
}

impl SweepOutcome {
    pub fn row(&self) -> Option<&SweepRow> {
        match self {
            SweepOutcome::Row(r) => Some(r),
            SweepOutcome::Skipped { .. } => None,
        }
    }
}

/// Graph `k` of order `n` in a sweep uses seed `seed + k`.
pub fn corpus_graph(cfg: &SweepConfig, n: usize, k: usize) -> Result<Graph, GenError> {
    let p = cfg.p.unwrap_or_else(|| default_p(n, cfg.omega));
    gen_random_with_omega(
        n,
        p,
        cfg.omega,
        cfg.seed.wrapping_add(k as u64),
        cfg.max_tries,
    )
}

/// Runs the sweep in parallel; outcomes come back in `(n, k)` order.
pub fn run_sweep(cfg: &SweepConfig) -> Vec<SweepOutcome> {
    let jobs: Vec<(usize, usize)> = (cfg.n_min..=cfg.n_max)
        .flat_map(|n| (0..cfg.count).map(move |k| (n, k)))
        .collect();
    jobs.into_par_iter()
        .map(|(n, k)| {
            let seed = cfg.seed.wrapping_add(k as u64);
            let skipped = |reason: String| SweepOutcome::Skipped { n, seed, reason };
            match corpus_graph(cfg, n, k) {
                Err(e) => skipped(e.to_string()),
                Ok(g) => match analyze(&g, cfg.exact_limit) {
                    Ok(a) => SweepOutcome::Row(Box::new(a.row)),
                    Err(e) => skipped(e.to_string()),
                },
            }
        })
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SweepSummary {
    pub graphs: usize,
    pub skipped: usize,
    pub max_construct_ratio: f64,
    pub max_exact_ratio: Option<f64>,
    pub invalid: usize,
    pub violations: usize,
}

pub fn summarize(outcomes: &[SweepOutcome]) -> SweepSummary {
    let mut s = SweepSummary::default();
    for o in outcomes {
        let Some(r) = o.row() else {
            s.skipped += 1;
            continue;
        };
        s.graphs += 1;
        s.max_construct_ratio = s
            .max_construct_ratio
            .max(r.construct_size as f64 / r.n as f64);
        if let Some(e) = r.exact {
            let ratio = e as f64 / r.n as f64;
            s.max_exact_ratio = Some(s.max_exact_ratio.map_or(ratio, |m: f64| m.max(ratio)));
        }
        s.invalid += usize::from(!r.valid);
        s.violations += usize::from(r.is_violation());
    }
    s
}
