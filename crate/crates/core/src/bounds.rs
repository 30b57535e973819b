//! Closed-form bounds on the local metric dimension in terms of `n` and the
//! clique number.

use crate::clique::clique_number;
use crate::graph::Graph;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub m: usize,
    pub omega: usize,
    /// `ceil(log2 omega)`.
    pub lower_log: usize,
    /// `n - 2^(n - omega)`; often negative. Saturates for huge exponents.
    pub lower_gap: i64,
    /// `max(lower_log, lower_gap, 0)`.
    pub lower: usize,
    /// `floor(2n/5)`, `floor(n/2)` or `floor(2n/3)` for omega 2, 3, 4
    /// (given `n >= omega + 1`).
    pub upper_by_omega: Option<usize>,
    pub bipartite: bool,
    pub complete: bool,
    pub omega_is_n_minus_1: bool,
    /// The exact value when one of the flags pins it down.
    pub implied: Option<usize>,
}

pub fn ceil_log2(x: usize) -> usize {
    match x {
        0 | 1 => 0,
        _ => (usize::BITS - (x - 1).leading_zeros()) as usize,
    }
}

pub fn lower_gap(n: usize, omega: usize) -> i64 {
    let exp = n.saturating_sub(omega);
    let power = u32::try_from(exp).map_or(i64::MAX, |e| 2i64.saturating_pow(e));
    n as i64 - power
}

/// The known upper bound for clique number 2, 3 or 4.
pub fn upper_bound_for(n: usize, omega: usize) -> Option<usize> {
    match omega {
        2 if n >= 3 => Some(2 * n / 5),
        3 if n >= 4 => Some(n / 2),
        4 if n >= 5 => Some(2 * n / 3),
        _ => None,
    }
}

pub fn bounds_report(g: &Graph) -> BoundsReport {
    bounds_with_omega(g, clique_number(g))
}

/// Same as [`bounds_report`] with a clique number computed elsewhere.
pub fn bounds_with_omega(g: &Graph, omega: usize) -> BoundsReport {
    let n = g.n();
    let lower_log = ceil_log2(omega);
    let gap = lower_gap(n, omega);
    let lower = lower_log.max(usize::try_from(gap).unwrap_or(0));
    let bipartite = g.is_bipartite();
    let complete = n >= 1 && g.m() == n * (n - 1) / 2;
    let omega_is_n_minus_1 = n >= 2 && omega == n - 1;
    let implied = if complete {
        Some(n - 1)
    } else if omega_is_n_minus_1 {
        Some(n - 2)
    } else if bipartite && g.m() > 0 {
        Some(1)
    } else if g.m() == 0 {
        Some(0)
    } else {
        None
    };
    BoundsReport {
        n,
        m: g.m(),
        omega,
        lower_log,
        lower_gap: gap,
        lower,
        upper_by_omega: upper_bound_for(n, omega),
        bipartite,
        complete,
        omega_is_n_minus_1,
        implied,
    }
}
