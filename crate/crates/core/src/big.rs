//! Block intersection graphs and strongly-regular-graph checks.
//!
//! The `i`-BIG of a design has the blocks as vertices, two blocks adjacent when
//! they share exactly `i` points. For a Steiner 2-design only `i = 0` and
//! `i = 1` give nonempty graphs, they are complements of each other, and both
//! are strongly regular with parameters fixed by `(v, k)`.

use fixedbitset::FixedBitSet;

use crate::designs::{check_admissible, sorted_intersection_len, Design};
use crate::error::{param, Result};
use crate::graph::Graph;
use crate::par::Exec;

pub fn build_big(d: &Design, i: usize) -> Result<Graph> {
    build_big_with(d, i, Exec::default())
}

pub fn build_big_with(d: &Design, i: usize, exec: Exec) -> Result<Graph> {
    if i > d.k() {
        return param(format!(
            "intersection size {i} exceeds block size {}",
            d.k()
        ));
    }
    let blocks = d.blocks();
    let b = blocks.len();
    let rows = exec.map_range(b, |u| {
        let mut row = FixedBitSet::with_capacity(b);
        for w in 0..b {
            if w != u && sorted_intersection_len(&blocks[u], &blocks[w]) == i {
                row.insert(w);
            }
        }
        row
    });
    Ok(Graph::from_rows(rows))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SrgParams {
    pub n: usize,
    pub degree: usize,
    pub lambda_adj: i64,
    pub mu: i64,
    /// complete or edgeless: not an SRG, only the degree is meaningful
    pub degenerate: bool,
}

impl SrgParams {
    pub fn new(n: usize, degree: usize, lambda_adj: i64, mu: i64) -> Self {
        Self {
            n,
            degree,
            lambda_adj,
            mu,
            degenerate: degree == 0 || degree + 1 == n,
        }
    }

    /// `k(k - λ - 1) = (n - k - 1) μ`
    pub fn is_feasible(&self) -> bool {
        let (n, k) = (self.n as i64, self.degree as i64);
        self.degenerate || k * (k - self.lambda_adj - 1) == (n - k - 1) * self.mu
    }
}

/// Parameters of the `i`-BIG of an `S(2, k, v)`, `i` in {0, 1}.
pub fn expected_srg(v: usize, k: usize, i: usize) -> Result<SrgParams> {
    check_admissible(v, k, 1)?;
    let b = (v * (v - 1) / (k * (k - 1))) as i64;
    let r = ((v - 1) / (k - 1)) as i64;
    let k = k as i64;
    let (degree, lambda_adj, mu) = match i {
        1 => (k * (r - 1), r - 2 + (k - 1) * (k - 1), k * k),
        0 => (
            b - k * (r - 1) - 1,
            b - 2 * k * (r - 1) + k * k - 2,
            b - 2 * k * r + k * k + r - 1,
        ),
        _ => {
            return param(format!(
                "strongly regular parameters only for i in {{0, 1}}, got {i}"
            ))
        }
    };
    Ok(SrgParams::new(b as usize, degree as usize, lambda_adj, mu))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SrgViolation {
    VertexCount { expected: usize, found: usize },
    Degree { vertex: usize, degree: usize },
    Adjacent { u: usize, v: usize, common: usize },
    NonAdjacent { u: usize, v: usize, common: usize },
    NotComplete { u: usize, v: usize },
    NotEdgeless { u: usize, v: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SrgReport {
    pub ok: bool,
    pub counterexample: Option<SrgViolation>,
}

pub fn verify_srg(g: &Graph, p: &SrgParams) -> SrgReport {
    verify_srg_with(g, p, Exec::default())
}

/// Exhaustive check of every vertex degree and every pair's common-neighbor
/// count. The reported counterexample is the first one in vertex order.
pub fn verify_srg_with(g: &Graph, p: &SrgParams, exec: Exec) -> SrgReport {
    let n = g.n();
    let fail = |v| SrgReport {
        ok: false,
        counterexample: Some(v),
    };
    if n != p.n {
        return fail(SrgViolation::VertexCount {
            expected: p.n,
            found: n,
        });
    }
    let found = exec.find_first(n, |u| {
        if p.degenerate {
            let complete = p.degree + 1 == n && n > 1;
            return (0..n)
                .filter(|&w| w != u)
                .find_map(|w| match (complete, g.has_edge(u, w)) {
                    (true, false) => Some(SrgViolation::NotComplete {
                        u: u.min(w),
                        v: u.max(w),
                    }),
                    (false, true) => Some(SrgViolation::NotEdgeless {
                        u: u.min(w),
                        v: u.max(w),
                    }),
                    _ => None,
                });
        }
        let degree = g.degree(u);
        if degree != p.degree {
            return Some(SrgViolation::Degree { vertex: u, degree });
        }
        (u + 1..n).find_map(|w| {
            let common = g.common_neighbors(u, w);
            if g.has_edge(u, w) {
                (common as i64 != p.lambda_adj).then_some(SrgViolation::Adjacent {
                    u,
                    v: w,
                    common,
                })
            } else {
                (common as i64 != p.mu).then_some(SrgViolation::NonAdjacent { u, v: w, common })
            }
        })
    });
    SrgReport {
        ok: found.is_none(),
        counterexample: found,
    }
}
