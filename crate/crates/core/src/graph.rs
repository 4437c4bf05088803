use fixedbitset::FixedBitSet;

use crate::error::{param, Result};

/// Simple undirected graph on `0..n` stored as bit-set adjacency rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<FixedBitSet>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            rows: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            g.rows[u].insert_range(..);
            g.rows[u].set(u, false);
        }
        g
    }

    /// Duplicate edges are merged; loops and out-of-range endpoints are errors.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return param(format!("edge ({u}, {v}) outside 0..{n}"));
            }
            if u == v {
                return param(format!("loop at vertex {u}"));
            }
            g.rows[u].insert(v);
            g.rows[v].insert(u);
        }
        Ok(g)
    }

    /// Assembles a graph from precomputed rows; rows must be symmetric.
    pub(crate) fn from_rows(rows: Vec<FixedBitSet>) -> Self {
        debug_assert!(rows
            .iter()
            .enumerate()
            .all(|(u, r)| !r.contains(u) && r.ones().all(|v| rows[v].contains(u))));
        Self { rows }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn row(&self, u: usize) -> &FixedBitSet {
        &self.rows[u]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[u].ones()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.rows[u].count_ones(..)
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.rows[u].intersection_count(&self.rows[v])
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, row) in self.rows.iter().enumerate() {
            out.extend(row.ones().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// The common degree, if every vertex has the same one.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.rows.first().map_or(0, |r| r.count_ones(..));
        self.rows.iter().all(|r| r.count_ones(..) == d).then_some(d)
    }

    pub fn complement(&self) -> Self {
        let n = self.n();
        let mut rows = self.rows.clone();
        for (u, row) in rows.iter_mut().enumerate() {
            row.toggle_range(..);
            row.set(u, false);
        }
        debug_assert_eq!(rows.len(), n);
        Self { rows }
    }

    pub fn is_independent(&self, vertices: &[usize]) -> bool {
        vertices.iter().all(|&u| u < self.n())
            && vertices.iter().enumerate().all(|(i, &u)| {
                vertices[i + 1..]
                    .iter()
                    .all(|&v| u != v && !self.has_edge(u, v))
            })
    }

    /// Closed neighborhood `N[u]`, ascending.
    pub fn closed_neighborhood(&self, u: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.neighbors(u).collect();
        let at = out.partition_point(|&x| x < u);
        out.insert(at, u);
        out
    }
}
