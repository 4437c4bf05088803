//! Independent sets: pencils, exact maximum independent sets, enumeration of
//! all maximum ones, and neighbor censuses.
//!
//! In a 1-BIG an independent set is a family of pairwise disjoint blocks (a
//! partial parallel class); in a 0-BIG it is a pairwise intersecting family.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use fixedbitset::FixedBitSet;

use crate::big::build_big;
use crate::designs::Design;
use crate::error::{param, Result};
use crate::graph::Graph;
use crate::par::Exec;

pub const DEFAULT_MIS_BUDGET: u64 = 10_000_000;
pub const DEFAULT_ENUM_BUDGET: u64 = 10_000_000;

/// Sorted, duplicate-free vertex list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndependentSet {
    vertices: Vec<usize>,
}

impl IndependentSet {
    /// Checks independence in `g`.
    pub fn new(g: &Graph, mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        if !g.is_independent(&vertices) {
            return param(format!("{vertices:?} is not an independent set"));
        }
        Ok(Self { vertices })
    }

    pub(crate) fn from_sorted_unchecked(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Self { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// `T(x)`: the blocks through `x`, an independent set of the 0-BIG.
pub fn pencil(d: &Design, x: usize) -> Result<IndependentSet> {
    if x >= d.v() {
        return param(format!("point {x} outside 0..{}", d.v()));
    }
    Ok(IndependentSet::from_sorted_unchecked(d.blocks_through(x)))
}

/// The point shared by all blocks of `set`, if `set` is a full pencil.
pub fn pencil_point(d: &Design, set: &IndependentSet) -> Option<usize> {
    let first = d.block(*set.vertices().first()?);
    first
        .iter()
        .copied()
        .find(|&x| d.blocks_through(x) == set.vertices())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MisResult {
    pub set: IndependentSet,
    /// the search completed, so `set` is maximum
    pub exact: bool,
    pub nodes: u64,
}

/// Branch and bound for a maximum independent set.
///
/// Branches on a maximum-degree vertex of the remaining candidates (lowest id
/// on ties), first including it, then excluding it. A greedy clique cover of
/// the candidates bounds how many more vertices can be added.
pub fn max_independent_set(g: &Graph, budget: u64) -> Result<MisResult> {
    if budget == 0 {
        return param("budget must be positive");
    }
    let n = g.n();
    let mut search = MisSearch {
        g,
        budget,
        nodes: 0,
        best: greedy_independent(g),
        current: Vec::new(),
        aborted: false,
    };
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    search.run(all);
    let mut best = search.best;
    best.sort_unstable();
    Ok(MisResult {
        set: IndependentSet::from_sorted_unchecked(best),
        exact: !search.aborted,
        nodes: search.nodes,
    })
}

fn greedy_independent(g: &Graph) -> Vec<usize> {
    let mut cand = FixedBitSet::with_capacity(g.n());
    cand.insert_range(..);
    let mut out = Vec::new();
    while let Some(u) = cand
        .ones()
        .min_by_key(|&u| (g.row(u).intersection_count(&cand), u))
    {
        out.push(u);
        cand.set(u, false);
        cand.difference_with(g.row(u));
    }
    out
}

/// Number of cliques in a greedy cover of `cand`, an upper bound on the
/// independence number of the induced subgraph.
fn clique_cover_bound(g: &Graph, cand: &FixedBitSet) -> usize {
    let mut masks: Vec<FixedBitSet> = Vec::new();
    for u in cand.ones() {
        match masks.iter_mut().find(|m| m.contains(u)) {
            Some(m) => m.intersect_with(g.row(u)),
            None => {
                let mut m = g.row(u).clone();
                m.intersect_with(cand);
                masks.push(m);
            }
        }
    }
    masks.len()
}

struct MisSearch<'a> {
    g: &'a Graph,
    budget: u64,
    nodes: u64,
    best: Vec<usize>,
    current: Vec<usize>,
    aborted: bool,
}

impl MisSearch<'_> {
    fn run(&mut self, mut cand: FixedBitSet) {
        loop {
            self.nodes += 1;
            if self.nodes > self.budget {
                self.aborted = true;
                return;
            }
            if self.current.len() + cand.count_ones(..) <= self.best.len()
                || self.current.len() + clique_cover_bound(self.g, &cand) <= self.best.len()
            {
                return;
            }
            let pick = cand
                .ones()
                .map(|u| (self.g.row(u).intersection_count(&cand), u))
                .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
            let Some((deg, u)) = pick else { return };
            if deg == 0 {
                // the remaining candidates are pairwise non-adjacent
                let mut found = self.current.clone();
                found.extend(cand.ones());
                self.best = found;
                return;
            }
            let mut with = cand.clone();
            with.set(u, false);
            with.difference_with(self.g.row(u));
            self.current.push(u);
            self.run(with);
            self.current.pop();
            if self.aborted {
                return;
            }
            cand.set(u, false);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaEnumeration {
    /// in lexicographic order
    pub sets: Vec<IndependentSet>,
    /// false when the budget ran out; `sets` is then incomplete
    pub complete: bool,
    pub nodes: u64,
}

pub fn enumerate_alpha_sets(g: &Graph, alpha: usize, budget: u64) -> Result<AlphaEnumeration> {
    enumerate_alpha_sets_with(g, alpha, budget, Exec::default())
}

/// All independent sets of size `alpha`, in lexicographic order.
///
/// The subtrees rooted at each possible smallest vertex are explored
/// independently and concatenated in vertex order, so the output does not
/// depend on `exec`.
pub fn enumerate_alpha_sets_with(
    g: &Graph,
    alpha: usize,
    budget: u64,
    exec: Exec,
) -> Result<AlphaEnumeration> {
    if budget == 0 {
        return param("budget must be positive");
    }
    let n = g.n();
    if alpha == 0 {
        return Ok(AlphaEnumeration {
            sets: vec![IndependentSet::from_sorted_unchecked(Vec::new())],
            complete: true,
            nodes: 1,
        });
    }
    let nodes = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let per_root = exec.map_range(n, |root| {
        let mut cand = FixedBitSet::with_capacity(n);
        cand.insert_range(root + 1..);
        cand.difference_with(g.row(root));
        let mut e = Enumerator {
            g,
            alpha,
            budget,
            nodes: &nodes,
            aborted: &aborted,
            current: vec![root],
            out: Vec::new(),
        };
        e.run(cand);
        e.out
    });
    Ok(AlphaEnumeration {
        sets: per_root.into_iter().flatten().collect(),
        complete: !aborted.load(Ordering::Relaxed),
        nodes: nodes.load(Ordering::Relaxed).min(budget),
    })
}

struct Enumerator<'a> {
    g: &'a Graph,
    alpha: usize,
    budget: u64,
    nodes: &'a AtomicU64,
    aborted: &'a AtomicBool,
    current: Vec<usize>,
    out: Vec<IndependentSet>,
}

impl Enumerator<'_> {
    fn run(&mut self, cand: FixedBitSet) {
        if self.aborted.load(Ordering::Relaxed) {
            return;
        }
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.aborted.store(true, Ordering::Relaxed);
            return;
        }
        if self.current.len() == self.alpha {
            self.out
                .push(IndependentSet::from_sorted_unchecked(self.current.clone()));
            return;
        }
        let need = self.alpha - self.current.len();
        if cand.count_ones(..) < need || clique_cover_bound(self.g, &cand) < need {
            return;
        }
        for u in cand.ones() {
            let mut next = cand.clone();
            next.remove_range(..u + 1);
            next.difference_with(self.g.row(u));
            self.current.push(u);
            self.run(next);
            self.current.pop();
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PencilClassification {
    /// every maximum independent set of the 0-BIG is a pencil
    AllPencils,
    /// a maximum independent set that is not a pencil
    NonPencil(IndependentSet),
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaG0Report {
    pub alpha: Option<usize>,
    pub alpha_sets: usize,
    pub classification: PencilClassification,
    /// `v > k^3 - 2k^2 + 2k`, where only pencils can be maximum
    pub threshold_applies: bool,
}

impl AlphaG0Report {
    pub fn all_pencils(&self) -> Option<bool> {
        match self.classification {
            PencilClassification::AllPencils => Some(true),
            PencilClassification::NonPencil(_) => Some(false),
            PencilClassification::Unknown => None,
        }
    }
}

pub fn g0_pencil_threshold(k: usize) -> usize {
    k * k * k - 2 * k * k + 2 * k
}

/// Decides whether every maximum independent set of the 0-BIG of `d` is a
/// pencil, by exact search plus full enumeration.
pub fn classify_alpha_g0(d: &Design, budget: u64) -> Result<AlphaG0Report> {
    if d.lambda() != 1 {
        return param("pencil classification needs lambda = 1");
    }
    let threshold_applies = d.v() > g0_pencil_threshold(d.k());
    let g0 = build_big(d, 0)?;
    let unknown = |alpha| AlphaG0Report {
        alpha,
        alpha_sets: 0,
        classification: PencilClassification::Unknown,
        threshold_applies,
    };
    let mis = max_independent_set(&g0, budget)?;
    if !mis.exact {
        return Ok(unknown(None));
    }
    let alpha = mis.set.len();
    let all = enumerate_alpha_sets(&g0, alpha, budget)?;
    if !all.complete {
        return Ok(unknown(Some(alpha)));
    }
    let witness = all
        .sets
        .iter()
        .find(|s| pencil_point(d, s).is_none())
        .cloned();
    debug_assert!(!(threshold_applies && witness.is_some()));
    Ok(AlphaG0Report {
        alpha: Some(alpha),
        alpha_sets: all.sets.len(),
        classification: match witness {
            Some(w) => PencilClassification::NonPencil(w),
            None => PencilClassification::AllPencils,
        },
        threshold_applies,
    })
}

/// `i -> |X_i|`: how many vertices outside `set` have exactly `i` neighbors in
/// it. Only nonzero counts are listed.
pub fn xi_census(g: &Graph, set: &[usize]) -> Result<BTreeMap<usize, usize>> {
    if !g.is_independent(set) {
        return param("census needs an independent set");
    }
    let mut mask = FixedBitSet::with_capacity(g.n());
    for &u in set {
        mask.insert(u);
    }
    let mut census = BTreeMap::new();
    for u in (0..g.n()).filter(|&u| !mask.contains(u)) {
        *census
            .entry(g.row(u).intersection_count(&mask))
            .or_insert(0) += 1;
    }
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{make_affine_plane, make_projective_plane, make_sts, StsVariant};

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn pencils() {
        let sts13 = make_sts(13, StsVariant::Cyclic13).unwrap();
        let g0 = build_big(&sts13, 0).unwrap();
        for x in 0..13 {
            let p = pencil(&sts13, x).unwrap();
            assert_eq!(p.len(), 6);
            assert!(g0.is_independent(p.vertices()));
            assert_eq!(pencil_point(&sts13, &p), Some(x));
        }
        let sts9 = make_sts(9, StsVariant::Bose).unwrap();
        assert_eq!(pencil(&sts9, 0).unwrap().len(), 4);
        let fano = make_projective_plane(2).unwrap();
        assert_eq!(pencil(&fano, 0).unwrap().len(), 3);
        assert!(pencil(&fano, 7).is_err());
    }

    #[test]
    fn mis_on_small_graphs() {
        assert_eq!(max_independent_set(&cycle(7), 100).unwrap().set.len(), 3);
        assert_eq!(
            max_independent_set(&Graph::complete(5), 100)
                .unwrap()
                .set
                .len(),
            1
        );
        assert_eq!(
            max_independent_set(&Graph::empty(5), 100)
                .unwrap()
                .set
                .len(),
            5
        );
        let r = max_independent_set(&Graph::empty(0), 100).unwrap();
        assert!(r.exact && r.set.is_empty());
        assert!(max_independent_set(&cycle(5), 0).is_err());
    }

    #[test]
    fn mis_budget_flag() {
        let d = make_sts(15, StsVariant::Kirkman15).unwrap();
        let g0 = build_big(&d, 0).unwrap();
        let r = max_independent_set(&g0, 2).unwrap();
        assert!(!r.exact);
        assert!(g0.is_independent(r.set.vertices()));
    }

    #[test]
    fn enumeration_on_cycle() {
        // C6 has exactly two independent 3-sets
        let e = enumerate_alpha_sets(&cycle(6), 3, 1000).unwrap();
        assert!(e.complete);
        let sets: Vec<_> = e.sets.iter().map(|s| s.vertices().to_vec()).collect();
        assert_eq!(sets, vec![vec![0, 2, 4], vec![1, 3, 5]]);
    }

    #[test]
    fn enumeration_budget_marks_incomplete() {
        let g = Graph::empty(12);
        let e = enumerate_alpha_sets_with(&g, 6, 10, Exec::Sequential).unwrap();
        assert!(!e.complete);
    }

    #[test]
    fn single_vertex_alpha_sets_of_complete_graph() {
        let fano = make_projective_plane(2).unwrap();
        let g1 = build_big(&fano, 1).unwrap();
        let e = enumerate_alpha_sets(&g1, 1, 100).unwrap();
        assert_eq!(e.sets.len(), 7);
    }

    #[test]
    fn census() {
        let ag3 = make_affine_plane(3).unwrap();
        let g1 = build_big(&ag3, 1).unwrap();
        let class = ag3.resolution().unwrap().class(0).to_vec();
        let c = xi_census(&g1, &class).unwrap();
        assert_eq!(c, BTreeMap::from([(3, 9)]));
        assert!(xi_census(&Graph::empty(4), &[0, 1, 2, 3])
            .unwrap()
            .is_empty());
        assert!(xi_census(&g1, &[0, 1, 2, 3]).is_err());
    }

    #[test]
    fn classify_requires_steiner() {
        let blocks = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
        let d = Design::new(4, 3, 2, blocks).unwrap();
        assert!(classify_alpha_g0(&d, 100).is_err());
    }
}
