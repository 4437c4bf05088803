//! Exact decision of silverness.
//!
//! Fix an independent set `I` of an `r`-regular graph `G`. A silver coloring
//! with respect to `I` is a proper `(r+1)`-coloring in which every `N[x]`,
//! `x` in `I`, is rainbow, i.e. colored with pairwise distinct colors. That is
//! exactly a proper `(r+1)`-coloring of the conflict graph `H`: `G` plus a
//! clique on each `N[x]`. The search below colors `H` with forward checking,
//! naked singles, and hidden singles inside each `N[x]` (every color must
//! appear exactly once there).

use fixedbitset::FixedBitSet;

use crate::error::{param, Result};
use crate::graph::Graph;
use crate::independence::{enumerate_alpha_sets_with, max_independent_set, IndependentSet};
use crate::par::Exec;
use crate::silver::{
    is_proper, rainbow_vertices, AlphaSetRefutation, Certificate, Coloring, Reason, Refutation,
    Verdict,
};

pub const DEFAULT_DECIDE_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecideOptions {
    /// search steps (nodes plus domain removals) before giving up
    pub budget: u64,
    /// Precolor `N[x0]` for the smallest `x0` in `I` with `0, 1, ..., r` in
    /// vertex order. Sound because every solution can be renamed to agree
    /// there.
    pub symmetry_break: bool,
}

impl DecideOptions {
    pub fn new(budget: u64) -> Self {
        Self {
            budget,
            symmetry_break: true,
        }
    }
}

impl Default for DecideOptions {
    fn default() -> Self {
        Self::new(DEFAULT_DECIDE_BUDGET)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Sat(Coloring),
    Unsat,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecideReport {
    pub decision: Decision,
    pub steps: u64,
}

const UNSET: u32 = u32::MAX;

struct Problem {
    n: usize,
    colors: usize,
    words: usize,
    conflict: Vec<FixedBitSet>,
    groups: Vec<Vec<usize>>,
    rank: Vec<usize>,
}

#[derive(Clone)]
struct State {
    dom: Vec<u64>,
    color: Vec<u32>,
}

impl Problem {
    fn new(g: &Graph, set: &IndependentSet, colors: usize) -> Self {
        let n = g.n();
        let groups: Vec<Vec<usize>> = set
            .vertices()
            .iter()
            .map(|&x| g.closed_neighborhood(x))
            .collect();
        let mut conflict: Vec<FixedBitSet> = (0..n).map(|u| g.row(u).clone()).collect();
        let mut covers = vec![0usize; n];
        for grp in &groups {
            for &u in grp {
                covers[u] += 1;
                for &w in grp {
                    if w != u {
                        conflict[u].insert(w);
                    }
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&u| {
            (
                std::cmp::Reverse(covers[u]),
                std::cmp::Reverse(g.degree(u)),
                u,
            )
        });
        let mut rank = vec![0; n];
        for (pos, &u) in order.iter().enumerate() {
            rank[u] = pos;
        }
        Self {
            n,
            colors,
            words: colors.div_ceil(64).max(1),
            conflict,
            groups,
            rank,
        }
    }

    fn initial(&self) -> State {
        let mut full = vec![0u64; self.words];
        for c in 0..self.colors {
            full[c / 64] |= 1 << (c % 64);
        }
        State {
            dom: full.repeat(self.n),
            color: vec![UNSET; self.n],
        }
    }

    fn dom<'s>(&self, st: &'s State, v: usize) -> &'s [u64] {
        &st.dom[v * self.words..(v + 1) * self.words]
    }

    fn has(&self, st: &State, v: usize, c: usize) -> bool {
        st.dom[v * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    fn count(&self, st: &State, v: usize) -> u32 {
        self.dom(st, v).iter().map(|w| w.count_ones()).sum()
    }

    fn first(&self, st: &State, v: usize) -> Option<usize> {
        self.dom(st, v)
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn assign(&self, st: &mut State, v: usize, c: usize) {
        let d = &mut st.dom[v * self.words..(v + 1) * self.words];
        d.fill(0);
        d[c / 64] = 1 << (c % 64);
        st.color[v] = c as u32;
    }
}

struct Solver<'p> {
    p: &'p Problem,
    steps: u64,
    budget: u64,
    aborted: bool,
}

impl Solver<'_> {
    fn tick(&mut self) -> bool {
        self.steps += 1;
        if self.steps > self.budget {
            self.aborted = true;
        }
        !self.aborted
    }

    /// Runs to a fixpoint; false on a wipe-out or when the budget runs out.
    fn propagate(&mut self, st: &mut State, queue: &mut Vec<usize>) -> bool {
        let p = self.p;
        loop {
            while let Some(v) = queue.pop() {
                let c = st.color[v];
                for u in p.conflict[v].ones() {
                    if st.color[u] == c {
                        return false;
                    }
                    if st.color[u] == UNSET && p.has(st, u, c as usize) {
                        st.dom[u * p.words + c as usize / 64] &= !(1 << (c % 64));
                        if !self.tick() {
                            return false;
                        }
                        match p.count(st, u) {
                            0 => return false,
                            1 => {
                                let only = p.first(st, u).unwrap();
                                p.assign(st, u, only);
                                queue.push(u);
                            }
                            _ => {}
                        }
                    }
                }
            }
            match self.hidden_single(st) {
                Err(()) => return false,
                Ok(Some(v)) => queue.push(v),
                Ok(None) => return true,
            }
        }
    }

    /// Finds a color with a single possible place in some group and assigns it.
    fn hidden_single(&mut self, st: &mut State) -> std::result::Result<Option<usize>, ()> {
        let p = self.p;
        let mut used = vec![false; p.colors];
        for grp in &p.groups {
            used.fill(false);
            for &u in grp {
                if st.color[u] != UNSET {
                    used[st.color[u] as usize] = true;
                }
            }
            for c in (0..p.colors).filter(|&c| !used[c]) {
                let mut places = grp
                    .iter()
                    .filter(|&&u| st.color[u] == UNSET && p.has(st, u, c));
                match (places.next(), places.next()) {
                    (None, _) => return Err(()),
                    (Some(&u), None) => {
                        p.assign(st, u, c);
                        return Ok(Some(u));
                    }
                    _ => {}
                }
            }
        }
        Ok(None)
    }

    fn search(&mut self, st: State) -> Option<State> {
        if !self.tick() {
            return None;
        }
        let p = self.p;
        let pick = (0..p.n)
            .filter(|&u| st.color[u] == UNSET)
            .min_by_key(|&u| (p.count(&st, u), p.rank[u]));
        let Some(v) = pick else {
            return Some(st);
        };
        for c in (0..p.colors).filter(|&c| p.has(&st, v, c)) {
            let mut next = st.clone();
            p.assign(&mut next, v, c);
            if self.propagate(&mut next, &mut vec![v]) {
                if let Some(sol) = self.search(next) {
                    return Some(sol);
                }
            }
            if self.aborted {
                return None;
            }
        }
        None
    }
}

fn regular_degree(g: &Graph) -> Result<usize> {
    g.regular_degree()
        .ok_or_else(|| crate::Error::Parameter("silver colorings need a regular graph".into()))
}

pub fn decide_silver(g: &Graph, set: &IndependentSet, budget: u64) -> Result<DecideReport> {
    decide_silver_with(g, set, DecideOptions::new(budget))
}

/// Searches for a proper `(r+1)`-coloring of the `r`-regular `g` in which
/// every vertex of `set` is rainbow. `Sat` colorings are re-verified.
pub fn decide_silver_with(
    g: &Graph,
    set: &IndependentSet,
    opts: DecideOptions,
) -> Result<DecideReport> {
    let r = regular_degree(g)?;
    if !g.is_independent(set.vertices()) {
        return param("the set is not independent in this graph");
    }
    if opts.budget == 0 {
        return param("budget must be positive");
    }
    let p = Problem::new(g, set, r + 1);
    let mut solver = Solver {
        p: &p,
        steps: 0,
        budget: opts.budget,
        aborted: false,
    };
    let mut st = p.initial();
    let mut queue = Vec::new();
    if let (true, Some(&x0)) = (opts.symmetry_break, set.vertices().first()) {
        for (c, u) in g.closed_neighborhood(x0).into_iter().enumerate() {
            p.assign(&mut st, u, c);
            queue.push(u);
        }
    }
    let solved = if solver.propagate(&mut st, &mut queue) {
        solver.search(st)
    } else {
        None
    };
    let decision = match solved {
        Some(st) => {
            let coloring = Coloring::new(st.color.iter().map(|&c| c as usize).collect(), r + 1)?;
            let rainbow = rainbow_vertices(g, &coloring)?;
            assert!(
                is_proper(g, &coloring)?
                    && set
                        .vertices()
                        .iter()
                        .all(|x| rainbow.binary_search(x).is_ok()),
                "search returned an invalid coloring"
            );
            Decision::Sat(coloring)
        }
        None if solver.aborted => Decision::Unknown,
        None => Decision::Unsat,
    };
    Ok(DecideReport {
        decision,
        steps: solver.steps.min(opts.budget),
    })
}

/// Three vertices of an independent set `I` with no common neighbor whose
/// pairwise common neighborhoods together hold more than `r+1` vertices.
///
/// In a coloring where all three are rainbow, a vertex adjacent to two of them
/// cannot share a color with anything else adjacent to any of the three, so
/// those vertices need pairwise distinct colors: more than `r+1` of them is
/// impossible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleCertificate {
    pub blocks: [usize; 3],
    /// `N(b1) ∩ N(b2)`, `N(b2) ∩ N(b3)`, `N(b1) ∩ N(b3)`
    pub pairwise: [Vec<usize>; 3],
    pub total: usize,
    pub colors: usize,
}

fn common(g: &Graph, a: usize, b: usize) -> FixedBitSet {
    let mut s = g.row(a).clone();
    s.intersect_with(g.row(b));
    s
}

impl TripleCertificate {
    /// Recomputes every claim from `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        let [a, b, c] = self.blocks;
        let n = g.n();
        if a >= n || b >= n || c >= n || !g.is_independent(&[a, b, c]) {
            return false;
        }
        if g.regular_degree().map(|r| r + 1) != Some(self.colors) {
            return false;
        }
        let mut ab = common(g, a, b);
        let (bc, ac) = (common(g, b, c), common(g, a, c));
        let expected = [&ab, &bc, &ac].map(|s| s.ones().collect::<Vec<_>>());
        if expected != self.pairwise {
            return false;
        }
        ab.intersect_with(&bc);
        let total: usize = self.pairwise.iter().map(Vec::len).sum();
        ab.is_clear() && total == self.total && total > self.colors
    }
}

/// First triple of `set`, in lexicographic order, that certifies no silver
/// coloring exists for it.
pub fn find_triple_certificate(
    g: &Graph,
    set: &IndependentSet,
) -> Result<Option<TripleCertificate>> {
    let r = regular_degree(g)?;
    if !g.is_independent(set.vertices()) {
        return param("the set is not independent in this graph");
    }
    let s = set.vertices();
    for (i, &a) in s.iter().enumerate() {
        for (j, &b) in s.iter().enumerate().skip(i + 1) {
            let ab = common(g, a, b);
            for &c in &s[j + 1..] {
                let (bc, ac) = (common(g, b, c), common(g, a, c));
                if !ab.is_disjoint(&bc) {
                    continue;
                }
                let total = ab.count_ones(..) + bc.count_ones(..) + ac.count_ones(..);
                if total > r + 1 {
                    return Ok(Some(TripleCertificate {
                        blocks: [a, b, c],
                        pairwise: [&ab, &bc, &ac].map(|x| x.ones().collect()),
                        total,
                        colors: r + 1,
                    }));
                }
            }
        }
    }
    Ok(None)
}

pub fn decide_silver_any(g: &Graph, budget: u64) -> Result<Verdict> {
    decide_silver_any_with(g, budget, Exec::default())
}

/// Decides whether `g` is silver, i.e. silver with respect to at least one
/// maximum independent set. Each α-set is first tried against the triple
/// certificate and then searched exhaustively; α-sets are handled in parallel
/// under `Exec::Parallel`. A `Silver` verdict reports the lexicographically
/// first α-set that admits one.
pub fn decide_silver_any_with(g: &Graph, budget: u64, exec: Exec) -> Result<Verdict> {
    regular_degree(g)?;
    if budget == 0 {
        return param("budget must be positive");
    }
    let unknown = Ok(Verdict::Unknown { budget });
    let mis = max_independent_set(g, budget)?;
    if !mis.exact {
        return unknown;
    }
    let all = enumerate_alpha_sets_with(g, mis.set.len(), budget, exec)?;
    if !all.complete {
        return unknown;
    }
    let outcomes = exec.map(
        &all.sets,
        |s| -> Result<Option<Refutation>, Option<Coloring>> {
            if let Ok(Some(cert)) = find_triple_certificate(g, s) {
                return Ok(Some(Refutation::Triple(cert)));
            }
            match decide_silver(g, s, budget) {
                Ok(DecideReport {
                    decision: Decision::Sat(c),
                    ..
                }) => Err(Some(c)),
                Ok(DecideReport {
                    decision: Decision::Unsat,
                    steps,
                }) => Ok(Some(Refutation::Search { steps })),
                _ => Ok(None),
            }
        },
    );
    let mut refutations = Vec::with_capacity(outcomes.len());
    let mut incomplete = false;
    for (set, outcome) in all.sets.into_iter().zip(outcomes) {
        match outcome {
            Err(Some(coloring)) => {
                return Ok(Verdict::Silver {
                    coloring,
                    alpha_set: set,
                })
            }
            Err(None) => unreachable!(),
            Ok(Some(by)) => refutations.push(AlphaSetRefutation { alpha_set: set, by }),
            Ok(None) => incomplete = true,
        }
    }
    if incomplete {
        return unknown;
    }
    let reason = if refutations
        .iter()
        .all(|r| matches!(r.by, Refutation::Triple(_)))
    {
        Reason::TripleCertificate
    } else {
        Reason::ExhaustiveSearch
    };
    Ok(Verdict::NotSilver {
        reason,
        certificate: Certificate::Refutations(refutations),
    })
}
