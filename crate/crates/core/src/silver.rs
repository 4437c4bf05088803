//! Colorings, rainbow and silver predicates, the canonical silver colorings of
//! symmetric designs and affine planes, and theorem-based non-silverness
//! screens.
//!
//! For an `r`-regular graph with a proper `(r+1)`-coloring, a vertex is
//! rainbow when all `r+1` colors appear on its closed neighborhood. Since that
//! neighborhood has exactly `r+1` vertices, rainbow is the same as the colors
//! on it being pairwise distinct.

use crate::big::build_big;
use crate::decider::TripleCertificate;
use crate::designs::{verify_design, Design};
use crate::error::{param, Result};
use crate::graph::Graph;
use crate::independence::{g0_pencil_threshold, IndependentSet};

/// A total vertex coloring with colors `0..num_colors`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<usize>,
    num_colors: usize,
}

impl Coloring {
    pub fn new(colors: Vec<usize>, num_colors: usize) -> Result<Self> {
        if let Some((v, &c)) = colors.iter().enumerate().find(|&(_, &c)| c >= num_colors) {
            return param(format!(
                "vertex {v} has color {c}, only {num_colors} colors"
            ));
        }
        Ok(Self { colors, num_colors })
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }
}

fn check_total(g: &Graph, c: &Coloring) -> Result<()> {
    if c.len() != g.n() {
        return param(format!(
            "coloring covers {} vertices, graph has {}",
            c.len(),
            g.n()
        ));
    }
    Ok(())
}

pub fn is_proper(g: &Graph, c: &Coloring) -> Result<bool> {
    check_total(g, c)?;
    Ok((0..g.n()).all(|u| g.neighbors(u).all(|w| c.color(u) != c.color(w))))
}

fn rainbow_at(g: &Graph, c: &Coloring, x: usize, seen: &mut [bool]) -> bool {
    seen.iter_mut().for_each(|s| *s = false);
    std::iter::once(x)
        .chain(g.neighbors(x))
        .all(|u| !std::mem::replace(&mut seen[c.color(u)], true))
}

fn check_rainbow_preconditions(g: &Graph, c: &Coloring) -> Result<()> {
    check_total(g, c)?;
    match g.regular_degree() {
        Some(r) if r + 1 == c.num_colors() => Ok(()),
        Some(r) => param(format!(
            "{r}-regular graph needs {} colors, coloring has {}",
            r + 1,
            c.num_colors()
        )),
        None => param("rainbow vertices are only defined on regular graphs"),
    }
}

/// Vertices whose closed neighborhood carries every color, ascending.
pub fn rainbow_vertices(g: &Graph, c: &Coloring) -> Result<Vec<usize>> {
    check_rainbow_preconditions(g, c)?;
    let mut seen = vec![false; c.num_colors()];
    Ok((0..g.n())
        .filter(|&x| rainbow_at(g, c, x, &mut seen))
        .collect())
}

/// Proper, and every vertex of `set` rainbow. With `alpha = Some(a)` the caller
/// also asserts that `a` is the independence number, and `set` must have that
/// size.
pub fn is_silver(g: &Graph, c: &Coloring, set: &[usize], alpha: Option<usize>) -> Result<bool> {
    if !g.is_independent(set) {
        return param("silver colorings are defined with respect to an independent set");
    }
    if !is_proper(g, c)? {
        return Ok(false);
    }
    check_rainbow_preconditions(g, c)?;
    if alpha.is_some_and(|a| a != set.len()) {
        return Ok(false);
    }
    let mut seen = vec![false; c.num_colors()];
    Ok(set.iter().all(|&x| rainbow_at(g, c, x, &mut seen)))
}

pub fn is_totally_silver(g: &Graph, c: &Coloring) -> Result<bool> {
    Ok(is_proper(g, c)? && rainbow_vertices(g, c)?.len() == g.n())
}

/// Parallel classes of an affine plane: the attached resolution, or the
/// classes of the "equal or disjoint" relation when none is attached.
fn affine_classes(d: &Design) -> Vec<Vec<usize>> {
    if let Some(res) = d.resolution() {
        return res.classes().to_vec();
    }
    let mut assigned = vec![false; d.b()];
    let mut classes = Vec::new();
    for a in 0..d.b() {
        if assigned[a] {
            continue;
        }
        let class: Vec<usize> = (a..d.b())
            .filter(|&b| b == a || d.meet(a, b) == 0)
            .collect();
        for &b in &class {
            assigned[b] = true;
        }
        classes.push(class);
    }
    classes
}

/// The explicit silver colorings of the `i`-BIG of a symmetric design or an
/// affine plane; `None` for any other design.
///
/// * symmetric, `i = λ`: complete graph, vertex `u` gets color `u`, α-set `{0}`.
/// * symmetric, `i != λ`, or affine with `i >= 2`: edgeless, one color, α-set
///   all vertices.
/// * affine, `i = 0`: disjoint cliques, one per parallel class; the `t`-th
///   block of a class gets color `t`; α-set is the first block of each class.
/// * affine, `i = 1`: complete multipartite with the classes as parts; class 0
///   gets color 0 throughout, block `t` of class `j >= 1` gets
///   `(j - 1) n + t + 1`; α-set is class 0.
pub fn construct_silver_canonical(d: &Design, i: usize) -> Option<(Coloring, IndependentSet)> {
    if i > d.k() || !verify_design(d).ok {
        return None;
    }
    let b = d.b();
    let edgeless = || {
        Some((
            Coloring::new(vec![0; b], 1).ok()?,
            IndependentSet::from_sorted_unchecked((0..b).collect()),
        ))
    };
    if d.is_symmetric() {
        if i == d.lambda() {
            return Some((
                Coloring::new((0..b).collect(), b).ok()?,
                IndependentSet::from_sorted_unchecked(vec![0]),
            ));
        }
        return edgeless();
    }
    let n = d.k();
    if d.v() != n * n || d.lambda() != 1 {
        return None;
    }
    let classes = affine_classes(d);
    let mut colors = vec![0; b];
    match i {
        0 => {
            for class in &classes {
                for (t, &blk) in class.iter().enumerate() {
                    colors[blk] = t;
                }
            }
            let mut firsts: Vec<usize> = classes.iter().map(|c| c[0]).collect();
            firsts.sort_unstable();
            Some((
                Coloring::new(colors, n).ok()?,
                IndependentSet::from_sorted_unchecked(firsts),
            ))
        }
        1 => {
            for (j, class) in classes.iter().enumerate().skip(1) {
                for (t, &blk) in class.iter().enumerate() {
                    colors[blk] = (j - 1) * n + t + 1;
                }
            }
            Some((
                Coloring::new(colors, n * n + 1).ok()?,
                IndependentSet::from_sorted_unchecked(classes[0].clone()),
            ))
        }
        _ => edgeless(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reason {
    /// the 1-BIG of a design with a parallel class needs k^2 | v
    TheoremForallk,
    /// α(1-BIG) above k * floor(v(v-1) / (k^2 v - k^3 + k^2 - k))
    TheoremLowerbound,
    /// the 1-BIG of a design with a near parallel class
    TheoremApc,
    /// the 0-BIG when v > k^3 - 2k^2 + 2k
    TheoremG0Forallk,
    ExhaustiveSearch,
    TripleCertificate,
}

impl std::fmt::Display for Reason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Reason::TheoremForallk => "parallel class with k^2 not dividing v",
            Reason::TheoremLowerbound => "independence number above the silver bound",
            Reason::TheoremApc => "near parallel class",
            Reason::TheoremG0Forallk => "v above k^3 - 2k^2 + 2k",
            Reason::ExhaustiveSearch => "exhaustive search over all alpha-sets",
            Reason::TripleCertificate => "triple certificate for every alpha-set",
        };
        f.write_str(s)
    }
}

/// How a single α-set was ruled out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    Triple(TripleCertificate),
    Search { steps: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaSetRefutation {
    pub alpha_set: IndependentSet,
    pub by: Refutation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    ParallelClass(Vec<usize>),
    NearParallelClass(Vec<usize>),
    LowerBound { alpha: usize, bound: usize },
    Threshold { v: usize, threshold: usize },
    Refutations(Vec<AlphaSetRefutation>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Silver {
        coloring: Coloring,
        alpha_set: IndependentSet,
    },
    NotSilver {
        reason: Reason,
        certificate: Certificate,
    },
    Unknown {
        budget: u64,
    },
}

impl Verdict {
    pub fn reason(&self) -> Option<Reason> {
        match self {
            Verdict::NotSilver { reason, .. } => Some(*reason),
            _ => None,
        }
    }

    pub fn is_silver(&self) -> bool {
        matches!(self, Verdict::Silver { .. })
    }
}

/// Structure facts fed to [`screen`]. Classes are checked against the design;
/// `alpha` is taken as given.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScreenFacts {
    pub pc: Option<Vec<usize>>,
    pub near_pc: Option<Vec<usize>>,
    pub alpha: Option<usize>,
}

/// `k * floor(v(v-1) / (k^2 v - k^3 + k^2 - k))`: a silver 1-BIG has α at most this.
pub fn silver_alpha_bound(v: usize, k: usize) -> usize {
    k * (v * (v - 1) / (k * k * v + k * k - k * k * k - k))
}

fn points_covered(d: &Design, class: &[usize]) -> Result<usize> {
    let mut covered = vec![false; d.v()];
    let mut count = 0;
    for &bi in class {
        if bi >= d.b() {
            return param(format!("block index {bi} out of range"));
        }
        for &p in d.block(bi) {
            if std::mem::replace(&mut covered[p], true) {
                return param(format!("blocks of the class overlap in point {p}"));
            }
            count += 1;
        }
    }
    Ok(count)
}

/// Every non-silverness theorem that applies to the `i`-BIG of `d`, in the
/// order forallk, lowerbound, APC, G0. An empty list makes no claim either way.
pub fn screen(d: &Design, i: usize, facts: &ScreenFacts) -> Result<Vec<Verdict>> {
    if d.lambda() != 1 {
        return param("screens apply to Steiner 2-designs only");
    }
    if i > 1 {
        return param(format!("screens exist for i in {{0, 1}}, got {i}"));
    }
    let (v, k) = (d.v(), d.k());
    if let Some(pc) = &facts.pc {
        if points_covered(d, pc)? != v {
            return param("supplied parallel class does not cover every point");
        }
    }
    if let Some(near) = &facts.near_pc {
        if points_covered(d, near)? != v - 1 {
            return param("supplied near parallel class must miss exactly one point");
        }
    }
    let mut out = Vec::new();
    if i == 1 {
        if let Some(pc) = &facts.pc {
            if v % (k * k) != 0 {
                out.push(Verdict::NotSilver {
                    reason: Reason::TheoremForallk,
                    certificate: Certificate::ParallelClass(pc.clone()),
                });
            }
        }
        if let Some(alpha) = facts.alpha {
            let bound = silver_alpha_bound(v, k);
            if alpha > bound {
                out.push(Verdict::NotSilver {
                    reason: Reason::TheoremLowerbound,
                    certificate: Certificate::LowerBound { alpha, bound },
                });
            }
        }
        if let Some(near) = &facts.near_pc {
            out.push(Verdict::NotSilver {
                reason: Reason::TheoremApc,
                certificate: Certificate::NearParallelClass(near.clone()),
            });
        }
    } else {
        let threshold = g0_pencil_threshold(k);
        if v > threshold {
            out.push(Verdict::NotSilver {
                reason: Reason::TheoremG0Forallk,
                certificate: Certificate::Threshold { v, threshold },
            });
        }
    }
    Ok(out)
}

/// Convenience: the `i`-BIG together with its canonical silver coloring.
pub fn canonical_big(d: &Design, i: usize) -> Result<Option<(Graph, Coloring, IndependentSet)>> {
    let g = build_big(d, i)?;
    Ok(construct_silver_canonical(d, i).map(|(c, s)| (g, c, s)))
}
