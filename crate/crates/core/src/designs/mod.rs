//! Steiner 2-designs: the [`Design`] type, balance verification, parallel
//! class search and the explicit constructions in [`construct`].
//!
//! Points are `0..v`. Blocks are strictly increasing point lists and the block
//! list is kept lexicographically sorted, so a block's index is stable and
//! doubles as its vertex id in every block intersection graph.

pub mod construct;
pub mod field;

use std::collections::BTreeMap;

use crate::error::{param, Result};

pub use construct::{
    make_affine_plane, make_kts, make_projective_plane, make_sts, product_design, ColorLabel,
    PointMap, ProductOutput, StsVariant,
};

pub type Block = Vec<usize>;

/// A partition of the block indices into parallel classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    classes: Vec<Vec<usize>>,
}

impl Resolution {
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &[usize] {
        &self.classes[i]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Design {
    v: usize,
    k: usize,
    lambda: usize,
    blocks: Vec<Block>,
    resolution: Option<Resolution>,
}

impl Design {
    /// Builds a design in canonical form. Checks admissibility of `(v, k, lambda)`
    /// and block structure; pair balance is left to [`verify_design`].
    pub fn new(v: usize, k: usize, lambda: usize, blocks: Vec<Block>) -> Result<Self> {
        let (design, _) = Self::canonical(v, k, lambda, blocks)?;
        Ok(design)
    }

    /// Like [`Design::new`], with `classes` given as indices into the input
    /// `blocks`. They are remapped to canonical indices and validated.
    pub fn with_classes(
        v: usize,
        k: usize,
        lambda: usize,
        blocks: Vec<Block>,
        classes: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let (design, old_to_new) = Self::canonical(v, k, lambda, blocks)?;
        let mut remapped = Vec::with_capacity(classes.len());
        for class in classes {
            let mut c = Vec::with_capacity(class.len());
            for i in class {
                match old_to_new.get(i) {
                    Some(&j) => c.push(j),
                    None => return param(format!("class refers to missing block {i}")),
                }
            }
            remapped.push(c);
        }
        design.attach_resolution(remapped)
    }

    /// Attaches a resolution given in canonical block indices.
    pub fn attach_resolution(mut self, mut classes: Vec<Vec<usize>>) -> Result<Self> {
        for c in classes.iter_mut() {
            c.sort_unstable();
        }
        let mut seen = vec![false; self.blocks.len()];
        for (ci, class) in classes.iter().enumerate() {
            let mut covered = vec![false; self.v];
            for &bi in class {
                let Some(block) = self.blocks.get(bi) else {
                    return param(format!("class {ci} refers to missing block {bi}"));
                };
                if std::mem::replace(&mut seen[bi], true) {
                    return param(format!("block {bi} appears in more than one class"));
                }
                for &p in block {
                    if std::mem::replace(&mut covered[p], true) {
                        return param(format!("class {ci} covers point {p} twice"));
                    }
                }
            }
            if let Some(p) = covered.iter().position(|&c| !c) {
                return param(format!("class {ci} misses point {p}"));
            }
        }
        if let Some(bi) = seen.iter().position(|&s| !s) {
            return param(format!("block {bi} is not in any class"));
        }
        if classes.len() != self.r() {
            return param(format!(
                "resolution has {} classes, expected r = {}",
                classes.len(),
                self.r()
            ));
        }
        self.resolution = Some(Resolution { classes });
        Ok(self)
    }

    fn canonical(
        v: usize,
        k: usize,
        lambda: usize,
        mut blocks: Vec<Block>,
    ) -> Result<(Self, Vec<usize>)> {
        check_admissible(v, k, lambda)?;
        for block in blocks.iter_mut() {
            block.sort_unstable();
            if block.len() != k {
                return param(format!("block {block:?} does not have size {k}"));
            }
            if block.windows(2).any(|w| w[0] == w[1]) {
                return param(format!("block {block:?} repeats a point"));
            }
            if block[k - 1] >= v {
                return param(format!("block {block:?} has a point outside 0..{v}"));
            }
        }
        let mut order: Vec<usize> = (0..blocks.len()).collect();
        order.sort_by(|&a, &b| blocks[a].cmp(&blocks[b]));
        let mut old_to_new = vec![0; blocks.len()];
        for (new, &old) in order.iter().enumerate() {
            old_to_new[old] = new;
        }
        let mut sorted: Vec<Block> = order
            .iter()
            .map(|&i| std::mem::take(&mut blocks[i]))
            .collect();
        if lambda == 1 {
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return param(format!("duplicate block {:?}", w[0]));
            }
        }
        sorted.shrink_to_fit();
        Ok((
            Self {
                v,
                k,
                lambda,
                blocks: sorted,
                resolution: None,
            },
            old_to_new,
        ))
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    /// Number of blocks actually present.
    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    /// Block count forced by the parameters.
    pub fn expected_b(&self) -> usize {
        self.lambda * self.v * (self.v - 1) / (self.k * (self.k - 1))
    }

    /// Replication number forced by the parameters.
    pub fn r(&self) -> usize {
        self.lambda * (self.v - 1) / (self.k - 1)
    }

    pub fn resolution(&self) -> Option<&Resolution> {
        self.resolution.as_ref()
    }

    pub fn is_symmetric(&self) -> bool {
        self.expected_b() == self.v
    }

    /// Indices of the blocks containing `x`, ascending.
    pub fn blocks_through(&self, x: usize) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&i| self.blocks[i].binary_search(&x).is_ok())
            .collect()
    }

    /// Size of the intersection of two blocks.
    pub fn meet(&self, a: usize, b: usize) -> usize {
        sorted_intersection_len(&self.blocks[a], &self.blocks[b])
    }

    pub fn without_resolution(&self) -> Self {
        Self {
            resolution: None,
            ..self.clone()
        }
    }
}

pub(crate) fn sorted_intersection_len(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Checks that `(v, k, lambda)` can be the parameters of a 2-design.
pub fn check_admissible(v: usize, k: usize, lambda: usize) -> Result<()> {
    if k < 2 || k >= v {
        return param(format!("need 2 <= k < v, got k = {k}, v = {v}"));
    }
    if lambda == 0 {
        return param("lambda must be positive");
    }
    if !(lambda * (v - 1)).is_multiple_of(k - 1)
        || !(lambda * v * (v - 1)).is_multiple_of(k * (k - 1))
    {
        return param(format!(
            "(v, k, lambda) = ({v}, {k}, {lambda}) is not admissible"
        ));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignReport {
    pub ok: bool,
    pub b: usize,
    pub expected_b: usize,
    pub r: usize,
    /// coverage count -> number of point pairs covered that many times
    pub coverage: BTreeMap<usize, usize>,
    /// pairs whose coverage differs from lambda, with their count
    pub violations: Vec<((usize, usize), usize)>,
}

pub fn verify_design(d: &Design) -> DesignReport {
    let v = d.v;
    let mut count = vec![0usize; v * v];
    for block in &d.blocks {
        for (i, &x) in block.iter().enumerate() {
            for &y in &block[i + 1..] {
                count[x * v + y] += 1;
            }
        }
    }
    let mut coverage = BTreeMap::new();
    let mut violations = Vec::new();
    for x in 0..v {
        for y in x + 1..v {
            let c = count[x * v + y];
            *coverage.entry(c).or_insert(0) += 1;
            if c != d.lambda {
                violations.push(((x, y), c));
            }
        }
    }
    DesignReport {
        ok: violations.is_empty() && d.b() == d.expected_b(),
        b: d.b(),
        expected_b: d.expected_b(),
        r: d.r(),
        coverage,
        violations,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassMode {
    /// every point covered
    Full,
    /// every point but one covered
    Near,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassSearch {
    Found(Vec<usize>),
    /// search completed without a solution
    NoneExists,
    /// node budget hit before the search completed
    Unknown,
}

/// Exact-cover search for a (near) parallel class.
///
/// Branches on the lowest uncovered point, trying the blocks through it in
/// index order; in `Near` mode skipping the point is tried last. The returned
/// block indices are ascending.
pub fn find_parallel_class(d: &Design, mode: ClassMode, budget: u64) -> Result<ClassSearch> {
    if budget == 0 {
        return param("budget must be positive");
    }
    let wanted_rem = match mode {
        ClassMode::Full => 0,
        ClassMode::Near => 1,
    };
    if d.v % d.k != wanted_rem {
        return Ok(ClassSearch::NoneExists);
    }
    let through: Vec<Vec<usize>> = (0..d.v).map(|x| d.blocks_through(x)).collect();
    let mut search = ClassSearcher {
        d,
        through: &through,
        covered: vec![false; d.v],
        chosen: Vec::new(),
        skipped: mode == ClassMode::Full,
        nodes: 0,
        budget,
    };
    Ok(match search.run(0) {
        Some(true) => {
            let mut found = search.chosen;
            found.sort_unstable();
            ClassSearch::Found(found)
        }
        Some(false) => ClassSearch::NoneExists,
        None => ClassSearch::Unknown,
    })
}

struct ClassSearcher<'a> {
    d: &'a Design,
    through: &'a [Vec<usize>],
    covered: Vec<bool>,
    chosen: Vec<usize>,
    // in Full mode this starts true so no point may be skipped
    skipped: bool,
    nodes: u64,
    budget: u64,
}

impl ClassSearcher<'_> {
    /// `Some(found)` when the subtree was fully explored or a solution found,
    /// `None` when the budget ran out.
    fn run(&mut self, from: usize) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let Some(p) = (from..self.d.v).find(|&x| !self.covered[x]) else {
            return Some(true);
        };
        let through = self.through;
        for &bi in &through[p] {
            let block = &self.d.blocks[bi];
            if block.iter().any(|&x| self.covered[x]) {
                continue;
            }
            for &x in block {
                self.covered[x] = true;
            }
            self.chosen.push(bi);
            match self.run(p + 1) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            self.chosen.pop();
            for &x in block {
                self.covered[x] = false;
            }
        }
        if !self.skipped {
            self.skipped = true;
            self.covered[p] = true;
            match self.run(p + 1) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            self.covered[p] = false;
            self.skipped = false;
        }
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano() -> Design {
        let blocks = vec![
            vec![0, 1, 3],
            vec![1, 2, 4],
            vec![2, 3, 5],
            vec![3, 4, 6],
            vec![4, 5, 0],
            vec![5, 6, 1],
            vec![6, 0, 2],
        ];
        Design::new(7, 3, 1, blocks).unwrap()
    }

    #[test]
    fn canonical_form_sorts_blocks_and_points() {
        let d = fano();
        assert_eq!(d.block(0), &[0, 1, 3]);
        assert_eq!(d.block(1), &[0, 2, 6]);
        assert!(d.blocks().windows(2).all(|w| w[0] < w[1]));
        assert_eq!((d.b(), d.r(), d.expected_b()), (7, 3, 7));
        assert!(verify_design(&d).ok);
    }

    #[test]
    fn structural_errors() {
        assert!(Design::new(7, 3, 1, vec![vec![0, 1]]).is_err());
        assert!(Design::new(7, 3, 1, vec![vec![0, 1, 1]]).is_err());
        assert!(Design::new(7, 3, 1, vec![vec![0, 1, 7]]).is_err());
        assert!(Design::new(7, 3, 1, vec![vec![0, 1, 2], vec![2, 1, 0]]).is_err());
        // inadmissible parameters
        assert!(Design::new(8, 3, 1, vec![]).is_err());
        assert!(Design::new(3, 3, 1, vec![]).is_err());
        assert!(Design::new(7, 3, 0, vec![]).is_err());
    }

    #[test]
    fn deleting_a_block_uncovers_three_pairs() {
        let mut blocks = fano().blocks().to_vec();
        blocks.remove(2);
        let report = verify_design(&Design::new(7, 3, 1, blocks).unwrap());
        assert!(!report.ok);
        assert_eq!(report.violations.len(), 3);
        assert!(report.violations.iter().all(|&(_, c)| c == 0));
        assert_eq!(report.coverage[&0], 3);
        assert_eq!(report.coverage[&1], 18);
    }

    #[test]
    fn resolution_validation() {
        // AG(2,2): three classes of two disjoint edges
        let blocks = vec![
            vec![0, 1],
            vec![2, 3],
            vec![0, 2],
            vec![1, 3],
            vec![0, 3],
            vec![1, 2],
        ];
        let ok = Design::with_classes(
            4,
            2,
            1,
            blocks.clone(),
            vec![vec![0, 1], vec![2, 3], vec![4, 5]],
        );
        let d = ok.unwrap();
        assert_eq!(d.resolution().unwrap().len(), 3);
        // classes remapped to canonical indices: [0,1] is block 0, [2,3] is block 5
        assert_eq!(d.resolution().unwrap().class(0), &[0, 5]);

        let overlap = Design::with_classes(
            4,
            2,
            1,
            blocks.clone(),
            vec![vec![0, 2], vec![1, 3], vec![4, 5]],
        );
        assert!(overlap.is_err());
        let too_few = Design::with_classes(4, 2, 1, blocks, vec![vec![0, 1], vec![2, 3]]);
        assert!(too_few.is_err());
    }

    #[test]
    fn parallel_class_on_fano_does_not_exist() {
        let d = fano();
        assert_eq!(
            find_parallel_class(&d, ClassMode::Full, 1000).unwrap(),
            ClassSearch::NoneExists
        );
        // any two lines meet, so not even two disjoint blocks exist
        assert_eq!(
            find_parallel_class(&d, ClassMode::Near, 1000).unwrap(),
            ClassSearch::NoneExists
        );
        assert!(find_parallel_class(&d, ClassMode::Near, 0).is_err());
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let d = make_sts(13, StsVariant::Cyclic13).unwrap();
        assert_eq!(
            find_parallel_class(&d, ClassMode::Near, 1).unwrap(),
            ClassSearch::Unknown
        );
    }
}
