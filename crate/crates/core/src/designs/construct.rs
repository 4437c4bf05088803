//! Explicit constructions: Steiner triple systems, affine and projective
//! planes, Kirkman triple systems and the affine-plane product.
//!
//! Where a construction is usually written with points `1..=v` or coordinates
//! `(i, j)` with `1 <= i, j <= k`, the 0-based point is obtained by
//! subtracting one from every label.

use super::field::GaloisField;
use super::{verify_design, Block, Design};
use crate::error::{param, Result};
use crate::independence::IndependentSet;
use crate::silver::Coloring;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StsVariant {
    /// v = 3 (mod 6), from the idempotent commutative quasigroup of order v/3
    Bose,
    /// v = 1 (mod 6), from the half-idempotent commutative quasigroup of order (v-1)/3
    Skolem,
    /// base blocks {0,1,4}, {0,2,7} developed mod 13
    Cyclic13,
    /// the cyclic STS(13) with one four-block trade swapped
    Noncyclic13,
    /// a fixed resolvable STS(15) with its resolution
    Kirkman15,
}

const CYCLIC13_BASE: [[usize; 3]; 2] = [[0, 1, 4], [0, 2, 7]];

// Labels 1..13 shifted down by one. Both trades cover the same twelve pairs.
const TRADE_OUT: [[usize; 3]; 4] = [[0, 1, 4], [0, 2, 7], [1, 7, 9], [2, 4, 9]];
const TRADE_IN: [[usize; 3]; 4] = [[0, 1, 7], [0, 2, 4], [1, 4, 9], [2, 7, 9]];

// Kirkman's fifteen schoolgirls, one row per day.
const KTS15_CLASSES: [[[usize; 3]; 5]; 7] = [
    [[0, 1, 9], [2, 4, 12], [5, 10, 11], [7, 8, 13], [3, 6, 14]],
    [[0, 2, 7], [3, 4, 8], [5, 6, 12], [9, 11, 13], [1, 10, 14]],
    [[0, 3, 11], [1, 7, 12], [6, 8, 10], [2, 5, 13], [4, 9, 14]],
    [[0, 4, 6], [1, 8, 11], [2, 9, 10], [3, 12, 13], [5, 7, 14]],
    [[0, 5, 8], [1, 2, 3], [6, 7, 9], [4, 10, 13], [11, 12, 14]],
    [[0, 10, 12], [3, 5, 9], [4, 7, 11], [1, 6, 13], [2, 8, 14]],
    [[1, 4, 5], [2, 6, 11], [3, 7, 10], [8, 9, 12], [0, 13, 14]],
];

/// Every constructor funnels through here so nothing unbalanced escapes.
fn checked(d: Design) -> Result<Design> {
    let report = verify_design(&d);
    if !report.ok {
        return param(format!(
            "construction produced an unbalanced design ({} bad pairs)",
            report.violations.len()
        ));
    }
    Ok(d)
}

pub fn make_sts(v: usize, variant: StsVariant) -> Result<Design> {
    match variant {
        StsVariant::Bose => {
            if v % 6 != 3 || v < 9 {
                return param(format!(
                    "Bose construction needs v = 3 (mod 6), v >= 9; got {v}"
                ));
            }
            checked(bose(v)?)
        }
        StsVariant::Skolem => {
            if v % 6 != 1 || v < 7 {
                return param(format!(
                    "Skolem construction needs v = 1 (mod 6), v >= 7; got {v}"
                ));
            }
            checked(skolem(v)?)
        }
        StsVariant::Cyclic13 | StsVariant::Noncyclic13 if v != 13 => {
            param(format!("this STS(13) variant needs v = 13; got {v}"))
        }
        StsVariant::Cyclic13 => checked(Design::new(13, 3, 1, cyclic13_blocks())?),
        StsVariant::Noncyclic13 => {
            let mut blocks = cyclic13_blocks();
            blocks.retain(|b| !TRADE_OUT.iter().any(|t| t[..] == b[..]));
            blocks.extend(TRADE_IN.iter().map(|t| t.to_vec()));
            checked(Design::new(13, 3, 1, blocks)?)
        }
        StsVariant::Kirkman15 => {
            if v != 15 {
                return param(format!("the embedded KTS needs v = 15; got {v}"));
            }
            let mut blocks = Vec::new();
            let mut classes = Vec::new();
            for day in KTS15_CLASSES {
                let start = blocks.len();
                blocks.extend(day.iter().map(|t| t.to_vec()));
                classes.push((start..blocks.len()).collect());
            }
            checked(Design::with_classes(15, 3, 1, blocks, classes)?)
        }
    }
}

fn cyclic13_blocks() -> Vec<Block> {
    let mut blocks = Vec::with_capacity(26);
    for base in CYCLIC13_BASE {
        for shift in 0..13 {
            let mut b: Block = base.iter().map(|x| (x + shift) % 13).collect();
            b.sort_unstable();
            blocks.push(b);
        }
    }
    blocks
}

/// Point `(x, i)` with `x` in Z_n and `i` in Z_3 is `i * n + x`.
fn bose(v: usize) -> Result<Design> {
    let n = v / 3;
    let half = n.div_ceil(2); // inverse of 2 mod n
    let op = |x: usize, y: usize| (x + y) * half % n;
    let pt = |x: usize, i: usize| (i % 3) * n + x;
    let mut blocks = Vec::new();
    for x in 0..n {
        blocks.push(vec![pt(x, 0), pt(x, 1), pt(x, 2)]);
    }
    for i in 0..3 {
        for x in 0..n {
            for y in x + 1..n {
                blocks.push(vec![pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
            }
        }
    }
    Design::new(v, 3, 1, blocks)
}

/// Point `(x, i)` with `x` in Z_2t is `i * 2t + x`; the extra point is `v - 1`.
fn skolem(v: usize) -> Result<Design> {
    let n = (v - 1) / 3;
    let t = n / 2;
    // relabel the Z_2t addition table so that x∘x = (x+t)∘(x+t) = x for x < t
    let op = |x: usize, y: usize| {
        let s = (x + y) % n;
        if s.is_multiple_of(2) {
            s / 2
        } else {
            t + s / 2
        }
    };
    let pt = |x: usize, i: usize| (i % 3) * n + x;
    let inf = v - 1;
    let mut blocks = Vec::new();
    for x in 0..t {
        blocks.push(vec![pt(x, 0), pt(x, 1), pt(x, 2)]);
        for i in 0..3 {
            blocks.push(vec![inf, pt(x + t, i), pt(x, i + 1)]);
        }
    }
    for i in 0..3 {
        for x in 0..n {
            for y in x + 1..n {
                blocks.push(vec![pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
            }
        }
    }
    Design::new(v, 3, 1, blocks)
}

/// AG(2, n) on points `(x, y) -> x * n + y`.
///
/// Class 0 holds the lines of constant `y`, class 1 the lines of constant `x`,
/// and class `m + 1` the lines `y = m x + c` for nonzero slopes `m` in field
/// order. Within each class, lines are listed by intercept.
pub fn make_affine_plane(n: usize) -> Result<Design> {
    if !matches!(n, 2 | 3 | 4 | 5 | 7 | 8 | 9) {
        return param(format!("affine plane of order {n} is not supported"));
    }
    let f = GaloisField::new(n)?;
    let pt = |x: usize, y: usize| x * n + y;
    let mut blocks: Vec<Block> = Vec::new();
    let mut classes = Vec::new();
    let mut push_class = |lines: Vec<Block>| {
        let start = blocks.len();
        blocks.extend(lines);
        classes.push((start..blocks.len()).collect::<Vec<_>>());
    };
    push_class((0..n).map(|c| (0..n).map(|x| pt(x, c)).collect()).collect());
    push_class((0..n).map(|c| (0..n).map(|y| pt(c, y)).collect()).collect());
    for m in 1..n {
        push_class(
            (0..n)
                .map(|c| (0..n).map(|x| pt(x, f.add(f.mul(m, x), c))).collect())
                .collect(),
        );
    }
    checked(Design::with_classes(n * n, n, 1, blocks, classes)?)
}

/// PG(2, n). Points and lines are the normalized vectors of GF(n)^3 in the
/// order (1,a,b), (0,1,a), (0,0,1); a point lies on a line when their dot
/// product vanishes.
pub fn make_projective_plane(n: usize) -> Result<Design> {
    if !matches!(n, 2 | 3 | 4 | 5 | 7 | 8) {
        return param(format!("projective plane of order {n} is not supported"));
    }
    let f = GaloisField::new(n)?;
    let mut vecs = Vec::with_capacity(n * n + n + 1);
    for a in 0..n {
        for b in 0..n {
            vecs.push([1, a, b]);
        }
    }
    for a in 0..n {
        vecs.push([0, 1, a]);
    }
    vecs.push([0, 0, 1]);
    let dot =
        |l: &[usize; 3], p: &[usize; 3]| (0..3).fold(0, |acc, i| f.add(acc, f.mul(l[i], p[i])));
    let blocks = vecs
        .iter()
        .map(|l| (0..vecs.len()).filter(|&p| dot(l, &vecs[p]) == 0).collect())
        .collect();
    checked(Design::new(vecs.len(), n + 1, 1, blocks)?)
}

/// A Kirkman triple system with its resolution attached.
///
/// 9 is AG(2,3), 15 is the embedded system, and `3w` for reachable
/// `w = 3 (mod 6)` is the product of AG(2,3) with KTS(w).
pub fn make_kts(v: usize) -> Result<Design> {
    match v {
        9 => make_affine_plane(3),
        15 => make_sts(15, StsVariant::Kirkman15),
        _ if v.is_multiple_of(3) && (v / 3) % 6 == 3 && v / 3 >= 9 => {
            let inner = make_kts(v / 3)?;
            Ok(product_design(&make_affine_plane(3)?, &inner)?.design)
        }
        _ => param(format!(
            "KTS({v}) is not reachable from 9 and 15 by tripling"
        )),
    }
}

/// Point `(l, s)` of the product (layer `l` in `0..k`, base point `s` in
/// `0..v`) is stored as `l * v + s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointMap {
    pub layers: usize,
    pub base_points: usize,
}

impl PointMap {
    pub fn index(&self, layer: usize, base: usize) -> usize {
        layer * self.base_points + base
    }

    pub fn coords(&self, point: usize) -> (usize, usize) {
        (point / self.base_points, point % self.base_points)
    }
}

/// What a product color id stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColorLabel {
    /// color of the collapsed class built from the plane's class 0
    Zero,
    /// plane block `plane_block` (outside class 0) over base class `class`
    Pair { plane_block: usize, class: usize },
}

#[derive(Clone, Debug)]
pub struct ProductOutput {
    pub design: Design,
    pub coloring: Coloring,
    pub alpha_set: IndependentSet,
    pub point_map: PointMap,
    pub color_legend: Vec<ColorLabel>,
}

/// Blows every block `b` of the resolvable design `base` up into a copy of the
/// affine plane `plane` on `{0..k} x b`, collapsing the copies of plane class
/// 0, and colors the 1-block intersection graph of the result.
///
/// `plane` must be an AG(2,k) whose class 0 consists of the lines
/// `{(l, j) : l in 0..k}` (point `(l, j)` stored as `l * k + j`), as produced
/// by [`make_affine_plane`]. Block `b = {x_0 < ... < x_{k-1}}` maps plane point
/// `(l, j)` to product point `(l, x_j)`.
///
/// Color 0 goes to the collapsed class, which is returned as the α-set; the
/// block from plane block `a` over base class `β` gets color
/// `1 + β k^2 + rank(a)`, where `rank` counts plane blocks outside class 0.
pub fn product_design(plane: &Design, base: &Design) -> Result<ProductOutput> {
    let k = plane.k();
    if plane.v() != k * k || plane.lambda() != 1 || !verify_design(plane).ok {
        return param("first argument must be an affine plane AG(2,k)");
    }
    let Some(plane_res) = plane.resolution() else {
        return param("affine plane has no resolution attached");
    };
    if plane_res.len() != k + 1 {
        return param("affine plane resolution must have k+1 classes");
    }
    for &ai in plane_res.class(0) {
        let block = plane.block(ai);
        let j = block[0];
        if j >= k || block.iter().enumerate().any(|(l, &p)| p != l * k + j) {
            return param("affine plane class 0 must be the lines of constant second coordinate");
        }
    }
    if base.k() != k || base.lambda() != 1 {
        return param(format!("base design must be an RBIBD(v,{k},1)"));
    }
    if !verify_design(base).ok {
        return param("base design is not balanced");
    }
    let Some(base_res) = base.resolution() else {
        return param("base design has no resolution attached");
    };

    let v = base.v();
    let pm = PointMap {
        layers: k,
        base_points: v,
    };
    let mut rank = vec![None; plane.b()];
    let mut legend_blocks = Vec::new();
    for (ai, slot) in rank.iter_mut().enumerate() {
        if !plane_res.class(0).contains(&ai) {
            *slot = Some(legend_blocks.len());
            legend_blocks.push(ai);
        }
    }
    let kk = legend_blocks.len(); // k^2

    let mut blocks: Vec<Block> = Vec::new();
    let mut colors = Vec::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();

    let mut collapsed = Vec::with_capacity(v);
    for s in 0..v {
        collapsed.push(blocks.len());
        blocks.push((0..k).map(|l| pm.index(l, s)).collect());
        colors.push(0);
    }
    classes.push(collapsed.clone());

    for alpha in 1..=k {
        for (beta, pi) in base_res.classes().iter().enumerate() {
            let mut class = Vec::new();
            for &bi in pi {
                let b = base.block(bi);
                for &ai in plane_res.class(alpha) {
                    let mut image: Block = plane
                        .block(ai)
                        .iter()
                        .map(|&p| pm.index(p / k, b[p % k]))
                        .collect();
                    image.sort_unstable();
                    class.push(blocks.len());
                    blocks.push(image);
                    colors.push(1 + beta * kk + rank[ai].expect("outside class 0"));
                }
            }
            classes.push(class);
        }
    }

    let num_colors = 1 + kk * base_res.len();
    let design = checked(Design::with_classes(k * v, k, 1, blocks.clone(), classes)?)?;
    let mut canonical_colors = vec![0; design.b()];
    for (block, color) in blocks.iter().zip(&colors) {
        let idx = design
            .blocks()
            .binary_search(block)
            .expect("every constructed block is in the design");
        canonical_colors[idx] = *color;
    }
    let mut alpha: Vec<usize> = collapsed
        .iter()
        .map(|&i| design.blocks().binary_search(&blocks[i]).expect("present"))
        .collect();
    alpha.sort_unstable();

    let mut color_legend = vec![ColorLabel::Zero];
    for beta in 0..base_res.len() {
        for &ai in &legend_blocks {
            color_legend.push(ColorLabel::Pair {
                plane_block: ai,
                class: beta,
            });
        }
    }

    Ok(ProductOutput {
        design,
        coloring: Coloring::new(canonical_colors, num_colors)?,
        alpha_set: IndependentSet::from_sorted_unchecked(alpha),
        point_map: pm,
        color_legend,
    })
}
