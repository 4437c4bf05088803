//! Plain-text file formats.
//!
//! * design (`.blk`): header `v=<int> k=<int> lambda=<int>`, then one block
//!   per line; a line `%class <name>` starts a parallel class and the blocks
//!   after it belong to that class.
//! * graph: `p <n> <m>`, then `e <u> <v>` per edge (DIMACS-like, 0-based).
//! * coloring: `c <num_colors>`, then `<vertex> <color>` per vertex.
//! * α-set: a single line of vertex ids.
//!
//! `#` starts a comment everywhere. Readers accept any order; writers emit the
//! canonical one, so write-read-write is the identity.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::decider::TripleCertificate;
use crate::designs::Design;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::silver::Coloring;

fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        msg: msg.into(),
    })
}

/// Non-empty lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn num<T: FromStr>(line: usize, tok: &str) -> Result<T> {
    tok.parse().or_else(|_| {
        parse_err(
            line,
            format!("expected a non-negative integer, found {tok:?}"),
        )
    })
}

fn nums(line: usize, l: &str) -> Result<Vec<usize>> {
    l.split_whitespace().map(|t| num(line, t)).collect()
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Wraps a structural error from a constructor as a parse error at `line`.
fn at_line<T>(line: usize, r: Result<T>) -> Result<T> {
    r.or_else(|e| match e {
        Error::Parameter(msg) => parse_err(line, msg),
        other => Err(other),
    })
}

pub fn write_design(d: &Design) -> String {
    let mut out = format!("v={} k={} lambda={}\n", d.v(), d.k(), d.lambda());
    match d.resolution() {
        Some(res) => {
            for (ci, class) in res.classes().iter().enumerate() {
                let _ = writeln!(out, "%class {ci}");
                for &bi in class {
                    let _ = writeln!(out, "{}", join(d.block(bi)));
                }
            }
        }
        None => {
            for b in d.blocks() {
                let _ = writeln!(out, "{}", join(b));
            }
        }
    }
    out
}

fn parse_header(line: usize, l: &str) -> Result<(usize, usize, usize)> {
    let mut fields = [None; 3];
    for tok in l.split_whitespace() {
        let Some((key, val)) = tok.split_once('=') else {
            return parse_err(line, format!("expected key=value, found {tok:?}"));
        };
        let slot = match key {
            "v" => 0,
            "k" => 1,
            "lambda" => 2,
            _ => return parse_err(line, format!("unknown header key {key:?}")),
        };
        if fields[slot].replace(num(line, val)?).is_some() {
            return parse_err(line, format!("duplicate header key {key:?}"));
        }
    }
    match fields {
        [Some(v), Some(k), Some(lambda)] => Ok((v, k, lambda)),
        _ => parse_err(line, "header must set v, k and lambda"),
    }
}

pub fn read_design(text: &str) -> Result<Design> {
    let mut it = lines(text);
    let Some((hline, header)) = it.next() else {
        return parse_err(1, "missing header line");
    };
    let (v, k, lambda) = parse_header(hline, header)?;
    let mut blocks = Vec::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut last = hline;
    for (line, l) in it {
        last = line;
        if let Some(rest) = l.strip_prefix("%class") {
            if rest.trim().is_empty() {
                return parse_err(line, "%class needs a name");
            }
            classes.push(Vec::new());
            continue;
        }
        if l.starts_with('%') {
            return parse_err(line, format!("unknown directive {l:?}"));
        }
        let block = nums(line, l)?;
        if block.len() != k {
            return parse_err(
                line,
                format!("block has {} points, expected k = {k}", block.len()),
            );
        }
        if let Some(class) = classes.last_mut() {
            class.push(blocks.len());
        }
        blocks.push(block);
    }
    if !classes.is_empty() {
        let unclassed = classes.iter().map(Vec::len).sum::<usize>() != blocks.len();
        if unclassed {
            return parse_err(
                hline,
                "blocks listed before the first %class belong to no class",
            );
        }
        return at_line(last, Design::with_classes(v, k, lambda, blocks, classes));
    }
    at_line(last, Design::new(v, k, lambda, blocks))
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}

pub fn read_graph(text: &str) -> Result<Graph> {
    let mut it = lines(text);
    let Some((hline, header)) = it.next() else {
        return parse_err(1, "missing `p <n> <m>` line");
    };
    let (n, m) = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["p", n, m] => (num::<usize>(hline, n)?, num::<usize>(hline, m)?),
        _ => return parse_err(hline, "expected `p <n> <m>`"),
    };
    let mut edges = Vec::with_capacity(m);
    let mut last = hline;
    for (line, l) in it {
        last = line;
        match l.split_whitespace().collect::<Vec<_>>()[..] {
            ["e", u, v] => edges.push((num(line, u)?, num(line, v)?)),
            _ => return parse_err(line, "expected `e <u> <v>`"),
        }
    }
    let g = at_line(last, Graph::from_edges(n, edges.iter().copied()))?;
    if edges.len() != m || g.edge_count() != m {
        return parse_err(
            hline,
            format!(
                "header announces {m} edges, found {} distinct",
                g.edge_count()
            ),
        );
    }
    Ok(g)
}

pub fn write_coloring(c: &Coloring) -> String {
    let mut out = format!("c {}\n", c.num_colors());
    for (v, col) in c.colors().iter().enumerate() {
        let _ = writeln!(out, "{v} {col}");
    }
    out
}

pub fn read_coloring(text: &str) -> Result<Coloring> {
    let mut it = lines(text);
    let Some((hline, header)) = it.next() else {
        return parse_err(1, "missing `c <num_colors>` line");
    };
    let num_colors = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["c", k] => num::<usize>(hline, k)?,
        _ => return parse_err(hline, "expected `c <num_colors>`"),
    };
    let mut colors: Vec<Option<usize>> = Vec::new();
    for (line, l) in it {
        let [v, col] = nums(line, l)?[..] else {
            return parse_err(line, "expected `<vertex> <color>`");
        };
        if v >= colors.len() {
            colors.resize(v + 1, None);
        }
        if colors[v].replace(col).is_some() {
            return parse_err(line, format!("vertex {v} colored twice"));
        }
    }
    let colors = match colors.iter().position(Option::is_none) {
        Some(v) => return parse_err(hline, format!("vertex {v} has no color")),
        None => colors.into_iter().flatten().collect(),
    };
    at_line(hline, Coloring::new(colors, num_colors))
}

pub fn write_alpha_set(set: &[usize]) -> String {
    format!("{}\n", join(set))
}

/// Sorted vertex ids; independence is checked against a graph by the caller.
pub fn read_alpha_set(text: &str) -> Result<Vec<usize>> {
    let mut it = lines(text);
    let mut set = match it.next() {
        Some((line, l)) => nums(line, l)?,
        None => Vec::new(),
    };
    if let Some((line, _)) = it.next() {
        return parse_err(line, "an α-set file has a single line");
    }
    set.sort_unstable();
    if set.windows(2).any(|w| w[0] == w[1]) {
        return parse_err(1, "repeated vertex");
    }
    Ok(set)
}

pub fn write_triple_certificate(c: &TripleCertificate) -> String {
    let [b1, b2, b3] = c.blocks;
    let mut out = String::new();
    let _ = writeln!(out, "triple {b1} {b2} {b3}");
    for (label, s) in ["N(b1)&N(b2)", "N(b2)&N(b3)", "N(b1)&N(b3)"]
        .iter()
        .zip(&c.pairwise)
    {
        let _ = writeln!(out, "{label}: {}", join(s));
    }
    let _ = writeln!(out, "total {} > r+1 = {}", c.total, c.colors);
    out
}
