// Independent oracles shared by the integration and acceptance tests. They
// only touch the public graph accessors and are deliberately naive.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use silverbig_core::Graph;

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    (0..g.n())
        .map(|u| (0..g.n()).map(|w| g.has_edge(u, w)).collect())
        .collect()
}

/// Proper, `r+1` colors, and `N[x]` all-different for every `x` in `set`.
pub fn naive_silver(g: &Graph, colors: &[usize], set: &[usize]) -> bool {
    let n = g.n();
    let adj = adjacency(g);
    let r = (0..n)
        .map(|u| adj[u].iter().filter(|&&e| e).count())
        .max()
        .unwrap_or(0);
    if colors.len() != n || colors.iter().any(|&c| c > r) {
        return false;
    }
    for u in 0..n {
        for w in 0..n {
            if adj[u][w] && colors[u] == colors[w] {
                return false;
            }
        }
    }
    set.iter().all(|&x| {
        let mut seen: Vec<usize> = (0..n)
            .filter(|&u| u == x || adj[x][u])
            .map(|u| colors[u])
            .collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == r + 1
    })
}

/// Backtracking over every proper `(r+1)`-coloring in vertex order; a closed
/// neighborhood is checked once its last vertex is colored.
pub fn brute_force_silver(g: &Graph, set: &[usize]) -> Option<Vec<usize>> {
    let n = g.n();
    let adj = adjacency(g);
    let r = (0..n)
        .map(|u| adj[u].iter().filter(|&&e| e).count())
        .max()
        .unwrap_or(0);
    let hoods: Vec<Vec<usize>> = set
        .iter()
        .map(|&x| (0..n).filter(|&u| u == x || adj[x][u]).collect())
        .collect();
    let mut closes_at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (h, hood) in hoods.iter().enumerate() {
        closes_at[*hood.last().unwrap()].push(h);
    }
    let mut colors = vec![usize::MAX; n];
    fn go(
        v: usize,
        colors: &mut Vec<usize>,
        adj: &[Vec<bool>],
        r: usize,
        hoods: &[Vec<usize>],
        closes_at: &[Vec<usize>],
    ) -> bool {
        if v == colors.len() {
            return true;
        }
        for c in 0..=r {
            if (0..v).any(|u| adj[v][u] && colors[u] == c) {
                continue;
            }
            colors[v] = c;
            let ok = closes_at[v].iter().all(|&h| {
                let mut cs: Vec<usize> = hoods[h].iter().map(|&u| colors[u]).collect();
                cs.sort_unstable();
                cs.dedup();
                cs.len() == hoods[h].len()
            });
            if ok && go(v + 1, colors, adj, r, hoods, closes_at) {
                return true;
            }
        }
        colors[v] = usize::MAX;
        false
    }
    go(0, &mut colors, &adj, r, &hoods, &closes_at).then_some(colors)
}

/// Every maximum independent set by subset enumeration (n <= 20).
pub fn brute_force_alpha_sets(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    assert!(n <= 20);
    let adj = adjacency(g);
    let mut best = 0;
    let mut out: Vec<Vec<usize>> = Vec::new();
    for mask in 0u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if set.len() < best {
            continue;
        }
        if set.iter().any(|&a| set.iter().any(|&b| adj[a][b])) {
            continue;
        }
        if set.len() > best {
            best = set.len();
            out.clear();
        }
        out.push(set);
    }
    out.sort();
    out
}

/// Random simple `d`-regular graph by the pairing model with restarts.
pub fn random_regular<R: Rng>(n: usize, d: usize, rng: &mut R) -> Graph {
    assert!((n * d).is_multiple_of(2) && d < n);
    loop {
        let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        stubs.shuffle(rng);
        let mut edges = Vec::new();
        let mut ok = true;
        for pair in stubs.chunks(2) {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if a == b || edges.contains(&(a, b)) {
                ok = false;
                break;
            }
            edges.push((a, b));
        }
        if ok {
            return Graph::from_edges(n, edges).unwrap();
        }
    }
}
