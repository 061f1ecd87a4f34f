//! Brute-force reference implementations: simple-path enumeration and
//! exhaustive rainbow checks. Exponential in graph size; intended for
//! cross-checking the real algorithms on small instances.

use crate::coloring::EdgeColoring;
use crate::graph::Graph;
use crate::{Error, Result};

/// All simple `u`-`v` paths, discovered by DFS with ascending neighbor
/// order. `u == v` yields the single-vertex path.
pub fn simple_paths(g: &Graph, u: usize, v: usize) -> Vec<Vec<usize>> {
    fn dfs(
        g: &Graph,
        cur: usize,
        target: usize,
        on_path: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur == target {
            out.push(on_path.clone());
            return;
        }
        for &w in g.neighbors(cur) {
            if used[w] {
                continue;
            }
            used[w] = true;
            on_path.push(w);
            dfs(g, w, target, on_path, used, out);
            on_path.pop();
            used[w] = false;
        }
    }
    let mut out = Vec::new();
    let mut used = vec![false; g.n()];
    used[u] = true;
    dfs(g, u, v, &mut vec![u], &mut used, &mut out);
    out
}

fn path_is_rainbow(g: &Graph, c: &EdgeColoring, path: &[usize]) -> bool {
    let mut seen = Vec::with_capacity(path.len());
    for pair in path.windows(2) {
        let color = c.color(g.edge_index(pair[0], pair[1]).expect("path edge exists"));
        if seen.contains(&color) {
            return false;
        }
        seen.push(color);
    }
    true
}

/// Whether some simple `u`-`v` path is rainbow under `c`, by enumeration.
pub fn rainbow_reachable_naive(
    g: &Graph,
    c: &EdgeColoring,
    u: usize,
    v: usize,
) -> Result<bool> {
    c.shape_check(g)?;
    if u == v {
        return Err(Error::IdenticalVertices(u));
    }
    for w in [u, v] {
        if w >= g.n() {
            return Err(Error::VertexOutOfRange { v: w, n: g.n() });
        }
    }
    Ok(simple_paths(g, u, v)
        .iter()
        .any(|p| path_is_rainbow(g, c, p)))
}

/// Whether `c` rainbow connects `g`, by enumerating simple paths for every
/// vertex pair.
pub fn rainbow_connected_naive(g: &Graph, c: &EdgeColoring) -> Result<bool> {
    c.shape_check(g)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    for u in 0..g.n() {
        for v in (u + 1)..g.n() {
            if !rainbow_reachable_naive(g, c, u, v)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Calls `f` on every length-`m` color array over `0..k` until `f` returns
/// true; reports whether any did.
fn any_coloring(m: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    let mut digits = vec![0usize; m];
    loop {
        if f(&digits) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == m {
                return false;
            }
            digits[i] += 1;
            if digits[i] < k {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// rc(g) by trying every coloring with k = 1, 2, ... colors. Exponential in
/// m; keep m small.
pub fn rc_naive(g: &Graph) -> Result<usize> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.n() <= 1 {
        return Ok(0);
    }
    for k in 1..g.n() {
        let found = any_coloring(g.m(), k, |colors| {
            let c = EdgeColoring::new(k, colors.to_vec(), (g.n(), g.m()))
                .expect("enumerated colors are in range");
            rainbow_connected_naive(g, &c).expect("shape and connectivity already checked")
        });
        if found {
            return Ok(k);
        }
    }
    unreachable!("n - 1 colors always suffice on a spanning tree of a connected graph")
}
