//! Rainbow reachability search, exact rainbow-connectivity verification,
//! and the sample-and-verify coloring construction.
//!
//! The search runs breadth-first over `(vertex, used-color-subset)` states.
//! Any rainbow walk contains a rainbow path (shortcutting a repeated vertex
//! drops edges and keeps colors distinct), and a rainbow path uses at most
//! as many edges as there are distinct colors, so the state space is exact
//! and finite: `n * 2^k` states.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::coloring::{is_rainbow_path, sample_uniform, EdgeColoring};
use crate::graph::{Distance, Graph};
use crate::seeds::child_seed;
use crate::{Error, Result};

/// Caps on the `(vertex, color-subset)` state space. The subset width is
/// bounded by the number of distinct colors actually used, never by the
/// nominal palette size alone.
#[derive(Debug, Clone)]
pub struct SearchLimits {
    /// Maximum distinct colors the subset mask may track.
    pub max_colors: usize,
    /// Maximum number of states (`n << colors`).
    pub max_states: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_colors: 20,
            max_states: 1 << 24,
        }
    }
}

/// Orders color subsets by their ascending element lists, lexicographically:
/// {0,2} < {1}, {0} < {0,2}.
fn cmp_mask_lex(a: u64, b: u64) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let m = (a ^ b).trailing_zeros();
    let rest = |x: u64| if m >= 63 { 0 } else { x >> (m + 1) };
    if (a >> m) & 1 == 1 {
        // `a` owns the smallest differing color; it precedes unless `b` is a
        // strict prefix of `a` (no colors beyond m at all).
        if rest(b) != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    } else if rest(a) != 0 {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Remove cycles from a vertex walk, keeping endpoints. Minimal-layer
/// extraction already yields a simple path (a repeated vertex would allow a
/// strictly shorter rainbow walk); this pass keeps the contract explicit.
fn shortcut(path: &mut Vec<usize>) {
    'outer: loop {
        for i in 0..path.len() {
            for j in (i + 1)..path.len() {
                if path[i] == path[j] {
                    path.drain(i..j);
                    continue 'outer;
                }
            }
        }
        break;
    }
}

/// Colors of an edge coloring compacted to ranks `0..k_bits`, so the subset
/// mask only tracks colors that actually occur.
struct RankedColors {
    k_bits: usize,
    ranks: Vec<usize>,
}

fn rank_colors(c: &EdgeColoring, limits: &SearchLimits) -> Result<RankedColors> {
    let mut distinct: Vec<usize> = c.colors().to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() > limits.max_colors {
        return Err(Error::PaletteExceedsSearchLimit {
            k: c.k(),
            limit: limits.max_colors,
        });
    }
    let ranks = c
        .colors()
        .iter()
        .map(|col| distinct.binary_search(col).expect("color is in its own set"))
        .collect();
    Ok(RankedColors {
        k_bits: distinct.len(),
        ranks,
    })
}

fn check_states(n: usize, k_bits: usize, limits: &SearchLimits) -> Result<usize> {
    let states = (n.max(1) as u128) << k_bits;
    if states > limits.max_states as u128 {
        return Err(Error::SearchSpaceTooLarge {
            states,
            limit: limits.max_states,
        });
    }
    Ok(states as usize)
}

/// Search tree of one breadth-first pass from a source state (vertex, {}).
struct BfsTree {
    k_bits: usize,
    /// Per state: predecessor state id, `u32::MAX` when unvisited, self for
    /// the root.
    parent: Vec<u32>,
    /// Per vertex: first layer at which any state with that vertex appears.
    first_layer: Vec<u32>,
    /// Per vertex: the color subsets discovered at that first layer.
    candidates: Vec<Vec<u64>>,
}

impl BfsTree {
    fn reached(&self, v: usize) -> bool {
        self.first_layer[v] != u32::MAX
    }

    /// Canonical rainbow path from the source to `target`: shortest, ties
    /// broken by lexicographically smallest color subset, then by the
    /// predecessor order of the layered expansion.
    fn path_to(&self, target: usize) -> Option<Vec<usize>> {
        if !self.reached(target) {
            return None;
        }
        let best = self.candidates[target]
            .iter()
            .copied()
            .min_by(|a, b| cmp_mask_lex(*a, *b))
            .expect("reached vertex has at least one candidate subset");
        let mut id = ((target << self.k_bits) | best as usize) as u32;
        let mut path = Vec::new();
        loop {
            path.push(id as usize >> self.k_bits);
            let p = self.parent[id as usize];
            if p == id {
                break;
            }
            id = p;
        }
        path.reverse();
        shortcut(&mut path);
        Some(path)
    }
}

/// Layered BFS from `(source, {})`. Each layer is expanded in canonical
/// order (subset, then vertex; neighbors ascending), so the first discovery
/// of a state is the canonical predecessor. With `stop_at` set, the search
/// halts once the layer discovering that vertex is complete.
fn witness_bfs(
    g: &Graph,
    ranks: &[usize],
    k_bits: usize,
    source: usize,
    stop_at: Option<usize>,
    limits: &SearchLimits,
) -> Result<BfsTree> {
    let states = check_states(g.n(), k_bits, limits)?;
    let root = (source << k_bits) as u32;
    let mut tree = BfsTree {
        k_bits,
        parent: vec![u32::MAX; states],
        first_layer: vec![u32::MAX; g.n()],
        candidates: vec![Vec::new(); g.n()],
    };
    tree.parent[root as usize] = root;
    tree.first_layer[source] = 0;
    tree.candidates[source].push(0);

    let mut cur: Vec<(usize, u64)> = vec![(source, 0)];
    let mut layer: u32 = 0;
    loop {
        if let Some(t) = stop_at {
            if tree.reached(t) {
                break;
            }
        }
        if cur.is_empty() {
            break;
        }
        cur.sort_unstable_by(|a, b| cmp_mask_lex(a.1, b.1).then(a.0.cmp(&b.0)));
        let mut next = Vec::new();
        for &(v, mask) in &cur {
            let vid = ((v << k_bits) | mask as usize) as u32;
            for &(w, ei) in g.incident(v) {
                let bit = 1u64 << ranks[ei];
                if mask & bit != 0 {
                    continue;
                }
                let nmask = mask | bit;
                let id = (w << k_bits) | nmask as usize;
                if tree.parent[id] != u32::MAX {
                    continue;
                }
                tree.parent[id] = vid;
                if tree.first_layer[w] == u32::MAX {
                    tree.first_layer[w] = layer + 1;
                }
                if tree.first_layer[w] == layer + 1 {
                    tree.candidates[w].push(nmask);
                }
                next.push((w, nmask));
            }
        }
        cur = next;
        layer += 1;
    }
    Ok(tree)
}

/// Returns a rainbow `u`-`v` path under `c` if one exists. The result is
/// canonical: shortest, smallest color subset, deterministic predecessors.
pub fn rainbow_reachable(
    g: &Graph,
    c: &EdgeColoring,
    u: usize,
    v: usize,
) -> Result<Option<Vec<usize>>> {
    c.shape_check(g)?;
    if u == v {
        return Err(Error::IdenticalVertices(u));
    }
    for w in [u, v] {
        if w >= g.n() {
            return Err(Error::VertexOutOfRange { v: w, n: g.n() });
        }
    }
    let limits = SearchLimits::default();
    let ranked = rank_colors(c, &limits)?;
    let tree = witness_bfs(g, &ranked.ranks, ranked.k_bits, u, Some(v), &limits)?;
    let path = tree.path_to(v);
    if let Some(p) = &path {
        debug_assert!(is_rainbow_path(g, c, p).unwrap_or(false));
        debug_assert!(p.len() <= c.k() + 1);
    }
    Ok(path)
}

/// One rainbow path per unordered vertex pair: constructive evidence that a
/// coloring rainbow connects its graph. Paths run from the smaller endpoint
/// to the larger.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RainbowWitness {
    paths: BTreeMap<(usize, usize), Vec<usize>>,
}

impl RainbowWitness {
    fn insert(&mut self, u: usize, v: usize, path: Vec<usize>) {
        debug_assert!(u < v);
        self.paths.insert((u, v), path);
    }

    /// The stored path for the unordered pair `{u, v}`.
    pub fn path(&self, u: usize, v: usize) -> Option<&[usize]> {
        self.paths
            .get(&(u.min(v), u.max(v)))
            .map(|p| p.as_slice())
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<usize>)> {
        self.paths.iter()
    }

    /// Checks every witness invariant against `g` and `c`: exactly one entry
    /// per unordered vertex pair, each entry a rainbow path with the right
    /// endpoints.
    pub fn validate(&self, g: &Graph, c: &EdgeColoring) -> Result<()> {
        let expected = g.n() * g.n().saturating_sub(1) / 2;
        if self.paths.len() != expected {
            return Err(Error::InvalidConfig(format!(
                "witness covers {} pairs, graph has {}",
                self.paths.len(),
                expected
            )));
        }
        for (&(u, v), path) in &self.paths {
            if path.first() != Some(&u) || path.last() != Some(&v) {
                return Err(Error::InvalidConfig(format!(
                    "witness path for ({u}, {v}) has wrong endpoints"
                )));
            }
            if !is_rainbow_path(g, c, path)? {
                return Err(Error::InvalidConfig(format!(
                    "witness path for ({u}, {v}) repeats a color"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct WitnessEntry<'a> {
    u: usize,
    v: usize,
    path: &'a [usize],
}

impl Serialize for RainbowWitness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.paths.len()))?;
        for (&(u, v), path) in &self.paths {
            seq.serialize_element(&WitnessEntry { u, v, path })?;
        }
        seq.end()
    }
}

/// Outcome of exact rainbow-connectivity verification.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verification {
    RainbowConnected { witness: RainbowWitness },
    NotRainbowConnected { failing_pair: (usize, usize) },
}

impl Verification {
    pub fn is_connected(&self) -> bool {
        matches!(self, Verification::RainbowConnected { .. })
    }
}

/// Exact verifier with a full witness. Pairs are visited in lexicographic
/// order and the first failing pair is reported.
pub fn verify(g: &Graph, c: &EdgeColoring) -> Result<Verification> {
    c.shape_check(g)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let limits = SearchLimits::default();
    let ranked = rank_colors(c, &limits)?;
    let mut witness = RainbowWitness::default();
    for u in 0..g.n().saturating_sub(1) {
        let tree = witness_bfs(g, &ranked.ranks, ranked.k_bits, u, None, &limits)?;
        for v in (u + 1)..g.n() {
            match tree.path_to(v) {
                Some(p) => witness.insert(u, v, p),
                None => {
                    return Ok(Verification::NotRainbowConnected {
                        failing_pair: (u, v),
                    })
                }
            }
        }
    }
    if cfg!(debug_assertions) {
        if let Distance::Finite(d) = g.diameter() {
            // A successful verification needs at least diam(g) colors.
            debug_assert!(c.k() >= d);
        }
    }
    Ok(Verification::RainbowConnected { witness })
}

/// Witness-free exact verifier: first failing pair in lexicographic order,
/// or `None` when the coloring rainbow connects the graph.
pub fn verify_fast(g: &Graph, c: &EdgeColoring) -> Result<Option<(usize, usize)>> {
    c.shape_check(g)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let limits = SearchLimits::default();
    let ranked = rank_colors(c, &limits)?;
    let mut v = Verifier::with_limits(g, ranked.k_bits, &limits)?;
    Ok(v.first_failing_pair(&ranked.ranks))
}

/// Reusable witness-free verifier. Buffers are sized once for a fixed
/// `(graph, palette)` and reused across colorings, which matters in the
/// retry and Monte Carlo loops.
pub struct Verifier<'g> {
    g: &'g Graph,
    k_bits: usize,
    words: usize,
    visited: Vec<u64>,
    cur: Vec<(usize, u64)>,
    next: Vec<(usize, u64)>,
    reached: Vec<bool>,
}

impl<'g> Verifier<'g> {
    pub fn new(g: &'g Graph, k: usize) -> Result<Self> {
        Self::with_limits(g, k, &SearchLimits::default())
    }

    pub fn with_limits(g: &'g Graph, k: usize, limits: &SearchLimits) -> Result<Self> {
        if k == 0 && g.m() > 0 {
            return Err(Error::ZeroColors);
        }
        if k > limits.max_colors {
            return Err(Error::PaletteExceedsSearchLimit {
                k,
                limit: limits.max_colors,
            });
        }
        let states = check_states(g.n(), k, limits)?;
        Ok(Verifier {
            g,
            k_bits: k,
            words: states.div_ceil(64),
            visited: vec![0; states.div_ceil(64)],
            cur: Vec::new(),
            next: Vec::new(),
            reached: vec![false; g.n()],
        })
    }

    /// First pair (lexicographic order) with no rainbow path under `colors`,
    /// which must hold one color `< k` per canonical edge index.
    pub fn first_failing_pair(&mut self, colors: &[usize]) -> Option<(usize, usize)> {
        debug_assert_eq!(colors.len(), self.g.m());
        let n = self.g.n();
        for u in 0..n.saturating_sub(1) {
            let nbrs = self.g.neighbors(u);
            let above = nbrs.len() - nbrs.partition_point(|&w| w < u);
            if above == n - 1 - u {
                // Every later vertex is adjacent; single edges are rainbow.
                continue;
            }
            if let Some(v) = self.missing_target(colors, u) {
                return Some((u, v));
            }
        }
        None
    }

    /// Smallest `v > u` not rainbow-reachable from `u`, if any.
    fn missing_target(&mut self, colors: &[usize], u: usize) -> Option<usize> {
        let n = self.g.n();
        self.reached[u + 1..].fill(false);
        let mut left = n - 1 - u;
        for &w in self.g.neighbors(u) {
            if w > u {
                self.reached[w] = true;
                left -= 1;
            }
        }
        if left == 0 {
            return None;
        }
        self.visited[..self.words].fill(0);
        let root = u << self.k_bits;
        self.visited[root / 64] |= 1 << (root % 64);
        self.cur.clear();
        self.cur.push((u, 0));
        while !self.cur.is_empty() {
            self.next.clear();
            for &(v, mask) in &self.cur {
                for &(w, ei) in self.g.incident(v) {
                    let bit = 1u64 << colors[ei];
                    if mask & bit != 0 {
                        continue;
                    }
                    let nmask = mask | bit;
                    let id = (w << self.k_bits) | nmask as usize;
                    if self.visited[id / 64] & (1 << (id % 64)) != 0 {
                        continue;
                    }
                    self.visited[id / 64] |= 1 << (id % 64);
                    if w > u && !self.reached[w] {
                        self.reached[w] = true;
                        left -= 1;
                        if left == 0 {
                            return None;
                        }
                    }
                    self.next.push((w, nmask));
                }
            }
            std::mem::swap(&mut self.cur, &mut self.next);
        }
        ((u + 1)..n).find(|&v| !self.reached[v])
    }
}

/// Every unordered pair checked by [`verify`], as a plain yes/no plus the
/// witness. Spec surface for "is rainbow connected".
pub fn is_rainbow_connected(g: &Graph, c: &EdgeColoring) -> Result<(bool, Option<RainbowWitness>)> {
    match verify(g, c)? {
        Verification::RainbowConnected { witness } => Ok((true, Some(witness))),
        Verification::NotRainbowConnected { .. } => Ok((false, None)),
    }
}

/// Result of the repeated sample-and-verify construction.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum LasVegasOutcome {
    /// A coloring that passed exact verification, with its witness and the
    /// 1-based iteration at which it was found.
    Success {
        coloring: EdgeColoring,
        witness: RainbowWitness,
        iterations: u64,
    },
    /// All iterations failed verification.
    Exhausted {
        attempts: u64,
        failures: u64,
        last_failing_pair: (usize, usize),
    },
}

impl LasVegasOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, LasVegasOutcome::Success { .. })
    }
}

/// Draws uniform colorings with sub-seeds `child_seed(seed, i)` for
/// iteration index `i = 0, 1, ...` and returns the first one certified by
/// the exact verifier. Identical inputs give identical outcomes.
pub fn las_vegas_color(
    g: &Graph,
    k: usize,
    max_iters: u64,
    seed: u64,
) -> Result<LasVegasOutcome> {
    if k == 0 {
        return Err(Error::ZeroColors);
    }
    if max_iters == 0 {
        return Err(Error::ZeroIterations);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut verifier = Verifier::new(g, k)?;
    let mut last_fail = None;
    for i in 0..max_iters {
        let c = sample_uniform(g, k, child_seed(seed, i))?;
        match verifier.first_failing_pair(c.colors()) {
            None => {
                let witness = match verify(g, &c)? {
                    Verification::RainbowConnected { witness } => witness,
                    Verification::NotRainbowConnected { .. } => {
                        unreachable!("fast and witness verifiers agree")
                    }
                };
                return Ok(LasVegasOutcome::Success {
                    coloring: c,
                    witness,
                    iterations: i + 1,
                });
            }
            Some(pair) => last_fail = Some(pair),
        }
    }
    Ok(LasVegasOutcome::Exhausted {
        attempts: max_iters,
        failures: max_iters,
        last_failing_pair: last_fail.expect("at least one iteration failed"),
    })
}
