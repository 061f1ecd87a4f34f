//! Simple undirected graphs with canonical edge indexing, plus the
//! structural quantities used by the degree-condition checkers: degrees,
//! sigma2, distances, diameter, common neighborhoods, bipartitions.

use std::collections::{BTreeSet, VecDeque};

use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// Shortest-path distance. Unreachable pairs get a distinguished value
/// rather than a large number; arithmetic on `Infinite` is a bug.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    /// The finite value, or `None` for `Infinite`.
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl std::fmt::Display for Distance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d as u64),
            Distance::Infinite => s.serialize_str("inf"),
        }
    }
}

/// A two-coloring of the vertex set with no edge inside either class.
/// `class_a` holds the lowest-id vertex of every connected component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bipartition {
    pub class_a: Vec<usize>,
    pub class_b: Vec<usize>,
    #[serde(skip)]
    side: Vec<u8>,
}

impl Bipartition {
    /// 0 if `v` lies in `class_a`, 1 otherwise.
    pub fn side(&self, v: usize) -> u8 {
        self.side[v]
    }

    pub fn same_class(&self, u: usize, v: usize) -> bool {
        self.side[u] == self.side[v]
    }
}

/// Finite simple undirected graph on vertices `0..n`.
///
/// Edges are stored as `(min, max)` pairs in lexicographic order; the
/// position of an edge in that order is its canonical index, which every
/// coloring array and coloring file refers to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    /// Per-vertex `(neighbor, edge index)` lists, sorted by neighbor.
    incident: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a graph from an edge list, deduplicating edges and normalizing
    /// endpoint order. Rejects loops and out-of-range vertex ids.
    pub fn new<I>(n: usize, edge_list: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edge_list {
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { v: w, n });
                }
            }
            set.insert((u.min(v), u.max(v)));
        }
        let edges: Vec<(usize, usize)> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        let mut incident = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            adj[u].push(v);
            adj[v].push(u);
            incident[u].push((v, i));
            incident[v].push((u, i));
        }
        for v in 0..n {
            adj[v].sort_unstable();
            incident[v].sort_unstable();
        }
        Ok(Graph {
            n,
            edges,
            adj,
            incident,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical (lexicographic) order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// `(neighbor, canonical edge index)` pairs of `v`, sorted by neighbor.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.incident[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u].binary_search(&v).is_ok()
    }

    /// Canonical index of the edge `{u, v}`, if present.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    /// Endpoints `(min, max)` of the edge with canonical index `i`.
    pub fn endpoints(&self, i: usize) -> (usize, usize) {
        self.edges[i]
    }

    /// Minimum degree over all vertices. Requires `n >= 1`.
    pub fn min_degree(&self) -> usize {
        debug_assert!(self.n >= 1);
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Minimum of `d(u) + d(v)` over non-adjacent pairs of distinct vertices.
    /// Errors when no such pair exists (complete graphs, and orders below 2).
    pub fn sigma2(&self) -> Result<usize> {
        let mut best: Option<usize> = None;
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    let s = self.degree(u) + self.degree(v);
                    best = Some(best.map_or(s, |b| b.min(s)));
                }
            }
        }
        best.ok_or(Error::Sigma2Undefined)
    }

    /// Breadth-first distances from `source` to every vertex.
    pub fn distances_from(&self, source: usize) -> Vec<Distance> {
        debug_assert!(source < self.n);
        let mut dist = vec![Distance::Infinite; self.n];
        dist[source] = Distance::Finite(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = match dist[v] {
                Distance::Finite(d) => d,
                Distance::Infinite => unreachable!(),
            };
            for &w in self.neighbors(v) {
                if dist[w] == Distance::Infinite {
                    dist[w] = Distance::Finite(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Length of a shortest `u`-`v` path; `Infinite` when none exists.
    pub fn distance(&self, u: usize, v: usize) -> Distance {
        debug_assert!(u < self.n && v < self.n);
        if u == v {
            return Distance::Finite(0);
        }
        self.distances_from(u)[v]
    }

    /// Maximum pairwise distance; `Infinite` iff the graph is disconnected,
    /// `Finite(0)` for a single vertex.
    pub fn diameter(&self) -> Distance {
        debug_assert!(self.n >= 1);
        let mut max = Distance::Finite(0);
        for u in 0..self.n {
            for d in self.distances_from(u) {
                if d == Distance::Infinite {
                    return Distance::Infinite;
                }
                max = max.max(d);
            }
        }
        max
    }

    /// Sorted list of vertices adjacent to both `u` and `v`. Each entry
    /// yields a length-2 path between them, and distinct entries yield
    /// edge-disjoint such paths.
    pub fn common_neighbors(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        if u == v {
            return Err(Error::IdenticalVertices(u));
        }
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { v: w, n: self.n });
            }
        }
        // Sorted-merge intersection of the two neighbor lists.
        let (a, b) = (self.neighbors(u), self.neighbors(v));
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(out)
    }

    /// Two-colors the vertices by breadth-first layering, or returns `None`
    /// when an odd cycle exists. Within each component the class containing
    /// the lowest-id vertex becomes `class_a`.
    pub fn bipartition(&self) -> Option<Bipartition> {
        const UNSET: u8 = 2;
        let mut side = vec![UNSET; self.n];
        for root in 0..self.n {
            if side[root] != UNSET {
                continue;
            }
            side[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &w in self.neighbors(v) {
                    if side[w] == UNSET {
                        side[w] = 1 - side[v];
                        queue.push_back(w);
                    } else if side[w] == side[v] {
                        return None;
                    }
                }
            }
        }
        let class_a = (0..self.n).filter(|&v| side[v] == 0).collect();
        let class_b = (0..self.n).filter(|&v| side[v] == 1).collect();
        Some(Bipartition {
            class_a,
            class_b,
            side,
        })
    }

    /// True iff the graph has a single connected component. A single vertex
    /// counts as connected; so does the empty graph.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        self.distances_from(0).iter().all(|d| d.is_finite())
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * self.n.saturating_sub(1) / 2
    }

    /// True iff every cross-class pair of the given bipartition is an edge.
    pub fn is_complete_bipartite(&self, bip: &Bipartition) -> bool {
        self.m() == bip.class_a.len() * bip.class_b.len()
    }
}
