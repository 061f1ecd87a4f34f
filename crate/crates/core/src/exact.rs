//! Exact rainbow connection number by backtracking search.
//!
//! Colorings are built edge by edge in canonical order. Color permutations
//! are broken by allowing a previously unused color only when it is the
//! lowest-indexed unused one, so each equivalence class of colorings is
//! visited once. Only fully assigned colorings are verified; the optional
//! `partial-prune` feature adds a sound prefix test that treats unassigned
//! edges as wildcards.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::coloring::EdgeColoring;
use crate::graph::{Distance, Graph};
use crate::rainbow::Verifier;
use crate::{Error, Result};

/// Explicit caps on the search. Exceeding one is a distinct error, never a
/// silent wrong answer.
#[derive(Debug, Clone)]
pub struct SearchBudget {
    /// Largest edge count `rc_exact` accepts.
    pub max_edges: usize,
    /// Cap on backtracking nodes (color assignments tried).
    pub max_nodes: u64,
    /// Optional wall-clock cap, checked periodically.
    pub max_time: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_edges: 16,
            max_nodes: 50_000_000,
            max_time: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct SearchStats {
    /// Backtracking nodes: one per color tried on an edge.
    pub nodes: u64,
    /// Fully assigned colorings handed to the verifier.
    pub colorings_tested: u64,
}

/// Outcome of the decision problem "does a rainbow-connecting k-coloring
/// exist".
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "decision", rename_all = "snake_case")]
pub enum Decision {
    Satisfiable {
        certificate: EdgeColoring,
        stats: SearchStats,
    },
    Unsatisfiable {
        stats: SearchStats,
    },
}

impl Decision {
    pub fn is_satisfiable(&self) -> bool {
        matches!(self, Decision::Satisfiable { .. })
    }

    pub fn stats(&self) -> SearchStats {
        match self {
            Decision::Satisfiable { stats, .. } | Decision::Unsatisfiable { stats } => *stats,
        }
    }
}

/// Exact rainbow connection number with its certificate.
#[derive(Debug, Clone, Serialize)]
pub struct RcResult {
    pub rc: usize,
    pub certificate: EdgeColoring,
    /// The diameter, which seeded the upward iteration over k.
    pub lower_bound_used: usize,
    pub stats: SearchStats,
}

struct Search<'g> {
    g: &'g Graph,
    k: usize,
    colors: Vec<usize>,
    verifier: Verifier<'g>,
    stats: SearchStats,
    max_nodes: u64,
    deadline: Option<Instant>,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph, k: usize, budget: &SearchBudget) -> Result<Self> {
        Ok(Search {
            g,
            k,
            colors: vec![0; g.m()],
            verifier: Verifier::new(g, k)?,
            stats: SearchStats::default(),
            max_nodes: budget.max_nodes,
            deadline: budget.max_time.map(|d| Instant::now() + d),
        })
    }

    fn tick(&mut self) -> Result<()> {
        self.stats.nodes += 1;
        if self.stats.nodes > self.max_nodes {
            return Err(Error::SearchBudgetExceeded {
                nodes: self.stats.nodes,
            });
        }
        if let Some(deadline) = self.deadline {
            if self.stats.nodes % 1024 == 1 && Instant::now() > deadline {
                return Err(Error::SearchBudgetExceeded {
                    nodes: self.stats.nodes,
                });
            }
        }
        Ok(())
    }

    /// Assign colors to edges `i..`, with `used` colors already in play.
    /// Returns the first certificate in search order, if any.
    fn assign(&mut self, i: usize, used: usize) -> Result<Option<Vec<usize>>> {
        if i == self.g.m() {
            self.stats.colorings_tested += 1;
            if self.verifier.first_failing_pair(&self.colors).is_none() {
                return Ok(Some(self.colors.clone()));
            }
            return Ok(None);
        }
        let choices = (used + 1).min(self.k);
        for c in 0..choices {
            self.tick()?;
            self.colors[i] = c;
            #[cfg(feature = "partial-prune")]
            if i + 1 < self.g.m() && self.prefix_doomed(i + 1) {
                continue;
            }
            if let Some(cert) = self.assign(i + 1, used.max(c + 1))? {
                return Ok(Some(cert));
            }
        }
        Ok(None)
    }

    /// Sound refutation test on a prefix: some vertex pair has no chance of
    /// a rainbow path no matter how the remaining edges are colored.
    ///
    /// A walk of length L <= k whose assigned edges carry distinct colors
    /// can always be completed: the unassigned edges need L - a colors
    /// avoiding the a on the walk, and k - a >= L - a of them are free. So
    /// a pair is doomed iff every u-v walk of length <= k repeats a color
    /// among its assigned edges; that is decidable by BFS over
    /// (vertex, assigned-color subset) states for at most k layers.
    #[cfg(feature = "partial-prune")]
    fn prefix_doomed(&self, assigned: usize) -> bool {
        let n = self.g.n();
        let states = n << self.k;
        let mut seen = vec![false; states];
        let mut cur: Vec<(usize, u64)> = Vec::new();
        for u in 0..n.saturating_sub(1) {
            for s in seen.iter_mut() {
                *s = false;
            }
            cur.clear();
            cur.push((u, 0));
            seen[u << self.k] = true;
            let mut reached = vec![false; n];
            reached[u] = true;
            for _ in 0..self.k {
                let mut next = Vec::new();
                for &(v, mask) in &cur {
                    for &(w, ei) in self.g.incident(v) {
                        let nmask = if ei < assigned {
                            let bit = 1u64 << self.colors[ei];
                            if mask & bit != 0 {
                                continue;
                            }
                            mask | bit
                        } else {
                            mask
                        };
                        let id = (w << self.k) | nmask as usize;
                        if seen[id] {
                            continue;
                        }
                        seen[id] = true;
                        reached[w] = true;
                        next.push((w, nmask));
                    }
                }
                cur = next;
            }
            if ((u + 1)..n).any(|v| !reached[v]) {
                return true;
            }
        }
        false
    }
}

/// Decides whether some k-coloring rainbow connects `g`, by exhaustive
/// symmetry-reduced backtracking.
pub fn rc_decision(g: &Graph, k: usize, budget: &SearchBudget) -> Result<Decision> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if k == 0 {
        return Err(Error::ZeroColors);
    }
    if k > g.m() {
        return Err(Error::PaletteOutOfRange { k, m: g.m() });
    }
    let mut search = Search::new(g, k, budget)?;
    let found = search.assign(0, 0)?;
    let stats = search.stats;
    Ok(match found {
        Some(colors) => Decision::Satisfiable {
            certificate: EdgeColoring::new(k, colors, (g.n(), g.m()))?,
            stats,
        },
        None => Decision::Unsatisfiable { stats },
    })
}

/// Exact rc(g): iterates k upward from the diameter, returning the first
/// satisfiable level with its certificate.
pub fn rc_exact(g: &Graph, budget: &SearchBudget) -> Result<RcResult> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.m() > budget.max_edges {
        return Err(Error::EdgeBudgetExceeded {
            m: g.m(),
            max_edges: budget.max_edges,
        });
    }
    if g.n() <= 1 {
        return Ok(RcResult {
            rc: 0,
            certificate: EdgeColoring::new(0, Vec::new(), (g.n(), 0))?,
            lower_bound_used: 0,
            stats: SearchStats::default(),
        });
    }
    let diam = match g.diameter() {
        Distance::Finite(d) => d,
        Distance::Infinite => unreachable!("connectivity was checked"),
    };
    let mut stats = SearchStats::default();
    for k in diam.max(1)..g.n() {
        match rc_decision(g, k, budget)? {
            Decision::Satisfiable {
                certificate,
                stats: s,
            } => {
                stats.nodes += s.nodes;
                stats.colorings_tested += s.colorings_tested;
                debug_assert!(diam <= k && k <= g.n() - 1);
                return Ok(RcResult {
                    rc: k,
                    certificate,
                    lower_bound_used: diam,
                    stats,
                });
            }
            Decision::Unsatisfiable { stats: s } => {
                stats.nodes += s.nodes;
                stats.colorings_tested += s.colorings_tested;
            }
        }
    }
    unreachable!("n - 1 distinct colors on a spanning tree always succeed")
}
