//! Graph family constructors: fixed families for oracle tests and seeded
//! random families for threshold experiments.

use rand::Rng;
use serde::Serialize;

use crate::graph::{Distance, Graph};
use crate::seeds::{child_seed, rng_from_seed};
use crate::{Error, Result};

/// A constructible graph family. Deterministic families depend only on
/// their parameters; seeded families are reproducible bit-exactly from the
/// spec.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Complete { n: usize },
    Path { n: usize },
    Cycle { n: usize },
    /// Hub 0 joined to an (n-1)-cycle.
    Wheel { n: usize },
    /// Hub 0 joined to n-1 leaves.
    Star { n: usize },
    Petersen,
    /// K_n minus the perfect matching {2i, 2i+1}; delta = n-2, diameter 2.
    CompleteMinusMatching { n: usize },
    /// Classes 0..s and s..s+t.
    CompleteBipartite { s: usize, t: usize },
    /// K_{s,s} minus the perfect matching {i, s+i}; every same-class pair
    /// has exactly s-2 common neighbors.
    BipartiteMinusMatching { s: usize },
    /// Uniform random draw with edge probability delta/(n-1), then random
    /// edges at deficient vertices until min degree >= delta.
    RandomMinDegree { n: usize, delta: usize, seed: u64 },
    /// RandomMinDegree redrawn (bounded retries) until the diameter is 2.
    RandomDiam2 { n: usize, delta: usize, seed: u64 },
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidFamily(msg.into())
}

fn require(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(invalid(msg))
    }
}

/// Builds the graph a spec describes.
pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    match *spec {
        FamilySpec::Complete { n } => {
            require(n >= 1, "complete: order must be at least 1")?;
            Graph::new(n, (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))))
        }
        FamilySpec::Path { n } => {
            require(n >= 1, "path: order must be at least 1")?;
            Graph::new(n, (1..n).map(|v| (v - 1, v)))
        }
        FamilySpec::Cycle { n } => {
            require(n >= 3, "cycle: order must be at least 3")?;
            Graph::new(n, (0..n).map(|u| (u, (u + 1) % n)))
        }
        FamilySpec::Wheel { n } => {
            require(n >= 4, "wheel: order must be at least 4")?;
            let hub = (1..n).map(|v| (0, v));
            let rim = (1..n).map(|u| (u, u % (n - 1) + 1));
            Graph::new(n, hub.chain(rim))
        }
        FamilySpec::Star { n } => {
            require(n >= 1, "star: order must be at least 1")?;
            Graph::new(n, (1..n).map(|v| (0, v)))
        }
        FamilySpec::Petersen => {
            let mut verts = Vec::new();
            for a in 0..5 {
                for b in (a + 1)..5 {
                    verts.push((a, b));
                }
            }
            let disjoint = |x: (usize, usize), y: (usize, usize)| {
                x.0 != y.0 && x.0 != y.1 && x.1 != y.0 && x.1 != y.1
            };
            let mut edges = Vec::new();
            for i in 0..verts.len() {
                for j in (i + 1)..verts.len() {
                    if disjoint(verts[i], verts[j]) {
                        edges.push((i, j));
                    }
                }
            }
            Graph::new(10, edges)
        }
        FamilySpec::CompleteMinusMatching { n } => {
            require(
                n >= 4 && n % 2 == 0,
                "complete_minus_matching: order must be even and at least 4",
            )?;
            let edges = (0..n)
                .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
                .filter(|&(u, v)| !(u % 2 == 0 && v == u + 1));
            Graph::new(n, edges)
        }
        FamilySpec::CompleteBipartite { s, t } => {
            require(s >= 1 && t >= 1, "complete_bipartite: both classes need a vertex")?;
            Graph::new(s + t, (0..s).flat_map(|u| (0..t).map(move |j| (u, s + j))))
        }
        FamilySpec::BipartiteMinusMatching { s } => {
            require(
                s >= 3,
                "bipartite_minus_matching: class size below 3 disconnects the graph",
            )?;
            let edges = (0..s).flat_map(|i| {
                (0..s)
                    .filter(move |&j| j != i)
                    .map(move |j| (i, s + j))
            });
            Graph::new(2 * s, edges)
        }
        FamilySpec::RandomMinDegree { n, delta, seed } => random_min_degree(n, delta, seed),
        FamilySpec::RandomDiam2 { n, delta, seed } => {
            const TRIES: u64 = 32;
            for attempt in 0..TRIES {
                let g = random_min_degree(n, delta, child_seed(seed, attempt))?;
                if g.diameter() == Distance::Finite(2) {
                    return Ok(g);
                }
            }
            Err(Error::RetriesExhausted(format!(
                "no diameter-2 graph with n = {n}, delta >= {delta} in {TRIES} draws"
            )))
        }
    }
}

fn random_min_degree(n: usize, delta: usize, seed: u64) -> Result<Graph> {
    require(n >= 1, "random_min_degree: order must be at least 1")?;
    require(
        delta < n || (n == 1 && delta == 0),
        format!("random_min_degree: delta {delta} exceeds maximum degree {}", n.saturating_sub(1)),
    )?;
    let mut rng = rng_from_seed(seed);
    let p = if n <= 1 {
        0.0
    } else {
        (delta as f64 / (n - 1) as f64).clamp(0.0, 1.0)
    };
    let mut adj = vec![vec![false; n]; n];
    let mut deg = vec![0usize; n];
    for attempt in 0..3 {
        adj.iter_mut().for_each(|row| row.fill(false));
        deg.fill(0);
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random_bool(p) {
                    adj[u][v] = true;
                    adj[v][u] = true;
                    deg[u] += 1;
                    deg[v] += 1;
                }
            }
        }
        if attempt == 2 || deg.iter().all(|&d| d >= delta) {
            break;
        }
    }
    // Top up deficient vertices, preferring edges between two deficient
    // ones so density stays near target and the graph cannot drift toward
    // complete.
    loop {
        let deficient: Vec<usize> = (0..n).filter(|&v| deg[v] < delta).collect();
        if deficient.is_empty() {
            break;
        }
        let mut pick = None;
        for _ in 0..64 {
            let u = deficient[rng.random_range(0..deficient.len())];
            let v = deficient[rng.random_range(0..deficient.len())];
            if u != v && !adj[u][v] {
                pick = Some((u, v));
                break;
            }
        }
        let (u, v) = pick.unwrap_or_else(|| {
            let u = deficient[0];
            // deg[u] < delta <= n-1 guarantees a non-neighbor exists.
            let others: Vec<usize> = (0..n).filter(|&w| w != u && !adj[u][w]).collect();
            (u, others[rng.random_range(0..others.len())])
        });
        adj[u][v] = true;
        adj[v][u] = true;
        deg[u] += 1;
        deg[v] += 1;
    }
    let edges = (0..n).flat_map(|u| {
        let row = &adj[u];
        ((u + 1)..n).filter(move |&v| row[v]).map(move |v| (u, v))
    });
    Graph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_complement_structure() {
        let g = generate(&FamilySpec::CompleteMinusMatching { n: 6 }).unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(g.m(), 12);
        assert_eq!(g.min_degree(), 4);
        assert_eq!(g.diameter(), Distance::Finite(2));
        assert!(!g.is_complete());
        assert!(!g.has_edge(0, 1));
        assert!(!g.has_edge(4, 5));
        assert!(g.has_edge(0, 2));

        assert!(generate(&FamilySpec::CompleteMinusMatching { n: 7 }).is_err());
        assert!(generate(&FamilySpec::CompleteMinusMatching { n: 2 }).is_err());
    }

    #[test]
    fn bipartite_matching_complement_structure() {
        let g = generate(&FamilySpec::BipartiteMinusMatching { s: 4 }).unwrap();
        assert_eq!(g.n(), 8);
        assert_eq!(g.m(), 12);
        let part = g.bipartition().expect("construction is bipartite");
        assert_eq!(part.class_a.len(), 4);
        for class in [&part.class_a, &part.class_b] {
            for (i, &u) in class.iter().enumerate() {
                for &v in &class[i + 1..] {
                    assert_eq!(g.common_neighbors(u, v).unwrap().len(), 2);
                }
            }
        }
        assert!(generate(&FamilySpec::BipartiteMinusMatching { s: 2 }).is_err());
    }

    #[test]
    fn petersen_structure() {
        let g = generate(&FamilySpec::Petersen).unwrap();
        assert_eq!(g.n(), 10);
        assert_eq!(g.m(), 15);
        assert!((0..10).all(|v| g.degree(v) == 3));
        assert_eq!(g.diameter(), Distance::Finite(2));
        assert!(g.bipartition().is_none());
    }

    #[test]
    fn small_fixed_families() {
        let w = generate(&FamilySpec::Wheel { n: 5 }).unwrap();
        assert_eq!(w.degree(0), 4);
        assert!((1..5).all(|v| w.degree(v) == 3));

        let s = generate(&FamilySpec::Star { n: 5 }).unwrap();
        assert_eq!(s.degree(0), 4);
        assert_eq!(s.m(), 4);

        let kb = generate(&FamilySpec::CompleteBipartite { s: 2, t: 3 }).unwrap();
        assert_eq!(kb.m(), 6);
        assert!(kb.is_complete_bipartite(&kb.bipartition().unwrap()));

        let p1 = generate(&FamilySpec::Path { n: 1 }).unwrap();
        assert_eq!(p1.m(), 0);

        assert!(generate(&FamilySpec::Cycle { n: 2 }).is_err());
        assert!(generate(&FamilySpec::Wheel { n: 3 }).is_err());
    }

    #[test]
    fn random_min_degree_meets_target_reproducibly() {
        let spec = FamilySpec::RandomMinDegree {
            n: 24,
            delta: 9,
            seed: 7,
        };
        let g = generate(&spec).unwrap();
        assert_eq!(g.n(), 24);
        assert!(g.min_degree() >= 9);
        let again = generate(&spec).unwrap();
        assert_eq!(g.edges(), again.edges());
        let other = generate(&FamilySpec::RandomMinDegree {
            n: 24,
            delta: 9,
            seed: 8,
        })
        .unwrap();
        assert_ne!(g.edges(), other.edges());
    }

    #[test]
    fn random_min_degree_extremes() {
        let full = generate(&FamilySpec::RandomMinDegree {
            n: 6,
            delta: 5,
            seed: 3,
        })
        .unwrap();
        assert!(full.is_complete());
        let empty = generate(&FamilySpec::RandomMinDegree {
            n: 1,
            delta: 0,
            seed: 0,
        })
        .unwrap();
        assert_eq!(empty.m(), 0);
        assert!(generate(&FamilySpec::RandomMinDegree {
            n: 5,
            delta: 5,
            seed: 0,
        })
        .is_err());
    }

    #[test]
    fn random_diam2_postcondition() {
        let spec = FamilySpec::RandomDiam2 {
            n: 24,
            delta: 12,
            seed: 11,
        };
        let g = generate(&spec).unwrap();
        assert_eq!(g.diameter(), Distance::Finite(2));
        assert!(g.min_degree() >= 12);
        let again = generate(&spec).unwrap();
        assert_eq!(g.edges(), again.edges());
    }
}
