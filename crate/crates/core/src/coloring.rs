//! Edge colorings over the canonical edge order, uniform sampling, and the
//! rainbow-path predicate.

use rand::Rng;
use serde::Serialize;

use crate::graph::Graph;
use crate::seeds::rng_from_seed;
use crate::{Error, Result};

/// Total assignment of colors `0..k` to the edges of a graph, indexed by
/// canonical edge index. Carries the `(n, m)` shape of the graph it colors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeColoring {
    k: usize,
    colors: Vec<usize>,
    n: usize,
    m: usize,
}

impl EdgeColoring {
    /// Validates entries against the palette and the shape. `k == 0` is only
    /// allowed for edgeless shapes (the empty coloring).
    pub fn new(k: usize, colors: Vec<usize>, shape: (usize, usize)) -> Result<Self> {
        let (n, m) = shape;
        if k == 0 && m > 0 {
            return Err(Error::ZeroColors);
        }
        if colors.len() != m {
            return Err(Error::ShapeMismatch {
                cn: n,
                cm: colors.len(),
                gn: n,
                gm: m,
            });
        }
        if let Some(&c) = colors.iter().find(|&&c| c >= k) {
            return Err(Error::InvalidConfig(format!(
                "color {c} out of range for palette of size {k}"
            )));
        }
        Ok(EdgeColoring { k, colors, n, m })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Colors in canonical edge order.
    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, edge_index: usize) -> usize {
        self.colors[edge_index]
    }

    /// `(n, m)` of the graph this coloring belongs to.
    pub fn shape(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    pub fn matches(&self, g: &Graph) -> bool {
        self.n == g.n() && self.m == g.m()
    }

    pub(crate) fn shape_check(&self, g: &Graph) -> Result<()> {
        if self.matches(g) {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                cn: self.n,
                cm: self.m,
                gn: g.n(),
                gm: g.m(),
            })
        }
    }
}

/// Colors every edge independently and uniformly from `0..k`, drawing from
/// the seeded generator in canonical edge order. Identical `(g, k, seed)`
/// give identical colorings.
pub fn sample_uniform(g: &Graph, k: usize, seed: u64) -> Result<EdgeColoring> {
    if k == 0 {
        return Err(Error::ZeroColors);
    }
    let mut rng = rng_from_seed(seed);
    let colors = (0..g.m()).map(|_| rng.random_range(0..k)).collect();
    EdgeColoring::new(k, colors, (g.n(), g.m()))
}

/// True iff the edge colors along `path` are pairwise distinct. The input
/// must be a path: consecutive vertices adjacent, no repeated vertex. A
/// single-vertex path is rainbow.
pub fn is_rainbow_path(g: &Graph, c: &EdgeColoring, path: &[usize]) -> Result<bool> {
    c.shape_check(g)?;
    if path.is_empty() {
        return Err(Error::InvalidPath("empty vertex sequence".into()));
    }
    for &v in path {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { v, n: g.n() });
        }
    }
    let mut seen_vertices = vec![false; g.n()];
    for &v in path {
        if seen_vertices[v] {
            return Err(Error::InvalidPath(format!("vertex {v} repeats")));
        }
        seen_vertices[v] = true;
    }
    let mut colors = Vec::with_capacity(path.len().saturating_sub(1));
    for w in path.windows(2) {
        match g.edge_index(w[0], w[1]) {
            Some(i) => colors.push(c.color(i)),
            None => {
                return Err(Error::InvalidPath(format!(
                    "consecutive vertices {} and {} are not adjacent",
                    w[0], w[1]
                )))
            }
        }
    }
    colors.sort_unstable();
    Ok(colors.windows(2).all(|w| w[0] != w[1]))
}
