//! Threshold rules that guarantee rc(G) <= k for dense-enough graphs, and
//! the exact probability arithmetic behind their union-bound arguments.
//!
//! Each rule compares one measured integer quantity (minimum degree,
//! degree-sum over non-adjacent pairs, or same-class common neighbors)
//! against a real-valued threshold. A satisfied rule implies that a uniform
//! random k-coloring rainbow connects the graph with probability more than
//! 1 - (n-1)/(2n) > 1/2.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::Serialize;

use crate::graph::{Bipartition, Distance, Graph};
use crate::{Error, Result};

/// Identifiers of the seven threshold rules. T1_3, T1_4, T1_5, T1_7 are
/// parameterized by the palette size k; T1_1, T1_2, T1_6 are fixed-palette
/// rules (k = 2, 3, 3 respectively).
#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TheoremId {
    T1_1,
    T1_2,
    T1_3,
    T1_4,
    T1_5,
    T1_6,
    T1_7,
}

impl TheoremId {
    pub const ALL: [TheoremId; 7] = [
        TheoremId::T1_1,
        TheoremId::T1_2,
        TheoremId::T1_3,
        TheoremId::T1_4,
        TheoremId::T1_5,
        TheoremId::T1_6,
        TheoremId::T1_7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::T1_1 => "T1_1",
            TheoremId::T1_2 => "T1_2",
            TheoremId::T1_3 => "T1_3",
            TheoremId::T1_4 => "T1_4",
            TheoremId::T1_5 => "T1_5",
            TheoremId::T1_6 => "T1_6",
            TheoremId::T1_7 => "T1_7",
        }
    }

    /// Whether the rule's threshold depends on a caller-chosen palette.
    pub fn takes_k(self) -> bool {
        matches!(
            self,
            TheoremId::T1_3 | TheoremId::T1_4 | TheoremId::T1_5 | TheoremId::T1_7
        )
    }

    /// Smallest palette the rule's arithmetic is defined for. T1_5/T1_7 use
    /// the log base k^2/(3k-2), which equals 1 at k = 2.
    pub fn min_k(self) -> usize {
        match self {
            TheoremId::T1_3 | TheoremId::T1_4 => 2,
            TheoremId::T1_5 | TheoremId::T1_7 => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.to_ascii_uppercase();
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name() == up)
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

/// Exact probability with its float value, for reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExactProb {
    pub num: i64,
    pub den: i64,
    pub value: f64,
}

impl From<Rational64> for ExactProb {
    fn from(r: Rational64) -> Self {
        ExactProb {
            num: *r.numer(),
            den: *r.denom(),
            value: *r.numer() as f64 / *r.denom() as f64,
        }
    }
}

fn log_base(base: f64, x: f64) -> f64 {
    x.ln() / base.ln()
}

/// The base k^2/(3k-2) used by the length-3 path arithmetic; > 1 for k >= 3.
fn three_path_base(k: usize) -> f64 {
    let kf = k as f64;
    kf * kf / (3.0 * kf - 2.0)
}

fn check_palette(id: TheoremId, k: usize) -> Result<()> {
    if id.takes_k() && k < id.min_k() {
        return Err(Error::PaletteTooSmall {
            theorem: id.name(),
            min_k: id.min_k(),
            k,
        });
    }
    Ok(())
}

const MAX_EXACT_INPUT: u64 = 1 << 30;

fn exact_input(label: &str, value: u64) -> Result<i64> {
    if value > MAX_EXACT_INPUT {
        return Err(Error::InvalidConfig(format!(
            "{label} = {value} exceeds exact-arithmetic range {MAX_EXACT_INPUT}"
        )));
    }
    Ok(value as i64)
}

/// Probability that one fixed path of the given length fails to be rainbow
/// under a uniform k-coloring: length 2 -> 1/k, length 3 -> (3k-2)/k^2.
/// Valid for every k >= 1 (at k too small for distinct colors the value
/// is 1).
pub fn path_failure_prob(k: usize, length: usize) -> Result<Rational64> {
    if k == 0 {
        return Err(Error::ZeroColors);
    }
    let ki = exact_input("k", k as u64)?;
    match length {
        2 => Ok(Rational64::new(1, ki)),
        3 => Ok(Rational64::new(3 * ki - 2, ki * ki)),
        other => Err(Error::UnsupportedPathLength(other)),
    }
}

/// Probability that t independent paths all fail: p^t.
pub fn pair_failure_bound(p: f64, t: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&p));
    debug_assert!(t >= 0.0);
    p.powf(t)
}

/// Exact p^t for integer exponents.
pub fn pair_failure_bound_exact(p: Rational64, t: u32) -> Rational64 {
    p.pow(t as i32)
}

/// Union bound over fewer than C(n,2) pairs each failing with probability
/// at most 1/n^2: C(n,2)/n^2 = (n-1)/(2n), strictly below 1/2.
pub fn union_bound_failure(n: u64) -> Result<Rational64> {
    if n < 2 {
        return Err(Error::OrderTooSmall(n));
    }
    let ni = exact_input("n", n)?;
    Ok(Rational64::new(ni - 1, 2 * ni))
}

/// Inclusion-exclusion floor on common neighbors of a non-adjacent pair:
/// |N(u) ∩ N(v)| >= d(u) + d(v) - (n - 2).
pub fn common_neighbor_lower_bound(d_u: usize, d_v: usize, n: usize) -> usize {
    (d_u + d_v).saturating_sub(n.saturating_sub(2))
}

/// The real-valued threshold each rule compares its measured quantity
/// against:
///
/// - T1_1: delta >= n/2 + log2 n          (rc = 2)
/// - T1_2: same-class common neighbors >= 2 log2(n)/log2(9/7)   (rc = 3)
/// - T1_3: delta >= n/2 - 1 + log_k n     (rc <= k)
/// - T1_4: sigma2 >= n - 2 + 2 log_k n    (rc <= k)
/// - T1_5: same-class common neighbors >= 2 log_b k log_k n, b = k^2/(3k-2)
/// - T1_6: delta >= 8 log2 n, diameter 2  (rc <= 3)
/// - T1_7: delta >= 2 (1 + log_b k) log_k n, diameter 2
pub fn required_threshold(id: TheoremId, k: usize, n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::OrderTooSmall(n));
    }
    check_palette(id, k)?;
    let nf = n as f64;
    let kf = k as f64;
    Ok(match id {
        TheoremId::T1_1 => nf / 2.0 + nf.log2(),
        TheoremId::T1_2 => 2.0 * nf.log2() / (9.0f64 / 7.0).log2(),
        TheoremId::T1_3 => nf / 2.0 - 1.0 + log_base(kf, nf),
        TheoremId::T1_4 => nf - 2.0 + 2.0 * log_base(kf, nf),
        TheoremId::T1_5 => 2.0 * log_base(three_path_base(k), kf) * log_base(kf, nf),
        TheoremId::T1_6 => 8.0 * nf.log2(),
        TheoremId::T1_7 => 2.0 * (1.0 + log_base(three_path_base(k), kf)) * log_base(kf, nf),
    })
}

/// Conclusion a satisfied rule licenses about rc(G).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "relation", content = "k", rename_all = "snake_case")]
pub enum RcBound {
    AtMost(usize),
    Exactly(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Satisfied,
    Unsatisfied,
    NotApplicable { reason: String },
}

/// One rule evaluated against one graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremCheck {
    pub theorem: TheoremId,
    /// Palette the rule was evaluated at; absent for fixed-palette rules.
    pub k: Option<usize>,
    /// Measured integer quantities (always includes "n").
    pub measured: BTreeMap<&'static str, u64>,
    /// Threshold the decisive quantity is compared against; absent when the
    /// verdict is not-applicable.
    pub threshold: Option<f64>,
    pub verdict: Verdict,
    /// Present exactly when satisfied.
    pub implied_bound: Option<RcBound>,
    /// Decisive quantity within 1e-12 of the threshold; the verdict is
    /// still taken from the plain >= comparison.
    pub near_threshold: bool,
    /// Notes the adopted logarithm base where the rule leaves it open.
    pub log_base_note: Option<&'static str>,
}

impl TheoremCheck {
    pub fn satisfied(&self) -> bool {
        self.verdict == Verdict::Satisfied
    }

    pub fn not_applicable(&self) -> bool {
        matches!(self.verdict, Verdict::NotApplicable { .. })
    }

    fn inapplicable(
        id: TheoremId,
        k: Option<usize>,
        measured: BTreeMap<&'static str, u64>,
        reason: String,
    ) -> Self {
        TheoremCheck {
            theorem: id,
            k,
            measured,
            threshold: None,
            verdict: Verdict::NotApplicable { reason },
            implied_bound: None,
            near_threshold: false,
            log_base_note: log_note(id),
        }
    }
}

fn log_note(id: TheoremId) -> Option<&'static str> {
    match id {
        TheoremId::T1_1 | TheoremId::T1_2 | TheoremId::T1_6 => {
            Some("threshold evaluated with base-2 logarithms")
        }
        _ => None,
    }
}

fn implied_bound(id: TheoremId, k: usize) -> RcBound {
    match id {
        TheoremId::T1_1 => RcBound::Exactly(2),
        TheoremId::T1_2 => RcBound::Exactly(3),
        TheoremId::T1_6 => RcBound::AtMost(3),
        _ => RcBound::AtMost(k),
    }
}

/// Smallest common-neighbor count over same-class pairs, across both
/// classes. None when no class holds two vertices.
fn min_same_class_common(g: &Graph, part: &Bipartition) -> Option<u64> {
    let mut min = None;
    for class in [&part.class_a, &part.class_b] {
        for (i, &u) in class.iter().enumerate() {
            for &v in &class[i + 1..] {
                let c = g
                    .common_neighbors(u, v)
                    .expect("class members are distinct")
                    .len() as u64;
                min = Some(min.map_or(c, |m: u64| m.min(c)));
            }
        }
    }
    min
}

/// Evaluates one rule against a connected graph. Structural side conditions
/// (non-complete, bipartite, diameter 2) that fail yield a not-applicable
/// verdict; a palette below the rule's minimum is an error.
pub fn check_theorem(g: &Graph, k: usize, id: TheoremId) -> Result<TheoremCheck> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    check_palette(id, k)?;
    let n = g.n() as u64;
    let k_field = id.takes_k().then_some(k);
    let mut measured = BTreeMap::new();
    measured.insert("n", n);

    let quantity: u64 = match id {
        TheoremId::T1_1 | TheoremId::T1_3 => {
            if g.is_complete() {
                return Ok(TheoremCheck::inapplicable(
                    id,
                    k_field,
                    measured,
                    "graph is complete; the rule covers non-complete graphs".into(),
                ));
            }
            let delta = g.min_degree() as u64;
            measured.insert("delta", delta);
            delta
        }
        TheoremId::T1_4 => {
            if g.is_complete() {
                return Ok(TheoremCheck::inapplicable(
                    id,
                    k_field,
                    measured,
                    "graph is complete; sigma2 has no non-adjacent pair".into(),
                ));
            }
            let s = g.sigma2()? as u64;
            measured.insert("sigma2", s);
            s
        }
        TheoremId::T1_2 | TheoremId::T1_5 => {
            let part = match g.bipartition() {
                Some(p) => p,
                None => {
                    return Ok(TheoremCheck::inapplicable(
                        id,
                        k_field,
                        measured,
                        "graph contains an odd cycle, so it is not bipartite".into(),
                    ))
                }
            };
            if g.is_complete_bipartite(&part) {
                return Ok(TheoremCheck::inapplicable(
                    id,
                    k_field,
                    measured,
                    "complete bipartite graph; its rainbow connection is already known exactly"
                        .into(),
                ));
            }
            match min_same_class_common(g, &part) {
                Some(c) => {
                    measured.insert("min_common_neighbors_same_class", c);
                    c
                }
                None => {
                    return Ok(TheoremCheck::inapplicable(
                        id,
                        k_field,
                        measured,
                        "no two vertices share a class".into(),
                    ))
                }
            }
        }
        TheoremId::T1_6 | TheoremId::T1_7 => {
            match g.diameter() {
                Distance::Finite(2) => measured.insert("diameter", 2),
                d => {
                    return Ok(TheoremCheck::inapplicable(
                        id,
                        k_field,
                        measured,
                        format!("diameter is {d}; the rule applies at diameter 2"),
                    ))
                }
            };
            let delta = g.min_degree() as u64;
            measured.insert("delta", delta);
            delta
        }
    };

    let threshold = required_threshold(id, k, n)?;
    let satisfied = quantity as f64 >= threshold;
    let near = (quantity as f64 - threshold).abs() <= 1e-12 * threshold.abs().max(1.0);
    Ok(TheoremCheck {
        theorem: id,
        k: k_field,
        measured,
        threshold: Some(threshold),
        verdict: if satisfied {
            Verdict::Satisfied
        } else {
            Verdict::Unsatisfied
        },
        implied_bound: satisfied.then(|| implied_bound(id, k)),
        near_threshold: near,
        log_base_note: log_note(id),
    })
}

/// Evaluates all seven rules. Rules whose palette minimum exceeds `k` come
/// back not-applicable instead of failing the whole batch.
pub fn check_all(g: &Graph, k: usize) -> Result<Vec<TheoremCheck>> {
    TheoremId::ALL
        .into_iter()
        .map(|id| match check_theorem(g, k, id) {
            Err(Error::PaletteTooSmall { min_k, .. }) => Ok(TheoremCheck::inapplicable(
                id,
                Some(k),
                BTreeMap::from([("n", g.n() as u64)]),
                format!("palette {k} is below the rule's minimum {min_k}"),
            )),
            other => other,
        })
        .collect()
}

/// One multiplicative failure chain: t paths of a fixed length per pair,
/// each failing independently with the stated probability.
#[derive(Debug, Clone, Serialize)]
pub struct BoundChain {
    /// Which pairs the chain covers.
    pub pairs: &'static str,
    pub path_length: usize,
    pub per_path_failure: ExactProb,
    /// Number of edge-disjoint paths the rule guarantees (real-valued).
    pub path_count: f64,
    /// per_path_failure ^ path_count; at the guaranteed path counts this is
    /// at most 1/n^2.
    pub per_pair_failure: f64,
}

/// Union-bound arithmetic: per-pair failures below 1/n^2 summed over fewer
/// than C(n,2) pairs keep the overall failure below 1/2.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub k: usize,
    pub n: u64,
    pub chains: Vec<BoundChain>,
    /// C(n,2), an overcount of the non-adjacent pairs.
    pub pair_population: u64,
    pub union_failure: ExactProb,
    pub success_lower_bound: ExactProb,
}

fn chain(
    pairs: &'static str,
    length: usize,
    k: usize,
    path_count: f64,
) -> Result<BoundChain> {
    let p = path_failure_prob(k, length)?;
    let pf = *p.numer() as f64 / *p.denom() as f64;
    Ok(BoundChain {
        pairs,
        path_length: length,
        per_path_failure: p.into(),
        path_count,
        per_pair_failure: pair_failure_bound(pf, path_count),
    })
}

/// Builds the failure chains a rule's argument rests on. Fixed-palette
/// rules T1_1/T1_2/T1_6 are quoted without a probability argument, so they
/// yield no chains; `theorem = None` gives the generic chains at (k, n).
pub fn bound_chain(theorem: Option<TheoremId>, k: usize, n: u64) -> Result<Option<BoundReport>> {
    if n < 2 {
        return Err(Error::OrderTooSmall(n));
    }
    if let Some(id) = theorem {
        check_palette(id, k)?;
    }
    if k < 2 {
        return Err(Error::PaletteTooSmall {
            theorem: theorem.map_or("bounds", TheoremId::name),
            min_k: 2,
            k,
        });
    }
    let nf = n as f64;
    let kf = k as f64;
    let t_two = 2.0 * log_base(kf, nf);
    let t_three = || 2.0 * log_base(three_path_base(k), kf) * log_base(kf, nf);
    let chains = match theorem {
        Some(TheoremId::T1_1) | Some(TheoremId::T1_2) | Some(TheoremId::T1_6) => {
            return Ok(None)
        }
        Some(TheoremId::T1_3) | Some(TheoremId::T1_4) => {
            vec![chain("non_adjacent_pairs", 2, k, t_two)?]
        }
        Some(TheoremId::T1_5) => vec![
            chain("same_class_pairs", 2, k, t_three())?,
            chain("cross_class_pairs", 3, k, t_three())?,
        ],
        Some(TheoremId::T1_7) => vec![
            chain("pairs_with_many_common_neighbors", 2, k, t_two)?,
            chain("pairs_with_few_common_neighbors", 3, k, t_three())?,
        ],
        None => {
            let mut v = vec![chain("length_two_paths", 2, k, t_two)?];
            if k >= 3 {
                v.push(chain("length_three_paths", 3, k, t_three())?);
            }
            v
        }
    };
    let union = union_bound_failure(n)?;
    let success = Rational64::new(1, 1) - union;
    Ok(Some(BoundReport {
        k,
        n,
        chains,
        pair_population: n * (n - 1) / 2,
        union_failure: union.into(),
        success_lower_bound: success.into(),
    }))
}

/// Which argument branch covers a non-adjacent pair in a diameter-2 graph:
/// enough common neighbors for length-2 paths, or length-3 paths routed
/// through the disjoint parts of the two neighborhoods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairBranch {
    CommonNeighbors,
    DisjointNeighborhoods,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairDiagnostic {
    pub u: usize,
    pub v: usize,
    pub common_neighbors: usize,
    /// |N(u) \ N(v)| and |N(v) \ N(u)|, the pools for length-3 routing.
    pub a_size: usize,
    pub b_size: usize,
    pub branch: PairBranch,
}

/// Per-pair branch assignment for the diameter-2 rule at palette k.
#[derive(Debug, Clone, Serialize)]
pub struct BranchReport {
    pub k: usize,
    pub n: u64,
    /// Common-neighbor count at which a pair switches branch: 2 log_k n.
    pub branch_threshold: f64,
    pub common_neighbor_pairs: usize,
    pub disjoint_neighborhood_pairs: usize,
    pub pairs: Vec<PairDiagnostic>,
}

/// Classifies every non-adjacent pair of a diameter-2 graph by argument
/// branch. Adjacent pairs need no argument (one edge is always rainbow).
pub fn diam2_branches(g: &Graph, k: usize) -> Result<BranchReport> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if k < 3 {
        return Err(Error::PaletteTooSmall {
            theorem: TheoremId::T1_7.name(),
            min_k: 3,
            k,
        });
    }
    match g.diameter() {
        Distance::Finite(2) => {}
        d => {
            return Err(Error::InvalidConfig(format!(
                "branch diagnostic needs diameter 2, got {d}"
            )))
        }
    }
    let n = g.n();
    let threshold = 2.0 * log_base(k as f64, n as f64);
    let mut pairs = Vec::new();
    let mut two = 0;
    let mut three = 0;
    for u in 0..n {
        for v in (u + 1)..n {
            if g.has_edge(u, v) {
                continue;
            }
            let common = g.common_neighbors(u, v)?.len();
            let branch = if common as f64 >= threshold {
                two += 1;
                PairBranch::CommonNeighbors
            } else {
                three += 1;
                PairBranch::DisjointNeighborhoods
            };
            pairs.push(PairDiagnostic {
                u,
                v,
                common_neighbors: common,
                a_size: g.degree(u) - common,
                b_size: g.degree(v) - common,
                branch,
            });
        }
    }
    Ok(BranchReport {
        k,
        n: n as u64,
        branch_threshold: threshold,
        common_neighbor_pairs: two,
        disjoint_neighborhood_pairs: three,
        pairs,
    })
}
