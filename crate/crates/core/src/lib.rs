//! Rainbow connectivity toolkit: graphs, edge colorings, exact and
//! witness-producing rainbow verification, exhaustive rc computation,
//! density threshold rules with their union-bound arithmetic, graph family
//! generators, and a seeded Monte Carlo harness.
//!
//! An edge-colored graph is rainbow connected when every pair of vertices
//! is joined by a path whose edge colors are pairwise distinct; rc(G) is
//! the smallest palette size for which such a coloring exists, with
//! diam(G) <= rc(G) <= n-1 for connected G. The threshold rules certify
//! rc(G) <= k from density measurements alone by showing that a uniform
//! random k-coloring succeeds with probability above 1 - (n-1)/(2n).
//!
//! Everything randomized is driven by explicit u64 seeds through a
//! splittable counter-based scheme, so every result here is a pure
//! function of its inputs.

pub mod coloring;
pub mod error;
pub mod exact;
pub mod experiment;
pub mod generate;
pub mod graph;
pub mod naive;
pub mod rainbow;
pub mod seeds;
pub mod textio;
pub mod theorems;

pub use coloring::{is_rainbow_path, sample_uniform, EdgeColoring};
pub use error::{Error, Result};
pub use exact::{rc_decision, rc_exact, Decision, RcResult, SearchBudget, SearchStats};
pub use experiment::{
    run_trials, sweep, wilson_interval, ExperimentConfig, SweepParam, SweepRow, SweepSource,
    TrialStats, WilsonInterval, Z_95,
};
pub use generate::{generate, FamilySpec};
pub use graph::{Bipartition, Distance, Graph};
pub use rainbow::{
    is_rainbow_connected, las_vegas_color, rainbow_reachable, verify, verify_fast,
    LasVegasOutcome, RainbowWitness, SearchLimits, Verification, Verifier,
};
pub use seeds::{child_seed, family_seed, rng_from_seed, SUB_SEED_RULE};
pub use textio::{parse_coloring, parse_graph, write_coloring, write_graph};
pub use theorems::{
    bound_chain, check_all, check_theorem, common_neighbor_lower_bound, diam2_branches,
    pair_failure_bound, pair_failure_bound_exact, path_failure_prob, required_threshold,
    union_bound_failure, BoundChain, BoundReport, BranchReport, ExactProb, PairBranch,
    PairDiagnostic, RcBound, TheoremCheck, TheoremId, Verdict,
};
