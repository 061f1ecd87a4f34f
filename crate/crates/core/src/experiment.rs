//! Monte Carlo estimation of the probability that one uniform random
//! k-coloring rainbow connects a graph, with the union-bound guarantee
//! alongside for comparison.

use rayon::iter::{IntoParallelIterator, ParallelIterator};
use serde::Serialize;

use crate::coloring::sample_uniform;
use crate::generate::{generate, FamilySpec};
use crate::graph::Graph;
use crate::rainbow::Verifier;
use crate::seeds::{child_seed, family_seed, SUB_SEED_RULE};
use crate::theorems::{check_theorem, union_bound_failure, TheoremCheck, TheoremId};
use crate::{Error, Result};

/// z for a two-sided 95% confidence interval.
pub const Z_95: f64 = 1.959963984540054;

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentConfig {
    pub k: usize,
    pub trials: u64,
    pub master_seed: u64,
    /// When set, the rule is checked first; its union bound becomes the
    /// theory_lower_bound if satisfied.
    pub theorem: Option<TheoremId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WilsonInterval {
    pub low: f64,
    pub high: f64,
    pub z: f64,
}

/// Wilson score interval for `successes` hits in `trials` draws; behaves
/// sensibly at rates 0 and 1, unlike the normal approximation.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> WilsonInterval {
    assert!(trials >= 1 && successes <= trials);
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = (z / denom) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    // At the boundary rates one endpoint is exactly 0 or 1; pinning it
    // avoids rounding residue in reports.
    WilsonInterval {
        low: if successes == 0 {
            0.0
        } else {
            (center - half).max(0.0)
        },
        high: if successes == trials {
            1.0
        } else {
            (center + half).min(1.0)
        },
        z,
    }
}

/// Aggregate of one trial batch.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialStats {
    pub trials: u64,
    pub successes: u64,
    pub empirical_rate: f64,
    /// 1 - (n-1)/(2n), present exactly when the configured rule holds.
    pub theory_lower_bound: Option<f64>,
    pub wilson_interval: WilsonInterval,
    pub master_seed: u64,
    pub sub_seed_rule: &'static str,
    /// Per-instance sharpening: 1 - sum over non-adjacent pairs of
    /// (1/k)^common_neighbors, clamped at 0. Valid for every graph.
    pub success_lower_bound_sharpened: f64,
    /// Echo of the hypothesis pre-check when a rule was configured.
    pub theorem_check: Option<TheoremCheck>,
}

fn sharpened_success_bound(g: &Graph, k: usize) -> f64 {
    let per_path = 1.0 / k as f64;
    let mut fail = 0.0;
    for u in 0..g.n() {
        for v in (u + 1)..g.n() {
            if g.has_edge(u, v) {
                continue;
            }
            let common = g.common_neighbors(u, v).expect("u < v").len();
            fail += per_path.powi(common as i32);
        }
    }
    (1.0 - fail).max(0.0)
}

/// Runs `cfg.trials` independent sample-and-verify trials on `g`. Trial i
/// draws its coloring from `child_seed(master_seed, i)`; a success is a
/// coloring the exact verifier certifies. The outcome is identical for any
/// worker count.
pub fn run_trials(g: &Graph, cfg: &ExperimentConfig, workers: usize) -> Result<TrialStats> {
    if cfg.trials == 0 {
        return Err(Error::ZeroTrials);
    }
    if cfg.k == 0 {
        return Err(Error::ZeroColors);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let theorem_check = match cfg.theorem {
        Some(id) => Some(check_theorem(g, cfg.k, id)?),
        None => None,
    };
    let theory_lower_bound = match &theorem_check {
        Some(c) if c.satisfied() => {
            let fail = union_bound_failure(g.n() as u64)?;
            Some(1.0 - *fail.numer() as f64 / *fail.denom() as f64)
        }
        _ => None,
    };
    // Constructed once to surface limit errors before any work.
    let mut serial_verifier = Verifier::new(g, cfg.k)?;

    let succeeded = |verifier: &mut Verifier, i: u64| {
        let c = sample_uniform(g, cfg.k, child_seed(cfg.master_seed, i))
            .expect("palette validated above");
        verifier.first_failing_pair(c.colors()).is_none()
    };
    let successes = if workers <= 1 {
        (0..cfg.trials)
            .filter(|&i| succeeded(&mut serial_verifier, i))
            .count() as u64
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("worker pool: {e}")))?;
        pool.install(|| {
            (0..cfg.trials)
                .into_par_iter()
                .map_init(
                    || Verifier::new(g, cfg.k).expect("limits validated above"),
                    |verifier, i| succeeded(verifier, i) as u64,
                )
                .sum()
        })
    };
    Ok(TrialStats {
        trials: cfg.trials,
        successes,
        empirical_rate: successes as f64 / cfg.trials as f64,
        theory_lower_bound,
        wilson_interval: wilson_interval(successes, cfg.trials, Z_95),
        master_seed: cfg.master_seed,
        sub_seed_rule: SUB_SEED_RULE,
        success_lower_bound_sharpened: sharpened_success_bound(g, cfg.k),
        theorem_check,
    })
}

/// The graph a sweep runs on: fixed, or rebuilt from a family per swept
/// value.
#[derive(Debug, Clone)]
pub enum SweepSource<'a> {
    Fixed(&'a Graph),
    Family(FamilySpec),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    DeltaTarget,
    K,
    N,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::DeltaTarget => "delta_target",
            SweepParam::K => "k",
            SweepParam::N => "n",
        }
    }
}

impl std::str::FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta_target" | "delta" => Ok(SweepParam::DeltaTarget),
            "k" => Ok(SweepParam::K),
            "n" => Ok(SweepParam::N),
            other => Err(Error::InvalidConfig(format!(
                "sweep parameter must be delta_target, k, or n, got {other:?}"
            ))),
        }
    }
}

/// One sweep point: the swept value, the order of the graph it ran on, and
/// the trial aggregate.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub value: u64,
    pub k: usize,
    pub n: usize,
    pub stats: TrialStats,
}

fn with_order(spec: &FamilySpec, n: usize, seed: u64) -> Result<FamilySpec> {
    Ok(match *spec {
        FamilySpec::Complete { .. } => FamilySpec::Complete { n },
        FamilySpec::Path { .. } => FamilySpec::Path { n },
        FamilySpec::Cycle { .. } => FamilySpec::Cycle { n },
        FamilySpec::Wheel { .. } => FamilySpec::Wheel { n },
        FamilySpec::Star { .. } => FamilySpec::Star { n },
        FamilySpec::CompleteMinusMatching { .. } => FamilySpec::CompleteMinusMatching { n },
        FamilySpec::BipartiteMinusMatching { .. } => {
            if n % 2 != 0 {
                return Err(Error::InvalidConfig(format!(
                    "bipartite_minus_matching needs an even order, got {n}"
                )));
            }
            FamilySpec::BipartiteMinusMatching { s: n / 2 }
        }
        FamilySpec::RandomMinDegree { delta, .. } => {
            FamilySpec::RandomMinDegree { n, delta, seed }
        }
        FamilySpec::RandomDiam2 { delta, .. } => FamilySpec::RandomDiam2 { n, delta, seed },
        FamilySpec::Petersen | FamilySpec::CompleteBipartite { .. } => {
            return Err(Error::InvalidConfig(
                "this family does not take an order sweep".into(),
            ))
        }
    })
}

fn with_delta(spec: &FamilySpec, delta: usize, seed: u64) -> Result<FamilySpec> {
    Ok(match *spec {
        FamilySpec::RandomMinDegree { n, .. } => FamilySpec::RandomMinDegree { n, delta, seed },
        FamilySpec::RandomDiam2 { n, .. } => FamilySpec::RandomDiam2 { n, delta, seed },
        _ => {
            return Err(Error::InvalidConfig(
                "delta_target sweeps need a random family".into(),
            ))
        }
    })
}

/// Runs one trial batch per swept value. Each row is independently seeded
/// by `child_seed(master_seed, value)`, so rows are reproducible in
/// isolation; random-family graphs are likewise rebuilt per row when the
/// sweep changes the graph.
pub fn sweep(
    source: &SweepSource,
    cfg: &ExperimentConfig,
    param: SweepParam,
    values: &[u64],
    workers: usize,
) -> Result<Vec<SweepRow>> {
    let fixed_family_graph = match (source, param) {
        (SweepSource::Family(spec), SweepParam::K) => Some(generate(spec)?),
        _ => None,
    };
    let mut rows = Vec::with_capacity(values.len());
    for &value in values {
        let row_seed = child_seed(cfg.master_seed, value);
        let mut row_cfg = ExperimentConfig {
            master_seed: row_seed,
            ..cfg.clone()
        };
        let owned;
        let g: &Graph = match (source, param) {
            (SweepSource::Fixed(g), SweepParam::K) => g,
            (SweepSource::Family(_), SweepParam::K) => {
                fixed_family_graph.as_ref().expect("built above")
            }
            (SweepSource::Fixed(_), _) => {
                return Err(Error::InvalidConfig(format!(
                    "{} sweeps need a family source",
                    param.name()
                )))
            }
            (SweepSource::Family(spec), SweepParam::N) => {
                owned = generate(&with_order(spec, value as usize, family_seed(row_seed))?)?;
                &owned
            }
            (SweepSource::Family(spec), SweepParam::DeltaTarget) => {
                owned = generate(&with_delta(spec, value as usize, family_seed(row_seed))?)?;
                &owned
            }
        };
        if param == SweepParam::K {
            row_cfg.k = value as usize;
        }
        let stats = run_trials(g, &row_cfg, workers)?;
        rows.push(SweepRow {
            value,
            k: row_cfg.k,
            n: g.n(),
            stats,
        });
    }
    Ok(rows)
}
