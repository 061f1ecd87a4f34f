//! Mapping from the shared family flag bundle onto a generator spec.

use rainbow_core::FamilySpec;

pub const FAMILY_NAMES: &str = "complete, path, cycle, wheel, star, petersen, \
     complete_minus_matching, complete_bipartite, bipartite_minus_matching, \
     random_min_degree, random_diam2";

/// True when the family draws randomness and therefore needs a seed.
pub fn needs_seed(name: &str) -> bool {
    matches!(name, "random_min_degree" | "random_diam2")
}

/// Builds a spec from flag values. `seed` is consulted only by the random
/// families; callers resolve it (flag or RAINBOW_SEED) before this point.
pub fn spec_from_flags(
    name: &str,
    n: Option<usize>,
    s: Option<usize>,
    delta: Option<usize>,
    seed: Option<u64>,
) -> Result<FamilySpec, String> {
    let need_n = || n.ok_or(format!("family {name} needs -n"));
    let need_delta = || delta.ok_or(format!("family {name} needs --delta"));
    let need_seed = || seed.ok_or(format!("family {name} needs --seed or RAINBOW_SEED"));
    match name {
        "complete" => Ok(FamilySpec::Complete { n: need_n()? }),
        "path" => Ok(FamilySpec::Path { n: need_n()? }),
        "cycle" => Ok(FamilySpec::Cycle { n: need_n()? }),
        "wheel" => Ok(FamilySpec::Wheel { n: need_n()? }),
        "star" => Ok(FamilySpec::Star { n: need_n()? }),
        "petersen" => match n {
            None | Some(10) => Ok(FamilySpec::Petersen),
            Some(other) => Err(format!("petersen has exactly 10 vertices, not {other}")),
        },
        "complete_minus_matching" => Ok(FamilySpec::CompleteMinusMatching { n: need_n()? }),
        "complete_bipartite" => {
            let n = need_n()?;
            let s = s.ok_or("complete_bipartite needs --s (one side; the other is n - s)")?;
            if s == 0 || s >= n {
                return Err(format!("--s {s} must lie strictly between 0 and n = {n}"));
            }
            Ok(FamilySpec::CompleteBipartite { s, t: n - s })
        }
        "bipartite_minus_matching" => {
            let s = match (s, n) {
                (Some(s), None) => s,
                (Some(s), Some(n)) if n == 2 * s => s,
                (Some(s), Some(n)) => {
                    return Err(format!("--s {s} and -n {n} disagree; n = 2s"));
                }
                (None, Some(n)) if n % 2 == 0 => n / 2,
                (None, Some(n)) => {
                    return Err(format!("-n {n} is odd; the family has n = 2s vertices"));
                }
                (None, None) => return Err("bipartite_minus_matching needs --s or -n".into()),
            };
            Ok(FamilySpec::BipartiteMinusMatching { s })
        }
        "random_min_degree" => Ok(FamilySpec::RandomMinDegree {
            n: need_n()?,
            delta: need_delta()?,
            seed: need_seed()?,
        }),
        "random_diam2" => Ok(FamilySpec::RandomDiam2 {
            n: need_n()?,
            delta: need_delta()?,
            seed: need_seed()?,
        }),
        other => Err(format!("unknown family {other:?}; choose one of {FAMILY_NAMES}")),
    }
}
