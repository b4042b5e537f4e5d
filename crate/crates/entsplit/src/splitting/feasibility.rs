//! Necessary conditions and cardinality bounds for rank profiles.
//!
//! For a bipartite `d_1 ⊗ d_2` space the largest entangled subspace has
//! dimension `(d_1 - 1)(d_2 - 1)`, so a profile can support an entangled
//! splitting only if every rank lies in `[2, (d_1-1)(d_2-1)]` and the
//! ranks sum to the total dimension. The bounds give the cardinality
//! window directly. No multipartite analogue of the dimension bound is
//! used here; multipartite reports carry the checkable conditions only
//! and leave the bounds unknown.

use crate::tensor::TensorSpace;

/// Feasibility analysis of a requested rank profile.
#[derive(Clone, Debug)]
pub struct FeasibilityReport {
    pub total_dim: usize,
    /// `(d_1 - 1)(d_2 - 1)` for bipartite spaces; unknown otherwise.
    pub max_entangled_dim: Option<usize>,
    /// Human-readable descriptions of every violated necessary condition.
    pub violations: Vec<String>,
    /// `ceil(D / max_entangled_dim)`; unknown for multipartite spaces.
    pub cardinality_min: Option<usize>,
    /// `floor(D / 2)`; unknown for multipartite spaces.
    pub cardinality_max: Option<usize>,
    /// All profiles passing the necessary conditions, sorted descending
    /// within each profile and lexicographically overall. Only materialized
    /// when there are at most [`PROFILE_ENUM_CAP`] of them; the count in
    /// `degeneracy_degree` is exact regardless.
    pub candidate_profiles: Vec<Vec<usize>>,
    /// Number of profiles passing the necessary conditions. Achievability
    /// is a separate, constructive question.
    pub degeneracy_degree: Option<u64>,
}

/// Largest candidate-profile list that gets materialized.
pub const PROFILE_ENUM_CAP: u64 = 512;

impl FeasibilityReport {
    /// The requested profile passes every necessary condition.
    pub fn feasible(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check a requested profile against the necessary conditions and report
/// the cardinality window and degeneracy of the space.
pub fn feasibility(space: &TensorSpace, profile: &[usize]) -> FeasibilityReport {
    let d = space.total_dim();
    let mut violations = Vec::new();

    let max_dim = if space.is_bipartite() {
        let dims = space.dims();
        Some((dims[0] - 1) * (dims[1] - 1))
    } else {
        None
    };

    for (i, &r) in profile.iter().enumerate() {
        if r < 2 {
            violations.push(format!("rank {r} of subspace {} is below 2", i + 1));
        }
        if let Some(max) = max_dim {
            if r > max {
                violations.push(format!(
                    "rank {r} of subspace {} exceeds the maximum entangled dimension {max}",
                    i + 1
                ));
            }
        }
    }
    let sum: usize = profile.iter().sum();
    if sum != d {
        violations.push(format!("ranks sum to {sum}, total dimension is {d}"));
    }
    if profile.is_empty() {
        violations.push("empty profile".into());
    }

    let (cardinality_min, cardinality_max, degeneracy_degree, candidate_profiles) = match max_dim {
        Some(max) if max >= 2 => {
            let min_card = d.div_ceil(max);
            let max_card = d / 2;
            let count = count_partitions(d, max);
            let profiles = if count <= PROFILE_ENUM_CAP {
                enumerate_partitions(d, max)
            } else {
                Vec::new()
            };
            (Some(min_card), Some(max_card), Some(count), profiles)
        }
        Some(_) => {
            // max entangled dimension below 2: nothing qualifies
            (None, None, Some(0), Vec::new())
        }
        None => (None, None, None, Vec::new()),
    };

    FeasibilityReport {
        total_dim: d,
        max_entangled_dim: max_dim,
        violations,
        cardinality_min,
        cardinality_max,
        candidate_profiles,
        degeneracy_degree,
    }
}

/// Number of multisets of integers in `[2, max_part]` summing to `total`.
fn count_partitions(total: usize, max_part: usize) -> u64 {
    fn rec(remaining: usize, largest: usize) -> u64 {
        if remaining == 0 {
            return 1;
        }
        let mut count = 0;
        let top = largest.min(remaining);
        for part in (2..=top).rev() {
            if remaining - part == 1 {
                continue; // a leftover of 1 can never be completed
            }
            count += rec(remaining - part, part);
        }
        count
    }
    rec(total, max_part)
}

/// Materialize the partitions counted by [`count_partitions`], each sorted
/// descending.
fn enumerate_partitions(total: usize, max_part: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, largest: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        let top = largest.min(remaining);
        for part in (2..=top).rev() {
            if remaining - part == 1 {
                continue;
            }
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, max_part, &mut Vec::new(), &mut out);
    out
}
