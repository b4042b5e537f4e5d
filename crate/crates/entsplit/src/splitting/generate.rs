//! Constructive generators for entangled splittings of bipartite spaces.
//!
//! [`generate_bell_pairing`] is the deterministic maximum-cardinality
//! construction for even-dimensional subsystems: the space is tiled into
//! `2x2` blocks, each block carries a Bell-type basis, and Bell states
//! from distinct blocks are paired into two-dimensional subspaces. Any two
//! Bell states from different blocks span an entangled plane, because the
//! blocks are disjoint in rows or in columns.
//!
//! [`search_splitting`] is the randomized route for everything else: build
//! an entangled basis from two-term (and, on odd total dimension, one
//! three-term) superpositions of computational states, avoiding the closed
//! `2x2` sub-basis pattern, then group basis vectors into candidate
//! subspaces and keep a grouping only when every group passes the product
//! detector. Absence of a result within the budget is not a proof of
//! infeasibility.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{feasibility, EntangledMode, Splitting, Subspace};
use crate::error::{Error, Result};
use crate::search::{detect_product, DetectMode, SearchConfig};
use crate::tensor::{derive_seed, rng_from, Ket, TensorSpace};

/// Bell-type basis vector `k` of the 2x2 block with row pair
/// `(2a, 2a+1)` and column pair `(2b, 2b+1)`.
fn bell_vector(space: &TensorSpace, a: usize, b: usize, k: usize) -> Ket {
    let (r0, r1, c0, c1) = (2 * a, 2 * a + 1, 2 * b, 2 * b + 1);
    let terms: [(f64, [usize; 2]); 2] = match k {
        0 => [(1.0, [r0, c0]), (1.0, [r1, c1])],
        1 => [(1.0, [r0, c0]), (-1.0, [r1, c1])],
        2 => [(1.0, [r0, c1]), (1.0, [r1, c0])],
        _ => [(1.0, [r0, c1]), (-1.0, [r1, c0])],
    };
    let with_refs: Vec<(f64, &[usize])> = terms.iter().map(|(c, l)| (*c, &l[..])).collect();
    Ket::from_terms(space, &with_refs).expect("block labels are in range")
}

/// Maximum-cardinality splitting of an even `d_1 ⊗ d_2` space into
/// `d_1 d_2 / 2` two-dimensional entangled subspaces.
///
/// With an even number of blocks, consecutive blocks are paired and
/// matching Bell indices combined (for `2 ⊗ 4` this reproduces the
/// catalog splitting `EX3_2x4_MAX` exactly). With an odd number of blocks
/// (at least 3), blocks are arranged in a cycle and each block sends two
/// Bell states forward and keeps two for its predecessor.
pub fn generate_bell_pairing(d1: usize, d2: usize) -> Result<Splitting> {
    if d1 % 2 != 0 || d2 % 2 != 0 {
        return Err(Error::Precondition(format!(
            "bell pairing needs even local dimensions, got {d1}x{d2}; use search_splitting instead"
        )));
    }
    let space = TensorSpace::bipartite(d1, d2)?;
    let blocks: Vec<(usize, usize)> = (0..d1 / 2)
        .flat_map(|a| (0..d2 / 2).map(move |b| (a, b)))
        .collect();
    let nb = blocks.len();
    if nb < 2 {
        return Err(Error::Precondition(
            "2x2 admits no entangled splitting (its largest entangled subspace has dimension 1)"
                .into(),
        ));
    }

    let pair = |(a1, b1): (usize, usize), k1: usize, (a2, b2): (usize, usize), k2: usize| {
        Subspace::from_raw(
            &space,
            &[bell_vector(&space, a1, b1, k1), bell_vector(&space, a2, b2, k2)],
        )
        .expect("bell vectors are independent")
    };

    let mut subspaces = Vec::with_capacity(d1 * d2 / 2);
    if nb % 2 == 0 {
        for t in 0..nb / 2 {
            for k in 0..4 {
                subspaces.push(pair(blocks[2 * t], k, blocks[2 * t + 1], k));
            }
        }
    } else {
        for j in 0..nb {
            let next = blocks[(j + 1) % nb];
            subspaces.push(pair(blocks[j], 0, next, 2));
            subspaces.push(pair(blocks[j], 1, next, 3));
        }
    }
    Splitting::new(space, subspaces)
}

/// Result of a randomized splitting search.
#[derive(Clone, Debug)]
pub struct SplitSearchOutcome {
    /// A splitting that passed full verification, when one was found.
    pub splitting: Option<Splitting>,
    /// Candidate subspaces tested against the product detector.
    pub candidates_tried: usize,
    /// The budget the search ran under.
    pub budget: usize,
}

/// A cell of the computational grid together with the part of the
/// entangled basis it belongs to.
#[derive(Clone, Debug)]
struct BasisVector {
    part: usize,
    ket: Ket,
}

/// Build a randomized entangled basis: partition the `d_1 x d_2` grid into
/// pairs (and one triple when the total dimension is odd) of cells with
/// pairwise distinct rows and columns, avoiding the swapped-pair pattern
/// that closes a 2x2 sub-basis, then expand every part into ±1 (and small
/// integer) coefficient combinations.
fn random_entangled_basis(
    space: &TensorSpace,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Option<Vec<BasisVector>> {
    let d1 = space.dims()[0];
    let d2 = space.dims()[1];
    let mut cells: Vec<(usize, usize)> = (0..d1)
        .flat_map(|r| (0..d2).map(move |c| (r, c)))
        .collect();
    cells.shuffle(rng);

    let mut parts: Vec<Vec<(usize, usize)>> = Vec::new();

    if cells.len() % 2 == 1 {
        // carve out one diagonal triple
        let mut triple: Vec<(usize, usize)> = Vec::new();
        let mut rest: Vec<(usize, usize)> = Vec::new();
        for cell in cells.drain(..) {
            if triple.len() < 3
                && triple.iter().all(|&(r, c)| r != cell.0 && c != cell.1)
            {
                triple.push(cell);
            } else {
                rest.push(cell);
            }
        }
        if triple.len() < 3 {
            return None;
        }
        parts.push(triple);
        cells = rest;
    }

    // pair the remaining cells greedily
    let mut pairs: Vec<[(usize, usize); 2]> = Vec::new();
    while let Some(first) = cells.pop() {
        let partner = cells
            .iter()
            .position(|&(r, c)| r != first.0 && c != first.1)?;
        let second = cells.swap_remove(partner);
        pairs.push([first, second]);
    }
    // reject pairings containing a swapped twin (a closed 2x2 sub-basis)
    for (i, p) in pairs.iter().enumerate() {
        let swapped = [(p[0].0, p[1].1), (p[1].0, p[0].1)];
        for q in pairs.iter().skip(i + 1) {
            let qs = [q[0], q[1]];
            if (qs[0] == swapped[0] && qs[1] == swapped[1])
                || (qs[0] == swapped[1] && qs[1] == swapped[0])
            {
                return None;
            }
        }
    }
    parts.extend(pairs.iter().map(|p| p.to_vec()));

    let mut basis = Vec::with_capacity(space.total_dim());
    for (part_id, part) in parts.iter().enumerate() {
        let coeff_sets: Vec<Vec<f64>> = if part.len() == 3 {
            vec![vec![1.0, 1.0, 1.0], vec![1.0, -1.0, 0.0], vec![1.0, 1.0, -2.0]]
        } else {
            vec![vec![1.0, 1.0], vec![1.0, -1.0]]
        };
        for coeffs in coeff_sets {
            let terms: Vec<(f64, Vec<usize>)> = part
                .iter()
                .zip(&coeffs)
                .filter(|(_, &c)| c != 0.0)
                .map(|(&(r, c_), &co)| (co, vec![r, c_]))
                .collect();
            let term_refs: Vec<(f64, &[usize])> =
                terms.iter().map(|(co, l)| (*co, &l[..])).collect();
            let ket = Ket::from_terms(space, &term_refs).expect("grid labels are in range");
            basis.push(BasisVector { part: part_id, ket });
        }
    }
    Some(basis)
}

/// Randomly assign basis vectors to groups with the requested sizes, never
/// placing two vectors of the same part in one group (superposing them can
/// collapse to a single computational cell).
fn random_grouping(
    basis: &[BasisVector],
    profile: &[usize],
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Option<Vec<Vec<usize>>> {
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.shuffle(rng);
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); profile.len()];
    for &vi in &order {
        let part = basis[vi].part;
        // fill the group with the most remaining capacity that lacks this part
        let slot = groups
            .iter()
            .enumerate()
            .filter(|(g, members)| {
                members.len() < profile[*g]
                    && members.iter().all(|&m| basis[m].part != part)
            })
            .max_by_key(|(g, members)| profile[*g] - members.len())
            .map(|(g, _)| g)?;
        groups[slot].push(vi);
    }
    Some(groups)
}

/// Randomized backtracking search for an entangled splitting with the
/// requested rank profile. Bipartite spaces only; the profile must pass
/// [`feasibility`] first. Candidate groups are screened with a cheap
/// detector configuration; a fully grouped candidate is accepted only
/// after `verify_entangled_splitting` passes with the caller's
/// configuration.
pub fn search_splitting(
    space: &TensorSpace,
    profile: &[usize],
    cfg: &SearchConfig,
    budget: usize,
) -> Result<SplitSearchOutcome> {
    if !space.is_bipartite() {
        return Err(Error::Precondition(
            "splitting search is implemented for bipartite spaces".into(),
        ));
    }
    let report = feasibility(space, profile);
    if !report.feasible() {
        return Err(Error::Precondition(format!(
            "profile fails necessary conditions: {}",
            report.violations.join("; ")
        )));
    }

    let screen_cfg = SearchConfig {
        restarts: cfg.restarts.min(8),
        max_iters: cfg.max_iters.min(150),
        ..cfg.clone()
    };

    let mut tried = 0usize;
    let mut rng = rng_from(derive_seed(cfg.seed, 0xb45_15));
    'outer: while tried < budget {
        // every basis attempt counts toward the budget, so the search
        // terminates even when generation or grouping keeps failing
        tried += 1;
        let Some(basis) = random_entangled_basis(space, &mut rng) else {
            continue;
        };
        // a handful of groupings per basis before regenerating
        for _ in 0..8 {
            let Some(groups) = random_grouping(&basis, profile, &mut rng) else {
                continue;
            };
            let mut subspaces = Vec::with_capacity(groups.len());
            let mut ok = true;
            for group in &groups {
                if tried >= budget {
                    break 'outer;
                }
                let raw: Vec<Ket> = group.iter().map(|&i| basis[i].ket.clone()).collect();
                let Ok(sub) = Subspace::from_raw(space, &raw) else {
                    ok = false;
                    break;
                };
                tried += 1;
                let screen_seed = derive_seed(screen_cfg.seed, tried as u64);
                let verdict = detect_product(
                    &sub,
                    &DetectMode::AllParties,
                    &screen_cfg.with_seed(screen_seed),
                )?;
                if !verdict.entangled() {
                    ok = false;
                    break;
                }
                subspaces.push(sub);
            }
            if !ok {
                continue;
            }
            let candidate = Splitting::new(space.clone(), subspaces)?;
            let full = super::verify_entangled_splitting(&candidate, cfg, EntangledMode::Bipartite)?;
            if full.all_entangled {
                return Ok(SplitSearchOutcome {
                    splitting: Some(candidate),
                    candidates_tried: tried,
                    budget,
                });
            }
        }
    }
    Ok(SplitSearchOutcome { splitting: None, candidates_tried: tried, budget })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_pairing_2x4_matches_catalog_projectors() {
        let generated = generate_bell_pairing(2, 4).unwrap();
        let catalog = crate::splitting::fixture(crate::splitting::FixtureId::Ex3_2x4Max);
        assert_eq!(generated.len(), 4);
        for (g, c) in generated.subspaces().iter().zip(catalog.subspaces()) {
            let dev = g.projector().max_abs_diff(&c.projector());
            assert!(dev <= 1e-9, "projector deviates by {dev:.3e}");
        }
    }

    #[test]
    fn bell_pairing_rejects_odd_and_minimal_shapes() {
        assert!(matches!(
            generate_bell_pairing(2, 3),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            generate_bell_pairing(2, 2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn bell_pairing_profiles_are_all_rank_two() {
        for (d1, d2) in [(2, 4), (2, 6), (4, 4), (4, 6)] {
            let sp = generate_bell_pairing(d1, d2).unwrap();
            assert_eq!(sp.len(), d1 * d2 / 2, "{d1}x{d2} cardinality");
            assert!(sp.profile().iter().all(|&r| r == 2));
            let report = sp.verify();
            assert!(report.valid(), "{d1}x{d2}: {report:?}");
        }
    }

    #[test]
    fn search_rejects_infeasible_profiles_and_multipartite_spaces() {
        let space = TensorSpace::bipartite(2, 4).unwrap();
        let cfg = SearchConfig::default();
        assert!(matches!(
            search_splitting(&space, &[4, 4], &cfg, 100),
            Err(Error::Precondition(_))
        ));
        let multi = TensorSpace::new(vec![2, 2, 2]).unwrap();
        assert!(matches!(
            search_splitting(&multi, &[2, 2, 2, 2], &cfg, 100),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn search_finds_the_2x4_min_cardinality_profile() {
        let space = TensorSpace::bipartite(2, 4).unwrap();
        let cfg = SearchConfig::default();
        let outcome = search_splitting(&space, &[3, 3, 2], &cfg, 100_000).unwrap();
        let sp = outcome.splitting.expect("a (3,3,2) splitting of 2x4 exists");
        let mut profile = sp.profile();
        profile.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(profile, vec![3, 3, 2]);
    }
}
