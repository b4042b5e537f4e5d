//! Catalog of reference splittings with exact small-integer amplitudes.
//!
//! Each fixture is stored by its unnormalized spanning vectors and
//! orthonormalized on construction. They cover the interesting regimes at
//! minimal dimensions: the two-qubit splitting whose subspaces contain
//! product states (`EX1_2x2`), the minimal `2⊗3` entangled splitting
//! (`EX2_2x3`) and its rank-4 merge (`RHOPRIME_2x3`), the maximum- and
//! minimum-cardinality `2⊗4` splittings (`EX3_2x4_MAX`, `EX4_2x4_MIN`),
//! the `3⊗3` splitting (`EX5_3x3`), and the four-qubit GHZ/W splitting
//! into genuinely entangled planes (`EX6_4QUBIT`).

use std::fmt;
use std::str::FromStr;

use super::{Splitting, Subspace};
use crate::error::{Error, Result};
use crate::tensor::{Ket, TensorSpace};

/// Identifier of a catalog splitting.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum FixtureId {
    Ex1_2x2,
    Ex2_2x3,
    Ex3_2x4Max,
    Ex4_2x4Min,
    Ex5_3x3,
    Ex6FourQubit,
    RhoPrime2x3,
}

impl FixtureId {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Ex1_2x2 => "EX1_2x2",
            Self::Ex2_2x3 => "EX2_2x3",
            Self::Ex3_2x4Max => "EX3_2x4_MAX",
            Self::Ex4_2x4Min => "EX4_2x4_MIN",
            Self::Ex5_3x3 => "EX5_3x3",
            Self::Ex6FourQubit => "EX6_4QUBIT",
            Self::RhoPrime2x3 => "RHOPRIME_2x3",
        }
    }

    /// Whether every subspace of the fixture is entangled (bipartite
    /// sense for two parties, genuinely for the four-qubit catalog entry).
    pub fn all_entangled(&self) -> bool {
        !matches!(self, Self::Ex1_2x2 | Self::RhoPrime2x3)
    }
}

impl fmt::Display for FixtureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FixtureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.to_ascii_uppercase();
        fixture_ids()
            .into_iter()
            .find(|id| id.name() == up)
            .ok_or_else(|| Error::UnknownFixture(s.to_string()))
    }
}

/// All catalog identifiers, in presentation order.
pub fn fixture_ids() -> [FixtureId; 7] {
    [
        FixtureId::Ex1_2x2,
        FixtureId::Ex2_2x3,
        FixtureId::Ex3_2x4Max,
        FixtureId::Ex4_2x4Min,
        FixtureId::Ex5_3x3,
        FixtureId::Ex6FourQubit,
        FixtureId::RhoPrime2x3,
    ]
}

/// The exact catalog construction for an identifier, orthonormalized.
pub fn fixture(id: FixtureId) -> Splitting {
    let (space, vectors, groups): (TensorSpace, Vec<Ket>, &[&[usize]]) = match id {
        FixtureId::Ex1_2x2 => {
            let space = TensorSpace::bipartite(2, 2).expect("2x2 space");
            (space.clone(), ex1_vectors(&space), &[&[0, 1], &[2, 3]])
        }
        FixtureId::Ex2_2x3 => {
            let space = TensorSpace::bipartite(2, 3).expect("2x3 space");
            (space.clone(), eq3_vectors(&space), &[&[0, 1], &[2, 3], &[4, 5]])
        }
        FixtureId::RhoPrime2x3 => {
            let space = TensorSpace::bipartite(2, 3).expect("2x3 space");
            (space.clone(), eq3_vectors(&space), &[&[0, 1, 2, 3], &[4, 5]])
        }
        FixtureId::Ex3_2x4Max => {
            let space = TensorSpace::bipartite(2, 4).expect("2x4 space");
            (
                space.clone(),
                eq4_vectors(&space),
                &[&[0, 4], &[1, 5], &[2, 6], &[3, 7]],
            )
        }
        FixtureId::Ex4_2x4Min => {
            let space = TensorSpace::bipartite(2, 4).expect("2x4 space");
            (
                space.clone(),
                eq5_vectors(&space),
                &[&[0, 2, 4], &[3, 5, 6], &[1, 7]],
            )
        }
        FixtureId::Ex5_3x3 => {
            let space = TensorSpace::bipartite(3, 3).expect("3x3 space");
            (
                space.clone(),
                eq6_vectors(&space),
                &[&[0, 3, 5], &[1, 6, 8], &[2, 4, 7]],
            )
        }
        FixtureId::Ex6FourQubit => {
            let space = TensorSpace::new(vec![2, 2, 2, 2]).expect("four-qubit space");
            (
                space.clone(),
                eq8_vectors(&space),
                &[
                    &[0, 8],
                    &[1, 9],
                    &[2, 10],
                    &[3, 11],
                    &[4, 12],
                    &[5, 13],
                    &[6, 14],
                    &[7, 15],
                ],
            )
        }
    };
    let subspaces = groups
        .iter()
        .map(|group| {
            let raw: Vec<Ket> = group.iter().map(|&i| vectors[i].clone()).collect();
            Subspace::from_raw(&space, &raw).expect("catalog vectors are independent")
        })
        .collect();
    Splitting::new(space, subspaces).expect("catalog splittings are well-formed")
}

fn kets(space: &TensorSpace, terms: &[&[(f64, &[usize])]]) -> Vec<Ket> {
    terms
        .iter()
        .map(|t| Ket::from_terms(space, t).expect("valid labels"))
        .collect()
}

/// `|00⟩±|11⟩` completed by `|01⟩` and `|10⟩`: the supports of the
/// two-qubit counterexample set.
fn ex1_vectors(space: &TensorSpace) -> Vec<Ket> {
    kets(
        space,
        &[
            &[(1.0, &[0, 0]), (1.0, &[1, 1])],
            &[(1.0, &[0, 1])],
            &[(1.0, &[0, 0]), (-1.0, &[1, 1])],
            &[(1.0, &[1, 0])],
        ],
    )
}

/// The six `2⊗3` vectors ψ1..ψ6, in order.
fn eq3_vectors(space: &TensorSpace) -> Vec<Ket> {
    kets(
        space,
        &[
            &[(1.0, &[0, 1]), (1.0, &[1, 0])],
            &[(1.0, &[0, 0]), (1.0, &[1, 2])],
            &[(1.0, &[0, 2]), (1.0, &[1, 1])],
            &[(1.0, &[0, 0]), (-1.0, &[1, 2])],
            &[(1.0, &[0, 1]), (-1.0, &[1, 0])],
            &[(1.0, &[0, 2]), (-1.0, &[1, 1])],
        ],
    )
}

/// The eight Bell-type `2⊗4` vectors ψ1..ψ8 on column blocks {0,1} and
/// {2,3}.
fn eq4_vectors(space: &TensorSpace) -> Vec<Ket> {
    kets(
        space,
        &[
            &[(1.0, &[0, 0]), (1.0, &[1, 1])],
            &[(1.0, &[0, 0]), (-1.0, &[1, 1])],
            &[(1.0, &[0, 1]), (1.0, &[1, 0])],
            &[(1.0, &[0, 1]), (-1.0, &[1, 0])],
            &[(1.0, &[0, 2]), (1.0, &[1, 3])],
            &[(1.0, &[0, 2]), (-1.0, &[1, 3])],
            &[(1.0, &[0, 3]), (1.0, &[1, 2])],
            &[(1.0, &[0, 3]), (-1.0, &[1, 2])],
        ],
    )
}

/// The eight shifted-pairing `2⊗4` vectors ψ1..ψ8 (no four of them close
/// a `2⊗2` sub-basis).
fn eq5_vectors(space: &TensorSpace) -> Vec<Ket> {
    kets(
        space,
        &[
            &[(1.0, &[0, 0]), (1.0, &[1, 2])],
            &[(1.0, &[0, 0]), (-1.0, &[1, 2])],
            &[(1.0, &[0, 1]), (1.0, &[1, 3])],
            &[(1.0, &[0, 1]), (-1.0, &[1, 3])],
            &[(1.0, &[0, 2]), (1.0, &[1, 1])],
            &[(1.0, &[0, 2]), (-1.0, &[1, 1])],
            &[(1.0, &[0, 3]), (1.0, &[1, 0])],
            &[(1.0, &[0, 3]), (-1.0, &[1, 0])],
        ],
    )
}

/// The nine `3⊗3` vectors ψ1..ψ9: a diagonal triple plus four shifted
/// pairs.
fn eq6_vectors(space: &TensorSpace) -> Vec<Ket> {
    kets(
        space,
        &[
            &[(1.0, &[0, 0]), (1.0, &[1, 1]), (1.0, &[2, 2])],
            &[(1.0, &[0, 0]), (-1.0, &[1, 1])],
            &[(1.0, &[0, 0]), (1.0, &[1, 1]), (-2.0, &[2, 2])],
            &[(1.0, &[0, 1]), (1.0, &[1, 2])],
            &[(1.0, &[0, 1]), (-1.0, &[1, 2])],
            &[(1.0, &[0, 2]), (1.0, &[2, 0])],
            &[(1.0, &[0, 2]), (-1.0, &[2, 0])],
            &[(1.0, &[1, 0]), (1.0, &[2, 1])],
            &[(1.0, &[1, 0]), (-1.0, &[2, 1])],
        ],
    )
}

/// The sixteen four-qubit vectors ψ1..ψ16: eight GHZ-type on the
/// even-weight basis states and eight W-type on the odd-weight ones.
fn eq8_vectors(space: &TensorSpace) -> Vec<Ket> {
    kets(
        space,
        &[
            &[(1.0, &[0, 0, 0, 0]), (1.0, &[1, 1, 1, 1])],
            &[(1.0, &[0, 0, 0, 0]), (-1.0, &[1, 1, 1, 1])],
            &[(1.0, &[0, 0, 1, 1]), (1.0, &[1, 1, 0, 0])],
            &[(1.0, &[0, 0, 1, 1]), (-1.0, &[1, 1, 0, 0])],
            &[(1.0, &[0, 1, 0, 1]), (1.0, &[1, 0, 1, 0])],
            &[(1.0, &[0, 1, 0, 1]), (-1.0, &[1, 0, 1, 0])],
            &[(1.0, &[0, 1, 1, 0]), (1.0, &[1, 0, 0, 1])],
            &[(1.0, &[0, 1, 1, 0]), (-1.0, &[1, 0, 0, 1])],
            &[
                (1.0, &[0, 0, 0, 1]),
                (1.0, &[0, 0, 1, 0]),
                (1.0, &[0, 1, 0, 0]),
                (1.0, &[1, 0, 0, 0]),
            ],
            &[
                (1.0, &[0, 0, 0, 1]),
                (1.0, &[0, 0, 1, 0]),
                (-1.0, &[0, 1, 0, 0]),
                (-1.0, &[1, 0, 0, 0]),
            ],
            &[
                (1.0, &[0, 0, 0, 1]),
                (-1.0, &[0, 0, 1, 0]),
                (1.0, &[0, 1, 0, 0]),
                (-1.0, &[1, 0, 0, 0]),
            ],
            &[
                (1.0, &[0, 0, 0, 1]),
                (-1.0, &[0, 0, 1, 0]),
                (-1.0, &[0, 1, 0, 0]),
                (1.0, &[1, 0, 0, 0]),
            ],
            &[
                (1.0, &[1, 1, 1, 0]),
                (1.0, &[1, 1, 0, 1]),
                (1.0, &[1, 0, 1, 1]),
                (1.0, &[0, 1, 1, 1]),
            ],
            &[
                (1.0, &[1, 1, 1, 0]),
                (1.0, &[1, 1, 0, 1]),
                (-1.0, &[1, 0, 1, 1]),
                (-1.0, &[0, 1, 1, 1]),
            ],
            &[
                (1.0, &[1, 1, 1, 0]),
                (-1.0, &[1, 1, 0, 1]),
                (1.0, &[1, 0, 1, 1]),
                (-1.0, &[0, 1, 1, 1]),
            ],
            &[
                (1.0, &[1, 1, 1, 0]),
                (-1.0, &[1, 1, 0, 1]),
                (-1.0, &[1, 0, 1, 1]),
                (1.0, &[0, 1, 1, 1]),
            ],
        ],
    )
}
