//! Splittings of composite Hilbert spaces into orthogonal entangled
//! subspaces.
//!
//! A *splitting* writes a finite-dimensional composite space
//! `C^{d_1} ⊗ ... ⊗ C^{d_m}` as a direct sum of mutually orthogonal
//! subspaces, each of dimension at least two. When every subspace is
//! entangled (contains no product state), two things follow for the mixed
//! states supported on them and for the projective measurement built from
//! them:
//!
//! - **local unambiguous unidentifiability**: no state of the set can be
//!   unambiguously identified by LOCC with nonzero success probability;
//! - **entanglement generation**: the measurement maps every product input
//!   to an entangled post-measurement state, whichever outcome occurs.
//!
//! The crate provides the linear-algebra substrate ([`tensor`]), a
//! product-state detector for subspaces combining an alternating optimizer
//! with an exact pencil certificate ([`search`]), the splitting data model
//! with fixtures, generators and feasibility bounds ([`splitting`]),
//! identifiability analysis, set classification, the elimination game and
//! NPT probes ([`discrimination`]), Born-rule measurement simulation
//! ([`measurement`]), and a command-line front end ([`cli`]).

pub mod cli;
pub mod discrimination;
pub mod error;
pub mod measurement;
pub mod search;
pub mod splitting;
pub mod tensor;

pub use error::{Error, Result};
pub use search::{detect_product, DetectMode, ProductVerdict, SearchConfig, VerdictKind};
pub use splitting::{fixture, FixtureId, Splitting, Subspace};
pub use tensor::{Bipartition, Ket, Operator, ProductKet, TensorSpace};
