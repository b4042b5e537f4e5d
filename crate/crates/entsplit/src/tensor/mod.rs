//! Dense complex linear algebra over explicit tensor-product structures.
//!
//! Everything in this crate works on states and operators of a composite
//! space `C^{d_1} ⊗ ... ⊗ C^{d_m}` with an explicit list of local
//! dimensions. Flat indices are row-major over the party order, so party 1
//! is the most significant digit: `|i j⟩` in a `d_1 ⊗ d_2` space sits at
//! flat index `i * d_2 + j`.
//!
//! All values are immutable after construction; randomized helpers take an
//! explicit seed and are pure given it.

mod ket;
mod operator;
mod random;

pub use ket::{Ket, ProductKet};
pub use operator::Operator;
pub(crate) use operator::top_eigenpair;
pub use random::{
    derive_seed, haar_unitary, haar_vector, random_local_unitary, random_product_ket, rng_from,
};

use std::fmt;

use crate::error::{Error, Result};

/// Centralized numerical tolerances.
pub mod tol {
    /// Representation-level round-off: hermiticity of stored matrices,
    /// normalization of stored states, exact index permutations.
    pub const REPR: f64 = 1e-12;
    /// Spectral quantities: eigenvalues, singular values, Schmidt sums.
    pub const SPECTRAL: f64 = 1e-10;
    /// Subspace-level identities: Gram matrices, projector idempotence,
    /// orthogonality and completeness of splittings.
    pub const SUBSPACE: f64 = 1e-9;
}

/// A composite Hilbert space `C^{d_1} ⊗ ... ⊗ C^{d_m}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorSpace {
    dims: Vec<usize>,
}

impl TensorSpace {
    /// Build a space from local dimensions. Every entry must be at least 2.
    pub fn new(dims: impl Into<Vec<usize>>) -> Result<Self> {
        let dims = dims.into();
        if dims.is_empty() {
            return Err(Error::Dimension("no local dimensions given".into()));
        }
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::Dimension(format!("local dimension {d} < 2")));
        }
        Ok(Self { dims })
    }

    /// Convenience constructor for a two-party space.
    pub fn bipartite(d1: usize, d2: usize) -> Result<Self> {
        Self::new(vec![d1, d2])
    }

    /// Local dimensions `d_1 .. d_m`.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of parties `m`.
    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    /// Total dimension `D = ∏ d_i`.
    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_bipartite(&self) -> bool {
        self.dims.len() == 2
    }

    /// Row-major flat index of a computational basis label.
    pub fn flat_index(&self, labels: &[usize]) -> Result<usize> {
        if labels.len() != self.dims.len() {
            return Err(Error::Dimension(format!(
                "{} labels for {} parties",
                labels.len(),
                self.dims.len()
            )));
        }
        let mut idx = 0;
        for (p, (&l, &d)) in labels.iter().zip(&self.dims).enumerate() {
            if l >= d {
                return Err(Error::Dimension(format!(
                    "label {l} out of range for party {} of dimension {d}",
                    p + 1
                )));
            }
            idx = idx * d + l;
        }
        Ok(idx)
    }

    /// Per-party labels of a flat index.
    pub fn labels_of(&self, mut flat: usize) -> Vec<usize> {
        let mut labels = vec![0; self.dims.len()];
        for (l, &d) in labels.iter_mut().zip(&self.dims).rev() {
            *l = flat % d;
            flat /= d;
        }
        labels
    }

    /// All distinct bipartitions of the parties, in a deterministic order.
    ///
    /// There are `2^{m-1} - 1` of them; each is canonicalized so that the
    /// side containing party 1 is the left side.
    pub fn bipartitions(&self) -> Vec<Bipartition> {
        let m = self.dims.len();
        let mut cuts = Vec::new();
        // Enumerate subsets of {2..m} joined with party 1 on the left.
        for mask in 0..(1u32 << (m - 1)) {
            let left: Vec<usize> = std::iter::once(0)
                .chain((1..m).filter(|&p| mask >> (p - 1) & 1 == 1))
                .collect();
            if left.len() == m {
                continue;
            }
            cuts.push(Bipartition::new(m, left).expect("enumerated cut is valid"));
        }
        cuts
    }
}

impl fmt::Display for TensorSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", dims.join("x"))
    }
}

/// A cut of the parties into two non-empty groups.
///
/// Parties are indexed from 0 internally; the canonical form keeps the side
/// containing party 0 as the left side. Display is 1-based to match the
/// usual `1|23` physics notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bipartition {
    parties: usize,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl Bipartition {
    /// Build a cut of `parties` parties from the indices on one side.
    pub fn new(parties: usize, side: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut side: Vec<usize> = side.into_iter().collect();
        side.sort_unstable();
        side.dedup();
        if side.is_empty() {
            return Err(Error::Bipartition("empty side".into()));
        }
        if let Some(&p) = side.iter().find(|&&p| p >= parties) {
            return Err(Error::Bipartition(format!(
                "party index {p} out of range for {parties} parties"
            )));
        }
        if side.len() == parties {
            return Err(Error::Bipartition("side covers all parties".into()));
        }
        let complement: Vec<usize> = (0..parties).filter(|p| !side.contains(p)).collect();
        let (left, right) = if side.contains(&0) {
            (side, complement)
        } else {
            (complement, side)
        };
        Ok(Self { parties, left, right })
    }

    /// The only cut of a bipartite space.
    pub fn bipartite() -> Self {
        Self { parties: 2, left: vec![0], right: vec![1] }
    }

    pub fn parties(&self) -> usize {
        self.parties
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    /// Check that the cut matches a space's party count.
    pub fn validate_for(&self, space: &TensorSpace) -> Result<()> {
        if self.parties != space.parties() {
            return Err(Error::Bipartition(format!(
                "cut over {} parties used with a {}-party space",
                self.parties,
                space.parties()
            )));
        }
        Ok(())
    }

    /// Index arithmetic for reshaping along this cut.
    pub(crate) fn shape(&self, space: &TensorSpace) -> CutShape {
        let dims = space.dims();
        let left_dim = self.left.iter().map(|&p| dims[p]).product();
        let right_dim = self.right.iter().map(|&p| dims[p]).product();
        CutShape {
            left_parties: self.left.clone(),
            right_parties: self.right.clone(),
            dims: dims.to_vec(),
            left_dim,
            right_dim,
        }
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: &[usize]| s.iter().map(|p| (p + 1).to_string()).collect::<String>();
        write!(f, "{}|{}", side(&self.left), side(&self.right))
    }
}

/// Row/column arithmetic when a flat tensor index is viewed as a
/// (left-group, right-group) pair along a bipartition.
#[derive(Clone, Debug)]
pub(crate) struct CutShape {
    left_parties: Vec<usize>,
    right_parties: Vec<usize>,
    dims: Vec<usize>,
    pub left_dim: usize,
    pub right_dim: usize,
}

impl CutShape {
    /// Split a flat index into (row over left parties, column over right).
    pub fn split(&self, flat: usize, space: &TensorSpace) -> (usize, usize) {
        let labels = space.labels_of(flat);
        let mut row = 0;
        for &p in &self.left_parties {
            row = row * self.dims[p] + labels[p];
        }
        let mut col = 0;
        for &p in &self.right_parties {
            col = col * self.dims[p] + labels[p];
        }
        (row, col)
    }

    /// Inverse of [`CutShape::split`].
    pub fn join(&self, mut row: usize, mut col: usize, space: &TensorSpace) -> usize {
        let mut labels = vec![0; self.dims.len()];
        for &p in self.left_parties.iter().rev() {
            labels[p] = row % self.dims[p];
            row /= self.dims[p];
        }
        for &p in self.right_parties.iter().rev() {
            labels[p] = col % self.dims[p];
            col /= self.dims[p];
        }
        space.flat_index(&labels).expect("labels are in range")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_indexing_is_row_major() {
        let space = TensorSpace::new(vec![2, 3]).unwrap();
        assert_eq!(space.total_dim(), 6);
        assert_eq!(space.flat_index(&[0, 1]).unwrap(), 1);
        assert_eq!(space.flat_index(&[1, 2]).unwrap(), 5);
        assert_eq!(space.labels_of(4), vec![1, 1]);
    }

    #[test]
    fn label_out_of_range_is_rejected() {
        let space = TensorSpace::new(vec![2, 3]).unwrap();
        assert!(matches!(space.flat_index(&[0, 3]), Err(Error::Dimension(_))));
        assert!(matches!(space.flat_index(&[0]), Err(Error::Dimension(_))));
    }

    #[test]
    fn dimension_one_is_rejected() {
        assert!(TensorSpace::new(vec![2, 1]).is_err());
        assert!(TensorSpace::new(Vec::<usize>::new()).is_err());
    }

    #[test]
    fn bipartition_canonical_form_keeps_party_one_left() {
        let cut = Bipartition::new(3, [1, 2]).unwrap();
        assert_eq!(cut.left(), &[0]);
        assert_eq!(cut.right(), &[1, 2]);
        assert_eq!(cut.to_string(), "1|23");
    }

    #[test]
    fn bipartition_rejects_degenerate_sides() {
        assert!(Bipartition::new(3, []).is_err());
        assert!(Bipartition::new(3, [0, 1, 2]).is_err());
        assert!(Bipartition::new(3, [3]).is_err());
    }

    #[test]
    fn four_party_space_has_seven_cuts() {
        let space = TensorSpace::new(vec![2, 2, 2, 2]).unwrap();
        let cuts = space.bipartitions();
        assert_eq!(cuts.len(), 7);
        for cut in &cuts {
            assert!(cut.left().contains(&0));
        }
    }

    #[test]
    fn cut_shape_split_join_roundtrip() {
        let space = TensorSpace::new(vec![2, 3, 2]).unwrap();
        let cut = Bipartition::new(3, [0, 2]).unwrap();
        let shape = cut.shape(&space);
        assert_eq!(shape.left_dim, 4);
        assert_eq!(shape.right_dim, 3);
        for flat in 0..space.total_dim() {
            let (r, c) = shape.split(flat, &space);
            assert_eq!(shape.join(r, c, &space), flat);
        }
    }
}
