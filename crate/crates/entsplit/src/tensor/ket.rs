//! Pure states of a composite space.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use super::{tol, Bipartition, TensorSpace};
use crate::error::{Error, Result};

/// A state vector over a [`TensorSpace`].
///
/// Kets are not normalized at construction; fixture states are naturally
/// written with small-integer amplitudes and normalization is an explicit
/// step ([`Ket::normalized`]).
#[derive(Clone, Debug, PartialEq)]
pub struct Ket {
    space: TensorSpace,
    amplitudes: DVector<C64>,
}

impl Ket {
    pub fn new(space: TensorSpace, amplitudes: DVector<C64>) -> Result<Self> {
        if amplitudes.len() != space.total_dim() {
            return Err(Error::Dimension(format!(
                "{} amplitudes for a space of total dimension {}",
                amplitudes.len(),
                space.total_dim()
            )));
        }
        Ok(Self { space, amplitudes })
    }

    /// The computational basis state `|labels⟩`.
    pub fn basis_state(space: &TensorSpace, labels: &[usize]) -> Result<Self> {
        let idx = space.flat_index(labels)?;
        let mut amplitudes = DVector::zeros(space.total_dim());
        amplitudes[idx] = C64::new(1.0, 0.0);
        Ok(Self { space: space.clone(), amplitudes })
    }

    /// A real-coefficient combination of computational basis states,
    /// `Σ c |labels⟩`. This is how the paper-style fixture states are
    /// written down.
    pub fn from_terms(space: &TensorSpace, terms: &[(f64, &[usize])]) -> Result<Self> {
        let mut amplitudes = DVector::zeros(space.total_dim());
        for &(c, labels) in terms {
            let idx = space.flat_index(labels)?;
            amplitudes[idx] += C64::new(c, 0.0);
        }
        Ok(Self { space: space.clone(), amplitudes })
    }

    pub fn space(&self) -> &TensorSpace {
        &self.space
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol::REPR
    }

    /// Rescale to unit norm.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n <= tol::REPR {
            return Err(Error::Contract("cannot normalize the zero vector".into()));
        }
        Ok(Self {
            space: self.space.clone(),
            amplitudes: self.amplitudes.map(|a| a / n),
        })
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Ket) -> C64 {
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Reshape the amplitude vector into a matrix along a bipartition:
    /// rows run over the left-side parties, columns over the right side.
    pub fn reshape_along(&self, cut: &Bipartition) -> Result<DMatrix<C64>> {
        cut.validate_for(&self.space)?;
        let shape = cut.shape(&self.space);
        let mut m = DMatrix::zeros(shape.left_dim, shape.right_dim);
        for (flat, &a) in self.amplitudes.iter().enumerate() {
            let (r, c) = shape.split(flat, &self.space);
            m[(r, c)] = a;
        }
        Ok(m)
    }

    /// Singular values of the amplitude matrix reshaped along `cut`, in
    /// non-increasing order. Requires a normalized state, so the squares
    /// sum to 1.
    pub fn schmidt_coefficients(&self, cut: &Bipartition) -> Result<Vec<f64>> {
        let nsq = self.norm_sqr();
        if (nsq - 1.0).abs() > tol::REPR {
            return Err(Error::NotNormalized(nsq));
        }
        let m = self.reshape_along(cut)?;
        let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.partial_cmp(a).expect("singular values are finite"));
        Ok(sv)
    }

    /// The second Schmidt coefficient along `cut`; zero (up to round-off)
    /// exactly when the state is product across the cut.
    pub fn second_schmidt_coefficient(&self, cut: &Bipartition) -> Result<f64> {
        let sv = self.schmidt_coefficients(cut)?;
        Ok(sv.get(1).copied().unwrap_or(0.0))
    }

    /// Largest second Schmidt coefficient over all bipartitions; zero
    /// exactly when the state is completely product.
    pub fn max_second_schmidt_coefficient(&self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for cut in self.space.bipartitions() {
            worst = worst.max(self.second_schmidt_coefficient(&cut)?);
        }
        Ok(worst)
    }
}

/// A product state stored by its local factors, either one factor per
/// party or one per side of a bipartition.
#[derive(Clone, Debug)]
pub enum ProductKet {
    /// `⊗_i |a_i⟩`, one factor per party.
    PerParty { space: TensorSpace, factors: Vec<DVector<C64>> },
    /// `|a_L⟩ ⊗ |a_R⟩` along an explicit cut of a multipartite space.
    AcrossCut { space: TensorSpace, cut: Bipartition, left: DVector<C64>, right: DVector<C64> },
}

impl ProductKet {
    pub fn per_party(space: TensorSpace, factors: Vec<DVector<C64>>) -> Result<Self> {
        if factors.len() != space.parties() {
            return Err(Error::Dimension(format!(
                "{} factors for {} parties",
                factors.len(),
                space.parties()
            )));
        }
        for (f, &d) in factors.iter().zip(space.dims()) {
            if f.len() != d {
                return Err(Error::Dimension(format!(
                    "factor of length {} for local dimension {d}",
                    f.len()
                )));
            }
        }
        Ok(Self::PerParty { space, factors })
    }

    pub fn across_cut(
        space: TensorSpace,
        cut: Bipartition,
        left: DVector<C64>,
        right: DVector<C64>,
    ) -> Result<Self> {
        cut.validate_for(&space)?;
        let shape = cut.shape(&space);
        if left.len() != shape.left_dim || right.len() != shape.right_dim {
            return Err(Error::Dimension("cut factor lengths do not match the cut".into()));
        }
        Ok(Self::AcrossCut { space, cut, left, right })
    }

    pub fn space(&self) -> &TensorSpace {
        match self {
            Self::PerParty { space, .. } | Self::AcrossCut { space, .. } => space,
        }
    }

    /// Expand the factored form into a full state vector.
    pub fn assemble(&self) -> Ket {
        match self {
            Self::PerParty { space, factors } => {
                let d = space.total_dim();
                let amplitudes = DVector::from_fn(d, |flat, _| {
                    let labels = space.labels_of(flat);
                    factors
                        .iter()
                        .zip(&labels)
                        .map(|(f, &l)| f[l])
                        .product::<C64>()
                });
                Ket { space: space.clone(), amplitudes }
            }
            Self::AcrossCut { space, cut, left, right } => {
                let shape = cut.shape(space);
                let mut amplitudes = DVector::zeros(space.total_dim());
                for r in 0..shape.left_dim {
                    for c in 0..shape.right_dim {
                        amplitudes[shape.join(r, c, space)] = left[r] * right[c];
                    }
                }
                Ket { space: space.clone(), amplitudes }
            }
        }
    }

    /// Normalize every factor in place and return the assembled unit ket.
    pub fn normalized(&self) -> Result<ProductKet> {
        let norm_vec = |v: &DVector<C64>| -> Result<DVector<C64>> {
            let n = v.norm();
            if n <= tol::REPR {
                return Err(Error::Contract("zero product factor".into()));
            }
            Ok(v.map(|a| a / n))
        };
        Ok(match self {
            Self::PerParty { space, factors } => Self::PerParty {
                space: space.clone(),
                factors: factors.iter().map(norm_vec).collect::<Result<_>>()?,
            },
            Self::AcrossCut { space, cut, left, right } => Self::AcrossCut {
                space: space.clone(),
                cut: cut.clone(),
                left: norm_vec(left)?,
                right: norm_vec(right)?,
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn basis_state_has_single_unit_amplitude() {
        let space = TensorSpace::new(vec![2, 3]).unwrap();
        let ket = Ket::basis_state(&space, &[0, 1]).unwrap();
        assert_eq!(ket.amplitudes()[1], c(1.0));
        assert_eq!(ket.amplitudes().iter().filter(|a| a.norm() > 0.0).count(), 1);

        let space4 = TensorSpace::new(vec![2, 2, 2, 2]).unwrap();
        let ket4 = Ket::basis_state(&space4, &[1, 1, 1, 1]).unwrap();
        assert_eq!(ket4.amplitudes()[15], c(1.0));
    }

    #[test]
    fn basis_state_rejects_out_of_range_label() {
        let space = TensorSpace::new(vec![2, 3]).unwrap();
        assert!(matches!(
            Ket::basis_state(&space, &[0, 3]),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn bell_state_schmidt_coefficients() {
        let space = TensorSpace::bipartite(2, 2).unwrap();
        let phi_plus = Ket::from_terms(&space, &[(1.0, &[0, 0]), (1.0, &[1, 1])])
            .unwrap()
            .normalized()
            .unwrap();
        let sv = phi_plus.schmidt_coefficients(&Bipartition::bipartite()).unwrap();
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        assert!((sv[0] - inv_sqrt2).abs() < tol::SPECTRAL);
        assert!((sv[1] - inv_sqrt2).abs() < tol::SPECTRAL);
    }

    #[test]
    fn product_basis_state_is_schmidt_rank_one() {
        let space = TensorSpace::bipartite(2, 2).unwrap();
        let ket = Ket::basis_state(&space, &[0, 1]).unwrap();
        let sv = ket.schmidt_coefficients(&Bipartition::bipartite()).unwrap();
        assert!((sv[0] - 1.0).abs() < tol::SPECTRAL);
        assert!(sv[1].abs() < tol::SPECTRAL);
    }

    #[test]
    fn unnormalized_input_is_rejected_by_schmidt() {
        let space = TensorSpace::bipartite(2, 2).unwrap();
        let ket = Ket::from_terms(&space, &[(1.0, &[0, 0]), (1.0, &[1, 1])]).unwrap();
        assert!(matches!(
            ket.schmidt_coefficients(&Bipartition::bipartite()),
            Err(Error::NotNormalized(_))
        ));
    }

    // Oracle for the Eq.-style fixture state (|01⟩ + |10⟩)/√2 in 2⊗3: the
    // 2x3 reshape is [[0,1,0],[1,0,0]]/√2, whose two nonzero singular
    // values are both 1/√2 (the rows are orthogonal with equal norm).
    #[test]
    fn fixture_state_singular_values_match_hand_svd() {
        let space = TensorSpace::bipartite(2, 3).unwrap();
        let psi = Ket::from_terms(&space, &[(1.0, &[0, 1]), (1.0, &[1, 0])])
            .unwrap()
            .normalized()
            .unwrap();
        let sv = psi.schmidt_coefficients(&Bipartition::bipartite()).unwrap();
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        assert!((sv[0] - inv_sqrt2).abs() < tol::SPECTRAL);
        assert!((sv[1] - inv_sqrt2).abs() < tol::SPECTRAL);
    }

    #[test]
    fn product_ket_assembles_to_kron_order() {
        let space = TensorSpace::bipartite(2, 3).unwrap();
        let a = DVector::from_vec(vec![c(1.0), c(0.0)]);
        let b = DVector::from_vec(vec![c(0.0), c(1.0), c(0.0)]);
        let pk = ProductKet::per_party(space.clone(), vec![a, b]).unwrap();
        let ket = pk.assemble();
        let expect = Ket::basis_state(&space, &[0, 1]).unwrap();
        assert!((ket.inner(&expect).re - 1.0).abs() < tol::REPR);
    }

    #[test]
    fn across_cut_assembly_matches_per_party() {
        let space = TensorSpace::new(vec![2, 2, 2]).unwrap();
        let cut = Bipartition::new(3, [0, 2]).unwrap();
        // left group (parties 1 and 3) in state |1⟩|0⟩ -> row index 2
        let mut left = DVector::zeros(4);
        left[2] = c(1.0);
        let mut right = DVector::zeros(2);
        right[1] = c(1.0);
        let pk = ProductKet::across_cut(space.clone(), cut, left, right).unwrap();
        let expect = Ket::basis_state(&space, &[1, 1, 0]).unwrap();
        assert!((pk.assemble().inner(&expect).re - 1.0).abs() < tol::REPR);
    }
}
