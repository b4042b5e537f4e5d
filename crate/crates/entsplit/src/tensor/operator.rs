//! Hermitian and general operators on a composite space.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use super::{tol, Bipartition, Ket, TensorSpace};
use crate::error::{Error, Result};

/// A dense `D x D` operator with an explicit hermitian flag.
#[derive(Clone, Debug)]
pub struct Operator {
    space: TensorSpace,
    matrix: DMatrix<C64>,
    hermitian: bool,
}

fn max_abs_entry(m: &DMatrix<C64>) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

impl Operator {
    /// Wrap a matrix without asserting hermiticity.
    pub fn new(space: TensorSpace, matrix: DMatrix<C64>) -> Result<Self> {
        let d = space.total_dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::Dimension(format!(
                "{}x{} matrix on a space of total dimension {d}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(Self { space, matrix, hermitian: false })
    }

    /// Wrap a matrix, verifying `max |M - M†|` is at representation
    /// round-off, and mark it hermitian.
    pub fn hermitian(space: TensorSpace, matrix: DMatrix<C64>) -> Result<Self> {
        let mut op = Self::new(space, matrix)?;
        let dev = max_abs_entry(&(&op.matrix - op.matrix.adjoint()));
        if dev > tol::REPR {
            return Err(Error::NotHermitian(dev));
        }
        op.hermitian = true;
        Ok(op)
    }

    pub fn identity(space: TensorSpace) -> Self {
        let d = space.total_dim();
        Self { space, matrix: DMatrix::identity(d, d), hermitian: true }
    }

    pub fn space(&self) -> &TensorSpace {
        &self.space
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    /// `M |ψ⟩`.
    pub fn apply(&self, ket: &Ket) -> Result<Ket> {
        if ket.space() != &self.space {
            return Err(Error::Dimension("operator and ket live on different spaces".into()));
        }
        Ket::new(self.space.clone(), &self.matrix * ket.amplitudes())
    }

    /// `⟨ψ|M|ψ⟩`, returned as a real number (contract: hermitian).
    pub fn expectation(&self, ket: &Ket) -> Result<f64> {
        if !self.hermitian {
            return Err(Error::Contract("expectation of a non-hermitian operator".into()));
        }
        let mv = self.apply(ket)?;
        Ok(ket.inner(&mv).re)
    }

    /// Transpose the indices of the parties on the right side of `cut`.
    ///
    /// The result of applying the map twice is the input, entry for entry.
    pub fn partial_transpose(&self, cut: &Bipartition) -> Result<Operator> {
        if !self.hermitian {
            return Err(Error::Contract("partial transpose of a non-hermitian operator".into()));
        }
        cut.validate_for(&self.space)?;
        let shape = cut.shape(&self.space);
        let d = self.space.total_dim();
        let mut out = DMatrix::zeros(d, d);
        for row in 0..d {
            let (rl, rr) = shape.split(row, &self.space);
            for col in 0..d {
                let (cl, cr) = shape.split(col, &self.space);
                // ⟨rl rr| M^{T_R} |cl cr⟩ = ⟨rl cr| M |cl rr⟩
                let src_row = shape.join(rl, cr, &self.space);
                let src_col = shape.join(cl, rr, &self.space);
                out[(row, col)] = self.matrix[(src_row, src_col)];
            }
        }
        Ok(Self { space: self.space.clone(), matrix: out, hermitian: true })
    }

    /// Real eigenvalues of a hermitian operator, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        if !self.hermitian {
            return Err(Error::Contract("eigenvalues of a non-hermitian operator".into()));
        }
        let eig = self.matrix.clone().symmetric_eigen();
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
        Ok(vals)
    }

    /// Smallest eigenvalue of a hermitian operator.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.eigenvalues()?[0])
    }

    /// `max |A - B|` entry-wise, for closeness checks in tests and reports.
    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        max_abs_entry(&(&self.matrix - &other.matrix))
    }
}

/// Top eigenpair of a hermitian matrix; the workhorse of the alternating
/// product-state optimizer.
pub(crate) fn top_eigenpair(m: &DMatrix<C64>) -> (f64, DVector<C64>) {
    let eig = m.clone().symmetric_eigen();
    let (best, _) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).expect("eigenvalues are finite"))
        .expect("non-empty spectrum");
    let v = eig.eigenvectors.column(best).into_owned();
    (eig.eigenvalues[best], v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{derive_seed, haar_vector, rng_from};
    use rand::RngCore;

    fn bell_projector(signs: f64) -> Operator {
        let space = TensorSpace::bipartite(2, 2).unwrap();
        let psi = Ket::from_terms(&space, &[(1.0, &[0, 0]), (signs, &[1, 1])])
            .unwrap()
            .normalized()
            .unwrap();
        let v = psi.amplitudes();
        let m = v * v.adjoint();
        Operator::hermitian(space, m).unwrap()
    }

    #[test]
    fn product_projector_is_ppt() {
        let space = TensorSpace::bipartite(2, 2).unwrap();
        let ket = Ket::basis_state(&space, &[0, 1]).unwrap();
        let v = ket.amplitudes();
        let op = Operator::hermitian(space, v * v.adjoint()).unwrap();
        let pt = op.partial_transpose(&Bipartition::bipartite()).unwrap();
        assert!(op.max_abs_diff(&pt) <= tol::REPR);
    }

    // Oracle: the partial transpose of |Φ+⟩⟨Φ+| is
    //   [[1/2,0,0,0],[0,0,1/2,0],[0,1/2,0,0],[0,0,0,1/2]]
    // whose middle 2x2 block [[0,1/2],[1/2,0]] has eigenvalues ±1/2, so
    // the minimum eigenvalue is exactly -1/2.
    #[test]
    fn bell_partial_transpose_min_eigenvalue() {
        let op = bell_projector(1.0);
        let pt = op.partial_transpose(&Bipartition::bipartite()).unwrap();
        let min = pt.min_eigenvalue().unwrap();
        assert!((min + 0.5).abs() < tol::SPECTRAL);
    }

    #[test]
    fn partial_transpose_is_an_involution() {
        let space = TensorSpace::bipartite(2, 3).unwrap();
        let mut rng = rng_from(derive_seed(11, 0));
        let d = space.total_dim();
        let a = DMatrix::from_fn(d, d, |_, _| {
            C64::new(rng.next_u64() as f64 / u64::MAX as f64 - 0.5, rng.next_u64() as f64 / u64::MAX as f64 - 0.5)
        });
        let herm = (&a + a.adjoint()).scale(0.5);
        let op = Operator::hermitian(space, herm).unwrap();
        let cut = Bipartition::bipartite();
        let back = op.partial_transpose(&cut).unwrap().partial_transpose(&cut).unwrap();
        assert_eq!(op.matrix(), back.matrix());
        // trace and hermiticity preserved
        assert!((op.trace() - back.trace()).norm() == 0.0);
    }

    #[test]
    fn identity_min_eigenvalue_is_one() {
        let space = TensorSpace::bipartite(2, 3).unwrap();
        let id = Operator::identity(space);
        assert!((id.min_eigenvalue().unwrap() - 1.0).abs() < tol::SPECTRAL);
    }

    #[test]
    fn low_rank_projector_has_zero_min_eigenvalue() {
        let op = bell_projector(-1.0);
        assert!(op.min_eigenvalue().unwrap().abs() < tol::SPECTRAL);
    }

    #[test]
    fn non_hermitian_input_is_rejected() {
        let space = TensorSpace::bipartite(2, 2).unwrap();
        let mut m = DMatrix::zeros(4, 4);
        m[(0, 1)] = C64::new(1.0, 0.0);
        assert!(matches!(
            Operator::hermitian(space.clone(), m.clone()),
            Err(Error::NotHermitian(_))
        ));
        let op = Operator::new(space, m).unwrap();
        assert!(op.partial_transpose(&Bipartition::bipartite()).is_err());
        assert!(op.min_eigenvalue().is_err());
    }

    #[test]
    fn top_eigenpair_matches_rayleigh_quotient() {
        let mut rng = rng_from(derive_seed(3, 1));
        let v = haar_vector(&mut rng, 4);
        let m = &v * v.adjoint();
        let (val, vec) = top_eigenpair(&m);
        assert!((val - 1.0).abs() < tol::SPECTRAL);
        let overlap: C64 = v.adjoint() * &vec;
        assert!((overlap.norm() - 1.0).abs() < tol::SPECTRAL);
    }
}
