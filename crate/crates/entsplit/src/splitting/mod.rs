//! The splitting data model: orthonormal subspaces, direct-sum
//! decompositions of a composite space, verification, fixtures, generators,
//! feasibility bounds, and party regrouping.

mod feasibility;
mod fixtures;
mod generate;

pub use feasibility::{feasibility, FeasibilityReport};
pub use fixtures::{fixture, fixture_ids, FixtureId};
pub use generate::{generate_bell_pairing, search_splitting, SplitSearchOutcome};

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::search::{
    detect_biseparable, detect_product, BiseparabilityReport, DetectMode, ProductVerdict,
    SearchConfig,
};
use crate::tensor::{tol, Ket, Operator, TensorSpace};

/// Tolerance for declaring raw spanning vectors linearly dependent.
pub const RANK_TOL: f64 = 1e-10;

/// An orthonormalized span inside a [`TensorSpace`]; the unit of
/// "entangled subspace".
#[derive(Clone, Debug)]
pub struct Subspace {
    space: TensorSpace,
    basis: Vec<Ket>,
}

impl Subspace {
    /// Orthonormalize raw spanning vectors (Gram–Schmidt with a
    /// re-orthogonalization pass). The span is preserved; linearly
    /// dependent inputs are rejected.
    pub fn from_raw(space: &TensorSpace, raw: &[Ket]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::Contract("empty spanning set".into()));
        }
        let mut basis: Vec<Ket> = Vec::with_capacity(raw.len());
        for (i, v) in raw.iter().enumerate() {
            if v.space() != space {
                return Err(Error::Dimension(format!(
                    "spanning vector {i} lives on a different space"
                )));
            }
            let norm = v.norm();
            if norm <= RANK_TOL {
                return Err(Error::RankDeficient(format!("spanning vector {i} is zero")));
            }
            let mut w = v.amplitudes().map(|a| a / norm);
            for _ in 0..2 {
                for b in &basis {
                    let overlap: C64 = b
                        .amplitudes()
                        .iter()
                        .zip(w.iter())
                        .map(|(x, y)| x.conj() * y)
                        .sum();
                    w -= b.amplitudes() * overlap;
                }
            }
            let n = w.norm();
            if n <= RANK_TOL {
                return Err(Error::RankDeficient(format!(
                    "spanning vector {i} is linearly dependent on the previous ones"
                )));
            }
            basis.push(Ket::new(space.clone(), w.map(|a| a / n))?);
        }
        Ok(Self { space: space.clone(), basis })
    }

    /// Wrap an already-orthonormal basis, verifying the Gram matrix.
    pub fn from_orthonormal(space: &TensorSpace, basis: Vec<Ket>) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::Contract("empty basis".into()));
        }
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let g = a.inner(b);
                let expect = if i == j { 1.0 } else { 0.0 };
                if (g - C64::new(expect, 0.0)).norm() > tol::SPECTRAL {
                    return Err(Error::Contract(format!(
                        "basis is not orthonormal: |G[{i},{j}] - {expect}| = {:.3e}",
                        (g - C64::new(expect, 0.0)).norm()
                    )));
                }
            }
        }
        Ok(Self { space: space.clone(), basis })
    }

    pub fn space(&self) -> &TensorSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Ket] {
        &self.basis
    }

    /// The projector `Π = Σ |b⟩⟨b|` onto the subspace.
    pub fn projector(&self) -> Operator {
        let d = self.space.total_dim();
        let mut m = DMatrix::zeros(d, d);
        for b in &self.basis {
            let v = b.amplitudes();
            m += v * v.adjoint();
        }
        // symmetrize away round-off so the hermitian contract holds exactly
        let m = (&m + m.adjoint()).scale(0.5);
        Operator::hermitian(self.space.clone(), m).expect("projector is hermitian")
    }

    /// `⟨ψ|Π|ψ⟩` for a normalized state, computed from the basis directly.
    pub fn overlap_of(&self, ket: &Ket) -> f64 {
        self.basis.iter().map(|b| b.inner(ket).norm_sqr()).sum()
    }

    /// Project a state onto the subspace (no normalization).
    pub fn project(&self, ket: &Ket) -> Ket {
        let mut amplitudes = nalgebra::DVector::zeros(self.space.total_dim());
        for b in &self.basis {
            amplitudes += b.amplitudes() * b.inner(ket);
        }
        Ket::new(self.space.clone(), amplitudes).expect("projection stays in the space")
    }
}

/// Orthonormal basis of the orthocomplement of the joint span of `kets`.
///
/// Deterministic: seeds Gram–Schmidt with the computational basis in order.
pub fn orthocomplement(space: &TensorSpace, kets: &[Ket]) -> Result<Vec<Ket>> {
    let d = space.total_dim();
    let mut span: Vec<Ket> = Vec::new();
    for k in kets {
        if k.space() != space {
            return Err(Error::Dimension("ket on a different space".into()));
        }
        span.push(k.clone());
    }
    let mut complement: Vec<Ket> = Vec::new();
    for idx in 0..d {
        let e = Ket::basis_state(space, &space.labels_of(idx))?;
        let mut w = e.amplitudes().clone();
        for _ in 0..2 {
            for b in span.iter().chain(complement.iter()) {
                let overlap: C64 = b
                    .amplitudes()
                    .iter()
                    .zip(w.iter())
                    .map(|(x, y)| x.conj() * y)
                    .sum();
                w -= b.amplitudes() * overlap;
            }
        }
        let n = w.norm();
        if n > 1e-8 {
            complement.push(Ket::new(space.clone(), w.map(|a| a / n))?);
        }
    }
    Ok(complement)
}

/// An ordered list of mutually orthogonal subspaces meant to cover the
/// whole space. Construction is permissive; [`Splitting::verify`] checks
/// the actual invariants and reports violations.
#[derive(Clone, Debug)]
pub struct Splitting {
    space: TensorSpace,
    subspaces: Vec<Subspace>,
}

impl Splitting {
    pub fn new(space: TensorSpace, subspaces: Vec<Subspace>) -> Result<Self> {
        if subspaces.is_empty() {
            return Err(Error::Contract("a splitting needs at least one subspace".into()));
        }
        if let Some(s) = subspaces.iter().find(|s| s.space() != &space) {
            return Err(Error::Dimension(format!(
                "subspace of dimension {} lives on a different space",
                s.dim()
            )));
        }
        Ok(Self { space, subspaces })
    }

    pub fn space(&self) -> &TensorSpace {
        &self.space
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    /// Rank profile in subspace order.
    pub fn profile(&self) -> Vec<usize> {
        self.subspaces.iter().map(Subspace::dim).collect()
    }

    /// Check orthogonality, completeness, and the minimum-rank condition.
    pub fn verify(&self) -> SplittingReport {
        let n = self.subspaces.len();
        let projectors: Vec<Operator> = self.subspaces.iter().map(Subspace::projector).collect();

        let mut max_orth = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                let prod = projectors[i].matrix() * projectors[j].matrix();
                let dev = prod.iter().fold(0.0f64, |acc, z| acc.max(z.norm()));
                max_orth = max_orth.max(dev);
            }
        }

        let d = self.space.total_dim();
        let mut sum = DMatrix::<C64>::zeros(d, d);
        for p in &projectors {
            sum += p.matrix();
        }
        sum -= DMatrix::<C64>::identity(d, d);
        let max_complete = sum.iter().fold(0.0f64, |acc, z| acc.max(z.norm()));

        let mut profile = self.profile();
        profile.sort_unstable_by(|a, b| b.cmp(a));

        SplittingReport {
            orthogonal: max_orth <= tol::SUBSPACE,
            complete: max_complete <= tol::SUBSPACE,
            min_rank_ok: self.subspaces.iter().all(|s| s.dim() >= 2),
            profile,
            max_orthogonality_violation: max_orth,
            max_completeness_violation: max_complete,
        }
    }

    /// Reinterpret the party structure, keeping flat amplitudes fixed.
    ///
    /// The new dimensions must multiply to the same total dimension; the
    /// relabeling is the row-major one (a 4-level party split into two
    /// qubits maps `|0⟩,|1⟩,|2⟩,|3⟩` to `|00⟩,|01⟩,|10⟩,|11⟩`). All inner
    /// products are preserved exactly.
    pub fn regroup_parties(&self, new_dims: &[usize]) -> Result<Splitting> {
        let new_space = TensorSpace::new(new_dims.to_vec())?;
        if new_space.total_dim() != self.space.total_dim() {
            return Err(Error::Contract(format!(
                "regrouped total dimension {} differs from {}",
                new_space.total_dim(),
                self.space.total_dim()
            )));
        }
        let subspaces = self
            .subspaces
            .iter()
            .map(|s| {
                let basis = s
                    .basis()
                    .iter()
                    .map(|k| Ket::new(new_space.clone(), k.amplitudes().clone()))
                    .collect::<Result<Vec<_>>>()?;
                Subspace::from_orthonormal(&new_space, basis)
            })
            .collect::<Result<Vec<_>>>()?;
        Splitting::new(new_space, subspaces)
    }
}

/// Outcome of [`Splitting::verify`].
#[derive(Clone, Debug, PartialEq)]
pub struct SplittingReport {
    pub orthogonal: bool,
    pub complete: bool,
    pub min_rank_ok: bool,
    /// Rank profile sorted descending.
    pub profile: Vec<usize>,
    pub max_orthogonality_violation: f64,
    pub max_completeness_violation: f64,
}

impl SplittingReport {
    pub fn valid(&self) -> bool {
        self.orthogonal && self.complete && self.min_rank_ok
    }
}

/// Which notion of "entangled" a splitting is verified against.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum EntangledMode {
    /// Bipartite entangled subspaces (two parties).
    Bipartite,
    /// No completely product state in any subspace (three or more parties).
    CompletelyEntangled,
    /// No biseparable state in any subspace (three or more parties).
    GenuinelyEntangled,
}

/// Per-subspace result of an entangled-splitting verification.
#[derive(Clone, Debug)]
pub enum SubspaceEntanglement {
    /// Bipartite or completely-entangled mode: one product verdict.
    Single(ProductVerdict),
    /// Genuine mode: a verdict per bipartition.
    PerCut(BiseparabilityReport),
}

impl SubspaceEntanglement {
    pub fn entangled(&self) -> bool {
        match self {
            Self::Single(v) => v.entangled(),
            Self::PerCut(r) => r.genuinely_entangled,
        }
    }

    pub fn product_found(&self) -> bool {
        match self {
            Self::Single(v) => v.product_found(),
            Self::PerCut(r) => r.per_cut.iter().any(|(_, v)| v.product_found()),
        }
    }
}

/// Outcome of [`verify_entangled_splitting`].
#[derive(Clone, Debug)]
pub struct EntangledSplittingReport {
    pub structure: SplittingReport,
    pub per_subspace: Vec<SubspaceEntanglement>,
    /// True iff the structure is valid and every subspace is entangled in
    /// the requested sense.
    pub all_entangled: bool,
}

/// Verify a splitting and test every subspace for product states in the
/// requested sense.
pub fn verify_entangled_splitting(
    sp: &Splitting,
    cfg: &SearchConfig,
    mode: EntangledMode,
) -> Result<EntangledSplittingReport> {
    let m = sp.space().parties();
    match mode {
        EntangledMode::Bipartite if m != 2 => {
            return Err(Error::Contract(format!(
                "bipartite mode on a {m}-party space"
            )));
        }
        EntangledMode::CompletelyEntangled | EntangledMode::GenuinelyEntangled if m < 3 => {
            return Err(Error::Contract(
                "completely/genuinely entangled modes need at least 3 parties".into(),
            ));
        }
        _ => {}
    }
    let structure = sp.verify();
    let mut per_subspace = Vec::with_capacity(sp.len());
    for (i, s) in sp.subspaces().iter().enumerate() {
        let cfg_i = cfg.with_seed(crate::tensor::derive_seed(cfg.seed, i as u64));
        let entry = match mode {
            EntangledMode::Bipartite | EntangledMode::CompletelyEntangled => {
                SubspaceEntanglement::Single(detect_product(s, &DetectMode::AllParties, &cfg_i)?)
            }
            EntangledMode::GenuinelyEntangled => {
                SubspaceEntanglement::PerCut(detect_biseparable(s, &cfg_i)?)
            }
        };
        per_subspace.push(entry);
    }
    let all_entangled = structure.valid() && per_subspace.iter().all(|e| e.entangled());
    Ok(EntangledSplittingReport { structure, per_subspace, all_entangled })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space23() -> TensorSpace {
        TensorSpace::bipartite(2, 3).unwrap()
    }

    #[test]
    fn orthonormalize_paper_style_pair() {
        let space = space23();
        let raw = vec![
            Ket::from_terms(&space, &[(1.0, &[0, 1]), (1.0, &[1, 0])]).unwrap(),
            Ket::from_terms(&space, &[(1.0, &[0, 0]), (1.0, &[1, 2])]).unwrap(),
        ];
        let s = Subspace::from_raw(&space, &raw).unwrap();
        assert_eq!(s.dim(), 2);
        let p = s.projector();
        assert!((p.trace().re - 2.0).abs() < tol::SUBSPACE);
        // projector idempotence
        let p2 = p.matrix() * p.matrix();
        let dev = (&p2 - p.matrix()).iter().fold(0.0f64, |acc, z| acc.max(z.norm()));
        assert!(dev <= tol::SUBSPACE);
    }

    #[test]
    fn duplicate_vectors_are_rank_deficient() {
        let space = space23();
        let v = Ket::basis_state(&space, &[0, 0]).unwrap();
        let err = Subspace::from_raw(&space, &[v.clone(), v]).unwrap_err();
        assert!(matches!(err, Error::RankDeficient(_)));
    }

    #[test]
    fn scaling_is_removed() {
        let space = space23();
        let v = Ket::from_terms(&space, &[(2.0, &[0, 0])]).unwrap();
        let s = Subspace::from_raw(&space, &[v]).unwrap();
        assert_eq!(s.dim(), 1);
        assert!((s.basis()[0].norm() - 1.0).abs() < tol::REPR);
    }

    #[test]
    fn span_is_preserved_by_orthonormalization() {
        let space = space23();
        let raw = vec![
            Ket::from_terms(&space, &[(1.0, &[0, 1]), (1.0, &[1, 0]), (0.5, &[0, 0])]).unwrap(),
            Ket::from_terms(&space, &[(1.0, &[0, 0]), (1.0, &[1, 2])]).unwrap(),
        ];
        let s = Subspace::from_raw(&space, &raw).unwrap();
        for v in &raw {
            let vn = v.normalized().unwrap();
            assert!((s.overlap_of(&vn) - 1.0).abs() < tol::SUBSPACE);
        }
    }

    #[test]
    fn overlapping_supports_fail_verification() {
        let space = TensorSpace::bipartite(2, 2).unwrap();
        let s1 = Subspace::from_raw(
            &space,
            &[
                Ket::basis_state(&space, &[0, 0]).unwrap(),
                Ket::basis_state(&space, &[0, 1]).unwrap(),
            ],
        )
        .unwrap();
        let s2 = Subspace::from_raw(
            &space,
            &[
                Ket::basis_state(&space, &[0, 0]).unwrap(),
                Ket::basis_state(&space, &[1, 0]).unwrap(),
            ],
        )
        .unwrap();
        let report = Splitting::new(space, vec![s1, s2]).unwrap().verify();
        assert!(!report.orthogonal);
        assert!(!report.valid());
    }

    #[test]
    fn orthocomplement_has_matching_dimension() {
        let space = space23();
        let s = Subspace::from_raw(
            &space,
            &[
                Ket::from_terms(&space, &[(1.0, &[0, 1]), (1.0, &[1, 0])]).unwrap(),
                Ket::from_terms(&space, &[(1.0, &[0, 0]), (1.0, &[1, 2])]).unwrap(),
            ],
        )
        .unwrap();
        let comp = orthocomplement(&space, s.basis()).unwrap();
        assert_eq!(comp.len(), 4);
        for c in &comp {
            assert!(s.overlap_of(c) < 1e-16);
        }
    }

    #[test]
    fn regroup_preserves_inner_products() {
        let space = TensorSpace::bipartite(2, 4).unwrap();
        let raw = vec![
            Ket::from_terms(&space, &[(1.0, &[0, 0]), (1.0, &[1, 2])]).unwrap(),
            Ket::from_terms(&space, &[(1.0, &[0, 1]), (1.0, &[1, 3])]).unwrap(),
        ];
        let s = Subspace::from_raw(&space, &raw).unwrap();
        let rest = orthocomplement(&space, s.basis()).unwrap();
        let s2 = Subspace::from_orthonormal(&space, rest).unwrap();
        let sp = Splitting::new(space, vec![s, s2]).unwrap();
        let re = sp.regroup_parties(&[2, 2, 2]).unwrap();
        assert_eq!(re.space().dims(), &[2, 2, 2]);
        for (a, b) in sp.subspaces().iter().zip(re.subspaces()) {
            for (ka, kb) in a.basis().iter().zip(b.basis()) {
                assert_eq!(ka.amplitudes(), kb.amplitudes());
            }
        }
        // identity regrouping is a no-op
        let same = sp.regroup_parties(&[2, 4]).unwrap();
        assert_eq!(same.subspaces()[0].basis()[0].amplitudes(), sp.subspaces()[0].basis()[0].amplitudes());
    }

    #[test]
    fn regroup_rejects_dimension_mismatch() {
        let space = TensorSpace::bipartite(2, 4).unwrap();
        let s = Subspace::from_raw(
            &space,
            &[Ket::from_terms(&space, &[(1.0, &[0, 0]), (1.0, &[1, 2])]).unwrap()],
        )
        .unwrap();
        let sp = Splitting::new(space, vec![s]).unwrap();
        assert!(sp.regroup_parties(&[3, 3]).is_err());
    }
}
