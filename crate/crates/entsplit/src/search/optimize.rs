//! Alternating bilinear maximization of `⟨φ|Π_S|φ⟩` over product states.
//!
//! With all factors but one held fixed, the objective is a quadratic form
//! in the free factor, so the optimal update is the top eigenvector of a
//! small hermitian matrix. Each substep therefore cannot decrease the
//! objective, and the sequence of values converges to a local maximum;
//! restarts from Haar-random factors probe different basins. The returned
//! value is always a lower bound on the true maximum.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use super::SearchConfig;
use crate::error::{Error, Result};
use crate::splitting::Subspace;
use crate::tensor::top_eigenpair;
use crate::tensor::{derive_seed, haar_vector, rng_from, Bipartition, ProductKet};

/// The factor structure the optimizer works over: one factor per party,
/// or one per side of a bipartition.
#[derive(Clone, Debug)]
pub(crate) struct FactorProblem {
    /// Basis amplitudes of the subspace, one vector per basis ket.
    basis: Vec<DVector<C64>>,
    /// Dimension of each factor.
    group_dims: Vec<usize>,
    /// For every flat index, the sub-index within each factor group.
    group_index: Vec<Vec<usize>>,
    /// Set when the two factor groups are the sides of a bipartition.
    cut: Option<Bipartition>,
}

impl FactorProblem {
    /// One factor per party.
    pub fn per_party(s: &Subspace) -> Self {
        let space = s.space().clone();
        let dims = space.dims().to_vec();
        let group_index = (0..space.total_dim())
            .map(|flat| space.labels_of(flat))
            .collect();
        Self {
            basis: s.basis().iter().map(|k| k.amplitudes().clone()).collect(),
            group_dims: dims,
            group_index,
            cut: None,
        }
    }

    /// Two factors, one per side of the cut.
    pub fn across_cut(s: &Subspace, cut: &Bipartition) -> Result<Self> {
        let space = s.space().clone();
        cut.validate_for(&space)?;
        let shape = cut.shape(&space);
        let group_index = (0..space.total_dim())
            .map(|flat| {
                let (r, c) = shape.split(flat, &space);
                vec![r, c]
            })
            .collect();
        Ok(Self {
            basis: s.basis().iter().map(|k| k.amplitudes().clone()).collect(),
            group_dims: vec![shape.left_dim, shape.right_dim],
            group_index,
            cut: Some(cut.clone()),
        })
    }

    pub fn groups(&self) -> usize {
        self.group_dims.len()
    }

    /// `Σ_k |⟨φ|b_k⟩|²` for `φ = ⊗ factors`, evaluated from scratch.
    pub fn overlap(&self, factors: &[DVector<C64>]) -> f64 {
        self.basis
            .iter()
            .map(|b| {
                let ip: C64 = b
                    .iter()
                    .enumerate()
                    .map(|(flat, &amp)| {
                        let gi = &self.group_index[flat];
                        let phi: C64 = factors
                            .iter()
                            .zip(gi)
                            .map(|(f, &x)| f[x])
                            .product();
                        phi.conj() * amp
                    })
                    .sum();
                ip.norm_sqr()
            })
            .sum()
    }

    /// Contract the subspace basis against all factors except group `g`,
    /// yielding the hermitian update matrix `A = Σ_k v_k v_k†`.
    fn update_matrix(&self, factors: &[DVector<C64>], g: usize) -> DMatrix<C64> {
        let dg = self.group_dims[g];
        let mut a = DMatrix::zeros(dg, dg);
        for b in &self.basis {
            let mut v = DVector::<C64>::zeros(dg);
            for (flat, &amp) in b.iter().enumerate() {
                let gi = &self.group_index[flat];
                let mut coeff = C64::new(1.0, 0.0);
                for (h, f) in factors.iter().enumerate() {
                    if h != g {
                        coeff *= f[gi[h]].conj();
                    }
                }
                v[gi[g]] += amp * coeff;
            }
            a += &v * v.adjoint();
        }
        a
    }

    /// One restart from Haar-random factors. Returns the best objective
    /// value reached and the factors achieving it; optionally records the
    /// value after every substep.
    pub fn run_restart(
        &self,
        seed: u64,
        cfg: &SearchConfig,
        mut trace: Option<&mut Vec<f64>>,
    ) -> (f64, Vec<DVector<C64>>) {
        let mut rng = rng_from(seed);
        let mut factors: Vec<DVector<C64>> = self
            .group_dims
            .iter()
            .map(|&d| haar_vector(&mut rng, d))
            .collect();
        let mut value = self.overlap(&factors);
        let groups = self.groups();
        for _ in 0..cfg.max_iters {
            let cycle_start = value;
            for g in 0..groups {
                let a = self.update_matrix(&factors, g);
                let (lambda, vec) = top_eigenpair(&a);
                // an eigenstep maximizes the quadratic form, so the value
                // cannot drop below the previous substep (up to round-off)
                debug_assert!(
                    lambda >= value - 1e-12,
                    "alternating step decreased the overlap: {value} -> {lambda}"
                );
                factors[g] = vec;
                value = lambda.max(value);
                if let Some(t) = trace.as_deref_mut() {
                    t.push(lambda);
                }
            }
            if value - cycle_start < cfg.stall_tol {
                break;
            }
        }
        (value, factors)
    }
}

/// Best found value of `⟨φ|Π_S|φ⟩` over product states of the given
/// structure, with the maximizing candidate. Restart `k` runs from a seed
/// derived from `(cfg.seed, k)`, so results are independent of execution
/// order; restarts stop early once a value within `product_tol` of 1 is
/// reached, since the verdict can no longer change.
pub(crate) fn maximize(
    s: &Subspace,
    problem: &FactorProblem,
    cfg: &SearchConfig,
) -> Result<(f64, ProductKet)> {
    if s.dim() == 0 {
        return Err(Error::Contract("empty subspace".into()));
    }
    cfg.validate()?;
    let mut best_value = f64::NEG_INFINITY;
    let mut best_factors: Option<Vec<DVector<C64>>> = None;
    for k in 0..cfg.restarts {
        let seed = derive_seed(cfg.seed, k as u64);
        let (value, factors) = problem.run_restart(seed, cfg, None);
        if value > best_value {
            best_value = value;
            best_factors = Some(factors);
        }
        if 1.0 - best_value <= cfg.product_tol {
            break;
        }
    }
    let factors = best_factors.expect("at least one restart ran");
    let witness = match &problem.cut {
        None => ProductKet::per_party(s.space().clone(), factors)?,
        Some(cut) => {
            let mut it = factors.into_iter();
            let left = it.next().expect("two factors");
            let right = it.next().expect("two factors");
            ProductKet::across_cut(s.space().clone(), cut.clone(), left, right)?
        }
    };
    Ok((best_value.min(1.0).max(0.0), witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{Ket, TensorSpace};

    fn subspace(space: &TensorSpace, terms: &[&[(f64, &[usize])]]) -> Subspace {
        let raw: Vec<Ket> = terms
            .iter()
            .map(|t| Ket::from_terms(space, t).unwrap())
            .collect();
        Subspace::from_raw(space, &raw).unwrap()
    }

    #[test]
    fn product_basis_subspace_reaches_overlap_one() {
        let space = TensorSpace::bipartite(2, 3).unwrap();
        let s = subspace(&space, &[&[(1.0, &[0, 0])], &[(1.0, &[0, 1])]]);
        let problem = FactorProblem::per_party(&s);
        let cfg = SearchConfig::default();
        let (value, witness) = maximize(&s, &problem, &cfg).unwrap();
        assert!(1.0 - value <= cfg.product_tol, "value = {value}");
        let ket = witness.normalized().unwrap().assemble();
        assert!(s.overlap_of(&ket) >= 1.0 - 1e-9);
    }

    // Oracle for the Bell-state subspace: the best product overlap with
    // span{(|00⟩+|11⟩)/√2} equals the squared largest Schmidt coefficient,
    // 1/2. A brute-force grid over Bloch angles pins the same value below.
    #[test]
    fn bell_subspace_overlap_is_half() {
        let space = TensorSpace::bipartite(2, 2).unwrap();
        let s = subspace(&space, &[&[(1.0, &[0, 0]), (1.0, &[1, 1])]]);
        let problem = FactorProblem::per_party(&s);
        let cfg = SearchConfig::default();
        let (value, _) = maximize(&s, &problem, &cfg).unwrap();
        assert!((value - 0.5).abs() < 1e-9, "value = {value}");

        // grid oracle: |⟨αβ|Φ+⟩|² = |α_0 β_0 + α_1 β_1|² / 2
        let steps = 24;
        let mut grid_best = 0.0f64;
        for ta in 0..=steps {
            let theta_a = std::f64::consts::PI * ta as f64 / steps as f64;
            for tb in 0..=steps {
                let theta_b = std::f64::consts::PI * tb as f64 / steps as f64;
                for pa in 0..steps {
                    let phi_a = 2.0 * std::f64::consts::PI * pa as f64 / steps as f64;
                    for pb in 0..steps {
                        let phi_b = 2.0 * std::f64::consts::PI * pb as f64 / steps as f64;
                        let a = [
                            C64::new((theta_a / 2.0).cos(), 0.0),
                            C64::from_polar((theta_a / 2.0).sin(), phi_a),
                        ];
                        let b = [
                            C64::new((theta_b / 2.0).cos(), 0.0),
                            C64::from_polar((theta_b / 2.0).sin(), phi_b),
                        ];
                        let ip = a[0] * b[0] + a[1] * b[1];
                        grid_best = grid_best.max(ip.norm_sqr() / 2.0);
                    }
                }
            }
        }
        assert!(grid_best <= 0.5 + 1e-12);
        assert!((grid_best - 0.5).abs() < 1e-2, "grid resolution check");
        assert!(value >= grid_best - 1e-9);
    }

    #[test]
    fn overlap_sequence_is_monotone_within_a_restart() {
        let space = TensorSpace::bipartite(2, 3).unwrap();
        let s = subspace(
            &space,
            &[
                &[(1.0, &[0, 1]), (1.0, &[1, 0])],
                &[(1.0, &[0, 0]), (1.0, &[1, 2])],
            ],
        );
        let problem = FactorProblem::per_party(&s);
        let cfg = SearchConfig::default();
        for k in 0..8 {
            let mut trace = Vec::new();
            problem.run_restart(derive_seed(cfg.seed, k), &cfg, Some(&mut trace));
            for w in trace.windows(2) {
                assert!(w[1] >= w[0] - 1e-12, "non-monotone: {} -> {}", w[0], w[1]);
            }
        }
    }

    #[test]
    fn ghz_across_one_vs_two_cut_reaches_half() {
        let space = TensorSpace::new(vec![2, 2, 2]).unwrap();
        let s = subspace(&space, &[&[(1.0, &[0, 0, 0]), (1.0, &[1, 1, 1])]]);
        let cut = Bipartition::new(3, [0]).unwrap();
        let problem = FactorProblem::across_cut(&s, &cut).unwrap();
        let (value, witness) = maximize(&s, &problem, &SearchConfig::default()).unwrap();
        assert!((value - 0.5).abs() < 1e-9, "value = {value}");
        match witness {
            ProductKet::AcrossCut { cut: c, .. } => assert_eq!(c, cut),
            _ => panic!("expected an across-cut witness"),
        }
    }
}
