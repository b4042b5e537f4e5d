//! Exact product-state certificate for two-dimensional subspaces whose
//! reshape along a cut has two rows.
//!
//! Spanning vectors reshape to 2×d matrices `M_1`, `M_2`. A state
//! `a|v_1⟩ + b|v_2⟩` is product across the cut exactly when
//! `a M_1 + b M_2` has rank one, i.e. when every 2×2 column minor
//! vanishes. Each minor is a homogeneous quadratic in `(a : b)`, so the
//! subspace contains a product state iff all `C(d,2)` quadratics share a
//! common projective root. The roots of the first non-degenerate quadratic
//! are the only candidates; they are solved in closed form and
//! back-substituted into the rest.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

/// Tolerance below which a quadratic coefficient is treated as zero.
pub const COEFF_TOL: f64 = 1e-10;
/// Largest back-substitution residual accepted for a certified product.
pub const RESIDUAL_TOL: f64 = 1e-9;

/// Homogeneous quadratic `α a² + β ab + γ b²`.
#[derive(Clone, Copy, Debug)]
struct Quadratic {
    alpha: C64,
    beta: C64,
    gamma: C64,
}

impl Quadratic {
    fn eval(&self, a: C64, b: C64) -> C64 {
        self.alpha * a * a + self.beta * a * b + self.gamma * b * b
    }

    fn max_coeff(&self) -> f64 {
        self.alpha.norm().max(self.beta.norm()).max(self.gamma.norm())
    }

    /// Projective roots, handling the degenerate leading-coefficient
    /// branch exactly: when `α = 0`, `(1 : 0)` is a root.
    fn roots(&self) -> Vec<(C64, C64)> {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        if self.alpha.norm() > COEFF_TOL {
            let disc = self.beta * self.beta - 4.0 * self.alpha * self.gamma;
            let sq = disc.sqrt();
            let two_alpha = 2.0 * self.alpha;
            vec![
                ((-self.beta + sq) / two_alpha, one),
                ((-self.beta - sq) / two_alpha, one),
            ]
        } else if self.beta.norm() > COEFF_TOL {
            // b (β a + γ b) = 0
            vec![(one, zero), (-self.gamma / self.beta, one)]
        } else {
            // γ b² = 0 (γ nonzero by the caller's degeneracy check)
            vec![(one, zero)]
        }
    }
}

/// How the pencil resolved.
#[derive(Clone, Debug)]
pub(crate) enum PencilOutcome {
    /// A common root exists; the rank-one element is `a M_1 + b M_2`.
    Product { a: C64, b: C64, residual: f64 },
    /// No common root: every element of the pencil has rank two.
    Entangled,
}

/// Decide whether the pencil `a M_1 + b M_2` of 2×d matrices contains a
/// rank-one element.
pub(crate) fn pencil_2xd(m1: &DMatrix<C64>, m2: &DMatrix<C64>) -> PencilOutcome {
    assert_eq!(m1.nrows(), 2, "pencil certificate needs 2-row reshapes");
    assert_eq!(m1.shape(), m2.shape());
    let d = m1.ncols();

    let mut quads = Vec::with_capacity(d * (d - 1) / 2);
    for k in 0..d {
        for l in (k + 1)..d {
            let alpha = m1[(0, k)] * m1[(1, l)] - m1[(1, k)] * m1[(0, l)];
            let gamma = m2[(0, k)] * m2[(1, l)] - m2[(1, k)] * m2[(0, l)];
            let beta = m1[(0, k)] * m2[(1, l)] + m2[(0, k)] * m1[(1, l)]
                - m1[(1, k)] * m2[(0, l)]
                - m2[(1, k)] * m1[(0, l)];
            quads.push(Quadratic { alpha, beta, gamma });
        }
    }

    let Some(pivot) = quads.iter().find(|q| q.max_coeff() > COEFF_TOL) else {
        // every minor vanishes identically: the whole pencil is rank one
        return PencilOutcome::Product { a: C64::new(1.0, 0.0), b: C64::new(0.0, 0.0), residual: 0.0 };
    };

    let mut best: Option<(C64, C64, f64)> = None;
    for (a, b) in pivot.roots() {
        let scale = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (a, b) = (a / scale, b / scale);
        let residual = quads
            .iter()
            .map(|q| q.eval(a, b).norm())
            .fold(0.0f64, f64::max);
        if best.as_ref().is_none_or(|(_, _, r)| residual < *r) {
            best = Some((a, b, residual));
        }
    }
    match best {
        Some((a, b, residual)) if residual <= RESIDUAL_TOL => {
            PencilOutcome::Product { a, b, residual }
        }
        _ => PencilOutcome::Entangled,
    }
}

/// Split a (numerically) rank-one matrix into its row and column factors
/// via the leading singular triple: `M ≈ σ u v`, returned as
/// `(σ¹ᐟ²u, σ¹ᐟ²v)` so the outer product reproduces `M`.
pub(crate) fn rank_one_factors(m: &DMatrix<C64>) -> (DVector<C64>, DVector<C64>) {
    let svd = m.clone().svd(true, true);
    let u = svd.u.expect("u requested");
    let vt = svd.v_t.expect("v_t requested");
    let sigma = svd.singular_values[0];
    let left = u.column(0).into_owned() * C64::new(sigma.sqrt(), 0.0);
    let right = vt.row(0).transpose() * C64::new(sigma.sqrt(), 0.0);
    (left, right)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn mat(rows: [&[f64]; 2]) -> DMatrix<C64> {
        let d = rows[0].len();
        DMatrix::from_fn(2, d, |i, j| c(rows[i][j]))
    }

    #[test]
    fn bell_pair_pencil_has_product_root() {
        // span{|00⟩+|11⟩, |00⟩-|11⟩} contains |00⟩ at a = b = 1/√2
        let m1 = mat([&[1.0, 0.0], &[0.0, 1.0]]);
        let m2 = mat([&[1.0, 0.0], &[0.0, -1.0]]);
        match pencil_2xd(&m1, &m2) {
            PencilOutcome::Product { a, b, residual } => {
                assert!(residual <= RESIDUAL_TOL);
                let m = m1.map(|x| x * a) + m2.map(|x| x * b);
                let sv = m.singular_values();
                assert!(sv[1] <= 1e-9, "rank-one check: σ₂ = {}", sv[1]);
            }
            other => panic!("expected a product root, got {other:?}"),
        }
    }

    #[test]
    fn eq3_style_pair_is_entangled() {
        // reshapes of |01⟩+|10⟩ and |00⟩+|12⟩ in 2⊗3
        let m1 = mat([&[0.0, 1.0, 0.0], &[1.0, 0.0, 0.0]]);
        let m2 = mat([&[1.0, 0.0, 0.0], &[0.0, 0.0, 1.0]]);
        assert!(matches!(pencil_2xd(&m1, &m2), PencilOutcome::Entangled));
    }

    #[test]
    fn all_zero_minors_mean_everything_is_product() {
        // both matrices share the single row direction e_0ᵀ
        let m1 = mat([&[1.0, 2.0], &[0.0, 0.0]]);
        let m2 = mat([&[3.0, -1.0], &[0.0, 0.0]]);
        assert!(matches!(
            pencil_2xd(&m1, &m2),
            PencilOutcome::Product { residual, .. } if residual == 0.0
        ));
    }

    #[test]
    fn degenerate_leading_coefficient_takes_the_b_zero_branch() {
        // M1 rank one, M2 rank two: root at (1 : 0)
        let m1 = mat([&[1.0, 0.0], &[0.0, 0.0]]);
        let m2 = mat([&[1.0, 0.0], &[0.0, 1.0]]);
        match pencil_2xd(&m1, &m2) {
            PencilOutcome::Product { a, b, .. } => {
                assert!(b.norm() < 1e-12);
                assert!(a.norm() > 0.9);
            }
            other => panic!("expected the (1:0) root, got {other:?}"),
        }
    }

    #[test]
    fn rank_one_factorization_reconstructs_the_matrix() {
        let u = DVector::from_vec(vec![c(1.0), c(-2.0)]);
        let v = DVector::from_vec(vec![c(0.5), c(1.5), c(-1.0)]);
        let m = &u * v.transpose();
        let (lu, rv) = rank_one_factors(&m);
        let back = &lu * rv.transpose();
        let dev = (&m - &back).iter().fold(0.0f64, |acc, z| acc.max(z.norm()));
        assert!(dev <= 1e-10, "reconstruction deviates by {dev:.3e}");
    }
}
