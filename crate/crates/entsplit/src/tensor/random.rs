//! Seeded randomness: Haar-distributed vectors and unitaries.
//!
//! Every randomized operation in the crate takes an explicit seed and is a
//! pure function of it. Independent random streams (restarts, samples) use
//! seeds derived from a master seed by a counter construction, so results
//! do not depend on execution order.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{Ket, Operator, ProductKet, TensorSpace};
use crate::error::Result;

/// Mix a master seed with a stream counter (splitmix64 finalizer).
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    let mut z = master ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A deterministic generator for a given seed.
pub fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_complex(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// A Haar-uniform unit vector on `C^dim`.
pub fn haar_vector(rng: &mut ChaCha8Rng, dim: usize) -> DVector<C64> {
    loop {
        let v = DVector::from_fn(dim, |_, _| gaussian_complex(rng));
        let n = v.norm();
        if n > 1e-6 {
            return v.map(|z| z / n);
        }
    }
}

/// A Haar-distributed unitary on `C^dim`: QR of a Ginibre matrix with the
/// R diagonal phases absorbed into Q.
pub fn haar_unitary(rng: &mut ChaCha8Rng, dim: usize) -> DMatrix<C64> {
    let g = DMatrix::from_fn(dim, dim, |_, _| gaussian_complex(rng));
    let qr = g.qr();
    let r = qr.r();
    let phases: Vec<C64> = (0..dim)
        .map(|i| {
            let z = r[(i, i)];
            if z.norm() < 1e-300 {
                C64::new(1.0, 0.0)
            } else {
                z / z.norm()
            }
        })
        .collect();
    let mut q = qr.q();
    for (j, phase) in phases.iter().enumerate() {
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// `U_1 ⊗ ... ⊗ U_m` with each factor Haar-distributed on its local
/// dimension. Deterministic given the seed.
pub fn random_local_unitary(space: &TensorSpace, seed: u64) -> Operator {
    let mut rng = rng_from(seed);
    let mut u = DMatrix::identity(1, 1);
    for &d in space.dims() {
        u = u.kronecker(&haar_unitary(&mut rng, d));
    }
    Operator::new(space.clone(), u).expect("kron of local unitaries has total dimension")
}

/// A product ket with independent Haar-uniform local factors.
pub fn random_product_ket(space: &TensorSpace, rng: &mut ChaCha8Rng) -> ProductKet {
    let factors = space.dims().iter().map(|&d| haar_vector(rng, d)).collect();
    ProductKet::per_party(space.clone(), factors).expect("factors match the space")
}

/// A Haar-uniform normalized state in the span of `basis` (assumed
/// orthonormal).
pub fn random_ket_in_span(basis: &[Ket], rng: &mut ChaCha8Rng) -> Result<Ket> {
    let space = basis[0].space().clone();
    let coeffs = haar_vector(rng, basis.len());
    let mut amplitudes = DVector::zeros(space.total_dim());
    for (b, &c) in basis.iter().zip(coeffs.iter()) {
        amplitudes += b.amplitudes() * c;
    }
    Ket::new(space, amplitudes)?.normalized()
}
