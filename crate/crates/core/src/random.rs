//! Seeded random states and operators for property sweeps.
//!
//! Pure states come from normalized standard complex Gaussian vectors; mixed
//! states are marginals of random pure states on a doubled space.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::channels::IsometricExtension;
use crate::qlinalg::{ComplexMatrix, DensityOperator, PureStateVector};

pub type SweepRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SweepRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed for trial `index` derived from a master seed (SplitMix64 step).
pub fn trial_seed(master: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index.wrapping_mul(0xBF58_476D_1CE4_E5B9));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_amplitudes<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..n).map(|_| gaussian_complex(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R, dims: &[usize], labels: &[&str]) -> PureStateVector {
    let n = dims.iter().product();
    PureStateVector::normalized(random_amplitudes(rng, n), dims, labels).expect("random pure state")
}

/// Mixed state on `dims` obtained by tracing out an ancilla of the same total dimension.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, dims: &[usize], labels: &[&str]) -> DensityOperator {
    let n: usize = dims.iter().product();
    let mut all_dims = dims.to_vec();
    all_dims.push(n);
    let mut all_labels = labels.to_vec();
    all_labels.push("__ancilla");
    random_pure_state(rng, &all_dims, &all_labels)
        .reduced(labels)
        .expect("labels are present")
}

pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(n, n, |_, _| gaussian_complex(rng));
    (&g + &g.adjoint()).scale(0.5)
}

/// Haar-like unitary from Gram-Schmidt on a Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<Complex64> = (0..n).map(|_| gaussian_complex(rng)).collect();
        for u in &cols {
            let overlap: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= overlap * ui;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// Isometry `in_dim -> out_dim ⊗ env_dim` made of the first columns of a random unitary.
pub fn random_isometry<R: Rng + ?Sized>(
    rng: &mut R,
    in_dim: usize,
    out_dim: usize,
    env_dim: usize,
) -> IsometricExtension {
    assert!(
        out_dim * env_dim >= in_dim,
        "isometry needs out_dim * env_dim >= in_dim"
    );
    let u = random_unitary(rng, out_dim * env_dim);
    let v = ComplexMatrix::from_fn(out_dim * env_dim, in_dim, |i, j| u[(i, j)]);
    IsometricExtension::new(v, out_dim, env_dim).expect("columns of a unitary")
}

/// Random PSD matrix `G G†`.
pub fn random_psd<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(n, n, |_, _| gaussian_complex(rng));
    (&g * &g.adjoint()).hermitize()
}

/// Random operator with `0 <= X <= I`: a unitary conjugate of a diagonal with entries in [0, 1].
pub fn random_effect<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let u = random_unitary(rng, n);
    let diag: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
    (&(&u * &ComplexMatrix::from_real_diag(&diag)) * &u.adjoint()).hermitize()
}

/// Random probability vector of length `n` with strictly positive entries.
pub fn random_distribution<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..n).map(|_| rng.random::<f64>() + 1e-3).collect();
    let s: f64 = w.iter().sum();
    w.into_iter().map(|x| x / s).collect()
}
