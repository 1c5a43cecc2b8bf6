//! Random states, measurements and unitaries for the fuzz suites.
//!
//! States come from normalized complex-Gaussian purifications, unitaries
//! from QR orthonormalization of Ginibre matrices with the usual phase
//! fix, POVMs from whitening a set of random positive operators.
//! Everything is driven by a caller-supplied RNG so runs are reproducible
//! from a single seed.

use alloc::vec::Vec;

use nalgebra::Complex;
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{CMatrix, CVector, DensityMatrix, Ensemble, Povm};

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex<f64> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(re, im)
}

fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| gaussian_complex(rng))
}

/// Haar-random pure state of the given dimension.
pub fn random_pure<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix {
    let mut v = CVector::from_fn(dim, |_, _| gaussian_complex(rng));
    let norm = v.norm();
    v /= Complex::new(norm, 0.0);
    DensityMatrix::from_valid(&v * v.adjoint())
}

/// Random mixed state from a rank-`rank` Gaussian purification,
/// `rho = G G^dag / tr(G G^dag)`.
pub fn random_density<R: Rng + ?Sized>(dim: usize, rank: usize, rng: &mut R) -> DensityMatrix {
    let rank = rank.clamp(1, dim.max(1));
    let g = ginibre(dim, rank, rng);
    let mut rho = &g * g.adjoint();
    let tr = rho.trace().re;
    rho /= Complex::new(tr, 0.0);
    // symmetrize away the last rounding bits
    let rho = (&rho + rho.adjoint()) * Complex::new(0.5, 0.0);
    DensityMatrix::from_valid(rho)
}

/// Haar-random unitary (QR of a Ginibre matrix, columns rephased by the
/// diagonal of `R`).
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let qr = ginibre(dim, dim, rng).qr();
    let r_diag: Vec<Complex<f64>> = (0..dim).map(|i| qr.r()[(i, i)]).collect();
    let mut q = qr.q();
    for (k, d) in r_diag.iter().enumerate() {
        let phase = if d.norm() == 0.0 {
            Complex::new(1.0, 0.0)
        } else {
            d / d.norm()
        };
        for i in 0..dim {
            q[(i, k)] *= phase;
        }
    }
    q
}

/// Random POVM with `n_outcomes` elements: whiten random positive
/// operators `A_i` by `M^{-1/2}` with `M = sum A_i`.
pub fn random_povm<R: Rng + ?Sized>(dim: usize, n_outcomes: usize, rng: &mut R) -> Povm {
    let n_outcomes = n_outcomes.max(1);
    let parts: Vec<CMatrix> = (0..n_outcomes)
        .map(|_| {
            let g = ginibre(dim, dim, rng);
            &g * g.adjoint()
        })
        .collect();
    let mut total = CMatrix::zeros(dim, dim);
    for p in &parts {
        total += p;
    }
    // M^{-1/2} through the eigendecomposition; M is PD almost surely
    let eig = ((&total + total.adjoint()) * Complex::new(0.5, 0.0)).symmetric_eigen();
    let mut w = CMatrix::zeros(dim, dim);
    for k in 0..dim {
        let col = eig.eigenvectors.column(k);
        let scale = Complex::new(1.0 / eig.eigenvalues[k].max(1e-300).sqrt(), 0.0);
        w += (col * col.adjoint()) * scale;
    }
    let elements: Vec<CMatrix> = parts
        .into_iter()
        .map(|a| {
            let f = &w * a * &w;
            (&f + f.adjoint()) * Complex::new(0.5, 0.0)
        })
        .collect();
    Povm::from_valid(elements)
}

/// Random prior from normalized exponential weights (flat Dirichlet).
pub fn random_prior<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    let mut weights: Vec<f64> = (0..n.max(1))
        .map(|_| {
            let u: f64 = rng.random();
            -(1.0 - u).ln()
        })
        .collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    // make the sum land exactly on 1 within the ensemble tolerance
    let sum_except_last: f64 = weights[..weights.len() - 1].iter().sum();
    let last = weights.len() - 1;
    weights[last] = 1.0 - sum_except_last;
    weights
}

/// Random ensemble of `n_letters` mixed states with a random prior.
pub fn random_ensemble<R: Rng + ?Sized>(dim: usize, n_letters: usize, rng: &mut R) -> Ensemble {
    let priors = random_prior(n_letters, rng);
    let letters = priors
        .into_iter()
        .map(|p| {
            let rank = rng.random_range(1..=dim);
            (p, random_density(dim, rank, rng))
        })
        .collect();
    Ensemble::new(letters).expect("sampled priors are normalized")
}
