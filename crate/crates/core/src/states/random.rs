use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use super::{DensityOperator, MultipartiteState};
use crate::error::{Error, Result};
use crate::tensor::{ComplexMatrix, DimList, DEFAULT_DIM_CAP};

/// The generator behind every sampled quantity: ChaCha20 keyed by a 64-bit seed.
pub fn rng_for(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state: i.i.d. standard complex Gaussians, normalized.
pub fn haar_random_pure(dims: &DimList, seed: u64) -> Result<MultipartiteState> {
    let total = dims.checked_total(DEFAULT_DIM_CAP)?;
    let mut rng = rng_for(seed);
    let amps = (0..total).map(|_| complex_gaussian(&mut rng)).collect();
    MultipartiteState::from_unnormalized(dims.clone(), amps)
}

/// Reduction of a Haar-random pure state on `dims ⊗ [rank]`.
pub fn random_mixed(dims: &DimList, rank: usize, seed: u64) -> Result<DensityOperator> {
    let total = dims.checked_total(DEFAULT_DIM_CAP)?;
    if rank == 0 || rank > total {
        return Err(Error::InvalidArgument(format!(
            "rank {rank} outside 1..={total}"
        )));
    }
    let extended = dims.concat(&DimList::new(vec![rank])?);
    let purified = haar_random_pure(&extended, seed)?;
    let keep: Vec<usize> = (0..dims.len()).collect();
    purified.reduced_operator(&keep)
}

/// Haar-distributed n×n unitary: QR of a complex Gaussian matrix with the
/// phases of R's diagonal absorbed into Q.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|_| (0..n).map(|_| complex_gaussian(rng)).collect())
        .collect();
    for k in 0..n {
        let (done, rest) = cols.split_at_mut(k);
        let col = &mut rest[0];
        for prev in done.iter() {
            let proj: Complex64 = prev.iter().zip(col.iter()).map(|(p, c)| p.conj() * c).sum();
            for (c, p) in col.iter_mut().zip(prev) {
                *c -= proj * p;
            }
        }
        let norm = cols[k].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols[k].iter_mut().for_each(|z| *z /= norm);
    }
    // Modified Gram-Schmidt keeps R's diagonal real-positive, matching the
    // Haar-invariant phase convention.
    let mut u = ComplexMatrix::zeros(n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            u[(i, j)] = z;
        }
    }
    u
}
