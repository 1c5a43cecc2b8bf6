//! Fock letter spaces: occupation patterns of fixed total mode-index sum.
//!
//! On a wideband channel of transmission time `T`, mode `j` carries
//! energy `h j / T`, so a Fock state of total energy `N h / T` is a
//! partition of `N` into mode indices; the multiplicity cap is the
//! exclusion rule. Each pattern labels one orthonormal letter, and the
//! uniform ensemble over them attains `S_max = log2(count)`.

use alloc::vec::Vec;

use nalgebra::Complex;

use crate::partitions::{enumerate_partitions, Multiplicity, PartitionError};

use super::{CVector, DensityMatrix, Ensemble, QinfoError};

/// State-space guard for letter enumeration.
pub const FOCK_LETTER_LIMIT: u32 = 40;

/// All occupation patterns with mode indices summing to `n`, each as the
/// list of occupied mode indices in descending order (a part repeated
/// `k` times means occupation `k`). The list length equals the exact
/// partition count under the same cap.
pub fn fock_letter_space(
    n: u32,
    max_multiplicity: Multiplicity,
) -> Result<Vec<Vec<u32>>, QinfoError> {
    if n > FOCK_LETTER_LIMIT {
        return Err(QinfoError::ResourceLimit {
            n: n as u64,
            limit: FOCK_LETTER_LIMIT as u64,
        });
    }
    enumerate_partitions(n, max_multiplicity).map_err(|e| match e {
        PartitionError::ZeroMultiplicity => QinfoError::InvalidMultiplicity,
        PartitionError::TooLarge { n, limit } => QinfoError::ResourceLimit { n, limit },
        PartitionError::AsymptoticsOutOfRange => QinfoError::EmptyInput,
    })
}

/// The equal-energy uniform ensemble over the letter space of `n`: one
/// orthonormal basis letter per occupation pattern. Its Holevo quantity
/// is `log2(count)`, the maximum entropy at that energy.
///
/// The Hilbert dimension equals the partition count, so keep `n` small
/// (it grows sub-exponentially but fast).
pub fn fock_letter_ensemble(
    n: u32,
    max_multiplicity: Multiplicity,
) -> Result<Ensemble, QinfoError> {
    let patterns = fock_letter_space(n, max_multiplicity)?;
    let dim = patterns.len();
    if dim == 0 {
        return Err(QinfoError::EmptyInput);
    }
    let letters = (0..dim)
        .map(|k| {
            let mut v = CVector::zeros(dim);
            v[k] = Complex::new(1.0, 0.0);
            DensityMatrix::from_valid(&v * v.adjoint())
        })
        .collect();
    Ensemble::uniform(letters)
}
