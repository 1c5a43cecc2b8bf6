//! Entropies, mutual information, channels from measurements, and the
//! Holevo bound with its attainment construction.

use alloc::vec::Vec;

use nalgebra::{Complex, DMatrix};
#[allow(unused_imports)]
use num_traits::Float;

use super::{
    validate_distribution, DensityMatrix, Ensemble, Povm, QinfoError, DIST_TOL, HOLEVO_SLACK,
};

fn xlog2x(p: f64) -> f64 {
    if p > 0.0 {
        p * p.log2()
    } else {
        0.0
    }
}

/// Shannon entropy `-sum p log2 p` in bits, with `0 log 0 = 0`.
pub fn shannon_entropy(p: &[f64]) -> Result<f64, QinfoError> {
    validate_distribution(p)?;
    Ok(-p.iter().map(|&x| xlog2x(x)).sum::<f64>())
}

/// Mutual information in bits of a discrete channel given row-stochastic
/// conditionals `p(b|a)` (rows indexed by `a`) and an input prior.
#[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN probabilities must fail
pub fn mutual_information(conditional: &DMatrix<f64>, prior: &[f64]) -> Result<f64, QinfoError> {
    validate_distribution(prior)?;
    if conditional.nrows() != prior.len() {
        return Err(QinfoError::DimensionMismatch {
            expected: prior.len(),
            found: conditional.nrows(),
        });
    }
    for a in 0..conditional.nrows() {
        let mut sum = 0.0;
        for b in 0..conditional.ncols() {
            let p = conditional[(a, b)];
            if !(p >= -DIST_TOL) {
                return Err(QinfoError::InvalidDistribution { value: p });
            }
            sum += p;
        }
        if (sum - 1.0).abs() > DIST_TOL {
            return Err(QinfoError::InvalidDistribution { value: sum });
        }
    }

    let n_b = conditional.ncols();
    let mut output = alloc::vec![0.0f64; n_b];
    for (a, &pa) in prior.iter().enumerate() {
        for (b, out) in output.iter_mut().enumerate() {
            *out += pa * conditional[(a, b)].max(0.0);
        }
    }

    let mut info = 0.0;
    for (a, &pa) in prior.iter().enumerate() {
        if pa == 0.0 {
            continue;
        }
        for b in 0..n_b {
            let p_ba = conditional[(a, b)].max(0.0);
            if p_ba > 0.0 && output[b] > 0.0 {
                info += p_ba * pa * (p_ba / output[b]).log2();
            }
        }
    }
    // tiny negatives are quadrature of the discrete world: rounding
    Ok(info.max(0.0))
}

/// Von Neumann entropy `-tr(rho log2 rho)` in bits; zero eigenvalues
/// contribute nothing.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    -rho.eigenvalues().iter().map(|&l| xlog2x(l)).sum::<f64>()
}

/// Holevo quantity `chi = S(avg) - sum_a p(a) S(rho_a)`; non-negative.
pub fn holevo_chi(ensemble: &Ensemble) -> f64 {
    let avg = von_neumann_entropy(&ensemble.average());
    let conditional: f64 = ensemble
        .letters()
        .iter()
        .map(|(p, rho)| p * von_neumann_entropy(rho))
        .sum();
    (avg - conditional).max(0.0)
}

/// Conditional probabilities `p(b|a) = tr(rho_a F_b)` as a row-stochastic
/// matrix (rows = letters, columns = outcomes).
pub fn povm_channel(ensemble: &Ensemble, povm: &Povm) -> Result<DMatrix<f64>, QinfoError> {
    if ensemble.dim() != povm.dim() {
        return Err(QinfoError::DimensionMismatch {
            expected: ensemble.dim(),
            found: povm.dim(),
        });
    }
    let mut rows = DMatrix::zeros(ensemble.len(), povm.len());
    for (a, (_, rho)) in ensemble.letters().iter().enumerate() {
        for (b, f) in povm.elements().iter().enumerate() {
            let p = (rho.matrix() * f).trace().re;
            rows[(a, b)] = p.max(0.0);
        }
    }
    Ok(rows)
}

/// Outcome of a Holevo-bound check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HolevoCheck {
    /// Accessible information of the given measurement.
    pub mutual_info: f64,
    /// The Holevo quantity of the ensemble.
    pub chi: f64,
    /// `mutual_info <= chi` up to slack.
    pub holds: bool,
}

/// Checks the Holevo bound for one (ensemble, measurement) pair.
pub fn verify_holevo(ensemble: &Ensemble, povm: &Povm) -> Result<HolevoCheck, QinfoError> {
    let conditional = povm_channel(ensemble, povm)?;
    let mutual_info = mutual_information(&conditional, &ensemble.priors())?;
    let chi = holevo_chi(ensemble);
    Ok(HolevoCheck {
        mutual_info,
        chi,
        holds: mutual_info <= chi + HOLEVO_SLACK,
    })
}

/// The construction attaining `S(rho)`: encode in the eigenbasis of
/// `rho` with the eigenvalues as prior, measure projectively in the same
/// basis. `verify_holevo` on the output reaches `mutual_info = S(rho)`.
///
/// Letters with numerically zero weight are dropped from the ensemble
/// (a pure state yields a single-letter alphabet); the measurement keeps
/// all projectors so it stays complete.
pub fn max_entropy_attainment(rho: &DensityMatrix) -> (Ensemble, Povm) {
    let h = (rho.matrix() + rho.matrix().adjoint()) * Complex::new(0.5, 0.0);
    let eig = h.symmetric_eigen();

    let mut letters: Vec<(f64, DensityMatrix)> = Vec::new();
    let mut total = 0.0;
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        let p = lambda.max(0.0);
        if p > 1e-14 {
            let col = eig.eigenvectors.column(k);
            letters.push((p, DensityMatrix::from_valid(col * col.adjoint())));
            total += p;
        }
    }
    // eigenvalue sum equals the trace only to rounding; land the prior
    // inside the ensemble tolerance
    for (p, _) in &mut letters {
        *p /= total;
    }
    let ensemble = Ensemble::new(letters).expect("eigendecomposition yields a valid ensemble");
    let povm = Povm::projective(&eig.eigenvectors).expect("eigenbasis is unitary");
    (ensemble, povm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qinfo::CVector;
    use approx::assert_relative_eq;
    use nalgebra::Complex;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn basis_state(dim: usize, k: usize) -> DensityMatrix {
        let mut v = CVector::zeros(dim);
        v[k] = c(1.0, 0.0);
        DensityMatrix::pure(&v).unwrap()
    }

    #[test]
    fn shannon_entropy_anchors() {
        assert_relative_eq!(
            shannon_entropy(&[0.25; 4]).unwrap(),
            2.0,
            max_relative = 1e-14
        );
        assert_eq!(shannon_entropy(&[1.0, 0.0, 0.0]).unwrap(), 0.0);
        // binary entropy at 1/4
        assert_relative_eq!(
            shannon_entropy(&[0.25, 0.75]).unwrap(),
            0.811278124459,
            max_relative = 1e-11
        );
        assert!(shannon_entropy(&[0.5, 0.6]).is_err());
        assert!(shannon_entropy(&[-0.1, 1.1]).is_err());
    }

    #[test]
    fn mutual_information_anchors() {
        // noiseless 4-ary channel
        let ident = DMatrix::<f64>::identity(4, 4);
        assert_relative_eq!(
            mutual_information(&ident, &[0.25; 4]).unwrap(),
            2.0,
            max_relative = 1e-12
        );
        // output independent of input
        let constant = DMatrix::from_row_slice(2, 2, &[0.3, 0.7, 0.3, 0.7]);
        assert_eq!(mutual_information(&constant, &[0.5, 0.5]).unwrap(), 0.0);
        // binary symmetric channel with flip 0.11: 1 - H2(0.11)
        let bsc = DMatrix::from_row_slice(2, 2, &[0.89, 0.11, 0.11, 0.89]);
        assert_relative_eq!(
            mutual_information(&bsc, &[0.5, 0.5]).unwrap(),
            0.500084041835,
            max_relative = 1e-10
        );
        // invalid rows and priors are rejected
        let bad_rows = DMatrix::from_row_slice(2, 2, &[0.6, 0.6, 0.5, 0.5]);
        assert!(matches!(
            mutual_information(&bad_rows, &[0.5, 0.5]),
            Err(QinfoError::InvalidDistribution { .. })
        ));
        let negative = DMatrix::from_row_slice(1, 2, &[1.2, -0.2]);
        assert!(mutual_information(&negative, &[1.0]).is_err());
        assert!(matches!(
            mutual_information(&bsc, &[1.0]),
            Err(QinfoError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn von_neumann_entropy_anchors() {
        assert_relative_eq!(
            von_neumann_entropy(&DensityMatrix::maximally_mixed(2)),
            1.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            von_neumann_entropy(&DensityMatrix::from_probabilities(&[0.75, 0.25]).unwrap()),
            0.811278124459,
            max_relative = 1e-10
        );
        let pure = basis_state(5, 2);
        assert_eq!(von_neumann_entropy(&pure), 0.0);
    }

    #[test]
    fn holevo_chi_anchors() {
        // orthogonal pure states, uniform prior: classical limit log2 n
        let e = Ensemble::uniform((0..4).map(|k| basis_state(4, k)).collect()).unwrap();
        assert_relative_eq!(holevo_chi(&e), 2.0, max_relative = 1e-12);
        // identical states carry nothing
        let rho = DensityMatrix::maximally_mixed(3);
        let e = Ensemble::uniform(alloc::vec![rho.clone(), rho]).unwrap();
        assert_relative_eq!(holevo_chi(&e), 0.0, epsilon = 1e-12);
        // two pure states with |<a|b>|^2 = 1/2: mixture eigenvalues (1 +- 1/sqrt2)/2
        let zero = basis_state(2, 0);
        let mut v = CVector::zeros(2);
        v[0] = c(core::f64::consts::FRAC_1_SQRT_2, 0.0);
        v[1] = c(core::f64::consts::FRAC_1_SQRT_2, 0.0);
        let plus = DensityMatrix::pure(&v).unwrap();
        let e = Ensemble::new(alloc::vec![(0.5, zero), (0.5, plus)]).unwrap();
        assert_relative_eq!(holevo_chi(&e), 0.600876036693, max_relative = 1e-10);
    }

    #[test]
    fn povm_channel_anchors() {
        // diagonal ensemble measured in its own basis: rows read the diagonals
        let e = Ensemble::new(alloc::vec![
            (0.5, DensityMatrix::from_probabilities(&[0.2, 0.8]).unwrap()),
            (0.5, DensityMatrix::from_probabilities(&[0.9, 0.1]).unwrap()),
        ])
        .unwrap();
        let rows = povm_channel(&e, &Povm::computational(2)).unwrap();
        assert_relative_eq!(rows[(0, 0)], 0.2, max_relative = 1e-12);
        assert_relative_eq!(rows[(1, 1)], 0.1, max_relative = 1e-12);
        // trivial POVM: every row is (1.0)
        let rows = povm_channel(&e, &Povm::trivial(2)).unwrap();
        assert_eq!(rows.ncols(), 1);
        assert_relative_eq!(rows[(0, 0)], 1.0, max_relative = 1e-12);
        assert_relative_eq!(rows[(1, 0)], 1.0, max_relative = 1e-12);
        // |0>, |+> under computational projectors: rows (1,0) and (.5,.5)
        let zero = basis_state(2, 0);
        let mut v = CVector::zeros(2);
        v[0] = c(core::f64::consts::FRAC_1_SQRT_2, 0.0);
        v[1] = c(core::f64::consts::FRAC_1_SQRT_2, 0.0);
        let plus = DensityMatrix::pure(&v).unwrap();
        let e = Ensemble::new(alloc::vec![(0.5, zero), (0.5, plus)]).unwrap();
        let rows = povm_channel(&e, &Povm::computational(2)).unwrap();
        assert_relative_eq!(rows[(0, 0)], 1.0, max_relative = 1e-12);
        assert_relative_eq!(rows[(1, 0)], 0.5, max_relative = 1e-12);
        assert_relative_eq!(rows[(1, 1)], 0.5, max_relative = 1e-12);
    }

    #[test]
    fn holevo_equality_for_orthogonal_letters() {
        let e = Ensemble::uniform((0..3).map(|k| basis_state(3, k)).collect()).unwrap();
        let check = verify_holevo(&e, &Povm::computational(3)).unwrap();
        assert!(check.holds);
        assert_relative_eq!(check.mutual_info, check.chi, max_relative = 1e-12);
        assert_relative_eq!(check.chi, 3.0f64.log2(), max_relative = 1e-12);
    }

    #[test]
    fn attainment_reaches_the_entropy() {
        // maximally mixed: 2 bits
        let rho = DensityMatrix::maximally_mixed(4);
        let (e, m) = max_entropy_attainment(&rho);
        let check = verify_holevo(&e, &m).unwrap();
        assert_relative_eq!(check.mutual_info, 2.0, epsilon = 1e-10);
        // diag(3/4, 1/4)
        let rho = DensityMatrix::from_probabilities(&[0.75, 0.25]).unwrap();
        let (e, m) = max_entropy_attainment(&rho);
        let check = verify_holevo(&e, &m).unwrap();
        assert_relative_eq!(check.mutual_info, 0.811278124459, epsilon = 1e-10);
        // pure state: single letter, zero information
        let rho = basis_state(3, 1);
        let (e, m) = max_entropy_attainment(&rho);
        assert_eq!(e.len(), 1);
        let check = verify_holevo(&e, &m).unwrap();
        assert_relative_eq!(check.mutual_info, 0.0, epsilon = 1e-12);
    }
}
