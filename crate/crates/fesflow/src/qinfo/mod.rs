//! Finite-dimensional quantum information layer.
//!
//! Density matrices, POVMs and letter ensembles over `nalgebra` complex
//! matrices, with the entropies, Holevo bounds, and the two-way
//! information quantities built on top. All Hilbert spaces here are
//! finite truncations; the wideband limit lives in [`crate::partitions`].
//!
//! Validation happens at construction: a [`DensityMatrix`] is Hermitian,
//! positive semidefinite and unit-trace to fixed tolerances, a [`Povm`]
//! resolves the identity, an [`Ensemble`] carries a normalized prior.
//! Eigenvalues inside `[-1e-10, 0]` are treated as numerical zeros.

mod fock;
mod info;
mod random;
mod twoway;

pub use fock::{fock_letter_ensemble, fock_letter_space, FOCK_LETTER_LIMIT};
pub use info::{
    holevo_chi, max_entropy_attainment, mutual_information, povm_channel, shannon_entropy,
    verify_holevo, von_neumann_entropy, HolevoCheck,
};
pub use random::{
    random_density, random_ensemble, random_povm, random_prior, random_pure, random_unitary,
};
pub use twoway::{
    bounce_scenario, generalized_holevo2_check, generalized_holevo_rhs, scattered_conditionals,
    scattering_preserves_products, two_way_info, two_way_info_interference, TwoWayCheck,
};

use alloc::vec::Vec;
use core::fmt;

use nalgebra::{Complex, DMatrix, DVector};

/// Complex dynamic matrix used throughout this layer.
pub type CMatrix = DMatrix<Complex<f64>>;
/// Complex dynamic vector.
pub type CVector = DVector<Complex<f64>>;

/// Hermiticity / completeness / unitarity tolerance (max entry deviation).
pub const OPERATOR_TOL: f64 = 1e-10;
/// Eigenvalues above this (negative) floor count as numerical zeros.
pub const PSD_TOL: f64 = -1e-10;
/// Ensemble priors must sum to 1 within this.
pub const PRIOR_TOL: f64 = 1e-12;
/// Generic probability distributions must sum to 1 within this.
pub const DIST_TOL: f64 = 1e-9;
/// Slack on the Holevo-type inequalities.
pub const HOLEVO_SLACK: f64 = 1e-9;

/// Errors from the quantum information layer.
#[derive(Clone, Debug, PartialEq)]
pub enum QinfoError {
    /// Matrix is not square.
    NotSquare {
        /// Rows found.
        rows: usize,
        /// Columns found.
        cols: usize,
    },
    /// Matrix deviates from its adjoint.
    NotHermitian {
        /// Largest entry deviation.
        deviation: f64,
    },
    /// An eigenvalue sits below the PSD floor.
    NotPositive {
        /// Smallest eigenvalue found.
        min_eigenvalue: f64,
    },
    /// Trace differs from one.
    TraceNotOne {
        /// Trace that was found.
        trace: f64,
    },
    /// POVM elements do not sum to the identity.
    PovmIncomplete {
        /// Largest entry deviation of the sum from identity.
        deviation: f64,
    },
    /// Scattering operator is not unitary.
    NotUnitary {
        /// Largest entry deviation of `S^dag S` from identity.
        deviation: f64,
    },
    /// A probability is negative or a distribution does not sum to one.
    InvalidDistribution {
        /// Sum that was found (or the offending negative entry).
        value: f64,
    },
    /// Operand dimensions do not match.
    DimensionMismatch {
        /// Expected dimension.
        expected: usize,
        /// Dimension found.
        found: usize,
    },
    /// Empty letter list, POVM, or basis.
    EmptyInput,
    /// State-space guard exceeded.
    ResourceLimit {
        /// Requested size.
        n: u64,
        /// The guard.
        limit: u64,
    },
    /// Multiplicity cap must be positive.
    InvalidMultiplicity,
}

impl fmt::Display for QinfoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QinfoError::NotSquare { rows, cols } => {
                write!(f, "matrix must be square, got {rows}x{cols}")
            }
            QinfoError::NotHermitian { deviation } => {
                write!(f, "matrix is not Hermitian (max deviation {deviation:.3e})")
            }
            QinfoError::NotPositive { min_eigenvalue } => {
                write!(
                    f,
                    "matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})"
                )
            }
            QinfoError::TraceNotOne { trace } => write!(f, "trace must be 1, got {trace}"),
            QinfoError::PovmIncomplete { deviation } => {
                write!(
                    f,
                    "POVM elements do not resolve the identity (max deviation {deviation:.3e})"
                )
            }
            QinfoError::NotUnitary { deviation } => {
                write!(
                    f,
                    "scattering operator is not unitary (max deviation {deviation:.3e})"
                )
            }
            QinfoError::InvalidDistribution { value } => {
                write!(
                    f,
                    "invalid probability distribution (offending value {value})"
                )
            }
            QinfoError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            QinfoError::EmptyInput => write!(f, "empty input"),
            QinfoError::ResourceLimit { n, limit } => {
                write!(f, "requested size {n} exceeds the guard {limit}")
            }
            QinfoError::InvalidMultiplicity => write!(f, "multiplicity cap must be positive"),
        }
    }
}

impl core::error::Error for QinfoError {}

/// Largest absolute entry of `m - m^dag`.
fn hermiticity_deviation(m: &CMatrix) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub(crate) fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    // symmetrize first so solver assumptions hold exactly
    let h = (m + m.adjoint()) * Complex::new(0.5, 0.0);
    let mut ev: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).expect("hermitian eigenvalues are finite"));
    ev
}

fn check_state_matrix(m: &CMatrix) -> Result<(), QinfoError> {
    if m.nrows() != m.ncols() {
        return Err(QinfoError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if m.nrows() == 0 {
        return Err(QinfoError::EmptyInput);
    }
    let dev = hermiticity_deviation(m);
    if dev > OPERATOR_TOL {
        return Err(QinfoError::NotHermitian { deviation: dev });
    }
    let trace = m.trace();
    if (trace.re - 1.0).abs() > OPERATOR_TOL || trace.im.abs() > OPERATOR_TOL {
        return Err(QinfoError::TraceNotOne { trace: trace.re });
    }
    let eigenvalues = hermitian_eigenvalues(m);
    if let Some(&min) = eigenvalues.first() {
        if min < PSD_TOL {
            return Err(QinfoError::NotPositive {
                min_eigenvalue: min,
            });
        }
    }
    Ok(())
}

/// A validated density matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, positivity and unit trace.
    pub fn new(matrix: CMatrix) -> Result<DensityMatrix, QinfoError> {
        check_state_matrix(&matrix)?;
        Ok(DensityMatrix { matrix })
    }

    /// Internal constructor for matrices valid by construction.
    pub(crate) fn from_valid(matrix: CMatrix) -> DensityMatrix {
        debug_assert!(check_state_matrix(&matrix).is_ok());
        DensityMatrix { matrix }
    }

    /// Pure state `|psi><psi|` from a state vector (normalized here).
    pub fn pure(state: &CVector) -> Result<DensityMatrix, QinfoError> {
        if state.is_empty() {
            return Err(QinfoError::EmptyInput);
        }
        let norm = state.norm();
        if norm == 0.0 {
            return Err(QinfoError::InvalidDistribution { value: 0.0 });
        }
        let normalized = state / Complex::new(norm, 0.0);
        Ok(DensityMatrix::from_valid(
            &normalized * normalized.adjoint(),
        ))
    }

    /// `I/d`.
    pub fn maximally_mixed(dim: usize) -> DensityMatrix {
        let p = 1.0 / dim as f64;
        DensityMatrix::from_valid(CMatrix::from_diagonal_element(
            dim,
            dim,
            Complex::new(p, 0.0),
        ))
    }

    /// Diagonal state from a probability vector.
    pub fn from_probabilities(probabilities: &[f64]) -> Result<DensityMatrix, QinfoError> {
        validate_distribution(probabilities)?;
        let diag = CVector::from_iterator(
            probabilities.len(),
            probabilities.iter().map(|&p| Complex::new(p, 0.0)),
        );
        DensityMatrix::new(CMatrix::from_diagonal(&diag))
    }

    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// The underlying matrix.
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Eigenvalues ascending, with numerical zeros clamped to 0.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix)
            .into_iter()
            .map(|l| if l < 0.0 { 0.0 } else { l })
            .collect()
    }
}

#[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN probabilities must fail
fn validate_distribution(p: &[f64]) -> Result<(), QinfoError> {
    if p.is_empty() {
        return Err(QinfoError::EmptyInput);
    }
    let mut sum = 0.0;
    for &x in p {
        if !(x >= 0.0) {
            return Err(QinfoError::InvalidDistribution { value: x });
        }
        sum += x;
    }
    if (sum - 1.0).abs() > DIST_TOL {
        return Err(QinfoError::InvalidDistribution { value: sum });
    }
    Ok(())
}

/// A positive operator-valued measure: Hermitian PSD elements summing to
/// the identity.
#[derive(Clone, Debug)]
pub struct Povm {
    elements: Vec<CMatrix>,
}

impl Povm {
    /// Validates each element and the completeness relation.
    pub fn new(elements: Vec<CMatrix>) -> Result<Povm, QinfoError> {
        let first = elements.first().ok_or(QinfoError::EmptyInput)?;
        let dim = first.nrows();
        let mut sum = CMatrix::zeros(dim, dim);
        for el in &elements {
            if el.nrows() != dim || el.ncols() != dim {
                return Err(QinfoError::DimensionMismatch {
                    expected: dim,
                    found: el.nrows(),
                });
            }
            let dev = hermiticity_deviation(el);
            if dev > OPERATOR_TOL {
                return Err(QinfoError::NotHermitian { deviation: dev });
            }
            let eigenvalues = hermitian_eigenvalues(el);
            if let Some(&min) = eigenvalues.first() {
                if min < PSD_TOL {
                    return Err(QinfoError::NotPositive {
                        min_eigenvalue: min,
                    });
                }
            }
            sum += el;
        }
        let mut dev: f64 = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                let expect = if i == j {
                    Complex::new(1.0, 0.0)
                } else {
                    Complex::new(0.0, 0.0)
                };
                dev = dev.max((sum[(i, j)] - expect).norm());
            }
        }
        if dev > OPERATOR_TOL {
            return Err(QinfoError::PovmIncomplete { deviation: dev });
        }
        Ok(Povm { elements })
    }

    pub(crate) fn from_valid(elements: Vec<CMatrix>) -> Povm {
        Povm { elements }
    }

    /// Projective measurement onto the columns of a unitary basis.
    pub fn projective(basis: &CMatrix) -> Result<Povm, QinfoError> {
        if basis.nrows() != basis.ncols() {
            return Err(QinfoError::NotSquare {
                rows: basis.nrows(),
                cols: basis.ncols(),
            });
        }
        let dev = unitarity_deviation(basis);
        if dev > OPERATOR_TOL {
            return Err(QinfoError::NotUnitary { deviation: dev });
        }
        let elements = (0..basis.ncols())
            .map(|k| {
                let col = basis.column(k);
                col * col.adjoint()
            })
            .collect();
        Ok(Povm::from_valid(elements))
    }

    /// Projectors onto the computational basis.
    pub fn computational(dim: usize) -> Povm {
        Povm::projective(&CMatrix::identity(dim, dim)).expect("identity basis is unitary")
    }

    /// The trivial one-outcome POVM `{I}`.
    pub fn trivial(dim: usize) -> Povm {
        Povm::from_valid(alloc::vec![CMatrix::identity(dim, dim)])
    }

    /// Number of outcomes.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// `true` when there are no outcomes (never, for a validated POVM).
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Hilbert-space dimension the elements act on.
    pub fn dim(&self) -> usize {
        self.elements[0].nrows()
    }

    /// The measurement operators.
    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }
}

/// Largest absolute entry of `m^dag m - I`.
pub(crate) fn unitarity_deviation(m: &CMatrix) -> f64 {
    let prod = m.adjoint() * m;
    let mut dev: f64 = 0.0;
    for i in 0..prod.nrows() {
        for j in 0..prod.ncols() {
            let expect = if i == j {
                Complex::new(1.0, 0.0)
            } else {
                Complex::new(0.0, 0.0)
            };
            dev = dev.max((prod[(i, j)] - expect).norm());
        }
    }
    dev
}

/// A letter ensemble: states with prior probabilities.
#[derive(Clone, Debug)]
pub struct Ensemble {
    letters: Vec<(f64, DensityMatrix)>,
}

impl Ensemble {
    /// Validates the prior (non-negative, sums to 1 within 1e-12) and the
    /// shared dimension.
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN probabilities must fail
    pub fn new(letters: Vec<(f64, DensityMatrix)>) -> Result<Ensemble, QinfoError> {
        let first = letters.first().ok_or(QinfoError::EmptyInput)?;
        let dim = first.1.dim();
        let mut sum = 0.0;
        for (p, state) in &letters {
            if !(*p >= 0.0) {
                return Err(QinfoError::InvalidDistribution { value: *p });
            }
            if state.dim() != dim {
                return Err(QinfoError::DimensionMismatch {
                    expected: dim,
                    found: state.dim(),
                });
            }
            sum += p;
        }
        if (sum - 1.0).abs() > PRIOR_TOL {
            return Err(QinfoError::InvalidDistribution { value: sum });
        }
        Ok(Ensemble { letters })
    }

    /// Deterministic single-letter ensemble (zero information content).
    pub fn deterministic(state: DensityMatrix) -> Ensemble {
        Ensemble {
            letters: alloc::vec![(1.0, state)],
        }
    }

    /// Uniform ensemble over the given states.
    pub fn uniform(states: Vec<DensityMatrix>) -> Result<Ensemble, QinfoError> {
        if states.is_empty() {
            return Err(QinfoError::EmptyInput);
        }
        let p = 1.0 / states.len() as f64;
        Ensemble::new(states.into_iter().map(|s| (p, s)).collect())
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// `true` when there are no letters (never, for a validated ensemble).
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Shared Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.letters[0].1.dim()
    }

    /// The letters.
    pub fn letters(&self) -> &[(f64, DensityMatrix)] {
        &self.letters
    }

    /// The prior as a vector.
    pub fn priors(&self) -> Vec<f64> {
        self.letters.iter().map(|(p, _)| *p).collect()
    }

    /// The average state `sum_a p(a) rho_a`.
    pub fn average(&self) -> DensityMatrix {
        let dim = self.dim();
        let mut avg = CMatrix::zeros(dim, dim);
        for (p, state) in &self.letters {
            avg += state.matrix() * Complex::new(*p, 0.0);
        }
        DensityMatrix::from_valid(avg)
    }
}

/// A shared channel with sender/receiver stations at both ends.
///
/// The left ensemble rides the right-moving states (first tensor factor),
/// the right ensemble the left-moving states (second factor). The right
/// detector acts on the first factor as `F tensor I`, the left detector
/// on the second as `I tensor F`, and a unitary scattering operator on
/// the product space implements interference between the flows.
#[derive(Clone, Debug)]
pub struct TwoWayChannel {
    left: Ensemble,
    right: Ensemble,
    scattering: CMatrix,
    right_detector: Povm,
    left_detector: Povm,
}

impl TwoWayChannel {
    /// Validates dimensions and the unitarity of the scattering operator.
    pub fn new(
        left: Ensemble,
        right: Ensemble,
        scattering: CMatrix,
        right_detector: Povm,
        left_detector: Povm,
    ) -> Result<TwoWayChannel, QinfoError> {
        let d = left.dim() * right.dim();
        if scattering.nrows() != d || scattering.ncols() != d {
            return Err(QinfoError::DimensionMismatch {
                expected: d,
                found: scattering.nrows(),
            });
        }
        let dev = unitarity_deviation(&scattering);
        if dev > OPERATOR_TOL {
            return Err(QinfoError::NotUnitary { deviation: dev });
        }
        if right_detector.dim() != left.dim() {
            return Err(QinfoError::DimensionMismatch {
                expected: left.dim(),
                found: right_detector.dim(),
            });
        }
        if left_detector.dim() != right.dim() {
            return Err(QinfoError::DimensionMismatch {
                expected: right.dim(),
                found: left_detector.dim(),
            });
        }
        Ok(TwoWayChannel {
            left,
            right,
            scattering,
            right_detector,
            left_detector,
        })
    }

    /// Left-station input ensemble (right-moving states).
    pub fn left_ensemble(&self) -> &Ensemble {
        &self.left
    }

    /// Right-station input ensemble (left-moving states).
    pub fn right_ensemble(&self) -> &Ensemble {
        &self.right
    }

    /// The scattering unitary on the product space.
    pub fn scattering(&self) -> &CMatrix {
        &self.scattering
    }

    /// Detector at the right end (acts on the first factor).
    pub fn right_detector(&self) -> &Povm {
        &self.right_detector
    }

    /// Detector at the left end (acts on the second factor).
    pub fn left_detector(&self) -> &Povm {
        &self.left_detector
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn density_matrix_validation() {
        // valid qubit state
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[c(0.75, 0.0), c(0.1, 0.2), c(0.1, -0.2), c(0.25, 0.0)],
        );
        assert!(DensityMatrix::new(m).is_ok());
        // non-hermitian
        let m =
            CMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.3, 0.0), c(0.1, 0.0), c(0.5, 0.0)]);
        assert!(matches!(
            DensityMatrix::new(m),
            Err(QinfoError::NotHermitian { .. })
        ));
        // wrong trace
        let m =
            CMatrix::from_row_slice(2, 2, &[c(0.9, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.3, 0.0)]);
        assert!(matches!(
            DensityMatrix::new(m),
            Err(QinfoError::TraceNotOne { .. })
        ));
        // not PSD: eigenvalues 1.2, -0.2
        let m =
            CMatrix::from_row_slice(2, 2, &[c(1.2, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.2, 0.0)]);
        assert!(matches!(
            DensityMatrix::new(m),
            Err(QinfoError::NotPositive { .. })
        ));
    }

    #[test]
    fn povm_validation() {
        assert_eq!(Povm::computational(3).len(), 3);
        assert_eq!(Povm::trivial(4).len(), 1);
        // incomplete set
        let p = Povm::new(alloc::vec![CMatrix::identity(2, 2) * c(0.5, 0.0)]);
        assert!(matches!(p, Err(QinfoError::PovmIncomplete { .. })));
    }

    #[test]
    fn ensemble_validation() {
        let half = DensityMatrix::maximally_mixed(2);
        assert!(Ensemble::new(alloc::vec![(0.5, half.clone()), (0.5, half.clone())]).is_ok());
        // prior off by more than 1e-12
        let bad = Ensemble::new(alloc::vec![(0.5, half.clone()), (0.500001, half.clone())]);
        assert!(matches!(bad, Err(QinfoError::InvalidDistribution { .. })));
        // mixed dimensions
        let bad = Ensemble::new(alloc::vec![
            (0.5, half),
            (0.5, DensityMatrix::maximally_mixed(3))
        ]);
        assert!(matches!(bad, Err(QinfoError::DimensionMismatch { .. })));
    }

    #[test]
    fn eigenvalues_are_clamped_and_sorted() {
        let rho = DensityMatrix::from_probabilities(&[0.25, 0.75]).unwrap();
        let ev = rho.eigenvalues();
        assert!(ev[0] <= ev[1]);
        assert!((ev[0] - 0.25).abs() < 1e-12 && (ev[1] - 0.75).abs() < 1e-12);
    }

    #[test]
    fn two_way_channel_checks_unitarity() {
        let left = Ensemble::deterministic(DensityMatrix::maximally_mixed(2));
        let right = Ensemble::deterministic(DensityMatrix::maximally_mixed(2));
        let bad = CMatrix::identity(4, 4) * c(0.7, 0.0);
        let ch = TwoWayChannel::new(left, right, bad, Povm::trivial(2), Povm::trivial(2));
        assert!(matches!(ch, Err(QinfoError::NotUnitary { .. })));
    }
}
