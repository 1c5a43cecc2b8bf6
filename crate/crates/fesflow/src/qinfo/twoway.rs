//! Two-way information flow on a shared channel.
//!
//! Both channel ends host a sender/receiver pair. The net information
//! delivered to the right output is the mutual information earned from
//! the left input minus the information the right station itself put on
//! the channel; with interference, the first term generalizes to the
//! joint conditional built from a scattering unitary. Either form is
//! bounded by the Holevo quantity of the left ensemble alone.

use alloc::vec::Vec;

use nalgebra::{Complex, DMatrix};
#[allow(unused_imports)]
use num_traits::Float;

use super::info::{holevo_chi, mutual_information, povm_channel, shannon_entropy};
use super::{
    CMatrix, CVector, DensityMatrix, Ensemble, Povm, QinfoError, TwoWayChannel, HOLEVO_SLACK,
};

/// Net information (bits) delivered to the right output without
/// interference: `H(B_R; A_L) - H(A_R)`. Signed by construction; a right
/// station chattering more than the left channel carries makes it
/// negative.
pub fn two_way_info(
    left: &Ensemble,
    right: &Ensemble,
    right_detector: &Povm,
) -> Result<f64, QinfoError> {
    let conditional = povm_channel(left, right_detector)?;
    let forward = mutual_information(&conditional, &left.priors())?;
    let back = shannon_entropy(&right.priors())?;
    Ok(forward - back)
}

/// Right-hand side of the generalized Holevo inequality for the
/// no-interference two-way information:
/// `S(avg_L) - S(avg_R) - sum p S(rho_aL) + sum p S(rho_aR)`, i.e. the
/// difference of the two Holevo quantities.
pub fn generalized_holevo_rhs(left: &Ensemble, right: &Ensemble) -> f64 {
    holevo_chi(left) - holevo_chi(right)
}

/// Joint conditionals of a scattering channel.
///
/// Rows are flattened input pairs `(a_L, a_R)` with index
/// `a_L * |A_R| + a_R`; the first matrix holds
/// `p(b_R | a_L, a_R) = tr[(F_{b_R} x I) S (rho_aL x rho_aR) S^dag]`,
/// the second the mirrored left-output probabilities.
pub fn scattered_conditionals(
    ch: &TwoWayChannel,
) -> Result<(DMatrix<f64>, DMatrix<f64>), QinfoError> {
    let d_r = ch.right_ensemble().dim();
    let n_left = ch.left_ensemble().len();
    let n_right = ch.right_ensemble().len();

    let right_ops: Vec<CMatrix> = ch
        .right_detector()
        .elements()
        .iter()
        .map(|f| f.kronecker(&CMatrix::identity(d_r, d_r)))
        .collect();
    let d_l = ch.left_ensemble().dim();
    let left_ops: Vec<CMatrix> = ch
        .left_detector()
        .elements()
        .iter()
        .map(|f| CMatrix::identity(d_l, d_l).kronecker(f))
        .collect();

    let mut right_cond = DMatrix::zeros(n_left * n_right, right_ops.len());
    let mut left_cond = DMatrix::zeros(n_left * n_right, left_ops.len());
    let s = ch.scattering();
    for (al, (_, rho_l)) in ch.left_ensemble().letters().iter().enumerate() {
        for (ar, (_, rho_r)) in ch.right_ensemble().letters().iter().enumerate() {
            let joint = rho_l.matrix().kronecker(rho_r.matrix());
            let scattered = s * joint * s.adjoint();
            let row = al * n_right + ar;
            for (b, op) in right_ops.iter().enumerate() {
                right_cond[(row, b)] = (op * &scattered).trace().re.max(0.0);
            }
            for (b, op) in left_ops.iter().enumerate() {
                left_cond[(row, b)] = (op * &scattered).trace().re.max(0.0);
            }
        }
    }
    Ok((right_cond, left_cond))
}

/// Net information to the right output allowing interference: the joint
/// mutual-information term over `(A_L, A_R)` minus `H(A_R)`. Reduces to
/// [`two_way_info`] when the scattering operator is the identity.
pub fn two_way_info_interference(ch: &TwoWayChannel) -> Result<f64, QinfoError> {
    let (right_cond, _) = scattered_conditionals(ch)?;
    let left_priors = ch.left_ensemble().priors();
    let right_priors = ch.right_ensemble().priors();
    let mut joint_prior = Vec::with_capacity(left_priors.len() * right_priors.len());
    for &pl in &left_priors {
        for &pr in &right_priors {
            joint_prior.push(pl * pr);
        }
    }
    let forward = mutual_information(&right_cond, &joint_prior)?;
    let back = shannon_entropy(&right_priors)?;
    Ok(forward - back)
}

/// Outcome of a generalized Holevo check on a scattering channel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoWayCheck {
    /// Two-way information with interference.
    pub info: f64,
    /// Holevo quantity of the left ensemble.
    pub rhs: f64,
    /// `info <= rhs` up to slack.
    pub holds: bool,
}

/// Checks `two_way_info_interference <= holevo_chi(left)` on a channel.
pub fn generalized_holevo2_check(ch: &TwoWayChannel) -> Result<TwoWayCheck, QinfoError> {
    let info = two_way_info_interference(ch)?;
    let rhs = holevo_chi(ch.left_ensemble());
    Ok(TwoWayCheck {
        info,
        rhs,
        holds: info <= rhs + HOLEVO_SLACK,
    })
}

/// The bounced-message channel: orthonormal right letters, mirrored left
/// letters, a right detector reading the mirrored basis, and a swap
/// scattering operator that reverses propagation. Its two-way information
/// is zero for every prior; a returned message carries nothing.
pub fn bounce_scenario(n: usize, right_prior: &[f64]) -> Result<TwoWayChannel, QinfoError> {
    if n < 2 {
        return Err(QinfoError::DimensionMismatch {
            expected: 2,
            found: n,
        });
    }
    if right_prior.len() != n {
        return Err(QinfoError::DimensionMismatch {
            expected: n,
            found: right_prior.len(),
        });
    }
    let basis_states: Vec<DensityMatrix> = (0..n)
        .map(|k| {
            let mut v = CVector::zeros(n);
            v[k] = Complex::new(1.0, 0.0);
            DensityMatrix::from_valid(&v * v.adjoint())
        })
        .collect();

    let left = Ensemble::uniform(basis_states.clone())?;
    let right = Ensemble::new(right_prior.iter().copied().zip(basis_states).collect())?;

    // S |i>|j> = |j>|i>
    let mut swap = CMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            swap[(j * n + i, i * n + j)] = Complex::new(1.0, 0.0);
        }
    }

    TwoWayChannel::new(
        left,
        right,
        swap,
        Povm::computational(n),
        Povm::computational(n),
    )
}

/// Advisory check that the scattering operator keeps every letter pair a
/// product state across the two factors, via purities: a bipartite state
/// is product exactly when `tr(sigma^2) = tr(sigma_L^2) tr(sigma_R^2)`
/// with `sigma_L`, `sigma_R` its partial traces. The interference
/// formulas stay well-defined either way; correlating operators are
/// simply outside the regime the two-way capacity argument assumes.
pub fn scattering_preserves_products(ch: &TwoWayChannel) -> Result<bool, QinfoError> {
    let d_l = ch.left_ensemble().dim();
    let d_r = ch.right_ensemble().dim();
    let s = ch.scattering();
    for (_, rho_l) in ch.left_ensemble().letters() {
        for (_, rho_r) in ch.right_ensemble().letters() {
            let joint = rho_l.matrix().kronecker(rho_r.matrix());
            let scattered = s * joint * s.adjoint();
            let left = partial_trace_right(&scattered, d_l, d_r);
            let right = partial_trace_left(&scattered, d_l, d_r);
            let whole_purity = (&scattered * &scattered).trace().re;
            let split_purity = (&left * &left).trace().re * (&right * &right).trace().re;
            if (whole_purity - split_purity).abs() > 1e-9 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn partial_trace_right(m: &CMatrix, d_l: usize, d_r: usize) -> CMatrix {
    let mut out = CMatrix::zeros(d_l, d_l);
    for i in 0..d_l {
        for j in 0..d_l {
            let mut sum = Complex::new(0.0, 0.0);
            for k in 0..d_r {
                sum += m[(i * d_r + k, j * d_r + k)];
            }
            out[(i, j)] = sum;
        }
    }
    out
}

fn partial_trace_left(m: &CMatrix, d_l: usize, d_r: usize) -> CMatrix {
    let mut out = CMatrix::zeros(d_r, d_r);
    for k in 0..d_r {
        for l in 0..d_r {
            let mut sum = Complex::new(0.0, 0.0);
            for i in 0..d_l {
                sum += m[(i * d_r + k, i * d_r + l)];
            }
            out[(k, l)] = sum;
        }
    }
    out
}
