//! Occupation function and entropy density for fractional exclusion
//! statistics.
//!
//! The auxiliary function `w(x)` solves `w^g (1+w)^(1-g) = e^x`; the mean
//! occupation of a mode at reduced energy `x = (E - mu)/T` is
//! `f_g(x) = 1/(w(x) + g)`. Bosons (`g = 0`), fermions (`g = 1`) and
//! semions (`g = 1/2`) have closed forms; other rational `g` go through a
//! safeguarded Newton iteration on `u = ln w`, where the defining
//! equation `g u + (1-g) ln(1+e^u) = x` is monotone so a bracket is easy
//! to maintain.

use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

use crate::stat::StatParam;

/// Relative residual target for the `w` solver.
pub const SOLVER_TOL: f64 = 1e-14;

const MAX_ITER: usize = 200;

/// Above this `x` the occupation is evaluated from its Boltzmann tail
/// instead of exponentiating (e^x would overflow near 709).
const TAIL_X: f64 = 700.0;

/// Errors from the occupation-function layer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExclusionError {
    /// Bose statistics with `x <= 0`: `w = e^x - 1` would be non-positive,
    /// which corresponds to the unphysical `mu >= E`.
    BoseDomain {
        /// Offending reduced energy.
        x: f64,
    },
    /// The bracketed iteration exceeded its iteration cap.
    NoConvergence {
        /// Reduced energy at which the solve was attempted.
        x: f64,
        /// Residual of the best iterate.
        residual: f64,
    },
}

impl fmt::Display for ExclusionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExclusionError::BoseDomain { x } => {
                write!(f, "bosonic occupation undefined for x = {x} <= 0")
            }
            ExclusionError::NoConvergence { x, residual } => {
                write!(
                    f,
                    "w(x) iteration did not converge at x = {x} (residual {residual:.3e})"
                )
            }
        }
    }
}

impl core::error::Error for ExclusionError {}

/// `ln(1 + e^u)` without overflow.
fn softplus(u: f64) -> f64 {
    if u > 0.0 {
        u + (-u).exp().ln_1p()
    } else {
        u.exp().ln_1p()
    }
}

/// Logistic function `1/(1 + e^-u)` = `e^u/(1 + e^u)`.
fn sigmoid(u: f64) -> f64 {
    if u >= 0.0 {
        1.0 / (1.0 + (-u).exp())
    } else {
        let e = u.exp();
        e / (1.0 + e)
    }
}

/// Solves `g u + (1-g) ln(1+e^u) = x` for `u = ln w` by safeguarded
/// Newton. Only called for `0 < g < 1`.
fn solve_ln_w_general(x: f64, g: f64) -> Result<f64, ExclusionError> {
    let ln2 = core::f64::consts::LN_2;
    // F(x_hi = x) = (1-g) (softplus(x) - x) >= 0; the lower end comes from
    // softplus(u) <= max(u,0) + ln 2.
    let mut hi = x;
    let mut lo = if x <= (1.0 - g) * ln2 {
        (x - (1.0 - g) * ln2) / g
    } else {
        x - (1.0 - g) * ln2
    };

    let f = |u: f64| g * u + (1.0 - g) * softplus(u) - x;
    let scale = 1.0 + x.abs();

    let mut u = 0.5 * (lo + hi);
    let mut fu = f(u);
    for _ in 0..MAX_ITER {
        if fu.abs() <= SOLVER_TOL * scale {
            return Ok(u);
        }
        if fu > 0.0 {
            hi = u;
        } else {
            lo = u;
        }
        let slope = g + (1.0 - g) * sigmoid(u);
        let mut next = u - fu / slope;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if next == u || hi - lo <= f64::EPSILON * (1.0 + u.abs()) {
            return Ok(u);
        }
        u = next;
        fu = f(u);
    }
    Err(ExclusionError::NoConvergence {
        x,
        residual: fu.abs() / scale,
    })
}

/// `ln w(x)`, valid for every finite `x` (unlike `w` itself, which
/// overflows `f64` for `x` beyond about 709).
pub fn solve_ln_w(x: f64, g: StatParam) -> Result<f64, ExclusionError> {
    if g.is_bose() {
        if x <= 0.0 {
            return Err(ExclusionError::BoseDomain { x });
        }
        // ln(e^x - 1), stable at both ends
        return Ok(if x > 30.0 {
            x + (-(-x).exp()).ln_1p()
        } else {
            x.exp_m1().ln()
        });
    }
    if g.is_fermi() {
        return Ok(x);
    }
    if g.is_semion() {
        // w(1+w) = e^{2x}: w = (sqrt(1+4e^{2x}) - 1)/2
        return Ok(if x > 300.0 {
            // sqrt(1+4y^2) = 2y + 1/(4y) - ..., so w = y - 1/2 + O(1/y)
            x + (-0.5 * (-x).exp()).ln_1p()
        } else {
            let half_ln = 0.5 * (4.0 * (2.0 * x).exp()).ln_1p(); // ln sqrt(1+4e^{2x})
            (0.5 * half_ln.exp_m1()).ln()
        });
    }
    solve_ln_w_general(x, g.value())
}

/// The auxiliary occupation factor `w(x)` solving
/// `w^g (1+w)^(1-g) = e^x`.
///
/// Closed forms are used for `g` in `{0, 1/2, 1}`; the returned value
/// satisfies `g ln w + (1-g) ln(1+w) = x` to a relative residual of
/// 1e-13 or better wherever `w` is representable.
pub fn solve_w(x: f64, g: StatParam) -> Result<f64, ExclusionError> {
    if g.is_bose() {
        if x <= 0.0 {
            return Err(ExclusionError::BoseDomain { x });
        }
        return Ok(x.exp_m1());
    }
    Ok(solve_ln_w(x, g)?.exp())
}

/// Mean occupation `f_g(x) = 1/(w(x) + g)`.
///
/// Strictly decreasing in `x`; bounded by `1/g` for `g > 0`. Beyond
/// `x = 700` the Boltzmann tail `e^-x (1 + (1-2g) e^-x)` is used so the
/// intermediate exponential cannot overflow.
pub fn occupation(x: f64, g: StatParam) -> Result<f64, ExclusionError> {
    if g.is_bose() && x <= 0.0 {
        return Err(ExclusionError::BoseDomain { x });
    }
    Ok(occupation_raw(x, g))
}

/// `occupation` without the domain check; used by the quadrature paths
/// which validate their integration region up front.
pub(crate) fn occupation_raw(x: f64, g: StatParam) -> f64 {
    let gv = g.value();
    if x > TAIL_X {
        let t = (-x).exp();
        return t * (1.0 + (1.0 - 2.0 * gv) * t);
    }
    if g.is_bose() {
        return 1.0 / x.exp_m1();
    }
    if g.is_fermi() {
        // 1/(e^x + 1) evaluated from the bounded side
        return sigmoid(-x);
    }
    let u = solve_ln_w(x, g).expect("non-bosonic solve has no domain restriction");
    if u > 700.0 {
        return (-u).exp();
    }
    1.0 / (u.exp() + gv)
}

/// Entropy density
/// `sigma = -( f ln f + (1-gf) ln(1-gf) - (1+(1-g)f) ln(1+(1-g)f) )`.
///
/// Terms `z ln z` are taken as 0 at `z = 0`. The one-sided entropy
/// current is `(T/2pi) * integral of sigma dx` in reduced units.
pub fn entropy_density(x: f64, g: StatParam) -> Result<f64, ExclusionError> {
    if g.is_bose() && x <= 0.0 {
        return Err(ExclusionError::BoseDomain { x });
    }
    Ok(entropy_density_raw(x, g))
}

pub(crate) fn entropy_density_raw(x: f64, g: StatParam) -> f64 {
    let f = occupation_raw(x, g);
    entropy_density_from_occupation(f, g.value())
}

/// Entropy density as a function of the occupation itself.
pub(crate) fn entropy_density_from_occupation(f: f64, g: f64) -> f64 {
    if f == 0.0 {
        return 0.0;
    }
    if f < 1e-4 {
        // ln(1 +- g f) via ln_1p keeps the small-f cancellation exact
        let a = f * f.ln();
        let b = (1.0 - g * f) * (-g * f).ln_1p();
        let c = (1.0 + (1.0 - g) * f) * ((1.0 - g) * f).ln_1p();
        return -(a + b - c);
    }
    let zlnz = |z: f64| if z > 0.0 { z * z.ln() } else { 0.0 };
    -(zlnz(f) + zlnz(1.0 - g * f) - zlnz(1.0 + (1.0 - g) * f))
}

/// Residual `g ln w + (1-g) ln(1+w) - x` of a candidate `w`, evaluated in
/// log space so large `w` do not overflow.
pub fn residual(w: f64, x: f64, g: StatParam) -> f64 {
    let gv = g.value();
    let u = w.ln();
    gv * u + (1.0 - gv) * softplus(u) - x
}
