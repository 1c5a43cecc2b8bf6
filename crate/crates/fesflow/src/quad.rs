//! Adaptive Gauss-Kronrod quadrature with a semi-infinite map.
//!
//! Finite intervals use a globally adaptive 7-15 Gauss-Kronrod rule: the
//! segment with the largest error estimate is bisected until the summed
//! error meets the tolerance. Semi-infinite integrals `[a, inf)` of
//! exponentially decaying integrands are split at `X = max(a, 0) + 1`;
//! the tail is mapped by `t = e^-x` onto the finite interval
//! `(0, e^-X]`, where the transformed integrand `f(-ln t)/t` stays
//! bounded because `f` decays at least like `e^-x`. Kronrod nodes are
//! interior, so neither the `t = 0` endpoint nor an integrable endpoint
//! singularity of the original integrand is ever evaluated.

use alloc::collections::BinaryHeap;
use core::cmp::Ordering;
use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

/// Default relative accuracy target of the transport quadratures.
pub const DEFAULT_REL_TOL: f64 = 1e-12;

const MAX_SEGMENTS: usize = 4096;

// 7-15 Gauss-Kronrod abscissae and weights on [-1, 1] (positive half).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Failure of the adaptive scheme to reach its tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadError {
    /// Best available estimate of the integral.
    pub estimate: f64,
    /// Absolute error bound attached to the estimate.
    pub abs_error: f64,
}

impl fmt::Display for QuadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "quadrature did not converge (estimate {:.6e}, error bound {:.3e})",
            self.estimate, self.abs_error
        )
    }
}

impl core::error::Error for QuadError {}

#[derive(Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    /// Rounding floor of this panel (`50 eps resabs`): no refinement can
    /// push the panel error below it.
    floor: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
    }
}

/// One 15-point Kronrod panel; returns (integral, error estimate,
/// rounding floor).
fn kronrod_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    let mut result_gauss = fc * WG[3];
    let mut result_kronrod = fc * WGK[7];
    let mut result_abs = result_kronrod.abs();

    let mut fv = [0.0f64; 15];
    fv[7] = fc;

    for (j, &x) in XGK.iter().enumerate().take(7) {
        let dx = half * x;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[j] = f1;
        fv[14 - j] = f2;
        let sum = f1 + f2;
        result_kronrod += WGK[j] * sum;
        result_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            result_gauss += WG[j / 2] * sum;
        }
    }

    let mean = 0.5 * result_kronrod;
    let mut result_asc = WGK[7] * (fc - mean).abs();
    for (j, &v) in fv.iter().enumerate().take(7) {
        result_asc += WGK[j] * ((v - mean).abs() + (fv[14 - j] - mean).abs());
    }

    let value = result_kronrod * half;
    result_abs *= half.abs();
    result_asc *= half.abs();

    // QUADPACK-style error rescaling
    let mut err = ((result_kronrod - result_gauss) * half).abs();
    if result_asc != 0.0 && err != 0.0 {
        err = result_asc * (200.0 * err / result_asc).powf(1.5).min(1.0);
    }
    let min_err = 50.0 * f64::EPSILON * result_abs;
    if min_err > err {
        err = min_err;
    }
    (value, err, min_err)
}

/// Integrates `f` over the finite interval `[a, b]` to a relative
/// tolerance `rel_tol` (with an absolute floor for integrals near zero).
pub fn integrate_finite<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
) -> Result<f64, QuadError> {
    integrate_with_breaks(f, &[a, b], rel_tol)
}

/// Integrates over `[breaks[0], breaks[last]]`, seeding one panel per
/// consecutive pair. Callers pass interior break points where they know
/// the integrand has localized structure that the first panel of a very
/// wide interval would otherwise step over.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    breaks: &[f64],
    rel_tol: f64,
) -> Result<f64, QuadError> {
    debug_assert!(breaks.len() >= 2 && breaks.windows(2).all(|w| w[0] <= w[1]));
    if breaks[0] == breaks[breaks.len() - 1] {
        return Ok(0.0);
    }
    let mut heap: BinaryHeap<Segment> = BinaryHeap::new();
    let mut total_value = 0.0;
    let mut total_error = 0.0;
    let mut total_floor = 0.0;
    for pair in breaks.windows(2) {
        if pair[0] == pair[1] {
            continue;
        }
        let (value, error, floor) = kronrod_panel(&f, pair[0], pair[1]);
        if !value.is_finite() {
            return Err(QuadError {
                estimate: value,
                abs_error: f64::INFINITY,
            });
        }
        total_value += value;
        total_error += error;
        total_floor += floor;
        heap.push(Segment {
            a: pair[0],
            b: pair[1],
            value,
            error,
            floor,
        });
    }

    while total_error > tolerance(total_value, total_floor, rel_tol) {
        if heap.len() >= MAX_SEGMENTS {
            return Err(QuadError {
                estimate: total_value,
                abs_error: total_error,
            });
        }
        let worst = heap
            .pop()
            .expect("heap cannot be empty while error is positive");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval width is at rounding level; accept what we have
            heap.push(worst);
            break;
        }
        let (v1, e1, f1) = kronrod_panel(&f, worst.a, mid);
        let (v2, e2, f2) = kronrod_panel(&f, mid, worst.b);
        if !(v1.is_finite() && v2.is_finite()) {
            return Err(QuadError {
                estimate: total_value,
                abs_error: f64::INFINITY,
            });
        }
        total_value += v1 + v2 - worst.value;
        total_error += e1 + e2 - worst.error;
        total_floor += f1 + f2 - worst.floor;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
            floor: f1,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
            floor: f2,
        });
    }

    // re-sum for a little extra accuracy: the incremental updates above
    // accumulate rounding over many splits
    let mut value = 0.0;
    let mut error = 0.0;
    let mut floor = 0.0;
    for seg in heap.iter() {
        value += seg.value;
        error += seg.error;
        floor += seg.floor;
    }
    if error > tolerance(value, floor, rel_tol) * 4.0 {
        return Err(QuadError {
            estimate: value,
            abs_error: error,
        });
    }
    Ok(value)
}

/// Convergence target: the requested relative accuracy, but never below
/// the rounding floor of the integrand mass actually summed (times a
/// margin for the error-estimate shaping, which keeps resolved panels a
/// couple of orders above their floors). Integrals whose panels cancel
/// (net currents between nearly identical reservoirs) are then accepted
/// at the best accuracy `f64` admits instead of looping on an
/// unreachable relative target.
fn tolerance(value: f64, floor: f64, rel_tol: f64) -> f64 {
    (rel_tol * value.abs()).max(500.0 * floor).max(1e-300)
}

/// Integrates `f` over `[a, inf)` assuming `f` decays at least
/// exponentially. Split point and tail map as described in the module
/// docs. The head panels get interior breaks around `x = 0`: reservoir
/// integrands are smooth plateaus below the occupation transition there,
/// and a single Kronrod panel spanning `[-1e8, 1]` would never sample
/// the transition.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    rel_tol: f64,
) -> Result<f64, QuadError> {
    integrate_semi_infinite_with_breaks(f, a, &[-80.0, -40.0, -20.0, -10.0, -5.0, 0.0], rel_tol)
}

/// [`integrate_semi_infinite`] with caller-supplied interior structure
/// points (out-of-range points are ignored). The head/tail split is
/// placed one unit past the last structure point so the exponential tail
/// map only ever sees pure decay.
pub fn integrate_semi_infinite_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    interior: &[f64],
    rel_tol: f64,
) -> Result<f64, QuadError> {
    let mut split = a.max(0.0) + 1.0;
    for &p in interior {
        if p + 1.0 > split {
            split = p + 1.0;
        }
    }
    let mut breaks: alloc::vec::Vec<f64> = alloc::vec::Vec::with_capacity(interior.len() + 2);
    breaks.push(a);
    for &p in interior {
        if p > a && p < split {
            breaks.push(p);
        }
    }
    breaks.push(split);
    breaks.sort_by(|x, y| x.partial_cmp(y).expect("finite break points"));
    let head = integrate_with_breaks(&f, &breaks, rel_tol)?;
    // t = e^-x, dx = -dt/t
    let tail_upper = (-split).exp();
    if tail_upper == 0.0 {
        // split beyond ~745: the tail underflows f64 entirely
        return Ok(head);
    }
    let tail = integrate_finite(|t: f64| f(-t.ln()) / t, 0.0, tail_upper, rel_tol)?;
    Ok(head + tail)
}
