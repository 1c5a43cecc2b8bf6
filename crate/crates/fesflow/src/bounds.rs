//! The two conjectured entropy-current bounds, the heat-emission bound,
//! the thermal-conductance limit, and the sweep machinery behind them.
//!
//! In reduced units the general bound reads `3 S'^2 / (pi E') <= 1` for
//! `T_L > T_R`, `mu_L >= mu_R`; the tight bound replaces the energy
//! current with the heat current and a temperature-asymmetry factor,
//! `3 (T_L + T_R) S'^2 / (pi (T_L - T_R) Q') <= 1`, and requires equal
//! chemical potentials. Both are checked numerically; "satisfied" carries
//! a 1e-9 slack so quadrature noise cannot flag an analytic equality as a
//! violation.

use alloc::vec::Vec;
use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

use crate::stat::StatParam;
use crate::transport::{net_flows, side_currents, ChannelSetup, Reservoir, TransportError};

/// Numerical slack on the `ratio <= 1` checks.
pub const BOUND_SLACK: f64 = 1e-9;

/// Which of the two bounds a report refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    /// `S'^2 <= (pi/3) E'`, valid for `T_L > T_R`, `mu_L >= mu_R`.
    General,
    /// `S'^2 <= (pi/3) (T_L - T_R)/(T_L + T_R) Q'`, valid for equal
    /// chemical potentials.
    Tight,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundKind::General => write!(f, "general"),
            BoundKind::Tight => write!(f, "tight"),
        }
    }
}

/// Outcome of a single bound evaluation.
#[derive(Clone, Copy, Debug)]
pub struct BoundReport {
    /// Bound ratio; the bound claims `ratio <= 1`.
    pub ratio: f64,
    /// `ratio <= 1 + BOUND_SLACK`.
    pub satisfied: bool,
    /// The channel the ratio was evaluated on.
    pub setup: ChannelSetup,
    /// Which bound.
    pub kind: BoundKind,
}

/// Errors from bound evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundsError {
    /// The bound preconditions need `T_L > T_R`.
    TemperatureOrder {
        /// Left temperature.
        t_left: f64,
        /// Right temperature.
        t_right: f64,
    },
    /// The general bound needs `mu_L >= mu_R`.
    PotentialOrder {
        /// Left chemical potential.
        mu_left: f64,
        /// Right chemical potential.
        mu_right: f64,
    },
    /// The tight bound needs `mu_L = mu_R` exactly.
    PotentialMismatch {
        /// Left chemical potential.
        mu_left: f64,
        /// Right chemical potential.
        mu_right: f64,
    },
    /// Current evaluation failed.
    Transport(TransportError),
}

impl fmt::Display for BoundsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundsError::TemperatureOrder { t_left, t_right } => {
                write!(f, "bound requires T_L > T_R, got {t_left} <= {t_right}")
            }
            BoundsError::PotentialOrder { mu_left, mu_right } => {
                write!(
                    f,
                    "general bound requires mu_L >= mu_R, got {mu_left} < {mu_right}"
                )
            }
            BoundsError::PotentialMismatch { mu_left, mu_right } => {
                write!(
                    f,
                    "tight bound requires mu_L = mu_R, got {mu_left} != {mu_right}"
                )
            }
            BoundsError::Transport(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for BoundsError {}

impl From<TransportError> for BoundsError {
    fn from(e: TransportError) -> Self {
        BoundsError::Transport(e)
    }
}

fn check_temperature_order(setup: &ChannelSetup) -> Result<(), BoundsError> {
    if setup.left.temperature > setup.right.temperature {
        Ok(())
    } else {
        Err(BoundsError::TemperatureOrder {
            t_left: setup.left.temperature,
            t_right: setup.right.temperature,
        })
    }
}

/// Ratio `3 S'^2 / (pi E')` of the general bound.
pub fn bound_ratio_general(setup: &ChannelSetup) -> Result<BoundReport, BoundsError> {
    bound_ratio_general_with_tol(setup, crate::quad::DEFAULT_REL_TOL)
}

/// [`bound_ratio_general`] with an explicit quadrature tolerance.
pub fn bound_ratio_general_with_tol(
    setup: &ChannelSetup,
    rel_tol: f64,
) -> Result<BoundReport, BoundsError> {
    check_temperature_order(setup)?;
    if setup.left.chemical_potential < setup.right.chemical_potential {
        return Err(BoundsError::PotentialOrder {
            mu_left: setup.left.chemical_potential,
            mu_right: setup.right.chemical_potential,
        });
    }
    let c = net_flows(setup, rel_tol)?;
    let ratio = 3.0 * c.entropy * c.entropy / (core::f64::consts::PI * c.energy);
    Ok(BoundReport {
        ratio,
        satisfied: ratio <= 1.0 + BOUND_SLACK,
        setup: *setup,
        kind: BoundKind::General,
    })
}

/// Ratio `3 (T_L + T_R) S'^2 / (pi (T_L - T_R) Q')` of the tight bound.
pub fn bound_ratio_tight(setup: &ChannelSetup) -> Result<BoundReport, BoundsError> {
    bound_ratio_tight_with_tol(setup, crate::quad::DEFAULT_REL_TOL)
}

/// [`bound_ratio_tight`] with an explicit quadrature tolerance.
pub fn bound_ratio_tight_with_tol(
    setup: &ChannelSetup,
    rel_tol: f64,
) -> Result<BoundReport, BoundsError> {
    let ratio = tight_style_ratio(setup, rel_tol, false)?;
    Ok(BoundReport {
        ratio,
        satisfied: ratio <= 1.0 + BOUND_SLACK,
        setup: *setup,
        kind: BoundKind::Tight,
    })
}

/// The tight-bound ratio with the energy current substituted for the heat
/// current. Not a valid bound: for bosons with `mu < 0` it exceeds 1,
/// which is exactly why the heat current appears in the tight bound.
pub fn bound_ratio_tight_energy_variant(setup: &ChannelSetup) -> Result<f64, BoundsError> {
    tight_style_ratio(setup, crate::quad::DEFAULT_REL_TOL, true)
}

fn tight_style_ratio(
    setup: &ChannelSetup,
    rel_tol: f64,
    use_energy: bool,
) -> Result<f64, BoundsError> {
    check_temperature_order(setup)?;
    let (mu_l, mu_r) = (
        setup.left.chemical_potential,
        setup.right.chemical_potential,
    );
    if mu_l != mu_r {
        return Err(BoundsError::PotentialMismatch {
            mu_left: mu_l,
            mu_right: mu_r,
        });
    }
    let c = net_flows(setup, rel_tol)?;
    let flow = if use_energy {
        c.energy
    } else {
        c.heat
            .expect("equal potentials imply a defined heat current")
    };
    let (t_l, t_r) = (setup.left.temperature, setup.right.temperature);
    Ok(3.0 * (t_l + t_r) * c.entropy * c.entropy / (core::f64::consts::PI * (t_l - t_r) * flow))
}

/// Heat emission of a `mu = 0` boson reservoir relative to its bound
/// `pi T^2 / 3`. The value is 1/4 independent of `T`: the bound holds but
/// is not tight.
pub fn heat_emission_ratio(temperature: f64) -> f64 {
    assert!(temperature > 0.0, "heat_emission_ratio needs T > 0");
    let side = side_currents(Reservoir::new(temperature, 0.0), StatParam::BOSE)
        .expect("boson reservoir at mu = 0 is a valid domain");
    side.energy / (core::f64::consts::PI * temperature * temperature / 3.0)
}

/// `(Q'_L / T) / S'_L` for a `mu = 0` boson reservoir: equals 1/2, the
/// signature of irreversible one-sided emission (`Q'/T = S'/2`, not `S'`).
pub fn irreversibility_factor(temperature: f64) -> f64 {
    assert!(temperature > 0.0, "irreversibility_factor needs T > 0");
    let side = side_currents(Reservoir::new(temperature, 0.0), StatParam::BOSE)
        .expect("boson reservoir at mu = 0 is a valid domain");
    side.energy / temperature / side.entropy
}

/// Two-point thermal conductance `K = Q' / dT` at `T_{L,R} = mean_t +/-
/// delta_t/2` and common chemical potential `mu`.
///
/// For bosons at `mu = 0` this is `pi mean_t / 6` identically; for `g > 0`
/// it approaches the same quantum from below in the degenerate limit
/// `mu/T -> inf`.
#[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN widths must fail
pub fn thermal_conductance(
    g: StatParam,
    mu: f64,
    mean_t: f64,
    delta_t: f64,
) -> Result<f64, BoundsError> {
    if !(delta_t > 0.0) || delta_t >= 2.0 * mean_t {
        return Err(BoundsError::TemperatureOrder {
            t_left: mean_t + 0.5 * delta_t,
            t_right: mean_t - 0.5 * delta_t,
        });
    }
    let setup = ChannelSetup {
        g,
        left: Reservoir::new(mean_t + 0.5 * delta_t, mu),
        right: Reservoir::new(mean_t - 0.5 * delta_t, mu),
    };
    let c = net_flows(&setup, crate::quad::DEFAULT_REL_TOL)?;
    Ok(c.heat
        .expect("equal potentials imply a defined heat current")
        / delta_t)
}

/// How a sweep grid turns `(g, axis value)` into a channel.
#[derive(Clone, Copy, Debug)]
pub enum GridRelation {
    /// Axis is `T_L/mu_L` at `mu_L = 1`. The right reservoir is pinned by
    /// `x0_R = edge_scale * x0_L` and `mu_L = mu_ratio * mu_R`.
    ScaledRightEdge {
        /// Factor between the right and left reduced band edges.
        edge_scale: f64,
        /// `mu_L / mu_R`.
        mu_ratio: f64,
    },
    /// Axis is `x0_L = -mu/T_L` at `T_L = 1` with a shared chemical
    /// potential and `T_R = t_ratio * T_L`.
    SharedPotentialEdgeAxis {
        /// `T_R / T_L`.
        t_ratio: f64,
    },
    /// Axis is `T_L/mu` at shared `mu = 1` and `T_R = t_ratio * T_L`.
    SharedPotentialTemperatureAxis {
        /// `T_R / T_L`.
        t_ratio: f64,
    },
}

impl GridRelation {
    /// Builds the channel for one grid point.
    pub fn setup(&self, g: StatParam, axis: f64) -> ChannelSetup {
        match *self {
            GridRelation::ScaledRightEdge {
                edge_scale,
                mu_ratio,
            } => {
                let mu_l = 1.0;
                let t_l = axis;
                let mu_r = mu_l / mu_ratio;
                let t_r = mu_r * t_l / (edge_scale * mu_l);
                ChannelSetup {
                    g,
                    left: Reservoir::new(t_l, mu_l),
                    right: Reservoir::new(t_r, mu_r),
                }
            }
            GridRelation::SharedPotentialEdgeAxis { t_ratio } => {
                let mu = -axis;
                ChannelSetup {
                    g,
                    left: Reservoir::new(1.0, mu),
                    right: Reservoir::new(t_ratio, mu),
                }
            }
            GridRelation::SharedPotentialTemperatureAxis { t_ratio } => {
                let t_l = axis;
                ChannelSetup {
                    g,
                    left: Reservoir::new(t_l, 1.0),
                    right: Reservoir::new(t_ratio * t_l, 1.0),
                }
            }
        }
    }
}

/// A sweep: the cartesian product of statistics values and axis values,
/// mapped to channels by a fixed relation.
#[derive(Clone, Debug)]
pub struct SweepGrid {
    /// Statistics values, swept in the given order.
    pub g_values: Vec<StatParam>,
    /// Axis values, swept in the given order within each `g`.
    pub axis: Vec<f64>,
    /// Relation pinning the remaining reservoir parameters.
    pub relation: GridRelation,
}

/// One evaluated sweep point. Failures stay in the row instead of
/// aborting the sweep.
#[derive(Clone, Debug)]
pub struct SweepRow {
    /// Statistics parameter of the point.
    pub g: StatParam,
    /// Axis value of the point.
    pub axis: f64,
    /// The bound report, or the per-point error.
    pub outcome: Result<BoundReport, BoundsError>,
}

/// Evaluates `kind` on every grid point, rows ordered by (`g`, axis).
pub fn sweep(grid: &SweepGrid, kind: BoundKind) -> Vec<SweepRow> {
    sweep_with_tol(grid, kind, crate::quad::DEFAULT_REL_TOL)
}

/// [`sweep`] with an explicit quadrature tolerance.
pub fn sweep_with_tol(grid: &SweepGrid, kind: BoundKind, rel_tol: f64) -> Vec<SweepRow> {
    let mut rows = Vec::with_capacity(grid.g_values.len() * grid.axis.len());
    for &g in &grid.g_values {
        for &axis in &grid.axis {
            let setup = grid.relation.setup(g, axis);
            let outcome = match kind {
                BoundKind::General => bound_ratio_general_with_tol(&setup, rel_tol),
                BoundKind::Tight => bound_ratio_tight_with_tol(&setup, rel_tol),
            };
            rows.push(SweepRow { g, axis, outcome });
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use core::f64::consts::PI;

    fn shared(g: StatParam, t_l: f64, t_r: f64, mu: f64) -> ChannelSetup {
        ChannelSetup {
            g,
            left: Reservoir::new(t_l, mu),
            right: Reservoir::new(t_r, mu),
        }
    }

    #[test]
    fn general_boson_closed_form_point() {
        // S' = pi/12, E' = pi/16 at T_R = T_L/2 gives exactly 1/3
        let report = bound_ratio_general(&shared(StatParam::BOSE, 1.0, 0.5, 0.0)).unwrap();
        assert_relative_eq!(report.ratio, 1.0 / 3.0, max_relative = 1e-10);
        assert!(report.satisfied);
    }

    #[test]
    fn general_boson_equality_at_zero_right_temperature() {
        let setup = ChannelSetup {
            g: StatParam::BOSE,
            left: Reservoir::new(1.0, 0.0),
            right: Reservoir::new(0.0, 0.0),
        };
        let report = bound_ratio_general(&setup).unwrap();
        assert_relative_eq!(report.ratio, 1.0, max_relative = 1e-10);
        assert!(report.satisfied);
    }

    #[test]
    fn preconditions_are_enforced() {
        // equal temperatures
        assert!(matches!(
            bound_ratio_general(&shared(StatParam::FERMI, 1.0, 1.0, 0.0)),
            Err(BoundsError::TemperatureOrder { .. })
        ));
        // mu_L < mu_R
        let setup = ChannelSetup {
            g: StatParam::FERMI,
            left: Reservoir::new(1.0, 0.0),
            right: Reservoir::new(0.5, 1.0),
        };
        assert!(matches!(
            bound_ratio_general(&setup),
            Err(BoundsError::PotentialOrder { .. })
        ));
        // tight needs exact mu equality
        let setup = ChannelSetup {
            g: StatParam::FERMI,
            left: Reservoir::new(1.0, 1.0),
            right: Reservoir::new(0.5, 1.0 - 1e-13),
        };
        assert!(matches!(
            bound_ratio_tight(&setup),
            Err(BoundsError::PotentialMismatch { .. })
        ));
    }

    #[test]
    fn tight_boson_equality_line() {
        for t_r in [0.9, 0.5, 0.1, 0.013] {
            let report = bound_ratio_tight(&shared(StatParam::BOSE, 1.0, t_r, 0.0)).unwrap();
            assert_relative_eq!(report.ratio, 1.0, epsilon = 1e-8);
            assert!(report.satisfied);
        }
    }

    #[test]
    fn tight_boson_negative_mu_expected_window() {
        // mpmath oracle: 0.995625242377 at mu = -0.01, T_R = T_L/2
        let report = bound_ratio_tight(&shared(StatParam::BOSE, 1.0, 0.5, -0.01)).unwrap();
        assert_relative_eq!(report.ratio, 0.995625242377, max_relative = 1e-8);
        // spec window (0.9, 1.0)
        assert!(report.ratio > 0.9 && report.ratio < 1.0);
    }

    #[test]
    fn energy_variant_breaks_for_negative_mu_bosons() {
        // mpmath oracle: 1.05892910571 with the energy current,
        // 0.978130119169 with the heat current
        let setup = shared(StatParam::BOSE, 1.0, 0.5, -0.05);
        let energy_variant = bound_ratio_tight_energy_variant(&setup).unwrap();
        assert_relative_eq!(energy_variant, 1.05892910571, max_relative = 1e-8);
        assert!(energy_variant > 1.0);
        let heat = bound_ratio_tight(&setup).unwrap();
        assert_relative_eq!(heat.ratio, 0.978130119169, max_relative = 1e-8);
        assert!(heat.satisfied);
    }

    #[test]
    fn heat_emission_is_quarter_of_bound() {
        for t in [0.1, 1.0, 2.0] {
            assert_relative_eq!(heat_emission_ratio(t), 0.25, max_relative = 1e-10);
        }
    }

    #[test]
    fn irreversibility_factor_is_half() {
        for t in [0.01, 1.0, 3.0] {
            assert_relative_eq!(irreversibility_factor(t), 0.5, max_relative = 1e-10);
        }
    }

    #[test]
    fn boson_conductance_is_the_quantum() {
        for delta in [1e-3, 0.1, 0.5] {
            let k = thermal_conductance(StatParam::BOSE, 0.0, 1.0, delta).unwrap();
            assert_relative_eq!(k, PI / 6.0, max_relative = 1e-10);
        }
    }

    #[test]
    fn fermion_conductance_below_quantum_at_zero_mu() {
        // non-degenerate fermions carry exactly half the quantum
        let k = thermal_conductance(StatParam::FERMI, 0.0, 1.0, 1e-3).unwrap();
        assert_relative_eq!(k / (PI / 6.0), 0.5, max_relative = 1e-6);
    }

    #[test]
    fn sweep_preserves_order_and_records_rows() {
        let grid = SweepGrid {
            g_values: alloc::vec![StatParam::FERMI, StatParam::SEMION],
            axis: alloc::vec![0.5, 1.0, 2.0],
            relation: GridRelation::SharedPotentialTemperatureAxis { t_ratio: 0.5 },
        };
        let rows = sweep(&grid, BoundKind::Tight);
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[0].g, StatParam::FERMI);
        assert_eq!(rows[3].g, StatParam::SEMION);
        assert_eq!(rows[0].axis, 0.5);
        assert_eq!(rows[1].axis, 1.0);
        for row in &rows {
            let report = row.outcome.as_ref().unwrap();
            assert!(
                report.satisfied,
                "ratio {} at g={} axis={}",
                report.ratio, row.g, row.axis
            );
        }
    }
}
