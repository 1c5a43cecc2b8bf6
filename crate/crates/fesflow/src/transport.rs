//! One-sided and net single-channel currents.
//!
//! A reservoir at temperature `T` and chemical potential `mu` emits, per
//! unit time and in reduced units,
//!
//! ```text
//! E' = (T^2/2pi) int_{x0}^inf (x - x0) f_g(x) dx      x0 = -mu/T
//! S' = (T/2pi)   int_{x0}^inf sigma(x, g) dx
//! N' = (T/2pi)   int_{x0}^inf f_g(x) dx
//! ```
//!
//! with net currents given by left minus right. The number-current
//! integrand is the Landauer weight-1 form (the energy integrand with the
//! `(x - x0)` factor removed). The bosonic number current diverges
//! logarithmically at `mu = 0` and is reported as infinite.
//!
//! Zero-temperature reservoirs never reach the quadrature: the dedicated
//! [`zero_temperature_side`] path integrates the occupation step `1/g` on
//! `[0, mu]` in closed form.

use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

use crate::exclusion::{entropy_density_raw, occupation_raw};
use crate::quad::{self, QuadError, DEFAULT_REL_TOL};
use crate::stat::StatParam;

/// One heat bath, in reduced units (`k_B = hbar = 1`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Reservoir {
    /// Temperature, `>= 0`. Zero only through the zero-temperature path.
    pub temperature: f64,
    /// Chemical potential; `<= 0` required for bosons.
    pub chemical_potential: f64,
}

impl Reservoir {
    /// Convenience constructor.
    pub fn new(temperature: f64, chemical_potential: f64) -> Reservoir {
        Reservoir {
            temperature,
            chemical_potential,
        }
    }

    /// Lower integration limit `x0 = -mu/T` of the reduced-energy axis.
    pub fn reduced_edge(&self) -> f64 {
        -self.chemical_potential / self.temperature
    }
}

/// A single ballistic channel between two reservoirs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelSetup {
    /// Statistics parameter of the channel quasiparticles.
    pub g: StatParam,
    /// Left (conventionally hotter) reservoir.
    pub left: Reservoir,
    /// Right reservoir.
    pub right: Reservoir,
}

/// One-sided emission rates; all non-negative.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SideCurrents {
    /// Energy current.
    pub energy: f64,
    /// Entropy current.
    pub entropy: f64,
    /// Number current (may be infinite for bosons at `mu = 0`).
    pub number: f64,
}

impl SideCurrents {
    /// One-sided heat current `E' - mu N'`. At `mu = 0` this is the
    /// energy current itself, bypassing the possibly infinite bosonic
    /// number current.
    pub fn heat(&self, mu: f64) -> f64 {
        if mu == 0.0 {
            self.energy
        } else {
            self.energy - mu * self.number
        }
    }
}

/// Net and one-sided heat flow rates of a channel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Currents {
    /// `E'_L - E'_R`.
    pub net_energy: f64,
    /// `S'_L - S'_R`.
    pub net_entropy: f64,
    /// `N'_L - N'_R`.
    pub net_number: f64,
    /// `E' - mu N'`; present only when the chemical potentials coincide
    /// exactly, which is the precondition of the tight bound.
    pub net_heat: Option<f64>,
    /// `E'_L - mu_L N'_L`.
    pub left_heat: f64,
    /// `E'_R - mu_R N'_R`.
    pub right_heat: f64,
}

/// Errors from current evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TransportError {
    /// `side_currents` needs `T > 0`.
    NonPositiveTemperature {
        /// Offending temperature.
        temperature: f64,
    },
    /// Bose statistics require `mu <= 0`.
    BoseChemicalPotential {
        /// Offending chemical potential.
        mu: f64,
    },
    /// The zero-temperature path needs `mu >= 0` for `g > 0`.
    ZeroTemperatureDomain {
        /// Offending chemical potential.
        mu: f64,
    },
    /// The transformed-current oracle only exists for fermions.
    SommerfeldRequiresFermi {
        /// Statistics parameter that was passed instead.
        g: StatParam,
    },
    /// Quadrature failed to reach its accuracy target.
    Quadrature(QuadError),
}

impl fmt::Display for TransportError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransportError::NonPositiveTemperature { temperature } => {
                write!(
                    f,
                    "reservoir temperature must be positive, got {temperature}"
                )
            }
            TransportError::BoseChemicalPotential { mu } => {
                write!(f, "bosonic reservoir requires mu <= 0, got {mu}")
            }
            TransportError::ZeroTemperatureDomain { mu } => {
                write!(f, "zero-temperature reservoir requires mu >= 0, got {mu}")
            }
            TransportError::SommerfeldRequiresFermi { g } => {
                write!(f, "transformed fermion currents require g = 1, got {g}")
            }
            TransportError::Quadrature(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for TransportError {}

impl From<QuadError> for TransportError {
    fn from(e: QuadError) -> Self {
        TransportError::Quadrature(e)
    }
}

/// One-sided currents of a finite-temperature reservoir by quadrature.
pub fn side_currents(res: Reservoir, g: StatParam) -> Result<SideCurrents, TransportError> {
    side_currents_with_tol(res, g, DEFAULT_REL_TOL)
}

/// [`side_currents`] with an explicit quadrature tolerance.
pub fn side_currents_with_tol(
    res: Reservoir,
    g: StatParam,
    rel_tol: f64,
) -> Result<SideCurrents, TransportError> {
    validate_hot(res, g)?;
    Ok(SideCurrents {
        energy: energy_side(res, g, rel_tol)?,
        entropy: entropy_side(res, g, rel_tol)?,
        number: number_side(res, g, rel_tol)?,
    })
}

// `!(x > 0)` rather than `x <= 0` so NaN is rejected too
#[allow(clippy::neg_cmp_op_on_partial_ord)]
fn validate_hot(res: Reservoir, g: StatParam) -> Result<(), TransportError> {
    if !(res.temperature > 0.0) {
        return Err(TransportError::NonPositiveTemperature {
            temperature: res.temperature,
        });
    }
    if g.is_bose() && res.chemical_potential > 0.0 {
        return Err(TransportError::BoseChemicalPotential {
            mu: res.chemical_potential,
        });
    }
    Ok(())
}

fn energy_side(res: Reservoir, g: StatParam, rel_tol: f64) -> Result<f64, TransportError> {
    let x0 = res.reduced_edge();
    let t = res.temperature;
    let v = quad::integrate_semi_infinite(|x| (x - x0) * occupation_raw(x, g), x0, rel_tol)?;
    Ok(t * t / core::f64::consts::TAU * v)
}

fn entropy_side(res: Reservoir, g: StatParam, rel_tol: f64) -> Result<f64, TransportError> {
    let x0 = res.reduced_edge();
    let v = quad::integrate_semi_infinite(|x| entropy_density_raw(x, g), x0, rel_tol)?;
    Ok(res.temperature / core::f64::consts::TAU * v)
}

fn number_side(res: Reservoir, g: StatParam, rel_tol: f64) -> Result<f64, TransportError> {
    if g.is_bose() && res.chemical_potential == 0.0 {
        // infrared divergence: int dx/(e^x - 1) ~ int dx/x near zero
        return Ok(f64::INFINITY);
    }
    let x0 = res.reduced_edge();
    let v = quad::integrate_semi_infinite(|x| occupation_raw(x, g), x0, rel_tol)?;
    Ok(res.temperature / core::f64::consts::TAU * v)
}

/// One-sided currents of a `T = 0` reservoir: the occupation is the step
/// `1/g` on energies `[0, mu]`, so `E' = mu^2/(4 pi g)`,
/// `N' = mu/(2 pi g)` and the entropy current vanishes.
pub fn zero_temperature_side(mu: f64, g: StatParam) -> Result<SideCurrents, TransportError> {
    if g.is_bose() {
        if mu > 0.0 {
            return Err(TransportError::BoseChemicalPotential { mu });
        }
        // empty band: nothing to emit
        return Ok(SideCurrents {
            energy: 0.0,
            entropy: 0.0,
            number: 0.0,
        });
    }
    if mu < 0.0 {
        return Err(TransportError::ZeroTemperatureDomain { mu });
    }
    let two_pi = core::f64::consts::TAU;
    let gv = g.value();
    Ok(SideCurrents {
        energy: mu * mu / (2.0 * two_pi * gv),
        entropy: 0.0,
        number: mu / (two_pi * gv),
    })
}

fn resolve_side(
    res: Reservoir,
    g: StatParam,
    rel_tol: f64,
) -> Result<SideCurrents, TransportError> {
    if res.temperature == 0.0 {
        if res.chemical_potential < 0.0 {
            // all channel energies sit above mu: empty reservoir
            return Ok(SideCurrents {
                energy: 0.0,
                entropy: 0.0,
                number: 0.0,
            });
        }
        zero_temperature_side(res.chemical_potential, g)
    } else {
        side_currents_with_tol(res, g, rel_tol)
    }
}

/// How a reservoir participates in a net-current evaluation.
enum SideKind {
    /// `T > 0`: quadrature.
    Hot,
    /// `T = 0` with a filled step `[0, mu]`.
    Step,
    /// `T = 0` with nothing to emit.
    Empty,
}

fn classify(res: Reservoir, g: StatParam) -> Result<SideKind, TransportError> {
    if res.temperature > 0.0 {
        validate_hot(res, g)?;
        return Ok(SideKind::Hot);
    }
    if res.temperature < 0.0 {
        return Err(TransportError::NonPositiveTemperature {
            temperature: res.temperature,
        });
    }
    if g.is_bose() {
        if res.chemical_potential > 0.0 {
            return Err(TransportError::BoseChemicalPotential {
                mu: res.chemical_potential,
            });
        }
        return Ok(SideKind::Empty);
    }
    if res.chemical_potential > 0.0 {
        Ok(SideKind::Step)
    } else {
        Ok(SideKind::Empty)
    }
}

/// Net flows evaluated from pointwise-difference integrands.
///
/// Subtracting two one-sided quadratures loses all significance when the
/// sides are large and nearly equal (degenerate reservoirs at close
/// temperatures), so the nets are computed as single integrals of
/// `f_L(E) - f_R(E)` over the energy axis, where the cancellation happens
/// inside the integrand at full precision.
pub(crate) struct NetFlows {
    pub energy: f64,
    pub entropy: f64,
    pub number: f64,
    pub heat: Option<f64>,
}

/// The difference quadratures cannot certify much better than this
/// relative accuracy from their (conservative) error estimates, even
/// though their pointwise cancellation keeps the true error near machine
/// level. Requests below the floor are clamped.
const NET_DIFF_REL_TOL: f64 = 1e-10;

pub(crate) fn net_flows(setup: &ChannelSetup, rel_tol: f64) -> Result<NetFlows, TransportError> {
    let rel_tol = rel_tol.max(NET_DIFF_REL_TOL);
    let g = setup.g;
    let (left, right) = (setup.left, setup.right);
    let (kind_l, kind_r) = (classify(left, g)?, classify(right, g)?);

    let (energy, entropy, number) = match (kind_l, kind_r) {
        (SideKind::Hot, SideKind::Hot) => hot_hot_nets(setup, rel_tol)?,
        (SideKind::Hot, SideKind::Step) => {
            hot_step_nets(left, right.chemical_potential, g, 1.0, rel_tol)?
        }
        (SideKind::Step, SideKind::Hot) => {
            hot_step_nets(right, left.chemical_potential, g, -1.0, rel_tol)?
        }
        (SideKind::Hot, SideKind::Empty) => (
            energy_side(left, g, rel_tol)?,
            entropy_side(left, g, rel_tol)?,
            number_side(left, g, rel_tol)?,
        ),
        (SideKind::Empty, SideKind::Hot) => (
            -energy_side(right, g, rel_tol)?,
            -entropy_side(right, g, rel_tol)?,
            -number_side(right, g, rel_tol)?,
        ),
        (SideKind::Empty, SideKind::Empty) => (0.0, 0.0, 0.0),
        (kl, kr) => {
            // both cold, at least one filled step: exact differences
            let mu_l = if matches!(kl, SideKind::Step) {
                left.chemical_potential
            } else {
                0.0
            };
            let mu_r = if matches!(kr, SideKind::Step) {
                right.chemical_potential
            } else {
                0.0
            };
            let gv = g.value();
            let two_pi = core::f64::consts::TAU;
            (
                (mu_l - mu_r) * (mu_l + mu_r) / (2.0 * two_pi * gv),
                0.0,
                (mu_l - mu_r) / (two_pi * gv),
            )
        }
    };

    let (mu_l, mu_r) = (left.chemical_potential, right.chemical_potential);
    let heat = (mu_l == mu_r).then_some(if mu_l == 0.0 {
        energy
    } else {
        energy - mu_l * number
    });
    Ok(NetFlows {
        energy,
        entropy,
        number,
        heat,
    })
}

/// Transition window of a reservoir on the energy axis, in `t_hot` units.
///
/// Octave spacing out to +-80 T on both flanks: a reservoir whose edge is
/// much narrower than the other structure in the integrand (T_R orders of
/// magnitude below T_L) would otherwise hide its exponential tails
/// between the nodes of a wide panel.
fn push_edge_breaks(res: Reservoir, t_hot: f64, breaks: &mut alloc::vec::Vec<f64>) {
    for k in [
        -80.0, -40.0, -20.0, -10.0, -5.0, -2.0, 0.0, 2.0, 5.0, 10.0, 20.0, 40.0, 80.0,
    ] {
        let e = res.chemical_potential + k * res.temperature;
        if e > 0.0 {
            breaks.push(e / t_hot);
        }
    }
}

fn hot_hot_nets(setup: &ChannelSetup, rel_tol: f64) -> Result<(f64, f64, f64), TransportError> {
    let g = setup.g;
    let (left, right) = (setup.left, setup.right);
    let (t_l, t_r) = (left.temperature, right.temperature);
    let (mu_l, mu_r) = (left.chemical_potential, right.chemical_potential);
    let t_hot = t_l.max(t_r);
    let two_pi = core::f64::consts::TAU;

    let mut breaks = alloc::vec::Vec::new();
    push_edge_breaks(left, t_hot, &mut breaks);
    push_edge_breaks(right, t_hot, &mut breaks);

    let occ_l = move |e: f64| occupation_raw((e - mu_l) / t_l, g);
    let occ_r = move |e: f64| occupation_raw((e - mu_r) / t_r, g);

    let energy = t_hot * t_hot / two_pi
        * quad::integrate_semi_infinite_with_breaks(
            |y| {
                let e = y * t_hot;
                y * (occ_l(e) - occ_r(e))
            },
            0.0,
            &breaks,
            rel_tol,
        )?;
    let entropy = t_hot / two_pi
        * quad::integrate_semi_infinite_with_breaks(
            |y| {
                let e = y * t_hot;
                entropy_density_raw((e - mu_l) / t_l, g) - entropy_density_raw((e - mu_r) / t_r, g)
            },
            0.0,
            &breaks,
            rel_tol,
        )?;

    // the bosonic number current diverges at mu = 0; net combinations
    // involving such a side inherit the divergence
    let number = if g.is_bose() && (mu_l == 0.0 || mu_r == 0.0) {
        if mu_l == 0.0 && mu_r == 0.0 {
            if t_l > t_r {
                f64::INFINITY
            } else if t_l < t_r {
                f64::NEG_INFINITY
            } else {
                0.0
            }
        } else if mu_l == 0.0 {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        }
    } else {
        t_hot / two_pi
            * quad::integrate_semi_infinite_with_breaks(
                |y| {
                    let e = y * t_hot;
                    occ_l(e) - occ_r(e)
                },
                0.0,
                &breaks,
                rel_tol,
            )?
    };
    Ok((energy, entropy, number))
}

/// Net flows of a hot reservoir against a `T = 0` step of height `1/g`
/// on `[0, mu_step]`; `sign` carries which side of the channel is hot.
fn hot_step_nets(
    hot: Reservoir,
    mu_step: f64,
    g: StatParam,
    sign: f64,
    rel_tol: f64,
) -> Result<(f64, f64, f64), TransportError> {
    let t = hot.temperature;
    let mu = hot.chemical_potential;
    let inv_g = 1.0 / g.value();
    let two_pi = core::f64::consts::TAU;

    let mut breaks = alloc::vec::Vec::new();
    push_edge_breaks(hot, t, &mut breaks);
    if mu_step > 0.0 {
        breaks.push(mu_step / t);
    }

    let delta = move |e: f64| {
        let f = occupation_raw((e - mu) / t, g);
        if e < mu_step {
            f - inv_g
        } else {
            f
        }
    };

    let energy = t * t / two_pi
        * quad::integrate_semi_infinite_with_breaks(|y| y * delta(y * t), 0.0, &breaks, rel_tol)?;
    let number = t / two_pi
        * quad::integrate_semi_infinite_with_breaks(|y| delta(y * t), 0.0, &breaks, rel_tol)?;
    let entropy = entropy_side(hot, g, rel_tol)?;
    Ok((sign * energy, sign * entropy, sign * number))
}

/// Net currents `left - right`, with one-sided heat currents.
///
/// Zero-temperature reservoirs are routed through the closed form;
/// finite-temperature nets come from difference integrands (see
/// `net_flows`). `net_heat` is populated only when `mu_L` and `mu_R`
/// agree exactly.
pub fn net_currents(setup: &ChannelSetup) -> Result<Currents, TransportError> {
    net_currents_with_tol(setup, DEFAULT_REL_TOL)
}

/// [`net_currents`] with an explicit quadrature tolerance.
pub fn net_currents_with_tol(
    setup: &ChannelSetup,
    rel_tol: f64,
) -> Result<Currents, TransportError> {
    let nets = net_flows(setup, rel_tol)?;
    let left = resolve_side(setup.left, setup.g, rel_tol)?;
    let right = resolve_side(setup.right, setup.g, rel_tol)?;

    Ok(Currents {
        net_energy: nets.energy,
        net_entropy: nets.entropy,
        net_number: nets.number,
        net_heat: nets.heat,
        left_heat: left.heat(setup.left.chemical_potential),
        right_heat: right.heat(setup.right.chemical_potential),
    })
}

/// Net fermion energy and entropy currents from the transformed
/// (Sommerfeld-style) expressions, used as a cross-validation oracle for
/// [`net_currents`].
///
/// The net currents are written as degenerate leading terms plus boundary
/// integrals:
///
/// ```text
/// E' = (pi T_L^2/12) [ 1 - r^2 + 3 (mu_L^2 - mu_R^2)/(pi T_L)^2
///        + (6/pi^2) ( I_E(mu_L/T_L) - r^2 I_E(mu_R/T_R) ) ]
/// S' = (pi T_L/6)   [ 1 - r  + (3/pi^2) ( I_S(mu_L/T_L) - r I_S(mu_R/T_R) ) ]
/// ```
///
/// with `r = T_R/T_L`, `I_E(a) = int_a^inf (a - x) f(x) dx` and
/// `I_S(a) = int_a^inf [f ln f + (1-f) ln(1-f)] dx` over the Fermi
/// function.
pub fn fermion_sommerfeld_currents(setup: &ChannelSetup) -> Result<(f64, f64), TransportError> {
    fermion_sommerfeld_currents_with_tol(setup, DEFAULT_REL_TOL)
}

/// [`fermion_sommerfeld_currents`] with an explicit quadrature tolerance.
#[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN temperatures must fail
pub fn fermion_sommerfeld_currents_with_tol(
    setup: &ChannelSetup,
    rel_tol: f64,
) -> Result<(f64, f64), TransportError> {
    if !setup.g.is_fermi() {
        return Err(TransportError::SommerfeldRequiresFermi { g: setup.g });
    }
    let (t_l, t_r) = (setup.left.temperature, setup.right.temperature);
    if !(t_l > 0.0) {
        return Err(TransportError::NonPositiveTemperature { temperature: t_l });
    }
    if !(t_r > 0.0) {
        return Err(TransportError::NonPositiveTemperature { temperature: t_r });
    }
    let (mu_l, mu_r) = (
        setup.left.chemical_potential,
        setup.right.chemical_potential,
    );
    let pi = core::f64::consts::PI;
    let r = t_r / t_l;
    let a_l = mu_l / t_l;
    let a_r = mu_r / t_r;

    let fermi = StatParam::FERMI;
    let i_energy =
        |a: f64| quad::integrate_semi_infinite(|x| (a - x) * occupation_raw(x, fermi), a, rel_tol);
    let i_entropy =
        |a: f64| quad::integrate_semi_infinite(|x| -entropy_density_raw(x, fermi), a, rel_tol);

    let (ie_l, is_l) = (i_energy(a_l)?, i_entropy(a_l)?);
    let (ie_r, is_r) = if a_l == a_r {
        (ie_l, is_l)
    } else {
        (i_energy(a_r)?, i_entropy(a_r)?)
    };

    let energy = pi * t_l * t_l / 12.0
        * (1.0 - r * r
            + 3.0 * (mu_l * mu_l - mu_r * mu_r) / (pi * t_l * pi * t_l)
            + 6.0 / (pi * pi) * (ie_l - r * r * ie_r));
    let entropy = pi * t_l / 6.0 * (1.0 - r + 3.0 / (pi * pi) * (is_l - r * is_r));
    Ok((energy, entropy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use core::f64::consts::PI;

    #[test]
    fn rejects_invalid_domains() {
        let g0 = StatParam::BOSE;
        assert!(matches!(
            side_currents(Reservoir::new(0.0, 0.0), g0),
            Err(TransportError::NonPositiveTemperature { .. })
        ));
        assert!(matches!(
            side_currents(Reservoir::new(1.0, 0.5), g0),
            Err(TransportError::BoseChemicalPotential { .. })
        ));
        assert!(matches!(
            zero_temperature_side(1.0, g0),
            Err(TransportError::BoseChemicalPotential { .. })
        ));
        assert!(matches!(
            zero_temperature_side(-1.0, StatParam::FERMI),
            Err(TransportError::ZeroTemperatureDomain { .. })
        ));
    }

    #[test]
    fn zero_temperature_closed_forms() {
        // empty reservoir
        let s = zero_temperature_side(0.0, StatParam::SEMION).unwrap();
        assert_eq!((s.energy, s.entropy, s.number), (0.0, 0.0, 0.0));
        // unit occupation fermions on [0, 1]
        let s = zero_temperature_side(1.0, StatParam::FERMI).unwrap();
        assert_relative_eq!(s.energy, 1.0 / (4.0 * PI), max_relative = 1e-15);
        assert_relative_eq!(s.number, 1.0 / (2.0 * PI), max_relative = 1e-15);
        assert_eq!(s.entropy, 0.0);
        // occupation 1/g = 2 doubles both
        let s = zero_temperature_side(1.0, StatParam::SEMION).unwrap();
        assert_relative_eq!(s.energy, 1.0 / (2.0 * PI), max_relative = 1e-15);
        assert_relative_eq!(s.number, 1.0 / PI, max_relative = 1e-15);
    }

    #[test]
    fn bose_number_current_diverges_at_zero_mu() {
        let s = side_currents(Reservoir::new(1.0, 0.0), StatParam::BOSE).unwrap();
        assert!(s.number.is_infinite());
        assert!(s.energy.is_finite() && s.entropy.is_finite());
    }

    #[test]
    fn net_heat_requires_exact_potential_equality() {
        let g = StatParam::FERMI;
        let base = Reservoir::new(1.0, 0.3);
        let setup = ChannelSetup {
            g,
            left: base,
            right: Reservoir::new(0.5, 0.3),
        };
        assert!(net_currents(&setup).unwrap().net_heat.is_some());
        let setup = ChannelSetup {
            g,
            left: base,
            right: Reservoir::new(0.5, 0.3 + 1e-12),
        };
        assert!(net_currents(&setup).unwrap().net_heat.is_none());
    }

    #[test]
    fn symmetric_setup_has_zero_net_currents() {
        for (g, mu) in [
            (StatParam::BOSE, -0.7),
            (StatParam::FERMI, 5.0),
            (StatParam::SEMION, 1.2),
        ] {
            let res = Reservoir::new(1.3, mu);
            let c = net_currents(&ChannelSetup {
                g,
                left: res,
                right: res,
            })
            .unwrap();
            assert_eq!(c.net_energy, 0.0);
            assert_eq!(c.net_entropy, 0.0);
            assert_eq!(c.net_number, 0.0);
            assert_eq!(c.net_heat, Some(0.0));
        }
    }

    #[test]
    fn both_reservoirs_cold() {
        // two empty boson baths carry nothing
        let setup = ChannelSetup {
            g: StatParam::BOSE,
            left: Reservoir::new(0.0, -1.0),
            right: Reservoir::new(0.0, 0.0),
        };
        let c = net_currents(&setup).unwrap();
        assert_eq!((c.net_energy, c.net_entropy, c.net_number), (0.0, 0.0, 0.0));
        // two filled fermion steps differ by the exact closed forms
        let setup = ChannelSetup {
            g: StatParam::FERMI,
            left: Reservoir::new(0.0, 2.0),
            right: Reservoir::new(0.0, 1.0),
        };
        let c = net_currents(&setup).unwrap();
        assert_relative_eq!(c.net_energy, 3.0 / (4.0 * PI), max_relative = 1e-14);
        assert_relative_eq!(c.net_number, 1.0 / (2.0 * PI), max_relative = 1e-14);
        assert_eq!(c.net_entropy, 0.0);
        // filled step against an empty bath
        let setup = ChannelSetup {
            g: StatParam::FERMI,
            left: Reservoir::new(0.0, 1.0),
            right: Reservoir::new(0.0, -3.0),
        };
        let c = net_currents(&setup).unwrap();
        assert_relative_eq!(c.net_energy, 1.0 / (4.0 * PI), max_relative = 1e-14);
    }

    #[test]
    fn boson_against_zero_temperature_right() {
        // net currents equal the left closed forms when the right bath is empty
        let setup = ChannelSetup {
            g: StatParam::BOSE,
            left: Reservoir::new(1.0, 0.0),
            right: Reservoir::new(0.0, 0.0),
        };
        let c = net_currents(&setup).unwrap();
        assert_relative_eq!(c.net_energy, PI / 12.0, max_relative = 1e-11);
        assert_relative_eq!(c.net_entropy, PI / 6.0, max_relative = 1e-11);
    }

    #[test]
    fn sommerfeld_identical_reservoirs_vanish() {
        let res = Reservoir::new(1.0, 5.0);
        let setup = ChannelSetup {
            g: StatParam::FERMI,
            left: res,
            right: res,
        };
        let (e, s) = fermion_sommerfeld_currents(&setup).unwrap();
        assert_eq!(e, 0.0);
        assert_eq!(s, 0.0);
    }

    #[test]
    fn sommerfeld_rejects_non_fermions() {
        let res = Reservoir::new(1.0, 0.0);
        let setup = ChannelSetup {
            g: StatParam::SEMION,
            left: res,
            right: res,
        };
        assert!(matches!(
            fermion_sommerfeld_currents(&setup),
            Err(TransportError::SommerfeldRequiresFermi { .. })
        ));
    }

    #[test]
    fn degenerate_fermion_net_energy_reaches_boson_form() {
        // mu/T = 50: only the universal T^2 term survives in the net flow
        let t_l = 0.02;
        let setup = ChannelSetup {
            g: StatParam::FERMI,
            left: Reservoir::new(t_l, 1.0),
            right: Reservoir::new(0.0, 1.0),
        };
        let c = net_currents(&setup).unwrap();
        assert_relative_eq!(c.net_energy, PI * t_l * t_l / 12.0, max_relative = 1e-6);
        assert_relative_eq!(c.net_entropy, PI * t_l / 6.0, max_relative = 1e-6);
    }
}
