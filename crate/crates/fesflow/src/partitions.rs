//! Exact restricted partition counts and wideband capacity formulas.
//!
//! A message of total reduced energy `N h / T` on a wideband channel is
//! an integer partition of `N`; the exclusion rule caps how often a part
//! may repeat (unlimited for bosons, once for fermions, `n` times for
//! `g = 1/n`). Counts are exact big integers; two independent counting
//! routes are provided:
//!
//! - [`count_partitions`]: an Euler-function (pentagonal-number) route.
//!   The multiplicity-capped generating function factors as
//!   `prod (1-q^{k(m+1)})/(1-q^k) = E(q^{m+1}) P(q)`, so one table of
//!   unrestricted counts serves every cap through a sparse alternating
//!   sum. `O(N^{3/2})` big-integer operations.
//! - [`count_partitions_dp`]: the direct bounded-multiplicity dynamic
//!   program over parts `1..=N`, `O(N^2)`.
//!
//! For `0 < g < 1` the multiplicity cap is a necessary but not complete
//! description of the allowed occupation patterns (the full exclusion
//! rule imposes further constraints), so capped counts are upper bounds
//! there; only the `g` in `{0, 1}` counts and the coefficient route of
//! [`capacity_coefficient`] are exact statements.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{One, ToPrimitive, Zero};

use crate::stat::StatParam;
use crate::transport::{side_currents, Reservoir, TransportError};
use crate::units::PLANCK_H;

/// Resource guard for exact counting.
pub const MAX_PARTITION_N: u64 = 1_000_000;

/// How often a part may repeat in a partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Multiplicity {
    /// No cap (bosons).
    Unlimited,
    /// Each part at most this many times (`1` = distinct parts/fermions).
    AtMost(u32),
}

impl Multiplicity {
    fn validate(self) -> Result<Self, PartitionError> {
        match self {
            Multiplicity::AtMost(0) => Err(PartitionError::ZeroMultiplicity),
            m => Ok(m),
        }
    }
}

/// The multiplicity rule induced by a statistics parameter: unlimited for
/// `g = 0`, `n` for `g = 1/n`. `None` when `g` is not a unit fraction, in
/// which case the exclusion rule has no plain multiplicity form.
pub fn multiplicity_for(g: StatParam) -> Option<Multiplicity> {
    if g.is_bose() {
        Some(Multiplicity::Unlimited)
    } else {
        g.unit_fraction_multiplicity().map(Multiplicity::AtMost)
    }
}

/// An exact partition count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionCount(pub BigUint);

impl PartitionCount {
    /// The count as a big integer.
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    /// `log2` of the count as a float (entropy in bits); exact counts can
    /// be far beyond `f64` range, so this goes through the bit length.
    pub fn log2(&self) -> f64 {
        log2_biguint(&self.0)
    }
}

impl fmt::Display for PartitionCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn log2_biguint(b: &BigUint) -> f64 {
    if b.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = b.bits();
    if bits <= 53 {
        return (b.to_u64().expect("fits in 53 bits") as f64).log2();
    }
    let shift = bits - 53;
    let top = (b >> shift).to_u64().expect("53-bit slice fits");
    (top as f64).log2() + shift as f64
}

/// Errors from the counting layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionError {
    /// `n` exceeds the resource guard.
    TooLarge {
        /// Requested size.
        n: u64,
        /// The guard.
        limit: u64,
    },
    /// Multiplicity cap of zero admits no partitions but the empty one;
    /// a positive cap is required.
    ZeroMultiplicity,
    /// An asymptotic capacity formula evaluated to a non-positive rate,
    /// outside its regime of validity.
    AsymptoticsOutOfRange,
}

impl fmt::Display for PartitionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionError::TooLarge { n, limit } => {
                write!(f, "partition size {n} exceeds the resource guard {limit}")
            }
            PartitionError::ZeroMultiplicity => write!(f, "multiplicity cap must be positive"),
            PartitionError::AsymptoticsOutOfRange => {
                write!(
                    f,
                    "asymptotic capacity is non-positive; formula invalid in this regime"
                )
            }
        }
    }
}

impl core::error::Error for PartitionError {}

/// Table of unrestricted partition counts `p(0..=n)` built with the
/// pentagonal-number recurrence; serves every multiplicity cap via the
/// sparse alternating sum described in the module docs.
pub struct PartitionTable {
    p: Vec<BigUint>,
}

impl PartitionTable {
    /// Builds `p(0..=n)`.
    pub fn up_to(n: u64) -> Result<PartitionTable, PartitionError> {
        if n > MAX_PARTITION_N {
            return Err(PartitionError::TooLarge {
                n,
                limit: MAX_PARTITION_N,
            });
        }
        let n = n as usize;
        let mut p: Vec<BigUint> = Vec::with_capacity(n + 1);
        p.push(BigUint::one());
        for i in 1..=n {
            let mut sum_pos = BigUint::zero();
            let mut sum_neg = BigUint::zero();
            let mut k = 1usize;
            loop {
                let g1 = k * (3 * k - 1) / 2;
                if g1 > i {
                    break;
                }
                let positive = k % 2 == 1;
                if positive {
                    sum_pos += &p[i - g1];
                } else {
                    sum_neg += &p[i - g1];
                }
                let g2 = k * (3 * k + 1) / 2;
                if g2 <= i {
                    if positive {
                        sum_pos += &p[i - g2];
                    } else {
                        sum_neg += &p[i - g2];
                    }
                }
                k += 1;
            }
            p.push(sum_pos - sum_neg);
        }
        Ok(PartitionTable { p })
    }

    /// Largest `n` the table covers.
    pub fn max_n(&self) -> u64 {
        (self.p.len() - 1) as u64
    }

    /// Unrestricted `p(n)`.
    pub fn unrestricted(&self, n: u64) -> &BigUint {
        &self.p[n as usize]
    }

    /// Count of partitions of `n` with each part appearing at most
    /// `max_multiplicity` times.
    pub fn count(
        &self,
        n: u64,
        max_multiplicity: Multiplicity,
    ) -> Result<PartitionCount, PartitionError> {
        let m = match max_multiplicity.validate()? {
            Multiplicity::Unlimited => return Ok(PartitionCount(self.p[n as usize].clone())),
            Multiplicity::AtMost(m) => m as usize,
        };
        let n = n as usize;
        if m >= n.max(1) {
            // cap never binds
            return Ok(PartitionCount(self.p[n].clone()));
        }
        let step = m + 1;
        let mut sum_pos = self.p[n].clone();
        let mut sum_neg = BigUint::zero();
        let mut k = 1usize;
        loop {
            let g1 = step * (k * (3 * k - 1) / 2);
            if g1 > n {
                break;
            }
            let positive = k.is_multiple_of(2);
            if positive {
                sum_pos += &self.p[n - g1];
            } else {
                sum_neg += &self.p[n - g1];
            }
            let g2 = step * (k * (3 * k + 1) / 2);
            if g2 <= n {
                if positive {
                    sum_pos += &self.p[n - g2];
                } else {
                    sum_neg += &self.p[n - g2];
                }
            }
            k += 1;
        }
        Ok(PartitionCount(sum_pos - sum_neg))
    }
}

/// Exact count of partitions of `n` with each part appearing at most
/// `max_multiplicity` times. `Unlimited` reproduces `p(n)`,
/// `AtMost(1)` the distinct-parts count `q(n)`.
pub fn count_partitions(
    n: u64,
    max_multiplicity: Multiplicity,
) -> Result<PartitionCount, PartitionError> {
    PartitionTable::up_to(n)?.count(n, max_multiplicity)
}

/// The same count through the direct `O(N^2)` dynamic program, kept as an
/// independent route for cross-validation.
pub fn count_partitions_dp(
    n: u64,
    max_multiplicity: Multiplicity,
) -> Result<PartitionCount, PartitionError> {
    if n > MAX_PARTITION_N {
        return Err(PartitionError::TooLarge {
            n,
            limit: MAX_PARTITION_N,
        });
    }
    let cap = match max_multiplicity.validate()? {
        Multiplicity::Unlimited => None,
        Multiplicity::AtMost(m) => Some(m as usize),
    };
    let n = n as usize;
    let mut dp: Vec<BigUint> = vec![BigUint::zero(); n + 1];
    dp[0] = BigUint::one();

    if cap == Some(1) {
        // distinct parts: one descending 0/1-knapsack pass per part
        for k in 1..=n {
            for j in (k..=n).rev() {
                let add = dp[j - k].clone();
                dp[j] += add;
            }
        }
    } else {
        for k in 1..=n {
            // multiply by 1/(1-q^k)
            for j in k..=n {
                let add = dp[j - k].clone();
                dp[j] += add;
            }
            // then by (1-q^{k(m+1)}) to cut multiplicities above the cap
            if let Some(m) = cap {
                let cut = k * (m + 1);
                if cut <= n {
                    for j in (cut..=n).rev() {
                        let sub = dp[j - cut].clone();
                        dp[j] -= sub;
                    }
                }
            }
        }
    }
    Ok(PartitionCount(dp.swap_remove(n)))
}

/// All partitions of `n` under the multiplicity cap, as explicit part
/// lists in descending part order. The list length equals the exact
/// count; this is the enumeration route behind the Fock letter spaces.
pub fn enumerate_partitions(
    n: u32,
    max_multiplicity: Multiplicity,
) -> Result<Vec<Vec<u32>>, PartitionError> {
    let cap = match max_multiplicity.validate()? {
        Multiplicity::Unlimited => u32::MAX,
        Multiplicity::AtMost(m) => m,
    };
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn recurse(
        remaining: u32,
        max_part: u32,
        cap: u32,
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        let mut part = max_part.min(remaining);
        while part >= 1 {
            let most = (remaining / part).min(cap);
            for copies in (1..=most).rev() {
                let used = part * copies;
                if used > remaining {
                    continue;
                }
                for _ in 0..copies {
                    current.push(part);
                }
                recurse(remaining - used, part - 1, cap, current, out);
                for _ in 0..copies {
                    current.pop();
                }
            }
            part -= 1;
        }
    }
    recurse(n, n, cap, &mut current, &mut out);
    Ok(out)
}

/// Asymptotic distinct-parts count
/// `exp(pi sqrt(n/3)) / (4 * 3^(1/4) * n^(3/4))`.
pub fn asymptotic_distinct_count(n: u64) -> f64 {
    assert!(n >= 1, "asymptotic count needs n >= 1");
    asymptotic_distinct_count_ln(n).exp()
}

/// Natural log of [`asymptotic_distinct_count`]; stays finite where the
/// count itself overflows `f64` (around `n = 1.5e5`).
pub fn asymptotic_distinct_count_ln(n: u64) -> f64 {
    assert!(n >= 1, "asymptotic count needs n >= 1");
    let n = n as f64;
    core::f64::consts::PI * (n / 3.0).sqrt() - (4.0 * 3.0f64.powf(0.25) * n.powf(0.75)).ln()
}

/// Whether a capacity is an exact finite-`N` value or an asymptotic one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// `log2(count)/T` from an exact count.
    Exact,
    /// Large-`N` asymptotics.
    Asymptotic,
}

/// A channel capacity in bits per unit time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CapacityResult {
    /// Bits per unit time.
    pub bits_per_time: f64,
    /// Which route produced it.
    pub regime: Regime,
}

/// Exact capacity `log2(count(n, m)) / time`.
pub fn exact_capacity(
    n: u64,
    max_multiplicity: Multiplicity,
    time: f64,
) -> Result<CapacityResult, PartitionError> {
    assert!(n >= 1, "exact capacity needs n >= 1");
    assert!(time > 0.0, "transmission time must be positive");
    let count = count_partitions(n, max_multiplicity)?;
    Ok(CapacityResult {
        bits_per_time: count.log2() / time,
        regime: Regime::Exact,
    })
}

/// Asymptotic optimum capacity of a wideband bosonic channel at fixed
/// power `p` (reduced units, `h = 2 pi`):
/// `(pi/ln 2) sqrt(2p/3h) - log2(4 sqrt(3) p t^2 / h) / t`.
pub fn capacity_boson_asym(p: f64, time: f64) -> Result<CapacityResult, PartitionError> {
    assert!(p > 0.0 && time > 0.0, "power and time must be positive");
    let lead =
        core::f64::consts::PI / core::f64::consts::LN_2 * (2.0 * p / (3.0 * PLANCK_H)).sqrt();
    let correction = (4.0 * 3.0f64.sqrt() * p * time * time / PLANCK_H).log2() / time;
    finite_capacity(lead - correction)
}

/// Asymptotic optimum capacity of a wideband fermionic channel:
/// `(pi/ln 2) sqrt(p/3h) - log2(4 * 3^(1/4) * (p t^2/h)^(3/4)) / t`.
pub fn capacity_fermion_asym(p: f64, time: f64) -> Result<CapacityResult, PartitionError> {
    assert!(p > 0.0 && time > 0.0, "power and time must be positive");
    let lead = core::f64::consts::PI / core::f64::consts::LN_2 * (p / (3.0 * PLANCK_H)).sqrt();
    let correction =
        (4.0 * 3.0f64.powf(0.25) * (p * time * time / PLANCK_H).powf(0.75)).log2() / time;
    finite_capacity(lead - correction)
}

fn finite_capacity(bits: f64) -> Result<CapacityResult, PartitionError> {
    if bits <= 0.0 {
        return Err(PartitionError::AsymptoticsOutOfRange);
    }
    Ok(CapacityResult {
        bits_per_time: bits,
        regime: Regime::Asymptotic,
    })
}

/// The statistics-independent capacity ceiling
/// `(pi/ln 2) sqrt(2p/3h)`; every finite-time capacity sits strictly
/// below it.
pub fn capacity_bound(p: f64) -> f64 {
    assert!(p > 0.0, "power must be positive");
    core::f64::consts::PI / core::f64::consts::LN_2 * (2.0 * p / (3.0 * PLANCK_H)).sqrt()
}

/// Leading capacity coefficient `c_g` with `C(T -> inf) = c_g sqrt(P/h)`.
///
/// Derived by eliminating `T` between the `mu = 0` currents
/// `S' = a_g T` and `E' = b_g T^2`: `c_g = (a_g / ln 2) sqrt(h / b_g)`.
pub fn capacity_coefficient(g: StatParam) -> Result<f64, TransportError> {
    let side = side_currents(Reservoir::new(1.0, 0.0), g)?;
    Ok(side.entropy / core::f64::consts::LN_2 * (PLANCK_H / side.energy).sqrt())
}

/// Capacity coefficients relative to the bosonic one, `c_g / c_0`, rows
/// ordered by ascending `g`. Endpoints are 1 and `1/sqrt(2)`, and the
/// curve decreases strictly in `g`.
pub fn capacity_ratio_curve(
    g_values: &[StatParam],
) -> Result<Vec<(StatParam, f64)>, TransportError> {
    let c0 = capacity_coefficient(StatParam::BOSE)?;
    let mut gs: Vec<StatParam> = g_values.to_vec();
    gs.sort();
    gs.dedup();
    let mut rows = Vec::with_capacity(gs.len());
    for g in gs {
        let ratio = if g.is_bose() {
            1.0
        } else {
            capacity_coefficient(g)? / c0
        };
        rows.push((g, ratio));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn count_u64(n: u64, m: Multiplicity) -> u64 {
        count_partitions(n, m).unwrap().value().to_u64().unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_u64(5, Multiplicity::Unlimited), 7);
        assert_eq!(count_u64(5, Multiplicity::AtMost(1)), 3); // 5, 4+1, 3+2
        assert_eq!(count_u64(5, Multiplicity::AtMost(2)), 5);
        assert_eq!(count_u64(0, Multiplicity::Unlimited), 1);
        assert_eq!(count_u64(0, Multiplicity::AtMost(1)), 1);
        assert_eq!(count_u64(1, Multiplicity::AtMost(3)), 1);
    }

    #[test]
    fn dp_route_matches_pentagonal_route() {
        for n in [0u64, 1, 2, 3, 7, 19, 40, 87, 120] {
            for m in [
                Multiplicity::Unlimited,
                Multiplicity::AtMost(1),
                Multiplicity::AtMost(2),
                Multiplicity::AtMost(3),
            ] {
                assert_eq!(
                    count_partitions_dp(n, m).unwrap(),
                    count_partitions(n, m).unwrap(),
                    "mismatch at n={n} m={m:?}"
                );
            }
        }
    }

    #[test]
    fn enumeration_matches_counts() {
        for n in 0..=22u32 {
            for m in [
                Multiplicity::Unlimited,
                Multiplicity::AtMost(1),
                Multiplicity::AtMost(2),
            ] {
                let listed = enumerate_partitions(n, m).unwrap();
                assert_eq!(listed.len() as u64, count_u64(n as u64, m), "n={n} m={m:?}");
                // every listed partition really sums to n and respects the cap
                for parts in &listed {
                    assert_eq!(parts.iter().sum::<u32>(), n);
                    if let Multiplicity::AtMost(cap) = m {
                        for &p in parts {
                            assert!(parts.iter().filter(|&&q| q == p).count() as u32 <= cap);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicity_cap_is_monotone() {
        for n in [9u64, 18, 33] {
            let unlimited = count_partitions(n, Multiplicity::Unlimited).unwrap();
            let mut prev = count_partitions(n, Multiplicity::AtMost(1)).unwrap();
            for m in 2..=n as u32 + 1 {
                let cur = count_partitions(n, Multiplicity::AtMost(m)).unwrap();
                assert!(prev.value() <= cur.value());
                assert!(cur.value() <= unlimited.value());
                prev = cur;
            }
            // cap >= n never binds
            assert_eq!(
                count_partitions(n, Multiplicity::AtMost(n as u32)).unwrap(),
                unlimited
            );
        }
    }

    #[test]
    fn zero_multiplicity_is_rejected() {
        assert_eq!(
            count_partitions(4, Multiplicity::AtMost(0)),
            Err(PartitionError::ZeroMultiplicity)
        );
        assert_eq!(
            count_partitions_dp(4, Multiplicity::AtMost(0)),
            Err(PartitionError::ZeroMultiplicity)
        );
    }

    #[test]
    fn resource_guard() {
        assert!(matches!(
            count_partitions(MAX_PARTITION_N + 1, Multiplicity::Unlimited),
            Err(PartitionError::TooLarge { .. })
        ));
    }

    #[test]
    fn log2_of_big_counts() {
        // p(200) = 3972999029388, log2 ~ 41.853
        let c = count_partitions(200, Multiplicity::Unlimited).unwrap();
        assert_eq!(c.value().to_u64(), Some(3972999029388));
        assert_relative_eq!(c.log2(), 3972999029388_f64.log2(), max_relative = 1e-12);
    }

    #[test]
    fn small_n_asymptotics_documented_error() {
        // q(1) = 1 but the asymptotic formula gives ~1.165
        let a = asymptotic_distinct_count(1);
        assert!(a > 1.1 && a < 1.2);
        assert_relative_eq!(
            a.ln(),
            asymptotic_distinct_count_ln(1),
            max_relative = 1e-12
        );
    }

    #[test]
    fn exact_capacity_values() {
        let c = exact_capacity(5, Multiplicity::Unlimited, 1.0).unwrap();
        assert_relative_eq!(c.bits_per_time, 7.0f64.log2(), max_relative = 1e-12);
        assert_eq!(c.regime, Regime::Exact);
        let c = exact_capacity(5, Multiplicity::AtMost(1), 1.0).unwrap();
        assert_relative_eq!(c.bits_per_time, 3.0f64.log2(), max_relative = 1e-12);
        // single partition carries zero entropy
        let c = exact_capacity(1, Multiplicity::AtMost(7), 2.0).unwrap();
        assert_eq!(c.bits_per_time, 0.0);
    }

    #[test]
    fn asymptotic_capacity_stays_positive_near_its_minimum() {
        // the subtraction never goes negative on p, t > 0; the joint
        // minimum sits near (p, t) = (4.5, 1.06) at ~0.176 bits for the
        // fermion form, so the domain guard is purely defensive
        let c = capacity_fermion_asym(4.5, 1.06).unwrap();
        assert!(
            c.bits_per_time > 0.17 && c.bits_per_time < 0.18,
            "got {}",
            c.bits_per_time
        );
        assert!(capacity_boson_asym(4.5, 1.06).unwrap().bits_per_time > c.bits_per_time);
        assert_eq!(c.regime, Regime::Asymptotic);
    }

    #[test]
    fn long_transmission_time_approaches_the_leading_term() {
        let p = 3.0;
        let lead = capacity_bound(p);
        let mut prev = f64::NEG_INFINITY;
        for time in [1.0, 10.0, 1e3, 1e6] {
            let c = capacity_boson_asym(p, time).unwrap().bits_per_time;
            assert!(c < lead, "finite time must stay below the ceiling");
            assert!(c > prev);
            prev = c;
        }
        assert_relative_eq!(prev, lead, max_relative = 1e-4);
    }

    #[test]
    fn coefficient_endpoints_match_closed_forms() {
        // c_0 = (pi/ln 2) sqrt(2/3), c_1 = pi/(sqrt(3) ln 2)
        let c0 = capacity_coefficient(StatParam::BOSE).unwrap();
        let c1 = capacity_coefficient(StatParam::FERMI).unwrap();
        assert_relative_eq!(c0, 3.700_656_559_335_007, max_relative = 1e-8);
        assert_relative_eq!(c1, 2.616_759_347_948_261, max_relative = 1e-8);
        assert_relative_eq!(
            c1 / c0,
            core::f64::consts::FRAC_1_SQRT_2,
            max_relative = 1e-8
        );
    }
}
