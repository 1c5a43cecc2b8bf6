//! Exact rational statistics parameter.

use core::fmt;
use core::str::FromStr;

use num_integer::Integer;

/// The statistics parameter `g`, stored as an exact fraction in lowest
/// terms with `0 <= g <= 1`.
///
/// `g = 0` selects bosons, `g = 1` fermions and `g = 1/2` semions; those
/// three values dispatch to closed-form occupation functions, everything
/// else goes through the iterative solver. Keeping `g` rational makes the
/// dispatch exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StatParam {
    num: u32,
    den: u32,
}

impl PartialOrd for StatParam {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for StatParam {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        // exact cross-multiplied comparison
        let lhs = u64::from(self.num) * u64::from(other.den);
        let rhs = u64::from(other.num) * u64::from(self.den);
        lhs.cmp(&rhs)
    }
}

/// Construction error for [`StatParam`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StatParamError {
    /// Denominator was zero.
    ZeroDenominator,
    /// The fraction lies outside `[0, 1]`.
    OutOfRange,
    /// String form was not `p`, `p/q` or a short decimal.
    Unparseable,
}

impl fmt::Display for StatParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatParamError::ZeroDenominator => {
                write!(f, "statistics parameter has zero denominator")
            }
            StatParamError::OutOfRange => write!(f, "statistics parameter must lie in [0, 1]"),
            StatParamError::Unparseable => write!(
                f,
                "statistics parameter must be `p`, `p/q` or a short decimal"
            ),
        }
    }
}

impl core::error::Error for StatParamError {}

impl StatParam {
    /// Bose statistics, `g = 0`.
    pub const BOSE: StatParam = StatParam { num: 0, den: 1 };
    /// Fermi statistics, `g = 1`.
    pub const FERMI: StatParam = StatParam { num: 1, den: 1 };
    /// Semion statistics, `g = 1/2`.
    pub const SEMION: StatParam = StatParam { num: 1, den: 2 };

    /// Builds `g = num/den`, reduced to lowest terms.
    pub fn new(num: u32, den: u32) -> Result<StatParam, StatParamError> {
        if den == 0 {
            return Err(StatParamError::ZeroDenominator);
        }
        if num > den {
            return Err(StatParamError::OutOfRange);
        }
        let d = num.gcd(&den);
        Ok(StatParam {
            num: num / d,
            den: den / d,
        })
    }

    /// Numerator of the reduced fraction.
    pub fn numerator(&self) -> u32 {
        self.num
    }

    /// Denominator of the reduced fraction.
    pub fn denominator(&self) -> u32 {
        self.den
    }

    /// `g` as a float.
    pub fn value(&self) -> f64 {
        f64::from(self.num) / f64::from(self.den)
    }

    /// `true` for `g = 0`.
    pub fn is_bose(&self) -> bool {
        self.num == 0
    }

    /// `true` for `g = 1`.
    pub fn is_fermi(&self) -> bool {
        self.num == self.den
    }

    /// `true` for `g = 1/2`.
    pub fn is_semion(&self) -> bool {
        self.num == 1 && self.den == 2
    }

    /// For `g = 1/n` returns `n`, the maximum occupation of a single mode.
    ///
    /// `None` for `g = 0` (unlimited) and for fractions that are not unit
    /// fractions, where the exclusion rule is not a plain multiplicity cap.
    pub fn unit_fraction_multiplicity(&self) -> Option<u32> {
        (self.num == 1).then_some(self.den)
    }

    /// All reduced fractions `p/q` in `[0, 1]` with `q <= max_denominator`,
    /// ascending (the Farey sequence).
    pub fn farey_sequence(max_denominator: u32) -> alloc::vec::Vec<StatParam> {
        let mut gs: alloc::vec::Vec<StatParam> = alloc::vec::Vec::new();
        for den in 1..=max_denominator.max(1) {
            for num in 0..=den {
                let g = StatParam::new(num, den).expect("fraction in range");
                if !gs.contains(&g) {
                    gs.push(g);
                }
            }
        }
        gs.sort();
        gs
    }
}

impl fmt::Display for StatParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for StatParam {
    type Err = StatParamError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let num: u32 = n.trim().parse().map_err(|_| StatParamError::Unparseable)?;
            let den: u32 = d.trim().parse().map_err(|_| StatParamError::Unparseable)?;
            return StatParam::new(num, den);
        }
        if let Ok(num) = s.parse::<u32>() {
            return StatParam::new(num, 1);
        }
        // short decimals like 0.25 map onto den = 10^k
        if let Some((int, frac)) = s.split_once('.') {
            if frac.len() <= 6 && !frac.is_empty() {
                let int: u32 = if int.is_empty() {
                    0
                } else {
                    int.parse().map_err(|_| StatParamError::Unparseable)?
                };
                let f: u32 = frac.parse().map_err(|_| StatParamError::Unparseable)?;
                let den = 10u32.pow(frac.len() as u32);
                return StatParam::new(int * den + f, den);
            }
        }
        Err(StatParamError::Unparseable)
    }
}
