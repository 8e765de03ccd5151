//! Small exact rationals for exponents and thresholds.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational in lowest terms with a positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational(Ratio<i64>);

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Rational(Ratio::new(num, den)))
    }

    /// Panicking constructor for constants.
    pub const fn from_parts(num: i64, den: i64) -> Self {
        // Only used with literals already in lowest terms.
        Rational(Ratio::new_raw(num, den))
    }

    pub fn integer(n: i64) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `len / period` as an exact exponent.
    pub fn ratio(len: usize, period: usize) -> Self {
        Rational(Ratio::new(len as i64, period as i64))
    }

    /// Orders `len / period` against `self` without building the ratio.
    pub fn cmp_ratio(&self, len: usize, period: usize) -> Ordering {
        let lhs = len as i128 * self.denom() as i128;
        let rhs = self.numer() as i128 * period as i128;
        lhs.cmp(&rhs)
    }

    /// Smallest length whose ratio to `period` is at least `self`.
    pub fn ceil_times(&self, period: usize) -> usize {
        let n = self.numer() as i128 * period as i128;
        let d = self.denom() as i128;
        ((n + d - 1) / d).max(0) as usize
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.numer() as i128 * other.denom() as i128;
        let rhs = other.numer() as i128 * self.denom() as i128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `p/q`, an integer, or a finite decimal such as `2.117`.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            return Rational::new(p, q).map_err(|_| bad());
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || frac.len() > 12 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let den = 10i64.pow(frac.len() as u32);
            let whole: i64 = int.parse().map_err(|_| bad())?;
            let frac: i64 = frac.parse().map_err(|_| bad())?;
            let sign = if int.starts_with('-') { -1 } else { 1 };
            return Rational::new(whole * den + sign * frac, den);
        }
        s.parse::<i64>().map(Rational::integer).map_err(|_| bad())
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A power-freeness threshold: `alpha` or `alpha+`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize)]
pub struct Threshold {
    pub exponent: Rational,
    /// With `strict`, exponent exactly `exponent` is still allowed.
    pub strict: bool,
}

impl Threshold {
    pub fn new(exponent: Rational, strict: bool) -> Self {
        Threshold { exponent, strict }
    }

    /// True if a factor of this exponent is forbidden.
    pub fn forbids(&self, len: usize, period: usize) -> bool {
        match self.exponent.cmp_ratio(len, period) {
            Ordering::Greater => true,
            Ordering::Equal => !self.strict,
            Ordering::Less => false,
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.exponent, if self.strict { "+" } else { "" })
    }
}

impl FromStr for Threshold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.strip_suffix('+') {
            Some(rest) => Ok(Threshold::new(rest.parse()?, true)),
            None => Ok(Threshold::new(s.parse()?, false)),
        }
    }
}
