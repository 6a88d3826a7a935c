//! Exact ratio arithmetic.
//!
//! Set sums are `u64` (instances are validated so that `n * max(values)` fits),
//! so every comparison below cross-multiplies in `u128` and never overflows.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::error::{Error, Result};

/// A nonnegative rational extended with `+∞`, encoded as a zero denominator.
#[derive(Clone, Copy, Debug)]
pub struct ExtendedRational {
    num: u64,
    den: u64,
}

impl ExtendedRational {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 && den == 0 {
            return Err(Error::UndefinedRatio);
        }
        Ok(Self { num, den })
    }

    pub const fn infinity() -> Self {
        Self { num: 1, den: 0 }
    }

    pub const fn one() -> Self {
        Self { num: 1, den: 1 }
    }

    /// Largest-to-smallest ratio of a list of set sums; `+∞` when the
    /// smallest sum is zero.
    pub fn of_sums(sums: &[u64]) -> Self {
        let max = sums.iter().copied().max().unwrap_or(0);
        let min = sums.iter().copied().min().unwrap_or(0);
        if min == 0 {
            Self::infinity()
        } else {
            Self { num: max, den: min }
        }
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den == 0
    }

    /// Lowest-terms representation (infinity stays `1/0`).
    pub fn reduced(&self) -> Self {
        if self.is_infinite() {
            return Self::infinity();
        }
        let g = self.num.gcd(&self.den);
        Self { num: self.num / g, den: self.den / g }
    }

    /// Approximate value, for display only.
    pub fn to_f64(&self) -> f64 {
        if self.is_infinite() {
            f64::INFINITY
        } else {
            self.num as f64 / self.den as f64
        }
    }

    /// `self <= (1 + eps) * other`, decided exactly.
    pub fn within_factor_of(&self, other: &Self, eps: Fraction) -> bool {
        self.within_scaled(other, eps.den + eps.num, eps.den)
    }

    /// `self <= (scale_num / scale_den) * other`, decided exactly.
    pub fn within_scaled(&self, other: &Self, scale_num: u64, scale_den: u64) -> bool {
        match (self.is_infinite(), other.is_infinite()) {
            (_, true) => true,
            (true, false) => false,
            (false, false) => {
                let lhs = BigUint::from(self.num) * other.den * scale_den;
                let rhs = BigUint::from(other.num) * self.den * scale_num;
                lhs <= rhs
            }
        }
    }
}

impl PartialEq for ExtendedRational {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ExtendedRational {}

impl PartialOrd for ExtendedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => {
                let lhs = self.num as u128 * other.den as u128;
                let rhs = other.num as u128 * self.den as u128;
                lhs.cmp(&rhs)
            }
        }
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// A positive fraction `num/den` in lowest terms, used for error parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: u64,
    den: u64,
}

impl Fraction {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::InvalidFraction(format!("{num}/{den}")));
        }
        let g = num.gcd(&den);
        Ok(Self { num: num / g, den: den / g })
    }

    /// A fraction strictly between 0 and 1, as required for every error
    /// parameter.
    pub fn epsilon(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 || num >= den {
            return Err(Error::EpsilonOutOfRange { num, den });
        }
        Self::new(num, den)
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn is_proper(&self) -> bool {
        self.num < self.den
    }

    /// `self / d`, exact.
    pub fn div_int(&self, d: u64) -> Result<Self> {
        let den = self.den.checked_mul(d).ok_or(Error::ValueOverflow)?;
        Self::new(self.num, den)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    /// Accepts `"a/b"` or a plain decimal such as `"0.125"`; decimals are
    /// converted digit by digit, never through binary floating point.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidFraction(s.to_string());
        if let Some((n, d)) = s.split_once('/') {
            let num = n.trim().parse::<u64>().map_err(|_| bad())?;
            let den = d.trim().parse::<u64>().map_err(|_| bad())?;
            return Self::new(num, den).map_err(|_| bad());
        }
        let (int_part, frac_part) = s.split_once('.').unwrap_or((s, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
        if !all_digits(int_part) || !all_digits(frac_part) || frac_part.len() > 18 {
            return Err(bad());
        }
        let den = 10u64.pow(frac_part.len() as u32);
        let int_val: u64 = if int_part.is_empty() { 0 } else { int_part.parse().map_err(|_| bad())? };
        let frac_val: u64 = if frac_part.is_empty() { 0 } else { frac_part.parse().map_err(|_| bad())? };
        let num = int_val
            .checked_mul(den)
            .and_then(|v| v.checked_add(frac_val))
            .ok_or_else(bad)?;
        Self::new(num, den).map_err(|_| bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_dominates() {
        let inf = ExtendedRational::infinity();
        assert!(inf > ExtendedRational::new(u64::MAX, 1).unwrap());
        assert_eq!(inf, ExtendedRational::new(7, 0).unwrap());
        assert!(ExtendedRational::new(0, 0).is_err());
    }

    #[test]
    fn equality_is_by_value() {
        let a = ExtendedRational::new(56, 44).unwrap();
        let b = ExtendedRational::new(14, 11).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.reduced().numer(), 14);
    }

    #[test]
    fn of_sums_handles_zero() {
        assert!(ExtendedRational::of_sums(&[3, 0, 5]).is_infinite());
        assert_eq!(ExtendedRational::of_sums(&[40, 50, 51, 49]), ExtendedRational::new(51, 40).unwrap());
    }

    #[test]
    fn decimal_epsilon_is_exact() {
        assert_eq!("0.1".parse::<Fraction>().unwrap(), Fraction::new(1, 10).unwrap());
        assert_eq!("1/10".parse::<Fraction>().unwrap(), Fraction::new(1, 10).unwrap());
        assert_eq!(".25".parse::<Fraction>().unwrap(), Fraction::new(1, 4).unwrap());
        assert_eq!("2".parse::<Fraction>().unwrap(), Fraction::new(2, 1).unwrap());
        assert!("abc".parse::<Fraction>().is_err());
        assert!("1/0".parse::<Fraction>().is_err());
        assert!("0.".parse::<Fraction>().is_err());
        assert!(Fraction::epsilon(1, 1).is_err());
        assert!(Fraction::epsilon(2, 1).is_err());
    }

    #[test]
    fn within_factor() {
        let r = ExtendedRational::new(11, 10).unwrap();
        let eps = Fraction::new(1, 10).unwrap();
        assert!(r.within_factor_of(&ExtendedRational::one(), eps));
        let r = ExtendedRational::new(111, 100).unwrap();
        assert!(!r.within_factor_of(&ExtendedRational::one(), eps));
        assert!(ExtendedRational::infinity().within_factor_of(&ExtendedRational::infinity(), eps));
        assert!(!ExtendedRational::infinity().within_factor_of(&ExtendedRational::one(), eps));
    }
}
