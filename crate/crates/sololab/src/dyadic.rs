//! Exact dyadic rationals `mantissa * 2^-exponent`.
//!
//! Every quantity in this crate (program masses, semimeasure values,
//! mixture weights, dominance constants) is a finite sum of powers of
//! two, so all arithmetic here is exact and comparisons are decidable.
//! There is no rounding anywhere.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Canonical form: the exponent is minimal, i.e. the mantissa is odd
/// unless the exponent is zero, and zero is stored as `0 * 2^0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    mantissa: BigInt,
    exponent: u64,
}

impl DyadicRational {
    pub fn new(mantissa: BigInt, exponent: u64) -> Self {
        let mut d = DyadicRational { mantissa, exponent };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        DyadicRational {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        DyadicRational {
            mantissa: BigInt::one(),
            exponent: 0,
        }
    }

    pub fn from_integer(n: i64) -> Self {
        DyadicRational {
            mantissa: BigInt::from(n),
            exponent: 0,
        }
    }

    /// The value `2^-k`.
    pub fn pow2_neg(k: u64) -> Self {
        DyadicRational {
            mantissa: BigInt::one(),
            exponent: k,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn halve(&self) -> Self {
        DyadicRational::new(self.mantissa.clone(), self.exponent + 1)
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exponent = 0;
            return;
        }
        while self.exponent > 0 && (&self.mantissa % 2_i32).is_zero() {
            self.mantissa /= 2_i32;
            self.exponent -= 1;
        }
    }

    /// Aligns both operands to a common exponent.
    fn aligned(&self, other: &Self) -> (BigInt, BigInt, u64) {
        let e = self.exponent.max(other.exponent);
        let a = &self.mantissa << (e - self.exponent);
        let b = &other.mantissa << (e - other.exponent);
        (a, b, e)
    }

    /// Approximate float value; for human-facing logs only.
    pub fn to_f64_lossy(&self) -> f64 {
        let mut m = self.mantissa.clone();
        let mut e = self.exponent as i64;
        // Keep the mantissa in f64 range while shedding exponent.
        let limit = BigInt::from(1_i64 << 52);
        while m.abs() > limit && e > 0 {
            m /= 2_i32;
            e -= 1;
        }
        let mf: f64 = m.to_string().parse().unwrap_or(f64::NAN);
        mf * 2f64.powi(-(e as i32))
    }
}

impl Add for &DyadicRational {
    type Output = DyadicRational;

    fn add(self, rhs: &DyadicRational) -> DyadicRational {
        let (a, b, e) = self.aligned(rhs);
        DyadicRational::new(a + b, e)
    }
}

impl Sub for &DyadicRational {
    type Output = DyadicRational;

    fn sub(self, rhs: &DyadicRational) -> DyadicRational {
        let (a, b, e) = self.aligned(rhs);
        DyadicRational::new(a - b, e)
    }
}

impl Mul for &DyadicRational {
    type Output = DyadicRational;

    fn mul(self, rhs: &DyadicRational) -> DyadicRational {
        DyadicRational::new(&self.mantissa * &rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl Add for DyadicRational {
    type Output = DyadicRational;
    fn add(self, rhs: DyadicRational) -> DyadicRational {
        &self + &rhs
    }
}

impl Sub for DyadicRational {
    type Output = DyadicRational;
    fn sub(self, rhs: DyadicRational) -> DyadicRational {
        &self - &rhs
    }
}

impl Mul for DyadicRational {
    type Output = DyadicRational;
    fn mul(self, rhs: DyadicRational) -> DyadicRational {
        &self * &rhs
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::iter::Sum for DyadicRational {
    fn sum<I: Iterator<Item = DyadicRational>>(iter: I) -> Self {
        iter.fold(DyadicRational::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.mantissa)
        } else {
            write!(f, "{}/2^{}", self.mantissa, self.exponent)
        }
    }
}

impl fmt::Debug for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl serde::Serialize for DyadicRational {
    /// Serializes as `{mantissa, exponent}` with the mantissa as a
    /// decimal string, so arbitrarily large values survive JSON.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("DyadicRational", 2)?;
        st.serialize_field("mantissa", &self.mantissa.to_string())?;
        st.serialize_field("exponent", &self.exponent)?;
        st.end()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DyadicParseError {
    #[error("malformed dyadic rational: {0:?}")]
    Malformed(String),
    #[error("denominator {0} is not a power of two")]
    NonDyadic(String),
}

impl FromStr for DyadicRational {
    type Err = DyadicParseError;

    /// Accepts `m`, `m/2^e`, and `m/d` where `d` is a power of two.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let malformed = || DyadicParseError::Malformed(s.to_string());
        match s.split_once('/') {
            None => {
                let m: BigInt = s.parse().map_err(|_| malformed())?;
                Ok(DyadicRational::new(m, 0))
            }
            Some((num, den)) => {
                let m: BigInt = num.trim().parse().map_err(|_| malformed())?;
                let den = den.trim();
                if let Some(exp) = den.strip_prefix("2^") {
                    let e: u64 = exp.trim().parse().map_err(|_| malformed())?;
                    return Ok(DyadicRational::new(m, e));
                }
                let d: BigInt = den.parse().map_err(|_| malformed())?;
                if d <= BigInt::zero() {
                    return Err(malformed());
                }
                // d must be 2^e for some e >= 0.
                let mut e = 0u64;
                let mut v = d.clone();
                while (&v % 2_i32).is_zero() {
                    v /= 2_i32;
                    e += 1;
                }
                if !v.is_one() {
                    return Err(DyadicParseError::NonDyadic(den.to_string()));
                }
                Ok(DyadicRational::new(m, e))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> DyadicRational {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        let x = DyadicRational::new(BigInt::from(4), 3);
        assert_eq!(x, d("1/2"));
        assert_eq!(x.mantissa(), &BigInt::from(1));
        assert_eq!(x.exponent(), 1);
        assert_eq!(
            DyadicRational::new(BigInt::zero(), 17),
            DyadicRational::zero()
        );
    }

    #[test]
    fn arithmetic() {
        assert_eq!(&d("1/2") + &d("1/8"), d("5/8"));
        assert_eq!(&d("5/8") - &d("1/2"), d("1/8"));
        assert_eq!(&d("3/4") * &d("1/2"), d("3/8"));
        assert_eq!(&d("1/2") + &d("1/2"), DyadicRational::one());
        assert!(d("3/8") < d("1/2"));
        assert!((&d("1/4") - &d("1/2")).is_negative());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(d("3/2^3"), d("3/8"));
        assert_eq!(d("7"), DyadicRational::from_integer(7));
        assert_eq!(
            "1/3".parse::<DyadicRational>(),
            Err(DyadicParseError::NonDyadic("3".to_string()))
        );
        assert!("x/8".parse::<DyadicRational>().is_err());
    }

    #[test]
    fn pow2_sum_telescopes() {
        let sum: DyadicRational = (1..=10).map(DyadicRational::pow2_neg).sum();
        assert_eq!(sum, &DyadicRational::one() - &DyadicRational::pow2_neg(10));
    }
}
