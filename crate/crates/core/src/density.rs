//! Exact dyadic rationals `numerator / 2^exponent`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::Error;

/// `numerator / 2^exponent`, kept in the form it was built in.
///
/// Equality and ordering compare values, so `34/2^8 == 17/2^7`. `Display`
/// prints the stored form (`17/2^7`); use [`DyadicDensity::normalized`] for
/// the reduced form.
#[derive(Clone, Debug)]
pub struct DyadicDensity {
    numerator: BigUint,
    exponent: u64,
}

impl DyadicDensity {
    pub fn new(numerator: impl Into<BigUint>, exponent: u64) -> Self {
        DyadicDensity { numerator: numerator.into(), exponent }
    }

    /// `1 / 2^exponent`.
    pub fn unit_fraction(exponent: u64) -> Self {
        DyadicDensity::new(1u32, exponent)
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Odd numerator (or zero with exponent 0).
    pub fn normalized(&self) -> Self {
        if self.numerator.is_zero() {
            return DyadicDensity::new(0u32, 0);
        }
        let shift = self.numerator.trailing_zeros().unwrap_or(0).min(self.exponent);
        DyadicDensity { numerator: &self.numerator >> shift, exponent: self.exponent - shift }
    }

    /// Same value over `2^exponent`; `None` if that would need a fractional numerator.
    pub fn with_exponent(&self, exponent: u64) -> Option<Self> {
        if exponent >= self.exponent {
            Some(DyadicDensity {
                numerator: &self.numerator << (exponent - self.exponent),
                exponent,
            })
        } else {
            let n = self.normalized();
            (n.exponent <= exponent).then(|| DyadicDensity {
                numerator: &n.numerator << (exponent - n.exponent),
                exponent,
            })
        }
    }

    /// Plain fraction `a/b` with the denominator written out.
    pub fn to_ratio_string(&self) -> String {
        let n = self.normalized();
        format!("{}/{}", n.numerator, BigUint::one() << n.exponent)
    }
}

impl PartialEq for DyadicDensity {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for DyadicDensity {}

impl Ord for DyadicDensity {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exponent.max(other.exponent);
        let a = &self.numerator << (e - self.exponent);
        let b = &other.numerator << (e - other.exponent);
        a.cmp(&b)
    }
}

impl PartialOrd for DyadicDensity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DyadicDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.numerator, self.exponent)
    }
}

impl FromStr for DyadicDensity {
    type Err = Error;

    /// Parses `k/2^e`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("expected k/2^e, got {s:?}"));
        let (num, den) = s.trim().split_once('/').ok_or_else(bad)?;
        let exp = den.trim().strip_prefix("2^").ok_or_else(bad)?;
        let numerator = BigUint::from_str(num.trim()).map_err(|_| bad())?;
        let exponent = exp.trim().parse().map_err(|_| bad())?;
        Ok(DyadicDensity { numerator, exponent })
    }
}
