// SPDX-License-Identifier: Apache-2.0

//! Exact phases: rational multiples of π reduced into `[0, 2)`.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::scalar::Real;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PhaseError {
    #[error("phase denominator must be non-zero")]
    ZeroDenominator,
    #[error("cannot parse phase `{0}`; expected `num/den`")]
    Syntax(String),
}

/// `(num/den)·π` with `num/den` reduced modulo 2.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase(Rational64);

impl Phase {
    pub fn new(num: i64, den: i64) -> Result<Self, PhaseError> {
        if den == 0 {
            return Err(PhaseError::ZeroDenominator);
        }
        Ok(Self::from_ratio(Rational64::new(num, den)))
    }

    fn from_ratio(r: Rational64) -> Self {
        let two = Rational64::from_integer(2);
        let mut r = r % two;
        if r.is_negative() {
            r += two;
        }
        Phase(r)
    }

    pub fn zero() -> Self {
        Phase(Rational64::zero())
    }

    pub fn pi() -> Self {
        Phase(Rational64::one())
    }

    /// Multiple of π in `[0, 2)`.
    pub fn ratio(&self) -> Rational64 {
        self.0
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_pi(&self) -> bool {
        self.0.is_one()
    }

    /// Phase 0 or π: the spider is a (scaled) basis state/effect of its color.
    pub fn is_pauli(&self) -> bool {
        self.is_zero() || self.is_pi()
    }

    pub fn to_radians<T: Real>(&self) -> T {
        T::lit(*self.0.numer() as f64 / *self.0.denom() as f64) * T::PI()
    }

    /// `e^{i·phase}`
    pub fn cis<T: Real>(&self) -> Complex<T> {
        // exact values at multiples of π/2
        match (self.numer(), self.denom()) {
            (0, _) => Complex::new(T::one(), T::zero()),
            (1, 1) => Complex::new(-T::one(), T::zero()),
            (1, 2) => Complex::new(T::zero(), T::one()),
            (3, 2) => Complex::new(T::zero(), -T::one()),
            _ => Complex::from_polar(T::one(), self.to_radians()),
        }
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::zero()
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        Phase::from_ratio(self.0 + rhs.0)
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        Phase::from_ratio(self.0 - rhs.0)
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::from_ratio(-self.0)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}π", self)
    }
}

impl FromStr for Phase {
    type Err = PhaseError;

    /// Accepts `num/den` or a bare integer `num`.
    fn from_str(s: &str) -> Result<Self, PhaseError> {
        let s = s.trim();
        let bad = || PhaseError::Syntax(s.to_string());
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                if d < 0 {
                    return Err(bad());
                }
                Phase::new(n, d)
            }
            None => Ok(Phase::from_ratio(Rational64::from_integer(s.parse().map_err(|_| bad())?))),
        }
    }
}

impl Serialize for Phase {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Phase {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
