//! Gaussian rationals: numbers re + im*i with exact rational parts.

use super::{rational_to_string, Rational, Scalar};
use crate::error::{Error, Result};
use std::fmt;

/// An element of Q(i) with exact rational real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    /// The imaginary unit i.
    pub fn i() -> Self {
        Self::new(Rational::zero(), Scalar::one())
    }

    /// Complex conjugate re - im*i.
    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// Squared modulus re^2 + im^2 as a rational.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Extracts the real part, erroring when the imaginary part is nonzero.
    pub fn expect_real(&self) -> Result<Rational> {
        if self.im.is_zero() {
            Ok(self.re.clone())
        } else {
            Err(Error::NonrealResult(self.to_string()))
        }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}*i",
            rational_to_string(&self.re),
            rational_to_string(&self.im)
        )
    }
}

impl Scalar for GaussianRational {
    fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    fn one() -> Self {
        Self::new(Scalar::one(), Rational::zero())
    }

    fn from_rational(r: &Rational) -> Self {
        Self::new(r.clone(), Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        Self::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Self::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Self::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }

    fn neg(&self) -> Self {
        Self::new(-self.re.clone(), -self.im.clone())
    }

    fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.conj();
        Ok(Self::new(c.re / &n, c.im / n))
    }
}
