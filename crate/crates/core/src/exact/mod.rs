//! Exact scalar arithmetic and q-series primitives.
//!
//! Four scalar fields, all built on arbitrary-precision rationals:
//!
//! * [`Rational`] - reduced big-integer fractions, the workhorse scalar.
//! * [`GaussianRational`] - rationals extended by i, for the signed moment
//!   route that evaluates partition functions at imaginary arguments.
//! * [`QuadExt`] - a quadratic extension adjoining sqrt(y) for a runtime
//!   rational radicand, for the fugacity moment route and the q=0 closed
//!   form.
//! * [`RatFun`] - univariate rational functions, for keeping one parameter
//!   symbolic through a computation whose terms are singular at a point
//!   where the total is regular.
//!
//! All of these (and multivariate polynomials from `polyring`) implement
//! the [`Scalar`] trait, so the q-series helpers and the moment engines are
//! written once and reused across fields. No floating point appears
//! anywhere.

mod gaussian;
mod qseries;
mod quadext;
mod ratfun;

pub use gaussian::GaussianRational;
pub use qseries::{qbinomial, qint, qpochhammer, qpochhammer_multi};
pub use quadext::QuadExt;
pub use ratfun::RatFun;

use crate::error::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Builds the rational n/d from machine integers.
///
/// Panics when d = 0.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Int::from(n), Int::from(d))
}

/// Builds the integer rational n/1.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(Int::from(n))
}

/// Parses the canonical text form "p/q" (or "p") into a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<Int> {
        t.trim()
            .parse::<Int>()
            .map_err(|_| Error::Parse(format!("invalid integer literal {t:?}")))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(parse_int(num)?, den))
        }
    }
}

/// Renders a rational in the canonical text form "p/q", or "p" when the
/// denominator is 1.
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact field operations shared by all scalar types.
///
/// Methods take references because the underlying big-integer values do not
/// copy cheaply. `inv` and `div` are fallible: dividing by zero is an error,
/// and polynomial scalars only invert constants.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    /// Embeds a rational into the field.
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `DivisionByZero` on zero.
    fn inv(&self) -> Result<Self>;

    /// Embeds a machine integer into the field.
    fn from_int(n: i64) -> Self {
        Self::from_rational(&int(n))
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Nonnegative integer power by repeated squaring.
    fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// Integer power; negative exponents invert first.
    fn powi(&self, n: i64) -> Result<Self> {
        if n >= 0 {
            Ok(self.pow(n as u64))
        } else {
            Ok(self.inv()?.pow(n.unsigned_abs()))
        }
    }

    /// Sum of a slice of scalars.
    fn sum(items: &[Self]) -> Self {
        items.iter().fold(Self::zero(), |acc, x| acc.add(x))
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }

    fn one() -> Self {
        <Rational as One>::one()
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn is_zero(&self) -> bool {
        <Rational as Zero>::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn inv(&self) -> Result<Self> {
        if <Rational as Zero>::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.recip())
    }
}

/// Returns the exact square root of a nonnegative rational when it exists.
///
/// A reduced fraction is a rational square exactly when its numerator and
/// denominator are both integer squares.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let int_sqrt = |n: &Int| -> Option<Int> {
        let root = num_integer::Roots::sqrt(n);
        if &(&root * &root) == n {
            Some(root)
        } else {
            None
        }
    };
    let num = int_sqrt(r.numer())?;
    let den = int_sqrt(r.denom())?;
    Some(Rational::new(num, den))
}

/// Factorial as a big integer.
pub fn factorial(n: u64) -> Int {
    let mut acc = Int::from(1);
    for k in 2..=n {
        acc *= Int::from(k);
    }
    acc
}

/// Binomial coefficient as a big integer; 0 outside the triangle.
pub fn binomial(n: i64, k: i64) -> Int {
    if k < 0 || k > n || n < 0 {
        return Int::from(0);
    }
    let k = k.min(n - k);
    let mut acc = Int::from(1);
    for i in 0..k {
        acc = acc * Int::from(n - i) / Int::from(i + 1);
    }
    acc
}

/// Double factorial of odd arguments: (2n+1)!! = 1 * 3 * ... * (2n+1).
pub fn odd_double_factorial(n: u64) -> Int {
    let mut acc = Int::from(1);
    let mut k = 3;
    while k <= 2 * n + 1 {
        acc *= Int::from(k);
        k += 2;
    }
    acc
}
