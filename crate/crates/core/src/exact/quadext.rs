//! Quadratic extension Q(sqrt(y)) with a runtime rational radicand.

use super::{rational_sqrt, rational_to_string, Rational, Scalar};
use crate::error::{Error, Result};
use std::fmt;

/// An element rational + radical*sqrt(radicand) over exact rationals.
///
/// Canonical form: when the radicand is a perfect rational square the radical
/// part is folded into the rational part, and a zero radical part forces a
/// zero radicand. Elements are therefore radicand-compatible whenever either
/// operand is purely rational, and comparison is plain componentwise equality.
///
/// A negative radicand is allowed; the arithmetic stays formal and the
/// acceptance checks only ever extract values whose radical part cancels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadExt {
    pub rational: Rational,
    pub radical: Rational,
    pub radicand: Rational,
}

impl QuadExt {
    /// Builds rational + radical*sqrt(radicand) in canonical form.
    pub fn new(rational: Rational, radical: Rational, radicand: Rational) -> Self {
        let mut out = Self {
            rational,
            radical,
            radicand,
        };
        if !out.radical.is_zero() {
            if let Some(root) = rational_sqrt(&out.radicand) {
                out.rational += &out.radical * root;
                out.radical = Rational::zero();
            }
        }
        if out.radical.is_zero() {
            out.radicand = Rational::zero();
        }
        out
    }

    /// The element sqrt(y).
    pub fn sqrt_of(y: &Rational) -> Self {
        Self::new(Rational::zero(), Scalar::one(), y.clone())
    }

    /// Embeds a rational.
    pub fn from_rat(r: &Rational) -> Self {
        <Self as Scalar>::from_rational(r)
    }

    /// Conjugate rational - radical*sqrt(radicand).
    pub fn conj(&self) -> Self {
        Self {
            rational: self.rational.clone(),
            radical: -self.radical.clone(),
            radicand: self.radicand.clone(),
        }
    }

    /// Extracts the rational value, erroring when the radical part survives.
    pub fn expect_rational(&self) -> Result<Rational> {
        if self.radical.is_zero() {
            Ok(self.rational.clone())
        } else {
            Err(Error::IrrationalResidual(self.to_string()))
        }
    }

    /// The radicand two operands agree on; purely rational elements adopt the
    /// other operand's radicand.
    fn joint_radicand(&self, rhs: &Self) -> Rational {
        if self.radical.is_zero() {
            rhs.radicand.clone()
        } else if rhs.radical.is_zero() {
            self.radicand.clone()
        } else {
            assert_eq!(
                self.radicand, rhs.radicand,
                "QuadExt operands must share one radicand"
            );
            self.radicand.clone()
        }
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}*sqrt({})",
            rational_to_string(&self.rational),
            rational_to_string(&self.radical),
            rational_to_string(&self.radicand)
        )
    }
}

impl Scalar for QuadExt {
    fn zero() -> Self {
        Self::from_rational(&Rational::zero())
    }

    fn one() -> Self {
        Self::from_rational(&Scalar::one())
    }

    fn from_rational(r: &Rational) -> Self {
        Self {
            rational: r.clone(),
            radical: Rational::zero(),
            radicand: Rational::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.radical.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        let radicand = self.joint_radicand(rhs);
        Self::new(
            &self.rational + &rhs.rational,
            &self.radical + &rhs.radical,
            radicand,
        )
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        let radicand = self.joint_radicand(rhs);
        let rational =
            &self.rational * &rhs.rational + &self.radical * &rhs.radical * &radicand;
        let radical = &self.rational * &rhs.radical + &self.radical * &rhs.rational;
        Self::new(rational, radical, radicand)
    }

    fn neg(&self) -> Self {
        Self {
            rational: -self.rational.clone(),
            radical: -self.radical.clone(),
            radicand: self.radicand.clone(),
        }
    }

    fn inv(&self) -> Result<Self> {
        // 1/(p + r*sqrt(y)) = (p - r*sqrt(y)) / (p^2 - r^2*y). The norm only
        // vanishes for the zero element: a nonzero element with p^2 = r^2*y
        // would make y a rational square, which canonical form folds away.
        let norm =
            &self.rational * &self.rational - &self.radical * &self.radical * &self.radicand;
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self {
            rational: &self.rational / &norm,
            radical: -(&self.radical / &norm),
            radicand: self.radicand.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn perfect_square_radicands_collapse() {
        let x = QuadExt::sqrt_of(&rat(4, 9));
        assert_eq!(x, QuadExt::from_rat(&rat(2, 3)));
        let y = QuadExt::sqrt_of(&int(1));
        assert_eq!(y, <QuadExt as Scalar>::one());
        let z = QuadExt::new(int(5), int(3), int(16));
        assert_eq!(z.expect_rational().unwrap(), int(17));
    }

    #[test]
    fn irrational_radicands_survive() {
        let s = QuadExt::sqrt_of(&int(2));
        assert!(s.expect_rational().is_err());
        assert_eq!(s.mul(&s).expect_rational().unwrap(), int(2));
    }

    #[test]
    fn inverse_of_nonzero_elements() {
        let x = QuadExt::new(rat(1, 2), rat(-2, 3), int(5));
        let y = x.inv().unwrap();
        assert_eq!(x.mul(&y), <QuadExt as Scalar>::one());
        assert!(<QuadExt as Scalar>::zero().inv().is_err());
    }

    #[test]
    fn negative_radicand_arithmetic_is_formal() {
        let s = QuadExt::sqrt_of(&int(-3));
        assert_eq!(s.mul(&s).expect_rational().unwrap(), int(-3));
        let x = QuadExt::new(int(2), int(1), int(-3));
        assert_eq!(x.mul(&x.conj()).expect_rational().unwrap(), int(7));
    }

    #[test]
    fn rational_operands_adopt_radicands() {
        let two = QuadExt::from_rat(&int(2));
        let s = QuadExt::sqrt_of(&int(3));
        assert_eq!(two.mul(&s), QuadExt::new(int(0), int(2), int(3)));
        assert_eq!(s.add(&two), QuadExt::new(int(2), int(1), int(3)));
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-30i64..30, 1i64..12).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn conjugate_product_is_the_norm(
            p in arb_rational(),
            r in arb_rational(),
            y in (2i64..40).prop_filter("nonsquare", |y| rational_sqrt(&int(*y)).is_none()),
        ) {
            let y = int(y);
            let x = QuadExt::new(p.clone(), r.clone(), y.clone());
            let prod = x.mul(&x.conj());
            prop_assert_eq!(prod.expect_rational().unwrap(), &p * &p - &r * &r * &y);
        }

        #[test]
        fn zero_radical_round_trips(p in arb_rational()) {
            let x = QuadExt::from_rat(&p);
            prop_assert_eq!(x.expect_rational().unwrap(), p);
        }
    }
}
