//! Univariate rational functions over the rationals.
//!
//! Used to evaluate formulas that are singular term-by-term at special
//! parameter values (notably q = 0) but regular in total: the computation
//! runs with the parameter kept symbolic, and the final rational function is
//! specialized at the end.

use crate::error::{Error, Result};
use crate::exact::{Rational, Scalar};
use std::fmt;

fn rzero() -> Rational {
    <Rational as Scalar>::zero()
}

fn rone() -> Rational {
    <Rational as Scalar>::one()
}

/// Trims trailing zero coefficients; the zero polynomial is the empty list.
fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
    p
}

fn poly_add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![rzero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] = &out[i] + c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = &out[i] + c;
    }
    trim(out)
}

fn poly_neg(a: &[Rational]) -> Vec<Rational> {
    a.iter().map(|c| -c).collect()
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![rzero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if Scalar::is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(out)
}

/// Euclidean division: returns (quotient, remainder) with
/// deg remainder < deg divisor. Panics on a zero divisor.
fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem: Vec<Rational> = a.to_vec();
    if a.len() < b.len() {
        return (Vec::new(), trim(rem));
    }
    let mut quot = vec![rzero(); a.len() - b.len() + 1];
    let lead = b.last().unwrap().clone();
    for i in (0..quot.len()).rev() {
        let top = rem[i + b.len() - 1].clone();
        if Scalar::is_zero(&top) {
            continue;
        }
        let factor = &top / &lead;
        for (j, c) in b.iter().enumerate() {
            rem[i + j] = &rem[i + j] - &(&factor * c);
        }
        quot[i] = factor;
    }
    (trim(quot), trim(rem))
}

fn poly_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = poly_divrem(&x, &y);
        x = y;
        y = r;
    }
    make_monic(x)
}

fn make_monic(p: Vec<Rational>) -> Vec<Rational> {
    match p.last() {
        None => p,
        Some(lead) => {
            let inv = rone() / lead;
            p.iter().map(|c| c * &inv).collect()
        }
    }
}

fn poly_eval(p: &[Rational], x: &Rational) -> Rational {
    let mut acc = rzero();
    for c in p.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// A reduced fraction of univariate polynomials with rational coefficients.
/// The denominator is monic and coprime to the numerator; zero is the empty
/// numerator over the denominator 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFun {
    num: Vec<Rational>,
    den: Vec<Rational>,
}

impl RatFun {
    fn reduced(num: Vec<Rational>, den: Vec<Rational>) -> Self {
        let num = trim(num);
        let den = trim(den);
        assert!(!den.is_empty(), "rational function with zero denominator");
        if num.is_empty() {
            return Self {
                num,
                den: vec![rone()],
            };
        }
        let g = poly_gcd(&num, &den);
        let (num, _) = poly_divrem(&num, &g);
        let (den, _) = poly_divrem(&den, &g);
        let lead_inv = rone() / den.last().unwrap();
        Self {
            num: num.iter().map(|c| c * &lead_inv).collect(),
            den: den.iter().map(|c| c * &lead_inv).collect(),
        }
    }

    /// The formal variable.
    pub fn gen() -> Self {
        Self {
            num: vec![rzero(), rone()],
            den: vec![rone()],
        }
    }

    pub fn constant(c: &Rational) -> Self {
        Self::reduced(vec![c.clone()], vec![rone()])
    }

    /// Specializes the variable to a rational point.
    pub fn eval_at(&self, x: &Rational) -> Result<Rational> {
        let den = poly_eval(&self.den, x);
        if Scalar::is_zero(&den) {
            return Err(Error::DivisionByZero);
        }
        Ok(&poly_eval(&self.num, x) / &den)
    }

    /// True when the value is a polynomial (denominator 1).
    pub fn is_polynomial(&self) -> bool {
        self.den.len() == 1
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |p: &[Rational]| -> String {
            if p.is_empty() {
                return "0".into();
            }
            let mut parts = Vec::new();
            for (i, c) in p.iter().enumerate().rev() {
                if Scalar::is_zero(c) {
                    continue;
                }
                let body = match i {
                    0 => crate::exact::rational_to_string(c),
                    1 => format!("{}*t", crate::exact::rational_to_string(c)),
                    _ => format!("{}*t^{}", crate::exact::rational_to_string(c), i),
                };
                parts.push(body);
            }
            parts.join(" + ")
        };
        if self.is_polynomial() {
            write!(f, "{}", side(&self.num))
        } else {
            write!(f, "({}) / ({})", side(&self.num), side(&self.den))
        }
    }
}

impl Scalar for RatFun {
    fn zero() -> Self {
        Self {
            num: Vec::new(),
            den: vec![rone()],
        }
    }

    fn one() -> Self {
        Self {
            num: vec![rone()],
            den: vec![rone()],
        }
    }

    fn from_rational(r: &Rational) -> Self {
        Self::constant(r)
    }

    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        Self::reduced(
            poly_add(
                &poly_mul(&self.num, &rhs.den),
                &poly_mul(&rhs.num, &self.den),
            ),
            poly_mul(&self.den, &rhs.den),
        )
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        Self::reduced(
            poly_mul(&self.num, &rhs.num),
            poly_mul(&self.den, &rhs.den),
        )
    }

    fn neg(&self) -> Self {
        Self {
            num: poly_neg(&self.num),
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Result<Self> {
        if Scalar::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    fn t() -> RatFun {
        RatFun::gen()
    }

    #[test]
    fn field_arithmetic_reduces() {
        // (t^2 - 1) / (t - 1) = t + 1
        let num = t().mul(&t()).sub(&RatFun::constant(&int(1)));
        let den = t().sub(&RatFun::constant(&int(1)));
        let f = num.mul(&den.inv().unwrap());
        assert!(f.is_polynomial());
        assert_eq!(f.eval_at(&int(4)).unwrap(), int(5));
        assert_eq!(f.to_string(), "1*t + 1");
    }

    #[test]
    fn removable_singularity_via_symbolic_evaluation() {
        // t^(-1) * (t / (1 + t)) is regular at t = 0 even though the factors
        // are not.
        let one = <RatFun as Scalar>::one();
        let f = t()
            .inv()
            .unwrap()
            .mul(&t().mul(&one.add(&t()).inv().unwrap()));
        assert_eq!(f.eval_at(&int(0)).unwrap(), int(1));
    }

    #[test]
    fn pole_detection() {
        let f = t().inv().unwrap();
        assert!(f.eval_at(&int(0)).is_err());
        assert_eq!(f.eval_at(&rat(1, 2)).unwrap(), int(2));
    }

    #[test]
    fn zero_normalization() {
        let z = t().sub(&t());
        assert!(Scalar::is_zero(&z));
        assert!(z.inv().is_err());
        assert_eq!(z, <RatFun as Scalar>::zero());
    }

    fn small_ratfun() -> impl Strategy<Value = RatFun> {
        (
            proptest::collection::vec(-4i64..5, 0..4),
            proptest::collection::vec(-4i64..5, 1..4),
        )
            .prop_filter_map("nonzero denominator", |(n, d)| {
                let num: Vec<Rational> = n.iter().map(|&c| int(c)).collect();
                let den: Vec<Rational> = d.iter().map(|&c| int(c)).collect();
                if trim(den.clone()).is_empty() {
                    None
                } else {
                    Some(RatFun::reduced(num, den))
                }
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn evaluation_is_a_homomorphism(f in small_ratfun(), g in small_ratfun(), x in -6i64..7) {
            let x = int(x);
            let fs = f.eval_at(&x);
            let gs = g.eval_at(&x);
            if let (Ok(fv), Ok(gv)) = (fs, gs) {
                let sum = f.add(&g).eval_at(&x).unwrap();
                prop_assert_eq!(sum, &fv + &gv);
                let prod = f.mul(&g).eval_at(&x).unwrap();
                prop_assert_eq!(prod, &fv * &gv);
            }
        }

        #[test]
        fn inverse_cancels(f in small_ratfun()) {
            if !Scalar::is_zero(&f) {
                let prod = f.mul(&f.inv().unwrap());
                prop_assert_eq!(prod, <RatFun as Scalar>::one());
            }
        }
    }
}
