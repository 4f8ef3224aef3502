//! Sparse multivariate polynomials and truncated formal power series.
//!
//! * [`MultiPoly`] - polynomials over [`Rational`] in the fixed variable set
//!   (alpha, beta, gamma, delta, q, u, y), stored as a map from exponent
//!   vectors to coefficients with a graded-lexicographic canonical order.
//! * [`TruncatedSeries`] - power series in one auxiliary variable t with
//!   `MultiPoly` coefficients, supporting inversion, composition, and
//!   reversion for the generating-function identities.

use crate::error::{Error, Result};
use crate::exact::{int, rational_to_string, Rational, Scalar};
use num_traits::{One, Signed};
use std::collections::BTreeMap;
use std::fmt;

fn rzero() -> Rational {
    <Rational as Scalar>::zero()
}

/// Number of polynomial variables.
pub const NVARS: usize = 7;

/// Variable indices into exponent vectors.
pub const ALPHA: usize = 0;
pub const BETA: usize = 1;
pub const GAMMA: usize = 2;
pub const DELTA: usize = 3;
pub const Q: usize = 4;
pub const U: usize = 5;
pub const Y: usize = 6;

/// Render names, in index order.
pub const VAR_NAMES: [&str; NVARS] = ["alpha", "beta", "gamma", "delta", "q", "u", "y"];

/// Exponent vector of one monomial.
///
/// Ordered by total degree, then lexicographically by exponents; the
/// canonical display order is the reverse (largest first).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub fn unit() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: usize) -> Self {
        let mut e = [0; NVARS];
        e[v] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut e = [0; NVARS];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = self.0[i]
                .checked_add(rhs.0[i])
                .expect("monomial exponent overflow");
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.total_degree(), self.0).cmp(&(other.total_degree(), other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over rationals in the seven fixed variables.
///
/// Invariant: no stored zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(int(1))
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::default();
        p.add_term(Monomial::unit(), c);
        p
    }

    /// The polynomial consisting of the single variable `v`.
    pub fn var(v: usize) -> Self {
        let mut p = Self::default();
        p.add_term(Monomial::var(v), int(1));
        p
    }

    /// A single term c * x^exps.
    pub fn monomial(exps: [u16; NVARS], c: Rational) -> Self {
        let mut p = Self::default();
        p.add_term(Monomial(exps), c);
        p
    }

    /// Adds c to the coefficient of `mono`, dropping the entry when the sum
    /// vanishes.
    pub fn add_term(&mut self, mono: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(rzero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored monomials.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Iterates terms in ascending canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// The coefficient of an exponent vector (zero when absent).
    pub fn coeff(&self, exps: [u16; NVARS]) -> Rational {
        self.terms
            .get(&Monomial(exps))
            .cloned()
            .unwrap_or_else(rzero)
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rational {
        self.coeff([0; NVARS])
    }

    /// Returns the value of a constant polynomial, or None when any variable
    /// appears.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(rzero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Monomial::unit()) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::default();
        for (m, c) in &self.terms {
            out.terms.insert(*m, -c.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::default();
        for (m, coeff) in &self.terms {
            out.terms.insert(*m, coeff * c);
        }
        out
    }

    pub fn pow(&self, n: u64) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// Largest total degree among terms; zero polynomial reports 0.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// Largest exponent of one variable.
    pub fn degree_in(&self, v: usize) -> u16 {
        self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }

    /// Evaluates at a full assignment of the seven variables.
    pub fn eval<S: Scalar>(&self, point: &[S; NVARS]) -> S {
        let mut powers: [Vec<S>; NVARS] = Default::default();
        for v in 0..NVARS {
            let d = self.degree_in(v) as usize;
            let mut cache = Vec::with_capacity(d + 1);
            cache.push(S::one());
            for k in 1..=d {
                let next = cache[k - 1].mul(&point[v]);
                cache.push(next);
            }
            powers[v] = cache;
        }
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut term = S::from_rational(c);
            for v in 0..NVARS {
                if m.0[v] > 0 {
                    term = term.mul(&powers[v][m.0[v] as usize]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitutes a rational value for one variable, keeping the rest
    /// symbolic.
    pub fn subst_scalar(&self, v: usize, value: &Rational) -> Self {
        let mut out = Self::default();
        for (m, c) in &self.terms {
            let e = m.0[v] as u64;
            let mut m2 = *m;
            m2.0[v] = 0;
            let scaled = c * crate::exact::Scalar::pow(value, e);
            out.add_term(m2, scaled);
        }
        out
    }

    /// Substitutes a polynomial for one variable.
    pub fn subst_poly(&self, v: usize, replacement: &Self) -> Self {
        let maxdeg = self.degree_in(v) as usize;
        let mut powers: Vec<MultiPoly> = Vec::with_capacity(maxdeg + 1);
        powers.push(Self::one());
        for k in 1..=maxdeg {
            let next = powers[k - 1].mul(replacement);
            powers.push(next);
        }
        let mut out = Self::default();
        for (m, c) in &self.terms {
            let mut m2 = *m;
            let e = m2.0[v] as usize;
            m2.0[v] = 0;
            let base = Self::monomial(m2.0, c.clone());
            out = out.add(&base.mul(&powers[e]));
        }
        out
    }

    /// Collects the coefficient of `var^k` as a polynomial in the remaining
    /// variables.
    pub fn coeff_of_power(&self, v: usize, k: u16) -> Self {
        let mut out = Self::default();
        for (m, c) in &self.terms {
            if m.0[v] == k {
                let mut m2 = *m;
                m2.0[v] = 0;
                out.add_term(m2, c.clone());
            }
        }
        out
    }

    /// Divides by var^k, erroring when some term has a smaller exponent.
    pub fn div_var_power(&self, v: usize, k: u16) -> Result<Self> {
        let mut out = Self::default();
        for (m, c) in &self.terms {
            if m.0[v] < k {
                return Err(Error::NoncancelingDenominator(format!(
                    "{}^{}",
                    VAR_NAMES[v], k
                )));
            }
            let mut m2 = *m;
            m2.0[v] -= k;
            out.terms.insert(m2, c.clone());
        }
        Ok(out)
    }

    /// True when every coefficient is a nonnegative integer.
    pub fn has_nonneg_integer_coeffs(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.denom().is_one() && !c.is_negative())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.total_degree() == 0 {
                factors.push(rational_to_string(&mag));
            }
            for (v, name) in VAR_NAMES.iter().enumerate() {
                match m.0[v] {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Scalar for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }

    fn one() -> Self {
        MultiPoly::one()
    }

    fn from_rational(r: &Rational) -> Self {
        MultiPoly::constant(r.clone())
    }

    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        MultiPoly::add(self, rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        MultiPoly::sub(self, rhs)
    }

    fn mul(&self, rhs: &Self) -> Self {
        MultiPoly::mul(self, rhs)
    }

    fn neg(&self) -> Self {
        MultiPoly::neg(self)
    }

    /// Inverts constant polynomials only; anything else is outside the ring.
    fn inv(&self) -> Result<Self> {
        match self.as_constant() {
            Some(c) if !c.is_zero() => Ok(MultiPoly::constant(c.recip())),
            Some(_) => Err(Error::DivisionByZero),
            None => Err(Error::NonInvertible(
                "only constant polynomials invert".into(),
            )),
        }
    }
}

/// Truncated power series in one auxiliary variable t, with polynomial
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    /// Coefficient of t^k at index k; length = order + 1.
    pub coeffs: Vec<MultiPoly>,
}

/// Default truncation order for generating-function work.
pub const DEFAULT_ORDER: usize = 16;

impl TruncatedSeries {
    /// Builds a series from explicit coefficients.
    pub fn from_coeffs(coeffs: Vec<MultiPoly>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least a constant term");
        Self { coeffs }
    }

    /// The zero series at the given order.
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![MultiPoly::zero(); order + 1],
        }
    }

    /// The constant-1 series.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = MultiPoly::one();
        s
    }

    /// The identity series t.
    pub fn t(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = MultiPoly::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Truncates (or zero-extends) to the given order.
    pub fn resize(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, MultiPoly::zero());
        coeffs.truncate(order + 1);
        Self { coeffs }
    }

    pub fn coeff(&self, k: usize) -> MultiPoly {
        self.coeffs.get(k).cloned().unwrap_or_else(MultiPoly::zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut out = Self::zero(order);
        for k in 0..=order {
            out.coeffs[k] = self.coeffs[k].add(&rhs.coeffs[k]);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut out = Self::zero(order);
        for k in 0..=order {
            out.coeffs[k] = self.coeffs[k].sub(&rhs.coeffs[k]);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut out = Self::zero(order);
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                let prod = self.coeffs[i].mul(&rhs.coeffs[j]);
                out.coeffs[i + j] = out.coeffs[i + j].add(&prod);
            }
        }
        out
    }

    pub fn scale(&self, c: &MultiPoly) -> Self {
        let mut out = self.clone();
        for coeff in &mut out.coeffs {
            *coeff = coeff.mul(c);
        }
        out
    }

    /// Multiplies by t (shifting coefficients up one slot).
    pub fn shift_up(&self) -> Self {
        let order = self.order();
        let mut out = Self::zero(order);
        for k in 1..=order {
            out.coeffs[k] = self.coeffs[k - 1].clone();
        }
        out
    }

    /// Multiplicative inverse; the constant term must be an invertible
    /// constant polynomial.
    pub fn invert(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        let c0_inv = match c0.as_constant() {
            Some(c) if !c.is_zero() => MultiPoly::constant(c.recip()),
            _ => {
                return Err(Error::NonInvertible(
                    "series constant term must be a nonzero constant".into(),
                ))
            }
        };
        let order = self.order();
        let mut out = Self::zero(order);
        out.coeffs[0] = c0_inv.clone();
        for n in 1..=order {
            let mut acc = MultiPoly::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[k].mul(&out.coeffs[n - k]));
            }
            out.coeffs[n] = acc.neg().mul(&c0_inv);
        }
        Ok(out)
    }

    /// Composes f(g(t)); the inner series must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.order().min(inner.order());
        let f = self.resize(order);
        let g = inner.resize(order);
        let mut acc = Self::zero(order);
        for k in (0..=order).rev() {
            acc = acc.mul(&g);
            acc.coeffs[0] = acc.coeffs[0].add(&f.coeffs[k]);
        }
        Ok(acc)
    }

    /// Compositional reverse: returns s with self(s(w)) = w up to the
    /// truncation order. Requires zero constant term and an invertible
    /// constant linear coefficient.
    pub fn reverse(&self) -> Result<Self> {
        let order = self.order();
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonInvertible(
                "series to reverse must vanish at 0".into(),
            ));
        }
        let c1 = match self.coeffs.get(1).and_then(|c| c.as_constant()) {
            Some(c) if !c.is_zero() => c,
            _ => {
                return Err(Error::NonInvertible(
                    "linear coefficient must be a nonzero constant".into(),
                ))
            }
        };
        // Triangular solve: write s = sum a_n w^n and force
        // [t^n] sum_m a_m self(t)^m = [n = 1] for each n.
        let mut a: Vec<MultiPoly> = vec![MultiPoly::zero(); order + 1];
        if order >= 1 {
            a[1] = MultiPoly::constant(c1.recip());
        }
        // power[k] = self(t)^m coefficients, updated incrementally.
        let mut power = Self::one(order);
        let mut partial = Self::zero(order); // sum_{m<n} a_m self^m
        let mut c1_pow = c1.clone();
        for n in 1..=order {
            power = power.mul(self);
            if n == 1 {
                partial = partial.add(&power.scale(&a[1]));
                continue;
            }
            c1_pow *= &c1;
            // Residual coefficient at t^n must cancel against a_n * c1^n.
            let residual = partial.coeffs[n].clone();
            a[n] = residual.neg().scale(&c1_pow.recip());
            partial = partial.add(&power.scale(&a[n]));
        }
        Ok(Self { coeffs: a })
    }
}
