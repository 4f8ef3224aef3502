//! Askey-Wilson polynomials and weight-function moments, computed by four
//! independent exact pipelines:
//!
//! 1. the explicit double sum ([`aw_moments_explicit`]),
//! 2. the tridiagonal-matrix / Motzkin-path route
//!    ([`aw_moments_tridiagonal`]),
//! 3. the alternating sum over tableau partition functions
//!    ([`aw_moments_combinatorial`]),
//! 4. the signed evaluation at fugacity -1 over Gaussian rationals
//!    ([`aw_moments_signed`]).
//!
//! The module also provides the polynomials themselves, the phi-basis
//! expansion that drives the double sum, exact integration of arbitrary
//! polynomials against the weight, the orthogonality norms, and the q=0
//! residue integral.

use crate::error::{Error, Result};
use crate::exact::{binomial, int, qpochhammer, GaussianRational, Rational, Scalar};
use crate::report::CheckReport;

/// The five parameters of the Askey-Wilson family.
///
/// Generic over the scalar field: rational evaluation is the common case,
/// while the fugacity route shifts parameters into a quadratic extension and
/// the q=0 comparisons keep q symbolic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AWParams<S = Rational> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
    pub q: S,
}

impl<S: Scalar> AWParams<S> {
    pub fn abcd(&self) -> S {
        self.a.mul(&self.b).mul(&self.c).mul(&self.d)
    }
}

/// A univariate polynomial in x with exact coefficients; `coeffs[i]` is the
/// coefficient of x^i. The zero polynomial is the empty list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySample<S = Rational> {
    coeffs: Vec<S>,
}

impl<S: Scalar> PolySample<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::new(vec![S::one()])
    }

    /// The monomial x^n.
    pub fn x_power(n: usize) -> Self {
        let mut coeffs = vec![S::zero(); n + 1];
        coeffs[n] = S::one();
        Self { coeffs }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = vec![S::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = out[i].add(c);
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] = out[i].add(c);
        }
        Self::new(out)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, factor: &S) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mul(factor)).collect())
    }

    /// Maps the coefficients into another scalar field.
    pub fn lift<T: Scalar>(&self, f: impl Fn(&S) -> T) -> PolySample<T> {
        PolySample::new(self.coeffs.iter().map(f).collect())
    }
}

pub(crate) fn ensure_nonzero<S: Scalar>(value: &S, name: impl FnOnce() -> String) -> Result<()> {
    if value.is_zero() {
        Err(Error::DegenerateParameters { factor: name() })
    } else {
        Ok(())
    }
}

/// q^e * x with the zero short-circuit: a zero x gives zero for any
/// exponent, so specializations with vanishing parameter products work even
/// where the printed power q^e alone would be undefined.
pub(crate) fn qpow_times<S: Scalar>(q: &S, e: i64, x: &S) -> Result<S> {
    if x.is_zero() {
        return Ok(S::zero());
    }
    let p = q.powi(e).map_err(|_| Error::DegenerateParameters {
        factor: "q".into(),
    })?;
    Ok(p.mul(x))
}

/// 1 - q^e * x, the ubiquitous degeneracy factor.
fn one_minus_qpow<S: Scalar>(q: &S, e: i64, x: &S) -> Result<S> {
    Ok(S::one().sub(&qpow_times(q, e, x)?))
}

/// The coefficients (A_n, B_n, C_n) of the three-term recurrence
/// A_n P_(n+1) + B_n P_n + C_n P_(n-1) = 2x P_n:
///
/// * A_n = (1 - q^(n-1)abcd) / [(1 - q^(2n-1)abcd)(1 - q^(2n)abcd)],
/// * B_n = q^(n-1)[(1 + q^(2n-1)abcd)(qs + e) - q^(n-1)(1+q)(abcd s + q e)]
///   / [(1 - q^(2n-2)abcd)(1 - q^(2n)abcd)],
/// * C_n = (1 - q^n)(1 - q^(n-1)ab)...(1 - q^(n-1)cd)
///   / [(1 - q^(2n-2)abcd)(1 - q^(2n-1)abcd)],
///
/// where s = a+b+c+d and e = abc+abd+acd+bcd. The sum of triple products
/// replaces abcd(1/a+1/b+1/c+1/d) so zero parameters need no division.
pub fn recurrence_coeffs<S: Scalar>(params: &AWParams<S>, n: usize) -> Result<(S, S, S)> {
    let AWParams { a, b, c, d, q } = params;
    let nn = n as i64;
    let abcd = params.abcd();

    let f = |m: i64| -> Result<S> {
        let v = one_minus_qpow(q, m, &abcd)?;
        ensure_nonzero(&v, || format!("1 - q^{m}*abcd"))?;
        Ok(v)
    };
    let f_2n_minus_2 = f(2 * nn - 2)?;
    let f_2n_minus_1 = f(2 * nn - 1)?;
    let f_2n = f(2 * nn)?;

    let a_n = one_minus_qpow(q, nn - 1, &abcd)?
        .div(&f_2n_minus_1.mul(&f_2n))?;

    let s = a.add(b).add(c).add(d);
    let e3 = a.mul(b).mul(c)
        .add(&a.mul(b).mul(d))
        .add(&a.mul(c).mul(d))
        .add(&b.mul(c).mul(d));
    let term1 = S::one()
        .add(&qpow_times(q, 2 * nn - 1, &abcd)?)
        .mul(&q.mul(&s).add(&e3));
    let inner = S::one().add(q).mul(&abcd.mul(&s).add(&q.mul(&e3)));
    let bracket = term1.sub(&qpow_times(q, nn - 1, &inner)?);
    let b_n = qpow_times(q, nn - 1, &bracket)?.div(&f_2n_minus_2.mul(&f_2n))?;

    let mut c_num = one_minus_qpow(q, nn, &S::one())?;
    for xy in [
        a.mul(b),
        a.mul(c),
        a.mul(d),
        b.mul(c),
        b.mul(d),
        c.mul(d),
    ] {
        c_num = c_num.mul(&one_minus_qpow(q, nn - 1, &xy)?);
    }
    let c_n = c_num.div(&f_2n_minus_2.mul(&f_2n_minus_1))?;

    Ok((a_n, b_n, c_n))
}

/// Moments of the monic orthogonal-polynomial family with recurrence
/// P_(k+1) = (x - b_k) P_k - lambda_k P_(k-1): returns mu_0..mu_n, where
/// mu_k is the (0,0) entry of the k-th power of the tridiagonal matrix with
/// diagonal b, subdiagonal lambda, and superdiagonal 1.
///
/// Equivalently a weighted count of Motzkin paths. The band is truncated at
/// dimension n+2, which is exact: a path of length n starting at level 0
/// never climbs past level n. Missing entries of `bs` / `lambdas` are
/// treated as zero; `lambdas[0]` is unused.
pub fn tridiag_moments<S: Scalar>(bs: &[S], lambdas: &[S], n: usize) -> Vec<S> {
    let dim = n + 2;
    let b = |i: usize| bs.get(i).cloned().unwrap_or_else(S::zero);
    let lam = |i: usize| lambdas.get(i).cloned().unwrap_or_else(S::zero);
    let mut u: Vec<S> = (0..dim)
        .map(|i| if i == 0 { S::one() } else { S::zero() })
        .collect();
    let mut mus = vec![u[0].clone()];
    for _ in 1..=n {
        let mut next = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut v = b(i).mul(&u[i]);
            if i > 0 {
                v = v.add(&lam(i).mul(&u[i - 1]));
            }
            if i + 1 < dim {
                v = v.add(&u[i + 1]);
            }
            next.push(v);
        }
        u = next;
        mus.push(u[0].clone());
    }
    mus
}

/// The n-th moment through the three-term recurrence: monic symmetrization
/// takes b_k = B_k/2 and lambda_k = A_(k-1) C_k / 4, so the moments come
/// out in the variable x directly.
pub fn aw_moments_tridiagonal(params: &AWParams, n: usize) -> Result<Rational> {
    let (bs, lambdas) = monic_jacobi_data(params, n)?;
    Ok(tridiag_moments(&bs, &lambdas, n)
        .pop()
        .expect("tridiag_moments returns n+1 values"))
}

/// The Jacobi data (b_0..b_(n-1), lambda_0..lambda_(n-1)) for the monic
/// symmetrization; lambda_0 is a placeholder zero.
pub(crate) fn monic_jacobi_data<S: Scalar>(
    params: &AWParams<S>,
    n: usize,
) -> Result<(Vec<S>, Vec<S>)> {
    let half = S::from_rational(&crate::exact::rat(1, 2));
    let quarter = S::from_rational(&crate::exact::rat(1, 4));
    let mut bs = Vec::with_capacity(n);
    let mut lambdas = vec![S::zero()];
    let mut prev_a: Option<S> = None;
    for k in 0..n {
        let (a_k, b_k, c_k) = recurrence_coeffs(params, k)?;
        bs.push(b_k.mul(&half));
        if k > 0 {
            let prev = prev_a.take().expect("saved by the previous iteration");
            lambdas.push(prev.mul(&c_k).mul(&quarter));
        }
        prev_a = Some(a_k);
    }
    Ok((bs, lambdas))
}

/// phi_n(x; a) = prod over 0 <= k < n of (1 - 2ax q^k + a^2 q^(2k)), the
/// degree-n basis polynomial with roots at the parameter orbit.
pub fn phi_eval<S: Scalar>(n: usize, x: &S, a: &S, q: &S) -> S {
    let two = S::from_int(2);
    let mut prod = S::one();
    let mut qk = S::one();
    for _ in 0..n {
        let factor = S::one()
            .sub(&two.mul(a).mul(x).mul(&qk))
            .add(&a.mul(a).mul(&qk).mul(&qk));
        prod = prod.mul(&factor);
        qk = qk.mul(q);
    }
    prod
}

/// The summand shared by the phi-basis expansion and the explicit moment
/// sum:
///
/// q^(-j^2) a^(-2j) p((q^j a + q^(-j)/a)/2)
///   / [(q;q)_j (q^(1-2j)/a^2;q)_j (q;q)_(k-j) (a^2 q^(1+2j);q)_(k-j)].
fn expansion_term<S: Scalar>(p: &PolySample<S>, a: &S, q: &S, k: usize, j: usize) -> Result<S> {
    let jj = j as i64;
    let a_inv = a.inv().map_err(|_| Error::DegenerateParameters {
        factor: "a".into(),
    })?;
    let q_pos = q.powi(jj).expect("nonnegative power");
    let q_neg = q.powi(-jj).map_err(|_| Error::DegenerateParameters {
        factor: "q".into(),
    })?;

    let x = q_pos.mul(a).add(&q_neg.mul(&a_inv)).mul(&S::from_rational(&crate::exact::rat(1, 2)));
    let numerator = q.powi(-jj * jj)
        .map_err(|_| Error::DegenerateParameters { factor: "q".into() })?
        .mul(&Scalar::pow(&a_inv, 2 * j as u64))
        .mul(&p.eval(&x));

    let qq_j = checked_qq(q, j)?;
    let qq_kj = checked_qq(q, k - j)?;
    let x1 = q.powi(1 - 2 * jj)
        .map_err(|_| Error::DegenerateParameters { factor: "q".into() })?
        .mul(&a_inv)
        .mul(&a_inv);
    let p1 = checked_poch(&x1, q, j, |i| format!("1 - q^{}/a^2", 1 - 2 * jj + i as i64))?;
    let x2 = Scalar::pow(&q_pos, 2).mul(q).mul(a).mul(a);
    let p2 = checked_poch(&x2, q, k - j, |i| format!("1 - a^2*q^{}", 1 + 2 * jj + i as i64))?;

    numerator.div(&qq_j.mul(&p1).mul(&qq_kj).mul(&p2))
}

/// (q; q)_n with each factor checked nonzero.
pub(crate) fn checked_qq<S: Scalar>(q: &S, n: usize) -> Result<S> {
    checked_poch(q, q, n, |i| format!("1 - q^{}", i + 1))
}

/// (x; q)_n with each factor checked nonzero and reported by name.
pub(crate) fn checked_poch<S: Scalar>(
    x: &S,
    q: &S,
    n: usize,
    name: impl Fn(usize) -> String,
) -> Result<S> {
    let mut prod = S::one();
    let mut xq = x.clone();
    for i in 0..n {
        let factor = S::one().sub(&xq);
        ensure_nonzero(&factor, || name(i))?;
        prod = prod.mul(&factor);
        xq = xq.mul(q);
    }
    Ok(prod)
}

/// Expands p in the basis phi_k(x; a): returns p_0..p_n with
/// p = sum of p_k phi_k, via
///
/// p_k = q^k * sum over j of the shared expansion term.
pub fn phi_basis_coeffs<S: Scalar>(p: &PolySample<S>, a: &S, q: &S) -> Result<Vec<S>> {
    let deg = match p.degree() {
        Some(d) => d,
        None => return Ok(Vec::new()),
    };
    let mut out = Vec::with_capacity(deg + 1);
    for k in 0..=deg {
        let mut sum = S::zero();
        for j in 0..=k {
            sum = sum.add(&expansion_term(p, a, q, k, j)?);
        }
        out.push(Scalar::pow(q, k as u64).mul(&sum));
    }
    Ok(out)
}

/// The normalized integral of p against the Askey-Wilson weight:
///
/// integral = sum over k of (ab;q)_k (ac;q)_k (ad;q)_k / (abcd;q)_k
///   times the k-th phi-basis coefficient of p.
pub fn aw_integrate_poly<S: Scalar>(p: &PolySample<S>, params: &AWParams<S>) -> Result<S> {
    let coeffs = phi_basis_coeffs(p, &params.a, &params.q)?;
    let AWParams { a, b, c, d, q } = params;
    let abcd = params.abcd();
    let mut total = S::zero();
    for (k, pk) in coeffs.iter().enumerate() {
        let num = qpochhammer(&a.mul(b), q, k)
            .mul(&qpochhammer(&a.mul(c), q, k))
            .mul(&qpochhammer(&a.mul(d), q, k));
        let den = checked_poch(&abcd, q, k, |i| format!("1 - abcd*q^{i}"))?;
        total = total.add(&num.div(&den)?.mul(pk));
    }
    Ok(total)
}

/// The n-th moment by the explicit double sum (integration of x^n).
pub fn aw_moments_explicit(params: &AWParams, n: usize) -> Result<Rational> {
    aw_integrate_poly(&PolySample::x_power(n), params)
}

/// The n-th moment as the alternating sum
///
/// mu_n = sum over l of (-1)^(n-l) C(n,l) ((1-q)/2)^l Z_l
///        / prod over j < l of (alpha beta - gamma delta q^j),
///
/// with the Greek parameters given by the standard substitution and Z_l the
/// tableau partition function at fugacity 1.
pub fn aw_moments_combinatorial(params: &AWParams, n: usize) -> Result<Rational> {
    let greek = crate::partition::greek_from_abcd(params)?;
    let one = <Rational as Scalar>::one();
    let half_1mq = (&one - &params.q) / crate::exact::int(2);
    let ab = &greek.alpha * &greek.beta;
    let gd = &greek.gamma * &greek.delta;

    let mut total = <Rational as Scalar>::zero();
    let mut denom = one.clone();
    let mut qj = one.clone();
    for l in 0..=n {
        if l > 0 {
            let factor = &ab - &(&gd * &qj);
            ensure_nonzero(&factor, || {
                format!("alpha*beta - gamma*delta*q^{}", l - 1)
            })?;
            denom = &denom * &factor;
            qj = &qj * &params.q;
        }
        let z_l = crate::tableaux::z_poly(l, false)?.eval(&[
            greek.alpha.clone(),
            greek.beta.clone(),
            greek.gamma.clone(),
            greek.delta.clone(),
            params.q.clone(),
            one.clone(),
            one.clone(),
        ]);
        let mut coeff = Rational::from_integer(binomial(n as i64, l as i64));
        if (n - l) % 2 == 1 {
            coeff = -&coeff;
        }
        let term = &(&coeff * &Scalar::pow(&half_1mq, l as u64)) * &(&z_l / &denom);
        total = &total + &term;
    }
    Ok(total)
}

/// The n-th moment by the signed fugacity formula:
///
/// mu_n = (1-q)^n / (2^n i^n prod over j < n of (alpha beta - gamma delta
/// q^j)) * Z_n(-1), with the complex Greek substitution
///
/// alpha = (1-q)/(1 - ac + (a+c)i),  gamma = (1-q)ac/(1 - ac + (a+c)i),
/// beta  = (1-q)/(1 - bd - (b+d)i),  delta = (1-q)bd/(1 - bd - (b+d)i).
///
/// The arithmetic is Gaussian-rational; a nonzero imaginary part in the
/// result signals an implementation bug.
pub fn aw_moments_signed(params: &AWParams, n: usize) -> Result<Rational> {
    let one = <Rational as Scalar>::one();
    let one_minus_q = &one - &params.q;
    let ac = &params.a * &params.c;
    let bd = &params.b * &params.d;

    let den_ac = GaussianRational::new(&one - &ac, &params.a + &params.c);
    ensure_nonzero(&den_ac, || "1 - ac + (a+c)i".into())?;
    let den_bd = GaussianRational::new(&one - &bd, -(&params.b + &params.d));
    ensure_nonzero(&den_bd, || "1 - bd - (b+d)i".into())?;

    let lift = |r: &Rational| GaussianRational::new(r.clone(), <Rational as Scalar>::zero());
    let alpha = lift(&one_minus_q).div(&den_ac)?;
    let beta = lift(&one_minus_q).div(&den_bd)?;
    let gamma = lift(&(&one_minus_q * &ac)).div(&den_ac)?;
    let delta = lift(&(&one_minus_q * &bd)).div(&den_bd)?;
    let q = lift(&params.q);

    let z = crate::tableaux::z_poly(n, false)?.eval(&[
        alpha.clone(),
        beta.clone(),
        gamma.clone(),
        delta.clone(),
        q.clone(),
        <GaussianRational as Scalar>::one(),
        lift(&-&one),
    ]);

    let ab = alpha.mul(&beta);
    let gd = gamma.mul(&delta);
    let mut prod = <GaussianRational as Scalar>::one();
    let mut qj = <GaussianRational as Scalar>::one();
    for j in 0..n {
        let factor = ab.sub(&gd.mul(&qj));
        ensure_nonzero(&factor, || format!("alpha*beta - gamma*delta*q^{j}"))?;
        prod = prod.mul(&factor);
        qj = qj.mul(&q);
    }

    let i_pow = Scalar::pow(&GaussianRational::i(), n as u64);
    let two_pow = lift(&Scalar::pow(&int(2), n as u64));
    let numerator = lift(&Scalar::pow(&one_minus_q, n as u64)).mul(&z);
    numerator.div(&two_pow.mul(&i_pow).mul(&prod))?.expect_real()
}

/// P_n(x; a,b,c,d | q) from the explicit definition
///
/// a^(-n) (ab,ac,ad;q)_n sum over k of
///   (q^(-n);q)_k (q^(n-1)abcd;q)_k q^k / (ab,ac,ad,q;q)_k * phi_k(x;a).
pub fn aw_poly_eval<S: Scalar>(n: usize, x: &S, params: &AWParams<S>) -> Result<S> {
    if n == 0 {
        return Ok(S::one());
    }
    let AWParams { a, b, c, d, q } = params;
    ensure_nonzero(a, || "a".into())?;
    let ab = a.mul(b);
    let ac = a.mul(c);
    let ad = a.mul(d);
    let abcd = params.abcd();
    let nn = n as i64;

    let q_minus_n = q.powi(-nn).map_err(|_| Error::DegenerateParameters {
        factor: "q".into(),
    })?;
    let head = qpow_times(q, nn - 1, &abcd)?;

    let mut sum = S::zero();
    for k in 0..=n {
        let num = qpochhammer(&q_minus_n, q, k)
            .mul(&qpochhammer(&head, q, k))
            .mul(&Scalar::pow(q, k as u64));
        let den = checked_poch(&ab, q, k, |i| format!("1 - ab*q^{i}"))?
            .mul(&checked_poch(&ac, q, k, |i| format!("1 - ac*q^{i}"))?)
            .mul(&checked_poch(&ad, q, k, |i| format!("1 - ad*q^{i}"))?)
            .mul(&checked_qq(q, k)?);
        sum = sum.add(&num.div(&den)?.mul(&phi_eval(k, x, a, q)));
    }

    let prefactor = a
        .powi(-nn)
        .map_err(|_| Error::DegenerateParameters { factor: "a".into() })?
        .mul(&qpochhammer(&ab, q, n))
        .mul(&qpochhammer(&ac, q, n))
        .mul(&qpochhammer(&ad, q, n));
    Ok(prefactor.mul(&sum))
}

/// Coefficient form of P_n, built from the three-term recurrence
/// P_(n+1) = (2x P_n - B_n P_n - C_n P_(n-1)) / A_n with P_0 = 1.
pub fn aw_poly_coeffs(params: &AWParams, n: usize) -> Result<PolySample> {
    let mut prev = PolySample::zero();
    let mut cur = PolySample::one();
    for k in 0..n {
        let (a_k, b_k, c_k) = recurrence_coeffs(params, k)?;
        ensure_nonzero(&a_k, || format!("1 - q^{}*abcd", k as i64 - 1))?;
        let two_x = PolySample::new(vec![<Rational as Scalar>::zero(), crate::exact::int(2)]);
        let next = two_x
            .mul(&cur)
            .add(&cur.scale(&-&b_k))
            .add(&prev.scale(&-&c_k))
            .scale(&a_k.inv()?);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// h_n/h_0 = (1 - q^(n-1)abcd)(q,ab,ac,ad,bc,bd,cd;q)_n
///           / [(1 - q^(2n-1)abcd)(abcd;q)_n].
pub fn hn_ratio(params: &AWParams, n: usize) -> Result<Rational> {
    if n == 0 {
        return Ok(<Rational as Scalar>::one());
    }
    let AWParams { a, b, c, d, q } = params;
    let abcd = params.abcd();
    let nn = n as i64;

    let mut num = one_minus_qpow(q, nn - 1, &abcd)?.mul(&qpochhammer(q, q, n));
    for xy in [
        a.mul(b),
        a.mul(c),
        a.mul(d),
        b.mul(c),
        b.mul(d),
        c.mul(d),
    ] {
        num = num.mul(&qpochhammer(&xy, q, n));
    }

    let f = one_minus_qpow(q, 2 * nn - 1, &abcd)?;
    ensure_nonzero(&f, || format!("1 - q^{}*abcd", 2 * nn - 1))?;
    let poch = checked_poch(&abcd, q, n, |i| format!("1 - abcd*q^{i}"))?;
    num.div(&f.mul(&poch))
}

/// The integral of P_m P_n against the weight, which orthogonality says is
/// delta_(mn) h_n/h_0.
pub fn orthogonality_check(m: usize, n: usize, params: &AWParams) -> Result<Rational> {
    let pm = aw_poly_coeffs(params, m)?;
    let pn = aw_poly_coeffs(params, n)?;
    aw_integrate_poly(&pm.mul(&pn), params)
}

/// The q=0 integral of p against the weight, by residues:
///
/// -(1/2) (1-ab)(1-ac)(1-ad)(1-bc)(1-bd)(1-cd)/(1-abcd) times the sum of
/// the four parameter-pole terms and the residue at z=0 of
/// p((z+1/z)/2)(z-1/z)^2 / (z f(z)) with f(z) the product of (1-xz)(1-x/z)
/// over the parameters.
///
/// Zero parameters contribute no pole term and unit factors to f; the z=0
/// residue runs through the homogeneous-series expansion of 1/f when
/// abcd is nonzero and through direct Laurent inversion otherwise.
pub fn aw_integrate_q0(
    p: &PolySample,
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
) -> Result<Rational> {
    let one = <Rational as Scalar>::one();
    let xs = [a.clone(), b.clone(), c.clone(), d.clone()];
    let names = ["a", "b", "c", "d"];
    let abcd = a * &(b * &(c * d));

    let one_minus_abcd = &one - &abcd;
    ensure_nonzero(&one_minus_abcd, || "1 - abcd".into())?;

    let mut pair_product = one.clone();
    for i in 0..4 {
        for j in (i + 1)..4 {
            pair_product = &pair_product * &(&one - &(&xs[i] * &xs[j]));
        }
    }

    let mut bracket = <Rational as Scalar>::zero();
    for i in 0..4 {
        let x = &xs[i];
        if Scalar::is_zero(x) {
            continue;
        }
        let x_inv = Scalar::inv(x)?;
        let val = p.eval(&(&(x + &x_inv) / crate::exact::int(2)));
        let diff = x - &x_inv;
        let num = &val * &(&diff * &diff);

        let sq = &one - &(x * x);
        ensure_nonzero(&sq, || format!("1 - {0}^2", names[i]))?;
        let mut den = sq;
        for j in 0..4 {
            if j == i {
                continue;
            }
            let prod = &one - &(x * &xs[j]);
            ensure_nonzero(&prod, || format!("1 - {}*{}", names[i], names[j]))?;
            let quot = &one - &(&xs[j] * &x_inv);
            ensure_nonzero(&quot, || format!("1 - {}/{}", names[j], names[i]))?;
            den = &(&den * &prod) * &quot;
        }
        bracket = &bracket + &num.div(&den)?;
    }

    bracket = &bracket + &q0_zero_residue(p, &xs)?;

    let prefactor = &-&crate::exact::rat(1, 2) * &pair_product.div(&one_minus_abcd)?;
    Ok(&prefactor * &bracket)
}

/// Residue at z=0 of p((z+1/z)/2)(z-1/z)^2 / (z f(z)).
fn q0_zero_residue(p: &PolySample, xs: &[Rational; 4]) -> Result<Rational> {
    let nonzero: Vec<&Rational> = xs.iter().filter(|x| !Scalar::is_zero(*x)).collect();
    let k = nonzero.len();
    let deg = match p.degree() {
        Some(d) => d,
        None => return Ok(<Rational as Scalar>::zero()),
    };

    // Laurent coefficients of p((z+1/z)/2): index m+deg holds the z^m
    // coefficient, m from -deg to deg.
    let mut laurent = vec![<Rational as Scalar>::zero(); 2 * deg + 1];
    for (i, coeff) in p.coeffs().iter().enumerate() {
        if Scalar::is_zero(coeff) {
            continue;
        }
        let scale = coeff / &Scalar::pow(&int(2), i as u64);
        // (z + 1/z)^i contributes C(i, t) to z^(2t-i).
        for t in 0..=i {
            let m = 2 * t as i64 - i as i64;
            let idx = (m + deg as i64) as usize;
            laurent[idx] = &laurent[idx]
                + &(&scale * &Rational::from_integer(binomial(i as i64, t as i64)));
        }
    }

    // The inverse power series of Q(z) = prod over nonzero x of
    // (1 - xz)(z - x), needed up to order deg - k + 2.
    let order = (deg as i64 - k as i64 + 2).max(0) as usize;
    let inv_q = if k == 4 {
        // 1/Q = (1/abcd) * sum of H_s z^s with H_s the complete homogeneous
        // symmetric function in the parameters and their reciprocals.
        let abcd = nonzero.iter().fold(<Rational as Scalar>::one(), |acc, x| &acc * *x);
        let mut vars: Vec<Rational> = nonzero.iter().map(|x| (*x).clone()).collect();
        for x in &nonzero {
            vars.push(Scalar::inv(*x)?);
        }
        homogeneous_series(&vars, order)
            .into_iter()
            .map(|h| &h / &abcd)
            .collect::<Vec<_>>()
    } else {
        let mut q_poly = vec![<Rational as Scalar>::one()];
        for x in &nonzero {
            // multiply by (1 - xz)
            q_poly = poly_mul_linear(&q_poly, &one_r(), &-*x);
            // multiply by (z - x)
            q_poly = poly_mul_linear(&q_poly, &-&(*x).clone(), &one_r());
        }
        invert_power_series(&q_poly, order)?
    };

    let fetch = |t: i64| -> Rational {
        if t < 0 || t as usize >= inv_q.len() {
            <Rational as Scalar>::zero()
        } else {
            inv_q[t as usize].clone()
        }
    };

    // [z^(-1)] of p_check(z) (z^(k+1) - 2 z^(k-1) + z^(k-3)) / Q(z).
    let mut res = <Rational as Scalar>::zero();
    for (idx, cm) in laurent.iter().enumerate() {
        if Scalar::is_zero(cm) {
            continue;
        }
        let m = idx as i64 - deg as i64;
        let kk = k as i64;
        let combo = &(&fetch(-m - kk - 2) - &(&crate::exact::int(2) * &fetch(-m - kk)))
            + &fetch(-m - kk + 2);
        res = &res + &(cm * &combo);
    }
    Ok(res)
}

fn one_r() -> Rational {
    int(1)
}

/// Multiplies a polynomial by (c0 + c1 z).
fn poly_mul_linear(p: &[Rational], c1: &Rational, c0: &Rational) -> Vec<Rational> {
    let mut out = vec![<Rational as Scalar>::zero(); p.len() + 1];
    for (i, v) in p.iter().enumerate() {
        out[i] = &out[i] + &(v * c0);
        out[i + 1] = &out[i + 1] + &(v * c1);
    }
    out
}

/// Coefficients of 1/Q as a power series up to the given order (inclusive);
/// Q must have a nonzero constant term.
fn invert_power_series(q_poly: &[Rational], order: usize) -> Result<Vec<Rational>> {
    let q0 = q_poly.first().cloned().unwrap_or_else(<Rational as Scalar>::zero);
    ensure_nonzero(&q0, || "constant term of the pole-free part".into())?;
    let q0_inv = Scalar::inv(&q0)?;
    let mut inv = Vec::with_capacity(order + 1);
    inv.push(q0_inv.clone());
    for t in 1..=order {
        let mut acc = <Rational as Scalar>::zero();
        for i in 1..=t.min(q_poly.len() - 1) {
            acc = &acc + &(&q_poly[i] * &inv[t - i]);
        }
        inv.push(&-&acc * &q0_inv);
    }
    Ok(inv)
}

/// Complete homogeneous symmetric functions H_0..H_order of the variables,
/// by the one-variable-at-a-time recurrence.
pub(crate) fn homogeneous_series(vars: &[Rational], order: usize) -> Vec<Rational> {
    let mut h = vec![<Rational as Scalar>::zero(); order + 1];
    h[0] = <Rational as Scalar>::one();
    for v in vars {
        for s in 1..=order {
            let prev = h[s - 1].clone();
            h[s] = &h[s] + &(v * &prev);
        }
    }
    h
}

/// Cross-checks the four moment routes (explicit sum, tridiagonal
/// recurrence, tableau sum, signed evaluation) at two fixed rational
/// parameter points for every order up to min(n_max, 6).
pub fn agreement_checks(n_max: usize) -> Result<Vec<CheckReport>> {
    use crate::exact::rat;
    use std::time::Instant;

    let cap = n_max.min(6);
    let points = [
        AWParams {
            a: rat(1, 2),
            b: rat(-1, 3),
            c: rat(2, 5),
            d: rat(1, 7),
            q: rat(1, 5),
        },
        AWParams {
            a: rat(3, 8),
            b: rat(-2, 7),
            c: rat(1, 6),
            d: rat(-3, 5),
            q: rat(1, 2),
        },
    ];
    let mut reports = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let started = Instant::now();
        let mut verdict: std::result::Result<(), String> = Ok(());
        for n in 0..=cap {
            let explicit = aw_moments_explicit(p, n)?;
            let tridiag = aw_moments_tridiagonal(p, n)?;
            let comb = aw_moments_combinatorial(p, n)?;
            let signed = aw_moments_signed(p, n)?;
            if explicit != tridiag || explicit != comb || explicit != signed {
                verdict = Err(format!(
                    "n = {n}: explicit {explicit}, tridiagonal {tridiag}, \
                     combinatorial {comb}, signed {signed}"
                ));
                break;
            }
        }
        let name = format!("moment routes agree, point {}", i + 1);
        reports.push(match verdict {
            Ok(()) => CheckReport::pass(name, format!("n <= {cap}"), started.elapsed()),
            Err(detail) => CheckReport::fail(name, detail, started.elapsed()),
        });
    }
    Ok(reports)
}

/// Independently transcribed closed forms of the first two moments, used as
/// test oracles across the crate.
#[doc(hidden)]
pub mod reference {
    use crate::exact::{int, Rational, Scalar};

    /// Sum of the monomials a^(e[0]) b^(e[1]) c^(e[2]) d^(e[3]) over all
    /// distinct permutations of the exponent pattern.
    fn monomial_sum(vals: &[Rational; 4], pattern: [u32; 4]) -> Rational {
        use itertools::Itertools;
        let mut seen = std::collections::BTreeSet::new();
        let mut total = <Rational as Scalar>::zero();
        for perm in pattern.iter().copied().permutations(4) {
            if !seen.insert(perm.clone()) {
                continue;
            }
            let mut term = <Rational as Scalar>::one();
            for (v, &e) in vals.iter().zip(perm.iter()) {
                term = &term * &Scalar::pow(v, e as u64);
            }
            total = &total + &term;
        }
        total
    }

    /// mu_1 = (-a - b - c - d + abc + abd + acd + bcd) / (2(-1 + abcd)).
    pub fn mu1_closed(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Rational {
        let vals = [a.clone(), b.clone(), c.clone(), d.clone()];
        let num = &-&monomial_sum(&vals, [1, 0, 0, 0]) + &monomial_sum(&vals, [1, 1, 1, 0]);
        let den = &int(2) * &(&-&int(1) + &(&(a * b) * &(c * d)));
        &num / &den
    }

    /// mu_2 as printed: the numerator splits into a q-free part and a part
    /// linear in q, each a signed sum of monomial orbits, over the
    /// denominator 4(-1 + abcd)(-1 + abcd q).
    pub fn mu2_closed(
        a: &Rational,
        b: &Rational,
        c: &Rational,
        d: &Rational,
        q: &Rational,
    ) -> Rational {
        let vals = [a.clone(), b.clone(), c.clone(), d.clone()];
        let abcd = &(a * b) * &(c * d);
        let m = |pattern| monomial_sum(&vals, pattern);

        let q0_part = &(&(&(&(&(&int(1) + &m([2, 0, 0, 0])) + &m([1, 1, 0, 0]))
            - &m([2, 1, 1, 0]))
            - &(&int(4) * &abcd))
            + &m([2, 2, 1, 1]))
            - &Scalar::pow(&abcd, 2);
        let q1_part = &(&(&(&(&(&-&int(1) + &m([1, 1, 0, 0])) - &m([2, 1, 1, 0]))
            - &(&int(4) * &abcd))
            + &m([2, 2, 2, 0]))
            + &m([2, 2, 1, 1]))
            + &Scalar::pow(&abcd, 2);

        let num = &q0_part + &(q * &q1_part);
        let den = &(&int(4) * &(&-&int(1) + &abcd)) * &(&-&int(1) + &(&abcd * q));
        &num / &den
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, RatFun};
    use proptest::prelude::*;

    fn params(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64), q: (i64, i64)) -> AWParams {
        AWParams {
            a: rat(a.0, a.1),
            b: rat(b.0, b.1),
            c: rat(c.0, c.1),
            d: rat(d.0, d.1),
            q: rat(q.0, q.1),
        }
    }

    fn standard_point() -> AWParams {
        params((1, 2), (1, 3), (1, 5), (1, 7), (1, 11))
    }

    #[test]
    fn recurrence_coeffs_specializations() {
        // A_0 = 1 when abcd = 0 (the q^(-1) factor never materializes).
        let p = params((1, 2), (1, 3), (0, 1), (0, 1), (1, 5));
        let (a0, _, c0) = recurrence_coeffs(&p, 0).unwrap();
        assert_eq!(a0, int(1));
        assert_eq!(c0, int(0));

        // C_0 = 0 always (factor 1 - q^0).
        let (_, _, c0) = recurrence_coeffs(&standard_point(), 0).unwrap();
        assert_eq!(c0, int(0));
    }

    #[test]
    fn recurrence_matches_polynomial_evaluation() {
        // A_n P_(n+1) + B_n P_n + C_n P_(n-1) = 2x P_n.
        let p = standard_point();
        for x in [int(1), rat(2, 3), int(-2)] {
            for n in 1..=4usize {
                let (a_n, b_n, c_n) = recurrence_coeffs(&p, n).unwrap();
                let lhs = a_n
                    .mul(&aw_poly_eval(n + 1, &x, &p).unwrap())
                    .add(&b_n.mul(&aw_poly_eval(n, &x, &p).unwrap()))
                    .add(&c_n.mul(&aw_poly_eval(n - 1, &x, &p).unwrap()));
                let rhs = &(&int(2) * &x) * &aw_poly_eval(n, &x, &p).unwrap();
                assert_eq!(lhs, rhs, "n = {n}, x = {x}");
            }
        }
    }

    #[test]
    fn aw_poly_matches_recurrence_seed() {
        // P_1 from the definition equals the recurrence seeded at P_0 = 1:
        // P_1 = (2x - B_0)/A_0.
        let p = standard_point();
        let (a0, b0, _) = recurrence_coeffs(&p, 0).unwrap();
        for x in [int(1), rat(-1, 4)] {
            let direct = aw_poly_eval(1, &x, &p).unwrap();
            let from_rec = (&(&int(2) * &x) - &b0).div(&a0).unwrap();
            assert_eq!(direct, from_rec);
        }
        assert_eq!(aw_poly_eval(0, &int(7), &p).unwrap(), int(1));
    }

    #[test]
    fn aw_poly_coeffs_consistent_with_eval() {
        let p = standard_point();
        for n in 0..=3 {
            let coeffs = aw_poly_coeffs(&p, n).unwrap();
            assert_eq!(coeffs.degree(), if n == 0 { Some(0) } else { Some(n) });
            for x in [int(0), int(1), rat(3, 5)] {
                assert_eq!(coeffs.eval(&x), aw_poly_eval(n, &x, &p).unwrap());
            }
        }
    }

    #[test]
    fn tridiag_moment_examples() {
        // Dyck-path counts: all b = 0, all lambda = 1.
        let zeros = vec![int(0); 5];
        let ones = vec![int(1); 5];
        assert_eq!(
            tridiag_moments(&zeros, &ones, 4),
            vec![int(1), int(0), int(1), int(0), int(2)]
        );
        // Constant diagonal, no descents: mu_k = b0^k.
        let bs = vec![rat(3, 2); 5];
        let lambdas = vec![int(0); 5];
        assert_eq!(
            tridiag_moments(&bs, &lambdas, 3),
            vec![int(1), rat(3, 2), rat(9, 4), rat(27, 8)]
        );
    }

    #[test]
    fn explicit_moments_match_printed_closed_forms() {
        let pts = [
            standard_point(),
            params((2, 3), (-1, 4), (1, 6), (3, 7), (2, 5)),
            params((-1, 2), (1, 5), (-2, 7), (1, 9), (1, 3)),
        ];
        for p in pts {
            assert_eq!(aw_moments_explicit(&p, 0).unwrap(), int(1));
            assert_eq!(
                aw_moments_explicit(&p, 1).unwrap(),
                reference::mu1_closed(&p.a, &p.b, &p.c, &p.d)
            );
            assert_eq!(
                aw_moments_explicit(&p, 2).unwrap(),
                reference::mu2_closed(&p.a, &p.b, &p.c, &p.d, &p.q)
            );
        }
    }

    #[test]
    fn four_routes_agree_small() {
        let p = standard_point();
        for n in 0..=3 {
            let explicit = aw_moments_explicit(&p, n).unwrap();
            assert_eq!(aw_moments_tridiagonal(&p, n).unwrap(), explicit, "tridiag n={n}");
            assert_eq!(
                aw_moments_combinatorial(&p, n).unwrap(),
                explicit,
                "combinatorial n={n}"
            );
            assert_eq!(aw_moments_signed(&p, n).unwrap(), explicit, "signed n={n}");
        }
    }

    #[test]
    fn tridiagonal_handles_zero_parameters() {
        let p = params((1, 2), (1, 3), (0, 1), (0, 1), (1, 5));
        for n in 0..=5 {
            assert_eq!(
                aw_moments_tridiagonal(&p, n).unwrap(),
                aw_moments_explicit(&p, n).unwrap(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn phi_basis_examples() {
        let a = rat(1, 2);
        let q = rat(1, 3);
        let one = PolySample::one();
        assert_eq!(phi_basis_coeffs(&one, &a, &q).unwrap(), vec![int(1)]);

        // phi_2 expanded into the monomial basis, then re-expanded in the
        // phi basis, must give the unit vector e_2.
        let phi2 = phi_poly(2, &a, &q);
        let coeffs = phi_basis_coeffs(&phi2, &a, &q).unwrap();
        assert_eq!(coeffs, vec![int(0), int(0), int(1)]);
    }

    /// phi_n as a coefficient polynomial, for tests.
    fn phi_poly(n: usize, a: &Rational, q: &Rational) -> PolySample {
        let mut p = PolySample::one();
        let mut qk = int(1);
        for _ in 0..n {
            let c0 = &int(1) + &(&(a * a) * &(&qk * &qk));
            let c1 = -(&(&int(2) * a) * &qk);
            p = p.mul(&PolySample::new(vec![c0, c1]));
            qk = &qk * q;
        }
        p
    }

    #[test]
    fn phi_basis_reconstruction() {
        let a = rat(2, 5);
        let q = rat(1, 4);
        let p = PolySample::new(vec![int(3), rat(-1, 2), int(0), rat(7, 3), int(1), rat(1, 6)]);
        let coeffs = phi_basis_coeffs(&p, &a, &q).unwrap();
        for xi in -4..4 {
            let x = rat(xi, 3);
            let mut recon = int(0);
            for (k, pk) in coeffs.iter().enumerate() {
                recon = &recon + &(pk * &phi_eval(k, &x, &a, &q));
            }
            assert_eq!(recon, p.eval(&x), "x = {x}");
        }
    }

    #[test]
    fn integrate_poly_examples() {
        let p = standard_point();
        assert_eq!(aw_integrate_poly(&PolySample::one(), &p).unwrap(), int(1));

        // The phi_1 integral collapses to the Pochhammer ratio.
        let phi1 = phi_poly(1, &p.a, &p.q);
        let expected = (&(&(&int(1) - &(&p.a * &p.b)) * &(&int(1) - &(&p.a * &p.c)))
            * &(&int(1) - &(&p.a * &p.d)))
            / &(&int(1) - &(&(&p.a * &p.b) * &(&p.c * &p.d)));
        assert_eq!(aw_integrate_poly(&phi1, &p).unwrap(), expected);

        // x^n integration is the explicit moment by definition.
        for n in 0..=4 {
            assert_eq!(
                aw_integrate_poly(&PolySample::x_power(n), &p).unwrap(),
                aw_moments_explicit(&p, n).unwrap()
            );
        }
    }

    #[test]
    fn hn_ratio_examples() {
        let p = standard_point();
        assert_eq!(hn_ratio(&p, 0).unwrap(), int(1));

        // abcd = 0 specialization: plain product of the pair factors.
        let p0 = params((1, 2), (1, 3), (1, 5), (0, 1), (1, 7));
        let mut expected = &int(1) - &p0.q;
        for xy in [
            &p0.a * &p0.b,
            &p0.a * &p0.c,
            &p0.a * &p0.d,
            &p0.b * &p0.c,
            &p0.b * &p0.d,
            &p0.c * &p0.d,
        ] {
            expected = &expected * &(&int(1) - &xy);
        }
        assert_eq!(hn_ratio(&p0, 1).unwrap(), expected);
    }

    #[test]
    fn orthogonality_small() {
        let p = standard_point();
        assert_eq!(orthogonality_check(0, 0, &p).unwrap(), int(1));
        assert_eq!(orthogonality_check(0, 1, &p).unwrap(), int(0));
        assert_eq!(orthogonality_check(1, 2, &p).unwrap(), int(0));
        assert_eq!(orthogonality_check(2, 2, &p).unwrap(), hn_ratio(&p, 2).unwrap());
    }

    fn integrate_at_q0_symbolically(p: &PolySample, a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Rational {
        let lifted = p.lift(RatFun::constant);
        let params = AWParams::<RatFun> {
            a: RatFun::constant(a),
            b: RatFun::constant(b),
            c: RatFun::constant(c),
            d: RatFun::constant(d),
            q: RatFun::gen(),
        };
        aw_integrate_poly(&lifted, &params)
            .unwrap()
            .eval_at(&int(0))
            .unwrap()
    }

    #[test]
    fn q0_integral_matches_symbolic_specialization() {
        let (a, b, c, d) = (rat(1, 2), rat(1, 3), rat(-1, 5), rat(2, 7));
        for deg in 0..=4 {
            let p = PolySample::x_power(deg);
            let residue_route = aw_integrate_q0(&p, &a, &b, &c, &d).unwrap();
            let series_route = integrate_at_q0_symbolically(&p, &a, &b, &c, &d);
            assert_eq!(residue_route, series_route, "degree {deg}");
        }
    }

    #[test]
    fn q0_integral_with_zero_parameters() {
        let p = PolySample::new(vec![int(1), int(2), int(3)]);
        // One zero parameter: the pole sum skips it, the z=0 residue uses
        // direct Laurent inversion.
        let (a, b, c, d) = (rat(1, 2), rat(1, 3), int(0), rat(2, 7));
        assert_eq!(
            aw_integrate_q0(&p, &a, &b, &c, &d).unwrap(),
            integrate_at_q0_symbolically(&p, &a, &b, &c, &d)
        );
        // All parameters zero: only the residue term survives and the
        // weight is the free one.
        assert_eq!(
            aw_integrate_q0(&PolySample::one(), &int(0), &int(0), &int(0), &int(0)).unwrap(),
            int(1)
        );
    }

    #[test]
    fn q0_residue_routes_agree() {
        // The homogeneous-series expansion and direct power-series
        // inversion compute the same z=0 residue when all parameters are
        // nonzero: compare the full integral against a hand-assembled run
        // that forces the inversion path by scaling one parameter to zero
        // and back is not possible, so instead check the H-series against
        // the inverted series directly.
        let xs = [rat(1, 2), rat(1, 3), rat(-1, 5), rat(2, 7)];
        let abcd = xs.iter().fold(int(1), |acc, x| &acc * x);
        let mut vars: Vec<Rational> = xs.to_vec();
        for x in &xs {
            vars.push(Scalar::inv(x).unwrap());
        }
        let h = homogeneous_series(&vars, 6);

        let mut q_poly = vec![int(1)];
        for x in &xs {
            q_poly = poly_mul_linear(&q_poly, &int(1), &-x);
            q_poly = poly_mul_linear(&q_poly, &-x.clone(), &int(1));
        }
        let inv = invert_power_series(&q_poly, 6).unwrap();
        for s in 0..=6 {
            assert_eq!(&h[s] / &abcd, inv[s], "order {s}");
        }
    }

    #[test]
    fn degenerate_points_are_named() {
        // abcd = 1 breaks the Pochhammer denominator.
        let p = params((1, 2), (2, 1), (1, 3), (3, 1), (1, 5));
        let err = aw_moments_explicit(&p, 2).unwrap_err();
        assert!(matches!(err, Error::DegenerateParameters { .. }), "{err}");
        let err = aw_integrate_q0(&PolySample::x_power(1), &rat(1, 2), &rat(2, 1), &rat(1, 3), &rat(3, 1)).unwrap_err();
        assert!(err.to_string().contains("abcd"), "{err}");
    }

    #[test]
    fn signed_route_flags_internal_inconsistency() {
        // The signed formula must produce real outputs at admissible
        // points; check the plumbing catches a denominator degeneracy too.
        let p = standard_point();
        assert_eq!(aw_moments_signed(&p, 0).unwrap(), int(1));
        assert_eq!(
            aw_moments_signed(&p, 2).unwrap(),
            reference::mu2_closed(&p.a, &p.b, &p.c, &p.d, &p.q)
        );
    }

    #[test]
    fn agreement_suite_passes() {
        let reports = agreement_checks(3).unwrap();
        assert_eq!(reports.len(), 2);
        for r in &reports {
            assert!(r.passed(), "{r}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn explicit_moments_are_parameter_symmetric(
            an in 1i64..6, bn in 1i64..6, cn in 1i64..6, dn in 1i64..6, n in 0usize..4
        ) {
            let p = params((an, 7), (bn, 11), (cn, 13), (dn, 17), (1, 3));
            let base = aw_moments_explicit(&p, n).unwrap();
            let swapped = AWParams { a: p.d.clone(), b: p.c.clone(), c: p.b.clone(), d: p.a.clone(), q: p.q.clone() };
            prop_assert_eq!(aw_moments_explicit(&swapped, n).unwrap(), base);
        }
    }
}
