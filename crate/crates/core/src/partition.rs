//! Closed forms for the fugacity partition function Z_n(y): the explicit
//! double sum, the q=0 residue formula, the q=1 product, the
//! generating-function columns, and the factorization specializations,
//! together with the parameter substitutions that connect the Greek tableau
//! weights (alpha, beta, gamma, delta) to the orthogonal-polynomial
//! parameters (a, b, c, d).

use std::time::Instant;

use crate::error::{Error, Result};
use crate::exact::{
    binomial, factorial, int, qpochhammer, rational_sqrt, QuadExt, Rational, Scalar,
};
use crate::moments::{checked_poch, checked_qq, ensure_nonzero, AWParams};
use crate::polyring::{MultiPoly, TruncatedSeries, ALPHA, BETA, DELTA, GAMMA, Q, Y};
use crate::report::CheckReport;

/// The tableau-side weights together with the bulk parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreekParams {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub delta: Rational,
    pub q: Rational,
    pub y: Rational,
}

/// The standard substitution from (a,b,c,d,q) to the tableau weights:
///
/// alpha = (1-q)/(1+ac+a+c),   gamma = -(1-q)ac/(1+ac+a+c),
/// beta  = (1-q)/(1+bd+b+d),   delta = -(1-q)bd/(1+bd+b+d),
///
/// with y defaulting to 1 (the substitution does not determine it).
pub fn greek_from_abcd(params: &AWParams) -> Result<GreekParams> {
    let one = int(1);
    let ac = &params.a * &params.c;
    let bd = &params.b * &params.d;
    let den_ac = &(&(&one + &ac) + &params.a) + &params.c;
    ensure_nonzero(&den_ac, || "1 + ac + a + c".into())?;
    let den_bd = &(&(&one + &bd) + &params.b) + &params.d;
    ensure_nonzero(&den_bd, || "1 + bd + b + d".into())?;

    let one_minus_q = &one - &params.q;
    Ok(GreekParams {
        alpha: &one_minus_q / &den_ac,
        beta: &one_minus_q / &den_bd,
        gamma: &-&(&one_minus_q * &ac) / &den_ac,
        delta: &-&(&one_minus_q * &bd) / &den_bd,
        q: params.q.clone(),
        y: one,
    })
}

/// The inverse substitution:
///
/// a, c = [(1-q-alpha+gamma) +- sqrt((1-q-alpha+gamma)^2 + 4 alpha gamma)]
///        / (2 alpha),
/// b, d = [(1-q-beta+delta) +- sqrt((1-q-beta+delta)^2 + 4 beta delta)]
///        / (2 beta),
///
/// defined over the rationals only when both discriminants are perfect
/// squares.
pub fn abcd_from_greek(g: &GreekParams) -> Result<AWParams> {
    let solve = |weight_in: &Rational,
                 weight_out: &Rational,
                 name_in: &str,
                 name_out: &str|
     -> Result<(Rational, Rational)> {
        if Scalar::is_zero(weight_in) {
            return Err(Error::ZeroDenominator(format!("2*{name_in}")));
        }
        let head = &(&(&int(1) - &g.q) - weight_in) + weight_out;
        let disc = &(&head * &head) + &(&(&int(4) * weight_in) * weight_out);
        let root = rational_sqrt(&disc).ok_or_else(|| {
            Error::IrrationalDiscriminant(format!(
                "(1 - q - {name_in} + {name_out})^2 + 4*{name_in}*{name_out} = {disc}"
            ))
        })?;
        let two_w = &int(2) * weight_in;
        Ok((&(&head + &root) / &two_w, &(&head - &root) / &two_w))
    };
    let (a, c) = solve(&g.alpha, &g.gamma, "alpha", "gamma")?;
    let (b, d) = solve(&g.beta, &g.delta, "beta", "delta")?;
    Ok(AWParams {
        a,
        b,
        c,
        d,
        q: g.q.clone(),
    })
}

/// The fugacity partition function by the explicit double sum:
///
/// Z_n(y) = (abcd;q)_n (alpha beta/(1-q))^n sum over k of
///   (ab;q)_k (ac/y;q)_k (ad;q)_k / (abcd;q)_k * q^k * sum over j of
///   q^(-j^2) (y/a^2)^j (1 + y + q^j a + q^(-j) y/a)^n
///   / [(q;q)_j ((y/a^2)q^(1-2j);q)_j (q;q)_(k-j) ((a^2/y)q^(1+2j);q)_(k-j)],
///
/// with alpha, beta from the standard substitution. Every term is rational
/// in y.
pub fn z_fugacity_explicit(params: &AWParams, y: &Rational, n: usize) -> Result<Rational> {
    let AWParams { a, b, c, d, q } = params;
    ensure_nonzero(a, || "a".into())?;
    ensure_nonzero(y, || "y".into())?;
    let one = int(1);
    let one_minus_q = &one - q;
    ensure_nonzero(&one_minus_q, || "1 - q".into())?;

    let greek = greek_from_abcd(params)?;
    let alpha_beta = &greek.alpha * &greek.beta;
    let abcd = &(a * b) * &(c * d);
    let a2_over_y = &(a * a) / y;
    let y_over_a2 = Scalar::inv(&a2_over_y)?;
    let y_over_a = y / a;

    let qpow = |e: i64| -> Result<Rational> {
        params.q.powi(e).map_err(|_| Error::DegenerateParameters {
            factor: "q".into(),
        })
    };

    let mut total = <Rational as Scalar>::zero();
    for k in 0..=n {
        let ratio = &(&(&qpochhammer(&(a * b), q, k) * &qpochhammer(&(&(a * c) / y), q, k))
            * &qpochhammer(&(a * d), q, k))
            / &checked_poch(&abcd, q, k, |i| format!("1 - abcd*q^{i}"))?;
        let mut inner = <Rational as Scalar>::zero();
        for j in 0..=k {
            let jj = j as i64;
            let base = &(&(&one + y) + &(&qpow(jj)? * a)) + &(&qpow(-jj)? * &y_over_a);
            let num = &(&qpow(-jj * jj)? * &Scalar::pow(&y_over_a2, j as u64))
                * &Scalar::pow(&base, n as u64);
            let p1 = checked_poch(&(&y_over_a2 * &qpow(1 - 2 * jj)?), q, j, |i| {
                format!("1 - y*q^{}/a^2", 1 - 2 * jj + i as i64)
            })?;
            let p2 = checked_poch(&(&a2_over_y * &qpow(1 + 2 * jj)?), q, k - j, |i| {
                format!("1 - a^2*q^{}/y", 1 + 2 * jj + i as i64)
            })?;
            let den = &(&checked_qq(q, j)? * &p1) * &(&checked_qq(q, k - j)? * &p2);
            inner = &inner + &num.div(&den)?;
        }
        total = &total + &(&ratio * &(&Scalar::pow(q, k as u64) * &inner));
    }

    let prefactor = &qpochhammer(&abcd, q, n)
        * &Scalar::pow(&(&alpha_beta / &one_minus_q), n as u64);
    Ok(&prefactor * &total)
}

/// Complete homogeneous symmetric series h_0..h_max of the given variables.
pub(crate) fn homog_series<S: Scalar>(vars: &[S], max: usize) -> Vec<S> {
    let mut h = vec![S::zero(); max + 1];
    h[0] = S::one();
    for v in vars {
        for s in 1..=max {
            let prev = h[s - 1].clone();
            h[s] = h[s].add(&v.mul(&prev));
        }
    }
    h
}

/// The complete homogeneous symmetric function of degree m in the eight
/// variables A, B, C, D, 1/A, 1/B, 1/C, 1/D; zero for negative m.
pub fn homog_sym_8<S: Scalar>(m: i64, a: &S, b: &S, c: &S, d: &S) -> Result<S> {
    if m < 0 {
        return Ok(S::zero());
    }
    let mut vars = Vec::with_capacity(8);
    for (v, name) in [(a, "A"), (b, "B"), (c, "C"), (d, "D")] {
        ensure_nonzero(v, || name.into())?;
        vars.push(v.clone());
        vars.push(v.inv()?);
    }
    Ok(homog_series(&vars, m as usize).pop().expect("h_m present"))
}

/// The q=0 partition function by the residue formula, with A = a/sqrt(y),
/// B = b sqrt(y), C = c/sqrt(y), D = d sqrt(y):
///
/// ```text
/// Z_n(y;...;0) = -(alpha beta)^n / 2
///   * (1-AB)(1-AC)(1-AD)(1-BC)(1-BD)(1-CD)
///   * [ sum over X in {A,B,C,D} of
///         (1 + (1/X + X) sqrt(y) + y)^n (X - 1/X)^2
///         / ((1 - X^2) prod over X' != X of (1 - X'X)(1 - X'/X))
///     + (1/ABCD) sum over j,k of C(n,k) C(n,j) sqrt(y)^(n+k-j)
///         (H_(n-2-k-j) - 2 H_(n-4-k-j) + H_(n-6-k-j)) ],
/// ```
///
/// where H is the homogeneous symmetric function in the eight variables and
/// alpha, beta come from the standard substitution at q = 0. The arithmetic
/// runs in Q(sqrt(y)) and the radical component must cancel.
pub fn z_q0_explicit(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
    y: &Rational,
    n: usize,
) -> Result<Rational> {
    if n == 0 {
        return Ok(int(1));
    }
    ensure_nonzero(y, || "y".into())?;
    let one = <QuadExt as Scalar>::one();
    let two = QuadExt::from_rat(&int(2));
    let r = QuadExt::sqrt_of(y);
    let r_inv = r.inv()?;
    let shifted = [
        QuadExt::from_rat(a).mul(&r_inv),
        QuadExt::from_rat(b).mul(&r),
        QuadExt::from_rat(c).mul(&r_inv),
        QuadExt::from_rat(d).mul(&r),
    ];
    let names = ["A", "B", "C", "D"];

    let mut pair_product = one.clone();
    for i in 0..4 {
        for j in (i + 1)..4 {
            pair_product = pair_product.mul(&one.sub(&shifted[i].mul(&shifted[j])));
        }
    }

    // Pole terms at z = X.
    let y_lift = QuadExt::from_rat(y);
    let mut bracket = <QuadExt as Scalar>::zero();
    for i in 0..4 {
        let x = &shifted[i];
        ensure_nonzero(x, || names[i].into())?;
        let x_inv = x.inv()?;
        let base = one.add(&x_inv.add(x).mul(&r)).add(&y_lift);
        let diff = x.sub(&x_inv);
        let num = Scalar::pow(&base, n as u64).mul(&diff.mul(&diff));

        let sq = one.sub(&x.mul(x));
        ensure_nonzero(&sq, || format!("1 - {0}^2", names[i]))?;
        let mut den = sq;
        for j in 0..4 {
            if j == i {
                continue;
            }
            let prod = one.sub(&shifted[j].mul(x));
            ensure_nonzero(&prod, || format!("1 - {}*{}", names[j], names[i]))?;
            let quot = one.sub(&shifted[j].mul(&x_inv));
            ensure_nonzero(&quot, || format!("1 - {}/{}", names[j], names[i]))?;
            den = den.mul(&prod).mul(&quot);
        }
        bracket = bracket.add(&num.div(&den)?);
    }

    // Residue at z = 0, as the double binomial sum over the homogeneous
    // symmetric series.
    let mut vars = Vec::with_capacity(8);
    for x in &shifted {
        vars.push(x.clone());
        vars.push(x.inv()?);
    }
    let h_max = n.saturating_sub(2);
    let h = homog_series(&vars, h_max);
    let fetch = |m: i64| -> QuadExt {
        if m < 0 || m as usize >= h.len() {
            <QuadExt as Scalar>::zero()
        } else {
            h[m as usize].clone()
        }
    };
    let abcd = shifted
        .iter()
        .fold(one.clone(), |acc, x| acc.mul(x));
    let abcd_inv = abcd.inv()?;
    let mut residue = <QuadExt as Scalar>::zero();
    for k in 0..=n as i64 {
        for j in 0..=n as i64 {
            let m = n as i64 - k - j;
            let combo = fetch(m - 2).sub(&two.mul(&fetch(m - 4))).add(&fetch(m - 6));
            if Scalar::is_zero(&combo) {
                continue;
            }
            let coeff = &Rational::from_integer(binomial(n as i64, k))
                * &Rational::from_integer(binomial(n as i64, j));
            let power = Scalar::pow(&r, (n as i64 + k - j) as u64);
            residue = residue.add(&QuadExt::from_rat(&coeff).mul(&power).mul(&combo));
        }
    }
    bracket = bracket.add(&abcd_inv.mul(&residue));

    let greek = greek_from_abcd(&AWParams {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        d: d.clone(),
        q: <Rational as Scalar>::zero(),
    })?;
    let alpha_beta = &greek.alpha * &greek.beta;
    let prefactor = QuadExt::from_rat(&(&-&Scalar::pow(&alpha_beta, n as u64) / &int(2)));
    prefactor.mul(&pair_product).mul(&bracket).expect_rational()
}

/// The q = y = 1 partition function as a symbolic product:
///
/// Z_n(1;...;1) = prod over 0 <= j < n of
///   (alpha + beta + gamma + delta + j (alpha+gamma)(beta+delta)).
pub fn z_q1_closed(n: usize) -> MultiPoly {
    let alpha = MultiPoly::var(ALPHA);
    let beta = MultiPoly::var(BETA);
    let gamma = MultiPoly::var(GAMMA);
    let delta = MultiPoly::var(DELTA);
    let sum = alpha.add(&beta).add(&gamma).add(&delta);
    let cross = alpha.add(&gamma).mul(&beta.add(&delta));
    let mut prod = MultiPoly::one();
    for j in 0..n {
        prod = prod.mul(&sum.add(&cross.scale(&int(j as i64))));
    }
    prod
}

/// The three tabulated generating-function specializations, all sharing the
/// substitution w = t/((1+t)(1+yt)).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenfunSpec {
    /// alpha = beta = 1, gamma = delta = q = 0: F = (1+t)(1+yt).
    Narayana,
    /// alpha = beta = gamma = 1, delta = q = 0:
    /// F = (1+t)(1+yt)/(1-t-t^2).
    OddFib,
    /// alpha = beta = gamma = delta = 1, q = 0:
    /// F = 2(1+y)t(1+t)(1+yt)/((1-t-t^2)(1-yt-y^2t^2)), starting at n = 1.
    Fib2,
}

impl GenfunSpec {
    pub fn name(self) -> &'static str {
        match self {
            GenfunSpec::Narayana => "narayana",
            GenfunSpec::OddFib => "odd_fib",
            GenfunSpec::Fib2 => "fib2",
        }
    }
}

impl std::str::FromStr for GenfunSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "narayana" => Ok(GenfunSpec::Narayana),
            "odd_fib" => Ok(GenfunSpec::OddFib),
            "fib2" => Ok(GenfunSpec::Fib2),
            other => Err(Error::Parse(format!(
                "unknown generating-function spec {other:?} (expected narayana, odd_fib, or fib2)"
            ))),
        }
    }
}

/// Coefficients Z_0..Z_n_max (polynomials in y) of the chosen generating
/// function, computed by reverting w(t) and composing.
pub fn genfun_coeffs(spec: GenfunSpec, n_max: usize) -> Result<Vec<MultiPoly>> {
    let order = n_max + 1;
    let one = TruncatedSeries::one(order);
    let t = TruncatedSeries::t(order);
    let y = MultiPoly::var(Y);
    let one_plus_t = one.add(&t);
    let one_plus_yt = one.add(&t.scale(&y));

    let w = t.mul(&one_plus_t.mul(&one_plus_yt).invert()?);
    let t_of_w = w.reverse()?;

    let fib_den = one.sub(&t).sub(&t.mul(&t));
    let f = match spec {
        GenfunSpec::Narayana => one_plus_t.mul(&one_plus_yt),
        GenfunSpec::OddFib => one_plus_t.mul(&one_plus_yt).mul(&fib_den.invert()?),
        GenfunSpec::Fib2 => {
            let y2t2 = t.mul(&t).scale(&y.mul(&y));
            let fib_y_den = one.sub(&t.scale(&y)).sub(&y2t2);
            let front = y.add(&MultiPoly::one()).scale(&int(2));
            t.scale(&front)
                .mul(&one_plus_t)
                .mul(&one_plus_yt)
                .mul(&fib_den.invert()?)
                .mul(&fib_y_den.invert()?)
        }
    };
    let z = f.compose(&t_of_w)?;
    Ok((0..=n_max).map(|k| z.coeff(k)).collect())
}

/// Runs the factorization and specialization identities against the
/// enumeration polynomial, one report per identity family.
pub fn factorization_checks(n_max: usize) -> Result<Vec<CheckReport>> {
    let alpha = MultiPoly::var(ALPHA);
    let gamma = MultiPoly::var(GAMMA);
    let q_var = MultiPoly::var(Q);
    let y_var = MultiPoly::var(Y);
    let one = int(1);

    let mut reports = Vec::new();
    let mut run = |name: &str, body: &dyn Fn() -> Result<std::result::Result<(), String>>| {
        let started = Instant::now();
        let report = match body() {
            Ok(Ok(())) => CheckReport::pass(name, format!("n <= {n_max}"), started.elapsed()),
            Ok(Err(detail)) => CheckReport::fail(name, detail, started.elapsed()),
            Err(e) => CheckReport::fail(name, e.to_string(), started.elapsed()),
        };
        reports.push(report);
    };

    run("delta=-beta product", &|| {
        for n in 0..=n_max {
            let lhs = crate::tableaux::z_poly(n, false)?
                .subst_poly(DELTA, &MultiPoly::var(BETA).neg())
                .subst_scalar(Y, &one);
            let mut rhs = MultiPoly::one();
            for j in 0..n {
                rhs = rhs.mul(&alpha.add(&q_var.pow(j as u64).mul(&gamma)));
            }
            if lhs != rhs {
                return Ok(Err(format!("n = {n}: {lhs} != {rhs}")));
            }
        }
        Ok(Ok(()))
    });

    run("y=-1 delta=beta product", &|| {
        for n in 0..=n_max {
            let lhs = crate::tableaux::z_poly(n, false)?
                .subst_poly(DELTA, &MultiPoly::var(BETA))
                .subst_scalar(Y, &-&one);
            let mut rhs = MultiPoly::one();
            for j in 0..n {
                rhs = rhs.mul(&alpha.sub(&q_var.pow(j as u64).mul(&gamma)));
            }
            if n % 2 == 1 {
                rhs = rhs.neg();
            }
            if lhs != rhs {
                return Ok(Err(format!("n = {n}: {lhs} != {rhs}")));
            }
        }
        Ok(Ok(()))
    });

    run("equal parameters vanish at q=-1", &|| {
        for n in 3..=n_max {
            let lhs = crate::tableaux::z_poly(n, false)?
                .subst_poly(BETA, &alpha)
                .subst_poly(GAMMA, &alpha)
                .subst_poly(DELTA, &alpha)
                .subst_scalar(Q, &-&one);
            if !lhs.is_zero() {
                return Ok(Err(format!("n = {n}: {lhs} != 0")));
            }
        }
        Ok(Ok(()))
    });

    run("beta=delta=0 product", &|| {
        for n in 0..=n_max {
            let lhs = crate::tableaux::z_poly(n, false)?
                .subst_scalar(BETA, &<Rational as Scalar>::zero())
                .subst_scalar(DELTA, &<Rational as Scalar>::zero());
            let mut rhs = MultiPoly::one();
            for j in 0..n {
                rhs = rhs.mul(&y_var.mul(&alpha).add(&q_var.pow(j as u64).mul(&gamma)));
            }
            if lhs != rhs {
                return Ok(Err(format!("n = {n}: {lhs} != {rhs}")));
            }
        }
        Ok(Ok(()))
    });

    run("two-parameter binomial at q=-1", &|| {
        for n in 0..=n_max {
            let lhs = crate::tableaux::z_poly(n, false)?
                .subst_scalar(ALPHA, &one)
                .subst_scalar(BETA, &one)
                .subst_scalar(GAMMA, &<Rational as Scalar>::zero())
                .subst_scalar(DELTA, &<Rational as Scalar>::zero())
                .subst_scalar(Q, &-&one);
            let rhs = y_var.add(&MultiPoly::one()).pow(n as u64);
            if lhs != rhs {
                return Ok(Err(format!("n = {n}: {lhs} != {rhs}")));
            }
        }
        Ok(Ok(()))
    });

    run("all-ones growth at q=1", &|| {
        for n in 0..=n_max {
            let lhs = crate::tableaux::z_poly(n, false)?
                .subst_scalar(ALPHA, &one)
                .subst_scalar(BETA, &one)
                .subst_scalar(GAMMA, &one)
                .subst_scalar(DELTA, &one)
                .subst_scalar(Q, &one);
            let scale = &Scalar::pow(&int(2), n as u64) * &Rational::from_integer(factorial(n as u64));
            let rhs = y_var.add(&MultiPoly::one()).pow(n as u64).scale(&scale);
            if lhs != rhs {
                return Ok(Err(format!("n = {n}: {lhs} != {rhs}")));
            }
        }
        Ok(Ok(()))
    });

    run("catalan column", &|| {
        for n in 0..=n_max {
            let lhs = crate::tableaux::z_poly(n, false)?.eval(&[
                one.clone(),
                one.clone(),
                <Rational as Scalar>::zero(),
                <Rational as Scalar>::zero(),
                <Rational as Scalar>::zero(),
                one.clone(),
                one.clone(),
            ]);
            let rhs = &Rational::from_integer(binomial(2 * n as i64 + 2, n as i64 + 1))
                / &int(n as i64 + 2);
            if lhs != rhs {
                return Ok(Err(format!("n = {n}: {lhs} != {rhs}")));
            }
        }
        Ok(Ok(()))
    });

    if n_max < 3 {
        for r in reports.iter_mut() {
            if r.name == "equal parameters vanish at q=-1" {
                *r = CheckReport::skip(r.name.clone(), "needs n_max >= 3");
            }
        }
    }
    Ok(reports)
}

/// Compares each generating-function family against direct tableau
/// enumeration at q = 0, column by column up to min(n_max, 5).
pub fn genfun_checks(n_max: usize) -> Result<Vec<CheckReport>> {
    let cap = n_max.min(5);
    [GenfunSpec::Narayana, GenfunSpec::OddFib, GenfunSpec::Fib2]
        .into_iter()
        .map(|spec| genfun_family_check(spec, cap))
        .collect()
}

/// Checks one series family against brute-force tableau weights for every
/// column up to `order`. The four-letter family starts at column 1: its
/// series has no constant term, while the empty tableau counts 1.
pub fn genfun_family_check(spec: GenfunSpec, order: usize) -> Result<CheckReport> {
    use crate::tableaux::{visit_tableaux, Label, ALL_LABELS};

    let labels: &[Label] = match spec {
        GenfunSpec::Narayana => &[Label::Alpha, Label::Beta],
        GenfunSpec::OddFib => &[Label::Alpha, Label::Beta, Label::Gamma],
        GenfunSpec::Fib2 => &ALL_LABELS,
    };
    let started = Instant::now();
    let columns = genfun_coeffs(spec, order)?;
    let start = if matches!(spec, GenfunSpec::Fib2) { 1 } else { 0 };
    let mut verdict: std::result::Result<(), String> = Ok(());
    for (n, column) in columns.iter().enumerate().take(order + 1).skip(start) {
        let mut brute = MultiPoly::zero();
        let y = MultiPoly::var(Y);
        visit_tableaux(n, labels, None, |_, w| {
            if w.q == 0 {
                brute = brute.add(&y.pow(w.bullets as u64));
            }
        })?;
        if *column != brute {
            verdict = Err(format!("column {n}: {column} != {brute}"));
            break;
        }
    }
    let name = format!("series columns, {} family", spec.name());
    Ok(match verdict {
        Ok(()) => CheckReport::pass(name, format!("n <= {order}"), started.elapsed()),
        Err(detail) => CheckReport::fail(name, detail, started.elapsed()),
    })
}

/// Checks the closed-form counting rows against direct enumeration:
/// 4^n n! tableaux in total, 2^n n! of each type, (n+1)! with two letters,
/// and (2n+1)!! with three.
pub fn count_checks(n_max: usize) -> Result<Vec<CheckReport>> {
    use crate::combinat::count_with_labels;
    use crate::exact::{factorial, odd_double_factorial, Int};
    use crate::tableaux::{enumerate_count, enumerate_type, Label, TypeWord, ALL_LABELS};

    let mut reports = Vec::new();

    let cap = n_max.min(6);
    let started = Instant::now();
    let mut verdict: std::result::Result<(), String> = Ok(());
    for n in 0..=cap {
        let expected = Int::from(4).pow(n as u32) * factorial(n as u64);
        let counted = Int::from(enumerate_count(n)?);
        if counted != expected {
            verdict = Err(format!("n = {n}: {counted} != {expected}"));
            break;
        }
    }
    reports.push(match verdict {
        Ok(()) => CheckReport::pass("total count row", format!("n <= {cap}"), started.elapsed()),
        Err(detail) => CheckReport::fail("total count row", detail, started.elapsed()),
    });

    let cap = n_max.min(5);
    let started = Instant::now();
    let mut verdict: std::result::Result<(), String> = Ok(());
    'outer: for n in 0..=cap {
        let expected = Int::from(2).pow(n as u32) * factorial(n as u64);
        for sigma in TypeWord::all(n) {
            let counted = Int::from(enumerate_type(&sigma)?.len());
            if counted != expected {
                verdict = Err(format!("type {sigma}: {counted} != {expected}"));
                break 'outer;
            }
        }
    }
    reports.push(match verdict {
        Ok(()) => CheckReport::pass("per-type count row", format!("n <= {cap}"), started.elapsed()),
        Err(detail) => CheckReport::fail("per-type count row", detail, started.elapsed()),
    });

    let cap = n_max.min(6);
    for (name, labels, expected_fn) in [
        (
            "two-letter count row",
            &[Label::Alpha, Label::Beta][..],
            Box::new(|n: usize| factorial(n as u64 + 1)) as Box<dyn Fn(usize) -> Int>,
        ),
        (
            "three-letter count row",
            &ALL_LABELS[..3],
            Box::new(|n: usize| odd_double_factorial(n as u64)),
        ),
    ] {
        let started = Instant::now();
        let mut verdict: std::result::Result<(), String> = Ok(());
        for n in 0..=cap {
            let counted = Int::from(count_with_labels(n, labels)?);
            let expected = expected_fn(n);
            if counted != expected {
                verdict = Err(format!("n = {n}: {counted} != {expected}"));
                break;
            }
        }
        reports.push(match verdict {
            Ok(()) => CheckReport::pass(name, format!("n <= {cap}"), started.elapsed()),
            Err(detail) => CheckReport::fail(name, detail, started.elapsed()),
        });
    }

    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::moments::tridiag_moments;
    use crate::polyring::U;
    use proptest::prelude::*;

    fn aw(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64), q: (i64, i64)) -> AWParams {
        AWParams {
            a: rat(a.0, a.1),
            b: rat(b.0, b.1),
            c: rat(c.0, c.1),
            d: rat(d.0, d.1),
            q: rat(q.0, q.1),
        }
    }

    #[test]
    fn greek_substitution_examples() {
        let zeroes = aw((0, 1), (0, 1), (0, 1), (0, 1), (1, 3));
        let g = greek_from_abcd(&zeroes).unwrap();
        assert_eq!(g.alpha, rat(2, 3));
        assert_eq!(g.beta, rat(2, 3));
        assert_eq!(g.gamma, int(0));
        assert_eq!(g.delta, int(0));

        let point = aw((1, 1), (0, 1), (0, 1), (0, 1), (0, 1));
        let g = greek_from_abcd(&point).unwrap();
        assert_eq!(g.alpha, rat(1, 2));
        assert_eq!(g.beta, int(1));
        assert_eq!(g.gamma, int(0));
        assert_eq!(g.delta, int(0));
    }

    #[test]
    fn greek_round_trip() {
        let points = [
            aw((1, 2), (1, 3), (1, 5), (1, 7), (1, 11)),
            aw((2, 3), (-1, 4), (1, 6), (3, 7), (2, 5)),
            aw((3, 4), (1, 2), (-1, 3), (1, 8), (1, 2)),
            aw((1, 2), (1, 3), (0, 1), (0, 1), (1, 5)),
        ];
        for p in points {
            let g = greek_from_abcd(&p).unwrap();
            let back = abcd_from_greek(&g).unwrap();
            // The quadratic roots come back in a fixed order: a and c are
            // the two roots of one quadratic, so compare as unordered pairs.
            let same_ac = (back.a == p.a && back.c == p.c) || (back.a == p.c && back.c == p.a);
            let same_bd = (back.b == p.b && back.d == p.d) || (back.b == p.d && back.d == p.b);
            assert!(same_ac && same_bd, "{p:?} -> {back:?}");
            assert_eq!(back.q, p.q);
        }
    }

    #[test]
    fn inverse_substitution_zero_cases() {
        // gamma = delta = 0, alpha = beta = 1-q: both discriminants are 0,
        // so a = b = c = d = 0.
        let g = GreekParams {
            alpha: rat(2, 3),
            beta: rat(2, 3),
            gamma: int(0),
            delta: int(0),
            q: rat(1, 3),
            y: int(1),
        };
        let p = abcd_from_greek(&g).unwrap();
        assert_eq!((p.a, p.b, p.c, p.d), (int(0), int(0), int(0), int(0)));

        let irr = GreekParams {
            alpha: int(1),
            beta: int(1),
            gamma: int(1),
            delta: int(0),
            q: int(0),
            y: int(1),
        };
        assert!(matches!(
            abcd_from_greek(&irr).unwrap_err(),
            Error::IrrationalDiscriminant(_)
        ));
    }

    fn z_poly_at(n: usize, g: &GreekParams) -> Rational {
        crate::tableaux::z_poly(n, false).unwrap().eval(&[
            g.alpha.clone(),
            g.beta.clone(),
            g.gamma.clone(),
            g.delta.clone(),
            g.q.clone(),
            int(1),
            g.y.clone(),
        ])
    }

    #[test]
    fn fugacity_explicit_matches_enumeration() {
        let points = [
            (aw((1, 2), (1, 3), (1, 5), (1, 7), (1, 11)), rat(1, 1)),
            (aw((1, 2), (1, 3), (1, 5), (1, 7), (1, 11)), rat(2, 3)),
            (aw((2, 3), (-1, 4), (1, 6), (3, 7), (2, 5)), rat(3, 2)),
            (aw((-1, 2), (1, 5), (-2, 7), (1, 9), (1, 3)), rat(5, 4)),
        ];
        for (p, y) in points {
            let mut g = greek_from_abcd(&p).unwrap();
            g.y = y.clone();
            for n in 0..=4 {
                assert_eq!(
                    z_fugacity_explicit(&p, &y, n).unwrap(),
                    z_poly_at(n, &g),
                    "n = {n}, y = {y}"
                );
            }
        }
    }

    #[test]
    fn fugacity_explicit_degenerate_names() {
        let p = aw((0, 1), (1, 3), (1, 5), (1, 7), (1, 11));
        assert!(matches!(
            z_fugacity_explicit(&p, &int(1), 1).unwrap_err(),
            Error::DegenerateParameters { factor } if factor == "a"
        ));
    }

    #[test]
    fn q0_explicit_matches_enumeration() {
        let points = [
            (aw((1, 2), (1, 3), (1, 5), (1, 7), (0, 1)), int(1)),
            (aw((1, 2), (1, 3), (1, 5), (1, 7), (0, 1)), rat(2, 3)),
            (aw((2, 3), (-1, 4), (1, 6), (3, 7), (0, 1)), rat(3, 2)),
            (aw((-1, 2), (1, 5), (-2, 7), (1, 9), (0, 1)), int(2)),
            (aw((1, 3), (2, 5), (3, 8), (-1, 7), (0, 1)), rat(4, 9)),
        ];
        for (p, y) in points {
            let mut g = greek_from_abcd(&p).unwrap();
            g.y = y.clone();
            for n in 0..=4 {
                assert_eq!(
                    z_q0_explicit(&p.a, &p.b, &p.c, &p.d, &y, n).unwrap(),
                    z_poly_at(n, &g),
                    "n = {n}, y = {y}"
                );
            }
        }
    }

    #[test]
    fn homog_sym_examples() {
        let (a, b, c, d) = (rat(1, 2), rat(1, 3), rat(1, 5), rat(1, 7));
        assert_eq!(homog_sym_8(0, &a, &b, &c, &d).unwrap(), int(1));
        assert_eq!(homog_sym_8(-2, &a, &b, &c, &d).unwrap(), int(0));
        let expected = &(&(&(&a + &b) + &(&c + &d)) + &(&Scalar::inv(&a).unwrap() + &Scalar::inv(&b).unwrap()))
            + &(&Scalar::inv(&c).unwrap() + &Scalar::inv(&d).unwrap());
        assert_eq!(homog_sym_8(1, &a, &b, &c, &d).unwrap(), expected);
        assert!(matches!(
            homog_sym_8(1, &int(0), &b, &c, &d).unwrap_err(),
            Error::DegenerateParameters { factor } if factor == "A"
        ));
    }

    #[test]
    fn q1_product_matches_enumeration_symbolically() {
        for n in 0..=5 {
            let lhs = crate::tableaux::z_poly(n, false)
                .unwrap()
                .subst_scalar(Q, &int(1))
                .subst_scalar(Y, &int(1));
            assert_eq!(lhs, z_q1_closed(n), "n = {n}");
        }
    }

    #[test]
    fn q1_product_specializations() {
        // All parameters 1: 4^n n!.
        let at = |n: usize, vals: [i64; 4]| {
            z_q1_closed(n).eval(&[
                int(vals[0]),
                int(vals[1]),
                int(vals[2]),
                int(vals[3]),
                int(1),
                int(1),
                int(1),
            ])
        };
        for n in 0..=5 {
            let fact = Rational::from_integer(factorial(n as u64));
            assert_eq!(at(n, [1, 1, 1, 1]), &Scalar::pow(&int(4), n as u64) * &fact);
            assert_eq!(
                at(n, [1, 1, 1, 0]),
                Rational::from_integer(crate::exact::odd_double_factorial(n as u64))
            );
            assert_eq!(
                at(n, [1, 1, 0, 0]),
                Rational::from_integer(factorial(n as u64 + 1))
            );
        }
    }

    #[test]
    fn laguerre_moments_match_q1_product() {
        // With lambda = (alpha+beta+gamma+delta)/((alpha+gamma)(beta+delta)) - 1,
        // the q = 1 product equals ((alpha+gamma)(beta+delta))^n times the
        // n-th moment of the Laguerre data b_k = 2k+lambda+1,
        // lambda_k = k(k+lambda).
        let (alpha, beta, gamma, delta) = (rat(1, 2), rat(1, 3), rat(1, 5), rat(1, 7));
        let cross = &(&alpha + &gamma) * &(&beta + &delta);
        let total = &(&alpha + &beta) + &(&gamma + &delta);
        let lambda = &(&total / &cross) - &int(1);

        let n_max = 5usize;
        let bs: Vec<Rational> = (0..n_max)
            .map(|k| &(&int(2 * k as i64) + &lambda) + &int(1))
            .collect();
        let lambdas: Vec<Rational> = (0..n_max)
            .map(|k| &int(k as i64) * &(&int(k as i64) + &lambda))
            .collect();
        let mus = tridiag_moments(&bs, &lambdas, n_max);

        for n in 0..=n_max {
            let product = z_q1_closed(n).eval(&[
                alpha.clone(),
                beta.clone(),
                gamma.clone(),
                delta.clone(),
                int(1),
                int(1),
                int(1),
            ]);
            assert_eq!(&Scalar::pow(&cross, n as u64) * &mus[n], product, "n = {n}");
        }
    }

    #[test]
    fn genfun_printed_columns() {
        let y = MultiPoly::var(Y);
        let odd_fib = genfun_coeffs(GenfunSpec::OddFib, 5).unwrap();
        let expect_poly = |coeffs: &[i64]| {
            let mut p = MultiPoly::zero();
            for (k, &c) in coeffs.iter().enumerate() {
                p = p.add(&y.pow(k as u64).scale(&int(c)));
            }
            p
        };
        assert_eq!(odd_fib[0], expect_poly(&[1]));
        assert_eq!(odd_fib[1], expect_poly(&[2, 1]));
        assert_eq!(odd_fib[2], expect_poly(&[5, 5, 1]));
        assert_eq!(odd_fib[3], expect_poly(&[13, 20, 9, 1]));
        assert_eq!(odd_fib[4], expect_poly(&[34, 72, 52, 14, 1]));
        assert_eq!(odd_fib[5], expect_poly(&[89, 242, 245, 110, 20, 1]));

        let fib2 = genfun_coeffs(GenfunSpec::Fib2, 5).unwrap();
        assert!(fib2[0].is_zero());
        assert_eq!(fib2[1], expect_poly(&[2, 2]));
        assert_eq!(fib2[2], expect_poly(&[6, 12, 6]));
        assert_eq!(fib2[3], expect_poly(&[16, 46, 46, 16]));
        assert_eq!(fib2[4], expect_poly(&[42, 152, 220, 152, 42]));
        assert_eq!(
            fib2[5],
            expect_poly(&[110, 472, 868, 868, 472, 110])
        );
    }

    #[test]
    fn genfun_matches_enumeration() {
        let narayana = genfun_coeffs(GenfunSpec::Narayana, 4).unwrap();
        let odd_fib = genfun_coeffs(GenfunSpec::OddFib, 4).unwrap();
        let fib2 = genfun_coeffs(GenfunSpec::Fib2, 4).unwrap();
        let zero = <Rational as Scalar>::zero();
        for n in 0..=4usize {
            let z = crate::tableaux::z_poly(n, false).unwrap().subst_scalar(U, &int(1));
            let spec_at = |a: i64, b: i64, c: i64, d: i64| {
                z.subst_scalar(ALPHA, &int(a))
                    .subst_scalar(BETA, &int(b))
                    .subst_scalar(GAMMA, &int(c))
                    .subst_scalar(DELTA, &int(d))
                    .subst_scalar(Q, &zero)
            };
            assert_eq!(narayana[n], spec_at(1, 1, 0, 0), "narayana n = {n}");
            assert_eq!(odd_fib[n], spec_at(1, 1, 1, 0), "odd_fib n = {n}");
            if n >= 1 {
                assert_eq!(fib2[n], spec_at(1, 1, 1, 1), "fib2 n = {n}");
            }
        }
    }

    #[test]
    fn genfun_fixture_columns() {
        // y = 1 column of the odd-Fibonacci family (recomputed, then
        // frozen) and the y = 0 Fibonacci column.
        let odd_fib = genfun_coeffs(GenfunSpec::OddFib, 5).unwrap();
        let at_one: Vec<Rational> = odd_fib
            .iter()
            .map(|p| p.subst_scalar(Y, &int(1)).as_constant().unwrap())
            .collect();
        assert_eq!(
            at_one,
            vec![int(1), int(3), int(11), int(43), int(173), int(707)]
        );
        let at_zero: Vec<Rational> = odd_fib
            .iter()
            .map(|p| p.subst_scalar(Y, &int(0)).as_constant().unwrap())
            .collect();
        assert_eq!(
            at_zero,
            vec![int(1), int(2), int(5), int(13), int(34), int(89)]
        );

        // 2 F_(2n) column: fib2 at y = 0.
        let fib2 = genfun_coeffs(GenfunSpec::Fib2, 5).unwrap();
        let at_zero: Vec<Rational> = fib2
            .iter()
            .map(|p| p.subst_scalar(Y, &int(0)).as_constant().unwrap())
            .collect();
        assert_eq!(
            at_zero,
            vec![int(0), int(2), int(6), int(16), int(42), int(110)]
        );
    }

    #[test]
    fn factorization_suite_passes() {
        let reports = factorization_checks(4).unwrap();
        assert_eq!(reports.len(), 7);
        for r in &reports {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn genfun_suite_passes() {
        let reports = genfun_checks(3).unwrap();
        assert_eq!(reports.len(), 3);
        for r in &reports {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn count_suite_passes() {
        let reports = count_checks(3).unwrap();
        assert_eq!(reports.len(), 4);
        for r in &reports {
            assert!(r.passed(), "{r}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(8))]

        #[test]
        fn fugacity_explicit_random_points(
            an in 1i64..5, bn in 1i64..5, cn in 1i64..5, dn in 1i64..5,
            yn in 1i64..5, n in 0usize..4
        ) {
            let p = aw((an, 7), (bn, 11), (cn, 13), (dn, 17), (1, 3));
            let y = rat(yn, 3);
            let mut g = greek_from_abcd(&p).unwrap();
            g.y = y.clone();
            prop_assert_eq!(z_fugacity_explicit(&p, &y, n).unwrap(), z_poly_at(n, &g));
        }
    }
}
