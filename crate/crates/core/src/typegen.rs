//! Per-type generating polynomials Z_sigma.
//!
//! Three independent handles on the same family:
//!
//! * a closed form for Z_sigma(1,1,0,0;q) through the composition attached
//!   to the type word ([`z_sigma_closed`]),
//! * three local relations tying Z_sigma to its neighbors under letter
//!   swaps and letter removal ([`check_type_recurrences`]),
//! * a rewriting engine that computes Z_sigma(alpha,beta,gamma,0;q) from
//!   those relations alone, with no enumeration ([`z_sigma_delta0`]).

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;
use std::time::Instant;

use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::exact::{int, qint, Scalar};
use crate::polyring::{MultiPoly, ALPHA, BETA, DELTA, GAMMA, NVARS, Q};
use crate::report::CheckReport;
use crate::tableaux::{z_sigma_poly, TypeWord};

/// A composition: an ordered list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition(pub Vec<usize>);

impl Composition {
    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the parts.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Partial sums excluding the total, in increasing order.
    pub fn descents(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.0.len().saturating_sub(1));
        let mut acc = 0;
        for &p in &self.0[..self.0.len().saturating_sub(1)] {
            acc += p;
            out.push(acc);
        }
        out
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// The composition attached to a type word: read the word right to left,
/// record the lengths of the maximal blank runs delimited by bullets and
/// the word ends, then add one to each length. A word of length n with k
/// bullets yields k+1 parts summing to n+1.
pub fn composition_of_type(sigma: &TypeWord) -> Composition {
    let mut parts = Vec::new();
    let mut run = 0usize;
    for &bullet in sigma.0.iter().rev() {
        if bullet {
            parts.push(run + 1);
            run = 0;
        } else {
            run += 1;
        }
    }
    parts.push(run + 1);
    Composition(parts)
}

/// All compositions weakly coarser than `c` (obtained by merging adjacent
/// parts), each exactly once: 2^(len-1) results, `c` itself first and the
/// single-part composition last.
pub fn coarsenings(c: &Composition) -> Vec<Composition> {
    let r = c.0.len();
    if r == 0 {
        return vec![c.clone()];
    }
    let boundaries = r - 1;
    let mut out = Vec::with_capacity(1 << boundaries);
    for mask in 0u64..(1u64 << boundaries) {
        let mut parts = vec![c.0[0]];
        for (i, &p) in c.0[1..].iter().enumerate() {
            if mask >> i & 1 == 1 {
                *parts.last_mut().unwrap() += p;
            } else {
                parts.push(p);
            }
        }
        out.push(Composition(parts));
    }
    out
}

/// The q-weight of a composition: for J = (j_1, ..., j_p) the product over
/// r of [p+1-r]_q^(j_r), where [m]_q = 1 + q + ... + q^(m-1).
pub fn qstat<S: Scalar>(c: &Composition, q: &S) -> S {
    let p = c.0.len();
    let mut out = S::one();
    for (r, &j) in c.0.iter().enumerate() {
        let bracket = qint(p - r, q);
        out = out.mul(&Scalar::pow(&bracket, j as u64));
    }
    out
}

/// [`qstat`] with q kept symbolic, as a polynomial in the q variable.
pub fn qstat_poly(c: &Composition) -> MultiPoly {
    let p = c.0.len();
    let q = MultiPoly::var(Q);
    let mut out = MultiPoly::one();
    for (r, &j) in c.0.iter().enumerate() {
        let mut bracket = MultiPoly::zero();
        let mut qk = MultiPoly::one();
        for _ in 0..(p - r) {
            bracket = bracket.add(&qk);
            qk = qk.mul(&q);
        }
        out = out.mul(&bracket.pow(j as u64));
    }
    out
}

/// Counts pairs (i, j) in Des(fine) x Des(coarse) with i <= j. Requires
/// `coarse` to be a coarsening of `fine`.
pub fn st_statistic(fine: &Composition, coarse: &Composition) -> Result<usize> {
    let df = fine.descents();
    let dc = coarse.descents();
    let coarsens = coarse.total() == fine.total() && dc.iter().all(|d| df.binary_search(d).is_ok());
    if !coarsens {
        return Err(Error::NotCoarser {
            fine: fine.to_string(),
            coarse: coarse.to_string(),
        });
    }
    Ok(df
        .iter()
        .map(|i| dc.iter().filter(|&&j| *i <= j).count())
        .sum())
}

/// Closed form for Z_sigma(1,1,0,0;q) as a polynomial in q: with I the
/// composition of sigma, sum over coarsenings J of I of
/// (-1/q)^(len(I)-len(J)) q^(-st(I,J)) qstat(J). Intermediate terms carry
/// negative powers of q; the sum is a polynomial with nonnegative integer
/// coefficients, so the cleared power of q must divide out exactly.
pub fn z_sigma_closed(sigma: &TypeWord) -> Result<MultiPoly> {
    let fine = composition_of_type(sigma);
    let lf = fine.len();
    let mut terms = Vec::new();
    let mut clear = 0usize;
    for coarse in coarsenings(&fine) {
        let drop = lf - coarse.len();
        let e = drop + st_statistic(&fine, &coarse)?;
        clear = clear.max(e);
        terms.push((drop, e, qstat_poly(&coarse)));
    }
    let mut sum = MultiPoly::zero();
    for (drop, e, p) in terms {
        let mut exps = [0u16; NVARS];
        exps[Q] = (clear - e) as u16;
        let mut t = p.mul(&MultiPoly::monomial(exps, int(1)));
        if drop % 2 == 1 {
            t = t.neg();
        }
        sum = sum.add(&t);
    }
    sum.div_var_power(Q, clear as u16)
}

/// lambda_n = alpha beta - gamma delta q^(n-1), the factor appearing in all
/// three local relations.
fn lambda(n: usize) -> MultiPoly {
    let mut exps = [0u16; NVARS];
    exps[GAMMA] = 1;
    exps[DELTA] = 1;
    exps[Q] = (n - 1) as u16;
    let mut ab = [0u16; NVARS];
    ab[ALPHA] = 1;
    ab[BETA] = 1;
    MultiPoly::monomial(ab, int(1)).sub(&MultiPoly::monomial(exps, int(1)))
}

fn joined(left: &TypeWord, mid: &[bool], right: &TypeWord) -> TypeWord {
    let mut bits = left.0.clone();
    bits.extend_from_slice(mid);
    bits.extend_from_slice(&right.0);
    TypeWord(bits)
}

/// Verifies, as exact polynomial identities in alpha, beta, gamma, delta,
/// q, the three local relations with lambda_n = alpha beta - gamma delta
/// q^(n-1):
///
/// 1. Z over (left, bullet, blank, right) minus q times Z over
///    (left, blank, bullet, right) equals lambda times the sum of the two
///    one-letter contractions;
/// 2. alpha Z_(blank sigma) - gamma Z_(bullet sigma) = lambda Z_sigma;
/// 3. beta Z_(sigma bullet) - delta Z_(sigma blank) = lambda Z_sigma.
///
/// One report per relation. Relation 1 uses `left` and `right`; relations
/// 2 and 3 use `sigma`.
pub fn check_type_recurrences(
    left: &TypeWord,
    right: &TypeWord,
    sigma: &TypeWord,
) -> Result<Vec<CheckReport>> {
    let mut reports = Vec::with_capacity(3);

    let start = Instant::now();
    let n1 = left.len() + right.len() + 2;
    let lhs = z_sigma_poly(&joined(left, &[true, false], right), false)?.sub(
        &z_sigma_poly(&joined(left, &[false, true], right), false)?.mul(&MultiPoly::var(Q)),
    );
    let rhs = lambda(n1).mul(
        &z_sigma_poly(&joined(left, &[true], right), false)?
            .add(&z_sigma_poly(&joined(left, &[false], right), false)?),
    );
    reports.push(report_identity(
        "bullet-blank swap relation",
        &lhs,
        &rhs,
        start,
    ));

    let start = Instant::now();
    let n2 = sigma.len() + 1;
    let z_sigma = z_sigma_poly(sigma, false)?;
    let lhs = z_sigma_poly(&joined(&TypeWord(vec![false]), &[], sigma), false)?
        .mul(&MultiPoly::var(ALPHA))
        .sub(
            &z_sigma_poly(&joined(&TypeWord(vec![true]), &[], sigma), false)?
                .mul(&MultiPoly::var(GAMMA)),
        );
    let rhs = lambda(n2).mul(&z_sigma);
    reports.push(report_identity("leading-letter relation", &lhs, &rhs, start));

    let start = Instant::now();
    let lhs = z_sigma_poly(&joined(sigma, &[true], &TypeWord(vec![])), false)?
        .mul(&MultiPoly::var(BETA))
        .sub(
            &z_sigma_poly(&joined(sigma, &[false], &TypeWord(vec![])), false)?
                .mul(&MultiPoly::var(DELTA)),
        );
    let rhs = lambda(n2).mul(&z_sigma);
    reports.push(report_identity(
        "trailing-letter relation",
        &lhs,
        &rhs,
        start,
    ));

    Ok(reports)
}

fn report_identity(name: &str, lhs: &MultiPoly, rhs: &MultiPoly, start: Instant) -> CheckReport {
    if lhs == rhs {
        CheckReport::pass(name, "sides agree", start.elapsed())
    } else {
        CheckReport::fail(
            name,
            format!("difference {}", lhs.sub(rhs)),
            start.elapsed(),
        )
    }
}

/// Verifies the three per-type recurrences over every pair of words
/// whose combined symbolic length stays within min(n_max, 5),
/// summarized as one report per relation.
pub fn recurrence_checks(n_max: usize) -> Result<Vec<CheckReport>> {
    let cap = n_max.min(5);
    let started = Instant::now();
    let mut first_failure: [Option<String>; 3] = [None, None, None];

    let splits = cap.saturating_sub(2);
    let empty = TypeWord(Vec::new());
    for left_len in 0..=splits {
        for right_len in 0..=(splits - left_len) {
            for left in TypeWord::all(left_len) {
                for right in TypeWord::all(right_len) {
                    let reports = check_type_recurrences(&left, &right, &empty)?;
                    if !reports[0].passed() && first_failure[0].is_none() {
                        first_failure[0] =
                            Some(format!("around ({left}, {right}): {}", reports[0].detail));
                    }
                }
            }
        }
    }
    for sigma in (0..cap).flat_map(TypeWord::all) {
        let reports = check_type_recurrences(&empty, &empty, &sigma)?;
        for slot in 1..=2 {
            if !reports[slot].passed() && first_failure[slot].is_none() {
                first_failure[slot] =
                    Some(format!("at {sigma}: {}", reports[slot].detail));
            }
        }
    }

    let names = [
        "bullet-blank swap relation",
        "leading-letter relation",
        "trailing-letter relation",
    ];
    Ok(names
        .iter()
        .zip(first_failure)
        .map(|(name, failure)| match failure {
            None => CheckReport::pass(*name, format!("words up to length {cap}"), started.elapsed()),
            Some(detail) => CheckReport::fail(*name, detail, started.elapsed()),
        })
        .collect())
}

static DELTA0_CACHE: Lazy<Mutex<HashMap<Vec<bool>, MultiPoly>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Z_sigma(alpha,beta,gamma,0;q) computed by rewriting alone.
///
/// Rules, applied rightmost-first:
///
/// * empty word: 1;
/// * trailing bullet: Z_(sigma bullet) = alpha Z_sigma;
/// * all-blank word: Z_(blank sigma) = (gamma / alpha) Z_(bullet sigma) +
///   beta Z_sigma, where the division is exact because every
///   delta-free tableau whose type starts with a bullet carries an alpha
///   in its upper-right corner;
/// * otherwise, at the rightmost bullet-blank factor: Z equals q times Z
///   of the swapped word plus alpha beta times the two contractions.
///
/// Each rule either shortens the word or lowers its value as a binary
/// number read with blank = 1, leftmost letter least significant, so the
/// rewriting terminates. Results are memoized across calls.
pub fn z_sigma_delta0(sigma: &TypeWord) -> Result<MultiPoly> {
    let mut cache = DELTA0_CACHE.lock().unwrap();
    delta0_rec(&sigma.0, &mut cache)
}

fn delta0_rec(word: &[bool], cache: &mut HashMap<Vec<bool>, MultiPoly>) -> Result<MultiPoly> {
    if word.is_empty() {
        return Ok(MultiPoly::one());
    }
    if let Some(p) = cache.get(word) {
        return Ok(p.clone());
    }
    let value = if word[word.len() - 1] {
        let inner = delta0_rec(&word[..word.len() - 1], cache)?;
        inner.mul(&MultiPoly::var(ALPHA))
    } else if word.iter().all(|&b| !b) {
        let mut with_bullet = word.to_vec();
        with_bullet[0] = true;
        let z_bullet = delta0_rec(&with_bullet, cache)?;
        let z_rest = delta0_rec(&word[1..], cache)?;
        let swapped = z_bullet
            .mul(&MultiPoly::var(GAMMA))
            .div_var_power(ALPHA, 1)?;
        swapped.add(&z_rest.mul(&MultiPoly::var(BETA)))
    } else {
        let k = (0..word.len() - 1)
            .rev()
            .find(|&k| word[k] && !word[k + 1])
            .expect("a word with a bullet and no trailing bullet has a bullet-blank factor");
        let mut swapped = word.to_vec();
        swapped.swap(k, k + 1);
        let mut keep_bullet = word.to_vec();
        keep_bullet.remove(k + 1);
        let mut keep_blank = word.to_vec();
        keep_blank.remove(k);
        let q_part = delta0_rec(&swapped, cache)?.mul(&MultiPoly::var(Q));
        let mut ab = [0u16; NVARS];
        ab[ALPHA] = 1;
        ab[BETA] = 1;
        let contractions = delta0_rec(&keep_bullet, cache)?
            .add(&delta0_rec(&keep_blank, cache)?)
            .mul(&MultiPoly::monomial(ab, int(1)));
        q_part.add(&contractions)
    };
    cache.insert(word.to_vec(), value.clone());
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::polyring::U;
    use proptest::prelude::*;

    fn word(s: &str) -> TypeWord {
        s.parse().unwrap()
    }

    fn comp(parts: &[usize]) -> Composition {
        Composition(parts.to_vec())
    }

    #[test]
    fn composition_examples() {
        assert_eq!(composition_of_type(&word("BWWWBWW")), comp(&[3, 4, 1]));
        assert_eq!(composition_of_type(&word("W")), comp(&[2]));
        assert_eq!(composition_of_type(&word("B")), comp(&[1, 1]));
        assert_eq!(composition_of_type(&word("")), comp(&[1]));
        assert_eq!(composition_of_type(&word("WWW")), comp(&[4]));
    }

    #[test]
    fn composition_shape_is_consistent() {
        for n in 0..=5 {
            for sigma in TypeWord::all(n) {
                let c = composition_of_type(&sigma);
                assert_eq!(c.len(), sigma.bullets() + 1);
                assert_eq!(c.total(), n + 1);
                assert!(c.0.iter().all(|&p| p >= 1));
            }
        }
    }

    #[test]
    fn coarsening_examples() {
        assert_eq!(
            coarsenings(&comp(&[3, 4, 1])),
            vec![comp(&[3, 4, 1]), comp(&[7, 1]), comp(&[3, 5]), comp(&[8])]
        );
        assert_eq!(coarsenings(&comp(&[9])), vec![comp(&[9])]);
        assert_eq!(coarsenings(&comp(&[1, 1, 1])).len(), 4);
    }

    #[test]
    fn descent_sets() {
        assert_eq!(comp(&[3, 4, 1]).descents(), vec![3, 7]);
        assert_eq!(comp(&[8]).descents(), Vec::<usize>::new());
    }

    #[test]
    fn qstat_examples() {
        assert_eq!(qstat(&comp(&[7]), &rat(2, 3)), int(1));
        let q = MultiPoly::var(Q);
        assert_eq!(qstat_poly(&comp(&[1, 1])), MultiPoly::one().add(&q));
        assert_eq!(qstat(&comp(&[3, 4, 1]), &int(1)), int(432));
        for c in [comp(&[2, 1]), comp(&[1, 3, 2])] {
            assert_eq!(
                qstat_poly(&c).subst_scalar(Q, &rat(1, 2)).as_constant(),
                Some(qstat(&c, &rat(1, 2)))
            );
        }
    }

    #[test]
    fn st_examples() {
        let fine = comp(&[3, 4, 1]);
        assert_eq!(st_statistic(&fine, &fine).unwrap(), 3);
        assert_eq!(st_statistic(&fine, &comp(&[7, 1])).unwrap(), 2);
        assert_eq!(st_statistic(&fine, &comp(&[3, 5])).unwrap(), 1);
        assert_eq!(st_statistic(&fine, &comp(&[8])).unwrap(), 0);
        assert!(matches!(
            st_statistic(&fine, &comp(&[4, 4])),
            Err(Error::NotCoarser { .. })
        ));
        assert!(matches!(
            st_statistic(&comp(&[2]), &comp(&[1, 1])),
            Err(Error::NotCoarser { .. })
        ));
    }

    #[test]
    fn closed_form_printed_example() {
        let got = z_sigma_closed(&word("BWWWBWW")).unwrap();
        let mut expected = MultiPoly::zero();
        for (k, coeff) in [15, 47, 75, 76, 52, 24, 7, 1].into_iter().enumerate() {
            let mut exps = [0u16; NVARS];
            exps[Q] = k as u16;
            expected = expected.add(&MultiPoly::monomial(exps, int(coeff)));
        }
        assert_eq!(got, expected);
    }

    #[test]
    fn closed_form_trivial_words() {
        assert_eq!(z_sigma_closed(&word("")).unwrap(), MultiPoly::one());
        assert_eq!(z_sigma_closed(&word("B")).unwrap(), MultiPoly::one());
        assert_eq!(z_sigma_closed(&word("W")).unwrap(), MultiPoly::one());
        let q = MultiPoly::var(Q);
        assert_eq!(
            z_sigma_closed(&word("BW")).unwrap(),
            MultiPoly::constant(int(2)).add(&q)
        );
    }

    fn alpha_beta_specialization(sigma: &TypeWord) -> MultiPoly {
        z_sigma_poly(sigma, false)
            .unwrap()
            .subst_scalar(ALPHA, &int(1))
            .subst_scalar(BETA, &int(1))
            .subst_scalar(GAMMA, &int(0))
            .subst_scalar(DELTA, &int(0))
    }

    #[test]
    fn closed_form_matches_enumeration() {
        for n in 0..=5 {
            for sigma in TypeWord::all(n) {
                assert_eq!(
                    z_sigma_closed(&sigma).unwrap(),
                    alpha_beta_specialization(&sigma),
                    "sigma = {sigma}"
                );
            }
        }
    }

    #[test]
    fn closed_form_counts_at_q_one() {
        for n in 0..=5 {
            let mut total = int(0);
            for sigma in TypeWord::all(n) {
                let count = z_sigma_closed(&sigma)
                    .unwrap()
                    .subst_scalar(Q, &int(1))
                    .as_constant()
                    .unwrap();
                total = &total + &count;
            }
            assert_eq!(total, crate::exact::factorial((n + 1) as u64).into());
        }
    }

    #[test]
    fn closed_form_has_nonneg_integer_coeffs() {
        for sigma in TypeWord::all(6) {
            assert!(z_sigma_closed(&sigma).unwrap().has_nonneg_integer_coeffs());
        }
    }

    #[test]
    fn delta0_examples() {
        assert_eq!(z_sigma_delta0(&word("")).unwrap(), MultiPoly::one());
        assert_eq!(z_sigma_delta0(&word("B")).unwrap(), MultiPoly::var(ALPHA));
        assert_eq!(
            z_sigma_delta0(&word("W")).unwrap(),
            MultiPoly::var(BETA).add(&MultiPoly::var(GAMMA))
        );
    }

    #[test]
    fn delta0_matches_enumeration() {
        for n in 0..=5 {
            for sigma in TypeWord::all(n) {
                assert_eq!(
                    z_sigma_delta0(&sigma).unwrap(),
                    z_sigma_poly(&sigma, false)
                        .unwrap()
                        .subst_scalar(DELTA, &int(0)),
                    "sigma = {sigma}"
                );
            }
        }
    }

    #[test]
    fn recurrences_hold_symbolically() {
        for total in 0..=2 {
            for left_len in 0..=total {
                for left in TypeWord::all(left_len) {
                    for right in TypeWord::all(total - left_len) {
                        for report in
                            check_type_recurrences(&left, &right, &left).unwrap()
                        {
                            assert!(report.passed(), "{report}");
                        }
                    }
                }
            }
        }
        for sigma in TypeWord::all(4) {
            let empty = TypeWord(vec![]);
            let reports = check_type_recurrences(&empty, &empty, &sigma).unwrap();
            assert!(reports.iter().all(|r| r.passed()));
        }
    }

    #[test]
    fn recurrence_check_suite_passes() {
        let reports = recurrence_checks(3).unwrap();
        assert_eq!(reports.len(), 3);
        for report in reports {
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn recurrences_propagate_budget() {
        let long = TypeWord(vec![false; 40]);
        assert!(matches!(
            check_type_recurrences(&long, &long, &long),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn type_polynomials_ignore_u_and_y(){
        for sigma in TypeWord::all(3) {
            let z = z_sigma_poly(&sigma, false).unwrap();
            assert_eq!(z.degree_in(U), 0);
            assert_eq!(z.degree_in(crate::polyring::Y), 0);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn coarsening_count_is_binary(parts in proptest::collection::vec(1usize..5, 1..7)) {
            let c = Composition(parts);
            let all = coarsenings(&c);
            prop_assert_eq!(all.len(), 1 << (c.len() - 1));
            let unique: std::collections::HashSet<_> =
                all.iter().map(|j| j.0.clone()).collect();
            prop_assert_eq!(unique.len(), all.len());
            for j in &all {
                prop_assert_eq!(j.total(), c.total());
                prop_assert!(st_statistic(&c, j).is_ok());
            }
        }

        #[test]
        fn closed_form_agrees_on_random_words(index in 0usize..64) {
            let sigma = TypeWord::from_index(index, 6);
            let closed = z_sigma_closed(&sigma).unwrap();
            let delta0 = z_sigma_delta0(&sigma)
                .unwrap()
                .subst_scalar(ALPHA, &int(1))
                .subst_scalar(BETA, &int(1))
                .subst_scalar(GAMMA, &int(0));
            prop_assert_eq!(closed, delta0);
        }
    }
}
