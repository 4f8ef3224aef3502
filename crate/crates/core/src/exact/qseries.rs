//! q-series primitives: q-Pochhammer symbols, q-integers, Gaussian binomials.

use super::Scalar;
use crate::error::Result;

/// Finite q-Pochhammer symbol (x; q)_n = prod_{k=0}^{n-1} (1 - x*q^k).
pub fn qpochhammer<S: Scalar>(x: &S, q: &S, n: usize) -> S {
    let one = S::one();
    let mut acc = S::one();
    let mut qk = S::one();
    for _ in 0..n {
        acc = acc.mul(&one.sub(&x.mul(&qk)));
        qk = qk.mul(q);
    }
    acc
}

/// Product of q-Pochhammer symbols (x_1, ..., x_s; q)_n.
pub fn qpochhammer_multi<S: Scalar>(xs: &[S], q: &S, n: usize) -> S {
    xs.iter()
        .fold(S::one(), |acc, x| acc.mul(&qpochhammer(x, q, n)))
}

/// q-integer [p]_q = 1 + q + ... + q^(p-1), with [0]_q = 0.
pub fn qint<S: Scalar>(p: usize, q: &S) -> S {
    let mut acc = S::zero();
    let mut qk = S::one();
    for _ in 0..p {
        acc = acc.add(&qk);
        qk = qk.mul(q);
    }
    acc
}

/// Gaussian binomial coefficient (q; q)_k / ((q; q)_j (q; q)_{k-j}).
///
/// Errors with `DivisionByZero` when q is a root of unity that makes a
/// denominator Pochhammer vanish.
///
/// Panics when j > k.
pub fn qbinomial<S: Scalar>(k: usize, j: usize, q: &S) -> Result<S> {
    assert!(j <= k, "qbinomial requires j <= k, got j={j}, k={k}");
    let num = qpochhammer(q, q, k);
    let den = qpochhammer(q, q, j).mul(&qpochhammer(q, q, k - j));
    num.div(&den)
}
