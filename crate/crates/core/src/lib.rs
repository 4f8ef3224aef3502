//! Exact enumeration of staircase tableaux and Askey-Wilson moment
//! computation.
//!
//! The crate is organized in layers:
//!
//! * [`exact`] - arbitrary-precision rationals, Gaussian rationals, a
//!   quadratic extension adjoining sqrt(y), and q-series primitives.
//! * [`polyring`] - sparse multivariate polynomials in (alpha, beta, gamma,
//!   delta, q, u, y) and truncated formal power series.
//! * [`tableaux`] - the staircase tableau object: enumeration, weights,
//!   types, and the generating polynomials Z_n.
//! * [`typegen`] - per-type partition functions Z_sigma: closed forms,
//!   recurrences, and their cross-checks.
//! * [`moments`] - Askey-Wilson moments by four independent routes, weight
//!   integration, and orthogonality checks.
//! * [`partition`] - parameter substitutions and closed forms for the
//!   fugacity partition function at general q, q=0, and q=1.
//! * [`asep`] - the five-parameter exclusion process as an exact Markov
//!   chain and its stationary-state identities.
//! * [`combinat`] - forests, trees, signed permutations, weighted Dyck
//!   paths, and matching statistics.
//! * [`report`] - the pass/fail report type produced by every named check
//!   suite, shared by the CLI and the tests.

pub mod asep;
pub mod combinat;
pub mod error;
pub mod exact;
pub mod moments;
pub mod partition;
pub mod polyring;
pub mod report;
pub mod tableaux;
pub mod typegen;

pub use error::{Error, Result};
