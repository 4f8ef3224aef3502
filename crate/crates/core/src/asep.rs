//! The five-parameter exclusion process on n sites as an exact Markov
//! chain.
//!
//! States are the 2^n occupation words; transitions move one particle per
//! step (bulk hops at rate u right, q left, each over n+1) or exchange a
//! particle with a boundary (alpha enters left, beta exits right, gamma
//! exits left, delta enters right, each over n+1). The stationary
//! distribution is found by exact rational elimination and compared, state
//! by state, against the per-type generating polynomials of staircase
//! tableaux.

use std::time::Instant;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact::{int, rat, Rational, Scalar};
use crate::partition::GreekParams;
use crate::polyring::{ALPHA, BETA, DELTA, GAMMA, Q, U, Y};
use crate::report::CheckReport;
use crate::tableaux::{z_poly, z_sigma_poly, TypeWord};

/// Discrete-time chain on the 2^n occupation words.
///
/// Rows and columns are indexed by [`TypeWord::to_index`]: bullet = 1,
/// leftmost site most significant.
#[derive(Debug, Clone)]
pub struct ASEPChain {
    pub n: usize,
    pub params: GreekParams,
    pub u: Rational,
    /// Row-stochastic transition matrix; entry `[x][y]` is P(x -> y).
    pub matrix: Vec<Vec<Rational>>,
}

impl ASEPChain {
    /// Number of states.
    pub fn states(&self) -> usize {
        self.matrix.len()
    }

    /// True when every parameter lies in [0, 1] and every diagonal entry
    /// is nonnegative, so the matrix is a genuine stochastic matrix. The
    /// algebraic identities hold regardless; this only gates the
    /// probabilistic reading.
    pub fn probabilistic(&self) -> bool {
        let in_unit = |x: &Rational| !x.is_negative() && *x <= int(1);
        in_unit(&self.params.alpha)
            && in_unit(&self.params.beta)
            && in_unit(&self.params.gamma)
            && in_unit(&self.params.delta)
            && in_unit(&self.params.q)
            && in_unit(&self.u)
            && (0..self.matrix.len()).all(|i| !self.matrix[i][i].is_negative())
    }
}

/// Builds the transition matrix for n sites. The `y` field of the
/// parameter set plays no role in the dynamics.
pub fn build_chain(n: usize, g: &GreekParams, u: &Rational) -> ASEPChain {
    let states = 1usize << n;
    let denom = int((n + 1) as i64);
    let scaled = |x: &Rational| x / &denom;
    let mut matrix = vec![vec![int(0); states]; states];
    for (x, row) in matrix.iter_mut().enumerate() {
        let bits = TypeWord::from_index(x, n).0;
        let mut add = |target: Vec<bool>, rate: &Rational| {
            let y = TypeWord(target).to_index();
            row[y] = &row[y] + &scaled(rate);
        };
        for i in 0..n.saturating_sub(1) {
            if bits[i] && !bits[i + 1] {
                let mut t = bits.clone();
                t.swap(i, i + 1);
                add(t, u);
            } else if !bits[i] && bits[i + 1] {
                let mut t = bits.clone();
                t.swap(i, i + 1);
                add(t, &g.q);
            }
        }
        if n > 0 {
            if bits[0] {
                let mut t = bits.clone();
                t[0] = false;
                add(t, &g.gamma);
            } else {
                let mut t = bits.clone();
                t[0] = true;
                add(t, &g.alpha);
            }
            if bits[n - 1] {
                let mut t = bits.clone();
                t[n - 1] = false;
                add(t, &g.beta);
            } else {
                let mut t = bits.clone();
                t[n - 1] = true;
                add(t, &g.delta);
            }
        }
        let off: Rational = (0..states)
            .filter(|&y| y != x)
            .map(|y| row[y].clone())
            .sum();
        row[x] = &int(1) - &off;
    }
    ASEPChain {
        n,
        params: g.clone(),
        u: u.clone(),
        matrix,
    }
}

/// Solves pi P = pi, sum(pi) = 1 exactly.
///
/// Reduced row echelon form of P^T - I exposes the kernel; a kernel of
/// dimension above one is reported as [`Error::NonUniqueStationary`]. The
/// result is a genuine probability vector whenever the chain is
/// stochastic, and the unique normalized algebraic solution otherwise.
pub fn stationary_exact(chain: &ASEPChain) -> Result<Vec<Rational>> {
    let n = chain.matrix.len();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut v = chain.matrix[j][i].clone();
                    if i == j {
                        v = &v - &int(1);
                    }
                    v
                })
                .collect()
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut free_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..n {
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            free_cols.push(c);
            continue;
        };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for v in &mut a[r] {
            *v = &*v / &pivot;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v = &*v - &(&factor * p);
            }
        }
        pivot_cols.push(c);
        r += 1;
    }

    if free_cols.len() != 1 {
        return Err(Error::NonUniqueStationary);
    }
    let f = free_cols[0];
    let mut x = vec![int(0); n];
    x[f] = int(1);
    for (row, &pc) in pivot_cols.iter().enumerate() {
        x[pc] = -a[row][f].clone();
    }
    let total: Rational = x.iter().cloned().sum();
    if total.is_zero() {
        return Err(Error::NonUniqueStationary);
    }
    Ok(x.into_iter().map(|v| &v / &total).collect())
}

/// One state's two values: the chain's stationary probability and the
/// tableau-side ratio Z_sigma / Z_n, both exact.
#[derive(Debug, Clone)]
pub struct StateComparison {
    pub sigma: TypeWord,
    pub stationary: Rational,
    pub tableau_ratio: Rational,
}

impl StateComparison {
    pub fn matches(&self) -> bool {
        self.stationary == self.tableau_ratio
    }
}

fn greek_point(g: &GreekParams, u: &Rational) -> [Rational; crate::polyring::NVARS] {
    let mut point = [int(1), int(1), int(1), int(1), int(1), int(1), int(1)];
    point[ALPHA] = g.alpha.clone();
    point[BETA] = g.beta.clone();
    point[GAMMA] = g.gamma.clone();
    point[DELTA] = g.delta.clone();
    point[Q] = g.q.clone();
    point[U] = u.clone();
    point[Y] = int(1);
    point
}

/// Computes, for every state sigma of the n-site chain, the stationary
/// probability and the ratio Z_sigma(q,u) / Z_n(q,u).
pub fn stationary_comparisons(
    n: usize,
    g: &GreekParams,
    u: &Rational,
) -> Result<Vec<StateComparison>> {
    if n > 8 {
        return Err(Error::BudgetExceeded(format!(
            "chain verification is limited to 8 sites, requested {n}"
        )));
    }
    let chain = build_chain(n, g, u);
    let pi = stationary_exact(&chain)?;
    let point = greek_point(g, u);
    let zn = z_poly(n, true)?.eval(&point);
    if zn.is_zero() {
        return Err(Error::DegenerateParameters {
            factor: "Z_n".into(),
        });
    }
    let mut out = Vec::with_capacity(pi.len());
    for (index, stationary) in pi.into_iter().enumerate() {
        let sigma = TypeWord::from_index(index, n);
        let zsigma = z_sigma_poly(&sigma, true)?.eval(&point);
        out.push(StateComparison {
            sigma,
            stationary,
            tableau_ratio: &zsigma / &zn,
        });
    }
    Ok(out)
}

/// Checks, state by state, that the stationary probability equals
/// Z_sigma(q,u) / Z_n(q,u). One report per state.
pub fn verify_stationary_ratio(
    n: usize,
    g: &GreekParams,
    u: &Rational,
) -> Result<Vec<CheckReport>> {
    let start = Instant::now();
    let comparisons = stationary_comparisons(n, g, u)?;
    Ok(comparisons
        .into_iter()
        .map(|c| {
            let name = if c.sigma.is_empty() {
                "state (empty)".to_string()
            } else {
                format!("state {}", c.sigma)
            };
            let detail = format!(
                "pi = {}, Z_sigma/Z_n = {}",
                crate::exact::rational_to_string(&c.stationary),
                crate::exact::rational_to_string(&c.tableau_ratio)
            );
            if c.matches() {
                CheckReport::pass(&name, detail, start.elapsed())
            } else {
                CheckReport::fail(&name, detail, start.elapsed())
            }
        })
        .collect())
}

/// Checks the occupancy refinement at u = 1: the chance that exactly i
/// sites are occupied equals the y^i coefficient of Z_n(y) divided by
/// Z_n(1), for every i at once.
pub fn verify_fugacity_marginal(n: usize, g: &GreekParams) -> Result<CheckReport> {
    let start = Instant::now();
    if n > 8 {
        return Err(Error::BudgetExceeded(format!(
            "chain verification is limited to 8 sites, requested {n}"
        )));
    }
    let chain = build_chain(n, g, &int(1));
    let pi = stationary_exact(&chain)?;
    let point = greek_point(g, &int(1));
    let zn_poly = z_poly(n, false)?;
    let zn = zn_poly.eval(&point);
    if zn.is_zero() {
        return Err(Error::DegenerateParameters {
            factor: "Z_n".into(),
        });
    }
    for i in 0..=n {
        let coeff = zn_poly.coeff_of_power(Y, i as u16).eval(&point);
        let marginal: Rational = pi
            .iter()
            .enumerate()
            .filter(|(index, _)| TypeWord::from_index(*index, n).bullets() == i)
            .map(|(_, p)| p.clone())
            .sum();
        if marginal != &coeff / &zn {
            return Ok(CheckReport::fail(
                format!("occupancy marginal, {n} sites"),
                format!(
                    "{i} occupied sites: chain gives {}, fugacity coefficient gives {}",
                    crate::exact::rational_to_string(&marginal),
                    crate::exact::rational_to_string(&(&coeff / &zn))
                ),
                start.elapsed(),
            ));
        }
    }
    Ok(CheckReport::pass(
        format!("occupancy marginal, {n} sites"),
        format!("all {} occupancy counts agree", n + 1),
        start.elapsed(),
    ))
}

/// Runs the stationary-ratio and occupancy-marginal checks at one fixed
/// positive parameter point, with the hop-rate ratio at 1 and at 2/3,
/// folding each chain size into a single report.
pub fn stationary_checks(n_max: usize) -> Result<Vec<CheckReport>> {
    let g = GreekParams {
        alpha: rat(1, 2),
        beta: rat(1, 3),
        gamma: rat(1, 5),
        delta: rat(1, 7),
        q: rat(1, 2),
        y: int(1),
    };
    let mut reports = Vec::new();
    let cap = n_max.min(4).max(1);
    for n in 1..=cap {
        for u in [int(1), rat(2, 3)] {
            let started = Instant::now();
            let per_state = verify_stationary_ratio(n, &g, &u)?;
            let name = format!(
                "stationary ratios, {n} sites, u = {}",
                crate::exact::rational_to_string(&u)
            );
            reports.push(match per_state.iter().find(|r| !r.passed()) {
                None => CheckReport::pass(
                    name,
                    format!("all {} states agree", per_state.len()),
                    started.elapsed(),
                ),
                Some(bad) => {
                    CheckReport::fail(name, format!("{}: {}", bad.name, bad.detail), started.elapsed())
                }
            });
        }
    }
    for n in 1..=cap.min(3) {
        reports.push(verify_fugacity_marginal(n, &g)?);
    }
    Ok(reports)
}
