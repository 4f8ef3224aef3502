//! Staircase tableaux: validation, enumeration, fillings, weights, and the
//! generating polynomials Z_n.
//!
//! A staircase tableau of size n is a partial filling of the staircase Young
//! diagram with rows 1..n (top to bottom), where row i has boxes in columns
//! 1..(n+1-i), subject to:
//!
//! * every diagonal box (i, n+1-i) is labeled with one of alpha, beta,
//!   gamma, delta;
//! * every box left of a beta or delta in its row is empty;
//! * every box above an alpha or gamma in its column is empty.
//!
//! Empty boxes then receive a deterministic q/u filling, the weight of a
//! tableau is the product of all its labels, and Z_n is the weight sum with
//! the fugacity variable y marking the bullet count of the type word.

use crate::error::{Error, Result};
use crate::exact::{Rational, Scalar};
use crate::moments::{recurrence_coeffs, tridiag_moments, AWParams};
use crate::polyring::{Monomial, MultiPoly, ALPHA, BETA, DELTA, GAMMA, NVARS, Q, U, Y};
use once_cell::sync::Lazy;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

/// One of the four box labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Alpha,
    Beta,
    Gamma,
    Delta,
}

/// All four labels in canonical order.
pub const ALL_LABELS: [Label; 4] = [Label::Alpha, Label::Beta, Label::Gamma, Label::Delta];

impl Label {
    /// True for the labels read as a bullet in the type word.
    pub fn is_bullet(self) -> bool {
        matches!(self, Label::Alpha | Label::Delta)
    }

    /// True for labels that close their row to the left (beta, delta).
    fn closes_row(self) -> bool {
        matches!(self, Label::Beta | Label::Delta)
    }

    /// True for labels that force the column above them empty (alpha, gamma).
    fn caps_column(self) -> bool {
        matches!(self, Label::Alpha | Label::Gamma)
    }

    /// Index of the matching polynomial variable.
    pub fn var_index(self) -> usize {
        match self {
            Label::Alpha => ALPHA,
            Label::Beta => BETA,
            Label::Gamma => GAMMA,
            Label::Delta => DELTA,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Label::Alpha => "alpha",
            Label::Beta => "beta",
            Label::Gamma => "gamma",
            Label::Delta => "delta",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        match s {
            "alpha" => Ok(Label::Alpha),
            "beta" => Ok(Label::Beta),
            "gamma" => Ok(Label::Gamma),
            "delta" => Ok(Label::Delta),
            other => Err(Error::Parse(format!("unknown label {other:?}"))),
        }
    }
}

/// The q/u value assigned to an empty box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QU {
    Q,
    U,
}

/// The deterministic filling of all empty boxes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QUFilling {
    /// Value per empty box, keyed by (row, col).
    pub assignment: BTreeMap<(usize, usize), QU>,
}

/// A word in {bullet, hole}^n indexing tableau types and exclusion-process
/// states. `true` encodes a bullet.
///
/// Text form: one character per position, `B` for bullet, `W` for hole.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeWord(pub Vec<bool>);

impl TypeWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of bullets (the fugacity statistic).
    pub fn bullets(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// Reads the word as a binary number, bullet = 1, leftmost position most
    /// significant. Fixed state indexing for reproducible output.
    pub fn to_index(&self) -> usize {
        self.0.iter().fold(0, |acc, &b| (acc << 1) | usize::from(b))
    }

    /// Inverse of [`TypeWord::to_index`] for words of length n.
    pub fn from_index(index: usize, n: usize) -> Self {
        let mut bits = Vec::with_capacity(n);
        for k in (0..n).rev() {
            bits.push((index >> k) & 1 == 1);
        }
        TypeWord(bits)
    }

    /// All 2^n type words of length n, in index order.
    pub fn all(n: usize) -> Vec<Self> {
        (0..(1usize << n)).map(|i| Self::from_index(i, n)).collect()
    }
}

impl fmt::Display for TypeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{}", if b { 'B' } else { 'W' })?;
        }
        Ok(())
    }
}

impl FromStr for TypeWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'B' | 'b' => Ok(true),
                'W' | 'w' => Ok(false),
                other => Err(Error::Parse(format!(
                    "type words use B and W, found {other:?}"
                ))),
            })
            .collect::<Result<Vec<bool>>>()
            .map(TypeWord)
    }
}

/// A (partial) filling of the staircase diagram of size n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaircaseTableau {
    n: usize,
    /// Row-major packed cells; row i occupies a block of n+1-i slots.
    cells: Vec<Option<Label>>,
}

impl StaircaseTableau {
    /// The empty diagram of size n.
    pub fn new(n: usize) -> Self {
        Self {
            n,
            cells: vec![None; n * (n + 1) / 2],
        }
    }

    /// Builds a tableau from labeled cells, rejecting indices outside the
    /// shape and duplicate cells. Does not check the tableau rules; see
    /// [`validate`].
    pub fn from_cells(n: usize, labeled: &[(usize, usize, Label)]) -> Result<Self> {
        let mut t = Self::new(n);
        for &(row, col, label) in labeled {
            if !t.in_shape(row, col) {
                return Err(Error::OutOfShape { row, col, n });
            }
            let slot = t.index(row, col);
            if t.cells[slot].is_some() {
                return Err(Error::Parse(format!("duplicate cell ({row}, {col})")));
            }
            t.cells[slot] = Some(label);
        }
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// True when (row, col) lies inside the staircase shape.
    pub fn in_shape(&self, row: usize, col: usize) -> bool {
        (1..=self.n).contains(&row) && col >= 1 && col <= self.n + 1 - row
    }

    fn index(&self, row: usize, col: usize) -> usize {
        debug_assert!(self.in_shape(row, col));
        let r = row - 1;
        r * (self.n + 1) - r * (r + 1) / 2 + (col - 1)
    }

    /// The label at (row, col), or None when the box is empty.
    ///
    /// Panics when the index is outside the shape.
    pub fn get(&self, row: usize, col: usize) -> Option<Label> {
        assert!(
            self.in_shape(row, col),
            "cell ({row}, {col}) outside shape of size {}",
            self.n
        );
        self.cells[self.index(row, col)]
    }

    /// Iterates labeled cells in row-major order.
    pub fn labeled_cells(&self) -> Vec<(usize, usize, Label)> {
        let mut out = Vec::new();
        for row in 1..=self.n {
            for col in 1..=(self.n + 1 - row) {
                if let Some(l) = self.cells[self.index(row, col)] {
                    out.push((row, col, l));
                }
            }
        }
        out
    }

    /// The diagonal label of row i; panics when the diagonal box is empty.
    pub fn diagonal_label(&self, row: usize) -> Label {
        self.get(row, self.n + 1 - row)
            .expect("diagonal box of a valid tableau is labeled")
    }

    /// Serializes to the canonical JSON form
    /// `{"n": 3, "cells": [{"row":1,"col":3,"label":"alpha"}, ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let cells: Vec<serde_json::Value> = self
            .labeled_cells()
            .into_iter()
            .map(|(row, col, label)| {
                serde_json::json!({"row": row, "col": col, "label": label.name()})
            })
            .collect();
        serde_json::json!({"n": self.n, "cells": cells})
    }

    /// Parses the canonical JSON form.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let n = v
            .get("n")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| Error::Parse("tableau JSON needs an integer field \"n\"".into()))?
            as usize;
        let cells = v
            .get("cells")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Parse("tableau JSON needs an array field \"cells\"".into()))?;
        let mut labeled = Vec::with_capacity(cells.len());
        for cell in cells {
            let row = cell.get("row").and_then(|x| x.as_u64());
            let col = cell.get("col").and_then(|x| x.as_u64());
            let label = cell.get("label").and_then(|x| x.as_str());
            match (row, col, label) {
                (Some(r), Some(c), Some(l)) => {
                    labeled.push((r as usize, c as usize, Label::from_name(l)?));
                }
                _ => {
                    return Err(Error::Parse(
                        "tableau cell needs row, col, and label fields".into(),
                    ))
                }
            }
        }
        Self::from_cells(n, &labeled)
    }
}

/// Checks the three tableau rules: labeled diagonal, rows empty left of
/// beta/delta, columns empty above alpha/gamma.
pub fn validate(t: &StaircaseTableau) -> bool {
    let n = t.n();
    for row in 1..=n {
        if t.get(row, n + 1 - row).is_none() {
            return false;
        }
    }
    for (row, col, label) in t.labeled_cells() {
        if label.closes_row() {
            for c in 1..col {
                if t.get(row, c).is_some() {
                    return false;
                }
            }
        }
        if label.caps_column() {
            for r in 1..row {
                if t.get(r, col).is_some() {
                    return false;
                }
            }
        }
    }
    true
}

/// The type word: position i is a bullet iff the diagonal box of row i holds
/// alpha or delta, reading the diagonal northeast to southwest.
pub fn type_of(t: &StaircaseTableau) -> TypeWord {
    TypeWord(
        (1..=t.n())
            .map(|row| t.diagonal_label(row).is_bullet())
            .collect(),
    )
}

/// Number of bullets in the type word.
pub fn fugacity(t: &StaircaseTableau) -> usize {
    type_of(t).bullets()
}

/// Computes the deterministic q/u filling of the empty boxes:
///
/// * nearest label to the right is beta -> u;
/// * nearest label to the right is delta -> q;
/// * nearest label to the right is alpha or gamma: nearest label below
///   decides, alpha/delta -> u, beta/gamma -> q.
pub fn fill_qu(t: &StaircaseTableau) -> Result<QUFilling> {
    let n = t.n();
    let mut assignment = BTreeMap::new();
    for row in 1..=n {
        for col in 1..=(n + 1 - row) {
            if t.get(row, col).is_some() {
                continue;
            }
            let right = ((col + 1)..=(n + 1 - row)).find_map(|c| t.get(row, c));
            let value = match right {
                Some(Label::Beta) => QU::U,
                Some(Label::Delta) => QU::Q,
                Some(Label::Alpha) | Some(Label::Gamma) => {
                    let below = ((row + 1)..=(n + 1 - col)).find_map(|r| t.get(r, col));
                    match below {
                        Some(Label::Alpha) | Some(Label::Delta) => QU::U,
                        Some(Label::Beta) | Some(Label::Gamma) => QU::Q,
                        None => return Err(Error::IncompleteRule { row, col }),
                    }
                }
                None => return Err(Error::IncompleteRule { row, col }),
            };
            assignment.insert((row, col), value);
        }
    }
    Ok(QUFilling { assignment })
}

/// The weight monomial of a tableau: the product of all labels after the
/// q/u filling, with u kept symbolic. Total degree is n(n+1)/2.
pub fn weight(t: &StaircaseTableau) -> Result<MultiPoly> {
    let mut exps = [0u16; NVARS];
    for (_, _, label) in t.labeled_cells() {
        exps[label.var_index()] += 1;
    }
    for value in fill_qu(t)?.assignment.values() {
        match value {
            QU::Q => exps[Q] += 1,
            QU::U => exps[U] += 1,
        }
    }
    Ok(MultiPoly::monomial(exps, crate::exact::int(1)))
}

/// Enumeration budget: defaults to size 6, overridable through the
/// STAIRCASE_BUDGET environment variable.
pub fn enumeration_budget() -> usize {
    std::env::var("STAIRCASE_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(6)
}

fn check_budget(n: usize) -> Result<()> {
    let budget = enumeration_budget();
    if n > budget {
        Err(Error::BudgetExceeded(format!(
            "size {n} exceeds the enumeration budget {budget}"
        )))
    } else {
        Ok(())
    }
}

/// Exponent data of one enumerated tableau, passed to visitors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightExponents {
    /// Exponents of alpha, beta, gamma, delta.
    pub labels: [u16; 4],
    pub q: u16,
    pub u: u16,
    /// Bullet count of the type word.
    pub bullets: u16,
}

struct Dfs<'a, F: FnMut(&[(usize, usize, Label)], WeightExponents)> {
    n: usize,
    /// Cell coordinates in generation order: columns right to left, each
    /// column bottom (diagonal) to top.
    order: Vec<(usize, usize, bool)>,
    allowed: &'a [Label],
    sigma: Option<&'a [bool]>,
    row_closed: Vec<bool>,
    row_right: Vec<Option<Label>>,
    exps: WeightExponents,
    placed: Vec<(usize, usize, Label)>,
    visit: F,
}

impl<'a, F: FnMut(&[(usize, usize, Label)], WeightExponents)> Dfs<'a, F> {
    fn new(n: usize, allowed: &'a [Label], sigma: Option<&'a [bool]>, visit: F) -> Self {
        let mut order = Vec::with_capacity(n * (n + 1) / 2);
        for col in (1..=n).rev() {
            let diag_row = n + 1 - col;
            for row in (1..=diag_row).rev() {
                order.push((row, col, row == diag_row));
            }
        }
        Self {
            n,
            order,
            allowed,
            sigma,
            row_closed: vec![false; n + 1],
            row_right: vec![None; n + 1],
            exps: WeightExponents {
                labels: [0; 4],
                q: 0,
                u: 0,
                bullets: 0,
            },
            placed: Vec::with_capacity(n * (n + 1) / 2),
            visit,
        }
    }

    fn run(&mut self) {
        self.rec(0, false, None);
    }

    /// `capped` and `below` are the column-local states: whether an
    /// alpha/gamma below forces emptiness here, and the nearest label below
    /// in the current column.
    fn rec(&mut self, pos: usize, capped: bool, below: Option<Label>) {
        let Some(&(row, col, is_diag)) = self.order.get(pos) else {
            (self.visit)(&self.placed, self.exps);
            return;
        };
        // Column boundaries reset the column-local state.
        let (capped, below) = if is_diag { (false, None) } else { (capped, below) };

        if is_diag {
            for &label in self.allowed {
                if let Some(sigma) = self.sigma {
                    if sigma[row - 1] != label.is_bullet() {
                        continue;
                    }
                }
                self.place(pos, row, col, label, capped, below);
            }
            return;
        }

        // Empty box: the q/u value is determined by the nearest label to the
        // right (always present: the row's diagonal box is to the right) and,
        // when that is alpha/gamma, the nearest label below (always present:
        // the column's diagonal box is below).
        let right = self.row_right[row].expect("a labeled box exists to the right");
        let qu = match right {
            Label::Beta => QU::U,
            Label::Delta => QU::Q,
            Label::Alpha | Label::Gamma => {
                match below.expect("a labeled box exists below") {
                    Label::Alpha | Label::Delta => QU::U,
                    Label::Beta | Label::Gamma => QU::Q,
                }
            }
        };
        match qu {
            QU::Q => self.exps.q += 1,
            QU::U => self.exps.u += 1,
        }
        self.rec(pos + 1, capped, below);
        match qu {
            QU::Q => self.exps.q -= 1,
            QU::U => self.exps.u -= 1,
        }

        if !self.row_closed[row] && !capped {
            for &label in self.allowed {
                self.place(pos, row, col, label, capped, below);
            }
        }
    }

    fn place(
        &mut self,
        pos: usize,
        row: usize,
        col: usize,
        label: Label,
        _capped: bool,
        _below: Option<Label>,
    ) {
        let saved_right = self.row_right[row];
        let saved_closed = self.row_closed[row];
        self.row_right[row] = Some(label);
        if label.closes_row() {
            self.row_closed[row] = true;
        }
        self.exps.labels[label.var_index()] += 1;
        let is_diag = col == self.n + 1 - row;
        if is_diag && label.is_bullet() {
            self.exps.bullets += 1;
        }
        self.placed.push((row, col, label));

        self.rec(pos + 1, label.caps_column(), Some(label));

        self.placed.pop();
        if is_diag && label.is_bullet() {
            self.exps.bullets -= 1;
        }
        self.exps.labels[label.var_index()] -= 1;
        self.row_closed[row] = saved_closed;
        self.row_right[row] = saved_right;
    }
}

/// Visits every valid tableau of size n once, restricted to the allowed
/// label set and (optionally) to one type word. The visitor receives the
/// labeled cells and the full weight exponents.
pub fn visit_tableaux<F>(
    n: usize,
    allowed: &[Label],
    sigma: Option<&TypeWord>,
    visit: F,
) -> Result<()>
where
    F: FnMut(&[(usize, usize, Label)], WeightExponents),
{
    if let Some(s) = sigma {
        assert_eq!(s.len(), n, "type word length must equal the size");
    }
    check_budget(n)?;
    let bits = sigma.map(|s| s.0.as_slice());
    Dfs::new(n, allowed, bits, visit).run();
    Ok(())
}

/// Enumerates all valid tableaux of size n. Count: 4^n n!.
pub fn enumerate(n: usize) -> Result<Vec<StaircaseTableau>> {
    let mut out = Vec::new();
    visit_tableaux(n, &ALL_LABELS, None, |cells, _| {
        out.push(StaircaseTableau::from_cells(n, cells).expect("enumerated cells fit the shape"));
    })?;
    Ok(out)
}

/// Counts valid tableaux of size n without materializing them.
pub fn enumerate_count(n: usize) -> Result<u64> {
    let mut count = 0u64;
    visit_tableaux(n, &ALL_LABELS, None, |_, _| count += 1)?;
    Ok(count)
}

/// Enumerates the tableaux of one type. Count: 2^n n!.
pub fn enumerate_type(sigma: &TypeWord) -> Result<Vec<StaircaseTableau>> {
    let n = sigma.len();
    let mut out = Vec::new();
    visit_tableaux(n, &ALL_LABELS, Some(sigma), |cells, _| {
        out.push(StaircaseTableau::from_cells(n, cells).expect("enumerated cells fit the shape"));
    })?;
    Ok(out)
}

static Z_CACHE: Lazy<Mutex<HashMap<(usize, bool), MultiPoly>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// The fugacity partition function
/// Z_n(y; alpha, beta, gamma, delta; q) = sum over tableaux of
/// weight(T) y^(bullets of T), with u set to 1 unless `keep_u`.
///
/// Results are cached per (n, keep_u).
pub fn z_poly(n: usize, keep_u: bool) -> Result<MultiPoly> {
    if let Some(p) = Z_CACHE.lock().unwrap().get(&(n, keep_u)) {
        return Ok(p.clone());
    }
    let mut poly = MultiPoly::zero();
    visit_tableaux(n, &ALL_LABELS, None, |_, exps| {
        poly.add_term(exponents_monomial(exps, keep_u, true), crate::exact::int(1));
    })?;
    Z_CACHE
        .lock()
        .unwrap()
        .insert((n, keep_u), poly.clone());
    Ok(poly)
}

/// The per-type generating polynomial Z_sigma, with u set to 1 unless
/// `keep_u`. No fugacity variable: the type is fixed.
pub fn z_sigma_poly(sigma: &TypeWord, keep_u: bool) -> Result<MultiPoly> {
    let mut poly = MultiPoly::zero();
    visit_tableaux(sigma.len(), &ALL_LABELS, Some(sigma), |_, exps| {
        poly.add_term(exponents_monomial(exps, keep_u, false), crate::exact::int(1));
    })?;
    Ok(poly)
}

fn exponents_monomial(exps: WeightExponents, keep_u: bool, mark_fugacity: bool) -> Monomial {
    let mut e = [0u16; NVARS];
    e[ALPHA] = exps.labels[0];
    e[BETA] = exps.labels[1];
    e[GAMMA] = exps.labels[2];
    e[DELTA] = exps.labels[3];
    e[Q] = exps.q;
    if keep_u {
        e[U] = exps.u;
    }
    if mark_fugacity {
        e[Y] = exps.bullets;
    }
    Monomial(e)
}

/// Evaluates Z_n(y) through the tridiagonal moment route: with r = sqrt(y)
/// and the parameter shifts a -> a/r, b -> b*r, c -> c/r, d -> d*r, the
/// value is (abcd; q)_n r^n (alpha beta)^n times the n-th moment of the
/// tridiagonal data b_k = (1/r + r + B_k)/(1-q), lambda_k =
/// A_(k-1) C_k / (1-q)^2, where A, B, C are the three-term recurrence
/// coefficients and alpha, beta come from the standard substitution.
///
/// The arithmetic runs in Q(sqrt(y)); the radical component must cancel in
/// the result, which is returned as a plain rational.
pub fn z_fast(params: &AWParams, y: &Rational, n: usize) -> Result<Rational> {
    use crate::exact::{qpochhammer, QuadExt};

    let one = <QuadExt as Scalar>::one();
    let r = QuadExt::sqrt_of(y);
    let r_inv = r.inv()?;
    let shifted = AWParams::<QuadExt> {
        a: QuadExt::from_rat(&params.a).mul(&r_inv),
        b: QuadExt::from_rat(&params.b).mul(&r),
        c: QuadExt::from_rat(&params.c).mul(&r_inv),
        d: QuadExt::from_rat(&params.d).mul(&r),
        q: QuadExt::from_rat(&params.q),
    };
    let one_minus_q = one.sub(&shifted.q);
    if Scalar::is_zero(&one_minus_q) {
        return Err(Error::DegenerateParameters {
            factor: "1 - q".into(),
        });
    }
    let scale_b = one_minus_q.inv()?;
    let scale_lambda = scale_b.mul(&scale_b);

    let mut bs = Vec::with_capacity(n);
    let mut lambdas = Vec::with_capacity(n);
    lambdas.push(<QuadExt as Scalar>::zero());
    let mut prev_a: Option<QuadExt> = None;
    for k in 0..n {
        let (a_k, b_k, c_k) = recurrence_coeffs(&shifted, k)?;
        bs.push(r_inv.add(&r).add(&b_k).mul(&scale_b));
        if k > 0 {
            let prev = prev_a.take().expect("A coefficient saved by the previous step");
            lambdas.push(prev.mul(&c_k).mul(&scale_lambda));
        }
        prev_a = Some(a_k);
    }

    let mu = tridiag_moments(&bs, &lambdas, n);
    let moment = mu
        .last()
        .cloned()
        .unwrap_or_else(<QuadExt as Scalar>::one);

    let greek = crate::partition::greek_from_abcd(params)?;
    let alpha_beta = &greek.alpha * &greek.beta;
    let abcd = &params.a * &params.b * &params.c * &params.d;
    let poch = qpochhammer(&abcd, &params.q, n);
    let scale = QuadExt::from_rat(&poch)
        .mul(&Scalar::pow(&r, n as u64))
        .mul(&QuadExt::from_rat(&Scalar::pow(&alpha_beta, n as u64)));
    scale.mul(&moment).expect_rational()
}
