//! Bijective structures attached to staircase tableaux: the forest of
//! labeled cells, the tree-to-cycle map, the doubly signed permutation
//! encoding, weighted Dyck path moments, and matching statistics.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exact::{int, Int};
use crate::polyring::{MultiPoly, ALPHA, GAMMA, NVARS, Q};
use crate::report::CheckReport;
use crate::tableaux::{visit_tableaux, Label, StaircaseTableau};

/// Replaces every gamma label by alpha and every delta label by beta,
/// keeping the cell positions fixed. The result is again a valid
/// tableau because the column condition for gamma matches alpha's and
/// the row condition for delta matches beta's.
pub fn alpha_beta_form(t: &StaircaseTableau) -> StaircaseTableau {
    let cells: Vec<(usize, usize, Label)> = t
        .labeled_cells()
        .into_iter()
        .map(|(row, col, label)| {
            let reduced = match label {
                Label::Gamma => Label::Alpha,
                Label::Delta => Label::Beta,
                other => other,
            };
            (row, col, reduced)
        })
        .collect();
    StaircaseTableau::from_cells(t.n(), &cells)
        .expect("label substitution preserves validity")
}

/// Forest on the labeled cells of a tableau in alpha/beta form. Each
/// nondiagonal vertex points to the nearest labeled cell to its right
/// (its row child) and the nearest labeled cell below (its column
/// child); both always exist because every diagonal box is labeled.
/// Diagonal cells are the leaves.
#[derive(Debug, Clone)]
pub struct StaircaseForest {
    n: usize,
    vertices: Vec<(usize, usize, Label)>,
    children: Vec<Option<(usize, usize)>>,
    parent: Vec<Option<usize>>,
}

impl StaircaseForest {
    /// Size of the underlying tableau.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Vertices in row-major order as (row, col, label).
    pub fn vertices(&self) -> &[(usize, usize, Label)] {
        &self.vertices
    }

    /// Per-vertex (row child, column child) indices; None for leaves.
    pub fn children(&self) -> &[Option<(usize, usize)>] {
        &self.children
    }

    /// Per-vertex parent index; None for roots.
    pub fn parent(&self) -> &[Option<usize>] {
        &self.parent
    }

    /// Indices of root vertices, one per component.
    pub fn roots(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.parent[v].is_none())
            .collect()
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        self.roots().len()
    }

    /// Vertex positions with labels stripped. Two tableaux have the
    /// same forest exactly when these agree.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        self.vertices.iter().map(|&(r, c, _)| (r, c)).collect()
    }

    fn index_of(&self, row: usize, col: usize) -> usize {
        self.vertices
            .iter()
            .position(|&(r, c, _)| r == row && c == col)
            .expect("vertex present in forest")
    }

    /// Whether the edge from `v` to its parent is vertical, meaning
    /// `v` is the column child of its parent.
    fn vertical_edge_up(&self, v: usize) -> Option<bool> {
        self.parent[v].map(|p| self.vertices[p].1 == self.vertices[v].1)
    }
}

/// Builds the forest of a tableau. The tableau is first put into
/// alpha/beta form, so the row child of any internal vertex carries an
/// alpha and the column child carries a beta; this gives each vertex
/// at most one parent.
pub fn forest_of(t: &StaircaseTableau) -> StaircaseForest {
    let reduced = alpha_beta_form(t);
    let n = reduced.n();
    let vertices = reduced.labeled_cells();
    let index: HashMap<(usize, usize), usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, &(r, c, _))| ((r, c), i))
        .collect();
    let mut children = vec![None; vertices.len()];
    let mut parent = vec![None; vertices.len()];
    for (v, &(row, col, _)) in vertices.iter().enumerate() {
        if col == n + 1 - row {
            continue;
        }
        let row_child = (col + 1..=n + 1 - row)
            .find_map(|c| index.get(&(row, c)))
            .copied()
            .expect("diagonal cell of the row is labeled");
        let col_child = (row + 1..=n + 1 - col)
            .find_map(|r| index.get(&(r, col)))
            .copied()
            .expect("diagonal cell of the column is labeled");
        children[v] = Some((row_child, col_child));
        debug_assert!(parent[row_child].is_none());
        debug_assert!(parent[col_child].is_none());
        parent[row_child] = Some(v);
        parent[col_child] = Some(v);
    }
    StaircaseForest {
        n,
        vertices,
        children,
        parent,
    }
}

/// Number of single-component forests on a size-n staircase, computed
/// by splitting at the vertex set of the first row:
/// t(n) = sum over i of C(n-2, i-1) t(i) t(n-i), with t(1) = 1.
/// Equals (n-1)!.
pub fn count_staircase_trees(n: usize) -> Int {
    assert!(n >= 1, "tree counts start at n = 1");
    let mut t = vec![Int::from(0); n + 1];
    t[1] = Int::from(1);
    for k in 2..=n {
        let mut total = Int::from(0);
        for i in 1..k {
            total += crate::exact::binomial(k as i64 - 2, i as i64 - 1) * &t[i] * &t[k - i];
        }
        t[k] = total;
    }
    t.pop().expect("table nonempty")
}

/// Reads a permutation of 1..=n off a forest. Position i is traced
/// from the diagonal vertex of row i: climb straight away from the
/// diagonal as far as the tree allows (north along vertical edges, or
/// west along horizontal ones), then descend by alternating turns
/// (east-south after a northward climb, south-east after a westward
/// one) until a leaf is reached; its row number is the image of i.
/// Diagonal vertices in singleton components are fixed points.
pub fn forest_permutation(f: &StaircaseForest) -> Vec<usize> {
    let n = f.n();
    let mut perm = vec![0usize; n];
    for i in 1..=n {
        let start = f.index_of(i, n + 1 - i);
        let Some(vertical) = f.vertical_edge_up(start) else {
            perm[i - 1] = i;
            continue;
        };
        let mut v = start;
        while f.vertical_edge_up(v) == Some(vertical) {
            v = f.parent[v].expect("edge direction implies a parent");
        }
        let mut take_row_child = vertical;
        while let Some((row_child, col_child)) = f.children[v] {
            v = if take_row_child { row_child } else { col_child };
            take_row_child = !take_row_child;
        }
        perm[i - 1] = f.vertices[v].0;
    }
    perm
}

/// The permutation of a single-component forest, which is always a
/// single n-cycle. Multi-component forests are rejected.
pub fn tree_to_cycle(f: &StaircaseForest) -> Result<Vec<usize>> {
    if f.component_count() != 1 {
        return Err(Error::NotATree);
    }
    Ok(forest_permutation(f))
}

/// Number of cycles of a permutation given in one-line form on 1..=n.
pub fn cycle_count(perm: &[usize]) -> usize {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut cycles = 0;
    for mut i in 0..n {
        if seen[i] {
            continue;
        }
        cycles += 1;
        while !seen[i] {
            seen[i] = true;
            i = perm[i] - 1;
        }
    }
    cycles
}

/// A permutation together with two sign vectors, one bit per position.
/// There are 4^n n! of these on n letters, matching the tableau count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DoublySignedPermutation {
    /// One-line form on 1..=n.
    pub perm: Vec<usize>,
    /// True where the diagonal label of the row is alpha or delta.
    pub sign1: Vec<bool>,
    /// True per the edge-label rule of `to_doubly_signed_permutation`.
    pub sign2: Vec<bool>,
}

/// Encodes a tableau as a doubly signed permutation. The permutation
/// comes from the forest of the tableau. The first sign of position i
/// records whether the diagonal label of row i is alpha or delta. The
/// second sign looks at the original labels along the climb direction:
/// for a diagonal label alpha or gamma it is positive when the
/// leftmost labeled cell of row i carries alpha or delta, and for beta
/// or delta it is positive when the topmost labeled cell of column
/// n+1-i carries alpha or beta. This map is a bijection.
pub fn to_doubly_signed_permutation(t: &StaircaseTableau) -> DoublySignedPermutation {
    let n = t.n();
    let perm = forest_permutation(&forest_of(t));
    let mut sign1 = Vec::with_capacity(n);
    let mut sign2 = Vec::with_capacity(n);
    for i in 1..=n {
        let diag = t.diagonal_label(i);
        sign1.push(matches!(diag, Label::Alpha | Label::Delta));
        let plus = if matches!(diag, Label::Alpha | Label::Gamma) {
            let label = (1..=n + 1 - i)
                .find_map(|c| t.get(i, c))
                .expect("row contains its labeled diagonal cell");
            matches!(label, Label::Alpha | Label::Delta)
        } else {
            let col = n + 1 - i;
            let label = (1..=i)
                .find_map(|r| t.get(r, col))
                .expect("column contains its labeled diagonal cell");
            matches!(label, Label::Alpha | Label::Beta)
        };
        sign2.push(plus);
    }
    DoublySignedPermutation { perm, sign1, sign2 }
}

/// Number of tableaux of size n using only the given labels on the
/// diagonal and interior. Subject to the enumeration budget.
pub fn count_with_labels(n: usize, labels: &[Label]) -> Result<u64> {
    let mut count = 0u64;
    visit_tableaux(n, labels, None, |_, _| count += 1)?;
    Ok(count)
}

/// Lattice path from 0 to 0 with steps +1 (true) and -1 (false) that
/// never goes below 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDyckPath {
    steps: Vec<bool>,
}

impl WeightedDyckPath {
    /// Validates the ballot condition and even length.
    pub fn new(steps: Vec<bool>) -> Result<Self> {
        let mut height = 0i64;
        for &up in &steps {
            height += if up { 1 } else { -1 };
            if height < 0 {
                return Err(Error::Parse("path dips below the axis".into()));
            }
        }
        if height != 0 {
            return Err(Error::Parse("path does not return to the axis".into()));
        }
        Ok(WeightedDyckPath { steps })
    }

    /// The step sequence, true for a rise.
    pub fn steps(&self) -> &[bool] {
        &self.steps
    }

    /// Product of the fall weights. A fall starting at height 2i+2
    /// contributes (alpha + gamma q^i) [i+1]_q and a fall starting at
    /// height 2i+1 contributes q^i + (alpha + gamma q^i) [i]_q; rises
    /// contribute 1.
    pub fn weight(&self) -> MultiPoly {
        let mut out = MultiPoly::one();
        let mut height = 0usize;
        for &up in &self.steps {
            if up {
                height += 1;
            } else {
                out = out.mul(&fall_weight(height));
                height -= 1;
            }
        }
        out
    }
}

fn q_integer(m: usize) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for j in 0..m {
        out = out.add(&MultiPoly::var(Q).pow(j as u64));
    }
    out
}

fn fall_weight(height: usize) -> MultiPoly {
    debug_assert!(height >= 1, "a fall starts at positive height");
    let alpha = MultiPoly::var(ALPHA);
    let gamma = MultiPoly::var(GAMMA);
    if height.is_multiple_of(2) {
        let i = (height - 2) / 2;
        let open = alpha.add(&gamma.mul(&MultiPoly::var(Q).pow(i as u64)));
        open.mul(&q_integer(i + 1))
    } else {
        let i = (height - 1) / 2;
        let qi = MultiPoly::var(Q).pow(i as u64);
        let open = alpha.add(&gamma.mul(&qi));
        qi.add(&open.mul(&q_integer(i)))
    }
}

/// All Dyck paths with `half_length` rises, in lexicographic order
/// with rises first.
pub fn dyck_paths(half_length: usize) -> Vec<WeightedDyckPath> {
    fn extend(
        steps: &mut Vec<bool>,
        height: usize,
        remaining_up: usize,
        out: &mut Vec<WeightedDyckPath>,
    ) {
        if remaining_up == 0 && height == 0 {
            out.push(WeightedDyckPath {
                steps: steps.clone(),
            });
            return;
        }
        if remaining_up > 0 {
            steps.push(true);
            extend(steps, height + 1, remaining_up - 1, out);
            steps.pop();
        }
        if height > 0 {
            steps.push(false);
            extend(steps, height - 1, remaining_up, out);
            steps.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 0, half_length, &mut out);
    out
}

/// Sum of path weights over all Dyck paths with n+1 rises. Agrees
/// with the generating polynomial Z_n at beta = y = 1, delta = 0.
pub fn dyck_moment(n: usize) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for path in dyck_paths(n + 1) {
        out = out.add(&path.weight());
    }
    out
}

/// Perfect matching of 1..=2m, stored as (low, high) pairs sorted by
/// low endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
}

impl Matching {
    /// Normalizes pair order and checks that the edges tile 1..=2m.
    pub fn new(edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        edges.sort_unstable();
        let mut points: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        points.sort_unstable();
        if points.iter().enumerate().any(|(i, &p)| p != i + 1) {
            return Err(Error::Parse(
                "matching must cover 1..=2m with disjoint pairs".into(),
            ));
        }
        Ok(Matching { edges })
    }

    /// Edges as (low, high), sorted by low endpoint.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edges.len()
    }
}

/// All perfect matchings of 1..=points; there are (points-1)!! of
/// them. `points` must be even.
pub fn all_matchings(points: usize) -> Vec<Matching> {
    assert!(points.is_multiple_of(2), "matchings need an even ground set");
    fn extend(free: &[usize], edges: &mut Vec<(usize, usize)>, out: &mut Vec<Matching>) {
        if free.is_empty() {
            out.push(Matching {
                edges: edges.clone(),
            });
            return;
        }
        let low = free[0];
        for k in 1..free.len() {
            let high = free[k];
            let mut rest = free.to_vec();
            rest.remove(k);
            rest.remove(0);
            edges.push((low, high));
            extend(&rest, edges, out);
            edges.pop();
        }
    }
    let free: Vec<usize> = (1..=points).collect();
    let mut out = Vec::new();
    extend(&free, &mut Vec::new(), &mut out);
    out
}

/// Matching statistics (total f-crossing weight, nested edges,
/// crossed edges). For an edge e = (i, j), cross(e) counts edges
/// (l, k) with i < l < j < k and nest(e) counts edges (l, k) with
/// l < i < j < k. The f-value of e is cross(e) when nest(e) > 0 and
/// floor(cross(e)/2) otherwise; e is nested when cross < nest and
/// crossed when cross > nest.
pub fn matching_stats(m: &Matching) -> (usize, usize, usize) {
    let mut f_total = 0usize;
    let mut nested = 0usize;
    let mut crossed = 0usize;
    for &(i, j) in m.edges() {
        let mut cross = 0usize;
        let mut nest = 0usize;
        for &(l, k) in m.edges() {
            if i < l && l < j && j < k {
                cross += 1;
            }
            if l < i && j < k {
                nest += 1;
            }
        }
        f_total += if nest > 0 { cross } else { cross / 2 };
        if cross < nest {
            nested += 1;
        }
        if cross > nest {
            crossed += 1;
        }
    }
    (f_total, nested, crossed)
}

/// Checks that matchings of 1..=2n+2 weighted by
/// q^f alpha^(nested) gamma^(crossed) sum to the same polynomial as
/// delta-free tableaux of size n weighted by q^q alpha^a gamma^g.
/// Limited to n <= 4.
pub fn check_fcrossing_theorem(n: usize) -> Result<CheckReport> {
    if n > 4 {
        return Err(Error::BudgetExceeded(format!(
            "matching comparison is limited to n <= 4, got {n}"
        )));
    }
    let start = std::time::Instant::now();
    let mut matching_side = MultiPoly::zero();
    for m in all_matchings(2 * n + 2) {
        let (f, nested, crossed) = matching_stats(&m);
        let mut exps = [0u16; NVARS];
        exps[Q] = f as u16;
        exps[ALPHA] = nested as u16;
        exps[GAMMA] = crossed as u16;
        matching_side = matching_side.add(&MultiPoly::monomial(exps, int(1)));
    }
    let mut tableau_side = MultiPoly::zero();
    visit_tableaux(
        n,
        &[Label::Alpha, Label::Beta, Label::Gamma],
        None,
        |_, w| {
            let mut exps = [0u16; NVARS];
            exps[Q] = w.q;
            exps[ALPHA] = w.labels[0];
            exps[GAMMA] = w.labels[2];
            tableau_side = tableau_side.add(&MultiPoly::monomial(exps, int(1)));
        },
    )?;
    let name = format!("matching weights equal tableau weights, n = {n}");
    let runtime = start.elapsed();
    if matching_side == tableau_side {
        Ok(CheckReport::pass(name, String::new(), runtime))
    } else {
        Ok(CheckReport::fail(
            name,
            format!("difference {}", matching_side.sub(&tableau_side)),
            runtime,
        ))
    }
}

/// Verifies that the path moments reproduce the generating polynomial
/// at beta = y = 1, delta = 0, for each size up to min(n_max, 5).
pub fn dyck_checks(n_max: usize) -> Result<Vec<CheckReport>> {
    let one = int(1);
    let zero = int(0);
    let mut reports = Vec::new();
    for n in 0..=n_max.min(5) {
        let started = std::time::Instant::now();
        let specialized = crate::tableaux::z_poly(n, false)?
            .subst_scalar(crate::polyring::BETA, &one)
            .subst_scalar(crate::polyring::DELTA, &zero)
            .subst_scalar(crate::polyring::Y, &one);
        let moment = dyck_moment(n);
        let name = format!("path moment equals generating polynomial, n = {n}");
        reports.push(if moment == specialized {
            CheckReport::pass(name, String::new(), started.elapsed())
        } else {
            CheckReport::fail(
                name,
                format!("difference {}", moment.sub(&specialized)),
                started.elapsed(),
            )
        });
    }
    Ok(reports)
}

/// Runs the matching equidistribution comparison for each size up to
/// min(n_max, 4).
pub fn fcrossing_checks(n_max: usize) -> Result<Vec<CheckReport>> {
    (0..=n_max.min(4)).map(check_fcrossing_theorem).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{factorial, odd_double_factorial, rat, Rational};
    use crate::polyring::{BETA, DELTA, Y};
    use crate::tableaux::{enumerate, enumerate_type, z_poly, TypeWord};
    use itertools::Itertools;
    use proptest::prelude::*;
    use std::collections::{HashMap, HashSet};

    fn ab_tableaux(n: usize) -> Vec<StaircaseTableau> {
        let mut out = Vec::new();
        visit_tableaux(n, &[Label::Alpha, Label::Beta], None, |cells, _| {
            out.push(StaircaseTableau::from_cells(n, cells).expect("visited cells are valid"));
        })
        .expect("within budget");
        out
    }

    #[test]
    fn single_cell_forest() {
        let t = StaircaseTableau::from_cells(1, &[(1, 1, Label::Alpha)]).unwrap();
        let f = forest_of(&t);
        assert_eq!(f.vertices(), &[(1, 1, Label::Alpha)]);
        assert_eq!(f.component_count(), 1);
        assert_eq!(forest_permutation(&f), vec![1]);
    }

    #[test]
    fn forest_children_have_forced_labels() {
        for n in 1..=4 {
            for t in ab_tableaux(n) {
                let f = forest_of(&t);
                for v in 0..f.vertices().len() {
                    let (row, col, _) = f.vertices()[v];
                    match f.children()[v] {
                        None => assert_eq!(col, n + 1 - row),
                        Some((rc, cc)) => {
                            assert_eq!(f.vertices()[rc].2, Label::Alpha);
                            assert_eq!(f.vertices()[cc].2, Label::Beta);
                            assert_eq!(f.vertices()[rc].0, row);
                            assert_eq!(f.vertices()[cc].1, col);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn forests_form_trees() {
        for n in 1..=4 {
            for t in ab_tableaux(n) {
                let f = forest_of(&t);
                let mut reached = 0usize;
                for root in f.roots() {
                    let mut stack = vec![root];
                    while let Some(v) = stack.pop() {
                        reached += 1;
                        if let Some((rc, cc)) = f.children()[v] {
                            stack.push(rc);
                            stack.push(cc);
                        }
                    }
                }
                assert_eq!(reached, f.vertices().len());
            }
        }
    }

    #[test]
    fn forest_counts() {
        for n in 1..=5usize {
            let mut by_positions: HashMap<Vec<(usize, usize)>, usize> = HashMap::new();
            for t in ab_tableaux(n) {
                let f = forest_of(&t);
                by_positions.insert(f.positions(), f.component_count());
            }
            let distinct = Int::from(by_positions.len());
            assert_eq!(distinct, factorial(n as u64), "forests at n = {n}");
            let weighted: Int = by_positions
                .values()
                .map(|&c| Int::from(2).pow(c as u32))
                .sum();
            assert_eq!(weighted, factorial(n as u64 + 1), "2^components at n = {n}");
        }
    }

    #[test]
    fn tree_counts_match_brute_force() {
        assert_eq!(count_staircase_trees(1), Int::from(1));
        assert_eq!(count_staircase_trees(4), Int::from(6));
        for n in 1..=7u64 {
            assert_eq!(count_staircase_trees(n as usize), factorial(n - 1));
        }
        for n in 1..=5usize {
            let mut seen: HashSet<Vec<(usize, usize)>> = HashSet::new();
            for t in ab_tableaux(n) {
                let f = forest_of(&t);
                if f.component_count() == 1 {
                    seen.insert(f.positions());
                }
            }
            assert_eq!(Int::from(seen.len()), count_staircase_trees(n));
        }
    }

    fn tree_cycles(n: usize) -> HashSet<Vec<usize>> {
        let mut seen: HashSet<Vec<(usize, usize)>> = HashSet::new();
        let mut cycles = HashSet::new();
        for t in ab_tableaux(n) {
            let f = forest_of(&t);
            if f.component_count() == 1 && seen.insert(f.positions()) {
                cycles.insert(tree_to_cycle(&f).unwrap());
            }
        }
        cycles
    }

    #[test]
    fn small_tree_cycles() {
        assert_eq!(tree_cycles(1), HashSet::from([vec![1]]));
        assert_eq!(tree_cycles(2), HashSet::from([vec![2, 1]]));
        assert_eq!(tree_cycles(3), HashSet::from([vec![2, 3, 1], vec![3, 1, 2]]));
        let all_four_cycles: HashSet<Vec<usize>> = (1..=4usize)
            .permutations(4)
            .filter(|p| cycle_count(p) == 1)
            .collect();
        assert_eq!(all_four_cycles.len(), 6);
        assert_eq!(tree_cycles(4), all_four_cycles);
    }

    #[test]
    fn cycle_structure_matches_components() {
        for n in 1..=5 {
            for t in ab_tableaux(n) {
                let f = forest_of(&t);
                let perm = forest_permutation(&f);
                let mut sorted = perm.clone();
                sorted.sort_unstable();
                assert_eq!(sorted, (1..=n).collect::<Vec<_>>());
                assert_eq!(cycle_count(&perm), f.component_count());
            }
        }
    }

    #[test]
    fn tree_to_cycle_rejects_forests() {
        let t = StaircaseTableau::from_cells(
            2,
            &[(1, 2, Label::Alpha), (2, 1, Label::Beta)],
        )
        .unwrap();
        let f = forest_of(&t);
        assert_eq!(f.component_count(), 2);
        assert!(matches!(tree_to_cycle(&f), Err(Error::NotATree)));
    }

    #[test]
    fn single_cell_signs() {
        let expect = [
            (Label::Alpha, true, true),
            (Label::Beta, false, true),
            (Label::Gamma, false, false),
            (Label::Delta, true, false),
        ];
        for (label, s1, s2) in expect {
            let t = StaircaseTableau::from_cells(1, &[(1, 1, label)]).unwrap();
            let ds = to_doubly_signed_permutation(&t);
            assert_eq!(ds.perm, vec![1]);
            assert_eq!(ds.sign1, vec![s1], "{}", label.name());
            assert_eq!(ds.sign2, vec![s2], "{}", label.name());
        }
    }

    #[test]
    fn signed_encoding_is_injective() {
        for n in 1..=4u64 {
            let mut seen = HashSet::new();
            for t in enumerate(n as usize).unwrap() {
                seen.insert(to_doubly_signed_permutation(&t));
            }
            let expect = Int::from(4).pow(n as u32) * factorial(n);
            assert_eq!(Int::from(seen.len()), expect, "n = {n}");
        }
    }

    #[test]
    fn first_sign_records_the_type() {
        for n in 1..=3usize {
            for sigma in TypeWord::all(n) {
                let mut seen = HashSet::new();
                for t in enumerate_type(&sigma).unwrap() {
                    let ds = to_doubly_signed_permutation(&t);
                    assert_eq!(ds.sign1, sigma.0, "type is encoded in the first sign");
                    seen.insert((ds.perm, ds.sign2));
                }
                let expect = Int::from(2).pow(n as u32) * factorial(n as u64);
                assert_eq!(Int::from(seen.len()), expect, "sigma = {sigma}");
            }
        }
    }

    #[test]
    fn restricted_label_counts() {
        for n in 1..=6u64 {
            assert_eq!(
                Int::from(count_with_labels(n as usize, &[Label::Alpha, Label::Beta]).unwrap()),
                factorial(n + 1)
            );
            assert_eq!(
                Int::from(
                    count_with_labels(n as usize, &[Label::Alpha, Label::Beta, Label::Gamma])
                        .unwrap()
                ),
                odd_double_factorial(n)
            );
        }
    }

    #[test]
    fn dyck_path_construction() {
        assert!(WeightedDyckPath::new(vec![true, false]).is_ok());
        assert!(WeightedDyckPath::new(vec![false, true]).is_err());
        assert!(WeightedDyckPath::new(vec![true]).is_err());
        let catalan = [1usize, 1, 2, 5, 14, 42, 132];
        for (k, &c) in catalan.iter().enumerate() {
            assert_eq!(dyck_paths(k).len(), c);
        }
    }

    #[test]
    fn dyck_moment_base_cases() {
        assert_eq!(dyck_moment(0), MultiPoly::one());
        let expect = MultiPoly::one()
            .add(&MultiPoly::var(ALPHA))
            .add(&MultiPoly::var(GAMMA));
        assert_eq!(dyck_moment(1), expect);
    }

    #[test]
    fn dyck_moment_matches_generating_polynomial() {
        for n in 0..=5 {
            let z = z_poly(n, false)
                .unwrap()
                .subst_scalar(BETA, &rat(1, 1))
                .subst_scalar(DELTA, &rat(0, 1))
                .subst_scalar(Y, &rat(1, 1));
            assert_eq!(dyck_moment(n), z, "n = {n}");
        }
    }

    #[test]
    fn matching_stat_examples() {
        let stats = |edges: Vec<(usize, usize)>| matching_stats(&Matching::new(edges).unwrap());
        assert_eq!(stats(vec![(1, 2), (3, 4)]), (0, 0, 0));
        assert_eq!(stats(vec![(1, 3), (2, 4)]), (0, 0, 1));
        assert_eq!(stats(vec![(1, 4), (2, 3)]), (0, 1, 0));
    }

    #[test]
    fn matching_enumeration_counts() {
        for m in 1..=5u64 {
            assert_eq!(
                Int::from(all_matchings(2 * m as usize).len()),
                odd_double_factorial(m - 1)
            );
        }
        assert!(Matching::new(vec![(1, 2), (2, 3)]).is_err());
        assert!(Matching::new(vec![(1, 2), (4, 5)]).is_err());
    }

    #[test]
    fn fcrossing_theorem_small() {
        for n in 0..=4 {
            let report = check_fcrossing_theorem(n).unwrap();
            assert!(report.passed(), "{report}");
        }
        assert!(matches!(
            check_fcrossing_theorem(5),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn path_and_matching_suites_pass() {
        for report in dyck_checks(3).unwrap() {
            assert!(report.passed(), "{report}");
        }
        let reports = fcrossing_checks(9).unwrap();
        assert_eq!(reports.len(), 5);
        for report in reports {
            assert!(report.passed(), "{report}");
        }
    }

    proptest! {
        #[test]
        fn matching_stats_are_bounded(seed in 0usize..945) {
            let matchings = all_matchings(8);
            let m = &matchings[seed % matchings.len()];
            let (f, nested, crossed) = matching_stats(m);
            prop_assert!(nested + crossed <= m.size());
            prop_assert!(f <= m.size() * m.size());
        }

        #[test]
        fn random_paths_have_valid_weights(bits in proptest::collection::vec(any::<bool>(), 0..12)) {
            if let Ok(path) = WeightedDyckPath::new(bits) {
                let w = path.weight();
                prop_assert!(w.has_nonneg_integer_coeffs());
                let at_one: Rational = w.eval(&std::array::from_fn(|_| rat(1, 1)));
                prop_assert!(at_one >= rat(1, 1));
            }
        }
    }
}
