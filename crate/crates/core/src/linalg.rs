//! Dense linear algebra over `F_{q^2}`, and the search for solutions lying in
//! `(F_q^*)^n`.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::ff::{Element, Field};

/// Default cap on coset points visited by [`solve_in_subfield_nonzero`].
pub const DEFAULT_COSET_BUDGET: u128 = 10_000_000;
/// Default cap on the number of unknowns accepted by the subfield solver.
pub const DEFAULT_MAX_UNKNOWNS: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Element>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Element>) -> Self {
        assert_eq!(rows * cols, data.len());
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, vec![Element::ZERO; rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Element::ONE;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Element>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix::new(rows.len(), cols, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Element] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[Element] {
        &self.data
    }

    pub fn column(&self, c: usize) -> Vec<Element> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    /// Keeps only the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out[(r, j)] = self[(r, c)];
            }
        }
        out
    }

    pub fn map(&self, mut f: impl FnMut(Element) -> Element) -> Matrix {
        Matrix::new(self.rows, self.cols, self.data.iter().map(|&e| f(e)).collect())
    }

    pub fn mul(&self, field: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Element::ZERO;
                for k in 0..self.cols {
                    acc = field.add(acc, field.mul(self[(r, k)], other[(k, c)]));
                }
                out[(r, c)] = acc;
            }
        }
        out
    }

    pub fn mul_vec(&self, field: &Field, x: &[Element]) -> Vec<Element> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(Element::ZERO, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
            })
            .collect()
    }

    /// Row-major dlog encoding with `-1` for zero, as used in JSON reports.
    pub fn to_dlog_rows(&self, field: &Field) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|&e| field.dlog_or_minus_one(e)).collect())
            .collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Element;
    fn index(&self, (r, c): (usize, usize)) -> &Element {
        assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Element {
        assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

/// Reduced row-echelon form with its pivot structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

pub fn rref(field: &Field, m: &Matrix) -> Rref {
    let mut a = m.clone();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                let tmp = a[(p, j)];
                a[(p, j)] = a[(r, j)];
                a[(r, j)] = tmp;
            }
        }
        let inv = field.inv(a[(r, c)]).expect("pivot is nonzero");
        for j in c..a.cols {
            a[(r, j)] = field.mul(a[(r, j)], inv);
        }
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let factor = a[(i, c)];
            if factor.is_zero() {
                continue;
            }
            for j in c..a.cols {
                let v = field.mul(factor, a[(r, j)]);
                a[(i, j)] = field.sub(a[(i, j)], v);
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    Rref {
        matrix: a,
        rank: r,
        pivot_cols,
    }
}

pub fn rank(field: &Field, m: &Matrix) -> usize {
    rref(field, m).rank
}

/// Determinant of a square matrix.
pub fn determinant(field: &Field, m: &Matrix) -> Element {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut a = m.clone();
    let mut det = Element::ONE;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
            return Element::ZERO;
        };
        if p != c {
            for j in 0..n {
                let tmp = a[(p, j)];
                a[(p, j)] = a[(c, j)];
                a[(c, j)] = tmp;
            }
            det = field.neg(det);
        }
        let pivot = a[(c, c)];
        det = field.mul(det, pivot);
        let inv = field.inv(pivot).expect("pivot is nonzero");
        for i in c + 1..n {
            let factor = field.mul(a[(i, c)], inv);
            if factor.is_zero() {
                continue;
            }
            for j in c..n {
                let v = field.mul(factor, a[(c, j)]);
                a[(i, j)] = field.sub(a[(i, j)], v);
            }
        }
    }
    det
}

/// Basis of the right kernel `{x : Mx = 0}`, one vector per free column.
pub fn null_space(field: &Field, m: &Matrix) -> Vec<Vec<Element>> {
    let red = rref(field, m);
    kernel_from_rref(field, &red, m.cols)
}

fn kernel_from_rref(field: &Field, red: &Rref, cols: usize) -> Vec<Vec<Element>> {
    free_columns(&red.pivot_cols, cols)
        .into_iter()
        .map(|free| {
            let mut v = vec![Element::ZERO; cols];
            v[free] = Element::ONE;
            for (r, &pc) in red.pivot_cols.iter().enumerate() {
                v[pc] = field.neg(red.matrix[(r, free)]);
            }
            v
        })
        .collect()
}

fn free_columns(pivots: &[usize], cols: usize) -> Vec<usize> {
    (0..cols).filter(|c| !pivots.contains(c)).collect()
}

/// Affine solution set of `Mx = b`: a particular solution plus a kernel basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Element>,
    pub kernel: Vec<Vec<Element>>,
}

fn augmented(m: &Matrix, b: &[Element]) -> Matrix {
    assert_eq!(m.rows, b.len());
    let mut aug = Matrix::zeros(m.rows, m.cols + 1);
    for r in 0..m.rows {
        for c in 0..m.cols {
            aug[(r, c)] = m[(r, c)];
        }
        aug[(r, m.cols)] = b[r];
    }
    aug
}

/// Solves `Mx = b` over `F_{q^2}`; `None` when inconsistent.
pub fn solve(field: &Field, m: &Matrix, b: &[Element]) -> Option<AffineSolution> {
    let red = rref(field, &augmented(m, b));
    if red.pivot_cols.last() == Some(&m.cols) {
        return None;
    }
    let mut particular = vec![Element::ZERO; m.cols];
    for (r, &pc) in red.pivot_cols.iter().enumerate() {
        particular[pc] = red.matrix[(r, m.cols)];
    }
    let mut kernel_red = red.clone();
    kernel_red.matrix = red.matrix.select_columns(&(0..m.cols).collect::<Vec<_>>());
    Some(AffineSolution {
        particular,
        kernel: kernel_from_rref(field, &kernel_red, m.cols),
    })
}

/// Writes `e = e_0 + θ e_1` with `e_0, e_1 ∈ F_q`.
pub fn split_element(field: &Field, e: Element) -> (Element, Element) {
    let theta = field.theta();
    let denom = field.sub(theta, field.frobenius(theta));
    let e1 = field
        .div(field.sub(e, field.frobenius(e)), denom)
        .expect("θ is not in F_q");
    let e0 = field.sub(e, field.mul(theta, e1));
    (e0, e1)
}

/// Rewrites `Mx = b` over `F_{q^2}` as a `2·rows × cols` system over `F_q`
/// (the `1`-components stacked above the `θ`-components). Its solutions in
/// `F_q^n` are exactly the `F_q`-valued solutions of the original system.
pub fn split_to_subfield(field: &Field, m: &Matrix, b: &[Element]) -> (Matrix, Vec<Element>) {
    assert_eq!(m.rows, b.len());
    let mut out = Matrix::zeros(2 * m.rows, m.cols);
    let mut rhs = vec![Element::ZERO; 2 * m.rows];
    for r in 0..m.rows {
        for c in 0..m.cols {
            let (e0, e1) = split_element(field, m[(r, c)]);
            out[(r, c)] = e0;
            out[(m.rows + r, c)] = e1;
        }
        let (b0, b1) = split_element(field, b[r]);
        rhs[r] = b0;
        rhs[m.rows + r] = b1;
    }
    (out, rhs)
}

/// A verified solution of `Mx = b` with every `x_i ∈ F_q^*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubfieldSolution {
    pub x: Vec<Element>,
    pub verified: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverLimits {
    pub max_unknowns: usize,
    pub coset_budget: u128,
}

impl Default for SolverLimits {
    fn default() -> Self {
        SolverLimits {
            max_unknowns: DEFAULT_MAX_UNKNOWNS,
            coset_budget: DEFAULT_COSET_BUDGET,
        }
    }
}

/// Finds the lexicographically smallest `x ∈ (F_q^*)^n` with `Mx = b`, or
/// proves that none exists by exhausting the solution coset of the split
/// system. Free coordinates range over `F_q^*` only; pivot coordinates that
/// come out zero prune the candidate.
pub fn solve_in_subfield_nonzero(
    field: &Field,
    m: &Matrix,
    b: &[Element],
    limits: SolverLimits,
) -> Result<Option<SubfieldSolution>> {
    let n = m.cols;
    if n > limits.max_unknowns {
        return Err(Error::EnumerationBudgetExceeded {
            needed: n as u128,
            budget: limits.max_unknowns as u128,
        });
    }
    let (split, rhs) = split_to_subfield(field, m, b);
    let red = rref(field, &augmented(&split, &rhs));
    if red.pivot_cols.last() == Some(&n) {
        return Ok(None);
    }
    let free = free_columns(&red.pivot_cols, n);
    let q = field.q() as u128;
    let coset = q.checked_pow(free.len() as u32).unwrap_or(u128::MAX);
    if coset > limits.coset_budget {
        return Err(Error::EnumerationBudgetExceeded {
            needed: coset,
            budget: limits.coset_budget,
        });
    }

    let units: Vec<Element> = field
        .subfield_elements()
        .into_iter()
        .filter(|e| !e.is_zero())
        .collect();
    // x_pivot(r) = rhs_r - Σ_free R[r][c] x_c
    let rows: Vec<(usize, Element, Vec<Element>)> = red
        .pivot_cols
        .iter()
        .enumerate()
        .map(|(r, &pc)| {
            let coeffs = free.iter().map(|&c| red.matrix[(r, c)]).collect();
            (pc, red.matrix[(r, n)], coeffs)
        })
        .collect();

    let mut digits = vec![0usize; free.len()];
    let mut x = vec![Element::ZERO; n];
    let mut best: Option<Vec<Element>> = None;
    'outer: loop {
        for (slot, &c) in free.iter().enumerate() {
            x[c] = units[digits[slot]];
        }
        let mut ok = true;
        for (pc, constant, coeffs) in &rows {
            let mut v = *constant;
            for (slot, &coef) in coeffs.iter().enumerate() {
                if !coef.is_zero() {
                    v = field.sub(v, field.mul(coef, x[free[slot]]));
                }
            }
            if v.is_zero() {
                ok = false;
                break;
            }
            x[*pc] = v;
        }
        if ok && best.as_ref().is_none_or(|b| x < *b) {
            best = Some(x.clone());
        }
        // odometer over (F_q^*)^free
        for slot in (0..digits.len()).rev() {
            digits[slot] += 1;
            if digits[slot] < units.len() {
                continue 'outer;
            }
            digits[slot] = 0;
        }
        break;
    }

    Ok(best.map(|x| {
        let residual_ok = m.mul_vec(field, &x) == b;
        let coords_ok = x.iter().all(|&e| !e.is_zero() && field.in_subfield(e));
        assert!(residual_ok && coords_ok, "subfield solution failed verification");
        SubfieldSolution { x, verified: true }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;

    #[test]
    fn rref_examples() {
        let f = make_field(3, 1).unwrap();
        let id = Matrix::identity(3);
        let red = rref(&f, &id);
        assert_eq!(red.matrix, id);
        assert_eq!(red.rank, 3);
        let z = Matrix::zeros(2, 3);
        assert_eq!(rref(&f, &z).rank, 0);
        assert_eq!(rref(&f, &z).matrix, z);
        let (a1, a2) = (f.theta_pow(1), f.theta_pow(5));
        let v = Matrix::from_rows(&[vec![Element::ONE, Element::ONE], vec![a1, a2]]);
        assert_eq!(rank(&f, &v), 2);
    }

    #[test]
    fn null_space_examples() {
        let f = make_field(3, 1).unwrap();
        assert!(null_space(&f, &Matrix::identity(4)).is_empty());
        let row = Matrix::from_rows(&[vec![Element::ONE, Element::ONE]]);
        assert_eq!(null_space(&f, &row), vec![vec![f.minus_one(), Element::ONE]]);
    }

    #[test]
    fn determinant_matches_rank() {
        let f = make_field(2, 2).unwrap();
        let m = Matrix::from_rows(&[
            vec![f.theta_pow(1), f.theta_pow(3)],
            vec![f.theta_pow(2), f.theta_pow(4)],
        ]);
        // θ^5 - θ^5 = 0
        assert!(determinant(&f, &m).is_zero());
        assert_eq!(determinant(&f, &Matrix::identity(3)), Element::ONE);
    }

    #[test]
    fn split_examples() {
        let f = make_field(3, 1).unwrap();
        let sub = f.subfield_elements();
        let m = Matrix::from_rows(&[vec![sub[1], sub[2]]]);
        let (s, rhs) = split_to_subfield(&f, &m, &[Element::ZERO]);
        assert_eq!(s.row(0), m.row(0));
        assert!(s.row(1).iter().all(|e| e.is_zero()));
        assert!(rhs.iter().all(|e| e.is_zero()));

        let m = Matrix::from_rows(&[vec![f.theta()]]);
        let (s, _) = split_to_subfield(&f, &m, &[Element::ZERO]);
        assert_eq!(s.column(0), vec![Element::ZERO, Element::ONE]);
        assert_eq!(rank(&f, &s), 1);
    }

    #[test]
    fn subfield_solver_examples() {
        let f = make_field(3, 1).unwrap();
        let row = Matrix::from_rows(&[vec![Element::ONE, Element::ONE]]);
        let sol = solve_in_subfield_nonzero(&f, &row, &[Element::ZERO], SolverLimits::default())
            .unwrap()
            .unwrap();
        assert_eq!(sol.x, vec![Element::ONE, f.minus_one()]);
        let none = solve_in_subfield_nonzero(
            &f,
            &Matrix::identity(3),
            &[Element::ZERO; 3],
            SolverLimits::default(),
        )
        .unwrap();
        assert!(none.is_none());
    }

    #[test]
    fn solver_budget_is_an_error() {
        let f = make_field(3, 1).unwrap();
        let m = Matrix::zeros(1, 6);
        let tight = SolverLimits {
            max_unknowns: 24,
            coset_budget: 100,
        };
        assert!(matches!(
            solve_in_subfield_nonzero(&f, &m, &[Element::ZERO], tight),
            Err(Error::EnumerationBudgetExceeded { .. })
        ));
        let narrow = SolverLimits {
            max_unknowns: 4,
            coset_budget: 100,
        };
        assert!(solve_in_subfield_nonzero(&f, &m, &[Element::ZERO], narrow).is_err());
    }

    #[test]
    fn solve_reports_inconsistency() {
        let f = make_field(3, 1).unwrap();
        let m = Matrix::from_rows(&[vec![Element::ONE], vec![Element::ONE]]);
        assert!(solve(&f, &m, &[Element::ONE, Element::ZERO]).is_none());
        let s = solve(&f, &m, &[Element::ONE, Element::ONE]).unwrap();
        assert_eq!(s.particular, vec![Element::ONE]);
        assert!(s.kernel.is_empty());
    }
}
