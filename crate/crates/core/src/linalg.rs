//! Dense exact linear algebra over the rationals.
//!
//! Everything here is deterministic: pivot columns are the leftmost columns
//! with a nonzero entry, and the reduced row echelon form is unique. Kernel
//! bases are read off the reduced row echelon form with one vector per free
//! column, in ascending column order.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Always kept in lowest terms with a positive denominator.
pub type Scalar = BigRational;

pub fn scalar(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Row-major dense matrix of [`Scalar`]s.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Inconsistent("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from small integers; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| scalar(v)).collect()).collect())
            .expect("ragged integer matrix")
    }

    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Appends the columns of `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        let mut rows = self.to_rows();
        for (r, row) in rows.iter_mut().enumerate() {
            row.extend_from_slice(other.row(r));
        }
        Matrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Appends the rows of `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn rref(&self) -> Rref {
        let (rows, pivots) = rref_rows(self.to_rows(), self.cols);
        Rref {
            matrix: Matrix {
                rows: self.rows,
                cols: self.cols,
                data: rows.into_iter().flatten().collect(),
            },
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        rank_rows(self.to_rows(), self.cols)
    }

    /// Canonical kernel basis: one vector per free column of the rref, with
    /// the free variable set to 1 and the other free variables set to 0.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (rows, pivots) = rref_rows(self.to_rows(), self.cols);
        kernel_from_rref(&rows, &pivots, self.cols)
    }

    /// A particular solution of `self * x = rhs` (free variables zero), or
    /// `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(rhs.len(), self.rows, "right-hand side length mismatch");
        let aug: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(rhs[r].clone());
                row
            })
            .collect();
        let (red, pivots) = rref_rows(aug, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = red[r][self.cols].clone();
        }
        Some(x)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(bareiss_determinant(self.to_rows()))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Incrementally maintained row-echelon basis of a subspace of `Q^n`.
///
/// Used for greedy, order-preserving selection of independent vectors:
/// [`Span::insert`] reports whether a vector enlarged the span.
#[derive(Clone, Debug, Default)]
pub struct Span {
    dim: usize,
    // Rows kept sorted by pivot column; each row is 1 at its pivot and 0
    // before it.
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Span {
    pub fn new(dim: usize) -> Self {
        Span { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [Scalar]) {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (j, r) in row.iter().enumerate().skip(*p) {
                if !r.is_zero() {
                    v[j] -= &f * r;
                }
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span; returns `true` when it was independent.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        for x in w.iter_mut().skip(p) {
            *x *= &inv;
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, w));
        true
    }
}

/// Row reduction on owned rows. Returns the reduced rows and pivot columns.
///
/// The work is done on primitive integer rows: each row is cleared of
/// denominators and divided by its content, and elimination uses
/// `p * row - a * pivot_row`. Only the final normalization divides by the
/// pivots. The rref is unique, so this matches elimination over the
/// rationals.
pub(crate) fn rref_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let nrows = rows.len();
    let (mut int_rows, pivots) = echelon(rows, cols, true);
    let mut out: Vec<Vec<Scalar>> = Vec::with_capacity(nrows);
    for (r, row) in int_rows.drain(..).enumerate() {
        if r < pivots.len() {
            let p = row[pivots[r]].clone();
            out.push(row.into_iter().map(|x| Scalar::new(x, p.clone())).collect());
        } else {
            out.push(vec![Scalar::zero(); cols]);
        }
    }
    (out, pivots)
}

/// Rank without the back substitution.
pub(crate) fn rank_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> usize {
    echelon(rows, cols, false).1.len()
}

fn primitive(row: Vec<Scalar>) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in &row {
        if !x.denom().is_one() {
            l = l.lcm(x.denom());
        }
    }
    let mut v: Vec<BigInt> = row
        .into_iter()
        .map(|x| {
            let (n, d) = x.into_raw();
            if d.is_one() {
                n * &l
            } else {
                n * (&l / d)
            }
        })
        .collect();
    make_primitive(&mut v);
    v
}

fn make_primitive(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in v.iter_mut() {
        if !x.is_zero() {
            *x /= &g;
        }
    }
}

/// Integer echelon form. With `full`, entries above each pivot are cleared
/// too and zero rows are moved to the bottom.
fn echelon(rows: Vec<Vec<Scalar>>, cols: usize, full: bool) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut rows: Vec<Vec<BigInt>> = rows.into_iter().map(primitive).collect();
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..cols {
        if pr == nrows {
            break;
        }
        // any candidate gives the same rref; the smallest keeps growth down
        let Some(found) = (pr..nrows)
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| (rows[r][col].bits(), r))
        else {
            continue;
        };
        rows.swap(pr, found);
        let pivot_row = std::mem::take(&mut rows[pr]);
        let p = &pivot_row[col];
        let support: Vec<usize> = (col..cols).filter(|&j| !pivot_row[j].is_zero()).collect();
        let lo = if full { 0 } else { pr + 1 };
        for (r, row) in rows.iter_mut().enumerate().skip(lo) {
            if r == pr || row[col].is_zero() {
                continue;
            }
            let g = row[col].gcd(p);
            let a = &row[col] / &g;
            let pm = p / &g;
            if !pm.is_one() {
                for x in row.iter_mut() {
                    if !x.is_zero() {
                        *x *= &pm;
                    }
                }
            }
            for &j in &support {
                row[j] -= &a * &pivot_row[j];
            }
            make_primitive(row);
        }
        rows[pr] = pivot_row;
        pivots.push(col);
        pr += 1;
    }
    if full {
        // make pivots positive so the division below is canonical
        for r in 0..pivots.len() {
            if rows[r][pivots[r]].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
        }
    }
    (rows, pivots)
}

pub(crate) fn kernel_from_rref(rows: &[Vec<Scalar>], pivots: &[usize], cols: usize) -> Vec<Vec<Scalar>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Scalar::zero(); cols];
            v[free] = Scalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -rows[r][free].clone();
            }
            v
        })
        .collect()
}

/// Arithmetic needed by fraction-free elimination: an integral domain with
/// exact division by elements known to divide.
pub trait ExactDomain: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn mul_elem(&self, other: &Self) -> Self;
    fn sub_elem(&self, other: &Self) -> Self;
    fn neg_elem(&self) -> Self;
    /// `self / other`, where `other` is known to divide `self` exactly.
    fn div_exact_elem(&self, other: &Self) -> Self;
}

impl ExactDomain for Scalar {
    fn zero_like(&self) -> Self {
        Scalar::zero()
    }
    fn one_like(&self) -> Self {
        Scalar::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn div_exact_elem(&self, other: &Self) -> Self {
        self / other
    }
}

/// Bareiss determinant of a square matrix given as rows.
///
/// Pivot search is deterministic (topmost nonzero entry at or below the
/// diagonal); each row swap flips the sign. Panics on a non-square or empty
/// row set only through indexing, so callers check shape first.
pub fn bareiss_determinant<T: ExactDomain>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        panic!("determinant of a 0x0 matrix requested");
    }
    let mut negate = false;
    let mut prev = m[0][0].one_like();
    for k in 0..n - 1 {
        if m[k][k].is_zero_elem() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero_elem()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return m[0][0].zero_like(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = m[k][k].mul_elem(&m[i][j]);
                let rhs = m[i][k].mul_elem(&m[k][j]);
                m[i][j] = lhs.sub_elem(&rhs).div_exact_elem(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg_elem()
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cofactor_det(m: &Matrix) -> Scalar {
        let n = m.rows();
        if n == 1 {
            return m[(0, 0)].clone();
        }
        let mut acc = Scalar::zero();
        for j in 0..n {
            if m[(0, j)].is_zero() {
                continue;
            }
            let minor = Matrix::from_rows(
                (1..n)
                    .map(|r| (0..n).filter(|&c| c != j).map(|c| m[(r, c)].clone()).collect())
                    .collect(),
            )
            .unwrap();
            let term = &m[(0, j)] * cofactor_det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn rref_examples() {
        let r = Matrix::from_i64(&[&[1, 1], &[1, 1]]).rref();
        assert_eq!(r.matrix, Matrix::from_i64(&[&[1, 1], &[0, 0]]));
        assert_eq!(r.pivots, vec![0]);

        let r = Matrix::identity(3).rref();
        assert_eq!(r.matrix, Matrix::identity(3));
        assert_eq!(r.pivots, vec![0, 1, 2]);

        let r = Matrix::from_i64(&[&[0, 2], &[3, 0]]).rref();
        assert_eq!(r.matrix, Matrix::identity(2));
        assert_eq!(r.pivots, vec![0, 1]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(
            Matrix::from_i64(&[&[1, 1]]).kernel_basis(),
            vec![vec![scalar(-1), scalar(1)]]
        );
        assert!(Matrix::identity(2).kernel_basis().is_empty());
        let z = Matrix::zeros(2, 3).kernel_basis();
        assert_eq!(z.len(), 3);
        assert_eq!(z[1], vec![scalar(0), scalar(1), scalar(0)]);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(Matrix::identity(4).determinant().unwrap(), scalar(1));
        assert_eq!(Matrix::from_i64(&[&[0, 1], &[1, 0]]).determinant().unwrap(), scalar(-1));
        assert_eq!(Matrix::from_i64(&[&[2, 1], &[1, 2]]).determinant().unwrap(), scalar(3));
        assert!(matches!(
            Matrix::zeros(2, 3).determinant(),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn determinant_with_forced_swaps_matches_cofactor() {
        let m = Matrix::from_i64(&[&[0, 0, 1, 2], &[0, 3, 0, 1], &[4, 0, 0, 0], &[1, 1, 1, 0]]);
        assert_eq!(m.determinant().unwrap(), cofactor_det(&m));
        let singular = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(singular.determinant().unwrap(), scalar(0));
    }

    #[test]
    fn solve_reports_inconsistency() {
        let m = Matrix::from_i64(&[&[1, 1], &[2, 2]]);
        assert!(m.solve(&[scalar(1), scalar(3)]).is_none());
        let x = m.solve(&[scalar(2), scalar(4)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![scalar(2), scalar(4)]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix(max: usize) -> impl Strategy<Value = Matrix> {
            (1..=max, 1..=max).prop_flat_map(|(r, c)| {
                proptest::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
                    Matrix::from_rows(v.chunks(c).map(|ch| ch.iter().map(|&x| scalar(x)).collect()).collect()).unwrap()
                })
            })
        }

        fn square_matrix(max: usize) -> impl Strategy<Value = Matrix> {
            (1..=max).prop_flat_map(|n| {
                proptest::collection::vec(-4i64..=4, n * n).prop_map(move |v| {
                    Matrix::from_rows(v.chunks(n).map(|ch| ch.iter().map(|&x| scalar(x)).collect()).collect()).unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn rref_is_idempotent(m in small_matrix(6)) {
                let once = m.rref();
                let twice = once.matrix.rref();
                prop_assert_eq!(&once, &twice);
            }

            #[test]
            fn rank_nullity(m in small_matrix(7)) {
                let k = m.kernel_basis();
                prop_assert_eq!(m.rank() + k.len(), m.cols());
                for v in &k {
                    prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
                }
            }

            #[test]
            fn det_matches_cofactor_and_kernel(m in square_matrix(5)) {
                let d = m.determinant().unwrap();
                prop_assert_eq!(&d, &cofactor_det(&m));
                prop_assert_eq!(d.is_zero(), !m.kernel_basis().is_empty());
            }
        }
    }
}
