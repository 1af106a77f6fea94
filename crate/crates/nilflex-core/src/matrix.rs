//! Exact dense matrices over the rationals and over multivariate polynomials.
//!
//! Rational matrices get the full elimination toolkit (reduced row echelon
//! form, rank, nullspace, linear solves, quotient coordinates). Polynomial
//! matrices get evaluation, substitution, fraction-free (Bareiss) elimination
//! for the rank over the rational function field, and nonzero-minor
//! certificates.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::rational::Rational;

/// Rectangular matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<T>], rows: usize) -> Self {
        Matrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Matrix<T> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.rows, other.rows, "hstack: row mismatch");
        Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    /// Vertical concatenation [self; other].
    pub fn vstack(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.cols, "vstack: column mismatch");
        Matrix::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.at(i, j).clone()
            } else {
                other.at(i - self.rows, j).clone()
            }
        })
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Matrix<T> {
        Matrix::from_fn(row_idx.len(), col_idx.len(), |i, j| {
            self.at(row_idx[i], col_idx[j]).clone()
        })
    }
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl Matrix<Rational> {
    pub fn mul(&self, other: &Matrix<Rational>) -> Matrix<Rational> {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Rational::zero();
            for k in 0..self.cols {
                let a = self.at(i, k);
                if !a.is_zero() {
                    acc += a * other.at(k, j);
                }
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    let a = self.at(i, k);
                    if !a.is_zero() {
                        acc += a * &v[k];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix<Rational>) -> Matrix<Rational> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + other.at(i, j))
    }

    pub fn neg(&self) -> Matrix<Rational> {
        self.map(|x| -x.clone())
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, r: &Rational) -> Matrix<Rational> {
        self.map(|x| x * r)
    }

    /// Reduced row echelon form with unit pivots.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if src != pivot_row {
                for j in 0..m.cols {
                    m.data.swap(src * m.cols + j, pivot_row * m.cols + j);
                }
            }
            let inv = Rational::one() / m.at(pivot_row, col).clone();
            for j in col..m.cols {
                let v = m.at(pivot_row, j) * &inv;
                m.set(pivot_row, j, v);
            }
            for r in 0..m.rows {
                if r != pivot_row && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    for j in col..m.cols {
                        let v = m.at(r, j) - &(m.at(pivot_row, j) * &factor);
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        Rref {
            rank: pivots.len(),
            pivots,
            matrix: m,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the kernel, one vector per free column.
    pub fn nullspace_basis(&self) -> Vec<Vec<Rational>> {
        let r = self.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in r.pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut vec = vec![Rational::zero(); self.cols];
            vec[free] = Rational::one();
            for (col, p) in pivot_of_col.iter().enumerate() {
                if let Some(row) = p {
                    vec[col] = -r.matrix.at(*row, free).clone();
                }
            }
            basis.push(vec);
        }
        basis
    }

    /// One solution x of self * x = rhs, or None when inconsistent.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(self.rows, rhs.len());
        let rhs_m = Matrix::from_fn(self.rows, 1, |i, _| rhs[i].clone());
        let sols = self.solve_many(&rhs_m)?;
        Some(sols.column(0))
    }

    /// Solve self * X = RHS column-by-column; None when any column is
    /// inconsistent. Free variables are set to zero.
    pub fn solve_many(&self, rhs: &Matrix<Rational>) -> Option<Matrix<Rational>> {
        assert_eq!(self.rows, rhs.rows);
        let aug = self.hstack(rhs);
        let r = aug.rref();
        // consistency: no pivot may fall in the rhs block
        if r.pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zero(self.cols, rhs.cols);
        for (row, &col) in r.pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(col, j, r.matrix.at(row, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// Determinant by fraction Gaussian elimination.
    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rational::one();
        for col in 0..n {
            let Some(src) = (col..n).find(|&r| !m.at(r, col).is_zero()) else {
                return Rational::zero();
            };
            if src != col {
                for j in 0..n {
                    m.data.swap(src * n + j, col * n + j);
                }
                det = -det;
            }
            let pivot = m.at(col, col).clone();
            det *= &pivot;
            for r in (col + 1)..n {
                if !m.at(r, col).is_zero() {
                    let factor = m.at(r, col) / &pivot;
                    for j in col..n {
                        let v = m.at(r, j) - &(m.at(col, j) * &factor);
                        m.set(r, j, v);
                    }
                }
            }
        }
        det
    }

    /// Exact inverse; None when singular.
    pub fn inverse(&self) -> Option<Matrix<Rational>> {
        assert_eq!(self.rows, self.cols);
        let aug = self.hstack(&Matrix::identity(self.rows));
        let r = aug.rref();
        // invertible iff every pivot lands in the left block
        if r.pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        Some(Matrix::from_fn(self.rows, self.cols, |i, j| {
            r.matrix.at(i, self.cols + j).clone()
        }))
    }

    /// Rank of the span of `columns` (given as vectors of equal length).
    pub fn rank_of_span(columns: &[Vec<Rational>], dim: usize) -> usize {
        if columns.is_empty() {
            return 0;
        }
        Matrix::from_columns(columns, dim).rank()
    }
}

/// Result of reduced row echelon elimination.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix<Rational>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// dim(U + W) for two column spans inside the same ambient space.
pub fn dim_sum(u: &[Vec<Rational>], w: &[Vec<Rational>], dim: usize) -> usize {
    let all: Vec<Vec<Rational>> = u.iter().chain(w.iter()).cloned().collect();
    Matrix::rank_of_span(&all, dim)
}

/// dim(U ∩ W) = dim U + dim W − dim(U + W) for independent spanning sets.
pub fn dim_intersection(u: &[Vec<Rational>], w: &[Vec<Rational>], dim: usize) -> usize {
    let du = Matrix::rank_of_span(u, dim);
    let dw = Matrix::rank_of_span(w, dim);
    du + dw - dim_sum(u, w, dim)
}

/// Whether the column span of `inner` is contained in the span of `outer`.
pub fn span_contains(outer: &[Vec<Rational>], inner: &[Vec<Rational>], dim: usize) -> bool {
    let d = Matrix::rank_of_span(outer, dim);
    dim_sum(outer, inner, dim) == d
}

/// Coordinates in a fixed quotient basis of span(Z)/span(B).
///
/// The quotient representatives are chosen deterministically: eliminate
/// [B | Z] and keep the Z-columns that pick up pivots. The returned map is
/// linear, kills span(B) exactly, and a vector outside span(Z) is rejected.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    ambient_dim: usize,
    z_span: Matrix<Rational>,
    /// Representative vectors of the quotient basis (columns).
    pub representatives: Vec<Vec<Rational>>,
    /// Matrix of the coordinate map, quotient_dim x ambient_dim.
    pub coordinate_matrix: Matrix<Rational>,
}

impl QuotientMap {
    pub fn new(z_basis: &[Vec<Rational>], b_basis: &[Vec<Rational>], dim: usize) -> QuotientMap {
        let b = Matrix::from_columns(b_basis, dim);
        let z = Matrix::from_columns(z_basis, dim);
        let stacked = b.hstack(&z);
        let r = stacked.rref();
        debug_assert!(
            r.pivots.iter().take_while(|&&c| c < b.cols()).count() == b.cols(),
            "B basis must be independent"
        );
        let rep_cols: Vec<usize> = r
            .pivots
            .iter()
            .filter(|&&c| c >= b.cols())
            .map(|&c| c - b.cols())
            .collect();
        let representatives: Vec<Vec<Rational>> =
            rep_cols.iter().map(|&c| z_basis[c].clone()).collect();
        let q = representatives.len();

        // Find C with C*B = 0 and C*R = I: solve [B R]^T * C^T = [0; I].
        let br = b.hstack(&Matrix::from_columns(&representatives, dim));
        let mut rhs = Matrix::zero(br.cols(), q);
        for j in 0..q {
            rhs.set(b.cols() + j, j, Rational::one());
        }
        let ct = br
            .transpose()
            .solve_many(&rhs)
            .expect("full-column-rank system is always consistent");
        QuotientMap {
            ambient_dim: dim,
            z_span: z,
            representatives,
            coordinate_matrix: ct.transpose(),
        }
    }

    pub fn quotient_dim(&self) -> usize {
        self.representatives.len()
    }

    /// Quotient coordinates of `v`; errors when v is outside span(Z).
    pub fn coordinates(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.ambient_dim {
            return Err(Error::ShapeMismatch(format!(
                "vector length {} vs ambient dimension {}",
                v.len(),
                self.ambient_dim
            )));
        }
        if self.z_span.solve(v).is_none() {
            return Err(Error::NotACocycle);
        }
        Ok(self.coordinate_matrix.mul_vec(v))
    }

    /// Coordinates of a vector with polynomial entries (linearity over the
    /// scalars extends the rational coordinate map). Membership in span(Z)
    /// must be guaranteed by the caller.
    pub fn coordinates_poly(&self, v: &[MultiPoly]) -> Vec<MultiPoly> {
        assert_eq!(v.len(), self.ambient_dim);
        let c = &self.coordinate_matrix;
        (0..c.rows())
            .map(|i| {
                let mut acc = MultiPoly::zero();
                for j in 0..c.cols() {
                    let coeff = c.at(i, j);
                    if !coeff.is_zero() && !v[j].is_zero() {
                        acc = &acc + &v[j].scale(coeff);
                    }
                }
                acc
            })
            .collect()
    }
}

/// Convenience wrapper for the one-shot quotient coordinate computation.
pub fn quotient_coordinates(
    v: &[Rational],
    z_basis: &[Vec<Rational>],
    b_basis: &[Vec<Rational>],
) -> Result<Vec<Rational>> {
    let dim = v.len();
    QuotientMap::new(z_basis, b_basis, dim).coordinates(v)
}

/// A certified nonzero minor of a polynomial matrix.
#[derive(Clone, Debug)]
pub struct MinorWitness {
    pub row_indices: Vec<usize>,
    pub col_indices: Vec<usize>,
    /// The exact symbolic determinant of the selected submatrix; nonzero.
    pub determinant: MultiPoly,
}

impl Matrix<MultiPoly> {
    pub fn from_rational(m: &Matrix<Rational>) -> Matrix<MultiPoly> {
        m.map(|r| MultiPoly::constant(r.clone()))
    }

    /// Evaluate every entry at the given assignment.
    pub fn eval(&self, point: &[Rational]) -> Result<Matrix<Rational>> {
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for p in &self.data {
            data.push(p.eval(point)?);
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn substitute(&self, var: usize, value: &MultiPoly) -> Result<Matrix<MultiPoly>> {
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for p in &self.data {
            data.push(p.substitute(var, value)?);
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    /// Rank over the field of rational functions, i.e. the rank attained on
    /// a dense open subset of parameter space. Fraction-free elimination
    /// keeps the entries polynomial at every step.
    pub fn generic_rank_symbolic(&self) -> usize {
        let mut m = self.clone();
        let mut prev_pivot = MultiPoly::one();
        let mut rank = 0;
        let limit = m.rows.min(m.cols);
        while rank < limit {
            // pick the simplest nonzero pivot in the remaining block
            let mut best: Option<(usize, usize, usize)> = None;
            for i in rank..m.rows {
                for j in rank..m.cols {
                    let p = m.at(i, j);
                    if !p.is_zero() {
                        let weight = p.num_terms();
                        if best.is_none_or(|(_, _, w)| weight < w) {
                            best = Some((i, j, weight));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else { break };
            if pi != rank {
                for j in 0..m.cols {
                    m.data.swap(pi * m.cols + j, rank * m.cols + j);
                }
            }
            if pj != rank {
                for i in 0..m.rows {
                    m.data.swap(i * m.cols + pj, i * m.cols + rank);
                }
            }
            let pivot = m.at(rank, rank).clone();
            for i in (rank + 1)..m.rows {
                for j in (rank + 1)..m.cols {
                    let num = &(m.at(i, j) * &pivot) - &(m.at(i, rank) * m.at(rank, j));
                    let v = num
                        .exact_div(&prev_pivot)
                        .expect("Bareiss elimination divides exactly");
                    m.set(i, j, v);
                }
                m.set(i, rank, MultiPoly::zero());
            }
            prev_pivot = pivot;
            rank += 1;
        }
        rank
    }

    /// Symbolic determinant via fraction-free elimination.
    pub fn determinant_symbolic(&self) -> MultiPoly {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return MultiPoly::one();
        }
        let mut m = self.clone();
        let mut prev_pivot = MultiPoly::one();
        let mut sign = false;
        for step in 0..n {
            let Some(pi) = (step..n).find(|&i| !m.at(i, step).is_zero()) else {
                return MultiPoly::zero();
            };
            if pi != step {
                for j in 0..n {
                    m.data.swap(pi * n + j, step * n + j);
                }
                sign = !sign;
            }
            let pivot = m.at(step, step).clone();
            for i in (step + 1)..n {
                for j in (step + 1)..n {
                    let num = &(m.at(i, j) * &pivot) - &(m.at(i, step) * m.at(step, j));
                    let v = num
                        .exact_div(&prev_pivot)
                        .expect("Bareiss elimination divides exactly");
                    m.set(i, j, v);
                }
                m.set(i, step, MultiPoly::zero());
            }
            prev_pivot = pivot;
        }
        let det = m.at(n - 1, n - 1).clone();
        if sign {
            -&det
        } else {
            det
        }
    }

    /// Search for an r x r submatrix whose symbolic determinant is a nonzero
    /// polynomial. Candidate row/column sets are pre-screened by exact
    /// evaluation at the supplied sample points; the returned determinant is
    /// computed symbolically.
    pub fn minor_nonzero_witness(
        &self,
        r: usize,
        sample_points: &[Vec<Rational>],
    ) -> Result<Option<MinorWitness>> {
        if r > self.rows.min(self.cols) {
            return Ok(None);
        }
        if r == 0 {
            return Ok(Some(MinorWitness {
                row_indices: vec![],
                col_indices: vec![],
                determinant: MultiPoly::one(),
            }));
        }
        for point in sample_points {
            let numeric = self.eval(point)?;
            // independent columns at the point, then independent rows of the
            // restriction: determinant of that block is nonzero at the point
            let col_r = numeric.rref();
            if col_r.rank < r {
                continue;
            }
            let col_idx: Vec<usize> = col_r.pivots[..r].to_vec();
            let restricted = numeric.submatrix(&(0..numeric.rows()).collect::<Vec<_>>(), &col_idx);
            let row_r = restricted.transpose().rref();
            if row_r.rank < r {
                continue;
            }
            let row_idx: Vec<usize> = row_r.pivots[..r].to_vec();
            let sub = self.submatrix(&row_idx, &col_idx);
            let det = sub.determinant_symbolic();
            if !det.is_zero() {
                return Ok(Some(MinorWitness {
                    row_indices: row_idx,
                    col_indices: col_idx,
                    determinant: det,
                }));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::var_index;
    use crate::rational::{rat, rat_int};

    fn rm(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect())
    }

    #[test]
    fn rref_identity_and_zero() {
        assert_eq!(Matrix::<Rational>::identity(3).rank(), 3);
        assert_eq!(Matrix::<Rational>::zero(2, 2).rank(), 0);
    }

    #[test]
    fn rref_is_idempotent() {
        let m = rm(&[&[2, 4, 6], &[1, 2, 3], &[0, 1, 5]]);
        let r1 = m.rref();
        let r2 = r1.matrix.rref();
        assert_eq!(r1.matrix, r2.matrix);
        assert_eq!(r1.rank, r2.rank);
    }

    #[test]
    fn rank_equals_transpose_rank() {
        let m = rm(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.transpose().rank(), 2);
    }

    #[test]
    fn nullspace_dimensions() {
        assert!(Matrix::<Rational>::identity(4).nullspace_basis().is_empty());
        assert_eq!(Matrix::<Rational>::zero(3, 5).nullspace_basis().len(), 5);
        let m = rm(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = m.nullspace_basis();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_and_inverse() {
        let m = rm(&[&[2, 1], &[1, 1]]);
        let x = m.solve(&[rat_int(3), rat_int(2)]).unwrap();
        assert_eq!(x, vec![rat_int(1), rat_int(1)]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert_eq!(m.determinant(), rat_int(1));
        let singular = rm(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
        assert!(singular.solve(&[rat_int(1), rat_int(0)]).is_none());
    }

    #[test]
    fn quotient_coordinates_basics() {
        // Z = span{e1, e2}, B = span{e1}: class of e1+e2 is (1)
        let e1 = vec![rat_int(1), rat_int(0), rat_int(0)];
        let e2 = vec![rat_int(0), rat_int(1), rat_int(0)];
        let z = vec![e1.clone(), e2.clone()];
        let b = vec![e1.clone()];
        let v = vec![rat_int(1), rat_int(1), rat_int(0)];
        assert_eq!(quotient_coordinates(&v, &z, &b).unwrap(), vec![rat_int(1)]);
        // boundary maps to zero
        assert_eq!(quotient_coordinates(&e1, &z, &b).unwrap(), vec![rat_int(0)]);
        // outside span(Z): error
        let e3 = vec![rat_int(0), rat_int(0), rat_int(1)];
        assert_eq!(quotient_coordinates(&e3, &z, &b).err(), Some(Error::NotACocycle));
    }

    #[test]
    fn quotient_map_is_linear_on_z() {
        let z = vec![
            vec![rat_int(1), rat_int(1), rat_int(0), rat_int(0)],
            vec![rat_int(0), rat_int(2), rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(0), rat_int(1), rat_int(1)],
        ];
        let b = vec![vec![rat_int(1), rat_int(1), rat_int(0), rat_int(0)]];
        let qm = QuotientMap::new(&z, &b, 4);
        assert_eq!(qm.quotient_dim(), 2);
        let u = qm.coordinates(&z[1]).unwrap();
        let w = qm.coordinates(&z[2]).unwrap();
        let lin: Vec<Rational> = z[1]
            .iter()
            .zip(&z[2])
            .map(|(a, c)| a * rat_int(2) + c * rat_int(-3))
            .collect();
        let got = qm.coordinates(&lin).unwrap();
        let want: Vec<Rational> = u
            .iter()
            .zip(&w)
            .map(|(a, c)| a * rat_int(2) + c * rat_int(-3))
            .collect();
        assert_eq!(got, want);
    }

    fn pv(c: char) -> MultiPoly {
        MultiPoly::var(var_index(c).unwrap())
    }

    #[test]
    fn generic_two_by_two_minor() {
        let m = Matrix::from_rows(vec![vec![pv('A'), pv('B')], vec![pv('C'), pv('D')]]);
        let samples = vec![vec![rat_int(1), rat_int(2), rat_int(3), rat_int(4)]];
        let w = m.minor_nonzero_witness(2, &samples).unwrap().unwrap();
        let expected = &(&pv('A') * &pv('D')) - &(&pv('B') * &pv('C'));
        assert_eq!(w.determinant, expected);
        assert!(Matrix::<MultiPoly>::zero(3, 3)
            .minor_nonzero_witness(1, &samples)
            .unwrap()
            .is_none());
    }

    #[test]
    fn symbolic_rank_of_structured_matrix() {
        // [[A, B], [2A, 2B]] has generic rank 1
        let two = MultiPoly::constant(rat_int(2));
        let m = Matrix::from_rows(vec![
            vec![pv('A'), pv('B')],
            vec![&two * &pv('A'), &two * &pv('B')],
        ]);
        assert_eq!(m.generic_rank_symbolic(), 1);
        let id = Matrix::<MultiPoly>::from_rational(&Matrix::identity(3));
        assert_eq!(id.generic_rank_symbolic(), 3);
    }

    #[test]
    fn symbolic_determinant_matches_evaluation() {
        let m = Matrix::from_rows(vec![
            vec![pv('A'), pv('B'), MultiPoly::one()],
            vec![pv('C'), MultiPoly::constant(rat(1, 2)), pv('A')],
            vec![MultiPoly::zero(), pv('D'), pv('B')],
        ]);
        let det = m.determinant_symbolic();
        let point = vec![rat_int(2), rat_int(-1), rat_int(3), rat_int(5)];
        let numeric = m.eval(&point).unwrap().determinant();
        assert_eq!(det.eval(&point).unwrap(), numeric);
    }
}
