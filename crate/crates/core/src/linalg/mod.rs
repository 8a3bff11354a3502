//! Dense exact linear algebra.
//!
//! Matrices are stored column-major because almost every map in the crate is
//! assembled column by column as "the image of the j-th basis vector".
//! Elimination always takes the first nonzero entry in column order as the
//! pivot, so every result (kernel bases, particular solutions, quotient
//! sections) is deterministic.

mod quotient;
mod random;
mod space;
pub mod tensor;

use thiserror::Error;

use crate::field::Field;

pub use quotient::{QuotientSpace, Subspace};
pub use random::{seeded_random_vector, seeded_rng};
pub use space::{map_tensor, LinearMap, TensorSpace, VectorSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("map is not bijective: {rows}x{cols} matrix of rank {rank}")]
    NotBijective { rows: usize, cols: usize, rank: usize },
    #[error("inconsistent system: {equations} equations in {unknowns} unknowns, rank {rank} but augmented rank {augmented_rank}")]
    Inconsistent {
        equations: usize,
        unknowns: usize,
        rank: usize,
        augmented_rank: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Self { rows, cols, data: vec![value; rows * cols] }
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: Vec<Vec<E>>) -> Self {
        let cols = columns.len();
        let mut data = Vec::with_capacity(rows * cols);
        for c in columns {
            assert_eq!(c.len(), rows, "column length");
            data.extend(c);
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Self {
        let nrows = rows.len();
        let mut columns: Vec<Vec<E>> = (0..cols).map(|_| Vec::with_capacity(nrows)).collect();
        for r in rows {
            assert_eq!(r.len(), cols, "row length");
            for (j, x) in r.into_iter().enumerate() {
                columns[j].push(x);
            }
        }
        Self::from_columns(nrows, columns)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[j * self.rows + i]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[j * self.rows + i] = v;
    }

    pub fn column(&self, j: usize) -> &[E] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn column_mut(&mut self, j: usize) -> &mut [E] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[E]> {
        (0..self.cols).map(move |j| self.column(j))
    }

    pub fn row(&self, i: usize) -> Vec<E> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_columns(self.cols, self.row_vectors())
    }
}

impl<E: Clone + PartialEq> Matrix<E> {
    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, f.zero())
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|x| f.is_zero(x))
    }

    /// `self · v`, skipping zero coordinates of `v`.
    pub fn apply<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.cols, "apply: vector length");
        let mut out = vec![f.zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.column(j)) {
                f.mul_add_assign(o, a, x);
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose<F: Field<Elem = E>>(&self, f: &F, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.cols, other.rows, "compose: inner dimension");
        Matrix::from_columns(self.rows, other.columns().map(|c| self.apply(f, c)).collect())
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Matrix<E> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(a, c)).collect(),
        }
    }
}

/// Reduced row echelon form of a row list.
#[derive(Debug, Clone)]
pub struct Echelon<E> {
    ncols: usize,
    /// All rows after elimination; the first `pivots.len()` carry the pivots.
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> Echelon<E> {
    /// Row-reduces `rows`, searching for pivots only in columns `< pivot_limit`.
    pub fn new<F: Field<Elem = E>>(f: &F, mut rows: Vec<Vec<E>>, ncols: usize, pivot_limit: usize) -> Self {
        let m = rows.len();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..pivot_limit.min(ncols) {
            if r == m {
                break;
            }
            let Some(found) = (r..m).find(|&i| !f.is_zero(&rows[i][col])) else {
                continue;
            };
            rows.swap(found, r);
            let inv = f.inv(&rows[r][col]).expect("pivot is nonzero");
            let nz: Vec<usize> = (col..ncols).filter(|&j| !f.is_zero(&rows[r][j])).collect();
            for &j in &nz {
                rows[r][j] = f.mul(&rows[r][j], &inv);
            }
            let pivot_row = std::mem::take(&mut rows[r]);
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || f.is_zero(&row[col]) {
                    continue;
                }
                let c = row[col].clone();
                for &j in &nz {
                    row[j] = f.sub(&row[j], &f.mul(&c, &pivot_row[j]));
                }
            }
            rows[r] = pivot_row;
            pivots.push(col);
            r += 1;
        }
        Self { ncols, rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn pivot_rows(&self) -> &[Vec<E>] {
        &self.rows[..self.pivots.len()]
    }

    pub fn free_columns(&self, limit: usize) -> Vec<usize> {
        let mut is_pivot = vec![false; limit];
        for &p in &self.pivots {
            if p < limit {
                is_pivot[p] = true;
            }
        }
        (0..limit).filter(|&j| !is_pivot[j]).collect()
    }

    /// Basis of the null space over the first `limit` columns, one vector per
    /// free column in increasing order.
    pub fn kernel_basis<F: Field<Elem = E>>(&self, f: &F, limit: usize) -> Vec<Vec<E>> {
        self.free_columns(limit)
            .into_iter()
            .map(|fc| {
                let mut v = vec![f.zero(); limit];
                v[fc] = f.one();
                for (row, &pc) in self.pivot_rows().iter().zip(&self.pivots) {
                    if !f.is_zero(&row[fc]) {
                        v[pc] = f.neg(&row[fc]);
                    }
                }
                v
            })
            .collect()
    }

    /// Subtracts row multiples until every pivot coordinate of `v` is zero.
    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, v: &mut [E]) {
        assert_eq!(v.len(), self.ncols, "reduce: vector length");
        for (row, &pc) in self.pivot_rows().iter().zip(&self.pivots) {
            if f.is_zero(&v[pc]) {
                continue;
            }
            let c = v[pc].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
    }
}

/// An affine solution set `particular + span(directions)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolution<E> {
    pub particular: Vec<E>,
    pub directions: Vec<Vec<E>>,
}

impl<E: Clone + PartialEq> AffineSolution<E> {
    pub fn point<F: Field<Elem = E>>(&self, f: &F, coeffs: &[E]) -> Vec<E> {
        let mut x = self.particular.clone();
        for (c, d) in coeffs.iter().zip(&self.directions) {
            for (xi, di) in x.iter_mut().zip(d) {
                f.mul_add_assign(xi, c, di);
            }
        }
        x
    }
}

/// Solves `a x = b`: free variables set to zero, plus a kernel basis.
pub fn solve_affine<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &[F::Elem]) -> Result<AffineSolution<F::Elem>, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::DimensionMismatch { expected: a.rows(), got: b.len() });
    }
    let n = a.cols();
    let rows: Vec<Vec<F::Elem>> = (0..a.rows())
        .map(|i| {
            let mut r = a.row(i);
            r.push(b[i].clone());
            r
        })
        .collect();
    let ech = Echelon::new(f, rows, n + 1, n + 1);
    if ech.pivots().last() == Some(&n) {
        return Err(LinalgError::Inconsistent {
            equations: a.rows(),
            unknowns: n,
            rank: ech.rank() - 1,
            augmented_rank: ech.rank(),
        });
    }
    let mut particular = vec![f.zero(); n];
    for (row, &pc) in ech.pivot_rows().iter().zip(ech.pivots()) {
        particular[pc] = row[n].clone();
    }
    Ok(AffineSolution { particular, directions: ech.kernel_basis(f, n) })
}

/// Solves `lin(x) = target` for `x` in the affine family
/// `base + span(directions)`, where `lin` is linear. The matrix of `lin` on the
/// family is assembled by evaluating it on each direction.
pub fn solve_affine_family<F: Field>(
    f: &F,
    base: &[F::Elem],
    directions: &[Vec<F::Elem>],
    lin: impl Fn(&[F::Elem]) -> Vec<F::Elem>,
    target: &[F::Elem],
) -> Result<AffineSolution<F::Elem>, LinalgError> {
    let rhs = vec_sub(f, target, &lin(base));
    let cols: Vec<Vec<F::Elem>> = directions.iter().map(|d| lin(d)).collect();
    let a = Matrix::from_columns(rhs.len(), cols);
    let coeffs = solve_affine(f, &a, &rhs)?;
    let lift = |c: &[F::Elem], start: Vec<F::Elem>| {
        let mut x = start;
        for (ci, d) in c.iter().zip(directions) {
            vec_axpy(f, &mut x, ci, d);
        }
        x
    };
    let zero = vec![f.zero(); base.len()];
    Ok(AffineSolution {
        particular: lift(&coeffs.particular, base.to_vec()),
        directions: coeffs.directions.iter().map(|k| lift(k, zero.clone())).collect(),
    })
}

/// Any solution of `a x = b` (free variables zero), or `None`.
pub fn solve_linear<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>, LinalgError> {
    match solve_affine(f, a, b) {
        Ok(s) => Ok(Some(s.particular)),
        Err(LinalgError::Inconsistent { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn kernel<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    Echelon::new(f, a.row_vectors(), a.cols(), a.cols()).kernel_basis(f, a.cols())
}

pub fn rank<F: Field>(f: &F, a: &Matrix<F::Elem>) -> usize {
    // Eliminate over the shorter side.
    if a.rows() < a.cols() {
        Echelon::new(f, a.row_vectors(), a.cols(), a.cols()).rank()
    } else {
        let cols: Vec<Vec<F::Elem>> = a.columns().map(<[_]>::to_vec).collect();
        Echelon::new(f, cols, a.rows(), a.rows()).rank()
    }
}

/// Rank of a list of vectors of common length `dim`.
pub fn rank_of<F: Field>(f: &F, vectors: &[Vec<F::Elem>], dim: usize) -> usize {
    Echelon::new(f, vectors.to_vec(), dim, dim).rank()
}

pub fn invert<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>, LinalgError> {
    let n = a.rows();
    if a.cols() != n {
        return Err(LinalgError::NotBijective { rows: a.rows(), cols: a.cols(), rank: rank(f, a) });
    }
    let rows: Vec<Vec<F::Elem>> = (0..n)
        .map(|i| {
            let mut r = a.row(i);
            r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            r
        })
        .collect();
    let ech = Echelon::new(f, rows, 2 * n, n);
    if ech.rank() < n {
        return Err(LinalgError::NotBijective { rows: n, cols: n, rank: ech.rank() });
    }
    let inv_rows: Vec<Vec<F::Elem>> = ech.pivot_rows().iter().map(|r| r[n..].to_vec()).collect();
    Ok(Matrix::from_rows(n, inv_rows))
}

/// Subspace membership: coordinates of `x` in the span of `basis`, if any.
pub fn subspace_membership<F: Field>(f: &F, x: &[F::Elem], basis: &[Vec<F::Elem>]) -> Option<Vec<F::Elem>> {
    if basis.is_empty() {
        return x.iter().all(|v| f.is_zero(v)).then(Vec::new);
    }
    let a = Matrix::from_columns(x.len(), basis.to_vec());
    solve_linear(f, &a, x).expect("dimensions agree")
}

pub fn is_zero_vec<F: Field>(f: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|x| f.is_zero(x))
}

pub fn vec_sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
}

pub fn vec_add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

pub fn vec_scale<F: Field>(f: &F, c: &F::Elem, a: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().map(|x| f.mul(c, x)).collect()
}

/// `acc += c * v`.
pub fn vec_axpy<F: Field>(f: &F, acc: &mut [F::Elem], c: &F::Elem, v: &[F::Elem]) {
    if f.is_zero(c) {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        f.mul_add_assign(a, c, x);
    }
}

pub fn unit_vector<F: Field>(f: &F, dim: usize, i: usize) -> Vec<F::Elem> {
    let mut v = vec![f.zero(); dim];
    v[i] = f.one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use num_rational::BigRational;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| Rationals.from_i64(x)).collect()
    }

    fn qm(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(rows[0].len(), rows.iter().map(|r| q(r)).collect())
    }

    #[test]
    fn solve_examples() {
        let f = Rationals;
        let id = Matrix::identity(&f, 3);
        assert_eq!(solve_linear(&f, &id, &q(&[1, 2, 3])).unwrap(), Some(q(&[1, 2, 3])));
        assert_eq!(solve_linear(&f, &qm(&[&[1, 1], &[0, 0]]), &q(&[0, 1])).unwrap(), None);
        // Cramer: det = 5, x = (3/5, -1/5).
        let x = solve_linear(&f, &qm(&[&[2, 1], &[1, 3]]), &q(&[1, 0])).unwrap().unwrap();
        assert_eq!(x, vec![f.parse("3/5").unwrap(), f.parse("-1/5").unwrap()]);
        assert!(matches!(
            solve_linear(&f, &id, &q(&[1])),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn kernel_examples() {
        let f = Rationals;
        assert_eq!(kernel(&f, &Matrix::zeros(&f, 2, 2)).len(), 2);
        assert!(kernel(&f, &qm(&[&[2, 1], &[1, 3]])).is_empty());
        assert_eq!(kernel(&f, &qm(&[&[1, 1]])), vec![q(&[-1, 1])]);
    }

    #[test]
    fn invert_examples() {
        let f = Rationals;
        let id = Matrix::identity(&f, 2);
        assert_eq!(invert(&f, &id).unwrap(), id);
        let swap = qm(&[&[0, 1], &[1, 0]]);
        assert_eq!(invert(&f, &swap).unwrap(), swap);
        assert_eq!(invert(&f, &qm(&[&[1, 1], &[0, 1]])).unwrap(), qm(&[&[1, -1], &[0, 1]]));
        assert_eq!(
            invert(&f, &qm(&[&[1, 1], &[1, 1]])),
            Err(LinalgError::NotBijective { rows: 2, cols: 2, rank: 1 })
        );
    }

    #[test]
    fn membership_examples() {
        let f = Rationals;
        assert!(subspace_membership(&f, &q(&[0, 0]), &[q(&[0, 1])]).is_some());
        assert!(subspace_membership(&f, &q(&[1, 0]), &[q(&[0, 1])]).is_none());
        assert_eq!(subspace_membership(&f, &q(&[2, 2]), &[q(&[1, 1])]), Some(q(&[2])));
        assert!(subspace_membership(&f, &q(&[0, 0]), &[]).is_some());
    }

    #[test]
    fn affine_family_solutions() {
        let f = Rationals;
        // x = (1, 0, 0) + s (0, 1, 0) + t (0, 0, 1), subject to x1 + x2 = 2 and x0 = 1.
        let base = q(&[1, 0, 0]);
        let dirs = vec![q(&[0, 1, 0]), q(&[0, 0, 1])];
        let lin = |x: &[BigRational]| vec![f.add(&x[1], &x[2]), x[0].clone()];
        let sol = solve_affine_family(&f, &base, &dirs, lin, &q(&[2, 1])).unwrap();
        assert_eq!(sol.particular, q(&[1, 2, 0]));
        assert_eq!(sol.directions, vec![q(&[0, -1, 1])]);
        assert!(solve_affine_family(&f, &base, &dirs, lin, &q(&[2, 3])).is_err());
        let none = solve_affine_family(&f, &base, &[], lin, &q(&[0, 1])).unwrap();
        assert_eq!(none.particular, base);
        assert!(none.directions.is_empty());
    }
}
