use crate::field::Field;

use super::{invert, Echelon, Matrix};

/// `ambient / span(relations)` with a canonical section.
///
/// The section picks the non-pivot coordinates of the reduced echelon form of
/// the relations; quotient coordinates are exactly those ambient coordinates.
#[derive(Debug, Clone)]
pub struct QuotientSpace<F: Field> {
    ambient_dim: usize,
    relations: Echelon<F::Elem>,
    complement: Vec<usize>,
}

impl<F: Field> QuotientSpace<F> {
    pub fn new(f: &F, ambient_dim: usize, relations: Vec<Vec<F::Elem>>) -> Self {
        let relations = Echelon::new(f, relations, ambient_dim, ambient_dim);
        let complement = relations.free_columns(ambient_dim);
        Self { ambient_dim, relations, complement }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    /// Basis of the subspace being killed (the echelon rows of the relations).
    pub fn relation_basis(&self) -> &[Vec<F::Elem>] {
        self.relations.pivot_rows()
    }

    /// Ambient coordinates that carry the quotient coordinates.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn project(&self, f: &F, v: &[F::Elem]) -> Vec<F::Elem> {
        let mut w = v.to_vec();
        self.relations.reduce(f, &mut w);
        self.complement.iter().map(|&i| w[i].clone()).collect()
    }

    pub fn section(&self, f: &F, q: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(q.len(), self.dim(), "section: quotient vector length");
        let mut v = vec![f.zero(); self.ambient_dim];
        for (&i, x) in self.complement.iter().zip(q) {
            v[i] = x.clone();
        }
        v
    }

    /// True iff `v` lies in the span of the relations.
    pub fn is_relation(&self, f: &F, v: &[F::Elem]) -> bool {
        self.project(f, v).iter().all(|x| f.is_zero(x))
    }

    pub fn projection_matrix(&self, f: &F) -> Matrix<F::Elem> {
        let cols = (0..self.ambient_dim)
            .map(|j| self.project(f, &super::unit_vector(f, self.ambient_dim, j)))
            .collect();
        Matrix::from_columns(self.dim(), cols)
    }

    pub fn section_matrix(&self, f: &F) -> Matrix<F::Elem> {
        let cols = (0..self.dim()).map(|j| self.section(f, &super::unit_vector(f, self.dim(), j))).collect();
        Matrix::from_columns(self.ambient_dim, cols)
    }
}

/// A subspace with a fixed, linearly independent basis and fast coordinates.
#[derive(Debug, Clone)]
pub struct Subspace<F: Field> {
    ambient_dim: usize,
    basis: Vec<Vec<F::Elem>>,
    /// Ambient coordinates on which the basis restricts to an invertible matrix.
    probe: Vec<usize>,
    probe_inverse: Matrix<F::Elem>,
}

impl<F: Field> Subspace<F> {
    /// Keeps the vectors of `spanning` that are independent of the earlier ones.
    pub fn span(f: &F, ambient_dim: usize, spanning: impl IntoIterator<Item = Vec<F::Elem>>) -> Self {
        let mut basis: Vec<Vec<F::Elem>> = Vec::new();
        for v in spanning {
            assert_eq!(v.len(), ambient_dim, "span: vector length");
            let mut trial = basis.clone();
            trial.push(v.clone());
            if Echelon::new(f, trial, ambient_dim, ambient_dim).rank() == basis.len() + 1 {
                basis.push(v);
            }
        }
        Self::from_independent(f, ambient_dim, basis)
    }

    /// `basis` must be linearly independent.
    pub fn from_independent(f: &F, ambient_dim: usize, basis: Vec<Vec<F::Elem>>) -> Self {
        let ech = Echelon::new(f, basis.clone(), ambient_dim, ambient_dim);
        assert_eq!(ech.rank(), basis.len(), "subspace basis must be independent");
        let probe = ech.pivots().to_vec();
        let k = basis.len();
        let sub = Matrix::from_columns(k, basis.iter().map(|b| probe.iter().map(|&i| b[i].clone()).collect()).collect());
        let probe_inverse = invert(f, &sub).expect("probe submatrix is invertible");
        Self { ambient_dim, basis, probe, probe_inverse }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.basis
    }

    /// Coordinates of `x` in the basis, or `None` when `x` is outside.
    pub fn coords(&self, f: &F, x: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let probe: Vec<F::Elem> = self.probe.iter().map(|&i| x[i].clone()).collect();
        let c = self.probe_inverse.apply(f, &probe);
        (self.embed(f, &c) == x).then_some(c)
    }

    pub fn contains(&self, f: &F, x: &[F::Elem]) -> bool {
        self.coords(f, x).is_some()
    }

    pub fn embed(&self, f: &F, c: &[F::Elem]) -> Vec<F::Elem> {
        let mut v = vec![f.zero(); self.ambient_dim];
        for (ci, b) in c.iter().zip(&self.basis) {
            super::vec_axpy(f, &mut v, ci, b);
        }
        v
    }

    /// Matrix of the inclusion (ambient × dim).
    pub fn inclusion(&self) -> Matrix<F::Elem> {
        Matrix::from_columns(self.ambient_dim, self.basis.clone())
    }

    /// A left inverse of the inclusion: reads coordinates off the probe rows.
    pub fn retraction(&self, f: &F) -> Matrix<F::Elem> {
        let cols = (0..self.ambient_dim)
            .map(|j| match self.probe.iter().position(|&p| p == j) {
                Some(k) => self.probe_inverse.column(k).to_vec(),
                None => vec![f.zero(); self.dim()],
            })
            .collect();
        Matrix::from_columns(self.dim(), cols)
    }
}
