use std::collections::HashSet;

use crate::field::Field;

use super::{LinalgError, Matrix};

/// A finite-dimensional space given by its labelled basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorSpace {
    labels: Vec<String>,
}

impl VectorSpace {
    pub fn new(labels: Vec<String>) -> Result<Self, String> {
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(format!("duplicate basis label `{l}`"));
            }
        }
        Ok(Self { labels })
    }

    /// A space with labels `{prefix}0, {prefix}1, ...`.
    pub fn numbered(prefix: &str, dim: usize) -> Self {
        Self { labels: (0..dim).map(|i| format!("{prefix}{i}")).collect() }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// A linear map with its matrix in the given bases (column `j` is the image
/// of the `j`-th domain basis vector).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap<F: Field> {
    pub domain: VectorSpace,
    pub codomain: VectorSpace,
    pub matrix: Matrix<F::Elem>,
}

impl<F: Field> LinearMap<F> {
    pub fn new(domain: VectorSpace, codomain: VectorSpace, matrix: Matrix<F::Elem>) -> Result<Self, LinalgError> {
        if matrix.rows() != codomain.dim() {
            return Err(LinalgError::DimensionMismatch { expected: codomain.dim(), got: matrix.rows() });
        }
        if matrix.cols() != domain.dim() {
            return Err(LinalgError::DimensionMismatch { expected: domain.dim(), got: matrix.cols() });
        }
        Ok(Self { domain, codomain, matrix })
    }

    pub fn identity(f: &F, space: VectorSpace) -> Self {
        let matrix = Matrix::identity(f, space.dim());
        Self { domain: space.clone(), codomain: space, matrix }
    }

    pub fn apply(&self, f: &F, v: &[F::Elem]) -> Vec<F::Elem> {
        self.matrix.apply(f, v)
    }

    /// `self ∘ other`; requires `other.codomain == self.domain`.
    pub fn compose(&self, f: &F, other: &LinearMap<F>) -> Result<Self, LinalgError> {
        if other.codomain != self.domain {
            return Err(LinalgError::DimensionMismatch { expected: self.domain.dim(), got: other.codomain.dim() });
        }
        Ok(Self {
            domain: other.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.compose(f, &other.matrix),
        })
    }
}

/// An ordered tensor product with row-major flattening.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorSpace {
    factors: Vec<VectorSpace>,
}

impl TensorSpace {
    pub fn new(factors: Vec<VectorSpace>) -> Self {
        Self { factors }
    }

    pub fn factors(&self) -> &[VectorSpace] {
        &self.factors
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(VectorSpace::dim).collect()
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(VectorSpace::dim).product()
    }

    pub fn flatten(&self, index: &[usize]) -> usize {
        assert_eq!(index.len(), self.factors.len(), "flatten: arity");
        index.iter().zip(&self.factors).fold(0, |acc, (&i, s)| {
            assert!(i < s.dim(), "flatten: index out of range");
            acc * s.dim() + i
        })
    }

    pub fn unflatten(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (slot, s) in out.iter_mut().zip(&self.factors).rev() {
            *slot = flat % s.dim();
            flat /= s.dim();
        }
        out
    }

    /// The flattened space, basis labels joined with `@`.
    pub fn space(&self) -> VectorSpace {
        let labels = (0..self.dim())
            .map(|k| {
                self.unflatten(k)
                    .iter()
                    .zip(&self.factors)
                    .map(|(&i, s)| s.label(i))
                    .collect::<Vec<_>>()
                    .join("@")
            })
            .collect();
        VectorSpace { labels }
    }
}

/// Kronecker product `a ⊗ b` in row-major flattening.
pub fn map_tensor<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let rows = a.rows() * b.rows();
    let mut cols = Vec::with_capacity(a.cols() * b.cols());
    for j1 in 0..a.cols() {
        for j2 in 0..b.cols() {
            let mut col = vec![f.zero(); rows];
            for i1 in 0..a.rows() {
                let x = a.get(i1, j1);
                if f.is_zero(x) {
                    continue;
                }
                for i2 in 0..b.rows() {
                    col[i1 * b.rows() + i2] = f.mul(x, b.get(i2, j2));
                }
            }
            cols.push(col);
        }
    }
    Matrix::from_columns(rows, cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn flatten_row_major() {
        let t = TensorSpace::new(vec![VectorSpace::numbered("a", 2), VectorSpace::numbered("b", 3)]);
        assert_eq!(t.dim(), 6);
        assert_eq!(t.flatten(&[1, 2]), 5);
        assert_eq!(t.space().label(5), "a1@b2");
    }

    #[test]
    fn flatten_unflatten_exhaustive() {
        for d1 in 1..=4 {
            for d2 in 1..=4 {
                for d3 in 1..=4 {
                    let t = TensorSpace::new(vec![
                        VectorSpace::numbered("x", d1),
                        VectorSpace::numbered("y", d2),
                        VectorSpace::numbered("z", d3),
                    ]);
                    for k in 0..t.dim() {
                        assert_eq!(t.flatten(&t.unflatten(k)), k);
                    }
                }
            }
        }
    }

    #[test]
    fn kronecker_examples() {
        let f = Rationals;
        let id = Matrix::identity(&f, 2);
        assert_eq!(map_tensor(&f, &id, &id), Matrix::identity(&f, 4));
        let swap = Matrix::from_rows(2, vec![vec![f.zero(), f.one()], vec![f.one(), f.zero()]]);
        let k = map_tensor(&f, &swap, &swap);
        // e0⊗e1 (flat 1) ↦ e1⊗e0 (flat 2).
        let img = k.apply(&f, &crate::linalg::unit_vector(&f, 4, 1));
        assert_eq!(img, crate::linalg::unit_vector(&f, 4, 2));
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(VectorSpace::new(vec!["a".into(), "a".into()]).is_err());
    }
}
