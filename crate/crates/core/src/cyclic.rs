//! Connes' cyclic complex of a finite-dimensional algebra.
//!
//! Chains of degree `n` live in `B^{⊗(n+1)}`, flattened row-major.
//! `b(a_0⊗…⊗a_n) = Σ_{i<n} (-1)^i a_0⊗…⊗a_i a_{i+1}⊗…⊗a_n + (-1)^n a_n a_0⊗a_1⊗…⊗a_{n-1}`
//! and `λ(a_0⊗…⊗a_n) = (-1)^n a_n⊗a_0⊗…⊗a_{n-1}`. Cyclic homology is the
//! homology of `b` on `B^{⊗(n+1)} / im(1-λ)`, valid in characteristic zero.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::tensor::{apply_legs, permute_legs};
use crate::linalg::{rank_of, unit_vector, vec_sub, Matrix, QuotientSpace};
use crate::structures::StructureAlgebra;

/// Cached operators in one degree.
#[derive(Debug)]
struct Degree<F: Field> {
    /// `b_n`, absent in degree 0.
    boundary: Option<Matrix<F::Elem>>,
    one_minus_lambda: Matrix<F::Elem>,
    /// `B^{⊗(n+1)} / im(1-λ_n)`.
    lambda_quotient: QuotientSpace<F>,
}

#[derive(Debug)]
pub struct CyclicComplex<F: Field> {
    algebra: StructureAlgebra<F>,
    degrees: Mutex<HashMap<usize, Arc<Degree<F>>>>,
    /// `B^{⊗(n+1)} / (im b_{n+1} + im(1-λ_n))`.
    homology: Mutex<HashMap<usize, Arc<QuotientSpace<F>>>>,
}

fn signed<F: Field>(f: &F, v: Vec<F::Elem>, negative: bool) -> Vec<F::Elem> {
    if negative {
        v.iter().map(|x| f.neg(x)).collect()
    } else {
        v
    }
}

/// Moves the last leg to the front.
fn rotation(n: usize) -> Vec<usize> {
    std::iter::once(n).chain(0..n).collect()
}

impl<F: Field> CyclicComplex<F> {
    pub fn new(algebra: StructureAlgebra<F>) -> Result<Self> {
        if algebra.field().characteristic() != 0 {
            return Err(Error::Unsupported(format!(
                "cyclic homology needs characteristic 0, the field has characteristic {}",
                algebra.field().characteristic()
            )));
        }
        Ok(Self { algebra, degrees: Mutex::default(), homology: Mutex::default() })
    }

    pub fn algebra(&self) -> &StructureAlgebra<F> {
        &self.algebra
    }

    fn f(&self) -> &F {
        self.algebra.field()
    }

    /// Dimension of the chain space in degree `n`.
    pub fn chain_dim(&self, n: usize) -> usize {
        self.algebra.dim().pow(n as u32 + 1)
    }

    fn dims(&self, n: usize) -> Vec<usize> {
        vec![self.algebra.dim(); n + 1]
    }

    fn check_len(&self, x: &[F::Elem], n: usize) -> Result<()> {
        if x.len() != self.chain_dim(n) {
            return Err(Error::Input(format!(
                "degree-{n} chain must have {} coordinates, got {}",
                self.chain_dim(n),
                x.len()
            )));
        }
        Ok(())
    }

    /// The Hochschild boundary `b: C_n → C_{n-1}`.
    pub fn hochschild_boundary(&self, x: &[F::Elem], n: usize) -> Result<Vec<F::Elem>> {
        if n == 0 {
            return Err(Error::Input("the boundary is defined from degree 1".into()));
        }
        self.check_len(x, n)?;
        let f = self.f();
        let dims = self.dims(n);
        let mul = self.algebra.mul_matrix();
        let mut out = vec![f.zero(); self.chain_dim(n - 1)];
        for i in 0..n {
            let term = apply_legs(f, x, &dims, i, 2, mul);
            out = if i % 2 == 0 { crate::linalg::vec_add(f, &out, &term) } else { vec_sub(f, &out, &term) };
        }
        let rotated = permute_legs(f, x, &dims, &rotation(n));
        let last = apply_legs(f, &rotated, &dims, 0, 2, mul);
        Ok(if n.is_multiple_of(2) { crate::linalg::vec_add(f, &out, &last) } else { vec_sub(f, &out, &last) })
    }

    /// Connes' cyclic operator `λ` in degree `n`.
    pub fn cyclic_operator(&self, x: &[F::Elem], n: usize) -> Result<Vec<F::Elem>> {
        self.check_len(x, n)?;
        let f = self.f();
        Ok(signed(f, permute_legs(f, x, &self.dims(n), &rotation(n)), n % 2 == 1))
    }

    fn degree(&self, n: usize) -> Arc<Degree<F>> {
        if let Some(d) = self.degrees.lock().expect("cache lock").get(&n) {
            return d.clone();
        }
        let f = self.f();
        let dim = self.chain_dim(n);
        let basis = (0..dim).map(|k| unit_vector(f, dim, k));
        let boundary = (n > 0).then(|| {
            Matrix::from_columns(
                self.chain_dim(n - 1),
                basis.clone().map(|e| self.hochschild_boundary(&e, n).expect("valid degree")).collect(),
            )
        });
        let one_minus_lambda = Matrix::from_columns(
            dim,
            basis.map(|e| vec_sub(f, &e, &self.cyclic_operator(&e, n).expect("valid degree"))).collect(),
        );
        let lambda_quotient = QuotientSpace::new(f, dim, one_minus_lambda.columns().map(<[_]>::to_vec).collect());
        let d = Arc::new(Degree { boundary, one_minus_lambda, lambda_quotient });
        self.degrees.lock().expect("cache lock").insert(n, d.clone());
        d
    }

    fn homology_quotient(&self, n: usize) -> Arc<QuotientSpace<F>> {
        if let Some(q) = self.homology.lock().expect("cache lock").get(&n) {
            return q.clone();
        }
        let here = self.degree(n);
        let above = self.degree(n + 1);
        let mut relations: Vec<Vec<F::Elem>> = here.one_minus_lambda.columns().map(<[_]>::to_vec).collect();
        relations.extend(above.boundary.as_ref().expect("degree n+1 > 0").columns().map(<[_]>::to_vec));
        let q = Arc::new(QuotientSpace::new(self.f(), self.chain_dim(n), relations));
        self.homology.lock().expect("cache lock").insert(n, q.clone());
        q
    }

    /// `b(x) ∈ im(1-λ)`; every degree-0 chain is a cycle.
    pub fn is_cyclic_cycle(&self, x: &[F::Elem], n: usize) -> Result<bool> {
        self.check_len(x, n)?;
        if n == 0 {
            return Ok(true);
        }
        let bx = self.hochschild_boundary(x, n)?;
        Ok(self.degree(n - 1).lambda_quotient.is_relation(self.f(), &bx))
    }

    /// `x - y ∈ im(b_{n+1}) + im(1-λ_n)`; both must be cycles.
    pub fn homology_class_equal(&self, x: &[F::Elem], y: &[F::Elem], n: usize) -> Result<bool> {
        for (name, z) in [("first", x), ("second", y)] {
            if !self.is_cyclic_cycle(z, n)? {
                return Err(Error::Input(format!("the {name} chain is not a cyclic cycle")));
            }
        }
        Ok(self.homology_quotient(n).is_relation(self.f(), &vec_sub(self.f(), x, y)))
    }

    /// True iff the class of the cycle `x` vanishes.
    pub fn is_boundary(&self, x: &[F::Elem], n: usize) -> Result<bool> {
        let zero = vec![self.f().zero(); self.chain_dim(n)];
        self.homology_class_equal(x, &zero, n)
    }

    fn reduced_boundary_rank(&self, n: usize) -> usize {
        if n == 0 {
            return 0;
        }
        let f = self.f();
        let below = self.degree(n - 1);
        let images: Vec<Vec<F::Elem>> = self
            .degree(n)
            .boundary
            .as_ref()
            .expect("n > 0")
            .columns()
            .map(|c| below.lambda_quotient.project(f, c))
            .collect();
        rank_of(f, &images, below.lambda_quotient.dim())
    }

    /// `dim HC_n`, computed as `dim C^λ_n - rank b̄_n - rank b̄_{n+1}`.
    pub fn hc_dimension(&self, n: usize) -> usize {
        self.degree(n).lambda_quotient.dim() - self.reduced_boundary_rank(n) - self.reduced_boundary_rank(n + 1)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::linalg::{seeded_random_vector, VectorSpace};
    use crate::structures::fixtures::*;
    use num_rational::BigRational;

    pub fn scalars() -> StructureAlgebra<Rationals> {
        StructureAlgebra::new(Rationals, VectorSpace::numbered("1", 1), Matrix::from_columns(1, vec![q(&[1])]), q(&[1])).unwrap()
    }

    pub fn q_times_q() -> StructureAlgebra<Rationals> {
        let cols = vec![q(&[1, 0]), q(&[0, 0]), q(&[0, 0]), q(&[0, 1])];
        StructureAlgebra::new(Rationals, VectorSpace::numbered("e", 2), Matrix::from_columns(2, cols), q(&[1, 1])).unwrap()
    }

    fn ones(n: usize) -> Vec<BigRational> {
        q(&vec![1; n])
    }

    #[test]
    fn boundary_examples() {
        let cx = CyclicComplex::new(scalars()).unwrap();
        assert_eq!(cx.hochschild_boundary(&ones(1), 1).unwrap(), q(&[0]));
        assert_eq!(cx.hochschild_boundary(&ones(1), 2).unwrap(), q(&[1]));
        assert!(cx.hochschild_boundary(&ones(1), 0).is_err());
    }

    #[test]
    fn boundary_on_noncommutative_pair() {
        // Q[Z_2] is commutative, so b(a0⊗a1) = a0a1 - a1a0 = 0.
        let cx = CyclicComplex::new(z2_group_algebra()).unwrap();
        let x = seeded_random_vector(&Rationals, 4, 5);
        assert!(cx.hochschild_boundary(&x, 1).unwrap().iter().all(|v| Rationals.is_zero(v)));
    }

    #[test]
    fn lambda_examples() {
        let f = Rationals;
        let cx = CyclicComplex::new(z2_group_algebra()).unwrap();
        // λ(u0⊗u1) = -u1⊗u0.
        let x = unit_vector(&f, 4, 1);
        assert_eq!(cx.cyclic_operator(&x, 1).unwrap(), q(&[0, 0, -1, 0]));
        let s = CyclicComplex::new(scalars()).unwrap();
        assert_eq!(s.cyclic_operator(&ones(1), 2).unwrap(), ones(1));
    }

    #[test]
    fn cycles() {
        let s = CyclicComplex::new(scalars()).unwrap();
        assert!(s.is_cyclic_cycle(&ones(1), 2).unwrap());
        assert!(s.is_cyclic_cycle(&q(&[7]), 0).unwrap());
        // Over Q[Z_2] in degree 2, b(1⊗1⊗g) = g⊗1 is not symmetric, so not in im(1-λ).
        let cx = CyclicComplex::new(z2_group_algebra()).unwrap();
        let mut x = q(&[0; 8]);
        x[1] = Rationals.one();
        assert!(!cx.is_cyclic_cycle(&x, 2).unwrap());
    }

    #[test]
    fn class_equality() {
        let s = CyclicComplex::new(scalars()).unwrap();
        assert!(s.homology_class_equal(&ones(1), &ones(1), 2).unwrap());
        assert!(!s.homology_class_equal(&q(&[2]), &q(&[1]), 0).unwrap());
        assert!(!s.homology_class_equal(&ones(1), &q(&[0]), 2).unwrap());
    }

    #[test]
    fn hc_dimensions() {
        let s = CyclicComplex::new(scalars()).unwrap();
        assert_eq!(s.hc_dimension(0), 1);
        assert_eq!(s.hc_dimension(1), 0);
        assert_eq!(s.hc_dimension(2), 1);
        let qq = CyclicComplex::new(q_times_q()).unwrap();
        assert_eq!(qq.hc_dimension(0), 2);
        assert_eq!(qq.hc_dimension(2), 2);
    }

    #[test]
    fn positive_characteristic_is_rejected() {
        let f = crate::field::PrimeField::new(5).unwrap();
        let a = StructureAlgebra::new(f, VectorSpace::numbered("1", 1), Matrix::from_columns(1, vec![vec![1]]), vec![1]).unwrap();
        assert!(CyclicComplex::new(a).is_err());
    }
}
