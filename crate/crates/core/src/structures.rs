//! Structure-constant presentations of algebras, coalgebras and comodules,
//! with exhaustive axiom checks on basis tuples.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::tensor::{apply_leg, tensor_vec};
use crate::linalg::{invert, unit_vector, Matrix, VectorSpace};

/// Outcome of an axiom check: empty means every identity holds.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Validation {
    pub violations: Vec<String>,
}

impl Validation {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, msg: String) {
        self.violations.push(msg);
    }

    pub fn merge(&mut self, other: Validation) {
        self.violations.extend(other.violations);
    }
}

/// A finite-dimensional unital associative algebra.
#[derive(Debug, Clone)]
pub struct StructureAlgebra<F: Field> {
    field: F,
    space: VectorSpace,
    /// `dim × dim²`; column `i*dim + j` is `u_i u_j`.
    mul: Matrix<F::Elem>,
    unit: Vec<F::Elem>,
    left: Vec<Matrix<F::Elem>>,
    right: Vec<Matrix<F::Elem>>,
}

impl<F: Field> StructureAlgebra<F> {
    pub fn new(field: F, space: VectorSpace, mul: Matrix<F::Elem>, unit: Vec<F::Elem>) -> Result<Self> {
        let n = space.dim();
        if mul.rows() != n || mul.cols() != n * n || unit.len() != n {
            return Err(Error::Input(format!("algebra tables do not match dimension {n}")));
        }
        let left = (0..n)
            .map(|i| Matrix::from_columns(n, (0..n).map(|j| mul.column(i * n + j).to_vec()).collect()))
            .collect();
        let right = (0..n)
            .map(|i| Matrix::from_columns(n, (0..n).map(|j| mul.column(j * n + i).to_vec()).collect()))
            .collect();
        Ok(Self { field, space, mul, unit, left, right })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn space(&self) -> &VectorSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }

    pub fn mul_matrix(&self) -> &Matrix<F::Elem> {
        &self.mul
    }

    /// `u_i u_j`.
    pub fn mul_basis(&self, i: usize, j: usize) -> &[F::Elem] {
        self.mul.column(i * self.dim() + j)
    }

    /// Matrix of `x ↦ u_i x`.
    pub fn left_basis(&self, i: usize) -> &Matrix<F::Elem> {
        &self.left[i]
    }

    /// Matrix of `x ↦ x u_i`.
    pub fn right_basis(&self, i: usize) -> &Matrix<F::Elem> {
        &self.right[i]
    }

    fn combine(&self, a: &[F::Elem], ops: &[Matrix<F::Elem>]) -> Matrix<F::Elem> {
        let f = &self.field;
        let mut m = Matrix::zeros(f, self.dim(), self.dim());
        for (c, op) in a.iter().zip(ops) {
            if !f.is_zero(c) {
                m = m.add(f, &op.scale(f, c));
            }
        }
        m
    }

    /// Matrix of `x ↦ a x`.
    pub fn left_mult(&self, a: &[F::Elem]) -> Matrix<F::Elem> {
        self.combine(a, &self.left)
    }

    /// Matrix of `x ↦ x a`.
    pub fn right_mult(&self, a: &[F::Elem]) -> Matrix<F::Elem> {
        self.combine(a, &self.right)
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        self.mul.apply(&self.field, &tensor_vec(&self.field, a, b))
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.mul_basis(i, j) == self.mul_basis(j, i)))
    }

    /// Associativity on all basis triples and both unit laws on all basis vectors.
    pub fn validate(&self) -> Validation {
        let f = &self.field;
        let n = self.dim();
        let l = |i: usize| self.space.label(i);
        let mut report = Validation::default();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.right[k].apply(f, self.mul_basis(i, j));
                    let rhs = self.left[i].apply(f, self.mul_basis(j, k));
                    if lhs != rhs {
                        report.push(format!("associativity fails on ({}, {}, {})", l(i), l(j), l(k)));
                    }
                }
            }
        }
        let lu = self.left_mult(&self.unit);
        let ru = self.right_mult(&self.unit);
        for j in 0..n {
            let e = unit_vector(f, n, j);
            if lu.apply(f, &e) != e {
                report.push(format!("left unit law fails on {}", l(j)));
            }
            if ru.apply(f, &e) != e {
                report.push(format!("right unit law fails on {}", l(j)));
            }
        }
        report
    }
}

/// A finite-dimensional coassociative counital coalgebra.
#[derive(Debug, Clone)]
pub struct StructureCoalgebra<F: Field> {
    field: F,
    space: VectorSpace,
    /// `dim² × dim`.
    comul: Matrix<F::Elem>,
    counit: Matrix<F::Elem>,
}

impl<F: Field> StructureCoalgebra<F> {
    pub fn new(field: F, space: VectorSpace, comul: Matrix<F::Elem>, counit: Vec<F::Elem>) -> Result<Self> {
        let n = space.dim();
        if comul.rows() != n * n || comul.cols() != n || counit.len() != n {
            return Err(Error::Input(format!("coalgebra tables do not match dimension {n}")));
        }
        let counit = Matrix::from_rows(n, vec![counit]);
        Ok(Self { field, space, comul, counit })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn space(&self) -> &VectorSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn comul_matrix(&self) -> &Matrix<F::Elem> {
        &self.comul
    }

    /// The counit as a `1 × dim` matrix.
    pub fn counit_matrix(&self) -> &Matrix<F::Elem> {
        &self.counit
    }

    pub fn counit(&self, x: &[F::Elem]) -> F::Elem {
        self.counit.apply(&self.field, x).pop().expect("one row")
    }

    pub fn comul(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        self.comul.apply(&self.field, x)
    }

    /// `Δ^{(k)}(x)` in `C^{⊗(k+1)}`, iterating `(id ⊗ ... ⊗ Δ)` on the last leg.
    pub fn iterated_comul(&self, x: &[F::Elem], k: usize) -> Vec<F::Elem> {
        let n = self.dim();
        let mut v = x.to_vec();
        let mut dims = vec![n];
        for _ in 0..k {
            let last = dims.len() - 1;
            v = apply_leg(&self.field, &v, &dims, last, &self.comul);
            dims.push(n);
        }
        v
    }

    pub fn validate(&self) -> Validation {
        let f = &self.field;
        let n = self.dim();
        let mut report = Validation::default();
        for x in 0..n {
            let dx = self.comul.column(x);
            let lhs = apply_leg(f, dx, &[n, n], 0, &self.comul);
            let rhs = apply_leg(f, dx, &[n, n], 1, &self.comul);
            if lhs != rhs {
                report.push(format!("coassociativity fails on {}", self.space.label(x)));
            }
            let e = unit_vector(f, n, x);
            if apply_leg(f, dx, &[n, n], 0, &self.counit) != e {
                report.push(format!("left counit law fails on {}", self.space.label(x)));
            }
            if apply_leg(f, dx, &[n, n], 1, &self.counit) != e {
                report.push(format!("right counit law fails on {}", self.space.label(x)));
            }
        }
        report
    }

    /// `Δe = e⊗e` and `ε(e) = 1`.
    pub fn is_grouplike(&self, e: &[F::Elem]) -> bool {
        let f = &self.field;
        e.len() == self.dim() && self.comul(e) == tensor_vec(f, e, e) && f.is_one(&self.counit(e))
    }
}

/// A right comodule `V → V⊗C`.
#[derive(Debug, Clone)]
pub struct RightComodule<F: Field> {
    pub space: VectorSpace,
    /// `(dim V · dim C) × dim V`.
    pub coaction: Matrix<F::Elem>,
}

/// A left comodule `V → C⊗V`.
#[derive(Debug, Clone)]
pub struct LeftComodule<F: Field> {
    pub space: VectorSpace,
    /// `(dim C · dim V) × dim V`.
    pub coaction: Matrix<F::Elem>,
}

impl<F: Field> RightComodule<F> {
    pub fn validate(&self, c: &StructureCoalgebra<F>) -> Validation {
        let f = c.field();
        let (nv, nc) = (self.space.dim(), c.dim());
        let mut report = Validation::default();
        if self.coaction.rows() != nv * nc || self.coaction.cols() != nv {
            report.push("coaction has the wrong shape".into());
            return report;
        }
        for v in 0..nv {
            let dv = self.coaction.column(v);
            let lhs = apply_leg(f, dv, &[nv, nc], 0, &self.coaction);
            let rhs = apply_leg(f, dv, &[nv, nc], 1, c.comul_matrix());
            if lhs != rhs {
                report.push(format!("coaction coassociativity fails on {}", self.space.label(v)));
            }
            if apply_leg(f, dv, &[nv, nc], 1, c.counit_matrix()) != unit_vector(f, nv, v) {
                report.push(format!("coaction counit law fails on {}", self.space.label(v)));
            }
        }
        report
    }
}

impl<F: Field> LeftComodule<F> {
    pub fn validate(&self, c: &StructureCoalgebra<F>) -> Validation {
        let f = c.field();
        let (nv, nc) = (self.space.dim(), c.dim());
        let mut report = Validation::default();
        if self.coaction.rows() != nv * nc || self.coaction.cols() != nv {
            report.push("left coaction has the wrong shape".into());
            return report;
        }
        for v in 0..nv {
            let dv = self.coaction.column(v);
            let lhs = apply_leg(f, dv, &[nc, nv], 0, c.comul_matrix());
            let rhs = apply_leg(f, dv, &[nc, nv], 1, &self.coaction);
            if lhs != rhs {
                report.push(format!("left coaction coassociativity fails on {}", self.space.label(v)));
            }
            if apply_leg(f, dv, &[nc, nv], 0, c.counit_matrix()) != unit_vector(f, nv, v) {
                report.push(format!("left coaction counit law fails on {}", self.space.label(v)));
            }
        }
        report
    }
}

/// A finite-dimensional corepresentation `φ: V → V⊗C`.
#[derive(Debug, Clone)]
pub struct Corepresentation<F: Field> {
    pub name: String,
    pub comodule: RightComodule<F>,
}

impl<F: Field> Corepresentation<F> {
    pub fn new(name: impl Into<String>, space: VectorSpace, coaction: Matrix<F::Elem>) -> Self {
        Self { name: name.into(), comodule: RightComodule { space, coaction } }
    }

    pub fn space(&self) -> &VectorSpace {
        &self.comodule.space
    }

    pub fn dim(&self) -> usize {
        self.comodule.space.dim()
    }

    pub fn coaction(&self) -> &Matrix<F::Elem> {
        &self.comodule.coaction
    }

    /// Matrix coefficients: `coeffs[i][j] = e_ij ∈ C` with `φ(e_j) = Σ_i e_i ⊗ e_ij`.
    pub fn matrix_coeffs(&self, nc: usize) -> Vec<Vec<Vec<F::Elem>>> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.coaction().column(j)[i * nc..(i + 1) * nc].to_vec())
                    .collect()
            })
            .collect()
    }

    /// Comodule axioms plus the derived identities `Δ(e_ij) = Σ_t e_it⊗e_tj`
    /// and `ε(e_ij) = δ_ij`.
    pub fn validate(&self, c: &StructureCoalgebra<F>) -> Validation {
        let mut report = self.comodule.validate(c);
        if !report.is_ok() {
            return report;
        }
        let f = c.field();
        let n = self.dim();
        let e = self.matrix_coeffs(c.dim());
        for i in 0..n {
            for j in 0..n {
                let mut rhs = vec![f.zero(); c.dim() * c.dim()];
                for t in 0..n {
                    let term = tensor_vec(f, &e[i][t], &e[t][j]);
                    rhs = crate::linalg::vec_add(f, &rhs, &term);
                }
                if c.comul(&e[i][j]) != rhs {
                    report.push(format!("matrix coefficient coproduct fails at ({i}, {j})"));
                }
                let expect = if i == j { f.one() } else { f.zero() };
                if c.counit(&e[i][j]) != expect {
                    report.push(format!("matrix coefficient counit fails at ({i}, {j})"));
                }
            }
        }
        report
    }

    /// `c_φ = Σ_i e_ii`.
    pub fn character(&self, c: &StructureCoalgebra<F>) -> Vec<F::Elem> {
        let f = c.field();
        let e = self.matrix_coeffs(c.dim());
        let mut out = vec![f.zero(); c.dim()];
        for (i, row) in e.iter().enumerate() {
            out = crate::linalg::vec_add(f, &out, &row[i]);
        }
        out
    }

    /// Block coaction on `V ⊕ V'`; clashing labels of `V'` get a `'` suffix.
    pub fn direct_sum(&self, other: &Self, c: &StructureCoalgebra<F>) -> Result<Self> {
        let f = c.field();
        let nc = c.dim();
        if self.coaction().rows() != self.dim() * nc || other.coaction().rows() != other.dim() * nc {
            return Err(Error::Input("direct sum of corepresentations over different coalgebras".into()));
        }
        let (n1, n2) = (self.dim(), other.dim());
        let n = n1 + n2;
        let mut labels: Vec<String> = self.space().labels().to_vec();
        for l in other.space().labels() {
            let mut l = l.clone();
            while labels.contains(&l) {
                l.push('\'');
            }
            labels.push(l);
        }
        let mut cols = Vec::with_capacity(n);
        for (offset, part) in [(0, self), (n1, other)] {
            for j in 0..part.dim() {
                let mut col = vec![f.zero(); n * nc];
                for (k, x) in part.coaction().column(j).iter().enumerate() {
                    col[(offset + k / nc) * nc + k % nc] = x.clone();
                }
                cols.push(col);
            }
        }
        let name = format!("{}+{}", self.name, other.name);
        let space = VectorSpace::new(labels).map_err(Error::Input)?;
        Ok(Self::new(name, space, Matrix::from_columns(n * nc, cols)))
    }

    /// Re-expresses `φ` in the basis `e'_j = Σ_k T_kj e_k`, i.e. the coaction
    /// `(T^{-1} ⊗ id) ∘ φ ∘ T`.
    pub fn change_basis(&self, c: &StructureCoalgebra<F>, t: &Matrix<F::Elem>) -> Result<Self> {
        let f = c.field();
        let n = self.dim();
        if t.rows() != n || t.cols() != n {
            return Err(Error::Input("change of basis has the wrong size".into()));
        }
        let t_inv = invert(f, t)?;
        let cols = (0..n)
            .map(|j| {
                let image = self.coaction().apply(f, t.column(j));
                apply_leg(f, &image, &[n, c.dim()], 0, &t_inv)
            })
            .collect();
        let space = VectorSpace::numbered("w", n);
        Ok(Self::new(self.name.clone(), space, Matrix::from_columns(n * c.dim(), cols)))
    }
}

/// An algebra `P` with a right `C`-coaction. The coaction is not required to
/// be multiplicative.
#[derive(Debug, Clone)]
pub struct ComoduleAlgebra<F: Field> {
    pub algebra: StructureAlgebra<F>,
    pub coalgebra: StructureCoalgebra<F>,
    /// `(dim P · dim C) × dim P`.
    pub coaction: Matrix<F::Elem>,
}

impl<F: Field> ComoduleAlgebra<F> {
    pub fn new(algebra: StructureAlgebra<F>, coalgebra: StructureCoalgebra<F>, coaction: Matrix<F::Elem>) -> Result<Self> {
        let (np, nc) = (algebra.dim(), coalgebra.dim());
        if coaction.rows() != np * nc || coaction.cols() != np {
            return Err(Error::Input("coaction does not match dim P · dim C".into()));
        }
        Ok(Self { algebra, coalgebra, coaction })
    }

    pub fn field(&self) -> &F {
        self.algebra.field()
    }

    pub fn as_comodule(&self) -> RightComodule<F> {
        RightComodule { space: self.algebra.space().clone(), coaction: self.coaction.clone() }
    }

    /// Algebra axioms, coalgebra axioms and comodule axioms for the coaction.
    pub fn validate(&self) -> Validation {
        let mut report = self.algebra.validate();
        report.merge(self.coalgebra.validate());
        if report.is_ok() {
            report.merge(self.as_comodule().validate(&self.coalgebra));
        }
        report
    }

    pub fn coact(&self, p: &[F::Elem]) -> Vec<F::Elem> {
        self.coaction.apply(self.field(), p)
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn algebra_examples() {
        assert!(z2_group_algebra().validate().is_ok());
        // M_2(Q) on elementary matrices E11, E12, E21, E22: E_ab E_cd = δ_bc E_ad.
        let n = 4;
        let mut cols = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let (a, b, c, d) = (i / 2, i % 2, j / 2, j % 2);
                let mut v = q(&[0; 4]);
                if b == c {
                    v[a * 2 + d] = Rationals.one();
                }
                cols.push(v);
            }
        }
        let m2 = StructureAlgebra::new(Rationals, VectorSpace::numbered("E", 4), Matrix::from_columns(4, cols), q(&[1, 0, 0, 1])).unwrap();
        assert!(m2.validate().is_ok());
        assert!(!m2.is_commutative());
        // u1u1 = u1 with unit u0 but u0u1 = u0.
        let bad_mul = Matrix::from_columns(2, vec![q(&[1, 0]), q(&[1, 0]), q(&[0, 1]), q(&[0, 1])]);
        let bad = StructureAlgebra::new(Rationals, VectorSpace::numbered("u", 2), bad_mul, q(&[1, 0])).unwrap();
        let report = bad.validate();
        assert!(report.violations.iter().any(|v| v.contains("unit law")));
    }

    #[test]
    fn coalgebra_examples() {
        assert!(grouplike_coalgebra(3).validate().is_ok());
        assert!(fun_z2().validate().is_ok());
        // Δx0 = x0⊗x1 breaks the counit laws.
        let comul = Matrix::from_columns(4, vec![q(&[0, 1, 0, 0]), q(&[0, 0, 0, 1])]);
        let bad = StructureCoalgebra::new(Rationals, VectorSpace::numbered("x", 2), comul, q(&[1, 1])).unwrap();
        assert!(bad.validate().violations.iter().any(|v| v.contains("counit")));
    }

    #[test]
    fn comodule_examples() {
        let c = grouplike_coalgebra(2);
        let trivial = RightComodule::<Rationals> {
            space: VectorSpace::numbered("v", 1),
            coaction: Matrix::from_columns(2, vec![q(&[1, 0])]),
        };
        assert!(trivial.validate(&c).is_ok());
        assert!(z2_graded().validate().is_ok());
        let broken = RightComodule::<Rationals> {
            space: VectorSpace::numbered("v", 1),
            coaction: Matrix::from_columns(2, vec![q(&[2, 0])]),
        };
        assert!(!broken.validate(&c).is_ok());
    }

    #[test]
    fn grouplike_examples() {
        let c = grouplike_coalgebra(2);
        assert!(c.is_grouplike(&q(&[1, 0])));
        assert!(!c.is_grouplike(&q(&[1, 1])));
        assert!(fun_z2().is_grouplike(&q(&[1, 1])));
        assert!(!fun_z2().is_grouplike(&q(&[1, 0])));
    }

    #[test]
    fn characters_add_and_survive_basis_change() {
        let c = grouplike_coalgebra(2);
        let t = degree_corep(1);
        let triv = degree_corep(0);
        assert_eq!(t.character(&c), q(&[0, 1]));
        assert_eq!(triv.character(&c), q(&[1, 0]));
        let sum = t.direct_sum(&triv, &c).unwrap();
        assert_eq!(sum.dim(), 2);
        assert!(sum.validate(&c).is_ok());
        assert_eq!(sum.character(&c), q(&[1, 1]));
        assert_eq!(t.direct_sum(&t, &c).unwrap().character(&c), q(&[0, 2]));
        let e = sum.matrix_coeffs(2);
        assert_eq!(e[0][1], q(&[0, 0]));
        assert_eq!(e[1][0], q(&[0, 0]));

        let swap = Matrix::from_rows(2, vec![q(&[0, 1]), q(&[1, 0])]);
        let swapped = sum.change_basis(&c, &swap).unwrap();
        assert_eq!(swapped.matrix_coeffs(2)[0][0], e[1][1]);
        assert_eq!(swapped.character(&c), sum.character(&c));
        let diag = Matrix::from_rows(2, vec![q(&[2, 0]), q(&[0, 1])]);
        assert_eq!(sum.change_basis(&c, &diag).unwrap().character(&c), sum.character(&c));
        let singular = Matrix::from_rows(2, vec![q(&[1, 1]), q(&[1, 1])]);
        assert!(sum.change_basis(&c, &singular).is_err());
    }
}
