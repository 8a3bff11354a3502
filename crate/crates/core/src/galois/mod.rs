//! Coinvariants, the canonical maps and the principality conditions.
//!
//! Tensor vectors are flat in row-major order: `P⊗C` is indexed by
//! `p * dim C + c`, `C⊗P` by `c * dim P + p`, `P⊗P` by `p * dim P + q`.

mod certify;
mod connection;
mod simple;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::tensor::{apply_leg, apply_legs, tensor_vec};
use crate::linalg::{invert, kernel, unit_vector, LinalgError, Matrix, QuotientSpace, Subspace, VectorSpace};
use crate::structures::{ComoduleAlgebra, LeftComodule, StructureAlgebra};

pub use certify::{compute_cotensor, Certificates, Flatness, Side, SimpleCheck};
pub use connection::{ConnectionSpace, Splitting, StrongConnection};
pub use simple::{characters, Characters};

/// A comodule algebra together with its coinvariant subalgebra `B` and the
/// relative tensor product `P⊗_B P`.
#[derive(Debug, Clone)]
pub struct Extension<F: Field> {
    p: ComoduleAlgebra<F>,
    b: Subspace<F>,
    b_algebra: StructureAlgebra<F>,
    /// `P / B`, used to test membership of tensor legs in `B`.
    b_complement: QuotientSpace<F>,
    relative: QuotientSpace<F>,
}

impl<F: Field> Extension<F> {
    /// Computes `B = {b : Δ_P(bp) = bΔ_P(p) for all p}` and `P⊗_B P`.
    pub fn new(p: ComoduleAlgebra<F>) -> Result<Self> {
        let f = p.field().clone();
        let np = p.algebra.dim();
        let nc = p.coalgebra.dim();
        let cols = (0..np)
            .map(|i| {
                let mut col = Vec::with_capacity(np * np * nc);
                for j in 0..np {
                    let lhs = p.coact(p.algebra.mul_basis(i, j));
                    let rhs = apply_leg(&f, p.coaction.column(j), &[np, nc], 0, p.algebra.left_basis(i));
                    col.extend(crate::linalg::vec_sub(&f, &lhs, &rhs));
                }
                col
            })
            .collect();
        let condition = Matrix::from_columns(np * np * nc, cols);
        let unit = p.algebra.unit().to_vec();
        let ker = kernel(&f, &condition);
        let kdim = ker.len();
        let b = Subspace::span(&f, np, std::iter::once(unit).chain(ker));
        if b.dim() != kdim {
            return Err(Error::contradiction("coinvariants", "the unit is not coinvariant"));
        }
        let nb = b.dim();
        let mut mul_cols = Vec::with_capacity(nb * nb);
        for x in b.basis() {
            for y in b.basis() {
                let xy = p.algebra.mul(x, y);
                let coords = b
                    .coords(&f, &xy)
                    .ok_or_else(|| Error::contradiction("coinvariants", "B is not closed under multiplication"))?;
                mul_cols.push(coords);
            }
        }
        let labels = (0..nb).map(|i| if i == 0 { "1".to_string() } else { format!("b{i}") }).collect();
        let b_space = VectorSpace::new(labels).map_err(Error::Input)?;
        let b_algebra = StructureAlgebra::new(f.clone(), b_space, Matrix::from_columns(nb, mul_cols), unit_vector(&f, nb, 0))?;

        let b_complement = QuotientSpace::new(&f, np, b.basis().to_vec());
        let mut relations = Vec::new();
        for k in 1..nb {
            let bk = &b.basis()[k];
            for i in 0..np {
                let left = p.algebra.mul(&unit_vector(&f, np, i), bk);
                for j in 0..np {
                    let right = p.algebra.mul(bk, &unit_vector(&f, np, j));
                    let rel = crate::linalg::vec_sub(
                        &f,
                        &tensor_vec(&f, &left, &unit_vector(&f, np, j)),
                        &tensor_vec(&f, &unit_vector(&f, np, i), &right),
                    );
                    relations.push(rel);
                }
            }
        }
        let relative = QuotientSpace::new(&f, np * np, relations);
        Ok(Self { p, b, b_algebra, b_complement, relative })
    }

    pub fn field(&self) -> &F {
        self.p.field()
    }

    pub fn comodule_algebra(&self) -> &ComoduleAlgebra<F> {
        &self.p
    }

    pub fn algebra(&self) -> &StructureAlgebra<F> {
        &self.p.algebra
    }

    pub fn np(&self) -> usize {
        self.p.algebra.dim()
    }

    pub fn nc(&self) -> usize {
        self.p.coalgebra.dim()
    }

    /// `B` as a subspace of `P`; its first basis vector is the unit.
    pub fn coinvariants(&self) -> &Subspace<F> {
        &self.b
    }

    pub fn b_algebra(&self) -> &StructureAlgebra<F> {
        &self.b_algebra
    }

    /// `P⊗_B P` as a quotient of `P⊗P`.
    pub fn relative_tensor(&self) -> &QuotientSpace<F> {
        &self.relative
    }

    pub(crate) fn b_complement(&self) -> &QuotientSpace<F> {
        &self.b_complement
    }

    /// Multiplies legs `leg, leg+1` (both `P`) of a tensor.
    pub(crate) fn mul_legs(&self, v: &[F::Elem], dims: &[usize], leg: usize) -> Vec<F::Elem> {
        apply_legs(self.field(), v, dims, leg, 2, self.p.algebra.mul_matrix())
    }

    /// `x⊗y ↦ xΔ_P(y)` on `P⊗P`.
    pub fn can_lift(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let (np, nc) = (self.np(), self.nc());
        let y = apply_leg(self.field(), v, &[np, np], 1, &self.p.coaction);
        self.mul_legs(&y, &[np, np, nc], 0)
    }

    /// Checks the Galois condition: `can_R: P⊗_B P → P⊗C` is bijective.
    pub fn check_galois(&self) -> Result<CanonicalRight<F>> {
        let f = self.field();
        let (np, nc) = (self.np(), self.nc());
        for (k, rel) in self.relative.relation_basis().iter().enumerate() {
            if !crate::linalg::is_zero_vec(f, &self.can_lift(rel)) {
                return Err(Error::contradiction("can_R", format!("does not vanish on relation {k} of P⊗_B P")));
            }
        }
        let nq = self.relative.dim();
        if nq != np * nc {
            return Err(Error::failed(
                "Galois condition",
                format!("dim P⊗_B P = {nq} but dim P⊗C = {}", np * nc),
            ));
        }
        let cols = (0..nq)
            .map(|k| self.can_lift(&self.relative.section(f, &unit_vector(f, nq, k))))
            .collect();
        let matrix = Matrix::from_columns(np * nc, cols);
        let inverse = invert(f, &matrix).map_err(|e| match e {
            LinalgError::NotBijective { rows, rank, .. } => {
                Error::failed("Galois condition", format!("can_R has rank {rank} < {rows}"))
            }
            other => other.into(),
        })?;
        let unit = self.p.algebra.unit();
        let tau = Matrix::from_columns(
            nq,
            (0..nc).map(|c| inverse.apply(f, &tensor_vec(f, unit, &unit_vector(f, nc, c)))).collect(),
        );
        let tau_rep = Matrix::from_columns(np * np, tau.columns().map(|q| self.relative.section(f, q)).collect());
        Ok(CanonicalRight { matrix, inverse, tau, tau_rep })
    }
}

/// `can_R` with its inverse and the translation map.
#[derive(Debug, Clone)]
pub struct CanonicalRight<F: Field> {
    pub matrix: Matrix<F::Elem>,
    pub inverse: Matrix<F::Elem>,
    /// `τ: C → P⊗_B P` in quotient coordinates.
    pub tau: Matrix<F::Elem>,
    /// `τ` composed with the section, as a map `C → P⊗P`.
    pub tau_rep: Matrix<F::Elem>,
}

/// The derived entwining `ψ(c⊗p) = can_R(τ(c)p)` and its inverse.
#[derive(Debug, Clone)]
pub struct Entwining<F: Field> {
    pub psi: Matrix<F::Elem>,
    pub inverse: Matrix<F::Elem>,
}

impl<F: Field> Entwining<F> {
    pub fn derive(ext: &Extension<F>, can: &CanonicalRight<F>) -> Result<Self> {
        let f = ext.field();
        let (np, nc) = (ext.np(), ext.nc());
        let mut cols = Vec::with_capacity(nc * np);
        for c in 0..nc {
            for p in 0..np {
                let rep = apply_leg(f, can.tau_rep.column(c), &[np, np], 1, ext.algebra().right_basis(p));
                cols.push(ext.can_lift(&rep));
            }
        }
        let psi = Matrix::from_columns(np * nc, cols);
        let inverse = invert(f, &psi).map_err(|e| match e {
            LinalgError::NotBijective { rows, rank, .. } => {
                Error::failed("entwining bijectivity", format!("ψ has rank {rank} < {rows}"))
            }
            other => other.into(),
        })?;
        Ok(Self { psi, inverse })
    }

    /// The four entwining axioms on all basis tuples.
    pub fn axiom_violations(&self, ext: &Extension<F>) -> Vec<String> {
        let f = ext.field();
        let (np, nc) = (ext.np(), ext.nc());
        let a = ext.algebra();
        let coalg = &ext.comodule_algebra().coalgebra;
        let cl = |c: usize| coalg.space().label(c).to_string();
        let pl = |p: usize| a.space().label(p).to_string();
        let mut out = Vec::new();
        for c in 0..nc {
            let ec = unit_vector(f, nc, c);
            for p in 0..np {
                let psi_cp = self.psi.column(c * np + p);
                for q in 0..np {
                    let lhs = self.psi.apply(f, &tensor_vec(f, &ec, a.mul_basis(p, q)));
                    let step = tensor_vec(f, psi_cp, &unit_vector(f, np, q));
                    let step = apply_leg(f, &step, &[np, nc * np], 1, &self.psi);
                    let rhs = ext.mul_legs(&step, &[np, np, nc], 0);
                    if lhs != rhs {
                        out.push(format!("ψ is not multiplicative on {}⊗{}⊗{}", cl(c), pl(p), pl(q)));
                    }
                }
                let lhs = apply_leg(f, psi_cp, &[np, nc], 1, coalg.comul_matrix());
                let delta = tensor_vec(f, coalg.comul_matrix().column(c), &unit_vector(f, np, p));
                let step = apply_leg(f, &delta, &[nc, nc * np], 1, &self.psi);
                let rhs = apply_leg(f, &step, &[nc * np, nc], 0, &self.psi);
                if lhs != rhs {
                    out.push(format!("ψ is not compatible with Δ on {}⊗{}", cl(c), pl(p)));
                }
                let lhs = apply_leg(f, psi_cp, &[np, nc], 1, coalg.counit_matrix());
                let mut rhs = unit_vector(f, np, p);
                let eps = coalg.counit(&ec);
                rhs.iter_mut().for_each(|x| *x = f.mul(x, &eps));
                if lhs != rhs {
                    out.push(format!("ψ is not compatible with ε on {}⊗{}", cl(c), pl(p)));
                }
            }
            let lhs = self.psi.apply(f, &tensor_vec(f, &ec, a.unit()));
            if lhs != tensor_vec(f, a.unit(), &ec) {
                out.push(format!("ψ({}⊗1) ≠ 1⊗{}", cl(c), cl(c)));
            }
        }
        out
    }

    /// Condition (3): `e` is group-like and `Δ_P(p) = ψ(e⊗p)` for all `p`.
    pub fn check_coaugmentation(&self, ext: &Extension<F>, e: &[F::Elem]) -> Result<()> {
        let f = ext.field();
        let coalg = &ext.comodule_algebra().coalgebra;
        if !coalg.is_grouplike(e) {
            return Err(Error::failed("co-augmentation", "e is not group-like"));
        }
        let np = ext.np();
        for p in 0..np {
            let image = self.psi.apply(f, &tensor_vec(f, e, &unit_vector(f, np, p)));
            if image != ext.comodule_algebra().coaction.column(p) {
                return Err(Error::failed(
                    "co-augmentation",
                    format!("Δ_P({0}) ≠ ψ(e⊗{0})", ext.algebra().space().label(p)),
                ));
            }
        }
        Ok(())
    }
}

/// The left coaction `_PΔ(p) = ψ^{-1}(p⊗e)` and `can_L`.
#[derive(Debug, Clone)]
pub struct LeftStructures<F: Field> {
    /// `(dim C · dim P) × dim P`.
    pub coaction: Matrix<F::Elem>,
    pub can_l: Matrix<F::Elem>,
    pub can_l_inverse: Matrix<F::Elem>,
}

impl<F: Field> LeftStructures<F> {
    pub fn build(ext: &Extension<F>, can: &CanonicalRight<F>, psi: &Entwining<F>, e: &[F::Elem]) -> Result<Self> {
        let f = ext.field();
        let (np, nc) = (ext.np(), ext.nc());
        let cols = (0..np).map(|p| psi.inverse.apply(f, &tensor_vec(f, &unit_vector(f, np, p), e))).collect();
        let coaction = Matrix::from_columns(nc * np, cols);
        let comodule = LeftComodule::<F> { space: ext.algebra().space().clone(), coaction: coaction.clone() };
        let report = comodule.validate(&ext.comodule_algebra().coalgebra);
        if !report.is_ok() {
            return Err(Error::contradiction("left coaction", report.violations.join("; ")));
        }
        let lift = |v: &[F::Elem]| {
            let y = apply_leg(f, v, &[np, np], 0, &coaction);
            ext.mul_legs(&y, &[nc, np, np], 1)
        };
        let rel = ext.relative_tensor();
        for (k, r) in rel.relation_basis().iter().enumerate() {
            if !crate::linalg::is_zero_vec(f, &lift(r)) {
                return Err(Error::contradiction("can_L", format!("does not vanish on relation {k} of P⊗_B P")));
            }
        }
        let nq = rel.dim();
        let can_l = Matrix::from_columns(nc * np, (0..nq).map(|k| lift(&rel.section(f, &unit_vector(f, nq, k)))).collect());
        let can_l_inverse = invert(f, &can_l).map_err(|e| match e {
            LinalgError::NotBijective { rows, rank, .. } => {
                Error::failed("left Galois condition", format!("can_L has rank {rank} < {rows}"))
            }
            other => other.into(),
        })?;
        for c in 0..nc {
            let x = can_l_inverse.apply(f, &tensor_vec(f, &unit_vector(f, nc, c), ext.algebra().unit()));
            if x != can.tau.column(c) {
                return Err(Error::contradiction(
                    "translation map",
                    format!("can_L^-1({}⊗1) ≠ τ({0})", ext.comodule_algebra().coalgebra.space().label(c)),
                ));
            }
        }
        Ok(Self { coaction, can_l, can_l_inverse })
    }
}

/// An extension that satisfies conditions (1)-(3), with every derived map.
#[derive(Debug, Clone)]
pub struct Principal<F: Field> {
    pub ext: Extension<F>,
    pub e: Vec<F::Elem>,
    pub can: CanonicalRight<F>,
    pub psi: Entwining<F>,
    pub left: LeftStructures<F>,
}

impl<F: Field> Principal<F> {
    /// Runs conditions (1)-(3) and the left-handed constructions.
    pub fn new(ext: Extension<F>, e: Vec<F::Elem>) -> Result<Self> {
        let can = ext.check_galois()?;
        let psi = Entwining::derive(&ext, &can)?;
        let violations = psi.axiom_violations(&ext);
        if !violations.is_empty() {
            return Err(Error::contradiction("entwining axioms", violations.join("; ")));
        }
        psi.check_coaugmentation(&ext, &e)?;
        let left = LeftStructures::build(&ext, &can, &psi, &e)?;
        Ok(Self { ext, e, can, psi, left })
    }

    pub fn field(&self) -> &F {
        self.ext.field()
    }

    /// `τ(c)` as a representative in `P⊗P`.
    pub fn tau_rep(&self, c: usize) -> &[F::Elem] {
        self.can.tau_rep.column(c)
    }
}
