//! Finite-dimensional certificates: coflatness (`j_R`, `j_L`), the
//! conditional expectations `σ_L`, `σ_R`, projectivity splittings and
//! faithful flatness against the simple modules of `B`.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::tensor::apply_leg;
use crate::linalg::{kernel, rank_of, solve_affine_family, unit_vector, vec_sub, LinalgError, Matrix, Subspace};
use crate::structures::{LeftComodule, RightComodule, StructureCoalgebra};

use super::simple::{characters, Characters};
use super::Principal;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// `dim P⊗_B S` and `dim S⊗_B P` for one simple module `S` (a character of `B`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleCheck<E> {
    pub character: Vec<E>,
    pub right_dim: usize,
    pub left_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Flatness<E> {
    Certified(Vec<SimpleCheck<E>>),
    Unavailable(String),
}

/// Every certificate a principal extension is expected to carry.
#[derive(Debug, Clone)]
pub struct Certificates<F: Field> {
    /// `dim P × dim C`.
    pub j_right: Matrix<F::Elem>,
    pub j_left: Matrix<F::Elem>,
    /// `dim B × dim P`, values in `B`-coordinates.
    pub sigma_left: Matrix<F::Elem>,
    pub sigma_right: Matrix<F::Elem>,
    /// `(dim P · dim B) × dim P`: `B`-linear splittings of the free covers.
    pub projective_left: Matrix<F::Elem>,
    pub projective_right: Matrix<F::Elem>,
    pub flatness: Flatness<F::Elem>,
}

fn infeasible(what: String) -> impl FnOnce(LinalgError) -> Error {
    move |e| match e {
        LinalgError::Inconsistent { equations, unknowns, rank, augmented_rank } => Error::infeasible(
            what,
            format!("{equations} equations in {unknowns} unknowns, rank {rank}, augmented rank {augmented_rank}"),
        ),
        other => other.into(),
    }
}

fn unit_directions<F: Field>(f: &F, n: usize) -> Vec<Vec<F::Elem>> {
    (0..n).map(|i| unit_vector(f, n, i)).collect()
}

fn as_matrix<E: Clone>(rows: usize, flat: &[E]) -> Matrix<E> {
    Matrix::from_columns(rows, flat.chunks(rows.max(1)).map(<[E]>::to_vec).collect())
}

impl<F: Field> Principal<F> {
    fn coalgebra(&self) -> &StructureCoalgebra<F> {
        &self.ext.comodule_algebra().coalgebra
    }

    fn colinear_residual(&self, side: Side, j: &Matrix<F::Elem>) -> Vec<F::Elem> {
        let f = self.field();
        let nc = self.ext.nc();
        let mut out = Vec::new();
        for c in 0..nc {
            let dc = self.coalgebra().comul_matrix().column(c);
            let (lhs, rhs) = match side {
                Side::Right => (
                    self.ext.comodule_algebra().coaction.apply(f, j.column(c)),
                    apply_leg(f, dc, &[nc, nc], 0, j),
                ),
                Side::Left => (self.left.coaction.apply(f, j.column(c)), apply_leg(f, dc, &[nc, nc], 1, j)),
            };
            out.extend(vec_sub(f, &lhs, &rhs));
        }
        out.extend(j.apply(f, &self.e));
        out
    }

    /// A colinear `j: C → P` with `j(e) = 1`.
    pub fn solve_colinear_unital(&self, side: Side) -> Result<Matrix<F::Elem>> {
        let f = self.field();
        let (np, nc) = (self.ext.np(), self.ext.nc());
        let mut target = vec![f.zero(); nc * np * nc];
        target.extend(self.ext.algebra().unit().iter().cloned());
        let sol = solve_affine_family(
            f,
            &vec![f.zero(); np * nc],
            &unit_directions(f, np * nc),
            |x| self.colinear_residual(side, &as_matrix(np, x)),
            &target,
        )
        .map_err(infeasible(format!("{} coflatness map j", side.name())))?;
        let j = as_matrix(np, &sol.particular);
        if self.colinear_residual(side, &j) != target {
            return Err(Error::contradiction("coflatness map j", "solution does not re-substitute"));
        }
        Ok(j)
    }

    fn sigma_residual(&self, side: Side, sigma: &Matrix<F::Elem>) -> Vec<F::Elem> {
        let f = self.field();
        let np = self.ext.np();
        let a = self.ext.algebra();
        let ba = self.ext.b_algebra();
        let mut out = Vec::new();
        for (k, b) in self.ext.coinvariants().basis().iter().enumerate() {
            for p in 0..np {
                let ep = unit_vector(f, np, p);
                let (moved, act) = match side {
                    Side::Left => (a.mul(b, &ep), ba.left_basis(k)),
                    Side::Right => (a.mul(&ep, b), ba.right_basis(k)),
                };
                out.extend(vec_sub(f, &sigma.apply(f, &moved), &act.apply(f, sigma.column(p))));
            }
        }
        out.extend(sigma.apply(f, a.unit()));
        out
    }

    /// A `B`-linear `σ: P → B` with `σ(1) = 1`, in `B`-coordinates.
    pub fn solve_sigma(&self, side: Side) -> Result<Matrix<F::Elem>> {
        let f = self.field();
        let np = self.ext.np();
        let nb = self.ext.coinvariants().dim();
        let mut target = vec![f.zero(); nb * np * nb];
        target.extend(unit_vector(f, nb, 0));
        let sol = solve_affine_family(
            f,
            &vec![f.zero(); nb * np],
            &unit_directions(f, nb * np),
            |x| self.sigma_residual(side, &as_matrix(nb, x)),
            &target,
        )
        .map_err(infeasible(format!("σ_{}", if side == Side::Left { "L" } else { "R" })))?;
        let sigma = as_matrix(nb, &sol.particular);
        for (k, b) in self.ext.coinvariants().basis().iter().enumerate() {
            if sigma.apply(f, b) != unit_vector(f, nb, k) {
                return Err(Error::contradiction("σ", format!("σ(b{k}) ≠ b{k}")));
            }
        }
        Ok(sigma)
    }

    fn projective_residual(&self, side: Side, t: &Matrix<F::Elem>) -> Vec<F::Elem> {
        let f = self.field();
        let np = self.ext.np();
        let nb = self.ext.coinvariants().dim();
        let a = self.ext.algebra();
        let ba = self.ext.b_algebra();
        let basis = self.ext.coinvariants().basis();
        let mut out = Vec::new();
        for (k, b) in basis.iter().enumerate() {
            for p in 0..np {
                let ep = unit_vector(f, np, p);
                let (moved, act) = match side {
                    Side::Left => (a.mul(b, &ep), ba.left_basis(k)),
                    Side::Right => (a.mul(&ep, b), ba.right_basis(k)),
                };
                let lhs = t.apply(f, &moved);
                let rhs = apply_leg(f, t.column(p), &[np, nb], 1, act);
                out.extend(vec_sub(f, &lhs, &rhs));
            }
        }
        // The cover map sends the component (i, β) to b_β u_i (left) or u_i b_β (right).
        let cover = Matrix::from_columns(
            np,
            (0..np)
                .flat_map(|i| {
                    let ei = unit_vector(f, np, i);
                    basis
                        .iter()
                        .map(|b| match side {
                            Side::Left => a.mul(b, &ei),
                            Side::Right => a.mul(&ei, b),
                        })
                        .collect::<Vec<_>>()
                })
                .collect(),
        );
        for p in 0..np {
            out.extend(cover.apply(f, t.column(p)));
        }
        out
    }

    /// A `B`-linear section of the free cover `B^{dim P} → P`.
    pub fn solve_projective_splitting(&self, side: Side) -> Result<Matrix<F::Elem>> {
        let f = self.field();
        let np = self.ext.np();
        let nb = self.ext.coinvariants().dim();
        let mut target = vec![f.zero(); nb * np * np * nb];
        for p in 0..np {
            target.extend(unit_vector(f, np, p));
        }
        let sol = solve_affine_family(
            f,
            &vec![f.zero(); np * nb * np],
            &unit_directions(f, np * nb * np),
            |x| self.projective_residual(side, &as_matrix(np * nb, x)),
            &target,
        )
        .map_err(infeasible(format!("{} projectivity splitting", side.name())))?;
        Ok(as_matrix(np * nb, &sol.particular))
    }

    /// `P⊗_B S ≠ 0` and `S⊗_B P ≠ 0` for every simple `S`.
    pub fn faithful_flatness(&self) -> Result<Flatness<F::Elem>> {
        let f = self.field();
        let np = self.ext.np();
        let a = self.ext.algebra();
        let chars = match characters(self.ext.b_algebra()) {
            Characters::Split(c) => c,
            Characters::Unavailable(why) => return Ok(Flatness::Unavailable(why)),
        };
        let mut checks = Vec::with_capacity(chars.len());
        for chi in chars {
            let mut right = Vec::new();
            let mut left = Vec::new();
            for (k, b) in self.ext.coinvariants().basis().iter().enumerate() {
                for p in 0..np {
                    let ep = unit_vector(f, np, p);
                    let scaled: Vec<F::Elem> = ep.iter().map(|x| f.mul(x, &chi[k])).collect();
                    right.push(vec_sub(f, &a.mul(&ep, b), &scaled));
                    left.push(vec_sub(f, &a.mul(b, &ep), &scaled));
                }
            }
            let check = SimpleCheck {
                right_dim: np - rank_of(f, &right, np),
                left_dim: np - rank_of(f, &left, np),
                character: chi,
            };
            if check.right_dim == 0 || check.left_dim == 0 {
                return Err(Error::failed(
                    "faithful flatness",
                    format!(
                        "{} for the simple module with character ({})",
                        if check.right_dim == 0 { "P⊗_B S = 0" } else { "S⊗_B P = 0" },
                        check.character.iter().map(|x| f.render(x)).collect::<Vec<_>>().join(", ")
                    ),
                ));
            }
            checks.push(check);
        }
        Ok(Flatness::Certified(checks))
    }

    pub fn certify(&self) -> Result<Certificates<F>> {
        Ok(Certificates {
            j_right: self.solve_colinear_unital(Side::Right)?,
            j_left: self.solve_colinear_unital(Side::Left)?,
            sigma_left: self.solve_sigma(Side::Left)?,
            sigma_right: self.solve_sigma(Side::Right)?,
            projective_left: self.solve_projective_splitting(Side::Left)?,
            projective_right: self.solve_projective_splitting(Side::Right)?,
            flatness: self.faithful_flatness()?,
        })
    }
}

/// `V□_C W = ker(id⊗λ_W − ρ_V⊗id) ⊆ V⊗W`.
pub fn compute_cotensor<F: Field>(c: &StructureCoalgebra<F>, v: &RightComodule<F>, w: &LeftComodule<F>) -> Subspace<F> {
    let f = c.field();
    let (nv, nw) = (v.space.dim(), w.space.dim());
    let cols = (0..nv * nw)
        .map(|k| {
            let x = unit_vector(f, nv * nw, k);
            vec_sub(
                f,
                &apply_leg(f, &x, &[nv, nw], 1, &w.coaction),
                &apply_leg(f, &x, &[nv, nw], 0, &v.coaction),
            )
        })
        .collect();
    let m = Matrix::from_columns(nv * c.dim() * nw, cols);
    Subspace::from_independent(f, nv * nw, kernel(f, &m))
}
