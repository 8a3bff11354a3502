use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::tensor::{apply_leg, tensor_vec};
use crate::linalg::{seeded_random_vector, solve_affine_family, unit_vector, LinalgError, Matrix};

use super::Principal;

/// A strong connection `ℓ: C → P⊗P`, column `c` being `ℓ(c)`.
#[derive(Debug, Clone)]
pub struct StrongConnection<F: Field> {
    pub matrix: Matrix<F::Elem>,
}

/// `s: P → B⊗P ⊆ P⊗P`, column `p` being `s(p)`.
#[derive(Debug, Clone)]
pub struct Splitting<F: Field> {
    pub matrix: Matrix<F::Elem>,
}

impl<F: Field> PartialEq for StrongConnection<F> {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl<F: Field> PartialEq for Splitting<F> {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

/// The affine space of strong connections.
#[derive(Debug, Clone)]
pub struct ConnectionSpace<F: Field> {
    /// The deterministic solution (free parameters zero).
    pub particular: StrongConnection<F>,
    /// Flattened directions, column-major like the connection matrix.
    pub directions: Vec<Vec<F::Elem>>,
    rows: usize,
}

fn flatten<E: Clone>(m: &Matrix<E>) -> Vec<E> {
    m.columns().flat_map(|c| c.iter().cloned()).collect()
}

fn unflatten<E: Clone>(rows: usize, v: &[E]) -> Matrix<E> {
    Matrix::from_columns(rows, v.chunks(rows.max(1)).map(<[E]>::to_vec).collect())
}

impl<F: Field> ConnectionSpace<F> {
    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    /// A pseudo-random point: the particular solution plus seeded
    /// coefficients on the directions.
    pub fn sample(&self, f: &F, seed: u64) -> StrongConnection<F> {
        let coeffs = seeded_random_vector(f, self.dim(), seed);
        let mut x = flatten(&self.particular.matrix);
        for (c, d) in coeffs.iter().zip(&self.directions) {
            crate::linalg::vec_axpy(f, &mut x, c, d);
        }
        StrongConnection { matrix: unflatten(self.rows, &x) }
    }

    /// A connection different from the particular one, when the space has
    /// positive dimension.
    pub fn second(&self, f: &F, seed: u64) -> Option<StrongConnection<F>> {
        if self.dim() == 0 {
            return None;
        }
        (1..=16)
            .map(|k| self.sample(f, seed.wrapping_add(k)))
            .find(|l| *l != self.particular)
            .or_else(|| {
                let mut x = flatten(&self.particular.matrix);
                crate::linalg::vec_axpy(f, &mut x, &f.one(), &self.directions[0]);
                Some(StrongConnection { matrix: unflatten(self.rows, &x) })
            })
    }
}

impl<F: Field> Principal<F> {
    fn connection_residual(&self, flat: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let (np, nc) = (self.ext.np(), self.ext.nc());
        let ell = unflatten(np * np, flat);
        let coalg = &self.ext.comodule_algebra().coalgebra;
        let coaction = &self.ext.comodule_algebra().coaction;
        let mut out = Vec::new();
        for c in 0..nc {
            let lc = ell.column(c);
            let dc = coalg.comul_matrix().column(c);
            let right = apply_leg(f, lc, &[np, np], 1, coaction);
            let right_ref = apply_leg(f, dc, &[nc, nc], 0, &ell);
            out.extend(crate::linalg::vec_sub(f, &right, &right_ref));
            let left = apply_leg(f, lc, &[np, np], 0, &self.left.coaction);
            let left_ref = apply_leg(f, dc, &[nc, nc], 1, &ell);
            out.extend(crate::linalg::vec_sub(f, &left, &left_ref));
        }
        out.extend(ell.apply(f, &self.e));
        out
    }

    /// Solves the four lifting conditions. `ℓ(c)` is parametrised as
    /// `τ(c)` plus a combination of the relations of `P⊗_B P`, which makes
    /// `π_B∘ℓ = τ` hold identically.
    pub fn solve_strong_connection(&self) -> Result<ConnectionSpace<F>> {
        let f = self.field();
        let (np, nc) = (self.ext.np(), self.ext.nc());
        let n2 = np * np;
        let base = flatten(&self.can.tau_rep);
        let relations = self.ext.relative_tensor().relation_basis();
        let mut directions = Vec::with_capacity(nc * relations.len());
        for c in 0..nc {
            for r in relations {
                let mut d = vec![f.zero(); nc * n2];
                d[c * n2..(c + 1) * n2].clone_from_slice(r);
                directions.push(d);
            }
        }
        let mut target = vec![f.zero(); 2 * nc * n2 * nc];
        let unit = self.ext.algebra().unit();
        target.extend(tensor_vec(f, unit, unit));
        let sol = solve_affine_family(f, &base, &directions, |x| self.connection_residual(x), &target).map_err(|e| match e {
            LinalgError::Inconsistent { equations, unknowns, rank, augmented_rank } => Error::infeasible(
                "strong connection",
                format!("{equations} equations in {unknowns} unknowns, rank {rank}, augmented rank {augmented_rank}"),
            ),
            other => other.into(),
        })?;
        Ok(ConnectionSpace {
            particular: StrongConnection { matrix: unflatten(n2, &sol.particular) },
            directions: sol.directions,
            rows: n2,
        })
    }

    /// Direct check of the four conditions on every basis element of `C`.
    pub fn connection_violations(&self, ell: &StrongConnection<F>) -> Vec<String> {
        let f = self.field();
        let (np, nc) = (self.ext.np(), self.ext.nc());
        let coalg = &self.ext.comodule_algebra().coalgebra;
        let coaction = &self.ext.comodule_algebra().coaction;
        let rel = self.ext.relative_tensor();
        let m = &ell.matrix;
        let mut out = Vec::new();
        for c in 0..nc {
            let label = coalg.space().label(c);
            let lc = m.column(c);
            if rel.project(f, lc) != self.can.tau.column(c) {
                out.push(format!("π_B(ℓ({label})) ≠ τ({label})"));
            }
            let dc = coalg.comul_matrix().column(c);
            if apply_leg(f, lc, &[np, np], 1, coaction) != apply_leg(f, dc, &[nc, nc], 0, m) {
                out.push(format!("ℓ is not right colinear at {label}"));
            }
            if apply_leg(f, lc, &[np, np], 0, &self.left.coaction) != apply_leg(f, dc, &[nc, nc], 1, m) {
                out.push(format!("ℓ is not left colinear at {label}"));
            }
        }
        let unit = self.ext.algebra().unit();
        if m.apply(f, &self.e) != tensor_vec(f, unit, unit) {
            out.push("ℓ(e) ≠ 1⊗1".into());
        }
        out
    }

    /// `s(p) = p_(0) ℓ(p_(1))`.
    pub fn connection_to_splitting(&self, ell: &StrongConnection<F>) -> Splitting<F> {
        let f = self.field();
        let (np, nc) = (self.ext.np(), self.ext.nc());
        let coaction = &self.ext.comodule_algebra().coaction;
        let cols = (0..np)
            .map(|p| {
                let y = apply_leg(f, coaction.column(p), &[np, nc], 1, &ell.matrix);
                self.ext.mul_legs(&y, &[np, np, np], 0)
            })
            .collect();
        Splitting { matrix: Matrix::from_columns(np * np, cols) }
    }

    /// `ℓ(c) = c^{[1]} s(c^{[2]})`, evaluated on the section representative of `τ(c)`.
    pub fn splitting_to_connection(&self, s: &Splitting<F>) -> StrongConnection<F> {
        let f = self.field();
        let (np, nc) = (self.ext.np(), self.ext.nc());
        let cols = (0..nc)
            .map(|c| {
                let y = apply_leg(f, self.tau_rep(c), &[np, np], 1, &s.matrix);
                self.ext.mul_legs(&y, &[np, np, np], 0)
            })
            .collect();
        StrongConnection { matrix: Matrix::from_columns(np * np, cols) }
    }

    /// Unital, image in `B⊗P`, left `B`-linear, right colinear, splits the product.
    pub fn splitting_violations(&self, s: &Splitting<F>) -> Vec<String> {
        let f = self.field();
        let (np, nc) = (self.ext.np(), self.ext.nc());
        let a = self.ext.algebra();
        let coaction = &self.ext.comodule_algebra().coaction;
        let proj_b = self.ext.b_complement().projection_matrix(f);
        let m = &s.matrix;
        let mut out = Vec::new();
        let unit = a.unit();
        if m.apply(f, unit) != tensor_vec(f, unit, unit) {
            out.push("s(1) ≠ 1⊗1".into());
        }
        for p in 0..np {
            let label = a.space().label(p);
            let sp = m.column(p);
            if !crate::linalg::is_zero_vec(f, &apply_leg(f, sp, &[np, np], 0, &proj_b)) {
                out.push(format!("s({label}) is not in B⊗P"));
            }
            for (k, b) in self.ext.coinvariants().basis().iter().enumerate() {
                let lhs = m.apply(f, &a.mul(b, &unit_vector(f, np, p)));
                let rhs = apply_leg(f, sp, &[np, np], 0, &a.left_mult(b));
                if lhs != rhs {
                    out.push(format!("s is not left B-linear on b{k}·{label}"));
                }
            }
            let lhs = apply_leg(f, coaction.column(p), &[np, nc], 0, m);
            let rhs = apply_leg(f, sp, &[np, np], 1, coaction);
            if lhs != rhs {
                out.push(format!("s is not right colinear at {label}"));
            }
            if a.mul_matrix().apply(f, sp) != unit_vector(f, np, p) {
                out.push(format!("mul∘s({label}) ≠ {label}"));
            }
        }
        out
    }
}
