//! Associated modules, the idempotent of a corepresentation, and the two
//! Chern characters landing in the cyclic homology of the coinvariants.

use std::collections::HashMap;

use crate::cyclic::CyclicComplex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::galois::{Principal, StrongConnection};
use crate::linalg::tensor::apply_leg;
use crate::linalg::{invert, kernel, seeded_random_vector, unit_vector, vec_add, vec_scale, vec_sub, Matrix, Subspace};
use crate::structures::{Corepresentation, StructureAlgebra};

/// Scaling of the Chern characters in degree `2n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// `(-1)^n`.
    #[default]
    Paper,
    /// `(-1)^n (2n)!/n!`.
    Textbook,
}

impl Normalization {
    fn factor<F: Field>(self, f: &F, n: usize) -> F::Elem {
        let mut k: i64 = if n.is_multiple_of(2) { 1 } else { -1 };
        if self == Normalization::Textbook {
            k *= (n as i64 + 1..=2 * n as i64).product::<i64>();
        }
        f.from_i64(k)
    }
}

impl std::str::FromStr for Normalization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Normalization::Paper),
            "textbook" => Ok(Normalization::Textbook),
            other => Err(Error::Input(format!("unknown normalization `{other}` (expected paper or textbook)"))),
        }
    }
}

/// An element of `B^{⊗(degree+1)}` in coordinates over the basis of `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicChain<E> {
    pub degree: usize,
    pub coords: Vec<E>,
}

/// `Hom^C(V, P)` with its left `B`-action.
#[derive(Debug, Clone)]
pub struct AssociatedModule<F: Field> {
    /// Colinear maps `V → P`, each `dim P × dim V`.
    pub basis: Vec<Matrix<F::Elem>>,
    /// `b_action[k]` acts on coordinates over `basis`.
    pub b_action: Vec<Matrix<F::Elem>>,
}

impl<F: Field> AssociatedModule<F> {
    pub fn dim_over_k(&self) -> usize {
        self.basis.len()
    }
}

/// An `N × N` matrix over `B`, rows and columns indexed by `μ·dim V + i`.
#[derive(Debug, Clone)]
pub struct IdempotentMatrix<F: Field> {
    pub size: usize,
    /// `entries[r][s]` in `B`-coordinates.
    pub entries: Vec<Vec<Vec<F::Elem>>>,
    pub trace: Vec<F::Elem>,
}

impl<F: Field> PartialEq for IdempotentMatrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoOutcome<E> {
    /// `witness` maps coordinates of `B^N E` to coordinates of `Hom^C(V, P)`.
    Isomorphic { witness: Matrix<E>, tried: usize },
    NotIsomorphic { module_dim: usize, associated_dim: usize, hom_dim: usize },
    Inconclusive { tried: usize },
}

/// Upper bound on the candidates tried by the deterministic fallback.
pub const ISO_SEARCH_BOUND: usize = 4096;
const SEEDED_TRIES: u64 = 8;

fn b_matmul<F: Field>(b: &StructureAlgebra<F>, x: &[Vec<Vec<F::Elem>>], y: &[Vec<Vec<F::Elem>>]) -> Vec<Vec<Vec<F::Elem>>> {
    let f = b.field();
    let n = x.len();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|s| {
                    let mut acc = vec![f.zero(); b.dim()];
                    for t in 0..n {
                        acc = vec_add(f, &acc, &b.mul(&x[r][t], &y[t][s]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Coordinates of `op(v)` for each basis vector `v` of `space`.
fn restrict<F: Field>(f: &F, space: &Subspace<F>, op: impl Fn(&[F::Elem]) -> Vec<F::Elem>) -> Result<Matrix<F::Elem>> {
    let cols = space
        .basis()
        .iter()
        .map(|v| space.coords(f, &op(v)).ok_or_else(|| Error::contradiction("module action", "the subspace is not stable")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(space.dim(), cols))
}

fn matrix_of<F: Field>(f: &F, rows: usize, cols: usize, op: impl Fn(&[F::Elem]) -> Vec<F::Elem>) -> Matrix<F::Elem> {
    let m = Matrix::from_columns(rows, (0..cols).map(|j| op(&unit_vector(f, cols, j))).collect());
    debug_assert_eq!(m.rows(), rows);
    m
}

/// Checks that `act` is a representation of `B` (unit first in the basis).
fn check_representation<F: Field>(b: &StructureAlgebra<F>, act: &[Matrix<F::Elem>], what: &str) -> Result<()> {
    let f = b.field();
    let dim = act.first().map_or(0, Matrix::rows);
    let combine = |c: &[F::Elem]| {
        c.iter().zip(act).fold(Matrix::zeros(f, dim, dim), |acc, (x, m)| acc.add(f, &m.scale(f, x)))
    };
    if combine(b.unit()) != Matrix::identity(f, dim) {
        return Err(Error::contradiction(what, "1 does not act as the identity"));
    }
    for k in 0..b.dim() {
        for l in 0..b.dim() {
            if act[k].compose(f, &act[l]) != combine(b.mul_basis(k, l)) {
                return Err(Error::contradiction(what, format!("action fails the relation b{k}·b{l}")));
            }
        }
    }
    Ok(())
}

/// Sparse tensor over basis indices.
type Sparse<E> = HashMap<Vec<usize>, E>;

fn sparse_add<F: Field>(f: &F, acc: &mut Sparse<F::Elem>, key: Vec<usize>, c: F::Elem) {
    if f.is_zero(&c) {
        return;
    }
    let slot = acc.entry(key).or_insert_with(|| f.zero());
    *slot = f.add(slot, &c);
}

fn nonzeros<F: Field>(f: &F, v: &[F::Elem]) -> Vec<(usize, F::Elem)> {
    v.iter().enumerate().filter(|(_, x)| !f.is_zero(x)).map(|(i, x)| (i, x.clone())).collect()
}

/// Applies `m` on every leg of a sparse tensor.
fn sparse_map_legs<F: Field>(f: &F, x: &Sparse<F::Elem>, m: &Matrix<F::Elem>) -> Sparse<F::Elem> {
    let cols: Vec<Vec<(usize, F::Elem)>> = m.columns().map(|c| nonzeros(f, c)).collect();
    let mut out = Sparse::new();
    for (key, c) in x {
        let mut partial: Vec<(Vec<usize>, F::Elem)> = vec![(Vec::with_capacity(key.len()), c.clone())];
        for &i in key {
            partial = partial
                .into_iter()
                .flat_map(|(k, v)| {
                    cols[i].iter().map(move |(j, y)| {
                        let mut k = k.clone();
                        k.push(*j);
                        (k, f.mul(&v, y))
                    })
                })
                .collect();
        }
        for (k, v) in partial {
            sparse_add(f, &mut out, k, v);
        }
    }
    out.retain(|_, v| !f.is_zero(v));
    out
}

fn flat_index(key: &[usize], dim: usize) -> usize {
    key.iter().fold(0, |acc, &i| acc * dim + i)
}

/// The Chern-character computations for one principal extension.
#[derive(Debug)]
pub struct Chern<'a, F: Field> {
    principal: &'a Principal<F>,
    complex: CyclicComplex<F>,
    normalization: Normalization,
}

impl<'a, F: Field> Chern<'a, F> {
    pub fn new(principal: &'a Principal<F>, normalization: Normalization) -> Result<Self> {
        let complex = CyclicComplex::new(principal.ext.b_algebra().clone())?;
        Ok(Self { principal, complex, normalization })
    }

    pub fn complex(&self) -> &CyclicComplex<F> {
        &self.complex
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    fn f(&self) -> &F {
        self.principal.field()
    }

    fn b(&self) -> &StructureAlgebra<F> {
        self.principal.ext.b_algebra()
    }

    fn nb(&self) -> usize {
        self.b().dim()
    }

    fn to_b(&self, x: &[F::Elem], what: &str) -> Result<Vec<F::Elem>> {
        self.principal
            .ext
            .coinvariants()
            .coords(self.f(), x)
            .ok_or_else(|| Error::contradiction(what, "value lies outside B"))
    }

    fn check_corep(&self, phi: &Corepresentation<F>) -> Result<()> {
        let c = &self.principal.ext.comodule_algebra().coalgebra;
        if phi.coaction().rows() != phi.dim() * c.dim() {
            return Err(Error::Input(format!("corepresentation `{}` is over a different coalgebra", phi.name)));
        }
        let v = phi.validate(c);
        if !v.is_ok() {
            return Err(Error::Input(format!("corepresentation `{}`: {}", phi.name, v.violations.join("; "))));
        }
        Ok(())
    }

    /// `Hom^C(V, P)`: the kernel of `f ↦ Δ_P∘f - (f⊗id)∘φ`.
    pub fn associated_module(&self, phi: &Corepresentation<F>) -> Result<AssociatedModule<F>> {
        self.check_corep(phi)?;
        let f = self.f();
        let ext = &self.principal.ext;
        let (np, nc, nv) = (ext.np(), ext.nc(), phi.dim());
        let coaction = &ext.comodule_algebra().coaction;
        let as_map = |x: &[F::Elem]| Matrix::from_columns(np, x.chunks(np).map(<[_]>::to_vec).collect());
        let residual = matrix_of(f, nv * np * nc, nv * np, |x| {
            let m = as_map(x);
            let mut out = Vec::with_capacity(nv * np * nc);
            for v in 0..nv {
                let lhs = coaction.apply(f, m.column(v));
                let rhs = apply_leg(f, phi.coaction().column(v), &[nv, nc], 0, &m);
                out.extend(vec_sub(f, &lhs, &rhs));
            }
            out
        });
        let space = Subspace::from_independent(f, nv * np, kernel(f, &residual));
        let algebra = ext.algebra();
        let b_action = ext
            .coinvariants()
            .basis()
            .iter()
            .map(|b| {
                let lb = algebra.left_mult(b);
                restrict(f, &space, |x| x.chunks(np).flat_map(|col| lb.apply(f, col)).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        check_representation(self.b(), &b_action, "B-action on Hom^C(V, P)")?;
        Ok(AssociatedModule { basis: space.basis().iter().map(|x| as_map(x)).collect(), b_action })
    }

    /// `E_{(μ,i)(ν,j)} = σ_L(r_μ(e_ij) u_ν)` with `r_μ(c) = Σ_b ℓ(c)[μ,b] u_b`.
    pub fn build_idempotent(
        &self,
        ell: &StrongConnection<F>,
        sigma_left: &Matrix<F::Elem>,
        phi: &Corepresentation<F>,
    ) -> Result<IdempotentMatrix<F>> {
        self.check_corep(phi)?;
        let f = self.f();
        let ext = &self.principal.ext;
        let (np, nc, nv) = (ext.np(), ext.nc(), phi.dim());
        let coeffs = phi.matrix_coeffs(nc);
        let algebra = ext.algebra();
        let n = np * nv;
        let mut entries = vec![vec![Vec::new(); n]; n];
        for (i, row) in coeffs.iter().enumerate() {
            for (j, eij) in row.iter().enumerate() {
                let l = ell.matrix.apply(f, eij);
                for mu in 0..np {
                    let r = &l[mu * np..(mu + 1) * np];
                    for nu in 0..np {
                        let x = algebra.mul(r, &unit_vector(f, np, nu));
                        entries[mu * nv + i][nu * nv + j] = sigma_left.apply(f, &x);
                    }
                }
            }
        }
        let b = self.b();
        if b_matmul(b, &entries, &entries) != entries {
            return Err(Error::contradiction("E² = E", format!("the {n}×{n} matrix of `{}` is not idempotent", phi.name)));
        }
        let trace = (0..n).fold(vec![f.zero(); b.dim()], |acc, r| vec_add(f, &acc, &entries[r][r]));
        Ok(IdempotentMatrix { size: n, entries, trace })
    }

    /// `c^{<2>} c^{<1>}` for `c = c_φ`, in `B`-coordinates.
    pub fn trace_value(&self, ell: &StrongConnection<F>, phi: &Corepresentation<F>) -> Result<Vec<F::Elem>> {
        let f = self.f();
        let ext = &self.principal.ext;
        let np = ext.np();
        let c = phi.character(&ext.comodule_algebra().coalgebra);
        let l = ell.matrix.apply(f, &c);
        let swapped = crate::linalg::tensor::permute_legs(f, &l, &[np, np], &[1, 0]);
        self.to_b(&ext.mul_legs(&swapped, &[np, np], 0), "c^{<2>}c^{<1>}")
    }

    /// Decides whether the row module `B^N E` and `Hom^C(V, P)` are isomorphic
    /// left `B`-modules, returning a verified intertwiner when one is found.
    pub fn module_iso_test(&self, e: &IdempotentMatrix<F>, a: &AssociatedModule<F>, seed: u64) -> Result<IsoOutcome<F::Elem>> {
        let f = self.f();
        let b = self.b();
        let (nb, n) = (self.nb(), e.size);
        let act_rows = |k: usize, x: &[F::Elem]| -> Vec<F::Elem> {
            x.chunks(nb).flat_map(|y| b.mul(&unit_vector(f, nb, k), y)).collect()
        };
        let spanning = e
            .entries
            .iter()
            .flat_map(|row| {
                let flat: Vec<F::Elem> = row.concat();
                (0..nb).map(move |k| act_rows(k, &flat)).collect::<Vec<_>>()
            })
            .collect::<Vec<_>>();
        let module = Subspace::span(f, n * nb, spanning);
        let act_m = (0..nb).map(|k| restrict(f, &module, |x| act_rows(k, x))).collect::<Result<Vec<_>>>()?;
        let (dm, da) = (module.dim(), a.dim_over_k());
        // T: dm → da, flattened column-major; T act_M(b) = act_A(b) T.
        let residual = matrix_of(f, nb * da * dm, da * dm, |x| {
            let t = Matrix::from_columns(da, x.chunks(da.max(1)).map(<[_]>::to_vec).collect());
            let t = if dm == 0 { Matrix::zeros(f, da, 0) } else { t };
            let mut out = Vec::new();
            for k in 0..nb {
                let d = t.compose(f, &act_m[k]).sub(f, &a.b_action[k].compose(f, &t));
                out.extend(d.columns().flat_map(|c| c.to_vec()));
            }
            out
        });
        let hom = kernel(f, &residual);
        if dm != da {
            return Ok(IsoOutcome::NotIsomorphic { module_dim: dm, associated_dim: da, hom_dim: hom.len() });
        }
        if dm == 0 {
            return Ok(IsoOutcome::Isomorphic { witness: Matrix::zeros(f, 0, 0), tried: 0 });
        }
        let to_matrix = |x: &[F::Elem]| Matrix::from_columns(da, x.chunks(da).map(<[_]>::to_vec).collect());
        let combine = |c: &[F::Elem]| c.iter().zip(&hom).fold(vec![f.zero(); da * dm], |acc, (x, h)| vec_add(f, &acc, &vec_scale(f, x, h)));
        let mut candidates: Vec<Vec<F::Elem>> =
            (0..SEEDED_TRIES).map(|t| combine(&seeded_random_vector(f, hom.len(), seed.wrapping_add(t)))).collect();
        candidates.extend(hom.iter().cloned());
        for i in 0..hom.len() {
            for j in i + 1..hom.len() {
                candidates.push(vec_add(f, &hom[i], &hom[j]));
            }
        }
        for (tried, x) in candidates.iter().take(ISO_SEARCH_BOUND).enumerate() {
            let t = to_matrix(x);
            if invert(f, &t).is_err() {
                continue;
            }
            let intertwines = (0..nb).all(|k| t.compose(f, &act_m[k]) == a.b_action[k].compose(f, &t));
            if !intertwines {
                return Err(Error::contradiction("module isomorphism", "a Hom-space element fails B-linearity"));
            }
            return Ok(IsoOutcome::Isomorphic { witness: t, tried: tried + 1 });
        }
        if hom.is_empty() {
            return Ok(IsoOutcome::NotIsomorphic { module_dim: dm, associated_dim: da, hom_dim: 0 });
        }
        Ok(IsoOutcome::Inconclusive { tried: candidates.len().min(ISO_SEARCH_BOUND) })
    }

    fn finish(&self, chain: Vec<F::Elem>, degree: usize, what: &str) -> Result<CyclicChain<F::Elem>> {
        if !self.complex.is_cyclic_cycle(&chain, degree)? {
            return Err(Error::contradiction(what, format!("the degree-{degree} chain is not a cyclic cycle")));
        }
        Ok(CyclicChain { degree, coords: chain })
    }

    /// `ch_{2n}(E)`: the normalized trace of `E^{⊗(2n+1)}`.
    pub fn chern_character(&self, e: &IdempotentMatrix<F>, n: usize) -> Result<CyclicChain<F::Elem>> {
        let f = self.f();
        let b = self.b();
        if b_matmul(b, &e.entries, &e.entries) != e.entries {
            return Err(Error::Input("the matrix is not idempotent".into()));
        }
        let (nb, size) = (self.nb(), e.size);
        // state[i0][i] ∈ B^{⊗k}: Σ E_{i0 i1}⊗…⊗E_{i_{k-1} i}.
        let mut state: Vec<Vec<Vec<F::Elem>>> = e.entries.clone();
        for _ in 1..2 * n {
            state = state
                .iter()
                .map(|row| {
                    (0..size)
                        .map(|j| {
                            let mut acc = vec![f.zero(); row[0].len() * nb];
                            for (i, x) in row.iter().enumerate() {
                                acc = vec_add(f, &acc, &crate::linalg::tensor::tensor_vec(f, x, &e.entries[i][j]));
                            }
                            acc
                        })
                        .collect()
                })
                .collect();
        }
        let len = nb.pow(2 * n as u32 + 1);
        let mut chain = vec![f.zero(); len];
        if 2 * n == 0 {
            chain = e.trace.clone();
        } else {
            for (i0, row) in state.iter().enumerate() {
                for (i, x) in row.iter().enumerate() {
                    chain = vec_add(f, &chain, &crate::linalg::tensor::tensor_vec(f, x, &e.entries[i][i0]));
                }
            }
        }
        self.finish(vec_scale(f, &self.normalization.factor(f, n), &chain), 2 * n, "ch(E)")
    }

    /// The closed-form Chern-Galois character in degree `2n`.
    pub fn chern_galois_character(
        &self,
        ell: &StrongConnection<F>,
        phi: &Corepresentation<F>,
        n: usize,
    ) -> Result<CyclicChain<F::Elem>> {
        self.check_corep(phi)?;
        let c = phi.character(&self.principal.ext.comodule_algebra().coalgebra);
        self.chg_of_element(ell, &c, n)
    }

    fn chg_of_element(&self, ell: &StrongConnection<F>, c: &[F::Elem], n: usize) -> Result<CyclicChain<F::Elem>> {
        let f = self.f();
        let ext = &self.principal.ext;
        let (np, nc) = (ext.np(), ext.nc());
        let legs = 2 * n + 1;
        let coalg = &ext.comodule_algebra().coalgebra;
        let algebra = ext.algebra();
        let comul: Vec<Vec<(usize, usize, F::Elem)>> = coalg
            .comul_matrix()
            .columns()
            .map(|col| nonzeros(f, col).into_iter().map(|(k, x)| (k / nc, k % nc, x)).collect())
            .collect();
        let lterms: Vec<Vec<(usize, usize, F::Elem)>> = ell
            .matrix
            .columns()
            .map(|col| nonzeros(f, col).into_iter().map(|(k, x)| (k / np, k % np, x)).collect())
            .collect();
        let products: Vec<Vec<Vec<(usize, F::Elem)>>> =
            (0..np).map(|i| (0..np).map(|j| nonzeros(f, algebra.mul_basis(i, j))).collect()).collect();
        // Key: [rest of the coproduct, a_1, b_m, factor_1, …, factor_{m-1}].
        let mut state: Sparse<F::Elem> = Sparse::new();
        for (k, x) in nonzeros(f, c) {
            sparse_add(f, &mut state, vec![k], x);
        }
        for m in 1..=legs {
            let mut next = Sparse::new();
            for (key, x) in &state {
                let split: Vec<(usize, Option<usize>, F::Elem)> = if m < legs {
                    comul[key[0]].iter().map(|(c1, c2, y)| (*c1, Some(*c2), f.mul(x, y))).collect()
                } else {
                    vec![(key[0], None, x.clone())]
                };
                for (c1, rest, y) in split {
                    for (a, b, z) in &lterms[c1] {
                        let coef = f.mul(&y, z);
                        let head = |a1: usize| {
                            let mut k = vec![rest.unwrap_or(0), a1, *b];
                            k.extend_from_slice(key.get(3..).unwrap_or(&[]));
                            k
                        };
                        if m == 1 {
                            sparse_add(f, &mut next, head(*a), coef);
                        } else {
                            for (p, w) in &products[key[2]][*a] {
                                let mut k = head(key[1]);
                                k.push(*p);
                                sparse_add(f, &mut next, k, f.mul(&coef, w));
                            }
                        }
                    }
                }
            }
            state = next;
        }
        // Close the cycle: factor 0 = b_{2n+1} a_1.
        let mut chain_p: Sparse<F::Elem> = Sparse::new();
        for (key, x) in &state {
            for (p, w) in &products[key[2]][key[1]] {
                let mut k = vec![*p];
                k.extend_from_slice(&key[3..]);
                sparse_add(f, &mut chain_p, k, f.mul(x, w));
            }
        }
        chain_p.retain(|_, v| !f.is_zero(v));
        let sub = ext.coinvariants();
        let chain_b = sparse_map_legs(f, &chain_p, &sub.retraction(f));
        if sparse_map_legs(f, &chain_b, &sub.inclusion()) != chain_p {
            return Err(Error::contradiction("chg", "the chain does not lie in B^{⊗(2n+1)}"));
        }
        let nb = self.nb();
        let mut chain = vec![f.zero(); nb.pow(legs as u32)];
        for (key, x) in chain_b {
            chain[flat_index(&key, nb)] = x;
        }
        self.finish(vec_scale(f, &self.normalization.factor(f, n), &chain), 2 * n, "chg")
    }

    /// `chg_{2n}` of a formal integer combination of corepresentation classes.
    pub fn chg_combination(
        &self,
        ell: &StrongConnection<F>,
        terms: &[(i64, &Corepresentation<F>)],
        n: usize,
    ) -> Result<CyclicChain<F::Elem>> {
        let f = self.f();
        let coalg = &self.principal.ext.comodule_algebra().coalgebra;
        let mut c = vec![f.zero(); coalg.dim()];
        for (k, phi) in terms {
            self.check_corep(phi)?;
            c = vec_add(f, &c, &vec_scale(f, &f.from_i64(*k), &phi.character(coalg)));
        }
        self.chg_of_element(ell, &c, n)
    }

    pub fn classes_equal(&self, x: &CyclicChain<F::Elem>, y: &CyclicChain<F::Elem>) -> Result<bool> {
        if x.degree != y.degree {
            return Err(Error::Input("classes of different degrees".into()));
        }
        self.complex.homology_class_equal(&x.coords, &y.coords, x.degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::galois::tests::{fun4, trivial, z2_principal};
    use crate::galois::{Extension, Side};
    use crate::linalg::VectorSpace;
    use crate::structures::fixtures::*;

    fn principal(p: crate::structures::ComoduleAlgebra<Rationals>, e: &[i64]) -> Principal<Rationals> {
        Principal::new(Extension::new(p).unwrap(), q(e)).unwrap()
    }

    fn one_dim(name: &str, nc: usize, c: usize) -> Corepresentation<Rationals> {
        Corepresentation::new(name, VectorSpace::numbered("v", 1), Matrix::from_columns(nc, vec![unit_vector(&Rationals, nc, c)]))
    }

    #[test]
    fn z2_associated_modules() {
        let p = z2_principal();
        let ch = Chern::new(&p, Normalization::Paper).unwrap();
        for deg in 0..2 {
            let a = ch.associated_module(&degree_corep(deg)).unwrap();
            assert_eq!(a.dim_over_k(), 1);
            // The single colinear map lands in degree `deg`.
            let m = &a.basis[0];
            assert!(Rationals.is_zero(m.get(1 - deg, 0)) && !Rationals.is_zero(m.get(deg, 0)));
        }
    }

    #[test]
    fn z2_idempotent_and_characters() {
        let p = z2_principal();
        let ch = Chern::new(&p, Normalization::Paper).unwrap();
        let ell = p.solve_strong_connection().unwrap().particular;
        let sigma = p.solve_sigma(Side::Left).unwrap();
        assert_eq!(sigma, Matrix::from_columns(1, vec![q(&[1]), q(&[0])]));
        let phi = degree_corep(1);
        let e = ch.build_idempotent(&ell, &sigma, &phi).unwrap();
        assert_eq!(e.entries, vec![vec![q(&[0]), q(&[0])], vec![q(&[0]), q(&[1])]]);
        assert_eq!(e.trace, q(&[1]));
        assert_eq!(ch.trace_value(&ell, &phi).unwrap(), q(&[1]));

        let chg0 = ch.chern_galois_character(&ell, &phi, 0).unwrap();
        assert_eq!(chg0.coords, q(&[1]));
        let chg2 = ch.chern_galois_character(&ell, &phi, 1).unwrap();
        assert_eq!(chg2.coords, q(&[-1]));
        for n in 0..2 {
            let a = ch.chern_character(&e, n).unwrap();
            let b = ch.chern_galois_character(&ell, &phi, n).unwrap();
            assert_eq!(a, b);
            assert!(ch.classes_equal(&a, &b).unwrap());
        }
        assert!(!ch.complex().is_boundary(&chg2.coords, 2).unwrap());

        let a = ch.associated_module(&phi).unwrap();
        assert!(matches!(ch.module_iso_test(&e, &a, 0).unwrap(), IsoOutcome::Isomorphic { .. }));
    }

    #[test]
    fn zero_idempotent_has_zero_character() {
        let p = z2_principal();
        let ch = Chern::new(&p, Normalization::Paper).unwrap();
        let e = IdempotentMatrix::<Rationals> { size: 2, entries: vec![vec![q(&[0]); 2]; 2], trace: q(&[0]) };
        assert_eq!(ch.chern_character(&e, 0).unwrap().coords, q(&[0]));
    }

    #[test]
    fn textbook_scaling() {
        let p = z2_principal();
        let ch = Chern::new(&p, Normalization::Textbook).unwrap();
        let ell = p.solve_strong_connection().unwrap().particular;
        // (-1)^1 · 2!/1! = -2.
        assert_eq!(ch.chern_galois_character(&ell, &degree_corep(1), 1).unwrap().coords, q(&[-2]));
    }

    #[test]
    fn trivial_corep_gives_signed_units() {
        let p = principal(fun4(), &[1, 0]);
        let ch = Chern::new(&p, Normalization::Paper).unwrap();
        let ell = p.solve_strong_connection().unwrap().particular;
        let phi = one_dim("triv", 2, 0);
        let nb = p.ext.b_algebra().dim();
        for n in 0..2usize {
            let chain = ch.chern_galois_character(&ell, &phi, n).unwrap();
            let ones = p.ext.b_algebra().unit().to_vec();
            let mut expect = ones.clone();
            for _ in 0..2 * n {
                expect = crate::linalg::tensor::tensor_vec(&Rationals, &expect, &ones);
            }
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(chain.coords, vec_scale(&Rationals, &Rationals.from_i64(sign), &expect));
            assert_eq!(chain.coords.len(), nb.pow(2 * n as u32 + 1));
        }
    }

    #[test]
    fn fun4_module_is_free_of_rank_one() {
        let p = principal(fun4(), &[1, 0]);
        let ch = Chern::new(&p, Normalization::Paper).unwrap();
        let ell = p.solve_strong_connection().unwrap().particular;
        let sigma = p.solve_sigma(Side::Left).unwrap();
        let t = one_dim("t", 2, 1);
        let a = ch.associated_module(&t).unwrap();
        assert_eq!(a.dim_over_k(), 2);
        let e = ch.build_idempotent(&ell, &sigma, &t).unwrap();
        assert_eq!(e.size, 4);
        assert_eq!(e.trace, ch.trace_value(&ell, &t).unwrap());
        let IsoOutcome::Isomorphic { witness, .. } = ch.module_iso_test(&e, &a, 3).unwrap() else { panic!() };
        assert!(invert(&Rationals, &witness).is_ok());
        for n in 0..2 {
            let x = ch.chern_character(&e, n).unwrap();
            let y = ch.chern_galois_character(&ell, &t, n).unwrap();
            assert!(ch.classes_equal(&x, &y).unwrap());
        }
    }

    #[test]
    fn mismatched_dimensions_are_not_isomorphic() {
        let p = z2_principal();
        let ch = Chern::new(&p, Normalization::Paper).unwrap();
        let ell = p.solve_strong_connection().unwrap().particular;
        let sigma = p.solve_sigma(Side::Left).unwrap();
        let e = ch.build_idempotent(&ell, &sigma, &degree_corep(1)).unwrap();
        let mut a = ch.associated_module(&degree_corep(1)).unwrap();
        a.basis.push(a.basis[0].clone());
        a.b_action = vec![Matrix::identity(&Rationals, 2)];
        assert!(matches!(ch.module_iso_test(&e, &a, 0).unwrap(), IsoOutcome::NotIsomorphic { module_dim: 1, associated_dim: 2, .. }));
    }

    #[test]
    fn combinations_are_linear() {
        let p = principal(fun4(), &[1, 0]);
        let ch = Chern::new(&p, Normalization::Paper).unwrap();
        let ell = p.solve_strong_connection().unwrap().particular;
        let (s, t) = (one_dim("s", 2, 0), one_dim("t", 2, 1));
        let coalg = &p.ext.comodule_algebra().coalgebra;
        let sum = s.direct_sum(&t, coalg).unwrap();
        for n in 0..2 {
            let zero = ch.chg_combination(&ell, &[(1, &s), (-1, &s)], n).unwrap();
            assert!(zero.coords.iter().all(|x| Rationals.is_zero(x)));
            let lhs = ch.chern_galois_character(&ell, &sum, n).unwrap();
            let rhs = ch.chg_combination(&ell, &[(1, &s), (1, &t)], n).unwrap();
            assert!(ch.classes_equal(&lhs, &rhs).unwrap());
        }
    }

    #[test]
    fn trivial_extension_idempotent_is_sigma() {
        let p = principal(trivial(), &[1]);
        let ch = Chern::new(&p, Normalization::Paper).unwrap();
        let ell = p.solve_strong_connection().unwrap().particular;
        let sigma = p.solve_sigma(Side::Left).unwrap();
        let e = ch.build_idempotent(&ell, &sigma, &one_dim("e", 1, 0)).unwrap();
        let np = p.ext.np();
        assert_eq!(e.size, np);
        for mu in 0..np {
            for nu in 0..np {
                // ℓ(e) = 1⊗1, so E_{μν} = σ_L(δ_{μ0} u_ν) with the unit first.
                let expect = if mu == 0 { sigma.column(nu).to_vec() } else { vec![Rationals.zero(); np] };
                assert_eq!(e.entries[mu][nu], expect);
            }
        }
    }
}
