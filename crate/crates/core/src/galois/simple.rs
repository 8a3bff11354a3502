//! Characters `B → k` of a commutative algebra, found by splitting
//! idempotents along generalized eigenspaces of multiplication operators.

use crate::field::Field;
use crate::linalg::{kernel, unit_vector, Matrix, Subspace};
use crate::structures::StructureAlgebra;

/// The simple modules of `B` (one character each), or why they could not be
/// determined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Characters<E> {
    /// `chars[i][k] = χ_i(b_k)`.
    Split(Vec<Vec<E>>),
    Unavailable(String),
}

/// Monic minimal polynomial of `x` inside the ideal with unit `unit`,
/// coefficients from the constant term up.
fn minimal_polynomial<F: Field>(b: &StructureAlgebra<F>, unit: &[F::Elem], x: &[F::Elem]) -> Vec<F::Elem> {
    let fld = b.field();
    let n = b.dim();
    let mut powers = vec![unit.to_vec()];
    loop {
        let next = b.mul(powers.last().expect("nonempty"), x);
        let span = Subspace::span(fld, n, powers.clone());
        if let Some(c) = span.coords(fld, &next) {
            let mut poly: Vec<F::Elem> = c.iter().map(|v| fld.neg(v)).collect();
            poly.push(fld.one());
            return poly;
        }
        powers.push(next);
    }
}

fn eval<F: Field>(f: &F, poly: &[F::Elem], r: &F::Elem) -> F::Elem {
    poly.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, r), c))
}

fn matrix_pow<F: Field>(f: &F, m: &Matrix<F::Elem>, k: usize) -> Matrix<F::Elem> {
    (0..k).fold(Matrix::identity(f, m.rows()), |acc, _| acc.compose(f, m))
}

fn decompose<F: Field>(b: &StructureAlgebra<F>, unit: Vec<F::Elem>, ideal: Subspace<F>) -> Result<Vec<Vec<F::Elem>>, String> {
    let f = b.field();
    let d = ideal.dim();
    let mut chi = Vec::with_capacity(b.dim());
    for k in 0..b.dim() {
        let x = b.mul(&unit, &unit_vector(f, b.dim(), k));
        let lx = b.left_mult(&x);
        let op = Matrix::from_columns(
            d,
            ideal
                .basis()
                .iter()
                .map(|v| ideal.coords(f, &lx.apply(f, v)).expect("ideals are closed under multiplication"))
                .collect(),
        );
        let poly = minimal_polynomial(b, &unit, &x);
        let mut roots: Vec<F::Elem> = Vec::new();
        for r in f.root_candidates(&poly) {
            if f.is_zero(&eval(f, &poly, &r)) && !roots.contains(&r) {
                roots.push(r);
            }
        }
        let mut pieces = Vec::with_capacity(roots.len());
        let mut total = 0;
        for r in &roots {
            let shifted = op.sub(f, &Matrix::identity(f, d).scale(f, r));
            let gen = kernel(f, &matrix_pow(f, &shifted, d));
            total += gen.len();
            pieces.push(gen);
        }
        if total != d {
            return Err(format!(
                "multiplication by b{k} has eigenvalues outside the ground field (found {total} of {d} dimensions)"
            ));
        }
        if roots.len() == 1 {
            chi.push(roots.pop().expect("one root"));
            continue;
        }
        // Split the unit along the decomposition into ideals.
        let all: Vec<Vec<F::Elem>> = pieces.iter().flatten().cloned().collect();
        let joint = Subspace::from_independent(f, d, all);
        let unit_coords = ideal.coords(f, &unit).expect("unit lies in its ideal");
        let split = joint.coords(f, &unit_coords).expect("generalized eigenspaces span");
        let mut out = Vec::new();
        let mut offset = 0;
        for gen in pieces {
            let mut part = vec![f.zero(); d];
            for (c, v) in split[offset..offset + gen.len()].iter().zip(&gen) {
                crate::linalg::vec_axpy(f, &mut part, c, v);
            }
            offset += gen.len();
            let sub_unit = ideal.embed(f, &part);
            let sub_ideal = Subspace::from_independent(f, b.dim(), gen.iter().map(|v| ideal.embed(f, v)).collect());
            out.extend(decompose(b, sub_unit, sub_ideal)?);
        }
        return Ok(out);
    }
    Ok(vec![chi])
}

/// Characters of a commutative algebra that splits over its ground field.
pub fn characters<F: Field>(b: &StructureAlgebra<F>) -> Characters<F::Elem> {
    if !b.is_commutative() {
        return Characters::Unavailable("B is not commutative".into());
    }
    let f = b.field();
    let n = b.dim();
    let whole = Subspace::from_independent(f, n, (0..n).map(|i| unit_vector(f, n, i)).collect());
    match decompose(b, b.unit().to_vec(), whole) {
        Ok(chars) => Characters::Split(chars),
        Err(why) => Characters::Unavailable(why),
    }
}
