//! Leg-wise operations on flattened tensors.
//!
//! A tensor is a flat vector plus the list of leg dimensions (row-major).
//! Applying `f ⊗ id ⊗ ...` never materialises the Kronecker matrix; a map
//! between merged legs (such as a multiplication `P⊗P → P`) is applied by
//! passing the merged dimension as a single leg.

use crate::field::Field;

use super::Matrix;

fn product(dims: &[usize]) -> usize {
    dims.iter().product()
}

/// Applies `map` to leg `leg` of `v`. The leg's dimension must equal
/// `map.cols()`; in the output it becomes `map.rows()`.
pub fn apply_leg<F: Field>(f: &F, v: &[F::Elem], dims: &[usize], leg: usize, map: &Matrix<F::Elem>) -> Vec<F::Elem> {
    assert_eq!(v.len(), product(dims), "apply_leg: tensor size");
    assert_eq!(dims[leg], map.cols(), "apply_leg: leg dimension");
    let outer = product(&dims[..leg]);
    let inner = product(&dims[leg + 1..]);
    let (rin, rout) = (map.cols(), map.rows());
    let mut out = vec![f.zero(); outer * rout * inner];
    for o in 0..outer {
        for j in 0..rin {
            let col = map.column(j);
            for t in 0..inner {
                let x = &v[(o * rin + j) * inner + t];
                if f.is_zero(x) {
                    continue;
                }
                for (i, a) in col.iter().enumerate() {
                    f.mul_add_assign(&mut out[(o * rout + i) * inner + t], a, x);
                }
            }
        }
    }
    out
}

/// Applies a map to `count` consecutive legs starting at `leg`, treating them
/// as one merged leg.
pub fn apply_legs<F: Field>(
    f: &F,
    v: &[F::Elem],
    dims: &[usize],
    leg: usize,
    count: usize,
    map: &Matrix<F::Elem>,
) -> Vec<F::Elem> {
    let mut merged: Vec<usize> = dims[..leg].to_vec();
    merged.push(product(&dims[leg..leg + count]));
    merged.extend_from_slice(&dims[leg + count..]);
    apply_leg(f, v, &merged, leg, map)
}

/// Reorders legs: output leg `k` is input leg `perm[k]`.
pub fn permute_legs<F: Field>(f: &F, v: &[F::Elem], dims: &[usize], perm: &[usize]) -> Vec<F::Elem> {
    assert_eq!(perm.len(), dims.len(), "permute_legs: arity");
    let out_dims: Vec<usize> = perm.iter().map(|&k| dims[k]).collect();
    // Stride of each input leg inside the output flattening.
    let mut out_stride = vec![0usize; dims.len()];
    let mut s = 1;
    for k in (0..perm.len()).rev() {
        out_stride[perm[k]] = s;
        s *= out_dims[k];
    }
    let mut out = vec![f.zero(); v.len()];
    let mut idx = vec![0usize; dims.len()];
    for x in v {
        if !f.is_zero(x) {
            let target: usize = idx.iter().zip(&out_stride).map(|(i, st)| i * st).sum();
            out[target] = x.clone();
        }
        for k in (0..dims.len()).rev() {
            idx[k] += 1;
            if idx[k] < dims[k] {
                break;
            }
            idx[k] = 0;
        }
    }
    out
}

/// `a ⊗ b` for flat vectors.
pub fn tensor_vec<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); a.len() * b.len()];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !f.is_zero(y) {
                out[i * b.len() + j] = f.mul(x, y);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, Rationals};
    use crate::linalg::map_tensor;
    use num_rational::BigRational;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| Rationals.from_i64(x)).collect()
    }

    #[test]
    fn apply_leg_matches_kronecker() {
        let f = Rationals;
        let a = Matrix::from_rows(2, vec![q(&[1, 2]), q(&[0, 3]), q(&[-1, 1])]);
        let b = Matrix::from_rows(3, vec![q(&[1, 0, 2]), q(&[4, -1, 0])]);
        let v = q(&[1, -2, 3, 0, 5, 7]);
        let k = map_tensor(&f, &a, &b);
        let step = apply_leg(&f, &v, &[2, 3], 0, &a);
        let both = apply_leg(&f, &step, &[3, 3], 1, &b);
        assert_eq!(both, k.apply(&f, &v));
    }

    #[test]
    fn permutation_swaps_factors() {
        let f = Rationals;
        let a = q(&[1, 2]);
        let b = q(&[3, 4, 5]);
        let ab = tensor_vec(&f, &a, &b);
        assert_eq!(permute_legs(&f, &ab, &[2, 3], &[1, 0]), tensor_vec(&f, &b, &a));
        let c = q(&[7, 11]);
        let abc = tensor_vec(&f, &ab, &c);
        let cab = tensor_vec(&f, &tensor_vec(&f, &c, &a), &b);
        assert_eq!(permute_legs(&f, &abc, &[2, 3, 2], &[2, 0, 1]), cab);
    }
}
