use chern_galois::cyclic::CyclicComplex;
use chern_galois::field::{Cyclotomic, Field, PrimeField, Rationals};
use chern_galois::format::{parse, AnyDocument};
use chern_galois::linalg::{self, seeded_random_vector, seeded_rng, Matrix, TensorSpace, VectorSpace};
use chern_galois::structures::StructureAlgebra;
use chern_galois::{with_document, zoo};
use num_rational::BigRational;
use proptest::prelude::*;

fn q(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| Rationals.from_i64(x)).collect()
}

fn rationals_doc(name: &str) -> chern_galois::format::Document<Rationals> {
    match zoo::document(name).unwrap() {
        AnyDocument::Rationals(d) => d,
        _ => unreachable!(),
    }
}

fn algebras() -> Vec<(&'static str, StructureAlgebra<Rationals>)> {
    let scalars =
        StructureAlgebra::new(Rationals, VectorSpace::numbered("1", 1), Matrix::from_columns(1, vec![q(&[1])]), q(&[1]))
            .unwrap();
    let cols = vec![q(&[1, 0]), q(&[0, 0]), q(&[0, 0]), q(&[0, 1])];
    let q_times_q =
        StructureAlgebra::new(Rationals, VectorSpace::numbered("e", 2), Matrix::from_columns(2, cols), q(&[1, 1]))
            .unwrap();
    vec![
        ("Q", scalars),
        ("QxQ", q_times_q),
        ("Q[Z2]", rationals_doc("Z2GROUP").p.algebra),
        ("M2", rationals_doc("PAULI").p.algebra),
    ]
}

fn field_axioms<F: Field>(f: &F, seed: u64) {
    let mut rng = seeded_rng(seed);
    let [a, b, c] = [(); 3].map(|_| f.random_element(&mut rng));
    assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
    assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
    assert_eq!(f.add(&a, &b), f.add(&b, &a));
    assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
    assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
    assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
    assert_eq!(f.sub(&a, &b), f.add(&a, &f.neg(&b)));
    if !f.is_zero(&a) {
        assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
    } else {
        assert!(f.inv(&a).is_err());
    }
    assert_eq!(f.parse(&f.render(&a)).unwrap(), a);
}

fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-3i64..4, r * c)))
}

fn to_matrix(rows: usize, cols: usize, data: &[i64]) -> Matrix<BigRational> {
    Matrix::from_columns(rows, data.chunks(rows).map(q).collect::<Vec<_>>()[..cols].to_vec())
}

proptest! {
    #[test]
    fn field_laws_hold_exactly(seed in any::<u64>()) {
        field_axioms(&Rationals, seed);
        field_axioms(&Cyclotomic::new(3).unwrap(), seed);
        field_axioms(&Cyclotomic::new(8).unwrap(), seed);
        field_axioms(&PrimeField::new(7).unwrap(), seed);
        field_axioms(&PrimeField::new(101).unwrap(), seed);
    }

    #[test]
    fn rank_plus_nullity_is_the_column_count((rows, cols, data) in small_matrix()) {
        let a = to_matrix(rows, cols, &data);
        let ker = linalg::kernel(&Rationals, &a);
        prop_assert_eq!(linalg::rank(&Rationals, &a) + ker.len(), cols);
        for v in &ker {
            prop_assert!(linalg::is_zero_vec(&Rationals, &a.apply(&Rationals, v)));
        }
        prop_assert_eq!(linalg::rank_of(&Rationals, &ker, cols), ker.len());
    }

    #[test]
    fn affine_solutions_solve((rows, cols, data) in small_matrix(), seed in any::<u64>()) {
        let f = Rationals;
        let a = to_matrix(rows, cols, &data);
        let x0 = seeded_random_vector(&f, cols, seed);
        let b = a.apply(&f, &x0);
        let sol = linalg::solve_affine(&f, &a, &b).unwrap();
        let coeffs = seeded_random_vector(&f, sol.directions.len(), seed ^ 1);
        prop_assert_eq!(a.apply(&f, &sol.point(&f, &coeffs)), b);
    }

    #[test]
    fn inverses_are_two_sided((_, _, data) in (3usize..4, 3usize..4, prop::collection::vec(-3i64..4, 9))) {
        let f = Rationals;
        let a = to_matrix(3, 3, &data);
        match linalg::invert(&f, &a) {
            Ok(inv) => {
                prop_assert_eq!(a.compose(&f, &inv), Matrix::identity(&f, 3));
                prop_assert_eq!(inv.compose(&f, &a), Matrix::identity(&f, 3));
            }
            Err(_) => prop_assert!(linalg::rank(&f, &a) < 3),
        }
    }

    #[test]
    fn flatten_inverts_unflatten(dims in prop::collection::vec(1usize..4, 1..5), k in any::<usize>()) {
        let t = TensorSpace::new(dims.iter().map(|&d| VectorSpace::numbered("x", d)).collect());
        let flat = k % t.dim();
        prop_assert_eq!(t.flatten(&t.unflatten(flat)), flat);
    }

    #[test]
    fn cyclic_operators_square_to_zero_and_cycle(seed in any::<u64>()) {
        for (name, algebra) in algebras() {
            let cx = CyclicComplex::new(algebra).unwrap();
            for n in 0..=3 {
                let x = seeded_random_vector(&Rationals, cx.chain_dim(n), seed);
                if n >= 2 {
                    let bx = cx.hochschild_boundary(&x, n).unwrap();
                    let bbx = cx.hochschild_boundary(&bx, n - 1).unwrap();
                    prop_assert!(linalg::is_zero_vec(&Rationals, &bbx), "{} degree {}", name, n);
                }
                let mut y = x.clone();
                for _ in 0..=n {
                    y = cx.cyclic_operator(&y, n).unwrap();
                }
                prop_assert_eq!(&y, &x, "{} degree {}", name, n);
            }
        }
    }

    #[test]
    fn characters_survive_change_of_basis(upper in prop::collection::vec(-2i64..3, 3)) {
        let d = rationals_doc("Z2GROUP");
        let c = &d.p.coalgebra;
        let phi = d.corep("reg").unwrap();
        let sum = phi.direct_sum(d.corep("deg1").unwrap(), c).unwrap();
        let t = Matrix::from_columns(3, vec![q(&[1, 0, 0]), q(&[upper[0], 1, 0]), q(&[upper[1], upper[2], 1])]);
        let moved = sum.change_basis(c, &t).unwrap();
        prop_assert!(moved.validate(c).is_ok());
        prop_assert_eq!(moved.character(c), sum.character(c));
        let expected = linalg::vec_add(&Rationals, &phi.character(c), &d.corep("deg1").unwrap().character(c));
        prop_assert_eq!(sum.character(c), expected);
    }

    #[test]
    fn mutations_break_the_axioms_and_round_trip(seed in any::<u64>(), which in 0usize..6) {
        let doc = zoo::document(zoo::NAMES[which]).unwrap();
        with_document!(&doc, |d| {
            let (m, what) = zoo::mutate(d, seed).unwrap();
            prop_assert!(!m.p.validate().is_ok(), "{} survived {}", zoo::NAMES[which], what);
            let dumped = m.dump();
            prop_assert_eq!(parse(&dumped).unwrap().dump(), dumped);
        });
    }
}
