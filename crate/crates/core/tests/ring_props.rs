mod common;

use common::*;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use vhess_core::field::{PrimeField, Rationals};
use vhess_core::linalg::{mat_vec, rank_kernel};
use vhess_core::parse::{parse_poly, print_poly};
use vhess_core::{MultiPoly, PolyMatrix};

const CASES: u32 = 128;

fn cfg() -> ProptestConfig {
    ProptestConfig { cases: CASES, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn evaluation_is_multiplicative_mod_p(
        a in sparse(3),
        b in sparse(3),
        pt in proptest::collection::vec(0u64..1_000_000, 3),
    ) {
        // denominators ≤ 6 are invertible mod p
        let fld = PrimeField::mersenne61();
        let ab = &a * &b;
        let lhs = ab.eval_mod(&fld, &pt).unwrap();
        let rhs = fld.mul_u(a.eval_mod(&fld, &pt).unwrap(), b.eval_mod(&fld, &pt).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_is_additive_and_leibniz(a in sparse(3), b in sparse(3), i in 0usize..3) {
        prop_assert_eq!((&a + &b).differentiate(i), &a.differentiate(i) + &b.differentiate(i));
        let lhs = (&a * &b).differentiate(i);
        let rhs = &(&a.differentiate(i) * &b) + &(&a * &b.differentiate(i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_relation(f in homogeneous(4, 3, 8), g in homogeneous(3, 4, 8)) {
        prop_assert_eq!(f.euler(), f.scale_int(3));
        prop_assert_eq!(g.euler(), g.scale_int(4));
    }

    #[test]
    fn kernel_vectors_are_annihilated(
        rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 5), 1..6),
    ) {
        let m: Vec<Vec<BigRational>> = rows.iter().map(|r| qs(r)).collect();
        let (rank, ker) = rank_kernel(&Rationals, &m, 5);
        prop_assert_eq!(rank + ker.len(), 5);
        for k in &ker {
            prop_assert!(mat_vec(&Rationals, &m, k).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn triangular_determinant_is_the_diagonal_product(
        entries in proptest::collection::vec(homogeneous(3, 1, 3), 10),
    ) {
        let mut rows = vec![vec![MultiPoly::zero(3); 4]; 4];
        let mut it = entries.into_iter();
        for i in 0..4 {
            for j in i..4 {
                rows[i][j] = it.next().unwrap();
            }
        }
        let diag = (0..4).fold(MultiPoly::one(3), |acc, i| &acc * &rows[i][i]);
        let m = PolyMatrix::from_rows(rows).unwrap();
        prop_assert_eq!(m.det_symbolic().unwrap(), diag);
    }

    #[test]
    fn pfaffian_squares_to_determinant(
        size in prop::sample::select(vec![2usize, 4, 6]),
        upper in proptest::collection::vec(homogeneous(2, 1, 2), 15),
    ) {
        let mut rows = vec![vec![MultiPoly::zero(2); size]; size];
        let mut it = upper.into_iter();
        for i in 0..size {
            for j in i + 1..size {
                let e = it.next().unwrap();
                rows[j][i] = -&e;
                rows[i][j] = e;
            }
        }
        let m = PolyMatrix::from_rows(rows).unwrap();
        let pf = m.pfaffian().unwrap();
        prop_assert_eq!(&pf * &pf, m.det_symbolic().unwrap());
    }

    #[test]
    fn linear_substitution_inverts(
        f in homogeneous(3, 3, 6),
        u in proptest::collection::vec(-3i64..=3, 3),
    ) {
        // unipotent T and its explicit inverse
        let t = vec![qs(&[1, u[0], u[1]]), qs(&[0, 1, u[2]]), qs(&[0, 0, 1])];
        let a = u[0] * u[2] - u[1];
        let t_inv = vec![qs(&[1, -u[0], a]), qs(&[0, 1, -u[2]]), qs(&[0, 0, 1])];
        let g = f.substitute_linear(&t).unwrap();
        prop_assert_eq!(g.substitute_linear(&t_inv).unwrap(), f);
    }

    #[test]
    fn print_then_parse_round_trips(f in sparse(4)) {
        let text = print_poly(&f);
        prop_assert_eq!(parse_poly(&text, Some(4)).unwrap().poly, f);
    }

    #[test]
    fn grammar_strings_parse(src in expr(3)) {
        prop_assert!(parse_poly(&src, None).is_ok(), "{}", src);
    }

    #[test]
    fn arbitrary_input_never_panics(src in "[ -~\\n]{0,40}") {
        let _ = parse_poly(&src, None);
    }
}

/// Strings derivable from the grammar, with nonzero denominators and small
/// exponents.
fn expr(depth: u32) -> BoxedStrategy<String> {
    let coeff = (any::<bool>(), 0u32..50, proptest::option::of(1u32..9)).prop_map(|(neg, n, d)| {
        let s = if neg { "-" } else { "" };
        match d {
            Some(d) => format!("{s}{n}/{d}"),
            None => format!("{s}{n}"),
        }
    });
    let var = (0u32..6, proptest::option::of(0u32..4)).prop_map(|(i, e)| match e {
        Some(e) => format!("x{i}^{e}"),
        None => format!("x{i}"),
    });
    let leaf = prop_oneof![coeff, var].boxed();
    leaf.prop_recursive(depth, 24, 4, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone(), prop::sample::select(vec![" + ", " - ", "*", " * "]))
                .prop_map(|(a, b, op)| format!("{a}{op}{b}")),
            inner.clone().prop_map(|a| format!("({a})")),
            inner.prop_map(|a| format!("-({a})")),
        ]
    })
    .boxed()
}
