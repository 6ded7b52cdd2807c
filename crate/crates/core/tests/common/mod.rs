#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use vhess_core::families::{generate, Family, FamilySpec};
use vhess_core::{parse_poly_str, Monomial, MultiPoly};

pub fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn qs(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&a| q(a)).collect()
}

pub fn poly(src: &str) -> MultiPoly {
    parse_poly_str(src).unwrap()
}

/// Cubics with vanishing hessian that are not cones, by name.
pub fn corpus() -> Vec<(&'static str, MultiPoly)> {
    let fixed = |f| generate(&FamilySpec::fixed(f)).unwrap();
    vec![
        ("bs", fixed(Family::Bs)),
        ("p4-canonical", poly("x0*x3^2 + 2*x1*x3*x4 + x2*x4^2")),
        ("exdet", fixed(Family::Exdet)),
        ("concat", fixed(Family::Concat)),
        ("juxtapose", fixed(Family::Juxtapose)),
        ("det3_section", fixed(Family::Det3Section)),
        (
            "mu1-5",
            generate(&FamilySpec { n: Some(5), ..FamilySpec::fixed(Family::Mu1) }).unwrap(),
        ),
        (
            "mu1-6",
            generate(&FamilySpec { n: Some(6), ..FamilySpec::fixed(Family::Mu1) }).unwrap(),
        ),
    ]
}

/// Homogeneous form of degree `deg` in `nvars` variables with up to `max_terms`
/// terms and small integer coefficients.
pub fn homogeneous(nvars: usize, deg: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    let monos = Monomial::all_of_degree(nvars, deg);
    let k = monos.len();
    let nonzero = prop_oneof![-5i64..=-1, 1i64..=5];
    proptest::collection::vec((0..k, nonzero), 1..=max_terms)
        .prop_map(move |terms| {
            let mut f = MultiPoly::zero(nvars);
            for (i, c) in terms {
                f.add_term(monos[i].clone(), q(c));
            }
            f
        })
        .prop_filter("a nonzero form", |f| !f.is_zero())
}

/// Sparse polynomial, not necessarily homogeneous, with rational coefficients.
pub fn sparse(nvars: usize) -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec(
        (
            proptest::collection::vec(0u16..4, nvars),
            -20i64..=20,
            1i64..=6,
        ),
        0..8,
    )
    .prop_map(move |terms| {
        let mut f = MultiPoly::zero(nvars);
        for (e, a, b) in terms {
            f.add_term(Monomial::from_exponents(e), BigRational::new(a.into(), b.into()));
        }
        f
    })
}

pub fn int_point(n: usize) -> impl Strategy<Value = Vec<BigRational>> {
    proptest::collection::vec(-30i64..=30, n).prop_map(|v| qs(&v))
}
