//! Polar map, polar hypersurfaces, relations among the partial derivatives,
//! the Gordan–Noether map and restriction to hyperplanes.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{usage, Error, Result};
use crate::field::{PrimeField, Rationals};
use crate::hessian::{hessian_matrix, Sampling};
use crate::linalg::{self, LinearSubspace, ProjPoint};
use crate::poly::{ModPoly, Monomial, MultiPoly};
use crate::rng;

/// `(∂f/∂x0(p) : … : ∂f/∂xN(p))`.
pub fn polar_map_eval(f: &MultiPoly, p: &ProjPoint) -> Result<ProjPoint> {
    let g: Vec<BigRational> = f.gradient().iter().map(|d| d.eval(p.coords())).collect();
    ProjPoint::new(g).ok_or_else(|| {
        Error::BaseLocus(format!("all partial derivatives vanish at {p}"))
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Polar {
    /// `(Σ pᵢ ∂ᵢ)^{d−s} f`.
    pub poly: MultiPoly,
    /// The polar is all of projective space.
    pub is_zero: bool,
}

/// Degree-`s` polar of `V(f)` with respect to `p`, for `1 ≤ s ≤ d − 1`.
pub fn polar_hypersurface(f: &MultiPoly, p: &ProjPoint, s: u32) -> Result<Polar> {
    let d = f
        .homogeneous_degree()
        .ok_or_else(|| usage("polar hypersurfaces need a homogeneous form"))?;
    if s < 1 || s + 1 > d {
        return Err(usage(format!("polar degree {s} outside 1..={}", d.saturating_sub(1))));
    }
    if p.len() != f.nvars() {
        return Err(usage("point and polynomial have different dimensions"));
    }
    let poly = f.directional_power(p.coords(), d - s);
    Ok(Polar {
        is_zero: poly.is_zero(),
        poly,
    })
}

/// `Sing Q_p`: the kernel of `Hess f` evaluated at `p`.
pub fn polar_quadric_sing(f: &MultiPoly, p: &ProjPoint) -> Result<LinearSubspace> {
    let h = hessian_matrix(f).eval(p.coords());
    if crate::polymat::is_zero_matrix(&h) {
        return Err(Error::Degenerate(format!("the hessian vanishes at {p}")));
    }
    let n = f.nvars();
    let (_, ker) = linalg::rank_kernel(&Rationals, &h, n);
    Ok(LinearSubspace::span_of(n, &ker))
}

/// Relations of the lowest degree found among the partial derivatives.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationBasis {
    /// Degree of the relations, `None` when nothing was found.
    pub degree: Option<u32>,
    /// Forms in `y0, …, yN` (reduced echelon basis, primitive integer rows).
    pub basis: Vec<MultiPoly>,
    /// No relation exists in lower degree.
    pub minimal: bool,
    pub searched_up_to: u32,
}

impl RelationBasis {
    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn printed(&self) -> Vec<String> {
        self.basis.iter().map(crate::parse::print_poly_y).collect()
    }
}

/// `g(∂f/∂x0, …, ∂f/∂xN)` as an exact polynomial.
pub fn compose_with_gradient(g: &MultiPoly, f: &MultiPoly) -> MultiPoly {
    g.compose(&f.gradient())
}

fn monomial_values(fld: &PrimeField, y: &[u64], monos: &[Monomial]) -> Vec<u64> {
    monos
        .iter()
        .map(|m| {
            m.exponents()
                .iter()
                .zip(y)
                .fold(1u64, |acc, (&e, &v)| fld.mul_u(acc, fld.pow_u(v, e as u64)))
        })
        .collect()
}

/// Kernel candidates for degree-`e` relations computed over GF(p), lifted to ℚ
/// by rational reconstruction. `None` when reconstruction fails.
fn relation_candidates(
    grad: &[ModPoly],
    monos: &[Monomial],
    fld: &PrimeField,
    seed: u64,
    extra: usize,
) -> Option<Vec<Vec<BigRational>>> {
    let n = grad.len();
    let m = monos.len();
    let rows: Vec<Vec<u64>> = (0..m + extra)
        .map(|j| {
            let mut r = rng::stream(seed, j as u64);
            let x = rng::point_mod(&mut r, fld, n);
            let y: Vec<u64> = grad.iter().map(|g| g.eval(&x)).collect();
            monomial_values(fld, &y, monos)
        })
        .collect();
    let (_, ker) = linalg::rank_kernel(fld, &rows, m);
    if ker.is_empty() {
        return Some(Vec::new());
    }
    // echelon basis of the kernel: rows in RREF, so reconstruction sees the
    // canonical (small) coefficients
    let mut k = ker;
    let piv = linalg::rref(fld, &mut k);
    k.truncate(piv.len());
    k.iter()
        .map(|v| v.iter().map(|&a| fld.rational_reconstruct(a)).collect())
        .collect()
}

/// Lowest-degree relations `g` with `g(∇f) ≡ 0`, searching degrees
/// `1..=max_degree`. Candidates come from evaluation over GF(p) and are
/// verified symbolically before being returned.
pub fn find_relations(f: &MultiPoly, max_degree: u32, opts: &Sampling) -> Result<RelationBasis> {
    if max_degree < 1 {
        return Err(usage("relation search needs max_degree ≥ 1"));
    }
    let n = f.nvars();
    let grad_q = f.gradient();
    let fields = opts.fields()?;
    for e in 1..=max_degree {
        let monos = Monomial::all_of_degree(n, e);
        let mut found: Option<Vec<Vec<BigRational>>> = None;
        'attempts: for attempt in 0..4u64 {
            let fld = &fields[attempt as usize % fields.len()];
            let grad: Vec<ModPoly> = grad_q
                .iter()
                .map(|g| g.to_mod(fld))
                .collect::<Result<_>>()?;
            let seed = rng::derive_seed(opts.seed, ((e as u64) << 8) | attempt);
            let Some(cands) = relation_candidates(&grad, &monos, fld, seed, 8 + 8 * attempt as usize)
            else {
                continue;
            };
            if cands.is_empty() {
                found = Some(Vec::new());
                break;
            }
            for c in &cands {
                let g = poly_from_coeffs(n, &monos, c);
                if !compose_with_gradient(&g, f).is_zero() {
                    continue 'attempts;
                }
            }
            found = Some(cands);
            break;
        }
        let Some(cands) = found else {
            return Err(Error::Genericity(format!(
                "relation search in degree {e} did not stabilize"
            )));
        };
        if cands.is_empty() {
            continue;
        }
        let space = LinearSubspace::span_of(monos.len(), &cands);
        let basis = space
            .basis()
            .iter()
            .map(|row| {
                let c: Vec<BigRational> = row.iter().map(|a| BigRational::from_integer(a.clone())).collect();
                poly_from_coeffs(n, &monos, &c)
            })
            .collect();
        return Ok(RelationBasis {
            degree: Some(e),
            basis,
            minimal: true,
            searched_up_to: e,
        });
    }
    Ok(RelationBasis {
        degree: None,
        basis: Vec::new(),
        minimal: false,
        searched_up_to: max_degree,
    })
}

fn poly_from_coeffs(n: usize, monos: &[Monomial], c: &[BigRational]) -> MultiPoly {
    let mut g = MultiPoly::zero(n);
    for (m, a) in monos.iter().zip(c) {
        g.add_term(m.clone(), a.clone());
    }
    g
}

/// The Gordan–Noether map `ψ_g`: components `∂g/∂yᵢ(∇f)` with their common
/// monomial factor removed.
#[derive(Clone, Debug, PartialEq)]
pub struct GNMap {
    pub components: Vec<MultiPoly>,
    pub source_relation: MultiPoly,
    /// Monomial that was divided out.
    pub stripped: Monomial,
    /// All components are constant (the relation was linear: a cone).
    pub degenerate: bool,
}

impl GNMap {
    pub fn eval(&self, x: &[BigRational]) -> Vec<BigRational> {
        self.components.iter().map(|c| c.eval(x)).collect()
    }

    pub fn to_mod(&self, fld: &PrimeField) -> Result<Vec<ModPoly>> {
        self.components.iter().map(|c| c.to_mod(fld)).collect()
    }
}

pub fn gn_map_build(f: &MultiPoly, g: &MultiPoly) -> Result<GNMap> {
    if g.nvars() != f.nvars() {
        return Err(usage("relation and form use different variable counts"));
    }
    if g.is_zero() || !compose_with_gradient(g, f).is_zero() {
        return Err(Error::NotARelation);
    }
    let grad = f.gradient();
    let comps: Vec<MultiPoly> = (0..g.nvars())
        .map(|i| g.differentiate(i).compose(&grad))
        .collect();
    if comps.iter().all(MultiPoly::is_zero) {
        return Err(Error::Degenerate(
            "every component of the Gordan–Noether map vanishes".into(),
        ));
    }
    let content = comps
        .iter()
        .filter(|c| !c.is_zero())
        .map(MultiPoly::monomial_content)
        .reduce(|a, b| a.gcd(&b))
        .expect("a nonzero component");
    let components: Vec<MultiPoly> = comps
        .iter()
        .map(|c| c.div_monomial(&content).expect("content divides every component"))
        .collect();
    let degenerate = components.iter().all(MultiPoly::is_constant);
    Ok(GNMap {
        components,
        source_relation: g.clone(),
        stripped: content,
        degenerate,
    })
}

/// Outcome of checking `∇f(x + λψ(x)) = ∇f(x)` and `ψ(x + λψ(x)) ∼ ψ(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GnCheck {
    pub trials: usize,
    pub gradient_passed: usize,
    pub idempotence_passed: usize,
    /// Trials where `ψ(x) = 0` (nothing to check).
    pub skipped: usize,
}

impl GnCheck {
    pub fn all_passed(&self) -> bool {
        self.gradient_passed + self.skipped == self.trials
            && self.idempotence_passed + self.skipped == self.trials
    }
}

pub fn gn_identity_check(
    f: &MultiPoly,
    gn: &GNMap,
    trials: usize,
    seed: u64,
    fld: &PrimeField,
) -> Result<GnCheck> {
    let n = f.nvars();
    let grad: Vec<ModPoly> = f.gradient().iter().map(|g| g.to_mod(fld)).collect::<Result<_>>()?;
    let psi = gn.to_mod(fld)?;
    let mut out = GnCheck {
        trials,
        gradient_passed: 0,
        idempotence_passed: 0,
        skipped: 0,
    };
    for t in 0..trials {
        let mut r = rng::stream(seed, t as u64);
        let x = rng::point_mod(&mut r, fld, n);
        let lambda = rng::nonzero_mod(&mut r, fld);
        let px: Vec<u64> = psi.iter().map(|c| c.eval(&x)).collect();
        if px.iter().all(|&v| v == 0) {
            out.skipped += 1;
            continue;
        }
        let y: Vec<u64> = x
            .iter()
            .zip(&px)
            .map(|(&a, &b)| fld.add_u(a, fld.mul_u(lambda, b)))
            .collect();
        if grad.iter().all(|g| g.eval(&x) == g.eval(&y)) {
            out.gradient_passed += 1;
        }
        let py: Vec<u64> = psi.iter().map(|c| c.eval(&y)).collect();
        if linalg::proportional_mod(fld, &px, &py) {
            out.idempotence_passed += 1;
        }
    }
    Ok(out)
}

/// Restriction of a form to a hyperplane, in the coordinates that remain.
#[derive(Clone, Debug, PartialEq)]
pub struct Restriction {
    pub poly: MultiPoly,
    /// Variable solved for.
    pub eliminated: usize,
    /// Original index of each remaining variable.
    pub kept: Vec<usize>,
    /// Image of each original variable as a linear form in the remaining ones.
    pub chart: Vec<MultiPoly>,
}

/// Restricts `f` to `H = V(Σ hᵢ xᵢ)` by solving for the last variable with a
/// nonzero coefficient.
pub fn restrict_to_hyperplane(f: &MultiPoly, h: &[BigRational]) -> Result<Restriction> {
    let n = f.nvars();
    if h.len() != n {
        return Err(usage("hyperplane and form have different dimensions"));
    }
    let Some(k) = h.iter().rposition(|c| !c.is_zero()) else {
        return Err(usage("the zero linear form is not a hyperplane"));
    };
    let m = n - 1;
    let kept: Vec<usize> = (0..n).filter(|&i| i != k).collect();
    let mut chart = Vec::with_capacity(n);
    for i in 0..n {
        if i == k {
            let mut lin = MultiPoly::zero(m);
            for (j, &orig) in kept.iter().enumerate() {
                if !h[orig].is_zero() {
                    lin = &lin + &MultiPoly::var(m, j).scale(&(-&h[orig] / &h[k]));
                }
            }
            chart.push(lin);
        } else {
            let j = if i < k { i } else { i - 1 };
            chart.push(MultiPoly::var(m, j));
        }
    }
    let poly = f.compose(&chart);
    if poly.is_zero() {
        return Err(Error::HyperplaneInHypersurface);
    }
    Ok(Restriction {
        poly,
        eliminated: k,
        kept,
        chart,
    })
}

/// Integer coefficient vector helper.
pub fn int_vector(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&a| BigRational::from_integer(BigInt::from(a))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_poly_str};
    use num_traits::One;

    const BS: &str = "x0*x3^2 + x1*x3*x4 + x2*x4^2";

    fn p(s: &str) -> MultiPoly {
        parse_poly_str(s).unwrap()
    }

    fn pn(s: &str, n: usize) -> MultiPoly {
        parse_poly(s, Some(n)).unwrap().poly
    }

    fn pt(v: &[i64]) -> ProjPoint {
        ProjPoint::from_ints(v).unwrap()
    }

    #[test]
    fn polar_map_values() {
        let f = p(BS);
        assert_eq!(polar_map_eval(&f, &pt(&[0, 0, 0, 1, 0])).unwrap(), pt(&[1, 0, 0, 0, 0]));
        assert_eq!(polar_map_eval(&f, &pt(&[1, 1, 1, 1, 1])).unwrap(), pt(&[1, 1, 1, 3, 3]));
        assert!(matches!(
            polar_map_eval(&f, &pt(&[1, 0, 0, 0, 0])),
            Err(Error::BaseLocus(_))
        ));
    }

    #[test]
    fn polars() {
        let q = p("x0*x2 - x1^2");
        let h = polar_hypersurface(&q, &pt(&[1, 0, 0]), 1).unwrap();
        assert!(h.poly.proportional(&pn("x2", 3)));
        let f = p(BS);
        let qp = polar_hypersurface(&f, &pt(&[0, 0, 0, 1, 0]), 2).unwrap();
        assert!(qp.poly.proportional(&pn("2*x0*x3 + x1*x4", 5)));
        // x0^3 has multiplicity 3 at e1
        let c = pn("x0^3", 2);
        let z = polar_hypersurface(&c, &pt(&[0, 1]), 2).unwrap();
        assert!(z.is_zero);
        assert!(polar_hypersurface(&f, &pt(&[0, 0, 0, 1, 0]), 3).is_err());
        assert!(polar_hypersurface(&f, &pt(&[0, 0, 0, 1, 0]), 0).is_err());
    }

    #[test]
    fn singular_loci_of_polar_quadrics() {
        let f = p(BS);
        let s = polar_quadric_sing(&f, &pt(&[0, 0, 0, 1, 0])).unwrap();
        assert_eq!(s, LinearSubspace::span_of_ints(5, &[vec![0, 0, 1, 0, 0]]));
        let s = polar_quadric_sing(&f, &pt(&[3, -1, 4, 1, 5])).unwrap();
        assert_eq!(s.rank(), 1);
        let v = s.combine(&[BigRational::one()]);
        assert!(v[3].is_zero() && v[4].is_zero());
        // on the conic 4 z0 z2 = z1^2
        assert_eq!(BigRational::from_integer(4.into()) * &v[0] * &v[2], &v[1] * &v[1]);
        let cone = pn("x0*x1^2", 3);
        let s = polar_quadric_sing(&cone, &pt(&[2, 3, 5])).unwrap();
        assert!(s.contains(&LinearSubspace::span_of_ints(3, &[vec![0, 0, 1]])));
        assert!(matches!(
            polar_quadric_sing(&pn("x0^3", 2), &pt(&[0, 1])),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn relations_of_the_basic_cubic() {
        let r = find_relations(&p(BS), 2, &Sampling::default()).unwrap();
        assert_eq!(r.degree, Some(2));
        assert!(r.minimal);
        assert_eq!(r.printed(), vec!["y0*y2 - y1^2"]);
        let none = find_relations(&p("x0^3 + x1^3 + x2^3"), 3, &Sampling::default()).unwrap();
        assert!(none.is_empty());
        assert_eq!(none.degree, None);
    }

    #[test]
    fn gordan_noether_components() {
        let f = p(BS);
        let g = pn("x0*x2 - x1^2", 5);
        let gn = gn_map_build(&f, &g).unwrap();
        let expect = ["x4^2", "-2*x3*x4", "x3^2", "0", "0"];
        for (c, e) in gn.components.iter().zip(expect) {
            assert_eq!(*c, pn(e, 5));
        }
        assert!(!gn.degenerate);
        let chk = gn_identity_check(&f, &gn, 20, 1, &PrimeField::mersenne61()).unwrap();
        assert!(chk.all_passed());
        // images land in the singular locus
        let x = int_vector(&[2, -3, 5, 7, 11]);
        let y = gn.eval(&x);
        for d in f.gradient() {
            assert!(d.eval(&y).is_zero());
        }
        assert_eq!(gn_map_build(&f, &pn("x0*x1", 5)), Err(Error::NotARelation));
    }

    #[test]
    fn hyperplane_restrictions() {
        let f = p("x0^3 + x1^3 + x2^3");
        let r = restrict_to_hyperplane(&f, &int_vector(&[0, 0, 1])).unwrap();
        assert_eq!(r.poly, pn("x0^3 + x1^3", 2));
        let g = p("x0*x1^2 + x0*x2^2");
        assert_eq!(
            restrict_to_hyperplane(&g, &int_vector(&[1, 0, 0])),
            Err(Error::HyperplaneInHypersurface)
        );
    }
}
