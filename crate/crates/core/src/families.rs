//! Constructors for the example families: canonical forms of cubics singular
//! along a linear space, concatenation and juxtaposition, and tangent
//! hyperplane sections of the determinant and Pfaffian cubics.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand_chacha::ChaCha8Rng;

use crate::error::{usage, Error, Result};
use crate::linalg::ProjPoint;
use crate::parse::parse_poly;
use crate::poly::{Monomial, MultiPoly};
use crate::polar::restrict_to_hyperplane;
use crate::polymat::PolyMatrix;
use crate::rng;

pub const BS: &str = "x0*x3^2 + x1*x3*x4 + x2*x4^2";
pub const CONCAT: &str = "x0*x3^2 + x1*x3*x4 + x2*x4^2 + x4*x5*x7 + x6*x7^2";
pub const EXDET: &str = "x0*x4*x5 + x1*x4^2 + x2*x4*x6 + x3*x5*x6";
pub const SINGP2: &str = "x0*x3^2 + x1*x4^2 + x2*x5^2";
/// Index map sending the basic cubic onto the second block of [`CONCAT`].
pub const CONCAT_MAP: [usize; 5] = [2, 5, 6, 4, 7];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Classe1,
    Simplified,
    CanSpch,
    Mu1,
    Concat,
    Juxtapose,
    Bs,
    Det3,
    Det3Section,
    Pf6,
    Pf6Section,
    Exdet,
    Singp2,
}

impl Family {
    pub const ALL: [Family; 13] = [
        Family::Classe1,
        Family::Simplified,
        Family::CanSpch,
        Family::Mu1,
        Family::Concat,
        Family::Juxtapose,
        Family::Bs,
        Family::Det3,
        Family::Det3Section,
        Family::Pf6,
        Family::Pf6Section,
        Family::Exdet,
        Family::Singp2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Classe1 => "classe1",
            Family::Simplified => "simplified",
            Family::CanSpch => "canSPCH",
            Family::Mu1 => "mu1",
            Family::Concat => "concat",
            Family::Juxtapose => "juxtapose",
            Family::Bs => "bs",
            Family::Det3 => "det3",
            Family::Det3Section => "det3_section",
            Family::Pf6 => "pf6",
            Family::Pf6Section => "pf6_section",
            Family::Exdet => "exdet",
            Family::Singp2 => "singp2",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| usage(format!("unknown family '{s}'")))
    }
}

/// Where random-family coefficients come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficients {
    /// Consumed in order; running out is an error.
    Explicit(Vec<i64>),
    /// Uniform in `[-9, 9] \ {0}`.
    Seeded(u64),
}

impl Default for Coefficients {
    fn default() -> Self {
        Coefficients::Seeded(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    /// Projective dimension `N`.
    pub n: Option<usize>,
    /// `τ` or `σ`, depending on the family; copies for `juxtapose`.
    pub param: Option<usize>,
    pub coeffs: Coefficients,
}

impl FamilySpec {
    pub fn fixed(family: Family) -> Self {
        FamilySpec {
            family,
            n: None,
            param: None,
            coeffs: Coefficients::default(),
        }
    }
}

enum Source<'a> {
    List(&'a [i64], usize),
    Rng(ChaCha8Rng),
}

impl Source<'_> {
    fn next(&mut self) -> Result<i64> {
        match self {
            Source::List(v, i) => {
                let c = *v
                    .get(*i)
                    .ok_or_else(|| usage(format!("explicit coefficient list too short ({} given)", v.len())))?;
                *i += 1;
                Ok(c)
            }
            Source::Rng(r) => Ok(rng::nonzero_int(r, 9)),
        }
    }

    /// Dense form of degree `deg` in `vars`, coefficients drawn in grlex order.
    fn form(&mut self, nvars: usize, vars: &[usize], deg: u32) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(nvars);
        for m in Monomial::all_of_degree(vars.len(), deg) {
            let mut exps = vec![0u16; nvars];
            for (&v, &e) in vars.iter().zip(m.exponents()) {
                exps[v] = e;
            }
            let c = self.next()?;
            out.add_term(Monomial::from_exponents(exps), BigRational::from_integer(c.into()));
        }
        Ok(out)
    }
}

fn fixed(src: &str) -> MultiPoly {
    parse_poly(src, None).expect("built-in polynomial").poly
}

/// `Σ_{i≤k} xᵢ Cⁱ(c_vars) + D(d_vars)` in `n + 1` variables.
fn linear_in_head(
    n: usize,
    k: usize,
    c_vars: &[usize],
    d_vars: &[usize],
    src: &mut Source,
) -> Result<MultiPoly> {
    let nv = n + 1;
    let mut f = MultiPoly::zero(nv);
    for i in 0..=k {
        let c = src.form(nv, c_vars, 2)?;
        f = &f + &(&MultiPoly::var(nv, i) * &c);
    }
    let d = src.form(nv, d_vars, 3)?;
    Ok(&f + &d)
}

fn range(a: usize, b: usize) -> Vec<usize> {
    (a..=b).collect()
}

/// Builds the polynomial described by `spec`.
pub fn generate(spec: &FamilySpec) -> Result<MultiPoly> {
    let mut src = match &spec.coeffs {
        Coefficients::Explicit(v) => Source::List(v, 0),
        Coefficients::Seeded(s) => Source::Rng(rng::stream(*s, 0)),
    };
    let f = build(spec, &mut src)?;
    match src {
        Source::List(v, used) if used < v.len() => Err(usage(format!(
            "explicit coefficient list too long ({} given, {used} used)",
            v.len()
        ))),
        _ => Ok(f),
    }
}

fn build(spec: &FamilySpec, src: &mut Source<'_>) -> Result<MultiPoly> {
    let need_n = |lo: usize| -> Result<usize> {
        let n = spec
            .n
            .ok_or_else(|| usage(format!("family {} needs N", spec.family)))?;
        if n < lo {
            return Err(usage(format!("family {} needs N ≥ {lo}", spec.family)));
        }
        Ok(n)
    };
    let need_param = |what: &str| -> Result<usize> {
        spec.param
            .ok_or_else(|| usage(format!("family {} needs {what}", spec.family)))
    };
    match spec.family {
        Family::Bs => Ok(fixed(BS)),
        Family::Concat => Ok(fixed(CONCAT)),
        Family::Exdet => Ok(fixed(EXDET)),
        Family::Singp2 => Ok(fixed(SINGP2)),
        Family::Juxtapose => {
            let copies = spec.param.unwrap_or(2);
            if copies < 1 {
                return Err(usage("juxtapose needs at least one copy"));
            }
            let g = fixed(BS);
            let mut f = g.clone();
            for _ in 1..copies {
                f = juxtapose(&f, &g)?;
            }
            Ok(f)
        }
        Family::Det3 => PolyMatrix::generic(3).det_symbolic(),
        Family::Det3Section => Ok(det3_section()),
        Family::Pf6 => PolyMatrix::generic_skew(6).pfaffian(),
        Family::Pf6Section => {
            let pf = PolyMatrix::generic_skew(6).pfaffian()?;
            tangent_section(&pf, &pf6_rank4_point())
        }
        Family::Classe1 => {
            let n = need_n(1)?;
            let tau = need_param("τ")?;
            if tau == 0 || tau >= n {
                return Err(usage(format!("classe1 needs 0 < τ < N, got τ = {tau}, N = {n}")));
            }
            let tail = range(tau + 1, n);
            linear_in_head(n, tau, &tail, &tail, src)
        }
        Family::Simplified | Family::CanSpch => {
            let n = need_n(4)?;
            let s = need_param(if spec.family == Family::CanSpch { "σ" } else { "τ" })?;
            if s < 2 || 2 * s > n {
                return Err(usage(format!("{} needs 2 ≤ {} and 2·{0} ≤ N", spec.family, s)));
            }
            // the Cⁱ must be linearly independent; redraw when a seeded draw is not
            for _ in 0..16 {
                let f = linear_in_head(n, s, &range(n + 1 - s, n), &range(s + 1, n), src)?;
                if head_partials_independent(&f, s) {
                    return Ok(f);
                }
                if matches!(src, Source::List(..)) {
                    return Err(Error::Construction(
                        "the quadrics Cⁱ of the explicit coefficients are dependent".into(),
                    ));
                }
            }
            Err(Error::Construction("could not draw independent quadrics Cⁱ".into()))
        }
        Family::Mu1 => {
            let n = need_n(4)?;
            let nv = n + 1;
            let head = parse_poly(
                &format!("x0*x{a}^2 + 2*x1*x{a}*x{b} + x2*x{b}^2", a = n - 1, b = n),
                Some(nv),
            )?
            .poly;
            let d = src.form(nv, &range(3, n), 3)?;
            Ok(&head + &d)
        }
    }
}

fn head_partials_independent(f: &MultiPoly, s: usize) -> bool {
    let parts: Vec<MultiPoly> = (0..=s).map(|i| f.differentiate(i)).collect();
    let mut monos: Vec<Monomial> = parts.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    let rows: Vec<Vec<BigRational>> = parts
        .iter()
        .map(|p| monos.iter().map(|m| p.coeff(m)).collect())
        .collect();
    crate::linalg::rank(&crate::field::Rationals, &rows) == s + 1
}

/// `f + g̃` where `g̃` is `g` with its variables shifted past those of `f`.
pub fn juxtapose(f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly> {
    if f.homogeneous_degree() != g.homogeneous_degree() || f.homogeneous_degree().is_none() {
        return Err(usage("juxtaposition needs homogeneous forms of the same degree"));
    }
    let nv = f.nvars() + g.nvars();
    let shift: Vec<usize> = (0..g.nvars()).map(|i| i + f.nvars()).collect();
    Ok(&f.extend_vars(nv) + &g.map_vars(&shift, nv))
}

/// Union of the monomials of `f` and of its image under `xᵢ ↦ x_{map[i]}`,
/// shared monomials counted once.
pub fn concatenate(f: &MultiPoly, map: &[usize]) -> Result<MultiPoly> {
    if map.len() != f.nvars() {
        return Err(usage("index map must have one entry per variable"));
    }
    let nv = f.nvars().max(map.iter().map(|&i| i + 1).max().unwrap_or(0));
    let a = f.extend_vars(nv);
    let b = f.map_vars(map, nv);
    let mut out = a.clone();
    for (m, c) in b.terms() {
        let existing = a.coeff(m);
        if existing.is_zero() {
            out.add_term(m.clone(), c.clone());
        } else if existing != *c {
            let mono = MultiPoly::monomial(m.clone(), BigRational::from_integer(BigInt::from(1)));
            return Err(Error::Construction(format!(
                "shared monomial {mono} has coefficients {existing} and {c}"
            )));
        }
    }
    Ok(out)
}

/// Section of `V(r)` by its tangent hyperplane at the smooth point `p`.
pub fn tangent_section(r: &MultiPoly, p: &ProjPoint) -> Result<MultiPoly> {
    if p.len() != r.nvars() {
        return Err(usage("point and form have different dimensions"));
    }
    if !r.eval(p.coords()).is_zero() {
        return Err(usage(format!("{p} is not on the hypersurface")));
    }
    let grad: Vec<BigRational> = r.gradient().iter().map(|d| d.eval(p.coords())).collect();
    if grad.iter().all(Zero::is_zero) {
        return Err(usage(format!("{p} is a singular point")));
    }
    Ok(restrict_to_hyperplane(r, &grad)?.poly)
}

/// `diag(1, 1, 0)` in the coordinates of the generic 3×3 matrix.
pub fn det3_rank2_point() -> ProjPoint {
    ProjPoint::from_ints(&[1, 0, 0, 0, 1, 0, 0, 0, 0]).expect("nonzero")
}

/// The rank-4 skew matrix with `m01 = m23 = 1`.
pub fn pf6_rank4_point() -> ProjPoint {
    let mut v = [0i64; 15];
    v[0] = 1; // m01
    v[9] = 1; // m23
    ProjPoint::from_ints(&v).expect("nonzero")
}

/// Determinant of the generic 3×3 matrix with its last entry set to zero.
pub fn det3_section() -> MultiPoly {
    let m = PolyMatrix::generic(3);
    let mut rows = m.row_vecs();
    rows[2][2] = MultiPoly::zero(9);
    let d = PolyMatrix::from_rows(rows)
        .and_then(|m| m.det_symbolic())
        .expect("square matrix");
    let keep: Vec<usize> = (0..9).map(|i| i.min(7)).collect();
    d.map_vars(&keep, 8)
}

/// Human-readable one-line description of a spec.
pub fn describe(spec: &FamilySpec) -> String {
    let mut s = String::from(spec.family.name());
    if let Some(n) = spec.n {
        s += &format!(" N={n}");
    }
    if let Some(p) = spec.param {
        s += &format!(" param={p}");
    }
    match &spec.coeffs {
        Coefficients::Seeded(seed) => s += &format!(" seed={seed}"),
        Coefficients::Explicit(v) => s += &format!(" coefficients={v:?}"),
    }
    s
}
