//! Perazzo map of a cubic with vanishing hessian: images `Sing Q_p`, linear
//! fibers, the Perazzo rank, the Special test with its fixed space `L`, the
//! variety `Z*` (span, equation fit, dimension) and the matrix `A` of the
//! Special canonical form.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use crate::error::{usage, Error, Result};
use crate::field::{PrimeField, Rationals};
use crate::hessian::{generic_rank, hessian_matrix, Sampling};
use crate::linalg::{self, LinearSubspace, ProjPoint};
use crate::poly::{Monomial, MultiPoly};
use crate::polymat::{ModMatrix, PolyMatrix};
use crate::rng;

/// Seeds used for every majority vote.
pub const VOTES: usize = 6;
/// Votes required for a stable value.
pub const QUORUM: usize = 5;
/// General points drawn for the Special test.
pub const SPECIAL_FIBERS: usize = 4;
/// Highest degree tried when fitting an equation to `Z*`.
pub const MAX_FIT_DEGREE: u32 = 4;

fn require_cubic(f: &MultiPoly) -> Result<()> {
    if f.homogeneous_degree() != Some(3) {
        return Err(usage("the Perazzo map is defined here for homogeneous cubics"));
    }
    Ok(())
}

fn kernel_q(m: &[Vec<BigRational>], n: usize) -> LinearSubspace {
    let (_, ker) = linalg::rank_kernel(&Rationals, m, n);
    LinearSubspace::span_of(n, &ker)
}

/// `P_X(p) = Sing Q_p`, the kernel of `Hess f (p)`.
pub fn perazzo_image(f: &MultiPoly, p: &ProjPoint) -> Result<LinearSubspace> {
    require_cubic(f)?;
    crate::polar::polar_quadric_sing(f, p)
}

/// `⋂_{r ∈ P_X(p)} ker Hess f (r)`, the linear space through `p` on which the
/// Perazzo map is constant.
pub fn perazzo_fiber(f: &MultiPoly, p: &ProjPoint) -> Result<LinearSubspace> {
    let image = perazzo_image(f, p)?;
    Ok(fiber_of_image(&hessian_matrix(f), f.nvars(), &image))
}

fn fiber_of_image(h: &PolyMatrix, n: usize, image: &LinearSubspace) -> LinearSubspace {
    let mut fiber = LinearSubspace::whole(n);
    for r in image.basis_rational() {
        fiber = fiber.intersect(&kernel_q(&h.eval(&r), n));
    }
    fiber
}

/// Cached data for repeated Perazzo computations on one cubic.
pub struct Perazzo<'a> {
    f: &'a MultiPoly,
    n: usize,
    hess: PolyMatrix,
    /// Generic rank of the hessian (certain lower bound, witnessed).
    pub generic_rank: usize,
    seed: u64,
}

/// A general rational point together with its Perazzo image.
#[derive(Clone, Debug)]
pub struct GeneralPoint {
    pub point: Vec<BigRational>,
    pub image: LinearSubspace,
}

impl<'a> Perazzo<'a> {
    pub fn new(f: &'a MultiPoly, seed: u64) -> Result<Self> {
        require_cubic(f)?;
        let hess = hessian_matrix(f);
        let generic_rank = generic_rank(&hess, &Sampling::with_seed(seed))?.claimed_rank;
        Ok(Perazzo {
            f,
            n: f.nvars(),
            hess,
            generic_rank,
            seed,
        })
    }

    pub fn form(&self) -> &MultiPoly {
        self.f
    }

    pub fn hessian(&self) -> &PolyMatrix {
        &self.hess
    }

    /// Projective dimension `N`.
    pub fn ambient_dim(&self) -> usize {
        self.n - 1
    }

    pub fn codim_z(&self) -> usize {
        self.n - self.generic_rank
    }

    /// Rational point from stream `index` at which the hessian attains its
    /// generic rank; redraws up to 16 times.
    pub fn general_point(&self, index: u64) -> Result<GeneralPoint> {
        for attempt in 0..16u64 {
            let mut r = rng::stream(self.seed, (index << 8) | attempt);
            let p = rng::point_q(&mut r, self.n);
            let h = self.hess.eval(&p);
            let (rank, ker) = linalg::rank_kernel(&Rationals, &h, self.n);
            if rank == self.generic_rank {
                return Ok(GeneralPoint {
                    image: LinearSubspace::span_of(self.n, &ker),
                    point: p,
                });
            }
        }
        Err(Error::Genericity(format!(
            "no point of generic hessian rank {} found for stream {index}",
            self.generic_rank
        )))
    }

    pub fn fiber_of(&self, image: &LinearSubspace) -> LinearSubspace {
        fiber_of_image(&self.hess, self.n, image)
    }

    pub fn image_of(&self, p: &[BigRational]) -> LinearSubspace {
        kernel_q(&self.hess.eval(p), self.n)
    }

    /// Perazzo rank `μ = N − dim(general fiber)` by majority vote.
    pub fn rank(&self) -> Result<MuEstimate> {
        let mut votes = Vec::with_capacity(VOTES);
        for k in 0..VOTES as u64 {
            let g = self.general_point(1000 + k)?;
            votes.push(self.fiber_of(&g.image).proj_dim());
        }
        let fiber_dim = majority(&votes).ok_or_else(|| {
            Error::Genericity(format!("fiber dimension unstable across seeds: {votes:?}"))
        })?;
        Ok(MuEstimate {
            mu: self.ambient_dim() as isize - fiber_dim,
            fiber_dim,
            votes,
        })
    }

    /// Special Perazzo test: general fibers pairwise meet in one common
    /// `P^{N−μ−1}`, which must also contain the sampled images.
    pub fn special(&self, mu: &MuEstimate) -> Result<SpecialVerdict> {
        let mut fibers = Vec::with_capacity(SPECIAL_FIBERS);
        for k in 0..SPECIAL_FIBERS as u64 {
            let g = self.general_point(2000 + k)?;
            fibers.push(self.fiber_of(&g.image));
        }
        let mut meets = Vec::new();
        for i in 0..fibers.len() {
            for j in i + 1..fibers.len() {
                meets.push(fibers[i].intersect(&fibers[j]));
            }
        }
        let target = mu.fiber_dim - 1;
        let common = meets.iter().all(|m| *m == meets[0]) && meets[0].proj_dim() == target;
        let meet_dims = meets.iter().map(LinearSubspace::proj_dim).collect();
        let distinct_meets = {
            let mut d: Vec<&LinearSubspace> = Vec::new();
            for m in &meets {
                if !d.contains(&m) {
                    d.push(m);
                }
            }
            d.len()
        };
        let common_meet = if distinct_meets == 1 { Some(meets[0].clone()) } else { None };
        let l = if common { Some(meets[0].clone()) } else { None };
        let mut zstar_in_l = None;
        if let Some(l) = &l {
            let mut ok = true;
            for k in 0..SPECIAL_FIBERS as u64 {
                let g = self.general_point(3000 + k)?;
                ok &= l.contains(&g.image);
            }
            zstar_in_l = Some(ok);
        }
        let inconsistent = zstar_in_l == Some(false);
        Ok(SpecialVerdict {
            special: common && !inconsistent,
            l,
            meet_dims,
            distinct_meets,
            common_meet,
            zstar_in_l,
            inconsistent,
        })
    }

    /// Samples `Z*`, its span, a lowest-degree equation on the span, and an
    /// estimate of its dimension.
    pub fn zstar(&self, samples: usize) -> Result<ZStar> {
        // rational samples: one random point of each image
        let count = samples.max(self.n + 3);
        let mut points: Vec<Vec<BigRational>> = Vec::with_capacity(count);
        for k in 0..count as u64 {
            let g = self.general_point(4000 + k)?;
            let mut r = rng::stream(self.seed, 5000 + k);
            points.push(random_in(&g.image, &mut r));
        }
        let span = LinearSubspace::span_of(self.n, &points);
        let held_out: Vec<Vec<BigRational>> = (0..5u64)
            .map(|k| {
                let g = self.general_point(6000 + k)?;
                let mut r = rng::stream(self.seed, 7000 + k);
                Ok(random_in(&g.image, &mut r))
            })
            .collect::<Result<_>>()?;
        let span_stable = held_out.iter().all(|v| span.contains_vector(v));
        let fit = self.fit(&span, &held_out)?;
        let dim_estimate = self.zstar_dim()?;
        Ok(ZStar {
            span,
            span_stable,
            fit_degree: fit.as_ref().map(|(e, _)| *e),
            fit_equations: fit.map(|(_, eqs)| eqs).unwrap_or_default(),
            dim_estimate,
            samples: points,
        })
    }

    /// Points of `Z*` over GF(p), one per general point of stream `index`.
    fn zstar_points_mod(
        &self,
        hm: &ModMatrix,
        fld: &PrimeField,
        count: usize,
        index: u64,
    ) -> Vec<Vec<u64>> {
        let mut out = Vec::with_capacity(count);
        let mut k = 0u64;
        while out.len() < count && k < 4 * count as u64 + 16 {
            let mut r = rng::stream(self.seed, (index << 20) | k);
            k += 1;
            let p = rng::point_mod(&mut r, fld, self.n);
            let (rank, ker) = linalg::rank_kernel(fld, &hm.eval(&p), self.n);
            if rank != self.generic_rank {
                continue;
            }
            let mut v = vec![0u64; self.n];
            for b in &ker {
                let c = rng::nonzero_mod(&mut r, fld);
                for (x, y) in v.iter_mut().zip(b) {
                    *x = fld.add_u(*x, fld.mul_u(c, *y));
                }
            }
            out.push(v);
        }
        out
    }

    /// Lowest-degree forms in the span coordinates vanishing on `Z*`,
    /// interpolated over GF(p) and confirmed exactly on held-out samples.
    fn fit(
        &self,
        span: &LinearSubspace,
        held_out: &[Vec<BigRational>],
    ) -> Result<Option<(u32, Vec<MultiPoly>)>> {
        let fld = PrimeField::mersenne61();
        let hm = self.hess.to_mod(&fld)?;
        let pivots = span.pivot_columns();
        let k = pivots.len();
        if k < 2 {
            return Ok(None);
        }
        for e in 1..=MAX_FIT_DEGREE {
            let monos = Monomial::all_of_degree(k, e);
            let m = monos.len();
            let pts = self.zstar_points_mod(&hm, &fld, m + 5, 100 + e as u64);
            if pts.len() < m + 5 {
                return Err(Error::Genericity("too few general points for the Z* fit".into()));
            }
            let rows: Vec<Vec<u64>> = pts
                .iter()
                .map(|v| {
                    let c: Vec<u64> = pivots.iter().map(|&i| v[i]).collect();
                    monos
                        .iter()
                        .map(|mono| {
                            mono.exponents().iter().zip(&c).fold(1u64, |acc, (&ex, &x)| {
                                fld.mul_u(acc, fld.pow_u(x, ex as u64))
                            })
                        })
                        .collect()
                })
                .collect();
            let (_, mut ker) = linalg::rank_kernel(&fld, &rows, m);
            if ker.is_empty() {
                continue;
            }
            let piv = linalg::rref(&fld, &mut ker);
            ker.truncate(piv.len());
            let Some(lifted) = ker
                .iter()
                .map(|v| v.iter().map(|&a| fld.rational_reconstruct(a)).collect::<Option<Vec<_>>>())
                .collect::<Option<Vec<_>>>()
            else {
                continue;
            };
            let canon = LinearSubspace::span_of(m, &lifted);
            let eqs: Vec<MultiPoly> = canon
                .basis()
                .iter()
                .map(|row| {
                    let mut g = MultiPoly::zero(self.n);
                    for (mono, a) in monos.iter().zip(row) {
                        if a.is_zero() {
                            continue;
                        }
                        let mut exps = vec![0u16; self.n];
                        for (&pc, &ex) in pivots.iter().zip(mono.exponents()) {
                            exps[pc] = ex;
                        }
                        g.add_term(Monomial::from_exponents(exps), BigRational::from_integer(a.clone()));
                    }
                    g
                })
                .collect();
            let confirmed = eqs
                .iter()
                .all(|g| held_out.iter().all(|v| g.eval(v).is_zero()));
            if confirmed {
                return Ok(Some((e, eqs)));
            }
        }
        Ok(None)
    }

    /// Projective dimension of `Z*` as the rank of the differential of
    /// `(x, a) ↦ Σ aⱼ wⱼ(x)` minus one, where `wⱼ(x)` is the kernel basis of
    /// `Hess f (x)` written with Cramer's rule around a general point.
    pub fn zstar_dim(&self) -> Result<isize> {
        let fld = PrimeField::mersenne61();
        let hm = self.hess.to_mod(&fld)?;
        let mut best = -1isize;
        for trial in 0..3u64 {
            if let Some(r) = self.zstar_dim_at(&hm, &fld, trial) {
                best = best.max(r as isize - 1);
            }
        }
        if best < 0 {
            return Err(Error::Genericity("no general point for the Z* dimension estimate".into()));
        }
        Ok(best)
    }

    fn zstar_dim_at(&self, hm: &ModMatrix, fld: &PrimeField, trial: u64) -> Option<usize> {
        let n = self.n;
        let mut r = rng::stream(self.seed, 9000 + trial);
        let x0 = rng::point_mod(&mut r, fld, n);
        let h0 = hm.eval(&x0);
        let rows = linalg::independent_rows(fld, &h0);
        if rows.len() != self.generic_rank {
            return None;
        }
        let sub: Vec<Vec<u64>> = rows.iter().map(|&i| h0[i].clone()).collect();
        let cols = linalg::independent_rows(fld, &linalg::transpose(&sub));
        let free: Vec<usize> = (0..n).filter(|c| !cols.contains(c)).collect();
        // w_j(x) = det(H_RC) · (kernel vector with 1 at free column j)
        let kernel_at = |x: &[u64]| -> Option<Vec<Vec<u64>>> {
            let h = hm.eval(x);
            let a: Vec<Vec<u64>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&c| h[i][c]).collect())
                .collect();
            let d = linalg::det(fld, &a);
            if d == 0 {
                return None;
            }
            let mut out = Vec::with_capacity(free.len());
            for &fc in &free {
                let b: Vec<u64> = rows.iter().map(|&i| fld.neg_u(h[i][fc])).collect();
                let sol = linalg::solve(fld, &a, &b)?;
                let mut w = vec![0u64; n];
                w[fc] = d;
                for (&c, s) in cols.iter().zip(sol) {
                    w[c] = fld.mul_u(d, s);
                }
                out.push(w);
            }
            Some(out)
        };
        let w0 = kernel_at(&x0)?;
        let a: Vec<u64> = free.iter().map(|_| rng::nonzero_mod(&mut r, fld)).collect();
        // w is polynomial of degree ≤ rank in x; recover d/dt along each axis
        let deg = self.generic_rank + 1;
        let mut jac: Vec<Vec<u64>> = Vec::new();
        for i in 0..n {
            let nodes: Vec<u64> = (1..=deg as u64 + 1).map(|_| rng::nonzero_mod(&mut r, fld)).collect();
            let mut values: Vec<Vec<u64>> = vec![Vec::with_capacity(nodes.len()); n];
            for &t in &nodes {
                let mut x = x0.clone();
                x[i] = fld.add_u(x[i], t);
                let ws = kernel_at(&x)?;
                for c in 0..n {
                    let v = ws
                        .iter()
                        .zip(&a)
                        .fold(0u64, |acc, (w, &aj)| fld.add_u(acc, fld.mul_u(aj, w[c])));
                    values[c].push(v);
                }
            }
            let mut nodes0 = nodes.clone();
            nodes0.push(0);
            let col: Vec<u64> = (0..n)
                .map(|c| {
                    let v0 = w0
                        .iter()
                        .zip(&a)
                        .fold(0u64, |acc, (w, &aj)| fld.add_u(acc, fld.mul_u(aj, w[c])));
                    let mut vals = values[c].clone();
                    vals.push(v0);
                    let poly = crate::univariate::interpolate(fld, &nodes0, &vals);
                    poly.get(1).copied().unwrap_or(0)
                })
                .collect();
            jac.push(col);
        }
        for w in &w0 {
            jac.push(w.clone());
        }
        Some(linalg::rank(fld, &jac))
    }
}

fn random_in<R: Rng>(space: &LinearSubspace, r: &mut R) -> Vec<BigRational> {
    let coeffs: Vec<BigRational> = (0..space.rank())
        .map(|_| BigRational::from_integer(rng::nonzero_int(r, 100).into()))
        .collect();
    space.combine(&coeffs)
}

fn majority(votes: &[isize]) -> Option<isize> {
    votes
        .iter()
        .copied()
        .find(|v| votes.iter().filter(|w| *w == v).count() >= QUORUM)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuEstimate {
    pub mu: isize,
    /// Projective dimension of the general fiber.
    pub fiber_dim: isize,
    pub votes: Vec<isize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialVerdict {
    pub special: bool,
    pub l: Option<LinearSubspace>,
    pub meet_dims: Vec<isize>,
    /// Number of distinct pairwise intersections among the sampled fibers.
    pub distinct_meets: usize,
    /// The pairwise intersection, when all sampled pairs agree.
    pub common_meet: Option<LinearSubspace>,
    pub zstar_in_l: Option<bool>,
    /// The two Special criteria disagree.
    pub inconsistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZStar {
    pub span: LinearSubspace,
    /// Held-out samples lie in the span.
    pub span_stable: bool,
    pub fit_degree: Option<u32>,
    /// Basis of the lowest-degree forms (in the span's pivot variables).
    pub fit_equations: Vec<MultiPoly>,
    pub dim_estimate: isize,
    pub samples: Vec<Vec<BigRational>>,
}

impl ZStar {
    pub fn fit(&self) -> Option<&MultiPoly> {
        self.fit_equations.first()
    }
}

pub fn perazzo_rank(f: &MultiPoly, seed: u64) -> Result<MuEstimate> {
    Perazzo::new(f, seed)?.rank()
}

pub fn is_special_perazzo(f: &MultiPoly, seed: u64) -> Result<SpecialVerdict> {
    let p = Perazzo::new(f, seed)?;
    let mu = p.rank()?;
    p.special(&mu)
}

pub fn zstar_analyze(f: &MultiPoly, samples: usize, seed: u64) -> Result<ZStar> {
    Perazzo::new(f, seed)?.zstar(samples)
}

/// Structural check of `Σ_{i≤σ} xᵢ Cⁱ(x_{N−σ+1},…,x_N) + D(x_{σ+1},…,x_N)`.
pub fn validate_canspch(f: &MultiPoly, sigma: usize) -> Result<()> {
    let n = f.nvars();
    if n == 0 {
        return Err(Error::NotCanonical("no variables".into()));
    }
    let big_n = n - 1;
    if sigma < 2 || 2 * sigma > big_n {
        return Err(Error::NotCanonical(format!(
            "need 2 ≤ σ and 2σ ≤ N, got σ = {sigma}, N = {big_n}"
        )));
    }
    if f.homogeneous_degree() != Some(3) {
        return Err(Error::NotCanonical("not a homogeneous cubic".into()));
    }
    let c_start = big_n + 1 - sigma;
    for (m, _) in f.terms() {
        let e = m.exponents();
        let head: u32 = e[..=sigma].iter().map(|&x| x as u32).sum();
        let ok = match head {
            0 => true,
            1 => {
                let mid: u32 = e[sigma + 1..c_start].iter().map(|&x| x as u32).sum();
                mid == 0
            }
            _ => false,
        };
        if !ok {
            let mono = MultiPoly::monomial(m.clone(), num_traits::One::one());
            return Err(Error::NotCanonical(format!(
                "monomial {mono} does not fit the shape for σ = {sigma}"
            )));
        }
    }
    Ok(())
}

/// The `σ × σ` matrix `A[k][i] = Σⱼ ∂²Cʲ/∂x_k∂x_i · xⱼ` (over the last σ
/// variables) and its determinant.
pub fn perazzo_matrix_a(f: &MultiPoly, sigma: usize) -> Result<(PolyMatrix, MultiPoly)> {
    validate_canspch(f, sigma)?;
    let n = f.nvars();
    let c_start = n - sigma;
    let mut rows = vec![vec![MultiPoly::zero(n); sigma]; sigma];
    for j in 0..=sigma {
        // Cʲ = ∂f/∂xⱼ restricted to the terms linear in xⱼ
        let cj = f.differentiate(j);
        let xj = MultiPoly::var(n, j);
        for (k, row) in rows.iter_mut().enumerate() {
            let dk = cj.differentiate(c_start + k);
            for (i, cell) in row.iter_mut().enumerate() {
                let dki = dk.differentiate(c_start + i);
                if !dki.is_zero() {
                    *cell = &*cell + &(&dki * &xj);
                }
            }
        }
    }
    let a = PolyMatrix::symmetric(rows)?;
    let det = a.det_symbolic()?;
    Ok((a, det))
}

/// Exact evaluation helper: every sample annihilates `g`.
pub fn vanishes_on(g: &MultiPoly, samples: &[Vec<BigRational>]) -> bool {
    samples.iter().all(|v| g.eval(v).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_poly_str};

    const BS: &str = "x0*x3^2 + x1*x3*x4 + x2*x4^2";
    const EX38: &str = "x0*x4*x5 + x1*x4^2 + x2*x4*x6 + x3*x5*x6";
    const P7: &str = "-x0*x5*x7 + x1*x5*x6 + x2*x3*x7 - x2*x4*x6";

    fn p(s: &str) -> MultiPoly {
        parse_poly_str(s).unwrap()
    }

    fn pn(s: &str, n: usize) -> MultiPoly {
        parse_poly(s, Some(n)).unwrap().poly
    }

    #[test]
    fn basic_cubic_profile() {
        let f = p(BS);
        let ctx = Perazzo::new(&f, 0).unwrap();
        assert_eq!(ctx.codim_z(), 1);
        let mu = ctx.rank().unwrap();
        assert_eq!(mu.mu, 1);
        assert_eq!(mu.fiber_dim, 3);
        let s = ctx.special(&mu).unwrap();
        assert!(s.special);
        assert_eq!(s.l.unwrap(), LinearSubspace::coordinate(5, &[3, 4]));
        let z = ctx.zstar(8).unwrap();
        assert_eq!(z.span, LinearSubspace::coordinate(5, &[3, 4]));
        assert_eq!(z.fit_degree, Some(2));
        assert!(z.fit().unwrap().proportional(&pn("4*x0*x2 - x1^2", 5)));
        assert_eq!(z.dim_estimate, 1);
    }

    #[test]
    fn fibers_contain_their_point() {
        let f = p(BS);
        let q = ProjPoint::from_ints(&[3, -7, 2, 5, 11]).unwrap();
        let fib = perazzo_fiber(&f, &q).unwrap();
        assert_eq!(fib.proj_dim(), 3);
        assert!(fib.contains_vector(q.coords()));
    }

    #[test]
    fn seven_variable_example() {
        let f = p(EX38);
        let ctx = Perazzo::new(&f, 0).unwrap();
        let mu = ctx.rank().unwrap();
        assert_eq!((mu.mu, mu.fiber_dim), (2, 4));
        let s = ctx.special(&mu).unwrap();
        assert!(s.special);
        assert_eq!(s.l.unwrap(), LinearSubspace::coordinate(7, &[4, 5, 6]));
        let z = ctx.zstar(8).unwrap();
        assert_eq!(z.span, LinearSubspace::coordinate(7, &[4, 5, 6]));
        assert!(z.fit().unwrap().proportional(&pn("x0*x2 - x1*x3", 7)));
        assert_eq!(z.dim_estimate, 2);
        let (a, det) = perazzo_matrix_a(&f, 3).unwrap();
        assert_eq!(format!("{a}"), "[[2*x1, x0, x2], [x0, 0, x3], [x2, x3, 0]]");
        assert_eq!(det, pn("2*x0*x2*x3 - 2*x1*x3^2", 7));
        assert!(vanishes_on(&det, &z.samples));
    }

    #[test]
    fn determinantal_section_is_not_special() {
        let f = p(P7);
        let ctx = Perazzo::new(&f, 0).unwrap();
        assert_eq!(ctx.generic_rank, 7);
        let mu = ctx.rank().unwrap();
        assert_eq!((mu.mu, mu.fiber_dim), (2, 5));
        let s = ctx.special(&mu).unwrap();
        assert!(!s.special);
        assert!(s.meet_dims.iter().all(|&d| d == 3));
        let z = ctx.zstar(8).unwrap();
        assert_eq!(z.span, LinearSubspace::coordinate(8, &[2, 5, 6, 7]));
        // every fiber contains the span of Z*, so that is where they meet
        assert_eq!(s.distinct_meets, 1);
        assert!(s.l.is_none());
        assert!(z.fit().unwrap().proportional(&pn("x0*x4 - x1*x3", 8)));
        assert_eq!(z.dim_estimate, 2);
    }

    #[test]
    fn matrix_a_of_the_basic_cubic() {
        let (a, det) = perazzo_matrix_a(&p(BS), 2).unwrap();
        assert_eq!(format!("{a}"), "[[2*x0, x1], [x1, 2*x2]]");
        assert_eq!(det, pn("4*x0*x2 - x1^2", 5));
        assert!(matches!(
            perazzo_matrix_a(&p("x0^3 + x1^3 + x2^3 + x3^3 + x4^3"), 2),
            Err(Error::NotCanonical(_))
        ));
    }
}
