//! Hessian matrix, vanishing test, generic rank, vertex space, point sampling
//! on hypersurfaces and the rank of the hessian along the hypersurface.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{PrimeField, Rationals, MERSENNE_31, MERSENNE_61};
use crate::linalg::{self, LinearSubspace};
use crate::poly::{ModPoly, Monomial, MultiPoly};
use crate::polymat::PolyMatrix;
use crate::rng;
use crate::univariate;

/// Knobs shared by every randomized routine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sampling {
    pub seed: u64,
    /// Evaluation points per prime.
    pub trials: usize,
    pub primes: Vec<u64>,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling {
            seed: 0,
            trials: 8,
            primes: vec![MERSENNE_61, MERSENNE_31],
        }
    }
}

impl Sampling {
    pub fn with_seed(seed: u64) -> Self {
        Sampling {
            seed,
            ..Sampling::default()
        }
    }

    pub fn fields(&self) -> Result<Vec<PrimeField>> {
        self.primes.iter().map(|&p| PrimeField::new(p)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Certainty {
    Exact,
    /// Probability that the reported value is wrong is at most `failure_bound`.
    MonteCarlo { failure_bound: f64 },
}

impl Certainty {
    pub fn is_exact(&self) -> bool {
        matches!(self, Certainty::Exact)
    }
}

impl fmt::Display for Certainty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certainty::Exact => write!(f, "exact"),
            Certainty::MonteCarlo { failure_bound } => {
                write!(f, "monte-carlo (failure bound {failure_bound:.3e})")
            }
        }
    }
}

/// Bound `Π_p k·D/(p−1)` for a degree-`D` identity tested at `k` points over
/// each prime.
pub fn failure_bound(degree: u64, points_per_prime: usize, primes: &[u64]) -> f64 {
    primes
        .iter()
        .map(|&p| {
            let b = points_per_prime as f64 * degree as f64 / (p - 1) as f64;
            b.min(1.0)
        })
        .product()
}

/// Rank attained at an explicit witness point. The rank is a certain lower
/// bound; its maximality carries `certainty`.
#[derive(Clone, Debug, PartialEq)]
pub struct RankCertificate {
    pub claimed_rank: usize,
    /// Witness coordinates, as residues modulo `witness_prime`.
    pub witness_point: Vec<u64>,
    pub witness_prime: u64,
    /// Points evaluated per prime.
    pub trials: usize,
    pub primes_used: Vec<u64>,
    pub certainty: Certainty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HessMode {
    Symbolic,
    MonteCarlo,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HessVerdict {
    pub vanishes: bool,
    pub certainty: Certainty,
    pub certificate: RankCertificate,
}

pub fn hessian_matrix(f: &MultiPoly) -> PolyMatrix {
    let n = f.nvars();
    let grad = f.gradient();
    let mut rows = vec![vec![MultiPoly::zero(n); n]; n];
    for i in 0..n {
        for j in i..n {
            let e = grad[i].differentiate(j);
            rows[j][i] = e.clone();
            rows[i][j] = e;
        }
    }
    PolyMatrix::symmetric(rows).expect("second partials commute")
}

fn entry_degree(m: &PolyMatrix) -> u64 {
    let mut d = 0;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            d = d.max(m.get(i, j).total_degree().unwrap_or(0) as u64);
        }
    }
    d
}

/// Max rank of `M` over `trials` random points per prime.
pub fn generic_rank(m: &PolyMatrix, opts: &Sampling) -> Result<RankCertificate> {
    let fields = opts.fields()?;
    let full = m.rows().min(m.cols());
    let mut best: Option<(usize, Vec<u64>, u64)> = None;
    for (pi, fld) in fields.iter().enumerate() {
        let mm = m.to_mod(fld)?;
        for t in 0..opts.trials {
            let mut r = rng::stream(opts.seed, ((pi as u64) << 32) | t as u64);
            let pt = rng::point_mod(&mut r, fld, m.nvars());
            let rank = linalg::rank(fld, &mm.eval(&pt));
            if best.as_ref().map_or(true, |b| rank > b.0) {
                best = Some((rank, pt, fld.modulus()));
            }
        }
    }
    let (rank, pt, p) = best.unwrap_or((0, Vec::new(), opts.primes.first().copied().unwrap_or(0)));
    let certainty = if rank == full {
        Certainty::Exact
    } else {
        // a nonzero (rank+1)-minor has degree at most (rank+1)·deg(entries)
        let d = (rank as u64 + 1) * entry_degree(m).max(1);
        Certainty::MonteCarlo {
            failure_bound: failure_bound(d, opts.trials, &opts.primes),
        }
    };
    Ok(RankCertificate {
        claimed_rank: rank,
        witness_point: pt,
        witness_prime: p,
        trials: opts.trials,
        primes_used: opts.primes.clone(),
        certainty,
    })
}

/// Decides `hess_f ≡ 0`. Symbolic mode expands the determinant exactly;
/// Monte-Carlo mode evaluates at `max(trials, 8)` points over each prime.
pub fn hess_vanishes(f: &MultiPoly, mode: HessMode, opts: &Sampling) -> Result<HessVerdict> {
    let h = hessian_matrix(f);
    let n = f.nvars();
    let opts = Sampling {
        trials: opts.trials.max(8),
        ..opts.clone()
    };
    let certificate = generic_rank(&h, &opts)?;
    let (vanishes, certainty) = match mode {
        HessMode::Symbolic => (h.det_symbolic()?.is_zero(), Certainty::Exact),
        HessMode::MonteCarlo => {
            let vanishes = certificate.claimed_rank < n;
            let d = f.total_degree().unwrap_or(0) as u64;
            let hdeg = n as u64 * d.saturating_sub(2);
            let c = if vanishes {
                Certainty::MonteCarlo {
                    failure_bound: failure_bound(hdeg.max(1), opts.trials, &opts.primes),
                }
            } else {
                Certainty::Exact
            };
            (vanishes, c)
        }
    };
    Ok(HessVerdict {
        vanishes,
        certainty,
        certificate,
    })
}

/// Directions `v` with `Σ vᵢ ∂f/∂xᵢ ≡ 0`: the vertex of the cone `V(f)`.
/// Empty exactly when the partials are linearly independent.
pub fn vertex_space(f: &MultiPoly) -> LinearSubspace {
    let n = f.nvars();
    let grad = f.gradient();
    let mut monos: Vec<Monomial> = grad
        .iter()
        .flat_map(|g| g.terms().map(|(m, _)| m.clone()))
        .collect();
    monos.sort();
    monos.dedup();
    // rows: monomials, columns: partials
    let m: Vec<Vec<BigRational>> = monos
        .iter()
        .map(|mono| grad.iter().map(|g| g.coeff(mono)).collect())
        .collect();
    let (_, ker) = linalg::rank_kernel(&Rationals, &m, n);
    LinearSubspace::span_of(n, &ker)
}

/// Point of `V(f)` over GF(p) found on a random line, retrying up to `budget`
/// lines.
pub fn sample_point_on_mod(f: &ModPoly, seed: u64, budget: usize) -> Result<Vec<u64>> {
    let fld = *f.field();
    let n = f.nvars();
    for attempt in 0..budget {
        let mut r = rng::stream(seed, attempt as u64);
        let a = rng::point_mod(&mut r, &fld, n);
        let b = rng::point_mod(&mut r, &fld, n);
        let g = f.restrict_to_line(&a, &b);
        let t = if univariate::degree(&g).is_none() {
            Some(0)
        } else {
            univariate::find_root(&fld, &g, &mut r)
        };
        if let Some(t) = t {
            let pt: Vec<u64> = a
                .iter()
                .zip(&b)
                .map(|(&ai, &bi)| fld.add_u(ai, fld.mul_u(t, bi)))
                .collect();
            if pt.iter().any(|&c| c != 0) {
                return Ok(pt);
            }
        }
    }
    Err(Error::Sampling { lines: budget })
}

pub fn sample_point_on(f: &MultiPoly, field: &PrimeField, seed: u64) -> Result<Vec<u64>> {
    if f.is_zero() {
        return Err(Error::Usage("cannot sample on the zero polynomial".into()));
    }
    sample_point_on_mod(&f.to_mod(field)?, seed, 64)
}

/// Hessian rank along `V(f)` and the dimension of the dual variety.
#[derive(Clone, Debug, PartialEq)]
pub struct RankModF {
    pub certificate: RankCertificate,
    /// `rank − 2`.
    pub dual_dim: isize,
}

/// Max rank of `Hess f` at smooth points of `V(f)` (at least 16 per prime).
pub fn rank_mod_f(f: &MultiPoly, opts: &Sampling) -> Result<RankModF> {
    let points = opts.trials.max(16);
    let h = hessian_matrix(f);
    let d = f.total_degree().unwrap_or(0) as u64;
    let mut best: Option<(usize, Vec<u64>, u64)> = None;
    for (pi, fld) in opts.fields()?.iter().enumerate() {
        let fm = f.to_mod(fld)?;
        let grad: Vec<ModPoly> = fm.gradient();
        let hm = h.to_mod(fld)?;
        let mut found = 0;
        let mut index = 0u64;
        while found < points {
            if index as usize >= 4 * points {
                return Err(Error::Genericity(format!(
                    "only {found} smooth points of the hypersurface found over GF({})",
                    fld.modulus()
                )));
            }
            let s = rng::derive_seed(opts.seed, ((pi as u64) << 32) | index);
            index += 1;
            let pt = sample_point_on_mod(&fm, s, 64)?;
            if grad.iter().all(|g| g.eval(&pt) == 0) {
                continue;
            }
            found += 1;
            let rank = linalg::rank(fld, &hm.eval(&pt));
            if best.as_ref().map_or(true, |b| rank > b.0) {
                best = Some((rank, pt, fld.modulus()));
            }
        }
    }
    let (rank, pt, p) = best.expect("at least one prime");
    let n = f.nvars();
    let certainty = if rank == n {
        Certainty::Exact
    } else {
        let minor = (rank as u64 + 1) * d.saturating_sub(2).max(1);
        Certainty::MonteCarlo {
            failure_bound: failure_bound(minor * d.max(1), points, &opts.primes),
        }
    };
    Ok(RankModF {
        certificate: RankCertificate {
            claimed_rank: rank,
            witness_point: pt,
            witness_prime: p,
            trials: points,
            primes_used: opts.primes.clone(),
            certainty,
        },
        dual_dim: rank as isize - 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_poly_str};

    const BS: &str = "x0*x3^2 + x1*x3*x4 + x2*x4^2";

    fn p(s: &str) -> MultiPoly {
        parse_poly_str(s).unwrap()
    }

    #[test]
    fn fermat_hessian_is_diagonal() {
        let h = hessian_matrix(&p("x0^3 + x1^3 + x2^3"));
        for i in 0..3 {
            for j in 0..3 {
                let e = h.get(i, j);
                if i == j {
                    assert_eq!(*e, MultiPoly::var(3, i).scale_int(6));
                } else {
                    assert!(e.is_zero());
                }
            }
        }
        assert_eq!(h.det_symbolic().unwrap(), p("216*x0*x1*x2"));
    }

    #[test]
    fn second_partials_of_the_basic_cubic() {
        let h = hessian_matrix(&p(BS));
        let e = |s: &str| parse_poly(s, Some(5)).unwrap().poly;
        let expect = [
            ((0, 3), "2*x3"),
            ((1, 3), "x4"),
            ((1, 4), "x3"),
            ((2, 4), "2*x4"),
            ((3, 3), "2*x0"),
            ((3, 4), "x1"),
            ((4, 4), "2*x2"),
        ];
        let mut nonzero = 0;
        for i in 0..5 {
            for j in i..5 {
                if !h.get(i, j).is_zero() {
                    nonzero += 1;
                }
            }
        }
        assert_eq!(nonzero, expect.len());
        for ((i, j), s) in expect {
            assert_eq!(*h.get(i, j), e(s));
            assert_eq!(*h.get(j, i), e(s));
        }
    }

    #[test]
    fn vanishing_verdicts() {
        let o = Sampling::default();
        for mode in [HessMode::Symbolic, HessMode::MonteCarlo] {
            assert!(hess_vanishes(&p(BS), mode, &o).unwrap().vanishes);
            assert!(!hess_vanishes(&p("x0*x3^2 + x1*x4^2 + x2*x5^2"), mode, &o).unwrap().vanishes);
            assert!(!hess_vanishes(&p("x0^3 + x1^3 + x2^3"), mode, &o).unwrap().vanishes);
        }
    }

    #[test]
    fn generic_ranks() {
        let o = Sampling::default();
        let c = generic_rank(&hessian_matrix(&p(BS)), &o).unwrap();
        assert_eq!(c.claimed_rank, 4);
        assert!(matches!(c.certainty, Certainty::MonteCarlo { failure_bound } if failure_bound < 1e-20));
        let fld = PrimeField::new(c.witness_prime).unwrap();
        let at = hessian_matrix(&p(BS)).eval_mod(&fld, &c.witness_point).unwrap();
        assert_eq!(linalg::rank(&fld, &at), 4);
        let c = generic_rank(&hessian_matrix(&p("x0^3 + x1^3 + x2^3")), &o).unwrap();
        assert_eq!(c.claimed_rank, 3);
        assert!(c.certainty.is_exact());
    }

    #[test]
    fn vertices() {
        assert!(vertex_space(&p(BS)).is_empty());
        let v = vertex_space(&p("x0*x2^2 + x1*x2^2"));
        assert!(v.contains(&LinearSubspace::span_of_ints(3, &[vec![1, -1, 0]])));
        let w = vertex_space(&parse_poly("x0*x1^2", Some(3)).unwrap().poly);
        assert!(w.contains(&LinearSubspace::span_of_ints(3, &[vec![0, 0, 1]])));
    }

    #[test]
    fn sampled_points_lie_on_the_hypersurface() {
        let fld = PrimeField::mersenne61();
        let h = parse_poly("x0", Some(3)).unwrap().poly;
        let pt = sample_point_on(&h, &fld, 0).unwrap();
        assert_eq!(pt[0], 0);
        for seed in 0..5 {
            let f = p(BS);
            let pt = sample_point_on(&f, &fld, seed).unwrap();
            assert_eq!(f.eval_mod(&fld, &pt).unwrap(), 0);
        }
        let m = p("x0*x1*x2");
        let pt = sample_point_on(&m, &fld, 3).unwrap();
        assert!(pt.contains(&0));
    }

    #[test]
    fn ranks_along_the_hypersurface() {
        let o = Sampling::default();
        assert_eq!(rank_mod_f(&p(BS), &o).unwrap().certificate.claimed_rank, 4);
        let r = rank_mod_f(&p("x0^3 + x1^3 + x2^3"), &o).unwrap();
        assert_eq!(r.certificate.claimed_rank, 3);
        assert_eq!(r.dual_dim, 1);
    }
}
