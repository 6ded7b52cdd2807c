//! Seed-pinned randomized checks of the structural identities, at least 100
//! cases each.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use vhess_core::families::{generate, Coefficients, Family, FamilySpec};
use vhess_core::hessian::{hess_vanishes, hessian_matrix, vertex_space, HessMode, Sampling};
use vhess_core::linalg::{rank, ProjPoint};
use vhess_core::perazzo::{Perazzo, ZStar};
use vhess_core::polar::{find_relations, gn_map_build, polar_hypersurface, restrict_to_hyperplane, GNMap};
use vhess_core::poly::factorial;
use vhess_core::rng::{nonzero_int, stream};
use vhess_core::{parse_poly, Monomial, MultiPoly, Rationals, Result};

use super::Rows;

const CASES: usize = 100;

struct Member {
    name: &'static str,
    f: MultiPoly,
    codim_z: usize,
    mu: isize,
    special: bool,
    gn: Vec<GNMap>,
    zstar: ZStar,
}

fn corpus(seed: u64) -> Result<Vec<Member>> {
    let fixed = |f| generate(&FamilySpec::fixed(f));
    let list: Vec<(&'static str, MultiPoly)> = vec![
        ("bs", fixed(Family::Bs)?),
        ("p4-canonical", parse_poly("x0*x3^2 + 2*x1*x3*x4 + x2*x4^2", None)?.poly),
        ("exdet", fixed(Family::Exdet)?),
        ("concat", fixed(Family::Concat)?),
        ("juxtapose", fixed(Family::Juxtapose)?),
        ("juxtapose-3", generate(&FamilySpec { param: Some(3), ..FamilySpec::fixed(Family::Juxtapose) })?),
        ("det3_section", fixed(Family::Det3Section)?),
        ("mu1-5", generate(&FamilySpec { n: Some(5), ..FamilySpec::fixed(Family::Mu1) })?),
        ("mu1-6", generate(&FamilySpec { n: Some(6), ..FamilySpec::fixed(Family::Mu1) })?),
    ];
    let s = Sampling::with_seed(seed);
    list.into_iter()
        .map(|(name, f)| {
            let p = Perazzo::new(&f, seed)?;
            let mu = p.rank()?;
            let special = p.special(&mu)?.special;
            let zstar = p.zstar(12)?;
            let rel = find_relations(&f, 3, &s)?;
            let gn = rel.basis.iter().map(|g| gn_map_build(&f, g)).collect::<Result<_>>()?;
            Ok(Member {
                name,
                codim_z: p.codim_z(),
                mu: mu.mu,
                special,
                gn,
                zstar,
                f,
            })
        })
        .collect()
}

fn q(a: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(a))
}

fn grad_at(f: &MultiPoly, x: &[BigRational]) -> Vec<BigRational> {
    f.gradient().iter().map(|d| d.eval(x)).collect()
}

fn axpy(x: &[BigRational], l: &BigRational, y: &[BigRational]) -> Vec<BigRational> {
    x.iter().zip(y).map(|(a, b)| a + l * b).collect()
}

fn small_point(r: &mut ChaCha8Rng, n: usize) -> Vec<BigRational> {
    (0..n).map(|_| q(r.gen_range(-30..=30))).collect()
}

fn random_form(r: &mut ChaCha8Rng, nvars: usize, deg: u32, terms: usize) -> MultiPoly {
    let monos = Monomial::all_of_degree(nvars, deg);
    let mut f = MultiPoly::zero(nvars);
    while f.is_zero() {
        for _ in 0..terms {
            let m = monos[r.gen_range(0..monos.len())].clone();
            f.add_term(m, q(nonzero_int(r, 5)));
        }
    }
    f
}

fn report(rows: &mut Rows, name: &str, cases: usize, failures: Vec<String>) {
    let actual = match failures.first() {
        None => format!("{cases} cases, 0 failures"),
        Some(first) => format!("{cases} cases, {} failures (first: {first})", failures.len()),
    };
    rows.push("properties", name, format!("≥ {CASES} cases, 0 failures"), actual, failures.is_empty() && cases >= CASES);
}

pub(super) fn run(seed: u64, rows: &mut Rows) -> Result<()> {
    let members = corpus(seed)?;
    reciprocity(seed, rows);
    euler(seed, rows);
    gordan_noether(seed, &members, rows);
    second_partials(&members, rows);
    restriction(seed, rows);
    pencil(seed, &members, rows)?;
    classe1(seed, rows)?;
    canonical_forms(seed, rows)?;
    fiber_linearity(seed, &members, rows)?;
    bounds(&members, rows);
    zstar_inclusions(seed, &members, rows);
    Ok(())
}

fn reciprocity(seed: u64, rows: &mut Rows) {
    let mut fails = Vec::new();
    for k in 0..CASES {
        let mut r = stream(seed, 80_000 + k as u64);
        let (n, d) = if k % 2 == 0 { (4, 3) } else { (3, 4) };
        let f = random_form(&mut r, n, d, 8);
        let (Some(p), Some(qp)) = (ProjPoint::new(small_point(&mut r, n)), ProjPoint::new(small_point(&mut r, n))) else {
            continue;
        };
        for s in 1..d {
            let a = polar_hypersurface(&f, &qp, s).map(|h| h.poly.eval(p.coords()));
            let b = polar_hypersurface(&f, &p, d - s).map(|h| h.poly.eval(qp.coords()));
            let (Ok(a), Ok(b)) = (a, b) else {
                fails.push(format!("case {k}: polar failed"));
                continue;
            };
            let fa = BigRational::from_integer(factorial(s));
            let fb = BigRational::from_integer(factorial(d - s));
            if a.is_zero() != b.is_zero() || a * fa != b * fb {
                fails.push(format!("case {k}, s = {s}"));
            }
        }
    }
    report(rows, "reciprocity of polars", CASES, fails);
}

fn euler(seed: u64, rows: &mut Rows) {
    let mut fails = Vec::new();
    for k in 0..CASES {
        let mut r = stream(seed, 81_000 + k as u64);
        let d = 2 + (k % 4) as u32;
        let f = random_form(&mut r, 4, d, 10);
        if f.euler() != f.scale_int(d as i64) {
            fails.push(format!("case {k}"));
        }
    }
    report(rows, "Euler relation", CASES, fails);
}

fn gordan_noether(seed: u64, members: &[Member], rows: &mut Rows) {
    let mut fails = Vec::new();
    let mut cases = 0;
    for k in 0..CASES {
        let m = &members[k % members.len()];
        let mut r = stream(seed, 82_000 + k as u64);
        let x = small_point(&mut r, m.f.nvars());
        let lambda = q(nonzero_int(&mut r, 50));
        for gn in &m.gn {
            let psi = gn.eval(&x);
            let Some(px) = ProjPoint::new(psi.clone()) else { continue };
            let y = axpy(&x, &lambda, &psi);
            let grad_ok = grad_at(&m.f, &y) == grad_at(&m.f, &x);
            let idem_ok = ProjPoint::new(gn.eval(&y)).is_some_and(|py| py == px);
            if !grad_ok || !idem_ok {
                fails.push(format!("{} case {k}", m.name));
            }
        }
        cases += 1;
    }
    report(rows, "Gordan–Noether identities", cases, fails);
}

fn second_partials(members: &[Member], rows: &mut Rows) {
    let mut fails = Vec::new();
    let mut cases = 0;
    for m in members {
        let h = hessian_matrix(&m.f);
        for gn in &m.gn {
            for j in 0..m.f.nvars() {
                let mut s = MultiPoly::zero(m.f.nvars());
                for (i, c) in gn.components.iter().enumerate() {
                    s = &s + &(h.get(i, j) * c);
                }
                cases += 1;
                if !s.is_zero() {
                    fails.push(format!("{} column {j}", m.name));
                }
            }
        }
    }
    report(rows, "hessian annihilates ψ_g (exact)", cases, fails);
}

fn restriction(seed: u64, rows: &mut Rows) {
    let mut fails = Vec::new();
    for k in 0..CASES {
        let mut r = stream(seed, 83_000 + k as u64);
        let f = random_form(&mut r, 4, 3, 10);
        let h: Vec<BigRational> = (0..4).map(|_| q(nonzero_int(&mut r, 4))).collect();
        let Ok(res) = restrict_to_hyperplane(&f, &h) else { continue };
        let y = small_point(&mut r, 3);
        let x: Vec<BigRational> = res.chart.iter().map(|c| c.eval(&y)).collect();
        let v = grad_at(&f, &x);
        let e = res.eliminated;
        let projected: Vec<BigRational> = res.kept.iter().map(|&i| &v[i] - &h[i] / &h[e] * &v[e]).collect();
        if grad_at(&res.poly, &y) != projected {
            fails.push(format!("case {k}"));
        }
    }
    report(rows, "restriction commutes with projection", CASES, fails);
}

fn pencil(seed: u64, members: &[Member], rows: &mut Rows) -> Result<()> {
    let mut fails = Vec::new();
    let perazzos: Vec<Perazzo> = members.iter().map(|m| Perazzo::new(&m.f, seed)).collect::<Result<_>>()?;
    for k in 0..CASES {
        let i = k % members.len();
        let p = &perazzos[i];
        let base = 84_000 + 4 * k as u64;
        let mut span = p.general_point(base)?.image;
        for j in 1..3 {
            span = span.join(&p.general_point(base + j)?.image);
        }
        let h = p.hessian().eval(&p.general_point(base + 3)?.point);
        let b = span.basis_rational();
        let ok = b.iter().all(|v| {
            b.iter().all(|w| {
                let mut s = BigRational::zero();
                for (a, row) in h.iter().enumerate() {
                    for (c, e) in row.iter().enumerate() {
                        s += e * &v[a] * &w[c];
                    }
                }
                s.is_zero()
            })
        });
        if !ok {
            fails.push(format!("{} case {k}", members[i].name));
        }
    }
    report(rows, "span of Sing Q lies in a general Q", CASES, fails);
    Ok(())
}

fn classe1(seed: u64, rows: &mut Rows) -> Result<()> {
    let mut fails = Vec::new();
    let s = Sampling::with_seed(seed);
    for k in 0..CASES {
        let mut r = stream(seed, 85_000 + k as u64);
        let n = r.gen_range(2..=8usize);
        let tau = r.gen_range(1..n);
        let f = generate(&FamilySpec {
            family: Family::Classe1,
            n: Some(n),
            param: Some(tau),
            coeffs: Coefficients::Seeded(seed ^ k as u64),
        })?;
        if 2 * tau > n - 1 && !hess_vanishes(&f, HessMode::MonteCarlo, &s)?.vanishes {
            fails.push(format!("hess ≠ 0 for N={n} τ={tau}"));
        }
        let c = n - tau;
        if tau + 1 > c * (c + 1) / 2 && vertex_space(&f).is_empty() {
            fails.push(format!("not a cone for N={n} τ={tau}"));
        }
    }
    report(rows, "linear-in-head cubics: hess = 0 / cone", CASES, fails);
    Ok(())
}

fn canonical_forms(seed: u64, rows: &mut Rows) -> Result<()> {
    let mut fails = Vec::new();
    let s = Sampling::with_seed(seed);
    for k in 0..CASES {
        let mut r = stream(seed, 86_000 + k as u64);
        let n = r.gen_range(4..=8usize);
        let sigma = r.gen_range(2..=n / 2);
        let family = if k % 2 == 0 { Family::CanSpch } else { Family::Simplified };
        let f = generate(&FamilySpec {
            family,
            n: Some(n),
            param: Some(sigma),
            coeffs: Coefficients::Seeded(seed ^ (k as u64) << 8),
        })?;
        let v = hess_vanishes(&f, HessMode::MonteCarlo, &s)?;
        if !v.vanishes || v.certificate.claimed_rank != n {
            fails.push(format!("{family} N={n} σ={sigma}: rank {}", v.certificate.claimed_rank));
        }
    }
    report(rows, "canonical forms: hess = 0, codim Z = 1", CASES, fails);
    Ok(())
}

fn fiber_linearity(seed: u64, members: &[Member], rows: &mut Rows) -> Result<()> {
    let mut fails = Vec::new();
    let mut cases = 0;
    let perazzos: Vec<Perazzo> = members.iter().map(|m| Perazzo::new(&m.f, seed)).collect::<Result<_>>()?;
    let mut k = 0;
    while cases < CASES && k < 4 * CASES {
        k += 1;
        let i = k % members.len();
        let p = &perazzos[i];
        let g = p.general_point(87_000 + k as u64)?;
        let fiber = p.fiber_of(&g.image);
        if !fiber.contains_vector(&g.point) {
            fails.push(format!("{}: p not in its fiber", members[i].name));
        }
        let mut r = stream(seed, 88_000 + k as u64);
        let c: Vec<BigRational> = (0..fiber.rank()).map(|_| q(nonzero_int(&mut r, 50))).collect();
        let p2 = fiber.combine(&c);
        if rank(&Rationals, &p.hessian().eval(&p2)) != p.generic_rank {
            continue;
        }
        cases += 1;
        if p.image_of(&p2) != g.image {
            fails.push(format!("{} case {k}", members[i].name));
        }
    }
    report(rows, "Perazzo map constant on fibers", cases, fails);
    Ok(())
}

fn bounds(members: &[Member], rows: &mut Rows) {
    let mut fails = Vec::new();
    for m in members {
        let n = m.f.nvars() as isize - 1;
        let codim = m.codim_z as isize;
        let d = m.zstar.dim_estimate;
        if d > codim - 1 + m.mu {
            fails.push(format!("{}: dim Z* {d} > codim Z − 1 + μ", m.name));
        }
        if codim == 1 && (2 * d > n - 1 || d != m.mu) {
            fails.push(format!("{}: dim Z* {d}, N {n}, μ {}", m.name, m.mu));
        }
    }
    let ok = fails.is_empty();
    rows.push(
        "properties",
        "dim Z* ≤ codim Z − 1 + μ and ≤ (N−1)/2",
        format!("all {} corpus members", members.len()),
        if ok { format!("all {} hold", members.len()) } else { fails.join("; ") },
        ok,
    );
}

fn zstar_inclusions(seed: u64, members: &[Member], rows: &mut Rows) {
    let mut sing = Vec::new();
    let mut chords = Vec::new();
    let special: Vec<&Member> = members.iter().filter(|m| m.special).collect();
    for k in 0..CASES {
        let m = &members[k % members.len()];
        let s = &m.zstar.samples;
        let z = &s[(k / members.len()) % s.len()];
        if !grad_at(&m.f, z).iter().all(Zero::is_zero) {
            sing.push(format!("{}: sample not singular", m.name));
        }
        if m.codim_z == 1 && m.gn.iter().any(|gn| !gn.eval(z).iter().all(Zero::is_zero)) {
            sing.push(format!("{}: sample outside the base locus", m.name));
        }
        let m = special[k % special.len()];
        let mut r = stream(seed, 89_000 + k as u64);
        let s = &m.zstar.samples;
        let a = &s[r.gen_range(0..s.len())];
        let b = &s[r.gen_range(0..s.len())];
        let chord = axpy(a, &q(nonzero_int(&mut r, 40)), b);
        if !grad_at(&m.f, &chord).iter().all(Zero::is_zero) {
            chords.push(format!("{} case {k}", m.name));
        }
    }
    report(rows, "Z* ⊆ Sing X and Z* ⊆ Bs(ψ_g)", CASES, sing);
    report(rows, "chords of Z* lie in Sing X", CASES, chords);
}
