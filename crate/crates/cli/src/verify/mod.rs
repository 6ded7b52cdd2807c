//! Regression table of the acceptance criteria: one group of rows per
//! criterion, each with expected and actual values.

mod properties;

use std::time::{Duration, Instant};

use serde::Serialize;
use vhess_core::classify::{classify, ClassifyOptions, Label};
use vhess_core::families::{det3_rank2_point, generate, tangent_section, Coefficients, Family, FamilySpec};
use vhess_core::hessian::{generic_rank, hess_vanishes, hessian_matrix, rank_mod_f, vertex_space, Certainty, HessMode, Sampling};
use vhess_core::linalg::ProjPoint;
use vhess_core::perazzo::{perazzo_image, perazzo_matrix_a, Perazzo};
use vhess_core::polar::{find_relations, int_vector, RelationBasis};
use vhess_core::{parse_poly, print_poly, LinearSubspace, MultiPoly, Result};

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub criterion: u8,
    /// Family or corpus the row is about.
    pub subject: &'static str,
    pub check: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub number: u8,
    pub title: &'static str,
    pub rows: Vec<Row>,
    pub millis: f64,
    pub budget_ms: f64,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub include_slow: bool,
    pub filter: Option<String>,
    pub seed: u64,
}

type RunFn = fn(u64, &mut Rows) -> Result<()>;

pub struct Criterion {
    pub number: u8,
    pub title: &'static str,
    pub tags: &'static [&'static str],
    pub slow: bool,
    pub budget: Duration,
    run: RunFn,
}

pub fn criteria() -> Vec<Criterion> {
    let c = |number, title, tags, slow, secs, run| Criterion {
        number,
        title,
        tags,
        slow,
        budget: Duration::from_secs(secs),
        run,
    };
    vec![
        c(1, "Bourgain–Sacksteder cubic in P⁴", &["bs"][..], false, 1, bs as RunFn),
        c(2, "control: x0x3² + x1x4² + x2x5²", &["singp2"], false, 1, singp2),
        c(3, "determinantal Z* cubic in P⁶", &["exdet"], false, 2, exdet),
        c(4, "concatenation in P⁷", &["concat"], false, 2, concat),
        c(5, "juxtapositions in P⁹ and P¹⁴", &["juxtapose"], false, 3, juxtapose),
        c(6, "tangent section of the 3×3 determinant in P⁷", &["det3", "det3_section"], false, 5, det3),
        c(7, "tangent section of the 6×6 Pfaffian in P¹³", &["pf6", "pf6_section"], true, 600, pf6),
        c(8, "property suites", &["properties"], false, 30, properties::run),
        c(9, "classification in P⁶", &["classify", "mu1", "exdet", "classe1"], false, 3, classification),
    ]
}

pub struct Rows {
    criterion: u8,
    rows: Vec<Row>,
}

impl Rows {
    pub fn push(
        &mut self,
        subject: &'static str,
        check: impl Into<String>,
        expected: impl Into<String>,
        actual: impl Into<String>,
        pass: bool,
    ) {
        self.rows.push(Row {
            criterion: self.criterion,
            subject,
            check: check.into(),
            expected: expected.into(),
            actual: actual.into(),
            pass,
        });
    }

    /// Row whose expected and actual values are compared as strings.
    pub fn eq(&mut self, subject: &'static str, check: &str, expected: impl ToString, actual: impl ToString) {
        let (e, a) = (expected.to_string(), actual.to_string());
        let pass = e == a;
        self.push(subject, check, e, a, pass);
    }
}

fn matches(s: &str, filter: &str) -> bool {
    s.to_ascii_lowercase().contains(&filter.to_ascii_lowercase())
}

/// Runs the selected criteria. A filter selects criteria by number or tag;
/// when it names only a subject, the other rows are dropped.
pub fn run(opts: &VerifyOptions) -> Vec<CriterionResult> {
    let mut out = Vec::new();
    for c in criteria() {
        if c.slow && !opts.include_slow {
            continue;
        }
        let whole = match &opts.filter {
            None => true,
            Some(f) => f == &c.number.to_string() || matches(c.title, f),
        };
        if !whole && !c.tags.iter().any(|t| opts.filter.as_deref().is_some_and(|f| matches(t, f))) {
            continue;
        }
        let mut rows = Rows {
            criterion: c.number,
            rows: Vec::new(),
        };
        let start = Instant::now();
        if let Err(e) = (c.run)(opts.seed, &mut rows) {
            rows.push("-", "completes", "no error", e.to_string(), false);
        }
        let elapsed = start.elapsed();
        rows.push(
            "-",
            "runtime",
            format!("< {} s", c.budget.as_secs()),
            format!("{:.3} s", elapsed.as_secs_f64()),
            elapsed <= c.budget,
        );
        let mut rows = rows.rows;
        if !whole {
            let f = opts.filter.as_deref().unwrap_or_default();
            rows.retain(|r| r.subject == "-" || matches(r.subject, f));
        }
        out.push(CriterionResult {
            number: c.number,
            title: c.title,
            rows,
            millis: elapsed.as_secs_f64() * 1e3,
            budget_ms: c.budget.as_secs_f64() * 1e3,
        });
    }
    out
}

pub fn render_table(results: &[CriterionResult]) -> String {
    let header = ["#", "subject", "check", "expected", "actual", "status"];
    let rows: Vec<[String; 6]> = results
        .iter()
        .flat_map(|c| &c.rows)
        .map(|r| {
            [
                r.criterion.to_string(),
                r.subject.to_string(),
                r.check.clone(),
                r.expected.clone(),
                r.actual.clone(),
                String::from(if r.pass { "pass" } else { "FAIL" }),
            ]
        })
        .collect();
    let mut width = header.map(|h| h.chars().count());
    for r in &rows {
        for (w, cell) in width.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[&str]| {
        let mut s = String::new();
        for (i, cell) in cells.iter().enumerate() {
            s += cell;
            if i + 1 < cells.len() {
                s += &" ".repeat(width[i] - cell.chars().count() + 2);
            }
        }
        s
    };
    let mut out = vec![line(&header)];
    let mut next = rows.iter();
    for c in results {
        out.push(format!("-- {} {}", c.number, c.title));
        for r in next.by_ref().take(c.rows.len()) {
            out.push(line(&r.each_ref().map(String::as_str)));
        }
    }
    let failed = results.iter().filter(|c| !c.passed()).count();
    out.push(format!(
        "{} criteria, {} passed, {} failed",
        results.len(),
        results.len() - failed,
        failed
    ));
    out.join("\n") + "\n"
}

fn fam(f: Family) -> MultiPoly {
    generate(&FamilySpec::fixed(f)).expect("fixed family")
}

fn in_vars(src: &str, nvars: usize) -> MultiPoly {
    parse_poly(src, Some(nvars)).expect("valid literal").poly
}

fn relations_contain(r: &RelationBasis, g: &MultiPoly) -> bool {
    let mut rows = r.basis.clone();
    rows.push(g.clone());
    span_dim(&rows) == r.basis.len()
}

/// Dimension of the span of a list of polynomials.
fn span_dim(polys: &[MultiPoly]) -> usize {
    let mut monos: Vec<_> = polys.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    let rows: Vec<Vec<_>> = polys.iter().map(|p| monos.iter().map(|m| p.coeff(m)).collect()).collect();
    vhess_core::linalg::rank(&vhess_core::Rationals, &rows)
}

fn certainty_str(c: &Certainty) -> String {
    c.to_string()
}

fn relation_rows(rows: &mut Rows, subject: &'static str, r: &RelationBasis, expect: &[&str], nvars: usize, exact_dim: bool) {
    rows.push(
        subject,
        "relation degree",
        "2",
        r.degree.map_or("none".into(), |d| d.to_string()),
        r.degree == Some(2),
    );
    if exact_dim {
        rows.eq(subject, "degree-2 relation space dim", expect.len(), r.basis.len());
    }
    for e in expect {
        let g = in_vars(&e.replace('y', "x"), nvars);
        rows.push(
            subject,
            "relation found",
            *e,
            r.printed().join("; "),
            relations_contain(r, &g),
        );
    }
}

fn bs(seed: u64, rows: &mut Rows) -> Result<()> {
    let f = fam(Family::Bs);
    let s = Sampling::with_seed(seed);
    let h = hess_vanishes(&f, HessMode::Symbolic, &s)?;
    rows.push("bs", "hess (symbolic)", "0, exact", format!("{}, {}", if h.vanishes { "0" } else { "nonzero" }, h.certainty), h.vanishes && h.certainty.is_exact());
    rows.eq("bs", "cone", "no", if vertex_space(&f).is_empty() { "no" } else { "yes" });
    rows.eq("bs", "codim Z", 1, f.nvars() - h.certificate.claimed_rank);
    let r = find_relations(&f, 2, &s)?;
    relation_rows(rows, "bs", &r, &["y0*y2 - y1^2"], 5, true);
    let p = Perazzo::new(&f, seed)?;
    let mu = p.rank()?;
    rows.eq("bs", "μ", 1, mu.mu);
    let sp = p.special(&mu)?;
    rows.eq("bs", "Special", true, sp.special);
    rows.eq("bs", "L", "V(x3, x4)", sp.l.map_or("none".into(), |l| l.to_string()));
    let z = p.zstar(12)?;
    let want = in_vars("4*x0*x2 - x1^2", 5);
    rows.push("bs", "Z* fit (up to scalar)", print_poly(&want), z.fit().map_or("none".into(), print_poly), z.fit().is_some_and(|g| g.proportional(&want)));
    let rf = rank_mod_f(&f, &s)?;
    rows.eq("bs", "rank mod f", 4, rf.certificate.claimed_rank);
    Ok(())
}

fn singp2(seed: u64, rows: &mut Rows) -> Result<()> {
    let f = fam(Family::Singp2);
    let h = hess_vanishes(&f, HessMode::Symbolic, &Sampling::with_seed(seed))?;
    rows.push("singp2", "hess (symbolic)", "nonzero, exact", format!("{}, {}", if h.vanishes { "0" } else { "nonzero" }, h.certainty), !h.vanishes && h.certainty.is_exact());
    Ok(())
}

fn exdet(seed: u64, rows: &mut Rows) -> Result<()> {
    let f = fam(Family::Exdet);
    let h = hess_vanishes(&f, HessMode::Symbolic, &Sampling::with_seed(seed))?;
    rows.eq("exdet", "hess (symbolic)", "0", if h.vanishes { "0" } else { "nonzero" });
    let p = Perazzo::new(&f, seed)?;
    let mu = p.rank()?;
    rows.eq("exdet", "μ", 2, mu.mu);
    rows.eq("exdet", "fiber dimension", 4, mu.fiber_dim);
    let sp = p.special(&mu)?;
    rows.eq("exdet", "Special", true, sp.special);
    rows.eq("exdet", "L", "V(x4, x5, x6)", sp.l.map_or("none".into(), |l| l.to_string()));
    let (a, det) = perazzo_matrix_a(&f, 3)?;
    rows.eq("exdet", "matrix A", "[[2*x1, x0, x2], [x0, 0, x3], [x2, x3, 0]]", a);
    rows.eq("exdet", "det A", "2*x0*x2*x3 - 2*x1*x3^2", print_poly(&det));
    let z = p.zstar(12)?;
    let want = in_vars("x0*x2 - x1*x3", 7);
    rows.push("exdet", "Z* fit (up to scalar)", print_poly(&want), z.fit().map_or("none".into(), print_poly), z.fit().is_some_and(|g| g.proportional(&want)));
    rows.push(
        "exdet",
        "fit degree < σ",
        "2 < 3",
        format!("{} < 3", z.fit_degree.map_or("none".into(), |d| d.to_string())),
        z.fit_degree == Some(2),
    );
    Ok(())
}

fn concat(seed: u64, rows: &mut Rows) -> Result<()> {
    let f = fam(Family::Concat);
    let s = Sampling::with_seed(seed);
    rows.eq("concat", "cone", "no", if vertex_space(&f).is_empty() { "no" } else { "yes" });
    let r = find_relations(&f, 2, &s)?;
    relation_rows(rows, "concat", &r, &["y0*y2 - y1^2", "y2*y6 - y5^2"], 8, true);
    let g = generic_rank(&hessian_matrix(&f), &s)?;
    rows.eq("concat", "generic hessian rank", 6, g.claimed_rank);
    rows.eq("concat", "codim Z", 2, f.nvars() - g.claimed_rank);
    Ok(())
}

fn juxtapose(seed: u64, rows: &mut Rows) -> Result<()> {
    let s = Sampling::with_seed(seed);
    let cases: [(&'static str, usize, &[&str]); 2] = [
        ("juxtapose", 2, &["y0*y2 - y1^2", "y5*y7 - y6^2"]),
        ("juxtapose-3", 3, &["y0*y2 - y1^2", "y5*y7 - y6^2", "y10*y12 - y11^2"]),
    ];
    for (subject, copies, rels) in cases {
        let f = generate(&FamilySpec { param: Some(copies), ..FamilySpec::fixed(Family::Juxtapose) })?;
        let h = hess_vanishes(&f, HessMode::Symbolic, &s)?;
        rows.eq(subject, "variables", 5 * copies, f.nvars());
        rows.eq(subject, "hess (symbolic)", "0", if h.vanishes { "0" } else { "nonzero" });
        rows.eq(subject, "cone", "no", if vertex_space(&f).is_empty() { "no" } else { "yes" });
        let r = find_relations(&f, 2, &s)?;
        relation_rows(rows, subject, &r, rels, f.nvars(), false);
    }
    Ok(())
}

fn det3(seed: u64, rows: &mut Rows) -> Result<()> {
    let s = Sampling::with_seed(seed);
    let f = fam(Family::Det3Section);
    let t = tangent_section(&fam(Family::Det3), &det3_rank2_point())?;
    rows.push("det3_section", "equals tangent section at diag(1,1,0)", print_poly(&f), print_poly(&t), f == t);
    let r = find_relations(&f, 2, &s)?;
    relation_rows(rows, "det3_section", &r, &["y0*y4 - y1*y3"], 8, true);
    let p = Perazzo::new(&f, seed)?;
    rows.eq("det3_section", "generic hessian rank", 7, p.generic_rank);
    rows.eq("det3_section", "dim Z", 6, p.generic_rank - 1);
    let mu = p.rank()?;
    rows.eq("det3_section", "fiber dimension", 5, mu.fiber_dim);
    rows.eq("det3_section", "μ", 2, mu.mu);
    let sp = p.special(&mu)?;
    rows.push(
        "det3_section",
        "pairwise fiber meets",
        "P³ each",
        format!("{:?}", sp.meet_dims),
        sp.meet_dims.iter().all(|&d| d == 3),
    );
    rows.eq("det3_section", "Special", false, sp.special);
    let z = p.zstar(12)?;
    rows.eq("det3_section", "Z* span", "V(x2, x5, x6, x7)", &z.span);
    let want = in_vars("x0*x4 - x1*x3", 8);
    rows.push("det3_section", "Z* fit (up to scalar)", print_poly(&want), z.fit().map_or("none".into(), print_poly), z.fit().is_some_and(|g| g.proportional(&want)));
    // (a0:a1:0:a3:a4:0:0:0) with a0·a4 = a1·a3
    let (a0, a1, a3, a4) = (1i64, 2, 3, 6);
    let pt = ProjPoint::new(int_vector(&[a0, a1, 0, a3, a4, 0, 0, 0])).expect("nonzero");
    let img = perazzo_image(&f, &pt)?;
    let want = LinearSubspace::from_equations(
        8,
        &[int_vector(&[0, 0, -a4, 0, 0, a1, 0, 0]), int_vector(&[0, 0, 0, 0, 0, 0, -a4, a3])],
    );
    rows.push("det3_section", "Perazzo image at (1:2:0:3:6:0:0:0)", want.to_string(), img.to_string(), img == want);
    let rf = rank_mod_f(&f, &s)?;
    rows.eq("det3_section", "rank mod f", 6, rf.certificate.claimed_rank);
    rows.eq("det3_section", "dim X*", 4, rf.dual_dim);
    Ok(())
}

fn pf6(seed: u64, rows: &mut Rows) -> Result<()> {
    let s = Sampling::with_seed(seed);
    let f = fam(Family::Pf6Section);
    rows.eq("pf6_section", "variables", 14, f.nvars());
    let g = generic_rank(&hessian_matrix(&f), &s)?;
    let bound = 2f64.powi(-40);
    let ok = |c: &Certainty| matches!(c, Certainty::MonteCarlo { failure_bound } if *failure_bound < bound) || c.is_exact();
    rows.push("pf6_section", "generic hessian rank", "13", format!("{} ({})", g.claimed_rank, certainty_str(&g.certainty)), g.claimed_rank == 13 && ok(&g.certainty));
    rows.eq("pf6_section", "primes used", 2, g.primes_used.len());
    let rf = rank_mod_f(&f, &s)?;
    rows.push(
        "pf6_section",
        "rank mod f",
        "10",
        format!("{} ({})", rf.certificate.claimed_rank, certainty_str(&rf.certificate.certainty)),
        rf.certificate.claimed_rank == 10 && ok(&rf.certificate.certainty),
    );
    Ok(())
}

fn classification(seed: u64, rows: &mut Rows) -> Result<()> {
    let opts = ClassifyOptions {
        sampling: Sampling::with_seed(seed),
        ..ClassifyOptions::default()
    };
    let mu1 = generate(&FamilySpec {
        n: Some(6),
        coeffs: Coefficients::Seeded(seed),
        ..FamilySpec::fixed(Family::Mu1)
    })?;
    let c = classify(&mu1, &opts);
    rows.eq("mu1", "label", Label::P6DimZStar1, c.label);
    rows.eq("mu1", "dim Z*", 1, c.zstar_dim().unwrap_or(-1));
    let c = classify(&fam(Family::Exdet), &opts);
    rows.eq("exdet", "label", Label::P6DimZStar2, c.label);
    rows.eq("exdet", "dim Z*", 2, c.zstar_dim().unwrap_or(-1));
    let cone = generate(&FamilySpec {
        family: Family::Classe1,
        n: Some(6),
        param: Some(4),
        coeffs: Coefficients::Seeded(seed),
    })?;
    let c = classify(&cone, &opts);
    rows.eq("classe1", "label of classe1(N=6, τ=4)", Label::Cone, c.label);
    Ok(())
}
