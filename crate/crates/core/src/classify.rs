//! Invariant profile of a cubic and its label for `N ≤ 6`.
//!
//! The label records which characteristic profile the invariants match; no
//! projective transformation to a normal form is constructed.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::hessian::{hess_vanishes, rank_mod_f, vertex_space, HessMode, HessVerdict, RankModF, Sampling};
use crate::linalg::LinearSubspace;
use crate::perazzo::{MuEstimate, Perazzo, SpecialVerdict, ZStar};
use crate::polar::{find_relations, RelationBasis};
use crate::poly::MultiPoly;

/// Above this many variables the hessian determinant is not expanded.
pub const SYMBOLIC_HESSIAN_MAX_VARS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    HessNonzero,
    Cone,
    P4Unique,
    P5SpecialConic,
    P6DimZStar1,
    P6DimZStar2,
    Profile,
    Inconsistent,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::HessNonzero => "hess ≠ 0",
            Label::Cone => "cone",
            Label::P4Unique => "P4-unique",
            Label::P5SpecialConic => "P5-special-conic",
            Label::P6DimZStar1 => "P6-dimZ*1",
            Label::P6DimZStar2 => "P6-dimZ*2-quadric-or-cubic-surface",
            Label::Profile => "profile",
            Label::Inconsistent => "inconsistent",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub sampling: Sampling,
    pub max_relation_degree: u32,
    pub zstar_samples: usize,
    pub relations: bool,
    pub rank_mod_f: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            sampling: Sampling::default(),
            max_relation_degree: 3,
            zstar_samples: 12,
            relations: true,
            rank_mod_f: true,
        }
    }
}

/// A named inequality or equality between invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub statement: String,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub nvars: usize,
    pub degree: Option<u32>,
    pub hess: Option<HessVerdict>,
    pub vertex: Option<LinearSubspace>,
    pub generic_rank: Option<usize>,
    pub codim_z: Option<usize>,
    pub relations: Option<RelationBasis>,
    pub mu: Option<MuEstimate>,
    pub special: Option<SpecialVerdict>,
    pub zstar: Option<ZStar>,
    pub rank_mod_f: Option<RankModF>,
    pub checks: Vec<Check>,
    pub label: Label,
    pub notes: Vec<String>,
    /// Some stage stopped on a genericity failure.
    pub genericity_failure: bool,
}

impl Classification {
    /// Projective dimension `N`.
    pub fn ambient_dim(&self) -> usize {
        self.nvars.saturating_sub(1)
    }

    pub fn is_cone(&self) -> Option<bool> {
        self.vertex.as_ref().map(|v| !v.is_empty())
    }

    pub fn zstar_dim(&self) -> Option<isize> {
        self.zstar.as_ref().map(|z| z.dim_estimate)
    }

    /// One-line description of the label and the invariants it rests on.
    pub fn summary(&self) -> String {
        let special = self.special.as_ref().is_some_and(|s| s.special);
        let mu = self.mu.as_ref().map(|m| m.mu);
        match self.label {
            Label::HessNonzero => String::from("hess ≠ 0: the hessian does not vanish"),
            Label::Cone => format!(
                "cone: vanishing hessian, vertex {}",
                self.vertex.as_ref().map(|v| v.equations_string()).unwrap_or_default()
            ),
            Label::P4Unique => {
                String::from("P4-unique: vanishing hessian, not a cone, μ=1, Special, Z* a conic")
            }
            Label::P5SpecialConic => {
                String::from("P5-special-conic: vanishing hessian, not a cone, μ=1, Special, Z* a conic")
            }
            Label::P6DimZStar1 => String::from(
                "P6-dimZ*1: vanishing hessian, not a cone, μ=1, Special, Z* a conic",
            ),
            Label::P6DimZStar2 => format!(
                "P6-dimZ*2-quadric-or-cubic-surface: vanishing hessian, not a cone, μ=2, Special, Z* a surface of degree {}",
                self.zstar.as_ref().and_then(|z| z.fit_degree).map_or(String::from("?"), |d| format!("{d}"))
            ),
            Label::Profile => {
                let mut s = format!("profile: N={}", self.ambient_dim());
                if let Some(c) = self.codim_z {
                    s += &format!(", codim Z={c}");
                }
                if let Some(m) = mu {
                    s += &format!(", μ={m}");
                }
                if self.special.is_some() {
                    s += if special { ", Special" } else { ", not Special" };
                }
                if let Some(d) = self.zstar_dim() {
                    s += &format!(", dim Z*={d}");
                }
                if let Some(r) = &self.rank_mod_f {
                    s += &format!(", rk_f={}", r.certificate.claimed_rank);
                }
                s
            }
            Label::Inconsistent => format!(
                "inconsistent: invariants match no profile for N={} ({})",
                self.ambient_dim(),
                self.notes.last().map(String::as_str).unwrap_or("see notes")
            ),
        }
    }
}

fn note_err(c: &mut Classification, stage: &str, e: &Error) {
    if matches!(e, Error::Genericity(_) | Error::Sampling { .. }) {
        c.genericity_failure = true;
    }
    c.notes.push(format!("{stage}: {e}"));
}

/// Runs the analysis pipeline; later stages are skipped once a stage fails
/// or the form is a cone.
pub fn classify(f: &MultiPoly, opts: &ClassifyOptions) -> Classification {
    classify_observed(f, opts, &mut |_| {})
}

/// [`classify`], calling `on_stage` as each stage starts and with `"done"`
/// at the end.
pub fn classify_observed(
    f: &MultiPoly,
    opts: &ClassifyOptions,
    on_stage: &mut dyn FnMut(&'static str),
) -> Classification {
    let c = run(f, opts, on_stage);
    on_stage("done");
    c
}

fn run(f: &MultiPoly, opts: &ClassifyOptions, on_stage: &mut dyn FnMut(&'static str)) -> Classification {
    let n = f.nvars();
    let mut c = Classification {
        nvars: n,
        degree: f.homogeneous_degree(),
        hess: None,
        vertex: None,
        generic_rank: None,
        codim_z: None,
        relations: None,
        mu: None,
        special: None,
        zstar: None,
        rank_mod_f: None,
        checks: Vec::new(),
        label: Label::Inconsistent,
        notes: Vec::new(),
        genericity_failure: false,
    };
    let mode = if n <= SYMBOLIC_HESSIAN_MAX_VARS {
        HessMode::Symbolic
    } else {
        HessMode::MonteCarlo
    };
    on_stage("hessian");
    match hess_vanishes(f, mode, &opts.sampling) {
        Ok(v) => {
            let vanishes = v.vanishes;
            c.generic_rank = Some(v.certificate.claimed_rank);
            c.codim_z = Some(n - v.certificate.claimed_rank);
            c.hess = Some(v);
            if !vanishes {
                c.label = Label::HessNonzero;
                return c;
            }
        }
        Err(e) => {
            note_err(&mut c, "hessian", &e);
            return c;
        }
    }
    on_stage("cone");
    let vertex = vertex_space(f);
    let cone = !vertex.is_empty();
    c.vertex = Some(vertex);
    if cone {
        c.label = Label::Cone;
        return c;
    }
    if opts.relations {
        on_stage("relations");
        match find_relations(f, opts.max_relation_degree, &opts.sampling) {
            Ok(r) => c.relations = Some(r),
            Err(e) => note_err(&mut c, "relations", &e),
        }
    }
    if opts.rank_mod_f {
        on_stage("rank_mod_f");
        match rank_mod_f(f, &opts.sampling) {
            Ok(r) => c.rank_mod_f = Some(r),
            Err(e) => note_err(&mut c, "rank mod f", &e),
        }
    }
    if c.degree != Some(3) {
        c.notes.push(String::from("Perazzo stages apply to cubics only"));
        c.label = Label::Profile;
        return c;
    }
    on_stage("perazzo");
    if let Err(e) = perazzo_stages(f, opts, &mut c) {
        note_err(&mut c, "perazzo", &e);
        c.label = if n <= 7 { Label::Inconsistent } else { Label::Profile };
        return c;
    }
    add_checks(&mut c);
    c.label = label_for(&mut c);
    c
}

fn perazzo_stages(f: &MultiPoly, opts: &ClassifyOptions, c: &mut Classification) -> Result<()> {
    let p = Perazzo::new(f, opts.sampling.seed)?;
    c.generic_rank = Some(p.generic_rank);
    c.codim_z = Some(p.codim_z());
    let mu = p.rank()?;
    let sp = p.special(&mu);
    c.mu = Some(mu);
    let sp = sp?;
    if sp.inconsistent {
        c.notes.push(String::from(
            "special: fibers share a common space but sampled Z* points leave it",
        ));
    }
    c.special = Some(sp);
    c.zstar = Some(p.zstar(opts.zstar_samples)?);
    Ok(())
}

fn add_checks(c: &mut Classification) {
    let (Some(codim), Some(mu), Some(z)) = (c.codim_z, c.mu.as_ref(), c.zstar.as_ref()) else {
        return;
    };
    let n = c.ambient_dim() as isize;
    let d = z.dim_estimate;
    let codim = codim as isize;
    if codim == 1 {
        c.checks.push(Check {
            name: "perazzo-estimate",
            statement: format!("dim Z* = {d} ≤ (N−1)/2 = {}/2", n - 1),
            holds: 2 * d <= n - 1,
        });
        c.checks.push(Check {
            name: "mu-equals-dim-zstar",
            statement: format!("dim Z* = {d} = μ = {}", mu.mu),
            holds: d == mu.mu,
        });
    }
    c.checks.push(Check {
        name: "dim-zstar-bound",
        statement: format!("dim Z* = {d} ≤ codim Z − 1 + μ = {}", codim - 1 + mu.mu),
        holds: d <= codim - 1 + mu.mu,
    });
    c.checks.push(Check {
        name: "zstar-span-stable",
        statement: String::from("held-out Z* samples lie in the sampled span"),
        holds: z.span_stable,
    });
}

fn label_for(c: &mut Classification) -> Label {
    let n = c.ambient_dim();
    if n >= 7 {
        return Label::Profile;
    }
    let codim = c.codim_z.unwrap_or(0);
    let mu = c.mu.as_ref().map_or(-1, |m| m.mu);
    let special = c.special.as_ref().is_some_and(|s| s.special);
    let dz = c.zstar_dim().unwrap_or(-1);
    let fit = c.zstar.as_ref().and_then(|z| z.fit_degree);
    let checks_ok = c.checks.iter().all(|k| k.holds);
    let conic = dz == 1 && fit == Some(2);
    let label = match n {
        4 if codim == 1 && mu == 1 && special && conic => Some(Label::P4Unique),
        5 if codim == 1 && mu == 1 && special && conic => Some(Label::P5SpecialConic),
        6 if codim == 1 && mu == 1 && special && conic => Some(Label::P6DimZStar1),
        6 if codim == 1 && mu == 2 && special && dz == 2 && matches!(fit, Some(2 | 3)) => {
            Some(Label::P6DimZStar2)
        }
        _ => None,
    };
    match label {
        Some(l) if checks_ok => l,
        Some(_) => {
            c.notes.push(String::from("a consistency check failed"));
            Label::Inconsistent
        }
        None => {
            c.notes.push(format!(
                "codim Z={codim}, μ={mu}, special={special}, dim Z*={dz}, fit degree={fit:?}"
            ));
            Label::Inconsistent
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate, Coefficients, Family, FamilySpec};
    use crate::parse::parse_poly_str;

    fn run(src: &str) -> Classification {
        classify(&parse_poly_str(src).unwrap(), &ClassifyOptions::default())
    }

    #[test]
    fn p4_unique() {
        let c = run("x0*x3^2 + 2*x1*x3*x4 + x2*x4^2");
        assert_eq!(c.label, Label::P4Unique, "{:?}", c.notes);
        assert_eq!(
            c.summary(),
            "P4-unique: vanishing hessian, not a cone, μ=1, Special, Z* a conic"
        );
        assert_eq!(c.rank_mod_f.unwrap().certificate.claimed_rank, 4);
    }

    #[test]
    fn trivial_labels() {
        assert_eq!(run("x0^3 + x1^3 + x2^3").label, Label::HessNonzero);
        let cone = run("x0*x2^2 + 0*x3");
        assert_eq!(cone.label, Label::Cone);
        assert_eq!(cone.vertex.unwrap().rank(), 2);
    }

    #[test]
    fn p5_and_p6() {
        let f = generate(&FamilySpec {
            n: Some(5),
            coeffs: Coefficients::Seeded(3),
            ..FamilySpec::fixed(Family::Mu1)
        })
        .unwrap();
        let c = classify(&f, &ClassifyOptions::default());
        assert_eq!(c.label, Label::P5SpecialConic, "{:?}", c.notes);
        let f = generate(&FamilySpec { n: Some(6), ..FamilySpec::fixed(Family::Mu1) }).unwrap();
        let c = classify(&f, &ClassifyOptions::default());
        assert_eq!(c.label, Label::P6DimZStar1, "{:?}", c.notes);
        let c = classify(&generate(&FamilySpec::fixed(Family::Exdet)).unwrap(), &ClassifyOptions::default());
        assert_eq!(c.label, Label::P6DimZStar2, "{:?}", c.notes);
    }

    #[test]
    fn p7_profile() {
        let c = classify(
            &generate(&FamilySpec::fixed(Family::Det3Section)).unwrap(),
            &ClassifyOptions::default(),
        );
        assert_eq!(c.label, Label::Profile);
        assert_eq!(c.codim_z, Some(1));
        assert_eq!(c.mu.as_ref().unwrap().mu, 2);
        assert!(!c.special.as_ref().unwrap().special);
        assert_eq!(c.rank_mod_f.as_ref().unwrap().certificate.claimed_rank, 6);
        assert!(c.checks.iter().all(|k| k.holds), "{:?}", c.checks);
    }
}
