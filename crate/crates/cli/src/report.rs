//! Serializable analysis report. Every numeric invariant carries a certainty
//! tag saying how it was obtained.

use serde::{Deserialize, Serialize};
use vhess_core::classify::Classification;
use vhess_core::hessian::{Certainty, RankCertificate, Sampling};
use vhess_core::perazzo::{SPECIAL_FIBERS, VOTES};
use vhess_core::{print_poly, LinearSubspace, MultiPoly};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Tag {
    /// Exact rational computation.
    Exact,
    /// Randomized over prime fields; wrong with probability at most the bound.
    MonteCarlo { failure_bound: f64 },
    /// Exact computations at random points, value agreed by a majority.
    MajorityVote { agreeing: usize, of: usize },
    /// Exact computations agreeing at `points` random general points.
    Witnessed { points: usize },
    /// Rank of a Jacobian at random points over GF(p): a lower bound that is
    /// attained for all but finitely many choices.
    Sampled { prime: u64 },
}

impl From<Certainty> for Tag {
    fn from(c: Certainty) -> Self {
        match c {
            Certainty::Exact => Tag::Exact,
            Certainty::MonteCarlo { failure_bound } => Tag::MonteCarlo { failure_bound },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tagged<T> {
    pub value: T,
    pub certainty: Tag,
}

impl<T> Tagged<T> {
    fn new(value: T, certainty: Tag) -> Self {
        Tagged { value, certainty }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Subspace {
    /// Equations, e.g. `V(x3, x4)`.
    pub equations: String,
    /// Projective dimension (−1 for the empty space).
    pub dim: isize,
    /// Basis vectors as integer strings.
    pub basis: Vec<Vec<String>>,
}

impl From<&LinearSubspace> for Subspace {
    fn from(s: &LinearSubspace) -> Self {
        Subspace {
            equations: s.to_string(),
            dim: s.proj_dim(),
            basis: s
                .basis()
                .iter()
                .map(|v| v.iter().map(|a| a.to_string()).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Input {
    pub polynomial: String,
    pub nvars: usize,
    /// Projective dimension `N`.
    pub ambient_dim: usize,
    pub degree: Option<u32>,
    pub homogeneous: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Seeds {
    pub seed: u64,
    pub trials: usize,
    pub primes: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub claimed_rank: usize,
    pub witness_prime: u64,
    /// Residues mod `witness_prime` of the point where the rank is attained.
    pub witness_point: Vec<u64>,
    pub trials: usize,
    pub primes_used: Vec<u64>,
}

impl From<&RankCertificate> for Certificate {
    fn from(c: &RankCertificate) -> Self {
        Certificate {
            claimed_rank: c.claimed_rank,
            witness_prime: c.witness_prime,
            witness_point: c.witness_point.clone(),
            trials: c.trials,
            primes_used: c.primes_used.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hessian {
    pub vanishes: Tagged<bool>,
    pub generic_rank: Tagged<usize>,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cone {
    pub is_cone: Tagged<bool>,
    pub vertex: Subspace,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Relations {
    pub degree: Option<u32>,
    pub basis: Vec<String>,
    /// No relation of lower degree exists.
    pub minimal: bool,
    pub searched_up_to: u32,
    /// Relations are verified by exact substitution.
    pub certainty: Tag,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Special {
    pub special: Tagged<bool>,
    pub l: Option<Subspace>,
    pub meet_dims: Vec<isize>,
    pub common_meet: Option<Subspace>,
    pub zstar_in_l: Option<bool>,
    pub inconsistent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZStarReport {
    pub span: Subspace,
    pub span_stable: bool,
    pub fit: Option<String>,
    pub fit_degree: Option<u32>,
    pub fit_equations: Vec<String>,
    pub dim: Tagged<isize>,
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankModF {
    pub rank: Tagged<usize>,
    pub dual_dim: Tagged<isize>,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub statement: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub stage: String,
    pub millis: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub input: Input,
    pub seeds: Seeds,
    pub hessian: Option<Hessian>,
    pub cone: Option<Cone>,
    pub codim_z: Option<Tagged<usize>>,
    pub relations: Option<Relations>,
    pub mu: Option<Tagged<isize>>,
    pub fiber_dim: Option<Tagged<isize>>,
    pub special: Option<Special>,
    pub zstar: Option<ZStarReport>,
    pub rank_mod_f: Option<RankModF>,
    pub checks: Vec<CheckReport>,
    pub label: String,
    pub summary: String,
    pub notes: Vec<String>,
    pub genericity_failure: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<Timing>>,
}

fn vote_tag(votes: &[isize], value: isize) -> Tag {
    Tag::MajorityVote {
        agreeing: votes.iter().filter(|v| **v == value).count(),
        of: votes.len().max(VOTES),
    }
}

impl AnalysisReport {
    pub fn build(
        f: &MultiPoly,
        homogeneous: bool,
        sampling: &Sampling,
        c: &Classification,
        timings: Option<Vec<Timing>>,
    ) -> Self {
        let rank_tag = |cert: &RankCertificate| Tag::from(cert.certainty);
        let hessian = c.hess.as_ref().map(|h| Hessian {
            vanishes: Tagged::new(h.vanishes, h.certainty.into()),
            generic_rank: Tagged::new(h.certificate.claimed_rank, rank_tag(&h.certificate)),
            certificate: (&h.certificate).into(),
        });
        let codim_z = match (&c.hess, c.codim_z) {
            (Some(h), Some(v)) => Some(Tagged::new(v, rank_tag(&h.certificate))),
            _ => None,
        };
        let cone = c.vertex.as_ref().map(|v| Cone {
            is_cone: Tagged::new(!v.is_empty(), Tag::Exact),
            vertex: v.into(),
        });
        let relations = c.relations.as_ref().map(|r| Relations {
            degree: r.degree,
            basis: r.printed(),
            minimal: r.minimal,
            searched_up_to: r.searched_up_to,
            certainty: Tag::Exact,
        });
        let mu = c.mu.as_ref().map(|m| Tagged::new(m.mu, vote_tag(&m.votes, m.fiber_dim)));
        let fiber_dim = c
            .mu
            .as_ref()
            .map(|m| Tagged::new(m.fiber_dim, vote_tag(&m.votes, m.fiber_dim)));
        let special = c.special.as_ref().map(|s| Special {
            special: Tagged::new(
                s.special,
                Tag::Witnessed {
                    points: SPECIAL_FIBERS,
                },
            ),
            l: s.l.as_ref().map(Into::into),
            meet_dims: s.meet_dims.clone(),
            common_meet: s.common_meet.as_ref().map(Into::into),
            zstar_in_l: s.zstar_in_l,
            inconsistent: s.inconsistent,
        });
        let zstar = c.zstar.as_ref().map(|z| ZStarReport {
            span: (&z.span).into(),
            span_stable: z.span_stable,
            fit: z.fit().map(print_poly),
            fit_degree: z.fit_degree,
            fit_equations: z.fit_equations.iter().map(print_poly).collect(),
            dim: Tagged::new(
                z.dim_estimate,
                Tag::Sampled {
                    prime: vhess_core::field::MERSENNE_61,
                },
            ),
            samples: z.samples.len(),
        });
        let rank_mod_f = c.rank_mod_f.as_ref().map(|r| RankModF {
            rank: Tagged::new(r.certificate.claimed_rank, rank_tag(&r.certificate)),
            dual_dim: Tagged::new(r.dual_dim, rank_tag(&r.certificate)),
            certificate: (&r.certificate).into(),
        });
        AnalysisReport {
            schema_version: SCHEMA_VERSION,
            input: Input {
                polynomial: print_poly(f),
                nvars: f.nvars(),
                ambient_dim: f.nvars().saturating_sub(1),
                degree: f.homogeneous_degree().or(f.total_degree()),
                homogeneous,
            },
            seeds: Seeds {
                seed: sampling.seed,
                trials: sampling.trials,
                primes: sampling.primes.clone(),
            },
            hessian,
            cone,
            codim_z,
            relations,
            mu,
            fiber_dim,
            special,
            zstar,
            rank_mod_f,
            checks: c
                .checks
                .iter()
                .map(|k| CheckReport {
                    name: k.name.into(),
                    statement: k.statement.clone(),
                    holds: k.holds,
                })
                .collect(),
            label: c.label.as_str().into(),
            summary: c.summary(),
            notes: c.notes.clone(),
            genericity_failure: c.genericity_failure,
            timings,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text rendering, one invariant per line.
    pub fn to_text(&self) -> String {
        let mut out = Vec::new();
        let tag = |t: &Tag| match t {
            Tag::Exact => String::from("exact"),
            Tag::MonteCarlo { failure_bound } => format!("monte-carlo, failure ≤ {failure_bound:.2e}"),
            Tag::MajorityVote { agreeing, of } => format!("{agreeing}/{of} votes"),
            Tag::Witnessed { points } => format!("witnessed at {points} points"),
            Tag::Sampled { prime } => format!("sampled mod {prime}"),
        };
        out.push(format!("polynomial   {}", self.input.polynomial));
        out.push(format!(
            "ambient      P^{} ({} variables), degree {}",
            self.input.ambient_dim,
            self.input.nvars,
            self.input.degree.map_or("-".into(), |d| d.to_string())
        ));
        if let Some(h) = &self.hessian {
            out.push(format!(
                "hessian      {} ({}); generic rank {} ({})",
                if h.vanishes.value { "vanishes" } else { "nonzero" },
                tag(&h.vanishes.certainty),
                h.generic_rank.value,
                tag(&h.generic_rank.certainty)
            ));
        }
        if let Some(c) = &self.cone {
            if c.is_cone.value {
                out.push(format!("cone         yes, vertex {}", c.vertex.equations));
            } else {
                out.push(String::from("cone         no"));
            }
        }
        if let Some(z) = &self.codim_z {
            out.push(format!("codim Z      {} ({})", z.value, tag(&z.certainty)));
        }
        if let Some(r) = &self.relations {
            if r.basis.is_empty() {
                out.push(format!("relations    none found up to degree {}", r.searched_up_to));
            } else {
                out.push(format!(
                    "relations    degree {}: {}",
                    r.degree.unwrap_or(0),
                    r.basis.join("; ")
                ));
            }
        }
        if let (Some(mu), Some(fd)) = (&self.mu, &self.fiber_dim) {
            out.push(format!(
                "perazzo rank μ = {}, fibers P^{} ({})",
                mu.value,
                fd.value,
                tag(&mu.certainty)
            ));
        }
        if let Some(s) = &self.special {
            match &s.l {
                Some(l) if s.special.value => out.push(format!("special      yes, L = {}", l.equations)),
                _ => out.push(format!("special      no (pairwise fiber meets of dimension {:?})", s.meet_dims)),
            }
        }
        if let Some(z) = &self.zstar {
            out.push(format!(
                "Z*           span {}, dim {} ({}), fit {}",
                z.span.equations,
                z.dim.value,
                tag(&z.dim.certainty),
                z.fit.as_deref().unwrap_or("none up to degree 4")
            ));
        }
        if let Some(r) = &self.rank_mod_f {
            out.push(format!(
                "rank mod f   {} ({}), dim X* = {}",
                r.rank.value,
                tag(&r.rank.certainty),
                r.dual_dim.value
            ));
        }
        for c in &self.checks {
            out.push(format!(
                "check        {} {}: {}",
                if c.holds { "ok  " } else { "FAIL" },
                c.name,
                c.statement
            ));
        }
        out.push(format!("label        {}", self.label));
        out.push(format!("summary      {}", self.summary));
        for n in &self.notes {
            out.push(format!("note         {n}"));
        }
        out.push(format!(
            "seed {} · trials {} · primes {:?}",
            self.seeds.seed, self.seeds.trials, self.seeds.primes
        ));
        if let Some(ts) = &self.timings {
            for t in ts {
                out.push(format!("time         {:<12} {:.1} ms", t.stage, t.millis));
            }
        }
        out.join("\n") + "\n"
    }
}
