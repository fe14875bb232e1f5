//! Assembly of the JSON analysis report: mclm, hhat tests, eigenring with
//! the simplicity oracle, and the A-polynomial classification, with
//! per-stage timings.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algebra::{self, Provenance};
use crate::apoly::{self, ApolyReport, Route, Witnesses};
use crate::central::{self, Trilean};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::parse::{self, RingSpec};
use crate::skew::SkewPolynomial;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EigenringReport {
    pub dim: usize,
    pub center_dim: usize,
    pub simple: Trilean,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Default)]
pub struct WitnessReport {
    /// Case (i): the constant a with f = t^n - a (resp. t^p - b).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    /// Case (ii): the base element b and the Omega-witnesses c_1..c_m.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cs: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ApolySection {
    pub is_apoly: Trilean,
    pub route: Route,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hhat_root: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<WitnessReport>,
    /// Linear factors as polynomial texts, leftmost factor first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factorization: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Whether the theorem decision agrees with the eigenring oracle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub consistent_with_oracle: Option<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Default)]
pub struct Timings {
    pub parse_ms: f64,
    pub mclm_ms: f64,
    pub hhat_tests_ms: f64,
    pub eigenring_ms: f64,
    pub oracle_ms: f64,
    pub apoly_ms: f64,
    pub total_ms: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AnalysisReport {
    pub ring: RingSpec,
    /// Canonical polynomial text; parses back to the analyzed f.
    pub f: String,
    pub m: usize,
    pub constant_term_nonzero: bool,
    /// hhat coefficients over F, lowest degree first.
    pub hhat: Vec<String>,
    pub hhat_squarefree: bool,
    pub hhat_irreducible: Trilean,
    pub eigenring: EigenringReport,
    pub apoly: ApolySection,
    pub timings_ms: Timings,
}

fn ms(from: Instant) -> f64 {
    from.elapsed().as_secs_f64() * 1e3
}

fn witness_report(ctx: &Context, w: &Witnesses) -> WitnessReport {
    match w {
        Witnesses::CaseI { a } => WitnessReport {
            a: Some(parse::format_element(ctx, a)),
            ..WitnessReport::default()
        },
        Witnesses::CaseIi { b, cs } => WitnessReport {
            b: Some(parse::format_element(ctx, b)),
            cs: Some(cs.iter().map(|c| parse::format_element(ctx, c)).collect()),
            ..WitnessReport::default()
        },
    }
}

/// Run the theorem-route classification appropriate for the context.
pub fn classify(f: &SkewPolynomial) -> Result<ApolyReport> {
    match &f.ctx {
        Context::Twisted(tc) => {
            let n = tc.n as u64;
            let n_prime = n >= 2 && crate::fp::prime_divisors(n) == vec![n];
            if n_prime {
                apoly::classify_prime_n(f)
            } else {
                apoly::is_apoly_twisted(f)
            }
        }
        Context::Differential(_) => apoly::classify_diff_p(f),
    }
}

/// Full analysis of one polynomial.
pub fn analyze(ctx: &Context, ring: RingSpec, f: &SkewPolynomial) -> Result<AnalysisReport> {
    let t_total = Instant::now();
    let m = match f.degree() {
        Some(m) if m >= 1 => m,
        _ => return Err(Error::Precondition("f must have degree >= 1".into())),
    };
    if !f.is_monic() {
        return Err(Error::Precondition("f must be monic".into()));
    }
    let constant_term_nonzero = !ctx.is_zero(&f.constant_term());
    if ctx.is_twisted() && !constant_term_nonzero {
        return Err(Error::ZeroConstantTerm);
    }

    let t = Instant::now();
    let hhat = central::mclm(f)?;
    let mclm_ms = ms(t);

    let t = Instant::now();
    let hhat_squarefree = central::is_squarefree(&hhat);
    let hhat_irreducible = central::is_irreducible_over_f(&hhat);
    let hhat_tests_ms = ms(t);

    let t = Instant::now();
    let alg = algebra::eigenring(f)?;
    let (center_dim, _) = algebra::center_of(&alg);
    let eigenring_ms = ms(t);

    let t = Instant::now();
    let (simple, provenance) = algebra::is_central_simple_over_f(&alg, Some(hhat_squarefree))?;
    let oracle_ms = ms(t);

    let t = Instant::now();
    let mut rep = classify(f)?;
    let consistent = match (rep.is_apoly, simple) {
        (Trilean::Yes, Trilean::Yes) | (Trilean::No, Trilean::No) => Some(true),
        (Trilean::Yes, Trilean::No) | (Trilean::No, Trilean::Yes) => Some(false),
        _ => None,
    };
    rep.consistency = consistent;
    let apoly_ms = ms(t);

    let factor_texts = rep.factorization.as_ref().map(|roots| {
        roots
            .iter()
            .map(|r| parse::format_poly(ctx, &SkewPolynomial::linear(ctx.clone(), r)))
            .collect()
    });
    Ok(AnalysisReport {
        ring,
        f: parse::format_poly(ctx, f),
        m,
        constant_term_nonzero,
        hhat: parse::format_central(&hhat),
        hhat_squarefree,
        hhat_irreducible,
        eigenring: EigenringReport {
            dim: alg.dim,
            center_dim,
            simple,
            provenance,
        },
        apoly: ApolySection {
            is_apoly: rep.is_apoly,
            route: rep.route,
            hhat_root: rep
                .hhat_root
                .as_ref()
                .map(|a| parse::format_element(ctx, a)),
            witnesses: rep.witnesses.as_ref().map(|w| witness_report(ctx, w)),
            factorization: factor_texts,
            note: rep.note.clone(),
            consistent_with_oracle: consistent,
        },
        timings_ms: Timings {
            parse_ms: 0.0,
            mclm_ms,
            hhat_tests_ms,
            eigenring_ms,
            oracle_ms,
            apoly_ms,
            total_ms: ms(t_total),
        },
    })
}

/// Build prod(t - Omega_{c_i}(b)) from element texts and analyze it.
/// Returns the canonical polynomial text alongside the report.
pub fn construct_and_analyze(
    ctx: &Context,
    ring: RingSpec,
    b_text: &str,
    cs_text: &str,
) -> Result<(String, AnalysisReport)> {
    let t = Instant::now();
    let b = parse::parse_element(ctx, b_text)?;
    let cs = parse::parse_element_list(ctx, cs_text)?;
    let f = apoly::construct_apoly(ctx, &b, &cs)?;
    let parse_ms = ms(t);
    let mut report = analyze(ctx, ring, &f)?;
    report.timings_ms.parse_ms = parse_ms;
    Ok((parse::format_poly(ctx, &f), report))
}
