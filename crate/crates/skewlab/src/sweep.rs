//! Exhaustive and corpus-driven verification sweeps: the theorem-route
//! decision (deg hhat = 1) is checked against the independent eigenring
//! oracle on every instance; any disagreement is a mismatch, which is the
//! never-event the whole harness exists to catch.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra;
use crate::apoly::{ApolyReport, Route};
use crate::central::Trilean;
use crate::context::{Context, KElement};
use crate::error::{Error, Result};
use crate::report::classify;
use crate::skew::SkewPolynomial;

/// Per-instance record kept for downstream identity checks.
#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub f: SkewPolynomial,
    pub degree: usize,
    pub report: ApolyReport,
    /// None when the instance was skipped as not-square-free.
    pub dim: Option<usize>,
    pub center_dim: Option<usize>,
    pub oracle_simple: Option<Trilean>,
    pub mismatch: bool,
}

impl SweepOutcome {
    pub fn skipped(&self) -> bool {
        self.report.route == Route::NotSquarefree
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct DegreeCount {
    pub degree: usize,
    pub count: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SweepSummary {
    pub mode: String,
    pub instances: usize,
    pub by_degree: Vec<DegreeCount>,
    pub apoly_yes: usize,
    pub apoly_no: usize,
    pub skipped_not_squarefree: usize,
    pub mismatches: usize,
    pub elapsed_ms: f64,
}

pub struct SweepReport {
    pub outcomes: Vec<SweepOutcome>,
    pub summary: SweepSummary,
}

/// All monic f over a finite twisted K with nonzero constant term and
/// 1 <= deg f <= max_degree, in enumeration order of the coefficient
/// tuples (constant coefficient is the most significant key).
pub fn twisted_instances(ctx: &Context, max_degree: usize) -> Result<Vec<SkewPolynomial>> {
    let tc = ctx.as_twisted()?;
    let size = tc.field_size();
    let els: Vec<KElement> = ctx.enumerate()?.collect();
    let mut out = vec![];
    for d in 1..=max_degree {
        let total: u128 = (size as u128 - 1) * (size as u128).pow(d as u32 - 1);
        for m in 0..total {
            let mut idx = m;
            let mut coeffs = Vec::with_capacity(d + 1);
            // degrees 1..d-1 cycle fastest; constant term (nonzero) slowest
            let mut middle = vec![];
            for _ in 1..d {
                middle.push(els[(idx % size as u128) as usize].clone());
                idx /= size as u128;
            }
            coeffs.push(els[(idx + 1) as usize].clone()); // skip the zero element
            coeffs.extend(middle);
            coeffs.push(ctx.one());
            out.push(SkewPolynomial::new(ctx.clone(), coeffs));
        }
    }
    Ok(out)
}

fn evaluate(f: &SkewPolynomial) -> Result<SweepOutcome> {
    let degree = f.degree().unwrap();
    let report = classify(f)?;
    if report.route == Route::NotSquarefree {
        return Ok(SweepOutcome {
            f: f.clone(),
            degree,
            report,
            dim: None,
            center_dim: None,
            oracle_simple: None,
            mismatch: false,
        });
    }
    let alg = algebra::eigenring(f)?;
    let (center_dim, _) = algebra::center_of(&alg);
    let (simple, _prov) = algebra::is_central_simple_over_f(&alg, Some(true))?;
    let theorem_yes = report.is_apoly == Trilean::Yes;
    let mismatch = match simple {
        Trilean::Yes => !theorem_yes,
        Trilean::No => theorem_yes,
        Trilean::Unknown => false,
    };
    Ok(SweepOutcome {
        f: f.clone(),
        degree,
        report,
        dim: Some(alg.dim),
        center_dim: Some(center_dim),
        oracle_simple: Some(simple),
        mismatch,
    })
}

/// Run the oracle-equivalence harness over the given instances.
/// `jobs` > 1 shards the (independent) instances across a thread pool.
pub fn run(instances: &[SkewPolynomial], jobs: usize, mode: &str) -> Result<SweepReport> {
    let start = Instant::now();
    let outcomes: Vec<SweepOutcome> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
        pool.install(|| {
            instances
                .par_iter()
                .map(evaluate)
                .collect::<Result<Vec<_>>>()
        })?
    } else {
        instances.iter().map(evaluate).collect::<Result<Vec<_>>>()?
    };

    let mut by_degree: Vec<DegreeCount> = vec![];
    for o in &outcomes {
        match by_degree.iter_mut().find(|dc| dc.degree == o.degree) {
            Some(dc) => dc.count += 1,
            None => by_degree.push(DegreeCount {
                degree: o.degree,
                count: 1,
            }),
        }
    }
    by_degree.sort_by_key(|dc| dc.degree);
    let summary = SweepSummary {
        mode: mode.to_string(),
        instances: outcomes.len(),
        by_degree,
        apoly_yes: outcomes
            .iter()
            .filter(|o| !o.skipped() && o.report.is_apoly == Trilean::Yes)
            .count(),
        apoly_no: outcomes
            .iter()
            .filter(|o| !o.skipped() && o.report.is_apoly == Trilean::No)
            .count(),
        skipped_not_squarefree: outcomes.iter().filter(|o| o.skipped()).count(),
        mismatches: outcomes.iter().filter(|o| o.mismatch).count(),
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok(SweepReport { outcomes, summary })
}
