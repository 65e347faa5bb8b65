use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::field::{derive_seed, sample_point, ParamMonomial, PointEnv, Rational};
use crate::series::SeriesSpec;
use crate::transform::Expression;

use super::{Catalog, IdentitySpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Skip {
    pub fingerprint: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub fingerprints: Vec<String>,
    #[serde(serialize_with = "residuals_as_strings")]
    pub residuals: Vec<Rational>,
    pub skipped: Vec<Skip>,
    pub micros: u128,
}

fn residuals_as_strings<S: serde::Serializer>(r: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(r.iter().map(|x| x.to_string()))
}

impl VerificationReport {
    /// Every checked residual is zero and at least one env was checked.
    pub fn pass(&self) -> bool {
        !self.residuals.is_empty() && self.residuals.iter().all(Zero::is_zero)
    }
}

/// Evaluates `lhs - rhs` at every env. Evaluation errors become skips.
pub fn verify_identity(spec: &IdentitySpec, envs: &[PointEnv]) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport {
        id: spec.id.clone(),
        fingerprints: Vec::new(),
        residuals: Vec::new(),
        skipped: Vec::new(),
        micros: 0,
    };
    for env in envs {
        match spec.lhs.eval(env).and_then(|l| Ok(l - spec.rhs.eval(env)?)) {
            Ok(r) => {
                report.fingerprints.push(env.fingerprint());
                report.residuals.push(r);
            }
            Err(e) => report.skipped.push(Skip {
                fingerprint: env.fingerprint(),
                reason: e.to_string(),
            }),
        }
    }
    report.micros = start.elapsed().as_micros();
    report
}

fn id_salt(id: &str) -> u64 {
    id.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

/// `count` guarded envs for `spec` with `n` cycling through `0..=n_max`.
/// Points that cannot be sampled are left out.
pub fn identity_envs(spec: &IdentitySpec, seed: u64, n_max: u32, count: usize) -> Vec<PointEnv> {
    let mut guards = spec.lhs.guards();
    guards.extend(spec.rhs.guards());
    (0..count)
        .filter_map(|i| {
            let n = (i as u32) % (n_max + 1);
            sample_point(spec.frame, n, derive_seed(seed, &[id_salt(&spec.id), i as u64]), &guards).ok()
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogSummary {
    pub seed: u64,
    pub n_max: u32,
    pub passed: usize,
    pub failed: usize,
    pub reports: Vec<VerificationReport>,
}

impl CatalogSummary {
    pub fn all_pass(&self) -> bool {
        self.failed == 0 && !self.reports.is_empty()
    }

    pub fn failures(&self) -> Vec<&str> {
        self.reports.iter().filter(|r| !r.pass()).map(|r| r.id.as_str()).collect()
    }
}

/// Verifies every identity of `catalog`.
pub fn verify_all(catalog: &Catalog, seed: u64, n_max: u32, envs_per_identity: usize) -> CatalogSummary {
    let reports: Vec<VerificationReport> = catalog
        .identities
        .par_iter()
        .map(|spec| verify_identity(spec, &identity_envs(spec, seed, n_max, envs_per_identity)))
        .collect();
    let passed = reports.iter().filter(|r| r.pass()).count();
    CatalogSummary {
        seed,
        n_max,
        passed,
        failed: reports.len() - passed,
        reports,
    }
}

fn bump(m: ParamMonomial) -> ParamMonomial {
    m.shift(1, 0)
}

/// Copies of `expr` with one exponent of one monomial raised by one: every
/// series parameter's `q` exponent, and the prefactor's power base.
pub fn mutations(expr: &Expression) -> Vec<Expression> {
    let mut out = Vec::new();
    match &expr.series {
        SeriesSpec::Phi(p) => {
            for i in 0..p.upper.len() {
                if p.upper[i].is_q_neg_n() {
                    continue;
                }
                let mut m = p.clone();
                m.upper[i] = bump(m.upper[i]);
                out.push(Expression::new(expr.prefactor.clone(), m));
            }
            for i in 0..p.lower.len() {
                let mut m = p.clone();
                m.lower[i] = bump(m.lower[i]);
                out.push(Expression::new(expr.prefactor.clone(), m));
            }
            let mut m = p.clone();
            m.argument = bump(m.argument);
            out.push(Expression::new(expr.prefactor.clone(), m));
        }
        SeriesSpec::W(w) => {
            for i in 0..5 {
                if w.numer[i].is_q_neg_n() {
                    continue;
                }
                let mut m = w.clone();
                m.numer[i] = bump(m.numer[i]);
                out.push(Expression::new(expr.prefactor.clone(), m));
            }
            let mut m = w.clone();
            m.special = bump(m.special);
            out.push(Expression::new(expr.prefactor.clone(), m));
            let mut m = w.clone();
            m.argument = bump(m.argument);
            out.push(Expression::new(expr.prefactor.clone(), m));
        }
    }
    let mut pre = expr.prefactor.clone();
    pre.power_base = bump(pre.power_base);
    out.push(Expression::new(pre, expr.series.clone()));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MutationOutcome {
    pub id: String,
    pub mutants: usize,
    pub killed: usize,
}

impl MutationOutcome {
    pub fn pass(&self) -> bool {
        self.killed > 0
    }
}

/// Counts rhs mutations detected by a nonzero residual on some env.
pub fn mutation_check(spec: &IdentitySpec, envs: &[PointEnv]) -> MutationOutcome {
    let ms = mutations(&spec.rhs);
    let killed = ms
        .par_iter()
        .filter(|rhs| {
            let mutant = IdentitySpec {
                rhs: (*rhs).clone(),
                ..spec.clone()
            };
            let r = verify_identity(&mutant, envs);
            r.residuals.iter().any(|x| !x.is_zero())
        })
        .count();
    MutationOutcome {
        id: spec.id.clone(),
        mutants: ms.len(),
        killed,
    }
}
