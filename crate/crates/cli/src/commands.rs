use std::path::Path;
use std::time::Instant;

use num_traits::Zero;
use serde::Serialize;

use qaw::askey_wilson::{aw_eval_rep, aw_reference, aw_sweep, sweep_points, AWPoint, RepForm, RepId, SweepMismatch};
use qaw::catalog::{verify_all, Catalog, Skip};
use qaw::field::parse_rational;
use qaw::symmetry::{
    census_diff, converse_census, emit_graph, published_s6, published_wd5, s6_arrangements, s6_census,
    watson_permutation_census, wd5_census, Census, CensusRow, ClassId, Figure, WatsonDirection, X6Config,
};
use qaw::Rational;

use crate::config::{Format, RunConfig};
use crate::output::{to_csv, to_json, write_atomic, RunInfo};
use crate::CliError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;

#[derive(Serialize)]
struct IdentityResult<'a> {
    id: &'a str,
    pass: bool,
    envs: usize,
    skips: usize,
    micros: u128,
    fingerprints: &'a [String],
    skipped: &'a [Skip],
}

#[derive(Serialize)]
struct SweepResult {
    pass: bool,
    points: usize,
    evaluations: usize,
    micros: u128,
    mismatches: Vec<SweepMismatch>,
}

#[derive(Serialize)]
struct Tally {
    passed: usize,
    failed: usize,
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    run: RunInfo,
    identities: Tally,
    results: Vec<IdentityResult<'a>>,
    aw_sweep: SweepResult,
    failures: Vec<String>,
}

fn load_catalog(path: &Path) -> Result<Catalog, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    Catalog::parse(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

pub fn verify(cfg: &RunConfig, catalog: Option<&Path>) -> Result<i32, CliError> {
    cfg.format_for(Format::Json, &[Format::Json], "verify")?;
    let owned;
    let catalog = match catalog {
        Some(p) => {
            owned = load_catalog(p)?;
            &owned
        }
        None => Catalog::builtin(),
    };
    let summary = verify_all(catalog, cfg.seed, cfg.n_max, cfg.envs_per_check);

    let start = Instant::now();
    let points = sweep_points(cfg.seed, cfg.n_max, cfg.envs_per_check).map_err(CliError::internal)?;
    let sweep = aw_sweep(&points);
    let aw_sweep = SweepResult {
        pass: sweep.pass(),
        points: sweep.points,
        evaluations: sweep.evaluations,
        micros: start.elapsed().as_micros(),
        mismatches: sweep.mismatches,
    };

    let mut failures: Vec<String> = summary.failures().into_iter().map(String::from).collect();
    failures.extend(aw_sweep.mismatches.iter().map(|m| format!("{} at {}", m.rep, m.point)));
    let report = VerifyReport {
        run: RunInfo::new(cfg),
        identities: Tally {
            passed: summary.passed,
            failed: summary.failed,
        },
        results: summary
            .reports
            .iter()
            .map(|r| IdentityResult {
                id: &r.id,
                pass: r.pass(),
                envs: r.residuals.len(),
                skips: r.skipped.len(),
                micros: r.micros,
                fingerprints: &r.fingerprints,
                skipped: &r.skipped,
            })
            .collect(),
        aw_sweep,
        failures,
    };
    let path = write_atomic(&cfg.output_dir, "verify.json", &to_json(&report))?;
    println!("identities: {} passed, {} failed", report.identities.passed, report.identities.failed);
    println!(
        "aw sweep: {} points, {} evaluations, {} mismatches",
        report.aw_sweep.points,
        report.aw_sweep.evaluations,
        report.aw_sweep.mismatches.len()
    );
    println!("report: {}", path.display());
    if report.failures.is_empty() && report.aw_sweep.pass {
        Ok(EXIT_OK)
    } else {
        eprintln!("{}", serde_json::json!({ "failures": report.failures }));
        Ok(EXIT_FAILED)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CensusKind {
    S6,
    Wd5,
    Converse,
    Watson,
}

impl CensusKind {
    fn name(self) -> &'static str {
        match self {
            CensusKind::S6 => "s6",
            CensusKind::Wd5 => "wd5",
            CensusKind::Converse => "converse",
            CensusKind::Watson => "watson",
        }
    }
}

#[derive(Serialize)]
struct CensusReport {
    run: RunInfo,
    census: &'static str,
    rows: Vec<CensusRow>,
    matches: bool,
    diff: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    arrangements: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    watson: Vec<WatsonRow>,
}

#[derive(Serialize)]
struct WatsonRow {
    direction: WatsonDirection,
    source: ClassId,
    images: usize,
    counts: Census,
    published: Census,
}

fn rows_against_published(rows: &[(ClassId, Census)]) -> (Vec<CensusRow>, Vec<String>) {
    let mut out = Vec::new();
    let mut diff = Vec::new();
    for (source, census) in rows {
        out.extend(CensusRow::from_census(*source, census));
        if let Some(published) = published_wd5(*source) {
            diff.extend(census_diff(*source, census, &published));
        }
    }
    (out, diff)
}

pub fn census(cfg: &RunConfig, kind: CensusKind) -> Result<i32, CliError> {
    let format = cfg.format_for(Format::Json, &[Format::Json, Format::Csv], "census")?;
    let mut report = CensusReport {
        run: RunInfo::new(cfg),
        census: kind.name(),
        rows: Vec::new(),
        matches: true,
        diff: Vec::new(),
        arrangements: None,
        watson: Vec::new(),
    };
    match kind {
        CensusKind::S6 => {
            let base = X6Config::standard();
            let got = s6_census(&base).map_err(CliError::internal)?;
            report.rows = CensusRow::from_census(ClassId::C3, &got);
            report.diff = census_diff(ClassId::C3, &got, &published_s6());
            report.arrangements = Some(s6_arrangements(&base).map_err(CliError::internal)?);
        }
        CensusKind::Wd5 => {
            let rows = ClassId::W
                .iter()
                .map(|&c| wd5_census(c).map(|r| (c, r)))
                .collect::<qaw::Result<Vec<_>>>()
                .map_err(CliError::internal)?;
            (report.rows, report.diff) = rows_against_published(&rows);
        }
        CensusKind::Converse => {
            let rows: Vec<(ClassId, Census)> = converse_census().map_err(CliError::internal)?.into_iter().collect();
            (report.rows, report.diff) = rows_against_published(&rows);
        }
        CensusKind::Watson => {
            for direction in [WatsonDirection::PhiToW, WatsonDirection::WToPhi] {
                for t in watson_permutation_census(direction).map_err(CliError::internal)? {
                    report.rows.extend(CensusRow::from_census(t.source, &t.counts));
                    report.diff.extend(census_diff(t.source, &t.counts, &t.published));
                    report.watson.push(WatsonRow {
                        direction,
                        source: t.source,
                        images: t.images,
                        counts: t.counts,
                        published: t.published,
                    });
                }
            }
        }
    }
    report.matches = report.diff.is_empty();
    let (name, text) = match format {
        Format::Csv => (format!("census-{}.csv", kind.name()), to_csv(&report.rows)),
        _ => (format!("census-{}.json", kind.name()), to_json(&report)),
    };
    let path = write_atomic(&cfg.output_dir, &name, &text)?;
    for r in &report.rows {
        println!("{} -> {}: {}", r.source_class, r.target_class, r.count);
    }
    println!("census: {}", path.display());
    if report.matches {
        return Ok(EXIT_OK);
    }
    for line in &report.diff {
        eprintln!("diff: {line}");
    }
    // The Watson tallies are exploratory: differences are reported only.
    Ok(if kind == CensusKind::Watson { EXIT_OK } else { EXIT_FAILED })
}

pub fn graph(cfg: &RunConfig, which: Figure, name: &str) -> Result<i32, CliError> {
    cfg.format_for(Format::Dot, &[Format::Dot], "graph")?;
    let dot = emit_graph(which).map_err(CliError::internal)?;
    let path = write_atomic(&cfg.output_dir, &format!("{name}.dot"), &dot)?;
    println!("graph: {}", path.display());
    Ok(EXIT_OK)
}

pub struct EvalInput<'a> {
    pub n: u32,
    pub a: &'a [String],
    pub t: &'a str,
    pub q: &'a str,
    pub rep: &'a str,
    /// 1-based roles `p, r, t, u`.
    pub roles: Option<&'a [usize]>,
    pub check: bool,
}

fn nonzero(name: &str, s: &str) -> Result<Rational, CliError> {
    let v = parse_rational(s).map_err(|e| CliError::usage(format!("{name}: {e}")))?;
    if v.is_zero() {
        return Err(CliError::usage(format!("{name} must be nonzero")));
    }
    Ok(v)
}

#[derive(Serialize)]
struct EvalReport {
    rep: String,
    point: String,
    value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<String>,
}

pub fn eval(cfg: &RunConfig, input: EvalInput) -> Result<i32, CliError> {
    // Plain text unless JSON is asked for.
    let json = match cfg.format {
        None => false,
        Some(Format::Json) => true,
        Some(f) => return Err(CliError::usage(format!("eval cannot write {} output", f.name()))),
    };
    let a: Vec<Rational> = input
        .a
        .iter()
        .enumerate()
        .map(|(i, s)| nonzero(&format!("a{}", i + 1), s))
        .collect::<Result<_, _>>()?;
    let a: [Rational; 4] = a.try_into().map_err(|_| CliError::usage("--a takes four values"))?;
    let pt = AWPoint::new(input.n, a, nonzero("t", input.t)?, nonzero("q", input.q)?);
    let form: RepForm = input.rep.parse().map_err(|e: qaw::Error| CliError::usage(e.to_string()))?;
    let roles = match input.roles {
        None => [0, 1, 2, 3],
        Some(r) => {
            let r: [usize; 4] = r.try_into().map_err(|_| CliError::usage("--roles takes four indices"))?;
            if r.iter().any(|&i| !(1..=4).contains(&i)) {
                return Err(CliError::usage("--roles are 1-based indices 1..4"));
            }
            r.map(|i| i - 1)
        }
    };
    let rep = RepId::new(form, roles).map_err(|e| CliError::usage(e.to_string()))?;
    let value = aw_eval_rep(&rep, &pt).map_err(|e| CliError::usage(format!("outside the domain: {e}")))?;
    let residual = if input.check {
        let reference = aw_reference(&pt).map_err(|e| CliError::usage(format!("outside the domain: {e}")))?;
        Some(&value - reference)
    } else {
        None
    };
    let report = EvalReport {
        rep: rep.to_string(),
        point: pt.env().to_string(),
        value: value.to_string(),
        residual: residual.as_ref().map(ToString::to_string),
    };
    if json {
        print!("{}", to_json(&report));
    } else {
        println!("{}", report.value);
        if let Some(r) = &report.residual {
            println!("residual {r}");
        }
    }
    Ok(match residual {
        Some(r) if !r.is_zero() => EXIT_FAILED,
        _ => EXIT_OK,
    })
}
