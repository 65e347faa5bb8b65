//! One line per acceptance criterion. The values and counts asserted here are
//! written out independently of the library, and every series value is
//! checked against a naive term-by-term sum.
//!
//! Run a subset with `cargo test -p qaw-core --test acceptance -- 4 5`.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qaw::askey_wilson::{aw_reference, aw_sweep, degree_in_x, inversion_pairings, sweep_points, AWPoint, RepId};
use qaw::catalog::{identity_envs, mutation_check, verify_all, Catalog};
use qaw::field::{derive_seed, rat, sample_point, Frame, PointEnv};
use qaw::series::{eval_w, poch_base_invert, q_pochhammer};
use qaw::symmetry::{
    action_blocks, converse_census, inversion_edges, s6_census, s6_value_check, standard_map_edges,
    watson_permutation_census, wd5_census, wd5_value_check, ClassId, Figure, WatsonDirection, X6Config,
};
use qaw::transform::{invert, Expression};
use qaw::{ParamMonomial as M, Rational, SeriesSpec, WSpec};

const SEED: u64 = 20_240_611;

type Criterion = fn() -> Outcome;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

// Oracles: everything below is computed from the definitions.

fn poch(a: &Rational, q: &Rational, k: u64) -> Rational {
    let mut out = Rational::one();
    let mut qj = Rational::one();
    for _ in 0..k {
        out *= Rational::one() - a * &qj;
        qj *= q;
    }
    out
}

fn power(x: &Rational, k: i64) -> Rational {
    let mut out = Rational::one();
    for _ in 0..k.unsigned_abs() {
        out *= x;
    }
    if k < 0 {
        out.recip()
    } else {
        out
    }
}

/// `sum_k (u;q)_k / (l, q;q)_k z^k ((-1)^k q^C(k,2))^e` for `k = 0..=n`.
fn naive_phi(upper: &[Rational], lower: &[Rational], z: &Rational, e: i64, q: &Rational, n: u32) -> Option<Rational> {
    let mut sum = Rational::zero();
    for k in 0..=u64::from(n) {
        let mut den = poch(q, q, k);
        for l in lower {
            den *= poch(l, q, k);
        }
        if den.is_zero() {
            return None;
        }
        let mut num = power(z, k as i64);
        for u in upper {
            num *= poch(u, q, k);
        }
        let c = (k * k.saturating_sub(1) / 2) as i64;
        let sign = if k % 2 == 1 { -Rational::one() } else { Rational::one() };
        num *= power(&(sign * power(q, c)), e);
        sum += num / den;
    }
    Some(sum)
}

/// The `8W7` with the `(1 - b q^2k)/(1 - b)` factor, term by term.
fn naive_w(b: &Rational, a: &[Rational], z: &Rational, q: &Rational, n: u32) -> Option<Rational> {
    let one = Rational::one();
    if b.is_one() {
        return None;
    }
    let mut sum = Rational::zero();
    for k in 0..=u64::from(n) {
        let mut num = poch(b, q, k) * power(z, k as i64) * (&one - b * power(q, 2 * k as i64));
        let mut den = poch(q, q, k) * (&one - b);
        for x in a {
            num *= poch(x, q, k);
            den *= poch(&(q * b / x), q, k);
        }
        if den.is_zero() {
            return None;
        }
        sum += num / den;
    }
    Some(sum)
}

/// The literal `8phi7(b, q sqrt b, -q sqrt b, a; sqrt b, -sqrt b, qb/a; q, z)`.
fn literal_8phi7(s: &Rational, a: &[Rational], z: &Rational, q: &Rational, n: u32) -> Option<Rational> {
    let b = s * s;
    let mut upper = vec![b.clone(), q * s, -(q * s)];
    upper.extend(a.iter().cloned());
    let mut lower = vec![s.clone(), -s.clone()];
    lower.extend(a.iter().map(|x| q * &b / x));
    naive_phi(&upper, &lower, z, 0, q, n)
}

fn naive_series(series: &SeriesSpec, env: &PointEnv) -> Option<Rational> {
    let ev = |m: &M| m.eval(env);
    match series {
        SeriesSpec::Phi(p) => {
            let upper: Vec<Rational> = p.upper.iter().map(ev).collect();
            let lower: Vec<Rational> = p.lower.iter().map(ev).collect();
            let e = 1 + p.lower.len() as i64 - p.upper.len() as i64 + i64::from(p.zero_pad);
            naive_phi(&upper, &lower, &ev(&p.argument), e, &env.q, env.n)
        }
        SeriesSpec::W(w) => {
            let a: Vec<Rational> = w.numer.iter().map(ev).collect();
            naive_w(&ev(&w.special), &a, &ev(&w.argument), &env.q, env.n)
        }
    }
}

/// `p_n` from the defining `4phi3` with the `a1^-n (a1a2, a1a3, a1a4;q)_n` factor.
fn naive_aw(pt: &AWPoint) -> Option<Rational> {
    let [a1, a2, a3, a4] = &pt.a;
    let (q, t, n) = (&pt.q, &pt.t, pt.n);
    let lower = [a1 * a2, a1 * a3, a1 * a4];
    let upper = [
        power(q, -i64::from(n)),
        a1 * a2 * a3 * a4 * power(q, i64::from(n) - 1),
        a1 * t,
        a1 / t,
    ];
    let series = naive_phi(&upper, &lower, q, 0, q, n)?;
    let pre: Rational = lower.iter().map(|l| poch(l, q, u64::from(n))).product();
    Some(power(a1, -i64::from(n)) * pre * series)
}

fn random_rational(rng: &mut ChaCha8Rng, max: i64) -> Rational {
    loop {
        let num = rng.gen_range(-max..=max);
        if num != 0 {
            return rat(num, rng.gen_range(1..=max));
        }
    }
}

/// A base away from 0 and +-1.
fn random_base(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let q = random_rational(rng, 9);
        if q.abs() != Rational::one() {
            return q;
        }
    }
}

// Criteria.

fn seven_representations() -> Outcome {
    let points = match sweep_points(SEED, 6, 7 * 25) {
        Ok(p) => p,
        Err(e) => return outcome(false, format!("sampling: {e}")),
    };
    let oracle_misses = points
        .iter()
        .filter(|pt| naive_aw(pt) != aw_reference(pt).ok())
        .count();
    let report = aw_sweep(&points);
    let orderings = RepId::all().len();
    outcome(
        report.pass() && oracle_misses == 0 && orderings == 7 * 24,
        format!(
            "{} points over n=0..6, {} evaluations, {} mismatches, {} reference disagreements with the defining sum",
            report.points,
            report.evaluations,
            report.mismatches.len(),
            oracle_misses
        ),
    )
}

fn identity_catalog() -> Outcome {
    let catalog = Catalog::builtin();
    let mut groups: BTreeMap<&str, usize> = BTreeMap::new();
    for spec in &catalog.identities {
        *groups.entry(spec.id.split('/').next().unwrap()).or_default() += 1;
    }
    let summary = verify_all(catalog, SEED, 6, 25);
    let short = summary.reports.iter().filter(|r| r.residuals.len() < 25).count();
    let mut unkilled = Vec::new();
    for spec in &catalog.identities {
        let envs = identity_envs(spec, SEED ^ 1, 6, 3);
        let m = mutation_check(spec, &envs);
        if !m.pass() {
            unkilled.push(spec.id.clone());
        }
    }
    // The itemized count: 6 + 4 + (4 + 2) + 11 + 3 + 5 + 3.
    let total = catalog.identities.len();
    outcome(
        summary.all_pass() && short == 0 && unkilled.is_empty() && total == 38,
        format!(
            "{} of {total} identities verified on 25 envs each, {short} short of 25, mutants survive in {:?}",
            summary.passed, unkilled
        ),
    )
}

fn inversion_involution() -> Outcome {
    let catalog = Catalog::builtin();
    let mut series: BTreeSet<(Frame, SeriesSpec)> = BTreeSet::new();
    for f in &catalog.forms {
        series.insert((f.frame, f.expr.series.clone()));
    }
    let mut problems = Vec::new();
    let mut checked = 0;
    for (i, (frame, s)) in series.iter().enumerate() {
        let once = match invert(s) {
            Ok(e) => e,
            Err(e) => {
                problems.push(format!("{}: {e}", s.display(*frame)));
                continue;
            }
        };
        match invert(&once.series) {
            Ok(twice) if &twice.series == s => {}
            _ => problems.push(format!("{}: not an involution", s.display(*frame))),
        }
        let mut guards = Expression::bare(s.clone()).guards();
        guards.extend(once.guards());
        for k in 0..4u64 {
            let Ok(env) = sample_point(*frame, (k % 7) as u32 + 1, derive_seed(SEED, &[3, i as u64, k]), &guards) else {
                continue;
            };
            checked += 1;
            if naive_series(s, &env) != once.eval(&env).ok() {
                problems.push(format!("{} at {env}: value changes", s.display(*frame)));
            }
        }
    }
    use ClassId::*;
    let edges: BTreeSet<(ClassId, ClassId)> = inversion_edges().unwrap_or_default().into_iter().collect();
    let figure = [(C3, C4), (C5, C6b), (W0, W1), (W7, W7b), (W6, W7c)];
    let pairs_ok = figure.iter().all(|&(a, b)| edges.contains(&(a, b)) && edges.contains(&(b, a)))
        && edges.contains(&(W2, W2));
    let (def1_def2, _) = inversion_pairings();
    outcome(
        problems.is_empty() && checked > 0 && pairs_ok && def1_def2,
        format!(
            "{} series, {checked} value checks, class pairings {}, def1<->def2 {}; problems {:?}",
            series.len(),
            if pairs_ok { "hold" } else { "broken" },
            if def1_def2 { "holds" } else { "broken" },
            &problems[..problems.len().min(3)]
        ),
    )
}

fn s6_table() -> Outcome {
    use ClassId::*;
    let expected: BTreeMap<ClassId, usize> = [(C3, 216), (C4, 216), (C5, 144), (C6b, 144)].into_iter().collect();
    let census = s6_census(&X6Config::standard()).unwrap_or_default();
    let values = s6_value_check(SEED, 6, 10);
    let (values_ok, detail) = match &values {
        Ok(v) => (v.pass() && v.evaluations >= 720 * 10, format!("{} images x 10 envs", v.images)),
        Err(e) => (false, e.to_string()),
    };
    outcome(census == expected && values_ok, format!("census {census:?}; {detail}"))
}

type Row = &'static [(ClassId, usize)];

fn wd5_table() -> Outcome {
    use ClassId::*;
    let blocks: [(&[ClassId], Row); 3] = [
        (&[W0, W6], &[(W0, 120), (W6, 480)]),
        (&[W1, W7b], &[(W1, 120), (W7b, 480)]),
        (&[W2, W7, W7c], &[(W2, 120), (W7, 360), (W7c, 120)]),
    ];
    let mut diff = Vec::new();
    let mut all_elements = true;
    for (sources, row) in blocks {
        let want: BTreeMap<ClassId, usize> = row.iter().copied().collect();
        for &s in sources {
            let Ok(got) = wd5_census(s) else {
                diff.push(format!("{s}: census failed"));
                continue;
            };
            all_elements &= got.values().sum::<usize>() == 1920;
            let terminating: BTreeMap<ClassId, usize> =
                got.into_iter().filter(|(k, _)| *k != Nonterminating).collect();
            if terminating != want {
                diff.push(format!("{s}: got {terminating:?}, table {want:?}"));
            }
        }
    }
    let mut found: Vec<BTreeSet<ClassId>> = action_blocks(Figure::Fig2).unwrap_or_default();
    found.sort();
    let mut want_blocks: Vec<BTreeSet<ClassId>> = vec![
        [W0, W6].into_iter().collect(),
        [W1, W7b].into_iter().collect(),
        [W2, W7, W7c].into_iter().collect(),
    ];
    want_blocks.sort();
    let values_ok = ClassId::W
        .iter()
        .all(|&c| wd5_value_check(c, SEED, 6, 2, 40).map(|v| v.pass()).unwrap_or(false));
    outcome(
        diff.is_empty() && all_elements && found == want_blocks && values_ok,
        format!(
            "blocks {}, sampled image values {}, row diff {diff:?}",
            if found == want_blocks { "recovered" } else { "differ" },
            if values_ok { "agree" } else { "disagree" }
        ),
    )
}

fn converse_table() -> Outcome {
    let c = ClassId::Converse;
    let a: BTreeMap<ClassId, usize> = [(c(1), 360), (c(4), 240)].into_iter().collect();
    let b: BTreeMap<ClassId, usize> = [(c(2), 360), (c(3), 240)].into_iter().collect();
    let rows = converse_census().unwrap_or_default();
    let terminating = |k: u8| -> BTreeMap<ClassId, usize> {
        rows.get(&c(k))
            .map(|r| r.iter().filter(|(k, _)| **k != ClassId::Nonterminating).map(|(k, v)| (*k, *v)).collect())
            .unwrap_or_default()
    };
    let rows_ok = terminating(1) == a && terminating(4) == a && terminating(2) == b && terminating(3) == b;
    let mut blocks = action_blocks(Figure::Fig3).unwrap_or_default();
    blocks.sort();
    let blocks_ok = blocks == vec![[c(1), c(4)].into_iter().collect(), [c(2), c(3)].into_iter().collect()];
    let edges: BTreeSet<(ClassId, ClassId)> = inversion_edges().unwrap_or_default().into_iter().collect();
    let inversions_ok = [(c(1), c(2)), (c(2), c(1)), (c(3), c(3)), (c(4), c(4))]
        .iter()
        .all(|e| edges.contains(e));
    outcome(
        rows_ok && blocks_ok && inversions_ok,
        format!("rows {rows_ok}, blocks (1,4) (2,3) {blocks_ok}, inversion edges {inversions_ok}"),
    )
}

fn standard_map() -> Outcome {
    use qaw::askey_wilson::RepForm::*;
    use ClassId::*;
    let figure: BTreeSet<(ClassId, ClassId, bool)> = [
        (C3, Aw(Def3), false),
        (C4, Aw(Def3), true),
        (C5, Aw(Def2), false),
        (C6b, Aw(Def1), false),
        (W0, Aw(Def4), false),
        (W1, Aw(Def4), true),
        (W2, Aw(Def5), false),
        (W7, Aw(Def7), false),
        (W7b, Aw(Def6), true),
        (W6, Aw(Def6), false),
        (W7c, Aw(Def7), true),
    ]
    .into_iter()
    .collect();
    let got: BTreeSet<(ClassId, ClassId, bool)> =
        standard_map_edges().into_iter().map(|e| (e.source, e.target, e.flipped)).collect();
    let flips = got.iter().filter(|e| e.2).count();
    outcome(got == figure, format!("{} edges, {flips} with t -> 1/t", got.len()))
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut poch_failures = 0;
    for _ in 0..200 {
        let a = random_rational(&mut rng, 9);
        let q = random_rational(&mut rng, 9);
        let (m, k) = (rng.gen_range(0..6u32), rng.gen_range(0..6u32));
        let concat = q_pochhammer(&a, &q, m + k) == q_pochhammer(&a, &q, m) * q_pochhammer(&(&a * power(&q, m.into())), &q, k);
        let inverted = poch_base_invert(&a, &q, k).ok() == Some(poch(&a, &q.recip(), k.into()));
        poch_failures += usize::from(!(concat && inverted));
    }

    let w = WSpec::new(
        M::var(0),
        [M::Q_NEG_N, M::var(1), M::var(2), M::var(3), M::var(4)],
        M::q_pow(2, 0) * M::var(0).powi(2) * (M::Q_NEG_N * M::var(1) * M::var(2) * M::var(3) * M::var(4)).inv(),
    );
    let (mut w_points, mut w_failures, mut tries) = (0, 0, 0);
    while w_points < 50 && tries < 5000 {
        tries += 1;
        let s = random_rational(&mut rng, 7);
        let vars = [s.clone() * &s, random_rational(&mut rng, 9), random_rational(&mut rng, 9), random_rational(&mut rng, 9), random_rational(&mut rng, 9)];
        let env = PointEnv::new(Frame::Bcdef, random_base(&mut rng), rng.gen_range(0..5), vars);
        let a: Vec<Rational> = w.numer.iter().map(|m| m.eval(&env)).collect();
        let (Ok(got), Some(lit)) = (eval_w(&w, &env), literal_8phi7(&s, &a, &w.argument.eval(&env), &env.q, env.n)) else {
            continue;
        };
        w_points += 1;
        w_failures += usize::from(got != lit);
    }

    let a = [rat(1, 2), rat(-2, 3), rat(3, 5), rat(5, 7)];
    let q = rat(2, 7);
    let ts: Vec<Rational> = (2..10).map(|k| rat(k, 1)).collect();
    let mut degree_failures = Vec::new();
    for n in 0..=5u32 {
        let (degree, coeffs) = degree_in_x(n, &a, &q, &ts[..n as usize + 2]).unwrap_or_default();
        // Leading coefficient 2^n (a1 a2 a3 a4 q^(n-1); q)_n.
        let abcd: Rational = a.iter().product();
        let lead = power(&rat(2, 1), n.into()) * poch(&(abcd * power(&q, i64::from(n) - 1)), &q, n.into());
        if degree != Some(n as usize) || coeffs.get(n as usize) != Some(&lead) {
            degree_failures.push(n);
        }
    }
    outcome(
        poch_failures == 0 && w_points == 50 && w_failures == 0 && degree_failures.is_empty(),
        format!(
            "200 Pochhammer cases ({poch_failures} fail), {w_points} square-b 8W7 points ({w_failures} fail), degree check fails at n in {degree_failures:?}"
        ),
    )
}

fn watson_tables() -> Outcome {
    let mut lines = Vec::new();
    let mut computed = true;
    for dir in [WatsonDirection::PhiToW, WatsonDirection::WToPhi] {
        match watson_permutation_census(dir) {
            Ok(rows) => {
                for t in rows {
                    if !t.matches_published() {
                        lines.push(format!("{}: got {:?}, printed {:?}", t.source, t.counts, t.published));
                    }
                    computed &= !t.counts.contains_key(&ClassId::Unclassified);
                }
            }
            Err(_) => computed = false,
        }
    }
    for l in &lines {
        println!("    watson diff {l}");
    }
    outcome(computed, format!("tallies emitted, {} rows differ from the printed tables", lines.len()))
}

fn main() {
    let criteria: [(&str, Criterion); 9] = [
        ("seven-representation agreement", seven_representations),
        ("identity catalog and mutation kills", identity_catalog),
        ("inversion involution and pairings", inversion_involution),
        ("S6 census", s6_table),
        ("WD5 census", wd5_table),
        ("converse census", converse_table),
        ("standard-map edges", standard_map),
        ("property suites", property_suites),
        ("Watson permutation tallies", watson_tables),
    ];
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let number = i + 1;
        if !only.is_empty() && !only.contains(&number) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| outcome(false, "panicked"));
        let status = if result.pass { "pass" } else { "FAIL" };
        println!(
            "criterion {number} {name}: {status} ({:.1}s) {}",
            start.elapsed().as_secs_f64(),
            result.detail
        );
        if !result.pass {
            failed.push(number);
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
