//! The seven terminating representations of the Askey-Wilson polynomials
//! `p_n(x; a | q)` with `x = (t + 1/t)/2`, and their symmetry checks.

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::field::{derive_seed, permutations, sample_point, Frame, Guard, ParamMonomial as M, PointEnv, Rational};
use crate::series::SeriesSpec;
use crate::transform::{invert, Expression};

/// Evaluation point: degree `n`, parameters `a1..a4`, `t = e^(i theta)` and `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AWPoint {
    pub n: u32,
    pub a: [Rational; 4],
    pub t: Rational,
    pub q: Rational,
}

impl AWPoint {
    pub fn new(n: u32, a: [Rational; 4], t: Rational, q: Rational) -> Self {
        AWPoint { n, a, t, q }
    }

    pub fn env(&self) -> PointEnv {
        let [a1, a2, a3, a4] = self.a.clone();
        PointEnv::new(Frame::Aw, self.q.clone(), self.n, [a1, a2, a3, a4, self.t.clone()])
    }

    pub fn from_env(env: &PointEnv) -> Self {
        assert_eq!(env.frame, Frame::Aw);
        let v = &env.values;
        AWPoint::new(
            env.n,
            [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()],
            v[4].clone(),
            env.q.clone(),
        )
    }

    /// `theta -> -theta`.
    pub fn flip_t(&self) -> Self {
        AWPoint {
            t: self.t.recip(),
            ..self.clone()
        }
    }

    pub fn x(&self) -> Rational {
        (&self.t + self.t.recip()) / Rational::from_integer(2.into())
    }
}

/// One of the seven displays, named by the catalog label it evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RepForm {
    Def1,
    Def2,
    Def3,
    Def4,
    Def5,
    Def6,
    Def7,
}

impl RepForm {
    pub const ALL: [RepForm; 7] = [
        RepForm::Def1,
        RepForm::Def2,
        RepForm::Def3,
        RepForm::Def4,
        RepForm::Def5,
        RepForm::Def6,
        RepForm::Def7,
    ];

    pub fn label(self) -> &'static str {
        match self {
            RepForm::Def1 => "aw:def1",
            RepForm::Def2 => "aw:def2",
            RepForm::Def3 => "aw:def3",
            RepForm::Def4 => "aw:def4",
            RepForm::Def5 => "aw:def5",
            RepForm::Def6 => "aw:def6",
            RepForm::Def7 => "aw:def7",
        }
    }
}

impl std::str::FromStr for RepForm {
    type Err = Error;

    /// Accepts `aw:defK`, `defK` or `DK`.
    fn from_str(s: &str) -> Result<Self> {
        let k = s
            .strip_prefix("aw:def")
            .or_else(|| s.strip_prefix("def"))
            .or_else(|| s.strip_prefix(['D', 'd']))
            .and_then(|k| k.parse::<usize>().ok())
            .filter(|k| (1..=7).contains(k))
            .ok_or_else(|| Error::Unknown(format!("representation {s:?}")))?;
        Ok(RepForm::ALL[k - 1])
    }
}

/// A representation together with the roles `(p, r, t, u)` of the four
/// parameters, as 0-based indices into `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RepId {
    pub form: RepForm,
    pub roles: [usize; 4],
}

impl RepId {
    pub fn new(form: RepForm, roles: [usize; 4]) -> Result<Self> {
        let mut seen = [false; 4];
        for &r in &roles {
            if r > 3 || std::mem::replace(&mut seen[r], true) {
                return Err(Error::Parse(format!("roles {roles:?} are not a permutation of 0..4")));
            }
        }
        Ok(RepId { form, roles })
    }

    pub fn standard(form: RepForm) -> Self {
        RepId { form, roles: [0, 1, 2, 3] }
    }

    /// Every form with every one of the 24 role assignments.
    pub fn all() -> Vec<RepId> {
        let perms = permutations(4);
        RepForm::ALL
            .iter()
            .flat_map(|&form| {
                perms.iter().map(move |p| RepId {
                    form,
                    roles: [p[0], p[1], p[2], p[3]],
                })
            })
            .collect()
    }

    pub fn expression(&self) -> Expression {
        let base = &Catalog::builtin().form(self.form.label()).expect("builtin form").expr;
        base.substitute(&role_images(self.roles))
    }
}

impl fmt::Display for RepId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [p, r, t, u] = self.roles.map(|i| i + 1);
        write!(f, "{}[p={p},r={r},t={t},u={u}]", self.form.label())
    }
}

fn role_images(roles: [usize; 4]) -> [M; 5] {
    [M::var(roles[0]), M::var(roles[1]), M::var(roles[2]), M::var(roles[3]), M::var(4)]
}

/// `p_n` through the defining `4phi3` with `p = 1`.
pub fn aw_reference(pt: &AWPoint) -> Result<Rational> {
    aw_eval_rep(&RepId::standard(RepForm::Def1), pt)
}

/// Evaluates one representation. Divergences name the representation.
pub fn aw_eval_rep(rep: &RepId, pt: &AWPoint) -> Result<Rational> {
    rep.expression().eval(&pt.env()).map_err(|e| match e {
        Error::DivergentDenominator { param, k } => Error::DivergentDenominator {
            param: format!("{rep}: {param}"),
            k,
        },
        Error::SpecialPointB { b, k } => Error::SpecialPointB { b: format!("{rep}: {b}"), k },
        other => other,
    })
}

/// Guards for every representation under every role assignment.
pub fn all_rep_guards() -> Vec<Guard> {
    let mut g: Vec<Guard> = RepId::all().iter().flat_map(|r| r.expression().guards()).collect();
    g.sort_by_key(|x| format!("{x:?}"));
    g.dedup();
    g
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    /// All 24 permutations of `a` give the same value through `def1`.
    pub permutation_invariant: bool,
    /// Representations whose value changes under `t -> 1/t`.
    pub t_flip_failures: Vec<String>,
    /// Inverting `def1` gives `def2` up to parameter order.
    pub def1_def2_pairing: bool,
    /// Inverting `def3` gives `def3` with `t -> 1/t` and `(p, r) <-> (t, u)`.
    pub def3_self_pairing: bool,
}

impl SymmetryReport {
    pub fn pass(&self) -> bool {
        self.permutation_invariant && self.t_flip_failures.is_empty() && self.def1_def2_pairing && self.def3_self_pairing
    }
}

fn same_series(a: &SeriesSpec, b: &SeriesSpec) -> bool {
    a.sorted() == b.sorted()
}

/// The structural inversion pairings between the displays.
pub fn inversion_pairings() -> (bool, bool) {
    let d1 = RepId::standard(RepForm::Def1).expression();
    let d2 = RepId::standard(RepForm::Def2).expression();
    let d3 = RepId::standard(RepForm::Def3).expression();
    let pair12 = invert(&d1.series).is_ok_and(|e| same_series(&e.series, &d2.series));
    let swap = [M::var(2), M::var(3), M::var(0), M::var(1), M::var(4).inv()];
    let d3_image = d3.series.substitute(&swap);
    let self3 = invert(&d3.series).is_ok_and(|e| same_series(&e.series, &d3_image));
    (pair12, self3)
}

pub fn aw_symmetry_check(pt: &AWPoint) -> Result<SymmetryReport> {
    let reference = aw_reference(pt)?;
    let mut permutation_invariant = true;
    for p in permutations(4) {
        let moved = AWPoint {
            a: [0, 1, 2, 3].map(|i| pt.a[p[i]].clone()),
            ..pt.clone()
        };
        permutation_invariant &= aw_reference(&moved)? == reference;
    }
    let flipped = pt.flip_t();
    let mut t_flip_failures = Vec::new();
    for form in RepForm::ALL {
        let rep = RepId::standard(form);
        if aw_eval_rep(&rep, pt)? != aw_eval_rep(&rep, &flipped)? {
            t_flip_failures.push(rep.to_string());
        }
    }
    let (def1_def2_pairing, def3_self_pairing) = inversion_pairings();
    Ok(SymmetryReport {
        permutation_invariant,
        t_flip_failures,
        def1_def2_pairing,
        def3_self_pairing,
    })
}

/// Coefficients (constant first) of the polynomial through `(xs[i], ys[i])`,
/// by Newton divided differences.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    assert_eq!(xs.len(), ys.len());
    let k = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..k {
        for i in (j..k).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    // Horner on the Newton form
    let mut coeffs = vec![Rational::zero(); k];
    for i in (0..k).rev() {
        let mut next = vec![Rational::zero(); k];
        for d in 0..k - 1 {
            next[d + 1] += &coeffs[d];
            next[d] -= &coeffs[d] * &xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    coeffs
}

/// Degree in `x` of the interpolant through `n + 2` values of `p_n`, and
/// its coefficients. `ts` must give distinct `x`.
pub fn degree_in_x(n: u32, a: &[Rational; 4], q: &Rational, ts: &[Rational]) -> Result<(Option<usize>, Vec<Rational>)> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for t in ts {
        let pt = AWPoint::new(n, a.clone(), t.clone(), q.clone());
        xs.push(pt.x());
        ys.push(aw_reference(&pt)?);
    }
    let coeffs = interpolate(&xs, &ys);
    let degree = coeffs.iter().rposition(|c| !c.is_zero());
    Ok((degree, coeffs))
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepMismatch {
    pub rep: String,
    pub point: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub points: usize,
    pub evaluations: usize,
    pub mismatches: Vec<SweepMismatch>,
}

impl SweepReport {
    pub fn pass(&self) -> bool {
        self.points > 0 && self.mismatches.is_empty()
    }
}

/// Guarded random points for the full seven-representation sweep.
pub fn sweep_points(seed: u64, n_max: u32, count: usize) -> Result<Vec<AWPoint>> {
    let guards = all_rep_guards();
    (0..count)
        .map(|i| {
            let n = (i as u32) % (n_max + 1);
            sample_point(Frame::Aw, n, derive_seed(seed, &[0xa5, i as u64]), &guards).map(|e| AWPoint::from_env(&e))
        })
        .collect()
}

/// Every representation with every role assignment against `def1`.
pub fn aw_sweep(points: &[AWPoint]) -> SweepReport {
    let reps = RepId::all();
    let exprs: Vec<(RepId, Expression)> = reps.iter().map(|r| (*r, r.expression())).collect();
    let refs: Vec<Result<Rational>> = points.par_iter().map(aw_reference).collect();
    let pairs: Vec<(usize, usize)> = (0..points.len()).flat_map(|p| (0..exprs.len()).map(move |r| (p, r))).collect();
    let mismatches: Vec<SweepMismatch> = pairs
        .par_iter()
        .filter_map(|&(p, r)| {
            let (rep, expr) = &exprs[r];
            let got = expr.eval(&points[p].env());
            let detail = match (&refs[p], got) {
                (Ok(want), Ok(v)) if *want == v => return None,
                (Ok(want), Ok(v)) => format!("expected {want}, got {v}"),
                (Err(e), _) => e.to_string(),
                (_, Err(e)) => e.to_string(),
            };
            Some(SweepMismatch {
                rep: rep.to_string(),
                point: points[p].env().to_string(),
                detail,
            })
        })
        .collect();
    SweepReport {
        points: points.len(),
        evaluations: pairs.len(),
        mismatches,
    }
}

/// `1` at `n = 0`, whatever the point.
pub fn is_unit_at_degree_zero(pt: &AWPoint) -> Result<bool> {
    Ok(aw_reference(&AWPoint { n: 0, ..pt.clone() })?.is_one())
}
