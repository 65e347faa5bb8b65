use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{derive_seed, permutations, sample_point, Frame, ParamMonomial as M};
use crate::series::{PhiSpec, PochLength};
use crate::transform::{Expression, Prefactor};

use super::logvec::{pull_back, LogVec};
use super::wd5::ValueCheck;
use super::{classify_series, Census, ClassId};

/// A permutation of six slots: slot `k` receives `x_(g[k] + 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct S6Element(pub [usize; 6]);

impl S6Element {
    pub const IDENTITY: S6Element = S6Element([0, 1, 2, 3, 4, 5]);

    pub fn new(g: [usize; 6]) -> Result<Self> {
        let mut seen = [false; 6];
        for &i in &g {
            if i > 5 || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Parse(format!("{g:?} is not a permutation of 0..6")));
            }
        }
        Ok(S6Element(g))
    }

    pub fn all() -> Vec<S6Element> {
        permutations(6)
            .into_iter()
            .map(|p| S6Element([p[0], p[1], p[2], p[3], p[4], p[5]]))
            .collect()
    }

    pub fn transposition(i: usize, j: usize) -> Self {
        let mut g = Self::IDENTITY.0;
        g.swap(i, j);
        S6Element(g)
    }
}

/// Six parameters `x1..x6` written in some frame, with `x1 ... x6 = q^(1-n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct X6Config {
    pub frame: Frame,
    pub x: [LogVec; 6],
}

impl X6Config {
    pub fn new(frame: Frame, x: [LogVec; 6]) -> Result<Self> {
        if LogVec::sum(&x) != LogVec::q_pow(1, -1) {
            return Err(Error::ConstraintViolated("x1 x2 x3 x4 x5 x6 must equal q^(1-n)".into()));
        }
        Ok(X6Config { frame, x })
    }

    /// The free variables of the x6 frame themselves.
    pub fn generic() -> Self {
        let x6 = LogVec::q_pow(1, -1) - LogVec::sum(&std::array::from_fn::<_, 5, _>(LogVec::var));
        let x = std::array::from_fn(|i| if i < 5 { LogVec::var(i) } else { x6 });
        X6Config { frame: Frame::X6, x }
    }

    /// Reads `x` off `4phi3(q^-n, x23, x13, x12; x1234, x1235, x1236; q, q)`.
    pub fn from_balanced(phi: &PhiSpec, frame: Frame) -> Result<Self> {
        let slot = phi.terminating_slot()?;
        let up: Vec<LogVec> = phi
            .upper
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != slot)
            .map(|(_, m)| LogVec::from_monomial(m))
            .collect::<Result<_>>()?;
        let lo: Vec<LogVec> = phi.lower.iter().map(LogVec::from_monomial).collect::<Result<_>>()?;
        if up.len() != 3 || lo.len() != 3 {
            return Err(Error::NotBalanced);
        }
        let (x23, x13, x12) = (up[0], up[1], up[2]);
        let x1 = (x12 + x13 - x23).half();
        let x2 = x12 - x1;
        let x3 = x13 - x1;
        let x123 = x1 + x2 + x3;
        Self::new(frame, [x1, x2, x3, lo[0] - x123, lo[1] - x123, lo[2] - x123])
    }

    /// The base used for the census: the `C3` template.
    pub fn standard() -> Self {
        let phi = ClassId::C3.template().unwrap().series.as_phi().unwrap().clone();
        Self::from_balanced(&phi, Frame::Bcdef).expect("C3 is balanced")
    }

    fn permuted(&self, g: &S6Element) -> [LogVec; 6] {
        g.0.map(|i| self.x[i])
    }
}

/// Uppers `x23, x13, x12` and lowers `x1234, x1235, x1236` of the symmetric
/// function, in slot order.
fn symmetric_params(y: &[LogVec; 6]) -> (Vec<LogVec>, Vec<LogVec>, LogVec) {
    let upper = vec![y[1] + y[2], y[0] + y[2], y[0] + y[1]];
    let x123 = y[0] + y[1] + y[2];
    let lower = vec![x123 + y[3], x123 + y[4], x123 + y[5]];
    (upper, lower, x123)
}

fn monos(v: &[LogVec]) -> Result<Vec<M>> {
    v.iter().map(LogVec::to_monomial).collect()
}

/// The `4phi3` of the image of `base` under `g`.
pub fn s6_series(g: &S6Element, base: &X6Config) -> Result<PhiSpec> {
    let (upper, lower, _) = symmetric_params(&base.permuted(g));
    let mut up = vec![M::Q_NEG_N];
    up.extend(monos(&upper)?);
    Ok(PhiSpec::new(up, monos(&lower)?, M::q_pow(1, 0)))
}

/// `q^C(n,2) (x1234, x1235, x1236; q)_n / x123^n 4phi3(...)` at the image of
/// `base` under `g`. Fails with `NonIntegral` when `x123` has no monomial
/// form in the base frame; the series itself is available from `s6_series`.
pub fn s6_apply(g: &S6Element, base: &X6Config) -> Result<Expression> {
    let (_, lower, x123) = symmetric_params(&base.permuted(g));
    let series = s6_series(g, base)?;
    let mut pre = Prefactor {
        qbinom_exp: 1,
        power_base: x123.to_monomial()?.inv(),
        ..Prefactor::one()
    };
    for l in monos(&lower)? {
        pre = pre.num(l, PochLength::N);
    }
    Ok(Expression::new(pre, series))
}

/// Class counts over all 720 elements.
pub fn s6_census(base: &X6Config) -> Result<Census> {
    let classes: Vec<ClassId> = S6Element::all()
        .par_iter()
        .map(|g| s6_series(g, base).map(|p| classify_series(&p.into(), base.frame)))
        .collect::<Result<_>>()?;
    let mut census = Census::new();
    for c in classes {
        *census.entry(c).or_default() += 1;
    }
    Ok(census)
}

/// Number of distinct ordered parameter arrangements over all 720 elements.
pub fn s6_arrangements(base: &X6Config) -> Result<usize> {
    let mut seen = HashSet::new();
    for g in S6Element::all() {
        seen.insert(s6_series(&g, base)?);
    }
    Ok(seen.len())
}

/// Evaluates every image of the generic configuration against the identity
/// at `envs` guarded random points.
pub fn s6_value_check(seed: u64, n_max: u32, envs: usize) -> Result<ValueCheck> {
    let base = X6Config::generic();
    let images: Vec<(S6Element, Expression)> = S6Element::all()
        .into_iter()
        .map(|g| s6_apply(&g, &base).map(|e| (g, e)))
        .collect::<Result<_>>()?;
    let guards: Vec<_> = images.iter().flat_map(|(_, e)| e.guards()).collect();
    let points = (0..envs)
        .map(|i| sample_point(Frame::X6, (i as u32) % (n_max + 1), derive_seed(seed, &[0x56, i as u64]), &guards))
        .collect::<Result<Vec<_>>>()?;
    let reference = &images[0].1;
    let failures: Vec<String> = images
        .par_iter()
        .filter_map(|(g, e)| {
            let bad = points
                .iter()
                .find(|env| !matches!((reference.eval(env), e.eval(env)), (Ok(a), Ok(b)) if a == b))?;
            Some(format!("{:?} at {bad}", g.0))
        })
        .collect();
    Ok(ValueCheck {
        images: images.len(),
        evaluations: images.len() * points.len(),
        failures,
    })
}

/// Rewrites an x6-frame series in the frame of `base`.
pub fn pull_back_phi(phi: &PhiSpec, base: &X6Config) -> Result<PhiSpec> {
    let images: [LogVec; 5] = std::array::from_fn(|i| base.x[i]);
    let conv = |m: &M| pull_back(m, &images).and_then(|v| v.to_monomial());
    Ok(PhiSpec {
        upper: phi.upper.iter().map(conv).collect::<Result<_>>()?,
        lower: phi.lower.iter().map(conv).collect::<Result<_>>()?,
        argument: conv(&phi.argument)?,
        zero_pad: phi.zero_pad,
    })
}
