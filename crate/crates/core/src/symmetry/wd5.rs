use num_rational::Rational64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{derive_seed, permutations, sample_point, Frame};
use crate::series::{PochLength, WSpec};
use crate::transform::{Expression, Prefactor};

use super::logvec::LogVec;
use super::{classify, Census, ClassId};

pub const WB5_ORDER: usize = 3840;
pub const WD5_ORDER: usize = 1920;

/// A permutation of five slots with inversions: slot `k` receives
/// `xi_(perm[k])`, inverted when bit `k` of `signs` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    pub perm: [usize; 5],
    pub signs: u8,
}

impl SignedPerm {
    pub const IDENTITY: SignedPerm = SignedPerm {
        perm: [0, 1, 2, 3, 4],
        signs: 0,
    };

    pub fn parity(&self) -> u32 {
        self.signs.count_ones()
    }

    /// The full signed group.
    pub fn all_wb5() -> Vec<SignedPerm> {
        let perms = permutations(5);
        perms
            .iter()
            .flat_map(|p| {
                (0u8..32).map(move |signs| SignedPerm {
                    perm: [p[0], p[1], p[2], p[3], p[4]],
                    signs,
                })
            })
            .collect()
    }

    /// Elements with an even number of inversions.
    pub fn all_wd5() -> Vec<SignedPerm> {
        Self::all_wb5().into_iter().filter(|g| g.parity() % 2 == 0).collect()
    }
}

/// `8W7(B; A1..A5; q, q^2 B^2 / A1...A5)` as exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WConfig {
    pub frame: Frame,
    pub special: LogVec,
    pub numer: [LogVec; 5],
}

fn try5<T>(f: impl Fn(usize) -> Result<T>) -> Result<[T; 5]> {
    let v = (0..5).map(f).collect::<Result<Vec<T>>>()?;
    Ok(v.try_into().unwrap_or_else(|_| unreachable!()))
}

fn w_argument(special: LogVec, numer: &[LogVec; 5]) -> LogVec {
    LogVec::q_pow(2, 0) + special + special - LogVec::sum(numer)
}

impl WConfig {
    pub fn from_w(w: &WSpec, frame: Frame) -> Result<Self> {
        let special = LogVec::from_monomial(&w.special)?;
        let numer = try5(|j| LogVec::from_monomial(&w.numer[j]))?;
        if LogVec::from_monomial(&w.argument)? != w_argument(special, &numer) {
            return Err(Error::TemplateMismatch {
                expected: "q^2 B^2 / A1 A2 A3 A4 A5".into(),
                found: w.display(frame),
            });
        }
        Ok(WConfig { frame, special, numer })
    }

    pub fn of_class(class: ClassId) -> Result<Self> {
        let expr = class.template().ok_or_else(|| Error::Unknown(class.name()))?;
        let w = expr.series.as_w().ok_or_else(|| Error::Unknown(format!("{class} is not an 8W7 class")))?;
        Self::from_w(w, class.frame())
    }

    /// `x0` and `x1..x5` of the invariance theorem.
    fn xi(&self) -> (LogVec, [LogVec; 5]) {
        let q = LogVec::q_pow(1, 0);
        let b = self.special;
        let xi0 = (b + b + b + q + q + q - LogVec::sum(&self.numer)).scale(Rational64::new(1, 4));
        let xi = self.numer.map(|a| (b + q - xi0 - xi0 - a).half());
        (xi0, xi)
    }

    fn act(&self, g: &SignedPerm) -> WConfig {
        let (xi0, xi) = self.xi();
        let moved: [LogVec; 5] = std::array::from_fn(|k| {
            let x = xi[g.perm[k]];
            if g.signs >> k & 1 == 1 {
                -x
            } else {
                x
            }
        });
        let s = LogVec::sum(&moved);
        let special = LogVec::q_pow(-1, 0) + xi0 + xi0 + xi0 + s;
        let numer = moved.map(|x| xi0 + s - x - x);
        WConfig {
            frame: self.frame,
            special,
            numer,
        }
    }

    /// `(qB, ...)` infinite-product numerators and denominators of the
    /// invariant function.
    fn infinite_factors(&self) -> (Vec<LogVec>, Vec<LogVec>) {
        let q = LogVec::q_pow(1, 0);
        let mut num = vec![w_argument(self.special, &self.numer)];
        num.extend(self.numer.iter().map(|&a| q + self.special - a));
        (num, vec![q + self.special])
    }

    fn to_spec(&self) -> Result<WSpec> {
        let numer = try5(|j| self.numer[j].to_monomial())?;
        Ok(WSpec::new(
            self.special.to_monomial()?,
            numer,
            w_argument(self.special, &self.numer).to_monomial()?,
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WImage {
    /// `base = expr` with the finite prefactor left by cancelling the
    /// infinite products pairwise.
    Terminating(Box<Expression>),
    Nonterminating,
}

/// Cancels `(x;q)_inf / (x q^m;q)_inf = (x;q)_m` across the two lists.
fn pair_off(num: Vec<LogVec>, den: Vec<LogVec>) -> Result<Prefactor> {
    let mut den = den;
    let mut pre = Prefactor::one();
    for x in num {
        let j = den
            .iter()
            .position(|y| x.q_offset(y).is_some())
            .ok_or_else(|| Error::NonIntegral(format!("unpaired infinite product {x:?}")))?;
        let y = den.swap_remove(j);
        let (a, b) = x.q_offset(&y).unwrap();
        if !a.is_integer() || !b.is_integer() {
            return Err(Error::NonIntegral(format!("length {a} + {b} n")));
        }
        let len = PochLength::affine(a.to_integer() as i32, b.to_integer() as i32);
        pre = pre.num(x.to_monomial()?, len);
    }
    if !den.is_empty() {
        return Err(Error::NonIntegral("unpaired infinite product".into()));
    }
    Ok(pre)
}

pub fn wd5_apply(g: &SignedPerm, base: &WConfig) -> Result<WImage> {
    if g.parity() % 2 == 1 {
        return Err(Error::OddParity);
    }
    let image = base.act(g);
    let q_neg_n = LogVec::q_pow(0, -1);
    if !image.numer.contains(&q_neg_n) {
        return Ok(WImage::Nonterminating);
    }
    let (nb, db) = base.infinite_factors();
    let (ni, di) = image.infinite_factors();
    let mut num = ni;
    num.extend(db);
    let mut den = di;
    den.extend(nb);
    let pre = pair_off(num, den)?;
    Ok(WImage::Terminating(Box::new(Expression::new(pre, image.to_spec()?))))
}

/// Classes of the 1920 images of a class template. Nonterminating images
/// are counted under `Nonterminating`.
pub fn wd5_census(base_class: ClassId) -> Result<Census> {
    let base = WConfig::of_class(base_class)?;
    let classes: Vec<ClassId> = SignedPerm::all_wd5()
        .par_iter()
        .map(|g| {
            Ok(match wd5_apply(g, &base)? {
                WImage::Terminating(e) => classify(&e, base.frame),
                WImage::Nonterminating => ClassId::Nonterminating,
            })
        })
        .collect::<Result<_>>()?;
    let mut census = Census::new();
    for c in classes {
        *census.entry(c).or_default() += 1;
    }
    Ok(census)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValueCheck {
    pub images: usize,
    pub evaluations: usize,
    pub failures: Vec<String>,
}

impl ValueCheck {
    pub fn pass(&self) -> bool {
        self.images > 0 && self.failures.is_empty()
    }
}

/// Checks every `stride`-th terminating image of a class template against
/// the template itself at `envs` guarded random points each.
pub fn wd5_value_check(base_class: ClassId, seed: u64, n_max: u32, envs: usize, stride: usize) -> Result<ValueCheck> {
    let base = WConfig::of_class(base_class)?;
    let lhs = Expression::bare(base.to_spec()?);
    let elements = SignedPerm::all_wd5();
    let images: Vec<(usize, Expression)> = elements
        .iter()
        .enumerate()
        .filter_map(|(i, g)| match wd5_apply(g, &base) {
            Ok(WImage::Terminating(e)) => Some(Ok((i, *e))),
            Ok(WImage::Nonterminating) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .step_by(stride.max(1))
        .collect();
    let results: Vec<(usize, Option<String>)> = images
        .par_iter()
        .map(|(i, rhs)| {
            let mut guards = lhs.guards();
            guards.extend(rhs.guards());
            let mut count = 0;
            for k in 0..envs {
                let n = (k as u32) % (n_max + 1);
                let seed = derive_seed(seed, &[0xd5, *i as u64, k as u64]);
                let Ok(env) = sample_point(base.frame, n, seed, &guards) else {
                    return (count, Some(format!("{:?}: no admissible point", elements[*i])));
                };
                count += 1;
                match (lhs.eval(&env), rhs.eval(&env)) {
                    (Ok(a), Ok(b)) if a == b => {}
                    (a, b) => return (count, Some(format!("{:?} at {env}: {a:?} vs {b:?}", elements[*i]))),
                }
            }
            (count, None)
        })
        .collect();
    Ok(ValueCheck {
        images: images.len(),
        evaluations: results.iter().map(|r| r.0).sum(),
        failures: results.into_iter().filter_map(|r| r.1).collect(),
    })
}
