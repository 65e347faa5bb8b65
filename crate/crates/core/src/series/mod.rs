//! q-Pochhammer symbols and exact evaluation of terminating basic
//! hypergeometric series.

mod length;
mod spec;

pub use length::PochLength;
pub use spec::{PhiSpec, SeriesSpec, WSpec};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{pow, ParamMonomial, PointEnv, Rational};

/// `(a;q)_k = prod_{j<k} (1 - a q^j)`.
pub fn q_pochhammer(a: &Rational, q: &Rational, k: u32) -> Rational {
    let mut out = Rational::one();
    let mut aq = a.clone();
    for _ in 0..k {
        out *= Rational::one() - &aq;
        aq *= q;
    }
    out
}

/// `(a;q)_m` for any integer `m`, with `(a;q)_{-k} = 1/(a q^-k; q)_k`.
/// Returns `None` when the negative-length form has a vanishing denominator.
pub fn q_pochhammer_signed(a: &Rational, q: &Rational, m: i64) -> Option<Rational> {
    if m >= 0 {
        return Some(q_pochhammer(a, q, u32::try_from(m).expect("length fits u32")));
    }
    let k = u32::try_from(-m).expect("length fits u32");
    let d = q_pochhammer(&(a * pow(q, m)), q, k);
    (!d.is_zero()).then(|| d.recip())
}

/// `(a;q^-1)_k`, computed as `(1/a;q)_k (-a)^k q^{-C(k,2)}`.
pub fn poch_base_invert(a: &Rational, q: &Rational, k: u32) -> Result<Rational> {
    if a.is_zero() {
        return Err(Error::ZeroBase);
    }
    let kk = i64::from(k);
    Ok(q_pochhammer(&a.recip(), q, k) * pow(&-a, kk) * pow(q, -kk * (kk - 1) / 2))
}

fn divergent(param: &ParamMonomial, env: &PointEnv, k: i64) -> Error {
    Error::DivergentDenominator {
        param: param.display(env.frame),
        k,
    }
}

/// Sums the terminating `phi` series at `env`.
pub fn eval_phi(spec: &PhiSpec, env: &PointEnv) -> Result<Rational> {
    spec.terminating_slot()?;
    let q = &env.q;
    let e = i64::from(spec.term_exponent());
    let up: Vec<Rational> = spec.upper.iter().map(|m| m.eval(env)).collect();
    let lo: Vec<Rational> = spec.lower.iter().map(|m| m.eval(env)).collect();
    let z = spec.argument.eval(env);
    let sign_e = if e.rem_euclid(2) == 0 { Rational::one() } else { -Rational::one() };
    let one = Rational::one();

    let mut sum = Rational::one();
    let mut term = Rational::one();
    let mut qk = Rational::one();
    for k in 0..i64::from(env.n) {
        let mut num = z.clone() * &sign_e * pow(&qk, e);
        for a in &up {
            num *= &one - a * &qk;
        }
        let mut den = &one - q * &qk;
        for (b, m) in lo.iter().zip(&spec.lower) {
            let f = &one - b * &qk;
            if f.is_zero() {
                return Err(divergent(m, env, k + 1));
            }
            den *= f;
        }
        term = term * num / den;
        sum += &term;
        qk *= q;
    }
    Ok(sum)
}

/// Sums the terminating very-well-poised `8W7` at `env` through the factor
/// `(1 - b q^2k)/(1 - b)`.
pub fn eval_w(spec: &WSpec, env: &PointEnv) -> Result<Rational> {
    spec.terminating_slot()?;
    let q = &env.q;
    let one = Rational::one();
    let b = spec.special.eval(env);
    for k in 0..=i64::from(env.n) {
        if (&b * pow(q, 2 * k)).is_one() {
            return Err(Error::SpecialPointB {
                b: spec.special.display(env.frame),
                k: 2 * k,
            });
        }
    }
    let a: Vec<Rational> = spec.numer.iter().map(|m| m.eval(env)).collect();
    let lows: Vec<Rational> = a.iter().map(|x| q * &b / x).collect();
    let z = spec.argument.eval(env);
    let one_minus_b = &one - &b;

    let mut sum = Rational::one();
    let mut p = Rational::one();
    let mut qk = Rational::one();
    for k in 0..i64::from(env.n) {
        let mut num = z.clone() * (&one - &b * &qk);
        for x in &a {
            num *= &one - x * &qk;
        }
        let mut den = &one - q * &qk;
        for (j, l) in lows.iter().enumerate() {
            let f = &one - l * &qk;
            if f.is_zero() {
                return Err(divergent(&spec.implied_lower(j), env, k + 1));
            }
            den *= f;
        }
        p = p * num / den;
        qk *= q;
        let q2k = &qk * &qk;
        sum += &p * (&one - &b * q2k) / &one_minus_b;
    }
    Ok(sum)
}

pub fn eval_series(spec: &SeriesSpec, env: &PointEnv) -> Result<Rational> {
    match spec {
        SeriesSpec::Phi(p) => eval_phi(p, env),
        SeriesSpec::W(w) => eval_w(w, env),
    }
}

/// The `l` with `q^l * prod(upper) == prod(lower)`, if any.
pub fn balance_level(spec: &PhiSpec) -> Option<i32> {
    let prod = |xs: &[ParamMonomial]| xs.iter().fold(ParamMonomial::ONE, |acc, &m| acc * m);
    (prod(&spec.lower) / prod(&spec.upper)).as_q_power()
}

/// Checks the well-poised relations `q a1 = a_j b_j` (for some matching of the
/// remaining uppers with the lowers) and the pair `+-q sqrt(a1)` among the
/// uppers.
pub fn is_very_well_poised(spec: &PhiSpec) -> bool {
    if spec.zero_pad != 0 || spec.upper.len() != spec.lower.len() + 1 {
        return false;
    }
    let mut lowers = spec.lower.clone();
    lowers.sort();
    (0..spec.upper.len()).any(|i| {
        let a1 = spec.upper[i];
        let rest: Vec<ParamMonomial> = spec
            .upper
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &m)| m)
            .collect();
        let mut partners: Vec<ParamMonomial> = rest.iter().map(|&a| a1.shift(1, 0) / a).collect();
        partners.sort();
        if partners != lowers {
            return false;
        }
        let target = a1.shift(2, 0);
        rest.iter().enumerate().any(|(j, &x)| {
            x.powi(2) == target && rest.iter().enumerate().any(|(k, &y)| k != j && y == -x)
        })
    })
}
