//! Prefactored series expressions and the structural rewrites between them:
//! inversion of the summation order and Watson's transformation both ways.

mod inversion;
mod watson;

pub use inversion::{invert, invert_phi, invert_w};
pub use watson::{watson_converse, watson_converse_equivalents, watson_forms};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{pow, Frame, Guard, ParamMonomial, PointEnv, Rational};
use crate::series::{eval_series, q_pochhammer_signed, PochLength, SeriesSpec};

/// `(base; q)_len` raised to `exponent` (+1 or -1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PochFactor {
    pub base: ParamMonomial,
    pub len: PochLength,
    pub exponent: i8,
}

/// `q^(u C(n,2)) (-1)^(v n) M^n prod (base;q)_len^(+-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Prefactor {
    pub qbinom_exp: i32,
    pub sign_exp: i32,
    pub power_base: ParamMonomial,
    pub poch: Vec<PochFactor>,
}

impl Default for Prefactor {
    fn default() -> Self {
        Prefactor {
            qbinom_exp: 0,
            sign_exp: 0,
            power_base: ParamMonomial::ONE,
            poch: Vec::new(),
        }
    }
}

impl Prefactor {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn num(mut self, base: ParamMonomial, len: PochLength) -> Self {
        self.poch.push(PochFactor { base, len, exponent: 1 });
        self
    }

    pub fn den(mut self, base: ParamMonomial, len: PochLength) -> Self {
        self.poch.push(PochFactor { base, len, exponent: -1 });
        self
    }

    pub fn times(&self, other: &Prefactor) -> Prefactor {
        let mut poch = self.poch.clone();
        poch.extend(other.poch.iter().cloned());
        Prefactor {
            qbinom_exp: self.qbinom_exp + other.qbinom_exp,
            sign_exp: self.sign_exp + other.sign_exp,
            power_base: self.power_base * other.power_base,
            poch,
        }
    }

    pub fn inverse(&self) -> Prefactor {
        Prefactor {
            qbinom_exp: -self.qbinom_exp,
            sign_exp: -self.sign_exp,
            power_base: self.power_base.inv(),
            poch: self
                .poch
                .iter()
                .map(|f| PochFactor { exponent: -f.exponent, ..f.clone() })
                .collect(),
        }
    }

    pub fn substitute(&self, images: &[ParamMonomial; 5]) -> Prefactor {
        Prefactor {
            power_base: self.power_base.substitute(images),
            poch: self
                .poch
                .iter()
                .map(|f| PochFactor { base: f.base.substitute(images), ..f.clone() })
                .collect(),
            ..self.clone()
        }
    }

    pub fn eval(&self, env: &PointEnv) -> Result<Rational> {
        let n = i64::from(env.n);
        let mut v = env.q_power(i64::from(self.qbinom_exp) * n * (n - 1) / 2);
        if (i64::from(self.sign_exp) * n).rem_euclid(2) == 1 {
            v = -v;
        }
        v *= pow(&self.power_base.eval(env), n);
        for f in &self.poch {
            let m = f.len.resolve(env.n);
            let base = f.base.eval(env);
            let divergent = || Error::DivergentDenominator {
                param: f.base.display(env.frame),
                k: m.abs(),
            };
            let p = q_pochhammer_signed(&base, &env.q, m).ok_or_else(divergent)?;
            if f.exponent > 0 {
                v *= p;
            } else {
                if p.is_zero() {
                    return Err(divergent());
                }
                v /= p;
            }
        }
        Ok(v)
    }

    /// Conditions under which every factor is finite and nonzero-denominator.
    pub fn guards(&self) -> Vec<Guard> {
        self.poch
            .iter()
            .map(|f| {
                if f.exponent < 0 {
                    Guard::Poch { base: f.base, len: f.len }
                } else {
                    // only a negative length puts this factor in a denominator
                    Guard::Poch {
                        base: f.base.shift(f.len.fixed, f.len.per_n),
                        len: -f.len,
                    }
                }
            })
            .collect()
    }

    pub fn is_one(&self) -> bool {
        self.qbinom_exp == 0 && self.sign_exp == 0 && self.power_base == ParamMonomial::ONE && self.poch.is_empty()
    }

    pub fn display(&self, frame: Frame) -> String {
        let mut parts = Vec::new();
        if self.qbinom_exp != 0 {
            parts.push(format!("q^({}*C(n,2))", self.qbinom_exp));
        }
        if self.sign_exp.rem_euclid(2) == 1 {
            parts.push("(-1)^n".to_string());
        }
        if self.power_base != ParamMonomial::ONE {
            parts.push(format!("({})^n", self.power_base.display(frame)));
        }
        let fmt = |exp: i8| {
            self.poch
                .iter()
                .filter(|f| f.exponent == exp)
                .map(|f| format!("({};q)_{}", f.base.display(frame), f.len))
                .collect::<Vec<_>>()
        };
        let (num, den) = (fmt(1), fmt(-1));
        parts.extend(num);
        let mut out = if parts.is_empty() { "1".to_string() } else { parts.join(" ") };
        if !den.is_empty() {
            out = format!("{out} / [{}]", den.join(" "));
        }
        out
    }
}

/// A prefactor times a terminating series.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Expression {
    pub prefactor: Prefactor,
    pub series: SeriesSpec,
}

impl Expression {
    pub fn new(prefactor: Prefactor, series: impl Into<SeriesSpec>) -> Self {
        Expression {
            prefactor,
            series: series.into(),
        }
    }

    pub fn bare(series: impl Into<SeriesSpec>) -> Self {
        Expression::new(Prefactor::one(), series)
    }

    pub fn eval(&self, env: &PointEnv) -> Result<Rational> {
        let s = eval_series(&self.series, env)?;
        if s.is_zero() {
            // a vanishing series makes the prefactor irrelevant unless it diverges
            self.prefactor.eval(env)?;
            return Ok(s);
        }
        Ok(self.prefactor.eval(env)? * s)
    }

    pub fn guards(&self) -> Vec<Guard> {
        let mut g = self.prefactor.guards();
        g.extend(self.series.guards());
        g
    }

    pub fn substitute(&self, images: &[ParamMonomial; 5]) -> Expression {
        Expression {
            prefactor: self.prefactor.substitute(images),
            series: self.series.substitute(images),
        }
    }

    pub fn display(&self, frame: Frame) -> String {
        if self.prefactor.is_one() {
            self.series.display(frame)
        } else {
            format!("{} * {}", self.prefactor.display(frame), self.series.display(frame))
        }
    }
}

/// True when both expressions agree at `env`; errors propagate.
pub fn values_agree(a: &Expression, b: &Expression, env: &PointEnv) -> Result<bool> {
    Ok(a.eval(env)? == b.eval(env)?)
}

/// `true` iff the prefactor evaluates to exactly one at `env`.
pub fn prefactor_is_unit_at(p: &Prefactor, env: &PointEnv) -> Result<bool> {
    Ok(p.eval(env)?.is_one())
}

#[cfg(test)]
mod tests;
