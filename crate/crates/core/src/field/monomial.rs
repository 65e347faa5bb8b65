use std::fmt::Write as _;
use std::ops::{Div, Mul, Neg};

use crate::error::{Error, Result};

use super::{pow, Frame, PointEnv, Rational};

/// `sign * q^(q_exp + n_coeff*n) * prod v_i^vars[i]` over the five free
/// variables of a frame.
///
/// The derived ordering compares `(sign, q_exp, n_coeff, vars)`
/// lexicographically and is the tie-break used by canonical signatures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamMonomial {
    pub sign: i8,
    pub q_exp: i32,
    pub n_coeff: i32,
    pub vars: [i32; 5],
}

impl ParamMonomial {
    pub const ONE: ParamMonomial = ParamMonomial::new(1, 0, 0, [0; 5]);

    /// The terminating parameter `q^-n`.
    pub const Q_NEG_N: ParamMonomial = ParamMonomial::new(1, 0, -1, [0; 5]);

    pub const fn new(sign: i8, q_exp: i32, n_coeff: i32, vars: [i32; 5]) -> Self {
        ParamMonomial {
            sign,
            q_exp,
            n_coeff,
            vars,
        }
    }

    /// `q^(a + b n)`.
    pub const fn q_pow(a: i32, b: i32) -> Self {
        ParamMonomial::new(1, a, b, [0; 5])
    }

    /// The `i`-th free variable of the frame.
    pub const fn var(i: usize) -> Self {
        let mut vars = [0; 5];
        vars[i] = 1;
        ParamMonomial::new(1, 0, 0, vars)
    }

    pub fn inv(self) -> Self {
        ParamMonomial::new(
            self.sign,
            -self.q_exp,
            -self.n_coeff,
            self.vars.map(|e| -e),
        )
    }

    pub fn powi(self, k: i32) -> Self {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { self.sign };
        ParamMonomial::new(
            sign,
            self.q_exp * k,
            self.n_coeff * k,
            self.vars.map(|e| e * k),
        )
    }

    /// Multiplies by `q^(a + b n)`.
    pub fn shift(self, a: i32, b: i32) -> Self {
        self * ParamMonomial::q_pow(a, b)
    }

    pub fn is_q_neg_n(&self) -> bool {
        *self == Self::Q_NEG_N
    }

    /// True when the monomial is a pure power of `q` with no `n` dependence.
    pub fn as_q_power(&self) -> Option<i32> {
        (self.sign == 1 && self.n_coeff == 0 && self.vars == [0; 5]).then_some(self.q_exp)
    }

    /// The monomial `s` with `s*s == self`, when one exists.
    pub fn sqrt(&self) -> Option<Self> {
        let even = |e: i32| e % 2 == 0;
        if self.sign != 1 || !even(self.q_exp) || !even(self.n_coeff) || !self.vars.iter().all(|&e| even(e)) {
            return None;
        }
        Some(ParamMonomial::new(
            1,
            self.q_exp / 2,
            self.n_coeff / 2,
            self.vars.map(|e| e / 2),
        ))
    }

    /// Replaces variable `i` by `images[i]`. Sign and the `q` part are kept.
    pub fn substitute(&self, images: &[ParamMonomial; 5]) -> Self {
        let mut out = ParamMonomial::new(self.sign, self.q_exp, self.n_coeff, [0; 5]);
        for (img, &e) in images.iter().zip(&self.vars) {
            if e != 0 {
                out = out * img.powi(e);
            }
        }
        out
    }

    pub fn eval(&self, env: &PointEnv) -> Rational {
        let mut v = env.q_power(i64::from(self.q_exp) + i64::from(self.n_coeff) * i64::from(env.n));
        for (x, &e) in env.values.iter().zip(&self.vars) {
            if e != 0 {
                v *= pow(x, i64::from(e));
            }
        }
        if self.sign < 0 {
            -v
        } else {
            v
        }
    }

    /// Renders in the catalog notation, e.g. `-q^(1-n) b^2 / c d`.
    pub fn display(&self, frame: Frame) -> String {
        let names = frame.vars();
        let mut num = Vec::new();
        let mut den = Vec::new();
        if self.q_exp != 0 || self.n_coeff != 0 {
            let e = affine(self.q_exp, self.n_coeff);
            num.push(if e == "1" { "q".to_string() } else { format!("q^{e}") });
        }
        for (name, &e) in names.iter().zip(&self.vars) {
            let side = if e > 0 { &mut num } else { &mut den };
            match e.abs() {
                0 => {}
                1 => side.push(name.to_string()),
                k => side.push(format!("{name}^{k}")),
            }
        }
        let mut out = String::new();
        if self.sign < 0 {
            out.push('-');
        }
        if num.is_empty() {
            out.push('1');
        } else {
            out.push_str(&num.join(" "));
        }
        if !den.is_empty() {
            let _ = write!(out, " / {}", den.join(" "));
        }
        out
    }

    /// Parses the notation produced by [`ParamMonomial::display`]. Factors are
    /// separated by spaces; everything after a single `/` is inverted. The
    /// frame's eliminated variable may be used and is substituted.
    pub fn parse(s: &str, frame: Frame) -> Result<Self> {
        let err = |msg: &str| Error::Parse(format!("{msg} in monomial {s:?}"));
        let mut body = s.trim();
        let mut out = ParamMonomial::ONE;
        if let Some(rest) = body.strip_prefix('-') {
            out.sign = -1;
            body = rest.trim_start();
        }
        let (num, den) = match body.split_once('/') {
            Some((a, b)) => (a, Some(b)),
            None => (body, None),
        };
        if den.is_some_and(|d| d.contains('/')) {
            return Err(err("more than one '/'"));
        }
        if num.trim().is_empty() {
            return Err(err("empty numerator"));
        }
        for (part, inverse) in [(num, false), (den.unwrap_or(""), true)] {
            for tok in part.split_whitespace() {
                let factor = parse_factor(tok, frame).ok_or_else(|| err(&format!("bad factor {tok:?}")))?;
                out = out * if inverse { factor.inv() } else { factor };
            }
        }
        if den.is_some_and(|d| d.trim().is_empty()) {
            return Err(err("empty denominator"));
        }
        Ok(out)
    }
}

fn parse_factor(tok: &str, frame: Frame) -> Option<ParamMonomial> {
    if tok == "1" {
        return Some(ParamMonomial::ONE);
    }
    let (base, exp) = match tok.split_once('^') {
        Some((b, e)) => (b, Some(e)),
        None => (tok, None),
    };
    if base == "q" {
        let (a, b) = match exp {
            None => (1, 0),
            Some(e) => parse_affine(e.strip_prefix('(').and_then(|e| e.strip_suffix(')')).unwrap_or(e))?,
        };
        return Some(ParamMonomial::q_pow(a, b));
    }
    let k: i32 = match exp {
        None => 1,
        Some(e) => e.parse().ok()?,
    };
    let m = match frame.var_index(base) {
        Some(i) => ParamMonomial::var(i),
        None => match frame.derived() {
            Some((name, m)) if name == base => m,
            _ => return None,
        },
    };
    Some(m.powi(k))
}

/// Parses `a + b n` written like `1-n`, `-2n-1`, `n+2`, `3`.
pub(crate) fn parse_affine(s: &str) -> Option<(i32, i32)> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if i > 0 && (c == '+' || c == '-') {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    let (mut a, mut b) = (0, 0);
    for t in terms {
        let (sign, body) = match t.as_bytes().first()? {
            b'-' => (-1, &t[1..]),
            b'+' => (1, &t[1..]),
            _ => (1, t),
        };
        if let Some(coeff) = body.strip_suffix('n') {
            let c: i32 = if coeff.is_empty() { 1 } else { coeff.parse().ok()? };
            b += sign * c;
        } else {
            if body.is_empty() {
                return None;
            }
            a += sign * body.parse::<i32>().ok()?;
        }
    }
    Some((a, b))
}

pub(crate) fn affine(a: i32, b: i32) -> String {
    let n_part = match b {
        1 => "n".to_string(),
        -1 => "-n".to_string(),
        b => format!("{b}n"),
    };
    match (a, b) {
        (a, 0) => a.to_string(),
        (0, _) => n_part,
        (a, b) if b > 0 => format!("({a}+{n_part})"),
        (a, _) => format!("({a}{n_part})"),
    }
}

impl Mul for ParamMonomial {
    type Output = ParamMonomial;
    fn mul(self, rhs: Self) -> Self {
        let mut vars = self.vars;
        for (v, r) in vars.iter_mut().zip(rhs.vars) {
            *v += r;
        }
        ParamMonomial::new(
            self.sign * rhs.sign,
            self.q_exp + rhs.q_exp,
            self.n_coeff + rhs.n_coeff,
            vars,
        )
    }
}

impl Div for ParamMonomial {
    type Output = ParamMonomial;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv()
    }
}

impl Neg for ParamMonomial {
    type Output = ParamMonomial;
    fn neg(self) -> Self {
        ParamMonomial { sign: -self.sign, ..self }
    }
}
