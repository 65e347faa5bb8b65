//! Exact rationals, Laurent monomials over named frames, and evaluation points.

mod env;
mod frame;
mod monomial;

pub use env::{derive_seed, sample_point, Guard, PointEnv, SAMPLE_ATTEMPTS};
pub use frame::{permutations, Frame};
pub use monomial::ParamMonomial;
pub(crate) use monomial::{affine, parse_affine};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `x^k` for any integer `k`; `x` must be nonzero when `k < 0`.
pub fn pow(x: &Rational, k: i64) -> Rational {
    if k == 0 {
        return Rational::one();
    }
    let e = u32::try_from(k.unsigned_abs()).expect("exponent fits in u32");
    let num = num_traits::pow(x.numer().clone(), e as usize);
    let den = num_traits::pow(x.denom().clone(), e as usize);
    if k > 0 {
        Rational::new_raw(num, den)
    } else {
        Rational::new(den, num)
    }
}

/// Parses `"p/q"` or `"p"` with an optional leading sign. Decimals are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let is_int = |t: &str| {
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        !digits.is_empty() && digits.bytes().all(|c| c.is_ascii_digit())
    };
    if !is_int(num) || !is_int(den) {
        return Err(bad());
    }
    let num: BigInt = num.trim_start_matches('+').parse().map_err(|_| bad())?;
    let den: BigInt = den.trim_start_matches('+').parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}
