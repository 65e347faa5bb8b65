use std::ops::{Add, Neg, Sub};

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::ParamMonomial;

/// Exponent vector of a positive monomial over `[q, q^n, v1..v5]`, with
/// rational entries so that square and fourth roots stay representable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LogVec(pub [Rational64; 7]);

impl LogVec {
    pub fn zero() -> Self {
        LogVec([Rational64::zero(); 7])
    }

    /// `q^(a + b n)`.
    pub fn q_pow(a: i64, b: i64) -> Self {
        let mut v = Self::zero();
        v.0[0] = Rational64::from_integer(a);
        v.0[1] = Rational64::from_integer(b);
        v
    }

    pub fn var(i: usize) -> Self {
        let mut v = Self::zero();
        v.0[2 + i] = Rational64::one();
        v
    }

    pub fn scale(self, k: Rational64) -> Self {
        LogVec(self.0.map(|x| x * k))
    }

    pub fn half(self) -> Self {
        self.scale(Rational64::new(1, 2))
    }

    pub fn sum<'a>(xs: impl IntoIterator<Item = &'a LogVec>) -> Self {
        xs.into_iter().fold(Self::zero(), |acc, &x| acc + x)
    }

    /// Only the `q` coordinates differ.
    pub fn q_offset(&self, other: &LogVec) -> Option<(Rational64, Rational64)> {
        let d = *other - *self;
        d.0[2..].iter().all(Zero::is_zero).then(|| (d.0[0], d.0[1]))
    }

    pub fn from_monomial(m: &ParamMonomial) -> Result<Self> {
        if m.sign != 1 {
            return Err(Error::ConstraintViolated("a negative monomial has no exponent vector".into()));
        }
        let mut v = LogVec::q_pow(i64::from(m.q_exp), i64::from(m.n_coeff));
        for (i, &e) in m.vars.iter().enumerate() {
            v.0[2 + i] = Rational64::from_integer(i64::from(e));
        }
        Ok(v)
    }

    pub fn to_monomial(&self) -> Result<ParamMonomial> {
        let mut ints = [0i32; 7];
        for (slot, x) in ints.iter_mut().zip(self.0.iter()) {
            if !x.is_integer() {
                return Err(Error::NonIntegral(format!("{self:?}")));
            }
            *slot = i32::try_from(x.to_integer()).map_err(|_| Error::NonIntegral(format!("{self:?}")))?;
        }
        Ok(ParamMonomial::new(
            1,
            ints[0],
            ints[1],
            [ints[2], ints[3], ints[4], ints[5], ints[6]],
        ))
    }
}

impl Add for LogVec {
    type Output = LogVec;
    fn add(self, o: LogVec) -> LogVec {
        LogVec(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for LogVec {
    type Output = LogVec;
    fn sub(self, o: LogVec) -> LogVec {
        LogVec(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for LogVec {
    type Output = LogVec;
    fn neg(self) -> LogVec {
        LogVec(self.0.map(|x| -x))
    }
}

/// Expresses `m`, a monomial in some frame, through `images` of that frame's
/// variables. The `q` part is carried over.
pub fn pull_back(m: &ParamMonomial, images: &[LogVec; 5]) -> Result<LogVec> {
    if m.sign != 1 {
        return Err(Error::ConstraintViolated("a negative monomial has no exponent vector".into()));
    }
    let mut v = LogVec::q_pow(i64::from(m.q_exp), i64::from(m.n_coeff));
    for (i, &e) in m.vars.iter().enumerate() {
        v = v + images[i].scale(Rational64::from_integer(i64::from(e)));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Frame;

    #[test]
    fn monomial_round_trip() {
        let m = ParamMonomial::parse("q^(1-n) b^2 / c d", Frame::Bcdef).unwrap();
        assert_eq!(LogVec::from_monomial(&m).unwrap().to_monomial().unwrap(), m);
        assert!(LogVec::from_monomial(&-m).is_err());
    }

    #[test]
    fn half_integral_vectors_do_not_convert() {
        let v = LogVec::var(0).half();
        assert!(matches!(v.to_monomial(), Err(Error::NonIntegral(_))));
        assert_eq!((v + v).to_monomial().unwrap(), ParamMonomial::var(0));
    }

    #[test]
    fn pull_back_composes() {
        let images = [LogVec::var(1), LogVec::var(0).half(), LogVec::var(0).half(), LogVec::q_pow(1, 0), LogVec::zero()];
        let m = ParamMonomial::parse("q b c d e", Frame::Bcdef).unwrap();
        let got = pull_back(&m, &images).unwrap().to_monomial().unwrap();
        assert_eq!(got, ParamMonomial::parse("q^2 b c", Frame::Bcdef).unwrap());
    }
}
