use std::fmt;

use crate::error::{Error, Result};
use crate::field::{affine, parse_affine};

/// A Pochhammer length `fixed + per_n * n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PochLength {
    pub fixed: i32,
    pub per_n: i32,
}

impl PochLength {
    pub const N: PochLength = PochLength { fixed: 0, per_n: 1 };
    pub const TWO_N: PochLength = PochLength { fixed: 0, per_n: 2 };

    pub const fn fixed(k: i32) -> Self {
        PochLength { fixed: k, per_n: 0 }
    }

    pub const fn affine(fixed: i32, per_n: i32) -> Self {
        PochLength { fixed, per_n }
    }

    pub fn resolve(&self, n: u32) -> i64 {
        i64::from(self.fixed) + i64::from(self.per_n) * i64::from(n)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(t);
        parse_affine(t)
            .map(|(a, b)| PochLength::affine(a, b))
            .ok_or_else(|| Error::Parse(format!("bad Pochhammer length {s:?}")))
    }
}

impl fmt::Display for PochLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&affine(self.fixed, self.per_n))
    }
}

impl std::ops::Neg for PochLength {
    type Output = PochLength;
    fn neg(self) -> Self {
        PochLength::affine(-self.fixed, -self.per_n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolve_and_display() {
        assert_eq!(PochLength::TWO_N.resolve(3), 6);
        assert_eq!(PochLength::fixed(1).resolve(9), 1);
        assert_eq!(PochLength::affine(1, -2).resolve(2), -3);
        assert_eq!(PochLength::N.to_string(), "n");
        assert_eq!(PochLength::TWO_N.to_string(), "2n");
        assert_eq!(PochLength::affine(1, 2).to_string(), "(1+2n)");
    }

    #[test]
    fn parse_round_trip() {
        for len in [PochLength::N, PochLength::TWO_N, PochLength::fixed(1), PochLength::affine(-1, 2)] {
            assert_eq!(PochLength::parse(&len.to_string()).unwrap(), len);
        }
        assert!(PochLength::parse("m").is_err());
    }
}
