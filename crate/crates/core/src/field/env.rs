use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::series::PochLength;

use super::{pow, Frame, ParamMonomial, Rational};

/// Retry bound for [`sample_point`].
pub const SAMPLE_ATTEMPTS: usize = 20_000;

/// Magnitude bound on sampled numerators and denominators.
const MAX_PART: i64 = 32;

/// A concrete evaluation point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointEnv {
    pub frame: Frame,
    pub q: Rational,
    pub n: u32,
    pub values: [Rational; 5],
}

impl PointEnv {
    /// # Panics
    /// If `q` is 0 or +-1, or a value is zero.
    pub fn new(frame: Frame, q: Rational, n: u32, values: [Rational; 5]) -> Self {
        assert!(!q.is_zero() && q.abs() != Rational::one(), "q must avoid 0 and +-1");
        assert!(values.iter().all(|v| !v.is_zero()), "frame values must be nonzero");
        PointEnv { frame, q, n, values }
    }

    pub fn q_power(&self, k: i64) -> Rational {
        pow(&self.q, k)
    }

    pub fn with_n(&self, n: u32) -> Self {
        PointEnv { n, ..self.clone() }
    }

    /// Short stable hash of the point, used in reports.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("{}|{}|{}", self.frame, self.q, self.n));
        for v in &self.values {
            h.update(format!("|{v}"));
        }
        h.finalize()[..6].iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl std::fmt::Display for PointEnv {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "q={} n={}", self.q, self.n)?;
        for (name, v) in self.frame.vars().iter().zip(&self.values) {
            write!(f, " {name}={v}")?;
        }
        Ok(())
    }
}

/// A side condition on an evaluation point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Guard {
    /// `(base; q)_len` is nonzero, i.e. `base` avoids `q^-k` for `0 <= k < len`.
    /// Vacuous when the length resolves to a nonpositive number.
    Poch { base: ParamMonomial, len: PochLength },
    /// `base` avoids `q^-2k` for `0 <= k <= n`.
    Vwp { base: ParamMonomial },
}

impl From<ParamMonomial> for Guard {
    fn from(base: ParamMonomial) -> Self {
        Guard::Poch { base, len: PochLength::N }
    }
}

impl Guard {
    pub fn admits(&self, env: &PointEnv) -> bool {
        match self {
            Guard::Poch { base, len } => {
                let v = base.eval(env);
                let len = len.resolve(env.n);
                !(0..len).any(|k| (&v * env.q_power(k)).is_one())
            }
            Guard::Vwp { base } => {
                let v = base.eval(env);
                !(0..=i64::from(env.n)).any(|k| (&v * env.q_power(2 * k)).is_one())
            }
        }
    }

    pub fn describe(&self, frame: Frame) -> String {
        match self {
            Guard::Poch { base, len } => format!("({};q)_{len}", base.display(frame)),
            Guard::Vwp { base } => format!("vwp({})", base.display(frame)),
        }
    }
}

/// Mixes a base seed with salts into a new seed (SplitMix64 finalizer).
pub fn derive_seed(seed: u64, salt: &[u64]) -> u64 {
    let mut z = seed;
    for &s in salt {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15).wrapping_add(s.wrapping_mul(0xD1B5_4A32_D192_ED03));
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
    }
    z
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.gen_range(1..=MAX_PART) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let den = rng.gen_range(1..=MAX_PART);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn sample_q(rng: &mut ChaCha8Rng) -> Rational {
    let den = rng.gen_range(2..=MAX_PART);
    let num = rng.gen_range(1..den);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Draws a point with small rationals such that every guard holds and the
/// frame values are pairwise distinct. Deterministic in `seed`.
pub fn sample_point(frame: Frame, n: u32, seed: u64, guards: &[Guard]) -> Result<PointEnv> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLE_ATTEMPTS {
        let q = sample_q(&mut rng);
        let values: [Rational; 5] = std::array::from_fn(|_| small_rational(&mut rng));
        let distinct = (0..5).all(|i| (i + 1..5).all(|j| values[i] != values[j]));
        if !distinct {
            continue;
        }
        let env = PointEnv { frame, q, n, values };
        if guards.iter().all(|g| g.admits(&env)) {
            return Ok(env);
        }
    }
    Err(Error::SamplingExhausted {
        attempts: SAMPLE_ATTEMPTS,
    })
}
