use crate::error::{Error, Result};
use crate::field::{Frame, Guard, ParamMonomial};

use super::PochLength;

/// A terminating `phi` series. One upper parameter must be exactly `q^-n`.
/// `zero_pad < 0` adds `-zero_pad` zero uppers, `zero_pad > 0` adds zero lowers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhiSpec {
    pub upper: Vec<ParamMonomial>,
    pub lower: Vec<ParamMonomial>,
    pub argument: ParamMonomial,
    pub zero_pad: i32,
}

/// A terminating very-well-poised `8W7(special; numer; q, argument)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WSpec {
    pub special: ParamMonomial,
    pub numer: [ParamMonomial; 5],
    pub argument: ParamMonomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeriesSpec {
    Phi(PhiSpec),
    W(WSpec),
}

fn slot(params: &[ParamMonomial]) -> Result<usize> {
    params
        .iter()
        .position(ParamMonomial::is_q_neg_n)
        .ok_or(Error::NoTerminatingSlot)
}

fn join(ps: &[ParamMonomial], frame: Frame) -> String {
    ps.iter().map(|m| m.display(frame)).collect::<Vec<_>>().join(", ")
}

impl PhiSpec {
    pub fn new(upper: Vec<ParamMonomial>, lower: Vec<ParamMonomial>, argument: ParamMonomial) -> Self {
        PhiSpec {
            upper,
            lower,
            argument,
            zero_pad: 0,
        }
    }

    pub fn terminating_slot(&self) -> Result<usize> {
        slot(&self.upper)
    }

    /// Exponent `1 + s - r` of `(-1)^k q^C(k,2)` with padding counted.
    pub fn term_exponent(&self) -> i32 {
        1 + self.lower.len() as i32 - self.upper.len() as i32 + self.zero_pad
    }

    /// Upper and lower lists sorted; used for comparisons up to reordering.
    pub fn sorted(&self) -> PhiSpec {
        let mut out = self.clone();
        out.upper.sort();
        out.lower.sort();
        out
    }

    pub fn substitute(&self, images: &[ParamMonomial; 5]) -> PhiSpec {
        PhiSpec {
            upper: self.upper.iter().map(|m| m.substitute(images)).collect(),
            lower: self.lower.iter().map(|m| m.substitute(images)).collect(),
            argument: self.argument.substitute(images),
            zero_pad: self.zero_pad,
        }
    }

    pub fn guards(&self) -> Vec<Guard> {
        self.lower.iter().map(|&m| m.into()).collect()
    }

    pub fn display(&self, frame: Frame) -> String {
        let pad = match self.zero_pad {
            0 => String::new(),
            m => format!("^[{m}]"),
        };
        format!(
            "phi{pad}({}; {}; q, {})",
            join(&self.upper, frame),
            join(&self.lower, frame),
            self.argument.display(frame)
        )
    }
}

impl WSpec {
    pub fn new(special: ParamMonomial, numer: [ParamMonomial; 5], argument: ParamMonomial) -> Self {
        WSpec {
            special,
            numer,
            argument,
        }
    }

    pub fn terminating_slot(&self) -> Result<usize> {
        slot(&self.numer)
    }

    /// The lower parameter `q b / a_j` paired with `numer[j]`.
    pub fn implied_lower(&self, j: usize) -> ParamMonomial {
        self.special.shift(1, 0) / self.numer[j]
    }

    pub fn sorted(&self) -> WSpec {
        let mut out = self.clone();
        out.numer.sort();
        out
    }

    pub fn substitute(&self, images: &[ParamMonomial; 5]) -> WSpec {
        WSpec {
            special: self.special.substitute(images),
            numer: self.numer.map(|m| m.substitute(images)),
            argument: self.argument.substitute(images),
        }
    }

    pub fn guards(&self) -> Vec<Guard> {
        let mut out = vec![Guard::Vwp { base: self.special }];
        out.extend((0..5).map(|j| Guard::Poch {
            base: self.implied_lower(j),
            len: PochLength::N,
        }));
        out
    }

    /// The literal `8phi7` with `+-sqrt(b)` parameters, available when the
    /// special parameter is a square monomial.
    pub fn phi_expansion(&self) -> Option<PhiSpec> {
        let s = self.special.sqrt()?;
        let qs = s.shift(1, 0);
        let mut upper = vec![self.special, qs, -qs];
        upper.extend(self.numer);
        let mut lower = vec![s, -s];
        lower.extend((0..5).map(|j| self.implied_lower(j)));
        Some(PhiSpec::new(upper, lower, self.argument))
    }

    pub fn display(&self, frame: Frame) -> String {
        format!(
            "8W7({}; {}; q, {})",
            self.special.display(frame),
            join(&self.numer, frame),
            self.argument.display(frame)
        )
    }
}

impl SeriesSpec {
    pub fn sorted(&self) -> SeriesSpec {
        match self {
            SeriesSpec::Phi(p) => SeriesSpec::Phi(p.sorted()),
            SeriesSpec::W(w) => SeriesSpec::W(w.sorted()),
        }
    }

    pub fn substitute(&self, images: &[ParamMonomial; 5]) -> SeriesSpec {
        match self {
            SeriesSpec::Phi(p) => SeriesSpec::Phi(p.substitute(images)),
            SeriesSpec::W(w) => SeriesSpec::W(w.substitute(images)),
        }
    }

    pub fn guards(&self) -> Vec<Guard> {
        match self {
            SeriesSpec::Phi(p) => p.guards(),
            SeriesSpec::W(w) => w.guards(),
        }
    }

    pub fn display(&self, frame: Frame) -> String {
        match self {
            SeriesSpec::Phi(p) => p.display(frame),
            SeriesSpec::W(w) => w.display(frame),
        }
    }

    pub fn as_phi(&self) -> Option<&PhiSpec> {
        match self {
            SeriesSpec::Phi(p) => Some(p),
            SeriesSpec::W(_) => None,
        }
    }

    pub fn as_w(&self) -> Option<&WSpec> {
        match self {
            SeriesSpec::W(w) => Some(w),
            SeriesSpec::Phi(_) => None,
        }
    }
}

impl From<PhiSpec> for SeriesSpec {
    fn from(p: PhiSpec) -> Self {
        SeriesSpec::Phi(p)
    }
}

impl From<WSpec> for SeriesSpec {
    fn from(w: WSpec) -> Self {
        SeriesSpec::W(w)
    }
}
