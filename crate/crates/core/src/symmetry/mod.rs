//! Group actions on terminating series and the equivalence classes they
//! induce: the `S6` action on balanced `4phi3`s, the `WD5` action on `8W7`s,
//! classification by canonical signature, the censuses and their graphs.

mod census;
mod graph;
mod logvec;
mod s6;
mod wd5;

pub use census::{
    census_diff, converse_census, inversion_edges, published_s6, published_wd5, standard_map, standard_map_edges, watson_permutation_census, CensusRow,
    MapEdge, WatsonDirection, WatsonTally,
};
pub use graph::{action_blocks, emit_graph, Figure};
pub use logvec::{pull_back, LogVec};
pub use s6::{pull_back_phi, s6_apply, s6_arrangements, s6_census, s6_series, s6_value_check, S6Element, X6Config};
pub use wd5::{
    wd5_apply, wd5_census, wd5_value_check, SignedPerm, ValueCheck, WConfig, WImage, WD5_ORDER, WB5_ORDER,
};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::askey_wilson::RepForm;
use crate::catalog::Catalog;
use crate::field::Frame;
use crate::series::SeriesSpec;
use crate::transform::Expression;

/// Equivalence classes of terminating expressions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassId {
    C3,
    C4,
    C5,
    C6b,
    W0,
    W1,
    W2,
    W7,
    W7b,
    W6,
    W7c,
    /// The four `8W7` forms of the converse of Watson's transformation.
    Converse(u8),
    Aw(RepForm),
    Unclassified,
    Nonterminating,
}

impl ClassId {
    pub const PHI: [ClassId; 4] = [ClassId::C3, ClassId::C4, ClassId::C5, ClassId::C6b];
    pub const W: [ClassId; 7] = [
        ClassId::W0,
        ClassId::W1,
        ClassId::W2,
        ClassId::W7,
        ClassId::W7b,
        ClassId::W6,
        ClassId::W7c,
    ];
    pub const CONVERSE: [ClassId; 4] = [
        ClassId::Converse(1),
        ClassId::Converse(2),
        ClassId::Converse(3),
        ClassId::Converse(4),
    ];

    /// The 11 classes of Watson-type expressions.
    pub fn expression_classes() -> Vec<ClassId> {
        Self::PHI.iter().chain(Self::W.iter()).copied().collect()
    }

    pub fn aw_classes() -> Vec<ClassId> {
        RepForm::ALL.iter().map(|&f| ClassId::Aw(f)).collect()
    }

    /// Every class with a template.
    pub fn templated() -> Vec<ClassId> {
        let mut v = Self::expression_classes();
        v.extend(Self::CONVERSE);
        v.extend(Self::aw_classes());
        v
    }

    pub fn name(&self) -> String {
        match self {
            ClassId::C3 => "C3".into(),
            ClassId::C4 => "C4".into(),
            ClassId::C5 => "C5".into(),
            ClassId::C6b => "C6b".into(),
            ClassId::W0 => "W0".into(),
            ClassId::W1 => "W1".into(),
            ClassId::W2 => "W2".into(),
            ClassId::W7 => "W7".into(),
            ClassId::W7b => "W7b".into(),
            ClassId::W6 => "W6".into(),
            ClassId::W7c => "W7c".into(),
            ClassId::Converse(k) => format!("converse:{k}"),
            ClassId::Aw(f) => f.label().into(),
            ClassId::Unclassified => "unclassified".into(),
            ClassId::Nonterminating => "nonterminating".into(),
        }
    }

    pub fn from_name(s: &str) -> Option<ClassId> {
        Self::templated()
            .into_iter()
            .chain([ClassId::Unclassified, ClassId::Nonterminating])
            .find(|c| c.name() == s)
    }

    /// Catalog label of the class template; the class name is the label.
    pub fn template_label(&self) -> Option<String> {
        match self {
            ClassId::Unclassified | ClassId::Nonterminating => None,
            c => Some(c.name()),
        }
    }

    pub fn frame(&self) -> Frame {
        match self {
            ClassId::Converse(_) => Frame::Converse,
            ClassId::Aw(_) => Frame::Aw,
            _ => Frame::Bcdef,
        }
    }

    pub fn template(&self) -> Option<&'static Expression> {
        let label = self.template_label()?;
        Catalog::builtin().form(&label).ok().map(|f| &f.expr)
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Serialize for ClassId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

/// Counts per class.
pub type Census = BTreeMap<ClassId, usize>;

/// Order- and relabeling-invariant encoding of a series: the smallest sorted
/// form over the frame's relabelings, compared by the derived monomial order
/// `(sign, q_exp, n_coeff, vars)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub frame: Frame,
    pub series: SeriesSpec,
}

impl Signature {
    pub fn display(&self) -> String {
        format!("{}: {}", self.frame, self.series.display(self.frame))
    }
}

pub fn series_signature(series: &SeriesSpec, frame: Frame) -> Signature {
    let best = frame
        .relabelings()
        .iter()
        .map(|r| series.substitute(r).sorted())
        .min()
        .expect("every frame has a relabeling");
    Signature { frame, series: best }
}

/// The signature of an expression's series; the prefactor plays no part.
pub fn canonical_signature(expr: &Expression, frame: Frame) -> Signature {
    series_signature(&expr.series, frame)
}

struct TemplateTable {
    by_signature: HashMap<Signature, ClassId>,
    checksum: String,
}

fn templates() -> &'static TemplateTable {
    static TABLE: OnceLock<TemplateTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut by_signature = HashMap::new();
        let mut lines = Vec::new();
        for class in ClassId::templated() {
            let expr = class.template().expect("every templated class has a catalog form");
            let sig = canonical_signature(expr, class.frame());
            lines.push(format!("{class} {}", sig.display()));
            if let Some(prev) = by_signature.insert(sig, class) {
                panic!("templates {prev} and {class} share a signature");
            }
        }
        let digest = Sha256::digest(lines.join("\n").as_bytes());
        let checksum = digest.iter().map(|b| format!("{b:02x}")).collect();
        TemplateTable { by_signature, checksum }
    })
}

/// SHA-256 of the frozen template signatures.
pub fn template_checksum() -> &'static str {
    &templates().checksum
}

pub fn classify_series(series: &SeriesSpec, frame: Frame) -> ClassId {
    templates()
        .by_signature
        .get(&series_signature(series, frame))
        .copied()
        .unwrap_or(ClassId::Unclassified)
}

pub fn classify(expr: &Expression, frame: Frame) -> ClassId {
    classify_series(&expr.series, frame)
}
