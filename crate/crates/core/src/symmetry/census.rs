use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::field::{permutations, Frame, ParamMonomial as M};
use crate::series::{PhiSpec, SeriesSpec, WSpec};
use crate::transform::{invert, watson_converse, watson_forms, Expression};

use super::{classify, classify_series, wd5_census, Census, ClassId};

/// One line of a census table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub source_class: ClassId,
    pub target_class: ClassId,
    pub count: usize,
}

impl CensusRow {
    pub fn from_census(source: ClassId, census: &Census) -> Vec<CensusRow> {
        census
            .iter()
            .map(|(&target_class, &count)| CensusRow {
                source_class: source,
                target_class,
                count,
            })
            .collect()
    }
}

/// `WD5` census of each of the four converse forms.
pub fn converse_census() -> Result<BTreeMap<ClassId, Census>> {
    ClassId::CONVERSE
        .iter()
        .map(|&c| Ok((c, wd5_census(c)?)))
        .collect()
}

/// The published `S6` table for the `C3` base.
pub fn published_s6() -> Census {
    use ClassId::*;
    [(C3, 216), (C4, 216), (C5, 144), (C6b, 144)].into_iter().collect()
}

/// The published terminating-image row of a `WD5` census, for the `8W7`
/// classes and the converse forms.
pub fn published_wd5(source: ClassId) -> Option<Census> {
    use ClassId::*;
    let row: &[(ClassId, usize)] = match source {
        W0 | W6 => &[(W0, 120), (W6, 480)],
        W1 | W7b => &[(W1, 120), (W7b, 480)],
        W2 | W7 | W7c => &[(W2, 120), (W7, 360), (W7c, 120)],
        Converse(1) | Converse(4) => &[(Converse(1), 360), (Converse(4), 240)],
        Converse(2) | Converse(3) => &[(Converse(2), 360), (Converse(3), 240)],
        _ => return None,
    };
    Some(row.iter().copied().collect())
}

/// Lines `source -> target: got N, published M` where the terminating part
/// of `got` differs from `published`.
pub fn census_diff(source: ClassId, got: &Census, published: &Census) -> Vec<String> {
    let mut keys: Vec<ClassId> = got.keys().chain(published.keys()).copied().collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .filter(|k| *k != ClassId::Nonterminating)
        .filter_map(|k| {
            let (g, p) = (got.get(&k).copied().unwrap_or(0), published.get(&k).copied().unwrap_or(0));
            (g != p).then(|| format!("{source} -> {k}: got {g}, published {p}"))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WatsonDirection {
    /// Balanced `4phi3` classes to `8W7` classes via the converse.
    PhiToW,
    /// `8W7` classes to balanced `4phi3` classes via Watson's transformation.
    WToPhi,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WatsonTally {
    pub source: ClassId,
    /// Images over every ordering of the source's free parameter slots.
    pub images: usize,
    pub counts: Census,
    /// The published row, for comparison.
    pub published: Census,
}

impl WatsonTally {
    pub fn matches_published(&self) -> bool {
        self.counts == self.published
    }
}

fn published(direction: WatsonDirection, source: ClassId) -> Census {
    use ClassId::*;
    let (targets, row): (&[ClassId], &[usize]) = match (direction, source) {
        (WatsonDirection::PhiToW, C3 | C4) => (&ClassId::W, &[4, 4, 56, 20, 20, 20, 20]),
        (WatsonDirection::PhiToW, _) => (&ClassId::W, &[6, 6, 60, 18, 18, 18, 18]),
        (WatsonDirection::WToPhi, W0 | W1) => (&ClassId::PHI, &[24, 24, 24, 24]),
        (WatsonDirection::WToPhi, W2) => (&ClassId::PHI, &[28, 28, 20, 20]),
        (WatsonDirection::WToPhi, _) => (&ClassId::PHI, &[30, 30, 16, 16]),
    };
    targets.iter().copied().zip(row.iter().copied()).collect()
}

fn tally(classes: impl IntoIterator<Item = ClassId>) -> Census {
    let mut c = Census::new();
    for k in classes {
        *c.entry(k).or_default() += 1;
    }
    c
}

/// Watson images of every class template under every ordering of its free
/// slots: `3! * 3!` orderings times 4 converse forms from a `4phi3`, `4!`
/// orderings of `c, d, e, f` times 4 Watson forms from an `8W7`.
pub fn watson_permutation_census(direction: WatsonDirection) -> Result<Vec<WatsonTally>> {
    match direction {
        WatsonDirection::PhiToW => ClassId::PHI
            .iter()
            .map(|&source| {
                let phi = source.template().unwrap().series.as_phi().unwrap();
                let slot = phi.terminating_slot()?;
                let up: Vec<M> = (0..phi.upper.len()).filter(|&i| i != slot).map(|i| phi.upper[i]).collect();
                let mut classes = Vec::new();
                for pu in permutations(3) {
                    for pl in permutations(3) {
                        let ordered = PhiSpec {
                            upper: std::iter::once(M::Q_NEG_N).chain(pu.iter().map(|&i| up[i])).collect(),
                            lower: pl.iter().map(|&i| phi.lower[i]).collect(),
                            ..phi.clone()
                        };
                        for e in watson_converse(&ordered)? {
                            classes.push(classify(&e, Frame::Bcdef));
                        }
                    }
                }
                Ok(WatsonTally {
                    source,
                    images: classes.len(),
                    counts: tally(classes),
                    published: published(direction, source),
                })
            })
            .collect(),
        WatsonDirection::WToPhi => ClassId::W
            .iter()
            .map(|&source| {
                let w = source.template().unwrap().series.as_w().unwrap();
                let slot = w.terminating_slot()?;
                let rest: Vec<M> = (0..5).filter(|&j| j != slot).map(|j| w.numer[j]).collect();
                let mut classes = Vec::new();
                for p in permutations(4) {
                    let numer = [M::Q_NEG_N, rest[p[0]], rest[p[1]], rest[p[2]], rest[p[3]]];
                    for e in watson_forms(&WSpec::new(w.special, numer, w.argument))? {
                        classes.push(classify(&e, Frame::Bcdef));
                    }
                }
                Ok(WatsonTally {
                    source,
                    images: classes.len(),
                    counts: tally(classes),
                    published: published(direction, source),
                })
            })
            .collect(),
    }
}

/// `(b, c, d, e, f) -> (q^-n t^2, a1 t, a2 t, a3 t, a4 t)`.
pub fn standard_map(series: &SeriesSpec) -> SeriesSpec {
    let t = M::var(4);
    let images = [
        M::Q_NEG_N * t.powi(2),
        M::var(0) * t,
        M::var(1) * t,
        M::var(2) * t,
        M::var(3) * t,
    ];
    series.substitute(&images)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct MapEdge {
    pub source: ClassId,
    pub target: ClassId,
    /// The target is reached only after `t -> 1/t`.
    pub flipped: bool,
}

/// The Askey-Wilson representation each of the 11 classes maps to. An
/// unflipped match wins over a flipped one.
pub fn standard_map_edges() -> Vec<MapEdge> {
    let flip = [M::var(0), M::var(1), M::var(2), M::var(3), M::var(4).inv()];
    ClassId::expression_classes()
        .into_iter()
        .map(|source| {
            let image = standard_map(&source.template().unwrap().series);
            let direct = classify_series(&image, Frame::Aw);
            if direct != ClassId::Unclassified {
                return MapEdge {
                    source,
                    target: direct,
                    flipped: false,
                };
            }
            MapEdge {
                source,
                target: classify_series(&image.substitute(&flip), Frame::Aw),
                flipped: true,
            }
        })
        .collect()
}

/// `classify(invert(template))` for the 11 classes and the converse forms.
pub fn inversion_edges() -> Result<Vec<(ClassId, ClassId)>> {
    ClassId::expression_classes()
        .into_iter()
        .chain(ClassId::CONVERSE)
        .map(|c| {
            let e: Expression = invert(&c.template().unwrap().series)?;
            Ok((c, classify(&e, c.frame())))
        })
        .collect()
}
