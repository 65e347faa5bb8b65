use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::{converse_census, inversion_edges, standard_map_edges, wd5_census, Census, ClassId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    /// Inversion pairings and the standard map onto the Askey-Wilson displays.
    Fig1,
    /// `WD5` blocks of the `8W7` classes.
    Fig2,
    /// The converse forms.
    Fig3,
}

impl FromStr for Figure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig1" => Ok(Figure::Fig1),
            "fig2" => Ok(Figure::Fig2),
            "fig3" => Ok(Figure::Fig3),
            _ => Err(Error::Unknown(s.to_string())),
        }
    }
}

fn quote(c: ClassId) -> String {
    format!("\"{c}\"")
}

/// Inversion pairs restricted to `keep`, each unordered pair once.
fn inversion_pairs(keep: &BTreeSet<ClassId>) -> Result<BTreeSet<(ClassId, ClassId)>> {
    Ok(inversion_edges()?
        .into_iter()
        .filter(|(a, b)| keep.contains(a) && keep.contains(b))
        .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
        .collect())
}

fn write_inversions(out: &mut String, pairs: &BTreeSet<(ClassId, ClassId)>) {
    for &(a, b) in pairs {
        let _ = writeln!(
            out,
            "  {} -> {} [class=\"inversion\", penwidth=3, dir=both];",
            quote(a),
            quote(b)
        );
    }
}

/// Groups classes reachable from one another under the group action.
fn blocks(rows: &BTreeMap<ClassId, Census>) -> Vec<BTreeSet<ClassId>> {
    let mut out: Vec<BTreeSet<ClassId>> = Vec::new();
    for (&src, census) in rows {
        let mut block: BTreeSet<ClassId> = census
            .keys()
            .copied()
            .filter(|c| *c != ClassId::Nonterminating)
            .collect();
        block.insert(src);
        let (merged, rest): (Vec<_>, Vec<_>) = out.into_iter().partition(|b| !b.is_disjoint(&block));
        for b in merged {
            block.extend(b);
        }
        out = rest;
        out.push(block);
    }
    out.sort();
    out
}

fn write_action(out: &mut String, rows: &BTreeMap<ClassId, Census>) {
    for (i, block) in blocks(rows).iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{i} {{");
        let _ = writeln!(out, "    style=filled; fillcolor=lightgrey;");
        for &c in block {
            let _ = writeln!(out, "    {};", quote(c));
        }
        let _ = writeln!(out, "  }}");
    }
    for (&src, census) in rows {
        for (&dst, &count) in census {
            if dst != src && dst != ClassId::Nonterminating {
                let _ = writeln!(
                    out,
                    "  {} -> {} [class=\"group-action\", penwidth=1, label=\"{count}\"];",
                    quote(src),
                    quote(dst)
                );
            }
        }
    }
}

/// DOT text of one figure, built from the computed censuses.
pub fn emit_graph(which: Figure) -> Result<String> {
    let mut out = String::new();
    match which {
        Figure::Fig1 => {
            out.push_str("digraph fig1 {\n  rankdir=LR;\n");
            let classes: BTreeSet<ClassId> = ClassId::expression_classes().into_iter().collect();
            for &c in &classes {
                let _ = writeln!(out, "  {} [shape=box];", quote(c));
            }
            for c in ClassId::aw_classes() {
                let _ = writeln!(out, "  {} [shape=ellipse];", quote(c));
            }
            write_inversions(&mut out, &inversion_pairs(&classes)?);
            for e in standard_map_edges() {
                let label = if e.flipped { ", label=\"t -> 1/t\"" } else { "" };
                let _ = writeln!(
                    out,
                    "  {} -> {} [class=\"mapsto\", style=dashed, arrowhead=vee{label}];",
                    quote(e.source),
                    quote(e.target)
                );
            }
        }
        Figure::Fig2 => {
            out.push_str("digraph fig2 {\n");
            let rows: BTreeMap<ClassId, Census> = ClassId::W
                .iter()
                .map(|&c| Ok((c, wd5_census(c)?)))
                .collect::<Result<_>>()?;
            write_action(&mut out, &rows);
            write_inversions(&mut out, &inversion_pairs(&ClassId::W.into_iter().collect())?);
        }
        Figure::Fig3 => {
            out.push_str("digraph fig3 {\n");
            let rows = converse_census()?;
            write_action(&mut out, &rows);
            write_inversions(&mut out, &inversion_pairs(&ClassId::CONVERSE.into_iter().collect())?);
        }
    }
    out.push_str("}\n");
    Ok(out)
}

/// Blocks of a figure's group action, for callers checking its shape.
pub fn action_blocks(which: Figure) -> Result<Vec<BTreeSet<ClassId>>> {
    let rows: BTreeMap<ClassId, Census> = match which {
        Figure::Fig1 => BTreeMap::new(),
        Figure::Fig2 => ClassId::W
            .iter()
            .map(|&c| Ok((c, wd5_census(c)?)))
            .collect::<Result<_>>()?,
        Figure::Fig3 => converse_census()?,
    };
    Ok(blocks(&rows))
}
