use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::field::ParamMonomial as M;
use crate::series::{balance_level, PhiSpec, WSpec};

use super::Expression;

/// Labels of the balanced `4phi3` sides of Watson's transformation.
pub const WATSON_LABELS: [&str; 4] = ["C3", "C4", "C5", "C6b"];

/// Labels of the four `8W7` forms of the converse.
pub const CONVERSE_LABELS: [&str; 4] = ["converse:1", "converse:2", "converse:3", "converse:4"];

/// Alternative forms of the converse that share their series with forms 1 and 2.
pub const CONVERSE_EQUIVALENT_LABELS: [&str; 2] = ["converse:1a", "converse:2a"];

fn instantiate(labels: &[&str], images: &[M; 5]) -> Vec<Expression> {
    let cat = Catalog::builtin();
    labels
        .iter()
        .map(|l| cat.form(l).expect("builtin form").expr.substitute(images))
        .collect()
}

/// Rewrites `8W7(b; q^-n, c, d, e, f; q, q^(n+2) b^2/(cdef))` as the four
/// balanced `4phi3` expressions. The non-terminating numerator parameters
/// are taken as `c, d, e, f` in slot order.
pub fn watson_forms(w: &WSpec) -> Result<Vec<Expression>> {
    let slot = w.terminating_slot()?;
    let cdef: Vec<M> = (0..5).filter(|&j| j != slot).map(|j| w.numer[j]).collect();
    let prod = cdef.iter().fold(M::ONE, |acc, &m| acc * m);
    let expected = (w.special.powi(2) / prod).shift(2, 1);
    if w.argument != expected {
        return Err(Error::TemplateMismatch {
            expected: "q^(n+2) b^2 / c d e f".into(),
            found: format!("{:?}", w.argument),
        });
    }
    let images = [w.special, cdef[0], cdef[1], cdef[2], cdef[3]];
    Ok(instantiate(&WATSON_LABELS, &images))
}

/// Splits a balanced terminating `4phi3(q^-n, a, b, c; d, e, f; q, q)` into
/// the images `[a, b, c, d, e]` of the converse frame.
fn converse_images(phi: &PhiSpec) -> Result<[M; 5]> {
    let slot = phi.terminating_slot()?;
    let abc: Vec<M> = phi
        .upper
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != slot)
        .map(|(_, &m)| m)
        .collect();
    let shape_ok = abc.len() == 3 && phi.lower.len() == 3 && phi.zero_pad == 0;
    if !shape_ok || phi.argument != M::q_pow(1, 0) || balance_level(phi) != Some(1) {
        return Err(Error::NotBalanced);
    }
    Ok([abc[0], abc[1], abc[2], phi.lower[0], phi.lower[1]])
}

/// The four `8W7` expressions equal to a balanced terminating `4phi3`.
pub fn watson_converse(phi: &PhiSpec) -> Result<Vec<Expression>> {
    Ok(instantiate(&CONVERSE_LABELS, &converse_images(phi)?))
}

/// The two alternative `8W7` expressions for the same `4phi3`.
pub fn watson_converse_equivalents(phi: &PhiSpec) -> Result<Vec<Expression>> {
    Ok(instantiate(&CONVERSE_EQUIVALENT_LABELS, &converse_images(phi)?))
}
