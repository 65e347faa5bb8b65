use num_traits::One;
use proptest::prelude::*;

use super::*;
use crate::catalog::Catalog;
use crate::field::{rat, sample_point, ParamMonomial as M, PointEnv};
use crate::series::{balance_level, eval_series, PhiSpec, SeriesSpec, WSpec};

fn m(s: &str, frame: Frame) -> M {
    M::parse(s, frame).unwrap()
}

fn form(label: &str) -> Expression {
    Catalog::builtin().form(label).unwrap().expr.clone()
}

fn watson_w() -> WSpec {
    form("W0").series.as_w().unwrap().clone()
}

fn envs_for(exprs: &[&Expression], frame: Frame, count: u64, seed: u64) -> Vec<PointEnv> {
    let guards: Vec<Guard> = exprs.iter().flat_map(|e| e.guards()).collect();
    (0..count)
        .map(|i| sample_point(frame, (i % 5) as u32, derive(seed, i), &guards).unwrap())
        .collect()
}

fn derive(seed: u64, i: u64) -> u64 {
    crate::field::derive_seed(seed, &[i])
}

fn same_series(a: &SeriesSpec, b: &SeriesSpec) -> bool {
    a.sorted() == b.sorted()
}

#[test]
fn balanced_inversion_keeps_argument_q() {
    let phi = form("C3").series.as_phi().unwrap().clone();
    let inv = invert_phi(&phi).unwrap();
    let p = inv.series.as_phi().unwrap();
    assert_eq!(p.argument, M::q_pow(1, 0));
    assert_eq!(p.zero_pad, 0);
    assert_eq!(balance_level(p), Some(1));
}

#[test]
fn def1_inverts_to_def2() {
    let def1 = form("aw:def1");
    let def2 = form("aw:def2");
    let inv = invert(&def1.series).unwrap();
    assert!(same_series(&inv.series, &def2.series), "{}", inv.series.display(Frame::Aw));
}

#[test]
fn phi_double_inversion_is_identity() {
    for label in ["aw:def1", "aw:def3", "C5", "c5-family:r1"] {
        let e = form(label);
        let phi = e.series.as_phi().unwrap();
        let once = invert_phi(phi).unwrap();
        let twice = invert(&once.series).unwrap();
        assert!(same_series(&twice.series, &e.series), "{label}");
        let total = once.prefactor.times(&twice.prefactor);
        let frame = Catalog::builtin().form(label).unwrap().frame;
        for env in envs_for(&[&e, &once], frame, 10, 5) {
            assert!(prefactor_is_unit_at(&total, &env).unwrap(), "{label} at {env}");
        }
    }
}

#[test]
fn w_inversion_keeps_watson_argument() {
    let w = watson_w();
    let inv = invert_w(&w).unwrap();
    let iw = inv.series.as_w().unwrap();
    assert_eq!(iw.argument, w.argument);
    assert_eq!(iw.special, m("q^-2n / b", Frame::Bcdef));
    assert!(same_series(&inv.series, &form("W1").series));
}

#[test]
fn w_double_inversion_is_identity() {
    let w = watson_w();
    let once = invert_w(&w).unwrap();
    let twice = invert(&once.series).unwrap();
    assert!(same_series(&twice.series, &SeriesSpec::W(w.clone())));
    let total = once.prefactor.times(&twice.prefactor);
    for env in envs_for(&[&Expression::bare(w), &once], Frame::Bcdef, 10, 6) {
        assert!(prefactor_is_unit_at(&total, &env).unwrap());
    }
}

#[test]
fn w_inversion_preserves_value() {
    let w = Expression::bare(watson_w());
    let inv = invert(&w.series).unwrap();
    for env in envs_for(&[&w, &inv], Frame::Bcdef, 10, 7) {
        assert!(values_agree(&w, &inv, &env).unwrap(), "{env}");
    }
}

#[test]
fn watson_form_one_parameters() {
    let forms = watson_forms(&watson_w()).unwrap();
    let p = forms[0].series.as_phi().unwrap().sorted();
    let f = Frame::Bcdef;
    let mut upper: Vec<M> = ["q^-n", "q b / c d", "e", "f"].iter().map(|s| m(s, f)).collect();
    let mut lower: Vec<M> = ["q^-n e f / b", "q b / c", "q b / d"].iter().map(|s| m(s, f)).collect();
    upper.sort();
    lower.sort();
    assert_eq!(p.upper, upper);
    assert_eq!(p.lower, lower);
    for e in &forms {
        assert_eq!(balance_level(e.series.as_phi().unwrap()), Some(1));
    }
}

#[test]
fn watson_forms_agree_at_fixed_point() {
    let at = |q| PointEnv::new(Frame::Bcdef, q, 2, [4, 2, 3, 5, 7].map(|x| rat(x, 1)));
    let forms = watson_forms(&watson_w()).unwrap();
    // q b / c = 1 at q = 1/2, so every form has a vanishing denominator there
    for e in &forms {
        assert!(matches!(e.eval(&at(rat(1, 2))), Err(crate::Error::DivergentDenominator { .. })));
    }
    let env = at(rat(2, 7));
    let v = Expression::bare(watson_w()).eval(&env).unwrap();
    for e in &forms {
        assert_eq!(e.eval(&env).unwrap(), v);
    }
}

#[test]
fn watson_forms_equal_the_w() {
    let w = Expression::bare(watson_w());
    let forms = watson_forms(w.series.as_w().unwrap()).unwrap();
    let all: Vec<&Expression> = std::iter::once(&w).chain(forms.iter()).collect();
    for env in envs_for(&all, Frame::Bcdef, 10, 8) {
        let v = w.eval(&env).unwrap();
        for e in &forms {
            assert_eq!(e.eval(&env).unwrap(), v, "{env}");
        }
    }
}

#[test]
fn watson_forms_three_and_four_are_inversion_partners() {
    let forms = watson_forms(&watson_w()).unwrap();
    let inv = invert(&forms[2].series).unwrap();
    assert!(same_series(&inv.series, &forms[3].series));
}

#[test]
fn watson_template_mismatch() {
    let mut w = watson_w();
    w.argument = w.argument.shift(1, 0);
    assert!(matches!(watson_forms(&w), Err(crate::Error::TemplateMismatch { .. })));
}

fn converse_phi() -> PhiSpec {
    form("converse:phi").series.as_phi().unwrap().clone()
}

#[test]
fn converse_form_one() {
    let f = Frame::Converse;
    let forms = watson_converse(&converse_phi()).unwrap();
    assert_eq!(forms.len(), 4);
    let w = forms[0].series.as_w().unwrap().sorted();
    assert_eq!(w.special, m("q^-n b c / f", f));
    let mut numer: Vec<M> = ["q^-n", "e / a", "d / a", "b", "c"].iter().map(|s| m(s, f)).collect();
    numer.sort();
    assert_eq!(w.numer.to_vec(), numer);
    assert_eq!(w.argument, m("q a / f", f));
    let expected = Prefactor::one()
        .num(m("f / b", f), PochLength::N)
        .num(m("f / c", f), PochLength::N)
        .den(m("f / b c", f), PochLength::N)
        .den(m("f", f), PochLength::N);
    let got = &forms[0].prefactor;
    let mut a = got.poch.clone();
    let mut b = expected.poch.clone();
    a.sort();
    b.sort();
    assert_eq!(a, b);
    assert!(got.power_base == M::ONE && got.qbinom_exp == 0 && got.sign_exp == 0);
}

#[test]
fn converse_round_trip() {
    let phi = converse_phi();
    let lhs = Expression::bare(phi.clone());
    for w in watson_converse(&phi).unwrap() {
        let back = watson_forms(w.series.as_w().unwrap()).unwrap();
        let lifted: Vec<Expression> = back
            .iter()
            .map(|e| Expression::new(w.prefactor.times(&e.prefactor), e.series.clone()))
            .collect();
        let mut all = vec![&lhs, &w];
        all.extend(lifted.iter());
        let envs = envs_for(&all, Frame::Converse, 10, 9);
        let hit = lifted
            .iter()
            .any(|e| envs.iter().all(|env| values_agree(e, &lhs, env).unwrap()));
        assert!(hit);
    }
}

#[test]
fn converse_equivalents_share_series() {
    let phi = converse_phi();
    let main = watson_converse(&phi).unwrap();
    let alt = watson_converse_equivalents(&phi).unwrap();
    assert!(same_series(&alt[0].series, &main[0].series));
    assert!(same_series(&alt[1].series, &main[1].series));
}

#[test]
fn unbalanced_input_is_rejected() {
    let mut phi = converse_phi();
    phi.argument = M::q_pow(2, 0);
    assert!(matches!(watson_converse(&phi), Err(crate::Error::NotBalanced)));
    let mut phi = converse_phi();
    phi.lower[0] = phi.lower[0].shift(1, 0);
    assert!(matches!(watson_converse(&phi), Err(crate::Error::NotBalanced)));
}

#[test]
fn prefactor_inverse_cancels() {
    let p = form("W1").prefactor;
    let total = p.times(&p.inverse());
    let e = form("W1");
    for env in envs_for(&[&e], Frame::Bcdef, 5, 10) {
        assert!(total.eval(&env).unwrap().is_one());
    }
}

fn phi_strategy() -> impl Strategy<Value = PhiSpec> {
    let mono = (-2i32..3, -1i32..2, prop::array::uniform5(-1i32..2), prop::bool::ANY)
        .prop_map(|(a, b, v, neg)| M::new(if neg { -1 } else { 1 }, a, b, v));
    (
        prop::collection::vec(mono.clone(), 1..4),
        prop::collection::vec(mono.clone(), 0..4),
        mono,
        0i32..2,
    )
        .prop_map(|(mut upper, lower, argument, zero_pad)| {
            upper.insert(0, M::Q_NEG_N);
            PhiSpec { upper, lower, argument, zero_pad }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn phi_inversion_preserves_value(spec in phi_strategy(), seed in any::<u64>(), n in 0u32..5) {
        let lhs = Expression::bare(spec.clone());
        let rhs = invert_phi(&spec).unwrap();
        let mut guards = lhs.guards();
        guards.extend(rhs.guards());
        if let Ok(env) = sample_point(Frame::Bcdef, n, seed, &guards) {
            let l = eval_series(&lhs.series, &env).unwrap();
            prop_assert_eq!(l, rhs.eval(&env).unwrap());
        }
    }
}

#[test]
fn display_shows_prefactor_and_series() {
    let text = form("W1").display(Frame::Bcdef);
    assert!(text.contains("8W7(q^-2n / b;"), "{text}");
    assert!(text.contains("(b;q)_2n"), "{text}");
}
