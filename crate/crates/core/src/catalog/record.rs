//! Serde records mirroring the catalog text format.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Frame, ParamMonomial};
use crate::series::{PhiSpec, PochLength, SeriesSpec, WSpec};
use crate::transform::{Expression, PochFactor, Prefactor};

use super::{frame_constraints, Catalog, Form, IdentitySpec};

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    form: Vec<FormRecord>,
    #[serde(default)]
    identity: Vec<IdentityRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormRecord {
    label: String,
    frame: String,
    #[serde(default)]
    prefactor: Option<PrefactorRecord>,
    #[serde(default)]
    phi: Option<PhiRecord>,
    #[serde(default)]
    w: Option<WRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormBody {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    prefactor: Option<PrefactorRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    phi: Option<PhiRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    w: Option<WRecord>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PrefactorRecord {
    #[serde(default, skip_serializing_if = "is_zero")]
    qbinom: i32,
    #[serde(default, skip_serializing_if = "is_zero")]
    sign: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    power: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    num: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    den: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PhiRecord {
    upper: Vec<String>,
    lower: Vec<String>,
    arg: String,
    #[serde(default, skip_serializing_if = "is_zero")]
    pad: i32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WRecord {
    b: String,
    params: Vec<String>,
    arg: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum FormRef {
    Label(String),
    Inline(Box<FormBody>),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IdentityRecord {
    id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    frame: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    anchor: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    constraints: Vec<String>,
    lhs: FormRef,
    rhs: FormRef,
}

fn is_zero(v: &i32) -> bool {
    *v == 0
}

fn ctx<T>(r: Result<T>, what: &str) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{what}: {m}")),
        other => other,
    })
}

fn mono(s: &str, frame: Frame) -> Result<ParamMonomial> {
    ParamMonomial::parse(s, frame)
}

fn monos(xs: &[String], frame: Frame) -> Result<Vec<ParamMonomial>> {
    xs.iter().map(|s| mono(s, frame)).collect()
}

fn poch(s: &str, frame: Frame, exponent: i8) -> Result<PochFactor> {
    let (base, len) = match s.split_once(';') {
        Some((b, l)) => (b, PochLength::parse(l)?),
        None => (s, PochLength::N),
    };
    Ok(PochFactor {
        base: mono(base, frame)?,
        len,
        exponent,
    })
}

fn build_body(body: &FormBody, frame: Frame) -> Result<Expression> {
    let prefactor = match &body.prefactor {
        None => Prefactor::one(),
        Some(p) => {
            let mut poch_factors = Vec::new();
            for s in &p.num {
                poch_factors.push(poch(s, frame, 1)?);
            }
            for s in &p.den {
                poch_factors.push(poch(s, frame, -1)?);
            }
            Prefactor {
                qbinom_exp: p.qbinom,
                sign_exp: p.sign,
                power_base: p.power.as_deref().map(|s| mono(s, frame)).transpose()?.unwrap_or(ParamMonomial::ONE),
                poch: poch_factors,
            }
        }
    };
    let series: SeriesSpec = match (&body.phi, &body.w) {
        (Some(phi), None) => PhiSpec {
            upper: monos(&phi.upper, frame)?,
            lower: monos(&phi.lower, frame)?,
            argument: mono(&phi.arg, frame)?,
            zero_pad: phi.pad,
        }
        .into(),
        (None, Some(w)) => {
            let params = monos(&w.params, frame)?;
            let numer: [ParamMonomial; 5] = params
                .try_into()
                .map_err(|_| Error::Parse("an 8W7 needs exactly 5 parameters".into()))?;
            WSpec::new(mono(&w.b, frame)?, numer, mono(&w.arg, frame)?).into()
        }
        _ => return Err(Error::Parse("a form needs exactly one of `phi` or `w`".into())),
    };
    Ok(Expression { prefactor, series })
}

fn frame_of(name: &str) -> Result<Frame> {
    Frame::from_name(name).ok_or_else(|| Error::Parse(format!("unknown frame {name:?}")))
}

pub(super) fn parse(text: &str) -> Result<(Vec<Form>, Vec<IdentitySpec>)> {
    let file: CatalogFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut forms: Vec<Form> = Vec::new();
    let mut seen = HashSet::new();
    for r in &file.form {
        if !seen.insert(r.label.clone()) {
            return Err(Error::Parse(format!("duplicate form label {:?}", r.label)));
        }
        let frame = frame_of(&r.frame)?;
        let body = FormBody {
            label: None,
            prefactor: r.prefactor.clone(),
            phi: r.phi.clone(),
            w: r.w.clone(),
        };
        let expr = ctx(build_body(&body, frame), &format!("form {:?}", r.label))?;
        forms.push(Form {
            label: r.label.clone(),
            frame,
            expr,
        });
    }

    let mut ids = HashSet::new();
    let mut identities = Vec::new();
    for r in &file.identity {
        if !ids.insert(r.id.clone()) {
            return Err(Error::Parse(format!("duplicate identity id {:?}", r.id)));
        }
        let declared = r.frame.as_deref().map(frame_of).transpose()?;
        let resolve = |side: &FormRef| -> Result<(String, Frame, Expression)> {
            match side {
                FormRef::Label(l) => {
                    let f = forms
                        .iter()
                        .find(|f| &f.label == l)
                        .ok_or_else(|| Error::Parse(format!("identity {:?}: unknown form {l:?}", r.id)))?;
                    Ok((f.label.clone(), f.frame, f.expr.clone()))
                }
                FormRef::Inline(body) => {
                    let frame = declared
                        .ok_or_else(|| Error::Parse(format!("identity {:?}: inline form needs a frame", r.id)))?;
                    let expr = ctx(build_body(body, frame), &format!("identity {:?}", r.id))?;
                    Ok((body.label.clone().unwrap_or_default(), frame, expr))
                }
            }
        };
        let (ll, lf, lhs) = resolve(&r.lhs)?;
        let (rl, rf, rhs) = resolve(&r.rhs)?;
        if lf != rf || declared.is_some_and(|d| d != lf) {
            return Err(Error::Parse(format!("identity {:?}: sides live in different frames", r.id)));
        }
        let constraints = frame_constraints(lf);
        for c in &r.constraints {
            let (var, value) = c
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("identity {:?}: bad constraint {c:?}", r.id)))?;
            let expected = constraints.iter().find(|k| k.var == var.trim());
            // the parser already substitutes the eliminated variable, so only
            // the frame's own constraint can be honored
            let ok = match expected {
                Some(k) => ParamMonomial::parse(value, lf)? == k.value,
                None => false,
            };
            if !ok {
                return Err(Error::ConstraintViolated(format!("identity {:?}: {c}", r.id)));
            }
        }
        identities.push(IdentitySpec {
            id: r.id.clone(),
            frame: lf,
            lhs,
            rhs,
            constraints,
            anchor: r.anchor.clone().unwrap_or_else(|| format!("{ll} = {rl}")),
        });
    }
    Ok((forms, identities))
}

fn body_of(label: Option<&str>, expr: &Expression, frame: Frame) -> FormBody {
    let d = |m: &ParamMonomial| m.display(frame);
    let pf = &expr.prefactor;
    let fmt_poch = |f: &PochFactor| {
        if f.len == PochLength::N {
            d(&f.base)
        } else {
            format!("{} ; {}", d(&f.base), f.len)
        }
    };
    let prefactor = (!pf.is_one()).then(|| PrefactorRecord {
        qbinom: pf.qbinom_exp,
        sign: pf.sign_exp,
        power: (pf.power_base != ParamMonomial::ONE).then(|| d(&pf.power_base)),
        num: pf.poch.iter().filter(|f| f.exponent > 0).map(fmt_poch).collect(),
        den: pf.poch.iter().filter(|f| f.exponent < 0).map(fmt_poch).collect(),
    });
    let (phi, w) = match &expr.series {
        SeriesSpec::Phi(p) => (
            Some(PhiRecord {
                upper: p.upper.iter().map(d).collect(),
                lower: p.lower.iter().map(d).collect(),
                arg: d(&p.argument),
                pad: p.zero_pad,
            }),
            None,
        ),
        SeriesSpec::W(w) => (
            None,
            Some(WRecord {
                b: d(&w.special),
                params: w.numer.iter().map(d).collect(),
                arg: d(&w.argument),
            }),
        ),
    };
    FormBody {
        label: label.map(str::to_string),
        prefactor,
        phi,
        w,
    }
}

pub(super) fn export(cat: &Catalog) -> String {
    let identity = cat
        .identities
        .iter()
        .map(|s| {
            let (ll, rl) = s.anchor.split_once(" = ").unwrap_or(("", ""));
            IdentityRecord {
                id: s.id.clone(),
                frame: Some(s.frame.name().to_string()),
                anchor: Some(s.anchor.clone()),
                constraints: s.constraints.iter().map(|c| c.display(s.frame)).collect(),
                lhs: FormRef::Inline(Box::new(body_of(Some(ll), &s.lhs, s.frame))),
                rhs: FormRef::Inline(Box::new(body_of(Some(rl), &s.rhs, s.frame))),
            }
        })
        .collect();
    let file = CatalogFile {
        form: Vec::new(),
        identity,
    };
    toml::to_string(&file).expect("catalog serializes")
}
