//! The identity catalog: labeled forms read from declarative monomial tables,
//! the identities pairing them, and the verification harness.

mod record;
mod verify;

pub use verify::{
    identity_envs, mutation_check, mutations, verify_all, verify_identity, CatalogSummary, MutationOutcome, Skip,
    VerificationReport,
};

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::{Frame, ParamMonomial};
use crate::transform::Expression;

const BUILTIN: &str = include_str!("../../data/catalog.toml");

/// A labeled expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    pub label: String,
    pub frame: Frame,
    pub expr: Expression,
}

/// `var = value`, used to eliminate a constrained variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub var: String,
    pub value: ParamMonomial,
}

impl Constraint {
    pub fn display(&self, frame: Frame) -> String {
        format!("{} = {}", self.var, self.value.display(frame))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentitySpec {
    pub id: String,
    pub frame: Frame,
    pub lhs: Expression,
    pub rhs: Expression,
    pub constraints: Vec<Constraint>,
    /// `lhs-label = rhs-label`.
    pub anchor: String,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub forms: Vec<Form>,
    pub identities: Vec<IdentitySpec>,
    index: HashMap<String, usize>,
}

impl Catalog {
    /// Parses a catalog document.
    pub fn parse(text: &str) -> Result<Catalog> {
        let (forms, identities) = record::parse(text)?;
        let index = forms.iter().enumerate().map(|(i, f)| (f.label.clone(), i)).collect();
        Ok(Catalog {
            forms,
            identities,
            index,
        })
    }

    pub fn builtin() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::parse(BUILTIN).expect("builtin catalog parses"))
    }

    pub fn form(&self, label: &str) -> Result<&Form> {
        self.index
            .get(label)
            .map(|&i| &self.forms[i])
            .ok_or_else(|| Error::Unknown(label.to_string()))
    }

    pub fn identity(&self, id: &str) -> Option<&IdentitySpec> {
        self.identities.iter().find(|s| s.id == id)
    }

    /// Resolved text export: one record per identity with both sides inlined.
    pub fn export(&self) -> String {
        record::export(self)
    }
}

/// Every identity of the builtin catalog.
pub fn catalog() -> Vec<IdentitySpec> {
    Catalog::builtin().identities.clone()
}

pub(crate) fn frame_constraints(frame: Frame) -> Vec<Constraint> {
    frame
        .derived()
        .map(|(var, value)| Constraint {
            var: var.to_string(),
            value,
        })
        .into_iter()
        .collect()
}
