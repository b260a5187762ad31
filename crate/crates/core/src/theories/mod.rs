//! Axiom catalogs for the five mathematical theories, parameterized
//! schema instantiation, satisfaction checks at the designated world, and
//! bounded finite-model search.

mod catalog;
mod search;

pub use catalog::{axioms_of, instantiate_schema, theory, Schema, SideCondition, Theory, TheoryName, ALL_THEORIES};
pub use search::{find_countermodel, find_countermodel_seq, find_finite_model, find_finite_model_seq, SearchBounds};

use crate::models::{eval_at_index, Assignment, Model, ModelError};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TheoryError {
    #[error("unknown theory `{0}`")]
    UnknownTheory(String),
    #[error("axiom `{axiom}` of {theory} is not a schema")]
    NotASchema { theory: TheoryName, axiom: String },
    #[error("schema {axiom} rejects n = {n}: {requirement}")]
    SideCondition { axiom: String, n: u32, requirement: String },
    #[error("schema bound must be at least 2, got {0}")]
    BadBound(u32),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("search bounds exceed the tractability guard (domain <= 4, worlds <= 2); pass override to force")]
    GuardExceeded,
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Per-axiom satisfaction at the designated world.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoryReport {
    pub theory: TheoryName,
    pub rows: Vec<(String, bool)>,
    pub all_hold: bool,
}

/// Evaluates every axiom (schemata expanded up to `bound`) at `s`.
pub fn holds_at_s(m: &Model, name: TheoryName, bound: u32) -> Result<TheoryReport, TheoryError> {
    let t = theory(name);
    if t.uses_functions() && m.funcs().is_none() {
        return Err(TheoryError::SignatureMismatch(format!(
            "{} needs function interpretations, which this model lacks",
            name
        )));
    }
    if t.uses_functions() && !m.domain().is_finite() {
        return Err(TheoryError::SignatureMismatch(format!(
            "{} needs function interpretations, which are finite-domain only",
            name
        )));
    }
    let axioms = axioms_of(name, bound)?;
    let s = m.frame().designated();
    let empty = Assignment::new();
    let mut rows = Vec::new();
    for (id, formula) in axioms {
        let holds = eval_at_index(m, s, &formula, &empty)?;
        rows.push((id, holds));
    }
    let all_hold = rows.iter().all(|(_, ok)| *ok);
    Ok(TheoryReport { theory: name, rows, all_hold })
}

#[cfg(test)]
mod tests;
