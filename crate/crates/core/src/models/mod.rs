//! Full models: a frame plus a domain, per-world valuations for `<`, the
//! `P_n` predicates, equality, and optional function tables; together
//! with the formula evaluator and the model-level checks.

mod checks;
mod domain;
mod eval;
mod json;
#[cfg(test)]
mod tests;

pub use checks::{
    check_equality_axioms, check_heredity, definable_set, hereditary_property_test,
    models_agree, orbit_agreement, orbit_agreement_seq, world_invariance_test, AgreementReport,
    CheckReport, DefinableSet, OrbitDesc, OrbitVerdict,
};
pub use domain::{assignment, Assignment, DomainSpec, Elem, EqMode, FuncTables, WorldOrderSpec};
pub use eval::{eval, eval_at_index, eval_explain, eval_sampled, representatives};

use crate::frames::Frame;
use crate::rational::Q;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("illegal domain/spec combination: {0}")]
    IllegalSpec(String),
    #[error("function symbols are not interpreted in this model: {0}")]
    NoFunctions(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid model: {0}")]
    Invalid(String),
    #[error("model JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Frame(#[from] crate::frames::FrameError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    frame: Frame,
    domain: DomainSpec,
    /// Interpretation of `<` per world index.
    less: Vec<WorldOrderSpec>,
    /// `(world index, n)` -> extension of `P_n`.
    preds: BTreeMap<(usize, u32), BTreeSet<Elem>>,
    eq: EqMode,
    funcs: Option<FuncTables>,
}

impl Model {
    pub fn new(
        frame: Frame,
        domain: DomainSpec,
        less: Vec<WorldOrderSpec>,
        eq: EqMode,
    ) -> Result<Model, ModelError> {
        let model = Model {
            frame,
            domain,
            less,
            preds: BTreeMap::new(),
            eq,
            funcs: None,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn with_preds(mut self, preds: BTreeMap<(usize, u32), BTreeSet<Elem>>) -> Result<Model, ModelError> {
        self.preds = preds;
        self.validate()?;
        Ok(self)
    }

    pub fn with_funcs(mut self, funcs: FuncTables) -> Result<Model, ModelError> {
        self.funcs = Some(funcs);
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<(), ModelError> {
        let n = self.frame.world_count();
        if self.less.len() != n {
            return Err(ModelError::Invalid(format!(
                "expected {} world order specs, got {}",
                n,
                self.less.len()
            )));
        }
        match &self.domain {
            DomainSpec::Finite(elems) => {
                let set: BTreeSet<&Elem> = elems.iter().collect();
                if set.len() != elems.len() {
                    return Err(ModelError::Invalid("finite domain elements must be distinct".into()));
                }
            }
            DomainSpec::RationalOrder => {
                for spec in &self.less {
                    if matches!(spec, WorldOrderSpec::Pairs(_)) {
                        return Err(ModelError::IllegalSpec(
                            "explicit pair orders require a finite domain".into(),
                        ));
                    }
                }
                if matches!(self.eq, EqMode::Valuated(_)) {
                    return Err(ModelError::IllegalSpec(
                        "valuated equality requires a finite domain".into(),
                    ));
                }
                if !self.preds.is_empty() {
                    return Err(ModelError::IllegalSpec(
                        "P_n valuations require a finite domain".into(),
                    ));
                }
                if self.funcs.is_some() {
                    return Err(ModelError::IllegalSpec(
                        "function tables require a finite domain".into(),
                    ));
                }
            }
        }
        for spec in &self.less {
            if let WorldOrderSpec::Interval { lo, hi } = spec {
                if lo >= hi {
                    return Err(ModelError::Invalid(format!(
                        "interval order requires lo < hi, got [{}, {}]",
                        lo, hi
                    )));
                }
            }
        }
        if let EqMode::Valuated(tables) = &self.eq {
            if tables.len() != n {
                return Err(ModelError::Invalid(
                    "valuated equality must list one pair set per world".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    pub fn order_at(&self, world: usize) -> &WorldOrderSpec {
        &self.less[world]
    }

    pub fn eq_mode(&self) -> &EqMode {
        &self.eq
    }

    pub fn funcs(&self) -> Option<&FuncTables> {
        self.funcs.as_ref()
    }

    pub fn pred_extension(&self, world: usize, n: u32) -> Option<&BTreeSet<Elem>> {
        self.preds.get(&(world, n))
    }

    pub(crate) fn preds(&self) -> &BTreeMap<(usize, u32), BTreeSet<Elem>> {
        &self.preds
    }

    /// Cut points: every interval endpoint appearing in any world's order.
    pub fn cut_points(&self) -> Vec<Q> {
        let mut out: Vec<Q> = self.less.iter().flat_map(|s| s.cut_points()).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn finite_elements(&self) -> Option<&[Elem]> {
        match &self.domain {
            DomainSpec::Finite(elems) => Some(elems),
            DomainSpec::RationalOrder => None,
        }
    }
}
