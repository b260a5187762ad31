//! Quantifier elimination over dense linear orders: the one-variable
//! normal-form rewriter, order-diagram elimination at the designated
//! world, candidate verification, implication elimination, and the
//! back-and-forth construction between countable dense orders.

mod backforth;
mod diagram;
mod normalize;

pub use backforth::{back_and_forth_extend, build_partial_isomorphism, PartialMap, Side};
pub use diagram::{
    arrow_eliminate, diagram_formula, enumerate_diagrams, lambda_set, qe_dlo,
    verify_qe_candidate, DiagRel, OrderDiagram, QeVerifyReport,
};
pub use normalize::{normalize_qf_dlo, one_var_fragment};

use crate::models::ModelError;
use crate::theories::TheoryError;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QeError {
    #[error("disallowed atom in the one-variable fragment: {0}")]
    DisallowedAtom(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{0} is already present on that side of the partial map")]
    AlreadyPresent(String),
    #[error("anchor sequences are not order-isomorphic: {0}")]
    NotOrderIsomorphic(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Theory(#[from] TheoryError),
}
