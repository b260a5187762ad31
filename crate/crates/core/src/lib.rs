//! Ternary-relation (Routley-Meyer) models for relevant logics, with
//! frame-condition checking, bounded finite-model search, and quantifier
//! elimination for dense linear orders.

mod exec;
pub mod fixtures;
pub mod frames;
pub mod theories;
pub mod models;
pub mod qe;
pub mod rational;
pub mod reproduce;
pub mod syntax;
