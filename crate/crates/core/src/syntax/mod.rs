//! Syntax layer: AST, parser, printer, substitution, and generators.

pub mod ast;
pub mod gen;
pub mod parser;
mod printer;

pub use ast::{Formula, Term};
pub use parser::{parse_formula, parse_term, ParseError};
