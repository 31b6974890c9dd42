//! Parsing and normalization of the input language.

pub mod ast;
pub mod heuristic_rule;
pub mod lexer;
pub mod normalize;
pub mod parser;

pub use heuristic_rule::{directive_to_heuristic_rule, HeuristicRule};
pub use normalize::normalize;
pub use parser::parse;

/// Parses and normalizes a program in one step.
pub fn load(src: &str) -> crate::error::Result<ast::Program> {
    normalize(&parse(src)?)
}
