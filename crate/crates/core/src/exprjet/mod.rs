//! Single-variable expressions evaluated as order-four Taylor jets.
//!
//! Expressions are parsed once into an immutable tree and then evaluated at
//! any point to obtain the value and its first four derivatives exactly up
//! to floating-point rounding.

mod ast;
mod eval;
mod jet;
mod parser;

use std::fmt;

pub use ast::{BinaryOp, Func, Node, NodeKind};
pub use jet::Jet4;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("empty expression")]
    Empty,
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("exponent of `^` at byte {offset} must be constant")]
    NonConstantExponent { offset: usize },
    #[error("numeric literal at byte {offset} is not finite")]
    NonFiniteLiteral { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Empty => 0,
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownIdentifier { offset, .. }
            | ParseError::NonConstantExponent { offset }
            | ParseError::NonFiniteLiteral { offset } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("{op} is undefined for argument {arg} (node at byte {offset})")]
    Domain {
        op: &'static str,
        offset: usize,
        arg: f64,
    },
    #[error("expression is not finite at {at}")]
    NonFinite { at: f64 },
}

/// A parsed expression in one free variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    root: Node,
    var: String,
    source: String,
}

impl Expr {
    /// Parses `text` with `var` as the only free variable.
    pub fn parse(text: &str, var: &str) -> Result<Expr, ParseError> {
        let root = parser::parse_node(text, var)?;
        Ok(Expr {
            root,
            var: var.to_string(),
            source: text.to_string(),
        })
    }

    pub fn eval_jet(&self, at: f64) -> Result<Jet4, EvalError> {
        let jet = eval::eval_node(&self.root, at)?;
        if jet.is_finite() {
            Ok(jet)
        } else {
            Err(EvalError::NonFinite { at })
        }
    }

    pub fn eval(&self, at: f64) -> Result<f64, EvalError> {
        self.eval_jet(at).map(|j| j.value())
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn variable(&self) -> &str {
        &self.var
    }

    /// The text this expression was parsed from.
    pub fn source(&self) -> &str {
        &self.source
    }
}

/// Prints the tree in prefix form, e.g. `(* 3 (cos t))`.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.write_sexpr(&self.var, f)
    }
}
