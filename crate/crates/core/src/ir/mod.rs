//! Morphism terms for a strict symmetric monoidal category, compiled to exact matrices.
//!
//! Reading order follows string diagrams top to bottom: `f ; g` is g∘f and `f * g` is f⊗g.

mod ast;
mod eval;
mod parse;
mod signature;

pub use ast::MorExpr;
pub use eval::{check_identity, evaluate, infer_type, Env};
pub use parse::{parse_expr, parse_with_macros};
pub use signature::{Signature, UNIT_NAME};

use crate::linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IrError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("unknown name {name:?} at {line}:{col}")]
    UnknownName {
        name: String,
        line: usize,
        col: usize,
    },
    #[error("type error at {path}: expected {expected}, found {found}")]
    Type {
        expected: String,
        found: String,
        path: String,
    },
    #[error("identity sides have different types: {lhs} vs {rhs}")]
    SidesDiffer { lhs: String, rhs: String },
    #[error("generator {0:?} has no matrix")]
    Unbound(String),
    #[error("invalid or reserved name {0:?}")]
    BadName(String),
    #[error("object {name} declared with dimension {old} and {new}")]
    ObjectConflict {
        name: String,
        old: usize,
        new: usize,
    },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
