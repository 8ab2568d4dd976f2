//! Exact computation with finite-dimensional weak bialgebras, weak Hopf algebras,
//! weak crossed products and cleft extensions.
//!
//! Every structure is a set of matrices over ℚ or F_p. Identities between composite
//! morphisms are written in a small term language ([`ir`]) and checked exactly.

pub mod cleft;
pub mod cli;
pub mod corpus;
pub mod crossed;
pub mod instances;
pub mod ir;
pub mod linalg;
pub mod presentation;
pub mod verdict;
pub mod weakhopf;

pub use linalg::{FieldSpec, LinMap, ObjectWord, Scalar};
pub use verdict::{Status, Verdict, VerdictReport, Witness};
