//! Exact dense linear algebra over ℚ and F_p.

mod field;
mod linmap;
mod solve;
mod sparse;
mod word;

pub use field::{FieldSpec, Scalar};
pub(crate) use linmap::swap_index;
pub use linmap::{compose, rref, span_basis, split_idempotent, tensor_product, LinMap, Split};
pub use solve::{factor_through, satisfies, solve_affine, AffineSolution, Constraint};
pub use sparse::SparseVec;
pub use word::{Object, ObjectWord};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("field mismatch")]
    FieldMismatch,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not idempotent: e∘e and e differ in column {col}")]
    NotIdempotent { col: usize },
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("malformed scalar {0:?}")]
    BadScalar(String),
    #[error("malformed field spec {0:?}")]
    BadField(String),
}
