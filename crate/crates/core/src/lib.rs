//! Exact computations on finite-dimensional algebras with involution.
//!
//! The crate covers symmetric/skew subspaces, spans of set products, the
//! criteria that decide when products of symmetric or skew elements fill the
//! whole algebra, certificate-producing decompositions, and a normal-form engine
//! for identities in the free algebra with involution.

pub mod algebra;
pub mod criteria;
pub mod decompose;
pub mod field;
mod linalg;
pub mod staralgebra;
pub mod structure;
pub mod subspace;

pub use algebra::{AlgebraError, AlgebraKind, Element, InvolutiveAlgebra, Involution, NotInvertible};
pub use field::{FieldDescriptor, FieldError, FieldKind, Scalar};
pub use subspace::Subspace;
