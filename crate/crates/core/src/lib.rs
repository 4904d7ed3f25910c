//! Exact computation of the special symmetrization for the Lie superalgebras
//! gl(m|n) and Q(n), and verification of the correspondence between central
//! elements of their enveloping algebras and class sums of the symmetric and
//! Sergeev groups acting on `(C^{m|n})^{⊗N}`.
//!
//! All arithmetic is exact: integer coefficients for algebra elements and
//! rationals for operator matrices.

pub mod algebra;
pub mod central;
pub mod duality;
pub mod error;
pub mod groups;
pub mod symmetrization;
pub mod tensor;
pub mod weyl;

pub use algebra::{
    matrix_product, q_unit, super_bracket, super_sort, Coeff, FormalSum, MatrixUnit, SpaceSpec, SymMonomial, Word,
};
pub use central::{
    a_rho, i_rho, j_rho, q_rho, verify_thm24, verify_thm25, DualityKind, IntegerPartition, InvariantConvention,
    ComparisonReport, VerifyOptions,
};
pub use duality::{verify_duality, CommutantKind, DualityReport, MatrixSpan};
pub use error::{Error, Result};
pub use groups::{Permutation, SergeevElement};
pub use symmetrization::{regular_partitions, sigma, sigma_tilde_closed, sigma_tilde_iter, star};
pub use tensor::{BasisTensor, ExactMatrix, TensorSpace};
pub use weyl::WeylOperator;
