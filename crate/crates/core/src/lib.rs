//! Exact computations in finite-dimensional Jordan algebras given by
//! structure constants.
//!
//! The crate is layered bottom-up:
//!
//! - [`field`], [`composition`], [`linalg`]: exact scalars (ℚ and F_p),
//!   Cayley–Dickson composition algebras and canonical linear algebra.
//! - [`algebra`]: [`JordanAlgebra`], products, U-operators, axiom validation
//!   and constructions (unital hull, direct sums, quotients, special algebras).
//! - [`annihilators`] and [`deciders`]: the U-operator annihilator calculus and
//!   deciders for the RJ, BJ, Rickart and Baer properties. Over small prime
//!   fields every decision is exhaustive; over ℚ verdicts are three-valued.
//! - [`radicals`], [`lattice`], [`peirce`]: trivial elements, radicals,
//!   inverses, idempotent lattices and Peirce decompositions.
//! - [`corpus`]: constructors for the example families and the claims suite.
//! - [`format`] and [`report`]: the JSON algebra file format and reports.

pub mod algebra;
pub mod annihilators;
pub mod composition;
pub mod corpus;
pub mod deciders;
pub mod enumerate;
pub mod field;
pub mod format;
pub mod lattice;
pub mod linalg;
pub mod peirce;
pub mod quadratic;
pub mod radicals;
pub mod report;
pub mod verdict;

pub use algebra::{Element, JordanAlgebra};
pub use field::{Field, FieldDesc, PrimeField, Rationals, Residue};
pub use linalg::{LinOp, Matrix, Subspace};
pub use verdict::{ClassReport, Outcome, Property, Verdict, Witness};

/// Default bound on `p^dim` for exhaustive enumeration.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Environment variable that overrides [`DEFAULT_BUDGET`] for the command-line tool.
pub const BUDGET_ENV: &str = "JORDAN_BUDGET";

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("composition degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("element or algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("invalid structure constants: {0}")]
    InvalidAlgebra(String),
    #[error(
        "Jordan identity over F_3 needs exhaustive checking but 3^{dim} exceeds budget {budget}"
    )]
    CharThreeNeedsExhaustive { dim: usize, budget: u64 },
    #[error("subspace is not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("structure constants are not associative at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("exhaustive enumeration needs p^dim <= budget: p = {p}, dim = {dim}, budget = {budget}")]
    TooLarge { p: u64, dim: usize, budget: u64 },
    #[error("exhaustive enumeration needs a finite field")]
    InfiniteField,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("algebra has no unit")]
    NotUnital,
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("octonion hermitian matrices are Jordan only for n <= 3, got n = {0}")]
    InvalidOctonionSize(usize),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("bad coefficient {0:?}")]
    BadCoefficient(String),
    #[error("duplicate product record for ({0}, {1})")]
    DuplicateProduct(usize, usize),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
