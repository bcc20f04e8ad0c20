//! Exact symbolic computation for binary quadratic operads.
//!
//! The crate provides, bottom up:
//!
//! * [`linalg`] — exact linear algebra over an arbitrary field scalar,
//!   with subspaces kept in reduced row echelon form so that subspace
//!   equality is entrywise comparison;
//! * [`weight2`] — binary generator spaces with their S2-action and the
//!   weight-two component of the free operad on them, together with the
//!   S3-action by leaf relabelling;
//! * [`presentation`] — quadratic presentations (generators plus an
//!   S3-stable relation space), the arity-3 dimension formula, Koszul
//!   duals, the attelage of named presentations (Lie, Com, Ass, Perm,
//!   Leib, preLie, Zinbiel, Poisson, pre/dual-pre-Poisson), and the
//!   closed-form composition table of the permutation-algebra operad;
//! * [`products`] — Manin white and black products;
//! * [`derived`] — the averaging-decorated copy spaces, the collapse
//!   map theta and its adjoint, and the machine checks tying the
//!   derived/dual-derived bracket presentations to the Manin products;
//! * [`algebra`] — finite-dimensional algebras given by structure
//!   constants, with differentials, averaging and Rota-Baxter
//!   operators, and exhaustive relation checks;
//! * [`input`] — the line-oriented text format for presentations and
//!   algebras.
//!
//! All arithmetic is exact; nothing in this crate rounds.

pub mod algebra;
pub mod derived;
pub mod input;
pub mod linalg;
pub mod perm;
pub mod presentation;
pub mod products;
pub mod weight2;

/// Arbitrary-precision rational scalar used by the operad layer.
pub type Rat = num_rational::BigRational;
/// Matrix over [`Rat`].
pub type QMatrix = linalg::Matrix<Rat>;
/// Subspace of a rational coordinate space.
pub type QSubspace = linalg::Subspace<Rat>;
/// Bilinear form on a rational coordinate space.
pub type QForm = linalg::BilinearForm<Rat>;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Shorthand for the rational `p/q`.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(p.into(), q.into())
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("bilinear form is singular")]
    SingularForm,
    #[error("unknown generator index {0}")]
    UnknownGenerator(usize),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("relation space is not S3-stable: permutation {0} maps a relation outside the space")]
    NotStable(String),
    #[error("composition position out of range: {0}")]
    PositionOutOfRange(String),
    #[error("algebra validation failed: {0}")]
    Validation(String),
    #[error("algebra has no unary operator (expected {0})")]
    MissingOperator(String),
    #[error("operator role mismatch: expected {expected}, found {found}")]
    RoleMismatch { expected: String, found: String },
    #[error("assignment incompatible with generator symmetry: {0}")]
    IncompatibleAssignment(String),
    #[error("vector is not in the relation space")]
    NotARelation,
    #[error("sub-basis is not a trivial subalgebra: {0}")]
    NotTrivial(String),
    #[error("shifted span of sub-basis is not closed under the derived brackets: {0}")]
    NotClosed(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
