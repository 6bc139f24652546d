//! Error type shared by every module of the crate.

/// Convenient result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building algebras, representations, or
/// running one of the verdict engines.
///
/// Two variants deserve special attention when mapping errors to process exit
/// codes: [`Error::Verification`] and [`Error::ImplicationViolation`] signal
/// that an internal cross-check failed (two independent computations of the
/// same object disagreed, or a report contradicts a known implication).  Those
/// indicate a bug or a tolerance failure, not bad user input.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Matrix shapes do not line up for the requested operation.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// A square matrix was required.
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    /// An entry was NaN or infinite.
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    /// An operation that needs at least one input got none.
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    /// Invalid tolerance configuration.
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    /// Ampliation or module-multiple with factor zero.
    #[error("multiplicity must be at least 1")]
    ZeroMultiple,

    /// A nonzero vector was required.
    #[error("zero vector not allowed: {0}")]
    ZeroVector(&'static str),

    /// Two representations do not share a reference algebra.
    #[error("representations use different reference algebras")]
    AlgebraMismatch,

    /// The span-closure loop failed to stabilize within the dimension bound;
    /// mathematically impossible, so this guards against float drift.
    #[error("algebra closure did not stabilize within {0} rounds")]
    ClosureDiverged(usize),

    /// A subspace handed to `restrict`/`quotient` (or as a probe submodule)
    /// is not invariant under the action.
    #[error("subspace is not invariant under the action: {0}")]
    NotInvariant(String),

    /// Contraction bound violated when building a two-block representation.
    #[error("operator norm {norm:.6} exceeds the contraction bound 1")]
    NotContractive { norm: f64 },

    /// The corner images of a corner-space representation are linearly
    /// dependent, so they do not define the operator space they claim to.
    #[error("corner images are linearly dependent")]
    DependentImages,

    /// Images fail multiplicativity or otherwise do not define a
    /// representation of the reference algebra.
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    /// Generic bad argument (unsupported kind, malformed target pattern, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A built-in self-test failed: two independent routes to the same object
    /// disagreed beyond tolerance.
    #[error("self-test failed: {0}")]
    Verification(String),

    /// A property report contradicts an implication that must hold.
    #[error("property implication violated: {0}")]
    ImplicationViolation(String),

    /// Problems reading, parsing, or resolving a workspace file.
    #[error("workspace: {0}")]
    Workspace(String),

    /// Underlying I/O failure.
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Exit code the command-line tool should use for this error:
    /// `1` for failed self-tests and violated invariants, `2` for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Verification(_) | Error::ImplicationViolation(_) => 1,
            _ => 2,
        }
    }
}
