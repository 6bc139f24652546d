//! Finite-dimensional operator algebras made computable.
//!
//! `opalg` works with concrete (generally nonselfadjoint) algebras of complex
//! matrices and their modules.  Everything is numerical but rank-aware: a
//! single tolerance policy governs every rank decision, so the answers the
//! library produces — commutants, bicommutants, intertwiner spaces,
//! generator/cogenerator diagnostics — are reproducible and cross-checkable.
//!
//! The main entry points:
//!
//! * [`linalg`] — complex matrices ([`CMatrix`]), subspaces of vectors and of
//!   operators with orthonormal bases, the SVD-backed rank engine, and seeded
//!   random ensembles.
//! * [`algebra`] — [`MatrixAlgebra`]: span-closed unital or non-unital
//!   algebras of matrices, built from generators.
//! * [`commutant`] — commutants, bicommutants, and the double-commutant
//!   ("bicommutant = span") diagnostic, plus an identity self-test suite.
//! * [`hilbmod`] — representations ([`Representation`]) as modules: homs,
//!   adjointable maps, trace and reject submodules, sums, multiples,
//!   restriction, quotient, and unitary/quasi equivalence probes.
//! * [`classify`] — family-relative generator / cogenerator / semigenerator /
//!   semicogenerator flags and the sub-tracing probe, assembled into a
//!   [`classify::PropertyReport`] with hard implication checks.
//! * [`families`] — closed forms for the 2×2 upper-triangular family and the
//!   one-row corner family, reflexive-closure computations, and a
//!   counterexample search over both families.
//! * [`workspace`] — a JSON file format for matrices, algebras, and
//!   representations, used by the CLI and the examples.
//! * [`suite`] — the self-validation suite run by `opalg suite`.

pub mod algebra;
pub mod classify;
pub mod commutant;
pub mod error;
pub mod families;
pub mod hilbmod;
pub mod linalg;
pub mod suite;
pub mod workspace;

pub use algebra::MatrixAlgebra;
pub use error::{Error, Result};
pub use hilbmod::Representation;
pub use linalg::{CMatrix, OperatorSubspace, Subspace, Tolerance};
