//! Complex linear algebra with an explicit numerical-rank policy.
//!
//! The crate makes exact-sounding claims ("the commutant has dimension 4")
//! about floating-point data, so every such claim is reduced to one policy
//! applied in one place: a singular value counts toward a rank exactly when
//! it exceeds `rank_rel * sigma_max`, with an absolute floor of a few machine
//! epsilons per dimension that keeps all-noise matrices from masquerading as
//! full rank (see [`Tolerance`] and the `backend` module).  Subspaces carry
//! orthonormal bases — under the standard inner product for vectors and the
//! trace inner product `<X, Y> = tr(Y* X)` for operators — so projections and
//! distances are cheap and stable.

pub mod backend;
mod cmatrix;
mod opspace;
pub mod random;
mod subspace;

pub use cmatrix::CMatrix;
pub use opspace::OperatorSubspace;
pub use subspace::Subspace;

use crate::error::{Error, Result};

/// The two knobs behind every approximate comparison in the crate.
///
/// * `rank_rel` — relative singular-value threshold for rank decisions;
/// * `match_abs` — absolute threshold for residuals, memberships, and
///   subspace comparisons.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct Tolerance {
    pub rank_rel: f64,
    pub match_abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { rank_rel: 1e-9, match_abs: 1e-8 }
    }
}

impl Tolerance {
    pub fn new(rank_rel: f64, match_abs: f64) -> Result<Self> {
        if !(rank_rel > 0.0 && rank_rel.is_finite()) {
            return Err(Error::InvalidTolerance(format!(
                "rank_rel must be positive and finite, got {rank_rel}"
            )));
        }
        if !(match_abs > 0.0 && match_abs.is_finite()) {
            return Err(Error::InvalidTolerance(format!(
                "match_abs must be positive and finite, got {match_abs}"
            )));
        }
        Ok(Tolerance { rank_rel, match_abs })
    }
}
