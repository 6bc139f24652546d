//! Modules over the one-row corner algebra `U(X)`.
//!
//! For a `d`-dimensional operator space `X`, the algebra `U(X)` is spanned
//! by two block scalars and the corner copy of `X`:
//! `{[λI, x; 0, μI] : λ, μ ∈ C, x ∈ X}`, of dimension `d + 2`.  The
//! reference realization lives in `M_{1+d}`: the corner units `E₀ⱼ`
//! (`j = 1…d`) play the basis of `X`, and the two diagonal projections are
//! `E₀₀` and `Σ_{j≥1} E_{jj}`.
//!
//! A module is determined by corner images `α₁…α_d : H₂ → H₁`, which must
//! be linearly independent so that they faithfully carry the `d` corner
//! directions.  The joint range and joint kernel of the tuple control the
//! one-sided properties in closed form ([`ux_semi_criteria`]), and the
//! commutant is the intertwining pair space of the tuple
//! ([`ux_commutant_closed_form`]), self-tested against the kernel engine.

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::algebra::MatrixAlgebra;
use crate::classify::ModuleFamily;
use crate::commutant;
use crate::error::{Error, Result};
use crate::hilbmod::Representation;
use crate::linalg::{backend, CMatrix, OperatorSubspace, Tolerance};

use super::intertwining_pairs;

/// The reference algebra of `U(X)` for a `d`-dimensional corner space,
/// realized in `M_{1+d}` with exact orthonormal basis
/// `[E₀₀, Σ_{j≥1}E_{jj}/√d, E₀₁, …, E₀_d]`.
pub fn ux_algebra(d: usize, tol: Tolerance) -> Result<Arc<MatrixAlgebra>> {
    if d == 0 {
        return Err(Error::InvalidInput(
            "the corner space must have dimension at least 1".into(),
        ));
    }
    let n = 1 + d;
    let mut basis = vec![CMatrix::unit(n, n, 0, 0)];
    let mut p2 = CMatrix::zeros(n, n);
    for j in 1..n {
        p2.set(j, j, num_complex::Complex64::ONE);
    }
    basis.push(p2.scaled((1.0 / (d as f64).sqrt()).into()));
    for j in 1..n {
        basis.push(CMatrix::unit(n, n, 0, j));
    }
    let space = OperatorSubspace::from_orthonormal(n, n, basis);
    Ok(Arc::new(MatrixAlgebra::from_orthonormal_basis(space, tol)?))
}

/// Builds the two-block module of `U(X)` with corner images `alphas`
/// (`αⱼ : C^{h₂} → C^{h₁}`, all of one shape, linearly independent).
pub fn build_ux(
    algebra: &Arc<MatrixAlgebra>,
    alphas: &[CMatrix],
    tol: Tolerance,
) -> Result<Representation> {
    let d = alphas.len();
    if algebra.dim() != d + 2 {
        return Err(Error::InvalidInput(format!(
            "algebra has dimension {}, but {d} corner images imply {}",
            algebra.dim(),
            d + 2
        )));
    }
    let first = alphas.first().ok_or(Error::EmptyInput("corner images"))?;
    let (h1, h2) = first.shape();
    for a in alphas {
        if a.shape() != (h1, h2) {
            return Err(Error::ShapeMismatch(
                "corner images must share one shape".into(),
            ));
        }
    }
    if h1 * h2 > 0 {
        let vecs: Vec<CMatrix> = alphas.iter().map(|a| a.vectorize()).collect();
        let stacked = CMatrix::hcat(&vecs.iter().collect::<Vec<_>>())?;
        if backend::rank(&stacked, tol) < d {
            return Err(Error::DependentImages);
        }
    } else if d > 0 {
        // Degenerate blocks can only carry the zero corner, which is
        // dependent as soon as d ≥ 1.
        return Err(Error::DependentImages);
    }

    let n = h1 + h2;
    let sqrt_d = (d as f64).sqrt();
    // Basis order of `ux_algebra`: [P₁, P₂/√d, x₁, …, x_d].
    let mut images = Vec::with_capacity(d + 2);
    let mut p1 = CMatrix::zeros(n, n);
    for i in 0..h1 {
        p1.set(i, i, num_complex::Complex64::ONE);
    }
    images.push(p1);
    let mut p2 = CMatrix::zeros(n, n);
    for i in 0..h2 {
        p2.set(h1 + i, h1 + i, num_complex::Complex64::ONE);
    }
    images.push(p2.scaled((1.0 / sqrt_d).into()));
    for a in alphas {
        let mut m = CMatrix::zeros(n, n);
        m.set_block(0, h1, a);
        images.push(m);
    }
    Representation::new(algebra.clone(), images, tol)
}

/// Closed-form one-sided classification of a corner tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UxSemiCriteria {
    /// Joint range `Σ ran αⱼ` is a proper subspace of `H₁`.
    pub semigenerator: bool,
    /// Joint kernel `∩ ker αⱼ` is nonzero.
    pub semicogenerator: bool,
}

/// Evaluates the closed-form criteria: semigenerator ⟺ the side-by-side
/// matrix `[α₁ | … | α_d]` has rank `< h₁`; semicogenerator ⟺ the stacked
/// matrix has rank `< h₂`.
pub fn ux_semi_criteria(alphas: &[CMatrix], tol: Tolerance) -> Result<UxSemiCriteria> {
    let first = alphas.first().ok_or(Error::EmptyInput("corner images"))?;
    let (h1, h2) = first.shape();
    let refs: Vec<&CMatrix> = alphas.iter().collect();
    let joint_range_rank = if h1 == 0 {
        0
    } else {
        backend::rank(&CMatrix::hcat(&refs)?, tol)
    };
    let joint_kernel_rank = if h2 == 0 {
        0
    } else {
        backend::rank(&CMatrix::vcat(&refs)?, tol)
    };
    Ok(UxSemiCriteria {
        semigenerator: joint_range_rank < h1,
        semicogenerator: joint_kernel_rank < h2,
    })
}

/// Closed-form commutant of a `U(X)` module: the block-diagonal pairs
/// intertwining every corner.  Self-tested on every call against the
/// kernel-based commutant of the image span.
pub fn ux_commutant_closed_form(
    algebra: &Arc<MatrixAlgebra>,
    alphas: &[CMatrix],
    tol: Tolerance,
) -> Result<OperatorSubspace> {
    let pairs = intertwining_pairs(alphas, tol)?;
    let rep = build_ux(algebra, alphas, tol)?;
    let engine = commutant::commutant(rep.images(), tol)?;
    if !pairs.equal(&engine, tol) {
        return Err(Error::Verification(format!(
            "corner-space commutant closed form (dim {}) disagrees with the \
             kernel engine (dim {})",
            pairs.dim(),
            engine.dim()
        )));
    }
    Ok(pairs)
}

/// The comparison family used for validating the one-sided criteria: the
/// module itself plus the left-block and right-block members (on which the
/// corner space acts as zero).
pub fn ux_family(
    algebra: &Arc<MatrixAlgebra>,
    h: &Representation,
    jb: usize,
    jc: usize,
    tol: Tolerance,
) -> Result<ModuleFamily> {
    let d = algebra.dim() - 2;
    let btype = build_ux_block(algebra, d, jb, 0, tol)?;
    let ctype = build_ux_block(algebra, d, 0, jc, tol)?;
    ModuleFamily::from_members(
        "corner-space",
        vec![
            ("self".into(), h.clone()),
            ("left-block".into(), btype),
            ("right-block".into(), ctype),
        ],
        tol,
    )
}

/// A block-only module: the corner space acts as zero between blocks of
/// dimensions `h1` and `h2`.
fn build_ux_block(
    algebra: &Arc<MatrixAlgebra>,
    d: usize,
    h1: usize,
    h2: usize,
    tol: Tolerance,
) -> Result<Representation> {
    let n = h1 + h2;
    let sqrt_d = (d as f64).sqrt();
    let mut images = Vec::with_capacity(d + 2);
    let mut p1 = CMatrix::zeros(n, n);
    for i in 0..h1 {
        p1.set(i, i, num_complex::Complex64::ONE);
    }
    images.push(p1);
    let mut p2 = CMatrix::zeros(n, n);
    for i in 0..h2 {
        p2.set(h1 + i, h1 + i, num_complex::Complex64::ONE);
    }
    images.push(p2.scaled((1.0 / sqrt_d).into()));
    for _ in 0..d {
        images.push(CMatrix::zeros(n, n));
    }
    Representation::new(algebra.clone(), images, tol)
}

/// Corner tuples `αⱼ = S^j` for the lower shift `S` on `C^n` — a standard
/// source of joint-range- and joint-kernel-deficient examples.
pub fn shift_power_alphas(d: usize, n: usize) -> Vec<CMatrix> {
    let mut shift = CMatrix::zeros(n, n);
    for i in 0..n.saturating_sub(1) {
        shift.set(i + 1, i, num_complex::Complex64::ONE);
    }
    let mut out = Vec::with_capacity(d);
    let mut power = shift.clone();
    for _ in 0..d {
        out.push(power.clone());
        power = power.matmul(&shift);
    }
    out
}

/// Random corner tuple with a prescribed common kernel dimension: each
/// `αⱼ = gⱼ · P` where `P` projects onto a fixed coordinate subspace, so
/// the tuple's joint kernel contains the complementary coordinates.
pub fn common_kernel_alphas<R: Rng>(
    d: usize,
    h1: usize,
    h2: usize,
    kernel_dim: usize,
    rng: &mut R,
) -> Vec<CMatrix> {
    let keep = h2.saturating_sub(kernel_dim);
    (0..d)
        .map(|_| {
            let g = crate::linalg::random::ginibre(h1, h2, rng);
            CMatrix::from_fn(h1, h2, |i, j| {
                if j < keep {
                    g.at(i, j)
                } else {
                    num_complex::Complex64::ZERO
                }
            })
        })
        .collect()
}
