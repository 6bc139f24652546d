//! Representations of matrix algebras as Hilbert modules.
//!
//! A [`Representation`] stores the images `ρ(b₁)…ρ(b_d)` of a reference
//! algebra's basis under a homomorphism `ρ : A → B(C^k)`; multiplicativity is
//! validated at construction against the algebra's structure constants.  The
//! module-theoretic toolkit lives here: intertwiner (module-map) spaces and
//! their adjointable refinement, trace and reject submodules, direct sums and
//! multiples, cyclic submodules, restriction and quotient along invariant
//! subspaces, and randomized unitary/quasi-equivalence tests based on traces
//! of words in the images and their adjoints.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{close_under_products, MatrixAlgebra};
use crate::commutant::{self, DcpVerdict};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, OperatorSubspace, Subspace, Tolerance};

/// A validated homomorphism from a reference algebra into `B(C^k)`, i.e. a
/// Hilbert module over that algebra.
#[derive(Clone, Debug)]
pub struct Representation {
    algebra: Arc<MatrixAlgebra>,
    dim_h: usize,
    images: Vec<CMatrix>,
}

impl Representation {
    /// Wraps basis images as a representation, validating multiplicativity:
    /// `ρ(bᵢ)ρ(bⱼ)` must match the structure-constant expansion
    /// `Σₖ c[i][j][k] ρ(bₖ)` within tolerance.
    pub fn new(
        algebra: Arc<MatrixAlgebra>,
        images: Vec<CMatrix>,
        tol: Tolerance,
    ) -> Result<Self> {
        if images.len() != algebra.dim() {
            return Err(Error::InvalidRepresentation(format!(
                "expected one image per basis element ({}), got {}",
                algebra.dim(),
                images.len()
            )));
        }
        let dim_h = images.first().map_or(0, |m| m.rows());
        for m in &images {
            if m.rows() != dim_h || m.cols() != dim_h {
                return Err(Error::InvalidRepresentation(format!(
                    "images must all be {dim_h}x{dim_h}; found {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let rep = Representation {
            algebra,
            dim_h,
            images,
        };
        rep.validate_multiplicativity(tol)?;
        Ok(rep)
    }

    fn validate_multiplicativity(&self, tol: Tolerance) -> Result<()> {
        let d = self.algebra.dim();
        for i in 0..d {
            for j in 0..d {
                let product = self.images[i].matmul(&self.images[j]);
                let mut expansion = CMatrix::zeros(self.dim_h, self.dim_h);
                for k in 0..d {
                    let c = self.algebra.structure()[i][j][k];
                    if c != Complex64::ZERO {
                        expansion = expansion.add(&self.images[k].scaled(c));
                    }
                }
                let residual = product.sub(&expansion).norm();
                if residual > tol.match_abs * product.norm().max(1.0) {
                    return Err(Error::InvalidRepresentation(format!(
                        "images are not multiplicative on basis pair ({i}, {j}): \
                         residual {residual:.3e}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The representation of the algebra on its own ambient space, sending
    /// each basis element to itself.
    pub fn identity_rep(algebra: Arc<MatrixAlgebra>) -> Self {
        let images = algebra.basis_mats().to_vec();
        let dim_h = algebra.ambient_dim();
        Representation {
            algebra,
            dim_h,
            images,
        }
    }

    /// Builds the algebra generated by `gens` together with the
    /// representation determined by `gens[i] ↦ images[i]`, if that
    /// prescription extends to a homomorphism.
    ///
    /// The construction pairs each generator with its prescribed image in a
    /// block diagonal and closes the paired set under products.  The paired
    /// closure projects onto the generated algebra; the prescription is a
    /// homomorphism exactly when that projection is injective, i.e. when the
    /// two closures have equal dimension, in which case the closure is the
    /// graph of the homomorphism and the remaining basis images are read off
    /// by solving for first components.
    pub fn from_generator_images(
        gens: &[CMatrix],
        images: &[CMatrix],
        tol: Tolerance,
    ) -> Result<(Arc<MatrixAlgebra>, Representation)> {
        if gens.is_empty() {
            return Err(Error::EmptyInput("generator/image lists"));
        }
        if gens.len() != images.len() {
            return Err(Error::InvalidRepresentation(format!(
                "{} generators but {} images",
                gens.len(),
                images.len()
            )));
        }
        let h = images[0].rows();
        for img in images {
            if img.rows() != h || img.cols() != h {
                return Err(Error::InvalidRepresentation(
                    "images must be square matrices of one size".into(),
                ));
            }
        }
        let algebra = Arc::new(MatrixAlgebra::generate(gens, tol)?);
        let m = algebra.ambient_dim();
        let paired: Vec<CMatrix> = gens
            .iter()
            .zip(images)
            .map(|(g, a)| CMatrix::direct_sum(&[g, a]))
            .collect();
        let paired_span = OperatorSubspace::span_with_shape(m + h, m + h, &paired, tol)?;
        let paired_closed = close_under_products(&paired_span, tol)?;
        if paired_closed.dim() != algebra.dim() {
            return Err(Error::InvalidRepresentation(format!(
                "the prescribed images do not define a homomorphism: pairing \
                 generators with images closes at dimension {} while the \
                 algebra has dimension {}",
                paired_closed.dim(),
                algebra.dim()
            )));
        }
        // Solve, for each algebra basis element b, for the unique element of
        // the paired closure whose first block is b; its second block is ρ(b).
        let d = algebra.dim();
        let first_blocks: Vec<CMatrix> = paired_closed
            .basis()
            .iter()
            .map(|f| f.block(0, 0, m, m))
            .collect();
        let second_blocks: Vec<CMatrix> = paired_closed
            .basis()
            .iter()
            .map(|f| f.block(m, m, h, h))
            .collect();
        let first_vecs: Vec<CMatrix> = first_blocks.iter().map(|b| b.vectorize()).collect();
        let system = CMatrix::hcat(&first_vecs.iter().collect::<Vec<_>>())?;
        let mut rep_images = Vec::with_capacity(d);
        for b in algebra.basis_mats() {
            let rhs = b.vectorize();
            let (coords, residual) =
                crate::linalg::backend::least_squares(&system, &rhs, tol);
            if residual > tol.match_abs * rhs.norm().max(1.0) {
                return Err(Error::InvalidRepresentation(
                    "paired closure does not project onto the algebra; \
                     the prescription is inconsistent"
                        .into(),
                ));
            }
            let mut img = CMatrix::zeros(h, h);
            for (i, blk) in second_blocks.iter().enumerate() {
                img = img.add(&blk.scaled(coords.at(i, 0)));
            }
            rep_images.push(img);
        }
        let rep = Representation::new(algebra.clone(), rep_images, tol)?;
        // The prescription itself must be reproduced.
        for (g, prescribed) in gens.iter().zip(images) {
            let (coords, residual) = algebra.coordinates_of(g)?;
            if residual > tol.match_abs * g.norm().max(1.0) {
                return Err(Error::Verification(
                    "generator fell outside its own generated algebra".into(),
                ));
            }
            let realized = rep.apply(&coords);
            if realized.sub(prescribed).norm() > tol.match_abs * prescribed.norm().max(1.0) {
                return Err(Error::InvalidRepresentation(
                    "prescribed images are inconsistent across dependent generators".into(),
                ));
            }
        }
        Ok((algebra, rep))
    }

    /// The reference algebra.
    pub fn algebra(&self) -> &MatrixAlgebra {
        &self.algebra
    }

    /// Shared handle to the reference algebra.
    pub fn algebra_arc(&self) -> Arc<MatrixAlgebra> {
        self.algebra.clone()
    }

    /// Dimension of the module (the space the algebra acts on).
    pub fn dim_h(&self) -> usize {
        self.dim_h
    }

    /// Images of the algebra basis elements, in basis order.
    pub fn images(&self) -> &[CMatrix] {
        &self.images
    }

    /// Applies `ρ` to the algebra element with the given basis coordinates.
    pub fn apply(&self, coords: &[Complex64]) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim_h, self.dim_h);
        for (c, img) in coords.iter().zip(&self.images) {
            if *c != Complex64::ZERO {
                out = out.add(&img.scaled(*c));
            }
        }
        out
    }

    /// The linear span of the images — `ρ(A)` as an operator subspace.
    pub fn image_space(&self, tol: Tolerance) -> Result<OperatorSubspace> {
        OperatorSubspace::span_with_shape(self.dim_h, self.dim_h, &self.images, tol)
    }

    fn check_same_algebra(&self, other: &Representation, tol: Tolerance) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra)
            || self.algebra.same_as(&other.algebra, tol)
        {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Whether the map `A → B(H)` is injective.
    pub fn is_faithful(&self, tol: Tolerance) -> bool {
        if self.algebra.dim() == 0 {
            return true;
        }
        let vecs: Vec<CMatrix> = self.images.iter().map(|m| m.vectorize()).collect();
        let stacked = match CMatrix::hcat(&vecs.iter().collect::<Vec<_>>()) {
            Ok(s) => s,
            Err(_) => return false,
        };
        crate::linalg::backend::rank(&stacked, tol) == self.algebra.dim()
    }

    /// Whether `span{ρ(a)ξ : a ∈ A, ξ ∈ H}` is all of `H`.
    pub fn is_nondegenerate(&self, tol: Tolerance) -> bool {
        if self.dim_h == 0 {
            return true;
        }
        let refs: Vec<&CMatrix> = self.images.iter().collect();
        let stacked = match CMatrix::hcat(&refs) {
            Ok(s) => s,
            Err(_) => return false,
        };
        crate::linalg::backend::rank(&stacked, tol) == self.dim_h
    }

    /// Double-commutant verdict for the image span.
    pub fn dcp_verdict(&self, tol: Tolerance) -> Result<DcpVerdict> {
        let span = self.image_space(tol)?;
        commutant::dcp_check_space(&span, tol)
    }

    /// Orthonormal basis of the module maps `self → other`:
    /// `{T : T ρ_self(b) = ρ_other(b) T for every basis element b}`.
    pub fn intertwiners(
        &self,
        other: &Representation,
        tol: Tolerance,
    ) -> Result<OperatorSubspace> {
        self.check_same_algebra(other, tol)?;
        intertwiner_space(&self.images, &other.images, tol)
    }

    /// Orthonormal basis of the adjointable module maps `self → other`:
    /// those `T` for which `T*` is also a module map.
    ///
    /// Two independent computations are performed — the direct kernel over
    /// the images and their adjoints, and the intertwiners of the matched
    /// star-closure actions obtained by closing paired block diagonals — and
    /// compared; disagreement reports an internal verification error.
    pub fn adjointable_intertwiners(
        &self,
        other: &Representation,
        tol: Tolerance,
    ) -> Result<OperatorSubspace> {
        self.check_same_algebra(other, tol)?;
        // Route 1: T intertwines every image and every image adjoint.
        let mut left = self.images.clone();
        let mut right = other.images.clone();
        for img in &self.images {
            left.push(img.adjoint());
        }
        for img in &other.images {
            right.push(img.adjoint());
        }
        let direct = intertwiner_space(&left, &right, tol)?;

        // Route 2: close the paired block-diagonal actions under products
        // (the paired set is adjoint-closed, so the closure is a matched
        // basis of both star-closures) and intertwine the matched blocks.
        let (hh, kk) = (self.dim_h, other.dim_h);
        let mut paired: Vec<CMatrix> = Vec::with_capacity(2 * self.images.len());
        for (a, b) in self.images.iter().zip(&other.images) {
            paired.push(CMatrix::direct_sum(&[a, b]));
            paired.push(CMatrix::direct_sum(&[&a.adjoint(), &b.adjoint()]));
        }
        let span = OperatorSubspace::span_with_shape(hh + kk, hh + kk, &paired, tol)?;
        let closed = close_under_products(&span, tol)?;
        let first: Vec<CMatrix> = closed.basis().iter().map(|f| f.block(0, 0, hh, hh)).collect();
        let second: Vec<CMatrix> = closed
            .basis()
            .iter()
            .map(|f| f.block(hh, hh, kk, kk))
            .collect();
        let via_closure = intertwiner_space(&first, &second, tol)?;

        if !direct.equal(&via_closure, tol) {
            return Err(Error::Verification(format!(
                "adjointable-map computations disagree: direct kernel has \
                 dimension {}, star-closure route has dimension {}",
                direct.dim(),
                via_closure.dim()
            )));
        }
        Ok(direct)
    }

    /// The trace submodule `Tr_self(source) ⊆ self`: the span of the ranges
    /// of all module maps `source → self`.
    pub fn trace_from(&self, source: &Representation, tol: Tolerance) -> Result<Subspace> {
        let homs = source.intertwiners(self, tol)?;
        if homs.dim() == 0 {
            return Ok(Subspace::zero(self.dim_h));
        }
        let mats: Vec<&CMatrix> = homs.basis().iter().collect();
        let stacked = CMatrix::hcat(&mats)?;
        Ok(Subspace::column_space(&stacked, tol))
    }

    /// The reject submodule `Rej ⊆ self`: the intersection of the kernels of
    /// all module maps `self → target`.
    pub fn reject_into(&self, target: &Representation, tol: Tolerance) -> Result<Subspace> {
        let homs = self.intertwiners(target, tol)?;
        if homs.dim() == 0 {
            return Ok(Subspace::full(self.dim_h));
        }
        let mats: Vec<&CMatrix> = homs.basis().iter().collect();
        let stacked = CMatrix::vcat(&mats)?;
        let (_, null) = crate::linalg::backend::rank_nullspace(&stacked, tol);
        Subspace::from_spanning(&null, self.dim_h, tol)
    }

    /// Block-diagonal direct sum of representations of one algebra.
    pub fn direct_sum(reps: &[&Representation], tol: Tolerance) -> Result<Representation> {
        let first = *reps.first().ok_or(Error::EmptyInput("direct sum of no modules"))?;
        for r in &reps[1..] {
            first.check_same_algebra(r, tol)?;
        }
        let d = first.algebra.dim();
        let mut images = Vec::with_capacity(d);
        for i in 0..d {
            let blocks: Vec<&CMatrix> = reps.iter().map(|r| &r.images[i]).collect();
            images.push(CMatrix::direct_sum(&blocks));
        }
        Representation::new(first.algebra.clone(), images, tol)
    }

    /// The `k`-fold multiple of the module (ampliation of every image).
    pub fn multiple(&self, k: usize, tol: Tolerance) -> Result<Representation> {
        if k == 0 {
            return Err(Error::ZeroMultiple);
        }
        let images = self
            .images
            .iter()
            .map(|m| m.ampliate(k))
            .collect::<Result<Vec<_>>>()?;
        Representation::new(self.algebra.clone(), images, tol)
    }

    /// The cyclic submodule generated by `x`: the span of the orbit
    /// `{ρ(b)x}`, including `x` itself unless `strict` is set.  The inclusive
    /// convention matches algebras with an identity element, where the orbit
    /// always recovers `x`; `strict` is the right choice for algebras
    /// without one.
    pub fn cyclic_submodule(&self, x: &CMatrix, strict: bool, tol: Tolerance) -> Result<Subspace> {
        if x.rows() != self.dim_h || x.cols() != 1 {
            return Err(Error::ShapeMismatch(format!(
                "cyclic vector must be {}x1, got {}x{}",
                self.dim_h,
                x.rows(),
                x.cols()
            )));
        }
        if x.norm() == 0.0 {
            return Err(Error::ZeroVector("cyclic submodule generator"));
        }
        let mut spanning: Vec<CMatrix> = self.images.iter().map(|m| m.matmul(x)).collect();
        if !strict {
            spanning.push(x.clone());
        }
        Subspace::from_spanning(&spanning, self.dim_h, tol)
    }

    /// Whether `x` lies in the strict orbit span `{ρ(b)x}`.  Always true for
    /// algebras with an identity acting nondegenerately; can fail otherwise.
    pub fn cyclic_membership(&self, x: &CMatrix, tol: Tolerance) -> Result<bool> {
        let orbit = self.cyclic_submodule(x, true, tol)?;
        Ok(orbit.contains(x, tol))
    }

    /// Compression of the action to an invariant subspace, in the subspace's
    /// orthonormal coordinates.
    pub fn restrict(&self, w: &Subspace, tol: Tolerance) -> Result<Representation> {
        self.check_invariant(w, tol)?;
        let b = w.basis();
        let images = self
            .images
            .iter()
            .map(|m| b.adjoint().matmul(&m.matmul(b)))
            .collect();
        Representation::new(self.algebra.clone(), images, tol)
    }

    /// The quotient module by an invariant subspace, realized on the
    /// orthogonal complement `W^⊥` with the compressed action
    /// `P_{W^⊥} ρ(·)|_{W^⊥}`.  Invariance of `W` makes every image
    /// block-upper-triangular with respect to `W ⊕ W^⊥`, which is exactly
    /// why the compression is again multiplicative.
    pub fn quotient(&self, w: &Subspace, tol: Tolerance) -> Result<Representation> {
        self.check_invariant(w, tol)?;
        let q = w.orthocomplement(tol);
        let b = q.basis();
        let images = self
            .images
            .iter()
            .map(|m| b.adjoint().matmul(&m.matmul(b)))
            .collect();
        Representation::new(self.algebra.clone(), images, tol)
    }

    fn check_invariant(&self, w: &Subspace, tol: Tolerance) -> Result<()> {
        if w.ambient_dim() != self.dim_h {
            return Err(Error::ShapeMismatch(format!(
                "subspace lives in C^{}, module in C^{}",
                w.ambient_dim(),
                self.dim_h
            )));
        }
        for m in &self.images {
            for v in w.basis_vectors() {
                let image = m.matmul(&v);
                if !w.contains(&image, tol) {
                    return Err(Error::NotInvariant(format!(
                        "subspace is not invariant: an image moves a basis \
                         vector out of it by {:.3e}",
                        w.distance(&image)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Letters for word-trace comparisons: the images followed by their
    /// adjoints, in matching order across representations.
    fn letters(&self) -> Vec<CMatrix> {
        let mut l = self.images.clone();
        for m in &self.images {
            l.push(m.adjoint());
        }
        l
    }

    /// Randomized unitary-equivalence test via traces of words in the images
    /// and their adjoints.
    ///
    /// Unitary module maps are automatically maps for the star-closure
    /// actions, so two modules are unitarily equivalent exactly when the
    /// letter tuples (images and adjoints) are simultaneously unitarily
    /// similar — which is decided by equality of all word traces.  All words
    /// up to length 3 are checked exhaustively (capped for large alphabets),
    /// then `samples` random words of length up to `word_len`.  A trace
    /// mismatch is a definitive "no"; agreement is certified only when the
    /// exhaustive length reaches `2·dim²`, and is otherwise reported as
    /// heuristic.
    pub fn unitarily_equivalent(
        &self,
        other: &Representation,
        word_len: usize,
        samples: usize,
        seed: u64,
        tol: Tolerance,
    ) -> Result<EquivVerdict> {
        self.check_same_algebra(other, tol)?;
        if self.dim_h != other.dim_h {
            return Ok(EquivVerdict::NotEquivalent {
                witness_word_len: 0,
            });
        }
        if self.dim_h == 0 {
            return Ok(EquivVerdict::Equivalent { certified: true });
        }
        let lh = self.letters();
        let lk = other.letters();
        let alphabet = lh.len();
        let trace_scale = |a: Complex64, b: Complex64| a.norm().max(b.norm()).max(1.0);

        // Exhaustive short words (length 1..=3, capped by alphabet growth).
        let mut exhaustive_len = 3usize;
        while exhaustive_len > 1 && alphabet.pow(exhaustive_len as u32) > 20_000 {
            exhaustive_len -= 1;
        }
        let mut words_checked = 0usize;
        let mut stack: Vec<(CMatrix, CMatrix, usize)> = vec![(
            CMatrix::identity(self.dim_h),
            CMatrix::identity(other.dim_h),
            0,
        )];
        while let Some((wh, wk, len)) = stack.pop() {
            if len > 0 {
                words_checked += 1;
                let th = wh.trace();
                let tk = wk.trace();
                if (th - tk).norm() > tol.match_abs * trace_scale(th, tk) {
                    return Ok(EquivVerdict::NotEquivalent {
                        witness_word_len: len,
                    });
                }
            }
            if len < exhaustive_len {
                for i in 0..alphabet {
                    stack.push((wh.matmul(&lh[i]), wk.matmul(&lk[i]), len + 1));
                }
            }
        }

        // Random longer words.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let max_len = word_len.max(exhaustive_len);
        for _ in 0..samples {
            let len = rng.random_range(exhaustive_len + 1..=max_len.max(exhaustive_len + 1));
            let mut wh = CMatrix::identity(self.dim_h);
            let mut wk = CMatrix::identity(other.dim_h);
            for _ in 0..len {
                let i = rng.random_range(0..alphabet);
                wh = wh.matmul(&lh[i]);
                wk = wk.matmul(&lk[i]);
            }
            words_checked += 1;
            let th = wh.trace();
            let tk = wk.trace();
            if (th - tk).norm() > tol.match_abs * trace_scale(th, tk) {
                return Ok(EquivVerdict::NotEquivalent {
                    witness_word_len: len,
                });
            }
        }

        if words_checked == 0 {
            return Ok(EquivVerdict::Inconclusive);
        }
        let certified = alphabet.pow(exhaustive_len as u32) >= alphabet.pow(1)
            && exhaustive_len >= 2 * self.dim_h * self.dim_h;
        Ok(EquivVerdict::Equivalent { certified })
    }

    /// Bounded search for quasi-equivalence: multiples `self^k` and
    /// `other^l` with matching dimensions are compared for unitary
    /// equivalence, for `k, l ≤ max_mult`.
    pub fn quasi_equivalent(
        &self,
        other: &Representation,
        max_mult: usize,
        word_len: usize,
        samples: usize,
        seed: u64,
        tol: Tolerance,
    ) -> Result<QuasiVerdict> {
        if max_mult == 0 {
            return Err(Error::InvalidInput("max_mult must be at least 1".into()));
        }
        self.check_same_algebra(other, tol)?;
        for k in 1..=max_mult {
            for l in 1..=max_mult {
                if k * self.dim_h != l * other.dim_h {
                    continue;
                }
                let a = self.multiple(k, tol)?;
                let b = other.multiple(l, tol)?;
                match a.unitarily_equivalent(&b, word_len, samples, seed, tol)? {
                    EquivVerdict::Equivalent { certified } => {
                        return Ok(QuasiVerdict::Equivalent { k, l, certified });
                    }
                    EquivVerdict::NotEquivalent { .. } | EquivVerdict::Inconclusive => {}
                }
            }
        }
        Ok(QuasiVerdict::NotFound { max_mult })
    }
}

/// Verdict of the randomized unitary-equivalence test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum EquivVerdict {
    /// All compared word traces agree.  `certified` is set only when the
    /// exhaustive word length reached the similarity bound `2·dim²`;
    /// otherwise the verdict is heuristic evidence.
    Equivalent { certified: bool },
    /// A word trace differs — definitive.
    NotEquivalent { witness_word_len: usize },
    /// No informative comparison was possible.
    Inconclusive,
}

/// Verdict of the bounded quasi-equivalence search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum QuasiVerdict {
    /// `self^k` and `other^l` compare as unitarily equivalent.
    Equivalent { k: usize, l: usize, certified: bool },
    /// No multiple pair up to the bound compared as equivalent.
    NotFound { max_mult: usize },
}

/// Kernel solve for `{T : T aᵢ = bᵢ T for all i}` where `T` maps the space
/// `a` acts on into the space `b` acts on.
fn intertwiner_space(
    a: &[CMatrix],
    b: &[CMatrix],
    tol: Tolerance,
) -> Result<OperatorSubspace> {
    if a.len() != b.len() {
        return Err(Error::ShapeMismatch(
            "intertwiner solve needs matched operator lists".into(),
        ));
    }
    let ha = a.first().map_or(0, |m| m.rows());
    let hb = b.first().map_or(0, |m| m.rows());
    if a.is_empty() {
        return Err(Error::EmptyInput("intertwiner solve over no operators"));
    }
    let id_a = CMatrix::identity(ha);
    let id_b = CMatrix::identity(hb);
    let mut blocks = Vec::with_capacity(a.len());
    for (ai, bi) in a.iter().zip(b) {
        // vec(T aᵢ − bᵢ T) = (aᵢᵀ ⊗ I_hb − I_ha ⊗ bᵢ) vec T
        let block = ai.transpose().kron(&id_b).sub(&id_a.kron(bi));
        blocks.push(block);
    }
    let refs: Vec<&CMatrix> = blocks.iter().collect();
    let stacked = CMatrix::vcat(&refs)?;
    let (_, null) = crate::linalg::backend::rank_nullspace(&stacked, tol);
    let basis = null
        .iter()
        .map(|v| CMatrix::from_vectorized(v, hb, ha))
        .collect::<Result<Vec<_>>>()?;
    Ok(OperatorSubspace::from_orthonormal(hb, ha, basis))
}
