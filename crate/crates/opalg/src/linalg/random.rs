//! Seeded samplers used by the randomized checks and the search drivers.
//!
//! Everything takes an explicit RNG so callers can thread one seed through an
//! entire run and reproduce it exactly.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::backend;
use super::cmatrix::CMatrix;

/// Standard complex Gaussian entry: real and imaginary parts are independent
/// N(0, 1/2), so the entry has unit variance.
pub fn gaussian_entry<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Matrix with independent standard complex Gaussian entries.
pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| gaussian_entry(rng))
}

/// Uniformly random unit vector in C^dim.
pub fn unit_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    loop {
        let v = ginibre(dim, 1, rng);
        let n = v.norm();
        if n > 1e-6 {
            return v.scaled(Complex64::new(1.0 / n, 0.0));
        }
    }
}

/// Haar-distributed unitary via QR of a Ginibre matrix with the standard
/// phase correction on the diagonal of R.
pub fn unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    if n == 0 {
        return CMatrix::zeros(0, 0);
    }
    let g = ginibre(n, n, rng);
    let q = backend::qr_q(&g);
    // Fix the phase ambiguity so the distribution is exactly Haar: multiply
    // each column by the phase of the corresponding diagonal entry of R.
    let r = q.adjoint().matmul(&g);
    let mut out = q;
    for j in 0..n {
        let d = r.at(j, j);
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            let v = out.at(i, j) * phase;
            out.set(i, j, v);
        }
    }
    out
}

/// Ginibre matrix rescaled to operator norm exactly 1 (a generic contraction).
pub fn contraction<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    loop {
        let g = ginibre(rows, cols, rng);
        let norm = backend::op_norm(&g);
        if norm > 1e-6 {
            return g.scaled(Complex64::new(1.0 / norm, 0.0));
        }
    }
}

/// Contraction with prescribed exact rank: `U diag(s) V*` where the kept
/// singular values lie in `[0.3, 1]` and the rest are exactly zero.
pub fn contraction_with_rank<R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    rank: usize,
    rng: &mut R,
) -> CMatrix {
    let k = rank.min(rows.min(cols));
    let u = unitary(rows, rng);
    let v = unitary(cols, rng);
    let mut sigma = CMatrix::zeros(rows, cols);
    for i in 0..k {
        let s = if i == 0 { 1.0 } else { rng.random_range(0.3..1.0) };
        sigma.set(i, i, Complex64::new(s, 0.0));
    }
    u.matmul(&sigma).matmul(&v.adjoint())
}

/// Invertible contraction with singular values in `[sigma_min, 1]`, so rank
/// decisions stay far away from the threshold.
pub fn invertible_contraction<R: Rng + ?Sized>(n: usize, sigma_min: f64, rng: &mut R) -> CMatrix {
    let u = unitary(n, rng);
    let v = unitary(n, rng);
    let mut sigma = CMatrix::zeros(n, n);
    for i in 0..n {
        let s = if i == 0 { 1.0 } else { rng.random_range(sigma_min..1.0) };
        sigma.set(i, i, Complex64::new(s, 0.0));
    }
    u.matmul(&sigma).matmul(&v.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let u = unitary(4, &mut rng);
        let gram = u.adjoint().matmul(&u);
        assert!(gram.approx_eq(&CMatrix::identity(4), 1e-10));
    }

    #[test]
    fn contraction_has_unit_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let t = contraction(3, 2, &mut rng);
        assert!((backend::op_norm(&t) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn prescribed_rank_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let t = contraction_with_rank(4, 3, 2, &mut rng);
        let sv = backend::singular_values(&t);
        assert!(sv[1] > 0.29);
        assert!(sv[2] < 1e-12);
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let a = ginibre(3, 3, &mut ChaCha8Rng::seed_from_u64(42));
        let b = ginibre(3, 3, &mut ChaCha8Rng::seed_from_u64(42));
        assert!(a.approx_eq(&b, 0.0));
    }
}
