//! Module maps (intertwiners) between representations of one algebra, and
//! the unitary-equivalence probe built on top of them.
//!
//! Run with `cargo run --example intertwiners`.

use opalg::families::t2;
use opalg::hilbmod::{EquivVerdict, Representation};
use opalg::linalg::{CMatrix, Tolerance};

fn main() -> opalg::error::Result<()> {
    let tol = Tolerance::default();
    let algebra = t2::t2_algebra(tol)?;

    // Three modules over the 2x2 upper-triangular algebra: a two-sided one
    // with corner 1/2, and the two one-sided kinds.
    let h = t2::build_t2(&algebra, &CMatrix::from_real_rows(&[vec![0.5]])?, tol)?;
    let b = t2::build_t2_kind(&algebra, t2::T2Kind::B, None, Some(2), tol)?;
    let c = t2::build_t2_kind(&algebra, t2::T2Kind::C, None, Some(2), tol)?;

    println!("Hom spaces between two-block modules (dimensions):");
    println!("  Hom(B2 -> H)  = {}", b.intertwiners(&h, tol)?.dim());
    println!("  Hom(H  -> B2) = {}", h.intertwiners(&b, tol)?.dim());
    println!("  Hom(C2 -> H)  = {}", c.intertwiners(&h, tol)?.dim());
    println!("  Hom(H  -> C2) = {}", h.intertwiners(&c, tol)?.dim());
    println!("  Hom(B2 -> C2) = {}", b.intertwiners(&c, tol)?.dim());

    // Maps whose adjoints are also module maps form a smaller space.
    let all = h.intertwiners(&h, tol)?;
    let adjointable = h.adjointable_intertwiners(&h, tol)?;
    println!(
        "endomorphisms of H: {} of which {} are adjointable",
        all.dim(),
        adjointable.dim()
    );

    // Unitary equivalence is decided by traces of words in the images and
    // their adjoints.  H (corner 1/2) and the direct sum of the two
    // one-dimensional one-sided modules act on spaces of the same dimension
    // but differ in the corner, which a short word detects.
    let describe = |label: &str, v: EquivVerdict| match v {
        EquivVerdict::Equivalent { certified } => {
            println!("{label}: equivalent (certified: {certified})")
        }
        EquivVerdict::NotEquivalent { witness_word_len } => {
            println!("{label}: not equivalent (word of length {witness_word_len} differs)")
        }
        EquivVerdict::Inconclusive => println!("{label}: inconclusive"),
    };
    describe("H vs H         ", h.unitarily_equivalent(&h, 4, 50, 7, tol)?);
    let b1 = t2::build_t2_kind(&algebra, t2::T2Kind::B, None, Some(1), tol)?;
    let c1 = t2::build_t2_kind(&algebra, t2::T2Kind::C, None, Some(1), tol)?;
    let split = Representation::direct_sum(&[&b1, &c1], tol)?;
    describe(
        "H vs B1 (+) C1 ",
        h.unitarily_equivalent(&split, 4, 50, 7, tol)?,
    );
    Ok(())
}
