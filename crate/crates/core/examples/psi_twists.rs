//! Twisting arrows by central units: s ↦ z·s.
//!
//! Twists compose as a crossed homomorphism, ψ(z)ψ(z′) = ψ(ψ(z)(z′)·z); the
//! naive ψ(zz′) is right only when ψ(z) fixes z′ (e.g. for z ∈ 1 + J(Z)).

use sl2lift::quiver::{delta_presentation, graded_quotient, psi_twist};

fn main() -> sl2lift::Result<()> {
    let alg = graded_quotient(&delta_presentation(3, 1)?)?;
    let k = alg.field().clone();
    let s = alg.arrow(0);
    let z = alg.add(&alg.add(&alg.scale(k.from_int(2), &alg.vertex(0)), &s), &alg.vertex(1));
    let z1 = alg.add(&alg.one(), &s);
    let t = psi_twist(&alg, &[z])?;
    let t1 = psi_twist(&alg, &[z1])?;
    println!("relations preserved: {} {}", t.report.pass, t1.report.pass);
    println!("ψ(z)ψ(z′) = ψ(zz′): {}", t.composes_with(&t1, &alg)?);
    println!("ψ(z)ψ(z′) = ψ(ψ(z)(z′)·z): {}", t.composes_crossed(&t1, &alg)?);
    println!("ψ(z′)ψ(z) = ψ(z′z), z′ unipotent: {}", t1.composes_with(&t, &alg)?);
    Ok(())
}
