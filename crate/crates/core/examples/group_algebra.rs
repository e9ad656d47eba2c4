//! The group algebra F_q Δ₂(q) on group elements: character idempotents,
//! the radical eigenbasis, and the isomorphism onto the quiver algebra.

use sl2lift::grpalg::{verify_group_quiver_iso, DeltaGroup};
use sl2lift::quiver::delta_presentation;

fn main() -> sl2lift::Result<()> {
    let (p, f) = (3, 2);
    let g = DeltaGroup::new(p, f)?;
    println!("|Δ₂({})| = {}, classes {}", p.pow(f), g.order(), g.class_count());
    println!("X-set {:?}", g.x_set());
    let marked = g.radical_eigenbasis().iter().filter(|e| e.marked).count();
    println!("radical eigenvectors: {} ({} marked arrows)", g.radical_eigenbasis().len(), marked);
    for row in g.cartan() {
        println!("  {row:?}");
    }
    let rep = verify_group_quiver_iso(&g, &delta_presentation(p, f)?)?;
    println!("group algebra ≅ quiver algebra: {} ({} checks)", rep.pass, rep.checks.len());
    Ok(())
}
