//! Builds the standard self-dual lift of the blocks of F_q Δ₂(q) and verifies it.

use sl2lift::lift::{standard_lift, verify_lift, LiftParams};

fn main() -> sl2lift::Result<()> {
    for (p, f) in [(2, 2), (3, 1), (3, 2)] {
        let params = LiftParams::group_ring(p, f)?;
        let o = standard_lift(&params)?;
        let rep = verify_lift(&o, &params)?;
        println!("({p},{f}) {:?}: κ = {}, {} checks, pass = {}", params.variant, params.kappa(), rep.checks.len(), rep.pass);
        for row in o.rank_matrix() {
            println!("  {row:?}");
        }
    }

    let params = LiftParams::group_ring(2, 2)?;
    let o = standard_lift(&params)?;
    // canonical JSON form, one lattice basis per piece
    let json = serde_json::to_string(&o.canonical()).expect("serializes");
    println!("{}…", &json[..json.len().min(160)]);
    Ok(())
}
