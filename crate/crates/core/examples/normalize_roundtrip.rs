//! Conjugates the standard lift by random unit vectors and normalizes it back.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sl2lift::lift::{conjugate, normalize, random_ext_element, rotate, roundtrip_report, standard_lift, LiftParams};

fn main() -> sl2lift::Result<()> {
    let params = LiftParams::group_ring(3, 2)?;
    let o = standard_lift(&params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let ys: Vec<_> = (0..params.kappa()).map(|_| random_ext_element(&params, &mut rng)).collect();
    let c = conjugate(&params, &o, &ys)?;
    println!("conjugate differs: {}", c != o);
    println!("normalize(conjugate) = standard: {}", normalize(&params, &c)? == o);
    println!("normalize(rotate by 1) = standard: {}", normalize(&params, &rotate(&params, &o, 1)?)? == o);

    let rep = roundtrip_report(&params, 25, 7)?;
    println!("{} checks, pass = {}", rep.checks.len(), rep.pass);
    Ok(())
}
