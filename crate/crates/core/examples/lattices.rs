//! p-local lattices in canonical form: sums, duals and the index idx.

use sl2lift::coeff::rat;
use sl2lift::lattice::{idx, Lattice};

fn main() -> sl2lift::Result<()> {
    let p = 3;
    let v = |xs: &[i64]| xs.iter().map(|&x| rat(x, 1)).collect::<Vec<_>>();
    // generators are reduced to a canonical basis, so equality is bitwise
    let a = Lattice::from_generators(p, &[v(&[2, 4]), v(&[0, 9]), v(&[6, 3])], 2)?;
    let b = Lattice::from_generators(p, &[v(&[1, 0]), v(&[0, 3])], 2)?;
    println!("a = {:?}", a.to_strings());
    println!("b = {:?}", b.to_strings());
    println!("a ⊆ b: {}, idx(b, a) = {}", b.contains_lattice(&a), idx(&b, &a)?);

    let gram = vec![v(&[2, 1]), v(&[1, 2])];
    let d = a.dual_wrt(&gram)?;
    println!("dual of a = {:?}", d.to_strings());
    println!("dual of dual = a: {}", d.dual_wrt(&gram)? == a);
    Ok(())
}
