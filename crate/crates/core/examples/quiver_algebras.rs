//! Graded quotients of the quivers with relations for F_q Δ₂(q) and for
//! Koshita's algebra, with their Cartan matrices and centres.

use sl2lift::quiver::{delta_presentation, graded_quotient, koshita_presentation};

fn main() -> sl2lift::Result<()> {
    for (p, f) in [(2, 2), (3, 1), (3, 2)] {
        let alg = graded_quotient(&delta_presentation(p, f)?)?;
        println!("kΔ₂({}^{}): dim {}, by degree {:?}", p, f, alg.dim(), alg.dims_by_degree());
        for row in alg.cartan() {
            println!("  {row:?}");
        }
        let centres: Vec<_> = (0..alg.pres.num_blocks()).map(|b| alg.center_dim(b)).collect();
        println!("  centre dims per block {centres:?}");
    }

    let pres = koshita_presentation(2)?;
    let alg = graded_quotient(&pres)?;
    println!("Koshita f=2: {} vertices {:?}, dim {}", pres.vertices.len(), pres.vertices, alg.dim());
    for r in pres.relations.iter().take(4) {
        let terms: Vec<_> = r.terms.iter().map(|(_, path)| pres.path_label(path)).collect();
        println!("  {}: {}", r.label, terms.join(" ± "));
    }
    Ok(())
}
