use super::params::{LiftParams, Variant};
use super::standard::ext_product;
use crate::coeff::{rat, Rat};
use crate::error::{Error, Result};
use crate::lattice::{idx, BlockOrder, Lattice};
use crate::linalg::RatVec;
use crate::report::Report;

fn corner<'a>(o: &'a BlockOrder, i: usize, j: usize) -> Result<&'a Lattice> {
    o.piece(i, j).ok_or_else(|| Error::Domain(format!("missing piece ({i},{j})")))
}

/// Product of consecutive off-diagonal pieces along the slot steps `steps`.
fn walk(params: &LiftParams, o: &BlockOrder, i: usize, steps: &[usize]) -> Result<(Lattice, usize)> {
    let k = params.kappa();
    let mut v = i;
    let mut acc: Option<Lattice> = None;
    for &s in steps {
        let w = (v + s) % k;
        let l = corner(o, v, w)?;
        acc = Some(match acc {
            None => l.clone(),
            Some(a) => ext_product(params, &a, l),
        });
        v = w;
    }
    Ok((acc.expect("nonempty walk"), v))
}

/// All checks of the unique-lifting theorem on a candidate order.
pub fn verify_lift(o: &BlockOrder, params: &LiftParams) -> Result<Report> {
    let mut rep = Report::new(format!("verify_lift({},{})", params.p, params.f));
    let k = params.kappa();
    let e = params.ext_degree();
    if o.ambient != params.ambient()? || o.num_idempotents() != k {
        rep.check("ambient", false, "order is not over the lift ambient");
        return Ok(rep);
    }
    rep.merge(o.is_order()?);
    rep.merge(o.is_selfdual(&params.u)?);
    let expected: Vec<Vec<usize>> =
        (0..k).map(|i| (0..k).map(|j| if i == j { e + 1 } else { e }).collect()).collect();
    rep.expect_eq(if params.p == 2 { "rank_matrix=I+J" } else { "rank_matrix=I+2J" }, expected, o.rank_matrix());

    if k > 1 {
        let p = params.p as usize;
        let f = params.f as usize;
        let step = |q: usize| params.p.pow(q as u32) as usize % k;
        let mut witness_bad = Vec::new();
        let mut exact_bad = Vec::new();
        for q in 0..f {
            for i in 0..k {
                let (prod, end) = walk(params, o, i, &vec![step(q); p])?;
                let target = corner(o, i, end)?;
                let pt = target.scale(&rat(params.p as i64, 1));
                let p2t = target.scale(&rat((params.p * params.p) as i64, 1));
                if !(pt.contains_lattice(&prod) && !p2t.contains_lattice(&prod)) {
                    witness_bad.push(format!("({i},{q})"));
                }
                if prod != pt {
                    exact_bad.push(format!("({i},{q})"));
                }
            }
        }
        rep.check("a_q=1 witness: p-fold products in p·Λ, not p²·Λ", witness_bad.is_empty(), witness_bad.join(" "));
        rep.check("p-fold products equal p·Λ_(i,i+[q+1])", exact_bad.is_empty(), exact_bad.join(" "));
        let mut comm_bad = Vec::new();
        for q in 0..f {
            for r in q + 1..f {
                for i in 0..k {
                    let (a, _) = walk(params, o, i, &[step(q), step(r)])?;
                    let (b, _) = walk(params, o, i, &[step(r), step(q)])?;
                    if a != b {
                        comm_bad.push(format!("({i},{q},{r})"));
                    }
                }
            }
        }
        rep.check("arrow commutation", comm_bad.is_empty(), comm_bad.join(" "));

        // ε̃-projection of the diagonal: every piece is a fractional ideal over it
        let ring_rows: Vec<RatVec> = corner(o, 0, 0)?.basis().iter().map(|r| r[1..].to_vec()).collect();
        let ring = Lattice::from_generators(params.p, &ring_rows, e)?;
        let m = |i: usize, j: usize| -> Result<Rat> { Ok(idx(&ring, corner(o, i, j)?)? * rat(e as i64, 1)) };
        let mut pair_bad = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let s = m(i, j)? + m(j, i)?;
                if s != rat(params.f as i64, 1) {
                    pair_bad.push(format!("({i},{j}):{s}"));
                }
            }
        }
        rep.check("idx pairing m(i→j)+m(j→i) = f", pair_bad.is_empty(), pair_bad.join(" "));
    }

    let q = params.p.pow(params.f) as usize;
    let want_center = if params.p == 2 { q } else { (q + 3) / 2 };
    rep.expect_eq("center dim of Λ/pΛ", want_center, o.reduction_center_dim()?);

    let dm = o.decomposition_matrix()?;
    let mat_rows = match params.variant {
        Variant::Split => 2,
        _ => 1,
    };
    let mut shape: Vec<Vec<u32>> = (0..k).map(|i| (0..k).map(|j| u32::from(i == j)).collect()).collect();
    shape.extend((0..mat_rows).map(|_| vec![1; k]));
    rep.expect_eq("decomposition matrix shape", shape, dm.entries);
    Ok(rep)
}
