use super::params::LiftParams;
use super::standard::order_from_pieces;
use crate::coeff::{rat, Rat};
use crate::error::{Error, Result};
use crate::lattice::{BlockOrder, Lattice};
use crate::linalg::RatVec;

fn ring_of(params: &LiftParams, o: &BlockOrder, i: usize) -> Result<Lattice> {
    let d = o.piece(i, i).ok_or_else(|| Error::Domain(format!("missing diagonal piece {i}")))?;
    let rows: Vec<RatVec> = d.basis().iter().map(|r| r[1..].to_vec()).collect();
    Lattice::from_generators(params.p, &rows, params.ext_degree())
}

/// An `x` with `l = x·R`, searched among small combinations of the basis.
pub fn principal_generator(params: &LiftParams, l: &Lattice, ring: &Lattice) -> Option<RatVec> {
    let e = params.ext_degree();
    let p = params.p as i64;
    let total = (p as usize).pow(e as u32);
    for code in 1..total {
        let mut c = code;
        let mut x = vec![rat(0, 1); e];
        for b in l.basis() {
            let t = rat((c % p as usize) as i64, 1);
            c /= p as usize;
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += &t * bi;
            }
        }
        if params.ext_inv(&x).is_none() {
            continue;
        }
        let rows: Vec<RatVec> = ring.basis().iter().map(|r| params.ext_mul(&x, r)).collect();
        let Ok(span) = Lattice::from_generators(params.p, &rows, e) else { continue };
        if &span == l {
            return Some(x);
        }
    }
    None
}

/// Conjugates `Λ` by `y = diag(y_i)` (acting on the `K̃` part) so that every
/// `[0]`-arrow piece except the exceptional one equals `ε̃·ê_iΛê_i`.
pub fn normalize(params: &LiftParams, o: &BlockOrder) -> Result<BlockOrder> {
    let k = params.kappa();
    let e = params.ext_degree();
    if o.num_idempotents() != k || o.ambient != params.ambient()? {
        return Err(Error::Shape("order is not over the lift ambient".into()));
    }
    let mut ys: Vec<RatVec> = vec![params.ext_one()];
    for i in 0..k.saturating_sub(1) {
        let ring = ring_of(params, o, i)?;
        let l = o.piece(i, i + 1).ok_or_else(|| Error::Domain(format!("missing piece ({i},{})", i + 1)))?;
        if l.dim() != e {
            return Err(Error::Domain(format!("piece ({i},{}) has the wrong rank", i + 1)));
        }
        let x = principal_generator(params, l, &ring)
            .ok_or_else(|| Error::Domain(format!("piece ({i},{}) is not principal over the diagonal", i + 1)))?;
        let xinv = params.ext_inv(&x).unwrap();
        ys.push(params.ext_mul(&ys[i], &xinv));
    }
    conjugate(params, o, &ys)
}

/// `y⁻¹·Λ·y` for `y = diag(y_i)` on the `K̃` part: piece `(i, j)` becomes `y_i⁻¹·Λ_{ij}·y_j`.
pub fn conjugate(params: &LiftParams, o: &BlockOrder, ys: &[RatVec]) -> Result<BlockOrder> {
    let k = params.kappa();
    let e = params.ext_degree();
    let mut pieces = vec![vec![Lattice::standard(params.p, 1); k]; k];
    for i in 0..k {
        let yi = params.ext_inv(&ys[i]).ok_or_else(|| Error::Domain("conjugating element is not invertible".into()))?;
        for j in 0..k {
            let l = o.piece(i, j).ok_or_else(|| Error::Domain(format!("missing piece ({i},{j})")))?;
            pieces[i][j] = if i == j {
                l.clone()
            } else {
                let s = params.ext_mul(&yi, &ys[j]);
                let rows: Vec<RatVec> = l.basis().iter().map(|b| params.ext_mul(b, &s)).collect();
                Lattice::from_generators(params.p, &rows, e)?
            };
        }
    }
    order_from_pieces(params, &pieces)
}

/// Relabels slots by `i ↦ i + shift` (vertex labels shift by `2·shift`).
pub fn rotate(params: &LiftParams, o: &BlockOrder, shift: usize) -> Result<BlockOrder> {
    let k = params.kappa();
    let mut pieces = vec![vec![Lattice::standard(params.p, 1); k]; k];
    for i in 0..k {
        for j in 0..k {
            let l = o.piece(i, j).ok_or_else(|| Error::Domain(format!("missing piece ({i},{j})")))?;
            pieces[(i + shift) % k][(j + shift) % k] = l.clone();
        }
    }
    order_from_pieces(params, &pieces)
}

/// A random `K̃`-unit times a bounded power of `p`.
pub fn random_ext_element<R: rand::Rng>(params: &LiftParams, rng: &mut R) -> RatVec {
    loop {
        let x: RatVec = (0..params.ext_degree())
            .map(|_| {
                let num = rng.gen_range(-20i64..=20);
                let den = rng.gen_range(1i64..=9);
                Rat::new(num.into(), den.into()) * crate::coeff::pow_p(params.p, rng.gen_range(-3i64..=3))
            })
            .collect();
        if params.ext_inv(&x).is_some() {
            return x;
        }
    }
}

/// Fixpoint, `trials` random diagonal conjugations and every slot rotation,
/// each normalized back and compared bitwise with the standard lift.
pub fn roundtrip_report(params: &LiftParams, trials: usize, seed: u64) -> Result<crate::report::Report> {
    use rand::SeedableRng;
    let mut rep = crate::report::Report::new(format!("roundtrip({},{})", params.p, params.f));
    let o = super::standard::standard_lift(params)?;
    rep.check("normalize fixes the standard lift", normalize(params, &o)? == o, "");
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for _ in 0..trials {
        let ys: Vec<RatVec> = (0..params.kappa()).map(|_| random_ext_element(params, &mut rng)).collect();
        if normalize(params, &conjugate(params, &o, &ys)?)? != o {
            bad += 1;
        }
    }
    rep.check("random conjugations normalize back", bad == 0, format!("{bad}/{trials} failed"));
    let bad_rot: Vec<usize> = (1..params.kappa())
        .filter(|&s| rotate(params, &o, s).and_then(|r| normalize(params, &r)).map_or(true, |n| n != o))
        .collect();
    rep.check("rotations normalize back", bad_rot.is_empty(), format!("{bad_rot:?}"));
    Ok(rep)
}
