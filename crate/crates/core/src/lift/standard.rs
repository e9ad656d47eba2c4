
use super::mtable::{digits, word_orderings, MTable};
use super::params::{LiftParams, Variant};
use crate::coeff::{pow_p, rat, vp, Rat};
use crate::error::{Error, Result};
use crate::lattice::{idx, Lattice};
use crate::linalg::RatVec;

/// Lattice spanned by all products `a·b` in `K̃`.
pub fn ext_product(params: &LiftParams, a: &Lattice, b: &Lattice) -> Lattice {
    let rows: Vec<RatVec> =
        a.basis().iter().flat_map(|x| b.basis().iter().map(move |y| params.ext_mul(x, y))).collect();
    Lattice::from_generators(params.p, &rows, params.ext_degree()).expect("products of full lattices are full")
}

/// `{v ∈ K̃ : l·v ⊆ target}`.
pub fn ext_colon(params: &LiftParams, l: &Lattice, target: &Lattice) -> Result<Lattice> {
    let e = params.ext_degree();
    let unit = |s: usize| -> RatVec { (0..e).map(|t| if s == t { rat(1, 1) } else { rat(0, 1) }).collect() };
    // columns of v ↦ coordinates of x·v in the target basis, for each generator x
    let mut cols: Vec<RatVec> = Vec::new();
    for x in l.basis() {
        let images: Vec<RatVec> = (0..e).map(|s| target.coordinates(&params.ext_mul(x, &unit(s)))).collect();
        for c in 0..e {
            cols.push((0..e).map(|s| images[s][c].clone()).collect());
        }
    }
    Ok(Lattice::from_generators(params.p, &cols, e)?.std_dual())
}

fn project_ext(l: &Lattice, e: usize) -> Result<Lattice> {
    let rows: Vec<RatVec> = l.basis().iter().map(|r| r[1..].to_vec()).collect();
    Lattice::from_generators(l.p(), &rows, e)
}

/// `{y ∈ L : φ(y) ∈ O}` for a linear form with values `phi` on the basis of `L`.
fn integral_sublattice(l: &Lattice, phi: &[Rat]) -> Result<Lattice> {
    let p = l.p();
    let n = l.dim();
    let Some((v, k0)) = phi.iter().enumerate().filter_map(|(k, t)| vp(t, p).map(|v| (v, k))).min() else {
        return Ok(l.clone());
    };
    if v >= 0 {
        return Ok(l.clone());
    }
    let b = l.basis();
    let mut rows: Vec<RatVec> = Vec::new();
    for k in (0..n).filter(|&k| k != k0) {
        let r = &phi[k] / &phi[k0];
        rows.push(b[k].iter().zip(&b[k0]).map(|(x, y)| x - &r * y).collect());
    }
    let s = pow_p(p, -v);
    rows.push(b[k0].iter().map(|x| x * &s).collect());
    Lattice::from_generators(p, &rows, n)
}

/// `ê_iΛê_i` inside `K ⊕ K̃` (line coordinate first).
pub fn diagonal_piece(params: &LiftParams) -> Result<Lattice> {
    let p = params.p;
    let f = params.f as i64;
    match &params.variant {
        Variant::Char2 => {
            Lattice::from_generators(p, &[vec![rat(1, 1), rat(1, 1)], vec![rat(0, 1), pow_p(p, f)]], 2)
        }
        Variant::Split => {
            let c = params.split_c().unwrap();
            if vp(&c, p) != Some(0) {
                return Err(Error::Domain("c = u_{κ+1}/u_{κ+2} must be a unit".into()));
            }
            let h = pow_p(p, f / 2);
            Lattice::from_generators(
                p,
                &[
                    vec![rat(1, 1), rat(1, 1), rat(1, 1)],
                    vec![rat(0, 1), h.clone(), -&c * &h],
                    vec![rat(0, 1), rat(0, 1), pow_p(p, f)],
                ],
                3,
            )
        }
        Variant::Nonsplit { .. } => {
            // π^f·O[π], then the T_u-integral part of it
            let mut pif = params.ext_one();
            let pi = vec![rat(0, 1), rat(1, 1)];
            for _ in 0..f {
                pif = params.ext_mul(&pif, &pi);
            }
            let l = Lattice::from_generators(p, &[pif.clone(), params.ext_mul(&pif, &pi)], 2)?;
            let k = params.kappa();
            let amb = params.ambient()?;
            let u = &params.u.comps[k];
            let phi: Vec<Rat> = l.basis().iter().map(|y| amb.center_trace(k, u, y)).collect();
            let y0 = integral_sublattice(&l, &phi)?;
            let mut rows = vec![vec![rat(1, 1), rat(1, 1), rat(0, 1)]];
            rows.extend(y0.basis().iter().map(|y| {
                let mut r = vec![rat(0, 1)];
                r.extend(y.iter().cloned());
                r
            }));
            // closure under products of the π^f-part
            for a in y0.basis() {
                for b in y0.basis() {
                    let mut r = vec![rat(0, 1)];
                    r.extend(params.ext_mul(a, b));
                    rows.push(r);
                }
            }
            Lattice::from_generators(p, &rows, 3)
        }
    }
}

/// Intermediate data of the construction.
#[derive(Clone, Debug)]
pub struct LiftData {
    pub diagonal: Lattice,
    /// `R = ε̃·ê_iΛê_i`.
    pub ring: Lattice,
    /// `ê_iΛê_i ∩ (0 ⊕ K̃)`.
    pub radical: Lattice,
    /// `arrows[q][i] = ê_{2i}Λê_{2i+[q]}`.
    pub arrows: Vec<Vec<Lattice>>,
    /// The factorization used for `ê_0Λê_{2κ−[0]}`.
    pub completion_word: Vec<usize>,
    pub pieces: Vec<Vec<Lattice>>,
}

impl LiftData {
    /// Indices `idx(R, arrow)` in table units.
    pub fn measured_m_table(&self, params: &LiftParams) -> Result<MTable> {
        let e = params.ext_degree() as i64;
        let mut m = Vec::new();
        for row in &self.arrows {
            let mut out = Vec::new();
            for a in row {
                let v = idx(&self.ring, a)? * Rat::from_integer(e.into());
                if !v.is_integer() {
                    return Err(Error::Internal("non-integral arrow index".into()));
                }
                out.push(v.to_integer().try_into().unwrap());
            }
            m.push(out);
        }
        Ok(MTable { p: params.p, f: params.f, kappa: params.kappa(), scale: params.scale(), m })
    }

    /// `m(i→j)` of the assembled piece, in table units.
    pub fn m_piece(&self, params: &LiftParams, i: usize, j: usize) -> Result<i64> {
        let v = idx(&self.ring, &self.pieces[i][j])? * Rat::from_integer((params.ext_degree() as i64).into());
        Ok(v.to_integer().try_into().unwrap())
    }
}

/// Product of arrow pieces along `word` starting at slot `i`.
pub fn path_lattice(params: &LiftParams, arrows: &[Vec<Lattice>], ring: &Lattice, i: usize, word: &[usize]) -> Lattice {
    let k = params.kappa();
    let mut acc = ring.clone();
    let mut v = i;
    for &q in word {
        acc = ext_product(params, &acc, &arrows[q][v]);
        v = (v + params.p.pow(q as u32) as usize) % k;
    }
    acc
}

fn one_over_p_product(params: &LiftParams, factors: &[&Lattice]) -> Lattice {
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = ext_product(params, &acc, f);
    }
    acc.scale(&rat(1, params.p as i64))
}

/// `ê_{2i}Λê_{2i+[q]}` for an interval `i < i + p^q ≤ κ−1` that avoids the
/// exceptional arrow, expanded down to normalised `[0]`-arrows.
fn interval_piece(params: &LiftParams, ring: &Lattice, i: usize, q: usize) -> Lattice {
    if q == 0 {
        return ring.clone();
    }
    let step = params.p.pow(q as u32 - 1) as usize;
    let parts: Vec<Lattice> = (0..params.p as usize).map(|l| interval_piece(params, ring, i + l * step, q - 1)).collect();
    one_over_p_product(params, &parts.iter().collect::<Vec<_>>())
}

pub fn lift_data(params: &LiftParams) -> Result<LiftData> {
    let p = params.p;
    let k = params.kappa();
    let e = params.ext_degree();
    let diagonal = diagonal_piece(params)?;
    let ring = project_ext(&diagonal, e)?;
    // in Hermite form only the first row meets the line coordinate
    let radical = Lattice::from_generators(
        p,
        &diagonal.basis()[1..].iter().map(|r| r[1..].to_vec()).collect::<Vec<_>>(),
        e,
    )?;
    if k == 1 {
        return Ok(LiftData {
            pieces: vec![vec![diagonal.clone()]],
            diagonal,
            ring,
            radical,
            arrows: Vec::new(),
            completion_word: Vec::new(),
        });
    }
    // ê_0Λê_{2κ−[0]} through an exceptional-avoiding factorization
    let counts = digits(k - 1, p, params.f);
    let mut completion = None;
    let mut failed = Vec::new();
    for word in word_orderings(&counts) {
        let mut v = 0usize;
        let ok = word.iter().all(|&q| {
            v += p.pow(q as u32) as usize;
            v <= k - 1
        });
        if ok {
            completion = Some(word);
            break;
        }
        failed.push(word);
    }
    let Some(word) = completion else {
        return Err(Error::Internal(format!("no exceptional-avoiding factorization; tried {failed:?}")));
    };
    let mut towards = ring.clone();
    let mut v = 0;
    for &q in &word {
        towards = ext_product(params, &towards, &interval_piece(params, &ring, v, q));
        v += p.pow(q as u32) as usize;
    }
    let exceptional = ext_colon(params, &towards, &radical)?;
    let mut arrows: Vec<Vec<Lattice>> = vec![(0..k).map(|i| if i == k - 1 { exceptional.clone() } else { ring.clone() }).collect()];
    for q in 0..params.f as usize - 1 {
        let step = p.pow(q as u32) as usize;
        let next: Vec<Lattice> = (0..k)
            .map(|i| {
                let parts: Vec<&Lattice> = (0..p as usize).map(|l| &arrows[q][(i + l * step) % k]).collect();
                one_over_p_product(params, &parts)
            })
            .collect();
        arrows.push(next);
    }
    let q_f = p.pow(params.f) as usize;
    let mut pieces = vec![vec![diagonal.clone(); k]; k];
    for i in 0..k {
        for j in (0..k).filter(|&j| j != i) {
            let d = (j + k - i) % k;
            let mut acc: Option<Lattice> = None;
            for w in (1..q_f).filter(|w| w % k == d) {
                let word: Vec<usize> =
                    digits(w, p, params.f).iter().enumerate().flat_map(|(q, &n)| std::iter::repeat(q).take(n)).collect();
                let l = path_lattice(params, &arrows, &ring, i, &word);
                acc = Some(match acc {
                    None => l,
                    Some(a) => a.sum(&l),
                });
            }
            pieces[i][j] = acc.expect("every slot difference has a digit word");
        }
    }
    Ok(LiftData { diagonal, ring, radical, arrows, completion_word: word, pieces })
}

/// The standard-form self-dual lift as a block order.
pub fn standard_lift(params: &LiftParams) -> Result<crate::lattice::BlockOrder> {
    let data = lift_data(params)?;
    order_from_pieces(params, &data.pieces)
}

pub fn order_from_pieces(params: &LiftParams, pieces: &[Vec<Lattice>]) -> Result<crate::lattice::BlockOrder> {
    let mut o = params.empty_order()?;
    for (i, row) in pieces.iter().enumerate() {
        for (j, l) in row.iter().enumerate() {
            o.set_piece(i, j, l.clone())?;
        }
    }
    Ok(o)
}
