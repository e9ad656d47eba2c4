//! The conjectural basic order of `Z₂SL₂(2^f)`, built from the ordinary
//! decomposition matrix alone.

use crate::coeff::{pow_p, rat, vp, Rat};
use crate::error::{Error, Result};
use crate::fixture::DecompFixture;
use crate::lattice::{Ambient, Block, BlockOrder, Center, Lattice, SymmElem};
use crate::linalg::{rat_det, rat_matmul, rat_transpose, RatVec};
use crate::quiver::{graded_quotient, koshita_presentation, subset_label};
use crate::report::Report;

/// Subsets and characters of a decomposition matrix with rows `R_C` and
/// columns `C_I`.
struct Incidence {
    f: u32,
    /// `rows[c]` = sorted masks `I` with `D[c][I] = 1`.
    rows: Vec<Vec<usize>>,
    /// `cols[I]` = characters `c` with `D[c][I] = 1`.
    cols: Vec<Vec<usize>>,
}

impl Incidence {
    fn new(fx: &DecompFixture) -> Result<Incidence> {
        let col = fx.column_of_mask()?;
        let n = col.len();
        let rows: Vec<Vec<usize>> = fx.rows.iter().map(|r| (0..n).filter(|&m| r[col[m]] == 1).collect()).collect();
        let cols = (0..n).map(|m| (0..rows.len()).filter(|&c| rows[c].contains(&m)).collect()).collect();
        Ok(Incidence { f: fx.f, rows, cols })
    }

    fn contains(&self, set: usize, c: usize) -> bool {
        self.rows[c].contains(&set)
    }

    /// `ε_X` restricted to the coordinates `C_I`.
    fn eps_on(&self, on: usize, x: usize) -> RatVec {
        self.cols[on].iter().map(|&c| rat(i64::from(self.contains(x, c)), 1)).collect()
    }
}

/// `{j, …, i}` (cyclically) for the minimal `j ≤ i` with `j, …, i−1 ∈ I`.
fn segment(f: u32, i: usize, set: usize) -> usize {
    let fu = f as usize;
    let prev = |x: usize| (x + fu - 1) % fu;
    let mut seg = 1usize << i;
    let mut j = i;
    while set >> prev(j) & 1 == 1 && prev(j) != i {
        j = prev(j);
        seg |= 1 << j;
    }
    seg
}

/// `β_{i,I} = 2^{|{j..i}|}·ε_I·ε_{I+{j..i}}`, on the coordinates `C_I`.
fn beta(inc: &Incidence, i: usize, set: usize) -> RatVec {
    let seg = segment(inc.f, i, set);
    let scale = pow_p(2, seg.count_ones() as i64);
    inc.eps_on(set, set ^ seg).into_iter().map(|x| x * &scale).collect()
}

/// Basis `{β_T : T ⊆ N∖I}` of `Λ_{I,I}`, with `β_T = Π_{i∈T} β_{i,I}`.
fn diagonal_generators(inc: &Incidence, set: usize) -> Vec<RatVec> {
    let fu = inc.f as usize;
    let free: Vec<usize> = (0..fu).filter(|&i| set >> i & 1 == 0).collect();
    let betas: Vec<RatVec> = free.iter().map(|&i| beta(inc, i, set)).collect();
    (0..1usize << free.len())
        .map(|t| {
            let mut v = inc.eps_on(set, set);
            for (k, b) in betas.iter().enumerate() {
                if t >> k & 1 == 1 {
                    v = v.iter().zip(b).map(|(x, y)| x * y).collect();
                }
            }
            v
        })
        .collect()
}

/// The order `Λ = ⊕ Λ_{I,J}` for the decomposition matrix `fx`, labelled by
/// subsets `I ⊆ {0..f−1}` in mask order.
pub fn nebe_order(fx: &DecompFixture) -> Result<BlockOrder> {
    if fx.p != 2 || !(2..=3).contains(&fx.f) {
        return Err(Error::Unsupported(format!("basic order only for p = 2, f in {{2,3}} (got {}, {})", fx.p, fx.f)));
    }
    if fx.ordinary.iter().any(|c| c.multiplicity != 1) {
        return Err(Error::Unsupported("characters with multiplicity > 1".into()));
    }
    let inc = Incidence::new(fx)?;
    let n = inc.cols.len();
    let blocks: Vec<Block> = inc.rows.iter().map(|r| Block { n: r.len(), center: Center::Rational }).collect();
    if blocks.iter().any(|b| b.n == 0) {
        return Err(Error::Fixture("zero row in decomposition matrix".into()));
    }
    let ambient = Ambient::new(2, blocks)?;
    let positions: Vec<Vec<Option<usize>>> =
        (0..n).map(|m| inc.rows.iter().map(|r| r.iter().position(|&x| x == m)).collect()).collect();
    let labels = (0..n).map(|m| subset_label(m, fx.f)).collect();
    let block_labels = fx.ordinary.iter().map(|c| c.label.clone()).collect();
    let mut o = BlockOrder::new(ambient, positions, labels, block_labels)?;

    let diag: Vec<Lattice> = (0..n)
        .map(|m| Lattice::from_generators(2, &diagonal_generators(&inc, m), inc.cols[m].len()))
        .collect::<Result<_>>()?;
    for (i, j) in o.nonempty_corners() {
        if i == j {
            o.set_piece(i, i, diag[i].clone())?;
            continue;
        }
        let meet = i & j;
        let shared = o.corner_blocks(i, j);
        let idx: Vec<usize> = shared
            .iter()
            .map(|c| inc.cols[meet].iter().position(|x| x == c))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Domain(format!("C_I ∩ C_J ⊄ C_(I∩J) for ({i},{j})")))?;
        let scale = pow_p(2, (i & !j).count_ones() as i64);
        let gens: Vec<RatVec> =
            diag[meet].basis().iter().map(|b| idx.iter().map(|&k| &b[k] * &scale).collect()).collect();
        o.set_piece(i, j, Lattice::from_generators(2, &gens, shared.len())?)?;
    }
    Ok(o)
}

/// `u_C = χ(1)/|G|`.
pub fn nebe_u(fx: &DecompFixture) -> SymmElem {
    let g = fx.group_order() as i64;
    SymmElem::from_rats(fx.ordinary.iter().map(|c| rat(c.degree as i64, g)).collect())
}

/// Canonical lift `2^{|I∖J|}·ε_I·ε_J` of the arrow `I → J`, in corner coordinates.
fn arrow_lift(o: &BlockOrder, i: usize, j: usize) -> RatVec {
    let s = pow_p(2, (i & !j).count_ones() as i64);
    vec![s; o.corner_dim(i, j)]
}

/// Builds the order and runs every check: order, self-duality, ranks versus
/// the Koshita Cartan matrix, Koshita relations modulo 2, and the Gram
/// determinant of `Λ_{∅,∅}`.
pub fn verify_nebe(fx: &DecompFixture) -> Result<(BlockOrder, Report)> {
    let mut rep = Report::new(format!("nebe(f={})", fx.f));
    let q = 1u64 << fx.f;
    rep.expect_eq("|G| = Σ χ(1)²", q * (q * q - 1), fx.group_order());
    let alg = graded_quotient(&koshita_presentation(fx.f)?)?;
    let cartan = alg.cartan();
    rep.expect_eq("DᵀD = Koshita Cartan", cartan.clone(), fx.cartan_by_mask()?);

    let o = nebe_order(fx)?;
    rep.merge(o.is_order()?);
    let u = nebe_u(fx);
    rep.merge(o.is_selfdual(&u)?);
    rep.expect_eq("piece ranks = Koshita Cartan", cartan, o.rank_matrix());

    let two = rat(2, 1);
    let pres = &alg.pres;
    let mut arrows_bad = Vec::new();
    for a in &pres.arrows {
        let l = o.piece(a.source, a.target).ok_or_else(|| Error::Domain(format!("no piece for {}", a.label)))?;
        let x = arrow_lift(&o, a.source, a.target);
        if !l.contains(&x) || l.scale(&two).contains(&x) {
            arrows_bad.push(a.label.clone());
        }
    }
    rep.check("arrow lifts lie in Λ∖2Λ", arrows_bad.is_empty(), arrows_bad.join(" "));

    let mut rel_bad = Vec::new();
    for r in &pres.relations {
        let (s, t) = (pres.path_source(&r.terms[0].1).unwrap(), pres.path_target(&r.terms[0].1).unwrap());
        let mut sum = vec![Rat::from_integer(0.into()); o.corner_dim(s, t)];
        for (_, path) in &r.terms {
            let mut v = pres.arrows[path[0]].source;
            let mut acc = o.corner_one(v);
            for &a in path {
                let w = pres.arrows[a].target;
                acc = o.corner_mul(s, v, w, &acc, &arrow_lift(&o, v, w));
                v = w;
            }
            // coefficients are ±1, which agree modulo 2
            for (x, y) in sum.iter_mut().zip(acc) {
                *x += y;
            }
        }
        let ok = match o.piece(s, t) {
            Some(l) => l.scale(&two).contains(&sum),
            None => sum.iter().all(|x| *x == Rat::from_integer(0.into())),
        };
        if !ok {
            rel_bad.push(r.label.clone());
        }
    }
    rep.check("Koshita relations hold modulo 2Λ", rel_bad.is_empty(), rel_bad.join(" "));

    let base = o.piece(0, 0).ok_or_else(|| Error::Internal("missing Λ_∅∅".into()))?;
    let b = base.basis().to_vec();
    let gram = rat_matmul(&rat_matmul(&b, &o.corner_pairing(0, 0, &u)), &rat_transpose(&b));
    let det = rat_det(&gram);
    rep.check("Gram det of Λ_∅∅ is a 2-adic unit", vp(&det, 2) == Some(0), format!("det = {det}"));
    Ok((o, rep))
}
