use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::ambient::{AlgElem, Ambient, SymmElem};
use super::hnf::Lattice;
use crate::coeff::{Field, FieldElem, PLocalRat, Rat};
use crate::error::{Error, Result};
use crate::linalg::{fq_nullspace, rat_rank, FqVec, RatVec};
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompMatrix {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<Vec<u32>>,
}

/// An order `Λ = ⊕ ê_i Λ ê_j` given by its pieces. Each `ê_i` is a sum of
/// diagonal matrix units, one per block it meets; `positions[i][b]` is the
/// row it occupies in block `b`. A piece is a full lattice in the corner
/// `ê_i A ê_j`, whose local coordinates list the blocks met by both in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockOrder {
    pub ambient: Ambient,
    pub positions: Vec<Vec<Option<usize>>>,
    pub labels: Vec<String>,
    pub block_labels: Vec<String>,
    pub pieces: BTreeMap<(usize, usize), Lattice>,
}

fn residue(x: &Rat, p: u64) -> Result<u64> {
    Ok(PLocalRat::new(x.clone(), p)?.residue())
}

/// Piece data in `(i, j)` order with canonical Hermite rows as `num/den` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalOrder {
    pub p: u64,
    pub labels: Vec<String>,
    pub block_labels: Vec<String>,
    pub pieces: Vec<CanonicalPiece>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalPiece {
    pub i: usize,
    pub j: usize,
    pub basis: Vec<Vec<String>>,
}

impl BlockOrder {
    pub fn canonical(&self) -> CanonicalOrder {
        CanonicalOrder {
            p: self.p(),
            labels: self.labels.clone(),
            block_labels: self.block_labels.clone(),
            pieces: self.pieces.iter().map(|(&(i, j), l)| CanonicalPiece { i, j, basis: l.to_strings() }).collect(),
        }
    }

    pub fn new(
        ambient: Ambient,
        positions: Vec<Vec<Option<usize>>>,
        labels: Vec<String>,
        block_labels: Vec<String>,
    ) -> Result<BlockOrder> {
        if labels.len() != positions.len() || block_labels.len() != ambient.blocks.len() {
            return Err(Error::Shape("label counts do not match".into()));
        }
        for (b, blk) in ambient.blocks.iter().enumerate() {
            let mut rows: Vec<usize> = positions.iter().filter_map(|pos| pos.get(b).copied().flatten()).collect();
            rows.sort_unstable();
            if rows != (0..blk.n).collect::<Vec<_>>() {
                return Err(Error::Domain(format!("idempotents do not partition block {b}")));
            }
        }
        Ok(BlockOrder { ambient, positions, labels, block_labels, pieces: BTreeMap::new() })
    }

    pub fn num_idempotents(&self) -> usize {
        self.positions.len()
    }

    pub fn p(&self) -> u64 {
        self.ambient.p
    }

    pub fn corner_blocks(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.ambient.blocks.len())
            .filter(|&b| self.positions[i][b].is_some() && self.positions[j][b].is_some())
            .collect()
    }

    pub fn corner_dim(&self, i: usize, j: usize) -> usize {
        self.corner_blocks(i, j).iter().map(|&b| self.ambient.blocks[b].center.degree()).sum()
    }

    /// `(block, local offset)` for each block of the corner.
    fn corner_layout(&self, i: usize, j: usize) -> Vec<(usize, usize)> {
        let mut off = 0;
        self.corner_blocks(i, j)
            .into_iter()
            .map(|b| {
                let r = (b, off);
                off += self.ambient.blocks[b].center.degree();
                r
            })
            .collect()
    }

    /// Local coordinates of `ê_i` in the corner `(i, i)`.
    pub fn corner_one(&self, i: usize) -> RatVec {
        let mut v = vec![Rat::zero(); self.corner_dim(i, i)];
        for (_, off) in self.corner_layout(i, i) {
            v[off] = Rat::one();
        }
        v
    }

    /// Product of `x ∈ ê_i A ê_j` and `y ∈ ê_j A ê_l`, in the corner `(i, l)`.
    pub fn corner_mul(&self, i: usize, j: usize, l: usize, x: &[Rat], y: &[Rat]) -> RatVec {
        let lx: HashMap<usize, usize> = self.corner_layout(i, j).into_iter().collect();
        let ly: HashMap<usize, usize> = self.corner_layout(j, l).into_iter().collect();
        let mut z = vec![Rat::zero(); self.corner_dim(i, l)];
        for (b, off) in self.corner_layout(i, l) {
            let (Some(&ox), Some(&oy)) = (lx.get(&b), ly.get(&b)) else { continue };
            let e = self.ambient.blocks[b].center.degree();
            let prod = self.ambient.center_mul(b, &x[ox..ox + e], &y[oy..oy + e]);
            for (t, v) in prod.into_iter().enumerate() {
                z[off + t] = v;
            }
        }
        z
    }

    /// Matrix `P` with `T_u(x, y) = x·P·yᵀ` for `x ∈ ê_i A ê_j`, `y ∈ ê_j A ê_i`.
    pub fn corner_pairing(&self, i: usize, j: usize, u: &SymmElem) -> Vec<RatVec> {
        let layout = self.corner_layout(i, j);
        let n = self.corner_dim(i, j);
        let mut g = vec![vec![Rat::zero(); n]; n];
        for (b, off) in layout {
            let e = self.ambient.blocks[b].center.degree();
            for s in 0..e {
                for t in 0..e {
                    let mut xs = vec![Rat::zero(); e];
                    let mut ys = vec![Rat::zero(); e];
                    xs[s] = Rat::one();
                    ys[t] = Rat::one();
                    let prod = self.ambient.center_mul(b, &xs, &ys);
                    g[off + s][off + t] = self.ambient.center_trace(b, &u.comps[b], &prod);
                }
            }
        }
        g
    }

    pub fn embed(&self, i: usize, j: usize, x: &[Rat]) -> AlgElem {
        let mut out = self.ambient.zero();
        for (b, off) in self.corner_layout(i, j) {
            let (r, c) = (self.positions[i][b].unwrap(), self.positions[j][b].unwrap());
            let g = self.ambient.coord(b, r, c);
            let e = self.ambient.blocks[b].center.degree();
            out.coords[g..g + e].clone_from_slice(&x[off..off + e]);
        }
        out
    }

    pub fn set_piece(&mut self, i: usize, j: usize, l: Lattice) -> Result<()> {
        if l.dim() != self.corner_dim(i, j) {
            return Err(Error::Shape(format!("piece ({i},{j}) has rank {}, corner has {}", l.dim(), self.corner_dim(i, j))));
        }
        self.pieces.insert((i, j), l);
        Ok(())
    }

    pub fn piece(&self, i: usize, j: usize) -> Option<&Lattice> {
        self.pieces.get(&(i, j))
    }

    pub fn nonempty_corners(&self) -> Vec<(usize, usize)> {
        let n = self.num_idempotents();
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| self.corner_dim(i, j) > 0).collect()
    }

    fn require_pieces(&self) -> Result<()> {
        for (i, j) in self.nonempty_corners() {
            if self.piece(i, j).is_none() {
                return Err(Error::Domain(format!("missing piece ({i},{j})")));
            }
        }
        Ok(())
    }

    /// The full lattice `⊕ pieces` in flattened ambient coordinates.
    pub fn assemble(&self) -> Result<Lattice> {
        self.require_pieces()?;
        let rows: Vec<RatVec> = self
            .pieces
            .iter()
            .flat_map(|(&(i, j), l)| l.basis().iter().map(move |b| self.embed(i, j, b).coords))
            .collect();
        Lattice::from_generators(self.p(), &rows, self.ambient.dim())
    }

    /// `1 ∈ Λ` and `Λ_{ij}·Λ_{jl} ⊆ Λ_{il}` for every triple.
    pub fn is_order(&self) -> Result<Report> {
        self.require_pieces()?;
        let mut rep = Report::new("is_order");
        let n = self.num_idempotents();
        let ones = (0..n).all(|i| self.piece(i, i).is_some_and(|l| l.contains(&self.corner_one(i))));
        rep.check("contains_one", ones, "");
        let mut bad = Vec::new();
        for (&(i, j), lij) in &self.pieces {
            for l in 0..n {
                let (Some(ljl), Some(target)) = (self.piece(j, l), self.piece(i, l)) else { continue };
                let closed = lij.basis().iter().all(|x| {
                    ljl.basis().iter().all(|y| target.contains(&self.corner_mul(i, j, l, x, y)))
                });
                if !closed {
                    bad.push(format!("({},{},{})", self.labels[i], self.labels[j], self.labels[l]));
                }
            }
        }
        rep.check("closed_under_products", bad.is_empty(), bad.join(" "));
        Ok(rep)
    }

    /// `Λ^♯ = Λ` for `T_u`, both globally and piecewise (`Λ_{ij}^♯ = Λ_{ji}`).
    pub fn is_selfdual(&self, u: &SymmElem) -> Result<Report> {
        let mut rep = Report::new("is_selfdual");
        let full = self.assemble()?;
        let dual = full.dual_wrt(&self.ambient.gram(u)?)?;
        rep.check("global", dual == full, "");
        let mut bad = Vec::new();
        for (&(i, j), l) in &self.pieces {
            let d = l.dual_wrt(&self.corner_pairing(i, j, u))?;
            if self.piece(j, i) != Some(&d) {
                bad.push(format!("({},{})", self.labels[i], self.labels[j]));
            }
        }
        rep.check("piecewise", bad.is_empty(), bad.join(" "));
        Ok(rep)
    }

    /// `rank_O ê_iΛê_j`.
    pub fn rank_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.num_idempotents();
        (0..n).map(|i| (0..n).map(|j| self.piece(i, j).map_or(0, |l| l.dim())).collect()).collect()
    }

    /// Entry `(b, i)`: the multiplicity of block `b`'s simple module in
    /// `K ⊗ ê_iΛ`, read off the projection of `ê_iΛ` to block `b`.
    pub fn decomposition_matrix(&self) -> Result<DecompMatrix> {
        self.require_pieces()?;
        let n = self.num_idempotents();
        let mut entries = vec![vec![0u32; n]; self.ambient.blocks.len()];
        for (b, blk) in self.ambient.blocks.iter().enumerate() {
            let e = blk.center.degree();
            for i in 0..n {
                if self.positions[i][b].is_none() {
                    continue;
                }
                let mut rows = Vec::new();
                for j in 0..n {
                    let Some(pj) = self.positions[j][b] else { continue };
                    let off = self.corner_layout(i, j).into_iter().find(|&(bb, _)| bb == b).unwrap().1;
                    for v in self.piece(i, j).unwrap().basis() {
                        let mut row = vec![Rat::zero(); blk.n * e];
                        row[pj * e..pj * e + e].clone_from_slice(&v[off..off + e]);
                        rows.push(row);
                    }
                }
                let rank = rat_rank(&rows);
                if rank % (blk.n * e) != 0 {
                    return Err(Error::Domain(format!(
                        "non-integral multiplicity {rank}/{} at ({}, {})",
                        blk.n * e,
                        self.block_labels[b],
                        self.labels[i]
                    )));
                }
                entries[b][i] = (rank / (blk.n * e)) as u32;
            }
        }
        Ok(DecompMatrix { rows: self.block_labels.clone(), cols: self.labels.clone(), entries })
    }

    /// Basis of `Λ` as `(i, j, local vector)`.
    fn global_basis(&self) -> Vec<(usize, usize, RatVec)> {
        self.pieces
            .iter()
            .flat_map(|(&(i, j), l)| l.basis().iter().map(move |b| (i, j, b.clone())))
            .collect()
    }

    /// Dimension of the centre of `Λ/pΛ`.
    pub fn reduction_center_dim(&self) -> Result<usize> {
        self.require_pieces()?;
        let p = self.p();
        let field = Field::new(p, 1)?;
        let basis = self.global_basis();
        let nb = basis.len();
        let start: BTreeMap<(usize, usize), usize> = {
            let mut m = BTreeMap::new();
            let mut off = 0;
            for (&k, l) in &self.pieces {
                m.insert(k, off);
                off += l.dim();
            }
            m
        };
        // structure constants mod p: product of basis a and b as a sparse vector
        let product = |a: usize, b: usize| -> Result<Vec<(usize, u64)>> {
            let (i, j, x) = &basis[a];
            let (j2, l, y) = &basis[b];
            if j != j2 {
                return Ok(Vec::new());
            }
            let z = self.corner_mul(*i, *j, *l, x, y);
            let target = self.piece(*i, *l).ok_or_else(|| Error::Domain("not an order".into()))?;
            let coords = target.coordinates(&z);
            let s = start[&(*i, *l)];
            coords
                .iter()
                .enumerate()
                .map(|(t, c)| Ok((s + t, residue(c, p)?)))
                .filter(|r| !matches!(r, Ok((_, 0))))
                .collect()
        };
        let mut rows: Vec<FqVec> = Vec::new();
        for b in 0..nb {
            let mut eqs: BTreeMap<usize, FqVec> = BTreeMap::new();
            for a in 0..nb {
                for (t, c) in product(a, b)? {
                    let row = eqs.entry(t).or_insert_with(|| vec![FieldElem::ZERO; nb]);
                    row[a] = field.add(row[a], field.from_int(c as i64));
                }
                for (t, c) in product(b, a)? {
                    let row = eqs.entry(t).or_insert_with(|| vec![FieldElem::ZERO; nb]);
                    row[a] = field.sub(row[a], field.from_int(c as i64));
                }
            }
            rows.extend(eqs.into_values());
        }
        Ok(fq_nullspace(&field, rows, nb).len())
    }
}
