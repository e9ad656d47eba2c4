//! Dense exact elimination over finite fields and over `Q`.

use num_traits::{One, Zero};

use crate::coeff::{Field, FieldElem, Rat};

pub type FqVec = Vec<FieldElem>;
pub type RatVec = Vec<Rat>;

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn fq_rref(k: &Field, mut rows: Vec<FqVec>) -> (Vec<FqVec>, Vec<usize>) {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = k.inv(rows[r][c]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = k.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = k.sub(*x, k.mul(factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn fq_rank(k: &Field, rows: Vec<FqVec>) -> usize {
    fq_rref(k, rows).1.len()
}

/// Basis of `{x : row · x = 0 for every row}`.
pub fn fq_nullspace(k: &Field, rows: Vec<FqVec>, ncols: usize) -> Vec<FqVec> {
    let (red, pivots) = fq_rref(k, rows);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![FieldElem::ZERO; ncols];
        v[free] = FieldElem::ONE;
        for (row, &pc) in red.iter().zip(&pivots) {
            v[pc] = k.neg(row[free]);
        }
        out.push(v);
    }
    out
}

/// Incrementally maintained row space with reduction of new vectors.
#[derive(Clone, Debug)]
pub struct FqEchelon {
    rows: Vec<(usize, FqVec)>,
}

impl FqEchelon {
    pub fn new() -> Self {
        FqEchelon { rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, k: &Field, mut v: FqVec) -> FqVec {
        for (pc, row) in &self.rows {
            let c = v[*pc];
            if !c.is_zero() {
                for (x, &y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x = k.sub(*x, k.mul(c, y));
                    }
                }
            }
        }
        v
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, k: &Field, v: FqVec) -> bool {
        let v = self.reduce(k, v);
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = k.inv(v[pc]).expect("nonzero");
        let v: FqVec = v.into_iter().map(|x| k.mul(x, inv)).collect();
        for (_, row) in self.rows.iter_mut() {
            let c = row[pc];
            if !c.is_zero() {
                for (x, &y) in row.iter_mut().zip(&v) {
                    if !y.is_zero() {
                        *x = k.sub(*x, k.mul(c, y));
                    }
                }
            }
        }
        self.rows.push((pc, v));
        true
    }
}

impl Default for FqEchelon {
    fn default() -> Self {
        Self::new()
    }
}

pub fn rat_rref(mut rows: Vec<RatVec>) -> (Vec<RatVec>, Vec<usize>) {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rat_rank(rows: &[RatVec]) -> usize {
    rat_rref(rows.to_vec()).1.len()
}

pub fn rat_det(m: &[RatVec]) -> Rat {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rat::zero();
        };
        if pr != c {
            a.swap(pr, c);
            det = -det;
        }
        det *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let factor = &a[i][c] * &inv;
            for j in c..n {
                let t = &factor * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    det
}

pub fn rat_inverse(m: &[RatVec]) -> Option<Vec<RatVec>> {
    let n = m.len();
    let aug: Vec<RatVec> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let (red, piv) = rat_rref(aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn rat_matmul(a: &[RatVec], b: &[RatVec]) -> Vec<RatVec> {
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = vec![Rat::zero(); m];
            for (x, brow) in row.iter().zip(b) {
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(brow) {
                    if !y.is_zero() {
                        *o += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

pub fn rat_transpose(a: &[RatVec]) -> Vec<RatVec> {
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Coefficients `c` with `c · rows = v`, if `v` lies in the row space.
pub fn rat_solve_left(rows: &[RatVec], v: &RatVec) -> Option<RatVec> {
    let n = rows.len();
    let m = v.len();
    // columns of the system are the rows; solve rowsᵀ c = v
    let mut sys: Vec<RatVec> = (0..m)
        .map(|j| {
            let mut r: RatVec = rows.iter().map(|row| row[j].clone()).collect();
            r.push(v[j].clone());
            r
        })
        .collect();
    if sys.is_empty() {
        return Some(vec![Rat::zero(); n]);
    }
    let (red, piv) = rat_rref(std::mem::take(&mut sys));
    if piv.contains(&n) {
        return None;
    }
    let mut c = vec![Rat::zero(); n];
    for (row, &pc) in red.iter().zip(&piv) {
        c[pc] = row[n].clone();
    }
    Some(c)
}
