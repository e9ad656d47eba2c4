use serde::Serialize;

use super::params::{index_scale, kappa};
use crate::error::{Error, Result};

/// Arrow indices `m_{i,q} = idx(ε̃ê_iΛê_i, ê_iΛê_{i+[q]})` of the standard
/// lift, indexed by slot `i` (the vertex `2i`). Values are doubled for odd
/// `p`, where `ε̃ê_iΛê_i` has rank two.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MTable {
    pub p: u64,
    pub f: u32,
    pub kappa: usize,
    pub scale: i64,
    /// `m[q][i]`.
    pub m: Vec<Vec<i64>>,
}

/// Base-`p` digits `n_0, …, n_{f−1}` of `v`.
pub fn digits(v: usize, p: u64, f: u32) -> Vec<usize> {
    let mut v = v;
    (0..f)
        .map(|_| {
            let d = v % p as usize;
            v /= p as usize;
            d
        })
        .collect()
}

/// Number of carries when adding `a` and `b` in base `p` (`f` digits).
pub fn carries(a: usize, b: usize, p: u64, f: u32) -> usize {
    let (da, db) = (digits(a, p, f), digits(b, p, f));
    let mut carry = 0;
    let mut count = 0;
    for q in 0..f as usize {
        carry = usize::from(da[q] + db[q] + carry >= p as usize);
        count += carry;
    }
    count
}

/// All orderings of the multiset word with `n_q` letters `q`.
pub fn word_orderings(counts: &[usize]) -> Vec<Vec<usize>> {
    let total: usize = counts.iter().sum();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(total);
    let mut left = counts.to_vec();
    fn rec(left: &mut [usize], cur: &mut Vec<usize>, total: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == total {
            out.push(cur.clone());
            return;
        }
        for q in 0..left.len() {
            if left[q] > 0 {
                left[q] -= 1;
                cur.push(q);
                rec(left, cur, total, out);
                cur.pop();
                left[q] += 1;
            }
        }
    }
    rec(&mut left, &mut cur, total, &mut out);
    out
}

impl MTable {
    pub fn num_classes(&self) -> usize {
        self.f as usize
    }

    /// Slot step of arrow class `q` (`[q]/2 = p^q`).
    pub fn step(&self, q: usize) -> usize {
        (self.p.pow(q as u32) as usize) % self.kappa
    }

    pub fn value(&self, i: usize, q: usize) -> i64 {
        self.m[q][i % self.kappa]
    }

    /// `a_{i,q} = Σ_l m_{i+l[q],q} − m_{i,q+1}` in table units (class `f` is class `0`).
    pub fn a(&self, i: usize, q: usize) -> i64 {
        let s: i64 = (0..self.p as usize).map(|l| self.value(i + l * self.step(q), q)).sum();
        s - self.value(i, (q + 1) % self.f as usize)
    }

    /// `a_q`, if `a_{i,q}` is independent of `i` and a multiple of the scale.
    pub fn a_q(&self, q: usize) -> Option<i64> {
        let a0 = self.a(0, q);
        ((0..self.kappa).all(|i| self.a(i, q) == a0) && a0 % self.scale == 0).then(|| a0 / self.scale)
    }

    /// `m_{i,q} + m_{i+[q],q+1} = m_{i,q+1} + m_{i+[q+1],q}` for all `i` and `q < f−1`.
    pub fn exchange_violations(&self) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for q in 0..(self.f as usize).saturating_sub(1) {
            for i in 0..self.kappa {
                let lhs = self.value(i, q) + self.value(i + self.step(q), q + 1);
                let rhs = self.value(i, q + 1) + self.value(i + self.step(q + 1), q);
                if lhs != rhs {
                    bad.push((i, q));
                }
            }
        }
        bad
    }

    pub fn class_sums(&self) -> Vec<i64> {
        self.m.iter().map(|row| row.iter().sum()).collect()
    }

    /// Expected `Σ_i m_{i,q} = κ/(p−1)` in table units.
    pub fn expected_class_sum(&self) -> i64 {
        self.scale * self.kappa as i64 / (self.p as i64 - 1)
    }

    /// Sum of arrow values along `word` (classes) starting at slot `i`.
    pub fn path_sum(&self, i: usize, word: &[usize]) -> i64 {
        let mut v = i;
        let mut s = 0;
        for &q in word {
            s += self.value(v, q);
            v = (v + self.step(q)) % self.kappa;
        }
        s
    }

    /// The digit word of the slot difference `d` in ascending class order.
    pub fn digit_word(&self, d: usize) -> Vec<usize> {
        digits(d, self.p, self.f).iter().enumerate().flat_map(|(q, &n)| std::iter::repeat(q).take(n)).collect()
    }

    /// `m(i→j)` along the digit factorization of the slot difference.
    pub fn m_path(&self, i: usize, j: usize) -> i64 {
        let d = (j + self.kappa - i % self.kappa) % self.kappa;
        self.path_sum(i, &self.digit_word(d))
    }

    /// Whether every ordering of every digit word gives the same sum.
    pub fn ordering_independent(&self, max_len: usize) -> bool {
        (0..self.kappa).all(|i| {
            (1..self.kappa).all(|d| {
                let ds = digits(d, self.p, self.f);
                if ds.iter().sum::<usize>() > max_len {
                    return true;
                }
                let base = self.path_sum(i, &self.digit_word(d));
                word_orderings(&ds).iter().all(|w| self.path_sum(i, w) == base)
            })
        })
    }
}

impl MTable {
    /// Exchange relation, `a_q = 1`, class sums, ordering independence of
    /// digit words up to `max_len` letters, and the digit-path pairing
    /// `m(i→j) + m(j→i) = f + scale·carries(d, κ−d)`.
    pub fn suite_report(&self, max_len: usize) -> crate::report::Report {
        let mut rep = crate::report::Report::new(format!("m_table({},{})", self.p, self.f));
        let ex = self.exchange_violations();
        rep.check("exchange relation", ex.is_empty(), format!("{ex:?}"));
        let aq: Vec<Option<i64>> = (0..self.num_classes()).map(|q| self.a_q(q)).collect();
        rep.check("a_q = 1 (so Σ_q a_q = f)", aq.iter().all(|a| *a == Some(1)), format!("{aq:?}"));
        let want = vec![self.expected_class_sum(); self.num_classes()];
        rep.expect_eq("Σ_i m_(i,q) = κ/(p−1)", want, self.class_sums());
        rep.check("digit orderings agree", self.ordering_independent(max_len), "");
        let f = self.f as i64;
        let mut carry_bad = Vec::new();
        let mut literal_bad = Vec::new();
        for i in 0..self.kappa {
            for d in 1..self.kappa {
                let j = (i + d) % self.kappa;
                let s = self.m_path(i, j) + self.m_path(j, i);
                if s != f + self.scale * carries(d, self.kappa - d, self.p, self.f) as i64 {
                    carry_bad.push(format!("{i}->{j}"));
                }
                if s != f {
                    literal_bad.push(format!("{i}->{j}:{s}"));
                }
            }
        }
        rep.check("digit-path pairing = f + scale·carries", carry_bad.is_empty(), carry_bad.join(" "));
        // without carries the digit path is the piece index
        if self.p == 2 || self.f == 1 {
            rep.check("digit-path pairing = f", literal_bad.is_empty(), literal_bad.join(" "));
        }
        rep
    }
}

/// The table forced by the recursion `m_{i,q+1} = Σ_l m_{i+l[q],q} − 1`
/// (table units) from the base normalisation: all `[0]`-arrows zero except
/// the exceptional one, the arrow from slot `κ−1` into slot `0`.
pub fn m_table(p: u64, f: u32) -> Result<MTable> {
    let k = kappa(p, f);
    let scale = index_scale(p);
    let mut t = MTable { p, f, kappa: k, scale, m: Vec::new() };
    if k < 2 {
        return Ok(t);
    }
    let mut row = vec![0i64; k];
    row[k - 1] = scale * k as i64 / (p as i64 - 1);
    t.m.push(row);
    for q in 0..f as usize - 1 {
        let next: Vec<i64> = (0..k)
            .map(|i| (0..p as usize).map(|l| t.m[q][(i + l * t.step(q)) % k]).sum::<i64>() - scale)
            .collect();
        t.m.push(next);
    }
    if !t.exchange_violations().is_empty() {
        return Err(Error::Internal(format!("exchange relation fails for ({p},{f})")));
    }
    Ok(t)
}
