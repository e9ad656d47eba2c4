use num_traits::{One, Zero};

use crate::coeff::{canonical_residue, pow_p, rat_to_string, vp, vp_int, Rat};
use crate::error::{Error, Result};
use crate::linalg::{rat_inverse, rat_matmul, rat_transpose, RatVec};

pub fn is_integral(x: &Rat, p: u64) -> bool {
    x.is_zero() || vp_int(x.denom(), p) == Some(0)
}

/// A full `Z_(p)`-lattice in `Q^n`, stored in canonical Hermite normal form:
/// upper triangular, pivots exactly `p^k`, entries above a pivot `p^k`
/// reduced into `[0, p^k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    p: u64,
    basis: Vec<RatVec>,
}

impl Lattice {
    /// Canonical form of the lattice spanned by `rows` in `Q^n`.
    pub fn from_generators(p: u64, rows: &[RatVec], n: usize) -> Result<Lattice> {
        let mut rows: Vec<RatVec> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("generators must have length {n}")));
        }
        let mut out: Vec<RatVec> = Vec::with_capacity(n);
        let mut exps = Vec::with_capacity(n);
        for c in 0..n {
            let best = rows
                .iter()
                .enumerate()
                .filter_map(|(i, r)| vp(&r[c], p).map(|v| (v, i)))
                .min();
            let Some((v, idx)) = best else {
                return Err(Error::RankDeficient { rank: out.len(), expected: n });
            };
            let mut pr = rows.swap_remove(idx);
            let s = pow_p(p, v) / &pr[c];
            for x in pr.iter_mut() {
                *x = &*x * &s;
            }
            for r in rows.iter_mut() {
                if r[c].is_zero() {
                    continue;
                }
                let factor = &r[c] / &pr[c];
                for (x, y) in r.iter_mut().zip(&pr).skip(c) {
                    if !y.is_zero() {
                        *x -= &factor * y;
                    }
                }
            }
            rows.retain(|r| r.iter().any(|x| !x.is_zero()));
            out.push(pr);
            exps.push(v);
        }
        for c in 0..n {
            let pk = pow_p(p, exps[c]);
            let (above, rest) = out.split_at_mut(c);
            let pivot_row = &rest[0];
            for r in above.iter_mut() {
                let a = r[c].clone();
                let res = canonical_residue(&a, p, exps[c]);
                if res == a {
                    continue;
                }
                let t = (a - res) / &pk;
                for (x, y) in r.iter_mut().zip(pivot_row).skip(c) {
                    if !y.is_zero() {
                        *x -= &t * y;
                    }
                }
            }
        }
        Ok(Lattice { p, basis: out })
    }

    /// The standard lattice `Z_(p)^n`.
    pub fn standard(p: u64, n: usize) -> Lattice {
        let basis = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect();
        Lattice { p, basis }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RatVec] {
        &self.basis
    }

    /// `v_p(det)` of the basis, i.e. the sum of pivot exponents.
    pub fn det_exponent(&self) -> i64 {
        self.basis.iter().enumerate().map(|(i, r)| vp(&r[i], self.p).unwrap()).sum()
    }

    /// Coordinates of `v` in the basis (the basis is triangular).
    pub fn coordinates(&self, v: &[Rat]) -> RatVec {
        let n = self.dim();
        let mut rest = v.to_vec();
        let mut c = vec![Rat::zero(); n];
        for k in 0..n {
            if rest[k].is_zero() {
                continue;
            }
            let ck = &rest[k] / &self.basis[k][k];
            for (x, y) in rest.iter_mut().zip(&self.basis[k]).skip(k) {
                if !y.is_zero() {
                    *x -= &ck * y;
                }
            }
            c[k] = ck;
        }
        c
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.coordinates(v).iter().all(|x| is_integral(x, self.p))
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn scale(&self, s: &Rat) -> Lattice {
        let rows: Vec<RatVec> = self.basis.iter().map(|r| r.iter().map(|x| x * s).collect()).collect();
        Lattice::from_generators(self.p, &rows, self.dim()).expect("nonzero scaling keeps rank")
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Lattice::from_generators(self.p, &rows, self.dim()).expect("sum of full lattices")
    }

    /// `{y : ⟨x, y⟩_P ∈ Z_(p) for all x ∈ self}` where `⟨x, y⟩_P = x·P·yᵀ`.
    pub fn dual_wrt(&self, pairing: &[RatVec]) -> Result<Lattice> {
        let m = rat_transpose(&rat_matmul(&self.basis, pairing));
        let inv = rat_inverse(&m).ok_or_else(|| Error::Domain("singular pairing".into()))?;
        Lattice::from_generators(self.p, &inv, self.dim())
    }

    /// Dual with respect to the standard dot product.
    pub fn std_dual(&self) -> Lattice {
        let n = self.dim();
        let id: Vec<RatVec> = Lattice::standard(self.p, n).basis;
        self.dual_wrt(&id).expect("basis is invertible")
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.basis.iter().map(|r| r.iter().map(rat_to_string).collect()).collect()
    }
}

/// Normalised index `length(L₁/L₂)/length(L₁/pL₁)`, extended to arbitrary
/// pairs; equals `(v_p det B₂ − v_p det B₁)/n`.
pub fn idx(l1: &Lattice, l2: &Lattice) -> Result<Rat> {
    if l1.dim() != l2.dim() || l1.p != l2.p {
        return Err(Error::Shape("idx of lattices in different spaces".into()));
    }
    Ok(Rat::new((l2.det_exponent() - l1.det_exponent()).into(), (l1.dim() as i64).into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> RatVec {
        xs.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn hnf_examples() {
        let l = Lattice::from_generators(2, &[v(&[1, 1]), v(&[0, 2])], 2).unwrap();
        assert_eq!(l.basis(), &[v(&[1, 1]), v(&[0, 2])]);
        let l2 = Lattice::from_generators(2, &[v(&[1, 1]), v(&[1, 3])], 2).unwrap();
        assert_eq!(l, l2);
        let half = Lattice::from_generators(2, &[v(&[2, 0]), v(&[0, 2])], 2).unwrap().scale(&rat(1, 2));
        assert_eq!(half, Lattice::standard(2, 2));
        assert!(matches!(
            Lattice::from_generators(2, &[v(&[1, 1]), v(&[2, 2])], 2),
            Err(Error::RankDeficient { rank: 1, expected: 2 })
        ));
    }

    #[test]
    fn hnf_is_idempotent() {
        let l = Lattice::from_generators(3, &[v(&[5, 7, 1]), v(&[3, 0, 9]), v(&[1, 1, 1]), v(&[0, 6, 3])], 3).unwrap();
        let again = Lattice::from_generators(3, l.basis(), 3).unwrap();
        assert_eq!(l, again);
    }

    #[test]
    fn idx_examples() {
        let o = Lattice::standard(2, 1);
        assert_eq!(idx(&o, &o.scale(&rat(8, 1))).unwrap(), rat(3, 1));
        let l = Lattice::from_generators(2, &[v(&[1, 1]), v(&[0, 2])], 2).unwrap();
        assert_eq!(idx(&l, &l.scale(&rat(2, 1))).unwrap(), rat(1, 1));
        let a = Lattice::from_generators(3, &[v(&[1, 1]), v(&[0, 3])], 2).unwrap();
        let b = Lattice::from_generators(3, &[v(&[3, 3]), v(&[0, 3])], 2).unwrap();
        assert_eq!(idx(&a, &b).unwrap(), rat(1, 2));
    }

    #[test]
    fn dual_scaling() {
        let l = Lattice::from_generators(2, &[v(&[1, 1]), v(&[0, 2])], 2).unwrap();
        let d = l.std_dual();
        assert_eq!(d.std_dual(), l);
        assert_eq!(l.scale(&rat(2, 1)).std_dual(), d.scale(&rat(1, 2)));
    }

    fn lattice_strategy(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(proptest::collection::vec(-20i64..20, n), n)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn hnf_canonical_under_unimodular(m in lattice_strategy(3), t in lattice_strategy(3), s in 0usize..3) {
            let rows: Vec<RatVec> = m.iter().map(|r| v(r)).collect();
            let Ok(l) = Lattice::from_generators(2, &rows, 3) else { return Ok(()); };
            // make t unimodular over Z_(2): odd diagonal, upper triangular
            let mut u = vec![vec![rat(0, 1); 3]; 3];
            for i in 0..3 {
                for j in i..3 {
                    u[i][j] = if i == j { rat(2 * t[i][j] + 1, 1) } else { rat(t[i][j], 1) };
                }
            }
            let mut moved = rat_matmul(&u, &rows);
            moved.rotate_left(s);
            let l2 = Lattice::from_generators(2, &moved, 3).unwrap();
            prop_assert_eq!(l, l2);
        }

        #[test]
        fn dual_is_involution(m in lattice_strategy(3), g in lattice_strategy(3)) {
            let rows: Vec<RatVec> = m.iter().map(|r| v(r)).collect();
            let Ok(l) = Lattice::from_generators(5, &rows, 3) else { return Ok(()); };
            // symmetric nondegenerate pairing
            let mut pm = vec![vec![rat(0, 1); 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    pm[i][j] = rat(g[i.min(j)][i.max(j)], 1);
                }
            }
            let Ok(d) = l.dual_wrt(&pm) else { return Ok(()); };
            prop_assert_eq!(d.dual_wrt(&pm).unwrap(), l);
        }

        #[test]
        fn idx_additive(a in lattice_strategy(2), b in lattice_strategy(2), c in lattice_strategy(2)) {
            let mk = |m: &Vec<Vec<i64>>| Lattice::from_generators(3, &m.iter().map(|r| v(r)).collect::<Vec<_>>(), 2);
            let (Ok(x), Ok(y), Ok(z)) = (mk(&a), mk(&b), mk(&c)) else { return Ok(()); };
            prop_assert_eq!(idx(&x, &z).unwrap(), idx(&x, &y).unwrap() + idx(&y, &z).unwrap());
        }
    }
}
