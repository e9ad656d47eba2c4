//! The group algebra `F_{p^f} Δ₂(p^f)` on its group-element basis.

use std::collections::BTreeSet;

use crate::coeff::{CharIdx, Field, FieldElem};
use crate::error::{Error, Result};
use crate::linalg::{fq_rank, FqEchelon};
use crate::quiver::{graded_quotient, Presentation};
use crate::report::Report;

/// Dense coefficient vector over the group elements.
pub type GroupAlgElem = Vec<FieldElem>;

/// Upper triangular `[[a, b], [0, a⁻¹]]`, stored as `(a, b)`.
///
/// Element `(g^k, b)` has index `k·q + b` where `q = p^f`.
#[derive(Clone, Debug)]
pub struct DeltaGroup {
    k: Field,
    q: usize,
}

#[derive(Clone, Debug)]
pub struct Eigenvector {
    pub elem: GroupAlgElem,
    /// `e_i · elem = elem · e_{i+weight}`.
    pub weight: CharIdx,
    pub marked: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSet {
    pub residues: BTreeSet<u32>,
    pub modulus: u32,
}

impl XSet {
    /// `{2p^q mod (p^f − 1)}`.
    pub fn expected(p: u64, f: u32) -> XSet {
        let m = p.pow(f) - 1;
        let residues = (0..f).map(|q| ((2 * p.pow(q)) % m) as u32).collect();
        XSet { residues, modulus: m as u32 }
    }
}

impl DeltaGroup {
    pub fn new(p: u64, f: u32) -> Result<Self> {
        let k = Field::new(p, f)?;
        if k.size() > 1 << 12 {
            return Err(Error::Unsupported("group algebra only for p^f <= 4096".into()));
        }
        let q = k.size() as usize;
        Ok(DeltaGroup { k, q })
    }

    pub fn field(&self) -> &Field {
        &self.k
    }

    pub fn order(&self) -> usize {
        self.q * (self.q - 1)
    }

    pub fn unit_order(&self) -> usize {
        self.q - 1
    }

    pub fn element(&self, idx: usize) -> (FieldElem, FieldElem) {
        (self.k.gen_pow((idx / self.q) as i64), FieldElem((idx % self.q) as u32))
    }

    pub fn index(&self, a: FieldElem, b: FieldElem) -> usize {
        let la = self.k.dlog(a).expect("a is a unit").residue() as usize;
        la * self.q + b.0 as usize
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// `(a,b)·(a′,b′) = (aa′, ab′ + b·a′⁻¹)`.
    pub fn mul_idx(&self, i: usize, j: usize) -> usize {
        let ((a, b), (a2, b2)) = (self.element(i), self.element(j));
        let k = &self.k;
        let a2inv = k.inv(a2).expect("unit");
        self.index(k.mul(a, a2), k.add(k.mul(a, b2), k.mul(b, a2inv)))
    }

    pub fn inv_idx(&self, i: usize) -> usize {
        let (a, b) = self.element(i);
        // (a,b)⁻¹ = (a⁻¹, −b)
        self.index(self.k.inv(a).expect("unit"), self.k.neg(b))
    }

    pub fn p_element(&self, b: FieldElem) -> usize {
        b.0 as usize
    }

    pub fn a_element(&self, k: i64) -> usize {
        (k.rem_euclid(self.unit_order() as i64) as usize) * self.q
    }

    pub fn zero(&self) -> GroupAlgElem {
        vec![FieldElem::ZERO; self.order()]
    }

    pub fn basis_elem(&self, g: usize) -> GroupAlgElem {
        let mut v = self.zero();
        v[g] = FieldElem::ONE;
        v
    }

    pub fn one(&self) -> GroupAlgElem {
        self.basis_elem(self.identity())
    }

    pub fn add(&self, x: &GroupAlgElem, y: &GroupAlgElem) -> GroupAlgElem {
        x.iter().zip(y).map(|(&a, &b)| self.k.add(a, b)).collect()
    }

    pub fn sub(&self, x: &GroupAlgElem, y: &GroupAlgElem) -> GroupAlgElem {
        x.iter().zip(y).map(|(&a, &b)| self.k.sub(a, b)).collect()
    }

    pub fn scale(&self, c: FieldElem, x: &GroupAlgElem) -> GroupAlgElem {
        x.iter().map(|&a| self.k.mul(c, a)).collect()
    }

    pub fn mul(&self, x: &GroupAlgElem, y: &GroupAlgElem) -> GroupAlgElem {
        let mut out = self.zero();
        let ys: Vec<(usize, FieldElem)> =
            y.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, &c)| (j, c)).collect();
        for (i, &a) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for &(j, b) in &ys {
                let g = self.mul_idx(i, j);
                out[g] = self.k.add(out[g], self.k.mul(a, b));
            }
        }
        out
    }

    /// `e_i = (1/|A|) Σ_a a^{−i}·a⁻¹`, so that `a·e_i = a^{−i}·e_i`.
    pub fn char_idempotents(&self) -> Vec<GroupAlgElem> {
        let k = &self.k;
        let n = self.unit_order() as i64;
        let scale = k.inv(k.from_int(n)).expect("|A| is prime to p");
        (0..n)
            .map(|i| {
                let mut e = self.zero();
                for j in 0..n {
                    // a = g^j contributes a^{−i} at a⁻¹ = g^{−j}
                    e[self.a_element(-j)] = k.mul(scale, k.gen_pow(-i * j));
                }
                e
            })
            .collect()
    }

    /// Simultaneous eigenvectors of `A`-conjugation spanning the
    /// augmentation ideal of `kP`, with `f` of them marked as generators
    /// modulo its square.
    pub fn radical_eigenbasis(&self) -> Vec<Eigenvector> {
        let k = &self.k;
        let n = self.unit_order() as i64;
        let p = k.p() as i64;
        // orbit representatives of P − {0} under multiplication by squares
        let reps: Vec<FieldElem> = if p == 2 { vec![FieldElem::ONE] } else { vec![FieldElem::ONE, k.generator()] };
        let mut out = Vec::new();
        for &b in &reps {
            for m in 0..n {
                let mut v = self.zero();
                for j in 0..n {
                    let c = k.gen_pow(-m * j);
                    let x = self.p_element(k.mul(k.gen_pow(2 * j), b));
                    v[x] = k.add(v[x], c);
                    v[0] = k.sub(v[0], c);
                }
                if v.iter().any(|c| !c.is_zero()) {
                    out.push(Eigenvector { elem: v, weight: CharIdx::new(m, n as u32), marked: false });
                }
            }
        }
        // Jac(kP)² in P-coordinates
        let q = self.q;
        let mut ech = FqEchelon::new();
        for b in 1..q {
            for c in 1..q {
                let mut v = vec![FieldElem::ZERO; q];
                let bc = k.add(FieldElem(b as u32), FieldElem(c as u32)).0 as usize;
                v[bc] = k.add(v[bc], FieldElem::ONE);
                v[b] = k.sub(v[b], FieldElem::ONE);
                v[c] = k.sub(v[c], FieldElem::ONE);
                v[0] = k.add(v[0], FieldElem::ONE);
                ech.insert(k, v);
            }
        }
        let support = |e: &Eigenvector| e.elem.iter().filter(|c| !c.is_zero()).count();
        let mut order: Vec<usize> = (0..out.len()).collect();
        order.sort_by(|&x, &y| {
            (support(&out[x]), &out[x].elem).cmp(&(support(&out[y]), &out[y].elem))
        });
        let mut marked = 0;
        for i in order {
            if marked == k.degree() {
                break;
            }
            if ech.insert(k, out[i].elem[..q].to_vec()) {
                out[i].marked = true;
                marked += 1;
            }
        }
        out
    }

    pub fn x_set(&self) -> XSet {
        let residues = self
            .radical_eigenbasis()
            .iter()
            .filter(|e| e.marked)
            .map(|e| e.weight.residue())
            .collect();
        XSet { residues, modulus: self.unit_order() as u32 }
    }

    /// `dim e_i kG e_j`, using `e_i kG e_j = span{e_i x e_j : x ∈ P}`.
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        let es = self.char_idempotents();
        let n = self.unit_order();
        let mut c = vec![vec![0; n]; n];
        for i in 0..n {
            let left: Vec<GroupAlgElem> =
                (0..self.q).map(|b| self.mul(&es[i], &self.basis_elem(b))).collect();
            for j in 0..n {
                let vs = left.iter().map(|x| self.mul(x, &es[j])).collect();
                c[i][j] = fq_rank(&self.k, vs);
            }
        }
        c
    }

    pub fn class_count(&self) -> usize {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = 0;
        for x in 0..n {
            if seen[x] {
                continue;
            }
            classes += 1;
            for g in 0..n {
                seen[self.mul_idx(self.mul_idx(self.inv_idx(g), x), g)] = true;
            }
        }
        classes
    }
}

/// Maps `e_i ↦ e_i` and the arrow of class `q` at `i` to `e_i·s` with `s`
/// the marked eigenvector of weight `2p^q`; checks every relation, the
/// dimension count and that the images span `kG`.
pub fn verify_group_quiver_iso(g: &DeltaGroup, pres: &Presentation) -> Result<Report> {
    let k = g.field();
    let p = k.p() as u64;
    let f = k.degree();
    let n = g.unit_order();
    if pres.vertices.len() != n || pres.field.size() != k.size() {
        return Err(Error::Shape("presentation does not match the group".into()));
    }
    let mut report = Report::new("group_quiver_iso");
    let es = g.char_idempotents();
    let eig = g.radical_eigenbasis();
    let gens: Vec<&Eigenvector> = (0..f)
        .map(|q| {
            let w = ((2 * p.pow(q)) % n as u64) as u32;
            eig.iter()
                .find(|e| e.marked && e.weight.residue() == w)
                .ok_or_else(|| Error::Internal(format!("no marked generator of weight {w}")))
        })
        .collect::<Result<_>>()?;
    let images: Vec<GroupAlgElem> =
        pres.arrows.iter().map(|a| g.mul(&es[a.source], &gens[a.class].elem)).collect();

    let mut idem_ok = true;
    let mut sum = g.zero();
    for i in 0..n {
        sum = g.add(&sum, &es[i]);
        for j in 0..n {
            let prod = g.mul(&es[i], &es[j]);
            idem_ok &= if i == j { prod == es[i] } else { prod.iter().all(|c| c.is_zero()) };
        }
    }
    report.check("idempotents orthogonal", idem_ok, format!("{n} idempotents"));
    report.check("idempotents sum to 1", sum == g.one(), "");
    let ends_ok = pres
        .arrows
        .iter()
        .zip(&images)
        .all(|(a, s)| g.mul(s, &es[a.target]) == *s && s.iter().any(|c| !c.is_zero()));
    report.check("arrow endpoints", ends_ok, "e_i s e_j = e_i s for every arrow i -> j");

    let eval = |path: &[usize]| -> GroupAlgElem {
        path.iter().fold(None, |acc: Option<GroupAlgElem>, &a| {
            Some(match acc {
                None => images[a].clone(),
                Some(x) => g.mul(&x, &images[a]),
            })
        })
        .unwrap()
    };
    for r in &pres.relations {
        let mut v = g.zero();
        for (c, path) in &r.terms {
            v = g.add(&v, &g.scale(*c, &eval(path)));
        }
        report.check(format!("relation {}", r.label), v.iter().all(|c| c.is_zero()), "");
    }

    let alg = graded_quotient(pres)?;
    report.expect_eq("dimension", g.order(), alg.dim());
    let span: Vec<GroupAlgElem> = alg
        .basis
        .iter()
        .map(|b| if b.degree == 0 { es[b.source].clone() } else { eval(&b.path) })
        .collect();
    report.expect_eq("images span kG", g.order(), fq_rank(k, span));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::delta_presentation;

    const SMALL: [(u64, u32); 7] = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1)];

    #[test]
    fn group_axioms() {
        let g = DeltaGroup::new(3, 2).unwrap();
        for i in 0..g.order() {
            assert_eq!(g.mul_idx(i, g.inv_idx(i)), g.identity());
        }
        let mut seen = BTreeSet::new();
        for i in (0..g.order()).step_by(7) {
            for j in (0..g.order()).step_by(5) {
                for l in (0..g.order()).step_by(11) {
                    assert_eq!(g.mul_idx(g.mul_idx(i, j), l), g.mul_idx(i, g.mul_idx(j, l)));
                }
                seen.insert(g.mul_idx(i, j));
            }
        }
        assert!(seen.len() > 1);
    }

    #[test]
    fn idempotents() {
        for (p, f) in SMALL {
            let g = DeltaGroup::new(p, f).unwrap();
            let es = g.char_idempotents();
            assert_eq!(es.len(), p.pow(f) as usize - 1);
            let mut sum = g.zero();
            for (i, e) in es.iter().enumerate() {
                sum = g.add(&sum, e);
                for (j, e2) in es.iter().enumerate() {
                    let pr = g.mul(e, e2);
                    if i == j {
                        assert_eq!(&pr, e);
                    } else {
                        assert!(pr.iter().all(|c| c.is_zero()));
                    }
                }
            }
            assert_eq!(sum, g.one());
        }
    }

    #[test]
    fn two_one_radical() {
        let g = DeltaGroup::new(2, 1).unwrap();
        let eig = g.radical_eigenbasis();
        assert_eq!(eig.len(), 1);
        // x − 1
        assert_eq!(eig[0].elem, vec![FieldElem::ONE, FieldElem::ONE]);
        assert_eq!(eig[0].weight.residue(), 0);
    }

    #[test]
    fn eigen_weights_match_idempotents() {
        for (p, f) in SMALL {
            let g = DeltaGroup::new(p, f).unwrap();
            let es = g.char_idempotents();
            let eig = g.radical_eigenbasis();
            assert_eq!(eig.len(), g.unit_order());
            assert_eq!(eig.iter().filter(|e| e.marked).count(), f as usize);
            let rows = eig.iter().map(|e| e.elem.clone()).collect();
            assert_eq!(fq_rank(g.field(), rows), g.unit_order());
            for e in &eig {
                for (i, ei) in es.iter().enumerate() {
                    let j = e.weight.add(CharIdx::new(i as i64, g.unit_order() as u32)).residue() as usize;
                    assert_eq!(g.mul(ei, &e.elem), g.mul(&e.elem, &es[j]));
                }
            }
        }
    }

    #[test]
    fn x_sets() {
        let x = DeltaGroup::new(2, 2).unwrap().x_set();
        assert_eq!(x.residues, [1, 2].into());
        let x = DeltaGroup::new(2, 3).unwrap().x_set();
        assert_eq!(x.residues, [1, 2, 4].into());
        let x = DeltaGroup::new(3, 1).unwrap().x_set();
        assert_eq!(x.residues, [0].into());
        for (p, f) in SMALL {
            assert_eq!(DeltaGroup::new(p, f).unwrap().x_set(), XSet::expected(p, f));
        }
    }

    #[test]
    fn cartan_examples() {
        let c = DeltaGroup::new(2, 2).unwrap().cartan();
        assert_eq!(c, vec![vec![2, 1, 1], vec![1, 2, 1], vec![1, 1, 2]]);
        assert_eq!(DeltaGroup::new(3, 1).unwrap().cartan(), vec![vec![3, 0], vec![0, 3]]);
        assert_eq!(DeltaGroup::new(2, 1).unwrap().cartan(), vec![vec![2]]);
    }

    #[test]
    fn class_counts() {
        for f in 1..=4 {
            assert_eq!(DeltaGroup::new(2, f).unwrap().class_count(), 1 << f);
        }
        for p in [3u64, 5, 7] {
            assert_eq!(DeltaGroup::new(p, 1).unwrap().class_count(), p as usize + 3);
        }
    }

    #[test]
    fn iso_small() {
        for (p, f) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
            let g = DeltaGroup::new(p, f).unwrap();
            let r = verify_group_quiver_iso(&g, &delta_presentation(p, f).unwrap()).unwrap();
            assert!(r.pass, "({p},{f}): {:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn broken_relation_is_reported() {
        let g = DeltaGroup::new(2, 2).unwrap();
        let mut pres = delta_presentation(2, 2).unwrap();
        // replace a commutation relation by a false one: s·s′ = 0
        let r = pres.relations.iter_mut().find(|r| r.label.starts_with("comm")).unwrap();
        r.terms.truncate(1);
        let rep = verify_group_quiver_iso(&g, &pres).unwrap();
        assert!(!rep.pass);
    }
}
