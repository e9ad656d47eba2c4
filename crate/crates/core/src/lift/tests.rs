use super::*;
use crate::coeff::rat;
use crate::lattice::{Lattice, SymmElem};

fn v(xs: &[i64]) -> Vec<crate::coeff::Rat> {
    xs.iter().map(|&x| rat(x, 1)).collect()
}

fn show(rep: &crate::report::Report) -> String {
    rep.failures().map(|c| format!("{}: {}", c.id, c.details)).collect::<Vec<_>>().join("\n")
}

#[test]
fn diagonal_examples() {
    let p = LiftParams::group_ring(2, 1).unwrap();
    assert_eq!(diagonal_piece(&p).unwrap().basis(), &[v(&[1, 1]), v(&[0, 2])]);
    let p = LiftParams::new(3, 1, Variant::Nonsplit { d: rat(-1, 1) }, SymmElem::from_rats(vec![rat(1, 6), rat(1, 12)]))
        .unwrap();
    // O(1,1) + 0 ⊕ πO[π]
    let want = Lattice::from_generators(3, &[v(&[1, 1, 0]), v(&[0, 3, 0]), v(&[0, 0, 1])], 3).unwrap();
    assert_eq!(diagonal_piece(&p).unwrap(), want);
    let p = LiftParams::group_ring(3, 2).unwrap();
    let d = diagonal_piece(&p).unwrap();
    let pivots: Vec<_> = (0..3).map(|i| d.basis()[i][i].clone()).collect();
    assert_eq!(pivots, v(&[1, 3, 9]));
}

#[test]
fn standard_lifts_verify() {
    for (p, f) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)] {
        let params = LiftParams::group_ring(p, f).unwrap();
        let o = standard_lift(&params).unwrap();
        let rep = verify_lift(&o, &params).unwrap();
        assert!(rep.pass, "({p},{f}):\n{}", show(&rep));
    }
}

#[test]
fn measured_table_matches_recursion() {
    for (p, f) in [(2, 2), (2, 3), (2, 4), (3, 2), (5, 1), (7, 1)] {
        let params = LiftParams::group_ring(p, f).unwrap();
        let data = lift_data(&params).unwrap();
        assert_eq!(data.measured_m_table(&params).unwrap(), m_table(p, f).unwrap(), "({p},{f})");
    }
}

fn q(a: i64, b: i64) -> crate::coeff::Rat {
    rat(a, b)
}

#[test]
fn z2c2_anchor() {
    // g^k ↦ (1, (−1)^k)
    let gens: Vec<_> = (0..2).map(|k| v(&[1, if k == 0 { 1 } else { -1 }])).collect();
    let z2c2 = Lattice::from_generators(2, &gens, 2).unwrap();
    let o = standard_lift(&LiftParams::group_ring(2, 1).unwrap()).unwrap();
    assert_eq!(o.piece(0, 0).unwrap(), &z2c2);
}

#[test]
fn z3c6_block_anchor() {
    use crate::coeff::QuadElem;
    // the principal block of Z₃C₆ sees the characters h ↦ ζ₆^{2j}; in K ⊕ K(π), π² = −3,
    // h^k ↦ (1, ζ^k) with ζ = (−1 + π)/2
    let zeta = QuadElem::new(q(-1, 2), q(1, 2), q(-1, 1), 3).unwrap();
    let mut pw = QuadElem::from_rat(q(1, 1), &zeta);
    let mut gens = Vec::new();
    for _ in 0..6 {
        gens.push(vec![q(1, 1), pw.a.clone(), pw.b.clone()]);
        pw = pw.mul(&zeta).unwrap();
    }
    let block = Lattice::from_generators(3, &gens, 3).unwrap();
    let params = LiftParams::group_ring(3, 1).unwrap();
    assert_eq!(params.variant, Variant::Nonsplit { d: q(-1, 1) });
    let o = standard_lift(&params).unwrap();
    assert_eq!(o.piece(0, 0).unwrap(), &block);
}

#[test]
fn nonsplit_u_with_non_group_ring_scaling_is_not_selfdual() {
    let bad = LiftParams::new(3, 1, Variant::Nonsplit { d: q(-1, 1) }, SymmElem::from_rats(vec![q(1, 6), q(1, 12)]))
        .unwrap();
    let good = LiftParams::group_ring(3, 1).unwrap();
    let o = standard_lift(&bad).unwrap();
    assert_eq!(o, standard_lift(&good).unwrap());
    assert!(!verify_lift(&o, &bad).unwrap().pass);
    assert!(verify_lift(&o, &good).unwrap().pass);
}

const ROUNDTRIP_CASES: [(u64, u32); 6] = [(2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)];

#[test]
fn normalize_is_a_fixpoint_and_inverts_conjugation() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for (p, f) in ROUNDTRIP_CASES {
        let params = LiftParams::group_ring(p, f).unwrap();
        let o = standard_lift(&params).unwrap();
        assert_eq!(normalize(&params, &o).unwrap(), o, "({p},{f}) fixpoint");
        for _ in 0..100 {
            let ys: Vec<_> = (0..params.kappa()).map(|_| random_ext_element(&params, &mut rng)).collect();
            let c = conjugate(&params, &o, &ys).unwrap();
            assert_eq!(normalize(&params, &c).unwrap(), o, "({p},{f})");
        }
    }
}

#[test]
fn conjugates_stay_selfdual_orders() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for (p, f) in [(2, 2), (3, 2)] {
        let params = LiftParams::group_ring(p, f).unwrap();
        let o = standard_lift(&params).unwrap();
        let ys: Vec<_> = (0..params.kappa()).map(|_| random_ext_element(&params, &mut rng)).collect();
        let c = conjugate(&params, &o, &ys).unwrap();
        let mut rep = c.is_order().unwrap();
        rep.merge(c.is_selfdual(&params.u).unwrap());
        assert!(rep.pass, "({p},{f}):\n{}", show(&rep));
    }
}

#[test]
fn rotation_normalizes_back() {
    for (p, f) in ROUNDTRIP_CASES {
        let params = LiftParams::group_ring(p, f).unwrap();
        let o = standard_lift(&params).unwrap();
        for shift in 1..params.kappa() {
            let r = rotate(&params, &o, shift).unwrap();
            assert_eq!(normalize(&params, &r).unwrap(), o, "({p},{f}) shift {shift}");
        }
    }
}

/// `x·(1 + p^f·r)`-style perturbations and other admissible changes of `u`.
fn equivalent_u(params: &LiftParams, r: i64) -> LiftParams {
    use crate::coeff::QuadElem;
    use crate::lattice::Scalar;
    let p = params.p as i64;
    // a p-adic unit ≠ 1
    let unit = q(1 + p * r, 1 + p * (r + 1));
    let k = params.kappa();
    let mut comps = params.u.comps.clone();
    for c in comps.iter_mut().take(k) {
        c.u0 = &c.u0 * &unit * q(1 + p * (r + 2), 1);
    }
    match &params.variant {
        Variant::Char2 => comps[k].u0 = &comps[k].u0 * &unit,
        Variant::Split => {
            comps[k].u0 = &comps[k].u0 * &unit;
            comps[k + 1].u0 = &comps[k + 1].u0 * &unit;
        }
        Variant::Nonsplit { d } => {
            let w = QuadElem::new(unit.clone(), q(r, 1), d.clone(), params.p).unwrap();
            let base = QuadElem::new(comps[k].u0.clone(), comps[k].u1.clone(), d.clone(), params.p).unwrap();
            comps[k] = Scalar::quad(&base.mul(&w).unwrap());
        }
    }
    LiftParams::new(params.p, params.f, params.variant.clone(), SymmElem { comps }).unwrap()
}

#[test]
fn u_independence() {
    for (p, f) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)] {
        let params = LiftParams::group_ring(p, f).unwrap();
        let o = standard_lift(&params).unwrap();
        for r in 1..4 {
            let alt = equivalent_u(&params, r);
            assert_ne!(alt.u, params.u);
            assert_eq!(standard_lift(&alt).unwrap(), o, "({p},{f}) r={r}");
        }
    }
}

#[test]
fn scaled_exceptional_piece_breaks_selfduality() {
    // scaling by p ("doubling" for p = 2); 2 is a unit for odd p
    for (p, f) in [(2, 2), (3, 2)] {
        let params = LiftParams::group_ring(p, f).unwrap();
        let mut o = standard_lift(&params).unwrap();
        let k = params.kappa();
        let l = o.piece(k - 1, 0).unwrap().scale(&q(p as i64, 1));
        o.set_piece(k - 1, 0, l).unwrap();
        let rep = o.is_selfdual(&params.u).unwrap();
        assert!(!rep.pass, "({p},{f})");
    }
}

#[test]
fn piece_pairing_and_rank_symmetry() {
    for (p, f) in [(2, 2), (2, 3), (2, 4), (3, 2), (5, 1)] {
        let params = LiftParams::group_ring(p, f).unwrap();
        let data = lift_data(&params).unwrap();
        let k = params.kappa();
        for i in 0..k {
            for j in (0..k).filter(|&j| j != i) {
                assert_eq!(data.pieces[i][j].dim(), data.pieces[j][i].dim());
                let s = data.m_piece(&params, i, j).unwrap() + data.m_piece(&params, j, i).unwrap();
                assert_eq!(s, f as i64, "({p},{f}) {i}->{j}");
            }
        }
    }
}

#[test]
fn digit_orderings_give_the_same_pieces() {
    // every ordering of a digit word yields the same product lattice
    for (p, f) in [(2, 2), (2, 3), (3, 2)] {
        let params = LiftParams::group_ring(p, f).unwrap();
        let data = lift_data(&params).unwrap();
        let k = params.kappa();
        for w in 1..p.pow(f) as usize {
            let counts = digits(w, p, f);
            for i in 0..k {
                let mut seen: Option<Lattice> = None;
                for word in word_orderings(&counts) {
                    let l = path_lattice(&params, &data.arrows, &data.ring, i, &word);
                    match &seen {
                        None => seen = Some(l),
                        Some(s) => assert_eq!(s, &l, "({p},{f}) w={w} i={i}"),
                    }
                }
            }
        }
    }
}

#[test]
fn sl2_8_order_verifies() {
    let fx = crate::fixture::DecompFixture::from_json(include_str!("../../fixtures/sl2_8.json")).unwrap();
    let (o, rep) = verify_nebe(&fx).unwrap();
    assert!(rep.pass, "{}", show(&rep));
    assert_eq!(o.num_idempotents(), 8);
}
