use num_traits::{One, Zero};

use crate::coeff::{rat, vp, Rat};
use crate::error::{Error, Result};
use crate::lattice::{Ambient, Block, BlockOrder, Center, Scalar, SymmElem};

/// Shape of the non-linear Wedderburn part `K̃^{κ×κ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `p = 2`, `K̃ = K`.
    Char2,
    /// `p` odd, `f` even: `K̃ = K ⊕ K`.
    Split,
    /// `p` odd, `f` odd: `K̃ = K(π)`, `π² = d·p`.
    Nonsplit { d: Rat },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftParams {
    pub p: u64,
    pub f: u32,
    pub variant: Variant,
    pub u: SymmElem,
}

pub fn kappa(p: u64, f: u32) -> usize {
    let q = p.pow(f) as usize;
    if p == 2 {
        q - 1
    } else {
        (q - 1) / 2
    }
}

/// Doubled units for the rank-two `K̃` cases.
pub fn index_scale(p: u64) -> i64 {
    if p == 2 {
        1
    } else {
        2
    }
}

fn scalar_valuation(s: &Scalar, p: u64, quad: bool) -> Option<i64> {
    // doubled valuation in K(π); plain valuation otherwise
    if quad {
        let a = vp(&s.u0, p).map(|v| 2 * v);
        let b = vp(&s.u1, p).map(|v| 2 * v + 1);
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        }
    } else if s.u1.is_zero() {
        vp(&s.u0, p)
    } else {
        None
    }
}

impl LiftParams {
    pub fn new(p: u64, f: u32, variant: Variant, u: SymmElem) -> Result<LiftParams> {
        if f == 0 {
            return Err(Error::Domain("f must be positive".into()));
        }
        match &variant {
            Variant::Char2 if p != 2 => return Err(Error::Domain("char2 variant needs p = 2".into())),
            Variant::Split | Variant::Nonsplit { .. } if p == 2 => {
                return Err(Error::Domain("p = 2 uses the char2 variant".into()))
            }
            Variant::Split if f % 2 == 1 => {
                return Err(Error::Unsupported("split variant: f must be even".into()))
            }
            Variant::Nonsplit { .. } if f % 2 == 0 => {
                return Err(Error::Unsupported("nonsplit variant: f must be odd".into()))
            }
            Variant::Nonsplit { d } if vp(d, p) != Some(0) => {
                return Err(Error::Domain("nonsplit variant needs a unit d".into()))
            }
            _ => {}
        }
        if !crate::coeff::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let params = LiftParams { p, f, variant, u };
        let expected = params.ambient()?.blocks.len();
        if params.u.comps.len() != expected {
            return Err(Error::Shape(format!("u needs {expected} components, got {}", params.u.comps.len())));
        }
        let nonlinear_quad = matches!(params.variant, Variant::Nonsplit { .. });
        for (b, s) in params.u.comps.iter().enumerate() {
            let quad = nonlinear_quad && b == expected - 1;
            let want = if quad { -2 * f as i64 } else { -(f as i64) };
            if scalar_valuation(s, p, quad) != Some(want) {
                return Err(Error::Domain(format!("u component {b} must have p-valuation -{f}")));
            }
        }
        Ok(params)
    }

    /// Parameters with the group-ring symmetrising element `u_χ = χ(1)/|Δ₂(p^f)|`.
    pub fn group_ring(p: u64, f: u32) -> Result<LiftParams> {
        let q = p.pow(f) as i64;
        let order = q * (q - 1);
        let k = kappa(p, f);
        let line = rat(1, order);
        let nonlinear = rat(k as i64, order);
        let mut comps = vec![Scalar::rat(line); k];
        let variant = if p == 2 {
            comps.push(Scalar::rat(nonlinear));
            Variant::Char2
        } else if f % 2 == 0 {
            comps.push(Scalar::rat(nonlinear.clone()));
            comps.push(Scalar::rat(nonlinear));
            Variant::Split
        } else {
            comps.push(Scalar::rat(nonlinear));
            // K(√(−p)) for p ≡ 3 (4), K(√p) for p ≡ 1 (4)
            Variant::Nonsplit { d: if p % 4 == 3 { rat(-1, 1) } else { rat(1, 1) } }
        };
        LiftParams::new(p, f, variant, SymmElem { comps })
    }

    pub fn kappa(&self) -> usize {
        kappa(self.p, self.f)
    }

    pub fn scale(&self) -> i64 {
        index_scale(self.p)
    }

    /// Rational coordinates of `K̃`.
    pub fn ext_degree(&self) -> usize {
        match self.variant {
            Variant::Char2 => 1,
            _ => 2,
        }
    }

    /// `c = u_{κ+1}/u_{κ+2}` in the split case.
    pub fn split_c(&self) -> Option<Rat> {
        let k = self.kappa();
        match self.variant {
            Variant::Split => Some(&self.u.comps[k].u0 / &self.u.comps[k + 1].u0),
            _ => None,
        }
    }

    /// `K^κ ⊕ K̃^{κ×κ}`, lines first.
    pub fn ambient(&self) -> Result<Ambient> {
        let k = self.kappa();
        let mut blocks = vec![Block { n: 1, center: Center::Rational }; k];
        match &self.variant {
            Variant::Char2 => blocks.push(Block { n: k, center: Center::Rational }),
            Variant::Split => {
                blocks.push(Block { n: k, center: Center::Rational });
                blocks.push(Block { n: k, center: Center::Rational });
            }
            Variant::Nonsplit { d } => blocks.push(Block { n: k, center: Center::Quad { d: d.clone() } }),
        }
        Ambient::new(self.p, blocks)
    }

    /// Vertex label of slot `i` (slot `i` is the vertex `2i`).
    pub fn vertex_label(&self, slot: usize) -> String {
        let n = self.p.pow(self.f) as usize - 1;
        ((2 * slot) % n.max(1)).to_string()
    }

    /// Empty order over the lift ambient with the standard idempotents.
    pub fn empty_order(&self) -> Result<BlockOrder> {
        let amb = self.ambient()?;
        let k = self.kappa();
        let nb = amb.blocks.len();
        let positions = (0..k)
            .map(|i| (0..nb).map(|b| if b == i { Some(0) } else if b >= k { Some(i) } else { None }).collect())
            .collect();
        let mut block_labels: Vec<String> = (0..k).map(|i| format!("lin{}", self.vertex_label(i))).collect();
        match self.variant {
            Variant::Split => block_labels.extend(["mat+".to_string(), "mat-".to_string()]),
            _ => block_labels.push("mat".into()),
        }
        BlockOrder::new(amb, positions, (0..k).map(|i| self.vertex_label(i)).collect(), block_labels)
    }

    /// Product in `K̃` on rational coordinates.
    pub fn ext_mul(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        match &self.variant {
            Variant::Char2 => vec![&x[0] * &y[0]],
            Variant::Split => vec![&x[0] * &y[0], &x[1] * &y[1]],
            Variant::Nonsplit { d } => {
                let dp = d * Rat::from_integer(self.p.into());
                vec![&x[0] * &y[0] + &x[1] * &y[1] * dp, &x[0] * &y[1] + &x[1] * &y[0]]
            }
        }
    }

    pub fn ext_one(&self) -> Vec<Rat> {
        match self.variant {
            Variant::Char2 => vec![Rat::one()],
            Variant::Split => vec![Rat::one(), Rat::one()],
            Variant::Nonsplit { .. } => vec![Rat::one(), Rat::zero()],
        }
    }

    pub fn ext_inv(&self, x: &[Rat]) -> Option<Vec<Rat>> {
        match &self.variant {
            Variant::Char2 => (!x[0].is_zero()).then(|| vec![x[0].recip()]),
            Variant::Split => (!x[0].is_zero() && !x[1].is_zero()).then(|| vec![x[0].recip(), x[1].recip()]),
            Variant::Nonsplit { d } => {
                let dp = d * Rat::from_integer(self.p.into());
                let norm = &x[0] * &x[0] - &x[1] * &x[1] * dp;
                (!norm.is_zero()).then(|| vec![&x[0] / &norm, -&x[1] / &norm])
            }
        }
    }
}
