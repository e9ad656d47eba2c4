use num_traits::{One, Zero};

use crate::coeff::{rat_to_string, vp, QuadElem, Rat};
use crate::error::{Error, Result};
use crate::linalg::RatVec;

/// Centre of a Wedderburn block: `K = Q` (p-locally) or `K(π)`, `π² = d·p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Center {
    Rational,
    Quad { d: Rat },
}

impl Center {
    pub fn degree(&self) -> usize {
        match self {
            Center::Rational => 1,
            Center::Quad { .. } => 2,
        }
    }
}

/// An `n × n` matrix block over its centre.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub n: usize,
    pub center: Center,
}

/// A central scalar `u₀ + u₁π`; `u₁ = 0` in rational blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalar {
    pub u0: Rat,
    pub u1: Rat,
}

impl Scalar {
    pub fn rat(u0: Rat) -> Scalar {
        Scalar { u0, u1: Rat::zero() }
    }

    pub fn quad(q: &QuadElem) -> Scalar {
        Scalar { u0: q.a.clone(), u1: q.b.clone() }
    }
}

/// A symmetrising element: one central scalar per block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmElem {
    pub comps: Vec<Scalar>,
}

impl SymmElem {
    pub fn from_rats(us: Vec<Rat>) -> SymmElem {
        SymmElem { comps: us.into_iter().map(Scalar::rat).collect() }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.comps
            .iter()
            .map(|s| {
                if s.u1.is_zero() {
                    rat_to_string(&s.u0)
                } else {
                    format!("{}+{}*pi", rat_to_string(&s.u0), rat_to_string(&s.u1))
                }
            })
            .collect()
    }
}

/// `A = ⊕_b M_{n_b}(Z_b)`, flattened to rational coordinates: blocks in
/// order, entries row-major, `deg` coordinates per entry (`a + bπ ↦ (a, b)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambient {
    pub p: u64,
    pub blocks: Vec<Block>,
    offsets: Vec<usize>,
}

/// An element of the ambient algebra in flattened coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgElem {
    pub coords: RatVec,
}

impl Ambient {
    pub fn new(p: u64, blocks: Vec<Block>) -> Result<Ambient> {
        let mut offsets = Vec::with_capacity(blocks.len() + 1);
        let mut off = 0;
        for b in &blocks {
            if let Center::Quad { d } = &b.center {
                if vp(d, p) != Some(0) {
                    return Err(Error::Domain("quadratic centre needs a unit d".into()));
                }
            }
            offsets.push(off);
            off += b.n * b.n * b.center.degree();
        }
        offsets.push(off);
        Ok(Ambient { p, blocks, offsets })
    }

    pub fn dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// First coordinate of entry `(r, c)` of block `b`.
    pub fn coord(&self, b: usize, r: usize, c: usize) -> usize {
        let blk = &self.blocks[b];
        self.offsets[b] + (r * blk.n + c) * blk.center.degree()
    }

    pub fn zero(&self) -> AlgElem {
        AlgElem { coords: vec![Rat::zero(); self.dim()] }
    }

    pub fn one(&self) -> AlgElem {
        let mut x = self.zero();
        for (b, blk) in self.blocks.iter().enumerate() {
            for r in 0..blk.n {
                x.coords[self.coord(b, r, r)] = Rat::one();
            }
        }
        x
    }

    /// Product of two centre elements of block `b`, given as coordinate slices.
    pub fn center_mul(&self, b: usize, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        match &self.blocks[b].center {
            Center::Rational => vec![&x[0] * &y[0]],
            Center::Quad { d } => {
                let dp = d * Rat::from_integer(self.p.into());
                vec![&x[0] * &y[0] + &x[1] * &y[1] * &dp, &x[0] * &y[1] + &x[1] * &y[0]]
            }
        }
    }

    /// `tr_{Z_b/K}(u · x)` for a centre element `x` of block `b`.
    pub fn center_trace(&self, b: usize, u: &Scalar, x: &[Rat]) -> Rat {
        match &self.blocks[b].center {
            Center::Rational => &u.u0 * &x[0],
            Center::Quad { d } => {
                let dp = d * Rat::from_integer(self.p.into());
                Rat::from_integer(2.into()) * (&u.u0 * &x[0] + &u.u1 * &x[1] * dp)
            }
        }
    }

    pub fn mul(&self, x: &AlgElem, y: &AlgElem) -> AlgElem {
        let mut z = self.zero();
        for (b, blk) in self.blocks.iter().enumerate() {
            let e = blk.center.degree();
            for r in 0..blk.n {
                for k in 0..blk.n {
                    let xi = self.coord(b, r, k);
                    if x.coords[xi..xi + e].iter().all(|c| c.is_zero()) {
                        continue;
                    }
                    for c in 0..blk.n {
                        let yi = self.coord(b, k, c);
                        let prod = self.center_mul(b, &x.coords[xi..xi + e], &y.coords[yi..yi + e]);
                        let zi = self.coord(b, r, c);
                        for (t, v) in prod.into_iter().enumerate() {
                            z.coords[zi + t] += v;
                        }
                    }
                }
            }
        }
        z
    }

    fn check_u(&self, u: &SymmElem) -> Result<()> {
        if u.comps.len() != self.blocks.len() {
            return Err(Error::Shape(format!("u has {} components, expected {}", u.comps.len(), self.blocks.len())));
        }
        Ok(())
    }

    /// `T_u(x, y) = Σ_b tr_{Z_b/K}(u_b · tr(x_b y_b))`.
    pub fn trace_form(&self, u: &SymmElem, x: &AlgElem, y: &AlgElem) -> Result<Rat> {
        self.check_u(u)?;
        let xy = self.mul(x, y);
        let mut t = Rat::zero();
        for (b, blk) in self.blocks.iter().enumerate() {
            let e = blk.center.degree();
            for r in 0..blk.n {
                let i = self.coord(b, r, r);
                t += self.center_trace(b, &u.comps[b], &xy.coords[i..i + e]);
            }
        }
        Ok(t)
    }

    /// Gram matrix `F` with `T_u(x, y) = x·F·yᵀ` in flattened coordinates.
    pub fn gram(&self, u: &SymmElem) -> Result<Vec<RatVec>> {
        self.check_u(u)?;
        let dim = self.dim();
        let mut g = vec![vec![Rat::zero(); dim]; dim];
        for (b, blk) in self.blocks.iter().enumerate() {
            let e = blk.center.degree();
            for r in 0..blk.n {
                for c in 0..blk.n {
                    let (xi, yi) = (self.coord(b, r, c), self.coord(b, c, r));
                    for s in 0..e {
                        for t in 0..e {
                            let mut xs = vec![Rat::zero(); e];
                            let mut ys = vec![Rat::zero(); e];
                            xs[s] = Rat::one();
                            ys[t] = Rat::one();
                            let prod = self.center_mul(b, &xs, &ys);
                            g[xi + s][yi + t] = self.center_trace(b, &u.comps[b], &prod);
                        }
                    }
                }
            }
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;
    use crate::linalg::{rat_matmul, rat_transpose};
    use proptest::prelude::*;

    fn sample_ambient() -> Ambient {
        Ambient::new(
            3,
            vec![
                Block { n: 1, center: Center::Rational },
                Block { n: 2, center: Center::Rational },
                Block { n: 2, center: Center::Quad { d: rat(-1, 1) } },
            ],
        )
        .unwrap()
    }

    fn sample_u() -> SymmElem {
        SymmElem {
            comps: vec![
                Scalar::rat(rat(1, 3)),
                Scalar::rat(rat(2, 9)),
                Scalar { u0: rat(1, 6), u1: rat(5, 7) },
            ],
        }
    }

    fn elem(amb: &Ambient, xs: &[i64]) -> AlgElem {
        AlgElem { coords: xs.iter().take(amb.dim()).map(|&x| rat(x, 1)).collect() }
    }

    #[test]
    fn one_is_identity() {
        let amb = sample_ambient();
        assert_eq!(amb.dim(), 1 + 4 + 8);
        let x = elem(&amb, &(0..13).map(|i| i * 3 - 7).collect::<Vec<_>>());
        assert_eq!(amb.mul(&amb.one(), &x), x);
        assert_eq!(amb.mul(&x, &amb.one()), x);
    }

    #[test]
    fn quad_center_squares_pi() {
        let amb = sample_ambient();
        let pi = vec![rat(0, 1), rat(1, 1)];
        assert_eq!(amb.center_mul(2, &pi, &pi), vec![rat(-3, 1), rat(0, 1)]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn trace_form_associative_and_symmetric(
            a in proptest::collection::vec(-9i64..9, 13),
            b in proptest::collection::vec(-9i64..9, 13),
            c in proptest::collection::vec(-9i64..9, 13),
        ) {
            let amb = sample_ambient();
            let u = sample_u();
            let (a, b, c) = (elem(&amb, &a), elem(&amb, &b), elem(&amb, &c));
            let lhs = amb.trace_form(&u, &amb.mul(&a, &b), &c).unwrap();
            let rhs = amb.trace_form(&u, &a, &amb.mul(&b, &c)).unwrap();
            prop_assert_eq!(&lhs, &rhs);
            prop_assert_eq!(amb.trace_form(&u, &a, &b).unwrap(), amb.trace_form(&u, &b, &a).unwrap());
            let g = amb.gram(&u).unwrap();
            let ab = amb.mul(&a, &b);
            let via_gram = rat_matmul(&rat_matmul(&[ab.coords.clone()], &g), &rat_transpose(&[c.coords.clone()]));
            prop_assert_eq!(&via_gram[0][0], &lhs);
        }
    }
}
