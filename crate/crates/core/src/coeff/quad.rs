use std::fmt;

use num_traits::{One, Zero};

use super::rational::{rat_to_string, vp, Rat};
use crate::error::{Error, Result};

/// `a + b·π` in `K(π)`, `π² = d·p` with `d` a `p`-adic unit.
///
/// Coordinates are arbitrary rationals so that fractional ideals are
/// representable; integrality is a property, not an invariant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    pub a: Rat,
    pub b: Rat,
    d: Rat,
    p: u64,
}

impl QuadElem {
    pub fn new(a: Rat, b: Rat, d: Rat, p: u64) -> Result<Self> {
        if vp(&d, p) != Some(0) {
            return Err(Error::Domain(format!(
                "d = {} is not a {p}-adic unit",
                rat_to_string(&d)
            )));
        }
        Ok(QuadElem { a, b, d, p })
    }

    pub fn zero_like(&self) -> Self {
        QuadElem { a: Rat::zero(), b: Rat::zero(), d: self.d.clone(), p: self.p }
    }

    pub fn from_rat(a: Rat, like: &QuadElem) -> Self {
        QuadElem { a, b: Rat::zero(), d: like.d.clone(), p: like.p }
    }

    pub fn pi(d: Rat, p: u64) -> Result<Self> {
        Self::new(Rat::zero(), Rat::one(), d, p)
    }

    pub fn d(&self) -> &Rat {
        &self.d
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn check(&self, o: &QuadElem) -> Result<()> {
        if self.d != o.d || self.p != o.p {
            return Err(Error::Domain("QuadElem operands over different extensions".into()));
        }
        Ok(())
    }

    fn pi_sq(&self) -> Rat {
        &self.d * Rat::from_integer(self.p.into())
    }

    pub fn add(&self, o: &QuadElem) -> Result<QuadElem> {
        self.check(o)?;
        Ok(QuadElem { a: &self.a + &o.a, b: &self.b + &o.b, ..self.clone() })
    }

    pub fn sub(&self, o: &QuadElem) -> Result<QuadElem> {
        self.check(o)?;
        Ok(QuadElem { a: &self.a - &o.a, b: &self.b - &o.b, ..self.clone() })
    }

    pub fn mul(&self, o: &QuadElem) -> Result<QuadElem> {
        self.check(o)?;
        let a = &self.a * &o.a + &self.b * &o.b * self.pi_sq();
        let b = &self.a * &o.b + &self.b * &o.a;
        Ok(QuadElem { a, b, ..self.clone() })
    }

    pub fn neg(&self) -> QuadElem {
        QuadElem { a: -&self.a, b: -&self.b, ..self.clone() }
    }

    pub fn scale(&self, r: &Rat) -> QuadElem {
        QuadElem { a: &self.a * r, b: &self.b * r, ..self.clone() }
    }

    pub fn conj(&self) -> QuadElem {
        QuadElem { a: self.a.clone(), b: -&self.b, ..self.clone() }
    }

    pub fn trace(&self) -> Rat {
        &self.a * Rat::from_integer(2.into())
    }

    pub fn norm(&self) -> Rat {
        &self.a * &self.a - &self.b * &self.b * self.pi_sq()
    }

    pub fn inv(&self) -> Result<QuadElem> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        Ok(self.conj().scale(&n.recip()))
    }

    /// Valuation normalised so that `w(π) = 1`, `w(p) = 2`; `None` for zero.
    pub fn dval(&self) -> Option<i64> {
        let va = vp(&self.a, self.p).map(|v| 2 * v);
        let vb = vp(&self.b, self.p).map(|v| 2 * v + 1);
        match (va, vb) {
            (None, None) => None,
            (Some(x), None) | (None, Some(x)) => Some(x),
            (Some(x), Some(y)) => Some(x.min(y)),
        }
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}*pi", rat_to_string(&self.a), rat_to_string(&self.b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rational::rat;
    use proptest::prelude::*;

    fn q(a: (i64, i64), b: (i64, i64)) -> QuadElem {
        QuadElem::new(rat(a.0, a.1), rat(b.0, b.1), rat(-1, 1), 3).unwrap()
    }

    #[test]
    fn pi_squared() {
        let pi = QuadElem::pi(rat(-1, 1), 3).unwrap();
        let sq = pi.mul(&pi).unwrap();
        assert_eq!(sq.a, rat(-3, 1));
        assert!(sq.b.is_zero());
        assert_eq!(pi.dval(), Some(1));
        assert_eq!(sq.dval(), Some(2));
    }

    #[test]
    fn cube_root_of_unity() {
        // ζ = (-1 + π)/2 with π² = -3
        let z = q((-1, 2), (1, 2));
        let z3 = z.mul(&z).unwrap().mul(&z).unwrap();
        assert_eq!(z3, q((1, 1), (0, 1)));
        assert_eq!(z.trace(), rat(-1, 1));
    }

    #[test]
    fn mismatched_d_is_error() {
        let x = q((1, 1), (1, 1));
        let y = QuadElem::new(rat(1, 1), rat(1, 1), rat(2, 1), 3).unwrap();
        assert!(x.mul(&y).is_err());
        assert!(QuadElem::new(rat(1, 1), rat(0, 1), rat(3, 1), 3).is_err());
    }

    #[test]
    fn inverse() {
        let x = q((2, 1), (5, 7));
        let one = x.mul(&x.inv().unwrap()).unwrap();
        assert_eq!(one, q((1, 1), (0, 1)));
    }

    fn nonzero() -> impl Strategy<Value = QuadElem> {
        (-300i64..300, 1i64..50, -300i64..300, 1i64..50)
            .prop_filter("nonzero", |t| t.0 != 0 || t.2 != 0)
            .prop_map(|(a, ad, b, bd)| {
                QuadElem::new(rat(a, ad), rat(b, bd), rat(-1, 1), 3).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn dval_is_additive(x in nonzero(), y in nonzero()) {
            let xy = x.mul(&y).unwrap();
            prop_assert_eq!(xy.dval().unwrap(), x.dval().unwrap() + y.dval().unwrap());
            prop_assert_eq!(xy.norm(), x.norm() * y.norm());
        }

        #[test]
        fn trace_is_twice_a(x in nonzero()) {
            prop_assert_eq!(x.add(&x.conj()).unwrap().a, x.trace());
        }
    }
}
