use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// `p^k` for any integer `k`.
pub fn pow_p(p: u64, k: i64) -> Rat {
    let base = BigInt::from(p).pow(k.unsigned_abs() as u32);
    if k >= 0 {
        Rat::from_integer(base)
    } else {
        Rat::new(BigInt::one(), base)
    }
}

pub fn vp_int(n: &BigInt, p: u64) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

/// `p`-adic valuation; `None` for zero.
pub fn vp(x: &Rat, p: u64) -> Option<i64> {
    Some(vp_int(x.numer(), p)? - vp_int(x.denom(), p)?)
}

/// `x / p^{v_p(x)}`.
pub fn unit_part(x: &Rat, p: u64) -> Rat {
    match vp(x, p) {
        None => Rat::zero(),
        Some(v) => x * pow_p(p, -v),
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let g = a.extended_gcd(m);
    debug_assert!(g.gcd.is_one());
    g.x.mod_floor(m)
}

/// The unique `r` in `[0, p^k)` with denominator a power of `p` such that
/// `x - r` lies in `p^k Z_(p)`. Works for any integer `k`.
pub fn canonical_residue(x: &Rat, p: u64, k: i64) -> Rat {
    if x.is_zero() {
        return Rat::zero();
    }
    let pb = BigInt::from(p);
    let s = -vp_int(x.denom(), p).unwrap();
    // denominator = p^{-s} * d', with s <= 0
    let s_den = -s;
    let dprime = x.denom() / pb.pow(s_den as u32);
    let t = s_den.max(-k).max(0);
    let m = k + t;
    debug_assert!(m >= 0);
    let modulus = pb.pow(m as u32);
    if modulus.is_one() {
        return Rat::zero();
    }
    let scaled_num = x.numer() * pb.pow((t - s_den) as u32);
    let x_int = (scaled_num * mod_inverse(&dprime.mod_floor(&modulus), &modulus)).mod_floor(&modulus);
    Rat::new(x_int, pb.pow(t as u32))
}

pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Domain(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Element of `Z_(p)`: a rational whose denominator is prime to `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PLocalRat {
    value: Rat,
    p: u64,
}

impl PLocalRat {
    pub fn new(value: Rat, p: u64) -> Result<Self> {
        if vp_int(value.denom(), p) != Some(0) {
            return Err(Error::Domain(format!(
                "{} is not {p}-integral",
                rat_to_string(&value)
            )));
        }
        Ok(PLocalRat { value, p })
    }

    pub fn from_ints(num: i64, den: i64, p: u64) -> Result<Self> {
        Self::new(rat(num, den), p)
    }

    pub fn value(&self) -> &Rat {
        &self.value
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn num(&self) -> &BigInt {
        self.value.numer()
    }

    pub fn den(&self) -> &BigInt {
        self.value.denom()
    }

    pub fn valuation(&self) -> Option<i64> {
        vp(&self.value, self.p)
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Some(0)
    }

    pub fn inverse(&self) -> Option<PLocalRat> {
        if !self.is_unit() {
            return None;
        }
        Some(PLocalRat { value: self.value.recip(), p: self.p })
    }

    /// Image in the residue field `F_p`.
    pub fn residue(&self) -> u64 {
        let p = BigInt::from(self.p);
        let d = self.value.denom().mod_floor(&p);
        let n = self.value.numer().mod_floor(&p);
        (n * mod_inverse(&d, &p)).mod_floor(&p).to_u64().unwrap()
    }
}

impl fmt::Display for PLocalRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&rat_to_string(&self.value))
    }
}

macro_rules! plocal_binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr for &PLocalRat {
            type Output = PLocalRat;
            fn $m(self, rhs: &PLocalRat) -> PLocalRat {
                assert_eq!(self.p, rhs.p, "mixed primes");
                PLocalRat { value: &self.value $op &rhs.value, p: self.p }
            }
        }
        impl $tr for PLocalRat {
            type Output = PLocalRat;
            fn $m(self, rhs: PLocalRat) -> PLocalRat {
                (&self).$m(&rhs)
            }
        }
    };
}

plocal_binop!(Add, add, +);
plocal_binop!(Sub, sub, -);
plocal_binop!(Mul, mul, *);

impl Neg for PLocalRat {
    type Output = PLocalRat;
    fn neg(self) -> PLocalRat {
        PLocalRat { value: -self.value, p: self.p }
    }
}
