use std::fmt;

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Element of `F_{p^f}`, encoded as `sum c_i p^i` where `c_i` is the
/// coefficient of `x^i` in the polynomial representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Residue in `Z/(p^f - 1)`, i.e. an index into the character group of
/// the cyclic group `F_{p^f}^x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CharIdx {
    residue: u32,
    modulus: u32,
}

impl CharIdx {
    pub fn new(value: i64, modulus: u32) -> Self {
        assert!(modulus > 0);
        let r = value.rem_euclid(modulus as i64) as u32;
        CharIdx { residue: r, modulus }
    }

    pub fn residue(self) -> u32 {
        self.residue
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn add(self, other: CharIdx) -> CharIdx {
        assert_eq!(self.modulus, other.modulus);
        CharIdx::new(self.residue as i64 + other.residue as i64, self.modulus)
    }

    pub fn neg(self) -> CharIdx {
        CharIdx::new(-(self.residue as i64), self.modulus)
    }
}

impl fmt::Display for CharIdx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

// Dense polynomials over F_p, lowest coefficient first, no trailing zeros.
type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn poly_rem(a: &Poly, m: &Poly, p: u64) -> Poly {
    let mut r = a.clone();
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        if c != 0 {
            for (k, &mk) in m.iter().enumerate() {
                let idx = top - dm + k;
                r[idx] = (r[idx] + p - c * mk % p) % p;
            }
        }
        r.pop();
        r = trim(r);
        if r.len() <= dm {
            break;
        }
    }
    trim(r)
}

fn poly_mulmod(a: &Poly, b: &Poly, m: &Poly, p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&trim(prod), m, p)
}

fn poly_powmod(base: &Poly, mut e: u64, m: &Poly, p: u64) -> Poly {
    let mut result: Poly = vec![1];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mulmod(&result, &b, m, p);
        }
        b = poly_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    result
}

fn poly_sub(a: &Poly, b: &Poly, p: u64) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(out)
}

fn poly_gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
    let mut x = trim(a.clone());
    let mut y = trim(b.clone());
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Rabin's test: `g` of degree `f` is irreducible iff `g | x^{p^f} - x` and
/// `gcd(x^{p^{f/r}} - x, g) = 1` for every prime `r | f`.
fn is_irreducible(g: &Poly, p: u64) -> bool {
    let f = (g.len() - 1) as u32;
    if f == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    let frob = |k: u32| -> Poly {
        let mut t = x.clone();
        for _ in 0..k {
            t = poly_powmod(&t, p, g, p);
        }
        t
    };
    if !poly_sub(&frob(f), &x, p).is_empty() {
        return false;
    }
    for r in prime_factors(f as u64) {
        let h = poly_sub(&frob(f / r as u32), &x, p);
        if poly_gcd(g, &h, p).len() != 1 {
            return false;
        }
    }
    true
}

/// The finite field `F_{p^f}` with a deterministic modulus (the least
/// irreducible monic polynomial, comparing coefficients from `x^{f-1}`
/// down) and the least primitive element as generator.
#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    f: u32,
    size: u32,
    modulus: Vec<u32>,
    exp: Vec<FieldElem>,
    log: Vec<u32>,
}

impl Field {
    pub fn new(p: u64, f: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if f == 0 {
            return Err(Error::Domain("extension degree must be positive".into()));
        }
        let size = (p as u128).checked_pow(f).unwrap_or(u128::MAX);
        if size > 1 << 20 {
            return Err(Error::FieldTooLarge { p, f });
        }
        let size = size as u64;
        let modulus = Self::find_modulus(p, f)?;
        let order = size - 1;
        let factors = prime_factors(order);

        let decode = |n: u64| -> Poly {
            let mut c = Vec::with_capacity(f as usize);
            let mut n = n;
            for _ in 0..f {
                c.push(n % p);
                n /= p;
            }
            trim(c)
        };
        let encode = |a: &Poly| -> u32 {
            let mut n = 0u64;
            for &c in a.iter().rev() {
                n = n * p + c;
            }
            n as u32
        };

        let mut generator = None;
        for cand in 1..size {
            let h = decode(cand);
            if factors
                .iter()
                .all(|&r| poly_powmod(&h, order / r, &modulus, p) != vec![1])
            {
                generator = Some(h);
                break;
            }
        }
        let generator =
            generator.ok_or_else(|| Error::Internal("no primitive element found".into()))?;

        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![u32::MAX; size as usize];
        let mut cur: Poly = vec![1];
        for k in 0..order {
            let e = encode(&cur);
            exp.push(FieldElem(e));
            log[e as usize] = k as u32;
            cur = poly_mulmod(&cur, &generator, &modulus, p);
        }
        if encode(&cur) != 1 || log.iter().skip(1).any(|&l| l == u32::MAX) {
            return Err(Error::Internal("generator table incomplete".into()));
        }
        Ok(Field {
            p: p as u32,
            f,
            size: size as u32,
            modulus: modulus.iter().map(|&c| c as u32).collect(),
            exp,
            log,
        })
    }

    fn find_modulus(p: u64, f: u32) -> Result<Poly> {
        let count = p.pow(f);
        for n in 0..count {
            // n encodes (c_{f-1}, ..., c_0) big-endian so that the scan is
            // lexicographic from the highest non-leading coefficient.
            let mut coeffs = vec![0u64; f as usize + 1];
            let mut m = n;
            for k in 0..f as usize {
                coeffs[k] = m % p;
                m /= p;
            }
            coeffs[f as usize] = 1;
            if f > 1 && coeffs[0] == 0 {
                continue;
            }
            if is_irreducible(&coeffs, p) {
                return Ok(coeffs);
            }
        }
        Err(Error::Internal(format!("no irreducible polynomial of degree {f} over F_{p}")))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Order of the multiplicative group, `p^f - 1`.
    pub fn unit_order(&self) -> u32 {
        self.size - 1
    }

    /// Monic modulus, coefficients lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> FieldElem {
        if self.size == 2 {
            FieldElem::ONE
        } else {
            self.exp[1]
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.size).map(FieldElem)
    }

    pub fn units(&self) -> impl Iterator<Item = FieldElem> + '_ {
        self.exp.iter().copied()
    }

    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        let p = self.p;
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.f {
            out += ((x % p + y % p) % p) * scale;
            x /= p;
            y /= p;
            scale = scale.wrapping_mul(p);
        }
        FieldElem(out)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let mut x = a.0;
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.f {
            out += ((p - x % p) % p) * scale;
            x /= p;
            scale = scale.wrapping_mul(p);
        }
        FieldElem(out)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.is_zero() || b.is_zero() {
            return FieldElem::ZERO;
        }
        let n = self.unit_order() as u64;
        let k = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % n;
        self.exp[k as usize]
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        let n = self.unit_order();
        let k = (n - self.log[a.0 as usize]) % n;
        Ok(self.exp[k as usize])
    }

    pub fn pow(&self, a: FieldElem, e: i64) -> FieldElem {
        if a.is_zero() {
            return if e == 0 { FieldElem::ONE } else { FieldElem::ZERO };
        }
        let n = self.unit_order() as i64;
        let k = (self.log[a.0 as usize] as i64 * e.rem_euclid(n)).rem_euclid(n);
        self.exp[k as usize]
    }

    /// `g^k` for the fixed generator `g`.
    pub fn gen_pow(&self, k: i64) -> FieldElem {
        let n = self.unit_order() as i64;
        self.exp[k.rem_euclid(n) as usize]
    }

    /// Discrete logarithm to the fixed generator.
    pub fn dlog(&self, x: FieldElem) -> Result<CharIdx> {
        if x.is_zero() {
            return Err(Error::Domain("discrete log of zero".into()));
        }
        Ok(CharIdx::new(self.log[x.0 as usize] as i64, self.unit_order()))
    }

    /// Coefficient vector of length `f` over `F_p`, lowest degree first.
    pub fn coeffs(&self, x: FieldElem) -> Vec<u32> {
        let mut n = x.0;
        (0..self.f)
            .map(|_| {
                let c = n % self.p;
                n /= self.p;
                c
            })
            .collect()
    }
}
