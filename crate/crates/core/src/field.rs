//! Finite fields `F_{p^m}` with word-sized elements.
//!
//! Prime fields use direct modular arithmetic. Extension fields encode an
//! element `c_0 + c_1 x + ... + c_{m-1} x^{m-1}` as the integer
//! `c_0 + c_1 p + ... + c_{m-1} p^{m-1}` and multiply through discrete
//! log tables built from a primitive modulus.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Element of a finite field; only meaningful together with its [`Fq`].
pub type Elem = u32;

const MAX_EXTENSION_ORDER: u64 = 1 << 20;

#[derive(Clone)]
pub struct Fq {
    inner: Arc<Inner>,
}

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    /// Coefficients of the monic primitive modulus, low degree first (length m + 1).
    modulus: Vec<u32>,
    /// `exp[i] = x^i`, length q - 1. Empty for prime fields.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`. Empty for prime fields.
    log: Vec<u32>,
}

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

impl Fq {
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 / 2 {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::FieldTooLarge { p, m });
        }
        if m == 1 {
            return Ok(Fq {
                inner: Arc::new(Inner {
                    p: p as u32,
                    m: 1,
                    q: p as u32,
                    modulus: vec![0, 1],
                    exp: Vec::new(),
                    log: Vec::new(),
                }),
            });
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= MAX_EXTENSION_ORDER)
            .ok_or(Error::FieldTooLarge { p, m })?;
        let (modulus, exp) = find_primitive(p as u32, m, q as u32);
        let mut log = vec![0u32; q as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        Ok(Fq {
            inner: Arc::new(Inner {
                p: p as u32,
                m,
                q: q as u32,
                modulus,
                exp,
                log,
            }),
        })
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.m
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    fn is_prime_field(&self) -> bool {
        self.inner.m == 1
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1
    }

    /// Image of an integer under `Z -> F_p -> k`.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.inner.p as i64) as Elem
    }

    /// Image of a non-negative integer, reduced mod p.
    pub fn from_u64(&self, n: u64) -> Elem {
        (n % self.inner.p as u64) as Elem
    }

    /// Element from its base-p digit encoding (coefficients of the polynomial basis).
    pub fn from_encoding(&self, code: u64) -> Result<Elem> {
        if code >= self.inner.q as u64 {
            return Err(Error::OutOfRange {
                value: code as i64,
                lo: 0,
                hi: self.inner.q as i64 - 1,
            });
        }
        Ok(code as Elem)
    }

    /// Lift of a prime-field element to `[0, p)`; `None` outside the prime field.
    pub fn to_prime_int(&self, a: Elem) -> Option<u32> {
        (a < self.inner.p).then_some(a)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.inner.p;
        if self.is_prime_field() {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.inner.m {
            let d = (a % p + b % p) % p;
            out += d * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.inner.p;
        if self.is_prime_field() {
            return if a == 0 { 0 } else { p - a };
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.inner.m {
            let d = (p - a % p) % p;
            out += d * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.is_prime_field() {
            return ((a as u64 * b as u64) % self.inner.p as u64) as Elem;
        }
        let n = self.inner.q as usize - 1;
        let i = self.inner.log[a as usize] as usize + self.inner.log[b as usize] as usize;
        self.inner.exp[i % n]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::Singular);
        }
        if self.is_prime_field() {
            return Ok(self.pow(a, self.inner.p as u64 - 2));
        }
        let n = self.inner.q as usize - 1;
        let l = self.inner.log[a as usize] as usize;
        Ok(self.inner.exp[(n - l) % n])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Power with a signed exponent; `a` must be nonzero when `e < 0`.
    pub fn pow_signed(&self, a: Elem, e: i64) -> Result<Elem> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Elem) -> Result<u64> {
        if a == 0 {
            return Err(Error::Singular);
        }
        let n = self.inner.q as u64 - 1;
        let mut order = n;
        for f in prime_factors(n) {
            while order % f == 0 && self.pow(a, order / f) == 1 {
                order /= f;
            }
        }
        Ok(order)
    }

    /// All nonzero elements, in encoding order.
    pub fn units(&self) -> impl Iterator<Item = Elem> {
        1..self.inner.q
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.inner.q
    }
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for Fq {}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.m == 1 {
            write!(f, "F_{}", self.inner.p)
        } else {
            write!(f, "F_{}^{}", self.inner.p, self.inner.m)
        }
    }
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
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

/// Smallest monic degree-m polynomial (in lexicographic encoding order) for which
/// `x` has multiplicative order `q - 1`, together with the power table of `x`.
fn find_primitive(p: u32, m: u32, q: u32) -> (Vec<u32>, Vec<u32>) {
    let m = m as usize;
    for code in 0..q {
        let mut modulus = Vec::with_capacity(m + 1);
        let mut c = code;
        for _ in 0..m {
            modulus.push(c % p);
            c /= p;
        }
        modulus.push(1);
        if modulus[0] == 0 {
            continue;
        }
        if let Some(exp) = power_table(p, &modulus, q) {
            return (modulus, exp);
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

fn power_table(p: u32, modulus: &[u32], q: u32) -> Option<Vec<u32>> {
    let m = modulus.len() - 1;
    let n = (q - 1) as usize;
    let mut exp = Vec::with_capacity(n);
    let mut cur = vec![0u32; m];
    cur[0] = 1;
    for i in 0..n {
        let code = cur.iter().rev().fold(0u32, |acc, &c| acc * p + c);
        if i > 0 && code == 1 {
            return None;
        }
        exp.push(code);
        // multiply by x modulo the modulus
        let top = cur[m - 1];
        for j in (1..m).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        for j in 0..m {
            cur[j] = (cur[j] + (p - top) * modulus[j] % p) % p;
        }
    }
    let code = cur.iter().rev().fold(0u32, |acc, &c| acc * p + c);
    (code == 1).then_some(exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Fq::prime(7).unwrap();
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.inv(3).unwrap(), 5);
        assert_eq!(f.sub(2, 5), 4);
        assert_eq!(f.from_int(-1), 6);
        assert_eq!(f.mult_order(3).unwrap(), 6);
        assert_eq!(f.mult_order(2).unwrap(), 3);
    }

    #[test]
    fn rejects_composites() {
        assert_eq!(Fq::prime(9).unwrap_err(), Error::NotPrime(9));
    }

    #[test]
    fn extension_field_is_a_field() {
        for (p, m) in [(2u64, 3u32), (3, 2), (5, 2), (3, 3)] {
            let f = Fq::new(p, m).unwrap();
            let q = f.order();
            assert_eq!(q as u64, p.pow(m));
            for a in f.units() {
                let ai = f.inv(a).unwrap();
                assert_eq!(f.mul(a, ai), 1);
                assert_eq!(f.add(a, f.neg(a)), 0);
            }
            // distributivity on a sample
            for a in f.elements().step_by(3) {
                for b in f.elements().step_by(5) {
                    for c in f.elements().step_by(7) {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
            // Frobenius fixes exactly the prime field
            let fixed = f.elements().filter(|&a| f.pow(a, p) == a).count();
            assert_eq!(fixed as u64, p);
        }
    }
}
