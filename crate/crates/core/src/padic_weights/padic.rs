use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::is_prime;

const WORD_LIMIT: u128 = 1 << 63;

/// `p^n`, provided it stays below `2^63`.
pub fn modulus(p: u64, n: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut m: u128 = 1;
    for _ in 0..n {
        m *= p as u128;
        if m >= WORD_LIMIT {
            return Err(Error::PrecisionTooLarge { p, n });
        }
    }
    Ok(m as u64)
}

fn pow_u64(p: u64, n: u32) -> u64 {
    p.pow(n)
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m as i128) as u64)
}

pub(crate) fn valuation_u64(mut x: u64, p: u64) -> u32 {
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

/// `floor(log_p n)`.
fn ilog(p: u64, n: u64) -> u32 {
    let mut k = 0;
    let mut q = p;
    while q <= n {
        q = q.saturating_mul(p);
        k += 1;
    }
    k
}

/// Certified precision of the logarithm of a 1-unit known modulo `p^n`.
pub fn log_precision(p: u64, n: u32) -> u32 {
    n - ilog(p, n as u64)
}

/// An element of `Z_p` known modulo `p^prec`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PadicInt {
    p: u64,
    prec: u32,
    residue: u64,
}

impl PadicInt {
    pub fn new(p: u64, prec: u32, value: i64) -> Result<Self> {
        let m = modulus(p, prec)?;
        Ok(PadicInt {
            p,
            prec,
            residue: (value as i128).rem_euclid(m as i128) as u64,
        })
    }

    pub fn from_residue(p: u64, prec: u32, residue: u64) -> Result<Self> {
        let m = modulus(p, prec)?;
        Ok(PadicInt {
            p,
            prec,
            residue: residue % m,
        })
    }

    pub fn zero(p: u64, prec: u32) -> Result<Self> {
        Self::new(p, prec, 0)
    }

    pub fn one(p: u64, prec: u32) -> Result<Self> {
        Self::new(p, prec, 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        pow_u64(self.p, self.prec)
    }

    /// Image in `F_p`.
    pub fn reduction(&self) -> u64 {
        self.residue % self.p
    }

    /// `None` when the value is zero at the available precision.
    pub fn valuation(&self) -> Option<u32> {
        (self.residue != 0).then(|| valuation_u64(self.residue, self.p))
    }

    pub fn is_zero(&self) -> bool {
        self.residue == 0
    }

    pub fn is_unit(&self) -> bool {
        self.residue % self.p != 0
    }

    pub fn is_one_unit(&self) -> bool {
        self.residue % self.p == 1 % self.p
    }

    pub fn truncate(&self, prec: u32) -> PadicInt {
        if prec >= self.prec {
            return *self;
        }
        PadicInt {
            p: self.p,
            prec,
            residue: self.residue % pow_u64(self.p, prec),
        }
    }

    /// Equality modulo `p^min(prec)`.
    pub fn eq_at_precision(&self, other: &PadicInt) -> bool {
        let n = self.prec.min(other.prec);
        self.p == other.p && self.truncate(n).residue == other.truncate(n).residue
    }

    fn common(&self, other: &PadicInt) -> (u32, u64, u64, u64) {
        assert_eq!(self.p, other.p, "p-adic integers over different primes");
        let n = self.prec.min(other.prec);
        let m = pow_u64(self.p, n);
        (n, m, self.residue % m, other.residue % m)
    }

    pub fn pow(&self, mut e: u64) -> PadicInt {
        let m = self.modulus();
        let mut base = self.residue;
        let mut acc = 1 % m;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, base, m);
            }
            base = mulmod(base, base, m);
            e >>= 1;
        }
        PadicInt { residue: acc, ..*self }
    }

    pub fn inv(&self) -> Result<PadicInt> {
        let r = inv_mod(self.residue, self.modulus()).ok_or(Error::NotUnit)?;
        Ok(PadicInt { residue: r, ..*self })
    }

    pub fn pow_signed(&self, e: i64) -> Result<PadicInt> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Teichmuller lift of `a mod p` at precision `prec`.
    pub fn teichmuller(p: u64, prec: u32, a: u64) -> Result<PadicInt> {
        let x = PadicInt::from_residue(p, prec, a % p)?;
        if !x.is_unit() {
            return Err(Error::NotUnit);
        }
        let mut y = x;
        for _ in 0..prec {
            y = y.pow(p);
        }
        Ok(y)
    }

    /// The Teichmuller lift of the reduction of a unit.
    pub fn teichmuller_part(&self) -> Result<PadicInt> {
        PadicInt::teichmuller(self.p, self.prec, self.reduction())
    }
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({}^{})", self.residue, self.p, self.prec)
    }
}

impl Add for PadicInt {
    type Output = PadicInt;
    fn add(self, o: PadicInt) -> PadicInt {
        let (prec, m, a, b) = self.common(&o);
        PadicInt {
            p: self.p,
            prec,
            residue: ((a as u128 + b as u128) % m as u128) as u64,
        }
    }
}

impl Sub for PadicInt {
    type Output = PadicInt;
    fn sub(self, o: PadicInt) -> PadicInt {
        self + (-o)
    }
}

impl Neg for PadicInt {
    type Output = PadicInt;
    fn neg(self) -> PadicInt {
        let m = self.modulus();
        PadicInt {
            residue: (m - self.residue) % m,
            ..self
        }
    }
}

impl Mul for PadicInt {
    type Output = PadicInt;
    fn mul(self, o: PadicInt) -> PadicInt {
        let (prec, m, a, b) = self.common(&o);
        PadicInt {
            p: self.p,
            prec,
            residue: mulmod(a, b, m),
        }
    }
}

/// `log(u) = sum (-1)^{k+1} (u-1)^k / k` for a 1-unit `u`, at precision `N - floor(log_p N)`.
pub fn log_one_unit(u: &PadicInt) -> Result<PadicInt> {
    let (p, n) = (u.p, u.prec);
    if p == 2 {
        return Err(Error::BadPrime(2));
    }
    if !u.is_one_unit() {
        return Err(Error::NotOneUnit(u.to_string()));
    }
    let out = log_precision(p, n);
    let terms = 2 * n as u64 + 2;
    let work = n + ilog(p, terms);
    let m = modulus(p, work)?;
    let m_out = pow_u64(p, out);
    let x = (u.residue + m - 1) % m;
    let mut xk = 1u64;
    let mut acc = 0u64;
    for k in 1..=terms {
        xk = mulmod(xk, x, m);
        let v = valuation_u64(k, p);
        let pv = pow_u64(p, v);
        let unit = k / pv;
        let t = (xk / pv) % m_out;
        let t = mulmod(t, inv_mod(unit % m_out, m_out).expect("unit"), m_out);
        acc = if k % 2 == 1 { (acc + t) % m_out } else { (acc + m_out - t) % m_out };
    }
    PadicInt::from_residue(p, out, acc)
}

/// Iwasawa logarithm on units: `log(u / omega(u))`, which kills every root of unity.
pub fn log_unit(u: &PadicInt) -> Result<PadicInt> {
    if !u.is_unit() {
        return Err(Error::NotUnit);
    }
    let w = u.teichmuller_part()?;
    log_one_unit(&(*u * w.inv()?))
}

/// The Teichmuller representatives of `F_p^x`: every root of unity in `Z_p` for odd `p`.
pub fn teichmuller_budget(p: u64, prec: u32) -> Result<Vec<PadicInt>> {
    (1..p).map(|a| PadicInt::teichmuller(p, prec, a)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_tracks_precision() {
        let a = PadicInt::new(5, 4, 7).unwrap();
        let b = PadicInt::new(5, 2, 3).unwrap();
        let c = a * b;
        assert_eq!((c.precision(), c.residue()), (2, 21));
        assert_eq!((a - a).valuation(), None);
        assert_eq!(PadicInt::new(5, 4, 50).unwrap().valuation(), Some(2));
        assert_eq!(PadicInt::new(5, 4, -1).unwrap().residue(), 624);
        assert_eq!((a * a.inv().unwrap()).residue(), 1);
        assert_eq!(PadicInt::new(5, 4, 10).unwrap().inv(), Err(Error::NotUnit));
    }

    #[test]
    fn precision_guard() {
        assert!(modulus(5, 27).is_ok());
        assert_eq!(modulus(5, 28), Err(Error::PrecisionTooLarge { p: 5, n: 28 }));
        assert_eq!(modulus(6, 2), Err(Error::NotPrime(6)));
    }

    #[test]
    fn teichmuller_lifts_are_roots_of_unity() {
        for a in 1..7 {
            let w = PadicInt::teichmuller(7, 6, a).unwrap();
            assert_eq!(w.pow(6).residue(), 1);
            assert_eq!(w.reduction(), a);
        }
    }

    #[test]
    fn log_basics() {
        assert!(log_one_unit(&PadicInt::one(5, 8).unwrap()).unwrap().is_zero());
        let l = log_one_unit(&PadicInt::new(5, 8, 6).unwrap()).unwrap();
        assert_eq!((l.precision(), l.valuation()), (7, Some(1)));
        let w = PadicInt::teichmuller(5, 8, 2).unwrap();
        assert!(log_unit(&w).unwrap().is_zero());
        assert!(matches!(log_one_unit(&w), Err(Error::NotOneUnit(_))));
    }
}
