use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::Serialize;

use super::padic::{modulus, valuation_u64, PadicInt};
use crate::error::{Error, Result};

pub type MultiIndex = Vec<u32>;

/// A power series in `vars` variables over `Z_p`, known modulo `p^prec` and total degree `> cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    p: u64,
    prec: u32,
    cap: u32,
    vars: usize,
    coeffs: BTreeMap<MultiIndex, u64>,
}

fn total(idx: &[u32]) -> u32 {
    idx.iter().sum()
}

impl TruncatedSeries {
    pub fn zero(p: u64, prec: u32, cap: u32, vars: usize) -> Result<Self> {
        modulus(p, prec)?;
        Ok(TruncatedSeries {
            p,
            prec,
            cap,
            vars,
            coeffs: BTreeMap::new(),
        })
    }

    pub fn constant(p: u64, prec: u32, cap: u32, vars: usize, c: &PadicInt) -> Result<Self> {
        let mut s = Self::zero(p, prec.min(c.precision()), cap, vars)?;
        s.insert(vec![0; vars], c.residue());
        Ok(s)
    }

    pub fn variable(p: u64, prec: u32, cap: u32, vars: usize, i: usize) -> Result<Self> {
        if i >= vars {
            return Err(Error::Arity(format!("variable {i} of {vars}")));
        }
        let mut idx = vec![0; vars];
        idx[i] = 1;
        Self::from_terms(p, prec, cap, vars, &[(idx, 1)])
    }

    /// Builds a series from integer terms; repeated indices add up.
    pub fn from_terms(p: u64, prec: u32, cap: u32, vars: usize, terms: &[(MultiIndex, i64)]) -> Result<Self> {
        let mut s = Self::zero(p, prec, cap, vars)?;
        let m = s.modulus();
        for (idx, c) in terms {
            if idx.len() != vars {
                return Err(Error::Arity(format!("multi-index of length {} for {vars} variables", idx.len())));
            }
            let r = (*c as i128).rem_euclid(m as i128) as u64;
            let cur = s.coeffs.get(idx).copied().unwrap_or(0);
            s.insert(idx.clone(), ((cur as u128 + r as u128) % m as u128) as u64);
        }
        Ok(s)
    }

    fn insert(&mut self, idx: MultiIndex, r: u64) {
        let r = r % self.modulus();
        if total(&idx) > self.cap || r == 0 {
            self.coeffs.remove(&idx);
        } else {
            self.coeffs.insert(idx, r);
        }
    }

    fn modulus(&self) -> u64 {
        self.p.pow(self.prec)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn degree_cap(&self) -> u32 {
        self.cap
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    fn wrap(&self, r: u64) -> PadicInt {
        PadicInt::from_residue(self.p, self.prec, r).expect("precision checked at construction")
    }

    pub fn coefficient(&self, idx: &[u32]) -> PadicInt {
        self.wrap(self.coeffs.get(idx).copied().unwrap_or(0))
    }

    /// Nonzero terms in multi-index order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, PadicInt)> + '_ {
        self.coeffs.iter().map(|(k, &v)| (k, self.wrap(v)))
    }

    pub fn constant_term(&self) -> PadicInt {
        self.coefficient(&vec![0; self.vars])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.constant_term().is_unit()
    }

    fn check(&self, other: &TruncatedSeries) -> Result<(u32, u32)> {
        if self.p != other.p {
            return Err(Error::FieldMismatch);
        }
        if self.vars != other.vars {
            return Err(Error::Arity(format!("{} vs {} variables", self.vars, other.vars)));
        }
        Ok((self.prec.min(other.prec), self.cap.min(other.cap)))
    }

    /// Reduction to smaller caps.
    pub fn with_caps(&self, prec: u32, cap: u32) -> TruncatedSeries {
        let mut s = TruncatedSeries {
            p: self.p,
            prec: prec.min(self.prec),
            cap: cap.min(self.cap),
            vars: self.vars,
            coeffs: BTreeMap::new(),
        };
        for (k, &v) in &self.coeffs {
            s.insert(k.clone(), v);
        }
        s
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        let (prec, cap) = self.check(other)?;
        let mut s = self.with_caps(prec, cap);
        let m = s.modulus();
        for (k, &v) in &other.coeffs {
            let cur = s.coeffs.get(k).copied().unwrap_or(0);
            s.insert(k.clone(), ((cur as u128 + v as u128) % m as u128) as u64);
        }
        Ok(s)
    }

    pub fn neg(&self) -> TruncatedSeries {
        let m = self.modulus();
        let mut s = self.clone();
        for v in s.coeffs.values_mut() {
            *v = m - *v;
        }
        s
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &PadicInt) -> Result<TruncatedSeries> {
        let k = TruncatedSeries::constant(self.p, self.prec, self.cap, self.vars, c)?;
        self.mul(&k)
    }

    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        let (prec, cap) = self.check(other)?;
        let mut out = TruncatedSeries::zero(self.p, prec, cap, self.vars)?;
        let m = out.modulus() as u128;
        let mut acc: BTreeMap<MultiIndex, u128> = BTreeMap::new();
        for (a, &x) in &self.coeffs {
            let da = total(a);
            if da > cap {
                continue;
            }
            for (b, &y) in &other.coeffs {
                if da + total(b) > cap {
                    continue;
                }
                let idx: MultiIndex = a.iter().zip(b).map(|(i, j)| i + j).collect();
                let e = acc.entry(idx).or_insert(0);
                *e = (*e + (x as u128 % m) * (y as u128 % m)) % m;
            }
        }
        for (k, v) in acc {
            out.insert(k, v as u64);
        }
        Ok(out)
    }

    /// `g^{-1} = c^{-1} sum_k (-h)^k` where `g = c (1 + h)`.
    pub fn inverse(&self) -> Result<TruncatedSeries> {
        let c = self.constant_term();
        if !c.is_unit() {
            return Err(Error::NotUnit);
        }
        let ci = c.inv()?;
        let one = TruncatedSeries::constant(self.p, self.prec, self.cap, self.vars, &PadicInt::one(self.p, self.prec)?)?;
        let h = self.scale(&ci)?.sub(&one)?;
        let minus_h = h.neg();
        let mut term = one.clone();
        let mut sum = one;
        for _ in 0..self.cap {
            term = term.mul(&minus_h)?;
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term)?;
        }
        sum.scale(&ci)
    }

    pub fn div(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.mul(&other.inverse()?)
    }

    /// One-variable series along a direction, the other variables specialised accordingly.
    pub fn restrict(&self, dir: Direction) -> Result<TruncatedSeries> {
        let mut out = TruncatedSeries::zero(self.p, self.prec, self.cap, 1)?;
        let m = out.modulus();
        for (k, &v) in &self.coeffs {
            let d = match dir {
                Direction::Axis(i) => {
                    if i >= self.vars {
                        return Err(Error::Arity(format!("axis {i} of {} variables", self.vars)));
                    }
                    if k.iter().enumerate().any(|(j, &e)| j != i && e != 0) {
                        continue;
                    }
                    k[i]
                }
                Direction::Diagonal => total(k),
            };
            let cur = out.coeffs.get(&vec![d]).copied().unwrap_or(0);
            out.insert(vec![d], ((cur as u128 + v as u128) % m as u128) as u64);
        }
        Ok(out)
    }

    /// Reduction modulo `(p, X_i^2)` with the other variables set to zero: the pair `(a0, a1)` in `F_p`.
    pub fn dual_numbers(&self, i: usize) -> Result<(u64, u64)> {
        if i >= self.vars {
            return Err(Error::Arity(format!("variable {i} of {}", self.vars)));
        }
        let mut idx = vec![0; self.vars];
        let a0 = self.coefficient(&idx).reduction();
        idx[i] = 1;
        Ok((a0, self.coefficient(&idx).reduction()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    Axis(usize),
    /// `X_i = t` for every `i`.
    Diagonal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonSegment {
    pub start: u32,
    pub end: u32,
    /// Valuation of each root on this segment, the negated slope.
    #[serde(serialize_with = "ratio_string")]
    pub root_valuation: Ratio<i64>,
}

fn ratio_string<S: serde::Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeierstrassData {
    /// Lower hull of `(i, v(a_i))` up to the first coefficient of minimal valuation.
    pub vertices: Vec<(u32, u32)>,
    pub segments: Vec<NewtonSegment>,
    /// Index of the first unit coefficient, `None` when no coefficient is a unit at this precision.
    pub degree: Option<u32>,
    /// Minimal coefficient valuation.
    pub content: u32,
    /// Index of the first coefficient of valuation `content`: the degree of `g / p^content`.
    pub normalized_degree: u32,
    /// Multiplicity of the root at the origin.
    pub zero_root: u32,
}

pub fn weierstrass_data(g: &TruncatedSeries) -> Result<WeierstrassData> {
    if g.vars() != 1 {
        return Err(Error::Arity(format!("expected one variable, got {}", g.vars())));
    }
    if g.is_zero() {
        return Err(Error::ZeroSeries);
    }
    let pts: Vec<(u32, u32)> = g
        .coeffs
        .iter()
        .map(|(k, &v)| (k[0], valuation_u64(v, g.p)))
        .collect();
    let content = pts.iter().map(|&(_, v)| v).min().expect("nonzero");
    let normalized_degree = pts.iter().find(|&&(_, v)| v == content).expect("attained").0;
    let relevant: Vec<(u32, u32)> = pts.iter().copied().filter(|&(i, _)| i <= normalized_degree).collect();
    let mut hull: Vec<(u32, u32)> = Vec::new();
    for &pt in &relevant {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as i64 - a.0 as i64) * (pt.1 as i64 - a.1 as i64)
                - (b.1 as i64 - a.1 as i64) * (pt.0 as i64 - a.0 as i64);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let segments = hull
        .windows(2)
        .map(|w| NewtonSegment {
            start: w[0].0,
            end: w[1].0,
            root_valuation: Ratio::new(w[0].1 as i64 - w[1].1 as i64, (w[1].0 - w[0].0) as i64),
        })
        .collect();
    Ok(WeierstrassData {
        zero_root: relevant[0].0,
        vertices: hull,
        segments,
        degree: (content == 0).then_some(normalized_degree),
        content,
        normalized_degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(p: u64, terms: &[(u32, i64)]) -> TruncatedSeries {
        let t: Vec<_> = terms.iter().map(|&(i, c)| (vec![i], c)).collect();
        TruncatedSeries::from_terms(p, 8, 10, 1, &t).unwrap()
    }

    #[test]
    fn newton_polygon_of_x2_minus_p() {
        let w = weierstrass_data(&x(5, &[(0, -5), (2, 1)])).unwrap();
        assert_eq!(w.degree, Some(2));
        assert_eq!(w.vertices, vec![(0, 1), (2, 0)]);
        assert_eq!(w.segments[0].root_valuation, Ratio::new(1, 2));
        assert_eq!(w.segments[0].end - w.segments[0].start, 2);
    }

    #[test]
    fn cyclotomic_shift() {
        let w = weierstrass_data(&x(5, &[(1, 5), (2, 10), (3, 10), (4, 5), (5, 1)])).unwrap();
        assert_eq!(w.degree, Some(5));
        assert_eq!(w.zero_root, 1);
        assert_eq!(w.segments.len(), 1);
        assert_eq!(w.segments[0].root_valuation, Ratio::new(1, 4));
    }

    #[test]
    fn units_and_zero() {
        assert_eq!(weierstrass_data(&x(7, &[(0, 3), (1, 7)])).unwrap().degree, Some(0));
        assert_eq!(weierstrass_data(&x(7, &[])), Err(Error::ZeroSeries));
        let w = weierstrass_data(&x(5, &[(1, 5)])).unwrap();
        assert_eq!((w.degree, w.content, w.normalized_degree), (None, 1, 1));
    }

    #[test]
    fn inverse_of_one_plus_x() {
        let g = x(5, &[(0, 1), (1, 1)]);
        let gi = g.inverse().unwrap();
        for k in 0..=10 {
            let c = gi.coefficient(&[k]);
            assert_eq!(c.residue(), if k % 2 == 0 { 1 } else { 5u64.pow(8) - 1 });
        }
        assert!(g.mul(&gi).unwrap().sub(&x(5, &[(0, 1)])).unwrap().is_zero());
    }

    #[test]
    fn dual_numbers_and_restriction() {
        let g = TruncatedSeries::from_terms(5, 4, 4, 2, &[(vec![0, 0], 2), (vec![1, 0], 3), (vec![0, 1], 7), (vec![1, 1], 1)]).unwrap();
        assert_eq!(g.dual_numbers(0).unwrap(), (2, 3));
        assert_eq!(g.dual_numbers(1).unwrap(), (2, 2));
        let d = g.restrict(Direction::Diagonal).unwrap();
        assert_eq!(d.coefficient(&[1]).residue(), 10);
        assert_eq!(d.coefficient(&[2]).residue(), 1);
        let a = g.restrict(Direction::Axis(1)).unwrap();
        assert_eq!(a.coefficient(&[2]).residue(), 0);
    }
}
