use serde::{Deserialize, Serialize};

use super::constancy::{constancy_test, weierstrass_bound, Constancy, WeierstrassBound};
use super::padic::{teichmuller_budget, PadicInt};
use super::series::{MultiIndex, TruncatedSeries};
use super::weights::{is_parallel_pair, InfWeightVector};
use crate::error::{Error, Result};

fn one() -> u64 {
    1
}

/// `omega(teichmuller) * sum c X^idx`, reproducible at any caps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesData {
    #[serde(default = "one")]
    pub teichmuller: u64,
    pub terms: Vec<(MultiIndex, i64)>,
}

impl SeriesData {
    pub fn polynomial(terms: Vec<(MultiIndex, i64)>) -> Self {
        SeriesData { teichmuller: 1, terms }
    }

    pub fn materialize(&self, p: u64, prec: u32, cap: u32, vars: usize) -> Result<TruncatedSeries> {
        let s = TruncatedSeries::from_terms(p, prec, cap, vars, &self.terms)?;
        if self.teichmuller % p == 1 {
            return Ok(s);
        }
        s.scale(&PadicInt::teichmuller(p, prec, self.teichmuller)?)
    }
}

/// Characters `f_{w,i,j}` and `f_{w-bar,i,j}`, generator-major; `f_wbar` already composed with `-w0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacePair {
    pub w: String,
    pub wbar: String,
    pub f_w: Vec<SeriesData>,
    pub f_wbar: Vec<SeriesData>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PassageFamily {
    pub p: u64,
    pub precision: u32,
    pub degree_cap: u32,
    pub vars: usize,
    pub local_degree: usize,
    pub minus_w0: Vec<usize>,
    /// Non-split hypothesis at `p`, recorded rather than verified.
    #[serde(default)]
    pub nonsplit: bool,
    pub pairs: Vec<PlacePair>,
}

impl PassageFamily {
    pub fn torus_rank(&self) -> usize {
        self.minus_w0.len()
    }

    fn validate(&self) -> Result<()> {
        let n = self.local_degree * self.torus_rank();
        for pair in &self.pairs {
            if pair.f_w.len() != n || pair.f_wbar.len() != n {
                return Err(Error::Arity(format!(
                    "{}/{} carries {}/{} series, expected f*d = {n}",
                    pair.w,
                    pair.wbar,
                    pair.f_w.len(),
                    pair.f_wbar.len()
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairWeights {
    pub w: String,
    pub wbar: String,
    /// `f_{w,i,j} / f_{w-bar,i,j}`.
    pub ratios: Vec<PadicInt>,
    /// For each variable, `(x_w, x_{w-bar})` with `x_{w-bar}` in its own orientation.
    pub weights: Vec<(InfWeightVector, InfWeightVector)>,
    pub parallel: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SparsityCertificate {
    pub pair: usize,
    pub generator: usize,
    pub coordinate: usize,
    /// One bound per root of unity in the budget.
    pub bounds: Vec<WeierstrassBound>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Passage {
    ParallelWeights(Vec<PairWeights>),
    SparsityCertificate(SparsityCertificate),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PassageReport {
    pub verdict: Passage,
    pub precision: u32,
    pub degree_cap: u32,
    pub nonsplit: bool,
}

enum Attempt {
    Done(Passage),
    Escalate,
}

fn log_derivative(s: &TruncatedSeries, var: usize) -> Result<u64> {
    let (a0, a1) = s.dual_numbers(var)?;
    let p = s.p();
    let inv = PadicInt::from_residue(p, 1, a0)?.inv()?.residue();
    Ok(a1 * inv % p)
}

fn attempt(fam: &PassageFamily, prec: u32, cap: u32, last: bool) -> Result<Attempt> {
    let p = fam.p;
    let d = fam.torus_rank();
    let budget = teichmuller_budget(p, prec)?;
    let mut out = Vec::with_capacity(fam.pairs.len());
    for (k, pair) in fam.pairs.iter().enumerate() {
        let mut ratios = Vec::new();
        let mut fw = Vec::new();
        let mut fwb = Vec::new();
        for (idx, (a, b)) in pair.f_w.iter().zip(&pair.f_wbar).enumerate() {
            let a = a.materialize(p, prec, cap, fam.vars)?;
            let b = b.materialize(p, prec, cap, fam.vars)?;
            if !a.is_unit() || !b.is_unit() {
                return Err(Error::NotUnit);
            }
            let g = a.div(&b)?;
            let verdict = match constancy_test(&g, &budget) {
                Err(Error::Undetermined { .. }) if !last => return Ok(Attempt::Escalate),
                v => v?,
            };
            match verdict {
                Constancy::Constant(z) => ratios.push(z),
                Constancy::NonconstantWitness(w) => {
                    if w.content > 0 && !last {
                        return Ok(Attempt::Escalate);
                    }
                    let mut bounds = Vec::with_capacity(budget.len());
                    for z in &budget {
                        match weierstrass_bound(&g, z)? {
                            Some(b) => bounds.push(b),
                            None if !last => return Ok(Attempt::Escalate),
                            None => return Err(Error::Undetermined { n: prec, d: cap }),
                        }
                    }
                    return Ok(Attempt::Done(Passage::SparsityCertificate(SparsityCertificate {
                        pair: k,
                        generator: idx / d,
                        coordinate: idx % d,
                        bounds,
                    })));
                }
            }
            fw.push(a);
            fwb.push(b);
        }
        let mut weights = Vec::with_capacity(fam.vars);
        let mut parallel = true;
        for var in 0..fam.vars {
            let mut x = vec![0; fw.len()];
            let mut y = vec![0; fw.len()];
            for i in 0..fam.local_degree {
                for j in 0..d {
                    x[i * d + j] = log_derivative(&fw[i * d + j], var)?;
                    y[i * d + fam.minus_w0[j]] = log_derivative(&fwb[i * d + j], var)?;
                }
            }
            let wrap = |coords| InfWeightVector {
                p,
                f: fam.local_degree,
                d,
                coords,
            };
            let (x, y) = (wrap(x), wrap(y));
            parallel &= is_parallel_pair(&x, &y, &fam.minus_w0)?;
            weights.push((x, y));
        }
        out.push(PairWeights {
            w: pair.w.clone(),
            wbar: pair.wbar.clone(),
            ratios,
            weights,
            parallel,
        });
    }
    Ok(Attempt::Done(Passage::ParallelWeights(out)))
}

/// Constant ratios give parallel infinitesimal weights; any nonconstant ratio gives a
/// Weierstrass bound for every root of unity. Caps double once when undecided.
pub fn passage_dichotomy(fam: &PassageFamily) -> Result<PassageReport> {
    fam.validate()?;
    let (mut prec, mut cap) = (fam.precision, fam.degree_cap);
    let mut last = false;
    loop {
        match attempt(fam, prec, cap, last)? {
            Attempt::Done(verdict) => {
                return Ok(PassageReport {
                    verdict,
                    precision: prec,
                    degree_cap: cap,
                    nonsplit: fam.nonsplit,
                })
            }
            Attempt::Escalate => {
                last = true;
                prec *= 2;
                cap *= 2;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(f_w: SeriesData, f_wbar: SeriesData) -> PassageFamily {
        PassageFamily {
            p: 5,
            precision: 8,
            degree_cap: 6,
            vars: 1,
            local_degree: 1,
            minus_w0: vec![0],
            nonsplit: true,
            pairs: vec![PlacePair {
                w: "w".into(),
                wbar: "wbar".into(),
                f_w: vec![f_w],
                f_wbar: vec![f_wbar],
            }],
        }
    }

    #[test]
    fn equal_characters_are_parallel() {
        let s = SeriesData::polynomial(vec![(vec![0], 2), (vec![1], 3)]);
        let r = passage_dichotomy(&single(s.clone(), s)).unwrap();
        match r.verdict {
            Passage::ParallelWeights(w) => {
                assert!(w[0].parallel);
                assert_eq!(w[0].ratios[0].residue(), 1);
                assert_eq!(w[0].weights[0].0.coords, vec![4]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn distinct_slopes_give_a_certificate() {
        let a = SeriesData::polynomial(vec![(vec![0], 1), (vec![1], 1)]);
        let b = SeriesData::polynomial(vec![(vec![0], 1), (vec![1], 2)]);
        match passage_dichotomy(&single(a, b)).unwrap().verdict {
            Passage::SparsityCertificate(c) => {
                assert_eq!(c.bounds.len(), 4);
                let at_one = c.bounds.iter().find(|b| b.zeta.residue() == 1).unwrap();
                assert_eq!((at_one.content, at_one.degree), (0, 1));
                assert!(c.bounds.iter().filter(|b| b.zeta.residue() != 1).all(|b| b.degree == 0));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn teichmuller_multiple_is_parallel() {
        let b = SeriesData::polynomial(vec![(vec![0], 3), (vec![1], 1), (vec![2], 4)]);
        let a = SeriesData {
            teichmuller: 2,
            terms: b.terms.clone(),
        };
        match passage_dichotomy(&single(a, b)).unwrap().verdict {
            Passage::ParallelWeights(w) => {
                assert!(w[0].parallel);
                assert_eq!(w[0].ratios[0], PadicInt::teichmuller(5, 8, 2).unwrap());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn arity_and_units_are_checked() {
        let s = SeriesData::polynomial(vec![(vec![0], 1)]);
        let mut fam = single(s.clone(), s);
        fam.minus_w0 = vec![1, 0];
        assert!(matches!(passage_dichotomy(&fam), Err(Error::Arity(_))));
        let z = SeriesData::polynomial(vec![(vec![1], 1)]);
        assert_eq!(passage_dichotomy(&single(z.clone(), z)), Err(Error::NotUnit));
    }
}
