use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::padic::{log_one_unit, PadicInt};
use crate::error::{Error, Result};
use crate::field::Fq;
use crate::linalg::{Matrix, Subspace};
use crate::root_datum::RootDatum;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitPlace {
    pub label: String,
    pub local_degree: u32,
    pub torsion_order: u64,
}

/// A norm-one element, as exponents on the 1-unit generators `alpha_{w,i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormOneElement {
    pub label: String,
    pub exponents: Vec<Vec<i64>>,
}

/// `O_{F,p}^x` as torsion times `Z_p`-generators at each place above `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitsModel {
    pub p: u64,
    pub places: Vec<UnitPlace>,
    /// `conjugate[w]` is the place `w-bar`.
    pub conjugate: Vec<usize>,
    #[serde(default)]
    pub norm_one: Vec<NormOneElement>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Subgroup {
    Full,
    NormImage,
}

impl UnitsModel {
    /// `m` conjugate pairs of places of degree 1, with `u_j = alpha_{2j} / alpha_{2j+1}`.
    pub fn split_cm(p: u64, m: usize) -> Result<Self> {
        let places = (0..2 * m)
            .map(|w| UnitPlace {
                label: format!("w{}{}", w / 2, if w % 2 == 0 { "" } else { "bar" }),
                local_degree: 1,
                torsion_order: p - 1,
            })
            .collect();
        let conjugate = (0..2 * m).map(|w| w ^ 1).collect();
        let norm_one = (0..m)
            .map(|j| {
                let mut e = vec![vec![0]; 2 * m];
                e[2 * j] = vec![1];
                e[2 * j + 1] = vec![-1];
                NormOneElement {
                    label: format!("u{j}"),
                    exponents: e,
                }
            })
            .collect();
        let model = UnitsModel {
            p,
            places,
            conjugate,
            norm_one,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.places.len();
        if self.conjugate.len() != n {
            return Err(Error::UnitsModel(format!("{} conjugates for {n} places", self.conjugate.len())));
        }
        for (w, &c) in self.conjugate.iter().enumerate() {
            if c >= n || self.conjugate[c] != w {
                return Err(Error::UnitsModel("conjugation is not an involution".into()));
            }
            if c == w {
                return Err(Error::UnitsModel(format!("place {} is paired with itself", self.places[w].label)));
            }
            if self.places[w].local_degree != self.places[c].local_degree {
                return Err(Error::UnitsModel(format!(
                    "{} and {} have different local degrees",
                    self.places[w].label, self.places[c].label
                )));
            }
        }
        for u in &self.norm_one {
            self.check_exponents(&u.exponents)?;
            for (w, &c) in self.conjugate.iter().enumerate() {
                if u.exponents[w].iter().zip(&u.exponents[c]).any(|(a, b)| a + b != 0) {
                    return Err(Error::UnitsModel(format!("{} has nontrivial norm", u.label)));
                }
            }
        }
        Ok(())
    }

    fn check_exponents(&self, e: &[Vec<i64>]) -> Result<()> {
        if e.len() != self.places.len()
            || e.iter().zip(&self.places).any(|(x, pl)| x.len() != pl.local_degree as usize)
        {
            return Err(Error::Arity("exponent table does not match the places".into()));
        }
        Ok(())
    }

    pub fn generator_count(&self) -> usize {
        self.places.iter().map(|w| w.local_degree as usize).sum()
    }

    fn offset(&self, w: usize) -> usize {
        self.places[..w].iter().map(|x| x.local_degree as usize).sum()
    }
}

fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Ratio<i128>>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Ratio::from_integer(x as i128)).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != Ratio::from_integer(0)) else {
            continue;
        };
        m.swap(rank, piv);
        let head = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            let f = row[c] / head[c];
            for (x, h) in row.iter_mut().zip(&head) {
                *x -= f * h;
            }
        }
        rank += 1;
    }
    rank
}

/// `Z_p`-rank of a subgroup of the free part of `O_{F,p}^x`.
pub fn closure_rank(model: &UnitsModel, subgroup: Subgroup) -> Result<usize> {
    model.validate()?;
    let n = model.generator_count();
    let rows: Vec<Vec<i64>> = match subgroup {
        Subgroup::Full => (0..n).map(|k| (0..n).map(|j| i64::from(j == k)).collect()).collect(),
        Subgroup::NormImage => {
            let mut rows = Vec::new();
            for (w, &c) in model.conjugate.iter().enumerate() {
                for i in 0..model.places[w].local_degree as usize {
                    let mut r = vec![0; n];
                    r[model.offset(w) + i] += 1;
                    r[model.offset(c) + i] += 1;
                    rows.push(r);
                }
            }
            rows
        }
    };
    Ok(integer_rank(&rows))
}

/// A continuous character of `O_{F,p}^x`, by its values on the generators and torsion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightPoint {
    /// `chi(alpha_{w,i})`, 1-units.
    pub values: Vec<Vec<PadicInt>>,
    /// `chi` on the torsion generator at each place, as an exponent of a fixed generator.
    pub torsion: Vec<u64>,
    /// Exponents `n_w`, one embedding per place of degree 1.
    #[serde(default)]
    pub algebraic: Option<Vec<i64>>,
}

/// `1 + p`, the 1-unit generator of a degree-1 place.
pub fn one_unit_generator(p: u64, prec: u32) -> Result<PadicInt> {
    PadicInt::new(p, prec, 1 + p as i64)
}

impl WeightPoint {
    /// `x -> prod_w sigma_w(x)^{n_w} epsilon(x)` on a model whose places all have degree 1.
    pub fn algebraic(model: &UnitsModel, n: &[i64], torsion: &[u64], prec: u32) -> Result<Self> {
        model.validate()?;
        if model.places.iter().any(|w| w.local_degree != 1) {
            return Err(Error::UnitsModel("algebraic weights need places of degree 1".into()));
        }
        if n.len() != model.places.len() {
            return Err(Error::Arity(format!("{} exponents for {} places", n.len(), model.places.len())));
        }
        let g = one_unit_generator(model.p, prec)?;
        let values = n.iter().map(|&k| Ok(vec![g.pow_signed(k)?])).collect::<Result<_>>()?;
        let chi = WeightPoint {
            values,
            torsion: torsion.to_vec(),
            algebraic: Some(n.to_vec()),
        };
        chi.validate(model)?;
        Ok(chi)
    }

    /// Weight with `n_w = n_{w-bar} = n[pair]`, pairs taken in order of first appearance.
    pub fn locally_parallel(model: &UnitsModel, n: &[i64], torsion: &[u64], prec: u32) -> Result<Self> {
        let mut per_place = vec![0; model.places.len()];
        let mut next = 0;
        for w in 0..model.places.len() {
            let c = model.conjugate[w];
            if c < w {
                per_place[w] = per_place[c];
                continue;
            }
            per_place[w] = *n.get(next).ok_or_else(|| Error::Arity("too few pair exponents".into()))?;
            next += 1;
        }
        if next != n.len() {
            return Err(Error::Arity(format!("{} exponents for {next} pairs", n.len())));
        }
        Self::algebraic(model, &per_place, torsion, prec)
    }

    pub fn validate(&self, model: &UnitsModel) -> Result<()> {
        if self.values.len() != model.places.len() || self.torsion.len() != model.places.len() {
            return Err(Error::Arity("weight point does not match the places".into()));
        }
        for ((vals, w), &t) in self.values.iter().zip(&model.places).zip(&self.torsion) {
            if vals.len() != w.local_degree as usize {
                return Err(Error::Arity(format!("{} values at {}", vals.len(), w.label)));
            }
            if let Some(v) = vals.iter().find(|v| !v.is_one_unit()) {
                return Err(Error::NotOneUnit(v.to_string()));
            }
            if t >= w.torsion_order {
                return Err(Error::OutOfRange {
                    value: t as i64,
                    lo: 0,
                    hi: w.torsion_order as i64 - 1,
                });
            }
        }
        if let Some(n) = &self.algebraic {
            for (vals, &k) in self.values.iter().zip(n) {
                let g = one_unit_generator(model.p, vals[0].precision())?;
                if !g.pow_signed(k)?.eq_at_precision(&vals[0]) {
                    return Err(Error::UnitsModel("algebraic exponents disagree with the values".into()));
                }
            }
        }
        Ok(())
    }

    /// `n_w = n_{w-bar}` for every place; `None` without algebraic data.
    pub fn is_locally_parallel(&self, model: &UnitsModel) -> Option<bool> {
        let n = self.algebraic.as_ref()?;
        Some(model.conjugate.iter().enumerate().all(|(w, &c)| n[w] == n[c]))
    }
}

/// `log_p chi(u)` for a norm-one element `u`; zero on locally parallel weights.
pub fn parallel_functional(model: &UnitsModel, chi: &WeightPoint, u: usize) -> Result<PadicInt> {
    chi.validate(model)?;
    let el = model
        .norm_one
        .get(u)
        .ok_or_else(|| Error::IndexMismatch(format!("no norm-one element {u}")))?;
    let prec = chi.values.iter().flatten().map(PadicInt::precision).min().unwrap_or(1);
    let mut acc = PadicInt::one(model.p, prec)?;
    for (vals, ex) in chi.values.iter().zip(&el.exponents) {
        for (v, &e) in vals.iter().zip(ex) {
            acc = acc * v.pow_signed(e)?;
        }
    }
    log_one_unit(&acc)
}

/// An infinitesimal weight in `k^{fd}`, generator-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfWeightVector {
    pub p: u64,
    pub f: usize,
    pub d: usize,
    pub coords: Vec<u64>,
}

impl InfWeightVector {
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.coords[i * self.d + j]
    }
}

/// Assembles `t^0`-valued values on the `f` unit generators into a vector of `k^{fd}`.
pub fn inf_weight(rd: &RootDatum, p: u64, values: &[Vec<i64>]) -> Result<InfWeightVector> {
    let d = rd.semisimple_rank();
    if let Some(v) = values.iter().find(|v| v.len() != d) {
        return Err(Error::Arity(format!("{} torus coordinates, expected {d}", v.len())));
    }
    Ok(InfWeightVector {
        p,
        f: values.len(),
        d,
        coords: values
            .iter()
            .flatten()
            .map(|&x| x.rem_euclid(p as i64) as u64)
            .collect(),
    })
}

fn check_permutation(perm: &[usize]) -> Result<()> {
    let mut seen = vec![false; perm.len()];
    for &j in perm {
        if j >= perm.len() || seen[j] {
            return Err(Error::Arity(format!("{perm:?} is not a permutation")));
        }
        seen[j] = true;
    }
    Ok(())
}

/// `x_w = -w0 x_{w-bar}`: `x_w[i][j] = x_{w-bar}[i][minus_w0[j]]`.
pub fn is_parallel_pair(x: &InfWeightVector, y: &InfWeightVector, minus_w0: &[usize]) -> Result<bool> {
    check_permutation(minus_w0)?;
    if (x.f, x.d, x.p) != (y.f, y.d, y.p) || x.d != minus_w0.len() {
        return Err(Error::Arity("infinitesimal weights of different shapes".into()));
    }
    Ok((0..x.f).all(|i| (0..x.d).all(|j| x.get(i, j) == y.get(i, minus_w0[j]))))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelSubspace {
    pub subspace: Subspace,
    pub dim: usize,
    pub codim: usize,
}

/// The parallel pairs inside `k^{fd} + k^{fd}`.
pub fn parallel_subspace(field: &Fq, f: usize, minus_w0: &[usize]) -> Result<ParallelSubspace> {
    check_permutation(minus_w0)?;
    let d = minus_w0.len();
    let n = f * d;
    let mut rows = Matrix::zeros(0, 2 * n);
    for i in 0..f {
        for j in 0..d {
            let mut r = vec![0; 2 * n];
            r[i * d + j] = 1;
            r[n + i * d + minus_w0[j]] = 1;
            rows.push_row(&r)?;
        }
    }
    let subspace = Subspace::span(&rows, field);
    let dim = subspace.dim();
    Ok(ParallelSubspace {
        subspace,
        dim,
        codim: 2 * n - dim,
    })
}
