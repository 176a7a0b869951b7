//! Seeded corpora of weight families.

use rand::Rng;

use super::passage::{PassageFamily, PlacePair, SeriesData};
use super::series::MultiIndex;
use crate::error::Result;
use crate::root_datum::RootDatum;

fn random_index<R: Rng>(rng: &mut R, vars: usize, cap: u32) -> MultiIndex {
    loop {
        let idx: MultiIndex = (0..vars).map(|_| rng.gen_range(0..=cap)).collect();
        let t: u32 = idx.iter().sum();
        if (1..=cap).contains(&t) {
            return idx;
        }
    }
}

/// A polynomial with a unit constant term and a few random higher terms.
pub fn random_unit_series<R: Rng>(rng: &mut R, p: u64, vars: usize, cap: u32) -> SeriesData {
    let p = p as i64;
    let mut terms = vec![(vec![0; vars], rng.gen_range(1..p) + p * rng.gen_range(0..p))];
    for _ in 0..rng.gen_range(1..=4) {
        terms.push((random_index(rng, vars, cap), rng.gen_range(-p * p..=p * p)));
    }
    SeriesData::polynomial(terms)
}

#[derive(Debug, Clone)]
pub struct FamilyShape {
    pub p: u64,
    pub precision: u32,
    pub degree_cap: u32,
    pub vars: usize,
    pub local_degree: usize,
    pub pairs: usize,
}

impl FamilyShape {
    pub fn random<R: Rng>(rng: &mut R, precision: u32) -> Self {
        FamilyShape {
            p: [5, 7, 11][rng.gen_range(0..3)],
            precision,
            degree_cap: rng.gen_range(1..=6),
            vars: rng.gen_range(1..=4),
            local_degree: rng.gen_range(1..=2),
            pairs: rng.gen_range(1..=2),
        }
    }
}

/// `f_w = zeta f_wbar` for every index, with `zeta` a random Teichmuller lift.
pub fn constant_ratio_family<R: Rng>(rng: &mut R, shape: &FamilyShape, rd: &RootDatum) -> Result<PassageFamily> {
    let minus_w0 = rd.longest_element()?.minus_w0;
    let n = shape.local_degree * minus_w0.len();
    let pairs = (0..shape.pairs)
        .map(|k| {
            let f_wbar: Vec<SeriesData> = (0..n)
                .map(|_| random_unit_series(rng, shape.p, shape.vars, shape.degree_cap))
                .collect();
            let f_w = f_wbar
                .iter()
                .map(|s| SeriesData {
                    teichmuller: rng.gen_range(1..shape.p),
                    terms: s.terms.clone(),
                })
                .collect();
            PlacePair {
                w: format!("w{k}"),
                wbar: format!("w{k}bar"),
                f_w,
                f_wbar,
            }
        })
        .collect();
    Ok(PassageFamily {
        p: shape.p,
        precision: shape.precision,
        degree_cap: shape.degree_cap,
        vars: shape.vars,
        local_degree: shape.local_degree,
        minus_w0,
        nonsplit: true,
        pairs,
    })
}

/// A constant-ratio family with one entry perturbed by a unit multiple of a pure power.
pub fn perturbed_family<R: Rng>(rng: &mut R, shape: &FamilyShape, rd: &RootDatum) -> Result<PassageFamily> {
    let mut fam = constant_ratio_family(rng, shape, rd)?;
    let k = rng.gen_range(0..fam.pairs.len());
    let idx = rng.gen_range(0..fam.pairs[k].f_w.len());
    let mut mono = vec![0; shape.vars];
    mono[rng.gen_range(0..shape.vars)] = rng.gen_range(1..=shape.degree_cap);
    let c = rng.gen_range(1..shape.p as i64);
    fam.pairs[k].f_w[idx].terms.push((mono, c));
    Ok(fam)
}
