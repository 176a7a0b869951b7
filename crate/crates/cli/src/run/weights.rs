use cmdef_core::padic_weights::synth::{constant_ratio_family, perturbed_family, FamilyShape};
use cmdef_core::padic_weights::{
    is_parallel_pair, log_one_unit, log_unit, modulus, parallel_functional, passage_dichotomy, teichmuller_budget,
    weierstrass_data, Passage, PassageFamily, PadicInt, TruncatedSeries, UnitsModel, WeightPoint,
};
use cmdef_core::RootDatum;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{datum, seeded_rng, Outcome};
use crate::scenario::{CorpusSpec, DichotomySpec, EngineSpec, Verdict, WeightsPayload};

/// Runs the payload and returns the working precision used.
pub(crate) fn run(
    p: &WeightsPayload,
    seed: Option<u64>,
    precision: Option<u32>,
    out: &mut Outcome,
) -> cmdef_core::Result<u32> {
    match p {
        WeightsPayload::Dichotomy(s) => dichotomy(s, precision, out),
        WeightsPayload::Corpus(s) => corpus(s, &mut seeded_rng(seed), precision.unwrap_or(s.precision), out),
        WeightsPayload::Engine(s) => engine(s, &mut seeded_rng(seed), precision.unwrap_or(s.precision), out),
    }
}

fn all_parallel(fam: &PassageFamily, pairs: &[cmdef_core::padic_weights::PairWeights]) -> cmdef_core::Result<bool> {
    for w in pairs {
        if !w.parallel {
            return Ok(false);
        }
        for (x, y) in &w.weights {
            if !is_parallel_pair(x, y, &fam.minus_w0)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn dichotomy(s: &DichotomySpec, precision: Option<u32>, out: &mut Outcome) -> cmdef_core::Result<u32> {
    let mut fam = s.family.clone();
    if let Some(n) = precision {
        fam.precision = n;
    }
    let report = passage_dichotomy(&fam)?;
    let verdict = match &report.verdict {
        Passage::ParallelWeights(pairs) => {
            out.check("every place pair has parallel infinitesimal weights", all_parallel(&fam, pairs)?);
            Verdict::Parallel
        }
        Passage::SparsityCertificate(c) => {
            out.check_eq("one Weierstrass bound per root of unity", c.bounds.len(), fam.p as usize - 1);
            Verdict::Certificate
        }
    };
    out.put("verdict", verdict);
    out.put("report", &report);
    if let Some(want) = s.expect {
        out.check_eq("expected verdict", verdict, want);
    }
    Ok(fam.precision)
}

fn corpus(s: &CorpusSpec, rng: &mut ChaCha8Rng, precision: u32, out: &mut Outcome) -> cmdef_core::Result<u32> {
    let types: Vec<RootDatum> = s.types.iter().map(|t| datum(t, 0)).collect::<cmdef_core::Result<_>>()?;
    if types.is_empty() {
        return Err(cmdef_core::Error::Arity("corpus needs at least one root datum".into()));
    }
    let (mut parallel, mut certified, mut escalated) = (0, 0, 0);
    let mut fails = Vec::new();
    for i in 0..s.count {
        let shape = FamilyShape::random(rng, precision);
        let rd = &types[rng.gen_range(0..types.len())];
        let constant = i % 2 == 0;
        let fam = if constant {
            constant_ratio_family(rng, &shape, rd)?
        } else {
            perturbed_family(rng, &shape, rd)?
        };
        let report = passage_dichotomy(&fam)?;
        if report.precision != precision {
            escalated += 1;
        }
        match (&report.verdict, constant) {
            (Passage::ParallelWeights(pairs), true) if all_parallel(&fam, pairs)? => parallel += 1,
            (Passage::SparsityCertificate(c), false) if c.bounds.len() == fam.p as usize - 1 => certified += 1,
            (v, _) => fails.push(format!(
                "family {i} ({}, {}): unexpected {}",
                rd.label(),
                if constant { "constant ratio" } else { "perturbed" },
                match v {
                    Passage::ParallelWeights(_) => "parallel verdict",
                    Passage::SparsityCertificate(_) => "certificate",
                }
            )),
        }
    }
    out.put("families", s.count);
    out.put("parallel_verdicts", parallel);
    out.put("certificates", certified);
    out.put("escalated", escalated);
    out.check_suite("constant ratios give parallel weights, perturbations give certificates", s.count, &fails);
    Ok(precision)
}

fn engine(s: &EngineSpec, rng: &mut ChaCha8Rng, n: u32, out: &mut Outcome) -> cmdef_core::Result<u32> {
    let mut torsion = Vec::new();
    for &p in &s.torsion_primes {
        let budget = teichmuller_budget(p, n)?;
        let zero = budget
            .iter()
            .map(log_unit)
            .collect::<cmdef_core::Result<Vec<_>>>()?
            .iter()
            .all(PadicInt::is_zero);
        torsion.push(json!({ "p": p, "roots_of_unity": budget.len(), "logs_vanish": zero }));
        out.check(format!("log vanishes on the roots of unity in Z_{p}"), zero);
    }
    out.put("torsion", torsion);

    if s.log_pairs > 0 {
        let mut fails = Vec::new();
        for i in 0..s.log_pairs {
            let p = [3u64, 5, 7, 11, 13][rng.gen_range(0..5)];
            let m = modulus(p, n)?;
            let mut one_unit = || PadicInt::from_residue(p, n, 1 + p * rng.gen_range(0..m / p));
            let (u, v) = (one_unit()?, one_unit()?);
            let lhs = log_one_unit(&(u * v))?;
            let rhs = log_one_unit(&u)? + log_one_unit(&v)?;
            if lhs != rhs || !lhs.eq_at_precision(&rhs) {
                fails.push(format!("pair {i}: u = {u}, v = {v}"));
            }
        }
        out.check_suite(format!("log(uv) = log u + log v at precision {n}"), s.log_pairs, &fails);
    }

    let mut polys = Vec::with_capacity(s.weierstrass.len());
    for c in &s.weierstrass {
        let terms: Vec<_> = c.coeffs.iter().enumerate().map(|(i, &a)| (vec![i as u32], a)).collect();
        let cap = c.coeffs.len().saturating_sub(1).max(1) as u32;
        let g = TruncatedSeries::from_terms(c.p, n, cap, 1, &terms)?;
        let w = weierstrass_data(&g)?;
        if let Some(want) = c.expect_degree {
            out.check_eq(format!("Weierstrass degree of {:?} over Z_{}", c.coeffs, c.p), w.degree, Some(want));
        }
        polys.push(json!({ "p": c.p, "coeffs": c.coeffs, "data": w }));
    }
    out.put("weierstrass", polys);

    if s.functional > 0 {
        let (mut fails_par, mut fails_non) = (Vec::new(), Vec::new());
        for i in 0..s.functional {
            let p = [3u64, 5, 7, 11][rng.gen_range(0..4)];
            let m = rng.gen_range(1..=3);
            let model = UnitsModel::split_cm(p, m)?;
            let tors: Vec<u64> = (0..2 * m).map(|_| rng.gen_range(0..p - 1)).collect();
            let e: Vec<i64> = (0..m).map(|_| rng.gen_range(-20..=20)).collect();
            let chi = WeightPoint::locally_parallel(&model, &e, &tors, n)?;
            for u in 0..m {
                if !parallel_functional(&model, &chi, u)?.is_zero() {
                    fails_par.push(format!("weight {i}, unit {u}"));
                }
            }
        }
        for i in 0..s.functional {
            let p = [3u64, 5, 7, 11][rng.gen_range(0..4)];
            let m = rng.gen_range(1..=3);
            let model = UnitsModel::split_cm(p, m)?;
            let mut e: Vec<i64> = (0..2 * m).map(|_| rng.gen_range(-20..=20)).collect();
            let j = rng.gen_range(0..m);
            let step = rng.gen_range(1..=10) * if rng.gen() { 1 } else { -1 };
            e[2 * j + 1] = e[2 * j] + step;
            let chi = WeightPoint::algebraic(&model, &e, &vec![0; 2 * m], n)?;
            for u in 0..m {
                let zero = parallel_functional(&model, &chi, u)?.is_zero();
                if zero != (e[2 * u] == e[2 * u + 1]) {
                    fails_non.push(format!("weight {i}, unit {u}, exponents {e:?}"));
                }
            }
        }
        out.check_suite("parallel functional vanishes on locally parallel weights", s.functional, &fails_par);
        out.check_suite("parallel functional detects non-parallel algebraic weights", s.functional, &fails_non);
    }
    Ok(n)
}
