use std::collections::BTreeMap;

use cmdef_core::linalg::Matrix;
use cmdef_core::local_tame::{random_module, AdjointModule, DualityPairing};
use cmdef_core::{Fq, TameGaloisModule, TorusElement};
use rand::Rng;
use serde_json::json;

use super::{datum, seeded_rng, Outcome};
use crate::oracle::{brute_force_dims, rank_dims};
use crate::scenario::{AdjointSpec, LocalPayload, ModuleSpec, RandomModules};

const BRUTE_FORCE_LIMIT: usize = 20_000;

pub(crate) fn run(p: &LocalPayload, seed: Option<u64>, out: &mut Outcome) -> cmdef_core::Result<()> {
    match p {
        LocalPayload::Adjoint(s) => adjoint(s, out),
        LocalPayload::Module(s) => module(s, out),
        LocalPayload::Random(s) => random(s, seed, out),
    }
}

/// Duality facts for one module, as `(name, pass)` pairs plus a JSON summary.
fn duality(m: &TameGaloisModule) -> cmdef_core::Result<(Vec<(&'static str, bool)>, serde_json::Value)> {
    let pairing = DualityPairing::new(m);
    let h1 = pairing.h1();
    let dual = pairing.dual_h1();
    let unr = h1.unramified();
    let perp = pairing.annihilator(&unr)?;
    let full_perp = pairing.annihilator(&h1.full())?;
    let zero_perp = pairing.annihilator(&h1.zero())?;
    let checks = vec![
        ("Gram matrix of the local pairing is invertible", pairing.is_perfect()),
        ("dim L^unr + dim (L^unr)^perp = h1 of the twisted dual", unr.dim() + perp.dim() == dual.dim()),
        ("annihilator of L^unr is the dual unramified subspace", perp.space == dual.unramified().space),
        ("annihilators of 0 and H^1 are H^1 and 0", zero_perp.dim() == dual.dim() && full_perp.dim() == 0),
    ];
    let summary = json!({
        "gram": pairing.gram().to_rows(),
        "dim_l_unr": unr.dim(),
        "dim_l_unr_perp": perp.dim(),
        "dim_dual_h1": dual.dim(),
    });
    Ok((checks, summary))
}

fn euler_checks(m: &TameGaloisModule, out: &mut Outcome) {
    let d = m.cohomology_dims();
    let dual = m.dual_twist().cohomology_dims();
    out.check_eq("h1 = h0 + h2", d.h1, d.h0 + d.h2);
    out.check_eq("h2(M) = h0(M^vee(1))", d.h2, dual.h0);
    out.check_eq("dimensions agree with the relator-rank oracle", rank_dims(m), (d.h0, d.h1, d.h2));
}

fn adjoint(s: &AdjointSpec, out: &mut Outcome) -> cmdef_core::Result<()> {
    let f = Fq::prime(s.p)?;
    let rd = datum(&s.ty, s.central_rank)?;
    let t = TorusElement::from_ints(&f, &s.torus)?;
    let a = AdjointModule::new(&rd, &t, s.q, s.twist)?;
    let m = a.module();
    let dims = m.cohomology_dims();
    let twisted = a.twisted(1).module().cohomology_dims();
    out.put("datum", rd.label());
    out.put("dim", m.dim());
    out.put("regular_semisimple", t.is_regular_semisimple(&rd)?);
    out.put("cohomology", dims);
    out.put("twisted_cohomology", twisted);
    euler_checks(m, out);
    let (dchecks, dsummary) = duality(m)?;
    for (name, pass) in dchecks {
        out.check(name, pass);
    }
    out.put("duality", dsummary);
    let dim_unr = m.h1().unramified().dim();
    out.check_eq("dim L^unr = h0", dim_unr, dims.h0);

    let alpha = a.is_ramakrishna_type()?;
    out.put("ramakrishna_root", alpha);
    let mut dim_ram = None;
    if let Some(alpha) = alpha {
        out.put("ramakrishna_root_vector", rd.root(alpha));
        let l_ram = a.ramakrishna_subspace(alpha)?;
        let pairing = DualityPairing::new(m);
        let perp = pairing.annihilator(&l_ram)?;
        let lemma = a.lemma_check(alpha)?;
        dim_ram = Some(l_ram.dim());
        out.put("dim_l_ram", l_ram.dim());
        out.put("dim_l_ram_perp", perp.dim());
        out.put("lemma", &lemma);
        out.check_eq("dim L^Ram = h0", l_ram.dim(), dims.h0);
        out.check_eq(
            "dim L^Ram + dim (L^Ram)^perp = h1 of the twisted dual",
            l_ram.dim() + perp.dim(),
            pairing.dual_h1().dim(),
        );
        out.check_eq("h0(g0(1)) = 1", twisted.h0, 1);
        out.check("L^Ram is the image of H^1(t_alpha + g_alpha)", lemma.image_of_w);
        out.check("(L^Ram)^perp is the image of H^1(W^perp(1))", lemma.perp_is_image);
        out.check("L^Ram has no l_alpha component", lemma.l_alpha_vanishes);
        out.check("(L^Ram)^perp has no g_{-alpha} component", lemma.g_minus_alpha_vanishes);
    }
    if let Some(x) = &s.expect {
        let pairs = [
            ("expected h0", Some(dims.h0), x.h0),
            ("expected h1", Some(dims.h1), x.h1),
            ("expected h2", Some(dims.h2), x.h2),
            ("expected dim L^unr", Some(dim_unr), x.dim_l_unr),
            ("expected dim L^Ram", dim_ram, x.dim_l_ram),
            ("expected h0(g0(1))", Some(twisted.h0), x.h0_twist),
            ("expected Ramakrishna root", alpha, x.ramakrishna_root),
        ];
        for (name, got, want) in pairs {
            if let Some(w) = want {
                out.check_eq(name, got, Some(w));
            }
        }
    }
    Ok(())
}

fn module(s: &ModuleSpec, out: &mut Outcome) -> cmdef_core::Result<()> {
    let f = Fq::prime(s.p)?;
    let phi = Matrix::from_ints(&f, &s.phi)?;
    let tau = match &s.tau {
        Some(t) => Matrix::from_ints(&f, t)?,
        None => Matrix::identity(phi.nrows()),
    };
    let m = TameGaloisModule::new(&f, phi, tau, s.q)?.twisted(s.twist);
    let dims = m.cohomology_dims();
    out.put("dim", m.dim());
    out.put("cohomology", dims);
    out.put("dual_cohomology", m.dual_twist().cohomology_dims());
    euler_checks(&m, out);
    if let Some((h0, h1)) = brute_force_dims(&m, BRUTE_FORCE_LIMIT) {
        out.check_eq("h0, h1 agree with exhaustive enumeration", (h0, h1), (dims.h0, dims.h1));
    }
    let (dchecks, dsummary) = duality(&m)?;
    for (name, pass) in dchecks {
        out.check(name, pass);
    }
    out.put("duality", dsummary);
    if let Some(x) = &s.expect {
        out.check_eq("expected (h0, h1, h2)", (dims.h0, dims.h1, dims.h2), (x.h0, x.h1, x.h2));
    }
    Ok(())
}

fn random(s: &RandomModules, seed: Option<u64>, out: &mut Outcome) -> cmdef_core::Result<()> {
    let mut rng = seeded_rng(seed);
    let names = [
        "h1 = h0 + h2",
        "h2(M) = h0(M^vee(1))",
        "dimensions agree with the relator-rank oracle",
        "h0, h1 agree with exhaustive enumeration",
        "Gram matrix of the local pairing is invertible",
        "dim L^unr + dim (L^unr)^perp = h1 of the twisted dual",
        "annihilator of L^unr is the dual unramified subspace",
        "annihilators of 0 and H^1 are H^1 and 0",
    ];
    let mut failures: Vec<Vec<String>> = vec![Vec::new(); names.len()];
    let mut per_prime: BTreeMap<u64, usize> = BTreeMap::new();
    let mut per_dim: BTreeMap<usize, usize> = BTreeMap::new();
    let mut brute = 0;
    let mut totals = [0usize; 3];
    for case in 0..s.count {
        let p = s.primes[rng.gen_range(0..s.primes.len())];
        let f = Fq::prime(p)?;
        let q = loop {
            let q = rng.gen_range(2..=s.q_max.max(2));
            if q % p != 0 {
                break q;
            }
        };
        let m = random_module(&mut rng, &f, s.max_dim, q)?;
        *per_prime.entry(p).or_default() += 1;
        *per_dim.entry(m.dim()).or_default() += 1;
        let d = m.cohomology_dims();
        totals[0] += d.h0;
        totals[1] += d.h1;
        totals[2] += d.h2;
        let tag = format!("case {case} (p = {p}, q = {q}, dim {})", m.dim());
        let mut results = vec![
            d.h1 == d.h0 + d.h2,
            d.h2 == m.dual_twist().cohomology_dims().h0,
            rank_dims(&m) == (d.h0, d.h1, d.h2),
        ];
        match brute_force_dims(&m, BRUTE_FORCE_LIMIT) {
            Some(b) => {
                brute += 1;
                results.push(b == (d.h0, d.h1));
            }
            None => results.push(true),
        }
        results.extend(duality(&m)?.0.into_iter().map(|(_, pass)| pass));
        for (i, ok) in results.into_iter().enumerate() {
            if !ok {
                failures[i].push(tag.clone());
            }
        }
    }
    out.put("count", s.count);
    out.put("modules_per_prime", per_prime);
    out.put("modules_per_dimension", per_dim);
    out.put("exhaustively_enumerated", brute);
    out.put("sum_h0_h1_h2", totals);
    for (name, fails) in names.iter().zip(&failures) {
        out.check_suite(*name, s.count, fails);
    }
    Ok(())
}
