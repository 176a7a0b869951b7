use cmdef_core::field::Elem;
use cmdef_core::selmer_lab::synth::{
    deficient_system, nested_family, overlapping_enlargement, ramakrishna_local, random_exact_system,
    random_subspace, supply_prime, weight_map,
};
use cmdef_core::selmer_lab::{
    annihilation_step, avoidance_step, inflation_decomposition_check, LocalSpace, NewPrime, SelmerSystem,
};
use cmdef_core::{Error, Fq, RootDatum};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{seeded_rng, Outcome};
use crate::scenario::SelmerPayload;

const PRIME_ATTEMPTS: usize = 200;

fn annihilating_prime(
    rng: &mut ChaCha8Rng,
    sys: &SelmerSystem,
    local: &LocalSpace,
    phi: &[Elem],
    psi: &[Elem],
) -> cmdef_core::Result<NewPrime> {
    let f = sys.field.clone();
    let ram = local
        .ramakrishna
        .clone()
        .ok_or_else(|| Error::Hypothesis("local space without L^Ram".into()))?;
    let ram_perp = local.perp(&ram, &f)?;
    let balanced = local.balanced_intersection(&f)?;
    supply_prime(rng, sys, local, PRIME_ATTEMPTS, |p| {
        let phi_w = p.dual_restriction.transpose().apply(phi, &f).expect("dual length");
        let psi_w = p.restriction.transpose().apply(psi, &f).expect("length");
        !ram_perp.contains(&phi_w, &f) && !balanced.contains(&psi_w, &f)
    })
}

pub(crate) fn run(p: &SelmerPayload, seed: Option<u64>, out: &mut Outcome) -> cmdef_core::Result<()> {
    if p.primes.is_empty() {
        return Err(Error::Arity("at least one prime is needed".into()));
    }
    let mut rng = seeded_rng(seed);
    let a1 = RootDatum::parse("A1", 0)?;
    let a2 = RootDatum::parse("A2", 0)?;

    let mut fails = Vec::new();
    let mut drops = Vec::with_capacity(p.annihilation);
    for i in 0..p.annihilation {
        let f = Fq::prime(p.primes[i % p.primes.len()])?;
        let rd = if i % 4 == 3 && f.p() != 5 { &a2 } else { &a1 };
        let local = ramakrishna_local(format!("w{i}"), rd, &f, 2)?;
        let (sys, cond) = deficient_system(&mut rng, &f, 2, 4, 1, 1)?;
        let phi = sys.dual_selmer(&cond)?.basis().row(0).to_vec();
        let psi = sys.selmer(&cond)?.basis().row(0).to_vec();
        let prime = annihilating_prime(&mut rng, &sys, &local, &phi, &psi)?;
        let o = annihilation_step(&sys, &cond, &prime, &phi, &psi)?;
        drops.push((o.report.before.dual_selmer, o.report.after.dual_selmer));
        if !(o.report.all_pass() && o.system.reciprocity_holds() && o.system.is_exact()?) {
            fails.push(format!("system {i} (p = {}): {:?}", f.p(), o.report));
        }
    }
    if p.annihilation > 0 {
        out.put("annihilation_dual_selmer", &drops);
        out.check_suite("annihilation step strictly lowers the dual Selmer dimension", p.annihilation, &fails);
    }

    let (mut fails, mut neg_fails, mut negatives) = (Vec::new(), Vec::new(), 0);
    for i in 0..p.inflation {
        let f = Fq::prime(p.primes[i % p.primes.len()])?;
        let places = rng.gen_range(1..=3);
        let (base, _) = random_exact_system(&mut rng, &f, places, 3)?;
        let k = rng.gen_range(1..=3);
        let primes = (0..k)
            .map(|j| {
                let local = ramakrishna_local(format!("y{i}-{j}"), &a1, &f, 2)?;
                supply_prime(&mut rng, &base, &local, 1, |_| true)
            })
            .collect::<cmdef_core::Result<Vec<_>>>()?;
        let (singles, combined) = nested_family(&base, &primes)?;
        let report = inflation_decomposition_check(&base, &singles, &combined)?;
        if !report.holds() || report.contributions != vec![1; k] {
            fails.push(format!("family {i}: {report:?}"));
        }
        if k >= 2 {
            negatives += 1;
            let shared = overlapping_enlargement(&base, &primes)?;
            let bad = inflation_decomposition_check(&base, &singles, &shared)?;
            if bad.holds() {
                neg_fails.push(format!("family {i}: overlapping control passed"));
            }
        }
    }
    if p.inflation > 0 {
        out.put("inflation_negative_controls", negatives);
        out.check_suite("inflation decomposition holds on nested families", p.inflation, &fails);
        out.check_suite("inflation decomposition fails on overlapping controls", negatives, &neg_fails);
    }

    let (mut fails, mut done, mut skipped, mut i) = (Vec::new(), 0, 0usize, 0usize);
    while done < p.avoidance {
        i += 1;
        if skipped > 20 * p.avoidance.max(1) {
            fails.push(format!("gave up after {skipped} unusable draws"));
            break;
        }
        let f = Fq::prime(p.primes[i % p.primes.len()])?;
        let (sys, cond) = deficient_system(&mut rng, &f, 2, 4, 0, 2)?;
        if sys.dual_selmer(&cond)?.dim() != 0 {
            skipped += 1;
            continue;
        }
        let sel = sys.selmer(&cond)?;
        let local = ramakrishna_local("y", &a1, &f, 2)?;
        let ram = local.ramakrishna.clone().expect("Ramakrishna local space");
        let psi = sel.basis().row(0).to_vec();
        let prime = supply_prime(&mut rng, &sys, &local, PRIME_ATTEMPTS, |pr| {
            !ram.contains(&pr.restriction.transpose().apply(&psi, &f).expect("length"), &f)
        })?;
        let dim_new = sys.dim_h() + 1;
        let d = rng.gen_range(1..=dim_new.min(4));
        let du = rng.gen_range(0..d);
        let u = random_subspace(&mut rng, &f, d, du);
        let beta = weight_map(&mut rng, &f, &sel, dim_new, &u)?;
        match avoidance_step(&sys, &cond, &prime, &beta, &u) {
            Ok(o) => {
                let in_selmer = o.system.selmer(&o.conditions)?.contains(&o.report.psi_tilde, &f);
                if !(o.report.all_pass() && in_selmer && !u.contains(&o.report.beta_psi_tilde, &f)) {
                    fails.push(format!("pair {i}: {:?}", o.report));
                }
                done += 1;
            }
            // an unlucky beta can violate the surjectivity or kernel hypotheses; redraw
            Err(Error::Hypothesis(_)) => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    if p.avoidance > 0 {
        out.put("avoidance_redraws", skipped);
        out.check_suite("avoidance step finds psi~ with beta(psi~) outside U", p.avoidance, &fails);
    }
    Ok(())
}
