use std::collections::VecDeque;

use cmdef_core::field::{Elem, Fq};
use cmdef_core::linalg::{Matrix, Subspace};
use cmdef_core::root_datum::RootDatum;
use cmdef_core::selmer_lab::synth::{
    deficient_system, nested_family, overlapping_enlargement, ramakrishna_local,
    random_exact_system, random_matrix, random_subspace, supply_prime, weight_map,
};
use cmdef_core::selmer_lab::{
    annihilation_step, avoidance_step, finite_cohomology, inflation_decomposition_check,
    sl_adjoint, ConditionAssignment, FiniteGroupAction, LocalSpace, NewPrime, SelmerSystem,
    DEFAULT_COCHAIN_LIMIT,
};
use cmdef_core::Error;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn all_vectors(p: u32, len: usize) -> impl Iterator<Item = Vec<Elem>> {
    (0..(p as usize).pow(len as u32)).map(move |mut code| {
        (0..len)
            .map(|_| {
                let d = code % p as usize;
                code /= p as usize;
                d as Elem
            })
            .collect()
    })
}

fn log_p(mut x: usize, p: usize) -> usize {
    let mut e = 0;
    while x > 1 {
        assert_eq!(x % p, 0);
        x /= p;
        e += 1;
    }
    e
}

/// Counts 1-cocycles by trying every assignment on the generators and propagating
/// along a spanning tree of the Cayley graph.
fn enumerated_h1(g: &FiniteGroupAction) -> usize {
    let f = g.field();
    let n = g.module_dim();
    let gens = g.generators().to_vec();
    let order = g.order();
    let mut z1 = 0usize;
    for vals in all_vectors(f.p(), n * gens.len()) {
        let mut c: Vec<Option<Vec<Elem>>> = vec![None; order];
        c[g.identity()] = Some(vec![0; n]);
        let mut queue = VecDeque::from([g.identity()]);
        let mut ok = true;
        while let Some(x) = queue.pop_front() {
            let cx = c[x].clone().unwrap();
            for s in 0..gens.len() {
                let y = g.right_by_generator(x, s);
                let moved = g.action(x).apply(&vals[s * n..(s + 1) * n], f).unwrap();
                let cy: Vec<Elem> = cx.iter().zip(&moved).map(|(&a, &b)| f.add(a, b)).collect();
                match &c[y] {
                    Some(old) => {
                        if *old != cy {
                            ok = false;
                        }
                    }
                    None => {
                        c[y] = Some(cy);
                        queue.push_back(y);
                    }
                }
            }
        }
        if ok {
            z1 += 1;
        }
    }
    let mut cobs: Vec<Vec<Elem>> = all_vectors(f.p(), n)
        .map(|m| {
            let mut out: Vec<Elem> = Vec::new();
            for &s in g.generators() {
                let sm = g.action(s).apply(&m, f).unwrap();
                out.extend(sm.iter().zip(&m).map(|(&a, &b)| f.sub(a, b)));
            }
            out
        })
        .collect();
    cobs.sort();
    cobs.dedup();
    log_p(z1, f.p() as usize) - log_p(cobs.len(), f.p() as usize)
}

/// Tate cohomology of a cyclic group: `H^1 = ker N / im(A - 1)`, `H^2 = ker(A - 1) / im N`.
fn cyclic_oracle(f: &Fq, a: &Matrix, m: u64) -> (usize, usize) {
    let n = a.nrows();
    let shift = a.sub(&Matrix::identity(n), f).unwrap();
    let norm = a.geometric_sum(m, f).unwrap();
    let ker = |x: &Matrix| n - x.rank(f);
    (ker(&norm) - shift.rank(f), ker(&shift) - norm.rank(f))
}

fn mat(f: &Fq, rows: &[Vec<i64>]) -> Matrix {
    Matrix::from_ints(f, rows).unwrap()
}

fn test_groups() -> Vec<(&'static str, FiniteGroupAction)> {
    let mut out = Vec::new();
    let f3 = Fq::prime(3).unwrap();
    let f5 = Fq::prime(5).unwrap();
    let f7 = Fq::prime(7).unwrap();
    let bound = 1000;
    // SL_2(F_3) on its natural module
    let s = mat(&f3, &[vec![0, 2], vec![1, 0]]);
    let t = mat(&f3, &[vec![1, 1], vec![0, 1]]);
    out.push((
        "SL2(F3)",
        FiniteGroupAction::from_action(&f3, &[s.clone(), t.clone()], bound).unwrap(),
    ));
    // GL_2(F_3) on its natural module
    let d = mat(&f3, &[vec![2, 0], vec![0, 1]]);
    out.push((
        "GL2(F3)",
        FiniteGroupAction::from_action(&f3, &[s, t, d], bound).unwrap(),
    ));
    // upper-triangular Borel of GL_2(F_5)
    let b1 = mat(&f5, &[vec![2, 0], vec![0, 1]]);
    let b2 = mat(&f5, &[vec![1, 0], vec![0, 2]]);
    let b3 = mat(&f5, &[vec![1, 1], vec![0, 1]]);
    out.push((
        "B(F5)",
        FiniteGroupAction::from_action(&f5, &[b1, b2, b3], bound).unwrap(),
    ));
    // affine group of F_7 acting on F_7 + F_7 via (x, 1)
    let a1 = mat(&f7, &[vec![3, 0], vec![0, 1]]);
    let a2 = mat(&f7, &[vec![1, 1], vec![0, 1]]);
    out.push((
        "Aff(F7)",
        FiniteGroupAction::from_action(&f7, &[a1, a2], bound).unwrap(),
    ));
    // S_3 permuting coordinates of F_3^3 and F_5^3
    for f in [&f3, &f5] {
        let c = mat(f, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
        let tr = mat(f, &[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]);
        out.push((
            "S3",
            FiniteGroupAction::from_action(f, &[c, tr], bound).unwrap(),
        ));
    }
    // S_3 acting on the sign character over F_3
    let c = mat(&f3, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
    let tr = mat(&f3, &[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]);
    out.push((
        "S3 sign",
        FiniteGroupAction::new(
            &f3,
            &[c, tr],
            &f3,
            &[Matrix::identity(1), Matrix::scalar(1, 2)],
            bound,
        )
        .unwrap(),
    ));
    // Z/24 = F_25^* acting on F_5 through the norm to F_5^*
    let f25 = Fq::new(5, 2).unwrap();
    let gen = f25
        .units()
        .find(|&x| f25.mult_order(x).unwrap() == 24)
        .unwrap();
    out.push((
        "Z/24",
        FiniteGroupAction::new(
            &f25,
            &[Matrix::scalar(1, gen)],
            &f5,
            &[Matrix::scalar(1, 2)],
            bound,
        )
        .unwrap(),
    ));
    // dihedral group of order 2 * 12 over F_13 acting on the plane
    let f13 = Fq::prime(13).unwrap();
    let r = mat(&f13, &[vec![2, 0], vec![0, 7]]);
    let w = mat(&f13, &[vec![0, 1], vec![1, 0]]);
    out.push((
        "D12",
        FiniteGroupAction::from_action(&f13, &[r, w], bound).unwrap(),
    ));
    out
}

#[test]
fn finite_h1_matches_enumeration() {
    for (name, g) in test_groups() {
        assert!(g.order() <= 200, "{name}");
        let h1 = finite_cohomology(&g, 1, DEFAULT_COCHAIN_LIMIT).unwrap();
        assert_eq!(h1.dim, enumerated_h1(&g), "{name} of order {}", g.order());
        let basis = h1.basis.unwrap();
        for row in basis.rows_iter() {
            assert!(g.is_cocycle_1(row), "{name}");
        }
    }
}

#[test]
fn cyclic_groups_match_tate_cohomology() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc1c);
    for p in [3u64, 5, 7] {
        let f = Fq::prime(p).unwrap();
        for _ in 0..10 {
            let n = rng.gen_range(1..=2);
            let a = loop {
                let m = random_matrix(&mut rng, &f, n, n);
                if m.is_invertible(&f) {
                    break m;
                }
            };
            let g = FiniteGroupAction::from_action(&f, &[a.clone()], 1000).unwrap();
            let m = g.order() as u64;
            let (h1, h2) = cyclic_oracle(&f, &a, m);
            assert_eq!(
                finite_cohomology(&g, 1, DEFAULT_COCHAIN_LIMIT).unwrap().dim,
                h1
            );
            if m * m * n as u64 <= DEFAULT_COCHAIN_LIMIT as u64 {
                assert_eq!(
                    finite_cohomology(&g, 2, DEFAULT_COCHAIN_LIMIT).unwrap().dim,
                    h2,
                    "{a:?}"
                );
            }
        }
    }
}

#[test]
fn klein_four_h2() {
    // (Z/2)^2 acting trivially on F_2: H^1 = 2, H^2 = 3
    let f2 = Fq::prime(2).unwrap();
    let f3 = Fq::prime(3).unwrap();
    let a = mat(&f3, &[vec![2, 0], vec![0, 1]]);
    let b = mat(&f3, &[vec![1, 0], vec![0, 2]]);
    let g = FiniteGroupAction::new(
        &f3,
        &[a, b],
        &f2,
        &[Matrix::identity(1), Matrix::identity(1)],
        10,
    )
    .unwrap();
    assert_eq!(g.order(), 4);
    assert_eq!(
        finite_cohomology(&g, 1, DEFAULT_COCHAIN_LIMIT).unwrap().dim,
        2
    );
    assert_eq!(
        finite_cohomology(&g, 2, DEFAULT_COCHAIN_LIMIT).unwrap().dim,
        3
    );
}

#[test]
fn sl2_f5_adjoint() {
    let f = Fq::prime(5).unwrap();
    let s = mat(&f, &[vec![0, 4], vec![1, 0]]);
    let t = mat(&f, &[vec![1, 1], vec![0, 1]]);
    let act = [sl_adjoint(&f, &s).unwrap(), sl_adjoint(&f, &t).unwrap()];
    let g = FiniteGroupAction::new(&f, &[s, t], &f, &act, 1000).unwrap();
    assert_eq!(g.order(), 120);
    assert_eq!(
        finite_cohomology(&g, 0, DEFAULT_COCHAIN_LIMIT).unwrap().dim,
        0
    );
    // the exceptional case p = 5: H^1 is a line
    let h1 = finite_cohomology(&g, 1, DEFAULT_COCHAIN_LIMIT).unwrap();
    assert_eq!(h1.dim, 1);
    assert_eq!(enumerated_h1(&g), 1);
    for p in [7u64] {
        let f = Fq::prime(p).unwrap();
        let s = mat(&f, &[vec![0, -1], vec![1, 0]]);
        let t = mat(&f, &[vec![1, 1], vec![0, 1]]);
        let act = [sl_adjoint(&f, &s).unwrap(), sl_adjoint(&f, &t).unwrap()];
        let g = FiniteGroupAction::new(&f, &[s, t], &f, &act, 2000).unwrap();
        assert_eq!(finite_cohomology(&g, 1, DEFAULT_COCHAIN_LIMIT).unwrap().dim, 0, "p = {p}");
    }
    assert!(matches!(
        finite_cohomology(&g, 2, DEFAULT_COCHAIN_LIMIT),
        Err(Error::CochainLimit(43200))
    ));
}

/// Selmer group by listing every element of `H` and testing each local condition.
fn brute_selmer(sys: &SelmerSystem, cond: &ConditionAssignment) -> usize {
    let f = &sys.field;
    let count = all_vectors(f.p(), sys.dim_h())
        .filter(|x| {
            (0..sys.locals.len())
                .all(|v| cond.conditions[v].contains(&sys.restrict(x, v).unwrap(), f))
        })
        .count();
    log_p(count, f.p() as usize)
}

#[test]
fn random_systems_satisfy_duality() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e1);
    for i in 0..100 {
        let p = [3u64, 5, 7][i % 3];
        let f = Fq::prime(p).unwrap();
        let (sys, cond) = {
            let places = rng.gen_range(1..=3);
            random_exact_system(&mut rng, &f, places, 3)
        }
        .unwrap();
        assert!(sys.reciprocity_holds());
        assert!(sys.is_exact().unwrap());
        let d = sys.dims(&cond).unwrap();
        let expected = sys.dim_h() as i64 + cond.total_dim() as i64 - sys.total_dim() as i64;
        assert_eq!(d.difference(), expected);
        if sys.dim_h() <= 6 {
            assert_eq!(d.selmer, brute_selmer(&sys, &cond));
        }
    }
}

fn a1() -> RootDatum {
    RootDatum::parse("A1", 0).unwrap()
}

fn annihilating_prime(
    rng: &mut ChaCha8Rng,
    sys: &SelmerSystem,
    local: &LocalSpace,
    phi: &[Elem],
    psi: &[Elem],
) -> NewPrime {
    let f = sys.field.clone();
    let ram = local.ramakrishna.clone().unwrap();
    let ram_perp = local.perp(&ram, &f).unwrap();
    let balanced = local.balanced_intersection(&f).unwrap();
    supply_prime(rng, sys, local, 200, |p| {
        let phi_w = p.dual_restriction.transpose().apply(phi, &f).unwrap();
        let psi_w = p.restriction.transpose().apply(psi, &f).unwrap();
        !ram_perp.contains(&phi_w, &f) && !balanced.contains(&psi_w, &f)
    })
    .unwrap()
}

#[test]
fn annihilation_on_seeded_systems() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xa11);
    for i in 0..100 {
        let p = [5u64, 7, 11][i % 3];
        let f = Fq::prime(p).unwrap();
        let rd = if i % 4 == 3 && p != 5 {
            RootDatum::parse("A2", 0).unwrap()
        } else {
            a1()
        };
        let local = ramakrishna_local(format!("w{i}"), &rd, &f, 2).unwrap();
        let (sys, cond) = deficient_system(&mut rng, &f, 2, 4, 1, 1).unwrap();
        let phi = sys.dual_selmer(&cond).unwrap().basis().row(0).to_vec();
        let psi = sys.selmer(&cond).unwrap().basis().row(0).to_vec();
        let prime = annihilating_prime(&mut rng, &sys, &local, &phi, &psi);
        let out = annihilation_step(&sys, &cond, &prime, &phi, &psi).unwrap();
        assert!(out.report.all_pass(), "case {i}: {:?}", out.report);
        assert_eq!(
            out.report.after.dual_selmer + 1,
            out.report.before.dual_selmer
        );
        assert!(out.system.reciprocity_holds());
        assert!(out.system.is_exact().unwrap());
    }
}

#[test]
fn annihilation_iterates_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x17e);
    for i in 0..20 {
        let f = Fq::prime([5u64, 7][i % 2]).unwrap();
        let (mut sys, mut cond) = deficient_system(&mut rng, &f, 3, 4, 2, 1).unwrap();
        let start = sys.dual_selmer(&cond).unwrap().dim();
        let mut steps = 0;
        while sys.dual_selmer(&cond).unwrap().dim() > 0 {
            let local = ramakrishna_local(format!("w{steps}"), &a1(), &f, 2).unwrap();
            let phi = sys.dual_selmer(&cond).unwrap().basis().row(0).to_vec();
            let psi = sys.selmer(&cond).unwrap().basis().row(0).to_vec();
            let prime = annihilating_prime(&mut rng, &sys, &local, &phi, &psi);
            let out = annihilation_step(&sys, &cond, &prime, &phi, &psi).unwrap();
            sys = out.system;
            cond = out.conditions;
            steps += 1;
            assert!(steps <= start);
        }
        assert!(steps >= 1);
    }
}

#[test]
fn annihilation_rejects_bad_primes() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = Fq::prime(7).unwrap();
    let (sys, cond) = deficient_system(&mut rng, &f, 2, 4, 1, 1).unwrap();
    let local = ramakrishna_local("w", &a1(), &f, 2).unwrap();
    let phi = sys.dual_selmer(&cond).unwrap().basis().row(0).to_vec();
    let psi = sys.selmer(&cond).unwrap().basis().row(0).to_vec();
    let mut prime = annihilating_prime(&mut rng, &sys, &local, &phi, &psi);
    prime.dual_restriction = Matrix::zeros(sys.dim_h_dual(), local.dual_dim());
    assert!(matches!(
        annihilation_step(&sys, &cond, &prime, &phi, &psi),
        Err(Error::Hypothesis(_))
    ));
}

fn random_ram_primes(
    rng: &mut ChaCha8Rng,
    sys: &SelmerSystem,
    k: usize,
    tag: usize,
) -> Vec<NewPrime> {
    (0..k)
        .map(|j| {
            let local = ramakrishna_local(format!("y{tag}-{j}"), &a1(), &sys.field, 2).unwrap();
            supply_prime(rng, sys, &local, 1, |_| true).unwrap()
        })
        .collect()
}

#[test]
fn inflation_decomposition_on_seeded_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1f1);
    for i in 0..100 {
        let f = Fq::prime([5u64, 7, 13][i % 3]).unwrap();
        let (base, _) = {
            let places = rng.gen_range(1..=3);
            random_exact_system(&mut rng, &f, places, 3)
        }
        .unwrap();
        let k = rng.gen_range(1..=3);
        let primes = random_ram_primes(&mut rng, &base, k, i);
        let (singles, combined) = nested_family(&base, &primes).unwrap();
        let report = inflation_decomposition_check(&base, &singles, &combined).unwrap();
        assert!(report.holds(), "case {i}: {report:?}");
        // each Ramakrishna prime contributes h^0(g^0(1)) = 1
        assert_eq!(report.contributions, vec![1; k]);
        assert_eq!(report.total, k);

        if k >= 2 {
            let shared = overlapping_enlargement(&base, &primes).unwrap();
            let bad = inflation_decomposition_check(&base, &singles, &shared).unwrap();
            assert!(!bad.holds(), "case {i}: {bad:?}");
        }
    }
}

#[test]
fn inflation_rejects_unnested_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let f = Fq::prime(5).unwrap();
    let (base, _) = random_exact_system(&mut rng, &f, 2, 3).unwrap();
    let (other, _) = random_exact_system(&mut rng, &f, 2, 3).unwrap();
    let primes = random_ram_primes(&mut rng, &base, 2, 0);
    let (singles, combined) = nested_family(&base, &primes).unwrap();
    assert!(matches!(
        inflation_decomposition_check(&other, &singles, &combined),
        Err(Error::NotNested(_))
    ));
    assert!(matches!(
        inflation_decomposition_check(&base, &singles[..1], &combined),
        Err(Error::NotNested(_))
    ));
}

#[test]
fn avoidance_on_seeded_systems() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xa0d);
    let mut done = 0;
    let mut i = 0;
    while done < 100 {
        i += 1;
        let f = Fq::prime([5u64, 7, 11][i % 3]).unwrap();
        let (sys, cond) = deficient_system(&mut rng, &f, 2, 4, 0, 2).unwrap();
        if sys.dual_selmer(&cond).unwrap().dim() != 0 {
            continue;
        }
        let sel = sys.selmer(&cond).unwrap();
        let local = ramakrishna_local("y", &a1(), &f, 2).unwrap();
        let ram = local.ramakrishna.clone().unwrap();
        let psi = sel.basis().row(0).to_vec();
        let prime = supply_prime(&mut rng, &sys, &local, 200, |p| {
            let psi_y = p.restriction.transpose().apply(&psi, &f).unwrap();
            !ram.contains(&psi_y, &f)
        })
        .unwrap();
        let dim_new = sys.dim_h() + 1;
        let d = rng.gen_range(1..=dim_new.min(4));
        let du = rng.gen_range(0..d);
        let u = random_subspace(&mut rng, &f, d, du);
        let beta = weight_map(&mut rng, &f, &sel, dim_new, &u).unwrap();
        match avoidance_step(&sys, &cond, &prime, &beta, &u) {
            Ok(out) => {
                assert!(out.report.all_pass(), "case {i}: {:?}", out.report);
                assert!(out
                    .system
                    .selmer(&out.conditions)
                    .unwrap()
                    .contains(&out.report.psi_tilde, &f));
                assert_eq!(out.system.dual_selmer(&out.conditions).unwrap().dim(), 0);
                done += 1;
            }
            // surjectivity or beta(ker Phi) outside U can fail for an unlucky random beta
            Err(Error::Hypothesis(msg)) => {
                assert!(
                    msg.contains("surjective") || msg.contains("lies in U"),
                    "case {i}: {msg}"
                );
            }
            Err(e) => panic!("case {i}: {e}"),
        }
    }
}

#[test]
fn avoidance_diagonal_example() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd1a);
    let f = Fq::prime(7).unwrap();
    loop {
        let (sys, cond) = deficient_system(&mut rng, &f, 2, 4, 0, 2).unwrap();
        if sys.dual_selmer(&cond).unwrap().dim() != 0 {
            continue;
        }
        let sel = sys.selmer(&cond).unwrap();
        let local = ramakrishna_local("y", &a1(), &f, 2).unwrap();
        let ram = local.ramakrishna.clone().unwrap();
        let psi = sel.basis().row(0).to_vec();
        let prime = supply_prime(&mut rng, &sys, &local, 200, |p| {
            !ram.contains(&p.restriction.transpose().apply(&psi, &f).unwrap(), &f)
        })
        .unwrap();
        let u = Subspace::span_vectors(2, &[vec![1, 1]], &f).unwrap();
        let beta = weight_map(&mut rng, &f, &sel, sys.dim_h() + 1, &u).unwrap();
        if let Ok(out) = avoidance_step(&sys, &cond, &prime, &beta, &u) {
            let b = &out.report.beta_psi_tilde;
            assert_ne!(b[0], b[1]);
            break;
        }
    }
}

#[test]
fn avoidance_rejects_wrong_enlargement() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let f = Fq::prime(5).unwrap();
    let (sys, cond) = loop {
        let (s, c) = deficient_system(&mut rng, &f, 2, 4, 0, 2).unwrap();
        if s.dual_selmer(&c).unwrap().dim() == 0 {
            break (s, c);
        }
    };
    let local = ramakrishna_local("y", &a1(), &f, 2).unwrap();
    let mut prime = supply_prime(&mut rng, &sys, &local, 1, |_| true).unwrap();
    let extra = prime.new_classes[0].clone();
    let unr_vec = local.unramified.clone().unwrap().basis().row(0).to_vec();
    prime.new_classes.push(unr_vec);
    prime.new_classes.push(extra);
    let u = Subspace::zero(1);
    let beta = Matrix::zeros(sys.dim_h() + 3, 1);
    let err = avoidance_step(&sys, &cond, &prime, &beta, &u).unwrap_err();
    assert!(
        matches!(err, Error::Hypothesis(ref m) if m.contains("expected 1")),
        "{err}"
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn wiles_difference_depends_only_on_dimensions(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = Fq::prime(5).unwrap();
        let (sys, cond) = random_exact_system(&mut rng, &f, 3, 3).unwrap();
        let d = sys.dims(&cond).unwrap();
        let other = ConditionAssignment::new(
            &sys,
            cond.conditions.iter().map(|l| random_subspace(&mut rng, &f, l.ambient(), l.dim())).collect(),
        ).unwrap();
        prop_assert_eq!(sys.dims(&other).unwrap().difference(), d.difference());
    }
}
