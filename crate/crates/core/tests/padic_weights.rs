use cmdef_core::padic_weights::synth::{constant_ratio_family, perturbed_family, FamilyShape};
use cmdef_core::padic_weights::*;
use cmdef_core::{Error, Fq, RootDatum};
use num_rational::Ratio;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn inv_mod(a: i128, m: i128) -> i128 {
    (1..m).find(|x| (a.rem_euclid(m) * x) % m == 1).expect("invertible")
}

/// Partial sum of the logarithm series in exact rationals, reduced mod p^k.
fn rational_log(p: i64, x: i64, terms: u32, k: u32) -> u64 {
    let mut s = Ratio::<i128>::from_integer(0);
    let mut xk = Ratio::from_integer(1);
    for n in 1..=terms as i128 {
        xk *= Ratio::from_integer(x as i128);
        let t = xk / Ratio::from_integer(n);
        s += if n % 2 == 1 { t } else { -t };
    }
    let m = (p as i128).pow(k);
    let num = s.numer().rem_euclid(m);
    let den = s.denom().rem_euclid(m);
    (num * inv_mod(den, m) % m) as u64
}

#[test]
fn log_of_one_plus_p_matches_rational_series() {
    for (p, terms) in [(5i64, 20u32), (7, 16), (3, 24)] {
        let l = log_one_unit(&PadicInt::new(p as u64, 8, 1 + p).unwrap()).unwrap();
        assert_eq!(l.precision(), log_precision(p as u64, 8));
        assert_eq!(l.valuation(), Some(1));
        assert_eq!(l.residue(), rational_log(p, p, terms, l.precision()), "p = {p}");
    }
}

#[test]
fn log_kills_torsion() {
    for p in [3u64, 5, 7, 11, 13] {
        for n in [1u32, 4, 8, 12] {
            for z in teichmuller_budget(p, n).unwrap() {
                assert!(log_unit(&z).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn log_is_additive_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let p = [3u64, 5, 7, 11, 13][rng.gen_range(0..5)];
        let m = modulus(p, 8).unwrap();
        let one_unit = |rng: &mut ChaCha8Rng| PadicInt::from_residue(p, 8, 1 + p * rng.gen_range(0..m / p)).unwrap();
        let (u, v) = (one_unit(&mut rng), one_unit(&mut rng));
        let lhs = log_one_unit(&(u * v)).unwrap();
        let rhs = log_one_unit(&u).unwrap() + log_one_unit(&v).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn log_rejects_non_one_units() {
    let u = PadicInt::new(5, 6, 2).unwrap();
    assert!(matches!(log_one_unit(&u), Err(Error::NotOneUnit(_))));
    assert_eq!(log_unit(&PadicInt::new(5, 6, 10).unwrap()), Err(Error::NotUnit));
}

fn poly_from_roots(roots: &[i64]) -> Vec<i128> {
    let mut c = vec![1i128];
    for &r in roots {
        let mut next = vec![0i128; c.len() + 1];
        for (i, &a) in c.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * r as i128;
        }
        c = next;
    }
    c
}

/// Roots in `pZ_p`: residues mod `p^2` of the solutions of `g = 0 mod p^6` in `pZ / p^6`.
fn disk_roots_by_search(p: i128, coeffs: &[i128]) -> usize {
    let m = p.pow(6);
    let mut classes = std::collections::BTreeSet::new();
    for t in 0..p.pow(5) {
        let x = p * t;
        let v = coeffs.iter().rev().fold(0i128, |acc, &c| (acc * x + c).rem_euclid(m));
        if v == 0 {
            classes.insert(x % (p * p));
        }
    }
    classes.len()
}

#[test]
fn weierstrass_degree_counts_disk_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for case in 0..60 {
        let p = [5i64, 7][case % 2];
        let deg = rng.gen_range(1..=5usize);
        let inside = rng.gen_range(0..=deg);
        let mut digits: Vec<i64> = (0..p).collect();
        let mut roots = Vec::new();
        for _ in 0..inside {
            let s = digits.remove(rng.gen_range(0..digits.len()));
            roots.push(p * s + p * p * rng.gen_range(-2..3));
        }
        for _ in inside..deg {
            roots.push(rng.gen_range(1..p) + p * rng.gen_range(-3..3));
        }
        let c = poly_from_roots(&roots);
        let terms: Vec<_> = c.iter().enumerate().map(|(i, &a)| (vec![i as u32], a as i64)).collect();
        let g = TruncatedSeries::from_terms(p as u64, 10, 8, 1, &terms).unwrap();
        let w = weierstrass_data(&g).unwrap();
        assert_eq!(w.degree, Some(inside as u32), "roots {roots:?}");
        assert_eq!(disk_roots_by_search(p as i128, &c), inside, "roots {roots:?}");
        let on_segments: u32 = w.segments.iter().map(|s| s.end - s.start).sum();
        assert_eq!(on_segments + w.zero_root, inside as u32);
    }
}

#[test]
fn weierstrass_degree_of_cyclotomic_shift() {
    let binom = [0i64, 5, 10, 10, 5, 1];
    let terms: Vec<_> = binom.iter().enumerate().map(|(i, &a)| (vec![i as u32], a)).collect();
    let g = TruncatedSeries::from_terms(5, 8, 6, 1, &terms).unwrap();
    assert_eq!(weierstrass_data(&g).unwrap().degree, Some(5));
}

#[test]
fn functional_separates_parallel_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    for _ in 0..50 {
        let p = [3u64, 5, 7, 11][rng.gen_range(0..4)];
        let m = rng.gen_range(1..=3);
        let model = UnitsModel::split_cm(p, m).unwrap();
        let torsion: Vec<u64> = (0..2 * m).map(|_| rng.gen_range(0..p - 1)).collect();
        let n: Vec<i64> = (0..m).map(|_| rng.gen_range(-20..=20)).collect();
        let chi = WeightPoint::locally_parallel(&model, &n, &torsion, 8).unwrap();
        assert_eq!(chi.is_locally_parallel(&model), Some(true));
        for u in 0..m {
            assert!(parallel_functional(&model, &chi, u).unwrap().is_zero());
        }
    }
    for _ in 0..50 {
        let p = [3u64, 5, 7, 11][rng.gen_range(0..4)];
        let m = rng.gen_range(1..=3);
        let model = UnitsModel::split_cm(p, m).unwrap();
        let torsion = vec![0; 2 * m];
        let mut n: Vec<i64> = (0..2 * m).map(|_| rng.gen_range(-20..=20)).collect();
        let j = rng.gen_range(0..m);
        n[2 * j + 1] = n[2 * j] + rng.gen_range(1..=10) * if rng.gen() { 1 } else { -1 };
        let chi = WeightPoint::algebraic(&model, &n, &torsion, 8).unwrap();
        assert_eq!(chi.is_locally_parallel(&model), Some(false));
        for u in 0..m {
            let v = parallel_functional(&model, &chi, u).unwrap();
            assert_eq!(v.is_zero(), n[2 * u] == n[2 * u + 1]);
        }
    }
}

#[test]
fn closure_ranks_of_split_models() {
    for m in 1..=4 {
        let model = UnitsModel::split_cm(7, m).unwrap();
        assert_eq!(closure_rank(&model, Subgroup::Full).unwrap(), 2 * m);
        assert_eq!(closure_rank(&model, Subgroup::NormImage).unwrap(), m);
    }
    let mut model = UnitsModel::split_cm(5, 1).unwrap();
    model.norm_one[0].exponents = vec![vec![1], vec![1]];
    assert!(matches!(model.validate(), Err(Error::UnitsModel(_))));
}

#[test]
fn closure_rank_with_inert_degree() {
    let model = UnitsModel {
        p: 5,
        places: vec![
            UnitPlace { label: "w".into(), local_degree: 2, torsion_order: 24 },
            UnitPlace { label: "wbar".into(), local_degree: 2, torsion_order: 24 },
        ],
        conjugate: vec![1, 0],
        norm_one: Vec::new(),
    };
    assert_eq!(closure_rank(&model, Subgroup::Full).unwrap(), 4);
    assert_eq!(closure_rank(&model, Subgroup::NormImage).unwrap(), 2);
}

#[test]
fn passage_dichotomy_on_seeded_corpus() {
    let types: Vec<RootDatum> = ["A1", "A2", "B2"].iter().map(|s| RootDatum::parse(s, 0).unwrap()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    let (mut parallel, mut certified) = (0, 0);
    for i in 0..100 {
        let shape = FamilyShape::random(&mut rng, 8);
        let rd = &types[rng.gen_range(0..types.len())];
        if i % 2 == 0 {
            let fam = constant_ratio_family(&mut rng, &shape, rd).unwrap();
            match passage_dichotomy(&fam).unwrap().verdict {
                Passage::ParallelWeights(pairs) => {
                    assert!(pairs.iter().all(|w| w.parallel));
                    for w in &pairs {
                        for (x, y) in &w.weights {
                            assert!(is_parallel_pair(x, y, &fam.minus_w0).unwrap());
                        }
                    }
                    parallel += 1;
                }
                other => panic!("family {i}: {other:?}"),
            }
        } else {
            let fam = perturbed_family(&mut rng, &shape, rd).unwrap();
            match passage_dichotomy(&fam).unwrap().verdict {
                Passage::SparsityCertificate(c) => {
                    assert_eq!(c.bounds.len(), fam.p as usize - 1);
                    assert!(c.bounds.iter().any(|b| b.degree >= 1));
                    certified += 1;
                }
                other => panic!("family {i}: {other:?}"),
            }
        }
    }
    assert_eq!((parallel, certified), (50, 50));
}

#[test]
fn gl2_and_a2_parallel_examples() {
    let gl2 = RootDatum::gl(2).unwrap();
    let x = inf_weight(&gl2, 5, &[vec![3]]).unwrap();
    assert!(is_parallel_pair(&x, &x, &gl2.longest_element().unwrap().minus_w0).unwrap());
    let zero = inf_weight(&gl2, 5, &[vec![0]]).unwrap();
    assert!(is_parallel_pair(&zero, &zero, &[0]).unwrap());
    let f = Fq::prime(5).unwrap();
    let s = parallel_subspace(&f, 1, &[1, 0]).unwrap();
    assert_eq!((s.dim, s.codim), (2, 2));
}

fn arb_unit_series(p: u64, vars: usize, cap: u32) -> impl Strategy<Value = TruncatedSeries> {
    (
        1..p as i64,
        prop::collection::vec((prop::collection::vec(0..=cap, vars), -50i64..50), 0..6),
    )
        .prop_map(move |(c0, rest)| {
            let mut terms = vec![(vec![0; vars], c0)];
            terms.extend(rest.into_iter().filter(|(idx, _)| idx.iter().any(|&e| e > 0)));
            TruncatedSeries::from_terms(p, 6, cap, vars, &terms).unwrap()
        })
}

proptest! {
    #[test]
    fn inverse_is_two_sided(g in arb_unit_series(7, 2, 4)) {
        let one = TruncatedSeries::from_terms(7, 6, 4, 2, &[(vec![0, 0], 1)]).unwrap();
        let gi = g.inverse().unwrap();
        prop_assert!(g.mul(&gi).unwrap().sub(&one).unwrap().is_zero());
        prop_assert!(gi.mul(&g).unwrap().sub(&one).unwrap().is_zero());
    }

    #[test]
    fn ratio_by_teichmuller_is_constant(g in arb_unit_series(11, 3, 3), a in 1u64..11) {
        let z = PadicInt::teichmuller(11, 6, a).unwrap();
        let r = g.scale(&z).unwrap().div(&g).unwrap();
        let budget = teichmuller_budget(11, 6).unwrap();
        prop_assert_eq!(constancy_test(&r, &budget).unwrap(), Constancy::Constant(z));
    }

    #[test]
    fn log_additive(p in prop::sample::select(vec![3u64, 5, 7, 13]), a in 0u64..1_000_000, b in 0u64..1_000_000, n in 2u32..10) {
        let m = modulus(p, n).unwrap();
        let u = PadicInt::from_residue(p, n, 1 + p * (a % (m / p))).unwrap();
        let v = PadicInt::from_residue(p, n, 1 + p * (b % (m / p))).unwrap();
        prop_assert_eq!(log_one_unit(&(u * v)).unwrap(), log_one_unit(&u).unwrap() + log_one_unit(&v).unwrap());
    }

    #[test]
    fn parallel_subspace_is_half(f in 1usize..4, perm in Just(vec![0usize, 1, 2, 3]).prop_shuffle()) {
        let s = parallel_subspace(&Fq::prime(3).unwrap(), f, &perm).unwrap();
        prop_assert_eq!(s.dim, 4 * f);
        prop_assert_eq!(s.dim + s.codim, 8 * f);
    }
}
