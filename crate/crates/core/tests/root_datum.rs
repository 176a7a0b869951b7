use cmdef_core::root_datum::{
    parallel_cocharacter_check, theta_involution, LatticeKind, RootDatum, Weight,
};
use proptest::prelude::*;

const SMALL_TYPES: [&str; 13] = [
    "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "F4", "G2",
];

fn rd(s: &str) -> RootDatum {
    RootDatum::parse(s, 0).unwrap()
}

#[test]
fn hand_enumerated_profiles() {
    let table = [
        ("A1", (3, 1, 2, 1, 2, 2)),
        ("A2", (8, 3, 5, 2, 3, 3)),
        ("A3", (15, 6, 9, 3, 4, 4)),
        ("B2", (10, 4, 6, 2, 4, 2)),
        ("C3", (21, 9, 12, 3, 6, 2)),
        ("G2", (14, 6, 8, 2, 6, 1)),
    ];
    for (t, expected) in table {
        assert_eq!(rd(t).dimension_profile().as_tuple(), expected, "{t}");
    }
    let e8 = rd("E8");
    assert_eq!((e8.num_roots(), e8.coxeter_number()), (240, 30));
}

#[test]
fn weyl_group_invariants() {
    for t in SMALL_TYPES {
        let r = rd(t);
        let p = r.dimension_profile();
        assert_eq!(r.num_roots(), 2 * r.num_positive_roots());
        assert_eq!(p.dim_b0, p.dim_n + p.dim_t0);
        assert_eq!(p.dim_g0, 2 * p.dim_n + p.dim_t0);

        let w0 = r.longest_element().unwrap();
        assert_eq!(w0.reduced_word.len(), r.num_positive_roots(), "{t}");
        for beta in r.positive_roots() {
            let img = r.apply_word_to_root(&w0.reduced_word, beta);
            assert!(
                img.iter().all(|&x| x <= 0),
                "{t}: w0 keeps {beta:?} positive"
            );
            let back = r.apply_word_to_root(&w0.reduced_word, &img);
            assert_eq!(&back, beta, "{t}: w0 is not an involution");
        }
        let pi = &w0.minus_w0;
        let c = r.cartan_matrix();
        for i in 0..pi.len() {
            assert_eq!(pi[pi[i]], i);
            for j in 0..pi.len() {
                assert_eq!(c[pi[i]][pi[j]], c[i][j], "{t}: not a diagram automorphism");
            }
        }
    }
}

#[test]
fn uniqueness_certificates() {
    for t in SMALL_TYPES {
        let r = rd(t);
        for alpha in 0..r.semisimple_rank() {
            assert!(
                r.unique_root_certificate(alpha).unwrap().unique,
                "{t} alpha {alpha}"
            );
            let control = r.two_rho_control(alpha).unwrap();
            assert_eq!(control.unique, r.semisimple_rank() == 1, "{t} control");
            // every simple root satisfies the control identity
            for s in 0..r.semisimple_rank() {
                assert!(control.matches.contains(&s));
            }
        }
    }
}

#[test]
fn height_filtration_is_decreasing() {
    for t in SMALL_TYPES {
        let r = rd(t);
        let h = r.highest_root_height() as usize;
        let dims: Vec<usize> = (0..=h + 1).map(|k| r.borel_height_filtration(k)).collect();
        assert!(dims.windows(2).all(|w| w[0] >= w[1]), "{t}");
        assert_eq!(dims[h + 1], 0);
        assert_eq!(dims[1], r.num_positive_roots());
    }
}

fn weight_strategy(rank: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..6, rank)
}

proptest! {
    #[test]
    fn theta_is_an_involution(idx in 0usize..SMALL_TYPES.len(), seed in any::<u64>()) {
        let r = rd(SMALL_TYPES[idx]);
        let n = r.semisimple_rank();
        let l1: Vec<i64> = (0..n).map(|i| ((seed >> (4 * i)) % 9) as i64 - 4).collect();
        let l2: Vec<i64> = (0..n).map(|i| ((seed >> (4 * i + 32)) % 9) as i64 - 4).collect();
        let w1 = Weight::new(LatticeKind::Character, l1, vec![]);
        let w2 = Weight::new(LatticeKind::Character, l2, vec![]);
        let once = theta_involution(&r, &w1, &w2).unwrap();
        let twice = theta_involution(&r, &once.first, &once.second).unwrap();
        prop_assert_eq!(twice.first, w1);
        prop_assert_eq!(twice.second, w2);
    }

    #[test]
    fn parallel_check_is_symmetric(a in weight_strategy(2), b in weight_strategy(2), c in -5i64..5) {
        let r = RootDatum::parse("A2", 1).unwrap();
        let mu = Weight::new(LatticeKind::Cocharacter, a, vec![c]);
        let nu = Weight::new(LatticeKind::Cocharacter, b, vec![-c]);
        let omega = Weight::new(LatticeKind::Cocharacter, vec![0, 0], vec![0]);
        let fwd = parallel_cocharacter_check(&r, &mu, &nu, &omega).unwrap();
        let bwd = parallel_cocharacter_check(&r, &nu, &mu, &omega).unwrap();
        prop_assert_eq!(fwd, bwd);
        // the parallel partner is always accepted
        let partner = omega.add(&mu.dominant(&r).unwrap().minus_w0(&r).unwrap()).unwrap();
        prop_assert!(parallel_cocharacter_check(&r, &mu, &partner, &omega).unwrap());
    }
}
