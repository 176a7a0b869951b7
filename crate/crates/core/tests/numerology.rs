use cmdef_core::field::is_prime;
use cmdef_core::numerology::*;
use cmdef_core::{Error, Fq, Matrix, RootDatum};
use proptest::prelude::*;

fn rd(s: &str) -> RootDatum {
    RootDatum::parse(s, 0).unwrap()
}

fn test_set() -> Vec<RootDatum> {
    ["A1", "A2", "B2", "A3", "C3", "G2"].iter().map(|s| rd(s)).collect()
}

#[test]
fn specializations_of_the_wiles_formula() {
    for r in ["A1", "A2", "B2"].map(rd) {
        let t0 = r.semisimple_rank() as i64;
        for deg in [2u32, 4] {
            let tr = Scenario::new(r.clone(), FieldSignature::totally_real(deg), PMode::Ordinary).unwrap();
            assert_eq!(wiles_difference(&tr).unwrap().total, 0);
            let sig = FieldSignature::split_cm(deg).unwrap();
            let ord = Scenario::new(r.clone(), sig.clone(), PMode::Ordinary).unwrap();
            let no = Scenario::new(r.clone(), sig, PMode::NearlyOrdinary).unwrap();
            let half = deg as i64 / 2;
            assert_eq!(wiles_difference(&ord).unwrap().total, -half * t0);
            assert_eq!(wiles_difference(&no).unwrap().total, half * t0);
        }
    }
}

#[test]
fn report_terms_add_up() {
    let mut s = Scenario::new(rd("B2"), FieldSignature::split_cm(4).unwrap(), PMode::NearlyOrdinary).unwrap();
    s.h0_at_p = vec![2, 0, 1, 0];
    s.away.push(AwayPlace { label: "l".into(), dim_l: 3, h0: 1 });
    s.global_h0_twist = 1;
    let w = wiles_difference(&s).unwrap();
    assert_eq!(w.p_terms, vec![6, 6, 6, 6]);
    assert_eq!(w.infinity_terms, vec![-10, -10]);
    assert_eq!(w.away_terms, vec![2]);
    assert_eq!(w.global_term, -1);
    assert_eq!(w.total, 24 - 20 + 2 - 1);
}

#[test]
fn full_multiplier_counts_the_center() {
    let gl2 = RootDatum::gl(2).unwrap();
    let mut s = Scenario::new(gl2, FieldSignature::imaginary_quadratic(), PMode::NearlyOrdinary).unwrap();
    s.fixed_multiplier = false;
    // b = 3 per place, g = 4 at the complex place
    assert_eq!(wiles_difference(&s).unwrap().total, 2);
}

#[test]
fn scenario_arity_is_checked() {
    let mut s = Scenario::new(rd("A1"), FieldSignature::totally_real(2), PMode::Ordinary).unwrap();
    s.real_h0.pop();
    assert!(matches!(wiles_difference(&s), Err(Error::Arity(_))));
    let mut s = Scenario::new(rd("A1"), FieldSignature::totally_real(2), PMode::Ordinary).unwrap();
    s.real_h0[0] = 0;
    assert!(matches!(wiles_difference(&s), Err(Error::OutOfRange { .. })));
}

#[test]
fn imaginary_quadratic_never_balances() {
    for r in test_set() {
        let a = archimedean_bound(&r, &FieldSignature::imaginary_quadratic(), &[]).unwrap();
        let p = r.dimension_profile();
        assert_eq!(a.lhs, p.dim_g0);
        assert_eq!(a.rhs, 2 * p.dim_n + p.dim_t0);
        assert!(a.holds && !a.equality);
    }
}

/// Fixed points of `(-1)^{ht}` counted from the root list alone.
fn even_height_count(r: &RootDatum) -> usize {
    r.roots().filter(|x| RootDatum::height(x) % 2 == 0).count() + r.semisimple_rank()
}

#[test]
fn height_parity_oddness() {
    let f = Fq::prime(11).unwrap();
    for r in test_set() {
        let c = height_parity_involution(&f, &r).unwrap();
        let e = oddness_audit(&f, &r, &[c]).unwrap()[0];
        assert_eq!(e.h0, even_height_count(&r));
        // odd exactly when -1 lies in the Weyl group
        let minus_one_in_w = !matches!(r.label().as_str(), "A2" | "A3");
        assert_eq!(e.is_odd, minus_one_in_w, "{}", r.label());
    }
}

#[test]
fn non_odd_sign_involution() {
    let f = Fq::prime(5).unwrap();
    let a2 = rd("A2");
    let c = sign_involution(&f, &a2, &[true, false]).unwrap();
    // alpha1 and alpha1+alpha2 flip; alpha2 and the torus are fixed
    assert_eq!(oddness_audit(&f, &a2, &[c]).unwrap()[0], OddnessEntry { h0: 4, is_odd: false });
    let wrong = Matrix::identity(4);
    assert!(matches!(oddness_audit(&f, &a2, &[wrong]), Err(Error::Dimension(_))));
}

#[test]
fn prime_bound_matches_direct_search() {
    for r in test_set() {
        let b = large_image_prime_bound(&r).unwrap();
        let z = r.center_order();
        let h = r.coxeter_number() as u64;
        let t = if z % 2 == 0 { (h - 1) * z } else { (2 * h - 2) * z }.max(8 * z);
        let p = (2..).find(|&p| is_prime(p) && p - 1 > t && r.is_very_good_prime(p)).unwrap();
        assert_eq!((b.threshold, b.prime), (t, p), "{}", r.label());
    }
    assert_eq!(large_image_prime_bound(&RootDatum::new(&[], 1).unwrap()), Err(Error::NoSemisimplePart));
}

#[test]
fn twisted_module_examples() {
    for p in [5u64, 7, 29] {
        for r in 2..(p as i64 - 1) {
            let d = example_local_dims(r, p).unwrap();
            assert_eq!((d.h0, d.h1, d.h2), (0, 1, 0));
        }
    }
    assert_eq!(example_conditions_check(&rd("A2"), 1, 29), Err(Error::ExcludedTwist(1)));
    assert_eq!(example_conditions_check(&rd("A2"), 29, 29), Err(Error::ExcludedTwist(29)));
    assert!(matches!(example_conditions_check(&rd("A1"), 3, 9), Err(Error::NotPrime(9))));
}

fn arb_rd() -> impl Strategy<Value = RootDatum> {
    prop::sample::select(vec!["A1", "A2", "A3", "B2", "B3", "C3", "G2", "A1xA1", "A2xB2"]).prop_map(rd)
}

fn arb_scenario() -> impl Strategy<Value = Scenario> {
    (arb_rd(), 1u32..=3, any::<bool>(), any::<bool>()).prop_flat_map(|(r, half, cm, no)| {
        let mode = if no { PMode::NearlyOrdinary } else { PMode::Ordinary };
        let sig = if cm {
            FieldSignature::split_cm(2 * half).unwrap()
        } else {
            FieldSignature::totally_real(half)
        };
        let prof = r.dimension_profile();
        let places = sig.local_degrees.len();
        let reals = sig.real_places as usize;
        (
            Just(Scenario::new(r, sig, mode).unwrap()),
            prop::collection::vec(0..=prof.dim_t0, places),
            prop::collection::vec(prof.dim_n..=prof.dim_g0, reals),
            prop::collection::vec((0usize..6, 0usize..6), 0..4),
            0usize..2,
            0usize..2,
        )
            .prop_map(|(mut s, hp, hr, away, g, g1)| {
                s.h0_at_p = hp;
                s.real_h0 = hr;
                s.away = away
                    .into_iter()
                    .enumerate()
                    .map(|(i, (l, h))| AwayPlace { label: format!("q{i}"), dim_l: l, h0: h })
                    .collect();
                s.global_h0 = g;
                s.global_h0_twist = g1;
                s
            })
    })
}

proptest! {
    #[test]
    fn balanced_places_change_nothing(s in arb_scenario(), h in 0usize..10) {
        let before = wiles_difference(&s).unwrap().total;
        let mut t = s.clone();
        t.away.push(AwayPlace::balanced("w", h));
        prop_assert_eq!(wiles_difference(&t).unwrap().total, before);
    }

    #[test]
    fn totally_real_odd_ordinary_vanishes(r in arb_rd(), deg in 1u32..=6) {
        let s = Scenario::new(r, FieldSignature::totally_real(deg), PMode::Ordinary).unwrap();
        prop_assert_eq!(wiles_difference(&s).unwrap().total, 0);
    }

    #[test]
    fn cm_modes_differ_by_degree_times_torus(s in arb_scenario()) {
        prop_assume!(s.signature.cm);
        let mut a = s.clone();
        a.mode = PMode::NearlyOrdinary;
        let mut b = s.clone();
        b.mode = PMode::Ordinary;
        let diff = wiles_difference(&a).unwrap().total - wiles_difference(&b).unwrap().total;
        prop_assert_eq!(diff, (s.signature.degree as usize * s.rd.semisimple_rank()) as i64);
    }

    #[test]
    fn cm_parameter_is_the_nearly_ordinary_excess(r in arb_rd(), half in 1u32..=4, hs in prop::collection::vec(0usize..8, 0..4)) {
        let sig = FieldSignature::split_cm(2 * half).unwrap();
        let mut s = Scenario::new(r.clone(), sig.clone(), PMode::NearlyOrdinary).unwrap();
        s.away = hs.into_iter().map(|h| AwayPlace::balanced("v", h)).collect();
        prop_assert_eq!(wiles_difference(&s).unwrap().total, cm_parameter(&sig, &r).unwrap() as i64);
    }

    #[test]
    fn local_euler_characteristic(r in -200i64..200, p in prop::sample::select(vec![3u64, 5, 7, 11, 13, 29, 101])) {
        let d = example_local_dims(r, p).unwrap();
        prop_assert_eq!(d.h1, d.h0 + d.h2 + 1);
        prop_assert!(d.h0 + d.h2 <= 1);
    }

    #[test]
    fn tangent_dims_are_affine_in_degree(r in arb_rd(), deg in 0u32..6, h0 in 0usize..5) {
        let p = r.dimension_profile();
        prop_assert_eq!(tangent_dim_at_p(PMode::Ordinary, deg, &r, h0), h0 + deg as usize * p.dim_n);
        prop_assert_eq!(tangent_dim_at_p(PMode::NearlyOrdinary, deg, &r, h0), h0 + deg as usize * p.dim_b0);
    }
}
