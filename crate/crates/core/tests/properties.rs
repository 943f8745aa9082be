use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hnn_core::britton;
use hnn_core::diagram::{count_report, detect_annuli, is_reduced, validate};
use hnn_core::experiments::random_identity_word;
use hnn_core::fill::fill;
use hnn_core::normal_form::phi_power;
use hnn_core::{is_identity, normal_form, Diagram, Generator, Letter, Word};

fn letter() -> impl Strategy<Value = Letter> {
    (0..8usize).prop_map(|i| Letter::ALL[i])
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(), 0..=max).prop_map(Word::new)
}

fn theta_free(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(
        prop::sample::select(vec![Letter::A, Letter::A_INV, Letter::K, Letter::K_INV]),
        0..=max,
    )
    .prop_map(Word::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn normal_form_respects_products(u in word(12), v in word(12)) {
        let whole = normal_form(&u.concat(&v));
        prop_assert_eq!(whole.clone(), normal_form(&u).mul(&normal_form(&v)));
        prop_assert_eq!(normal_form(&whole.to_word()), whole);
    }

    #[test]
    fn inverse_cancels(u in word(16)) {
        prop_assert!(is_identity(&u.concat(&u.inverse())));
        prop_assert!(is_identity(&u.inverse().concat(&u)));
    }

    #[test]
    fn normal_form_agrees_with_hnn_oracle(u in word(14)) {
        prop_assert_eq!(is_identity(&u), britton::is_identity(&u));
    }

    #[test]
    fn equal_elements_have_equal_forms(u in word(10), r in 0..4usize, pos in 0..10usize) {
        // inserting a relator anywhere does not change the element
        let rel = hnn_core::RelatorId::ALL[r].word();
        let p = pos.min(u.len());
        let (left, right) = u.letters().split_at(p);
        let v = Word::new(left.to_vec()).concat(&rel).concat(&Word::new(right.to_vec()));
        prop_assert_eq!(normal_form(&u), normal_form(&v));
    }

    #[test]
    fn phi_powers_compose(w in theta_free(8), m1 in -3i64..=3, m2 in -3i64..=3) {
        let once = phi_power(&phi_power(&w, m1).unwrap(), m2).unwrap();
        prop_assert_eq!(once, phi_power(&w, m1 + m2).unwrap());
    }

    #[test]
    fn conjugation_by_theta_is_phi(w in theta_free(8), m in -3i64..=3) {
        // θ^{-m} w θ^{m} = φ^m(w)
        let t = Letter::new(Generator::Theta2, m < 0);
        let tm = Word::new(vec![t; m.unsigned_abs() as usize]);
        let conj = tm.inverse().concat(&w).concat(&tm);
        let nf = normal_form(&conj);
        prop_assert!(nf.theta_part.is_empty());
        prop_assert_eq!(nf.ak_part, phi_power(&w, m).unwrap());
    }

    #[test]
    fn cyclic_reduction_is_a_conjugate(u in word(14)) {
        let (core, c) = u.cyclic_reduce();
        prop_assert_eq!(c.concat(&core).concat(&c.inverse()).free_reduce(), u.free_reduce());
        prop_assert!(core.is_empty() || core.first() != core.last().map(|l| l.inverse()));
    }

    #[test]
    fn parsing_round_trips(u in word(20)) {
        prop_assert_eq!(Word::parse(&u.to_string()).unwrap(), u);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn fillings_are_reduced_discs(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_identity_word(&mut rng, 24);
        let d = fill(&w).unwrap();
        prop_assert!(validate(&d).is_valid(), "{}", validate(&d));
        prop_assert_eq!(d.boundary_word().unwrap(), w.free_reduce());
        prop_assert!(is_reduced(&d).unwrap());
        prop_assert!(count_report(&d).unwrap().all_pass());
        prop_assert!(detect_annuli(&d).unwrap().is_empty());
        let back = Diagram::from_json(&d.to_json()).unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn non_identities_are_refused(u in word(10)) {
        prop_assume!(!is_identity(&u));
        let refused = matches!(fill(&u), Err(hnn_core::Error::NotNullHomotopic { .. }));
        prop_assert!(refused);
    }
}
