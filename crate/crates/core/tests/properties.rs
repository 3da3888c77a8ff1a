use proptest::prelude::*;
use twistroot::nielsen::{boundary_pairs, canonical_form, equivalent, screw_consistency, DataSet};
use twistroot::symplectic::{evaluate_word, is_symplectic, standard_j, IntMatrix};
use twistroot::twistword::{Curve, CurveSystem, Letter, TwistWord};
use twistroot::BoundaryConvention;

/// Curves present in the shipped table for closed genus `gplus1`.
fn curves_for(gplus1: usize) -> Vec<Curve> {
    CurveSystem::shipped(gplus1).unwrap().curves().map(|(c, _)| *c).collect()
}

fn arb_word(gplus1: usize, max_len: usize) -> impl Strategy<Value = TwistWord> {
    let letters = prop::sample::select(curves_for(gplus1));
    prop::collection::vec((letters, prop::bool::ANY), 0..=max_len).prop_map(|ls| {
        TwistWord::new(ls.into_iter().map(|(c, pos)| Letter::new(c, if pos { 1 } else { -1 }).unwrap()).collect())
            .unwrap()
    })
}

proptest! {
    #[test]
    fn evaluated_words_are_symplectic((gplus1, word) in (3usize..=4).prop_flat_map(|h| (Just(h), arb_word(h, 12)))) {
        let table = CurveSystem::shipped(gplus1).unwrap();
        let form = standard_j(gplus1);
        let m = evaluate_word(&word, &table, &form).unwrap();
        prop_assert!(is_symplectic(&m, &form).unwrap());
    }

    #[test]
    fn word_times_inverse_is_identity(word in arb_word(3, 8)) {
        let table = CurveSystem::shipped(3).unwrap();
        let form = standard_j(3);
        let m = evaluate_word(&word.then(&word.inverse()), &table, &form).unwrap();
        prop_assert!(m.is_identity());
        prop_assert_eq!(word.inverse().inverse(), word);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in arb_word(4, 6), b in arb_word(4, 6)) {
        let table = CurveSystem::shipped(4).unwrap();
        let form = standard_j(4);
        let ev = |w: &TwistWord| evaluate_word(w, &table, &form).unwrap();
        prop_assert_eq!(ev(&a.then(&b)), ev(&a).mul(&ev(&b)));
    }

    #[test]
    fn canonical_form_is_idempotent_and_respects_equivalence(n in 3i64..=25, pick in any::<prop::sample::Index>(), cone in 0usize..3) {
        let pairs = boundary_pairs(n);
        prop_assume!(!pairs.is_empty());
        let (s0, s1) = pairs[pick.index(pairs.len())].sigmas();
        let cones: Vec<(i64, i64)> = [(1, n), (n - 1, n)].into_iter().take(cone).collect();
        let d = DataSet::new(n, 0, (s0, s1), &cones).unwrap();
        let swapped = DataSet::new(n, 0, (s1, s0), &cones).unwrap();
        for conv in [BoundaryConvention::Unordered, BoundaryConvention::Ordered] {
            let c = canonical_form(&d, conv);
            prop_assert_eq!(canonical_form(&c, conv), c.clone());
            prop_assert!(equivalent(&d, &c, conv));
        }
        prop_assert!(equivalent(&d, &swapped, BoundaryConvention::Unordered));
        prop_assert_eq!(equivalent(&d, &swapped, BoundaryConvention::Ordered), s0 == s1);
        prop_assert_eq!(screw_consistency(&d).unwrap(), 1);
    }
}

#[test]
fn matrix_power_matches_repeated_product() {
    let form = standard_j(3);
    let table = CurveSystem::shipped(3).unwrap();
    let w: TwistWord = TwistWord::from_curves(&[Curve::Alpha(1), Curve::Beta(1), Curve::Gamma]);
    let m = evaluate_word(&w, &table, &form).unwrap();
    let mut acc = IntMatrix::identity(6);
    for k in 0..6u32 {
        assert_eq!(m.pow(k), acc);
        acc = acc.mul(&m);
    }
}
