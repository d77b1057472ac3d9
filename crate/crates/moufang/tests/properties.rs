//! Cross-module invariants, mostly property-based.

use proptest::prelude::*;

use moufang::chein::chein_construct;
use moufang::group::GroupName;
use moufang::iso::find_isomorphism;
use moufang::presentation::{goodness_closure, semantic_goodness_check};
use moufang::table::{flip_intercalate, intercalates_avoiding_neutral, FiniteLoop, MagmaTable,
    MoufangVariant};
use moufang::visual::{build_visual_loop, derive_triangles};
use moufang::{catalog, GroupWord, Letter};

fn raw_word() -> impl Strategy<Value = Vec<(Letter, i32)>> {
    prop::collection::vec(
        (prop::bool::ANY.prop_map(|b| if b { Letter::X } else { Letter::Y }), -4..=4i32),
        0..8,
    )
}

proptest! {
    #[test]
    fn reduction_is_idempotent(raw in raw_word()) {
        let once = GroupWord::from_raw(raw);
        let twice = GroupWord::from_raw(
            once.syllables().iter().map(|s| (s.letter, s.exponent)),
        );
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn reduced_words_have_no_adjacent_letters_or_zero_exponents(raw in raw_word()) {
        let word = GroupWord::from_raw(raw);
        for s in word.syllables() {
            prop_assert_ne!(s.exponent, 0);
        }
        for pair in word.syllables().windows(2) {
            prop_assert_ne!(pair[0].letter, pair[1].letter);
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(raw_a in raw_word(), raw_b in raw_word()) {
        let a = GroupWord::from_raw(raw_a);
        let b = GroupWord::from_raw(raw_b);
        for name in [GroupName::Symmetric3, GroupName::Dihedral(4), GroupName::Cyclic(6)] {
            let g = catalog(&name).unwrap();
            prop_assert_eq!(
                g.evaluate_word(&a.mul(&b)),
                g.mul(g.evaluate_word(&a), g.evaluate_word(&b))
            );
        }
    }

    #[test]
    fn inverse_evaluation_inverts(raw in raw_word()) {
        let word = GroupWord::from_raw(raw);
        let g = catalog(&GroupName::Dicyclic(2)).unwrap();
        let forward = g.evaluate_word(&word);
        prop_assert_eq!(g.evaluate_word(&word.inverse()), g.inv(forward));
    }

    /// Dropping any one syllable, or shrinking any one exponent by one
    /// in absolute value, strictly lowers the complexity.
    #[test]
    fn complexity_strictly_decreases_under_shrinking(raw in raw_word()) {
        let word = GroupWord::from_raw(raw);
        let syllables = word.syllables();
        for drop in 0..syllables.len() {
            let shrunk = GroupWord::from_raw(
                syllables
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != drop)
                    .map(|(_, s)| (s.letter, s.exponent)),
            );
            prop_assert!(shrunk.complexity() < word.complexity());
        }
        for lower in 0..syllables.len() {
            let shrunk = GroupWord::from_raw(syllables.iter().enumerate().map(|(i, s)| {
                let step = if s.exponent > 0 { -1 } else { 1 };
                (s.letter, if i == lower { s.exponent + step } else { s.exponent })
            }));
            prop_assert!(shrunk.complexity() < word.complexity());
        }
    }

    /// A random relabeling of the doubled S3 table is found isomorphic
    /// to the original, and the witness verifies.
    #[test]
    fn relabelings_are_detected_as_isomorphic(seed in 0u64..1000) {
        let doubled = chein_construct(&catalog(&GroupName::Symmetric3).unwrap());
        let n = doubled.order();
        let mut perm: Vec<usize> = (0..n).collect();
        // Deterministic shuffle from the seed.
        let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
        for i in (1..n).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            perm.swap(i, (state as usize) % (i + 1));
        }
        let mut table = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a]][perm[b]] = perm[doubled.mul(a, b)];
            }
        }
        let names = (0..n).map(|i| format!("g{i}")).collect();
        let relabeled = FiniteLoop::new(
            MagmaTable::new(table, names).unwrap(),
            perm[doubled.neutral()],
        )
        .unwrap();
        let witness = find_isomorphism(&doubled, &relabeled).expect("relabeling is isomorphic");
        prop_assert!(witness.verify(&doubled, &relabeled));
    }

    /// Any single intercalate flip of the doubled S3 table loses all
    /// three Moufang identities at once (they stay equivalent).
    #[test]
    fn intercalate_flips_lose_all_three_moufang_identities(index in 0usize..225) {
        let doubled = chein_construct(&catalog(&GroupName::Symmetric3).unwrap());
        let intercalates = intercalates_avoiding_neutral(&doubled);
        prop_assume!(index < intercalates.len());
        let flipped = flip_intercalate(&doubled, intercalates[index]);
        for variant in MoufangVariant::ALL {
            prop_assert!(flipped.moufang_counterexample(variant).is_some());
        }
    }
}

#[test]
fn moufang_loops_in_the_corpus_are_diassociative_with_involutive_inverses() {
    let mut corpus: Vec<FiniteLoop> = Vec::new();
    for name in [
        GroupName::Symmetric3,
        GroupName::Dicyclic(2),
        GroupName::Dihedral(5),
    ] {
        let group = catalog(&name).unwrap();
        corpus.push(group.as_loop().clone());
        corpus.push(chein_construct(&group));
    }
    corpus.push(build_visual_loop(&derive_triangles().unwrap()).unwrap());
    for table in &corpus {
        assert!(table.is_moufang(MoufangVariant::First));
        assert!(table.is_diassociative());
        for a in 0..table.order() {
            let inverse = table.inverse(a).expect("Moufang inverses are two-sided");
            assert_eq!(table.inverse(inverse).unwrap(), a);
        }
    }
}

#[test]
fn perturbed_double_is_neither_moufang_nor_diassociative() {
    let doubled = chein_construct(&catalog(&GroupName::Symmetric3).unwrap());
    let perturbed = moufang::table::perturb_first_intercalate(&doubled).unwrap();
    assert!(perturbed.magma().is_quasigroup());
    assert_eq!(perturbed.magma().find_neutral(), Some(0));
    let witness = perturbed.moufang_counterexample(MoufangVariant::First);
    assert!(witness.is_some());
    assert!(!perturbed.is_diassociative());
}

#[test]
fn doubles_of_d4_and_q8_are_not_isomorphic() {
    let d4 = chein_construct(&catalog(&GroupName::Dihedral(4)).unwrap());
    let q8 = chein_construct(&catalog(&GroupName::Dicyclic(2)).unwrap());
    assert!(find_isomorphism(&d4, &q8).is_none());
    // Cross-check via involution counts: 8 + 5 vs 8 + 1.
    let involutions = |l: &FiniteLoop| {
        (0..l.order()).filter(|&a| l.element_order(a) == 2).count()
    };
    assert_eq!(involutions(&d4), 13);
    assert_eq!(involutions(&q8), 9);
}

#[test]
fn closure_outputs_are_individually_good() {
    for name in [GroupName::Symmetric3, GroupName::Alternating4] {
        let group = catalog(&name).unwrap();
        assert!(semantic_goodness_check(&group));
        let doubled = chein_construct(&group);
        let u = group.order();
        let certificate = goodness_closure(&group).unwrap();
        for step in &certificate.steps {
            let element = group.evaluate_word(&step.output);
            assert_eq!(
                doubled.mul(element, u),
                doubled.mul(u, group.inv(element)),
                "{name}: element {} from step {} is not good",
                group.name(element),
                step.output
            );
        }
    }
}

#[test]
fn visual_loop_inverses_match_the_element_orders() {
    let visual = build_visual_loop(&derive_triangles().unwrap()).unwrap();
    for i in 0..9 {
        let xi = moufang::visual::involution(i);
        assert_eq!(visual.inverse(xi).unwrap(), xi);
    }
    assert_eq!(
        visual.inverse(moufang::visual::Y).unwrap(),
        moufang::visual::Y_INV
    );
    assert_eq!(visual.inverse(moufang::visual::NEUTRAL).unwrap(), 0);
}

#[test]
fn subloops_of_the_visual_model_match_the_span_claims() {
    let visual = build_visual_loop(&derive_triangles().unwrap()).unwrap();
    let x = moufang::visual::involution;
    // <x0, x3> is a copy of S3, <x0, x1> a copy of V4, <e> trivial.
    let span = |a: usize, b: usize| visual.generate_subloop(&[a, b]);
    assert_eq!(span(x(0), x(3)).len(), 6);
    assert_eq!(span(x(0), x(1)).len(), 4);
    assert_eq!(visual.generate_subloop(&[]).len(), 1);
}
