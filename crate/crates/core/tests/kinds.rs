mod common;

use omegaclone::graph::TermGraph;
use omegaclone::kind::{
    classify, classify_graph, generator_decompose, hom_h, parse_kind_element, product, product_graph,
    product_with_case, Case, Kind, KindElement, KindError,
};
use omegaclone::random::{random_ab_graph, random_ab_term, random_ca_term, random_kind4, random_rank0_graph, seeded};
use omegaclone::term::{Ranked, Term};
use proptest::prelude::*;

#[test]
fn tag_validation() {
    assert_eq!(KindElement::tag(Kind::Three, 0), Err(KindError::Kind3RankZero));
    assert!(KindElement::tag(Kind::Three, 1).is_ok());
    assert!(parse_kind_element("T3/0").is_err());
    assert!(parse_kind_element("T5/1").is_err());
    assert_eq!(parse_kind_element("K4 (a 2 1)").unwrap().to_string(), "K4 (a 2 1)");
}

#[test]
fn enumeration_counts() {
    // ranks 0..=2: tags 2 + 3 + 3, kind-4 terms 4 at rank 2
    assert_eq!(KindElement::enumerate(2).len(), 12);
}

proptest! {
    #[test]
    fn finite_classification_matches_definition(seed in any::<u64>(), rank in 1usize..6, bias in 0.0f64..1.0) {
        let t = random_ab_term(&mut seeded(seed), rank, bias);
        prop_assert_eq!(classify(&t).unwrap(), common::naive_finite_kind(&t));
    }

    #[test]
    fn regular_classification_matches_definition(seed in any::<u64>(), rank in 0usize..4, acyclic in 0.0f64..1.0) {
        let mut rng = seeded(seed);
        let g = if rank == 0 { random_rank0_graph(&mut rng, 7) } else { random_ab_graph(&mut rng, rank, 8, acyclic) };
        let h = classify_graph(&g).unwrap();
        prop_assert_eq!(&h, &common::naive_regular_kind(&g));
        prop_assert_eq!(h.rank(), g.rank());
        prop_assert_eq!(classify_graph(&g.minimize_bisim()).unwrap(), h);
    }

    #[test]
    fn graph_product_agrees_on_finite_terms(seed in any::<u64>()) {
        let t = random_ca_term(&mut seeded(seed), 4);
        let g = TermGraph::from_term(&t);
        prop_assert_eq!(product_graph(&g), product(&t));
    }

    #[test]
    fn product_preserves_rank(seed in any::<u64>()) {
        let t = random_ca_term(&mut seeded(seed), 4);
        let (e, case) = product_with_case(&t).unwrap();
        prop_assert_eq!(e.rank(), t.rank());
        prop_assert_eq!(matches!(e, KindElement::Kind4(_)), case == Case::G);
    }

    #[test]
    fn hom_h_of_a_unit_is_classify(seed in any::<u64>(), rank in 1usize..5) {
        let s = random_ab_term(&mut seeded(seed), rank, 0.6);
        let node = Term::unit(classify(&s).unwrap());
        prop_assert_eq!(product(&node).unwrap(), hom_h(&s).unwrap());
    }

    #[test]
    fn kind4_elements_decompose(seed in any::<u64>(), rank in 2usize..6) {
        let a = KindElement::Kind4(random_kind4(&mut seeded(seed), rank));
        let w = generator_decompose(&a, 5).unwrap();
        prop_assert!(w.labels().iter().all(|l| l.rank() <= 2));
        prop_assert_eq!(product(&w).unwrap(), a);
    }
}
