mod common;

use omegaclone::random::{random_ab_term, random_nested_term, seeded};
use omegaclone::term::{unit, Letter, Node, RankedAlphabet, Ranked, Subtree, Term, TermError};
use omegaclone::text::{parse_labeled_term, parse_term, parse_term_file, write_term_file};
use proptest::prelude::*;

fn ab() -> RankedAlphabet {
    RankedAlphabet::binary_ab()
}

fn nested(src: &str) -> Term<Term<Letter>> {
    let ab = ab();
    parse_labeled_term(src, 1, |s, _| parse_term(s, &ab).map_err(|e| e.message)).unwrap()
}

#[test]
fn flatten_examples() {
    let t = nested("([(a 1 2)] ([(b 2 1)] 1 2) 2)");
    assert_eq!(t.flatten().to_string(), "(a (b 2 1) 2)");
    // a repeated port copies the child
    let t = nested("([(a 1 1)] ([(b 1 2)] 1 2))");
    assert_eq!(t.flatten().to_string(), "(a (b 1 2) (b 1 2))");
}

#[test]
fn malformed_terms() {
    let ab = ab();
    assert!(parse_term("(a 2 3)", &ab).is_err());
    assert!(parse_term("(a 1)", &ab).is_err());
    assert!(parse_term("(a 0 1)", &ab).is_err());
    assert!(parse_term("(a 1 2", &ab).is_err());
    assert!(Term::new(Node::<Letter>::Port(1)).is_err());
    assert!(unit("z", &ab).is_err());
}

#[test]
fn subtrees_renumber_ports() {
    let t = parse_term("(a (b 3 1) 2)", &ab()).unwrap();
    match t.subtree_at(&[0]).unwrap() {
        Subtree::Term { term, port_map } => {
            // ports renumbered by first occurrence; the map sends old to new
            assert_eq!(term.to_string(), "(b 1 2)");
            assert_eq!(port_map.into_iter().collect::<Vec<_>>(), vec![(1, 2), (3, 1)]);
        }
        Subtree::Port(_) => panic!("expected a term"),
    }
    assert!(matches!(t.subtree_at(&[1]).unwrap(), Subtree::Port(2)));
    assert!(matches!(t.subtree_at(&[2]), Err(TermError::BadAddress(_))));
}

#[test]
fn term_file_round_trip() {
    let src = "alphabet a:2 b:2 c:0\n(a c (b 1 c))\n";
    let (alphabet, t) = parse_term_file(src).unwrap();
    let again = write_term_file(&alphabet, &t);
    assert_eq!(parse_term_file(&again).unwrap(), (alphabet, t));
}

proptest! {
    #[test]
    fn flatten_matches_substitution(seed in any::<u64>()) {
        let t = random_nested_term(&mut seeded(seed), 4);
        let flat = t.flatten();
        prop_assert_eq!(flat.root(), &common::naive_flatten(&t));
        prop_assert_eq!(flat.rank(), t.rank());
    }

    #[test]
    fn unit_laws(seed in any::<u64>(), rank in 1usize..5) {
        let s = random_ab_term(&mut seeded(seed), rank, 0.5);
        // a single node labelled s
        prop_assert_eq!(Term::unit(s.clone()).flatten(), s.clone());
        // s with each port i replaced by the unit term carrying port i
        let units = s.try_map_labels(|l| Term::new(Node::Inner(l.clone(), (1..=2).map(Node::Port).collect()))).unwrap();
        prop_assert_eq!(units.flatten(), s);
    }

    #[test]
    fn flattening_commutes_with_units(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let t = random_nested_term(&mut rng, 3);
        // regroup: nest every label as a single-node term of terms
        let deep: Term<Term<Term<Letter>>> = t.try_map_labels(|s| {
            Ok::<_, TermError>(Term::unit(s.clone()))
        }).unwrap();
        let inner_first = deep.try_map_labels(|s| Ok::<_, TermError>(s.flatten())).unwrap().flatten();
        let outer_first = deep.flatten().flatten();
        prop_assert_eq!(inner_first, outer_first);
    }

    #[test]
    fn display_parses_back(seed in any::<u64>(), rank in 1usize..5) {
        let s = random_ab_term(&mut seeded(seed), rank, 0.3);
        prop_assert_eq!(parse_term(&s.to_string(), &ab()).unwrap(), s);
    }
}
