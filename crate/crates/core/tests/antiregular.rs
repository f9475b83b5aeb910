use omegaclone::antiregular::{
    antiregular_refute, nerode_witness, parse_predicate, parse_word, regular_kind1_experiment, repetition_witness,
    tree_from_language, word_string, AntiregularError, WordLanguagePredicate,
};
use omegaclone::graph::parse_graph_file;
use omegaclone::kind::{classify_lazy, VerdictStatus};
use proptest::prelude::*;

fn w(s: &str) -> Vec<usize> {
    parse_word(s).unwrap()
}

fn witness(pred: &WordLanguagePredicate, u: &str, v: &str) -> Option<String> {
    nerode_witness(pred, &w(u), &w(v), 13).unwrap().map(|x| word_string(&x))
}

#[test]
fn nerode_examples() {
    let pal = WordLanguagePredicate::palindromes();
    assert_eq!(witness(&pal, "0", "1").as_deref(), Some("0"));
    assert_eq!(witness(&pal, "01", "10").as_deref(), Some("0"));
    assert_eq!(witness(&WordLanguagePredicate::all(), "0", "11"), None);
    assert!(matches!(nerode_witness(&pal, &w("01"), &w("01"), 4), Err(AntiregularError::EqualWords)));
}

#[test]
fn refutation_examples() {
    let all = tree_from_language(&WordLanguagePredicate::all());
    assert_eq!(antiregular_refute(&all, 1, 0), Some((vec![], vec![0])));
    let pal = tree_from_language(&WordLanguagePredicate::palindromes());
    assert_eq!(antiregular_refute(&pal, 6, 13), None);
    // in the tree of 0*, the root and node 0 carry the same subtree, and
    // 1 and 10 both carry the all-b tree
    let zeros = tree_from_language(&WordLanguagePredicate::zeros_star());
    assert_eq!(antiregular_refute(&zeros, 2, 5), Some((vec![], vec![0])));
    let pairs = omegaclone::antiregular::antiregular_counterexamples(&zeros, 2, 5);
    assert!(pairs.contains(&(vec![1], vec![1, 0])));
}

#[test]
fn palindrome_subtrees_stay_separated() {
    let pal = tree_from_language(&WordLanguagePredicate::palindromes());
    for address in [vec![0], vec![1, 0], vec![0, 1, 1]] {
        assert_eq!(antiregular_refute(&pal.subtree(&address), 4, 9), None, "{address:?}");
    }
}

#[test]
fn lazy_classification_needs_a_certificate() {
    let pal = tree_from_language(&WordLanguagePredicate::palindromes());
    assert_eq!(classify_lazy(&pal, 6, 13).unwrap().status, VerdictStatus::Definite);
    let zeros = tree_from_language(&WordLanguagePredicate::zeros_star());
    assert_ne!(classify_lazy(&zeros, 6, 13).unwrap().status, VerdictStatus::Definite);
}

#[test]
fn repetition_in_the_alternating_tree() {
    let (_, g) = parse_graph_file("rank 0\n0: a 1 1\n1: b 0 0\n").unwrap();
    let (u, v) = repetition_witness(&g).unwrap();
    assert_eq!((u.len(), v.len()), (0, 2));
    let report = regular_kind1_experiment(3, 100, 8);
    assert!(report.all_kind1());
}

#[test]
fn predicate_language() {
    let p = parse_predicate("len >= 2 & !suffix(1)").unwrap();
    assert!(p.member(&w("00")));
    assert!(!p.member(&w("01")));
    assert!(!p.member(&w("0")));
    assert!(parse_predicate("len >=").is_err());
    assert!(parse_predicate("pal | len = 3").unwrap().member(&w("010")));
}

proptest! {
    #[test]
    fn refutation_is_monotone_in_the_witness_length(l in 0usize..8, extra in 0usize..4, name in prop::sample::select(vec!["palindromes", "zeros-star", "all", "empty"])) {
        let pred = WordLanguagePredicate::builtin(name).unwrap();
        let t = tree_from_language(&pred);
        if antiregular_refute(&t, 3, l + extra).is_some() {
            prop_assert!(antiregular_refute(&t, 3, l).is_some());
        }
    }

    #[test]
    fn nerode_witnesses_separate(u in prop::collection::vec(0usize..2, 0..6), v in prop::collection::vec(0usize..2, 0..6)) {
        prop_assume!(u != v);
        let pal = WordLanguagePredicate::palindromes();
        let x = nerode_witness(&pal, &u, &v, 13).unwrap().expect("palindromes separate all words");
        let uw: Vec<usize> = u.iter().chain(&x).copied().collect();
        let vw: Vec<usize> = v.iter().chain(&x).copied().collect();
        prop_assert_ne!(pal.member(&uw), pal.member(&vw));
    }
}
