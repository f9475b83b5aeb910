//! Random regular trees are never densely antiregular: each has two nodes
//! with equal subtrees, so it lands in kind 1, while the palindrome tree
//! is recognized.

use omegaclone::antiregular::{regular_kind1_experiment, tree_from_language, WordLanguagePredicate};
use omegaclone::kind::recognizes_densely_antiregular;

fn main() {
    let report = regular_kind1_experiment(42, 1000, 8);
    println!("{} regular trees: {:?}", report.samples.len(), report.histogram);
    assert!(report.all_kind1());
    for s in report.samples.iter().take(3) {
        print!("{}", s.graph);
        println!("  -> {} with repeated subtree at {:?}\n", s.element, s.witness);
    }
    let pal = tree_from_language(&WordLanguagePredicate::palindromes());
    println!("palindrome tree recognized: {}", recognizes_densely_antiregular(&pal).unwrap());
}
