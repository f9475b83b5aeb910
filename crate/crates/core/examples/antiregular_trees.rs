//! Trees of word languages: the palindrome tree is antiregular, simple
//! languages are refuted, and Nerode witnesses separate words.

use omegaclone::antiregular::{
    antiregular_counterexamples, antiregular_refute, nerode_witness, parse_predicate, parse_word, tree_from_language,
    word_string, WordLanguagePredicate,
};
use omegaclone::graph::unfold_prefix;

fn main() {
    let pal = WordLanguagePredicate::palindromes();
    let tree = tree_from_language(&pal);
    println!("{}: {}", tree.name(), unfold_prefix(&tree, 3));
    println!("refuted at depth 6, length 13: {:?}", antiregular_refute(&tree, 6, 13));

    for (u, v) in [("0", "1"), ("01", "10"), ("0", "00")] {
        let w = nerode_witness(&pal, &parse_word(u).unwrap(), &parse_word(v).unwrap(), 13).unwrap();
        println!("{u} vs {v}: {}", w.map_or("none".into(), |w| word_string(&w)));
    }

    let zeros = tree_from_language(&WordLanguagePredicate::zeros_star());
    for (u, v) in antiregular_counterexamples(&zeros, 2, 5) {
        println!("0*: {} and {} have equal subtrees", word_string(&u), word_string(&v));
    }

    let custom = parse_predicate("count1 = 1 | prefix(00)").unwrap();
    let t = tree_from_language(&custom);
    println!("{}: first refutation {:?}", custom.name(), antiregular_refute(&t, 4, 8));
}
