//! The four kinds of terms over {a, b} and the homomorphism into the
//! kind algebra, on finite, regular and lazily given trees.

use omegaclone::antiregular::{tree_from_language, WordLanguagePredicate};
use omegaclone::graph::parse_graph_file;
use omegaclone::kind::{classify_lazy, hom_h, recognizes_densely_antiregular};
use omegaclone::term::RankedAlphabet;
use omegaclone::text::parse_term;

fn main() {
    let ab = RankedAlphabet::binary_ab();
    for src in ["(a 1 2)", "(b 2 1)", "(a 1 1)", "(a (b 1 3) 2)"] {
        let t = parse_term(src, &ab).unwrap();
        println!("h{t} = {}", hom_h(&t).unwrap());
    }

    for (name, src) in [
        ("full-a", "rank 0\n0: a 0 0\n"),
        ("left comb", "rank 1\n0: a 0 1\n1: port 1\n"),
        ("a over a port and full-b", "rank 1\n0: a 1 2\n1: port 1\n2: b 2 2\n"),
    ] {
        let (_, g) = parse_graph_file(src).unwrap();
        println!("{name}: {}", hom_h(&g).unwrap());
    }

    // lazily given trees: definite only with a certificate
    let pal = tree_from_language(&WordLanguagePredicate::palindromes());
    println!("palindrome tree: {}", classify_lazy(&pal, 10, 13).unwrap());
    println!("recognized: {}", recognizes_densely_antiregular(&pal).unwrap());
    let all = tree_from_language(&WordLanguagePredicate::all());
    let v = classify_lazy(&all, 3, 13).unwrap();
    println!("uncertified full-a tree: {v} ({})", v.evidence);
    println!("h on it: {}", hom_h(&all).unwrap_err());
}
