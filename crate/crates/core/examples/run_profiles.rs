//! Profiles of automaton runs on terms with ports, and their composition
//! along flattening.

use omegaclone::automaton::{parse_automaton, profile_product, profiles_finite, ProfiledTerm};
use omegaclone::term::{Letter, RankedAlphabet, Term};
use omegaclone::text::{parse_labeled_term, parse_term};

fn main() {
    let aut = parse_automaton(
        "states p q;\ninit p;\npriority p=0 q=1;\na: p -> p q;\na: p -> q p;\nb: q -> q q;\nb: p -> p p;\n",
    )
    .unwrap();
    let ab = RankedAlphabet::binary_ab();

    let t = parse_term("(a 1 (b 2 1))", &ab).unwrap();
    for p in profiles_finite(&aut, &t).unwrap() {
        println!("{}", p.display(&aut));
    }

    // compose node-wise profiles and compare with the flattened term
    let nested: Term<Term<Letter>> =
        parse_labeled_term("([(a 1 2)] ([(b 1 2)] 1 2) 1)", 1, |s, _| parse_term(s, &ab).map_err(|e| e.message))
            .unwrap();
    let labelled = nested.try_map_labels(|s| ProfiledTerm::new(&aut, s.clone())).unwrap();
    let composed = profile_product(&aut, &labelled).unwrap();
    let direct = profiles_finite(&aut, &nested.flatten()).unwrap();
    println!("{} composed profiles, equal to the flattened term's: {}", composed.len(), composed == direct);
}
