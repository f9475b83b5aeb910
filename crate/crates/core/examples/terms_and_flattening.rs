//! Terms with ports: validation, units, relabelling, subtrees and flattening.

use omegaclone::term::{unit, Letter, Ranked, RankedAlphabet, Subtree, Term};
use omegaclone::text::{parse_labeled_term, parse_term};

fn main() {
    let ab = RankedAlphabet::new([("a", 2), ("b", 2), ("d", 3)]).unwrap();

    let t = parse_term("(a (b 2 1) 1)", &ab).unwrap();
    println!("{t} has rank {} and port occurrences {:?}", t.rank(), t.ports());
    for bad in ["(a 1 3)", "1", "(c 1 2)"] {
        println!("{bad}: {}", parse_term(bad, &ab).unwrap_err());
    }

    println!("unit(d) = {}", unit("d", &ab).unwrap());

    // swap a and b node-wise; ports stay where they are
    let swap = |l: &Letter| {
        let other = if l.name() == "a" { "b" } else { "a" };
        ab.letter(other).unwrap().clone()
    };
    println!("swapped: {}", t.map_labels(swap).unwrap());

    if let Subtree::Term { term, port_map } = t.subtree_at(&[0]).unwrap() {
        println!("subtree at [0]: {term} with port map {port_map:?}");
    }

    // a term whose labels are terms, flattened by substitution at ports
    let nested: Term<Term<Letter>> =
        parse_labeled_term("([(a 1 2)] 1 ([(b 1 1)] 1))", 1, |s, _| parse_term(s, &ab).map_err(|e| e.message))
            .unwrap();
    let flat = nested.flatten();
    println!("flatten {nested} = {flat} (port 1 occurs {} times)", flat.port_counts()[1]);

    // the unit law: a single node labelled s flattens to s
    let s = parse_term("(d 1 (a 2 3) 1)", &ab).unwrap();
    assert_eq!(Term::unit(s.clone()).flatten(), s);
    println!("unit law holds for {s}");
}
