//! Parity tree automata on regular trees: membership through the
//! acceptance game, accepting runs, emptiness with a regular witness.

use omegaclone::automaton::{extract_run, is_empty_with_witness, membership, verify_run, ParityAutomaton};
use omegaclone::graph::parse_graph_file;
use omegaclone::term::RankedAlphabet;

fn main() {
    let (_, full_a) = parse_graph_file("rank 0\n0: a 0 0\n").unwrap();
    let (_, alternating) = parse_graph_file("rank 0\n0: a 1 1\n1: b 0 0\n").unwrap();
    let automata = [
        ("universal", ParityAutomaton::universal(&RankedAlphabet::binary_ab())),
        ("b-forbidden", ParityAutomaton::b_forbidden()),
        ("b-infinitely-often", ParityAutomaton::b_infinitely_often()),
    ];
    for (name, aut) in &automata {
        for (tree, g) in [("full-a", &full_a), ("alternating", &alternating)] {
            let accepted = membership(aut, g).unwrap();
            println!("{name} on {tree}: {}", if accepted { "accept" } else { "reject" });
            if let Some(run) = extract_run(aut, g).unwrap() {
                assert!(verify_run(aut, g, &run).unwrap());
            }
        }
        let e = is_empty_with_witness(aut);
        match e.witness {
            Some(w) => println!("{name} is non-empty, e.g.\n{w}"),
            None => println!("{name} is empty"),
        }
    }

    let aut = &automata[2].1;
    let run = extract_run(aut, &alternating).unwrap().unwrap();
    print!("accepting run on the alternating tree:\n{}", run.display(aut));
}
