mod common;

use omegaclone::graph::{parse_graph_file, unfold_prefix, write_graph_file, Multiplicity, TermGraph};
use omegaclone::random::{random_ab_graph, random_nested_graph, random_nested_term, random_rank0_graph, seeded};
use omegaclone::term::Letter;
use proptest::prelude::*;

fn graph(src: &str) -> TermGraph<Letter> {
    parse_graph_file(src).unwrap().1
}

#[test]
fn multiplicity_examples() {
    let comb = graph("rank 1\n0: a 0 1\n1: port 1\n");
    assert_eq!(comb.port_multiplicity(1), Multiplicity::Many);
    let once = graph("rank 2\n0: a 1 2\n1: port 1\n2: port 2\n");
    assert_eq!(once.port_multiplicity(1), Multiplicity::One);
    assert_eq!(comb.port_multiplicity(2), Multiplicity::Zero);
    // every vertex must be reachable, so a port cannot hide behind a loop
    assert!(parse_graph_file("rank 1\n0: a 0 0\n1: port 1\n").is_err());
}

#[test]
fn malformed_graphs() {
    assert!(parse_graph_file("rank 0\n0: a 0\n").is_err());
    assert!(parse_graph_file("rank 0\n0: a 0 3\n").is_err());
    assert!(parse_graph_file("rank 1\n0: a 0 0\n").is_err(), "port 1 has no vertex");
    let e = parse_graph_file("rank 0\n0: a 0 0\n1: c 0 0\n").unwrap_err();
    assert_eq!(e.line, 3);
}

#[test]
fn minimization_of_a_finite_term_keeps_shared_subterms_once() {
    let g = graph("rank 2\n0: a 1 2\n1: b 3 4\n2: b 3 4\n3: port 1\n4: port 2\n");
    let m = g.minimize_bisim();
    assert_eq!(m.len(), 4);
    assert_eq!(m.to_term(), g.to_term());
}

fn graphs() -> impl Strategy<Value = TermGraph<Letter>> {
    (any::<u64>(), 0usize..4, 0.0f64..1.0).prop_map(|(seed, rank, acyclic)| {
        let mut rng = seeded(seed);
        if rank == 0 {
            random_rank0_graph(&mut rng, 7)
        } else {
            random_ab_graph(&mut rng, rank, 8, acyclic)
        }
    })
}

proptest! {
    #[test]
    fn graph_flatten_matches_direct_unfolding(seed in any::<u64>()) {
        let g = random_nested_graph(&mut seeded(seed), 5, 6);
        let flat = g.flatten().unwrap();
        // prefixes of binary trees grow exponentially; a fixed depth suffices here
        let depth = (2 * flat.len() + 2).min(12);
        prop_assert_eq!(unfold_prefix(&flat, depth), common::naive_nested_unfold(&g, depth));
    }

    #[test]
    fn graph_flatten_extends_term_flatten(seed in any::<u64>()) {
        let t = random_nested_term(&mut seeded(seed), 3);
        let g = TermGraph::from_term(&t).try_map_labels(|s| Ok::<_, omegaclone::graph::GraphError>(TermGraph::from_term(s))).unwrap();
        let flat = g.flatten().unwrap();
        prop_assert_eq!(flat.to_term(), Some(t.flatten()));
    }

    #[test]
    fn minimization_preserves_the_tree(g in graphs()) {
        let m = g.minimize_bisim();
        prop_assert!(m.len() <= g.len());
        let depth = (2 * g.len() + 2).min(14);
        prop_assert_eq!(unfold_prefix(&m, depth), unfold_prefix(&g, depth));
        prop_assert_eq!(m.minimize_bisim().len(), m.len());
    }

    #[test]
    fn port_analyses_match_unfolding(g in graphs()) {
        for i in 1..=omegaclone::term::Ranked::rank(&g) {
            let expected = match common::naive_port_occurrences(&g, i) {
                0 => Multiplicity::Zero,
                1 => Multiplicity::One,
                _ => Multiplicity::Many,
            };
            prop_assert_eq!(g.port_multiplicity(i), expected);
        }
        let reachable = common::reachable(&g);
        let every = (0..g.len()).all(|v| !reachable[v] || !common::naive_port_free(&g, v));
        prop_assert_eq!(g.every_subtree_has_port(), every);
    }

    #[test]
    fn graph_files_round_trip(g in graphs()) {
        let alphabet = omegaclone::term::RankedAlphabet::binary_ab();
        let text = write_graph_file(&alphabet, &g);
        prop_assert_eq!(parse_graph_file(&text).unwrap(), (alphabet, g));
    }
}
