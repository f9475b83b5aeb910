//! Regular terms as rooted graphs: minimization, unfolding, port analyses
//! and flattening of regular terms whose labels are terms.

use omegaclone::graph::{parse_graph_file, parse_labeled_graph, unfold_prefix, TermGraph};
use omegaclone::term::{Letter, RankedAlphabet, Term};
use omegaclone::text::parse_term;

fn graph(src: &str) -> TermGraph<Letter> {
    parse_graph_file(src).unwrap().1
}

fn main() {
    // two copies of the full-a tree collapse into one vertex
    let g = graph("rank 0\n0: a 1 2\n1: a 2 1\n2: a 1 1\n");
    let m = g.minimize_bisim();
    println!("{} vertices minimize to {}:\n{m}", g.len(), m.len());
    println!("depth 2 unfolding: {}", unfold_prefix(&g, 2));

    let comb = graph("rank 1\n0: a 1 0\n1: port 1\n");
    println!("unfolding of the comb: {}", unfold_prefix(&comb, 2));
    println!("port 1 occurs {:?} times", comb.port_multiplicity(1));
    println!("every subtree has a port: {}", comb.every_subtree_has_port());

    let half = graph("rank 1\n0: a 1 2\n1: port 1\n2: a 2 2\n");
    println!("with a port-free branch: {}", half.every_subtree_has_port());

    // a regular term labelled by terms; the flattening is built as a product
    let ab = RankedAlphabet::binary_ab();
    let nested: TermGraph<Term<Letter>> = parse_labeled_graph(
        "rank 0\nx: [(a 1 2)] y y\ny: [(b 1 2)] x x\n",
        1,
        |s, _| parse_term(s, &ab).map_err(|e| e.message),
    )
    .unwrap();
    let flat = nested.flatten_terms().unwrap();
    println!("alternating a/b tree:\n{flat}");
    println!("prefix: {}", unfold_prefix(&flat, 3));
}
