//! The product of the kind algebra: one example per case of the diagram.

use omegaclone::graph::parse_labeled_graph;
use omegaclone::kind::{parse_kind_element, product_graph_with_case, product_with_case, KindElement};
use omegaclone::text::parse_labeled_term;

fn label(s: &str, _: usize) -> Result<KindElement, String> {
    parse_kind_element(s)
}

fn main() {
    for src in [
        "([K4 (a 1 2)] T1/0 1)",
        "([K4 (a 1 2)] T2/0 T2/0)",
        "([K4 (a 1 2)] (T2/1 1) 2)",
        "([K4 (a 1 2)] (T3/1 1) 2)",
        "([K4 (a 1 2)] 1 1)",
        "([K4 (a 1 2)] 2 ([K4 (b 2 1)] 1 3))",
    ] {
        let t = parse_labeled_term(src, 1, label).unwrap();
        let (value, case) = product_with_case(&t).unwrap();
        println!("{case} pr {t} = {value}");
    }

    // case (b) needs an infinite port-free region without kind 2
    let g = parse_labeled_graph("rank 0\n0: [K4 (a 1 2)] 0 0\n", 1, label).unwrap();
    let (value, case) = product_graph_with_case(&g).unwrap();
    println!("{case} a K4 self-loop = {value}");

    let bad = parse_labeled_term("T3/0", 1, label);
    println!("T3/0 as a label: {}", bad.map(|_| ()).unwrap_err());
}
