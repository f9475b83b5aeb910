use std::collections::HashMap;
use std::fmt;

use super::{GraphError, TermGraph, VertexLabel};
use crate::term::{Ranked, Term};

/// A vertex of the flattening: an outer vertex paired with a non-port
/// vertex of its label, or an outer port.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Pair {
    Inner { outer: usize, inner: usize },
    OuterPort(usize),
}

impl<L: Clone + Ranked + fmt::Display> TermGraph<TermGraph<L>> {
    /// Flatten a graph whose vertex labels are themselves graphs.
    ///
    /// A node of the flattening is determined by a path in the outer graph
    /// together with port occurrences inside the labels along it; by
    /// regularity it suffices to remember the current outer vertex and the
    /// current vertex inside its label. A port `j` inside the label of `v`
    /// leads to the root of the label of the `j`-th successor of `v`.
    pub fn flatten(&self) -> Result<TermGraph<L>, GraphError> {
        let entry = |u: usize| match self.label(u) {
            VertexLabel::Port(i) => Pair::OuterPort(*i),
            VertexLabel::Letter(_) => Pair::Inner { outer: u, inner: 0 },
        };
        let mut index: HashMap<Pair, usize> = HashMap::new();
        let mut pairs = Vec::new();
        let mut intern = |p: Pair, pairs: &mut Vec<Pair>| {
            *index.entry(p).or_insert_with(|| {
                pairs.push(p);
                pairs.len() - 1
            })
        };
        intern(entry(0), &mut pairs);
        let mut labels = Vec::new();
        let mut succ = Vec::new();
        let mut next = 0;
        while next < pairs.len() {
            match pairs[next] {
                Pair::OuterPort(i) => {
                    labels.push(VertexLabel::Port(i));
                    succ.push(Vec::new());
                }
                Pair::Inner { outer, inner } => {
                    let label = self.label(outer).letter().expect("pairs only at letter vertices");
                    let VertexLabel::Letter(letter) = label.label(inner) else {
                        unreachable!("inner ports are resolved when followed")
                    };
                    labels.push(VertexLabel::Letter(letter.clone()));
                    let out = label
                        .successors(inner)
                        .iter()
                        .map(|&w| {
                            let p = match label.label(w) {
                                VertexLabel::Port(j) => entry(self.successors(outer)[j - 1]),
                                VertexLabel::Letter(_) => Pair::Inner { outer, inner: w },
                            };
                            intern(p, &mut pairs)
                        })
                        .collect();
                    succ.push(out);
                }
            }
            next += 1;
        }
        let flat = TermGraph::new(labels, succ).map_err(|e| match e {
            GraphError::RootIsPort => GraphError::TrivialResult,
            other => other,
        })?;
        debug_assert_eq!(flat.rank(), self.rank());
        Ok(flat)
    }
}

impl<L: Clone + Ranked + fmt::Display> TermGraph<Term<L>> {
    /// Flatten a graph whose labels are finite terms.
    pub fn flatten_terms(&self) -> Result<TermGraph<L>, GraphError> {
        let nested: TermGraph<TermGraph<L>> =
            self.try_map_labels(|t| Ok::<_, GraphError>(TermGraph::from_term(t)))?;
        nested.flatten()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::unfold_prefix;
    use crate::term::{Letter, RankedAlphabet};
    use crate::text::parse_term;

    fn term(s: &str) -> Term<Letter> {
        parse_term(s, &RankedAlphabet::binary_ab()).unwrap()
    }

    #[test]
    fn unit_shape_flattens_to_label() {
        let g = TermGraph::new(
            vec![VertexLabel::Letter(term("(a 1 2)")), VertexLabel::Port(1), VertexLabel::Port(2)],
            vec![vec![1, 2], vec![], vec![]],
        )
        .unwrap();
        let flat = g.flatten_terms().unwrap();
        assert_eq!(flat.to_term(), Some(term("(a 1 2)")));
    }

    #[test]
    fn left_comb() {
        // v labelled a(1,2) with successors (v, port 1)
        let g = TermGraph::new(
            vec![VertexLabel::Letter(term("(a 1 2)")), VertexLabel::Port(1)],
            vec![vec![0, 1], vec![]],
        )
        .unwrap();
        let flat = g.flatten_terms().unwrap();
        assert_eq!(flat.rank(), 1);
        assert_eq!(unfold_prefix(&flat, 3).to_string(), "(a (a (a cut 1) 1) 1)");
    }

    #[test]
    fn alternating_labels() {
        // u: a(1,2) -> (w, w); w: b(1,2) -> (u, u)
        let g = TermGraph::new(
            vec![VertexLabel::Letter(term("(a 1 2)")), VertexLabel::Letter(term("(b 1 2)"))],
            vec![vec![1, 1], vec![0, 0]],
        )
        .unwrap();
        let flat = g.flatten_terms().unwrap().minimize_bisim();
        assert_eq!(flat.len(), 2);
        assert_eq!(unfold_prefix(&flat, 2).to_string(), "(a (b cut cut) (b cut cut))");
    }
}
