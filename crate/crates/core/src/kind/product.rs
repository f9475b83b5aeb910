use std::fmt;

use super::{Kind, KindElement, KindError};
use crate::graph::TermGraph;
use crate::term::{Letter, Ranked, Term};

/// Which branch of the decision diagram produced a product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Case {
    /// some node is of kind 1
    A,
    /// a port-free subtree in which some node has no kind-2 descendant
    B,
    /// port-free subtrees exist and every port-free node reaches kind 2
    C,
    /// every subtree has a port and some node is of kind 2
    D,
    /// otherwise, some node is of kind 3
    E,
    /// otherwise, some port occurs twice
    F,
    /// all nodes of kind 4, ports linear
    G,
}

impl Case {
    pub const ALL: [Case; 7] = [Case::A, Case::B, Case::C, Case::D, Case::E, Case::F, Case::G];

    pub fn letter(self) -> char {
        (b'a' + self as u8) as char
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.letter())
    }
}

/// Counts of diagram cases.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CaseHistogram {
    counts: [u64; 7],
}

impl CaseHistogram {
    pub fn record(&mut self, case: Case) {
        self.counts[case as usize] += 1;
    }

    pub fn get(&self, case: Case) -> u64 {
        self.counts[case as usize]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn merge(&mut self, other: &CaseHistogram) {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
    }
}

impl fmt::Display for CaseHistogram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Case::ALL.iter().map(|c| format!("{}={}", c.letter(), self.get(*c))).collect();
        f.write_str(&parts.join(" "))
    }
}

fn decide(g: &TermGraph<KindElement>) -> Result<Case, KindError> {
    for e in g.letters() {
        e.validate()?;
    }
    let kind_at = |v: usize| g.label(v).letter().map(KindElement::kind);
    if g.letters().any(|e| e.kind() == Kind::One) {
        return Ok(Case::A);
    }
    let free = g.port_free_vertices();
    if free.iter().any(|&f| f) {
        // inside the port-free region every successor is port-free too, so
        // reaching a kind-2 vertex never leaves the region
        let reaches_two = g.backward_closure(|v| kind_at(v) == Some(Kind::Two));
        let dense = free.iter().zip(&reaches_two).all(|(&f, &r)| !f || r);
        return Ok(if dense { Case::C } else { Case::B });
    }
    if g.letters().any(|e| e.kind() == Kind::Two) {
        return Ok(Case::D);
    }
    if g.letters().any(|e| e.kind() == Kind::Three) {
        return Ok(Case::E);
    }
    if g.some_port_repeats() {
        return Ok(Case::F);
    }
    Ok(Case::G)
}

fn tag_for(case: Case, rank: usize) -> KindElement {
    let kind = match case {
        Case::A | Case::B => Kind::One,
        Case::C | Case::D => Kind::Two,
        Case::E | Case::F => Kind::Three,
        Case::G => unreachable!("case (g) carries a term"),
    };
    KindElement::Tag { kind, rank }
}

fn flatten_kind4(t: &Term<KindElement>) -> Result<KindElement, KindError> {
    let nested: Term<Term<Letter>> = t.try_map_labels(|e| match e {
        KindElement::Kind4(s) => Ok::<_, KindError>(s.clone()),
        other => Err(KindError::NotKind4(other.to_string())),
    })?;
    Ok(KindElement::Kind4(nested.flatten()))
}

/// The product of a finite term over the algebra, with the diagram case.
pub fn product_with_case(t: &Term<KindElement>) -> Result<(KindElement, Case), KindError> {
    let case = decide(&TermGraph::from_term(t))?;
    let value = match case {
        Case::G => flatten_kind4(t)?,
        other => tag_for(other, t.rank()),
    };
    Ok((value, case))
}

pub fn product(t: &Term<KindElement>) -> Result<KindElement, KindError> {
    product_with_case(t).map(|(e, _)| e)
}

/// The product of a regular term over the algebra, with the diagram case.
pub fn product_graph_with_case(g: &TermGraph<KindElement>) -> Result<(KindElement, Case), KindError> {
    let case = decide(g)?;
    let value = match case {
        Case::G => {
            // linear ports everywhere and no port-free region: the graph is a DAG
            // whose unfolding is finite
            let t = g.to_term().expect("case (g) unfolds to a finite term");
            flatten_kind4(&t)?
        }
        other => tag_for(other, g.rank()),
    };
    Ok((value, case))
}

pub fn product_graph(g: &TermGraph<KindElement>) -> Result<KindElement, KindError> {
    product_graph_with_case(g).map(|(e, _)| e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexLabel;
    use crate::kind::parse_kind_element;
    use crate::term::Node;

    fn el(s: &str) -> KindElement {
        parse_kind_element(s).unwrap()
    }

    fn node(s: &str, children: Vec<Node<KindElement>>) -> Node<KindElement> {
        Node::Inner(el(s), children)
    }

    fn prod(root: Node<KindElement>) -> (String, Case) {
        let (e, c) = product_with_case(&Term::new(root).unwrap()).unwrap();
        (e.to_string(), c)
    }

    #[test]
    fn unit_of_a_tag() {
        assert_eq!(prod(node("T1/0", vec![])), ("T1/0".into(), Case::A));
    }

    #[test]
    fn diagram_examples() {
        let p = Node::Port;
        assert_eq!(prod(node("K4 (a 1 2)", vec![p(1), p(2)])), ("K4 (a 1 2)".into(), Case::G));
        assert_eq!(
            prod(node("K4 (a 1 2)", vec![node("T2/0", vec![]), node("T2/0", vec![])])),
            ("T2/0".into(), Case::C)
        );
        assert_eq!(
            prod(node("K4 (a 1 2)", vec![node("T3/1", vec![p(1)]), p(2)])),
            ("T3/2".into(), Case::E)
        );
        assert_eq!(
            prod(node("K4 (a 1 2)", vec![node("T1/0", vec![]), p(1)])),
            ("T1/1".into(), Case::A)
        );
        assert_eq!(prod(node("K4 (a 1 2)", vec![p(1), p(1)])), ("T3/1".into(), Case::F));
        assert_eq!(
            prod(node("K4 (a 1 2)", vec![node("T2/1", vec![p(1)]), p(2)])),
            ("T2/2".into(), Case::D)
        );
        assert_eq!(
            prod(node("K4 (a 1 2)", vec![p(2), node("K4 (b 2 1)", vec![p(1), p(3)])])),
            ("K4 (a 2 (b 3 1))".into(), Case::G)
        );
    }

    #[test]
    fn malformed_label() {
        let bad = KindElement::Tag { kind: Kind::Three, rank: 0 };
        let t = Term::new(Node::Inner(bad, vec![])).unwrap();
        assert_eq!(product(&t), Err(KindError::Kind3RankZero));
    }

    #[test]
    fn graph_cases() {
        // v: K4 a(1,2) with successors (v, v): port-free, never reaches kind 2
        let g = TermGraph::new(vec![VertexLabel::Letter(el("K4 (a 1 2)"))], vec![vec![0, 0]]).unwrap();
        assert_eq!(product_graph_with_case(&g).unwrap(), (el("T1/0"), Case::B));
        // v: T2/1 looping on itself: every port-free node is kind 2
        let g = TermGraph::new(vec![VertexLabel::Letter(el("T2/1"))], vec![vec![0]]).unwrap();
        assert_eq!(product_graph_with_case(&g).unwrap(), (el("T2/0"), Case::C));
        // left comb of K4 a(1,2) over port 1
        let g = TermGraph::new(
            vec![VertexLabel::Letter(el("K4 (a 1 2)")), VertexLabel::Port(1)],
            vec![vec![0, 1], vec![]],
        )
        .unwrap();
        assert_eq!(product_graph_with_case(&g).unwrap(), (el("T3/1"), Case::F));
    }

    #[test]
    fn histogram_display() {
        let mut h = CaseHistogram::default();
        h.record(Case::G);
        h.record(Case::G);
        h.record(Case::A);
        assert_eq!(h.to_string(), "a=1 b=0 c=0 d=0 e=0 f=0 g=2");
    }
}
