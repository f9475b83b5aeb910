//! Naive reference implementations used as oracles by the integration
//! tests. They follow the definitions directly and make no attempt at
//! efficiency.
#![allow(dead_code)]

use omegaclone::graph::{unfold_prefix, Prefix, TermGraph, TreeView, VertexLabel};
use omegaclone::kind::{Kind, KindElement};
use omegaclone::term::{Letter, Node, Ranked, Term};

/// Substitute the flattened children for the ports of each label.
pub fn naive_flatten(t: &Term<Term<Letter>>) -> Node<Letter> {
    fn go(n: &Node<Term<Letter>>) -> Node<Letter> {
        match n {
            Node::Port(i) => Node::Port(*i),
            Node::Inner(s, kids) => {
                let kids: Vec<Node<Letter>> = kids.iter().map(go).collect();
                subst(s.root(), &kids)
            }
        }
    }
    go(t.root())
}

pub fn subst(n: &Node<Letter>, args: &[Node<Letter>]) -> Node<Letter> {
    match n {
        Node::Port(i) => args[i - 1].clone(),
        Node::Inner(l, kids) => Node::Inner(l.clone(), kids.iter().map(|k| subst(k, args)).collect()),
    }
}

/// The prefix of the flattening of a nested regular term, unfolded
/// directly: walk the label of an outer vertex and jump to the outer
/// child when a port of the label is reached.
pub fn naive_nested_unfold(g: &TermGraph<TermGraph<Letter>>, depth: usize) -> Prefix<Letter> {
    fn go(g: &TermGraph<TermGraph<Letter>>, v: usize, u: usize, depth: usize) -> Prefix<Letter> {
        let label = match g.label(v) {
            VertexLabel::Port(i) => return Prefix::Port(*i),
            VertexLabel::Letter(label) => label,
        };
        match label.label(u) {
            VertexLabel::Port(i) => go(g, g.successors(v)[i - 1], 0, depth),
            VertexLabel::Letter(l) if l.rank() == 0 => Prefix::Node(l.clone(), vec![]),
            VertexLabel::Letter(_) if depth == 0 => Prefix::Cut,
            VertexLabel::Letter(l) => Prefix::Node(
                l.clone(),
                label.successors(u).iter().map(|&w| go(g, v, w, depth - 1)).collect(),
            ),
        }
    }
    go(g, 0, 0, depth)
}

/// A regular term viewed from another vertex.
pub struct Rooted<'a, L>(pub &'a TermGraph<L>, pub usize);

impl<L: Clone + Ranked> TreeView for Rooted<'_, L> {
    type Letter = L;
    type Cursor = usize;

    fn root(&self) -> usize {
        self.1
    }

    fn label(&self, at: &usize) -> VertexLabel<L> {
        self.0.label(*at).clone()
    }

    fn child(&self, at: &usize, index: usize) -> usize {
        self.0.successors(*at)[index]
    }
}

/// Occurrences of port `i` in the unfolding, capped at 2. Two occurrences,
/// if they exist, are found within depth twice the number of vertices.
pub fn naive_port_occurrences(g: &TermGraph<Letter>, i: usize) -> usize {
    let p = unfold_prefix(g, 2 * g.len() + 1);
    p.ports().iter().filter(|&&j| j == i).count().min(2)
}

/// Whether the subtree at vertex `v` contains no port; a port, if any, is
/// at depth below the number of vertices.
pub fn naive_port_free(g: &TermGraph<Letter>, v: usize) -> bool {
    unfold_prefix(&Rooted(g, v), g.len() + 1).ports().is_empty()
}

/// The kind of a finite term over binary letters straight from the
/// definitions: every leaf is a port, so the term is of kind 4 when linear
/// and of kind 3 otherwise.
pub fn naive_finite_kind(t: &Term<Letter>) -> KindElement {
    let rank = t.rank();
    if t.port_counts()[1..].iter().all(|&c| c == 1) {
        KindElement::Kind4(t.clone())
    } else {
        KindElement::Tag { kind: Kind::Three, rank }
    }
}

/// The kind of a regular term over binary letters: a reachable port-free
/// subtree is regular, hence not antiregular, so kind 1; otherwise kind 3
/// if a port occurs twice, else a finite linear term of kind 4.
pub fn naive_regular_kind(g: &TermGraph<Letter>) -> KindElement {
    let rank = g.rank();
    let reachable = reachable(g);
    if (0..g.len()).any(|v| reachable[v] && naive_port_free(g, v)) {
        return KindElement::Tag { kind: Kind::One, rank };
    }
    if (1..=rank).any(|i| naive_port_occurrences(g, i) >= 2) {
        return KindElement::Tag { kind: Kind::Three, rank };
    }
    KindElement::Kind4(g.to_term().expect("no port-free subtree and linear ports means finite"))
}

pub fn reachable<L>(g: &TermGraph<L>) -> Vec<bool> {
    let mut seen = vec![false; g.len()];
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        if !std::mem::replace(&mut seen[v], true) {
            stack.extend_from_slice(g.successors(v));
        }
    }
    seen
}
