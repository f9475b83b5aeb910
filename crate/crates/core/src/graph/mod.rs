//! Regular terms as finite rooted graphs.
//!
//! A [`TermGraph`] denotes the (possibly infinite) term obtained by
//! unfolding it from vertex 0. Vertices are letters with ordered successors
//! or ports without successors.

mod flatten;
mod format;
mod lazy;
mod minimize;

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::term::{Node, Ranked, Term};

pub use format::{parse_graph, parse_graph_file, parse_labeled_graph, write_graph_file};
pub use lazy::{Certificate, LazyTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("vertex {vertex}: successor {target} does not exist")]
    BadSuccessor { vertex: usize, target: usize },
    #[error("vertex {vertex}: label `{label}` has rank {expected} but {found} successors")]
    ArityMismatch {
        vertex: usize,
        label: String,
        expected: usize,
        found: usize,
    },
    #[error("vertex {0} is not reachable from the root")]
    Unreachable(usize),
    #[error("the root is a port")]
    RootIsPort,
    #[error("ports are numbered from 1")]
    ZeroPort,
    #[error("port {missing} is absent although port {rank} occurs")]
    PortGap { missing: usize, rank: usize },
    #[error("declared rank {declared} but ports give rank {actual}")]
    RankMismatch { declared: usize, actual: usize },
    #[error("the flattening is the trivial term")]
    TrivialResult,
}

impl GraphError {
    /// The vertex the error is about, if any.
    pub fn vertex(&self) -> Option<usize> {
        match self {
            GraphError::BadSuccessor { vertex, .. } | GraphError::ArityMismatch { vertex, .. } => Some(*vertex),
            GraphError::Unreachable(v) => Some(*v),
            _ => None,
        }
    }
}

/// Label of a graph vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexLabel<L> {
    Letter(L),
    Port(usize),
}

impl<L> VertexLabel<L> {
    pub fn letter(&self) -> Option<&L> {
        match self {
            VertexLabel::Letter(l) => Some(l),
            VertexLabel::Port(_) => None,
        }
    }

    pub fn port(&self) -> Option<usize> {
        match self {
            VertexLabel::Port(i) => Some(*i),
            VertexLabel::Letter(_) => None,
        }
    }
}

impl<L: Ranked> VertexLabel<L> {
    pub fn arity(&self) -> usize {
        match self {
            VertexLabel::Letter(l) => l.rank(),
            VertexLabel::Port(_) => 0,
        }
    }
}

/// How often a port occurs in an unfolding. `Many` covers both finitely
/// many (at least two) and infinitely many occurrences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Multiplicity {
    Zero,
    One,
    Many,
}

/// A finite rooted graph whose unfolding from vertex 0 is a regular term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TermGraph<L> {
    labels: Vec<VertexLabel<L>>,
    succ: Vec<Vec<usize>>,
    rank: usize,
}

impl<L: Ranked + fmt::Display> TermGraph<L> {
    /// Validates the graph; vertex 0 is the root and the rank is the largest
    /// port number.
    pub fn new(labels: Vec<VertexLabel<L>>, succ: Vec<Vec<usize>>) -> Result<TermGraph<L>, GraphError> {
        let n = labels.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        assert_eq!(n, succ.len(), "one successor list per vertex");
        for (v, (label, out)) in labels.iter().zip(&succ).enumerate() {
            if let VertexLabel::Port(0) = label {
                return Err(GraphError::ZeroPort);
            }
            if label.arity() != out.len() {
                return Err(GraphError::ArityMismatch {
                    vertex: v,
                    label: match label {
                        VertexLabel::Letter(l) => l.to_string(),
                        VertexLabel::Port(i) => format!("port {i}"),
                    },
                    expected: label.arity(),
                    found: out.len(),
                });
            }
            if let Some(&target) = out.iter().find(|&&w| w >= n) {
                return Err(GraphError::BadSuccessor { vertex: v, target });
            }
        }
        if labels[0].port().is_some() {
            return Err(GraphError::RootIsPort);
        }
        let reach = reachable_from(&succ, 0);
        if let Some(v) = reach.iter().position(|&r| !r) {
            return Err(GraphError::Unreachable(v));
        }
        let rank = labels.iter().filter_map(VertexLabel::port).max().unwrap_or(0);
        let mut seen = vec![false; rank + 1];
        labels.iter().filter_map(VertexLabel::port).for_each(|p| seen[p] = true);
        if let Some(missing) = (1..=rank).find(|&i| !seen[i]) {
            return Err(GraphError::PortGap { missing, rank });
        }
        Ok(TermGraph { labels, succ, rank })
    }

    /// Tree-shaped graph of a finite term, vertices in preorder.
    pub fn from_term(term: &Term<L>) -> TermGraph<L>
    where
        L: Clone,
    {
        let mut labels = Vec::new();
        let mut succ = Vec::new();
        fn go<L: Clone>(node: &Node<L>, labels: &mut Vec<VertexLabel<L>>, succ: &mut Vec<Vec<usize>>) -> usize {
            let v = labels.len();
            match node {
                Node::Port(i) => {
                    labels.push(VertexLabel::Port(*i));
                    succ.push(Vec::new());
                }
                Node::Inner(l, children) => {
                    labels.push(VertexLabel::Letter(l.clone()));
                    succ.push(Vec::new());
                    let out = children.iter().map(|c| go(c, labels, succ)).collect();
                    succ[v] = out;
                }
            }
            v
        }
        go(term.root(), &mut labels, &mut succ);
        TermGraph {
            labels,
            succ,
            rank: term.rank(),
        }
    }

    /// The unfolding as a finite term, when it is finite.
    pub fn to_term(&self) -> Option<Term<L>>
    where
        L: Clone,
    {
        if self.has_cycle() {
            return None;
        }
        fn go<L: Clone + Ranked + fmt::Display>(g: &TermGraph<L>, v: usize) -> Node<L> {
            match &g.labels[v] {
                VertexLabel::Port(i) => Node::Port(*i),
                VertexLabel::Letter(l) => Node::Inner(l.clone(), g.succ[v].iter().map(|&w| go(g, w)).collect()),
            }
        }
        Some(Term::new(go(self, 0)).expect("unfolding of a valid acyclic graph is a term"))
    }

    /// Relabel letters; `f` must preserve ranks.
    pub fn try_map_labels<M, E>(&self, mut f: impl FnMut(&L) -> Result<M, E>) -> Result<TermGraph<M>, E>
    where
        M: Ranked + fmt::Display,
        E: From<GraphError>,
    {
        let labels = self
            .labels
            .iter()
            .map(|l| {
                Ok(match l {
                    VertexLabel::Letter(l) => VertexLabel::Letter(f(l)?),
                    VertexLabel::Port(i) => VertexLabel::Port(*i),
                })
            })
            .collect::<Result<Vec<_>, E>>()?;
        Ok(TermGraph::new(labels, self.succ.clone())?)
    }
}

impl<L> TermGraph<L> {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, v: usize) -> &VertexLabel<L> {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[VertexLabel<L>] {
        &self.labels
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    /// Letter labels of all vertices, in vertex order.
    pub fn letters(&self) -> impl Iterator<Item = &L> {
        self.labels.iter().filter_map(VertexLabel::letter)
    }

    pub fn has_cycle(&self) -> bool {
        // iterative three-colour DFS; all vertices are reachable
        let n = self.len();
        let mut colour = vec![0u8; n];
        for start in 0..n {
            if colour[start] != 0 {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            colour[start] = 1;
            while let Some((v, i)) = stack.pop() {
                if let Some(&w) = self.succ[v].get(i) {
                    stack.push((v, i + 1));
                    match colour[w] {
                        0 => {
                            colour[w] = 1;
                            stack.push((w, 0));
                        }
                        1 => return true,
                        _ => {}
                    }
                } else {
                    colour[v] = 2;
                }
            }
        }
        false
    }

    /// Vertices from which no port vertex is reachable; their unfoldings
    /// are exactly the port-free subtrees.
    pub fn port_free_vertices(&self) -> Vec<bool> {
        let reaches = self.backward_closure(|v| self.labels[v].port().is_some());
        reaches.into_iter().map(|r| !r).collect()
    }

    /// True iff every subtree of the unfolding contains a port.
    pub fn every_subtree_has_port(&self) -> bool {
        self.port_free_vertices().iter().all(|&free| !free)
    }

    /// Vertices that can reach (in zero or more steps) a vertex satisfying `target`.
    pub fn backward_closure(&self, target: impl Fn(usize) -> bool) -> Vec<bool> {
        let n = self.len();
        let mut pred = vec![Vec::new(); n];
        for (v, out) in self.succ.iter().enumerate() {
            for &w in out {
                pred[w].push(v);
            }
        }
        let mut mark: Vec<bool> = (0..n).map(&target).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| mark[v]).collect();
        while let Some(w) = queue.pop_front() {
            for &v in &pred[w] {
                if !mark[v] {
                    mark[v] = true;
                    queue.push_back(v);
                }
            }
        }
        mark
    }

    /// Number of occurrences of port `i` in the unfolding.
    ///
    /// Occurrences are root-to-port paths. If a vertex that can reach a
    /// port-`i` vertex lies on a cycle there are infinitely many; otherwise
    /// paths are counted over the acyclic part, saturating at two.
    pub fn port_multiplicity(&self, i: usize) -> Multiplicity {
        let relevant = self.backward_closure(|v| self.labels[v].port() == Some(i));
        if !relevant[0] {
            return Multiplicity::Zero;
        }
        // cycle among relevant vertices => infinitely many occurrences
        let sub = self.restricted(&relevant);
        if has_cycle_in(&sub, &relevant) {
            return Multiplicity::Many;
        }
        // paths from v to a port-i vertex, saturating at 2
        let order = topo_order(&sub, &relevant);
        let mut paths = vec![0u8; self.len()];
        for &v in order.iter().rev() {
            paths[v] = if self.labels[v].port() == Some(i) {
                1
            } else {
                sub[v].iter().map(|&w| paths[w]).fold(0u8, |a, b| a.saturating_add(b).min(2))
            };
        }
        match paths[0] {
            0 => Multiplicity::Zero,
            1 => Multiplicity::One,
            _ => Multiplicity::Many,
        }
    }

    /// True iff some port occurs at least twice in the unfolding.
    pub fn some_port_repeats(&self) -> bool {
        (1..=self.rank).any(|i| self.port_multiplicity(i) == Multiplicity::Many)
    }

    fn restricted(&self, keep: &[bool]) -> Vec<Vec<usize>> {
        self.succ
            .iter()
            .enumerate()
            .map(|(v, out)| {
                if keep[v] {
                    out.iter().copied().filter(|&w| keep[w]).collect()
                } else {
                    Vec::new()
                }
            })
            .collect()
    }
}

impl<L> Ranked for TermGraph<L> {
    fn rank(&self) -> usize {
        self.rank
    }
}

pub(crate) fn reachable_from(succ: &[Vec<usize>], root: usize) -> Vec<bool> {
    let mut seen = vec![false; succ.len()];
    let mut stack = vec![root];
    seen[root] = true;
    while let Some(v) = stack.pop() {
        for &w in &succ[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

fn has_cycle_in(succ: &[Vec<usize>], keep: &[bool]) -> bool {
    topo_order(succ, keep).len() < keep.iter().filter(|&&k| k).count()
}

/// Kahn's algorithm over the kept vertices; shorter than the kept set iff cyclic.
fn topo_order(succ: &[Vec<usize>], keep: &[bool]) -> Vec<usize> {
    let n = succ.len();
    let mut indeg = vec![0usize; n];
    for v in (0..n).filter(|&v| keep[v]) {
        for &w in &succ[v] {
            indeg[w] += 1;
        }
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| keep[v] && indeg[v] == 0).collect();
    let mut order = Vec::new();
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in &succ[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    order
}

/// Read access to a possibly infinite tree by walking from its root.
pub trait TreeView {
    type Letter;
    type Cursor: Clone;
    fn root(&self) -> Self::Cursor;
    fn label(&self, at: &Self::Cursor) -> VertexLabel<Self::Letter>;
    fn child(&self, at: &Self::Cursor, index: usize) -> Self::Cursor;
}

impl<L: Clone + Ranked> TreeView for TermGraph<L> {
    type Letter = L;
    type Cursor = usize;

    fn root(&self) -> usize {
        0
    }

    fn label(&self, at: &usize) -> VertexLabel<L> {
        self.labels[*at].clone()
    }

    fn child(&self, at: &usize, index: usize) -> usize {
        self.succ[*at][index]
    }
}

/// A depth-bounded prefix of an unfolding.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Prefix<L> {
    Port(usize),
    Node(L, Vec<Prefix<L>>),
    /// A node at the depth bound that has children in the full tree.
    Cut,
}

/// All nodes at depth at most `depth`; nodes at the bound that have
/// children are replaced by [`Prefix::Cut`].
pub fn unfold_prefix<T: TreeView>(tree: &T, depth: usize) -> Prefix<T::Letter>
where
    T::Letter: Ranked,
{
    unfold_from(tree, &tree.root(), depth)
}

pub(crate) fn unfold_from<T: TreeView>(tree: &T, at: &T::Cursor, depth: usize) -> Prefix<T::Letter>
where
    T::Letter: Ranked,
{
    match tree.label(at) {
        VertexLabel::Port(i) => Prefix::Port(i),
        VertexLabel::Letter(l) if l.rank() == 0 => Prefix::Node(l, Vec::new()),
        VertexLabel::Letter(_) if depth == 0 => Prefix::Cut,
        VertexLabel::Letter(l) => {
            let children = (0..l.rank())
                .map(|i| unfold_from(tree, &tree.child(at, i), depth - 1))
                .collect();
            Prefix::Node(l, children)
        }
    }
}

impl<L> Prefix<L> {
    /// Port occurrences in depth-first order.
    pub fn ports(&self) -> Vec<usize> {
        fn go<L>(p: &Prefix<L>, out: &mut Vec<usize>) {
            match p {
                Prefix::Port(i) => out.push(*i),
                Prefix::Node(_, children) => children.iter().for_each(|c| go(c, out)),
                Prefix::Cut => {}
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    pub fn has_cut(&self) -> bool {
        match self {
            Prefix::Cut => true,
            Prefix::Port(_) => false,
            Prefix::Node(_, children) => children.iter().any(Prefix::has_cut),
        }
    }

    /// Truncate to a smaller depth.
    pub fn truncate(&self, depth: usize) -> Prefix<L>
    where
        L: Clone,
    {
        match self {
            Prefix::Node(l, children) if !children.is_empty() => {
                if depth == 0 {
                    Prefix::Cut
                } else {
                    Prefix::Node(l.clone(), children.iter().map(|c| c.truncate(depth - 1)).collect())
                }
            }
            other => other.clone(),
        }
    }
}

impl<L: fmt::Display> fmt::Display for Prefix<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prefix::Port(i) => write!(f, "{i}"),
            Prefix::Cut => f.write_str("cut"),
            Prefix::Node(l, children) if children.is_empty() => f.write_str(&crate::text::label_token(l)),
            Prefix::Node(l, children) => {
                write!(f, "({}", crate::text::label_token(l))?;
                for c in children {
                    write!(f, " {c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{Letter, RankedAlphabet};

    fn a() -> Letter {
        RankedAlphabet::binary_ab().letter("a").unwrap().clone()
    }

    fn lt(l: &Letter) -> VertexLabel<Letter> {
        VertexLabel::Letter(l.clone())
    }

    fn full_a() -> TermGraph<Letter> {
        TermGraph::new(vec![lt(&a())], vec![vec![0, 0]]).unwrap()
    }

    /// v: a(v, port 1)
    fn right_port_comb() -> TermGraph<Letter> {
        TermGraph::new(vec![lt(&a()), VertexLabel::Port(1)], vec![vec![0, 1], vec![]]).unwrap()
    }

    #[test]
    fn validation_errors() {
        assert_eq!(TermGraph::<Letter>::new(vec![], vec![]), Err(GraphError::Empty));
        assert_eq!(
            TermGraph::<Letter>::new(vec![VertexLabel::Port(1)], vec![vec![]]),
            Err(GraphError::RootIsPort)
        );
        assert!(matches!(
            TermGraph::new(vec![lt(&a())], vec![vec![0]]),
            Err(GraphError::ArityMismatch { .. })
        ));
        assert_eq!(
            TermGraph::new(vec![lt(&a()), lt(&a())], vec![vec![0, 0], vec![1, 1]]),
            Err(GraphError::Unreachable(1))
        );
        assert_eq!(
            TermGraph::new(vec![lt(&a()), VertexLabel::Port(2)], vec![vec![1, 1], vec![]]),
            Err(GraphError::PortGap { missing: 1, rank: 2 })
        );
        assert_eq!(
            TermGraph::new(vec![lt(&a())], vec![vec![0, 3]]),
            Err(GraphError::BadSuccessor { vertex: 0, target: 3 })
        );
    }

    #[test]
    fn unfold_prefix_examples() {
        assert_eq!(unfold_prefix(&full_a(), 1).to_string(), "(a cut cut)");
        assert_eq!(unfold_prefix(&full_a(), 0), Prefix::Cut);
        let comb = TermGraph::new(vec![lt(&a()), VertexLabel::Port(1)], vec![vec![1, 0], vec![]]).unwrap();
        assert_eq!(unfold_prefix(&comb, 2).to_string(), "(a 1 (a 1 cut))");
    }

    #[test]
    fn subtree_port_checks() {
        let g = TermGraph::from_term(&crate::text::parse_term("(a 1 2)", &RankedAlphabet::binary_ab()).unwrap());
        assert!(g.every_subtree_has_port());
        assert!(!full_a().every_subtree_has_port());
        // root a, child 1 = port 1, child 2 = full-a vertex
        let mixed = TermGraph::new(
            vec![lt(&a()), VertexLabel::Port(1), lt(&a())],
            vec![vec![1, 2], vec![], vec![2, 2]],
        )
        .unwrap();
        assert!(!mixed.every_subtree_has_port());
    }

    #[test]
    fn multiplicities() {
        let ab = RankedAlphabet::binary_ab();
        let g = TermGraph::from_term(&crate::text::parse_term("(a 1 2)", &ab).unwrap());
        assert_eq!(g.port_multiplicity(1), Multiplicity::One);
        assert_eq!(g.port_multiplicity(3), Multiplicity::Zero);
        let g = TermGraph::from_term(&crate::text::parse_term("(a 1 1)", &ab).unwrap());
        assert_eq!(g.port_multiplicity(1), Multiplicity::Many);
        assert_eq!(right_port_comb().port_multiplicity(1), Multiplicity::Many);
        // shared port vertex reached along two edges of one vertex
        let shared = TermGraph::new(vec![lt(&a()), VertexLabel::Port(1)], vec![vec![1, 1], vec![]]).unwrap();
        assert_eq!(shared.port_multiplicity(1), Multiplicity::Many);
        // a cycle that cannot reach the port does not multiply it
        let g = TermGraph::new(
            vec![lt(&a()), VertexLabel::Port(1), lt(&a())],
            vec![vec![1, 2], vec![], vec![2, 2]],
        )
        .unwrap();
        assert_eq!(g.port_multiplicity(1), Multiplicity::One);
    }

    #[test]
    fn to_term_only_for_acyclic() {
        assert!(full_a().to_term().is_none());
        let ab = RankedAlphabet::binary_ab();
        let t = crate::text::parse_term("(a (b 1 2) 1)", &ab).unwrap();
        assert_eq!(TermGraph::from_term(&t).to_term(), Some(t));
    }
}
