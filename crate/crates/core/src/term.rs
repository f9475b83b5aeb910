//! Ranked alphabets and finite terms with ports.
//!
//! A term of rank `n` is a finite ordered tree whose inner nodes carry
//! ranked labels and whose leaves are either rank-0 labels or ports
//! `1..=n`. Every port from `1` to `n` occurs at least once, and the
//! single-port term `1` is not a term at all.
//!
//! The label type is generic, so `Term<Term<Letter>>` is a term whose
//! nodes are themselves terms; [`Term::flatten`] substitutes those back
//! into a single term.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Anything carrying an arity.
pub trait Ranked {
    fn rank(&self) -> usize;
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("label `{label}` has rank {expected} but {found} children")]
    ArityMismatch {
        label: String,
        expected: usize,
        found: usize,
    },
    #[error("port {missing} is absent although port {rank} occurs")]
    PortGap { missing: usize, rank: usize },
    #[error("ports are numbered from 1")]
    ZeroPort,
    #[error("the single port 1 is not a term")]
    TrivialTerm,
    #[error("relabelling changed rank of `{label}` from {from} to {to}")]
    RankChanged {
        label: String,
        from: usize,
        to: usize,
    },
    #[error("address {0:?} does not exist")]
    BadAddress(Vec<usize>),
    #[error("letter `{0}` declared twice")]
    DuplicateLetter(String),
    #[error("`{0}` is not a valid letter name")]
    InvalidLetterName(String),
}

/// A letter of a ranked alphabet. Cheap to clone.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    name: Arc<str>,
    rank: usize,
}

impl Letter {
    pub fn new(name: &str, rank: usize) -> Result<Letter, TermError> {
        if !is_letter_name(name) {
            return Err(TermError::InvalidLetterName(name.to_string()));
        }
        Ok(Letter {
            name: Arc::from(name),
            rank,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

/// Letter names start with a non-digit and avoid the characters used by the
/// text formats. `port` and `cut` are reserved words of those formats.
pub(crate) fn is_letter_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if !c.is_ascii_digit() && is_atom_char(c) => {}
        _ => return false,
    }
    name != "port" && name != "cut" && chars.all(is_atom_char)
}

pub(crate) fn is_atom_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, '(' | ')' | '[' | ']' | ':' | ';' | '#' | ',')
}

impl Ranked for Letter {
    fn rank(&self) -> usize {
        self.rank
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name, self.rank)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// A finite ranked alphabet, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankedAlphabet {
    letters: Vec<Letter>,
}

impl RankedAlphabet {
    pub fn new<'a>(
        letters: impl IntoIterator<Item = (&'a str, usize)>,
    ) -> Result<RankedAlphabet, TermError> {
        let mut out: Vec<Letter> = Vec::new();
        for (name, rank) in letters {
            if out.iter().any(|l| l.name() == name) {
                return Err(TermError::DuplicateLetter(name.to_string()));
            }
            out.push(Letter::new(name, rank)?);
        }
        Ok(RankedAlphabet { letters: out })
    }

    /// The alphabet `{a:2, b:2}` of full binary trees.
    pub fn binary_ab() -> RankedAlphabet {
        RankedAlphabet::new([("a", 2), ("b", 2)]).expect("static alphabet")
    }

    pub fn letter(&self, name: &str) -> Option<&Letter> {
        self.letters.iter().find(|l| l.name() == name)
    }

    pub fn contains(&self, letter: &Letter) -> bool {
        self.letters.contains(letter)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Letters of rank `n`.
    pub fn of_rank(&self, n: usize) -> impl Iterator<Item = &Letter> {
        self.letters.iter().filter(move |l| l.rank == n)
    }

    pub fn max_rank(&self) -> usize {
        self.letters.iter().map(|l| l.rank).max().unwrap_or(0)
    }
}

impl fmt::Display for RankedAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("alphabet")?;
        for l in &self.letters {
            write!(f, " {}:{}", l.name, l.rank)?;
        }
        Ok(())
    }
}

/// A node of a finite term. Ports are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node<L> {
    Port(usize),
    Inner(L, Vec<Node<L>>),
}

impl<L> Node<L> {
    pub fn leaf(label: L) -> Node<L> {
        Node::Inner(label, Vec::new())
    }

    pub fn is_port(&self) -> bool {
        matches!(self, Node::Port(_))
    }

    pub fn children(&self) -> &[Node<L>] {
        match self {
            Node::Port(_) => &[],
            Node::Inner(_, children) => children,
        }
    }

    /// Port occurrences in depth-first, left-to-right order.
    pub fn ports(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_ports(&mut out);
        out
    }

    fn collect_ports(&self, out: &mut Vec<usize>) {
        match self {
            Node::Port(i) => out.push(*i),
            Node::Inner(_, children) => children.iter().for_each(|c| c.collect_ports(out)),
        }
    }

    /// Number of inner (non-port) nodes.
    pub fn inner_count(&self) -> usize {
        match self {
            Node::Port(_) => 0,
            Node::Inner(_, children) => 1 + children.iter().map(Node::inner_count).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Node::Port(_) => 0,
            Node::Inner(_, children) => {
                children.iter().map(|c| c.depth() + 1).max().unwrap_or(0)
            }
        }
    }

    pub fn at(&self, address: &[usize]) -> Option<&Node<L>> {
        let mut node = self;
        for &i in address {
            node = node.children().get(i)?;
        }
        Some(node)
    }

    /// Visit every inner label in preorder.
    pub fn for_each_label<'a>(&'a self, f: &mut impl FnMut(&'a L)) {
        if let Node::Inner(label, children) = self {
            f(label);
            children.iter().for_each(|c| c.for_each_label(f));
        }
    }

    fn try_map<M, E>(&self, f: &mut impl FnMut(&L) -> Result<M, E>) -> Result<Node<M>, E> {
        Ok(match self {
            Node::Port(i) => Node::Port(*i),
            Node::Inner(label, children) => Node::Inner(
                f(label)?,
                children
                    .iter()
                    .map(|c| c.try_map(f))
                    .collect::<Result<_, _>>()?,
            ),
        })
    }

    fn renumber(&self, map: &BTreeMap<usize, usize>) -> Node<L>
    where
        L: Clone,
    {
        match self {
            Node::Port(i) => Node::Port(map[i]),
            Node::Inner(label, children) => {
                Node::Inner(label.clone(), children.iter().map(|c| c.renumber(map)).collect())
            }
        }
    }
}

impl<L: Ranked + fmt::Display> Node<L> {
    fn check_arity(&self) -> Result<(), TermError> {
        match self {
            Node::Port(0) => Err(TermError::ZeroPort),
            Node::Port(_) => Ok(()),
            Node::Inner(label, children) => {
                if label.rank() != children.len() {
                    return Err(TermError::ArityMismatch {
                        label: label.to_string(),
                        expected: label.rank(),
                        found: children.len(),
                    });
                }
                children.iter().try_for_each(Node::check_arity)
            }
        }
    }
}

/// A finite term with ports `1..=rank`, each occurring at least once.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term<L> {
    root: Node<L>,
    rank: usize,
}

impl<L: Ranked + fmt::Display> Term<L> {
    /// Validates arities and the port conditions; the rank is the largest port.
    pub fn new(root: Node<L>) -> Result<Term<L>, TermError> {
        root.check_arity()?;
        if matches!(root, Node::Port(1)) {
            return Err(TermError::TrivialTerm);
        }
        let ports = root.ports();
        let rank = ports.iter().copied().max().unwrap_or(0);
        let mut seen = vec![false; rank + 1];
        for p in ports {
            seen[p] = true;
        }
        if let Some(missing) = (1..=rank).find(|&i| !seen[i]) {
            return Err(TermError::PortGap { missing, rank });
        }
        if root.is_port() {
            // a lone port `k > 1` leaves ports 1..k-1 absent
            return Err(TermError::PortGap { missing: 1, rank });
        }
        Ok(Term { root, rank })
    }

    /// The unit: `label` at the root with ports `1..=rank` as its children.
    pub fn unit(label: L) -> Term<L> {
        let rank = label.rank();
        let children = (1..=rank).map(Node::Port).collect();
        Term {
            root: Node::Inner(label, children),
            rank,
        }
    }

    /// Node-wise relabelling. `f` must preserve ranks.
    pub fn map_labels<M: Ranked + fmt::Display>(
        &self,
        mut f: impl FnMut(&L) -> M,
    ) -> Result<Term<M>, TermError> {
        self.try_map_labels(|l| {
            let m = f(l);
            if m.rank() != l.rank() {
                return Err(TermError::RankChanged {
                    label: l.to_string(),
                    from: l.rank(),
                    to: m.rank(),
                });
            }
            Ok(m)
        })
    }

    /// Node-wise relabelling with a fallible map. Ranks are re-checked.
    pub fn try_map_labels<M, E>(&self, mut f: impl FnMut(&L) -> Result<M, E>) -> Result<Term<M>, E>
    where
        M: Ranked + fmt::Display,
        E: From<TermError>,
    {
        let root = self.root.try_map(&mut f)?;
        root.check_arity()?;
        Ok(Term {
            root,
            rank: self.rank,
        })
    }

    /// The subtree at `address` (0-based child indices).
    ///
    /// Ports of the subtree are renumbered in order of first occurrence; the
    /// returned map sends original port numbers to the new ones.
    pub fn subtree_at(&self, address: &[usize]) -> Result<Subtree<L>, TermError>
    where
        L: Clone,
    {
        let node = self
            .root
            .at(address)
            .ok_or_else(|| TermError::BadAddress(address.to_vec()))?;
        if let Node::Port(i) = node {
            return Ok(Subtree::Port(*i));
        }
        let mut port_map = BTreeMap::new();
        for p in node.ports() {
            let next = port_map.len() + 1;
            port_map.entry(p).or_insert(next);
        }
        let rank = port_map.len();
        Ok(Subtree::Term {
            term: Term {
                root: node.renumber(&port_map),
                rank,
            },
            port_map,
        })
    }
}

impl<L> Term<L> {
    pub fn root(&self) -> &Node<L> {
        &self.root
    }

    pub fn into_root(self) -> Node<L> {
        self.root
    }

    /// Port occurrences in depth-first order.
    pub fn ports(&self) -> Vec<usize> {
        self.root.ports()
    }

    /// Occurrence count per port; index 0 is unused.
    pub fn port_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.rank + 1];
        for p in self.ports() {
            counts[p] += 1;
        }
        counts
    }

    /// True when every port occurs exactly once.
    pub fn is_linear(&self) -> bool {
        self.port_counts().iter().skip(1).all(|&c| c == 1)
    }

    pub fn inner_count(&self) -> usize {
        self.root.inner_count()
    }

    pub fn depth(&self) -> usize {
        self.root.depth()
    }

    pub fn labels(&self) -> Vec<&L> {
        let mut out = Vec::new();
        self.root.for_each_label(&mut |l| out.push(l));
        out
    }
}

impl<L> Ranked for Term<L> {
    fn rank(&self) -> usize {
        self.rank
    }
}

impl<L: Clone> Term<Term<L>> {
    /// Flattening: substitute each node label, with the flattened children
    /// grafted at its port occurrences.
    pub fn flatten(&self) -> Term<L> {
        Term {
            root: flatten_node(&self.root),
            rank: self.rank,
        }
    }
}

fn flatten_node<L: Clone>(node: &Node<Term<L>>) -> Node<L> {
    match node {
        Node::Port(i) => Node::Port(*i),
        Node::Inner(label, children) => {
            let grafts: Vec<Node<L>> = children.iter().map(flatten_node).collect();
            substitute(&label.root, &grafts)
        }
    }
}

/// Replace port `j` of `node` by `grafts[j - 1]`.
pub(crate) fn substitute<L: Clone>(node: &Node<L>, grafts: &[Node<L>]) -> Node<L> {
    match node {
        Node::Port(j) => grafts[j - 1].clone(),
        Node::Inner(label, children) => Node::Inner(
            label.clone(),
            children.iter().map(|c| substitute(c, grafts)).collect(),
        ),
    }
}

/// Result of [`Term::subtree_at`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subtree<L> {
    Port(usize),
    Term {
        term: Term<L>,
        port_map: BTreeMap<usize, usize>,
    },
}

/// Check a raw tree of letter names against an alphabet.
pub fn validate_term(raw: &Node<String>, alphabet: &RankedAlphabet) -> Result<Term<Letter>, TermError> {
    let root = raw.try_map(&mut |name: &String| {
        alphabet
            .letter(name)
            .cloned()
            .ok_or_else(|| TermError::UnknownLetter(name.clone()))
    })?;
    Term::new(root)
}

/// The unit of a letter looked up by name.
pub fn unit(letter: &str, alphabet: &RankedAlphabet) -> Result<Term<Letter>, TermError> {
    let l = alphabet
        .letter(letter)
        .ok_or_else(|| TermError::UnknownLetter(letter.to_string()))?;
    Ok(Term::unit(l.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> RankedAlphabet {
        RankedAlphabet::binary_ab()
    }

    fn raw(label: &str, children: Vec<Node<String>>) -> Node<String> {
        Node::Inner(label.to_string(), children)
    }

    #[test]
    fn validate_minimal_term() {
        let t = validate_term(&raw("a", vec![Node::Port(1), Node::Port(2)]), &ab()).unwrap();
        assert_eq!(t.rank(), 2);
    }

    #[test]
    fn validate_rejects_port_gap() {
        let err = validate_term(&raw("a", vec![Node::Port(1), Node::Port(3)]), &ab()).unwrap_err();
        assert_eq!(err, TermError::PortGap { missing: 2, rank: 3 });
    }

    #[test]
    fn validate_rejects_trivial_term() {
        assert_eq!(validate_term(&Node::Port(1), &ab()), Err(TermError::TrivialTerm));
    }

    #[test]
    fn validate_rejects_lone_higher_port() {
        assert!(matches!(
            validate_term(&Node::Port(2), &ab()),
            Err(TermError::PortGap { missing: 1, .. })
        ));
    }

    #[test]
    fn validate_rejects_unknown_letter_and_arity() {
        assert_eq!(
            validate_term(&raw("c", vec![]), &ab()),
            Err(TermError::UnknownLetter("c".into()))
        );
        assert!(matches!(
            validate_term(&raw("a", vec![Node::Port(1)]), &ab()),
            Err(TermError::ArityMismatch { expected: 2, found: 1, .. })
        ));
        assert_eq!(
            validate_term(&raw("a", vec![Node::Port(0), Node::Port(1)]), &ab()),
            Err(TermError::ZeroPort)
        );
    }

    #[test]
    fn units() {
        let sigma = RankedAlphabet::new([("a", 2), ("c", 0), ("d", 3)]).unwrap();
        let a = unit("a", &sigma).unwrap();
        assert_eq!(a.root(), &Node::Inner(sigma.letter("a").unwrap().clone(), vec![Node::Port(1), Node::Port(2)]));
        let c = unit("c", &sigma).unwrap();
        assert_eq!(c.rank(), 0);
        assert!(c.root().children().is_empty());
        let d = unit("d", &sigma).unwrap();
        assert_eq!(d.ports(), vec![1, 2, 3]);
        assert_eq!(unit("z", &sigma), Err(TermError::UnknownLetter("z".into())));
    }

    #[test]
    fn map_letters_rejects_rank_change() {
        let sigma = RankedAlphabet::new([("a", 2), ("c", 1)]).unwrap();
        let t = unit("a", &sigma).unwrap();
        let c = sigma.letter("c").unwrap().clone();
        assert!(matches!(t.map_labels(|_| c.clone()), Err(TermError::RankChanged { .. })));
    }

    #[test]
    fn subtree_of_port_and_root() {
        let t = unit("a", &ab()).unwrap();
        assert_eq!(t.subtree_at(&[1]).unwrap(), Subtree::Port(2));
        match t.subtree_at(&[]).unwrap() {
            Subtree::Term { term, .. } => assert_eq!(term, t),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(t.subtree_at(&[2]), Err(TermError::BadAddress(vec![2])));
        assert_eq!(t.subtree_at(&[0, 0]), Err(TermError::BadAddress(vec![0, 0])));
    }

    #[test]
    fn letter_names() {
        assert!(Letter::new("a", 2).is_ok());
        assert!(Letter::new("1a", 2).is_err());
        assert!(Letter::new("port", 0).is_err());
        assert!(Letter::new("a b", 0).is_err());
        assert_eq!(
            RankedAlphabet::new([("a", 1), ("a", 2)]),
            Err(TermError::DuplicateLetter("a".into()))
        );
    }
}
