//! The four kinds of terms over `{a:2, b:2}` and the rank-wise finite
//! algebra built from them.
//!
//! A term of rank `n` is of exactly one kind:
//!
//! 1. some port-free subtree is not densely antiregular;
//! 2. some subtree is port-free, and every port-free subtree is densely
//!    antiregular;
//! 3. every subtree has a port and some port occurs at least twice;
//! 4. every subtree has a port and every port occurs exactly once.
//!
//! A term of kind 4 is finite with exactly `n` leaves, so there are finitely
//! many per rank. An element of the algebra ([`KindElement`]) is either such
//! a term or a kind tag with a rank. [`hom_h`] sends a term to its element
//! and [`product`] multiplies a term over elements.
//!
//! A regular tree without ports is never densely antiregular: it has finitely
//! many distinct subtrees, so along any infinite branch two nodes repeat a
//! subtree, and no subtree is antiregular. On graph inputs a port-free
//! subtree therefore always means kind 1, and kind 2 only arises from
//! certified lazy trees or from tags supplied directly.

mod decompose;
mod laws;
mod lazy;
mod product;

use std::fmt;

use thiserror::Error;

use crate::graph::{GraphError, LazyTree, TermGraph};
use crate::term::{Letter, Ranked, RankedAlphabet, Term, TermError};
use crate::text::{parse_term, ParseError};

pub use decompose::{generator_decompose, generators};
pub use laws::{check_clone_laws, check_clone_laws_with, LawReport};
pub use lazy::{classify_lazy, PartialVerdict, VerdictStatus, DEFAULT_DEPTH_BUDGET, DEFAULT_WITNESS_BUDGET};
pub use product::{product, product_graph, product_graph_with_case, product_with_case, Case, CaseHistogram};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KindError {
    #[error("letter `{0}` is not in the alphabet {{a:2, b:2}}")]
    WrongAlphabet(String),
    #[error("kind 3 requires a positive rank")]
    Kind3RankZero,
    #[error("`{0}` is not a term of kind 4")]
    NotKind4(String),
    #[error("kind cannot be determined: {0}")]
    Undetermined(String),
    #[error("exploration budgets must be positive")]
    BudgetZero,
    #[error("no generator term of size at most {bound} has product {target}")]
    SearchExhausted { target: String, bound: usize },
    #[error("rank {rank} exceeds the bound {bound}")]
    RankAboveBound { rank: usize, bound: usize },
    #[error("expected a tree of rank 0, found rank {0}")]
    NonZeroRank(usize),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// One of the four kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    One,
    Two,
    Three,
    Four,
}

impl Kind {
    pub fn number(self) -> u8 {
        match self {
            Kind::One => 1,
            Kind::Two => 2,
            Kind::Three => 3,
            Kind::Four => 4,
        }
    }

    pub fn from_number(n: u8) -> Option<Kind> {
        Some(match n {
            1 => Kind::One,
            2 => Kind::Two,
            3 => Kind::Three,
            4 => Kind::Four,
            _ => return None,
        })
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// An element of the algebra: a kind-4 term, or a kind 1/2/3 tag with a rank.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KindElement {
    Kind4(Term<Letter>),
    Tag { kind: Kind, rank: usize },
}

impl KindElement {
    /// A tag element; rejects kind 4 (which carries a term) and `T3/0`.
    pub fn tag(kind: Kind, rank: usize) -> Result<KindElement, KindError> {
        match kind {
            Kind::Four => Err(KindError::NotKind4(format!("T4/{rank}"))),
            Kind::Three if rank == 0 => Err(KindError::Kind3RankZero),
            _ => Ok(KindElement::Tag { kind, rank }),
        }
    }

    /// A kind-4 element; the term must be over `{a:2, b:2}` and linear.
    pub fn kind4(term: Term<Letter>) -> Result<KindElement, KindError> {
        check_ab_letters(term.labels().into_iter())?;
        if !term.is_linear() {
            return Err(KindError::NotKind4(term.to_string()));
        }
        Ok(KindElement::Kind4(term))
    }

    pub fn kind(&self) -> Kind {
        match self {
            KindElement::Kind4(_) => Kind::Four,
            KindElement::Tag { kind, .. } => *kind,
        }
    }

    pub(crate) fn validate(&self) -> Result<(), KindError> {
        match self {
            KindElement::Tag { kind: Kind::Four, rank } => Err(KindError::NotKind4(format!("T4/{rank}"))),
            KindElement::Tag { kind: Kind::Three, rank: 0 } => Err(KindError::Kind3RankZero),
            KindElement::Tag { .. } => Ok(()),
            KindElement::Kind4(t) => {
                check_ab_letters(t.labels().into_iter())?;
                if t.is_linear() {
                    Ok(())
                } else {
                    Err(KindError::NotKind4(t.to_string()))
                }
            }
        }
    }

    /// Every element of rank at most `max_rank`, tags first.
    pub fn enumerate(max_rank: usize) -> Vec<KindElement> {
        let mut out = Vec::new();
        for rank in 0..=max_rank {
            for kind in [Kind::One, Kind::Two, Kind::Three] {
                if let Ok(e) = KindElement::tag(kind, rank) {
                    out.push(e);
                }
            }
        }
        for rank in 2..=max_rank {
            out.extend(all_kind4_terms(rank).into_iter().map(KindElement::Kind4));
        }
        out
    }
}

impl Ranked for KindElement {
    fn rank(&self) -> usize {
        match self {
            KindElement::Kind4(t) => t.rank(),
            KindElement::Tag { rank, .. } => *rank,
        }
    }
}

impl fmt::Display for KindElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KindElement::Kind4(t) => write!(f, "K4 {t}"),
            KindElement::Tag { kind, rank } => write!(f, "T{kind}/{rank}"),
        }
    }
}

/// Parse `T<kind>/<rank>` or `K4 <term>`.
pub fn parse_kind_element(src: &str) -> Result<KindElement, String> {
    let s = src.trim();
    if let Some(term) = s.strip_prefix("K4") {
        let term = parse_term(term, &RankedAlphabet::binary_ab()).map_err(|e: ParseError| e.message)?;
        return KindElement::kind4(term).map_err(|e| e.to_string());
    }
    let tag = s
        .strip_prefix('T')
        .and_then(|rest| rest.split_once('/'))
        .and_then(|(k, r)| Some((k.parse::<u8>().ok()?, r.parse::<usize>().ok()?)));
    match tag {
        Some((k, rank)) if (1..=3).contains(&k) => {
            KindElement::tag(Kind::from_number(k).expect("1..=3"), rank).map_err(|e| e.to_string())
        }
        _ => Err(format!("`{s}` is not a kind element (expected T<kind>/<rank> or K4 <term>)")),
    }
}

/// All linear binary terms over `{a, b}` with `rank` leaves, in a fixed order.
pub fn all_kind4_terms(rank: usize) -> Vec<Term<Letter>> {
    use crate::term::Node;
    let ab = RankedAlphabet::binary_ab();
    let letters: Vec<Letter> = ab.letters().to_vec();
    // shapes with `leaves` leaves; leaves are numbered left to right
    fn shapes(leaves: usize, letters: &[Letter]) -> Vec<Node<Letter>> {
        if leaves == 1 {
            return vec![Node::Port(0)];
        }
        let mut out = Vec::new();
        for left in 1..leaves {
            for l in shapes(left, letters) {
                for r in shapes(leaves - left, letters) {
                    for letter in letters {
                        out.push(Node::Inner(letter.clone(), vec![l.clone(), r.clone()]));
                    }
                }
            }
        }
        out
    }
    fn fill(node: &Node<Letter>, perm: &[usize], next: &mut usize) -> Node<Letter> {
        match node {
            Node::Port(_) => {
                *next += 1;
                Node::Port(perm[*next - 1])
            }
            Node::Inner(l, cs) => Node::Inner(l.clone(), cs.iter().map(|c| fill(c, perm, next)).collect()),
        }
    }
    if rank < 2 {
        return Vec::new();
    }
    let perms = permutations(rank);
    let mut out = Vec::new();
    for shape in shapes(rank, &letters) {
        for perm in &perms {
            let node = fill(&shape, perm, &mut 0);
            out.push(Term::new(node).expect("linear binary term"));
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn check_ab_letters<'a>(mut letters: impl Iterator<Item = &'a Letter>) -> Result<(), KindError> {
    match letters.find(|l| !matches!(l.name(), "a" | "b") || l.rank() != 2) {
        Some(l) => Err(KindError::WrongAlphabet(format!("{l:?}"))),
        None => Ok(()),
    }
}

/// The kind of a finite term. Finite terms over `{a, b}` have ports at all
/// leaves, so only kinds 3 and 4 occur.
pub fn classify(t: &Term<Letter>) -> Result<KindElement, KindError> {
    check_ab_letters(t.labels().into_iter())?;
    if t.is_linear() {
        Ok(KindElement::Kind4(t.clone()))
    } else {
        Ok(KindElement::Tag {
            kind: Kind::Three,
            rank: t.rank(),
        })
    }
}

/// The kind of the unfolding of a graph.
pub fn classify_graph(g: &TermGraph<Letter>) -> Result<KindElement, KindError> {
    check_ab_letters(g.letters())?;
    let rank = g.rank();
    if !g.every_subtree_has_port() {
        // a regular port-free subtree is never densely antiregular
        return Ok(KindElement::Tag { kind: Kind::One, rank });
    }
    if g.some_port_repeats() {
        return Ok(KindElement::Tag { kind: Kind::Three, rank });
    }
    let t = g.to_term().expect("ports are linear and everywhere, so the unfolding is finite");
    Ok(KindElement::Kind4(t))
}

/// Inputs on which the homomorphism into the algebra can be evaluated.
pub trait KindInput {
    fn input_rank(&self) -> usize;
    fn hom_h(&self) -> Result<KindElement, KindError>;
}

impl KindInput for Term<Letter> {
    fn input_rank(&self) -> usize {
        self.rank()
    }

    fn hom_h(&self) -> Result<KindElement, KindError> {
        classify(self)
    }
}

impl KindInput for TermGraph<Letter> {
    fn input_rank(&self) -> usize {
        self.rank()
    }

    fn hom_h(&self) -> Result<KindElement, KindError> {
        classify_graph(self)
    }
}

impl KindInput for LazyTree {
    fn input_rank(&self) -> usize {
        self.rank()
    }

    /// Needs a definite verdict at the default budgets.
    fn hom_h(&self) -> Result<KindElement, KindError> {
        let verdict = classify_lazy(self, DEFAULT_DEPTH_BUDGET, DEFAULT_WITNESS_BUDGET)?;
        match verdict.element {
            Some(e) if verdict.status == VerdictStatus::Definite => Ok(e),
            _ => Err(KindError::Undetermined(verdict.evidence)),
        }
    }
}

/// The homomorphism: kind-4 terms map to themselves, others to their tag.
pub fn hom_h<T: KindInput + ?Sized>(t: &T) -> Result<KindElement, KindError> {
    t.hom_h()
}

/// Membership in the language of densely antiregular trees, recognized as
/// the preimage of `{T2/0}`.
pub fn recognizes_densely_antiregular<T: KindInput + ?Sized>(t: &T) -> Result<bool, KindError> {
    if t.input_rank() != 0 {
        return Err(KindError::NonZeroRank(t.input_rank()));
    }
    Ok(t.hom_h()? == KindElement::Tag { kind: Kind::Two, rank: 0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexLabel;

    fn term(s: &str) -> Term<Letter> {
        parse_term(s, &RankedAlphabet::binary_ab()).unwrap()
    }

    #[test]
    fn classify_finite_terms() {
        assert_eq!(classify(&term("(a 1 2)")).unwrap(), KindElement::Kind4(term("(a 1 2)")));
        assert_eq!(classify(&term("(a 1 1)")).unwrap(), KindElement::tag(Kind::Three, 1).unwrap());
        assert_eq!(classify(&term("(b 2 1)")).unwrap().to_string(), "K4 (b 2 1)");
        let other = RankedAlphabet::new([("a", 2), ("c", 2)]).unwrap();
        let t = parse_term("(c 1 2)", &other).unwrap();
        assert!(matches!(classify(&t), Err(KindError::WrongAlphabet(_))));
    }

    #[test]
    fn classify_full_a_graph() {
        let a = RankedAlphabet::binary_ab().letter("a").unwrap().clone();
        let g = TermGraph::new(vec![VertexLabel::Letter(a)], vec![vec![0, 0]]).unwrap();
        assert_eq!(classify_graph(&g).unwrap(), KindElement::tag(Kind::One, 0).unwrap());
        // oracle: two distinct nodes share a subtree
        let classes = g.bisim_classes();
        assert_eq!(classes[g.successors(0)[0]], classes[0]);
        assert_eq!(recognizes_densely_antiregular(&g), Ok(false));
    }

    #[test]
    fn element_text_round_trip() {
        for e in KindElement::enumerate(3) {
            assert_eq!(parse_kind_element(&e.to_string()).unwrap(), e);
        }
        assert_eq!(parse_kind_element("T3/0"), Err(KindError::Kind3RankZero.to_string()));
        assert!(parse_kind_element("T4/2").is_err());
        assert!(parse_kind_element("K4 (a 1 1)").is_err());
        assert!(parse_kind_element("X").is_err());
    }

    #[test]
    fn kind4_counts() {
        // shapes (Catalan) * labellings * permutations
        assert_eq!(all_kind4_terms(2).len(), 2 * 2);
        assert_eq!(all_kind4_terms(3).len(), 2 * 4 * 6);
        assert_eq!(all_kind4_terms(4).len(), 5 * 8 * 24);
        assert!(all_kind4_terms(1).is_empty());
    }
}
