use std::collections::BTreeSet;
use std::fmt;

use super::{check_ab_letters, classify, Kind, KindElement, KindError};
use crate::antiregular::{antiregular_refute, word_string};
use crate::graph::{unfold_prefix, Certificate, LazyTree, Prefix};
use crate::term::{Letter, Node, Term};

pub const DEFAULT_DEPTH_BUDGET: usize = 10;
pub const DEFAULT_WITNESS_BUDGET: usize = 13;

/// Largest node depth the certificate spot-check explores.
const SPOT_CHECK_DEPTH: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictStatus {
    /// The kind is known (exactly, or by a trusted certificate).
    Definite,
    /// Some kinds were ruled out by the explored prefix.
    RefutedCandidates,
    /// Nothing beyond the rank-based candidates is known.
    Unknown,
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictStatus::Definite => "definite",
            VerdictStatus::RefutedCandidates => "refuted-candidates",
            VerdictStatus::Unknown => "unknown",
        })
    }
}

/// Outcome of classifying a lazy tree within budgets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialVerdict {
    pub kind: Option<Kind>,
    /// Present exactly when `status` is definite.
    pub element: Option<KindElement>,
    pub candidates: BTreeSet<Kind>,
    pub status: VerdictStatus,
    pub evidence: String,
}

impl PartialVerdict {
    fn definite(element: KindElement, evidence: String) -> PartialVerdict {
        PartialVerdict {
            kind: Some(element.kind()),
            candidates: BTreeSet::from([element.kind()]),
            element: Some(element),
            status: VerdictStatus::Definite,
            evidence,
        }
    }

    fn open(candidates: &[Kind], status: VerdictStatus, evidence: String) -> PartialVerdict {
        PartialVerdict {
            kind: None,
            element: None,
            candidates: candidates.iter().copied().collect(),
            status,
            evidence,
        }
    }
}

impl fmt::Display for PartialVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.element {
            Some(e) => write!(f, "{} {e}", self.status),
            None => {
                let c: Vec<String> = self.candidates.iter().map(Kind::to_string).collect();
                write!(f, "{} candidates {{{}}}", self.status, c.join(","))
            }
        }
    }
}

fn prefix_to_node(p: &Prefix<Letter>) -> Option<Node<Letter>> {
    match p {
        Prefix::Cut => None,
        Prefix::Port(i) => Some(Node::Port(*i)),
        Prefix::Node(l, cs) => Some(Node::Inner(
            l.clone(),
            cs.iter().map(prefix_to_node).collect::<Option<Vec<_>>>()?,
        )),
    }
}

fn collect_letters<'a>(p: &'a Prefix<Letter>, out: &mut Vec<&'a Letter>) {
    if let Prefix::Node(l, cs) = p {
        out.push(l);
        cs.iter().for_each(|c| collect_letters(c, out));
    }
}

/// Sound, partial classification of a lazy tree.
///
/// Explores all nodes up to `depth_budget`. The verdict is definite when
/// the tree turns out to be finite within the budget, or when it has rank 0
/// and carries an antiregularity certificate (then it is densely
/// antiregular, kind 2). A certified tree is additionally spot-checked by a
/// bounded refutation search with extensions of length `witness_budget`.
pub fn classify_lazy(t: &LazyTree, depth_budget: usize, witness_budget: usize) -> Result<PartialVerdict, KindError> {
    if depth_budget == 0 || witness_budget == 0 {
        return Err(KindError::BudgetZero);
    }
    let prefix = unfold_prefix(t, depth_budget);
    let mut letters = Vec::new();
    collect_letters(&prefix, &mut letters);
    check_ab_letters(letters.into_iter())?;

    if let Some(node) = prefix_to_node(&prefix) {
        let term = Term::new(node)?;
        let e = classify(&term)?;
        return Ok(PartialVerdict::definite(
            e,
            format!("finite tree fully explored within depth {depth_budget}"),
        ));
    }

    let ports = prefix.ports();
    if t.rank() == 0 {
        if !ports.is_empty() {
            return Err(KindError::Undetermined(format!(
                "tree declared rank 0 but has port {} in its prefix",
                ports[0]
            )));
        }
        if t.certificate() == Some(Certificate::AntiregularByConstruction) {
            let depth = depth_budget.min(SPOT_CHECK_DEPTH);
            return Ok(match antiregular_refute(t, depth, witness_budget) {
                None => PartialVerdict::definite(
                    KindElement::Tag { kind: Kind::Two, rank: 0 },
                    format!(
                        "certificate {}; no two nodes up to depth {depth} agree on extensions up to length {witness_budget}",
                        Certificate::AntiregularByConstruction
                    ),
                ),
                Some((u, v)) => PartialVerdict::open(
                    &[Kind::One, Kind::Two],
                    VerdictStatus::Unknown,
                    format!(
                        "certificate contradicted within budget: nodes `{}` and `{}` look alike",
                        word_string(&u),
                        word_string(&v)
                    ),
                ),
            });
        }
        return Ok(PartialVerdict::open(
            &[Kind::One, Kind::Two],
            VerdictStatus::Unknown,
            format!("rank 0 without certificate; explored to depth {depth_budget}"),
        ));
    }

    let mut seen = BTreeSet::new();
    if let Some(&p) = ports.iter().find(|&&p| !seen.insert(p)) {
        // kind 4 is ruled out; a port-free subtree may still hide below the budget
        return Ok(PartialVerdict::open(
            &[Kind::One, Kind::Two, Kind::Three],
            VerdictStatus::RefutedCandidates,
            format!("port {p} occurs twice within depth {depth_budget}"),
        ));
    }
    Ok(PartialVerdict::open(
        &[Kind::One, Kind::Two, Kind::Three, Kind::Four],
        VerdictStatus::Unknown,
        format!("no port repetition within depth {depth_budget}"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexLabel;
    use crate::term::RankedAlphabet;

    fn letter(name: &str) -> Letter {
        RankedAlphabet::binary_ab().letter(name).unwrap().clone()
    }

    #[test]
    fn uncertified_full_a_is_unknown() {
        let a = letter("a");
        let t = LazyTree::new("full-a", 0, move |_| VertexLabel::Letter(a.clone()), None);
        let v = classify_lazy(&t, 3, 3).unwrap();
        assert_eq!(v.status, VerdictStatus::Unknown);
        assert_eq!(v.candidates, BTreeSet::from([Kind::One, Kind::Two]));
        assert_eq!(v.to_string(), "unknown candidates {1,2}");
    }

    #[test]
    fn finite_tree_with_port_reuse() {
        // a(1, a(1, 2)): port 1 at [0] and again at [1,0]
        let a = letter("a");
        let t = LazyTree::new(
            "reuse",
            2,
            move |addr| match addr {
                [] | [1] => VertexLabel::Letter(a.clone()),
                [0] | [1, 0] => VertexLabel::Port(1),
                _ => VertexLabel::Port(2),
            },
            None,
        );
        let v = classify_lazy(&t, 4, 1).unwrap();
        assert_eq!(v.status, VerdictStatus::Definite);
        assert_eq!(v.element, Some(KindElement::Tag { kind: Kind::Three, rank: 2 }));
        // too shallow to see the second occurrence
        assert_eq!(classify_lazy(&t, 1, 1).unwrap().status, VerdictStatus::Unknown);
    }

    #[test]
    fn infinite_tree_with_port_reuse() {
        // a(1, a(1, a(1, ...)))
        let a = letter("a");
        let t = LazyTree::new(
            "comb",
            1,
            move |addr| match addr.last() {
                Some(0) => VertexLabel::Port(1),
                _ => VertexLabel::Letter(a.clone()),
            },
            None,
        );
        let v = classify_lazy(&t, 3, 1).unwrap();
        assert_eq!(v.status, VerdictStatus::RefutedCandidates);
        assert!(!v.candidates.contains(&Kind::Four));
    }

    #[test]
    fn zero_budget() {
        let a = letter("a");
        let t = LazyTree::new("full-a", 0, move |_| VertexLabel::Letter(a.clone()), None);
        assert_eq!(classify_lazy(&t, 0, 3), Err(KindError::BudgetZero));
        assert_eq!(classify_lazy(&t, 3, 0), Err(KindError::BudgetZero));
    }
}
