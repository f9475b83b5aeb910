//! Profiles of runs on terms with ports.
//!
//! A run on a finite term labels letter nodes and port leaves with states.
//! Its profile is the root state together with, for every port occurrence
//! in depth-first order, the state at that leaf, the largest priority on
//! the path from the root to it (both ends included) and the port name.
//! Including both ends makes composition a plain running maximum.

use std::collections::BTreeSet;
use std::fmt;

use super::{membership_from, AutomatonError, ParityAutomaton};
use crate::graph::TermGraph;
use crate::term::{Letter, Node, Ranked, Term};

/// `(state, max priority, port)` for one port occurrence.
pub type Record = (usize, usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Profile {
    pub root: usize,
    pub records: Vec<Record>,
}

pub type ProfileSet = BTreeSet<Profile>;

/// A term label carrying the profile set of its term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfiledTerm {
    pub term: Term<Letter>,
    pub profiles: ProfileSet,
}

impl ProfiledTerm {
    /// The term with the profiles computed for it.
    pub fn new(aut: &ParityAutomaton, term: Term<Letter>) -> Result<ProfiledTerm, AutomatonError> {
        let profiles = profiles_finite(aut, &term)?;
        Ok(ProfiledTerm { term, profiles })
    }
}

impl Ranked for ProfiledTerm {
    fn rank(&self) -> usize {
        self.term.rank()
    }
}

impl fmt::Display for ProfiledTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} with {} profiles", self.term, self.profiles.len())
    }
}

impl Profile {
    /// The records as a set, forgetting occurrence order and multiplicity.
    pub fn record_set(&self) -> BTreeSet<Record> {
        self.records.iter().copied().collect()
    }

    pub fn display<'a>(&'a self, aut: &'a ParityAutomaton) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Profile, &'a ParityAutomaton);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "<{};", self.1.state_name(self.0.root))?;
                for (i, &(q, m, p)) in self.0.records.iter().enumerate() {
                    let sep = if i == 0 { " " } else { ", " };
                    write!(f, "{sep}({},{m},{p})", self.1.state_name(q))?;
                }
                f.write_str(">")
            }
        }
        D(self, aut)
    }
}

fn node_profiles(aut: &ParityAutomaton, node: &Node<Letter>) -> Result<ProfileSet, AutomatonError> {
    match node {
        Node::Port(i) => Ok((0..aut.state_count())
            .map(|q| Profile {
                root: q,
                records: vec![(q, aut.priority(q), *i)],
            })
            .collect()),
        Node::Inner(letter, children) => {
            let li = aut.letter_index(letter)?;
            let child_sets = children
                .iter()
                .map(|c| node_profiles(aut, c))
                .collect::<Result<Vec<_>, _>>()?;
            let mut out = ProfileSet::new();
            for q in 0..aut.state_count() {
                let pq = aut.priority(q);
                for targets in aut.transitions(li, q) {
                    let mut partial: Vec<Vec<Record>> = vec![Vec::new()];
                    for (set, &target) in child_sets.iter().zip(targets) {
                        let mut grown = Vec::new();
                        for prefix in &partial {
                            for p in set.iter().filter(|p| p.root == target) {
                                let mut r = prefix.clone();
                                r.extend(p.records.iter().map(|&(s, m, port)| (s, m.max(pq), port)));
                                grown.push(r);
                            }
                        }
                        partial = grown;
                    }
                    out.extend(partial.into_iter().map(|records| Profile { root: q, records }));
                }
            }
            Ok(out)
        }
    }
}

/// Profiles of all runs on a finite term.
pub fn profiles_finite(aut: &ParityAutomaton, t: &Term<Letter>) -> Result<ProfileSet, AutomatonError> {
    node_profiles(aut, t.root())
}

/// Profiles of a rank-0 regular tree: one port-free profile per state
/// from which the tree is accepted.
pub fn profiles_regular(aut: &ParityAutomaton, g: &TermGraph<Letter>) -> Result<ProfileSet, AutomatonError> {
    let mut out = ProfileSet::new();
    for q in 0..aut.state_count() {
        if membership_from(aut, g, q)? {
            out.insert(Profile {
                root: q,
                records: Vec::new(),
            });
        }
    }
    Ok(out)
}

fn check_shape(aut: &ParityAutomaton, t: &Term<Letter>, set: &ProfileSet) -> Result<(), AutomatonError> {
    let ports = t.ports();
    for p in set {
        let names: Vec<usize> = p.records.iter().map(|r| r.2).collect();
        if names != ports {
            return Err(AutomatonError::ShapeMismatch(format!(
                "profile ports {names:?} do not match the ports {ports:?} of {t}"
            )));
        }
        if p.root >= aut.state_count() || p.records.iter().any(|r| r.0 >= aut.state_count()) {
            return Err(AutomatonError::ShapeMismatch("profile mentions an unknown state".into()));
        }
    }
    Ok(())
}

/// Compose profiles along a term whose nodes carry terms and their profile
/// sets: every port occurrence of a label is continued by an independent
/// run on the corresponding child, starting in the recorded state.
pub fn profile_product(aut: &ParityAutomaton, t: &Term<ProfiledTerm>) -> Result<ProfileSet, AutomatonError> {
    fn go(aut: &ParityAutomaton, node: &Node<ProfiledTerm>) -> Result<ProfileSet, AutomatonError> {
        let Node::Inner(ProfiledTerm { term: s, profiles: set }, children) = node else {
            unreachable!("ports are handled by their parent")
        };
        check_shape(aut, s, set)?;
        let child_sets: Vec<Option<ProfileSet>> = children
            .iter()
            .map(|c| match c {
                Node::Port(_) => Ok(None),
                inner => go(aut, inner).map(Some),
            })
            .collect::<Result<_, _>>()?;
        let mut out = ProfileSet::new();
        for p in set {
            let mut partial: Vec<Vec<Record>> = vec![Vec::new()];
            for &(state, m, j) in &p.records {
                let mut grown = Vec::new();
                match (&children[j - 1], &child_sets[j - 1]) {
                    (Node::Port(i), _) => {
                        for prefix in &mut partial {
                            prefix.push((state, m, *i));
                        }
                        continue;
                    }
                    (_, Some(cs)) => {
                        for prefix in &partial {
                            for c in cs.iter().filter(|c| c.root == state) {
                                let mut r = prefix.clone();
                                r.extend(c.records.iter().map(|&(s2, m2, port)| (s2, m2.max(m), port)));
                                grown.push(r);
                            }
                        }
                    }
                    (_, None) => unreachable!("inner children have profile sets"),
                }
                partial = grown;
            }
            out.extend(partial.into_iter().map(|records| Profile { root: p.root, records }));
        }
        Ok(out)
    }
    go(aut, t.root())
}
