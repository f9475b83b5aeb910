//! Nondeterministic parity tree automata.
//!
//! A run labels every node with a state so that the root gets the initial
//! state and each node with letter `σ` and state `q` has children states
//! `(q₁, …, qₖ)` with `(q, (q₁, …, qₖ)) ∈ δ_σ`. It is accepting when on
//! every infinite branch the largest priority seen infinitely often is even.
//!
//! Text format, statements ending in `;`, `#` comments:
//!
//! ```text
//! alphabet a:2 b:2;          # optional, defaults to a:2 b:2
//! states q0 qa qb;
//! init q0;
//! priority q0=0 qa=1 qb=2;   # unlisted states get 0
//! a: q0 -> qa qb;
//! c: q0 -> ;                 # a rank-0 letter
//! ```

mod member;
mod profile;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::term::{Letter, Ranked, RankedAlphabet, TermError};
use crate::text::parse_alphabet;

pub use member::{extract_run, is_empty_with_witness, membership, membership_from, verify_run, Emptiness, Run, RunNode};
pub use profile::{profile_product, profiles_finite, profiles_regular, Profile, ProfileSet, ProfiledTerm, Record};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("automaton has no states")]
    NoStates,
    #[error("state `{0}` declared twice")]
    DuplicateState(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("letter `{0}` is not in the alphabet")]
    UnknownLetter(String),
    #[error("letter `{letter}` has rank {rank} but the transition lists {found} states")]
    ArityMismatch { letter: String, rank: usize, found: usize },
    #[error("letter `{0}` is not in the automaton's alphabet")]
    AlphabetMismatch(String),
    #[error("expected a tree of rank 0, found rank {0}")]
    NonZeroRank(usize),
    #[error("profile shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Term(#[from] TermError),
}

/// A nondeterministic parity tree automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityAutomaton {
    alphabet: RankedAlphabet,
    states: Vec<String>,
    initial: usize,
    priority: Vec<usize>,
    /// Keyed by (letter index, source state); successor tuples sorted.
    delta: BTreeMap<(usize, usize), Vec<Vec<usize>>>,
}

impl ParityAutomaton {
    pub fn new(
        alphabet: RankedAlphabet,
        states: Vec<String>,
        initial: usize,
        priority: Vec<usize>,
        transitions: Vec<(Letter, usize, Vec<usize>)>,
    ) -> Result<ParityAutomaton, AutomatonError> {
        if states.is_empty() {
            return Err(AutomatonError::NoStates);
        }
        let mut seen = BTreeSet::new();
        if let Some(dup) = states.iter().find(|s| !seen.insert(s.as_str())) {
            return Err(AutomatonError::DuplicateState(dup.clone()));
        }
        assert_eq!(priority.len(), states.len(), "one priority per state");
        let n = states.len();
        if initial >= n {
            return Err(AutomatonError::UnknownState(format!("#{initial}")));
        }
        let mut delta: BTreeMap<(usize, usize), Vec<Vec<usize>>> = BTreeMap::new();
        for (letter, from, to) in transitions {
            let li = alphabet
                .letters()
                .iter()
                .position(|l| *l == letter)
                .ok_or_else(|| AutomatonError::UnknownLetter(letter.name().to_string()))?;
            if to.len() != letter.rank() {
                return Err(AutomatonError::ArityMismatch {
                    letter: letter.name().to_string(),
                    rank: letter.rank(),
                    found: to.len(),
                });
            }
            if let Some(&bad) = std::iter::once(&from).chain(&to).find(|&&q| q >= n) {
                return Err(AutomatonError::UnknownState(format!("#{bad}")));
            }
            delta.entry((li, from)).or_default().push(to);
        }
        for tuples in delta.values_mut() {
            tuples.sort();
            tuples.dedup();
        }
        Ok(ParityAutomaton {
            alphabet,
            states,
            initial,
            priority,
            delta,
        })
    }

    pub fn alphabet(&self) -> &RankedAlphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state_name(&self, q: usize) -> &str {
        &self.states[q]
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn priority(&self, q: usize) -> usize {
        self.priority[q]
    }

    /// Position of a letter in the alphabet, matched by name and rank.
    pub fn letter_index(&self, letter: &Letter) -> Result<usize, AutomatonError> {
        self.alphabet
            .letters()
            .iter()
            .position(|l| l == letter)
            .ok_or_else(|| AutomatonError::AlphabetMismatch(letter.name().to_string()))
    }

    /// Successor tuples of `(q, …) ∈ δ_σ` for the letter at `letter_index`.
    pub fn transitions(&self, letter_index: usize, q: usize) -> &[Vec<usize>] {
        self.delta.get(&(letter_index, q)).map_or(&[], Vec::as_slice)
    }

    /// The automaton with one state of priority 0 accepting every tree.
    pub fn universal(alphabet: &RankedAlphabet) -> ParityAutomaton {
        let transitions = alphabet
            .letters()
            .iter()
            .map(|l| (l.clone(), 0, vec![0; l.rank()]))
            .collect();
        ParityAutomaton::new(alphabet.clone(), vec!["q".into()], 0, vec![0], transitions).expect("valid")
    }

    /// Trees over `{a:2, b:2}` without `b`.
    pub fn b_forbidden() -> ParityAutomaton {
        let alphabet = RankedAlphabet::binary_ab();
        let a = alphabet.letter("a").unwrap().clone();
        ParityAutomaton::new(alphabet, vec!["q".into()], 0, vec![0], vec![(a, 0, vec![0, 0])]).expect("valid")
    }

    /// Trees over `{a:2, b:2}` in which every branch sees `b` infinitely often.
    ///
    /// The state records the letter just read: `qa` (priority 1) after `a`,
    /// `qb` (priority 2) after `b`; `q0` (priority 0) is initial.
    pub fn b_infinitely_often() -> ParityAutomaton {
        let alphabet = RankedAlphabet::binary_ab();
        let a = alphabet.letter("a").unwrap().clone();
        let b = alphabet.letter("b").unwrap().clone();
        let (q0, qa, qb) = (0, 1, 2);
        let mut transitions = Vec::new();
        for (letter, own) in [(a, qa), (b, qb)] {
            for from in [q0, own] {
                for x in [qa, qb] {
                    for y in [qa, qb] {
                        transitions.push((letter.clone(), from, vec![x, y]));
                    }
                }
            }
        }
        ParityAutomaton::new(
            alphabet,
            vec!["q0".into(), "qa".into(), "qb".into()],
            q0,
            vec![0, 1, 2],
            transitions,
        )
        .expect("valid")
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> AutomatonError {
    AutomatonError::Parse {
        line,
        message: message.into(),
    }
}

/// Parse the automaton text format.
pub fn parse_automaton(src: &str) -> Result<ParityAutomaton, AutomatonError> {
    // statements with their starting line
    let mut stmts = Vec::new();
    let mut current = String::new();
    let mut start = 1;
    for (i, line) in src.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("");
        for (j, part) in content.split(';').enumerate() {
            if j > 0 {
                stmts.push((start, std::mem::take(&mut current)));
            }
            if current.trim().is_empty() && !part.trim().is_empty() {
                start = i + 1;
            }
            current.push_str(part);
            current.push(' ');
        }
    }
    if !current.trim().is_empty() {
        return Err(parse_error(start, "statement is missing its `;`"));
    }

    let mut alphabet = None;
    let mut states: Option<Vec<String>> = None;
    let mut initial = None;
    let mut priorities: Vec<(usize, String, usize)> = Vec::new();
    let mut raw_transitions: Vec<(usize, String, String, Vec<String>)> = Vec::new();
    for (line, stmt) in stmts {
        let stmt = stmt.trim();
        if stmt.is_empty() {
            continue;
        }
        let (head, rest) = stmt.split_once(char::is_whitespace).unwrap_or((stmt, ""));
        match head {
            "alphabet" => {
                if alphabet.is_some() || states.is_some() {
                    return Err(parse_error(line, "`alphabet` must come once, first"));
                }
                alphabet = Some(parse_alphabet(stmt).map_err(|m| parse_error(line, m))?);
            }
            "states" => {
                if states.is_some() {
                    return Err(parse_error(line, "`states` given twice"));
                }
                states = Some(rest.split_whitespace().map(str::to_string).collect());
            }
            "init" => {
                let name = rest.trim();
                if name.is_empty() || name.contains(char::is_whitespace) {
                    return Err(parse_error(line, "`init` takes one state"));
                }
                initial = Some((line, name.to_string()));
            }
            "priority" => {
                for item in rest.split_whitespace() {
                    let (q, p) = item
                        .split_once('=')
                        .ok_or_else(|| parse_error(line, format!("expected state=priority, found `{item}`")))?;
                    let p = p
                        .parse::<usize>()
                        .map_err(|_| parse_error(line, format!("bad priority `{p}`")))?;
                    priorities.push((line, q.to_string(), p));
                }
            }
            _ => {
                let (letter, body) = stmt
                    .split_once(':')
                    .ok_or_else(|| parse_error(line, format!("unknown statement `{head}`")))?;
                let (from, to) = body
                    .split_once("->")
                    .ok_or_else(|| parse_error(line, "expected `<letter>: <state> -> <states>`"))?;
                raw_transitions.push((
                    line,
                    letter.trim().to_string(),
                    from.trim().to_string(),
                    to.split_whitespace().map(str::to_string).collect(),
                ));
            }
        }
    }
    let alphabet = alphabet.unwrap_or_else(RankedAlphabet::binary_ab);
    let states = states.ok_or_else(|| parse_error(1, "missing `states` statement"))?;
    let index = |line: usize, name: &str| {
        states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| parse_error(line, format!("unknown state `{name}`")))
    };
    let (init_line, init_name) = initial.ok_or_else(|| parse_error(1, "missing `init` statement"))?;
    let initial = index(init_line, &init_name)?;
    let mut priority = vec![0; states.len()];
    for (line, q, p) in priorities {
        priority[index(line, &q)?] = p;
    }
    let mut transitions = Vec::new();
    for (line, letter, from, to) in raw_transitions {
        let l = alphabet
            .letter(&letter)
            .ok_or_else(|| parse_error(line, format!("letter `{letter}` is not in the alphabet")))?
            .clone();
        if l.rank() != to.len() {
            return Err(parse_error(
                line,
                format!("letter `{letter}` has rank {} but {} target states", l.rank(), to.len()),
            ));
        }
        let from = index(line, &from)?;
        let to = to.iter().map(|q| index(line, q)).collect::<Result<Vec<_>, _>>()?;
        transitions.push((l, from, to));
    }
    ParityAutomaton::new(alphabet, states, initial, priority, transitions).map_err(|e| parse_error(1, e.to_string()))
}

impl fmt::Display for ParityAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{};", self.alphabet)?;
        writeln!(f, "states {};", self.states.join(" "))?;
        writeln!(f, "init {};", self.states[self.initial])?;
        let pr: Vec<String> = self
            .states
            .iter()
            .zip(&self.priority)
            .map(|(q, p)| format!("{q}={p}"))
            .collect();
        writeln!(f, "priority {};", pr.join(" "))?;
        for (&(li, q), tuples) in &self.delta {
            let letter = &self.alphabet.letters()[li];
            for to in tuples {
                write!(f, "{letter}: {} ->", self.states[q])?;
                for &t in to {
                    write!(f, " {}", self.states[t])?;
                }
                writeln!(f, ";")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let src = "alphabet a:2 b:2;\nstates q0 qa qb;\ninit q0;\npriority q0=0 qa=1 qb=2;\na: q0 -> qa qb;\nb: qb -> qb qb;\n";
        let aut = parse_automaton(src).unwrap();
        assert_eq!(aut.to_string(), src);
        let b = ParityAutomaton::b_infinitely_often();
        assert_eq!(parse_automaton(&b.to_string()).unwrap(), b);
    }

    #[test]
    fn defaults_and_rank_zero_letters() {
        let aut = parse_automaton("alphabet c:0 f:1;\nstates q; init q; c: q -> ; f: q -> q;").unwrap();
        assert_eq!(aut.priority(0), 0);
        let c = aut.alphabet().letter("c").unwrap().clone();
        assert_eq!(aut.transitions(aut.letter_index(&c).unwrap(), 0), &[Vec::<usize>::new()]);
        let ab = parse_automaton("states q;\ninit q;\n").unwrap();
        assert_eq!(ab.alphabet(), &RankedAlphabet::binary_ab());
    }

    #[test]
    fn errors() {
        let e = parse_automaton("states q;\ninit q;\na: q -> q;\n").unwrap_err();
        assert!(matches!(e, AutomatonError::Parse { line: 3, .. }), "{e:?}");
        assert!(parse_automaton("states q;\ninit r;\n").is_err());
        assert!(parse_automaton("states q;\ninit q;\nc: q -> q q;\n").is_err());
        assert!(parse_automaton("states q;\ninit q").is_err());
        assert!(parse_automaton("init q;\n").is_err());
        assert!(parse_automaton("states q q;\ninit q;\n").is_err());
    }
}
