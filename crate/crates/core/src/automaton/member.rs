use std::collections::HashMap;
use std::fmt;

use super::{AutomatonError, ParityAutomaton};
use crate::game::{losing_cycle_vertices, solve_zielonka, GameArena, Player, Solution};
use crate::graph::{TermGraph, VertexLabel};
use crate::term::{Letter, Ranked};

/// Positions of the acceptance game on a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Pos {
    /// Even picks a transition for state `q` at vertex `v`.
    Node { v: usize, q: usize },
    /// Odd picks a direction of transition `t` at `v`.
    Choice { v: usize, q: usize, t: usize },
    /// Even has no transition.
    StuckEven,
    /// Odd has no direction: a finite branch ended.
    StuckOdd,
}

struct AcceptanceGame {
    arena: GameArena,
    positions: Vec<Pos>,
    letters: Vec<usize>,
}

fn letter_indices(aut: &ParityAutomaton, g: &TermGraph<Letter>) -> Result<Vec<usize>, AutomatonError> {
    g.labels()
        .iter()
        .map(|l| match l {
            VertexLabel::Letter(letter) => aut.letter_index(letter),
            VertexLabel::Port(_) => Ok(usize::MAX),
        })
        .collect()
}

/// Game in which Even (the automaton) picks transitions and Odd (the
/// pathfinder) picks directions, from `(0, q)` for each `q` in `starts`.
fn acceptance_game(aut: &ParityAutomaton, g: &TermGraph<Letter>, starts: &[usize]) -> Result<AcceptanceGame, AutomatonError> {
    if g.rank() != 0 {
        return Err(AutomatonError::NonZeroRank(g.rank()));
    }
    let letters = letter_indices(aut, g)?;
    let mut index: HashMap<Pos, usize> = HashMap::new();
    let mut positions: Vec<Pos> = Vec::new();
    let mut intern = |p: Pos, positions: &mut Vec<Pos>| {
        *index.entry(p).or_insert_with(|| {
            positions.push(p);
            positions.len() - 1
        })
    };
    for &q in starts {
        intern(Pos::Node { v: 0, q }, &mut positions);
    }
    let (mut owner, mut priority, mut edges) = (Vec::new(), Vec::new(), Vec::new());
    let mut next = 0;
    while next < positions.len() {
        let p = positions[next];
        next += 1;
        let (o, pr, out): (Player, usize, Vec<usize>) = match p {
            Pos::Node { v, q } => {
                let ts = aut.transitions(letters[v], q);
                let out = if ts.is_empty() {
                    vec![intern(Pos::StuckEven, &mut positions)]
                } else {
                    (0..ts.len())
                        .map(|t| intern(Pos::Choice { v, q, t }, &mut positions))
                        .collect()
                };
                (Player::Even, aut.priority(q), out)
            }
            Pos::Choice { v, q, t } => {
                let to = &aut.transitions(letters[v], q)[t];
                let out = if to.is_empty() {
                    vec![intern(Pos::StuckOdd, &mut positions)]
                } else {
                    to.iter()
                        .zip(g.successors(v))
                        .map(|(&q2, &w)| intern(Pos::Node { v: w, q: q2 }, &mut positions))
                        .collect()
                };
                // priority 0 is neutral under the max condition
                (Player::Odd, 0, out)
            }
            Pos::StuckEven => (Player::Even, 1, vec![next - 1]),
            Pos::StuckOdd => (Player::Odd, 0, vec![next - 1]),
        };
        owner.push(o);
        priority.push(pr);
        edges.push(out);
    }
    let arena = GameArena::new(owner, priority, edges).expect("acceptance game is total");
    Ok(AcceptanceGame {
        arena,
        positions,
        letters,
    })
}

/// Whether the unfolding of `g` (rank 0) is accepted.
pub fn membership(aut: &ParityAutomaton, g: &TermGraph<Letter>) -> Result<bool, AutomatonError> {
    membership_from(aut, g, aut.initial())
}

/// Whether the unfolding of `g` is accepted when starting in state `q`.
pub fn membership_from(aut: &ParityAutomaton, g: &TermGraph<Letter>, q: usize) -> Result<bool, AutomatonError> {
    let game = acceptance_game(aut, g, &[q])?;
    Ok(solve_zielonka(&game.arena).winner[0] == Player::Even)
}

/// A node of a finite run annotation: graph vertex, state, and the
/// successor tuple chosen there with its run-node children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunNode {
    pub vertex: usize,
    pub state: usize,
    pub targets: Vec<usize>,
    pub children: Vec<usize>,
}

/// A finite graph whose unfolding is a run; node 0 is at the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub nodes: Vec<RunNode>,
}

impl Run {
    /// Render with state names, one node per line.
    pub fn display<'a>(&'a self, aut: &'a ParityAutomaton) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Run, &'a ParityAutomaton);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for (i, n) in self.0.nodes.iter().enumerate() {
                    write!(f, "{i}: vertex {} state {}", n.vertex, self.1.state_name(n.state))?;
                    for c in &n.children {
                        write!(f, " {c}")?;
                    }
                    writeln!(f)?;
                }
                Ok(())
            }
        }
        D(self, aut)
    }
}

/// An accepting run induced by the automaton's winning strategy, if the
/// tree is accepted.
pub fn extract_run(aut: &ParityAutomaton, g: &TermGraph<Letter>) -> Result<Option<Run>, AutomatonError> {
    let game = acceptance_game(aut, g, &[aut.initial()])?;
    let sol = solve_zielonka(&game.arena);
    if sol.winner[0] != Player::Even {
        return Ok(None);
    }
    Ok(Some(run_from_strategy(aut, &game, &sol)))
}

fn run_from_strategy(aut: &ParityAutomaton, game: &AcceptanceGame, sol: &Solution) -> Run {
    let mut ids: HashMap<usize, usize> = HashMap::new();
    let mut order = vec![0usize];
    ids.insert(0, 0);
    let mut nodes = Vec::new();
    let mut next = 0;
    while next < order.len() {
        let pos = order[next];
        next += 1;
        let Pos::Node { v, q } = game.positions[pos] else {
            unreachable!("only node positions are queued")
        };
        let choice = sol.strategy[pos].expect("winning strategy at an Even position");
        let Pos::Choice { t, .. } = game.positions[choice] else {
            unreachable!("Even never moves to a sink from its winning region")
        };
        let targets = aut.transitions(game.letters[v], q)[t].clone();
        let mut children = Vec::new();
        for &succ in game.arena.successors(choice) {
            if let Pos::Node { .. } = game.positions[succ] {
                let id = *ids.entry(succ).or_insert_with(|| {
                    order.push(succ);
                    order.len() - 1
                });
                children.push(id);
            }
        }
        nodes.push(RunNode {
            vertex: v,
            state: q,
            targets,
            children,
        });
    }
    Run { nodes }
}

/// Check a run annotation: it starts at the root in the initial state,
/// follows transitions and graph edges, and every cycle has an even
/// maximum priority.
pub fn verify_run(aut: &ParityAutomaton, g: &TermGraph<Letter>, run: &Run) -> Result<bool, AutomatonError> {
    let letters = letter_indices(aut, g)?;
    let Some(root) = run.nodes.first() else {
        return Ok(false);
    };
    if root.vertex != 0 || root.state != aut.initial() {
        return Ok(false);
    }
    for n in &run.nodes {
        if !aut.transitions(letters[n.vertex], n.state).contains(&n.targets) {
            return Ok(false);
        }
        if n.children.len() != n.targets.len() {
            return Ok(false);
        }
        for ((&c, &q), &w) in n.children.iter().zip(&n.targets).zip(g.successors(n.vertex)) {
            match run.nodes.get(c) {
                Some(child) if child.vertex == w && child.state == q => {}
                _ => return Ok(false),
            }
        }
    }
    // reuse the cycle analysis of games on the run graph
    let k = run.nodes.len();
    let arena = GameArena::new(
        vec![Player::Even; k],
        run.nodes.iter().map(|n| aut.priority(n.state)).collect(),
        run.nodes
            .iter()
            .enumerate()
            .map(|(i, n)| if n.children.is_empty() { vec![i] } else { n.children.clone() })
            .collect(),
    )
    .expect("run graph is total");
    let succ: Vec<Vec<usize>> = run.nodes.iter().map(|n| n.children.clone()).collect();
    let bad = losing_cycle_vertices(&arena, &succ, &vec![true; k], Player::Odd);
    Ok(!bad.iter().any(|&b| b))
}

/// Result of the emptiness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Emptiness {
    pub empty: bool,
    /// A regular accepted tree when the language is non-empty.
    pub witness: Option<TermGraph<Letter>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum EPos {
    State(usize),
    Choice { q: usize, letter: usize, t: usize },
    StuckEven,
    StuckOdd,
}

/// Decide emptiness by a game on states: Even picks a letter and a
/// transition, Odd a direction. A winning strategy of Even, being
/// memoryless, is a finite graph whose unfolding is accepted.
pub fn is_empty_with_witness(aut: &ParityAutomaton) -> Emptiness {
    let mut index: HashMap<EPos, usize> = HashMap::new();
    let mut positions: Vec<EPos> = Vec::new();
    let mut intern = |p: EPos, positions: &mut Vec<EPos>| {
        *index.entry(p).or_insert_with(|| {
            positions.push(p);
            positions.len() - 1
        })
    };
    intern(EPos::State(aut.initial()), &mut positions);
    let (mut owner, mut priority, mut edges) = (Vec::new(), Vec::new(), Vec::new());
    let mut next = 0;
    while next < positions.len() {
        let p = positions[next];
        next += 1;
        let (o, pr, out) = match p {
            EPos::State(q) => {
                let mut out = Vec::new();
                for letter in 0..aut.alphabet().letters().len() {
                    for t in 0..aut.transitions(letter, q).len() {
                        out.push(intern(EPos::Choice { q, letter, t }, &mut positions));
                    }
                }
                if out.is_empty() {
                    out.push(intern(EPos::StuckEven, &mut positions));
                }
                (Player::Even, aut.priority(q), out)
            }
            EPos::Choice { q, letter, t } => {
                let to = &aut.transitions(letter, q)[t];
                let out: Vec<usize> = if to.is_empty() {
                    vec![intern(EPos::StuckOdd, &mut positions)]
                } else {
                    to.iter().map(|&q2| intern(EPos::State(q2), &mut positions)).collect()
                };
                (Player::Odd, 0, out)
            }
            EPos::StuckEven => (Player::Even, 1, vec![next - 1]),
            EPos::StuckOdd => (Player::Odd, 0, vec![next - 1]),
        };
        owner.push(o);
        priority.push(pr);
        edges.push(out);
    }
    let arena = GameArena::new(owner, priority, edges).expect("emptiness game is total");
    let sol = solve_zielonka(&arena);
    if sol.winner[0] != Player::Even {
        return Emptiness {
            empty: true,
            witness: None,
        };
    }
    // one graph vertex per state position reachable under the strategy
    let mut vid: HashMap<usize, usize> = HashMap::from([(0, 0)]);
    let mut order = vec![0usize];
    let mut labels = Vec::new();
    let mut succ = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let pos = order[i];
        i += 1;
        let choice = sol.strategy[pos].expect("Even moves in its winning region");
        let EPos::Choice { letter, .. } = positions[choice] else {
            unreachable!("Even never moves to a sink from its winning region")
        };
        labels.push(VertexLabel::Letter(aut.alphabet().letters()[letter].clone()));
        let mut out = Vec::new();
        for &s in arena.successors(choice) {
            if let EPos::State(_) = positions[s] {
                let id = *vid.entry(s).or_insert_with(|| {
                    order.push(s);
                    order.len() - 1
                });
                out.push(id);
            }
        }
        succ.push(out);
    }
    let witness = TermGraph::new(labels, succ).expect("strategy graph is a valid rank-0 graph");
    Emptiness {
        empty: false,
        witness: Some(witness),
    }
}
