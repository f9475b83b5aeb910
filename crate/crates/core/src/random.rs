//! Seeded random generators for terms, graphs, games and automata.
//!
//! All generators take an explicit RNG; [`seeded`] gives the reproducible
//! ChaCha8 stream used by the suites and the CLI.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::ParityAutomaton;
use crate::game::{GameArena, Player};
use crate::graph::{TermGraph, VertexLabel};
use crate::kind::{Kind, KindElement};
use crate::term::{Letter, Node, Ranked, RankedAlphabet, Term};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ab() -> (Letter, Letter) {
    let alphabet = RankedAlphabet::binary_ab();
    (alphabet.letter("a").unwrap().clone(), alphabet.letter("b").unwrap().clone())
}

fn random_ab_letter<R: Rng + ?Sized>(rng: &mut R) -> Letter {
    let (a, b) = ab();
    if rng.random_bool(0.5) {
        a
    } else {
        b
    }
}

/// Replace the `Port(0)` placeholders of `node` (in depth-first order) by
/// ports `1..=rank`, each used at least once.
fn assign_ports<L, R: Rng + ?Sized>(node: Node<L>, rank: usize, rng: &mut R) -> Node<L> {
    fn count<L>(n: &Node<L>) -> usize {
        match n {
            Node::Port(_) => 1,
            Node::Inner(_, cs) => cs.iter().map(count).sum(),
        }
    }
    fn fill<L>(n: Node<L>, ports: &mut std::vec::IntoIter<usize>) -> Node<L> {
        match n {
            Node::Port(_) => Node::Port(ports.next().expect("one port per placeholder")),
            Node::Inner(l, cs) => Node::Inner(l, cs.into_iter().map(|c| fill(c, ports)).collect()),
        }
    }
    let slots = count(&node);
    assert!(rank <= slots && (rank > 0 || slots == 0));
    let mut ports: Vec<usize> = (1..=rank).collect();
    while ports.len() < slots {
        ports.push(rng.random_range(1..=rank));
    }
    ports.shuffle(rng);
    fill(node, &mut ports.into_iter())
}

/// Pick a rank for `slots` placeholders: all distinct with probability
/// `linear`, otherwise uniform.
fn pick_rank<R: Rng + ?Sized>(rng: &mut R, slots: usize, linear: f64) -> usize {
    if slots == 0 {
        0
    } else if rng.random_bool(linear) {
        slots
    } else {
        rng.random_range(1..=slots)
    }
}

fn binary_shape<R: Rng + ?Sized>(rng: &mut R, inner: usize) -> Node<Letter> {
    if inner == 0 {
        return Node::Port(0);
    }
    let left = rng.random_range(0..inner);
    let l = binary_shape(rng, left);
    let r = binary_shape(rng, inner - 1 - left);
    Node::Inner(random_ab_letter(rng), vec![l, r])
}

/// A finite term over `{a:2, b:2}` of the given rank (at least 1); with
/// probability `linear_bias` (and rank at least 2) it is of kind 4.
pub fn random_ab_term<R: Rng + ?Sized>(rng: &mut R, rank: usize, linear_bias: f64) -> Term<Letter> {
    assert!(rank >= 1);
    let min_inner = (rank - 1).max(1);
    let inner = if rank >= 2 && rng.random_bool(linear_bias) {
        rank - 1
    } else {
        rng.random_range(min_inner..=min_inner + 2)
    };
    let shape = binary_shape(rng, inner);
    Term::new(assign_ports(shape, rank, rng)).expect("valid random term")
}

/// A uniformly random kind-4 term of the given rank (at least 2).
pub fn random_kind4<R: Rng + ?Sized>(rng: &mut R, rank: usize) -> Term<Letter> {
    random_ab_term(rng, rank, 1.0)
}

/// Grow a random tree. `pick(rng, depth_left, is_root)` returns `None` for
/// a port placeholder; the root must be a label.
fn grow<L: Ranked, R: Rng + ?Sized>(
    rng: &mut R,
    depth: usize,
    root: bool,
    pick: &mut impl FnMut(&mut R, usize, bool) -> Option<L>,
) -> Node<L> {
    match pick(rng, depth, root) {
        None => {
            assert!(!root, "the root must carry a label");
            Node::Port(0)
        }
        Some(l) => {
            let children = (0..l.rank())
                .map(|_| grow(rng, depth.saturating_sub(1), false, pick))
                .collect();
            Node::Inner(l, children)
        }
    }
}

fn finish<L: Ranked + std::fmt::Display, R: Rng + ?Sized>(rng: &mut R, node: Node<L>, linear: f64) -> Term<L> {
    fn count<L>(n: &Node<L>) -> usize {
        match n {
            Node::Port(_) => 1,
            Node::Inner(_, cs) => cs.iter().map(count).sum(),
        }
    }
    let rank = pick_rank(rng, count(&node), linear);
    Term::new(assign_ports(node, rank, rng)).expect("valid random term")
}

fn label_rank<R: Rng + ?Sized>(rng: &mut R) -> usize {
    match rng.random_range(0..10) {
        0..=1 => 1,
        2..=6 => 2,
        _ => 3,
    }
}

/// A finite term over finite terms over `{a, b}`, outer depth at most `max_depth`.
pub fn random_nested_term<R: Rng + ?Sized>(rng: &mut R, max_depth: usize) -> Term<Term<Letter>> {
    let depth = rng.random_range(0..=max_depth);
    let node = grow(rng, depth, true, &mut |rng: &mut R, left, root| {
        if root || (left > 0 && rng.random_bool(0.5)) {
            let k = label_rank(rng);
            Some(random_ab_term(rng, k, 0.7))
        } else {
            None
        }
    });
    finish(rng, node, 0.5)
}

/// A valid kind element of the given rank; kinds weighted towards 3 and 4.
pub fn random_kind_element<R: Rng + ?Sized>(rng: &mut R, rank: usize) -> KindElement {
    let roll = rng.random_range(0..100);
    let kind = match roll {
        0..=3 => Kind::One,
        4..=17 => Kind::Two,
        18..=45 => Kind::Three,
        _ => Kind::Four,
    };
    match (kind, rank) {
        (Kind::Four, r) if r >= 2 => KindElement::Kind4(random_kind4(rng, r)),
        (Kind::Four | Kind::Three, 0) => KindElement::Tag { kind: Kind::Two, rank: 0 },
        (Kind::Four, r) => KindElement::Tag { kind: Kind::Three, rank: r },
        (k, r) => KindElement::Tag { kind: k, rank: r },
    }
}

/// A finite term over kind elements (a term in the free clone over the algebra).
pub fn random_ca_term<R: Rng + ?Sized>(rng: &mut R, max_depth: usize) -> Term<KindElement> {
    let depth = rng.random_range(0..=max_depth);
    let node = grow(rng, depth, true, &mut |rng: &mut R, left, root| {
        let roll = rng.random_range(0..100);
        if root || (left > 0 && roll < 45) {
            let k = label_rank(rng);
            Some(random_kind_element(rng, k))
        } else if roll < 88 {
            None
        } else if roll < 98 {
            Some(KindElement::Tag { kind: Kind::Two, rank: 0 })
        } else {
            Some(KindElement::Tag { kind: Kind::One, rank: 0 })
        }
    });
    finish(rng, node, 0.5)
}

/// A finite term over finite terms over kind elements.
pub fn random_cca_term<R: Rng + ?Sized>(rng: &mut R, max_depth: usize) -> Term<Term<KindElement>> {
    let depth = rng.random_range(0..=max_depth);
    let node = grow(rng, depth, true, &mut |rng: &mut R, left, root| {
        if root || (left > 0 && rng.random_bool(0.45)) {
            Some(random_ca_term(rng, 2))
        } else {
            None
        }
    });
    finish(rng, node, 0.5)
}

/// Build a graph from per-vertex labels by drawing successors with `succ`
/// and rejection-sampling until every vertex is reachable from the root.
fn sample_graph<L: Ranked + Clone + std::fmt::Display, R: Rng + ?Sized>(
    rng: &mut R,
    labels: &[VertexLabel<L>],
    mut succ: impl FnMut(&mut R, usize) -> usize,
) -> Option<TermGraph<L>> {
    for _ in 0..200 {
        let edges: Vec<Vec<usize>> = labels
            .iter()
            .enumerate()
            .map(|(v, l)| (0..l.arity()).map(|_| succ(rng, v)).collect())
            .collect();
        if let Ok(g) = TermGraph::new(labels.to_vec(), edges) {
            return Some(g);
        }
    }
    None
}

/// A random rank-0 graph over `{a, b}` with at most `max_vertices`
/// vertices: uniform labels, uniform successors, resampled until every
/// vertex is reachable.
pub fn random_rank0_graph<R: Rng + ?Sized>(rng: &mut R, max_vertices: usize) -> TermGraph<Letter> {
    loop {
        let n = rng.random_range(1..=max_vertices.max(1));
        let labels: Vec<_> = (0..n).map(|_| VertexLabel::Letter(random_ab_letter(rng))).collect();
        if let Some(g) = sample_graph(rng, &labels, |rng, _| rng.random_range(0..n)) {
            return g;
        }
    }
}

/// A random graph over `{a, b}` of the given rank (at least 1) with at
/// most `max_vertices` vertices. With probability `acyclic` successors only
/// point forward, so every subtree has a port.
pub fn random_ab_graph<R: Rng + ?Sized>(rng: &mut R, rank: usize, max_vertices: usize, acyclic: f64) -> TermGraph<Letter> {
    assert!(rank >= 1 && max_vertices > rank);
    loop {
        let letters = rng.random_range(1..=max_vertices - rank);
        let n = letters + rank;
        let mut labels: Vec<_> = (0..letters).map(|_| VertexLabel::Letter(random_ab_letter(rng))).collect();
        labels.extend((1..=rank).map(VertexLabel::Port));
        let forward = rng.random_bool(acyclic);
        let g = sample_graph(rng, &labels, |rng, v| {
            if forward {
                rng.random_range(v + 1..n)
            } else {
                rng.random_range(0..n)
            }
        });
        if let Some(g) = g {
            return g;
        }
    }
}

/// A regular term whose labels are regular terms over `{a, b}`: at most
/// `outer_max` outer vertices and `label_max` vertices per label.
pub fn random_nested_graph<R: Rng + ?Sized>(
    rng: &mut R,
    outer_max: usize,
    label_max: usize,
) -> TermGraph<TermGraph<Letter>> {
    assert!(outer_max >= 2 && label_max >= 4);
    loop {
        let n = rng.random_range(1..=outer_max);
        let rank = if n == 1 { 0 } else { rng.random_range(0..=(n - 1).min(2)) };
        let letters = n - rank;
        let mut labels = Vec::with_capacity(n);
        for _ in 0..letters {
            let k = match rng.random_range(0..10) {
                0 => 0,
                1..=3 => 1,
                4..=7 => 2,
                _ => 3,
            };
            let label = if k == 0 {
                random_rank0_graph(rng, label_max)
            } else {
                let acyclic = if rng.random_bool(0.85) { 1.0 } else { 0.0 };
                random_ab_graph(rng, k, label_max.max(k + 1), acyclic)
            };
            labels.push(VertexLabel::Letter(label));
        }
        labels.extend((1..=rank).map(VertexLabel::Port));
        let forward = rng.random_bool(0.4);
        let g = sample_graph(rng, &labels, |rng, v| {
            if forward && v + 1 < n {
                rng.random_range(v + 1..n)
            } else {
                rng.random_range(0..n)
            }
        });
        if let Some(g) = g {
            return g;
        }
    }
}

/// A random total arena.
pub fn random_arena<R: Rng + ?Sized>(rng: &mut R, vertices: usize, max_priority: usize, max_degree: usize) -> GameArena {
    let owner = (0..vertices)
        .map(|_| if rng.random_bool(0.5) { Player::Even } else { Player::Odd })
        .collect();
    let priority = (0..vertices).map(|_| rng.random_range(0..=max_priority)).collect();
    let edges = (0..vertices)
        .map(|_| {
            let d = rng.random_range(1..=max_degree);
            let mut out: Vec<usize> = (0..d).map(|_| rng.random_range(0..vertices)).collect();
            out.sort_unstable();
            out.dedup();
            out
        })
        .collect();
    GameArena::new(owner, priority, edges).expect("random arena is total")
}

/// A random automaton over `alphabet` with `states` states and priorities
/// below `priorities`; each possible transition is present with
/// probability `density`.
pub fn random_automaton<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: &RankedAlphabet,
    states: usize,
    priorities: usize,
    density: f64,
) -> ParityAutomaton {
    let names: Vec<String> = (0..states).map(|i| format!("q{i}")).collect();
    let priority = (0..states).map(|_| rng.random_range(0..priorities)).collect();
    let mut transitions = Vec::new();
    for letter in alphabet.letters() {
        let k = letter.rank();
        let tuples = states.pow(k as u32);
        for q in 0..states {
            for mut code in 0..tuples {
                if !rng.random_bool(density) {
                    continue;
                }
                let mut children = Vec::with_capacity(k);
                for _ in 0..k {
                    children.push(code % states);
                    code /= states;
                }
                transitions.push((letter.clone(), q, children));
            }
        }
    }
    ParityAutomaton::new(alphabet.clone(), names, 0, priority, transitions).expect("valid random automaton")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        let a: Vec<String> = {
            let mut rng = seeded(7);
            (0..20).map(|_| random_nested_term(&mut rng, 5).to_string()).collect()
        };
        let b: Vec<String> = {
            let mut rng = seeded(7);
            (0..20).map(|_| random_nested_term(&mut rng, 5).to_string()).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn ab_terms_have_requested_rank() {
        let mut rng = seeded(1);
        for rank in 1..6 {
            for _ in 0..50 {
                assert_eq!(random_ab_term(&mut rng, rank, 0.5).rank(), rank);
            }
            if rank >= 2 {
                assert!(random_kind4(&mut rng, rank).is_linear());
            }
        }
    }

    #[test]
    fn graphs_respect_bounds() {
        let mut rng = seeded(3);
        for _ in 0..100 {
            let g = random_rank0_graph(&mut rng, 8);
            assert!(g.len() <= 8 && g.rank() == 0);
            let g = random_nested_graph(&mut rng, 6, 8);
            assert!(g.len() <= 6);
            assert!(g.letters().all(|l| l.len() <= 8));
        }
    }
}
