//! Parity games under the max-parity condition: a play is won by Even iff
//! the largest priority seen infinitely often is even.

mod brute;
mod pgsolver;
mod zielonka;

use std::fmt;

use thiserror::Error;

pub use brute::{solve_bruteforce, BRUTEFORCE_MAX_VERTICES};
pub use pgsolver::{pg_read, pg_write, read_solution, write_solution};
pub use zielonka::solve_zielonka;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("arena has no vertices")]
    Empty,
    #[error("vertex {0} has no outgoing edge")]
    DeadEnd(usize),
    #[error("edge {from} -> {to} leaves the arena")]
    BadEdge { from: usize, to: usize },
    #[error("arena has {vertices} vertices; brute force is limited to {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("strategy undefined at vertex {0}")]
    PartialStrategy(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Player {
    Even,
    Odd,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Even => Player::Odd,
            Player::Odd => Player::Even,
        }
    }

    /// The player favoured by a priority.
    pub fn of_priority(p: usize) -> Player {
        if p.is_multiple_of(2) {
            Player::Even
        } else {
            Player::Odd
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Even => "even",
            Player::Odd => "odd",
        })
    }
}

/// A finite arena in which every vertex has a successor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameArena {
    owner: Vec<Player>,
    priority: Vec<usize>,
    edges: Vec<Vec<usize>>,
    names: Vec<Option<String>>,
}

impl GameArena {
    pub fn new(owner: Vec<Player>, priority: Vec<usize>, edges: Vec<Vec<usize>>) -> Result<GameArena, GameError> {
        let n = owner.len();
        GameArena::with_names(owner, priority, edges, vec![None; n])
    }

    pub fn with_names(
        owner: Vec<Player>,
        priority: Vec<usize>,
        edges: Vec<Vec<usize>>,
        names: Vec<Option<String>>,
    ) -> Result<GameArena, GameError> {
        let n = owner.len();
        assert!(priority.len() == n && edges.len() == n && names.len() == n, "one entry per vertex");
        if n == 0 {
            return Err(GameError::Empty);
        }
        for (v, out) in edges.iter().enumerate() {
            if out.is_empty() {
                return Err(GameError::DeadEnd(v));
            }
            if let Some(&to) = out.iter().find(|&&w| w >= n) {
                return Err(GameError::BadEdge { from: v, to });
            }
        }
        Ok(GameArena {
            owner,
            priority,
            edges,
            names,
        })
    }

    pub fn len(&self) -> usize {
        self.owner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owner.is_empty()
    }

    pub fn owner(&self, v: usize) -> Player {
        self.owner[v]
    }

    pub fn priority(&self, v: usize) -> usize {
        self.priority[v]
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.edges[v]
    }

    pub fn name(&self, v: usize) -> Option<&str> {
        self.names[v].as_deref()
    }

    pub fn max_priority(&self) -> usize {
        self.priority.iter().copied().max().unwrap_or(0)
    }

    pub(crate) fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.len()];
        for (v, out) in self.edges.iter().enumerate() {
            for &w in out {
                pred[w].push(v);
            }
        }
        pred
    }
}

/// Winning regions and memoryless winning strategies.
///
/// `strategy[v]` is the winner's move at every winning vertex the winner owns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub winner: Vec<Player>,
    pub strategy: Vec<Option<usize>>,
}

impl Solution {
    pub fn region(&self, player: Player) -> Vec<usize> {
        (0..self.winner.len()).filter(|&v| self.winner[v] == player).collect()
    }

    pub fn region_mask(&self, player: Player) -> Vec<bool> {
        self.winner.iter().map(|&w| w == player).collect()
    }

    /// The strategy of `player` on its own winning vertices.
    pub fn strategy_of(&self, player: Player) -> Vec<Option<usize>> {
        self.strategy
            .iter()
            .zip(&self.winner)
            .map(|(&s, &w)| if w == player { s } else { None })
            .collect()
    }

    /// Check both strategies on their regions.
    pub fn verify(&self, arena: &GameArena) -> Result<bool, GameError> {
        for player in [Player::Even, Player::Odd] {
            if !verify_strategy(arena, player, &self.strategy_of(player), &self.region_mask(player))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Whether `strategy` wins for `player` from every vertex of `region`.
///
/// The opponent may take any edge. The strategy must be defined on every
/// vertex of `region` owned by `player`; it wins iff no play leaves the
/// region and every cycle of the strategy-restricted graph inside it has a
/// maximum priority of `player`'s parity.
pub fn verify_strategy(
    arena: &GameArena,
    player: Player,
    strategy: &[Option<usize>],
    region: &[bool],
) -> Result<bool, GameError> {
    let n = arena.len();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in (0..n).filter(|&v| region[v]) {
        if arena.owner(v) == player {
            let w = strategy.get(v).copied().flatten().ok_or(GameError::PartialStrategy(v))?;
            if !arena.successors(v).contains(&w) {
                return Ok(false);
            }
            succ[v] = vec![w];
        } else {
            succ[v] = arena.successors(v).to_vec();
        }
        if succ[v].iter().any(|&w| !region[w]) {
            return Ok(false);
        }
    }
    let bad = losing_cycle_vertices(arena, &succ, region, player.opponent());
    Ok(!bad.iter().any(|&b| b))
}

/// Vertices of `keep` lying on a cycle (within `succ`, inside `keep`) whose
/// largest priority favours `favoured`.
pub(crate) fn losing_cycle_vertices(
    arena: &GameArena,
    succ: &[Vec<usize>],
    keep: &[bool],
    favoured: Player,
) -> Vec<bool> {
    let n = arena.len();
    let mut out = vec![false; n];
    let mut priorities: Vec<usize> = (0..n)
        .filter(|&v| keep[v] && Player::of_priority(arena.priority(v)) == favoured)
        .map(|v| arena.priority(v))
        .collect();
    priorities.sort_unstable();
    priorities.dedup();
    for p in priorities {
        let below: Vec<bool> = (0..n).map(|v| keep[v] && arena.priority(v) <= p).collect();
        let comp = scc(succ, &below);
        for v in 0..n {
            if below[v] && arena.priority(v) == p {
                let c = comp[v];
                let cyclic = succ[v].iter().any(|&w| below[w] && comp[w] == c);
                if cyclic {
                    for u in 0..n {
                        if below[u] && comp[u] == c {
                            out[u] = true;
                        }
                    }
                }
            }
        }
    }
    out
}

/// Strongly connected components of the subgraph induced by `keep`
/// (Tarjan, iterative). Vertices outside `keep` get `usize::MAX`.
pub(crate) fn scc(succ: &[Vec<usize>], keep: &[bool]) -> Vec<usize> {
    let n = succ.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![usize::MAX; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    for root in 0..n {
        if !keep[root] || index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if let Some(&w) = succ[v].get(*i) {
                *i += 1;
                if !keep[w] {
                    continue;
                }
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    while let Some(w) = stack.pop() {
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn two_vertex() -> GameArena {
        GameArena::new(vec![Player::Even, Player::Odd], vec![1, 2], vec![vec![0, 1], vec![1]]).unwrap()
    }

    #[test]
    fn arena_validation() {
        assert_eq!(GameArena::new(vec![], vec![], vec![]), Err(GameError::Empty));
        assert_eq!(
            GameArena::new(vec![Player::Even], vec![0], vec![vec![]]),
            Err(GameError::DeadEnd(0))
        );
        assert_eq!(
            GameArena::new(vec![Player::Even], vec![0], vec![vec![3]]),
            Err(GameError::BadEdge { from: 0, to: 3 })
        );
    }

    #[test]
    fn strategy_checks() {
        let g = two_vertex();
        let all = [true, true];
        assert_eq!(verify_strategy(&g, Player::Even, &[Some(1), None], &all), Ok(true));
        // staying at v0 forever sees only priority 1
        assert_eq!(verify_strategy(&g, Player::Even, &[Some(0), None], &all), Ok(false));
        assert_eq!(
            verify_strategy(&g, Player::Even, &[None, None], &all),
            Err(GameError::PartialStrategy(0))
        );
        // a move that is not an edge
        let h = GameArena::new(vec![Player::Even, Player::Even], vec![0, 0], vec![vec![0], vec![1]]).unwrap();
        assert_eq!(verify_strategy(&h, Player::Even, &[Some(1), Some(1)], &[true, true]), Ok(false));
    }

    #[test]
    fn scc_of_a_cycle_and_a_tail() {
        let succ = vec![vec![1], vec![2], vec![1]];
        let c = scc(&succ, &[true, true, true]);
        assert_eq!(c[1], c[2]);
        assert_ne!(c[0], c[1]);
    }
}
