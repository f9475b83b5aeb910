use std::collections::VecDeque;

use super::{GameArena, Player, Solution};

struct Solver<'a> {
    arena: &'a GameArena,
    pred: Vec<Vec<usize>>,
}

/// Regions and strategies of a subgame, indexed like the arena.
struct Partial {
    win: [Vec<bool>; 2],
    strategy: Vec<Option<usize>>,
}

impl Solver<'_> {
    /// Attractor of `target` for `player` inside `within`; records a move
    /// into the attractor for each attracted vertex of `player` outside
    /// `target`.
    fn attractor(&self, within: &[bool], target: &[bool], player: Player, strategy: &mut [Option<usize>]) -> Vec<bool> {
        let n = self.arena.len();
        let mut attr: Vec<bool> = (0..n).map(|v| within[v] && target[v]).collect();
        let mut remaining: Vec<usize> = (0..n)
            .map(|v| self.arena.successors(v).iter().filter(|&&w| within[w]).count())
            .collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| attr[v]).collect();
        while let Some(w) = queue.pop_front() {
            for &u in &self.pred[w] {
                if !within[u] || attr[u] {
                    continue;
                }
                if self.arena.owner(u) == player {
                    attr[u] = true;
                    strategy[u] = Some(w);
                    queue.push_back(u);
                } else {
                    remaining[u] -= 1;
                    if remaining[u] == 0 {
                        attr[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
        attr
    }

    fn solve(&self, within: &[bool]) -> Partial {
        let n = self.arena.len();
        let mut out = Partial {
            win: [vec![false; n], vec![false; n]],
            strategy: vec![None; n],
        };
        let Some(p) = (0..n).filter(|&v| within[v]).map(|v| self.arena.priority(v)).max() else {
            return out;
        };
        let alpha = Player::of_priority(p);
        let beta = alpha.opponent();
        let top: Vec<bool> = (0..n).map(|v| within[v] && self.arena.priority(v) == p).collect();
        let mut attr_strategy = vec![None; n];
        let a = self.attractor(within, &top, alpha, &mut attr_strategy);
        let rest: Vec<bool> = (0..n).map(|v| within[v] && !a[v]).collect();
        let sub = self.solve(&rest);
        if !sub.win[beta.index()].iter().any(|&b| b) {
            for v in (0..n).filter(|&v| within[v]) {
                out.win[alpha.index()][v] = true;
                if self.arena.owner(v) != alpha {
                    continue;
                }
                out.strategy[v] = if rest[v] {
                    sub.strategy[v]
                } else if top[v] {
                    // any move inside the subgame keeps returning to the top priority
                    self.arena.successors(v).iter().copied().find(|&w| within[w])
                } else {
                    attr_strategy[v]
                };
            }
            return out;
        }
        let mut b_strategy = vec![None; n];
        let b = self.attractor(within, &sub.win[beta.index()], beta, &mut b_strategy);
        let rest2: Vec<bool> = (0..n).map(|v| within[v] && !b[v]).collect();
        let sub2 = self.solve(&rest2);
        for v in (0..n).filter(|&v| within[v]) {
            if b[v] {
                out.win[beta.index()][v] = true;
                if self.arena.owner(v) == beta {
                    out.strategy[v] = if sub.win[beta.index()][v] {
                        sub.strategy[v]
                    } else {
                        b_strategy[v]
                    };
                }
            } else {
                let w = if sub2.win[alpha.index()][v] { alpha } else { beta };
                out.win[w.index()][v] = true;
                if self.arena.owner(v) == w {
                    out.strategy[v] = sub2.strategy[v];
                }
            }
        }
        out
    }
}

/// Solve by Zielonka's recursive algorithm.
pub fn solve_zielonka(arena: &GameArena) -> Solution {
    let solver = Solver {
        arena,
        pred: arena.predecessors(),
    };
    let all = vec![true; arena.len()];
    let p = solver.solve(&all);
    let winner: Vec<Player> = (0..arena.len())
        .map(|v| {
            debug_assert!(p.win[0][v] != p.win[1][v], "regions partition the arena");
            if p.win[0][v] {
                Player::Even
            } else {
                Player::Odd
            }
        })
        .collect();
    Solution {
        winner,
        strategy: p.strategy,
    }
}
