use super::{losing_cycle_vertices, GameArena, GameError, Player, Solution};
use crate::graph::reachable_from;

pub const BRUTEFORCE_MAX_VERTICES: usize = 12;
/// Cap on the number of memoryless strategies enumerated per player.
const MAX_STRATEGIES: u64 = 1 << 22;

/// For each strategy of `player`, the set of vertices from which it wins
/// against every opponent behaviour; returns the union and a strategy whose
/// winning set is the union, if any.
fn best_strategy(arena: &GameArena, player: Player) -> Result<(Vec<bool>, Option<Vec<usize>>), GameError> {
    let n = arena.len();
    let own: Vec<usize> = (0..n).filter(|&v| arena.owner(v) == player).collect();
    let count = own
        .iter()
        .try_fold(1u64, |acc, &v| acc.checked_mul(arena.successors(v).len() as u64))
        .filter(|&c| c <= MAX_STRATEGIES)
        .ok_or(GameError::TooLarge {
            vertices: n,
            limit: BRUTEFORCE_MAX_VERTICES,
        })?;
    let everything = vec![true; n];
    let mut union = vec![false; n];
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut choice = vec![0usize; own.len()];
    for _ in 0..count {
        let mut succ: Vec<Vec<usize>> = (0..n).map(|v| arena.successors(v).to_vec()).collect();
        let mut sigma = vec![usize::MAX; n];
        for (i, &v) in own.iter().enumerate() {
            sigma[v] = arena.successors(v)[choice[i]];
            succ[v] = vec![sigma[v]];
        }
        let bad = losing_cycle_vertices(arena, &succ, &everything, player.opponent());
        // the strategy loses from v iff a bad cycle is reachable from v
        let wins: Vec<bool> = (0..n)
            .map(|v| !reachable_from(&succ, v).iter().zip(&bad).any(|(&r, &b)| r && b))
            .collect();
        let size = wins.iter().filter(|&&w| w).count();
        for (u, w) in union.iter_mut().zip(&wins) {
            *u |= *w;
        }
        if best.as_ref().is_none_or(|(s, _)| size > *s) {
            best = Some((size, sigma));
        }
        // next strategy, odometer style
        for (i, &v) in own.iter().enumerate() {
            choice[i] += 1;
            if choice[i] < arena.successors(v).len() {
                break;
            }
            choice[i] = 0;
        }
    }
    let union_size = union.iter().filter(|&&u| u).count();
    let uniform = best.and_then(|(s, sigma)| (s == union_size).then_some(sigma));
    Ok((union, uniform))
}

/// Solve by enumerating all memoryless strategies of both players.
///
/// Each player's winning region is the union of the regions won by its
/// individual strategies. Limited to small arenas.
pub fn solve_bruteforce(arena: &GameArena) -> Result<Solution, GameError> {
    if arena.len() > BRUTEFORCE_MAX_VERTICES {
        return Err(GameError::TooLarge {
            vertices: arena.len(),
            limit: BRUTEFORCE_MAX_VERTICES,
        });
    }
    let (even, even_sigma) = best_strategy(arena, Player::Even)?;
    let (odd, odd_sigma) = best_strategy(arena, Player::Odd)?;
    let n = arena.len();
    let mut winner = Vec::with_capacity(n);
    let mut strategy = vec![None; n];
    for v in 0..n {
        assert!(even[v] != odd[v], "memoryless determinacy violated at vertex {v}");
        let (w, sigma) = if even[v] {
            (Player::Even, &even_sigma)
        } else {
            (Player::Odd, &odd_sigma)
        };
        winner.push(w);
        if arena.owner(v) == w {
            strategy[v] = Some(sigma.as_ref().expect("a uniform winning strategy exists")[v]);
        }
    }
    Ok(Solution { winner, strategy })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::solve_zielonka;

    #[test]
    fn agrees_on_small_examples() {
        let games = [
            GameArena::new(vec![Player::Even], vec![0], vec![vec![0]]).unwrap(),
            GameArena::new(vec![Player::Even], vec![1], vec![vec![0]]).unwrap(),
            GameArena::new(vec![Player::Even, Player::Odd], vec![1, 2], vec![vec![0, 1], vec![1]]).unwrap(),
        ];
        for g in &games {
            let b = solve_bruteforce(g).unwrap();
            assert_eq!(b.winner, solve_zielonka(g).winner);
            assert_eq!(b.verify(g), Ok(true));
        }
    }

    #[test]
    fn too_large() {
        let n = BRUTEFORCE_MAX_VERTICES + 1;
        let g = GameArena::new(vec![Player::Even; n], vec![0; n], (0..n).map(|v| vec![v]).collect()).unwrap();
        assert!(matches!(solve_bruteforce(&g), Err(GameError::TooLarge { .. })));
    }
}
