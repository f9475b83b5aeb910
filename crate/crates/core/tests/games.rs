use omegaclone::game::{
    pg_read, pg_write, read_solution, solve_bruteforce, solve_zielonka, write_solution, GameArena, GameError, Player,
};
use proptest::prelude::*;

fn arenas(max_vertices: usize) -> impl Strategy<Value = GameArena> {
    (1..=max_vertices).prop_flat_map(|n| {
        let vertex = (any::<bool>(), 0usize..6, proptest::collection::btree_set(0..n, 1..=3.min(n)));
        proptest::collection::vec(vertex, n).prop_map(|vs| {
            let owner = vs.iter().map(|v| if v.0 { Player::Odd } else { Player::Even }).collect();
            let priority = vs.iter().map(|v| v.1).collect();
            let edges = vs.into_iter().map(|v| v.2.into_iter().collect()).collect();
            GameArena::new(owner, priority, edges).unwrap()
        })
    })
}

/// Swap the players and shift every priority by one.
fn dual(a: &GameArena) -> GameArena {
    let n = a.len();
    GameArena::new(
        (0..n).map(|v| a.owner(v).opponent()).collect(),
        (0..n).map(|v| a.priority(v) + 1).collect(),
        (0..n).map(|v| a.successors(v).to_vec()).collect(),
    )
    .unwrap()
}

#[test]
fn example_games() {
    // Even at v0 escapes the odd self-loop to the even self-loop at v1
    let a = pg_read("parity 1;\n0 1 0 0,1;\n1 2 1 1;\n").unwrap();
    let s = solve_zielonka(&a);
    assert_eq!(s.winner, vec![Player::Even, Player::Even]);
    assert_eq!(s.strategy[0], Some(1));
    // an Odd vertex that can only loop on priority 3
    let a = pg_read("parity 0;\n0 3 0 0;\n").unwrap();
    assert_eq!(solve_zielonka(&a).winner, vec![Player::Odd]);
}

#[test]
fn malformed_games() {
    assert!(pg_read("parity 1;\n0 1 0 ;\n1 2 1 1;\n").is_err());
    assert!(pg_read("parity 0;\n0 1 2 0;\n").is_err());
    assert!(pg_read("parity 0;\n0 1 0 5;\n").is_err());
    assert!(matches!(GameArena::new(vec![Player::Even], vec![0], vec![vec![]]), Err(GameError::DeadEnd(0))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn zielonka_agrees_with_brute_force(a in arenas(6)) {
        let z = solve_zielonka(&a);
        let b = solve_bruteforce(&a).unwrap();
        prop_assert_eq!(&z.winner, &b.winner);
        prop_assert!(z.verify(&a).unwrap());
        prop_assert!(b.verify(&a).unwrap());
    }

    #[test]
    fn duality_swaps_winners(a in arenas(8)) {
        let s = solve_zielonka(&a);
        let d = solve_zielonka(&dual(&a));
        let swapped: Vec<Player> = s.winner.iter().map(|p| p.opponent()).collect();
        prop_assert_eq!(d.winner, swapped);
    }

    #[test]
    fn formats_round_trip(a in arenas(8)) {
        prop_assert_eq!(pg_read(&pg_write(&a)).unwrap(), a.clone());
        let s = solve_zielonka(&a);
        prop_assert_eq!(read_solution(&write_solution(&s), a.len()).unwrap(), s);
    }
}
