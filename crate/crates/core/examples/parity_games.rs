//! Parity games: Zielonka's algorithm, the brute-force oracle, strategy
//! verification and the pgsolver format.

use omegaclone::game::{pg_read, pg_write, solve_bruteforce, solve_zielonka, verify_strategy, write_solution, Player};
use omegaclone::random::{random_arena, seeded};

fn main() {
    let arena = pg_read("parity 1;\n0 1 0 0,1 \"v0\";\n1 2 1 1 \"v1\";\n").unwrap();
    let s = solve_zielonka(&arena);
    print!("{}", write_solution(&s));
    assert_eq!(s.winner, solve_bruteforce(&arena).unwrap().winner);

    // Even staying in v0 forever sees priority 1 only
    let stay = [Some(0), None];
    let ok = verify_strategy(&arena, Player::Even, &stay, &[true, false]).unwrap();
    println!("staying at v0 wins for Even: {ok}");

    let mut rng = seeded(7);
    let big = random_arena(&mut rng, 10, 5, 3);
    print!("{}", pg_write(&big));
    let s = solve_zielonka(&big);
    println!("even wins {:?}, strategies verify: {}", s.region(Player::Even), s.verify(&big).unwrap());
}
