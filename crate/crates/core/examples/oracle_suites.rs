//! Run every oracle suite at its default size and report timings.
//!
//! `cargo run --release --example oracle_suites [seed]`

use std::time::Instant;

use omegaclone::suites::Suite;

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    for suite in Suite::ALL {
        let start = Instant::now();
        let report = suite.run(seed, suite.default_trials());
        println!("{report}\n  ({:.2?})\n", start.elapsed());
    }
}
