//! Check the unit and flattening laws of the kind algebra, and that a
//! mutated diagram is caught.

use omegaclone::term::Ranked;
use omegaclone::kind::{check_clone_laws, check_clone_laws_with, product_with_case, Case, KindElement};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    let report = check_clone_laws(seed, 2000);
    print!("{report}");
    assert!(report.passed());

    // case (e) wrongly answers with a kind-4 term
    let broken = |t: &_| {
        let (value, case) = product_with_case(t)?;
        if case == Case::E && value.rank() >= 2 {
            let term = omegaclone::random::random_kind4(&mut omegaclone::random::seeded(0), value.rank());
            return Ok((KindElement::Kind4(term), case));
        }
        Ok((value, case))
    };
    let report = check_clone_laws_with(seed, 200, &broken);
    println!("mutated diagram: {} flattening failures", report.flatten_failures);
    if let Some(c) = &report.counterexample {
        println!("first counterexample: {c}");
    }
}
