use std::fmt;

use super::product::{product_with_case, Case, CaseHistogram};
use super::{Kind, KindElement, KindError};
use crate::random::{random_cca_term, random_kind4, seeded};
use crate::term::Term;

/// Largest rank checked for the unit law.
const UNIT_MAX_RANK: usize = 6;
/// Kind-4 elements up to this rank are checked exhaustively, larger ones sampled.
const EXHAUSTIVE_KIND4_RANK: usize = 4;
/// Outer depth of the random nested terms used for the flattening law.
const NESTED_DEPTH: usize = 3;

type ProductFn<'a> = dyn Fn(&Term<KindElement>) -> Result<(KindElement, Case), KindError> + 'a;

/// Outcome of a randomized check of the two clone laws.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LawReport {
    pub unit_cases: u64,
    pub unit_failures: u64,
    pub flatten_cases: u64,
    pub flatten_failures: u64,
    /// First failure, if any.
    pub counterexample: Option<String>,
    /// Diagram cases over every product evaluated by the flattening law.
    pub cases: CaseHistogram,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.unit_failures == 0 && self.flatten_failures == 0
    }

    fn fail(&mut self, msg: String) {
        if self.counterexample.is_none() {
            self.counterexample = Some(msg);
        }
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "unit law: {} cases, {} failures", self.unit_cases, self.unit_failures)?;
        writeln!(
            f,
            "flattening law: {} cases, {} failures",
            self.flatten_cases, self.flatten_failures
        )?;
        writeln!(f, "cases: {}", self.cases)?;
        if let Some(c) = &self.counterexample {
            writeln!(f, "counterexample: {c}")?;
        }
        Ok(())
    }
}

/// Check the unit and flattening laws of the product.
///
/// The unit law is checked on every tag of rank at most 6, every kind-4
/// element of rank at most 4 and `trials` sampled kind-4 elements of rank 5
/// or 6; the flattening law on `trials` random nested terms.
pub fn check_clone_laws(seed: u64, trials: usize) -> LawReport {
    check_clone_laws_with(seed, trials, &product_with_case)
}

/// [`check_clone_laws`] against an arbitrary product, e.g. a mutated one.
pub fn check_clone_laws_with(seed: u64, trials: usize, pr: &ProductFn<'_>) -> LawReport {
    let mut rng = seeded(seed);
    let mut report = LawReport::default();

    let mut unit_elements = KindElement::enumerate(EXHAUSTIVE_KIND4_RANK);
    for rank in EXHAUSTIVE_KIND4_RANK + 1..=UNIT_MAX_RANK {
        for kind in [Kind::One, Kind::Two, Kind::Three] {
            unit_elements.push(KindElement::Tag { kind, rank });
        }
    }
    for i in 0..trials {
        let rank = EXHAUSTIVE_KIND4_RANK + 1 + i % (UNIT_MAX_RANK - EXHAUSTIVE_KIND4_RANK);
        unit_elements.push(KindElement::Kind4(random_kind4(&mut rng, rank)));
    }
    for e in unit_elements {
        report.unit_cases += 1;
        match pr(&Term::unit(e.clone())) {
            Ok((got, _)) if got == e => {}
            other => {
                report.unit_failures += 1;
                report.fail(format!("unit of {e}: got {}", show(&other)));
            }
        }
    }

    for _ in 0..trials {
        let t = random_cca_term(&mut rng, NESTED_DEPTH);
        report.flatten_cases += 1;
        let lhs = pr(&t.flatten());
        let inner = t.try_map_labels(|s| {
            let (e, case) = pr(s)?;
            report.cases.record(case);
            Ok::<_, KindError>(e)
        });
        let rhs = inner.and_then(|inner| pr(&inner));
        if let Ok((_, case)) = &lhs {
            report.cases.record(*case);
        }
        if let Ok((_, case)) = &rhs {
            report.cases.record(*case);
        }
        match (&lhs, &rhs) {
            (Ok((l, _)), Ok((r, _))) if l == r => {}
            _ => {
                report.flatten_failures += 1;
                report.fail(format!("{t}: flattened {} vs node-wise {}", show(&lhs), show(&rhs)));
            }
        }
    }
    report
}

fn show(r: &Result<(KindElement, Case), KindError>) -> String {
    match r {
        Ok((e, c)) => format!("{e} {c}"),
        Err(e) => format!("error: {e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Ranked;

    #[test]
    fn laws_hold() {
        let r = check_clone_laws(1, 300);
        assert!(r.passed(), "{r}");
        assert!(r.unit_cases >= 300);
    }

    #[test]
    fn unit_of_t2_5() {
        let e = KindElement::Tag { kind: Kind::Two, rank: 5 };
        assert_eq!(product_with_case(&Term::unit(e.clone())).unwrap().0, e);
    }

    #[test]
    fn mutated_diagram_is_caught() {
        // case (e) answers with some kind-4 term instead of a kind-3 tag
        let broken = |t: &Term<KindElement>| {
            let (e, case) = product_with_case(t)?;
            if case == Case::E && t.rank() >= 2 {
                let fake = random_kind4(&mut seeded(0), t.rank());
                return Ok((KindElement::Kind4(fake), case));
            }
            Ok((e, case))
        };
        let r = check_clone_laws_with(1, 300, &broken);
        assert!(r.flatten_failures > 0);
        assert!(r.counterexample.is_some());
    }
}
