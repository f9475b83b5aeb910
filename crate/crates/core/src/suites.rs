//! Seeded randomized oracle suites.
//!
//! Each suite checks one law or agreement between independent procedures
//! on generated inputs and returns a [`SuiteReport`]. The same suites back
//! the `oracle` subcommand and the acceptance tests.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::antiregular::{
    antiregular_refute, nerode_witness, regular_kind1_experiment, tree_from_language, WordLanguagePredicate,
};
use crate::automaton::{
    extract_run, is_empty_with_witness, membership, profile_product, profiles_finite, verify_run, AutomatonError,
    ParityAutomaton, ProfiledTerm,
};
use crate::game::{solve_bruteforce, solve_zielonka, GameArena, Player};
use crate::graph::{TermGraph, VertexLabel};
use crate::kind::{
    check_clone_laws, classify_graph, generator_decompose, hom_h, product, product_graph_with_case,
    product_with_case, recognizes_densely_antiregular, Case, CaseHistogram, Kind, KindElement, KindError,
};
use crate::random::{
    random_arena, random_automaton, random_kind4, random_nested_graph, random_nested_term, random_rank0_graph,
    seeded,
};
use crate::term::{Letter, Ranked, RankedAlphabet};

/// Outcome of one suite.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    /// Cases the oracle could not decide within its budget.
    pub skipped: u64,
    pub first_failure: Option<String>,
    /// Diagram cases of the products evaluated, where applicable.
    pub histogram: CaseHistogram,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> SuiteReport {
        SuiteReport {
            name: name.to_string(),
            ..SuiteReport::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(describe());
        }
    }

    fn fail(&mut self, message: String) {
        self.failures += 1;
        if self.first_failure.is_none() {
            self.first_failure = Some(message);
        }
    }

    pub fn absorb(&mut self, other: SuiteReport) {
        self.cases += other.cases;
        self.failures += other.failures;
        self.skipped += other.skipped;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure.map(|f| format!("{}: {f}", other.name));
        }
        self.histogram.merge(&other.histogram);
        self.notes.extend(other.notes.into_iter().map(|n| format!("{}: {n}", other.name)));
    }

    /// Line-oriented `key value` form with a stable layout.
    pub fn porcelain(&self) -> String {
        let mut out = format!(
            "suite {}\ncases {}\nfailures {}\nskipped {}\n",
            self.name, self.cases, self.failures, self.skipped
        );
        if self.histogram.total() > 0 {
            for case in Case::ALL {
                out.push_str(&format!("case {} {}\n", case.letter(), self.histogram.get(case)));
            }
        }
        if let Some(f) = &self.first_failure {
            out.push_str(&format!("first-failure {}\n", f.replace('\n', " ")));
        }
        out.push_str(if self.passed() { "status passed\n" } else { "status failed\n" });
        out
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} cases, {} failures", self.name, self.cases, self.failures)?;
        if self.skipped > 0 {
            write!(f, ", {} skipped", self.skipped)?;
        }
        writeln!(f)?;
        if self.histogram.total() > 0 {
            writeln!(f, "  cases {}", self.histogram)?;
        }
        for n in &self.notes {
            writeln!(f, "  {n}")?;
        }
        if let Some(x) = &self.first_failure {
            writeln!(f, "  first failure: {x}")?;
        }
        f.write_str(if self.passed() { "all passed" } else { "FAILED" })
    }
}

/// The available suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Homomorphism,
    Regular,
    Laws,
    Lemmas,
    Corollary,
    Games,
    Automata,
    Profiles,
    Antiregular,
    Kind1,
    Generation,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Homomorphism,
        Suite::Regular,
        Suite::Laws,
        Suite::Lemmas,
        Suite::Corollary,
        Suite::Games,
        Suite::Automata,
        Suite::Profiles,
        Suite::Antiregular,
        Suite::Kind1,
        Suite::Generation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Homomorphism => "homomorphism",
            Suite::Regular => "regular",
            Suite::Laws => "laws",
            Suite::Lemmas => "lemmas",
            Suite::Corollary => "corollary",
            Suite::Games => "games",
            Suite::Automata => "automata",
            Suite::Profiles => "profiles",
            Suite::Antiregular => "antiregular",
            Suite::Kind1 => "kind1",
            Suite::Generation => "generation",
        }
    }

    /// Trials used when none are given.
    pub fn default_trials(self) -> usize {
        match self {
            Suite::Homomorphism | Suite::Corollary => 5000,
            Suite::Regular => 500,
            Suite::Laws => 2000,
            Suite::Lemmas | Suite::Games | Suite::Profiles | Suite::Kind1 => 1000,
            Suite::Automata => 20,
            Suite::Antiregular => 8,
            Suite::Generation => 100,
        }
    }

    pub fn run(self, seed: u64, trials: usize) -> SuiteReport {
        match self {
            Suite::Homomorphism => homomorphism_square(seed, trials),
            Suite::Regular => regular_square(seed, trials),
            Suite::Laws => clone_laws(seed, trials),
            Suite::Lemmas => lemma_oracles(seed, trials),
            Suite::Corollary => corollary(seed, trials),
            Suite::Games => games(seed, trials),
            Suite::Automata => automata(seed, trials),
            Suite::Profiles => profiles(seed, trials),
            Suite::Antiregular => antiregularity(trials),
            Suite::Kind1 => kind1(seed, trials),
            Suite::Generation => generation(seed, trials),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Suite, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
                format!("unknown suite `{s}`; expected one of {}", names.join(", "))
            })
    }
}

/// Checks shared by every product evaluation: rank preserved, result valid.
fn product_sane(result: &KindElement, rank: usize) -> bool {
    result.rank() == rank && result.validate().is_ok()
}

/// `h(flatten t) = pr(h t)` on random finite nested terms of outer depth at most 5.
pub fn homomorphism_square(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::new("homomorphism");
    let mut rng = seeded(seed);
    for i in 0..trials {
        let t = random_nested_term(&mut rng, 5);
        let outcome = (|| -> Result<bool, KindError> {
            let lhs = hom_h(&t.flatten())?;
            let (rhs, case) = product_with_case(&t.try_map_labels(hom_h)?)?;
            report.histogram.record(case);
            Ok(lhs == rhs && product_sane(&rhs, t.rank()))
        })();
        report.check(matches!(outcome, Ok(true)), || format!("trial {i}: {t} ({outcome:?})"));
    }
    report
}

/// The same square on regular nested terms: at most 6 outer vertices and 8
/// vertices per label, flattened as graphs.
pub fn regular_square(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::new("regular");
    let mut rng = seeded(seed);
    for i in 0..trials {
        let g = random_nested_graph(&mut rng, 6, 8);
        let outcome = (|| -> Result<bool, KindError> {
            let lhs = classify_graph(&g.flatten()?)?;
            let (rhs, case) = product_graph_with_case(&g.try_map_labels(classify_graph)?)?;
            report.histogram.record(case);
            Ok(lhs == rhs && product_sane(&rhs, g.rank()))
        })();
        report.check(matches!(outcome, Ok(true)), || format!("trial {i} ({outcome:?}):\n{g}"));
    }
    report
}

/// The unit and flattening laws of the product on the kind algebra.
pub fn clone_laws(seed: u64, trials: usize) -> SuiteReport {
    let laws = check_clone_laws(seed, trials);
    let mut report = SuiteReport::new("laws");
    report.cases = laws.unit_cases + laws.flatten_cases;
    report.failures = laws.unit_failures + laws.flatten_failures;
    report.first_failure = laws.counterexample.clone();
    report.histogram = laws.cases;
    report.notes.push(format!(
        "unit law {} cases, flattening law {} cases",
        laws.unit_cases, laws.flatten_cases
    ));
    report
}

/// The two lemmas behind the diagram, on random regular nested terms:
/// the flattening has a port in every subtree iff the outer term does and
/// every label is of kind 3 or 4; under that premise a port repeats in the
/// flattening iff one repeats outside or some label is of kind 3.
///
/// `trials` instances are checked for each lemma; the second draws until the
/// premise holds.
pub fn lemma_oracles(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::new("lemmas");
    let mut rng = seeded(seed);
    let analyse = |g: &TermGraph<TermGraph<Letter>>| -> Result<(TermGraph<Letter>, Vec<Kind>), KindError> {
        let kinds = g
            .letters()
            .map(|l| classify_graph(l).map(|k| k.kind()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((g.flatten()?, kinds))
    };
    let (mut leaf_checks, mut twice_checks, mut draws) = (0, 0, 0u64);
    while leaf_checks < trials || twice_checks < trials {
        let g = random_nested_graph(&mut rng, 6, 8);
        draws += 1;
        let (flat, kinds) = match analyse(&g) {
            Ok(x) => x,
            Err(e) => {
                report.fail(format!("draw {draws}: {e}"));
                continue;
            }
        };
        let premise = g.every_subtree_has_port() && kinds.iter().all(|k| matches!(k, Kind::Three | Kind::Four));
        if leaf_checks < trials {
            leaf_checks += 1;
            let ok = flat.every_subtree_has_port() == premise;
            report.check(ok, || format!("has-a-leaf, draw {draws}:\n{g}"));
        }
        if premise && twice_checks < trials {
            twice_checks += 1;
            let expected = g.some_port_repeats() || kinds.contains(&Kind::Three);
            let ok = flat.some_port_repeats() == expected;
            report.check(ok, || format!("port-twice, draw {draws}:\n{g}"));
        }
    }
    report.notes.push(format!(
        "has-a-leaf {leaf_checks} instances, port-twice {twice_checks} instances, {draws} draws"
    ));
    report
}

/// The three product suites together, reporting which diagram cases were
/// exercised; `trials` finite squares, a tenth as many regular squares and
/// two fifths as many law instances.
pub fn corollary(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::new("corollary");
    report.absorb(homomorphism_square(seed, trials));
    report.absorb(regular_square(seed.wrapping_add(1), trials / 10));
    report.absorb(clone_laws(seed.wrapping_add(2), trials * 2 / 5));
    let missing: Vec<String> = Case::ALL
        .into_iter()
        .filter(|&c| report.histogram.get(c) == 0)
        .map(|c| c.to_string())
        .collect();
    if !missing.is_empty() {
        report.notes.push(format!("cases not reached: {}", missing.join(" ")));
    }
    report
}

/// Calls `f` on every arena with `1..=max_vertices` vertices, priorities up
/// to `max_priority` and between one and `max_degree` distinct successors
/// per vertex, one representative per isomorphism class (the one whose
/// vertex encoding is lexicographically least). Returns the number of
/// representatives.
pub fn for_each_small_arena(
    max_vertices: usize,
    max_priority: usize,
    max_degree: usize,
    mut f: impl FnMut(&GameArena),
) -> u64 {
    assert!(max_vertices <= 8 && max_priority < 16);
    let mut count = 0;
    for n in 1..=max_vertices {
        let perms = permutations(n);
        // remap[p][mask]: the successor mask under permutation p
        let remap: Vec<Vec<u16>> = perms
            .iter()
            .map(|p| {
                (0..1u16 << n)
                    .map(|m| (0..n).filter(|&k| m >> k & 1 == 1).map(|k| 1 << p[k]).sum())
                    .collect()
            })
            .collect();
        let inverse: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| {
                let mut inv = vec![0; n];
                for (i, &j) in p.iter().enumerate() {
                    inv[j] = i;
                }
                inv
            })
            .collect();
        // vertex code: owner (bit 12), priority (bits 8..12), successor mask
        let mut options = Vec::new();
        for owner in 0..2u16 {
            for pr in 0..=max_priority as u16 {
                for mask in 1..1u16 << n {
                    if (mask.count_ones() as usize) <= max_degree {
                        options.push(owner << 12 | pr << 8 | mask);
                    }
                }
            }
        }
        let mut digits = vec![0usize; n];
        let mut codes = vec![0u16; n];
        'games: loop {
            for (c, &d) in codes.iter_mut().zip(&digits) {
                *c = options[d];
            }
            let canonical = perms.iter().enumerate().skip(1).all(|(pi, _)| {
                for j in 0..n {
                    let c = codes[inverse[pi][j]];
                    let permuted = (c & 0xff00) | remap[pi][(c & 0xff) as usize];
                    if permuted != codes[j] {
                        return permuted > codes[j];
                    }
                }
                true
            });
            if canonical {
                count += 1;
                let owner = codes
                    .iter()
                    .map(|c| if c >> 12 == 0 { Player::Even } else { Player::Odd })
                    .collect();
                let priority = codes.iter().map(|c| (c >> 8 & 0xf) as usize).collect();
                let edges = codes
                    .iter()
                    .map(|c| (0..n).filter(|&k| c >> k & 1 == 1).collect())
                    .collect();
                f(&GameArena::new(owner, priority, edges).expect("every vertex has a successor"));
            }
            for d in digits.iter_mut() {
                *d += 1;
                if *d < options.len() {
                    continue 'games;
                }
                *d = 0;
            }
            break;
        }
    }
    count
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for k in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=k).map(move |i| {
                    let mut q = p.clone();
                    q.insert(i, k);
                    q
                })
            })
            .collect();
    }
    out.sort();
    out
}

fn compare_solvers(report: &mut SuiteReport, arena: &GameArena, label: impl Fn() -> String) {
    let z = solve_zielonka(arena);
    let b = match solve_bruteforce(arena) {
        Ok(b) => b,
        Err(e) => {
            report.skipped += 1;
            report.notes.push(format!("{}: {e}", label()));
            return;
        }
    };
    let ok = z.winner == b.winner && z.verify(arena) == Ok(true) && b.verify(arena) == Ok(true);
    report.check(ok, || format!("{}:\n{}", label(), crate::game::pg_write(arena)));
}

/// Zielonka against brute force, with both strategies verified: on every
/// arena with at most 4 vertices, priorities at most 3 and out-degree at
/// most 2 (up to isomorphism), and on `trials` random arenas of at most 8
/// vertices.
pub fn games(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::new("games");
    let mut small = 0;
    let family = for_each_small_arena(4, 3, 2, |arena| {
        small += 1;
        compare_solvers(&mut report, arena, || format!("small arena {small}"));
    });
    let mut rng = seeded(seed);
    for i in 0..trials {
        let n = rng.random_range(1..=8);
        let arena = random_arena(&mut rng, n, 6, 3);
        compare_solvers(&mut report, &arena, || format!("random arena {i}"));
    }
    report
        .notes
        .push(format!("{family} small arenas up to isomorphism, {trials} random arenas"));
    report
}

/// Acceptance by exhaustive search over positional runs: every way of
/// choosing one transition per reachable (vertex, state) pair is tried, and
/// a choice is accepting when no reachable pair is stuck and no reachable
/// cycle has an odd maximal priority. `None` when more than `budget`
/// complete choices would be needed.
pub fn exhaustive_membership(
    aut: &ParityAutomaton,
    g: &TermGraph<Letter>,
    budget: usize,
) -> Result<Option<bool>, AutomatonError> {
    if g.rank() != 0 {
        return Err(AutomatonError::NonZeroRank(g.rank()));
    }
    let letters = g
        .labels()
        .iter()
        .map(|l| match l {
            VertexLabel::Letter(letter) => aut.letter_index(letter),
            VertexLabel::Port(_) => unreachable!("rank-0 graphs have no ports"),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let search = RunSearch {
        aut,
        g,
        letters,
        states: aut.state_count(),
    };
    let mut choice = vec![None; g.len() * aut.state_count()];
    let mut budget = budget;
    Ok(search.search(&mut choice, &mut budget))
}

struct RunSearch<'a> {
    aut: &'a ParityAutomaton,
    g: &'a TermGraph<Letter>,
    letters: Vec<usize>,
    states: usize,
}

impl RunSearch<'_> {
    fn transitions(&self, p: usize) -> &[Vec<usize>] {
        self.aut.transitions(self.letters[p / self.states], p % self.states)
    }

    fn successors(&self, p: usize, t: usize) -> impl Iterator<Item = usize> + '_ {
        let v = p / self.states;
        self.transitions(p)[t]
            .iter()
            .zip(self.g.successors(v))
            .map(|(&q, &w)| w * self.states + q)
    }

    /// Pairs reachable from the root under the choices made so far; the
    /// second component is the first reachable pair without a choice.
    fn reachable(&self, choice: &[Option<usize>]) -> (Vec<bool>, Option<usize>) {
        let mut seen = vec![false; choice.len()];
        let root = self.aut.initial();
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut open = None;
        while let Some(p) = queue.pop_front() {
            match choice[p] {
                None => {
                    open = open.or(Some(p));
                }
                Some(t) => {
                    for s in self.successors(p, t) {
                        if !seen[s] {
                            seen[s] = true;
                            queue.push_back(s);
                        }
                    }
                }
            }
        }
        (seen, open)
    }

    fn search(&self, choice: &mut [Option<usize>], budget: &mut usize) -> Option<bool> {
        if *budget == 0 {
            return None;
        }
        let (seen, open) = self.reachable(choice);
        let Some(p) = open else {
            *budget -= 1;
            return Some(self.no_odd_cycle(choice, &seen));
        };
        let mut undecided = false;
        for t in 0..self.transitions(p).len() {
            choice[p] = Some(t);
            match self.search(choice, budget) {
                Some(true) => {
                    choice[p] = None;
                    return Some(true);
                }
                Some(false) => {}
                None => undecided = true,
            }
        }
        choice[p] = None;
        if undecided {
            None
        } else {
            Some(false)
        }
    }

    /// No reachable pair `p` of odd priority lies on a cycle through pairs
    /// of priority at most that of `p`.
    fn no_odd_cycle(&self, choice: &[Option<usize>], seen: &[bool]) -> bool {
        let pr = |p: usize| self.aut.priority(p % self.states);
        (0..choice.len())
            .filter(|&p| seen[p] && pr(p) % 2 == 1)
            .all(|p| {
                let bound = pr(p);
                let mut visited = vec![false; choice.len()];
                let mut stack: Vec<usize> = self.successors(p, choice[p].unwrap()).collect();
                while let Some(s) = stack.pop() {
                    if s == p {
                        return false;
                    }
                    if visited[s] || pr(s) > bound {
                        continue;
                    }
                    visited[s] = true;
                    stack.extend(self.successors(s, choice[s].unwrap()));
                }
                true
            })
    }
}

/// Budget of complete choices for [`exhaustive_membership`] in the suite.
const RUN_SEARCH_BUDGET: usize = 1 << 16;
/// Largest product of graph and automaton checked exhaustively.
const MAX_PRODUCT: usize = 64;

/// Membership by the acceptance game against exhaustive run search, for
/// the universal, b-forbidden and b-infinitely-often automata and three
/// random automata, on `trials` random rank-0 graphs each; accepted runs
/// are extracted and verified, and emptiness witnesses must be members.
pub fn automata(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::new("automata");
    let mut rng = seeded(seed);
    let ab = RankedAlphabet::binary_ab();
    let mut automata = vec![
        ("universal".to_string(), ParityAutomaton::universal(&ab)),
        ("b-forbidden".to_string(), ParityAutomaton::b_forbidden()),
        ("b-infinitely-often".to_string(), ParityAutomaton::b_infinitely_often()),
    ];
    for i in 0..3 {
        automata.push((format!("random-{i}"), random_automaton(&mut rng, &ab, 2, 3, 0.35)));
    }
    let (mut exhaustive, mut accepted) = (0, 0);
    for (name, aut) in &automata {
        let emptiness = is_empty_with_witness(aut);
        match (&emptiness.witness, emptiness.empty) {
            (Some(w), false) => {
                let ok = matches!(membership(aut, w), Ok(true));
                report.check(ok, || format!("{name}: emptiness witness rejected:\n{w}"));
            }
            (None, true) => report.cases += 1,
            _ => report.fail(format!("{name}: inconsistent emptiness verdict")),
        }
        for i in 0..trials {
            let g = random_rank0_graph(&mut rng, 8);
            let game = match membership(aut, &g) {
                Ok(v) => v,
                Err(e) => {
                    report.fail(format!("{name}, graph {i}: {e}"));
                    continue;
                }
            };
            accepted += usize::from(game);
            if g.len() * aut.state_count() <= MAX_PRODUCT {
                match exhaustive_membership(aut, &g, RUN_SEARCH_BUDGET) {
                    Ok(Some(v)) => {
                        exhaustive += 1;
                        report.check(v == game, || format!("{name}, graph {i}: game {game}, search {v}:\n{g}"));
                    }
                    Ok(None) => report.skipped += 1,
                    Err(e) => report.fail(format!("{name}, graph {i}: {e}")),
                }
            } else {
                report.skipped += 1;
            }
            let run = extract_run(aut, &g);
            let ok = match (&run, game) {
                (Ok(Some(run)), true) => matches!(verify_run(aut, &g, run), Ok(true)),
                (Ok(None), false) => true,
                _ => false,
            };
            report.check(ok, || format!("{name}, graph {i}: run extraction disagrees:\n{g}"));
        }
    }
    report.notes.push(format!(
        "{} automata, {accepted} of {} graphs accepted, {exhaustive} verdicts confirmed by exhaustive run search",
        automata.len(),
        automata.len() * trials
    ));
    report
}

/// Largest number of port occurrences in a flattened term for the profile
/// suite; profile sets grow exponentially in it.
const MAX_PROFILE_PORTS: usize = 6;

/// Profiles compose along flattening: on `trials` random automata (at most
/// 3 states and 3 priorities) and nested terms of outer depth at most 3
/// whose flattening has at most 6 port occurrences.
pub fn profiles(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::new("profiles");
    let mut rng = seeded(seed);
    let ab = RankedAlphabet::binary_ab();
    for i in 0..trials {
        let states = rng.random_range(1..=3);
        let priorities = rng.random_range(1..=3);
        let aut = random_automaton(&mut rng, &ab, states, priorities, 0.3);
        let t = loop {
            let t = random_nested_term(&mut rng, 3);
            if t.flatten().ports().len() <= MAX_PROFILE_PORTS {
                break t;
            }
        };
        let outcome = (|| -> Result<bool, AutomatonError> {
            let labelled = t.try_map_labels(|s| ProfiledTerm::new(&aut, s.clone()))?;
            Ok(profile_product(&aut, &labelled)? == profiles_finite(&aut, &t.flatten())?)
        })();
        report.check(matches!(outcome, Ok(true)), || format!("trial {i}: {t} ({outcome:?})\n{aut}"));
    }
    report
}

/// Witness length used for the palindrome Nerode check on words up to `n`.
fn nerode_bound(n: usize) -> usize {
    2 * n + 1
}

/// The palindrome tree has no refutation at depth 6 with witness length
/// 13, and every two distinct words of length at most `max_word` are
/// separated by a Nerode witness.
pub fn antiregularity(max_word: usize) -> SuiteReport {
    let mut report = SuiteReport::new("antiregular");
    let pal = WordLanguagePredicate::palindromes();
    let tree = tree_from_language(&pal);
    let refuted = antiregular_refute(&tree, 6, 13);
    report.check(refuted.is_none(), || format!("palindrome tree refuted by {refuted:?}"));
    let words: Vec<Vec<usize>> = (0..=max_word)
        .flat_map(|len| {
            (0..1usize << len).map(move |bits| (0..len).map(|k| bits >> (len - 1 - k) & 1).collect())
        })
        .collect();
    for (i, u) in words.iter().enumerate() {
        for v in &words[i + 1..] {
            let w = nerode_witness(&pal, u, v, nerode_bound(max_word));
            report.check(matches!(w, Ok(Some(_))), || format!("no witness for {u:?} and {v:?}"));
        }
    }
    report.notes.push(format!("{} words of length at most {max_word}", words.len()));
    report
}

/// Random regular rank-0 trees are all of kind 1 and not recognized,
/// while the certified palindrome tree is.
pub fn kind1(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::new("kind1");
    let experiment = regular_kind1_experiment(seed, trials, 8);
    let tag10 = KindElement::Tag { kind: Kind::One, rank: 0 };
    for (i, s) in experiment.samples.iter().enumerate() {
        let ok = s.element == tag10 && !s.recognized && s.witness.is_some();
        report.check(ok, || format!("sample {i} gave {} ({:?}):\n{}", s.element, s.witness, s.graph));
        let rec = recognizes_densely_antiregular(&s.graph);
        report.check(matches!(rec, Ok(false)), || format!("sample {i} recognized: {rec:?}"));
    }
    let pal = tree_from_language(&WordLanguagePredicate::palindromes());
    let rec = recognizes_densely_antiregular(&pal);
    report.check(matches!(rec, Ok(true)), || format!("palindrome tree not recognized: {rec:?}"));
    let h: Vec<String> = experiment.histogram.iter().map(|(k, n)| format!("{k}={n}")).collect();
    report.notes.push(format!("histogram {}", h.join(" ")));
    report
}

/// Every tag of rank at most 4 and `trials` sampled kind-4 elements of rank
/// 2 to 4 decompose into generators of rank at most 2.
pub fn generation(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::new("generation");
    let mut rng = seeded(seed);
    let mut elements: Vec<KindElement> = KindElement::enumerate(4)
        .into_iter()
        .filter(|e| matches!(e, KindElement::Tag { .. }))
        .collect();
    for _ in 0..trials {
        let rank = rng.random_range(2..=4);
        elements.push(KindElement::Kind4(random_kind4(&mut rng, rank)));
    }
    for a in &elements {
        let outcome = generator_decompose(a, 4).and_then(|w| {
            let small = w.labels().iter().all(|l| l.rank() <= 2);
            Ok(small && product(&w)? == *a)
        });
        report.check(matches!(outcome, Ok(true)), || format!("{a}: {outcome:?}"));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for suite in [
            Suite::Homomorphism,
            Suite::Regular,
            Suite::Laws,
            Suite::Lemmas,
            Suite::Profiles,
            Suite::Kind1,
        ] {
            let r = suite.run(7, 40);
            assert!(r.passed(), "{r}");
            assert!(r.cases >= 40, "{r}");
        }
        let r = antiregularity(4);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn small_arena_counts() {
        // one vertex: owner x priority, self-loop only
        assert_eq!(for_each_small_arena(1, 1, 1, |_| {}), 4);
        // two vertices with one successor each: 16 arenas, 4 fixed by the
        // swap, so 10 classes, plus the 2 one-vertex arenas
        assert_eq!(for_each_small_arena(2, 0, 1, |_| {}), 2 + 10);
    }

    #[test]
    fn run_search_agrees_on_examples() {
        let ab = RankedAlphabet::binary_ab();
        let a = ab.letter("a").unwrap().clone();
        let b = ab.letter("b").unwrap().clone();
        let full_a = TermGraph::new(vec![VertexLabel::Letter(a.clone())], vec![vec![0, 0]]).unwrap();
        let alt = TermGraph::new(
            vec![VertexLabel::Letter(a), VertexLabel::Letter(b)],
            vec![vec![1, 1], vec![0, 0]],
        )
        .unwrap();
        let inf = ParityAutomaton::b_infinitely_often();
        assert_eq!(exhaustive_membership(&inf, &full_a, 100), Ok(Some(false)));
        assert_eq!(exhaustive_membership(&inf, &alt, 100), Ok(Some(true)));
        assert_eq!(exhaustive_membership(&ParityAutomaton::b_forbidden(), &alt, 100), Ok(Some(false)));
    }

    #[test]
    fn suite_names_parse() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>(), Ok(s));
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
