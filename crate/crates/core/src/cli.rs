//! The `omegaclone` command line.
//!
//! Exit codes: 0 success or a positive verdict, 1 a negative verdict
//! (reject, non-empty, refuted, ...), 2 usage or input errors, 3 a failed
//! internal invariant. `--porcelain` switches to a stable line-oriented
//! `key value` output; `--echo` prints the parsed inputs in canonical form
//! instead of running the command.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::antiregular::{
    antiregular_counterexamples, antiregular_refute, nerode_witness, parse_predicate, parse_word,
    regular_kind1_experiment, tree_from_language, word_string, AntiregularError, WordLanguagePredicate,
};
use crate::automaton::{
    extract_run, is_empty_with_witness, membership, parse_automaton, profiles_finite, AutomatonError,
    ParityAutomaton,
};
use crate::game::{pg_read, pg_write, read_solution, solve_bruteforce, solve_zielonka, write_solution, GameArena, GameError};
use crate::graph::{parse_graph_file, parse_labeled_graph, unfold_prefix, write_graph_file, TermGraph};
use crate::kind::{
    classify_lazy, generator_decompose, hom_h, parse_kind_element, product_graph_with_case, product_with_case,
    KindElement, KindError, VerdictStatus, DEFAULT_DEPTH_BUDGET, DEFAULT_WITNESS_BUDGET,
};
use crate::suites::{clone_laws, Suite};
use crate::term::{Letter, RankedAlphabet, Term};
use crate::text::{parse_labeled_term, parse_term_file, write_term_file, ParseError};

#[derive(Debug, Parser)]
#[command(name = "omegaclone", version, about = "Terms with ports, the kind algebra, parity automata and games")]
pub struct Cli {
    /// Stable line-oriented output.
    #[arg(long, global = true)]
    porcelain: bool,
    /// Print the parsed inputs in canonical form and stop.
    #[arg(long, global = true)]
    echo: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Kind of a term, regular tree or language tree.
    Classify(ClassifyArgs),
    /// Flatten a term (or regular term) whose labels are terms.
    Flatten(InputArgs),
    /// Product of a term whose labels are kind elements.
    Product(InputArgs),
    /// Check the unit and flattening laws of the kind algebra.
    Laws(SeedArgs),
    /// Decompose a kind element into generators of rank at most 2.
    Decompose {
        /// Element text, e.g. `T3/2` or `K4 (a 1 (b 2 3))`.
        #[arg(long)]
        element: String,
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// Parity games in pgsolver format.
    #[command(subcommand)]
    Game(GameCommand),
    /// Parity tree automata.
    #[command(subcommand)]
    Aut(AutCommand),
    /// Antiregular trees from word languages.
    #[command(subcommand)]
    Anti(AntiCommand),
    /// Run a randomized oracle suite.
    Oracle {
        #[arg(long, default_value = "corollary")]
        suite: Suite,
        #[command(flatten)]
        seed: SeedArgs,
    },
}

#[derive(Debug, Args)]
struct SeedArgs {
    #[arg(long, env = "OMEGACLONE_SEED")]
    seed: u64,
    /// Number of random instances; each suite has its own default.
    #[arg(long)]
    trials: Option<usize>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Term text, optionally preceded by an `alphabet` line.
    #[arg(long)]
    term: Option<String>,
    /// File holding a term.
    #[arg(long, value_name = "PATH")]
    term_file: Option<PathBuf>,
    /// File holding a regular term as a graph.
    #[arg(long, value_name = "PATH")]
    graph: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(long, conflicts_with_all = ["term_file", "graph", "lazy"])]
    term: Option<String>,
    #[arg(long, value_name = "PATH", conflicts_with_all = ["graph", "lazy"])]
    term_file: Option<PathBuf>,
    #[arg(long, value_name = "PATH", conflicts_with = "lazy")]
    graph: Option<PathBuf>,
    /// The tree of a word language: a built-in name or an expression.
    #[arg(long, value_name = "PREDICATE")]
    lazy: Option<String>,
    #[arg(long, default_value_t = DEFAULT_DEPTH_BUDGET)]
    depth: usize,
    #[arg(long, default_value_t = DEFAULT_WITNESS_BUDGET)]
    wlen: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Solver {
    Zielonka,
    Brute,
}

#[derive(Debug, Subcommand)]
enum GameCommand {
    /// Solve a game.
    Solve {
        game: PathBuf,
        #[arg(long, value_enum, default_value = "zielonka")]
        solver: Solver,
    },
    /// Check a claimed solution.
    Verify { game: PathBuf, solution: PathBuf },
}

#[derive(Debug, Subcommand)]
enum AutCommand {
    /// Does the automaton accept the regular tree?
    Member {
        #[arg(long = "aut", value_name = "PATH")]
        automaton: PathBuf,
        #[arg(long, value_name = "PATH")]
        graph: PathBuf,
        /// Also print an accepting run.
        #[arg(long)]
        run: bool,
    },
    /// Is the language empty?
    Empty {
        #[arg(long = "aut", value_name = "PATH")]
        automaton: PathBuf,
    },
    /// A regular tree in the language.
    Witness {
        #[arg(long = "aut", value_name = "PATH")]
        automaton: PathBuf,
    },
    /// Profiles of the runs on a finite term.
    Profiles {
        #[arg(long = "aut", value_name = "PATH")]
        automaton: PathBuf,
        #[arg(long)]
        term: String,
    },
}

#[derive(Debug, Subcommand)]
enum AntiCommand {
    /// Print the tree of a language down to a depth.
    Gen {
        #[arg(long)]
        pred: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Look for two nodes whose subtrees agree within the budget.
    Refute {
        #[arg(long)]
        pred: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 13)]
        wlen: usize,
        /// List every pair instead of the first.
        #[arg(long)]
        all: bool,
    },
    /// Shortest word separating two words.
    Nerode {
        #[arg(long)]
        pred: String,
        u: String,
        v: String,
        #[arg(long, default_value_t = 13)]
        wlen: usize,
    },
    /// Classify random regular rank-0 trees.
    Experiment {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long, default_value_t = 8)]
        size: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{origin}:{line}: {message}")]
    Parse { origin: String, line: usize, message: String },
    #[error("{0}")]
    Input(String),
    #[error("invariant failure: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } | CliError::Input(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }

    fn parse(source: &str, e: ParseError) -> CliError {
        CliError::Parse {
            origin: source.to_string(),
            line: e.line,
            message: e.message,
        }
    }
}

macro_rules! input_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> CliError {
                CliError::Input(e.to_string())
            }
        }
    )*};
}
input_error!(KindError, AntiregularError);

impl From<AutomatonError> for CliError {
    fn from(e: AutomatonError) -> CliError {
        match e {
            AutomatonError::Parse { line, message } => CliError::Parse {
                origin: "<automaton>".into(),
                line,
                message,
            },
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<GameError> for CliError {
    fn from(e: GameError) -> CliError {
        CliError::Input(e.to_string())
    }
}

/// Output of a command in both forms, with its exit code.
struct Outcome {
    human: String,
    porcelain: String,
    code: i32,
}

impl Outcome {
    fn same(text: String, code: i32) -> Outcome {
        Outcome {
            human: text.clone(),
            porcelain: text,
            code,
        }
    }

    fn new(human: String, porcelain: String, code: i32) -> Outcome {
        Outcome { human, porcelain, code }
    }
}

/// Parse `args` (program name first), run, and write to `out`/`err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let text = if cli.porcelain { o.porcelain } else { o.human };
            let _ = write!(out, "{text}");
            if !text.is_empty() && !text.ends_with('\n') {
                let _ = writeln!(out);
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Source text and the name used in error messages.
fn input_text(term: &Option<String>, term_file: &Option<PathBuf>) -> Result<Option<(String, String)>, CliError> {
    Ok(match (term, term_file) {
        (Some(t), _) => Some((t.clone(), "<term>".into())),
        (None, Some(p)) => Some((read(p)?, p.display().to_string())),
        (None, None) => None,
    })
}

fn load_term(src: &str, name: &str) -> Result<(RankedAlphabet, Term<Letter>), CliError> {
    parse_term_file(src).map_err(|e| CliError::parse(name, e))
}

fn load_graph(path: &Path) -> Result<(RankedAlphabet, TermGraph<Letter>), CliError> {
    let src = read(path)?;
    parse_graph_file(&src).map_err(|e| CliError::parse(&path.display().to_string(), e))
}

fn load_automaton(path: &Path) -> Result<ParityAutomaton, CliError> {
    let src = read(path)?;
    parse_automaton(&src).map_err(|e| match e {
        AutomatonError::Parse { line, message } => CliError::Parse {
            origin: path.display().to_string(),
            line,
            message,
        },
        other => CliError::Input(other.to_string()),
    })
}

fn load_game(path: &Path) -> Result<GameArena, CliError> {
    let src = read(path)?;
    pg_read(&src).map_err(|e| match e {
        GameError::Parse { line, message } => CliError::Parse {
            origin: path.display().to_string(),
            line,
            message,
        },
        other => CliError::Input(other.to_string()),
    })
}

fn load_predicate(src: &str) -> Result<WordLanguagePredicate, CliError> {
    Ok(parse_predicate(src)?)
}

/// A term or graph file whose labels are parsed by `label`.
fn load_labeled<L: crate::term::Ranked + std::fmt::Display>(
    input: &InputArgs,
    label: impl FnMut(&str, usize) -> Result<L, String>,
) -> Result<Labeled<L>, CliError> {
    if let Some((src, name)) = input_text(&input.term, &input.term_file)? {
        let t = parse_labeled_term(&src, 1, label).map_err(|e| CliError::parse(&name, e))?;
        return Ok(Labeled::Term(t));
    }
    let path = input.graph.as_ref().expect("clap requires one input");
    let src = read(path)?;
    let g = parse_labeled_graph(&src, 1, label).map_err(|e| CliError::parse(&path.display().to_string(), e))?;
    Ok(Labeled::Graph(g))
}

enum Labeled<L> {
    Term(Term<L>),
    Graph(TermGraph<L>),
}

fn term_label(alphabet: &RankedAlphabet) -> impl FnMut(&str, usize) -> Result<Term<Letter>, String> + '_ {
    move |text, _| crate::text::parse_term(text, alphabet).map_err(|e| e.message)
}

fn element_label(text: &str, _: usize) -> Result<KindElement, String> {
    parse_kind_element(text)
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Classify(args) => classify(args, cli.echo),
        Command::Flatten(input) => flatten(input, cli.echo),
        Command::Product(input) => product(input, cli.echo),
        Command::Laws(seed) => {
            let report = clone_laws(seed.seed, seed.trials.unwrap_or(Suite::Laws.default_trials()));
            suite_outcome(&report)
        }
        Command::Decompose { element, bound } => {
            let a = parse_kind_element(element).map_err(CliError::Input)?;
            if cli.echo {
                return Ok(Outcome::same(format!("{a}\n"), 0));
            }
            let w = generator_decompose(&a, *bound)?;
            Ok(Outcome::new(format!("{a} = pr {w}\n"), format!("witness {w}\n"), 0))
        }
        Command::Game(cmd) => game(cmd, cli.echo),
        Command::Aut(cmd) => aut(cmd, cli.echo),
        Command::Anti(cmd) => anti(cmd, cli.echo),
        Command::Oracle { suite, seed } => {
            let report = suite.run(seed.seed, seed.trials.unwrap_or(suite.default_trials()));
            suite_outcome(&report)
        }
    }
}

fn suite_outcome(report: &crate::suites::SuiteReport) -> Result<Outcome, CliError> {
    let code = if report.passed() { 0 } else { 3 };
    Ok(Outcome::new(format!("{report}\n"), report.porcelain(), code))
}

fn classify(args: &ClassifyArgs, echo: bool) -> Result<Outcome, CliError> {
    if let Some(pred) = &args.lazy {
        let pred = load_predicate(pred)?;
        if echo {
            return Ok(Outcome::same(format!("{}\n", pred.name()), 0));
        }
        let tree = tree_from_language(&pred);
        let v = classify_lazy(&tree, args.depth, args.wlen)?;
        let candidates: Vec<String> = v.candidates.iter().map(|k| k.to_string()).collect();
        let mut porcelain = format!("status {}\ncandidates {}\n", v.status, candidates.join(","));
        if let Some(e) = &v.element {
            writeln!(porcelain, "element {e}").unwrap();
        }
        let code = if v.status == VerdictStatus::Definite { 0 } else { 1 };
        return Ok(Outcome::new(format!("{v}\n{}\n", v.evidence), porcelain, code));
    }
    let element = if let Some((src, name)) = input_text(&args.term, &args.term_file)? {
        let (alphabet, t) = load_term(&src, &name)?;
        if echo {
            return Ok(Outcome::same(write_term_file(&alphabet, &t), 0));
        }
        hom_h(&t)?
    } else if let Some(path) = &args.graph {
        let (alphabet, g) = load_graph(path)?;
        if echo {
            return Ok(Outcome::same(write_graph_file(&alphabet, &g), 0));
        }
        hom_h(&g)?
    } else {
        return Err(CliError::Usage(
            "classify needs one of --term, --term-file, --graph or --lazy".into(),
        ));
    };
    Ok(Outcome::new(format!("{element}\n"), format!("element {element}\n"), 0))
}

fn flatten(input: &InputArgs, echo: bool) -> Result<Outcome, CliError> {
    let alphabet = RankedAlphabet::binary_ab();
    match load_labeled(input, term_label(&alphabet))? {
        Labeled::Term(t) => {
            let text = if echo { format!("{t}\n") } else { format!("{}\n", t.flatten()) };
            Ok(Outcome::same(text, 0))
        }
        Labeled::Graph(g) => {
            if echo {
                return Ok(Outcome::same(g.to_string(), 0));
            }
            let flat = g.flatten_terms().map_err(|e| CliError::Input(e.to_string()))?;
            Ok(Outcome::same(flat.to_string(), 0))
        }
    }
}

fn product(input: &InputArgs, echo: bool) -> Result<Outcome, CliError> {
    let (value, case) = match load_labeled(input, element_label)? {
        Labeled::Term(t) if echo => return Ok(Outcome::same(format!("{t}\n"), 0)),
        Labeled::Graph(g) if echo => return Ok(Outcome::same(g.to_string(), 0)),
        Labeled::Term(t) => product_with_case(&t)?,
        Labeled::Graph(g) => product_graph_with_case(&g)?,
    };
    Ok(Outcome::new(
        format!("{value}  case {case}\n"),
        format!("element {value}\ncase {}\n", case.letter()),
        0,
    ))
}

/// The `paritysol` block of a solution file; lines before it (as in the
/// human output of `game solve`) are blanked so line numbers stay put.
fn solution_block(src: &str) -> String {
    match src.lines().position(|l| l.trim_start().starts_with("paritysol")) {
        Some(start) => src
            .lines()
            .enumerate()
            .map(|(i, l)| if i < start { "" } else { l })
            .collect::<Vec<_>>()
            .join("\n"),
        None => src.to_string(),
    }
}

fn game(cmd: &GameCommand, echo: bool) -> Result<Outcome, CliError> {
    match cmd {
        GameCommand::Solve { game, solver } => {
            let arena = load_game(game)?;
            if echo {
                return Ok(Outcome::same(pg_write(&arena), 0));
            }
            let solution = match solver {
                Solver::Zielonka => solve_zielonka(&arena),
                Solver::Brute => solve_bruteforce(&arena)?,
            };
            if !solution.verify(&arena)? {
                return Err(CliError::Invariant("the solver's strategies do not verify".into()));
            }
            let mut human = String::new();
            for player in [crate::game::Player::Even, crate::game::Player::Odd] {
                let region: Vec<String> = solution.region(player).iter().map(usize::to_string).collect();
                writeln!(human, "{player} wins {{{}}}", region.join(", ")).unwrap();
            }
            human.push_str(&write_solution(&solution));
            Ok(Outcome::new(human, write_solution(&solution), 0))
        }
        GameCommand::Verify { game, solution } => {
            let arena = load_game(game)?;
            let src = solution_block(&read(solution)?);
            let sol = read_solution(&src, arena.len()).map_err(|e| match e {
                GameError::Parse { line, message } => CliError::Parse {
                    origin: solution.display().to_string(),
                    line,
                    message,
                },
                other => CliError::Input(other.to_string()),
            })?;
            if echo {
                return Ok(Outcome::same(write_solution(&sol), 0));
            }
            match sol.verify(&arena) {
                Ok(true) => Ok(Outcome::same("valid\n".into(), 0)),
                Ok(false) => Ok(Outcome::same("invalid\n".into(), 1)),
                Err(e @ GameError::PartialStrategy(_)) => Ok(Outcome::new(format!("invalid: {e}\n"), "invalid\n".into(), 1)),
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn aut(cmd: &AutCommand, echo: bool) -> Result<Outcome, CliError> {
    match cmd {
        AutCommand::Member { automaton, graph, run } => {
            let aut = load_automaton(automaton)?;
            let (alphabet, g) = load_graph(graph)?;
            if echo {
                return Ok(Outcome::same(format!("{aut}{}", write_graph_file(&alphabet, &g)), 0));
            }
            let accepted = membership(&aut, &g)?;
            let mut text = if accepted { "accept\n" } else { "reject\n" }.to_string();
            if *run && accepted {
                let r = extract_run(&aut, &g)?.ok_or_else(|| CliError::Invariant("accepted without a run".into()))?;
                write!(text, "{}", r.display(&aut)).unwrap();
            }
            Ok(Outcome::same(text, i32::from(!accepted)))
        }
        AutCommand::Empty { automaton } => {
            let aut = load_automaton(automaton)?;
            if echo {
                return Ok(Outcome::same(aut.to_string(), 0));
            }
            let e = is_empty_with_witness(&aut);
            Ok(Outcome::same(
                if e.empty { "empty\n" } else { "non-empty\n" }.into(),
                i32::from(!e.empty),
            ))
        }
        AutCommand::Witness { automaton } => {
            let aut = load_automaton(automaton)?;
            if echo {
                return Ok(Outcome::same(aut.to_string(), 0));
            }
            match is_empty_with_witness(&aut).witness {
                Some(w) => {
                    if !membership(&aut, &w)? {
                        return Err(CliError::Invariant("the witness is not accepted".into()));
                    }
                    Ok(Outcome::same(write_graph_file(aut.alphabet(), &w), 0))
                }
                None => Ok(Outcome::same("empty\n".into(), 1)),
            }
        }
        AutCommand::Profiles { automaton, term } => {
            let aut = load_automaton(automaton)?;
            let t = crate::text::parse_term(term, aut.alphabet()).map_err(|e| CliError::parse("<term>", e))?;
            if echo {
                return Ok(Outcome::same(format!("{aut}{t}\n"), 0));
            }
            let set = profiles_finite(&aut, &t)?;
            let mut human = format!("{} profiles\n", set.len());
            let mut porcelain = String::new();
            for p in &set {
                writeln!(human, "{}", p.display(&aut)).unwrap();
                writeln!(porcelain, "profile {}", p.display(&aut)).unwrap();
            }
            Ok(Outcome::new(human, porcelain, 0))
        }
    }
}

fn anti(cmd: &AntiCommand, echo: bool) -> Result<Outcome, CliError> {
    match cmd {
        AntiCommand::Gen { pred, depth } => {
            let pred = load_predicate(pred)?;
            if echo {
                return Ok(Outcome::same(format!("{}\n", pred.name()), 0));
            }
            let tree = tree_from_language(&pred);
            Ok(Outcome::same(format!("{}\n", unfold_prefix(&tree, *depth)), 0))
        }
        AntiCommand::Refute { pred, depth, wlen, all } => {
            let pred = load_predicate(pred)?;
            if echo {
                return Ok(Outcome::same(format!("{}\n", pred.name()), 0));
            }
            let tree = tree_from_language(&pred);
            let pairs = if *all {
                antiregular_counterexamples(&tree, *depth, *wlen)
            } else {
                antiregular_refute(&tree, *depth, *wlen).into_iter().collect()
            };
            if pairs.is_empty() {
                return Ok(Outcome::same("none\n".into(), 0));
            }
            let mut text = String::new();
            for (u, v) in &pairs {
                writeln!(text, "counterexample {} {}", word_string(u), word_string(v)).unwrap();
            }
            Ok(Outcome::same(text, 1))
        }
        AntiCommand::Nerode { pred, u, v, wlen } => {
            let pred = load_predicate(pred)?;
            let (u, v) = (parse_word(u)?, parse_word(v)?);
            if echo {
                return Ok(Outcome::same(
                    format!("{} {} {}\n", pred.name(), word_string(&u), word_string(&v)),
                    0,
                ));
            }
            Ok(match nerode_witness(&pred, &u, &v, *wlen)? {
                Some(w) => Outcome::same(format!("witness {}\n", word_string(&w)), 0),
                None => Outcome::same("none\n".into(), 1),
            })
        }
        AntiCommand::Experiment { seed, size } => {
            if *size == 0 {
                return Err(CliError::Usage("--size must be positive".into()));
            }
            let trials = seed.trials.unwrap_or(Suite::Kind1.default_trials());
            if trials == 0 {
                return Err(CliError::Usage("--trials must be positive".into()));
            }
            let report = regular_kind1_experiment(seed.seed, trials, *size);
            let mut porcelain = format!("samples {}\n", report.samples.len());
            for (k, n) in &report.histogram {
                writeln!(porcelain, "kind {k} {n}").unwrap();
            }
            writeln!(porcelain, "all-kind1 {}", report.all_kind1()).unwrap();
            let code = if report.all_kind1() { 0 } else { 3 };
            Ok(Outcome::new(format!("{report}"), porcelain, code))
        }
    }
}
