//! Antiregular trees: languages of binary words read as trees, Nerode
//! separation, bounded refutation of antiregularity, and the experiment
//! showing that regular rank-0 trees are of kind 1.
//!
//! A word `w` over `{0, 1}` names the node reached by turning left at `0`
//! and right at `1`. A language `L` gives the tree labelling `w` with `a`
//! iff `w ∈ L`, else `b`. Its subtree at `u` is the tree of the residual
//! `u⁻¹L`, so the tree is antiregular exactly when the Nerode equivalence
//! of `L` has only singleton classes. Palindromes are such a language: for
//! `u ≠ v` some extension separates them.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::graph::{Certificate, LazyTree, TermGraph, VertexLabel};
use crate::kind::{classify_graph, recognizes_densely_antiregular, KindElement};
use crate::random::{random_rank0_graph, seeded};
use crate::term::{Letter, RankedAlphabet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AntiregularError {
    #[error("the two words are equal")]
    EqualWords,
    #[error("`{0}` is not a binary word")]
    BadWord(String),
    #[error("predicate expression, column {column}: {message}")]
    BadPredicate { column: usize, message: String },
}

/// Print an address as a binary word; the root is `ε`.
pub fn word_string(word: &[usize]) -> String {
    if word.is_empty() {
        "ε".to_string()
    } else {
        word.iter().map(|&d| char::from(b'0' + d as u8)).collect()
    }
}

/// Parse a binary word; `ε`, `eps` and `-` denote the empty word.
pub fn parse_word(s: &str) -> Result<Vec<usize>, AntiregularError> {
    let s = s.trim();
    if matches!(s, "ε" | "eps" | "-") {
        return Ok(Vec::new());
    }
    s.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(AntiregularError::BadWord(s.to_string())),
        })
        .collect()
}

type Member = dyn Fn(&[usize]) -> bool + Send + Sync;

/// A language of binary words given by its membership test.
#[derive(Clone)]
pub struct WordLanguagePredicate {
    name: String,
    member: Arc<Member>,
    certified_singleton_nerode: bool,
}

impl WordLanguagePredicate {
    /// `certified` asserts that distinct words are never Nerode-equivalent.
    pub fn new(
        name: impl Into<String>,
        member: impl Fn(&[usize]) -> bool + Send + Sync + 'static,
        certified: bool,
    ) -> WordLanguagePredicate {
        WordLanguagePredicate {
            name: name.into(),
            member: Arc::new(member),
            certified_singleton_nerode: certified,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn member(&self, word: &[usize]) -> bool {
        (self.member)(word)
    }

    pub fn is_certified(&self) -> bool {
        self.certified_singleton_nerode
    }

    pub fn palindromes() -> WordLanguagePredicate {
        WordLanguagePredicate::new("palindromes", is_palindrome, true)
    }

    pub fn all() -> WordLanguagePredicate {
        WordLanguagePredicate::new("all", |_| true, false)
    }

    pub fn empty() -> WordLanguagePredicate {
        WordLanguagePredicate::new("empty", |_| false, false)
    }

    pub fn zeros_star() -> WordLanguagePredicate {
        WordLanguagePredicate::new("zeros-star", |w| w.iter().all(|&d| d == 0), false)
    }

    pub fn builtin(name: &str) -> Option<WordLanguagePredicate> {
        Some(match name {
            "palindromes" => Self::palindromes(),
            "all" => Self::all(),
            "empty" => Self::empty(),
            "zeros-star" => Self::zeros_star(),
            _ => return None,
        })
    }

    pub const BUILTINS: [&'static str; 4] = ["palindromes", "all", "empty", "zeros-star"];
}

impl fmt::Debug for WordLanguagePredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WordLanguagePredicate")
            .field("name", &self.name)
            .field("certified", &self.certified_singleton_nerode)
            .finish()
    }
}

fn is_palindrome(w: &[usize]) -> bool {
    w.iter().eq(w.iter().rev())
}

/// A builtin name, or an expression over word tests:
///
/// ```text
/// expr  := conj ('|' conj)*
/// conj  := neg ('&' neg)*
/// neg   := '!' neg | atom
/// atom  := '(' expr ')' | 'pal' | 'true' | 'false' | 'zeros' | 'ones'
///        | 'prefix(' bits ')' | 'suffix(' bits ')' | 'infix(' bits ')'
///        | ('len' | 'count0' | 'count1') op number
/// op    := '=' | '!=' | '<' | '<=' | '>' | '>='
/// ```
///
/// Expressions are never certified.
pub fn parse_predicate(src: &str) -> Result<WordLanguagePredicate, AntiregularError> {
    if let Some(p) = WordLanguagePredicate::builtin(src.trim()) {
        return Ok(p);
    }
    let mut p = ExprParser { src, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    let e = Arc::new(e);
    Ok(WordLanguagePredicate::new(src.trim(), move |w| e.eval(w), false))
}

#[derive(Debug, Clone, Copy)]
enum Cmp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

#[derive(Debug, Clone, Copy)]
enum Measure {
    Len,
    Count(usize),
}

#[derive(Debug)]
enum Expr {
    Or(Box<Expr>, Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Not(Box<Expr>),
    Const(bool),
    Pal,
    Only(usize),
    Prefix(Vec<usize>),
    Suffix(Vec<usize>),
    Infix(Vec<usize>),
    Compare(Measure, Cmp, usize),
}

impl Expr {
    fn eval(&self, w: &[usize]) -> bool {
        match self {
            Expr::Or(a, b) => a.eval(w) || b.eval(w),
            Expr::And(a, b) => a.eval(w) && b.eval(w),
            Expr::Not(a) => !a.eval(w),
            Expr::Const(c) => *c,
            Expr::Pal => is_palindrome(w),
            Expr::Only(d) => w.iter().all(|x| x == d),
            Expr::Prefix(p) => w.starts_with(p),
            Expr::Suffix(s) => w.ends_with(s),
            Expr::Infix(s) => s.is_empty() || w.windows(s.len()).any(|x| x == s.as_slice()),
            Expr::Compare(m, op, n) => {
                let x = match m {
                    Measure::Len => w.len(),
                    Measure::Count(d) => w.iter().filter(|x| *x == d).count(),
                };
                match op {
                    Cmp::Eq => x == *n,
                    Cmp::Ne => x != *n,
                    Cmp::Lt => x < *n,
                    Cmp::Le => x <= *n,
                    Cmp::Gt => x > *n,
                    Cmp::Ge => x >= *n,
                }
            }
        }
    }
}

struct ExprParser<'a> {
    src: &'a str,
    pos: usize,
}

impl ExprParser<'_> {
    fn error(&self, message: &str) -> AntiregularError {
        AntiregularError::BadPredicate {
            column: self.pos + 1,
            message: message.to_string(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, AntiregularError> {
        let mut e = self.conj()?;
        while self.eat("|") {
            e = Expr::Or(Box::new(e), Box::new(self.conj()?));
        }
        Ok(e)
    }

    fn conj(&mut self) -> Result<Expr, AntiregularError> {
        let mut e = self.neg()?;
        while self.eat("&") {
            e = Expr::And(Box::new(e), Box::new(self.neg()?));
        }
        Ok(e)
    }

    fn neg(&mut self) -> Result<Expr, AntiregularError> {
        self.skip_ws();
        if self.rest().starts_with('!') && !self.rest().starts_with("!=") {
            self.pos += 1;
            return Ok(Expr::Not(Box::new(self.neg()?)));
        }
        self.atom()
    }

    fn word(&mut self) -> &str {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.rest().len());
        let w = &self.src[self.pos..self.pos + len];
        self.pos += len;
        w
    }

    fn bits_arg(&mut self) -> Result<Vec<usize>, AntiregularError> {
        if !self.eat("(") {
            return Err(self.error("expected `(`"));
        }
        let start = self.pos;
        let Some(end) = self.rest().find(')') else {
            return Err(self.error("expected `)`"));
        };
        let bits = self.src[start..start + end].trim();
        self.pos = start + end + 1;
        if bits.is_empty() {
            return Ok(Vec::new());
        }
        parse_word(bits).map_err(|_| AntiregularError::BadPredicate {
            column: start + 1,
            message: format!("`{bits}` is not a binary word"),
        })
    }

    fn comparison(&mut self, m: Measure) -> Result<Expr, AntiregularError> {
        self.skip_ws();
        let ops = [
            ("<=", Cmp::Le),
            (">=", Cmp::Ge),
            ("!=", Cmp::Ne),
            ("=", Cmp::Eq),
            ("<", Cmp::Lt),
            (">", Cmp::Gt),
        ];
        let Some(&(tok, op)) = ops.iter().find(|(t, _)| self.rest().starts_with(t)) else {
            return Err(self.error("expected a comparison operator"));
        };
        self.pos += tok.len();
        self.skip_ws();
        let at = self.pos;
        let n = self.word();
        let n = n.parse::<usize>().map_err(|_| AntiregularError::BadPredicate {
            column: at + 1,
            message: "expected a number".into(),
        })?;
        Ok(Expr::Compare(m, op, n))
    }

    fn atom(&mut self) -> Result<Expr, AntiregularError> {
        if self.eat("(") {
            let e = self.expr()?;
            if !self.eat(")") {
                return Err(self.error("expected `)`"));
            }
            return Ok(e);
        }
        let at = self.pos;
        let word = self.word().to_string();
        let e = match word.as_str() {
            "pal" => Expr::Pal,
            "true" => Expr::Const(true),
            "false" => Expr::Const(false),
            "zeros" => Expr::Only(0),
            "ones" => Expr::Only(1),
            "prefix" => Expr::Prefix(self.bits_arg()?),
            "suffix" => Expr::Suffix(self.bits_arg()?),
            "infix" => Expr::Infix(self.bits_arg()?),
            "len" => self.comparison(Measure::Len)?,
            "count0" => self.comparison(Measure::Count(0))?,
            "count1" => self.comparison(Measure::Count(1))?,
            other => {
                self.pos = at;
                self.skip_ws();
                return Err(self.error(&format!("unknown test `{other}`")));
            }
        };
        Ok(e)
    }
}

/// The tree labelling `w` with `a` iff `w` is in the language.
pub fn tree_from_language(pred: &WordLanguagePredicate) -> LazyTree {
    let alphabet = RankedAlphabet::binary_ab();
    let a = alphabet.letter("a").unwrap().clone();
    let b = alphabet.letter("b").unwrap().clone();
    let p = pred.clone();
    let certificate = pred.is_certified().then_some(Certificate::AntiregularByConstruction);
    LazyTree::new(
        format!("tree({})", pred.name()),
        0,
        move |w| VertexLabel::Letter(if p.member(w) { a.clone() } else { b.clone() }),
        certificate,
    )
}

/// All binary words of length `len`, in lexicographic order.
fn words_of_length(len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..1u64 << len).map(move |code| (0..len).map(|i| ((code >> (len - 1 - i)) & 1) as usize).collect())
}

/// The shortest (then lexicographically least) `w` with `|w| <= maxlen`
/// separating `u` and `v`.
pub fn nerode_witness(
    pred: &WordLanguagePredicate,
    u: &[usize],
    v: &[usize],
    maxlen: usize,
) -> Result<Option<Vec<usize>>, AntiregularError> {
    if u == v {
        return Err(AntiregularError::EqualWords);
    }
    let mut uw = u.to_vec();
    let mut vw = v.to_vec();
    for len in 0..=maxlen {
        for w in words_of_length(len) {
            uw.truncate(u.len());
            uw.extend_from_slice(&w);
            vw.truncate(v.len());
            vw.extend_from_slice(&w);
            if pred.member(&uw) != pred.member(&vw) {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// Addresses of all nodes at depth at most `depth`, in shortlex order.
pub fn addresses(t: &LazyTree, depth: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut i = 0;
    while i < out.len() {
        let w = out[i].clone();
        i += 1;
        if w.len() == depth {
            continue;
        }
        if let VertexLabel::Letter(l) = t.label_at(&w) {
            for c in 0..crate::term::Ranked::rank(&l) {
                let mut x = w.clone();
                x.push(c);
                out.push(x);
            }
        }
    }
    out
}

/// Whether the subtrees at `u` and `v` agree on every extension of length
/// at most `len`.
fn agree(t: &LazyTree, u: &[usize], v: &[usize], len: usize) -> bool {
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    let mut uw = Vec::new();
    let mut vw = Vec::new();
    while let Some(w) = stack.pop() {
        uw.clear();
        uw.extend_from_slice(u);
        uw.extend_from_slice(&w);
        vw.clear();
        vw.extend_from_slice(v);
        vw.extend_from_slice(&w);
        let lu = t.label_at(&uw);
        if lu != t.label_at(&vw) {
            return false;
        }
        if w.len() < len {
            if let VertexLabel::Letter(l) = lu {
                for c in (0..crate::term::Ranked::rank(&l)).rev() {
                    let mut x = w.clone();
                    x.push(c);
                    stack.push(x);
                }
            }
        }
    }
    true
}

/// The first pair of distinct nodes at depth at most `depth` whose
/// subtrees cannot be told apart by extensions of length at most `len`.
///
/// `None` is evidence of antiregularity, not proof.
pub fn antiregular_refute(t: &LazyTree, depth: usize, len: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let nodes = addresses(t, depth);
    for (i, u) in nodes.iter().enumerate() {
        for v in &nodes[i + 1..] {
            if agree(t, u, v, len) {
                return Some((u.clone(), v.clone()));
            }
        }
    }
    None
}

/// Every pair [`antiregular_refute`] would consider a counterexample, in order.
pub fn antiregular_counterexamples(t: &LazyTree, depth: usize, len: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let nodes = addresses(t, depth);
    let mut out = Vec::new();
    for (i, u) in nodes.iter().enumerate() {
        for v in &nodes[i + 1..] {
            if agree(t, u, v, len) {
                out.push((u.clone(), v.clone()));
            }
        }
    }
    out
}

/// An ancestor/descendant pair of nodes with the same subtree, the first
/// found along a breadth-first walk. Exists for every rank-0 graph, since
/// every branch is infinite and there are finitely many distinct subtrees.
pub fn repetition_witness(g: &TermGraph<Letter>) -> Option<(Vec<usize>, Vec<usize>)> {
    let class = g.bisim_classes();
    // (address, vertex, classes of the strict ancestors by depth)
    let mut queue = std::collections::VecDeque::from([(Vec::new(), 0usize, Vec::<usize>::new())]);
    while let Some((w, v, ancestors)) = queue.pop_front() {
        if let Some(depth) = ancestors.iter().position(|&c| c == class[v]) {
            return Some((w[..depth].to_vec(), w));
        }
        if w.len() > g.len() {
            continue;
        }
        let mut below = ancestors.clone();
        below.push(class[v]);
        for (i, &s) in g.successors(v).iter().enumerate() {
            let mut x = w.clone();
            x.push(i);
            queue.push_back((x, s, below.clone()));
        }
    }
    None
}

/// One sample of [`regular_kind1_experiment`].
#[derive(Debug, Clone)]
pub struct Kind1Sample {
    pub graph: TermGraph<Letter>,
    pub element: KindElement,
    pub recognized: bool,
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
}

#[derive(Debug, Clone, Default)]
pub struct Kind1Report {
    /// Counts keyed by the element's text form.
    pub histogram: BTreeMap<String, usize>,
    pub samples: Vec<Kind1Sample>,
}

impl Kind1Report {
    /// Every sample is of kind 1, has a witness and is not recognized.
    pub fn all_kind1(&self) -> bool {
        self.samples.iter().all(|s| {
            s.element == KindElement::Tag { kind: crate::kind::Kind::One, rank: 0 } && s.witness.is_some() && !s.recognized
        })
    }
}

impl fmt::Display for Kind1Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h: Vec<String> = self.histogram.iter().map(|(k, n)| format!("{k}={n}")).collect();
        writeln!(f, "histogram {}", h.join(" "))?;
        for (i, s) in self.samples.iter().enumerate() {
            let w = match &s.witness {
                Some((u, v)) => format!("{} {}", word_string(u), word_string(v)),
                None => "none".into(),
            };
            writeln!(f, "sample {i} vertices {} kind {} witness {w}", s.graph.len(), s.element)?;
        }
        Ok(())
    }
}

/// Classify the given rank-0 graphs and find a repeated subtree in each.
pub fn kind1_report(graphs: impl IntoIterator<Item = TermGraph<Letter>>) -> Kind1Report {
    let mut report = Kind1Report::default();
    for graph in graphs {
        let element = classify_graph(&graph).expect("graphs over {a, b}");
        let recognized = recognizes_densely_antiregular(&graph).unwrap_or(false);
        let witness = repetition_witness(&graph);
        *report.histogram.entry(element.to_string()).or_default() += 1;
        report.samples.push(Kind1Sample {
            graph,
            element,
            recognized,
            witness,
        });
    }
    report
}

/// Generate `count` random rank-0 graphs with at most `size_bound`
/// vertices and report their kinds with repetition witnesses.
pub fn regular_kind1_experiment(seed: u64, count: usize, size_bound: usize) -> Kind1Report {
    let mut rng = seeded(seed);
    let graphs: Vec<_> = (0..count).map(|_| random_rank0_graph(&mut rng, size_bound)).collect();
    kind1_report(graphs)
}

/// A random binary word of length at most `max_len`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> Vec<usize> {
    let len = rng.random_range(0..=max_len);
    (0..len).map(|_| rng.random_range(0..2)).collect()
}
