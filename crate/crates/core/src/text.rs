//! S-expression text format for terms.
//!
//! ```text
//! alphabet a:2 b:2
//! (a (b 1 1) 2)
//! ```
//!
//! Bare integers are ports. A node with children is `(label child ...)`, a
//! rank-0 label is written bare. Labels that are not plain atoms (a term used
//! as a label, or `K4 (a 1 2)`) are wrapped in square brackets, which nest.
//! `#` starts a comment running to the end of the line. The alphabet line is
//! optional and defaults to `alphabet a:2 b:2`.

use std::fmt;

use thiserror::Error;

use crate::term::{is_atom_char, Letter, Node, Ranked, RankedAlphabet, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Atom(String),
    Bracket(String),
}

fn tokenize(src: &str, first_line: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let mut line = first_line;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                line += 1;
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    chars.next();
                }
            }
            '(' => {
                chars.next();
                out.push((Tok::Open, line));
            }
            ')' => {
                chars.next();
                out.push((Tok::Close, line));
            }
            '[' => {
                chars.next();
                let start = line;
                let mut depth = 1;
                let mut text = String::new();
                loop {
                    let Some(c) = chars.next() else {
                        return Err(ParseError::new(start, "unterminated `[`"));
                    };
                    match c {
                        '[' => depth += 1,
                        ']' => {
                            depth -= 1;
                            if depth == 0 {
                                break;
                            }
                        }
                        '\n' => line += 1,
                        _ => {}
                    }
                    text.push(c);
                }
                out.push((Tok::Bracket(text), start));
            }
            ']' => return Err(ParseError::new(line, "unbalanced `]`")),
            _ => {
                let mut atom = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || matches!(c, '(' | ')' | '[' | ']' | '#') {
                        break;
                    }
                    atom.push(c);
                    chars.next();
                }
                out.push((Tok::Atom(atom), line));
            }
        }
    }
    Ok(out)
}

struct NodeParser<'a, L, F> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    last_line: usize,
    label: F,
    _marker: std::marker::PhantomData<L>,
}

impl<L, F> NodeParser<'_, L, F>
where
    F: FnMut(&str, usize) -> Result<L, String>,
{
    fn line(&self) -> usize {
        self.toks.get(self.pos).map_or(self.last_line, |t| t.1)
    }

    fn node(&mut self) -> Result<Node<L>, ParseError> {
        let line = self.line();
        let Some((tok, _)) = self.toks.get(self.pos) else {
            return Err(ParseError::new(line, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Open => {
                let head = match self.toks.get(self.pos) {
                    Some((Tok::Atom(a), _)) if !is_port(a) => a.clone(),
                    Some((Tok::Bracket(b), _)) => b.clone(),
                    _ => return Err(ParseError::new(line, "expected a label after `(`")),
                };
                self.pos += 1;
                let mut children = Vec::new();
                loop {
                    match self.toks.get(self.pos) {
                        Some((Tok::Close, _)) => {
                            self.pos += 1;
                            break;
                        }
                        None => return Err(ParseError::new(line, "unclosed `(`")),
                        _ => children.push(self.node()?),
                    }
                }
                let label = (self.label)(&head, children.len()).map_err(|m| ParseError::new(line, m))?;
                Ok(Node::Inner(label, children))
            }
            Tok::Close => Err(ParseError::new(line, "unexpected `)`")),
            Tok::Atom(a) if is_port(a) => {
                let port = a
                    .parse::<usize>()
                    .map_err(|_| ParseError::new(line, format!("bad port `{a}`")))?;
                Ok(Node::Port(port))
            }
            Tok::Atom(a) => {
                let label = (self.label)(a, 0).map_err(|m| ParseError::new(line, m))?;
                Ok(Node::leaf(label))
            }
            Tok::Bracket(b) => {
                let label = (self.label)(b, 0).map_err(|m| ParseError::new(line, m))?;
                Ok(Node::leaf(label))
            }
        }
    }
}

fn is_port(atom: &str) -> bool {
    atom.starts_with(|c: char| c.is_ascii_digit())
}

/// Parse a single node. `label` receives the label text and its child count.
pub fn parse_node<L>(
    src: &str,
    first_line: usize,
    label: impl FnMut(&str, usize) -> Result<L, String>,
) -> Result<Node<L>, ParseError> {
    let toks = tokenize(src, first_line)?;
    let last_line = first_line + src.matches('\n').count();
    let mut p = NodeParser {
        toks: &toks,
        pos: 0,
        last_line,
        label,
        _marker: std::marker::PhantomData,
    };
    let node = p.node()?;
    if p.pos != toks.len() {
        return Err(ParseError::new(p.line(), "trailing input after term"));
    }
    Ok(node)
}

/// Parse and validate a term with arbitrary labels.
pub fn parse_labeled_term<L: Ranked + fmt::Display>(
    src: &str,
    first_line: usize,
    label: impl FnMut(&str, usize) -> Result<L, String>,
) -> Result<Term<L>, ParseError> {
    let node = parse_node(src, first_line, label)?;
    Term::new(node).map_err(|e| ParseError::new(first_line, e.to_string()))
}

/// Parse a term over a known alphabet (no header line).
pub fn parse_term(src: &str, alphabet: &RankedAlphabet) -> Result<Term<Letter>, ParseError> {
    parse_term_at(src, 1, alphabet)
}

pub(crate) fn parse_term_at(
    src: &str,
    first_line: usize,
    alphabet: &RankedAlphabet,
) -> Result<Term<Letter>, ParseError> {
    parse_labeled_term(src, first_line, letter_resolver(alphabet))
}

pub(crate) fn letter_resolver(
    alphabet: &RankedAlphabet,
) -> impl FnMut(&str, usize) -> Result<Letter, String> + '_ {
    |name, _| {
        alphabet
            .letter(name)
            .cloned()
            .ok_or_else(|| format!("unknown letter `{name}`"))
    }
}

/// Parse `alphabet a:2 b:2` (the keyword included).
pub fn parse_alphabet(line: &str) -> Result<RankedAlphabet, String> {
    let mut words = line.split_whitespace();
    if words.next() != Some("alphabet") {
        return Err("expected `alphabet`".into());
    }
    let mut letters = Vec::new();
    for w in words {
        let (name, rank) = w
            .split_once(':')
            .ok_or_else(|| format!("expected name:rank, found `{w}`"))?;
        let rank = rank.parse::<usize>().map_err(|_| format!("bad rank in `{w}`"))?;
        letters.push((name, rank));
    }
    RankedAlphabet::new(letters).map_err(|e| e.to_string())
}

/// Split off a leading `alphabet` line, if any. Returns the alphabet, the
/// remaining text and the line number the remainder starts on.
pub(crate) fn split_header(src: &str) -> Result<(Option<RankedAlphabet>, &str, usize), ParseError> {
    let mut offset = 0;
    let mut line = 1;
    for l in src.split_inclusive('\n') {
        let content = l.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            offset += l.len();
            line += 1;
            continue;
        }
        if content.starts_with("alphabet") {
            let alphabet = parse_alphabet(content).map_err(|m| ParseError::new(line, m))?;
            return Ok((Some(alphabet), &src[offset + l.len()..], line + 1));
        }
        break;
    }
    Ok((None, &src[offset..], line))
}

/// Parse a term file: optional alphabet line followed by one term.
pub fn parse_term_file(src: &str) -> Result<(RankedAlphabet, Term<Letter>), ParseError> {
    let (alphabet, body, line) = split_header(src)?;
    let alphabet = alphabet.unwrap_or_else(RankedAlphabet::binary_ab);
    let term = parse_term_at(body, line, &alphabet)?;
    Ok((alphabet, term))
}

pub fn write_term_file(alphabet: &RankedAlphabet, term: &Term<Letter>) -> String {
    format!("{alphabet}\n{term}\n")
}

/// A label as it appears in term and graph text: bare when it is a plain
/// atom, bracketed otherwise.
pub fn label_token(label: &impl fmt::Display) -> String {
    let s = label.to_string();
    if !s.is_empty() && !is_port(&s) && s.chars().all(is_atom_char) {
        s
    } else {
        format!("[{s}]")
    }
}

impl<L: fmt::Display> fmt::Display for Node<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Port(i) => write!(f, "{i}"),
            Node::Inner(label, children) if children.is_empty() => f.write_str(&label_token(label)),
            Node::Inner(label, children) => {
                write!(f, "({}", label_token(label))?;
                for c in children {
                    write!(f, " {c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl<L: fmt::Display> fmt::Display for Term<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root().fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_header() {
        let src = "alphabet a:2 b:2\n(a (b 1 1) 2)\n";
        let (alphabet, term) = parse_term_file(src).unwrap();
        assert_eq!(write_term_file(&alphabet, &term), src);
    }

    #[test]
    fn header_defaults_to_binary() {
        let (alphabet, term) = parse_term_file("(a 1 1)").unwrap();
        assert_eq!(alphabet, RankedAlphabet::binary_ab());
        assert_eq!(term.to_string(), "(a 1 1)");
    }

    #[test]
    fn rank_zero_letters_print_bare() {
        let src = "alphabet f:2 c:0\n(f c (f 1 c))\n";
        let (alphabet, term) = parse_term_file(src).unwrap();
        assert_eq!(term.rank(), 1);
        assert_eq!(write_term_file(&alphabet, &term), src);
        // `(c)` is accepted and printed canonically
        assert_eq!(parse_term("(f (c) 1)", &alphabet).unwrap().to_string(), "(f c 1)");
    }

    #[test]
    fn nested_labels_in_brackets() {
        let ab = RankedAlphabet::binary_ab();
        let t: Term<Term<Letter>> =
            parse_labeled_term("([(a 1 2)] 1 ([(b 1 1)] 2))", 1, |s, _| {
                parse_term(s, &ab).map_err(|e| e.message)
            })
            .unwrap();
        assert_eq!(t.rank(), 2);
        assert_eq!(t.to_string(), "([(a 1 2)] 1 ([(b 1 1)] 2))");
    }

    #[test]
    fn errors_carry_lines() {
        let err = parse_term_file("alphabet a:2\n\n(a 1\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = parse_term_file("(a 1 3)").unwrap_err();
        assert!(err.message.contains("port 2"), "{err}");
        assert!(parse_term_file("(a 1 2) 3").is_err());
        assert!(parse_term_file("alphabet a2\n(a 1 2)").is_err());
        assert!(parse_term_file("(c 1 2)").unwrap_err().message.contains("unknown letter"));
    }
}
