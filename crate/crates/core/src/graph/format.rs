//! Line-oriented graph format.
//!
//! ```text
//! alphabet a:2 b:2      # optional, defaults to a:2 b:2
//! rank 1
//! 0: a 0 1
//! 1: port 1
//! ```
//!
//! The first vertex listed is the root. Vertex ids are arbitrary tokens;
//! printing renumbers them `0..` in listing order.

use std::collections::HashMap;
use std::fmt;

use super::{TermGraph, VertexLabel};
use crate::term::{Letter, Ranked, RankedAlphabet};
use crate::text::{label_token, letter_resolver, split_header, ParseError};

struct RawVertex<'a> {
    line: usize,
    label: Result<usize, &'a str>,
    succ: Vec<&'a str>,
}

/// Split `line` into its label token and the remaining words.
fn label_and_rest(rest: &str) -> Option<(&str, &str)> {
    let rest = rest.trim_start();
    if let Some(inner) = rest.strip_prefix('[') {
        let mut depth = 1;
        for (i, c) in inner.char_indices() {
            match c {
                '[' => depth += 1,
                ']' => {
                    depth -= 1;
                    if depth == 0 {
                        return Some((&inner[..i], &inner[i + 1..]));
                    }
                }
                _ => {}
            }
        }
        None
    } else {
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        Some((&rest[..end], &rest[end..]))
    }
}

/// Parse a graph with arbitrary labels; `label` gets the label text and
/// the number of successors.
pub fn parse_labeled_graph<L: Ranked + fmt::Display>(
    src: &str,
    first_line: usize,
    mut label: impl FnMut(&str, usize) -> Result<L, String>,
) -> Result<TermGraph<L>, ParseError> {
    let mut declared_rank = None;
    let mut raw: Vec<RawVertex> = Vec::new();
    let mut ids: HashMap<&str, usize> = HashMap::new();
    for (offset, line) in src.lines().enumerate() {
        let lineno = first_line + offset;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(n) = content.strip_prefix("rank ") {
            if declared_rank.is_some() || !raw.is_empty() {
                return Err(ParseError::new(lineno, "`rank` must come once, before the vertices"));
            }
            let n = n
                .trim()
                .parse::<usize>()
                .map_err(|_| ParseError::new(lineno, format!("bad rank `{}`", n.trim())))?;
            declared_rank = Some(n);
            continue;
        }
        let Some((id, rest)) = content.split_once(':') else {
            return Err(ParseError::new(lineno, "expected `<id>: ...`"));
        };
        let id = id.trim();
        if id.is_empty() || ids.insert(id, raw.len()).is_some() {
            return Err(ParseError::new(lineno, format!("duplicate or empty vertex id `{id}`")));
        }
        let rest = rest.trim();
        let vertex = if let Some(port) = rest.strip_prefix("port ") {
            let p = port
                .trim()
                .parse::<usize>()
                .map_err(|_| ParseError::new(lineno, format!("bad port `{}`", port.trim())))?;
            RawVertex {
                line: lineno,
                label: Ok(p),
                succ: Vec::new(),
            }
        } else {
            let (lab, succ) =
                label_and_rest(rest).ok_or_else(|| ParseError::new(lineno, "unterminated `[`"))?;
            if lab.is_empty() {
                return Err(ParseError::new(lineno, "missing label"));
            }
            RawVertex {
                line: lineno,
                label: Err(lab),
                succ: succ.split_whitespace().collect(),
            }
        };
        raw.push(vertex);
    }
    let Some(declared) = declared_rank else {
        return Err(ParseError::new(first_line, "missing `rank <n>` line"));
    };
    if raw.is_empty() {
        return Err(ParseError::new(first_line, "graph has no vertices"));
    }
    let mut labels = Vec::with_capacity(raw.len());
    let mut succ = Vec::with_capacity(raw.len());
    for v in &raw {
        labels.push(match v.label {
            Ok(p) => VertexLabel::Port(p),
            Err(text) => VertexLabel::Letter(label(text, v.succ.len()).map_err(|m| ParseError::new(v.line, m))?),
        });
        succ.push(
            v.succ
                .iter()
                .map(|s| {
                    ids.get(s)
                        .copied()
                        .ok_or_else(|| ParseError::new(v.line, format!("unknown vertex `{s}`")))
                })
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    let g = TermGraph::new(labels, succ).map_err(|e| {
        let line = e.vertex().map_or(first_line, |v| raw[v].line);
        ParseError::new(line, e.to_string())
    })?;
    if g.rank() != declared {
        return Err(ParseError::new(
            first_line,
            format!("declared rank {declared} but ports give rank {}", g.rank()),
        ));
    }
    Ok(g)
}

/// Parse a letter graph over a known alphabet (no header line).
pub fn parse_graph(src: &str, alphabet: &RankedAlphabet) -> Result<TermGraph<Letter>, ParseError> {
    parse_labeled_graph(src, 1, letter_resolver(alphabet))
}

/// Parse a graph file with an optional alphabet line.
pub fn parse_graph_file(src: &str) -> Result<(RankedAlphabet, TermGraph<Letter>), ParseError> {
    let (alphabet, body, line) = split_header(src)?;
    let alphabet = alphabet.unwrap_or_else(RankedAlphabet::binary_ab);
    let g = parse_labeled_graph(body, line, letter_resolver(&alphabet))?;
    Ok((alphabet, g))
}

pub fn write_graph_file(alphabet: &RankedAlphabet, g: &TermGraph<Letter>) -> String {
    format!("{alphabet}\n{g}")
}

impl<L: fmt::Display> fmt::Display for TermGraph<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rank {}", self.rank)?;
        for (v, label) in self.labels.iter().enumerate() {
            match label {
                VertexLabel::Port(i) => writeln!(f, "{v}: port {i}")?,
                VertexLabel::Letter(l) => {
                    write!(f, "{v}: {}", label_token(l))?;
                    for w in &self.succ[v] {
                        write!(f, " {w}")?;
                    }
                    writeln!(f)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let src = "alphabet a:2 b:2\nrank 1\n0: a 0 1\n1: port 1\n";
        let (alphabet, g) = parse_graph_file(src).unwrap();
        assert_eq!(g.rank(), 1);
        assert_eq!(write_graph_file(&alphabet, &g), src);
    }

    #[test]
    fn arbitrary_ids_are_renumbered() {
        let src = "rank 0\nroot: a x root\nx: b x x\n";
        let (_, g) = parse_graph_file(src).unwrap();
        assert_eq!(g.to_string(), "rank 0\n0: a 1 0\n1: b 1 1\n");
    }

    #[test]
    fn errors() {
        let e = parse_graph_file("rank 0\n0: a 0 7\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(parse_graph_file("0: a 0 0\n").unwrap_err().message.contains("rank"));
        assert!(parse_graph_file("rank 2\n0: a 1 1\n1: port 1\n").unwrap_err().message.contains("declared"));
        assert!(parse_graph_file("rank 0\n0: a 0\n").is_err());
        assert!(parse_graph_file("rank 0\n0: a 0 0\n0: b 0 0\n").is_err());
    }
}
