//! The pgsolver text format.
//!
//! ```text
//! parity 2;
//! 0 1 0 0,1 "start";
//! 1 2 1 1;
//! 2 0 1 0;
//! ```
//!
//! Each statement is `<id> <priority> <owner> <succ>,...["name"];` with
//! owner `0` for Even and `1` for Odd. The header `parity <maxid>;` is
//! optional and a `start <id>;` statement is ignored. Ids may be any
//! naturals; vertices are numbered by increasing id, and printing uses
//! those numbers. Solutions use
//!
//! ```text
//! paritysol 2;
//! 0 0 1;
//! 1 0;
//! ```
//!
//! with `<id> <winner> [<move>];`, the move given where the winner owns the vertex.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::{GameArena, GameError, Player, Solution};

fn parse_error(line: usize, message: impl Into<String>) -> GameError {
    GameError::Parse {
        line,
        message: message.into(),
    }
}

/// Split into `;`-terminated statements with their starting line, honouring
/// quoted names and skipping `#` comments.
fn statements(src: &str) -> Result<Vec<(usize, String)>, GameError> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut start_line = 1;
    let mut line = 1;
    let mut in_quote = false;
    let mut in_comment = false;
    for c in src.chars() {
        if c == '\n' {
            line += 1;
            in_comment = false;
            if !in_quote {
                current.push(' ');
                continue;
            }
        }
        if in_comment {
            continue;
        }
        match c {
            '"' => in_quote = !in_quote,
            '#' if !in_quote => {
                in_comment = true;
                continue;
            }
            ';' if !in_quote => {
                out.push((start_line, std::mem::take(&mut current)));
                continue;
            }
            _ => {}
        }
        if current.trim().is_empty() && !c.is_whitespace() {
            start_line = line;
        }
        current.push(c);
    }
    if in_quote {
        return Err(parse_error(line, "unterminated quoted name"));
    }
    if !current.trim().is_empty() {
        return Err(parse_error(start_line, "statement is missing its `;`"));
    }
    Ok(out.into_iter().filter(|(_, s)| !s.trim().is_empty()).collect())
}

fn number(line: usize, word: Option<&str>, what: &str) -> Result<usize, GameError> {
    let word = word.ok_or_else(|| parse_error(line, format!("missing {what}")))?;
    word.parse::<usize>()
        .map_err(|_| parse_error(line, format!("bad {what} `{word}`")))
}

struct RawVertex {
    line: usize,
    priority: usize,
    owner: Player,
    succ: Vec<usize>,
    name: Option<String>,
}

pub fn pg_read(src: &str) -> Result<GameArena, GameError> {
    let mut vertices: BTreeMap<usize, RawVertex> = BTreeMap::new();
    let mut max_id = None;
    for (i, (line, stmt)) in statements(src)?.into_iter().enumerate() {
        let stmt = stmt.trim();
        let (body, name) = match stmt.find('"') {
            Some(q) => {
                let rest = &stmt[q + 1..];
                let end = rest.find('"').expect("quotes are balanced");
                if !rest[end + 1..].trim().is_empty() {
                    return Err(parse_error(line, "text after the vertex name"));
                }
                (&stmt[..q], Some(rest[..end].to_string()))
            }
            None => (stmt, None),
        };
        let mut words = body.split_whitespace();
        let first = words.next().expect("statement is not empty");
        if first == "parity" {
            if i != 0 {
                return Err(parse_error(line, "`parity` header must come first"));
            }
            max_id = Some(number(line, words.next(), "maximal id")?);
            continue;
        }
        if first == "start" {
            continue;
        }
        let id = number(line, Some(first), "vertex id")?;
        let priority = number(line, words.next(), "priority")?;
        let owner = match number(line, words.next(), "owner")? {
            0 => Player::Even,
            1 => Player::Odd,
            o => return Err(parse_error(line, format!("owner must be 0 or 1, found {o}"))),
        };
        let succ_text = words.next().ok_or_else(|| parse_error(line, "missing successor list"))?;
        if words.next().is_some() {
            return Err(parse_error(line, "unexpected words after the successor list"));
        }
        let succ = succ_text
            .split(',')
            .map(|s| number(line, Some(s.trim()), "successor"))
            .collect::<Result<Vec<_>, _>>()?;
        let raw = RawVertex {
            line,
            priority,
            owner,
            succ,
            name,
        };
        if vertices.insert(id, raw).is_some() {
            return Err(parse_error(line, format!("vertex {id} defined twice")));
        }
    }
    if let (Some(max), Some((&last, v))) = (max_id, vertices.iter().next_back()) {
        if last > max {
            return Err(parse_error(v.line, format!("id {last} exceeds the declared maximum {max}")));
        }
    }
    let index: BTreeMap<usize, usize> = vertices.keys().enumerate().map(|(i, &id)| (id, i)).collect();
    let mut owner = Vec::new();
    let mut priority = Vec::new();
    let mut edges = Vec::new();
    let mut names = Vec::new();
    for v in vertices.values() {
        owner.push(v.owner);
        priority.push(v.priority);
        names.push(v.name.clone());
        edges.push(
            v.succ
                .iter()
                .map(|s| {
                    index
                        .get(s)
                        .copied()
                        .ok_or_else(|| parse_error(v.line, format!("successor {s} is not a vertex")))
                })
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    if owner.is_empty() {
        return Err(parse_error(1, "no vertices"));
    }
    GameArena::with_names(owner, priority, edges, names).map_err(|e| parse_error(1, e.to_string()))
}

pub fn pg_write(arena: &GameArena) -> String {
    let mut out = format!("parity {};\n", arena.len() - 1);
    for v in 0..arena.len() {
        let succ: Vec<String> = arena.successors(v).iter().map(usize::to_string).collect();
        let owner = arena.owner(v).index();
        write!(out, "{v} {} {owner} {}", arena.priority(v), succ.join(",")).unwrap();
        if let Some(name) = arena.name(v) {
            write!(out, " \"{name}\"").unwrap();
        }
        out.push_str(";\n");
    }
    out
}

pub fn write_solution(solution: &Solution) -> String {
    let mut out = format!("paritysol {};\n", solution.winner.len().saturating_sub(1));
    for (v, w) in solution.winner.iter().enumerate() {
        match solution.strategy[v] {
            Some(m) => writeln!(out, "{v} {} {m};", w.index()).unwrap(),
            None => writeln!(out, "{v} {};", w.index()).unwrap(),
        }
    }
    out
}

/// Parse a solution for an arena with `vertices` vertices.
pub fn read_solution(src: &str, vertices: usize) -> Result<Solution, GameError> {
    let mut winner = vec![None; vertices];
    let mut strategy = vec![None; vertices];
    for (i, (line, stmt)) in statements(src)?.into_iter().enumerate() {
        let mut words = stmt.split_whitespace();
        let first = words.next().expect("statement is not empty");
        if first == "paritysol" && i == 0 {
            continue;
        }
        let v = number(line, Some(first), "vertex id")?;
        if v >= vertices {
            return Err(parse_error(line, format!("vertex {v} is not in the arena")));
        }
        winner[v] = Some(match number(line, words.next(), "winner")? {
            0 => Player::Even,
            1 => Player::Odd,
            o => return Err(parse_error(line, format!("winner must be 0 or 1, found {o}"))),
        });
        if let Some(m) = words.next() {
            strategy[v] = Some(number(line, Some(m), "move")?);
        }
    }
    let winner = winner
        .into_iter()
        .enumerate()
        .map(|(v, w)| w.ok_or_else(|| parse_error(1, format!("no winner given for vertex {v}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Solution { winner, strategy })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::solve_zielonka;

    #[test]
    fn single_vertex() {
        let g = pg_read("parity 0; 0 0 0 0;").unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.successors(0), &[0]);
        assert_eq!(g.owner(0), Player::Even);
        assert_eq!(pg_write(&g), "parity 0;\n0 0 0 0;\n");
    }

    #[test]
    fn names_and_sparse_ids() {
        let src = "parity 7;\n# comment\n7 2 1 3 \"b;x\";\n3 1 0 3,7 \"a\";\nstart 3;\n";
        let g = pg_read(src).unwrap();
        assert_eq!(g.name(0), Some("a"));
        assert_eq!(g.successors(0), &[0, 1]);
        let again = pg_read(&pg_write(&g)).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn errors() {
        let e = pg_read("parity 1;\n0 1 0 1;\n1 2 1;\n").unwrap_err();
        assert_eq!(
            e,
            GameError::Parse {
                line: 3,
                message: "missing successor list".into()
            }
        );
        assert!(pg_read("0 1 0 5;").is_err());
        assert!(pg_read("0 1 2 0;").is_err());
        assert!(pg_read("0 1 0 0").is_err());
        assert!(pg_read("").is_err());
    }

    #[test]
    fn solution_round_trip() {
        let g = pg_read("0 1 0 0,1;\n1 2 1 1;\n").unwrap();
        let s = solve_zielonka(&g);
        let text = write_solution(&s);
        assert_eq!(text, "paritysol 1;\n0 0 1;\n1 0;\n");
        assert_eq!(read_solution(&text, 2).unwrap(), s);
    }
}
