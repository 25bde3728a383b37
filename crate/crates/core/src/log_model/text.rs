//! Line-oriented text format.
//!
//! ```text
//! # comment
//! vertices: x y z
//! edge e1: x -> y : z
//! edge e2: z -> y : x
//! ```
//!
//! The edge id and its colon may be omitted; ids are then generated as
//! `e<k>`, skipping ids already in use.

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use super::{valid_name, Log, LogError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: unknown vertex {name}")]
    UnknownVertex {
        line: usize,
        column: usize,
        name: String,
    },
    #[error("{line}:{column}: duplicate vertex {name}")]
    DuplicateVertex {
        line: usize,
        column: usize,
        name: String,
    },
    #[error("{line}:{column}: duplicate edge id {id}")]
    DuplicateEdge {
        line: usize,
        column: usize,
        id: String,
    },
}

struct RawEdge {
    line: usize,
    id: Option<(String, usize)>,
    ends: [(String, usize); 3],
}

/// Splits `text` at the first occurrence of `pat`, returning both sides with
/// the byte offset of the right-hand side.
fn split_once_at<'a>(text: &'a str, pat: &str) -> Option<(&'a str, &'a str, usize)> {
    text.find(pat)
        .map(|i| (&text[..i], &text[i + pat.len()..], i + pat.len()))
}

/// Trims a field and returns it with its 1-based column.
fn field(line: &str, start: usize, raw: &str) -> (String, usize) {
    let lead = raw.len() - raw.trim_start().len();
    let col = line[..start + lead].chars().count() + 1;
    (raw.trim().to_string(), col)
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn check_name(line: usize, (name, col): &(String, usize), what: &str) -> Result<(), ParseError> {
    if valid_name(name) {
        Ok(())
    } else if name.is_empty() {
        Err(syntax(line, *col, format!("missing {what}")))
    } else {
        Err(syntax(line, *col, format!("invalid {what} {name:?}")))
    }
}

fn parse_edge(line_no: usize, line: &str, body_start: usize) -> Result<RawEdge, ParseError> {
    let body = &line[body_start..];
    let (id_part, rest, rest_off) = match (body.find(':'), body.find("->")) {
        (Some(c), Some(a)) if c < a => {
            let (id, rest, off) = split_once_at(body, ":").expect("colon present");
            (Some(id), rest, off)
        }
        _ => (None, body, 0),
    };
    let rest_start = body_start + rest_off;
    let id = id_part.map(|raw| field(line, body_start, raw));
    if let Some(id) = &id {
        check_name(line_no, id, "edge id")?;
    }

    let col_end = line.chars().count() + 1;
    let (src, after, off) =
        split_once_at(rest, "->").ok_or_else(|| syntax(line_no, col_end, "expected '->'"))?;
    let src = field(line, rest_start, src);
    let after_start = rest_start + off;
    let (tgt, label, off) = split_once_at(after, ":")
        .ok_or_else(|| syntax(line_no, col_end, "expected ':' before the label"))?;
    let tgt = field(line, after_start, tgt);
    let label = field(line, after_start + off, label);
    check_name(line_no, &src, "source")?;
    check_name(line_no, &tgt, "target")?;
    check_name(line_no, &label, "label")?;
    Ok(RawEdge {
        line: line_no,
        id,
        ends: [src, tgt, label],
    })
}

pub fn parse_log(text: &str) -> Result<Log, ParseError> {
    let mut log: Option<Log> = None;
    let mut raw_edges = Vec::new();

    for (i, raw_line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw_line
            .split('#')
            .next()
            .unwrap_or("")
            .trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        let content = &line[indent..];
        match &mut log {
            None => {
                let Some(rest) = content.strip_prefix("vertices:") else {
                    return Err(syntax(line_no, indent + 1, "expected 'vertices:'"));
                };
                let mut l = Log::default();
                let mut offset = indent + "vertices:".len();
                for token in rest.split_whitespace() {
                    let pos = line[offset..].find(token).expect("token in line") + offset;
                    let col = line[..pos].chars().count() + 1;
                    offset = pos + token.len();
                    match l.push_vertex(token) {
                        Ok(_) => {}
                        Err(LogError::DuplicateVertex(name)) => {
                            return Err(ParseError::DuplicateVertex {
                                line: line_no,
                                column: col,
                                name,
                            })
                        }
                        Err(_) => {
                            return Err(syntax(
                                line_no,
                                col,
                                format!("invalid vertex name {token:?}"),
                            ))
                        }
                    }
                }
                log = Some(l);
            }
            Some(_) => {
                let Some(rest) = content.strip_prefix("edge") else {
                    return Err(syntax(line_no, indent + 1, "expected 'edge'"));
                };
                if !rest.starts_with(char::is_whitespace) {
                    return Err(syntax(
                        line_no,
                        indent + 5,
                        "expected whitespace after 'edge'",
                    ));
                }
                raw_edges.push(parse_edge(line_no, line, indent + 4)?);
            }
        }
    }

    let mut log =
        log.ok_or_else(|| syntax(text.lines().count() + 1, 1, "missing 'vertices:' line"))?;

    let explicit: BTreeSet<&str> = raw_edges
        .iter()
        .filter_map(|e| e.id.as_ref().map(|(id, _)| id.as_str()))
        .collect();
    let mut next_auto = 1usize;
    let mut seen: HashSet<String> = HashSet::new();
    let mut resolved = Vec::with_capacity(raw_edges.len());
    for raw in &raw_edges {
        let (id, col) = match &raw.id {
            Some((id, col)) => (id.clone(), *col),
            None => {
                let id = loop {
                    let candidate = format!("e{next_auto}");
                    next_auto += 1;
                    if !explicit.contains(candidate.as_str()) && !seen.contains(&candidate) {
                        break candidate;
                    }
                };
                (id, raw.ends[0].1)
            }
        };
        if !seen.insert(id.clone()) {
            return Err(ParseError::DuplicateEdge {
                line: raw.line,
                column: col,
                id,
            });
        }
        let mut idx = [0usize; 3];
        for (slot, (name, col)) in idx.iter_mut().zip(&raw.ends) {
            *slot = log
                .vertex_index(name)
                .ok_or_else(|| ParseError::UnknownVertex {
                    line: raw.line,
                    column: *col,
                    name: name.clone(),
                })?;
        }
        resolved.push((id, idx));
    }
    for (id, [s, t, l]) in resolved {
        log.push_edge(&id, s, t, l).expect("validated edge");
    }
    Ok(log)
}

pub fn serialize_log(log: &Log) -> String {
    let mut out = String::from("vertices:");
    for v in log.vertices() {
        out.push(' ');
        out.push_str(v);
    }
    out.push('\n');
    for e in 0..log.edge_count() {
        out.push_str("edge ");
        out.push_str(&log.describe_edge(e));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_examples() {
        assert_eq!(parse_log("vertices: x\n").unwrap(), triv());
        let doc = "vertices: x y z\nedge e1: x -> y : z\nedge e2: z -> y : x\n";
        assert_eq!(parse_log(doc).unwrap(), vee());
        assert_eq!(
            parse_log("vertices: x y\nedge e: x -> q : y\n"),
            Err(ParseError::UnknownVertex {
                line: 2,
                column: 14,
                name: "q".into()
            })
        );
    }

    #[test]
    fn serializes_examples() {
        assert_eq!(serialize_log(&triv()), "vertices: x\n");
        assert_eq!(
            serialize_log(&vee()),
            "vertices: x y z\nedge e1: x -> y : z\nedge e2: z -> y : x\n"
        );
        assert!(serialize_log(&vee_rho())
            .lines()
            .any(|l| l == "edge e2: y -> z : x"));
    }

    #[test]
    fn comments_blank_lines_and_auto_ids() {
        let doc =
            "# a comment\n\nvertices: a b c # trailing\n  edge a -> b : c\nedge e1: b -> c : a\n";
        let log = parse_log(doc).unwrap();
        assert_eq!(log.edges()[0].id, "e2");
        assert_eq!(log.edges()[1].id, "e1");
    }

    #[test]
    fn syntax_errors_report_position() {
        match parse_log("edge e: x -> y : z\n") {
            Err(ParseError::Syntax {
                line: 1, column: 1, ..
            }) => {}
            other => panic!("{other:?}"),
        }
        match parse_log("vertices: x y\nedge e: x y : x\n") {
            Err(ParseError::Syntax { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_log("vertices: x x\n") {
            Err(ParseError::DuplicateVertex {
                line: 1,
                column: 13,
                ..
            }) => {}
            other => panic!("{other:?}"),
        }
        match parse_log("vertices: x y\nedge e: x -> y : x\nedge e: y -> x : y\n") {
            Err(ParseError::DuplicateEdge { line: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(parse_log("").is_err());
    }

    fn arb_log() -> impl Strategy<Value = Log> {
        (1usize..7).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n, 0..n), 0..8).prop_map(move |edges| {
                let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
                let mut log = Log::default();
                for name in &names {
                    log.push_vertex(name).unwrap();
                }
                for (i, (s, t, l)) in edges.into_iter().enumerate() {
                    log.push_edge(&format!("k{i}"), s, t, l).unwrap();
                }
                log
            })
        })
    }

    proptest! {
        #[test]
        fn round_trip(log in arb_log()) {
            let text = serialize_log(&log);
            prop_assert_eq!(parse_log(&text).unwrap(), log);
        }
    }
}
