//! DIMACS CNF interchange.
//!
//! Export writes `c var <n> = <id>` comments carrying the variable map,
//! then the standard `p cnf <vars> <clauses>` header and one
//! zero-terminated clause per line. Import tolerates comments anywhere,
//! accepts clauses split across lines, and reconstructs the variable map
//! from the comments (missing entries default to `v<n>`).

use std::fmt::Write as _;

use super::{ParseError, ParseErrorKind, SourceSpan};
use crate::bridge::VarMap;
use crate::solver::Cnf;

pub fn export_dimacs(cnf: &Cnf) -> String {
    let mut out = String::new();
    for (var, id) in cnf.origin.iter() {
        let _ = writeln!(out, "c var {var} = {id}");
    }
    let _ = writeln!(out, "p cnf {} {}", cnf.num_vars, cnf.clauses.len());
    for clause in &cnf.clauses {
        for lit in clause {
            let _ = write!(out, "{lit} ");
        }
        out.push_str("0\n");
    }
    out
}

pub fn parse_dimacs(text: &str) -> Result<Cnf, ParseError> {
    let mut header: Option<(u32, usize)> = None;
    let mut names: Vec<(u32, String)> = Vec::new();
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut last_line = 1u32;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx as u32 + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let line_span = SourceSpan::new(line_no, 1, raw.chars().count() as u32);

        if line == "c" || line.starts_with("c ") || line.starts_with("c\t") {
            // `c var <n> = <id>` records the variable map; other comments
            // are free text
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if let ["c", "var", n, "=", id] = tokens[..] {
                if let Ok(n) = n.parse::<u32>() {
                    names.push((n, id.to_owned()));
                }
            }
            continue;
        }

        let Some((num_vars, _)) = header else {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let parsed = match tokens[..] {
                ["p", "cnf", nv, nc] => nv.parse::<u32>().ok().zip(nc.parse::<usize>().ok()),
                _ => None,
            };
            match parsed {
                Some(h) => {
                    header = Some(h);
                    continue;
                }
                None => {
                    return Err(ParseError::new(
                        line_span,
                        ParseErrorKind::Header,
                        "malformed header",
                    )
                    .expecting("`p cnf <vars> <clauses>`"))
                }
            }
        };

        for token in line.split_whitespace() {
            let lit: i32 = token.parse().map_err(|_| {
                ParseError::new(
                    line_span,
                    ParseErrorKind::Syntax,
                    format!("`{token}` is not a literal"),
                )
                .expecting("a signed integer")
            })?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                if lit.unsigned_abs() > num_vars {
                    return Err(ParseError::new(
                        line_span,
                        ParseErrorKind::LiteralOutOfRange,
                        format!("literal {lit} exceeds the {num_vars} declared variables"),
                    ));
                }
                current.push(lit);
            }
        }
    }

    let end_span = SourceSpan::new(last_line, 1, 0);
    let Some((num_vars, num_clauses)) = header else {
        return Err(ParseError::new(
            SourceSpan::new(1, 1, 0),
            ParseErrorKind::Header,
            "missing `p cnf` header",
        ));
    };
    if !current.is_empty() {
        return Err(ParseError::new(
            end_span,
            ParseErrorKind::Syntax,
            "last clause is missing its 0 terminator",
        ));
    }
    if clauses.len() != num_clauses {
        return Err(ParseError::new(
            end_span,
            ParseErrorKind::Value,
            format!(
                "header declares {num_clauses} clauses but {} were found",
                clauses.len()
            ),
        ));
    }

    let mut ids: Vec<String> = (1..=num_vars).map(|v| format!("v{v}")).collect();
    for (n, id) in names {
        if let Some(slot) = n
            .checked_sub(1)
            .and_then(|i| ids.get_mut(i as usize))
        {
            *slot = id;
        }
    }
    Ok(Cnf::new(num_vars, clauses, VarMap::new(ids)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(ids: &[&str]) -> VarMap {
        VarMap::new(ids.iter().map(|s| (*s).to_owned()).collect())
    }

    #[test]
    fn exports_units_with_map_comments() {
        let cnf = Cnf::new(2, vec![vec![1], vec![2]], named(&["uptime", "latency"]));
        assert_eq!(
            export_dimacs(&cnf),
            "c var 1 = uptime\nc var 2 = latency\np cnf 2 2\n1 0\n2 0\n"
        );
    }

    #[test]
    fn exports_empty_cnf_as_bare_header() {
        let cnf = Cnf::new(0, vec![], VarMap::default());
        assert_eq!(export_dimacs(&cnf), "p cnf 0 0\n");
    }

    #[test]
    fn parses_binary_clauses() {
        let cnf = parse_dimacs("p cnf 2 2\n1 -2 0\n-1 2 0\n").unwrap();
        assert_eq!(cnf.num_vars, 2);
        assert_eq!(cnf.clauses, vec![vec![1, -2], vec![-1, 2]]);
        // no map comments: default names
        assert_eq!(cnf.origin.id_of(1), Some("v1"));
    }

    #[test]
    fn out_of_range_literal_rejected() {
        let err = parse_dimacs("p cnf 1 1\n5 0\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::LiteralOutOfRange);
        assert_eq!(err.span.line, 2);
    }

    #[test]
    fn round_trips_with_origin() {
        let cnf = Cnf::new(
            3,
            vec![vec![1, -2], vec![3], vec![]],
            named(&["a.x", "a.y", "aux1"]),
        );
        assert_eq!(parse_dimacs(&export_dimacs(&cnf)).unwrap(), cnf);
    }

    #[test]
    fn comments_tolerated_anywhere() {
        let text = "c preamble\np cnf 2 2\nc between\n1 0\nc var 2 = late\n2 0\nc trailing\n";
        let cnf = parse_dimacs(text).unwrap();
        assert_eq!(cnf.clauses.len(), 2);
        assert_eq!(cnf.origin.id_of(2), Some("late"));
        assert_eq!(cnf.origin.id_of(1), Some("v1"));
    }

    #[test]
    fn clauses_may_span_lines() {
        let cnf = parse_dimacs("p cnf 3 2\n1 2\n3 0 -1\n-2 0\n").unwrap();
        assert_eq!(cnf.clauses, vec![vec![1, 2, 3], vec![-1, -2]]);
    }

    #[test]
    fn missing_terminator_rejected() {
        let err = parse_dimacs("p cnf 2 1\n1 2\n").unwrap_err();
        assert!(err.message.contains("terminator"));
    }

    #[test]
    fn clause_count_mismatch_rejected() {
        let err = parse_dimacs("p cnf 2 3\n1 0\n2 0\n").unwrap_err();
        assert!(err.message.contains("declares 3"));
    }

    #[test]
    fn bad_header_rejected() {
        let err = parse_dimacs("p dnf 2 2\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Header);
        assert!(parse_dimacs("").is_err());
    }
}
