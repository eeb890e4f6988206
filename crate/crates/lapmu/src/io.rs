//! Graph text formats and generator specs.
//!
//! Edge list (0-based): one `u v` pair per line, `#` starts a comment line,
//! and an optional `n <count>` line fixes the vertex count (otherwise it is
//! one more than the largest endpoint). Duplicate pairs collapse.
//!
//! DIMACS (1-based): `c` comment lines, a `p edge <n> <m>` header, then
//! `e <u> <v>` lines. Vertices are shifted to 0-based on input.

use std::fmt::Write as _;
use std::str::FromStr;

use lapmu_core::{Generator, Graph};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: expected a nonnegative integer, got {token:?}")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: expected {expected}")]
    Malformed { line: usize, expected: &'static str },
    #[error("line {line}: endpoint {vertex} is not below the declared vertex count {n}")]
    OutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: vertex count declared twice")]
    DuplicateHeader { line: usize },
    #[error("missing `p edge <n> <m>` header")]
    MissingHeader,
    #[error("invalid generator spec {spec:?}: {reason}")]
    Generator { spec: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GraphFormat {
    #[default]
    EdgeList,
    Dimacs,
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edge-list" => Ok(GraphFormat::EdgeList),
            "dimacs" => Ok(GraphFormat::Dimacs),
            other => Err(format!("unknown format {other:?} (edge-list | dimacs)")),
        }
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph, ParseError> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Dimacs => parse_dimacs(text),
    }
}

fn parse_index(token: &str, line: usize) -> Result<usize, ParseError> {
    token.parse().map_err(|_| ParseError::InvalidToken {
        line,
        token: token.to_string(),
    })
}

/// Builds the graph from 0-based pairs tagged with their line numbers.
fn assemble(n: usize, pairs: Vec<(usize, usize, usize)>) -> Result<Graph, ParseError> {
    for &(a, b, line) in &pairs {
        if a == b {
            return Err(ParseError::SelfLoop { line, vertex: a });
        }
        if let Some(&vertex) = [a, b].iter().find(|&&v| v >= n) {
            return Err(ParseError::OutOfRange { line, vertex, n });
        }
    }
    Ok(Graph::from_edges(n, pairs.into_iter().map(|(a, b, _)| (a, b)))
        .expect("pairs validated above"))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut declared = None;
    let mut pairs = Vec::new();
    let mut max_end = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens[0] == "n" {
            if tokens.len() != 2 {
                return Err(ParseError::Malformed {
                    line,
                    expected: "`n <count>`",
                });
            }
            if declared.is_some() {
                return Err(ParseError::DuplicateHeader { line });
            }
            declared = Some(parse_index(tokens[1], line)?);
            continue;
        }
        if tokens.len() != 2 {
            return Err(ParseError::Malformed {
                line,
                expected: "two endpoints `u v`",
            });
        }
        let a = parse_index(tokens[0], line)?;
        let b = parse_index(tokens[1], line)?;
        if a == b {
            return Err(ParseError::SelfLoop { line, vertex: a });
        }
        max_end = max_end.max(Some(a.max(b)));
        pairs.push((a, b, line));
    }
    let n = declared.unwrap_or_else(|| max_end.map_or(0, |m| m + 1));
    assemble(n, pairs)
}

pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut declared = None;
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        match tokens.first().copied() {
            None | Some("c") => {}
            Some("p") => {
                if tokens.len() != 4 {
                    return Err(ParseError::Malformed {
                        line,
                        expected: "`p edge <n> <m>`",
                    });
                }
                if declared.is_some() {
                    return Err(ParseError::DuplicateHeader { line });
                }
                declared = Some(parse_index(tokens[2], line)?);
                parse_index(tokens[3], line)?;
            }
            Some("e") => {
                if tokens.len() != 3 {
                    return Err(ParseError::Malformed {
                        line,
                        expected: "`e <u> <v>`",
                    });
                }
                if declared.is_none() {
                    return Err(ParseError::MissingHeader);
                }
                let mut ends = [0usize; 2];
                for (slot, tok) in ends.iter_mut().zip(&tokens[1..]) {
                    let v = parse_index(tok, line)?;
                    if v == 0 {
                        return Err(ParseError::Malformed {
                            line,
                            expected: "1-based vertex numbers",
                        });
                    }
                    *slot = v - 1;
                }
                pairs.push((ends[0], ends[1], line));
            }
            Some(_) => {
                return Err(ParseError::Malformed {
                    line,
                    expected: "a `c`, `p` or `e` line",
                })
            }
        }
    }
    let n = declared.ok_or(ParseError::MissingHeader)?;
    assemble(n, pairs)
}

/// Edge-list text with an explicit `n` header, so isolated vertices survive
/// a round trip.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "# 0-based edge list").unwrap();
    writeln!(out, "n {}", g.n()).unwrap();
    for &(a, b) in g.edges() {
        writeln!(out, "{a} {b}").unwrap();
    }
    out
}

/// Parses `name:args`, e.g. `complete:5`, `complete_bipartite:2,3`,
/// `random:10,0.5,42`.
pub fn parse_generator(spec: &str) -> Result<Generator, ParseError> {
    let fail = |reason: &str| ParseError::Generator {
        spec: spec.to_string(),
        reason: reason.to_string(),
    };
    let (name, args) = spec.split_once(':').ok_or_else(|| fail("expected name:args"))?;
    let args: Vec<&str> = args.split(',').map(str::trim).collect();
    let int = |s: &str| s.parse::<usize>().map_err(|_| fail("expected integer arguments"));
    let arity = |k: usize| {
        if args.len() == k {
            Ok(())
        } else {
            Err(fail(&format!("{name} takes {k} argument(s)")))
        }
    };
    match name {
        "complete" => {
            arity(1)?;
            Ok(Generator::Complete(int(args[0])?))
        }
        "complete_bipartite" => {
            arity(2)?;
            Ok(Generator::CompleteBipartite(int(args[0])?, int(args[1])?))
        }
        "path" => {
            arity(1)?;
            Ok(Generator::Path(int(args[0])?))
        }
        "cycle" => {
            arity(1)?;
            Ok(Generator::Cycle(int(args[0])?))
        }
        "star" => {
            arity(1)?;
            Ok(Generator::Star(int(args[0])?))
        }
        "random" => {
            arity(3)?;
            let edge_probability = args[1]
                .parse::<f64>()
                .map_err(|_| fail("edge probability must be a real number"))?;
            let seed = args[2]
                .parse::<u64>()
                .map_err(|_| fail("seed must be a 64-bit unsigned integer"))?;
            Ok(Generator::Random {
                n: int(args[0])?,
                edge_probability,
                seed,
            })
        }
        _ => Err(fail(
            "unknown family (complete, complete_bipartite, path, cycle, star, random)",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_examples() {
        let g = parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!((g.n(), g.edges()), (3, &[(0, 1), (1, 2)][..]));
        let g = parse_edge_list("n 5\n0 1").unwrap();
        assert_eq!((g.n(), g.edge_count()), (5, 1));
        assert_eq!(
            parse_edge_list("0 0"),
            Err(ParseError::SelfLoop { line: 1, vertex: 0 })
        );
    }

    #[test]
    fn edge_list_comments_and_duplicates() {
        let g = parse_edge_list("# header\n\n0 1\n1 0\n  # indented\n0 1\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
        assert_eq!(parse_edge_list("").unwrap().n(), 0);
    }

    #[test]
    fn edge_list_errors_carry_line_numbers() {
        assert_eq!(
            parse_edge_list("0 1\n1 x"),
            Err(ParseError::InvalidToken {
                line: 2,
                token: "x".into()
            })
        );
        assert_eq!(
            parse_edge_list("0 1\n-1 2"),
            Err(ParseError::InvalidToken {
                line: 2,
                token: "-1".into()
            })
        );
        assert_eq!(
            parse_edge_list("n 3\n0 1\n2 3"),
            Err(ParseError::OutOfRange {
                line: 3,
                vertex: 3,
                n: 3
            })
        );
        assert!(matches!(
            parse_edge_list("0 1 2"),
            Err(ParseError::Malformed { line: 1, .. })
        ));
        assert_eq!(
            parse_edge_list("n 3\nn 4"),
            Err(ParseError::DuplicateHeader { line: 2 })
        );
    }

    #[test]
    fn dimacs_is_one_based() {
        let g = parse_dimacs("c tiny\np edge 4 3\ne 1 2\ne 2 3\ne 3 4\n").unwrap();
        assert_eq!((g.n(), g.edges()), (4, &[(0, 1), (1, 2), (2, 3)][..]));
        assert_eq!(parse_dimacs("e 1 2"), Err(ParseError::MissingHeader));
        assert!(matches!(
            parse_dimacs("p edge 2 1\ne 0 1"),
            Err(ParseError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            parse_dimacs("p edge 2 1\ne 1 3"),
            Err(ParseError::OutOfRange { line: 2, .. })
        ));
        assert!(matches!(
            parse_dimacs("p edge 2 1\ne 2 2"),
            Err(ParseError::SelfLoop { line: 2, .. })
        ));
    }

    #[test]
    fn edge_list_round_trip_keeps_isolated_vertices() {
        let g = Graph::from_edges(6, [(0, 3), (1, 2)]).unwrap();
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn generator_specs() {
        assert_eq!(parse_generator("complete:5"), Ok(Generator::Complete(5)));
        assert_eq!(
            parse_generator("complete_bipartite:2,2"),
            Ok(Generator::CompleteBipartite(2, 2))
        );
        assert_eq!(
            parse_generator("random:10,0.5,42"),
            Ok(Generator::Random {
                n: 10,
                edge_probability: 0.5,
                seed: 42
            })
        );
        assert!(parse_generator("complete").is_err());
        assert!(parse_generator("complete:2,3").is_err());
        assert!(parse_generator("wheel:5").is_err());
        assert!(parse_generator("path:x").is_err());
    }
}
