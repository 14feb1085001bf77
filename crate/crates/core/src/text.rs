//! Plain-text digraph format.
//!
//! ```text
//! n m
//! u v      (m lines, one directed edge u -> v each, 0-based)
//! ```
//!
//! Every line is newline-terminated. Loops and repeated edges are rejected
//! with the offending line number (1-based).

use std::fmt::Write as _;

use crate::digraph::{Builder, Digraph};
use crate::error::{Error, Result};

pub fn to_text(g: &Digraph) -> String {
    let mut s = String::with_capacity(8 * (g.edge_count() + 1));
    let _ = writeln!(s, "{} {}", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

fn two_numbers(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let mut it = line.split_ascii_whitespace();
    let parse = |tok: Option<&str>| -> Result<usize> {
        let tok = tok.ok_or_else(|| Error::Parse {
            line: lineno,
            msg: "expected two integers".into(),
        })?;
        tok.parse().map_err(|_| Error::Parse {
            line: lineno,
            msg: format!("{tok:?} is not a non-negative integer"),
        })
    };
    let a = parse(it.next())?;
    let b = parse(it.next())?;
    if it.next().is_some() {
        return Err(Error::Parse {
            line: lineno,
            msg: "trailing tokens".into(),
        });
    }
    Ok((a, b))
}

pub fn parse_text(input: &str) -> Result<Digraph> {
    if !input.is_empty() && !input.ends_with('\n') {
        return Err(Error::Parse {
            line: input.lines().count(),
            msg: "missing final newline".into(),
        });
    }
    let mut lines = input.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty input".into(),
    })?;
    let (n, m) = two_numbers(header, 1)?;
    let mut b = Builder::new(n);
    let mut count = 0;
    for (lineno, line) in lines {
        if count == m {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("more than the declared {m} edges"),
            });
        }
        let (u, v) = two_numbers(line, lineno)?;
        if u >= n || v >= n {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("edge {u} {v} out of range for n = {n}"),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("loop at vertex {u}"),
            });
        }
        if b.has_edge(u, v) {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("duplicate edge {u} {v}"),
            });
        }
        b.edge(u, v);
        count += 1;
    }
    if count != m {
        return Err(Error::Parse {
            line: count + 2,
            msg: format!("expected {m} edges, found {count}"),
        });
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_and_reads_triangle() {
        let g = Digraph::directed_cycle(3);
        let s = to_text(&g);
        assert_eq!(s, "3 3\n0 1\n1 2\n2 0\n");
        assert_eq!(parse_text(&s).unwrap(), g);
    }

    #[test]
    fn rejects_with_line_numbers() {
        let loop_err = parse_text("3 2\n0 1\n2 2\n").unwrap_err();
        assert!(matches!(loop_err, Error::Parse { line: 3, .. }), "{loop_err:?}");
        let dup = parse_text("3 2\n0 1\n0 1\n").unwrap_err();
        assert!(matches!(dup, Error::Parse { line: 3, .. }));
        assert!(matches!(
            parse_text("3 1\n0 5\n").unwrap_err(),
            Error::Parse { line: 2, .. }
        ));
        assert!(parse_text("3 2\n0 1\n").is_err());
        assert!(parse_text("3 0\n0 1\n").is_err());
        assert!(parse_text("3 1\n0 1").is_err());
        assert!(parse_text("").is_err());
        assert!(parse_text("x 1\n").is_err());
    }

    #[test]
    fn empty_digraph() {
        let g = parse_text("4 0\n").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(to_text(&g), "4 0\n");
    }
}
