//! Line-oriented text format with exact rationals.
//!
//! ```text
//! POLYTOPE 1
//! DIM 3
//! VERTICES 4
//! 0 0 0
//! 1 0 0
//! 0 1/2 0
//! 0 0 1
//! FACETS 4
//! 0 1 2
//! ...
//! ```
//!
//! `#` starts a comment; blank lines are ignored. Facet rows are 0-based
//! vertex indices. Without a `FACETS` block the facets are recomputed from the
//! coordinates.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{Scalar, Vector};
use crate::polytope::Polytope;
use crate::vset::VertexSet;

pub const FORMAT_VERSION: u32 = 1;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// `p` or `p/q` with `q != 0`; the value is reduced.
pub fn parse_rational(tok: &str) -> Option<Scalar> {
    let (num, den) = match tok.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok, "1"),
    };
    let num = BigInt::from_str(num).ok()?;
    let den = BigInt::from_str(den).ok()?;
    if den.is_zero() || tok.starts_with('+') || tok.contains("/+") || tok.contains("/-") {
        return None;
    }
    Some(Scalar::new(num, den))
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    /// The next non-empty line with comments stripped, with its 1-based
    /// number.
    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        for (i, raw) in self.inner.by_ref() {
            self.last = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if !body.is_empty() {
                return Some((i + 1, body));
            }
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.next_content()
            .ok_or_else(|| parse_err(self.last + 1, format!("unexpected end of file, expected {what}")))
    }

    /// A `KEYWORD value` line.
    fn header(&mut self, keyword: &str) -> Result<(usize, usize)> {
        let (line, body) = self.expect(keyword)?;
        let mut it = body.split_whitespace();
        if it.next() != Some(keyword) {
            return Err(parse_err(line, format!("expected `{keyword} <n>`")));
        }
        let value = it
            .next()
            .and_then(|v| v.parse::<usize>().ok())
            .ok_or_else(|| parse_err(line, format!("`{keyword}` needs a nonnegative integer")))?;
        if it.next().is_some() {
            return Err(parse_err(line, format!("trailing tokens after `{keyword}`")));
        }
        Ok((line, value))
    }
}

/// Parses a polytope file and verifies the polytope invariants.
pub fn parse(text: &str) -> Result<Polytope> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
        last: 0,
    };
    let (line, version) = lines.header("POLYTOPE")?;
    if version != FORMAT_VERSION as usize {
        return Err(parse_err(line, format!("unsupported format version {version}")));
    }
    let (line, dim) = lines.header("DIM")?;
    if dim == 0 {
        return Err(parse_err(line, "dimension must be positive"));
    }
    let (_, n) = lines.header("VERTICES")?;
    let mut vertices = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, body) = lines.expect("a vertex row")?;
        let coords: Vec<Scalar> = body
            .split_whitespace()
            .map(|t| parse_rational(t).ok_or_else(|| parse_err(line, format!("bad rational `{t}`"))))
            .collect::<Result<_>>()?;
        if coords.len() != dim {
            return Err(parse_err(
                line,
                format!("vertex row has {} coordinates, expected {dim}", coords.len()),
            ));
        }
        vertices.push(Vector::new(coords));
    }
    let Some((line, body)) = lines.next_content() else {
        return Polytope::from_points(dim, vertices);
    };
    let mut it = body.split_whitespace();
    let m = match (it.next(), it.next().map(str::parse::<usize>), it.next()) {
        (Some("FACETS"), Some(Ok(m)), None) => m,
        _ => return Err(parse_err(line, "expected `FACETS <m>` or end of file")),
    };
    let mut sets = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, body) = lines.expect("a facet row")?;
        let mut set = VertexSet::new();
        for t in body.split_whitespace() {
            let i: usize = t
                .parse()
                .map_err(|_| parse_err(line, format!("bad vertex index `{t}`")))?;
            if i >= n {
                return Err(parse_err(line, format!("vertex index {i} out of range")));
            }
            set.insert(i);
        }
        sets.push(set);
    }
    if let Some((line, _)) = lines.next_content() {
        return Err(parse_err(line, "content after the FACETS block"));
    }
    Polytope::from_facet_sets(dim, vertices, sets)
}

/// Canonical text: reduced rationals and facet rows in the polytope's sorted
/// facet order.
pub fn emit(p: &Polytope) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "POLYTOPE {FORMAT_VERSION}");
    let _ = writeln!(out, "DIM {}", p.dim());
    let _ = writeln!(out, "VERTICES {}", p.num_vertices());
    for v in p.vertices() {
        let row: Vec<String> = v.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    let _ = writeln!(out, "FACETS {}", p.num_facets());
    for f in p.facets() {
        let row: Vec<String> = f.vertices.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn read_file(path: impl AsRef<Path>) -> Result<Polytope> {
    parse(&std::fs::read_to_string(path)?)
}

pub fn write_file(path: impl AsRef<Path>, p: &Polytope) -> Result<()> {
    std::fs::write(path, emit(p))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("6/4"), Some(crate::exact::frac(3, 2)));
        assert_eq!(parse_rational("-7"), Some(crate::exact::int(-7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1/-2"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn round_trip_catalog() {
        for name in catalog::names() {
            let p = catalog::polytope(name);
            let text = emit(&p);
            let q = parse(&text).unwrap();
            assert_eq!(emit(&q), text, "{name}");
        }
    }

    #[test]
    fn vertices_only_simplex() {
        let text = "POLYTOPE 1\n# the standard simplex\nDIM 4\nVERTICES 5\n0 0 0 0\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n";
        assert_eq!(parse(text).unwrap().num_facets(), 5);
    }

    #[test]
    fn incomplete_facet_row_is_an_invariant_error() {
        let text = "POLYTOPE 1\nDIM 2\nVERTICES 4\n0 0\n1 0\n2 0\n0 1\nFACETS 3\n0 2\n0 3\n2 3\n";
        assert!(matches!(parse(text), Err(Error::InvalidPolytope(_))));
    }

    #[test]
    fn syntax_errors_carry_lines() {
        let text = "POLYTOPE 1\nDIM 2\nVERTICES 3\n0 0\n1 zero\n0 1\n";
        match parse(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("POLYTOPE 1\nDIM 2\n"), Err(Error::Parse { line: 3, .. })));
    }
}
