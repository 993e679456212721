//! Plain-text exchange formats.
//!
//! Facet lists start with a `# p=<p> n=<n>` header followed by one facet per
//! line, vertices separated by spaces, e.g. `(1,1,1) (2,2,2)`. Blank lines and
//! further `#` lines are ignored when reading.

use std::io::Write;

use crate::complex::{ComplexParams, Face};
use crate::error::{Error, Result};

pub fn write_facets<W: Write>(params: &ComplexParams, facets: &[Face], mut out: W) -> std::io::Result<()> {
    writeln!(out, "# p={} n={}", params.p(), params.n())?;
    for f in facets {
        writeln!(out, "{f}")?;
    }
    Ok(())
}

pub fn facets_to_string(params: &ComplexParams, facets: &[Face]) -> String {
    let mut buf = Vec::new();
    write_facets(params, facets, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

fn parse_header(line: &str) -> Option<(usize, u32)> {
    let rest = line.strip_prefix('#')?.trim();
    let mut p = None;
    let mut n = None;
    for part in rest.split_whitespace() {
        if let Some(v) = part.strip_prefix("p=") {
            p = v.parse().ok();
        } else if let Some(v) = part.strip_prefix("n=") {
            n = v.parse().ok();
        }
    }
    Some((p?, n?))
}

/// Parses `(a,b,c)` tuples separated by whitespace.
pub fn parse_face(arity: usize, line: &str) -> Result<Face> {
    let mut word = Vec::new();
    for token in line.split_whitespace() {
        let inner = token
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::domain(format!("malformed vertex `{token}`")))?;
        let coords: Vec<u32> = inner
            .split(',')
            .map(|c| c.trim().parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::domain(format!("malformed vertex `{token}`")))?;
        if coords.len() != arity {
            return Err(Error::domain(format!("vertex `{token}` does not have arity {arity}")));
        }
        word.extend(coords);
    }
    Ok(Face::from_word(arity, word))
}

/// Reads a facet list, validating every line as a face of the stated complex.
/// Line order is preserved; vertices within a line may come in any order.
pub fn read_facets(text: &str) -> Result<(ComplexParams, Vec<Face>)> {
    let mut lines = text.lines();
    let header = lines
        .by_ref()
        .find(|l| !l.trim().is_empty())
        .ok_or_else(|| Error::domain("facet file is empty"))?;
    let (p, n) = parse_header(header.trim())
        .ok_or_else(|| Error::domain("facet file must start with `# p=<p> n=<n>`"))?;
    let params = ComplexParams::new(p, n)?;
    let mut facets = Vec::new();
    for line in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let face = parse_face(p, line)?;
        let vertices: Vec<crate::complex::Vertex> = face.vertices().map(crate::complex::Vertex::from).collect();
        let face = Face::from_vertices(p, &vertices);
        params.validate_face(&face)?;
        facets.push(face);
    }
    Ok((params, facets))
}
