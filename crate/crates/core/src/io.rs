//! graph6 and plain edge-list formats.
//!
//! graph6 follows the format description shipped with nauty: the order `n`
//! comes first (one byte for `n <= 62`, `~` plus three bytes up to 258047,
//! `~~` plus six bytes beyond), followed by the upper triangle of the
//! adjacency matrix in column order `(0,1), (0,2), (1,2), (0,3), ...`, packed
//! big-endian six bits per byte, each byte offset by 63. An optional
//! `>>graph6<<` header is accepted on input and never written.

use crate::graph::{Graph, GraphError, Vertex};
use thiserror::Error;

const HEADER: &str = ">>graph6<<";
const BIAS: u8 = 63;
const MAX_BYTE: u8 = 126;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("graph6: {reason} at byte {offset}")]
    Graph6 { offset: usize, reason: String },
    #[error("edge list line {line}: {reason}")]
    EdgeList { line: usize, reason: String },
}

fn g6_err(offset: usize, reason: impl Into<String>) -> ParseError {
    ParseError::Graph6 {
        offset,
        reason: reason.into(),
    }
}

/// Decodes one graph6 line. Surrounding whitespace is ignored.
pub fn parse_graph6(text: &str) -> Result<Graph, ParseError> {
    let trimmed = text.trim();
    let (base, body) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, trimmed.as_bytes()),
    };
    if body.is_empty() {
        return Err(g6_err(base, "empty input"));
    }
    for (i, &b) in body.iter().enumerate() {
        if !(BIAS..=MAX_BYTE).contains(&b) {
            return Err(g6_err(base + i, format!("byte {b:#04x} outside 63..=126")));
        }
    }

    let (n, header_len) = decode_order(body).map_err(|(off, why)| g6_err(base + off, why))?;
    let pairs = n * n.saturating_sub(1) / 2;
    let needed = pairs.div_ceil(6);
    let bits = &body[header_len..];
    if bits.len() < needed {
        return Err(g6_err(
            base + body.len(),
            format!(
                "truncated bit vector: expected {needed} bytes, found {}",
                bits.len()
            ),
        ));
    }
    if bits.len() > needed {
        return Err(g6_err(
            base + header_len + needed,
            "trailing bytes after bit vector",
        ));
    }

    let mut edges = Vec::new();
    let mut k = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = bits[k / 6] - BIAS;
            if byte & (0x20 >> (k % 6)) != 0 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    if !k.is_multiple_of(6) {
        let last = bits[needed - 1] - BIAS;
        let pad_mask = (1u8 << (6 - k % 6)) - 1;
        if last & pad_mask != 0 {
            return Err(g6_err(
                base + header_len + needed - 1,
                "nonzero padding bits",
            ));
        }
    }
    Ok(Graph::from_edges(n, edges).expect("decoded edges are in range"))
}

fn decode_order(body: &[u8]) -> Result<(usize, usize), (usize, &'static str)> {
    let value = |bytes: &[u8]| {
        bytes
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | usize::from(b - BIAS))
    };
    if body[0] != MAX_BYTE {
        return Ok((usize::from(body[0] - BIAS), 1));
    }
    if body.len() >= 2 && body[1] == MAX_BYTE {
        if body.len() < 8 {
            return Err((body.len(), "truncated long-form order"));
        }
        Ok((value(&body[2..8]), 8))
    } else {
        if body.len() < 4 {
            return Err((body.len(), "truncated order"));
        }
        Ok((value(&body[1..4]), 4))
    }
}

/// Encodes `g` as a graph6 line without header or newline.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    let push_groups = |out: &mut Vec<u8>, value: usize, groups: usize| {
        for i in (0..groups).rev() {
            out.push(((value >> (6 * i)) & 0x3f) as u8 + BIAS);
        }
    };
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(MAX_BYTE);
        push_groups(&mut out, n, 3);
    } else {
        out.push(MAX_BYTE);
        out.push(MAX_BYTE);
        push_groups(&mut out, n, 6);
    }

    let mut acc = 0u8;
    let mut k = 0usize;
    for v in 1..n {
        for u in 0..v {
            acc <<= 1;
            if g.has_edge(u, v) {
                acc |= 1;
            }
            k += 1;
            if k.is_multiple_of(6) {
                out.push(acc + BIAS);
                acc = 0;
            }
        }
    }
    if !k.is_multiple_of(6) {
        out.push((acc << (6 - k % 6)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Parses the edge-list format: a first line holding `n`, then one `u v`
/// pair per nonblank line. Duplicate edges are merged.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let err = |line: usize, reason: String| ParseError::EdgeList { line, reason };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (first, header) = lines
        .next()
        .ok_or_else(|| err(1, "missing vertex count".into()))?;
    let n: usize = header
        .parse()
        .map_err(|_| err(first, format!("expected vertex count, found {header:?}")))?;

    let mut edges = Vec::new();
    for (line, content) in lines {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(err(
                line,
                format!("expected two vertex ids, found {}", tokens.len()),
            ));
        }
        let parse = |t: &str| -> Result<Vertex, ParseError> {
            t.parse()
                .map_err(|_| err(line, format!("non-integer token {t:?}")))
        };
        let (u, v) = (parse(tokens[0])?, parse(tokens[1])?);
        if u == v {
            return Err(err(line, format!("self-loop at vertex {u}")));
        }
        if u >= n || v >= n {
            return Err(err(
                line,
                format!("vertex {} out of range 0..{n}", u.max(v)),
            ));
        }
        edges.push((u, v));
    }
    Graph::from_edges(n, edges).map_err(|e: GraphError| err(0, e.to_string()))
}

/// Writes the edge-list format accepted by [`parse_edge_list`].
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parses either format. Edge lists start with a decimal digit, which can
/// never begin a graph6 string.
pub fn parse_any(text: &str) -> Result<Graph, ParseError> {
    match text.trim_start().bytes().next() {
        Some(b) if b.is_ascii_digit() => parse_edge_list(text),
        _ => parse_graph6(text),
    }
}
