//! graph6 reader and writer.
//!
//! Only the vertex counts this crate supports (n <= 64) are handled, which
//! covers the one-byte header (n <= 62) and the four-byte `~` header.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

fn parse_err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

/// Parse one graph6 string. An optional `>>graph6<<` header and trailing
/// newline are accepted.
pub fn parse(text: &str) -> Result<Graph> {
    let mut bytes = text.as_bytes();
    let mut base = 0;
    if let Some(rest) = text.strip_prefix(HEADER) {
        bytes = rest.as_bytes();
        base = HEADER.len();
    }
    while let Some((&last, rest)) = bytes.split_last() {
        if last == b'\n' || last == b'\r' {
            bytes = rest;
        } else {
            break;
        }
    }
    if bytes.is_empty() {
        return Err(parse_err(base, "empty input"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(parse_err(base + i, format!("byte {b:#04x} outside graph6 range")));
        }
    }

    let (n, body_start) = if bytes[0] == 126 {
        if bytes.len() < 4 {
            return Err(parse_err(base, "truncated long vertex-count header"));
        }
        if bytes[1] == 126 {
            return Err(parse_err(base + 1, "eight-byte header exceeds supported size"));
        }
        let n = ((bytes[1] as usize - 63) << 12)
            | ((bytes[2] as usize - 63) << 6)
            | (bytes[3] as usize - 63);
        (n, 4)
    } else {
        (bytes[0] as usize - 63, 1)
    };
    if n > MAX_VERTICES {
        return Err(parse_err(base, format!("{n} vertices exceeds limit {MAX_VERTICES}")));
    }

    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let body = &bytes[body_start..];
    if body.len() != expected {
        let offset = base + body_start + body.len().min(expected);
        return Err(parse_err(
            offset,
            format!("expected {expected} data bytes for n={n}, found {}", body.len()),
        ));
    }

    let mut rows = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte & (0x20 >> (k % 6)) != 0 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = body[expected - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1u8 << pad) - 1) != 0 {
            return Err(parse_err(base + body_start + expected - 1, "non-zero padding bits"));
        }
    }
    Graph::from_rows(rows)
}

/// Encode as graph6 (no header, no newline).
pub fn write(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + n * n / 12 + 1);
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc <<= 1;
            if g.has_edge(i, j) {
                acc |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

impl serde::Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&write(self))
    }
}

impl<'de> serde::Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decodes_star_d_q() {
        // D?{ : 5 vertices, vertex 4 joined to the other four
        let g = parse("D?{").unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(g.edges(), vec![(0, 4), (1, 4), (2, 4), (3, 4)]);
        assert_eq!(write(&g), "D?{");
    }

    #[test]
    fn petgraph_small_graph() {
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(write(&g), "DQc");
    }

    #[test]
    fn errors() {
        assert!(matches!(parse(""), Err(Error::Graph6 { offset: 0, .. })));
        assert!(matches!(parse("D?"), Err(Error::Graph6 { offset: 2, .. })));
        assert!(matches!(parse("D?{?"), Err(Error::Graph6 { .. })));
        assert!(matches!(parse("D? "), Err(Error::Graph6 { offset: 2, .. })));
        // C has 3 bits of data, padding must be zero
        assert!(parse("Bw").is_ok());
        assert!(matches!(parse("B@"), Err(Error::Graph6 { offset: 1, .. })));
    }

    #[test]
    fn header_and_newline() {
        let g = parse(">>graph6<<Bw\n").unwrap();
        assert_eq!(g.size(), 3);
    }

    #[test]
    fn long_header_round_trip() {
        let mut edges = vec![];
        for v in 1..64 {
            edges.push((0, v));
        }
        let g = Graph::from_edges(64, &edges).unwrap();
        let s = write(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse(&s).unwrap(), g);
    }
}
