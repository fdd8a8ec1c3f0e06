//! graph6 text encoding and an adjacency-list JSON form.
//!
//! graph6 packs the upper triangle of the adjacency matrix column by column
//! into 6-bit groups offset by 63, bit-exact with the standard format. Loops
//! cannot be represented in graph6; loop-carrying graphs round-trip through
//! the JSON form instead.

use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum G6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {offset}: invalid graph6 byte 0x{byte:02x}")]
    BadByte { offset: usize, byte: u8 },
    #[error("byte {offset}: truncated input, expected {expected} data bytes")]
    Truncated { offset: usize, expected: usize },
    #[error("byte {offset}: trailing data after graph")]
    Trailing { offset: usize },
    #[error("graph too large for this encoder (n = {0})")]
    TooLarge(usize),
    #[error("graph6 cannot encode loops")]
    HasLoops,
}

/// Encodes a simple graph as graph6. Supports the one-byte size prefix
/// (n <= 62) and the three-byte extended prefix (n <= 258047).
pub fn encode_g6(g: &Graph) -> Result<String, G6Error> {
    if !g.is_simple() {
        return Err(G6Error::HasLoops);
    }
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else if n <= 258_047 {
        out.push(126);
        let v = n as u32;
        out.push(63 + ((v >> 12) & 63) as u8);
        out.push(63 + ((v >> 6) & 63) as u8);
        out.push(63 + (v & 63) as u8);
    } else {
        return Err(G6Error::TooLarge(n));
    }
    // Upper triangle, column-major: bit (i, j) for i < j ordered by (j, i).
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            nbits += 1;
            if nbits == 6 {
                out.push(63 + acc);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        acc <<= 6 - nbits;
        out.push(63 + acc);
    }
    Ok(String::from_utf8(out).unwrap())
}

/// Decodes a graph6 string. Errors carry the byte offset of the problem.
pub fn decode_g6(text: &str) -> Result<Graph, G6Error> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(G6Error::Empty);
    }
    let check = |offset: usize| -> Result<u64, G6Error> {
        let b = *bytes.get(offset).ok_or(G6Error::Truncated {
            offset,
            expected: 1,
        })?;
        if !(63..=126).contains(&b) {
            return Err(G6Error::BadByte { offset, byte: b });
        }
        Ok((b - 63) as u64)
    };
    let (n, mut pos) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            // 8-byte size prefix for n > 258047; out of scope here.
            return Err(G6Error::TooLarge(usize::MAX));
        }
        let n = (check(1)? << 12) | (check(2)? << 6) | check(3)?;
        (n as usize, 4)
    } else {
        (check(0)? as usize, 1)
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let ndata = nbits.div_ceil(6);
    if bytes.len() < pos + ndata {
        return Err(G6Error::Truncated {
            offset: bytes.len(),
            expected: pos + ndata - bytes.len(),
        });
    }
    if bytes.len() > pos + ndata {
        return Err(G6Error::Trailing { offset: pos + ndata });
    }
    let mut g = Graph::new(n);
    let mut bit = 0usize;
    let mut cur = 0u64;
    let mut left = 0usize;
    for j in 1..n {
        for i in 0..j {
            if left == 0 {
                cur = check(pos)?;
                pos += 1;
                left = 6;
            }
            if cur & (1 << (left - 1)) != 0 {
                g.add_edge(i, j);
            }
            left -= 1;
            bit += 1;
        }
    }
    let _ = bit;
    Ok(g)
}

/// Adjacency-list JSON shape: `{"n": 3, "edges": [[0,1]], "loops": [2]}`.
#[derive(Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub loops: Vec<usize>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges(),
            loops: g.loop_vertices(),
        }
    }
}

#[derive(Debug, Error)]
pub enum GraphJsonError {
    #[error("invalid JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("edge endpoint {0} out of range for n = {1}")]
    EdgeRange(usize, usize),
    #[error("loop vertex {0} out of range for n = {1}")]
    LoopRange(usize, usize),
    #[error("self-edge [{0}, {0}] not allowed; list it under \"loops\"")]
    SelfEdge(usize),
}

pub fn encode_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::from(g)).unwrap()
}

pub fn decode_json(text: &str) -> Result<Graph, GraphJsonError> {
    let spec: GraphJson = serde_json::from_str(text)?;
    let mut g = Graph::new(spec.n);
    for (u, v) in spec.edges {
        if u == v {
            return Err(GraphJsonError::SelfEdge(u));
        }
        let hi = u.max(v);
        if hi >= spec.n {
            return Err(GraphJsonError::EdgeRange(hi, spec.n));
        }
        g.add_edge(u, v);
    }
    for v in spec.loops {
        if v >= spec.n {
            return Err(GraphJsonError::LoopRange(v, spec.n));
        }
        g.add_loop(v);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k3_encodes_to_bw() {
        // Hand-packed: n=3 -> 'B'; bits 111 padded to 111000 -> 56+63 = 'w'.
        assert_eq!(encode_g6(&Graph::complete(3)).unwrap(), "Bw");
    }

    #[test]
    fn all_zero_bits_decode_to_empty_graph() {
        let g = decode_g6("B?").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn petersen_round_trip() {
        let p = Graph::petersen();
        let enc = encode_g6(&p).unwrap();
        let back = decode_g6(&enc).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn known_small_encodings() {
        // Hand-packed fixtures: P_4 bits 101001 -> 41+63 = 'h';
        // K_5 bits 111111,1111(00) -> '~','{'.
        assert_eq!(encode_g6(&Graph::path(4)).unwrap(), "Ch");
        assert_eq!(decode_g6("Ch").unwrap(), Graph::path(4));
        assert_eq!(encode_g6(&Graph::complete(5)).unwrap(), "D~{");
        // 'F' = 000111: the three bits of column 3 set, a star at vertex 3.
        assert_eq!(decode_g6("CF").unwrap().edges(), vec![(0, 3), (1, 3), (2, 3)]);
    }

    #[test]
    fn extended_size_round_trip() {
        let g = Graph::from_edges(100, &[(0, 99), (5, 42)]);
        let enc = encode_g6(&g).unwrap();
        assert!(enc.starts_with('~'));
        assert_eq!(decode_g6(&enc).unwrap(), g);
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(decode_g6(""), Err(G6Error::Empty));
        assert_eq!(
            decode_g6("B\x20"),
            Err(G6Error::BadByte {
                offset: 1,
                byte: 0x20
            })
        );
        assert!(matches!(decode_g6("D"), Err(G6Error::Truncated { .. })));
        assert!(matches!(decode_g6("Bw?"), Err(G6Error::Trailing { .. })));
        let mut loopy = Graph::new(2);
        loopy.add_loop(0);
        assert_eq!(encode_g6(&loopy), Err(G6Error::HasLoops));
    }

    #[test]
    fn json_round_trip_with_loops() {
        let mut g = Graph::complete(4);
        g.add_loop(2);
        let txt = encode_json(&g);
        let back = decode_json(&txt).unwrap();
        assert_eq!(back, g);
        assert!(decode_json("{\"n\":2,\"edges\":[[0,2]]}").is_err());
        assert!(decode_json("{\"n\":2,\"edges\":[[1,1]]}").is_err());
    }
}
