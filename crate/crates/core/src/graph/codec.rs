//! graph6 / digraph6 and the edge-list JSON schema.

use super::{Digraph, Graph};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

const BIAS: u8 = 63;
const ESCAPE: u8 = 126;
const HEADER: &[u8] = b">>graph6<<";

fn encode_order(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(ESCAPE);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    } else {
        out.push(ESCAPE);
        out.push(ESCAPE);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
}

fn pack_bits(bits: impl Iterator<Item = bool>, out: &mut Vec<u8>) {
    let mut acc = 0u8;
    let mut filled = 0;
    for bit in bits {
        acc = (acc << 1) | u8::from(bit);
        filled += 1;
        if filled == 6 {
            out.push(acc + BIAS);
            acc = 0;
            filled = 0;
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
}

/// Upper-triangle bits in graph6 order: `x(0,1), x(0,2), x(1,2), x(0,3), ...`.
pub fn graph6_encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(8 + n * n / 12);
    encode_order(n, &mut out);
    pack_bits((1..n).flat_map(|j| (0..j).map(move |i| g.has_edge(i, j))), &mut out);
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// digraph6: `&`, the order, then the full `n x n` arc matrix in row-major order.
pub fn digraph6_encode(d: &Digraph) -> String {
    let n = d.order();
    let mut out = vec![b'&'];
    encode_order(n, &mut out);
    pack_bits((0..n).flat_map(|i| (0..n).map(move |j| d.has_arc(i, j))), &mut out);
    String::from_utf8(out).expect("digraph6 bytes are printable ASCII")
}

fn six_bit(b: u8) -> Result<u8> {
    if !(BIAS..=ESCAPE).contains(&b) {
        return Err(Error::MalformedGraph6(format!("byte {b} outside 63..=126")));
    }
    Ok(b - BIAS)
}

fn decode_order(bytes: &[u8]) -> Result<(usize, &[u8])> {
    let truncated = || Error::MalformedGraph6("truncated order field".into());
    let first = *bytes.first().ok_or_else(truncated)?;
    if first != ESCAPE {
        return Ok((six_bit(first)? as usize, &bytes[1..]));
    }
    let (width, rest) = if bytes.get(1) == Some(&ESCAPE) { (6, &bytes[2..]) } else { (3, &bytes[1..]) };
    if rest.len() < width {
        return Err(truncated());
    }
    let mut n = 0usize;
    for &b in &rest[..width] {
        n = (n << 6) | six_bit(b)? as usize;
    }
    Ok((n, &rest[width..]))
}

pub fn graph6_decode(input: &[u8]) -> Result<Graph> {
    let mut bytes = input.trim_ascii();
    if let Some(rest) = bytes.strip_prefix(HEADER) {
        bytes = rest;
    }
    if bytes.first() == Some(&b'&') || bytes.first() == Some(&b':') {
        return Err(Error::MalformedGraph6("digraph6/sparse6 input where graph6 was expected".into()));
    }
    let (n, body) = decode_order(bytes)?;
    let bit_count = n * n.saturating_sub(1) / 2;
    let expected = bit_count.div_ceil(6);
    if body.len() != expected {
        return Err(Error::MalformedGraph6(format!(
            "expected {expected} data bytes for n = {n}, found {}",
            body.len()
        )));
    }
    let mut edges = Vec::new();
    let mut index = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = six_bit(body[index / 6])?;
            if (byte >> (5 - index % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            index += 1;
        }
    }
    if let Some(&last) = body.last() {
        let padding = expected * 6 - bit_count;
        if six_bit(last)? & ((1 << padding) - 1) != 0 {
            return Err(Error::MalformedGraph6("nonzero padding bits".into()));
        }
    }
    Graph::from_edges(n, &edges)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

#[derive(Debug, Serialize)]
struct DigraphJson {
    n: usize,
    arcs: Vec<[usize; 2]>,
}

/// `{"n": .., "edges": [[u, v], ...]}` with `u < v`, edges sorted.
pub fn graph_json_encode(g: &Graph) -> String {
    let doc = GraphJson { n: g.order(), edges: g.edges().map(|(u, v)| [u, v]).collect() };
    serde_json::to_string(&doc).expect("plain struct serializes")
}

pub fn graph_json_decode(input: &[u8]) -> Result<Graph> {
    let doc: GraphJson = serde_json::from_slice(input).map_err(|e| Error::MalformedJson(e.to_string()))?;
    let edges: Vec<(usize, usize)> = doc.edges.iter().map(|&[u, v]| (u, v)).collect();
    Graph::from_edges(doc.n, &edges).map_err(|e| Error::MalformedJson(e.to_string()))
}

pub fn digraph_json_encode(d: &Digraph) -> String {
    let doc = DigraphJson { n: d.order(), arcs: d.arcs().map(|(u, v)| [u, v]).collect() };
    serde_json::to_string(&doc).expect("plain struct serializes")
}

/// Reads either format. A leading `{` is also the graph6 size byte for `n = 60`,
/// so input counts as graph6 whenever every byte is a printable graph6 byte.
pub fn read_graph(input: &[u8]) -> Result<Graph> {
    let body = input.trim_ascii();
    let graph6_like = body.iter().all(|b| (63..=126).contains(b)) || body.starts_with(b">>graph6<<");
    if body.first() == Some(&b'{') && !graph6_like {
        graph_json_decode(input)
    } else {
        graph6_decode(input)
    }
}
