//! graph6 codec.
//!
//! [`encode_graph6`] writes the short form only (n <= 62): byte 0 is `n + 63`.
//! The parser also accepts the 4-byte long header `~` + three 6-bit groups
//! for 63 <= n <= 258047, which [`encode_graph6_any`] emits for larger graphs.
//!
//! The upper triangle of the adjacency matrix follows in column order `(0,1), (0,2), (1,2), (0,3), ...`, six bits per byte, most
//! significant bit first, zero-padded, each group offset by 63.

use super::Graph;
use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 62;
pub const MAX_LONG_ORDER: usize = 258_047;
pub const HEADER: &str = ">>graph6<<";

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.strip_suffix('\n').unwrap_or(text);
    let line = line.strip_suffix('\r').unwrap_or(line);
    let bytes = line.strip_prefix(HEADER).unwrap_or(line).as_bytes();
    let base = line.len() - bytes.len();

    let Some(&first) = bytes.first() else {
        return Err(err(base, "empty input"));
    };
    if !(63..=126).contains(&first) {
        return Err(err(base, format!("byte 0x{first:02x} outside graph6 alphabet")));
    }
    let (n, header_len) = if first == 126 {
        if bytes.get(1) == Some(&126) {
            return Err(err(base + 1, "8-byte vertex count (n > 258047) is not supported"));
        }
        if bytes.len() < 4 {
            return Err(err(base + bytes.len(), "truncated long-form vertex count"));
        }
        let mut n = 0usize;
        for (i, &b) in bytes[1..4].iter().enumerate() {
            if !(63..=126).contains(&b) {
                return Err(err(base + 1 + i, format!("byte 0x{b:02x} outside graph6 alphabet")));
            }
            n = n << 6 | (b - 63) as usize;
        }
        if n <= MAX_ORDER {
            return Err(err(base, format!("long-form header used for n = {n}")));
        }
        (n, 4)
    } else {
        (usize::from(first - 63), 1)
    };
    if n == 0 {
        return Err(err(base, "graph with zero vertices"));
    }

    let bits = n * (n - 1) / 2;
    let expected = bits.div_ceil(6);
    let body = &bytes[header_len..];
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(
                base + header_len + i,
                format!("byte 0x{b:02x} outside graph6 alphabet"),
            ));
        }
    }
    if body.len() < expected {
        return Err(err(
            base + bytes.len(),
            format!("truncated: expected {expected} data bytes, found {}", body.len()),
        ));
    }
    if body.len() > expected {
        return Err(err(
            base + header_len + expected,
            "trailing bytes after adjacency data",
        ));
    }

    let mut g = Graph::empty(n);
    let mut k = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(u, v);
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn encode_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > MAX_ORDER {
        return Err(Error::UnsupportedSize { n, max: MAX_ORDER });
    }
    Ok(encode_body(g, vec![n as u8 + 63]))
}

/// Short form when possible, the 4-byte long header otherwise.
pub fn encode_graph6_any(g: &Graph) -> Result<String> {
    let n = g.order();
    if n <= MAX_ORDER {
        return encode_graph6(g);
    }
    if n > MAX_LONG_ORDER {
        return Err(Error::UnsupportedSize {
            n,
            max: MAX_LONG_ORDER,
        });
    }
    let header = vec![126, (n >> 12) as u8 + 63, (n >> 6 & 63) as u8 + 63, (n & 63) as u8 + 63];
    Ok(encode_body(g, header))
}

fn encode_body(g: &Graph, mut out: Vec<u8>) -> String {
    let n = g.order();
    let mut acc = 0u8;
    let mut k = 0usize;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
            k += 1;
            if k.is_multiple_of(6) {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if !k.is_multiple_of(6) {
        out.push((acc << (6 - k % 6)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}
