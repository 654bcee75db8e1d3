//! graph6 encoding: printable bytes offset by 63, upper triangle packed
//! column by column into 6-bit groups.

use crate::error::{Error, Result};
use crate::graph::Graph;

const MAX_ORDER: usize = 1 << 18;

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 { offset, reason: reason.into() }
}

fn sextet(bytes: &[u8], offset: usize) -> Result<u64> {
    match bytes.get(offset) {
        Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as u64),
        Some(&b) => Err(err(offset, format!("byte 0x{b:02x} outside the printable graph6 range"))),
        None => Err(err(offset, "unexpected end of input")),
    }
}

/// Parses one graph6 line. Trailing `\r`/`\n` are ignored; padding bits
/// after the last edge bit are accepted whatever their value.
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let line = line.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    let (n, mut pos) = match bytes.first() {
        None => return Err(err(0, "empty input")),
        Some(b'&') | Some(b':') | Some(b';') => {
            return Err(err(0, "digraph6/sparse6 input is not supported"));
        }
        Some(&126) => {
            if bytes.get(1) == Some(&126) {
                let mut n = 0u64;
                for i in 2..8 {
                    n = (n << 6) | sextet(bytes, i)?;
                }
                (n as usize, 8)
            } else {
                let mut n = 0u64;
                for i in 1..4 {
                    n = (n << 6) | sextet(bytes, i)?;
                }
                (n as usize, 4)
            }
        }
        Some(_) => (sextet(bytes, 0)? as usize, 1),
    };
    if n == 0 {
        return Err(err(0, "graph has no vertices"));
    }
    if n > MAX_ORDER {
        return Err(err(0, format!("order {n} exceeds the supported maximum {MAX_ORDER}")));
    }
    let mut g = Graph::empty(n);
    let mut current = 0u64;
    let mut left = 0;
    for v in 1..n {
        for u in 0..v {
            if left == 0 {
                current = sextet(bytes, pos)?;
                pos += 1;
                left = 6;
            }
            left -= 1;
            if current >> left & 1 == 1 {
                g.add_edge(u, v);
            }
        }
    }
    if pos < bytes.len() {
        return Err(err(pos, "trailing bytes after edge data"));
    }
    Ok(g)
}

/// Encodes `g` as a graph6 line without a trailing newline.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::with_capacity(8 + (n * n) / 12);
    if n <= 62 {
        out.push(63 + n as u8);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(63 + ((n >> shift) & 63) as u8);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(63 + ((n >> shift) & 63) as u8);
        }
    }
    let mut current = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            current = (current << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + current);
                current = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (current << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}
