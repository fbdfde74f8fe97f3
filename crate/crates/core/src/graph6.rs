//! graph6 encoding.
//!
//! Size prefix is `n + 63` for `n <= 62`, otherwise `~` followed by three
//! 6-bit big-endian bytes. The upper triangle follows column by column, six
//! bits per byte, offset by 63. That column order matches the crate's edge
//! indexing, so edge bit `k` is graph6 bit `k`.

use crate::error::{Error, Result};
use crate::graph::{pair_count, EdgeSet, Graph, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let pairs = pair_count(n);
    let edges = g.edge_set();
    for chunk in 0..pairs.div_ceil(6) {
        let mut byte = 0u8;
        for b in 0..6 {
            let k = chunk * 6 + b;
            if k < pairs && edges.contains(k) {
                byte |= 1 << (5 - b);
            }
        }
        out.push(byte + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim();
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse("empty graph6 string".into()));
    }
    if let Some(&bad) = bytes.iter().find(|b| !(63..=126).contains(*b)) {
        return Err(Error::Parse(format!("byte {bad:#04x} outside the graph6 range")));
    }
    let (n, body) = if bytes[0] == b'~' {
        if bytes.get(1) == Some(&b'~') {
            return Err(Error::Parse("8-byte size form is not supported".into()));
        }
        if bytes.len() < 4 {
            return Err(Error::Parse("truncated size prefix".into()));
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        (n, &bytes[4..])
    } else {
        ((bytes[0] - 63) as usize, &bytes[1..])
    };
    if n == 0 || n > MAX_VERTICES {
        return Err(Error::Parse(format!("vertex count {n} outside 1..={MAX_VERTICES}")));
    }
    let pairs = pair_count(n);
    if body.len() != pairs.div_ceil(6) {
        return Err(Error::Parse(format!(
            "expected {} data bytes for {n} vertices, found {}",
            pairs.div_ceil(6),
            body.len()
        )));
    }
    let mut edges = EdgeSet::with_len(pairs);
    for (chunk, &byte) in body.iter().enumerate() {
        let v = byte - 63;
        for b in 0..6 {
            if v >> (5 - b) & 1 == 1 {
                let k = chunk * 6 + b;
                if k >= pairs {
                    return Err(Error::Parse("non-zero padding bits".into()));
                }
                edges.insert(k);
            }
        }
    }
    Graph::from_edge_set(n, edges).map_err(|e| Error::Parse(e.to_string()))
}
