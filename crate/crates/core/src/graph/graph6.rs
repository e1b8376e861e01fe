//! graph6 encoding (upper-triangle adjacency bits, six per printable byte).

use super::{Graph, GraphBuilder, GraphError};

/// Optional header accepted at the start of a graph6 line.
pub const GRAPH6_HEADER: &str = ">>graph6<<";

const BIAS: u8 = 63;
const LONG_N: u8 = 126;
const MAX_N: usize = 258_047;

fn err(offset: usize, reason: impl Into<String>) -> GraphError {
    GraphError::Graph6 {
        offset,
        reason: reason.into(),
    }
}

/// Parses one graph6 line. A leading `>>graph6<<` header and a trailing
/// newline are tolerated; anything else must be canonical (in particular
/// padding bits must be zero).
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let line = text.trim_end_matches(['\n', '\r']);
    let (bytes, base) = match line.strip_prefix(GRAPH6_HEADER) {
        Some(rest) => (rest.as_bytes(), GRAPH6_HEADER.len()),
        None => (line.as_bytes(), 0),
    };
    for (i, &b) in bytes.iter().enumerate() {
        if !(BIAS..=LONG_N).contains(&b) {
            return Err(err(base + i, format!("byte {b:#04x} outside graph6 range")));
        }
    }
    let (n, mut pos) = decode_n(bytes, base)?;

    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let have = bytes.len() - pos;
    if have < need {
        return Err(err(
            base + bytes.len(),
            format!("payload too short: {have} of {need} bytes"),
        ));
    }
    if have > need {
        return Err(err(
            base + pos + need,
            format!("payload too long: {have} of {need} bytes"),
        ));
    }

    let mut b = GraphBuilder::new(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = bytes[pos + k / 6] - BIAS;
            if byte & (1 << (5 - k % 6)) != 0 {
                b.add_edge(i, j).expect("graph6 bits are simple edges");
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = bytes[pos + need - 1] - BIAS;
        let pad_mask = (1u8 << (6 - bits % 6)) - 1;
        if last & pad_mask != 0 {
            return Err(err(base + pos + need - 1, "nonzero padding bits"));
        }
    }
    pos += need;
    debug_assert_eq!(pos, bytes.len());
    Ok(b.build())
}

fn decode_n(bytes: &[u8], base: usize) -> Result<(usize, usize), GraphError> {
    let first = *bytes.first().ok_or_else(|| err(base, "empty input"))?;
    if first != LONG_N {
        return Ok(((first - BIAS) as usize, 1));
    }
    if bytes.get(1) == Some(&LONG_N) {
        return Err(err(
            base + 1,
            "graphs with more than 258047 vertices are not supported",
        ));
    }
    if bytes.len() < 4 {
        return Err(err(base + bytes.len(), "truncated length field"));
    }
    let n = bytes[1..4]
        .iter()
        .fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
    if n < 63 {
        return Err(err(base, "non-minimal length field"));
    }
    Ok((n, 4))
}

/// Canonical graph6 text for `g` (no header, no newline).
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    assert!(n <= MAX_N, "graph too large for graph6");
    let mut out: Vec<u8> = Vec::with_capacity(4 + (n * n) / 12 + 1);
    if n < 63 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(LONG_N);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
    let mut acc = 0u8;
    let mut used = 0;
    for j in 1..n {
        let row = g.neighbors(j);
        for i in 0..j {
            acc <<= 1;
            if row.binary_search(&i).is_ok() {
                acc |= 1;
            }
            used += 1;
            if used == 6 {
                out.push(acc + BIAS);
                acc = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        out.push((acc << (6 - used)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}
