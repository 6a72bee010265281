//! graph6 codec.
//!
//! Header `N(n)` is one byte `63 + n` for `n <= 62`, otherwise `~` followed by
//! three bytes carrying `n` in 18 bits. The body packs the upper triangle in
//! column order `x(0,1), x(0,2), x(1,2), x(0,3), ...` into 6-bit groups,
//! most significant bit first, each offset by 63.

use thiserror::Error;

use super::{Graph, MAX_ORDER};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 record")]
    Empty,
    #[error("byte {offset}: {byte:#04x} is not a graph6 character")]
    BadByte { offset: usize, byte: u8 },
    #[error("byte {offset}: order {n} not supported (1..={MAX_ORDER})")]
    Order { offset: usize, n: usize },
    #[error("byte {offset}: record truncated, expected {expected} bytes")]
    Truncated { offset: usize, expected: usize },
    #[error("byte {offset}: {extra} unexpected trailing bytes")]
    Trailing { offset: usize, extra: usize },
    #[error("byte {offset}: padding bits are not zero")]
    Padding { offset: usize },
}

const HEADER_PREFIX: &str = ">>graph6<<";

fn data_byte(offset: usize, byte: u8) -> Result<u8, Graph6Error> {
    if (63..=126).contains(&byte) {
        Ok(byte - 63)
    } else {
        Err(Graph6Error::BadByte { offset, byte })
    }
}

pub(super) fn decode(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.trim_end_matches(['\n', '\r']);
    let skip = if text.starts_with(HEADER_PREFIX) { HEADER_PREFIX.len() } else { 0 };
    let bytes = &text.as_bytes()[skip..];
    let first = *bytes.first().ok_or(Graph6Error::Empty)?;

    let (n, body_start) = if first == b'~' {
        if bytes.get(1) == Some(&b'~') {
            // 36-bit form, always larger than anything we accept
            return Err(Graph6Error::Order { offset: skip, n: usize::MAX });
        }
        if bytes.len() < 4 {
            return Err(Graph6Error::Truncated { offset: skip + bytes.len(), expected: 4 });
        }
        let mut n = 0usize;
        for (i, &b) in bytes[1..4].iter().enumerate() {
            n = (n << 6) | data_byte(skip + 1 + i, b)? as usize;
        }
        (n, 4)
    } else {
        (data_byte(skip, first)? as usize, 1)
    };
    if n == 0 || n > MAX_ORDER {
        return Err(Graph6Error::Order { offset: skip, n });
    }

    let nbits = n * (n - 1) / 2;
    let nbytes = nbits.div_ceil(6);
    let body = &bytes[body_start..];
    if body.len() < nbytes {
        return Err(Graph6Error::Truncated { offset: skip + body_start + body.len(), expected: body_start + nbytes });
    }
    if body.len() > nbytes {
        return Err(Graph6Error::Trailing { offset: skip + body_start + nbytes, extra: body.len() - nbytes });
    }

    let mut rows = vec![0u128; n];
    let mut k = 0usize;
    for (i, &b) in body.iter().enumerate() {
        let offset = skip + body_start + i;
        let chunk = data_byte(offset, b)?;
        for shift in (0..6).rev() {
            let set = (chunk >> shift) & 1 == 1;
            if k >= nbits {
                if set {
                    return Err(Graph6Error::Padding { offset });
                }
            } else if set {
                let (u, v) = pair_of_index(k);
                rows[u] |= 1u128 << v;
                rows[v] |= 1u128 << u;
            }
            k += 1;
        }
    }
    Ok(Graph { rows })
}

/// Inverse of `index = v(v-1)/2 + u` for `u < v`.
fn pair_of_index(k: usize) -> (usize, usize) {
    let mut v = 1;
    while v * (v + 1) / 2 <= k {
        v += 1;
    }
    (k - v * (v - 1) / 2, v)
}

pub(super) fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + n * n / 12 + 1);
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(63 + ((n >> shift) & 63) as u8);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}
