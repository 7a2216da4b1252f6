//! graph6 encoding: a size header followed by the upper triangle of the
//! adjacency matrix, column by column, in 6-bit printable groups.

use thiserror::Error;

use crate::graph::{vertex_cap, Graph};

/// Largest order the 4-byte header can express.
pub const MAX_MEDIUM_ORDER: usize = 258_047;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte} at position {pos} is outside the printable range 63..=126")]
    BadChar { pos: usize, byte: u8 },
    #[error("long-form header (n > {MAX_MEDIUM_ORDER}) is not supported")]
    LongForm,
    #[error("truncated header")]
    TruncatedHeader,
    #[error("expected {expected} data bytes for n = {n}, found {found}")]
    Length {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("nonzero padding bits in the last data byte")]
    Padding,
    #[error("n = {n} exceeds the vertex cap of {cap}")]
    ExceedsCap { n: usize, cap: usize },
    #[error("n = {0} is too large for graph6")]
    TooLarge(usize),
}

fn data_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Graph6Error::BadChar {
            pos,
            byte: bytes[pos],
        });
    }
    let (n, body) = if bytes[0] < 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else {
        if bytes.len() < 4 {
            return Err(Graph6Error::TruncatedHeader);
        }
        if bytes[1] == 126 {
            return Err(Graph6Error::LongForm);
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, &bytes[4..])
    };
    let cap = vertex_cap();
    if n > cap {
        return Err(Graph6Error::ExceedsCap { n, cap });
    }
    let expected = data_len(n);
    if body.len() != expected {
        return Err(Graph6Error::Length {
            n,
            expected,
            found: body.len(),
        });
    }
    let total_bits = n * n.saturating_sub(1) / 2;
    if let Some(&last) = body.last() {
        let used = total_bits - 6 * (expected - 1);
        if ((last - 63) as u32) & ((1u32 << (6 - used)) - 1) != 0 {
            return Err(Graph6Error::Padding);
        }
    }
    let mut g = Graph::empty_unchecked(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let group = (body[k / 6] - 63) as u32;
            if group >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn write_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    if n > MAX_MEDIUM_ORDER {
        return Err(Graph6Error::TooLarge(n));
    }
    let mut out = String::with_capacity(4 + data_len(n));
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    }
    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            group = (group << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((group + 63) as char);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((group << (6 - filled)) + 63) as char);
    }
    Ok(out)
}

/// graph6 string for a graph known to be within the format's range.
pub(crate) fn encode(g: &Graph) -> String {
    write_graph6(g).expect("graph within vertex cap is within graph6 range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite};

    #[test]
    fn small_known_strings() {
        assert_eq!(parse_graph6("Bw").unwrap(), complete(3).unwrap());
        assert_eq!(parse_graph6("C~").unwrap(), complete(4).unwrap());
        assert_eq!(write_graph6(&complete(2).unwrap()).unwrap(), "A_");
        assert_eq!(write_graph6(&Graph::empty(0).unwrap()).unwrap(), "?");
        assert_eq!(write_graph6(&Graph::empty(1).unwrap()).unwrap(), "@");
        assert_eq!(parse_graph6("?").unwrap().n(), 0);
    }

    #[test]
    fn medium_header() {
        let g = complete_bipartite(40, 30).unwrap();
        let s = write_graph6(&g).unwrap();
        assert!(s.starts_with("~?@E"));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn malformed() {
        assert_eq!(parse_graph6(""), Err(Graph6Error::Empty));
        assert!(matches!(
            parse_graph6("B w"),
            Err(Graph6Error::BadChar { pos: 1, .. })
        ));
        assert!(matches!(
            parse_graph6("Bww"),
            Err(Graph6Error::Length { .. })
        ));
        assert!(matches!(parse_graph6("C"), Err(Graph6Error::Length { .. })));
        assert_eq!(parse_graph6("~~??"), Err(Graph6Error::LongForm));
        assert_eq!(parse_graph6("~?"), Err(Graph6Error::TruncatedHeader));
        // K3 with a stray padding bit
        assert_eq!(parse_graph6("Bx"), Err(Graph6Error::Padding));
    }
}
