//! plantri-compatible `planar_code` reader and writer (one-byte entries).
//!
//! Stream layout: the ASCII header `>>planar_code<<`, then per graph one
//! byte `n` followed by, for each vertex `1..=n`, its neighbours in rotation
//! order as 1-based bytes, each list closed by a `0` byte.

use thiserror::Error;

use super::{EmbedError, EmbeddedGraph};

pub const PLANAR_CODE_HEADER: &[u8] = b">>planar_code<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanarCodeError {
    #[error("stream does not start with >>planar_code<<")]
    BadHeader,
    #[error("record {record} ends before all {n} adjacency lists were read")]
    TruncatedRecord { record: usize, n: usize },
    #[error("record {record}: neighbour index {value} outside 1..={n}")]
    IndexOutOfRange { record: usize, value: usize, n: usize },
    #[error("record {record}: two-byte planar_code records are not supported")]
    WideRecord { record: usize },
    #[error("graph with {n} vertices does not fit the one-byte format")]
    TooLarge { n: usize },
    #[error("record {record}: {source}")]
    InvalidGraph {
        record: usize,
        #[source]
        source: EmbedError,
    },
}

/// Parses every graph in a planar_code stream.
pub fn read_planar_code(bytes: &[u8]) -> Result<Vec<EmbeddedGraph>, PlanarCodeError> {
    let body = bytes.strip_prefix(PLANAR_CODE_HEADER).ok_or(PlanarCodeError::BadHeader)?;
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < body.len() {
        let record = out.len();
        let n = body[pos] as usize;
        pos += 1;
        if n == 0 {
            return Err(PlanarCodeError::WideRecord { record });
        }
        let mut rotation = Vec::with_capacity(n);
        for _ in 0..n {
            let mut nbrs = Vec::new();
            loop {
                let &b = body.get(pos).ok_or(PlanarCodeError::TruncatedRecord { record, n })?;
                pos += 1;
                if b == 0 {
                    break;
                }
                let value = b as usize;
                if value > n {
                    return Err(PlanarCodeError::IndexOutOfRange { record, value, n });
                }
                nbrs.push(value - 1);
            }
            rotation.push(nbrs);
        }
        let g = EmbeddedGraph::new(rotation).map_err(|source| PlanarCodeError::InvalidGraph { record, source })?;
        out.push(g);
    }
    Ok(out)
}

/// Serialises graphs as one planar_code stream.
pub fn write_planar_code<'a, I>(graphs: I) -> Result<Vec<u8>, PlanarCodeError>
where
    I: IntoIterator<Item = &'a EmbeddedGraph>,
{
    let mut out = PLANAR_CODE_HEADER.to_vec();
    for g in graphs {
        let n = g.n();
        if n >= 256 {
            return Err(PlanarCodeError::TooLarge { n });
        }
        out.push(n as u8);
        for nbrs in g.rotation() {
            out.extend(nbrs.iter().map(|&w| (w + 1) as u8));
            out.push(0);
        }
    }
    Ok(out)
}
