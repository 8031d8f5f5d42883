//! Short-form graph6 encoding (at most 62 vertices).
//!
//! A record is one byte `n + 63` followed by the upper triangle of the
//! adjacency matrix, read column by column (`(0,1), (0,2), (1,2), (0,3), ...`),
//! packed six bits per byte, most significant bit first, each byte offset by 63.

use crate::error::TreeError;
use crate::tree::Tree;

/// Largest order representable by the short form.
pub const MAX_SHORT_ORDER: usize = 62;

const HEADER: &str = ">>graph6<<";

fn parse_err(message: impl Into<String>) -> TreeError {
    TreeError::Parse {
        line: 0,
        message: message.into(),
    }
}

/// Decodes one graph6 record into its vertex count and sorted edge list.
pub fn decode(record: &[u8]) -> Result<(usize, Vec<(usize, usize)>), TreeError> {
    let record = record.strip_prefix(HEADER.as_bytes()).unwrap_or(record);
    let record = record.trim_ascii();
    let (&first, body) = record
        .split_first()
        .ok_or_else(|| parse_err("empty graph6 record"))?;
    if !(63..=126).contains(&first) {
        return Err(parse_err(format!("invalid graph6 size byte {first:#04x}")));
    }
    let n = (first - 63) as usize;
    if n > MAX_SHORT_ORDER {
        return Err(parse_err("long-form graph6 (n > 62) is not supported"));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(parse_err(format!(
            "graph6 record for {n} vertices needs {expected} data bytes, found {}",
            body.len()
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6];
            if !(63..=126).contains(&byte) {
                return Err(parse_err(format!("invalid graph6 data byte {byte:#04x}")));
            }
            if (byte - 63) & (0x20 >> (k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    edges.sort_unstable();
    Ok((n, edges))
}

/// Encodes a graph on `n <= 62` vertices.
pub fn encode(n: usize, edges: &[(usize, usize)]) -> Result<String, TreeError> {
    if n > MAX_SHORT_ORDER {
        return Err(TreeError::TooLarge {
            n,
            max: MAX_SHORT_ORDER,
        });
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut data = vec![0u8; bits.div_ceil(6)];
    for &(u, v) in edges {
        let (i, j) = (u.min(v), u.max(v));
        if j >= n {
            return Err(TreeError::OutOfRange { vertex: j, n });
        }
        let k = j * (j - 1) / 2 + i;
        data[k / 6] |= 0x20 >> (k % 6);
    }
    let mut out = String::with_capacity(data.len() + 1);
    out.push((n as u8 + 63) as char);
    out.extend(data.into_iter().map(|b| (b + 63) as char));
    Ok(out)
}

/// Decodes a record and validates that it describes a tree.
pub fn parse_graph6(record: &[u8]) -> Result<Tree, TreeError> {
    let (n, edges) = decode(record)?;
    Tree::from_edges(n, &edges)
}

pub fn to_graph6(tree: &Tree) -> Result<String, TreeError> {
    encode(tree.order(), tree.edges())
}

/// Iterates over the records of a multi-line graph6 file, skipping blank
/// lines. Each item is `(line number, parse result)`.
pub fn parse_graph6_records(text: &str) -> impl Iterator<Item = (usize, Result<Tree, TreeError>)> + '_ {
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(idx, line)| {
            let result = parse_graph6(line.as_bytes()).map_err(|e| match e {
                TreeError::Parse { message, .. } => TreeError::Parse {
                    line: idx + 1,
                    message,
                },
                other => other,
            });
            (idx + 1, result)
        })
}
