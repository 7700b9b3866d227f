//! graph6 codec, restricted to the single-byte size form (n <= 10).
//!
//! Layout: byte 0 is `63 + n`; the upper triangle x(0,1), x(0,2), x(1,2),
//! x(0,3), ... follows column by column, packed big-endian into 6-bit groups
//! offset by 63, with the last group zero-padded.

use crate::error::{Error, Graph6Fault, Result};
use crate::graph::{triangle_len, Graph, MAX_ORDER};

pub const HEADER: &str = ">>graph6<<";

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let len = triangle_len(n);
    let groups = len.div_ceil(6);
    let padded = g.packed_bits() << (groups * 6 - len);
    let mut out = String::with_capacity(1 + groups);
    out.push((63 + n as u8) as char);
    for i in (0..groups).rev() {
        out.push((63 + ((padded >> (6 * i)) & 0x3f) as u8) as char);
    }
    out
}

/// Decodes one graph6 string. A leading `>>graph6<<` header is stripped;
/// anything else beyond the encoded bits is an error. Fault offsets count
/// from the start of `text`, header included.
pub fn from_graph6(text: &str) -> Result<Graph> {
    let (base, body) = match text.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, text.as_bytes()),
    };
    let fail = |offset: usize, fault| Error::Graph6 {
        offset: base + offset,
        fault,
    };
    let &size = body.first().ok_or_else(|| fail(0, Graph6Fault::Empty))?;
    if !(64..=63 + MAX_ORDER as u8).contains(&size) {
        return Err(fail(0, Graph6Fault::SizeByte(size)));
    }
    let n = (size - 63) as usize;
    let len = triangle_len(n);
    let groups = len.div_ceil(6);
    let expected = 1 + groups;
    let mut bits = 0u64;
    for i in 1..expected {
        let &b = body.get(i).ok_or_else(|| fail(i, Graph6Fault::Truncated { expected }))?;
        if !(63..=126).contains(&b) {
            return Err(fail(i, Graph6Fault::InvalidByte(b)));
        }
        bits = bits << 6 | (b - 63) as u64;
    }
    if body.len() > expected {
        return Err(fail(expected, Graph6Fault::TrailingData));
    }
    let pad = groups * 6 - len;
    if bits & ((1 << pad) - 1) != 0 {
        return Err(fail(expected - 1, Graph6Fault::NonzeroPadding));
    }
    Graph::from_packed(n, bits >> pad)
}

/// Parses a graph6 file body: one graph per LF-terminated line, optional
/// `>>graph6<<` header line, blank lines skipped. Errors carry the line
/// number in the reported offset's context.
pub fn parse_lines(text: &str) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.is_empty() || (lineno == 0 && line == HEADER) {
            continue;
        }
        out.push(from_graph6(line).map_err(|e| match e {
            Error::Graph6 { offset, fault } => Error::Parameter(format!(
                "line {}: graph6 decode error at byte {offset}: {fault}",
                lineno + 1
            )),
            other => other,
        })?);
    }
    Ok(out)
}
