//! Canonical labeling and isomorphism testing.
//!
//! The canonical form of a graph is the relabeling with the smallest graph6
//! string among all vertex orderings whose degree sequence is nonincreasing.
//! That ordering class is closed under relabeling, so the minimum is an
//! isomorphism invariant, and two graphs get the same form iff they are
//! isomorphic.
//!
//! The search places one vertex per position. Position `p` only accepts
//! vertices of the `p`-th largest degree, and every member of that degree
//! cell is branched on. Placing a vertex at position `p` fixes graph6
//! column `p`, so a branch is cut as soon as its bit prefix exceeds the
//! best complete string found so far. Candidates that are twins of an
//! already-tried candidate at the same node are skipped: swapping twins is
//! an automorphism that fixes every placed vertex, so their subtrees yield
//! the same strings.

use std::fmt;
use std::sync::OnceLock;

use dashmap::DashMap;

use crate::error::Result;
use crate::graph::{triangle_len, Graph, MAX_ORDER};
use crate::graph6::{from_graph6, to_graph6};

/// Cards up to this order go through the shared memo table. Larger graphs
/// have too many labelings for the table to stay bounded.
const MEMO_MAX_ORDER: usize = 7;

/// Graph6 text of a canonically labeled graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(String);

impl CanonicalKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The canonically labeled graph this key encodes.
    pub fn graph(&self) -> Graph {
        from_graph6(&self.0).expect("canonical keys always hold valid graph6")
    }

    pub fn order(&self) -> usize {
        (self.0.as_bytes()[0] - 63) as usize
    }

    /// Parses `text` as graph6 and checks that it is already canonical.
    pub fn parse(text: &str) -> Result<CanonicalKey> {
        let g = from_graph6(text)?;
        let key = canonical_key(&g);
        if key.0 != text {
            return Err(crate::Error::Parameter(format!(
                "`{text}` is not canonically labeled (canonical form is `{key}`)"
            )));
        }
        Ok(key)
    }

    pub(crate) fn from_canonical(g: &Graph) -> CanonicalKey {
        CanonicalKey(to_graph6(g))
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({:?})", self.0)
    }
}

pub fn canonical_key(g: &Graph) -> CanonicalKey {
    CanonicalKey::from_canonical(&canonical_form(g))
}

/// `g` relabeled into canonical order.
pub fn canonical_form(g: &Graph) -> Graph {
    Graph::from_packed(g.order(), canonical_bits(g)).expect("search keeps the order")
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order()
        && a.edge_count() == b.edge_count()
        && a.degree_list() == b.degree_list()
        && canonical_bits(a) == canonical_bits(b)
}

fn memo() -> &'static DashMap<(u8, u64), u64> {
    static MEMO: OnceLock<DashMap<(u8, u64), u64>> = OnceLock::new();
    MEMO.get_or_init(DashMap::new)
}

/// Packed triangle bits (see [`Graph::packed_bits`]) of the canonical form.
pub fn canonical_bits(g: &Graph) -> u64 {
    if g.order() > MEMO_MAX_ORDER {
        return canonical_bits_uncached(g);
    }
    let raw = (g.order() as u8, g.packed_bits());
    if let Some(hit) = memo().get(&raw) {
        return *hit;
    }
    let bits = canonical_bits_uncached(g);
    memo().insert(raw, bits);
    bits
}

pub fn canonical_bits_uncached(g: &Graph) -> u64 {
    let n = g.order();
    if n <= 1 {
        return 0;
    }
    let mut degrees = [0usize; MAX_ORDER];
    for (v, d) in degrees.iter_mut().enumerate().take(n) {
        *d = g.degree(v);
    }
    let mut slot_degree = degrees;
    slot_degree[..n].sort_unstable_by(|a, b| b.cmp(a));

    let mut search = Search {
        g,
        n,
        total_bits: triangle_len(n),
        degrees,
        slot_degree,
        order: [0; MAX_ORDER],
        best: None,
    };
    search.descend(0, 0, 0);
    search.best.expect("at least one ordering is complete")
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    total_bits: usize,
    degrees: [usize; MAX_ORDER],
    slot_degree: [usize; MAX_ORDER],
    order: [usize; MAX_ORDER],
    best: Option<u64>,
}

impl Search<'_> {
    fn descend(&mut self, pos: usize, placed: u16, prefix: u64) {
        if pos == self.n {
            if self.best.is_none_or(|b| prefix < b) {
                self.best = Some(prefix);
            }
            return;
        }
        let prefix_len = triangle_len(pos + 1);
        let mut tried = 0u16;
        for v in 0..self.n {
            if placed >> v & 1 == 1 || self.degrees[v] != self.slot_degree[pos] {
                continue;
            }
            if self.has_twin_in(v, tried) {
                continue;
            }
            tried |= 1 << v;

            let mut bits = prefix;
            for &u in &self.order[..pos] {
                bits = bits << 1 | self.g.has_edge(u, v) as u64;
            }
            if let Some(best) = self.best {
                if bits > best >> (self.total_bits - prefix_len) {
                    continue;
                }
            }
            self.order[pos] = v;
            self.descend(pos + 1, placed | 1 << v, bits);
        }
    }

    fn has_twin_in(&self, v: usize, candidates: u16) -> bool {
        let mut c = candidates;
        while c != 0 {
            let u = c.trailing_zeros() as usize;
            let mask = !((1u16 << u) | (1u16 << v));
            if self.g.neighbors(u) & mask == self.g.neighbors(v) & mask {
                return true;
            }
            c &= c - 1;
        }
        false
    }
}
