//! Labeled simple graphs on at most [`MAX_ORDER`] vertices.
//!
//! Adjacency is a symmetric bit matrix with one `u16` row per vertex. Values
//! are `Copy` and never mutated once handed out.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_ORDER: usize = 10;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    order: u8,
    rows: [u16; MAX_ORDER],
}

/// Number of bits in the upper adjacency triangle of an `n`-vertex graph.
pub const fn triangle_len(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::OrderOutOfRange(n));
        }
        Ok(Graph {
            order: n as u8,
            rows: [0; MAX_ORDER],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Rebuilds a graph from [`Graph::packed_bits`] output.
    pub fn from_packed(n: usize, bits: u64) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        let len = triangle_len(n);
        if len < 64 && bits >> len != 0 {
            return Err(Error::Parameter(format!(
                "packed adjacency has bits beyond the {len}-bit triangle"
            )));
        }
        let mut idx = 0;
        for v in 1..n {
            for u in 0..v {
                if (bits >> (len - 1 - idx)) & 1 == 1 {
                    g.set_edge(u, v);
                }
                idx += 1;
            }
        }
        Ok(g)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.order() {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    /// Neighborhood of `v` as a vertex bitmask.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u16 {
        self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows[..self.order()]
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.order()).flat_map(move |v| {
            (0..v).filter(move |&u| self.has_edge(u, v)).map(move |u| (u, v))
        })
    }

    fn all_vertices(&self) -> u16 {
        ((1u32 << self.order) - 1) as u16
    }

    /// Upper triangle in graph6 order (x(0,1), x(0,2), x(1,2), x(0,3), ...),
    /// first bit most significant. Equal-order graphs compare like their
    /// graph6 strings.
    pub fn packed_bits(&self) -> u64 {
        let mut bits = 0u64;
        for v in 1..self.order() {
            for u in 0..v {
                bits = bits << 1 | self.has_edge(u, v) as u64;
            }
        }
        bits
    }

    /// The subgraph induced by `vertices`, relabeled `0..|S|` in ascending
    /// original order. Duplicates are ignored.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        if vertices.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let mut mask = 0u16;
        for &v in vertices {
            self.check_vertex(v)?;
            mask |= 1 << v;
        }
        Ok(self.induced_by_mask(mask))
    }

    /// Induced subgraph on a nonempty vertex mask within range.
    pub(crate) fn induced_by_mask(&self, mask: u16) -> Graph {
        debug_assert!(mask != 0 && mask & !self.all_vertices() == 0);
        let mut picked = [0usize; MAX_ORDER];
        let mut k = 0;
        let mut m = mask;
        while m != 0 {
            picked[k] = m.trailing_zeros() as usize;
            k += 1;
            m &= m - 1;
        }
        let mut card = Graph {
            order: k as u8,
            rows: [0; MAX_ORDER],
        };
        for (i, &v) in picked[..k].iter().enumerate() {
            let row = self.rows[v];
            let mut r = 0u16;
            for (j, &w) in picked[..k].iter().enumerate() {
                r |= ((row >> w) & 1) << j;
            }
            card.rows[i] = r;
        }
        card
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.order();
        if perm.len() != n {
            return Err(Error::Parameter(format!(
                "permutation of length {} for a graph on {n} vertices",
                perm.len()
            )));
        }
        let mut seen = 0u16;
        for &p in perm {
            self.check_vertex(p)?;
            seen |= 1 << p;
        }
        if seen != self.all_vertices() {
            return Err(Error::Parameter("relabeling is not a permutation".into()));
        }
        let mut g = Graph::empty(n)?;
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v]);
        }
        Ok(g)
    }

    pub fn complement(&self) -> Graph {
        let all = self.all_vertices();
        let mut g = *self;
        for v in 0..self.order() {
            g.rows[v] = !self.rows[v] & all & !(1 << v);
        }
        g
    }

    /// True iff every vertex is reachable from vertex 0.
    pub fn is_connected(&self) -> bool {
        let all = self.all_vertices();
        let mut seen = 1u16;
        let mut frontier = 1u16;
        while frontier != 0 {
            let mut next = 0u16;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                next |= self.rows[v];
                f &= f - 1;
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen & all == all
    }

    pub fn degree_list(&self) -> DegreeList {
        let mut degrees: Vec<usize> = (0..self.order()).map(|v| self.degree(v)).collect();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        DegreeList { degrees }
    }

    /// `self` followed by `other`, whose vertices are shifted past ours.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.order() + other.order();
        let mut g = Graph::empty(n)?;
        for (u, v) in self.edges() {
            g.set_edge(u, v);
        }
        let shift = self.order();
        for (u, v) in other.edges() {
            g.set_edge(u + shift, v + shift);
        }
        Ok(g)
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Graph> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`, `n >= 3`.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::Parameter(format!("a cycle needs 3 vertices, got {n}")));
        }
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges)
    }

    pub fn complete(n: usize) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for v in 1..n {
            for u in 0..v {
                g.set_edge(u, v);
            }
        }
        Ok(g)
    }

    /// The claw with `t` of its edges subdivided. Center 0, branch roots
    /// 1, 2, 3; branch `i <= t` gets the extra vertex `3 + i` hanging off
    /// vertex `i`. `t = 1` is K'(1,3), `t = 2` is K''(1,3).
    pub fn claw_subdivided(t: usize) -> Result<Graph> {
        if t > 3 {
            return Err(Error::Parameter(format!(
                "a claw has 3 edges to subdivide, got {t}"
            )));
        }
        let mut edges = vec![(0, 1), (0, 2), (0, 3)];
        edges.extend((1..=t).map(|i| (i, 3 + i)));
        Graph::from_edges(4 + t, &edges)
    }

    /// Builds a graph from a `+`-separated list of terms, combined by
    /// disjoint union from left to right. Terms are `path<n>`, `cycle<n>`,
    /// `complete<n>`, `empty<n>`, `claw` and `claw_subdivided<t>`.
    pub fn named(spec: &str) -> Result<Graph> {
        let mut acc: Option<Graph> = None;
        for term in spec.split('+') {
            let g = named_term(term.trim()).ok_or_else(|| Error::NamedSpec(term.to_string()))??;
            acc = Some(match acc {
                None => g,
                Some(a) => a.disjoint_union(&g)?,
            });
        }
        acc.ok_or_else(|| Error::NamedSpec(spec.to_string()))
    }
}

type Builder = fn(usize) -> Result<Graph>;

fn named_term(term: &str) -> Option<Result<Graph>> {
    const BUILDERS: [(&str, Builder); 5] = [
        ("claw_subdivided", Graph::claw_subdivided),
        ("path", Graph::path),
        ("cycle", Graph::cycle),
        ("complete", Graph::complete),
        ("empty", Graph::empty),
    ];
    if term == "claw" {
        return Some(Graph::claw_subdivided(0));
    }
    BUILDERS.iter().find_map(|(name, build)| {
        let digits = term.strip_prefix(name)?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        Some(build(digits.parse().ok()?))
    })
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}; ", self.order)?;
        let mut first = true;
        for (u, v) in self.edges() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
            first = false;
        }
        write!(f, ")")
    }
}

/// Vertex degrees in nonincreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeList {
    degrees: Vec<usize>,
}

impl DegreeList {
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn edge_count(&self) -> usize {
        self.degrees.iter().sum::<usize>() / 2
    }
}

impl fmt::Display for DegreeList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.degrees.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}
