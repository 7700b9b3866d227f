//! Degree-count identities for decks.
//!
//! With `a_i` the number of degree-`i` vertices of an n-vertex graph and
//! `l = n - k`, the total number of degree-`j` vertices over its k-cards is
//!
//! ```text
//! phi(j) = sum_{i=j}^{j+l} a_i * C(i, j) * C(n-1-i, k-1-j)
//! ```
//!
//! A vertex of degree `i` shows up with degree `j` on a card by keeping `j`
//! of its neighbors and `k-1-j` of its non-neighbors.

use std::collections::BTreeMap;

use crate::deck::{phi_vector, Deck};
use crate::error::{Error, Result};
use crate::graph::{DegreeList, Graph};

/// Exact binomial coefficient, zero when `q < 0` or `q > p`.
pub fn binomial(p: i64, q: i64) -> u128 {
    if q < 0 || p < 0 || q > p {
        return 0;
    }
    let q = q.min(p - q) as u128;
    let p = p as u128;
    (0..q).fold(1u128, |acc, i| acc * (p - i) / (i + 1))
}

/// `counts[i]` is the number of degree-`i` vertices; the vector has one slot
/// per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeCounts {
    counts: Vec<u64>,
}

impl DegreeCounts {
    pub fn new(counts: Vec<u64>) -> Result<DegreeCounts> {
        let n = counts.len() as u64;
        let total: u64 = counts.iter().sum();
        if total != n {
            return Err(Error::Parameter(format!(
                "degree counts sum to {total}, expected {n}"
            )));
        }
        let degree_sum: u64 = counts.iter().enumerate().map(|(i, &a)| i as u64 * a).sum();
        if !degree_sum.is_multiple_of(2) {
            return Err(Error::Parameter(format!("degree sum {degree_sum} is odd")));
        }
        Ok(DegreeCounts { counts })
    }

    pub fn of(g: &Graph) -> DegreeCounts {
        let mut counts = vec![0; g.order()];
        for v in 0..g.order() {
            counts[g.degree(v)] += 1;
        }
        DegreeCounts { counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn order(&self) -> usize {
        self.counts.len()
    }

    pub fn degree_list(&self) -> Vec<usize> {
        (0..self.counts.len())
            .rev()
            .flat_map(|i| std::iter::repeat_n(i, self.counts[i] as usize))
            .collect()
    }

    pub fn matches(&self, list: &DegreeList) -> bool {
        self.degree_list() == list.degrees()
    }
}

/// `c_i = a_i - b_i` for two graphs of the same order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeckDifference {
    pub diffs: Vec<i64>,
}

impl DeckDifference {
    pub fn between(a: &DegreeCounts, b: &DegreeCounts) -> Result<DeckDifference> {
        if a.order() != b.order() {
            return Err(Error::Parameter(format!(
                "orders differ: {} vs {}",
                a.order(),
                b.order()
            )));
        }
        Ok(DeckDifference {
            diffs: a
                .counts
                .iter()
                .zip(&b.counts)
                .map(|(&x, &y)| x as i64 - y as i64)
                .collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.diffs.iter().all(|&c| c == 0)
    }
}

fn check_ranges(n: usize, k: usize, j: usize) -> Result<()> {
    if k == 0 || k > n || j >= k {
        return Err(Error::Parameter(format!(
            "need 0 <= j < k <= n, got n={n} k={k} j={j}"
        )));
    }
    Ok(())
}

/// Coefficient of `a_i` in `phi(j)`.
fn weight(n: usize, k: usize, i: usize, j: usize) -> u128 {
    binomial(i as i64, j as i64) * binomial(n as i64 - 1 - i as i64, k as i64 - 1 - j as i64)
}

/// Right-hand side of the counting identity, from the degree counts.
pub fn phi_formula(counts: &DegreeCounts, n: usize, k: usize, j: usize) -> Result<u64> {
    check_ranges(n, k, j)?;
    if counts.order() != n {
        return Err(Error::Parameter(format!(
            "degree counts describe {} vertices, expected {n}",
            counts.order()
        )));
    }
    let l = n - k;
    let total: u128 = (j..=(j + l).min(n - 1))
        .map(|i| counts.counts[i] as u128 * weight(n, k, i, j))
        .sum();
    u64::try_from(total).map_err(|_| Error::Parameter("phi overflows u64".into()))
}

/// Degree counts from a k-deck plus the counts `a_i` for every `i >= k`.
///
/// Solves the counting identity for `a_j` from `j = k-1` down to `0`; the
/// coefficient of `a_j` is `C(n-1-j, k-1-j) > 0`. The answer is the one
/// consistent with the supplied high counts. Different high counts may give
/// different consistent answers, so no uniqueness is implied.
pub fn reconstruct_degree_list(
    deck: &Deck,
    n: usize,
    high_counts: &BTreeMap<usize, u64>,
) -> Result<DegreeCounts> {
    let k = deck.card_size();
    if deck.origin_order() != n {
        return Err(Error::Parameter(format!(
            "deck comes from a {}-vertex graph, not {n}",
            deck.origin_order()
        )));
    }
    if let Some((&i, _)) = high_counts.iter().find(|(&i, _)| i < k || i >= n) {
        return Err(Error::Parameter(format!(
            "high count given for degree {i}, outside {k}..{n}"
        )));
    }
    let mut counts = vec![0u64; n];
    for (i, slot) in counts.iter_mut().enumerate().skip(k) {
        *slot = *high_counts
            .get(&i)
            .ok_or_else(|| Error::Parameter(format!("missing high count for degree {i}")))?;
    }
    let phi = phi_vector(deck);
    for j in (0..k).rev() {
        let known: u128 = (j + 1..=(j + n - k).min(n - 1))
            .map(|i| counts[i] as u128 * weight(n, k, i, j))
            .sum();
        let target = phi.values[j] as u128;
        let coef = weight(n, k, j, j);
        if known > target {
            return Err(Error::InconsistentHighCounts(format!(
                "solving for a_{j} gives a negative count"
            )));
        }
        let rest = target - known;
        if !rest.is_multiple_of(coef) {
            return Err(Error::InconsistentHighCounts(format!(
                "solving for a_{j} gives {rest}/{coef}, not an integer"
            )));
        }
        counts[j] = (rest / coef) as u64;
    }
    DegreeCounts::new(counts).map_err(|e| Error::InconsistentHighCounts(e.to_string()))
}

/// Tries `a_i = 0` for every `i >= k`, the situation where the deck alone
/// settles the degree list.
pub fn reconstruct_assuming_max_degree_below_k(deck: &Deck) -> Result<DegreeCounts> {
    let n = deck.origin_order();
    let high = (deck.card_size()..n).map(|i| (i, 0)).collect();
    reconstruct_degree_list(deck, n, &high)
}

pub fn deck_difference(g: &Graph, h: &Graph) -> Result<DeckDifference> {
    DeckDifference::between(&DegreeCounts::of(g), &DegreeCounts::of(h))
}

/// `sum_{i=j}^{j+l} c_i C(i,j) C(n-1-i, k-1-j)`: zero whenever the two
/// graphs behind `c` share a k-deck.
pub fn phidiff_residual(c: &DeckDifference, n: usize, k: usize, j: usize) -> Result<i64> {
    check_ranges(n, k, j)?;
    if c.diffs.len() != n {
        return Err(Error::Parameter(format!(
            "difference vector has {} entries, expected {n}",
            c.diffs.len()
        )));
    }
    let l = n - k;
    Ok((j..=(j + l).min(n - 1))
        .map(|i| c.diffs[i] * weight(n, k, i, j) as i64)
        .sum())
}

/// `t` vertices with degree sum at least `s` touch at least
/// `s - C(t,2)` edges.
pub fn incident_edge_lower_bound(t: u64, s: u64) -> u64 {
    s.saturating_sub(t * t.saturating_sub(1) / 2)
}

/// Order beyond which the degree list is determined by the (n-l)-deck:
///
/// ```text
/// g(l) = (l + ln l + 1) (e + (e ln l + e + 1) / ((l-1) ln l - 1)) + 1
/// ```
pub fn taylor_threshold(l: u32) -> Result<f64> {
    if l < 3 {
        return Err(Error::Parameter(format!(
            "threshold needs l >= 3, got {l}"
        )));
    }
    let l = l as f64;
    let e = std::f64::consts::E;
    let ln = l.ln();
    Ok((l + ln + 1.0) * (e + (e * ln + e + 1.0) / ((l - 1.0) * ln - 1.0)) + 1.0)
}
