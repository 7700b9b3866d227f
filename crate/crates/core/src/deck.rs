//! k-decks: multisets of isomorphism classes of k-vertex induced subgraphs.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::canon::{canonical_bits, canonical_key, CanonicalKey};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::reconstruct::binomial;

/// 128-bit FNV-1a fingerprint of a deck's sorted entry serialization.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digest(pub u128);

impl Digest {
    const OFFSET_BASIS: u128 = 0x6c62272e07bb014262b821756295c58d;
    const PRIME: u128 = 0x0000000001000000000000000000013b;

    fn of_bytes<'a>(chunks: impl IntoIterator<Item = &'a [u8]>) -> Digest {
        let mut state = Self::OFFSET_BASIS;
        for chunk in chunks {
            for &b in chunk {
                state ^= b as u128;
                state = state.wrapping_mul(Self::PRIME);
            }
        }
        Digest(state)
    }

    pub fn from_hex(s: &str) -> Option<Digest> {
        if s.len() != 32 {
            return None;
        }
        u128::from_str_radix(s, 16).ok().map(Digest)
    }
}

impl fmt::Display for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:032x}", self.0)
    }
}

impl fmt::Debug for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digest({self})")
    }
}

/// The k-deck of an n-vertex graph.
///
/// Entries are kept sorted by key text, multiplicities are positive and sum
/// to C(n, k). The digest is derived from the entries alone.
#[derive(Clone, PartialEq, Eq)]
pub struct Deck {
    card_size: usize,
    origin_order: usize,
    entries: BTreeMap<CanonicalKey, u64>,
    digest: Digest,
}

impl Deck {
    /// Checks every invariant and computes the digest.
    pub fn from_entries(
        card_size: usize,
        origin_order: usize,
        entries: BTreeMap<CanonicalKey, u64>,
    ) -> Result<Deck> {
        if card_size == 0 || card_size > origin_order {
            return Err(Error::CardSizeOutOfRange {
                k: card_size,
                n: origin_order,
            });
        }
        for (key, &m) in &entries {
            if key.order() != card_size {
                return Err(Error::NotRealizable(format!(
                    "card {key} has {} vertices, expected {card_size}",
                    key.order()
                )));
            }
            if m == 0 {
                return Err(Error::NotRealizable(format!("card {key} has multiplicity 0")));
            }
        }
        let total: u64 = entries.values().sum();
        let expected = binomial(origin_order as i64, card_size as i64);
        if total as u128 != expected {
            return Err(Error::NotRealizable(format!(
                "{total} cards, but C({origin_order},{card_size}) = {expected}"
            )));
        }
        Ok(Deck::assemble(card_size, origin_order, entries))
    }

    fn assemble(card_size: usize, origin_order: usize, entries: BTreeMap<CanonicalKey, u64>) -> Deck {
        let lines: Vec<String> = entries.iter().map(|(k, m)| format!("{k}\t{m}\n")).collect();
        let digest = Digest::of_bytes(lines.iter().map(|l| l.as_bytes()));
        Deck {
            card_size,
            origin_order,
            entries,
            digest,
        }
    }

    pub fn card_size(&self) -> usize {
        self.card_size
    }

    pub fn origin_order(&self) -> usize {
        self.origin_order
    }

    pub fn entries(&self) -> &BTreeMap<CanonicalKey, u64> {
        &self.entries
    }

    pub fn multiplicity(&self, key: &CanonicalKey) -> u64 {
        self.entries.get(key).copied().unwrap_or(0)
    }

    pub fn digest(&self) -> Digest {
        self.digest
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Card-wise complement. For a genuine deck this is the deck of the
    /// complement graph.
    pub fn complement(&self) -> Deck {
        let mut entries = BTreeMap::new();
        for (key, &m) in &self.entries {
            *entries.entry(canonical_key(&key.graph().complement())).or_insert(0) += m;
        }
        Deck::assemble(self.card_size, self.origin_order, entries)
    }

    /// Header `k=<k> n=<n>`, then `key<TAB>multiplicity` lines in key order.
    pub fn to_text(&self) -> String {
        let mut out = format!("k={} n={}\n", self.card_size, self.origin_order);
        for (key, m) in &self.entries {
            out.push_str(&format!("{key}\t{m}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Deck> {
        let bad = |line: usize, reason: String| Error::DeckText { line, reason };
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| bad(1, "missing header".into()))?;
        let (k, n) = parse_header(header).ok_or_else(|| bad(1, format!("bad header `{header}`")))?;
        let mut entries = BTreeMap::new();
        let mut previous: Option<CanonicalKey> = None;
        for (i, line) in lines {
            if line.is_empty() {
                continue;
            }
            let (key, mult) = line
                .split_once('\t')
                .ok_or_else(|| bad(i + 1, "expected key<TAB>multiplicity".into()))?;
            let key = CanonicalKey::parse(key).map_err(|e| bad(i + 1, e.to_string()))?;
            let mult: u64 = mult
                .parse()
                .map_err(|_| bad(i + 1, format!("bad multiplicity `{mult}`")))?;
            if previous.as_ref().is_some_and(|p| *p >= key) {
                return Err(bad(i + 1, "entries not strictly sorted by key".into()));
            }
            previous = Some(key.clone());
            entries.insert(key, mult);
        }
        Deck::from_entries(k, n, entries)
    }
}

fn parse_header(line: &str) -> Option<(usize, usize)> {
    let (k, n) = line.split_once(' ')?;
    Some((k.strip_prefix("k=")?.parse().ok()?, n.strip_prefix("n=")?.parse().ok()?))
}

impl fmt::Debug for Deck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Deck")
            .field("k", &self.card_size)
            .field("n", &self.origin_order)
            .field("entries", &self.entries)
            .finish()
    }
}

/// Visits every `k`-subset of `0..n` as a bitmask, in increasing order.
pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(u16)) {
    if k == 0 || k > n {
        return;
    }
    let limit = 1u32 << n;
    let mut s: u32 = (1 << k) - 1;
    while s < limit {
        f(s as u16);
        // Gosper's hack: next larger integer with the same popcount.
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
}

/// Every k-card of `g`, canonicalized and counted.
pub fn compute_deck(g: &Graph, k: usize) -> Result<Deck> {
    let n = g.order();
    if k == 0 || k > n {
        return Err(Error::CardSizeOutOfRange { k, n });
    }
    let mut counts: HashMap<u64, u64> = HashMap::new();
    for_each_subset(n, k, |mask| {
        *counts.entry(canonical_bits(&g.induced_by_mask(mask))).or_insert(0) += 1;
    });
    let entries = counts
        .into_iter()
        .map(|(bits, m)| {
            let card = Graph::from_packed(k, bits).expect("card order is k");
            (CanonicalKey::from_canonical(&card), m)
        })
        .collect();
    Ok(Deck::assemble(k, n, entries))
}

/// Digests first, full entry comparison only when they agree.
pub fn deck_equal(a: &Deck, b: &Deck) -> Result<bool> {
    if a.card_size != b.card_size || a.origin_order != b.origin_order {
        return Err(Error::DeckMismatch(format!(
            "k={} n={} vs k={} n={}",
            a.card_size, a.origin_order, b.card_size, b.origin_order
        )));
    }
    Ok(a.digest == b.digest && a.entries == b.entries)
}

/// The (k-1)-deck determined by a k-deck.
///
/// Each (k-1)-card of the underlying graph is a card of exactly n-k+1 of
/// its k-cards, so the accumulated counts must all divide by n-k+1.
pub fn derive_subdeck(deck: &Deck) -> Result<Deck> {
    let k = deck.card_size;
    let n = deck.origin_order;
    if k < 2 {
        return Err(Error::CardSizeOutOfRange { k, n });
    }
    let mut acc: BTreeMap<CanonicalKey, u64> = BTreeMap::new();
    for (key, &m) in &deck.entries {
        for (sub, &sm) in compute_deck(&key.graph(), k - 1)?.entries() {
            *acc.entry(sub.clone()).or_insert(0) += m * sm;
        }
    }
    let divisor = (n - k + 1) as u64;
    for (key, m) in acc.iter_mut() {
        if *m % divisor != 0 {
            return Err(Error::NotRealizable(format!(
                "card {key} accumulates {m}, not divisible by n-k+1 = {divisor}"
            )));
        }
        *m /= divisor;
    }
    Ok(Deck::assemble(k - 1, n, acc))
}

/// Total number of degree-`j` vertices over all cards, with multiplicity.
pub fn count_j_vertices(deck: &Deck, j: usize) -> Result<u64> {
    if j >= deck.card_size {
        return Err(Error::Parameter(format!(
            "degree {j} impossible on {}-vertex cards",
            deck.card_size
        )));
    }
    Ok(deck
        .entries
        .iter()
        .map(|(key, &m)| {
            let card = key.graph();
            m * (0..card.order()).filter(|&v| card.degree(v) == j).count() as u64
        })
        .sum())
}

/// `values[j]` for `j` in `0..k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiVector {
    pub values: Vec<u64>,
}

impl PhiVector {
    pub fn total(&self) -> u64 {
        self.values.iter().sum()
    }
}

pub fn phi_vector(deck: &Deck) -> PhiVector {
    let mut values = vec![0u64; deck.card_size];
    for (key, &m) in &deck.entries {
        let card = key.graph();
        for v in 0..card.order() {
            values[card.degree(v)] += m;
        }
    }
    PhiVector { values }
}

/// Number of edges of any graph realizing `deck`, read off its 2-deck.
pub fn edge_count_from_deck(deck: &Deck) -> Result<u64> {
    if deck.card_size < 2 {
        return Err(Error::CardSizeOutOfRange {
            k: deck.card_size,
            n: deck.origin_order,
        });
    }
    let mut d = deck.clone();
    while d.card_size > 2 {
        d = derive_subdeck(&d)?;
    }
    let k2 = canonical_key(&Graph::complete(2)?);
    Ok(d.multiplicity(&k2))
}

pub fn connected_card_count(deck: &Deck) -> u64 {
    deck.entries
        .iter()
        .filter(|(key, _)| key.graph().is_connected())
        .map(|(_, &m)| m)
        .sum()
}
