//! Exhaustive censuses over all isomorphism classes of n-vertex graphs.
//!
//! Families are built by vertex augmentation: every representative on
//! `n - 1` vertices gets a new vertex with each of the `2^(n-1)` possible
//! neighborhoods, and the results are canonicalized and deduplicated. Deck
//! classes are formed in two passes, digests first and then full deck
//! comparison inside any digest group with more than one member.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::canon::{canonical_bits, canonical_key, CanonicalKey};
use crate::deck::{compute_deck, deck_equal, edge_count_from_deck, phi_vector, Deck, Digest};
use crate::error::{Error, Result};
use crate::graph::{triangle_len, Graph};
use crate::reconstruct::{phi_formula, DegreeCounts};

/// Largest order the census enumerates.
pub const MAX_CENSUS_ORDER: usize = 9;
/// Largest order for deck-level reconstruction searches.
pub const MAX_SEARCH_ORDER: usize = 8;

/// One canonical representative per isomorphism class, sorted by key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFamily {
    order: usize,
    members: Vec<CanonicalKey>,
}

impl GraphFamily {
    /// Checks order, canonicity and strict sorting of `members`.
    pub fn new(order: usize, members: Vec<CanonicalKey>) -> Result<GraphFamily> {
        for (i, key) in members.iter().enumerate() {
            if key.order() != order {
                return Err(Error::Parameter(format!("{key} is not a {order}-vertex graph")));
            }
            if canonical_key(&key.graph()) != *key {
                return Err(Error::Parameter(format!("{key} is not canonically labeled")));
            }
            if i > 0 && members[i - 1] >= *key {
                return Err(Error::Parameter("family members not strictly sorted".into()));
            }
        }
        Ok(GraphFamily { order, members })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn members(&self) -> &[CanonicalKey] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn check_census_order(n: usize) -> Result<()> {
    if n == 0 || n > MAX_CENSUS_ORDER {
        return Err(Error::Parameter(format!(
            "census order must lie in 1..={MAX_CENSUS_ORDER}, got {n}"
        )));
    }
    Ok(())
}

fn family_memo() -> &'static Mutex<HashMap<usize, Arc<GraphFamily>>> {
    static MEMO: OnceLock<Mutex<HashMap<usize, Arc<GraphFamily>>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// The family of order `n`, computed once per process.
pub fn shared_family(n: usize) -> Result<Arc<GraphFamily>> {
    check_census_order(n)?;
    if let Some(f) = family_memo().lock().unwrap().get(&n) {
        return Ok(f.clone());
    }
    let family = if n == 1 {
        GraphFamily {
            order: 1,
            members: vec![canonical_key(&Graph::empty(1)?)],
        }
    } else {
        augment(shared_family(n - 1)?.as_ref())
    };
    let family = Arc::new(family);
    family_memo().lock().unwrap().entry(n).or_insert(family.clone());
    Ok(family)
}

/// All non-isomorphic graphs on `n` vertices, `1 <= n <= 9`.
pub fn enumerate_graphs(n: usize) -> Result<GraphFamily> {
    Ok((*shared_family(n)?).clone())
}

/// Extends every member of `smaller` by one vertex in every possible way.
pub fn augment(smaller: &GraphFamily) -> GraphFamily {
    let n = smaller.order + 1;
    let mut bits: Vec<u64> = smaller
        .members
        .par_iter()
        .flat_map_iter(|key| {
            let base = key.graph();
            (0u16..1 << (n - 1)).map(move |nbhd| {
                let mut g = Graph::empty(n).expect("census order is in range");
                for (u, v) in base.edges() {
                    g.set_edge(u, v);
                }
                let mut m = nbhd;
                while m != 0 {
                    g.set_edge(m.trailing_zeros() as usize, n - 1);
                    m &= m - 1;
                }
                canonical_bits(&g)
            })
        })
        .collect();
    bits.par_sort_unstable();
    bits.dedup();
    GraphFamily {
        order: n,
        members: keys_from_bits(n, &bits),
    }
}

fn keys_from_bits(n: usize, bits: &[u64]) -> Vec<CanonicalKey> {
    let mut keys: Vec<CanonicalKey> = bits
        .iter()
        .map(|&b| CanonicalKey::from_canonical(&Graph::from_packed(n, b).expect("valid bits")))
        .collect();
    keys.sort();
    keys
}

/// Canonicalizes every labeled graph on `n <= 6` vertices. Independent of
/// the augmentation path, used as its oracle.
pub fn enumerate_graphs_brute_force(n: usize) -> Result<GraphFamily> {
    if n == 0 || n > 6 {
        return Err(Error::Parameter(format!(
            "brute-force enumeration supports 1..=6 vertices, got {n}"
        )));
    }
    let mut bits: Vec<u64> = (0..1u64 << triangle_len(n))
        .into_par_iter()
        .map(|b| canonical_bits(&Graph::from_packed(n, b).expect("in range")))
        .collect();
    bits.par_sort_unstable();
    bits.dedup();
    Ok(GraphFamily {
        order: n,
        members: keys_from_bits(n, &bits),
    })
}

/// Which reconstructible property a report checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Invariant {
    DegreeList,
    Connectedness,
    Isomorphism,
}

impl Invariant {
    pub fn name(&self) -> &'static str {
        match self {
            Invariant::DegreeList => "degree_list",
            Invariant::Connectedness => "connectedness",
            Invariant::Isomorphism => "isomorphism",
        }
    }

    /// `None` when `a` and `b` agree, else a one-line description.
    fn disagreement(&self, a: &Graph, b: &Graph) -> Option<String> {
        match self {
            Invariant::DegreeList => {
                let (da, db) = (a.degree_list(), b.degree_list());
                (da != db).then(|| format!("degree lists {da} vs {db}"))
            }
            Invariant::Connectedness => {
                let (ca, cb) = (a.is_connected(), b.is_connected());
                (ca != cb).then(|| format!("connected {ca} vs {cb}"))
            }
            Invariant::Isomorphism => (canonical_key(a) != canonical_key(b)).then(|| "non-isomorphic".to_string()),
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Invariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Invariant> {
        match s {
            "degree_list" => Ok(Invariant::DegreeList),
            "connectedness" => Ok(Invariant::Connectedness),
            "isomorphism" => Ok(Invariant::Isomorphism),
            other => Err(Error::Parameter(format!("unknown invariant `{other}`"))),
        }
    }
}

/// Members of the family sharing one k-deck.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeckClass {
    pub digest: Digest,
    pub members: Vec<CanonicalKey>,
}

/// Two members of one deck class that disagree on the checked invariant.
/// `first < second` by key.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub first: CanonicalKey,
    pub second: CanonicalKey,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub n: usize,
    pub k: usize,
    /// Sorted by digest, then by first member.
    pub classes: Vec<DeckClass>,
    pub invariant_checked: Option<Invariant>,
    /// Sorted by key pair.
    pub violations: Vec<Violation>,
}

impl ClassReport {
    pub fn member_count(&self) -> usize {
        self.classes.iter().map(|c| c.members.len()).sum()
    }

    pub fn all_singletons(&self) -> bool {
        self.classes.iter().all(|c| c.members.len() == 1)
    }

    /// The class containing `key`, if any.
    pub fn class_of(&self, key: &CanonicalKey) -> Option<&DeckClass> {
        self.classes.iter().find(|c| c.members.contains(key))
    }

    pub fn has_violation(&self, a: &CanonicalKey, b: &CanonicalKey) -> bool {
        self.violations
            .iter()
            .any(|v| (v.first == *a && v.second == *b) || (v.first == *b && v.second == *a))
    }
}

/// Partitions `family` by k-deck.
pub fn deck_classes(family: &GraphFamily, k: usize) -> Result<ClassReport> {
    let n = family.order;
    if k == 0 || k > n {
        return Err(Error::CardSizeOutOfRange { k, n });
    }
    let digests: Vec<Digest> = family
        .members
        .par_iter()
        .map(|key| compute_deck(&key.graph(), k).map(|d| d.digest()))
        .collect::<Result<_>>()?;
    let mut groups: BTreeMap<Digest, Vec<&CanonicalKey>> = BTreeMap::new();
    for (key, digest) in family.members.iter().zip(digests) {
        groups.entry(digest).or_default().push(key);
    }
    let groups: Vec<(Digest, Vec<&CanonicalKey>)> = groups.into_iter().collect();
    let classes: Vec<Vec<DeckClass>> = groups
        .par_iter()
        .map(|(digest, keys)| confirm_group(*digest, keys, k))
        .collect::<Result<_>>()?;
    Ok(ClassReport {
        n,
        k,
        classes: classes.into_iter().flatten().collect(),
        invariant_checked: None,
        violations: Vec::new(),
    })
}

/// Splits one digest group by full deck equality. Keys come in sorted, and
/// so do the resulting classes.
pub(crate) fn confirm_group(digest: Digest, keys: &[&CanonicalKey], k: usize) -> Result<Vec<DeckClass>> {
    if keys.len() == 1 {
        return Ok(vec![DeckClass {
            digest,
            members: vec![keys[0].clone()],
        }]);
    }
    let mut split: Vec<(Deck, Vec<CanonicalKey>)> = Vec::new();
    for &key in keys {
        let deck = compute_deck(&key.graph(), k)?;
        match split.iter_mut().find(|(d, _)| d.entries() == deck.entries()) {
            Some((_, members)) => members.push(key.clone()),
            None => split.push((deck, vec![key.clone()])),
        }
    }
    Ok(split
        .into_iter()
        .map(|(_, members)| DeckClass { digest, members })
        .collect())
}

/// Lists every in-class pair that disagrees on `invariant`.
pub fn verify_invariant(report: &ClassReport, invariant: Invariant) -> ClassReport {
    let mut violations: Vec<Violation> = report
        .classes
        .par_iter()
        .filter(|c| c.members.len() > 1)
        .flat_map_iter(|class| {
            let graphs: Vec<Graph> = class.members.iter().map(|k| k.graph()).collect();
            let mut found = Vec::new();
            for i in 0..graphs.len() {
                for j in i + 1..graphs.len() {
                    if let Some(witness) = invariant.disagreement(&graphs[i], &graphs[j]) {
                        let (a, b) = (&class.members[i], &class.members[j]);
                        let (first, second) = if a < b { (a, b) } else { (b, a) };
                        found.push(Violation {
                            first: first.clone(),
                            second: second.clone(),
                            witness,
                        });
                    }
                }
            }
            found
        })
        .collect();
    violations.sort();
    ClassReport {
        invariant_checked: Some(invariant),
        violations,
        ..report.clone()
    }
}

/// Every isomorphism class of `n`-vertex graphs whose k-deck is `deck`.
///
/// Candidates must first match the edge count read off the deck and the
/// deck's card degree totals (the counting identity evaluated on their own
/// degree counts) before a full deck comparison.
pub fn find_reconstructions(deck: &Deck, n: usize) -> Result<Vec<CanonicalKey>> {
    if n == 0 || n > MAX_SEARCH_ORDER {
        return Err(Error::Parameter(format!(
            "reconstruction search supports 1..={MAX_SEARCH_ORDER} vertices, got {n}"
        )));
    }
    let k = deck.card_size();
    if deck.origin_order() != n || k > n {
        return Ok(Vec::new());
    }
    let edges = if k >= 2 {
        match edge_count_from_deck(deck) {
            Ok(m) => Some(m as usize),
            Err(Error::NotRealizable(_)) => return Ok(Vec::new()),
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let phi = phi_vector(deck);
    let family = shared_family(n)?;
    family
        .members
        .par_iter()
        .filter_map(|key| {
            let g = key.graph();
            if edges.is_some_and(|m| g.edge_count() != m) {
                return None;
            }
            let counts = DegreeCounts::of(&g);
            let consistent = (0..k).all(|j| phi_formula(&counts, n, k, j).ok() == Some(phi.values[j]));
            if !consistent {
                return None;
            }
            match compute_deck(&g, k).and_then(|d| deck_equal(&d, deck)) {
                Ok(true) => Some(Ok(key.clone())),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(|mut keys| {
            keys.sort();
            keys
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connectivity {
    Connected,
    Disconnected,
    Ambiguous,
}

impl fmt::Display for Connectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Connectivity::Connected => "connected",
            Connectivity::Disconnected => "disconnected",
            Connectivity::Ambiguous => "ambiguous",
        })
    }
}

/// Whether all graphs with this deck agree on connectedness.
pub fn decide_connectedness(deck: &Deck, n: usize) -> Result<Connectivity> {
    let found = find_reconstructions(deck, n)?;
    if found.is_empty() {
        return Err(Error::NotRealizable(format!(
            "no {n}-vertex graph has this {}-deck",
            deck.card_size()
        )));
    }
    let connected = found.iter().filter(|k| k.graph().is_connected()).count();
    Ok(if connected == found.len() {
        Connectivity::Connected
    } else if connected == 0 {
        Connectivity::Disconnected
    } else {
        Connectivity::Ambiguous
    })
}

/// Largest `l` such that `g` is the only graph with its (n-l)-deck, and
/// likewise for every smaller `l`. Zero when even the (n-1)-deck is shared.
pub fn reconstructibility_number(g: &Graph) -> Result<usize> {
    let n = g.order();
    let mut rho = 0;
    for l in 1..n {
        let deck = compute_deck(g, n - l)?;
        if find_reconstructions(&deck, n)?.len() != 1 {
            break;
        }
        rho = l;
    }
    Ok(rho)
}

/// Two non-isomorphic graphs with the same k-deck.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnownPair {
    pub first: Graph,
    pub second: Graph,
    pub k: usize,
    pub label: String,
}

/// `(C_{l+1} + P_{l-1}, P_{2l}, l)` for `2 <= l <= 4`, plus the two
/// subdivided-claw pairs at k = 3 when `l == 3` or `with_fixed` is set.
/// Every returned pair is checked to share its deck.
pub fn known_pairs(l: usize, with_fixed: bool) -> Result<Vec<KnownPair>> {
    if !(2..=4).contains(&l) {
        return Err(Error::Parameter(format!("known pairs need 2 <= l <= 4, got {l}")));
    }
    let mut pairs = vec![KnownPair {
        first: Graph::cycle(l + 1)?.disjoint_union(&Graph::path(l - 1)?)?,
        second: Graph::path(2 * l)?,
        k: l,
        label: format!("cycle{}+path{} / path{}", l + 1, l - 1, 2 * l),
    }];
    if l == 3 || with_fixed {
        pairs.push(KnownPair {
            first: Graph::named("cycle4+empty1")?,
            second: Graph::claw_subdivided(1)?,
            k: 3,
            label: "cycle4+empty1 / claw_subdivided1".into(),
        });
        pairs.push(KnownPair {
            first: Graph::named("cycle5+empty1")?,
            second: Graph::claw_subdivided(2)?,
            k: 3,
            label: "cycle5+empty1 / claw_subdivided2".into(),
        });
    }
    for p in &pairs {
        if !deck_equal(&compute_deck(&p.first, p.k)?, &compute_deck(&p.second, p.k)?)? {
            return Err(Error::NotRealizable(format!("pair {} does not share its {}-deck", p.label, p.k)));
        }
    }
    Ok(pairs)
}
