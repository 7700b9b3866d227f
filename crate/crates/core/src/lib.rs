//! k-decks of small graphs.
//!
//! The k-deck of an n-vertex graph is the multiset of isomorphism classes of
//! its k-vertex induced subgraphs. This crate computes decks exactly,
//! recovers degree lists from them through the degree-counting identity, and
//! runs exhaustive censuses over every non-isomorphic graph up to 9 vertices
//! to check which invariants a deck determines.

pub mod cache;
pub mod canon;
pub mod census;
pub mod cli;
pub mod deck;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod reconstruct;

pub use canon::{canonical_key, is_isomorphic, CanonicalKey};
pub use census::{ClassReport, GraphFamily, Invariant};
pub use deck::{compute_deck, deck_equal, derive_subdeck, Deck, Digest};
pub use error::{Error, Result};
pub use graph::{DegreeList, Graph, MAX_ORDER};
pub use graph6::{from_graph6, to_graph6};
