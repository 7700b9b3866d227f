use std::collections::BTreeMap;

use kdeck::canon::{canonical_key, is_isomorphic};
use kdeck::census::find_reconstructions;
use kdeck::deck::{compute_deck, connected_card_count, derive_subdeck, phi_vector};
use kdeck::graph::triangle_len;
use kdeck::graph6::{from_graph6, to_graph6};
use kdeck::reconstruct::{binomial, reconstruct_degree_list, DegreeCounts};
use kdeck::{Error, Graph};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let len = triangle_len(n);
        any::<u64>().prop_map(move |bits| {
            let mask = if len == 0 { 0 } else { (1u64 << len) - 1 };
            Graph::from_packed(n, bits & mask).unwrap()
        })
    })
}

fn graph_with_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let ids: Vec<usize> = (0..g.order()).collect();
        (Just(g), Just(ids).prop_shuffle())
    })
}

fn graph_and_k(max_n: usize) -> impl Strategy<Value = (Graph, usize)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), 1..=n)
    })
}

fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
    fn rec(a: &Graph, b: &Graph, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let v = perm.len();
        if v == a.order() {
            return true;
        }
        for w in 0..a.order() {
            if used[w] {
                continue;
            }
            if (0..v).any(|u| a.has_edge(u, v) != b.has_edge(perm[u], w)) {
                continue;
            }
            used[w] = true;
            perm.push(w);
            if rec(a, b, perm, used) {
                return true;
            }
            perm.pop();
            used[w] = false;
        }
        false
    }
    a.order() == b.order() && rec(a, b, &mut Vec::new(), &mut vec![false; a.order()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn graph6_round_trips(g in graph(10)) {
        let text = to_graph6(&g);
        prop_assert_eq!(from_graph6(&text).unwrap(), g);
        prop_assert_eq!(text.len(), 1 + triangle_len(g.order()).div_ceil(6));
    }

    #[test]
    fn induced_degrees_never_grow(g in graph(10), mask in any::<u16>()) {
        let vertices: Vec<usize> = (0..g.order()).filter(|&v| mask >> v & 1 == 1).collect();
        prop_assume!(!vertices.is_empty());
        let h = g.induced_subgraph(&vertices).unwrap();
        for (i, &v) in vertices.iter().enumerate() {
            prop_assert!(h.degree(i) <= g.degree(v));
        }
    }

    #[test]
    fn complement_degree_relation(g in graph(10)) {
        let n = g.order();
        let c = g.complement();
        prop_assert_eq!(c.complement(), g);
        let d = g.degree_list();
        let mut want: Vec<usize> = d.degrees().iter().rev().map(|&x| n - 1 - x).collect();
        want.sort_unstable_by(|a, b| b.cmp(a));
        let cdl = c.degree_list();
        prop_assert_eq!(cdl.degrees(), &want[..]);
        prop_assert_eq!(g.edge_count() + c.edge_count(), triangle_len(n));
        let sum: usize = d.degrees().iter().sum();
        prop_assert_eq!(sum, 2 * g.edge_count());
    }

    #[test]
    fn canonical_key_ignores_labels((g, perm) in graph_with_perm(7)) {
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(canonical_key(&h), canonical_key(&g));
        let key = canonical_key(&g);
        prop_assert_eq!(canonical_key(&key.graph()), key);
    }

    #[test]
    fn canonical_key_ignores_labels_at_10((g, perm) in graph_with_perm(10)) {
        prop_assert_eq!(canonical_key(&g.relabel(&perm).unwrap()), canonical_key(&g));
    }

    #[test]
    fn isomorphism_matches_brute_force((a, perm) in graph_with_perm(6), b in graph(6), flip in any::<bool>()) {
        // Half the cases compare against a relabeled copy, so positives show up.
        let b = if flip { a.relabel(&perm).unwrap() } else { b };
        let fast = is_isomorphic(&a, &b);
        prop_assert_eq!(fast, brute_isomorphic(&a, &b));
        prop_assert_eq!(fast, canonical_key(&a) == canonical_key(&b));
        if a.degree_list() != b.degree_list() {
            prop_assert!(!fast);
        }
    }

    #[test]
    fn deck_totals_and_phi((g, k) in graph_and_k(8)) {
        let n = g.order();
        let d = compute_deck(&g, k).unwrap();
        prop_assert_eq!(d.total() as u128, binomial(n as i64, k as i64));
        for key in d.entries().keys() {
            prop_assert_eq!(key.order(), k);
        }
        prop_assert_eq!(phi_vector(&d).total() as u128, k as u128 * binomial(n as i64, k as i64));
    }

    #[test]
    fn decks_ignore_labels(((g, perm), k) in graph_with_perm(8).prop_flat_map(|(g, p)| {
        let n = g.order();
        (Just((g, p)), 1..=n)
    })) {
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(compute_deck(&h, k).unwrap(), compute_deck(&g, k).unwrap());
    }

    #[test]
    fn complement_duality((g, k) in graph_and_k(8)) {
        prop_assert_eq!(
            compute_deck(&g.complement(), k).unwrap(),
            compute_deck(&g, k).unwrap().complement()
        );
    }

    #[test]
    fn subdeck_matches_direct_computation((g, k) in graph_and_k(8)) {
        prop_assume!(k >= 2);
        prop_assert_eq!(
            derive_subdeck(&compute_deck(&g, k).unwrap()).unwrap(),
            compute_deck(&g, k - 1).unwrap()
        );
    }

    #[test]
    fn back_solver_never_returns_invalid_counts(
        g in graph(8),
        k_frac in 0.0f64..1.0,
        noise in proptest::collection::vec(0u64..4, 10),
    ) {
        let n = g.order();
        let k = 1 + ((n as f64 - 1.0) * k_frac) as usize;
        let deck = compute_deck(&g, k).unwrap();
        let high: BTreeMap<usize, u64> = (k..n).map(|i| (i, noise[i])).collect();
        match reconstruct_degree_list(&deck, n, &high) {
            Ok(counts) => {
                prop_assert!(DegreeCounts::new(counts.counts().to_vec()).is_ok());
                prop_assert_eq!(counts.counts().iter().sum::<u64>(), n as u64);
            }
            Err(e) => prop_assert!(matches!(e, Error::InconsistentHighCounts(_)), "{e}"),
        }
        let truth = DegreeCounts::of(&g);
        let high: BTreeMap<usize, u64> = (k..n).map(|i| (i, truth.counts()[i])).collect();
        prop_assert_eq!(reconstruct_degree_list(&deck, n, &high).unwrap(), truth);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reconstructions_contain_the_source((g, k) in graph_and_k(7)) {
        let found = find_reconstructions(&compute_deck(&g, k).unwrap(), g.order()).unwrap();
        prop_assert!(found.contains(&canonical_key(&g)));
        if k == g.order() {
            prop_assert_eq!(found.len(), 1);
        }
        let connected = compute_deck(&g, k).map(|d| connected_card_count(&d)).unwrap();
        prop_assert!(connected as u128 <= binomial(g.order() as i64, k as i64));
    }
}
