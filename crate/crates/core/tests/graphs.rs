mod common;

use gc_core::graphs::{
    automorphism_group_size, canonical_form, canonicalize, is_connected, is_triconnected,
    orientation_sign, Multigraph, Parity,
};
use proptest::prelude::*;

fn connected_without(g: &Multigraph, removed: &[usize]) -> bool {
    let n = g.num_vertices();
    let keep: Vec<usize> = (0..n).filter(|v| !removed.contains(v)).collect();
    let Some(&start) = keep.first() else {
        return true;
    };
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &(a, b) in g.edges() {
            let (a, b) = (a as usize, b as usize);
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !removed.contains(&y) && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    keep.iter().all(|&v| seen[v])
}

fn brute_triconnected(g: &Multigraph) -> bool {
    let n = g.num_vertices();
    if n < 4 || !g.is_simple() || g.min_degree() < 3 || !connected_without(g, &[]) {
        return false;
    }
    (0..n).all(|a| (a + 1..n).all(|b| connected_without(g, &[a, b])))
}

fn simple_graph(n: usize, mask: u32) -> Multigraph {
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let edges = pairs
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, e)| e);
    Multigraph::new(n, edges).unwrap()
}

#[test]
fn triconnectivity_matches_brute_force_on_simple_graphs() {
    for n in 1..=7 {
        let pairs = n * (n - 1) / 2;
        let mut tri = 0;
        for mask in 0..1u32 << pairs {
            let g = simple_graph(n, mask);
            if g.min_degree() < 3 && n >= 4 {
                assert!(!is_triconnected(&g));
                continue;
            }
            let expected = brute_triconnected(&g);
            assert_eq!(is_triconnected(&g), expected, "{g}");
            tri += usize::from(expected);
        }
        if n == 4 {
            assert_eq!(tri, 1);
        }
    }
}

#[test]
fn multigraphs_are_never_triconnected() {
    for e in 6..=9 {
        for g in common::all_multigraphs(5, e, 3) {
            assert_eq!(is_triconnected(&g), brute_triconnected(&g), "{g}");
        }
    }
}

#[test]
fn connectivity_matches_brute_force() {
    for n in 1..=5 {
        for mask in 0..1u32 << (n * (n - 1) / 2) {
            let g = simple_graph(n, mask);
            assert_eq!(is_connected(&g), connected_without(&g, &[]), "{g}");
        }
    }
}

fn brute_automorphisms(g: &Multigraph) -> u64 {
    let own = g.edges().to_vec();
    let vertex = common::permutations(g.num_vertices())
        .iter()
        .filter(|p| g.relabel(p).edges() == own.as_slice())
        .count() as u64;
    let mut bundles = 1u64;
    let mut i = 0;
    while i < own.len() {
        let j = (i..own.len())
            .find(|&j| own[j] != own[i])
            .unwrap_or(own.len());
        bundles *= (1..=(j - i) as u64).product::<u64>();
        i = j;
    }
    vertex * bundles
}

#[test]
fn automorphism_counts_match_brute_force() {
    for n in 2..=5 {
        for e in n..=8 {
            for g in common::all_multigraphs(n, e, 2) {
                assert_eq!(automorphism_group_size(&g), brute_automorphisms(&g), "{g}");
            }
        }
    }
    let k33 = Multigraph::new(6, (0..3).flat_map(|u| (3..6).map(move |v| (u, v)))).unwrap();
    assert_eq!(automorphism_group_size(&k33), 72);
}

fn multigraph(max_n: usize) -> impl Strategy<Value = Multigraph> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n, 1..n), 1..=3 * n).prop_map(move |es| {
            Multigraph::new(n, es.into_iter().map(|(u, d)| (u, (u + d) % n))).unwrap()
        })
    })
}

fn graph_and_perm(max_n: usize) -> impl Strategy<Value = (Multigraph, Vec<usize>)> {
    multigraph(max_n).prop_flat_map(|g| {
        let n = g.num_vertices();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn canonical_form_is_relabeling_invariant((g, p) in graph_and_perm(9)) {
        prop_assert_eq!(canonical_form(&g), canonical_form(&g.relabel(&p)));
    }

    #[test]
    fn canonical_sign_is_covariant((g, p) in graph_and_perm(9), odd in any::<bool>()) {
        let parity = if odd { Parity::Odd } else { Parity::Even };
        let a = canonicalize(&g, parity);
        let b = canonicalize(&g.relabel(&p), parity);
        prop_assert_eq!(a.graph(), b.graph());
        match (a.sign(), b.sign()) {
            (Some(sa), Some(sb)) => prop_assert_eq!(sa, orientation_sign(&g, &p, parity) * sb),
            (None, None) => {}
            _ => prop_assert!(false, "zero detection differs"),
        }
    }

    #[test]
    fn canonical_sign_matches_brute_force(g in multigraph(6), odd in any::<bool>()) {
        let parity = if odd { Parity::Odd } else { Parity::Even };
        let perms = common::permutations(g.num_vertices());
        let (min, sign) = common::brute_canonical(&g, parity, &perms);
        let lib = canonicalize(&g, parity);
        prop_assert_eq!(lib.is_zero(), sign.is_none());
        if let (Some(c), Some(s)) = (lib.graph(), lib.sign()) {
            let (cmin, csign) = common::brute_canonical(c, parity, &perms);
            prop_assert_eq!(cmin, min);
            prop_assert_eq!(csign.unwrap() * sign.unwrap(), s);
        }
    }

    #[test]
    fn orientation_sign_matches_oracle((g, p) in graph_and_perm(8), odd in any::<bool>()) {
        let parity = if odd { Parity::Odd } else { Parity::Even };
        let (_, oracle) = common::relabel_with_sign(&g, &p, parity);
        if let Some(s) = oracle {
            prop_assert_eq!(orientation_sign(&g, &p, parity), s);
        }
    }

    #[test]
    fn text_round_trip(g in multigraph(12)) {
        prop_assert_eq!(g.to_string().parse::<Multigraph>().unwrap(), g);
    }
}
