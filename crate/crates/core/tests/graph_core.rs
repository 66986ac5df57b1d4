use mu_lab::graph::brute;
use mu_lab::graph::io::{from_graph6, parse_graphs, to_edge_list, to_graph6};
use mu_lab::graph::{are_isomorphic, automorphism_count, canonical_form, color_refinement};
use mu_lab::mu::{mu_exact, mu_oracle_naive};
use mu_lab::{Graph, VertexSet};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        g.add_edge(u, v).unwrap();
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

fn mu(g: &Graph) -> u64 {
    u64::try_from(mu_exact(g).unwrap().exact.unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_is_invariant_under_relabelling((g, perm) in graph_strategy(12).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), permutation(n))
    })) {
        let h = g.permuted(&perm);
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        prop_assert!(are_isomorphic(&g, &h).unwrap());
    }

    #[test]
    fn canonical_equality_matches_brute_force(a in graph_strategy(7), b in graph_strategy(7)) {
        let same = a.order() == b.order() && canonical_form(&a).unwrap() == canonical_form(&b).unwrap();
        prop_assert_eq!(same, a.order() == b.order() && brute::isomorphic(&a, &b));
    }

    #[test]
    fn canonical_form_decodes_to_an_isomorphic_graph(g in graph_strategy(10)) {
        let c = canonical_form(&g).unwrap();
        prop_assert!(g.order() > 8 || brute::isomorphic(&c.to_graph(), &g));
        prop_assert_eq!(canonical_form(&c.to_graph()).unwrap(), c);
    }

    #[test]
    fn automorphism_counts_agree(g in graph_strategy(7)) {
        prop_assert_eq!(u64::try_from(automorphism_count(&g).unwrap()).unwrap(), brute::automorphism_count(&g));
    }

    #[test]
    fn graph6_round_trip(g in graph_strategy(40)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g.clone());
        let parsed = parse_graphs(&format!("# n={}\n{}", g.order(), to_edge_list(&g))).unwrap();
        prop_assert_eq!(&parsed[0], &g);
    }

    #[test]
    fn colour_refinement_is_equivariant((g, perm) in graph_strategy(12).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), permutation(n))
    })) {
        let h = g.permuted(&perm);
        let (cg, ch) = (color_refinement(&g), color_refinement(&h));
        let mut a = cg.clone();
        let mut b = ch.clone();
        a.sort_unstable();
        b.sort_unstable();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn mu_is_complement_invariant_and_bounded(g in graph_strategy(10)) {
        let n = g.order() as u64;
        let m = mu(&g);
        prop_assert_eq!(m, mu(&g.complement()));
        prop_assert!(m > n && m <= 1 << n);
    }
}

#[test]
fn oracle_agrees_on_every_labelled_graph_up_to_five_vertices() {
    for n in 0..=5usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u32..1 << pairs.len() {
            let g = Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)).unwrap();
            assert_eq!(mu_exact(&g).unwrap().exact.unwrap(), mu_oracle_naive(&g).unwrap(), "{}", to_graph6(&g));
        }
    }
}

#[test]
fn baselines_and_small_families() {
    for n in 0..=14 {
        assert_eq!(mu(&Graph::complete(n)), n as u64 + 1);
        assert_eq!(mu(&Graph::empty(n)), n as u64 + 1);
    }
    assert_eq!(mu(&Graph::path(4)), 7);
    assert_eq!(mu(&Graph::cycle(5)), 8);
    assert!(mu(&Graph::comb(6)) >= 1 << 3);
}

#[test]
fn vertex_sets_and_induced_subgraphs() {
    let g = Graph::cycle(6);
    let s = VertexSet::from_vertices(6, [0, 1, 2, 4]);
    let h = g.induced_subgraph(&s);
    assert_eq!(h.order(), 4);
    assert_eq!(h.edge_count(), 2);
    assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 1, 2, 4]);
}
