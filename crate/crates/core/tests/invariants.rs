//! Cross-module invariants, mostly property-based: canonical labels under
//! relabeling, core/degeneracy monotonicity, codec round trips, counting
//! identities, blow-up saturation, symmetrization postconditions, and
//! oracle monotonicity.

use gturan::bounds;
use gturan::canon::{canonical_label, is_isomorphic};
use gturan::constructions as cons;
use gturan::counting;
use gturan::g6::{decode_g6, encode_g6};
use gturan::graph::{Graph, VertexSet};
use gturan::{oracle, trees};
use proptest::prelude::*;

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::new(n);
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask & (1 << bit) != 0 {
                g.add_edge(u, v);
            }
            bit += 1;
        }
    }
    g
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, mask)| graph_from_mask(n, mask))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_label_is_relabeling_invariant(g in arb_graph(8), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut rng);
        prop_assert_eq!(canonical_label(&g), canonical_label(&g.relabel(&perm)));
    }

    #[test]
    fn two_core_is_idempotent(g in arb_graph(9)) {
        let (core, _) = g.two_core();
        let (core2, survivors2) = core.two_core();
        prop_assert_eq!(&core2, &core);
        prop_assert_eq!(survivors2.len(), core.n());
        prop_assert!(core.n() == 0 || core.min_degree() >= 2);
    }

    #[test]
    fn degeneracy_bounds_and_monotonicity(g in arb_graph(9)) {
        prop_assert!(g.degeneracy() <= g.max_degree());
        if let Some(&(u, v)) = g.edges().first() {
            let mut smaller = g.clone();
            smaller.remove_edge(u, v);
            prop_assert!(smaller.degeneracy() <= g.degeneracy());
        }
    }

    #[test]
    fn g6_round_trip_random(g in arb_graph(11)) {
        prop_assert_eq!(&decode_g6(&encode_g6(&g).unwrap()).unwrap(), &g);
    }

    #[test]
    fn triangle_count_matches_walks(g in arb_graph(9)) {
        let walks = counting::closed_walk_count_3(&g);
        let tri = counting::count_copies(&g, &Graph::complete(3));
        prop_assert_eq!(walks, 6 * tri as u128);
    }

    #[test]
    fn copy_count_monotone_under_edge_addition(g in arb_graph(8), t_pick in 0..3usize) {
        let t = [Graph::complete(3), Graph::path(3), Graph::cycle(4)][t_pick].clone();
        let before = counting::count_copies(&g, &t);
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                if !g.has_edge(u, v) {
                    let mut bigger = g.clone();
                    bigger.add_edge(u, v);
                    prop_assert!(counting::count_copies(&bigger, &t) >= before);
                    return Ok(());
                }
            }
        }
    }

    #[test]
    fn spectrum_trace_identities(g in arb_graph(8), loop_mask in any::<u8>()) {
        let mut g = g;
        for v in 0..g.n() {
            if loop_mask & (1 << v) != 0 {
                g.add_loop(v);
            }
        }
        let s = counting::spectrum(&g);
        let sum: f64 = s.eigenvalues.iter().sum();
        let sq: f64 = s.eigenvalues.iter().map(|x| x * x).sum();
        let loops = g.loop_count() as f64;
        prop_assert!((sum - loops).abs() < 1e-6 * (g.n() as f64).max(1.0));
        prop_assert!((sq - (2.0 * g.edge_count() as f64 + loops)).abs() < 1e-6);
    }

    #[test]
    fn friendship_finder_outputs_are_valid(g in arb_graph(8), c in 1..4usize) {
        if let Some(w) = counting::find_friendship(&g, c) {
            prop_assert!(w.is_valid(&g, c));
        }
    }

    #[test]
    fn blowup_copy_floor(s in 1..4usize, t_pick in 0..3usize) {
        let t = [Graph::complete(3), Graph::path(3), Graph::cycle(4)][t_pick].clone();
        let b = cons::uniform_blowup(&t, s);
        prop_assert!(counting::count_copies(&b, &t) >= (s as u64).pow(t.n() as u32));
    }

    #[test]
    fn symmetrization_postconditions(g in arb_graph(6)) {
        let k4 = Graph::complete(4);
        prop_assume!(!counting::contains_copy(&g, &k4));
        let pattern = Graph::complete(2);
        let before = counting::count_copies(&g, &pattern);
        let out = bounds::zykov_symmetrize(&g, 4, &pattern).unwrap();
        prop_assert!(bounds::is_complete_multipartite(&out));
        prop_assert!(!counting::contains_copy(&out, &k4));
        prop_assert!(counting::count_copies(&out, &pattern) >= before);
    }
}

#[test]
fn g6_round_trip_all_graphs_up_to_8() {
    for n in 0..=8usize {
        let mut checked = 0u64;
        oracle::enumerate_hfree(n, None, &mut |g, _| {
            assert_eq!(&decode_g6(&encode_g6(g).unwrap()).unwrap(), g);
            checked += 1;
        });
        if n == 8 {
            assert_eq!(checked, 12346);
        }
    }
}

#[test]
fn isomorphic_graphs_always_share_labels() {
    // Pairs built by relabeling plus known coincidences.
    let c6 = Graph::cycle(6);
    assert!(is_isomorphic(&c6, &c6.relabel(&[3, 1, 5, 0, 4, 2])));
    let prism = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]);
    let k33 = Graph::complete_bipartite(3, 3);
    assert!(!is_isomorphic(&prism, &k33));
}

#[test]
fn u_gamma_components_are_vertices_or_cover_edges() {
    let hosts = [
        Graph::path(5),
        Graph::cycle(6),
        Graph::complete_bipartite(2, 3),
        Graph::star(4),
        Graph::matching(3),
    ];
    for t in &hosts {
        let covers = trees::min_edge_covers(t, 100).unwrap();
        for cover in &covers.covers {
            for u in trees::u_gamma_sets(t, cover).unwrap() {
                let rest: Vec<usize> = (0..t.n()).filter(|&v| !u.contains(v)).collect();
                let sub = t.induced(&rest);
                for comp in sub.components() {
                    let orig: Vec<usize> = comp.iter().map(|&i| rest[i]).collect();
                    match orig.len() {
                        1 => {}
                        2 => {
                            let e = (orig[0].min(orig[1]), orig[0].max(orig[1]));
                            assert!(
                                cover.edges.contains(&e),
                                "two-vertex component must be a cover edge"
                            );
                        }
                        k => panic!("component of size {k} in a constrained set"),
                    }
                }
            }
        }
    }
}

#[test]
fn blowup_saturation() {
    // Once the multiplicity reaches |V(H)|, further copies never create a
    // new containment.
    let bases = [Graph::path(3), Graph::path(4), Graph::star(3)];
    let hs = [Graph::path(3), Graph::path(4), Graph::star(3), Graph::complete(3)];
    for base in &bases {
        for h in &hs {
            for mask in 0u32..(1 << base.n()) {
                let fixed: VertexSet =
                    (0..base.n()).filter(|&v| mask & (1 << v) != 0).collect();
                let at = |mult: usize| {
                    counting::contains_copy(
                        &cons::partial_blowup(&cons::BlowupSpec {
                            base: base.clone(),
                            fixed: fixed.clone(),
                            multiplicity: mult,
                        }),
                        h,
                    )
                };
                let h_n = h.n();
                assert_eq!(at(h_n), at(h_n + 1), "saturation at multiplicity |V(H)|");
                assert_eq!(at(h_n), at(h_n + 3));
            }
        }
    }
}

#[test]
fn turan_count_matches_direct_on_wide_grid() {
    for n in 4..=12u64 {
        for k in 3..=6u64 {
            for t in 2..k {
                if k > n {
                    continue;
                }
                let direct = counting::count_copies(
                    &cons::turan_graph(n as usize, (k - 1) as usize),
                    &Graph::complete(t as usize),
                );
                assert_eq!(bounds::turan_clique_count(n, t, k).unwrap(), direct);
            }
        }
    }
}

#[test]
fn oracle_monotone_in_n() {
    let k3 = Graph::complete(3);
    let k4 = Graph::complete(4);
    let mut last = 0;
    for n in 3..=7 {
        let v = oracle::ex_exact(n, &k3, &k4).unwrap().value;
        assert!(v >= last);
        last = v;
    }
}

#[test]
fn linear_growth_has_bounded_increments() {
    // For exclusions classified linear, consecutive exact values move by at
    // most the classifier's coefficient.
    let hs = [cons::friendship(2), Graph::path(4)];
    let k3 = Graph::complete(3);
    for h in &hs {
        let bounds::TriangleGrowth::Linear { coefficient } = bounds::triangle_growth(h) else {
            panic!("expected linear classification");
        };
        let mut prev: Option<u64> = None;
        for n in 5..=7 {
            let v = oracle::ex_exact(n, &k3, h).unwrap().value;
            if let Some(p) = prev {
                assert!(v - p <= coefficient);
            }
            prev = Some(v);
        }
    }
}

#[test]
fn norm_graph_s2_is_biclique_free() {
    // At s = 2 the construction must avoid K_{2,2}.
    let g = cons::norm_graph(5, 2).unwrap().strip_loops();
    assert!(!counting::contains_copy(&g, &Graph::complete_bipartite(2, 2)));
    let g = cons::norm_graph(7, 2).unwrap().strip_loops();
    assert!(!counting::contains_copy(&g, &Graph::complete_bipartite(2, 2)));
}

#[test]
fn rsz_every_edge_in_exactly_one_triangle() {
    let set = cons::behrend_set(20);
    let g = cons::ruzsa_szemeredi_graph(20, &set).unwrap();
    for (u, v) in g.edges() {
        assert_eq!(counting::common_neighbor_count(&g, u, v), 1);
    }
}
