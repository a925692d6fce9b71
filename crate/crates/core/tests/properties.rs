use proptest::prelude::*;

use derham::aut::{automorphism_group, canonical_form, induced_action, Permutation};
use derham::calculus::{hodge_parts, net_degrees, stokes_check};
use derham::cochain::{self, adjoint_coboundary, coboundary, cohomology, Degree, EdgeForm, VertexForm};
use derham::decomposition::{aut_restriction_check, cycle_forest, kernel_restriction_check, retract_homomorphism};
use derham::graph::{betti_numbers, Graph, Orientation, OrientedGraph, Subgraph};
use derham::graph_file::{parse_graph_file, write_graph_file};
use derham::linalg::{self, ratio, Rational};
use derham::mayer_vietoris::{long_sequence_check, short_sequence_check, Cover};
use derham::orientation::{find_natural_orientation, verify_witness};
use derham::random::{random_cover, rng};

fn graph(max_vertices: usize) -> impl Strategy<Value = Graph> {
    (1..=max_vertices).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges: Vec<(usize, usize)> = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(p, _)| *p).collect();
            Graph::new(n, &edges).unwrap()
        })
    })
}

fn oriented(max_vertices: usize) -> impl Strategy<Value = OrientedGraph> {
    graph(max_vertices).prop_flat_map(|g| {
        proptest::collection::vec(prop_oneof![Just(1i64), Just(-1i64)], g.edge_count()).prop_map(move |s| {
            let o = Orientation::from_signs(&g, &s).unwrap();
            OrientedGraph::new(g.clone(), o).unwrap()
        })
    })
}

fn rationals(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((-9i64..=9, 1i64..=6).prop_map(|(n, d)| ratio(n, d)), len)
}

fn with_forms(max_vertices: usize) -> impl Strategy<Value = (OrientedGraph, VertexForm, EdgeForm)> {
    oriented(max_vertices).prop_flat_map(|og| {
        let (n, m) = (og.vertex_count(), og.edge_count());
        (Just(og), rationals(n), rationals(m)).prop_map(|(og, f, g)| (og, VertexForm(f), EdgeForm(g)))
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn coboundary_is_adjoint_to_incidence((og, f, g) in with_forms(8)) {
        let df = coboundary(&og, &f).unwrap();
        let dg = adjoint_coboundary(&og, &g).unwrap();
        prop_assert_eq!(linalg::dot(&df.0, &g.0), linalg::dot(&f.0, &dg.0));
    }

    #[test]
    fn cohomology_dimensions_are_betti_numbers(og in oriented(9)) {
        let b = betti_numbers(og.graph());
        let h0 = cohomology(&og, Degree::Zero);
        let h1 = cohomology(&og, Degree::One);
        prop_assert_eq!((h0.dim(), h1.dim()), (b.b0, b.b1));
        let inc = cochain::incidence_matrix(&og);
        for v in h1.basis() {
            prop_assert!(linalg::is_zero_vector(&inc.mul_vec(v)));
        }
        prop_assert_eq!(b.b1 + og.vertex_count(), og.edge_count() + b.b0);
    }

    #[test]
    fn hodge_parts_recombine((og, _f, h) in with_forms(8)) {
        let (harmonic, exact, g) = hodge_parts(&og, &h).unwrap();
        let sum: Vec<Rational> = harmonic.0.iter().zip(&exact.0).map(|(a, b)| a + b).collect();
        prop_assert_eq!(&sum, &h.0);
        prop_assert_eq!(coboundary(&og, &g).unwrap(), exact);
        prop_assert!(cohomology(&og, Degree::One).contains(&harmonic.0));
    }

    #[test]
    fn net_degrees_sum_to_zero(og in oriented(9), seed in any::<u64>()) {
        let mut r = rng(seed);
        let sub = derham::random::random_subgraph(&mut r, og.graph());
        prop_assert_eq!(net_degrees(&og, &sub).iter().sum::<i64>(), 0);
    }

    #[test]
    fn stokes_holds_on_every_subgraph((og, f, _h) in with_forms(8), seed in any::<u64>()) {
        let mut r = rng(seed);
        let sub = derham::random::random_subgraph(&mut r, og.graph());
        prop_assert!(stokes_check(&og, &sub, &f).unwrap().holds());
        prop_assert!(stokes_check(&og, &Subgraph::full(og.graph()), &f).unwrap().holds());
    }

    #[test]
    fn induced_action_is_a_homomorphism(g in graph(7)) {
        for degree in [Degree::Zero, Degree::One] {
            let a = induced_action(&g, degree);
            prop_assert!(a.is_homomorphism());
            prop_assert!(a.kernel_is_normal());
            prop_assert_eq!(a.kernel_order() * a.image_order(), a.automorphisms().order());
            prop_assert_eq!(a.kernel(), a.kernel_by_fixed_vectors());
        }
    }

    #[test]
    fn automorphisms_restrict_to_the_cycle_part(g in graph(8)) {
        prop_assert!(aut_restriction_check(&g).holds());
        prop_assert!(kernel_restriction_check(&g));
    }

    #[test]
    fn automorphism_group_order_is_relabel_invariant(
        (g, perm) in graph(7).prop_flat_map(|g| { let n = g.vertex_count(); (Just(g), permutation(n)) })
    ) {
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(automorphism_group(&g).order(), automorphism_group(&h).order());
        prop_assert_eq!(canonical_form(&g).0, canonical_form(&h).0);
        let p = Permutation::new(perm).unwrap();
        for a in automorphism_group(&g).elements() {
            let conj = p.compose(a).compose(&p.inverse());
            prop_assert!(automorphism_group(&h).contains(&conj));
        }
    }

    #[test]
    fn stripping_is_deterministic_and_retracts(g in graph(10)) {
        let d = cycle_forest(&g);
        prop_assert_eq!(&d, &cycle_forest(&g));
        prop_assert!(d.is_valid());
        let stripped: usize = d.layers.iter().map(Vec::len).sum();
        prop_assert_eq!(stripped + d.cycle_retract.vertex_count(), g.vertex_count());
        if d.cycle_retract.edge_count() > 0 {
            let r = retract_homomorphism(&d).unwrap();
            prop_assert!(r.is_retraction());
        }
    }

    #[test]
    fn found_witnesses_verify(g in graph(7)) {
        let out = find_natural_orientation(&g).unwrap();
        let (w, _) = out.witness.expect("a witness is always found");
        prop_assert!(verify_witness(&g, &w));
        prop_assert_eq!(w.basis.len(), betti_numbers(&g).b1);
    }

    #[test]
    fn graph_files_round_trip(og in oriented(9)) {
        let text = write_graph_file(&og);
        let back = parse_graph_file(&text).unwrap();
        prop_assert_eq!(&back, &og);
        prop_assert_eq!(write_graph_file(&back), text);
    }

    #[test]
    fn mayer_vietoris_sequences_are_exact(og in oriented(8), seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = random_cover(&mut r, og.graph());
        let cover = Cover::new(&og, a, b).unwrap();
        prop_assert!(short_sequence_check(&cover).holds());
        let long = long_sequence_check(&cover);
        prop_assert!(long.holds());
        prop_assert_eq!(long.alternating_sum, 0);
    }
}

#[test]
fn witnesses_exist_for_forests_and_unicyclic_graphs() {
    for n in 1..=7 {
        for g in derham::enumerate::all_graphs(n) {
            if betti_numbers(&g).b1 <= 1 {
                let out = find_natural_orientation(&g).unwrap();
                assert!(out.witness.is_some_and(|(w, _)| verify_witness(&g, &w)));
            }
        }
    }
}
