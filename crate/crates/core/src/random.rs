//! Seeded generators of graphs, orientations, forms, subgraphs, covers and homomorphisms for
//! the randomized suites.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

use crate::cochain::{EdgeForm, VertexForm};
use crate::graph::{Graph, Orientation, OrientedGraph, Subgraph};
use crate::linalg::{ratio, Rational};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Graph with `n` vertices and `m` distinct edges chosen uniformly, `m` clamped to the maximum.
pub fn gnm(rng: &mut impl Rng, n: usize, m: usize) -> Graph {
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    pairs.truncate(m);
    Graph::new(n, &pairs).expect("distinct pairs of distinct vertices")
}

/// Random graph with `1..=max_vertices` vertices and at most `max_edges` edges.
pub fn random_graph(rng: &mut impl Rng, max_vertices: usize, max_edges: usize) -> Graph {
    let n = rng.gen_range(1..=max_vertices);
    let m = rng.gen_range(0..=max_edges.min(n * (n - 1) / 2));
    gnm(rng, n, m)
}

pub fn random_orientation(rng: &mut impl Rng, g: &Graph) -> Orientation {
    let signs: Vec<i64> = (0..g.edge_count()).map(|_| if rng.gen() { 1 } else { -1 }).collect();
    Orientation::from_signs(g, &signs).expect("signs are ±1")
}

pub fn random_oriented(rng: &mut impl Rng, g: Graph) -> OrientedGraph {
    let o = random_orientation(rng, &g);
    OrientedGraph::new(g, o).expect("orientation sized to the graph")
}

/// Rational with numerator in `-9..=9` and denominator in `1..=6`.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=6))
}

pub fn random_vertex_form(rng: &mut impl Rng, n: usize) -> VertexForm {
    VertexForm((0..n).map(|_| random_rational(rng)).collect())
}

pub fn random_edge_form(rng: &mut impl Rng, m: usize) -> EdgeForm {
    EdgeForm((0..m).map(|_| random_rational(rng)).collect())
}

/// Each edge kept with probability one half, plus its endpoints and some extra vertices.
pub fn random_subgraph<'g>(rng: &mut impl Rng, g: &'g Graph) -> Subgraph<'g> {
    let edges: Vec<usize> = (0..g.edge_count()).filter(|_| rng.gen_bool(0.5)).collect();
    let with_edges = Subgraph::from_edges(g, edges.iter().copied());
    let vertices: Vec<usize> =
        (0..g.vertex_count()).filter(|&v| with_edges.contains_vertex(v) || rng.gen_bool(0.3)).collect();
    Subgraph::new(g, vertices, edges).expect("endpoints are included")
}

/// `g` with its vertices relabeled by a uniform random permutation.
pub fn shuffle_labels(rng: &mut impl Rng, g: &Graph) -> Graph {
    let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
    perm.shuffle(rng);
    g.relabel(&perm).expect("a permutation")
}

/// A 2-connected graph on `n ≥ 4` vertices with `b₁ ≥ 2`: a cycle, then open ears of new
/// vertices, then chords.
pub fn random_two_connected(rng: &mut impl Rng, n: usize) -> Graph {
    assert!(n >= 4, "cores need four vertices");
    let base = rng.gen_range(3..=n);
    let mut edges: Vec<(usize, usize)> = (0..base).map(|i| (i, (i + 1) % base)).collect();
    let mut used = base;
    while used < n {
        let a = rng.gen_range(0..used);
        let b = (a + rng.gen_range(1..used)) % used;
        let inner = rng.gen_range(1..=(n - used).min(3));
        let path: Vec<usize> = std::iter::once(a).chain(used..used + inner).chain(std::iter::once(b)).collect();
        edges.extend(path.windows(2).map(|p| (p[0], p[1])));
        used += inner;
    }
    let missing = |edges: &[(usize, usize)]| -> Vec<(usize, usize)> {
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !edges.contains(&(u, v)) && !edges.contains(&(v, u)))
            .collect()
    };
    let chords = if edges.len() == n { 1 } else { 0 } + rng.gen_range(0..=1);
    for _ in 0..chords {
        if let Some(&c) = missing(&edges).choose(rng) {
            edges.push(c);
        }
    }
    Graph::new(n, &edges).expect("ears and chords join existing vertices")
}

/// Random trees on `extra` new vertices hung on `core`, each new vertex joined to one earlier
/// vertex.
pub fn attach_trees(rng: &mut impl Rng, core: &Graph, extra: usize) -> Graph {
    let n = core.vertex_count();
    let mut edges = core.edges().to_vec();
    for v in n..n + extra {
        edges.push((rng.gen_range(0..v), v));
    }
    Graph::new(n + extra, &edges).expect("tree edges join new vertices")
}

/// Connected graph with `b₁ ≥ 2`: a 2-connected core with random trees, at most `max_total`
/// vertices, labels shuffled.
pub fn random_core_with_trees(rng: &mut impl Rng, max_total: usize) -> Graph {
    let core_size = rng.gen_range(4..=max_total.min(9));
    let core = random_two_connected(rng, core_size);
    let extra = rng.gen_range(0..=max_total - core_size);
    let g = attach_trees(rng, &core, extra);
    shuffle_labels(rng, &g)
}

/// Disjoint union of two to four components, one of them often repeated, labels shuffled.
pub fn random_disconnected(rng: &mut impl Rng, max_component: usize) -> Graph {
    let count = rng.gen_range(2..=4);
    let mut parts: Vec<Graph> = Vec::new();
    for _ in 0..count {
        if !parts.is_empty() && rng.gen_bool(0.4) {
            let copy = parts.choose(rng).expect("nonempty").clone();
            parts.push(shuffle_labels(rng, &copy));
        } else {
            let n = rng.gen_range(1..=max_component);
            let tree = attach_trees(rng, &Graph::empty(1), n - 1);
            let extra = rng.gen_range(0..=n.min(3));
            let mut edges = tree.edges().to_vec();
            edges.extend(gnm(rng, n, extra).edges());
            parts.push(Graph::new(n, &edges).expect("edges on n vertices"));
        }
    }
    let g = parts.iter().skip(1).fold(parts[0].clone(), |acc, p| acc.disjoint_union(p));
    shuffle_labels(rng, &g)
}

/// Two subgraphs with `A ∪ B = Γ`: each edge goes to `A`, to `B`, or to both, vertices follow
/// their edges, and uncovered vertices go to one side or both.
pub fn random_cover<'g>(rng: &mut impl Rng, g: &'g Graph) -> (Subgraph<'g>, Subgraph<'g>) {
    let mut a_edges = Vec::new();
    let mut b_edges = Vec::new();
    for e in 0..g.edge_count() {
        match rng.gen_range(0..5) {
            0 | 1 => a_edges.push(e),
            2 | 3 => b_edges.push(e),
            _ => {
                a_edges.push(e);
                b_edges.push(e);
            }
        }
    }
    let a0 = Subgraph::from_edges(g, a_edges.iter().copied());
    let b0 = Subgraph::from_edges(g, b_edges.iter().copied());
    let mut av: Vec<usize> = a0.vertices().collect();
    let mut bv: Vec<usize> = b0.vertices().collect();
    for v in 0..g.vertex_count() {
        let (in_a, in_b) = (a0.contains_vertex(v), b0.contains_vertex(v));
        match (in_a, in_b) {
            (false, false) => match rng.gen_range(0..3) {
                0 => av.push(v),
                1 => bv.push(v),
                _ => {
                    av.push(v);
                    bv.push(v);
                }
            },
            (true, false) if rng.gen_bool(0.2) => bv.push(v),
            (false, true) if rng.gen_bool(0.2) => av.push(v),
            _ => {}
        }
    }
    (
        Subgraph::new(g, av, a_edges).expect("endpoints included"),
        Subgraph::new(g, bv, b_edges).expect("endpoints included"),
    )
}

/// A graph on `n` vertices admitting `map` as a homomorphism into `target`: every candidate
/// pair whose images are adjacent is kept with probability `density`.
pub fn random_preimage(rng: &mut impl Rng, target: &Graph, n: usize, density: f64) -> (Graph, Vec<usize>) {
    let map: Vec<usize> = (0..n).map(|_| rng.gen_range(0..target.vertex_count())).collect();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| target.has_edge(map[u], map[v]))
        .filter(|_| rng.gen_bool(density))
        .collect();
    (Graph::new(n, &pairs).expect("simple pairs"), map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::betti_numbers;

    #[test]
    fn generators_respect_their_contracts() {
        let mut r = rng(7);
        for _ in 0..50 {
            let n = r.gen_range(4..10);
            let core = random_two_connected(&mut r, n);
            assert!(core.is_connected());
            assert!(betti_numbers(&core).b1 >= 2);
            for e in 0..core.edge_count() {
                assert!(core.without_edge(e).is_connected());
            }
            let g = random_core_with_trees(&mut r, 14);
            assert!(g.vertex_count() <= 14 && g.is_connected() && betti_numbers(&g).b1 >= 2);
            let d = random_disconnected(&mut r, 5);
            assert!(!d.is_connected());
            let (a, b) = random_cover(&mut r, &g);
            assert!(a.union(&b).unwrap().same_as(&Subgraph::full(&g)));
        }
        assert_eq!(gnm(&mut rng(1), 4, 100).edge_count(), 6);
    }
}
