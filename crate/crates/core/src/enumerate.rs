//! Exhaustive generation of small graphs up to isomorphism.
//!
//! Graphs on `n` vertices are produced from those on `n - 1` by adding a vertex joined to every
//! possible neighbor subset; canonical forms remove duplicates. Every graph on `n` vertices
//! arises this way (delete its last vertex), so the lists are complete.

use std::collections::BTreeSet;

use crate::aut::canonical_form;
use crate::graph::Graph;

/// Largest vertex count accepted by [`all_graphs`] and [`connected_graphs`].
pub const MAX_VERTICES: usize = 8;

/// One canonical representative of every graph on exactly `n` vertices, in a fixed order.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= MAX_VERTICES, "enumeration supports at most {MAX_VERTICES} vertices");
    let mut level = vec![Graph::empty(0)];
    for k in 1..=n {
        let mut seen: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
        for g in &level {
            for subset in 0u32..(1 << (k - 1)) {
                let mut edges = g.edges().to_vec();
                edges.extend((0..k - 1).filter(|&u| subset >> u & 1 == 1).map(|u| (u, k - 1)));
                let h = Graph::new(k, &edges).expect("edges of a simple graph");
                seen.insert(canonical_form(&h).0.edges().to_vec());
            }
        }
        level = seen.into_iter().map(|edges| Graph::new(k, &edges).expect("canonical edges")).collect();
    }
    level
}

pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n).into_iter().filter(Graph::is_connected).collect()
}

/// Connected graphs on `1..=n` vertices.
pub fn connected_graphs_up_to(n: usize) -> Vec<Graph> {
    (1..=n).flat_map(connected_graphs).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        let all: Vec<usize> = (0..=6).map(|n| all_graphs(n).len()).collect();
        assert_eq!(all, vec![1, 1, 2, 4, 11, 34, 156]);
        let connected: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(connected, vec![1, 1, 2, 6, 21, 112]);
        assert_eq!(connected_graphs_up_to(4).len(), 10);
    }

    #[test]
    fn seven_and_eight_vertices() {
        assert_eq!((all_graphs(7).len(), connected_graphs(7).len()), (1044, 853));
        let eight = all_graphs(8);
        assert_eq!(eight.len(), 12346);
        assert_eq!(eight.iter().filter(|g| g.is_connected()).count(), 11117);
    }
}
