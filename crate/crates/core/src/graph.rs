//! Finite simple graphs in canonical form, orientations, and non-induced subgraphs.
//!
//! Edges are stored once as `(u, v)` with `u < v`, sorted lexicographically. Direction lives
//! entirely in an [`Orientation`], which records `σ(u, v)` for each canonical pair; the value on
//! the reversed pair is implied by antisymmetry.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

/// A finite simple graph with dense vertex indices `0..vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    // adjacency[v] = sorted (neighbor, edge index) pairs
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a canonical graph. Reversed and repeated pairs collapse to one edge.
    pub fn new(vertex_count: usize, edge_pairs: &[(usize, usize)]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for &(a, b) in edge_pairs {
            for v in [a, b] {
                if v >= vertex_count {
                    return Err(Error::VertexOutOfRange { vertex: v, vertex_count });
                }
            }
            if a == b {
                return Err(Error::Loop(a));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Self::from_canonical(vertex_count, set.into_iter().collect()))
    }

    fn from_canonical(vertex_count: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (i, &(u, v)) in edges.iter().enumerate() {
            adjacency[u].push((v, i));
            adjacency[v].push((u, i));
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Graph { vertex_count, edges, adjacency }
    }

    /// The graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Self::from_canonical(n, Vec::new())
    }

    /// Cycle graph `C_n` on vertices `0..n` in order.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle graphs need at least three vertices");
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, &pairs).expect("valid cycle")
    }

    /// Path graph on `n` vertices `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &pairs).expect("valid path")
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                pairs.push((u, v));
            }
        }
        Self::from_canonical(n, pairs)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.vertex_count;
        let mut pairs = self.edges.clone();
        pairs.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Self::from_canonical(self.vertex_count + other.vertex_count, pairs)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.vertex_count {
            return Err(Error::DimensionMismatch { expected: self.vertex_count, got: perm.len() });
        }
        let pairs: Vec<_> = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Graph::new(self.vertex_count, &pairs)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list, sorted, each pair with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> (usize, usize) {
        self.edges[index]
    }

    /// Sorted `(neighbor, edge index)` pairs at `v`.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().map(|&(w, _)| w)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Index of the edge joining `a` and `b`, in either order.
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        if a >= self.vertex_count || b >= self.vertex_count {
            return None;
        }
        let nbrs = &self.adjacency[a];
        nbrs.binary_search_by_key(&b, |&(w, _)| w).ok().map(|i| nbrs[i].1)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edge_index(a, b).is_some()
    }

    /// Graph with the edge at `index` removed (vertices kept).
    pub fn without_edge(&self, index: usize) -> Graph {
        let mut edges = self.edges.clone();
        edges.remove(index);
        Self::from_canonical(self.vertex_count, edges)
    }

    pub fn is_connected(&self) -> bool {
        connected_components(self).count() <= 1
    }

    pub fn is_forest(&self) -> bool {
        betti_numbers(self).b1 == 0
    }
}

/// Connected components, each labeled by its smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    labels: Vec<usize>,
    representatives: Vec<usize>,
}

impl Components {
    /// Representative (smallest vertex) of the component containing `v`.
    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Component representatives in ascending order.
    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn count(&self) -> usize {
        self.representatives.len()
    }

    /// Position of `v`'s component in [`Components::representatives`].
    pub fn index_of(&self, v: usize) -> usize {
        self.representatives.binary_search(&self.labels[v]).expect("representative present")
    }

    /// Vertices of each component, in representative order.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count()];
        for v in 0..self.labels.len() {
            out[self.index_of(v)].push(v);
        }
        out
    }
}

pub fn connected_components(g: &Graph) -> Components {
    const UNSEEN: usize = usize::MAX;
    let n = g.vertex_count();
    let mut labels = vec![UNSEEN; n];
    let mut representatives = Vec::new();
    let mut queue = VecDeque::new();
    for root in 0..n {
        if labels[root] != UNSEEN {
            continue;
        }
        representatives.push(root);
        labels[root] = root;
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v) {
                if labels[w] == UNSEEN {
                    labels[w] = root;
                    queue.push_back(w);
                }
            }
        }
    }
    Components { labels, representatives }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Betti {
    pub b0: usize,
    pub b1: usize,
}

/// `b0` = number of components, `b1 = |E| - |V| + b0`.
pub fn betti_numbers(g: &Graph) -> Betti {
    let b0 = connected_components(g).count();
    Betti { b0, b1: g.edge_count() + b0 - g.vertex_count() }
}

pub fn min_valency(g: &Graph) -> Result<usize> {
    (0..g.vertex_count()).map(|v| g.degree(v)).min().ok_or(Error::EmptyGraph)
}

/// Edge directions: `signs[e]` is `σ(u, v)` for the canonical pair `(u, v)` of edge `e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    signs: Vec<i8>,
}

impl Orientation {
    /// Every canonical pair points from its smaller to its larger endpoint.
    pub fn standard(g: &Graph) -> Self {
        Orientation { signs: vec![1; g.edge_count()] }
    }

    pub fn from_signs(g: &Graph, signs: &[i64]) -> Result<Self> {
        if signs.len() != g.edge_count() {
            return Err(Error::DimensionMismatch { expected: g.edge_count(), got: signs.len() });
        }
        let signs = signs
            .iter()
            .map(|&s| match s {
                1 => Ok(1),
                -1 => Ok(-1),
                other => Err(Error::InvalidSign(other)),
            })
            .collect::<Result<_>>()?;
        Ok(Orientation { signs })
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// Stored sign `σ(u, v)` of the canonical pair of edge `e`.
    pub fn sign(&self, e: usize) -> i8 {
        self.signs[e]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// The orientation `-σ`.
    pub fn reversed(&self) -> Self {
        Orientation { signs: self.signs.iter().map(|s| -s).collect() }
    }

    pub fn with_flipped(&self, e: usize) -> Self {
        let mut signs = self.signs.clone();
        signs[e] = -signs[e];
        Orientation { signs }
    }
}

/// A graph together with a choice of edge directions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedGraph {
    graph: Graph,
    orientation: Orientation,
}

impl OrientedGraph {
    pub fn new(graph: Graph, orientation: Orientation) -> Result<Self> {
        if orientation.len() != graph.edge_count() {
            return Err(Error::DimensionMismatch {
                expected: graph.edge_count(),
                got: orientation.len(),
            });
        }
        Ok(OrientedGraph { graph, orientation })
    }

    /// Uses the standard orientation `σ(u, v) = +1` for `u < v`.
    pub fn standard(graph: Graph) -> Self {
        let orientation = Orientation::standard(&graph);
        OrientedGraph { graph, orientation }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// `(tail, head)` of edge `e` under the orientation.
    pub fn directed_edge(&self, e: usize) -> (usize, usize) {
        let (u, v) = self.graph.edge(e);
        if self.orientation.sign(e) > 0 {
            (u, v)
        } else {
            (v, u)
        }
    }

    /// `σ(a, b)` for adjacent `a`, `b`; `None` if they are not adjacent.
    pub fn sigma(&self, a: usize, b: usize) -> Option<i8> {
        let e = self.graph.edge_index(a, b)?;
        let s = self.orientation.sign(e);
        Some(if a < b { s } else { -s })
    }

    pub fn reversed(&self) -> Self {
        OrientedGraph { graph: self.graph.clone(), orientation: self.orientation.reversed() }
    }
}

/// A subgraph given by vertex and edge membership. Not necessarily induced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph<'g> {
    parent: &'g Graph,
    vertices: Vec<bool>,
    edges: Vec<bool>,
}

/// A subgraph re-indexed as a standalone graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extracted {
    pub graph: Graph,
    /// `vertex_map[local] = parent vertex`, ascending.
    pub vertex_map: Vec<usize>,
    /// `edge_map[local] = parent edge`, ascending.
    pub edge_map: Vec<usize>,
}

impl Extracted {
    /// The parent orientation restricted to the extracted edges.
    pub fn orientation(&self, parent: &Orientation) -> Orientation {
        Orientation { signs: self.edge_map.iter().map(|&e| parent.sign(e)).collect() }
    }

    pub fn oriented(&self, parent: &Orientation) -> OrientedGraph {
        OrientedGraph { graph: self.graph.clone(), orientation: self.orientation(parent) }
    }
}

impl<'g> Subgraph<'g> {
    pub fn new(
        parent: &'g Graph,
        vertices: impl IntoIterator<Item = usize>,
        edges: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut sub = Self::empty(parent);
        for v in vertices {
            if v >= parent.vertex_count() {
                return Err(Error::VertexOutOfRange { vertex: v, vertex_count: parent.vertex_count() });
            }
            sub.vertices[v] = true;
        }
        for e in edges {
            if e >= parent.edge_count() {
                return Err(Error::DimensionMismatch { expected: parent.edge_count(), got: e });
            }
            let (u, v) = parent.edge(e);
            if !sub.vertices[u] || !sub.vertices[v] {
                return Err(Error::DanglingEdge { edge: e });
            }
            sub.edges[e] = true;
        }
        Ok(sub)
    }

    pub fn empty(parent: &'g Graph) -> Self {
        Subgraph {
            parent,
            vertices: vec![false; parent.vertex_count()],
            edges: vec![false; parent.edge_count()],
        }
    }

    pub fn full(parent: &'g Graph) -> Self {
        Subgraph {
            parent,
            vertices: vec![true; parent.vertex_count()],
            edges: vec![true; parent.edge_count()],
        }
    }

    /// The edges given plus exactly their endpoints.
    pub fn from_edges(parent: &'g Graph, edges: impl IntoIterator<Item = usize>) -> Self {
        let mut sub = Self::empty(parent);
        for e in edges {
            let (u, v) = parent.edge(e);
            sub.vertices[u] = true;
            sub.vertices[v] = true;
            sub.edges[e] = true;
        }
        sub
    }

    /// Induced subgraph on a vertex set.
    pub fn induced(parent: &'g Graph, vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut sub = Self::empty(parent);
        for v in vertices {
            sub.vertices[v] = true;
        }
        for (e, &(u, v)) in parent.edges().iter().enumerate() {
            sub.edges[e] = sub.vertices[u] && sub.vertices[v];
        }
        sub
    }

    pub fn parent(&self) -> &'g Graph {
        self.parent
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices[v]
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.edges[e]
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.iter().filter(|&&b| b).count()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_count() == 0
    }

    fn check_parent(&self, other: &Subgraph<'_>) -> Result<()> {
        if std::ptr::eq(self.parent, other.parent) || self.parent == other.parent {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    pub fn union(&self, other: &Subgraph<'_>) -> Result<Subgraph<'g>> {
        self.check_parent(other)?;
        Ok(Subgraph {
            parent: self.parent,
            vertices: self.vertices.iter().zip(&other.vertices).map(|(a, b)| *a || *b).collect(),
            edges: self.edges.iter().zip(&other.edges).map(|(a, b)| *a || *b).collect(),
        })
    }

    /// Elementwise intersection of vertex and edge sets (not the induced subgraph).
    pub fn intersection(&self, other: &Subgraph<'_>) -> Result<Subgraph<'g>> {
        self.check_parent(other)?;
        Ok(Subgraph {
            parent: self.parent,
            vertices: self.vertices.iter().zip(&other.vertices).map(|(a, b)| *a && *b).collect(),
            edges: self.edges.iter().zip(&other.edges).map(|(a, b)| *a && *b).collect(),
        })
    }

    /// Same vertex set and edge set as `other`.
    pub fn same_as(&self, other: &Subgraph<'_>) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }

    /// Degree of `v` counting only edges of the subgraph.
    pub fn degree(&self, v: usize) -> usize {
        self.parent.incident(v).iter().filter(|&&(_, e)| self.edges[e]).count()
    }

    pub fn extract(&self) -> Extracted {
        let vertex_map: Vec<usize> = self.vertices().collect();
        let mut local = vec![usize::MAX; self.parent.vertex_count()];
        for (i, &v) in vertex_map.iter().enumerate() {
            local[v] = i;
        }
        let edge_map: Vec<usize> = self.edges().collect();
        let edges = edge_map
            .iter()
            .map(|&e| {
                let (u, v) = self.parent.edge(e);
                (local[u], local[v])
            })
            .collect();
        // monotone relabeling keeps canonical order
        let graph = Graph::from_canonical(vertex_map.len(), edges);
        Extracted { graph, vertex_map, edge_map }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_collapses_duplicates_and_rejects_loops() {
        let c3 = Graph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(c3.edges(), &[(0, 1), (0, 2), (1, 2)]);
        let p2 = Graph::new(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(p2.edge_count(), 1);
        assert_eq!(Graph::new(1, &[(0, 0)]), Err(Error::Loop(0)));
        assert!(matches!(Graph::new(2, &[(0, 2)]), Err(Error::VertexOutOfRange { vertex: 2, .. })));
    }

    #[test]
    fn components_and_betti() {
        let two = Graph::cycle(3).disjoint_union(&Graph::cycle(3));
        let comps = connected_components(&two);
        assert_eq!(comps.count(), 2);
        assert_eq!(comps.representatives(), &[0, 3]);
        assert_eq!(connected_components(&Graph::cycle(4)).count(), 1);
        assert_eq!(connected_components(&Graph::empty(0)).count(), 0);

        assert_eq!(betti_numbers(&Graph::cycle(4)), Betti { b0: 1, b1: 1 });
        assert_eq!(betti_numbers(&Graph::complete(4)), Betti { b0: 1, b1: 3 });
        let forest = Graph::new(7, &[(0, 1), (1, 2), (2, 3), (4, 5), (5, 6)]).unwrap();
        assert_eq!(betti_numbers(&forest), Betti { b0: 2, b1: 0 });
    }

    #[test]
    fn valency() {
        assert_eq!(min_valency(&Graph::cycle(5)), Ok(2));
        assert_eq!(min_valency(&Graph::complete(4)), Ok(3));
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(min_valency(&star), Ok(1));
        assert_eq!(min_valency(&Graph::empty(0)), Err(Error::EmptyGraph));
    }

    #[test]
    fn subgraph_intersection_is_elementwise() {
        let c4 = Graph::cycle(4);
        let e = |a, b| c4.edge_index(a, b).unwrap();
        let a = Subgraph::from_edges(&c4, [e(0, 1), e(1, 2), e(2, 3)]);
        let b = Subgraph::from_edges(&c4, [e(3, 0)]);
        let i = a.intersection(&b).unwrap();
        assert_eq!(i.vertices().collect::<Vec<_>>(), vec![0, 3]);
        assert_eq!(i.edge_count(), 0);
        assert!(a.union(&a).unwrap().same_as(&a));
        assert!(a.intersection(&Subgraph::full(&c4)).unwrap().same_as(&a));
    }

    #[test]
    fn mismatched_parents_rejected() {
        let g = Graph::cycle(4);
        let h = Graph::path(4);
        let a = Subgraph::full(&g);
        let b = Subgraph::full(&h);
        assert_eq!(a.union(&b).unwrap_err(), Error::ParentMismatch);
    }

    #[test]
    fn dangling_edge_rejected() {
        let g = Graph::path(3);
        assert_eq!(Subgraph::new(&g, [0], [0]).unwrap_err(), Error::DanglingEdge { edge: 0 });
    }

    #[test]
    fn extraction_keeps_canonical_order() {
        let g = Graph::complete(5);
        let sub = Subgraph::induced(&g, [1, 3, 4]);
        let ex = sub.extract();
        assert_eq!(ex.graph.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(ex.vertex_map, vec![1, 3, 4]);
        for (local, &parent) in ex.edge_map.iter().enumerate() {
            let (u, v) = ex.graph.edge(local);
            assert_eq!(g.edge(parent), (ex.vertex_map[u], ex.vertex_map[v]));
        }
    }

    #[test]
    fn sigma_is_antisymmetric() {
        let g = Graph::path(2);
        let og = OrientedGraph::new(g.clone(), Orientation::from_signs(&g, &[-1]).unwrap()).unwrap();
        assert_eq!(og.sigma(0, 1), Some(-1));
        assert_eq!(og.sigma(1, 0), Some(1));
        assert_eq!(og.directed_edge(0), (1, 0));
        assert_eq!(Orientation::from_signs(&g, &[2]), Err(Error::InvalidSign(2)));
    }
}
