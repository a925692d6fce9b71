//! The cochain complex `0 → Ω⁰ → Ω¹ → 0` of an oriented graph.
//!
//! Edge forms are stored by their coordinates in the orientation-induced basis: the coordinate
//! of edge `e` is the value of the form on `(tail(e), head(e))`. With that convention the matrix
//! of `D` is the transpose of the incidence matrix and `D*` is the incidence matrix itself.
//!
//! First cohomology is represented by harmonic forms, i.e. by `ker(D*)`, with a basis of
//! fundamental cycles of a breadth-first spanning forest.

use std::collections::VecDeque;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{connected_components, Graph, OrientedGraph, Subgraph};
use crate::linalg::{self, rat, Rational, RationalMatrix, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    Zero,
    One,
}

impl Degree {
    pub fn from_index(d: usize) -> Option<Degree> {
        match d {
            0 => Some(Degree::Zero),
            1 => Some(Degree::One),
            _ => None,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Degree::Zero => 0,
            Degree::One => 1,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// A function on vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexForm(pub Vector);

/// An edge form in orientation-induced coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeForm(pub Vector);

impl VertexForm {
    pub fn from_i64(values: &[i64]) -> Self {
        VertexForm(values.iter().map(|&x| rat(x)).collect())
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        VertexForm(vec![c; n])
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }
}

impl EdgeForm {
    pub fn from_i64(values: &[i64]) -> Self {
        EdgeForm(values.iter().map(|&x| rat(x)).collect())
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    /// Value on the ordered pair `(a, b)` of adjacent vertices: the coordinate if the pair
    /// follows the orientation, its negative otherwise.
    pub fn value(&self, og: &OrientedGraph, a: usize, b: usize) -> Option<Rational> {
        let e = og.graph().edge_index(a, b)?;
        let c = &self.0[e];
        Some(if og.directed_edge(e) == (a, b) { c.clone() } else { -c.clone() })
    }

    /// Builds coordinates from a function on ordered pairs, which must be antisymmetric.
    pub fn from_pair_values(og: &OrientedGraph, f: impl Fn(usize, usize) -> Rational) -> Self {
        EdgeForm((0..og.edge_count()).map(|e| {
            let (t, h) = og.directed_edge(e);
            f(t, h)
        }).collect())
    }
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

/// `Df(e) = f(head) - f(tail)`.
pub fn coboundary(og: &OrientedGraph, f: &VertexForm) -> Result<EdgeForm> {
    check_len(og.vertex_count(), f.0.len())?;
    Ok(EdgeForm(
        (0..og.edge_count())
            .map(|e| {
                let (t, h) = og.directed_edge(e);
                &f.0[h] - &f.0[t]
            })
            .collect(),
    ))
}

/// `D*g(v) = Σ_{e into v} g(e) - Σ_{e out of v} g(e)`, the incidence matrix applied to `g`.
pub fn adjoint_coboundary(og: &OrientedGraph, g: &EdgeForm) -> Result<VertexForm> {
    check_len(og.edge_count(), g.0.len())?;
    let mut out = linalg::zero_vector(og.vertex_count());
    for (e, c) in g.0.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (t, h) = og.directed_edge(e);
        out[h] += c;
        out[t] -= c;
    }
    Ok(VertexForm(out))
}

/// `|V| x |E|` matrix with `-1` at each edge's tail and `+1` at its head.
pub fn incidence_matrix(og: &OrientedGraph) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(og.vertex_count(), og.edge_count());
    for e in 0..og.edge_count() {
        let (t, h) = og.directed_edge(e);
        m.set(t, e, rat(-1));
        m.set(h, e, rat(1));
    }
    m
}

/// Matrix of `D`, the transpose of the incidence matrix.
pub fn coboundary_matrix(og: &OrientedGraph) -> RationalMatrix {
    incidence_matrix(og).transpose()
}

/// `(Δ⁺, Δ⁻) = (D*D, DD*)`.
pub fn laplacians(og: &OrientedGraph) -> (RationalMatrix, RationalMatrix) {
    let inc = incidence_matrix(og);
    let d = inc.transpose();
    (inc.mul(&d), d.mul(&inc))
}

/// Vertices and edges carrying a cohomology basis element. For degree one the vertices are
/// listed in traversal order around the cycle and `edges[i]` joins `vertices[i]` to
/// `vertices[i + 1]` (cyclically).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Support {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Support {
    pub fn subgraph<'g>(&self, g: &'g Graph) -> Subgraph<'g> {
        Subgraph::new(g, self.vertices.iter().copied(), self.edges.iter().copied())
            .expect("support edges have their endpoints")
    }
}

/// Harmonic basis of `H⁰` or `H¹`, with a coordinate functional read off pivot entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologySpace {
    degree: Degree,
    ambient: usize,
    basis: Vec<Vector>,
    supports: Vec<Support>,
    // basis[i][pivots[i]] = pivot_signs[i] and basis[j][pivots[i]] = 0 for j != i
    pivots: Vec<usize>,
    pivot_signs: Vec<i8>,
}

impl CohomologySpace {
    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Length of the vectors: `|V|` in degree zero, `|E|` in degree one.
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn supports(&self) -> &[Support] {
        &self.supports
    }

    /// Coordinate positions used to read off coefficients.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coefficients of `v` in the basis, read from pivot entries. Only meaningful when `v` lies
    /// in the span; see [`CohomologySpace::coordinates`] for the checked version.
    pub fn pivot_coordinates(&self, v: &[Rational]) -> Vector {
        self.pivots
            .iter()
            .zip(&self.pivot_signs)
            .map(|(&p, &s)| if s > 0 { v[p].clone() } else { -v[p].clone() })
            .collect()
    }

    /// Coefficients of `v`, or `None` if `v` is not in the span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vector> {
        let c = self.pivot_coordinates(v);
        (linalg::combine(&c, &self.basis, self.ambient) == v).then_some(c)
    }

    /// Coefficients of the orthogonal projection of `v` onto the span, i.e. the coordinates of
    /// the harmonic representative of `v`'s class.
    pub fn harmonic_coordinates(&self, v: &[Rational]) -> Vector {
        linalg::projection_coefficients(v, &self.basis)
    }

    pub fn harmonic_part(&self, v: &[Rational]) -> Vector {
        linalg::project_orthogonal(v, &self.basis)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }
}

/// Breadth-first spanning forest rooted at the smallest vertex of each component.
struct SpanningForest {
    parent: Vec<Option<(usize, usize)>>, // (parent vertex, edge)
    depth: Vec<usize>,
    tree_edge: Vec<bool>,
}

fn spanning_forest(g: &Graph) -> SpanningForest {
    let n = g.vertex_count();
    let mut parent = vec![None; n];
    let mut depth = vec![0; n];
    let mut seen = vec![false; n];
    let mut tree_edge = vec![false; g.edge_count()];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in g.incident(v) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((v, e));
                    depth[w] = depth[v] + 1;
                    tree_edge[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    SpanningForest { parent, depth, tree_edge }
}

impl SpanningForest {
    /// Vertices `[from, parent(from), ..., ancestor]`.
    fn climb(&self, from: usize, ancestor: usize) -> Vec<usize> {
        let mut out = vec![from];
        let mut v = from;
        while v != ancestor {
            v = self.parent[v].expect("ancestor reachable").0;
            out.push(v);
        }
        out
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        while self.depth[a] > self.depth[b] {
            a = self.parent[a].unwrap().0;
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b].unwrap().0;
        }
        while a != b {
            a = self.parent[a].unwrap().0;
            b = self.parent[b].unwrap().0;
        }
        a
    }
}

/// Signed coordinates of the closed walk `vertices[0] → vertices[1] → … → vertices[0]`.
pub fn cycle_form(og: &OrientedGraph, vertices: &[usize]) -> Result<(EdgeForm, Vec<usize>)> {
    let g = og.graph();
    let mut form = linalg::zero_vector(og.edge_count());
    let mut edges = Vec::with_capacity(vertices.len());
    for i in 0..vertices.len() {
        let (a, b) = (vertices[i], vertices[(i + 1) % vertices.len()]);
        let e = g.edge_index(a, b).ok_or(Error::NotHomomorphism(a, b))?;
        form[e] = if og.directed_edge(e) == (a, b) { Rational::one() } else { -Rational::one() };
        edges.push(e);
    }
    Ok((EdgeForm(form), edges))
}

fn cohomology_zero(og: &OrientedGraph) -> CohomologySpace {
    let g = og.graph();
    let comps = connected_components(g);
    let members = comps.members();
    let basis = members
        .iter()
        .map(|vs| {
            let mut v = linalg::zero_vector(g.vertex_count());
            for &x in vs {
                v[x] = Rational::one();
            }
            v
        })
        .collect();
    let supports = members
        .iter()
        .map(|vs| {
            let edges = (0..g.edge_count()).filter(|&e| comps.label(g.edge(e).0) == comps.label(vs[0])).collect();
            Support { vertices: vs.clone(), edges }
        })
        .collect();
    CohomologySpace {
        degree: Degree::Zero,
        ambient: g.vertex_count(),
        basis,
        supports,
        pivots: comps.representatives().to_vec(),
        pivot_signs: vec![1; comps.count()],
    }
}

fn cohomology_one(og: &OrientedGraph) -> CohomologySpace {
    let g = og.graph();
    let forest = spanning_forest(g);
    let mut basis = Vec::new();
    let mut supports = Vec::new();
    let mut pivots = Vec::new();
    let mut pivot_signs = Vec::new();
    for e in 0..g.edge_count() {
        if forest.tree_edge[e] {
            continue;
        }
        let (u, v) = g.edge(e);
        let top = forest.lca(u, v);
        let up_u = forest.climb(u, top);
        let mut walk = vec![u];
        walk.extend(forest.climb(v, top));
        walk.extend(up_u[1..up_u.len() - 1].iter().rev());
        let (form, edges) = cycle_form(og, &walk).expect("fundamental cycle uses graph edges");
        pivot_signs.push(if form.0[e].is_one() { 1 } else { -1 });
        pivots.push(e);
        basis.push(form.0);
        supports.push(Support { vertices: walk, edges });
    }
    CohomologySpace { degree: Degree::One, ambient: g.edge_count(), basis, supports, pivots, pivot_signs }
}

/// Cohomology in the requested degree: component indicators for `H⁰`, fundamental cycle forms
/// for `H¹ ≅ ker(D*)`.
pub fn cohomology(og: &OrientedGraph, degree: Degree) -> CohomologySpace {
    match degree {
        Degree::Zero => cohomology_zero(og),
        Degree::One => cohomology_one(og),
    }
}

/// Subgraph induced by the nonzero entries of a vertex form.
pub fn vertex_support<'g>(g: &'g Graph, f: &VertexForm) -> Subgraph<'g> {
    Subgraph::induced(g, f.0.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i))
}

/// Edges with nonzero coordinate together with their endpoints.
pub fn edge_support<'g>(g: &'g Graph, f: &EdgeForm) -> Subgraph<'g> {
    Subgraph::from_edges(g, f.0.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i))
}
