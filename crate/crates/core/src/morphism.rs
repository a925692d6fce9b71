//! Graph homomorphisms, pushforwards of chains and pullbacks of forms.
//!
//! A homomorphism `F: Γ₁ → Γ₂` is a vertex map sending every edge to an edge. Pullbacks are
//! `F*f(v) = f(Fv)` and `F*g(v, w) = g(Fv, Fw)`; in orientation-induced coordinates each source
//! edge picks up the target coordinate of its image edge, negated when the image runs against
//! the target orientation.

use num_traits::Zero;

use crate::cochain::{self, CohomologySpace, Degree, EdgeForm, VertexForm};
use crate::error::{Error, Result};
use crate::graph::OrientedGraph;
use crate::linalg::{self, rat, Rational, RationalMatrix, Vector};

/// Image of a source edge: `source coordinate = sign * target coordinate of edge`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeImage {
    pub edge: usize,
    pub sign: i8,
}

/// Images of all source edges under `map`, or an error naming the first edge without an image.
pub fn edge_images(source: &OrientedGraph, target: &OrientedGraph, map: &[usize]) -> Result<Vec<EdgeImage>> {
    (0..source.edge_count())
        .map(|e| {
            let (t, h) = source.directed_edge(e);
            let (a, b) = (map[t], map[h]);
            let edge = target.graph().edge_index(a, b).ok_or(Error::NotHomomorphism(t, h))?;
            let sign = if target.directed_edge(edge) == (a, b) { 1 } else { -1 };
            Ok(EdgeImage { edge, sign })
        })
        .collect()
}

/// Pullback of edge coordinates through precomputed edge images.
pub fn pull_back_edges(images: &[EdgeImage], g: &[Rational]) -> Vector {
    images
        .iter()
        .map(|im| {
            let c = &g[im.edge];
            if im.sign > 0 {
                c.clone()
            } else {
                -c.clone()
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphHomomorphism {
    source: OrientedGraph,
    target: OrientedGraph,
    vertex_map: Vec<usize>,
    edge_map: Vec<EdgeImage>,
}

/// A formal sum of vertices (degree zero) or of canonical edges `(u, v)`, `u < v` (degree one).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainVector {
    pub degree: Degree,
    pub coefficients: Vector,
}

impl GraphHomomorphism {
    pub fn new(source: OrientedGraph, target: OrientedGraph, vertex_map: Vec<usize>) -> Result<Self> {
        if vertex_map.len() != source.vertex_count() {
            return Err(Error::DimensionMismatch { expected: source.vertex_count(), got: vertex_map.len() });
        }
        if let Some(&bad) = vertex_map.iter().find(|&&v| v >= target.vertex_count()) {
            return Err(Error::VertexOutOfRange { vertex: bad, vertex_count: target.vertex_count() });
        }
        let edge_map = edge_images(&source, &target, &vertex_map)?;
        Ok(GraphHomomorphism { source, target, vertex_map, edge_map })
    }

    pub fn identity(g: OrientedGraph) -> Self {
        let map = (0..g.vertex_count()).collect();
        Self::new(g.clone(), g, map).expect("identity is a homomorphism")
    }

    pub fn source(&self) -> &OrientedGraph {
        &self.source
    }

    pub fn target(&self) -> &OrientedGraph {
        &self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn edge_map(&self) -> &[EdgeImage] {
        &self.edge_map
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GraphHomomorphism) -> Result<GraphHomomorphism> {
        if self.target.graph() != next.source.graph() {
            return Err(Error::Precondition("composition needs matching middle graph".into()));
        }
        let map = self.vertex_map.iter().map(|&v| next.vertex_map[v]).collect();
        GraphHomomorphism::new(self.source.clone(), next.target.clone(), map)
    }

    /// Bijective on vertices and on edges.
    pub fn is_isomorphism(&self) -> bool {
        fn bijective(images: impl Iterator<Item = usize>, n: usize, m: usize) -> bool {
            let mut hit = vec![false; m];
            n == m && { images }.all(|i| !std::mem::replace(&mut hit[i], true))
        }
        bijective(self.vertex_map.iter().copied(), self.source.vertex_count(), self.target.vertex_count())
            && bijective(self.edge_map.iter().map(|im| im.edge), self.source.edge_count(), self.target.edge_count())
    }

    pub fn pushforward(&self, c: &ChainVector) -> Result<ChainVector> {
        let g = self.source.graph();
        match c.degree {
            Degree::Zero => {
                check(g.vertex_count(), c.coefficients.len())?;
                let mut out = linalg::zero_vector(self.target.vertex_count());
                for (v, x) in c.coefficients.iter().enumerate() {
                    out[self.vertex_map[v]] += x;
                }
                Ok(ChainVector { degree: Degree::Zero, coefficients: out })
            }
            Degree::One => {
                check(g.edge_count(), c.coefficients.len())?;
                let mut out = linalg::zero_vector(self.target.edge_count());
                for (e, x) in c.coefficients.iter().enumerate() {
                    let (u, v) = g.edge(e);
                    let (a, b) = (self.vertex_map[u], self.vertex_map[v]);
                    let t = self.target.graph().edge_index(a, b).expect("validated homomorphism");
                    if a < b {
                        out[t] += x;
                    } else {
                        out[t] -= x;
                    }
                }
                Ok(ChainVector { degree: Degree::One, coefficients: out })
            }
        }
    }

    pub fn pullback_vertex(&self, f: &VertexForm) -> Result<VertexForm> {
        check(self.target.vertex_count(), f.0.len())?;
        Ok(VertexForm(self.vertex_map.iter().map(|&w| f.0[w].clone()).collect()))
    }

    pub fn pullback_edge(&self, f: &EdgeForm) -> Result<EdgeForm> {
        check(self.target.edge_count(), f.0.len())?;
        Ok(EdgeForm(pull_back_edges(&self.edge_map, &f.0)))
    }

    /// Matrix of `F*` on `Ω⁰` (`|V₁| x |V₂|`) or `Ω¹` (`|E₁| x |E₂|`).
    pub fn pullback_matrix(&self, degree: Degree) -> RationalMatrix {
        match degree {
            Degree::Zero => {
                let mut m = RationalMatrix::zeros(self.source.vertex_count(), self.target.vertex_count());
                for (v, &w) in self.vertex_map.iter().enumerate() {
                    m.set(v, w, rat(1));
                }
                m
            }
            Degree::One => {
                let mut m = RationalMatrix::zeros(self.source.edge_count(), self.target.edge_count());
                for (e, im) in self.edge_map.iter().enumerate() {
                    m.set(e, im.edge, rat(im.sign as i64));
                }
                m
            }
        }
    }

    /// Whether `F*` is a linear isomorphism on both `Ω⁰` and `Ω¹`, decided by rank.
    pub fn pullback_is_invertible(&self) -> bool {
        [Degree::Zero, Degree::One].into_iter().all(|d| {
            let m = self.pullback_matrix(d);
            m.rows() == m.cols() && linalg::rank(&m) == m.rows()
        })
    }

    /// Matrix of `F*: H(target) → H(source)` in the harmonic bases of both graphs.
    pub fn induced_cohomology_map(&self, degree: Degree) -> RationalMatrix {
        let src = cochain::cohomology(&self.source, degree);
        let tgt = cochain::cohomology(&self.target, degree);
        self.induced_map_between(&src, &tgt)
    }

    /// Like [`GraphHomomorphism::induced_cohomology_map`] with precomputed spaces.
    pub fn induced_map_between(&self, src: &CohomologySpace, tgt: &CohomologySpace) -> RationalMatrix {
        assert_eq!(src.degree(), tgt.degree(), "cohomology spaces of different degree");
        let iso = self.is_isomorphism();
        let columns: Vec<Vector> = tgt
            .basis()
            .iter()
            .map(|b| match src.degree() {
                Degree::Zero => {
                    let pulled = self.pullback_vertex(&VertexForm(b.clone())).expect("length checked").0;
                    src.coordinates(&pulled).expect("pullback of a locally constant form is locally constant")
                }
                Degree::One => {
                    let pulled = pull_back_edges(&self.edge_map, b);
                    if iso {
                        // isomorphisms are isometries preserving ker(D*)
                        src.coordinates(&pulled).expect("isomorphism pulls harmonic forms back to harmonic forms")
                    } else {
                        src.harmonic_coordinates(&pulled)
                    }
                }
            })
            .collect();
        RationalMatrix::from_columns(&columns, src.dim())
    }
}

fn check(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

/// Whether `F*` on vertex forms commutes with `D`: `D(F*f) = F*(Df)`.
pub fn commutes_with_coboundary(h: &GraphHomomorphism, f: &VertexForm) -> Result<bool> {
    let lhs = cochain::coboundary(h.source(), &h.pullback_vertex(f)?)?;
    let rhs = h.pullback_edge(&cochain::coboundary(h.target(), f)?)?;
    Ok(lhs == rhs)
}

/// Whether a form vanishes identically.
pub fn is_zero_form(values: &[Rational]) -> bool {
    values.iter().all(Zero::is_zero)
}
