//! Net degree, vertex and edge integrals over subgraphs, Stokes' theorem and the Hodge
//! decomposition of `Ω⁰` and `Ω¹`.

use num_traits::Zero;

use crate::cochain::{self, EdgeForm, VertexForm};
use crate::error::{Error, Result};
use crate::graph::{OrientedGraph, Subgraph};
use crate::linalg::{self, dot, rat, Rational, RationalMatrix, Vector};

fn check_parent(og: &OrientedGraph, sub: &Subgraph<'_>) -> Result<()> {
    if sub.parent() == og.graph() {
        Ok(())
    } else {
        Err(Error::ParentMismatch)
    }
}

/// `n_G^σ(v) = Σ σ(w, v)` over the edges of `G` at `v`; zero off `G`.
pub fn net_degree(og: &OrientedGraph, sub: &Subgraph<'_>, v: usize) -> i64 {
    if !sub.contains_vertex(v) {
        return 0;
    }
    og.graph()
        .incident(v)
        .iter()
        .filter(|&&(_, e)| sub.contains_edge(e))
        .map(|&(w, _)| i64::from(og.sigma(w, v).expect("incident edge")))
        .sum()
}

pub fn net_degrees(og: &OrientedGraph, sub: &Subgraph<'_>) -> Vec<i64> {
    (0..og.vertex_count()).map(|v| net_degree(og, sub, v)).collect()
}

/// `∫⁺_G f = Σ_{v ∈ G} f(v) n_G^σ(v)`.
pub fn vertex_integral(og: &OrientedGraph, sub: &Subgraph<'_>, f: &VertexForm) -> Result<Rational> {
    check_parent(og, sub)?;
    if f.0.len() != og.vertex_count() {
        return Err(Error::DimensionMismatch { expected: og.vertex_count(), got: f.0.len() });
    }
    Ok(sub.vertices().map(|v| &f.0[v] * rat(net_degree(og, sub, v))).sum())
}

/// `∫⁻_G f = Σ_{(v, w) ∈ G} f(v, w) σ(v, w)`, evaluated on the pair values of each edge.
pub fn edge_integral(og: &OrientedGraph, sub: &Subgraph<'_>, f: &EdgeForm) -> Result<Rational> {
    check_parent(og, sub)?;
    if f.0.len() != og.edge_count() {
        return Err(Error::DimensionMismatch { expected: og.edge_count(), got: f.0.len() });
    }
    Ok(sub
        .edges()
        .map(|e| {
            let (a, b) = og.graph().edge(e);
            f.value(og, a, b).expect("edge of the graph") * rat(i64::from(og.sigma(a, b).expect("edge of the graph")))
        })
        .sum())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StokesCertificate {
    pub vertex_side: Rational,
    pub edge_side: Rational,
}

impl StokesCertificate {
    pub fn holds(&self) -> bool {
        self.vertex_side == self.edge_side
    }
}

/// Evaluates `∫⁺_G f` and `∫⁻_G Df`.
pub fn stokes_check(og: &OrientedGraph, sub: &Subgraph<'_>, f: &VertexForm) -> Result<StokesCertificate> {
    let vertex_side = vertex_integral(og, sub, f)?;
    let edge_side = edge_integral(og, sub, &cochain::coboundary(og, f)?)?;
    Ok(StokesCertificate { vertex_side, edge_side })
}

/// The four integrals over `G₁`, `G₂`, `G₁ ∪ G₂`, `G₁ ∩ G₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Additivity {
    pub first: Rational,
    pub second: Rational,
    pub union: Rational,
    pub intersection: Rational,
}

impl Additivity {
    pub fn holds(&self) -> bool {
        &self.first + &self.second == &self.union + &self.intersection
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditivityCertificate {
    pub vertex: Additivity,
    pub edge: Additivity,
}

impl AdditivityCertificate {
    pub fn holds(&self) -> bool {
        self.vertex.holds() && self.edge.holds()
    }
}

pub fn integral_additivity_check(
    og: &OrientedGraph,
    g1: &Subgraph<'_>,
    g2: &Subgraph<'_>,
    f: &VertexForm,
    h: &EdgeForm,
) -> Result<AdditivityCertificate> {
    let union = g1.union(g2)?;
    let meet = g1.intersection(g2)?;
    let four = |int: &dyn Fn(&Subgraph<'_>) -> Result<Rational>| -> Result<Additivity> {
        Ok(Additivity { first: int(g1)?, second: int(g2)?, union: int(&union)?, intersection: int(&meet)? })
    };
    Ok(AdditivityCertificate {
        vertex: four(&|s| vertex_integral(og, s, f))?,
        edge: four(&|s| edge_integral(og, s, h))?,
    })
}

/// Dimension counts and exact checks for `Ω⁰ = ker Δ⁺ ⊕ Im I` and `Ω¹ = ker Δ⁻ ⊕ Im D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeCertificate {
    pub vertex_count: usize,
    pub edge_count: usize,
    /// `(dim ker Δ⁺, dim Im I)`
    pub vertex_dims: (usize, usize),
    /// `(dim ker Δ⁻, dim Im D)`
    pub edge_dims: (usize, usize),
    pub vertex_orthogonal: bool,
    pub edge_orthogonal: bool,
    /// `ker D = ker Δ⁺`
    pub vertex_kernels_agree: bool,
    /// `ker D* = ker Δ⁻`
    pub edge_kernels_agree: bool,
}

impl HodgeCertificate {
    pub fn holds(&self) -> bool {
        self.vertex_dims.0 + self.vertex_dims.1 == self.vertex_count
            && self.edge_dims.0 + self.edge_dims.1 == self.edge_count
            && self.vertex_orthogonal
            && self.edge_orthogonal
            && self.vertex_kernels_agree
            && self.edge_kernels_agree
    }
}

fn orthogonal(a: &[Vector], b: &[Vector]) -> bool {
    a.iter().all(|x| b.iter().all(|y| dot(x, y).is_zero()))
}

pub fn hodge_decomposition(og: &OrientedGraph) -> HodgeCertificate {
    let (n, m) = (og.vertex_count(), og.edge_count());
    let d = cochain::coboundary_matrix(og);
    let i = cochain::incidence_matrix(og);
    let (lap_plus, lap_minus) = cochain::laplacians(og);

    let ker_plus = linalg::kernel_basis(&lap_plus);
    let ker_minus = linalg::kernel_basis(&lap_minus);
    let im_i = linalg::image_basis(&i);
    let im_d = linalg::image_basis(&d);
    HodgeCertificate {
        vertex_count: n,
        edge_count: m,
        vertex_dims: (ker_plus.len(), im_i.len()),
        edge_dims: (ker_minus.len(), im_d.len()),
        vertex_orthogonal: orthogonal(&ker_plus, &im_i),
        edge_orthogonal: orthogonal(&ker_minus, &im_d),
        vertex_kernels_agree: linalg::same_span(&linalg::kernel_basis(&d), &ker_plus, n),
        edge_kernels_agree: linalg::same_span(&linalg::kernel_basis(&i), &ker_minus, m),
    }
}

/// Splits an edge form into its harmonic part in `ker D*` and its exact part `Dg`, returning
/// `(harmonic, exact, g)`.
pub fn hodge_parts(og: &OrientedGraph, f: &EdgeForm) -> Result<(EdgeForm, EdgeForm, VertexForm)> {
    if f.0.len() != og.edge_count() {
        return Err(Error::DimensionMismatch { expected: og.edge_count(), got: f.0.len() });
    }
    let harmonic = cochain::cohomology(og, cochain::Degree::One).harmonic_part(&f.0);
    let exact: Vector = f.0.iter().zip(&harmonic).map(|(a, b)| a - b).collect();
    let d: RationalMatrix = cochain::coboundary_matrix(og);
    let g = linalg::solve(&d, &exact).expect("the complement of ker D* is Im D");
    Ok((EdgeForm(harmonic), EdgeForm(exact), VertexForm(g)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Graph, Orientation};
    use crate::linalg::ratio;

    fn p3() -> OrientedGraph {
        OrientedGraph::standard(Graph::path(3))
    }

    #[test]
    fn net_degree_examples() {
        let og = OrientedGraph::standard(Graph::path(2));
        let full = Subgraph::full(og.graph());
        assert_eq!(net_degrees(&og, &full), vec![-1, 1]);
        let og = p3();
        let full = Subgraph::full(og.graph());
        assert_eq!(net_degree(&og, &full, 1), 0);
        let part = Subgraph::from_edges(og.graph(), [0]);
        assert_eq!(net_degree(&og, &part, 2), 0);
    }

    #[test]
    fn integrals_on_p3() {
        let og = p3();
        let full = Subgraph::full(og.graph());
        let f = VertexForm::from_i64(&[0, 2, 5]);
        assert_eq!(vertex_integral(&og, &full, &f).unwrap(), rat(5));
        let df = cochain::coboundary(&og, &f).unwrap();
        assert_eq!(edge_integral(&og, &full, &df).unwrap(), rat(5));
        assert!(stokes_check(&og, &full, &f).unwrap().holds());
        let rev = og.reversed();
        assert_eq!(vertex_integral(&rev, &full, &f).unwrap(), rat(-5));
        let c = VertexForm::constant(3, ratio(7, 3));
        assert!(vertex_integral(&og, &full, &c).unwrap().is_zero());
        assert!(edge_integral(&og, &full, &EdgeForm::from_i64(&[0, 0])).unwrap().is_zero());
        let single = OrientedGraph::standard(Graph::path(2));
        assert_eq!(edge_integral(&single, &Subgraph::full(single.graph()), &EdgeForm::from_i64(&[1])).unwrap(), rat(1));
    }

    #[test]
    fn edge_integral_is_coordinate_sum() {
        let g = Graph::cycle(4);
        let og = OrientedGraph::new(g.clone(), Orientation::from_signs(&g, &[1, -1, -1, 1]).unwrap()).unwrap();
        let h = EdgeForm(vec![rat(2), ratio(1, 3), rat(-5), rat(7)]);
        let sub = Subgraph::from_edges(&g, [1, 2, 3]);
        let expected: Rational = [1, 2, 3].iter().map(|&e| h.0[e].clone()).sum();
        assert_eq!(edge_integral(&og, &sub, &h).unwrap(), expected);
    }

    #[test]
    fn additivity_on_overlapping_paths() {
        let g = Graph::cycle(4);
        let og = OrientedGraph::standard(g.clone());
        let a = Subgraph::from_edges(&g, [g.edge_index(0, 1).unwrap(), g.edge_index(1, 2).unwrap()]);
        let b = Subgraph::from_edges(&g, [g.edge_index(1, 2).unwrap(), g.edge_index(2, 3).unwrap()]);
        let f = VertexForm(vec![ratio(1, 2), rat(3), ratio(-2, 7), rat(5)]);
        let h = EdgeForm(vec![rat(1), ratio(2, 3), rat(-4), ratio(5, 2)]);
        let c = integral_additivity_check(&og, &a, &b, &f, &h).unwrap();
        assert!(c.holds());
        assert!(integral_additivity_check(&og, &a, &a, &f, &h).unwrap().holds());
        let other = Graph::cycle(4);
        let foreign = Subgraph::full(&other);
        assert!(integral_additivity_check(&og, &a, &foreign, &f, &h).is_ok());
        let k4 = Graph::complete(4);
        assert!(integral_additivity_check(&og, &a, &Subgraph::full(&k4), &f, &h).is_err());
    }

    #[test]
    fn hodge_examples() {
        let c = hodge_decomposition(&OrientedGraph::standard(Graph::cycle(4)));
        assert!(c.holds());
        assert_eq!((c.vertex_dims, c.edge_dims), ((1, 3), (1, 3)));
        let c = hodge_decomposition(&OrientedGraph::standard(Graph::path(5)));
        assert_eq!(c.edge_dims, (0, 4));
        let c = hodge_decomposition(&OrientedGraph::standard(Graph::complete(4)));
        assert!(c.holds());
        assert_eq!((c.vertex_dims, c.edge_dims), ((1, 3), (3, 3)));
    }

    #[test]
    fn hodge_parts_recombine() {
        let og = OrientedGraph::standard(Graph::complete(4));
        let f = EdgeForm::from_i64(&[1, 2, 3, 4, 5, 6]);
        let (harm, exact, g) = hodge_parts(&og, &f).unwrap();
        let sum: Vector = harm.0.iter().zip(&exact.0).map(|(a, b)| a + b).collect();
        assert_eq!(sum, f.0);
        assert_eq!(cochain::coboundary(&og, &g).unwrap(), exact);
        assert!(cochain::adjoint_coboundary(&og, &harm).unwrap().0.iter().all(Zero::is_zero));
    }
}
