//! Mayer-Vietoris sequences for a cover `Γ = A ∪ B`.
//!
//! The pieces `A`, `B` and `A ∩ B` are extracted as standalone graphs carrying the restricted
//! orientation, and the four inclusions `k: A → Γ`, `l: B → Γ`, `i: A∩B → A`, `j: A∩B → B` are
//! ordinary graph homomorphisms. Maps of direct sums are stacked as `[k*; l*]` and `[i*, -j*]`.

use num_traits::Zero;

use crate::cochain::{self, CohomologySpace, Degree, VertexForm};
use crate::error::{Error, Result};
use crate::graph::{connected_components, Extracted, OrientedGraph, Subgraph};
use crate::linalg::{self, Rational, RationalMatrix, Vector};
use crate::morphism::GraphHomomorphism;

#[derive(Clone, Debug)]
pub struct Cover<'g> {
    og: OrientedGraph,
    a: Subgraph<'g>,
    b: Subgraph<'g>,
    pieces: [Extracted; 3],
    k: GraphHomomorphism,
    l: GraphHomomorphism,
    i: GraphHomomorphism,
    j: GraphHomomorphism,
}

fn local_index(map: &[usize], parent: usize) -> usize {
    map.binary_search(&parent).expect("vertex of the smaller piece lies in the larger one")
}

impl<'g> Cover<'g> {
    /// Fails with [`Error::InvalidCover`] unless `A ∪ B = Γ` on vertices and edges.
    pub fn new(og: &OrientedGraph, a: Subgraph<'g>, b: Subgraph<'g>) -> Result<Self> {
        if a.parent() != og.graph() || b.parent() != og.graph() {
            return Err(Error::ParentMismatch);
        }
        if !a.union(&b)?.same_as(&Subgraph::full(og.graph())) {
            return Err(Error::InvalidCover);
        }
        let ab = a.intersection(&b)?;
        let pieces = [a.extract(), b.extract(), ab.extract()];
        let sigma = og.orientation();
        let [ea, eb, eab] = &pieces;
        let include = |small: &Extracted, big: Option<&Extracted>, target: OrientedGraph| {
            let map = small.vertex_map.iter().map(|&v| big.map_or(v, |b| local_index(&b.vertex_map, v))).collect();
            GraphHomomorphism::new(small.oriented(sigma), target, map).expect("inclusions are homomorphisms")
        };
        let k = include(ea, None, og.clone());
        let l = include(eb, None, og.clone());
        let i = include(eab, Some(ea), ea.oriented(sigma));
        let j = include(eab, Some(eb), eb.oriented(sigma));
        Ok(Cover { og: og.clone(), a, b, pieces, k, l, i, j })
    }

    pub fn graph(&self) -> &OrientedGraph {
        &self.og
    }

    pub fn a(&self) -> &Subgraph<'g> {
        &self.a
    }

    pub fn b(&self) -> &Subgraph<'g> {
        &self.b
    }

    pub fn a_graph(&self) -> &Extracted {
        &self.pieces[0]
    }

    pub fn b_graph(&self) -> &Extracted {
        &self.pieces[1]
    }

    pub fn intersection_graph(&self) -> &Extracted {
        &self.pieces[2]
    }

    /// `k* ⊕ l*` on forms of degree `p`.
    pub fn restriction_matrix(&self, p: Degree) -> RationalMatrix {
        self.k.pullback_matrix(p).vstack(&self.l.pullback_matrix(p))
    }

    /// `i* − j*` on forms of degree `p`.
    pub fn difference_matrix(&self, p: Degree) -> RationalMatrix {
        self.i.pullback_matrix(p).hstack(&-&self.j.pullback_matrix(p))
    }
}

/// Exactness facts for `0 → Ω^p(Γ) → Ω^p(A) ⊕ Ω^p(B) → Ω^p(A∩B) → 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShortExactness {
    pub injective: bool,
    pub exact_middle: bool,
    pub surjective: bool,
    /// `(i* − j*)(f, 0) = f` for `f` extended by zero, on every standard basis form `f`.
    pub witness: bool,
}

impl ShortExactness {
    pub fn holds(&self) -> bool {
        self.injective && self.exact_middle && self.surjective && self.witness
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShortSequenceCertificate {
    pub degree_zero: ShortExactness,
    pub degree_one: ShortExactness,
}

impl ShortSequenceCertificate {
    pub fn holds(&self) -> bool {
        self.degree_zero.holds() && self.degree_one.holds()
    }
}

fn short_exactness(cover: &Cover<'_>, p: Degree) -> ShortExactness {
    let kl = cover.restriction_matrix(p);
    let ij = cover.difference_matrix(p);
    let injective = linalg::rank(&kl) == kl.cols();
    let exact_middle = linalg::same_span(&linalg::kernel_basis(&ij), &linalg::image_basis(&kl), ij.cols());
    let surjective = linalg::rank(&ij) == ij.rows();
    let (a, ab) = (cover.a_graph(), cover.intersection_graph());
    let (small, big, a_len) = match p {
        Degree::Zero => (&ab.vertex_map, &a.vertex_map, a.graph.vertex_count()),
        Degree::One => (&ab.edge_map, &a.edge_map, a.graph.edge_count()),
    };
    let witness = (0..small.len()).all(|x| {
        let mut lifted = linalg::zero_vector(ij.cols());
        lifted[local_index(big, small[x])] = Rational::from_integer(1.into());
        let image = ij.mul_vec(&lifted);
        image.iter().enumerate().all(|(y, v)| *v == Rational::from_integer(i64::from(x == y).into()))
            && lifted[a_len..].iter().all(Zero::is_zero)
    });
    ShortExactness { injective, exact_middle, surjective, witness }
}

pub fn short_sequence_check(cover: &Cover<'_>) -> ShortSequenceCertificate {
    ShortSequenceCertificate {
        degree_zero: short_exactness(cover, Degree::Zero),
        degree_one: short_exactness(cover, Degree::One),
    }
}

/// How a degree-zero class on `A ∩ B` is lifted to `Ω⁰(A) ⊕ Ω⁰(B)` when building `δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lift {
    /// `f` on `A ∩ B`, zero elsewhere on `A`; zero on `B`.
    ExtendByZero,
    /// `f` on `A ∩ B`; on every other vertex of an `A`-component meeting the support of `f`,
    /// the value of `f` at the first support vertex of that component; zero on `B`.
    ComponentConstant,
}

fn lift(cover: &Cover<'_>, f: &[Rational], how: Lift) -> (Vector, Vector) {
    let (a, ab) = (cover.a_graph(), cover.intersection_graph());
    let mut alpha = linalg::zero_vector(a.graph.vertex_count());
    let mut on_ab = vec![false; alpha.len()];
    for (x, &v) in ab.vertex_map.iter().enumerate() {
        let y = local_index(&a.vertex_map, v);
        alpha[y] = f[x].clone();
        on_ab[y] = true;
    }
    if how == Lift::ComponentConstant {
        let comps = connected_components(&a.graph);
        for members in comps.members() {
            let Some(&s) = members.iter().find(|&&y| on_ab[y] && !alpha[y].is_zero()) else { continue };
            let c = alpha[s].clone();
            for &y in &members {
                if !on_ab[y] {
                    alpha[y] = c.clone();
                }
            }
        }
    }
    (alpha, linalg::zero_vector(cover.b_graph().graph.vertex_count()))
}

/// The unique edge form on `Γ` restricting to `Dα` on `A` and `Dβ` on `B`, or `None` when the
/// two disagree on a shared edge.
fn glue(cover: &Cover<'_>, alpha: &[Rational], beta: &[Rational]) -> Option<Vector> {
    let sigma = cover.graph().orientation();
    let (a, b) = (cover.a_graph(), cover.b_graph());
    let da = cochain::coboundary(&a.oriented(sigma), &VertexForm(alpha.to_vec())).expect("length").0;
    let db = cochain::coboundary(&b.oriented(sigma), &VertexForm(beta.to_vec())).expect("length").0;
    (0..cover.graph().edge_count())
        .map(|e| {
            let in_a = a.edge_map.binary_search(&e).ok().map(|x| &da[x]);
            let in_b = b.edge_map.binary_search(&e).ok().map(|x| &db[x]);
            match (in_a, in_b) {
                (Some(x), Some(y)) => (x == y).then(|| x.clone()),
                (Some(x), None) | (None, Some(x)) => Some(x.clone()),
                (None, None) => None,
            }
        })
        .collect()
}

/// `δ: H⁰(A∩B) → H¹(Γ)` in the harmonic bases, using the given lift.
pub fn connecting_map_with(cover: &Cover<'_>, how: Lift) -> RationalMatrix {
    let sigma = cover.graph().orientation();
    let h0 = cochain::cohomology(&cover.intersection_graph().oriented(sigma), Degree::Zero);
    let h1 = cochain::cohomology(cover.graph(), Degree::One);
    let columns: Vec<Vector> = h0
        .basis()
        .iter()
        .map(|f| {
            let (alpha, beta) = lift(cover, f, how);
            let eta = glue(cover, &alpha, &beta).expect("lifted coboundaries agree on A ∩ B");
            h1.harmonic_coordinates(&eta)
        })
        .collect();
    RationalMatrix::from_columns(&columns, h1.dim())
}

pub fn connecting_map(cover: &Cover<'_>) -> RationalMatrix {
    connecting_map_with(cover, Lift::ExtendByZero)
}

/// Both lifts give the same `δ`, and each really is a lift: `(i* − j*)(α, β) = f`.
pub fn lift_independence_check(cover: &Cover<'_>) -> bool {
    let sigma = cover.graph().orientation();
    let h0 = cochain::cohomology(&cover.intersection_graph().oriented(sigma), Degree::Zero);
    let ij = cover.difference_matrix(Degree::Zero);
    let lifts_ok = h0.basis().iter().all(|f| {
        [Lift::ExtendByZero, Lift::ComponentConstant].into_iter().all(|how| {
            let (mut alpha, beta) = lift(cover, f, how);
            alpha.extend(beta);
            ij.mul_vec(&alpha) == *f
        })
    });
    lifts_ok && connecting_map_with(cover, Lift::ExtendByZero) == connecting_map_with(cover, Lift::ComponentConstant)
}

/// The six spaces and five maps of the long exact sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MvSequence {
    /// `H⁰(Γ), H⁰(A)⊕H⁰(B), H⁰(A∩B), H¹(Γ), H¹(A)⊕H¹(B), H¹(A∩B)`
    pub dims: [usize; 6],
    /// `maps[t]` goes from space `t` to space `t + 1`.
    pub maps: [RationalMatrix; 5],
}

fn spaces(cover: &Cover<'_>, p: Degree) -> [CohomologySpace; 4] {
    let sigma = cover.graph().orientation();
    [
        cochain::cohomology(cover.graph(), p),
        cochain::cohomology(&cover.a_graph().oriented(sigma), p),
        cochain::cohomology(&cover.b_graph().oriented(sigma), p),
        cochain::cohomology(&cover.intersection_graph().oriented(sigma), p),
    ]
}

fn cohomology_maps(cover: &Cover<'_>, p: Degree) -> (RationalMatrix, RationalMatrix, [usize; 3]) {
    let [g, a, b, ab] = spaces(cover, p);
    let kl = cover.k.induced_map_between(&a, &g).vstack(&cover.l.induced_map_between(&b, &g));
    let ij = cover.i.induced_map_between(&ab, &a).hstack(&-&cover.j.induced_map_between(&ab, &b));
    (kl, ij, [g.dim(), a.dim() + b.dim(), ab.dim()])
}

pub fn mv_sequence(cover: &Cover<'_>) -> MvSequence {
    let (kl0, ij0, d0) = cohomology_maps(cover, Degree::Zero);
    let (kl1, ij1, d1) = cohomology_maps(cover, Degree::One);
    MvSequence {
        dims: [d0[0], d0[1], d0[2], d1[0], d1[1], d1[2]],
        maps: [kl0, ij0, connecting_map(cover), kl1, ij1],
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongSequenceCertificate {
    pub dims: [usize; 6],
    /// `maps[t+1] · maps[t] = 0`, for `t = 0..4`.
    pub chain: [bool; 4],
    /// Exactness at each of the six spaces, the two ends included.
    pub exact: [bool; 6],
    pub alternating_sum: i64,
}

impl LongSequenceCertificate {
    pub fn holds(&self) -> bool {
        self.chain.iter().all(|&c| c) && self.exact.iter().all(|&e| e) && self.alternating_sum == 0
    }
}

pub fn long_sequence_check(cover: &Cover<'_>) -> LongSequenceCertificate {
    let seq = mv_sequence(cover);
    let m = &seq.maps;
    let chain = std::array::from_fn(|t| m[t + 1].mul(&m[t]).is_zero());
    let exact = std::array::from_fn(|node| {
        let incoming = if node == 0 { Vec::new() } else { linalg::image_basis(&m[node - 1]) };
        let outgoing = if node == 5 { (0..seq.dims[5]).map(|c| unit(c, seq.dims[5])).collect() } else { linalg::kernel_basis(&m[node]) };
        linalg::same_span(&incoming, &outgoing, seq.dims[node])
    });
    let alternating_sum =
        seq.dims.iter().enumerate().map(|(t, &d)| if t % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
    LongSequenceCertificate { dims: seq.dims, chain, exact, alternating_sum }
}

fn unit(c: usize, len: usize) -> Vector {
    let mut v = linalg::zero_vector(len);
    v[c] = Rational::from_integer(1.into());
    v
}
