//! The induced action `φ(g) = (g*)⁻¹` of `Aut(Γ)` on `H⁰` and `H¹`.
//!
//! Matrices are taken in the harmonic bases of [`crate::cochain::cohomology`] under the standard
//! orientation. Because an automorphism is an isometry that preserves `ker(D*)`, the pullback of
//! a harmonic basis form is again harmonic; this is checked exactly for every element, after
//! which coefficients are read off the pivot entries.

use std::collections::{HashMap, HashSet};

use num_traits::{One, ToPrimitive, Zero};

use super::group::{profile_of, GroupProfile, Permutation, PermutationGroup};
use super::search::automorphism_group;
use crate::cochain::{self, CohomologySpace, Degree, EdgeForm, VertexForm};
use crate::decomposition::cycle_forest;
use crate::error::{Error, Result};
use crate::graph::{betti_numbers, connected_components, Graph, OrientedGraph};
use crate::linalg::{RationalMatrix, Vector};
use crate::morphism::{edge_images, pull_back_edges};

/// A graph with a fixed cohomology basis, ready to turn automorphisms into matrices.
#[derive(Clone, Debug)]
pub struct ActionContext {
    og: OrientedGraph,
    space: CohomologySpace,
}

impl ActionContext {
    pub fn new(g: &Graph, degree: Degree) -> Self {
        Self::with_orientation(OrientedGraph::standard(g.clone()), degree)
    }

    pub fn with_orientation(og: OrientedGraph, degree: Degree) -> Self {
        let space = cochain::cohomology(&og, degree);
        ActionContext { og, space }
    }

    pub fn space(&self) -> &CohomologySpace {
        &self.space
    }

    pub fn oriented_graph(&self) -> &OrientedGraph {
        &self.og
    }

    pub fn degree(&self) -> Degree {
        self.space.degree()
    }

    /// `map*` applied to each basis form.
    fn pulled_back_basis(&self, map: &Permutation) -> Vec<Vector> {
        match self.degree() {
            Degree::Zero => self
                .space
                .basis()
                .iter()
                .map(|b| map.images().iter().map(|&w| b[w].clone()).collect())
                .collect(),
            Degree::One => {
                let images = edge_images(&self.og, &self.og, map.images()).expect("automorphism");
                self.space.basis().iter().map(|b| pull_back_edges(&images, b)).collect()
            }
        }
    }

    fn is_harmonic(&self, v: &[crate::linalg::Rational]) -> bool {
        match self.degree() {
            Degree::Zero => cochain::coboundary(&self.og, &VertexForm(v.to_vec()))
                .expect("length")
                .0
                .iter()
                .all(Zero::is_zero),
            Degree::One => cochain::adjoint_coboundary(&self.og, &EdgeForm(v.to_vec()))
                .expect("length")
                .0
                .iter()
                .all(Zero::is_zero),
        }
    }

    /// Matrix of `g*` on cohomology. Panics if `g*` fails to preserve harmonic forms, which
    /// cannot happen for an automorphism.
    pub fn pullback_matrix(&self, g: &Permutation) -> RationalMatrix {
        let columns: Vec<Vector> = self
            .pulled_back_basis(g)
            .into_iter()
            .map(|v| {
                assert!(self.is_harmonic(&v), "pullback along an automorphism left the harmonic space");
                self.space.pivot_coordinates(&v)
            })
            .collect();
        RationalMatrix::from_columns(&columns, self.space.dim())
    }

    /// `φ(g) = (g*)⁻¹ = (g⁻¹)*`.
    pub fn matrix(&self, g: &Permutation) -> RationalMatrix {
        self.pullback_matrix(&g.inverse())
    }

    /// Whether `g*` fixes every harmonic basis form exactly.
    pub fn fixes_basis(&self, g: &Permutation) -> bool {
        self.pulled_back_basis(g).iter().zip(self.space.basis()).all(|(a, b)| a == b)
    }
}

/// `Aut(Γ)` with the matrix `φ(g)` of each element on `H⁰` or `H¹`.
#[derive(Clone, Debug)]
pub struct InducedActionGroup {
    context: ActionContext,
    automorphisms: PermutationGroup,
    matrices: Vec<RationalMatrix>,
    kernel: Vec<usize>,
}

pub fn induced_action(g: &Graph, degree: Degree) -> InducedActionGroup {
    induced_action_of(ActionContext::new(g, degree), automorphism_group(g))
}

/// Induced action for a precomputed automorphism group.
pub fn induced_action_of(context: ActionContext, automorphisms: PermutationGroup) -> InducedActionGroup {
    let matrices: Vec<RationalMatrix> = automorphisms.elements().iter().map(|p| context.matrix(p)).collect();
    let kernel = matrices.iter().enumerate().filter(|(_, m)| m.is_identity()).map(|(i, _)| i).collect();
    InducedActionGroup { context, automorphisms, matrices, kernel }
}

impl InducedActionGroup {
    pub fn degree(&self) -> Degree {
        self.context.degree()
    }

    pub fn context(&self) -> &ActionContext {
        &self.context
    }

    pub fn space(&self) -> &CohomologySpace {
        self.context.space()
    }

    pub fn automorphisms(&self) -> &PermutationGroup {
        &self.automorphisms
    }

    pub fn elements(&self) -> impl Iterator<Item = (&Permutation, &RationalMatrix)> {
        self.automorphisms.elements().iter().zip(&self.matrices)
    }

    fn index_of(&self, p: &Permutation) -> usize {
        self.automorphisms.elements().binary_search(p).expect("element of the group")
    }

    pub fn matrix_of(&self, p: &Permutation) -> &RationalMatrix {
        &self.matrices[self.index_of(p)]
    }

    pub fn kernel(&self) -> Vec<Permutation> {
        self.kernel.iter().map(|&i| self.automorphisms.elements()[i].clone()).collect()
    }

    pub fn in_kernel(&self, p: &Permutation) -> bool {
        self.kernel.binary_search(&self.index_of(p)).is_ok()
    }

    pub fn kernel_order(&self) -> usize {
        self.kernel.len()
    }

    /// Distinct matrices, in order of first appearance.
    pub fn image(&self) -> Vec<RationalMatrix> {
        let mut seen = HashSet::new();
        self.matrices.iter().filter(|m| seen.insert(*m)).cloned().collect()
    }

    pub fn image_order(&self) -> usize {
        self.matrices.iter().collect::<HashSet<_>>().len()
    }

    /// `φ(g ∘ s) = φ(g) φ(s)` for every element `g` and generator `s`, and for all pairs when
    /// the group is small. Checking against generators suffices by induction on word length.
    pub fn is_homomorphism(&self) -> bool {
        let elems = self.automorphisms.elements();
        let check = |a: usize, b: &Permutation| {
            let prod = elems[a].compose(b);
            self.matrices[self.index_of(&prod)] == self.matrices[a].mul(self.matrix_of(b))
        };
        let gens_ok = (0..elems.len()).all(|a| self.automorphisms.generators().iter().all(|s| check(a, s)));
        gens_ok && (elems.len() > 64 || (0..elems.len()).all(|a| elems.iter().all(|b| check(a, b))))
    }

    /// Conjugates of kernel elements by generators stay in the kernel.
    pub fn kernel_is_normal(&self) -> bool {
        self.kernel().iter().all(|k| {
            self.automorphisms
                .generators()
                .iter()
                .all(|s| self.in_kernel(&s.compose(k).compose(&s.inverse())))
        })
    }

    /// Kernel membership decided by exact fixed-vector comparison instead of matrices.
    pub fn kernel_by_fixed_vectors(&self) -> Vec<Permutation> {
        self.automorphisms.elements().iter().filter(|p| self.context.fixes_basis(p)).cloned().collect()
    }

    /// Profile of the induced matrix group.
    pub fn profile(&self) -> GroupProfile<RationalMatrix> {
        let mut gens: Vec<RationalMatrix> = Vec::new();
        for s in self.automorphisms.generators() {
            let m = self.matrix_of(s);
            if !m.is_identity() && !gens.contains(m) {
                gens.push(m.clone());
            }
        }
        profile_of(&self.image(), &gens)
    }
}

/// Orders of `Aut(Γ)`, `ker(φ)` and the induced group, computed without storing matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ActionSummary {
    pub aut_order: usize,
    pub kernel_order: usize,
    pub image_order: usize,
}

#[derive(PartialEq, Eq, Hash)]
enum MatrixKey {
    Small(Vec<i8>),
    Exact(RationalMatrix),
}

fn matrix_key(m: &RationalMatrix) -> MatrixKey {
    let small: Option<Vec<i8>> = m
        .entries()
        .iter()
        .map(|x| if x.denom().is_one() { x.numer().to_i8() } else { None })
        .collect();
    small.map_or_else(|| MatrixKey::Exact(m.clone()), MatrixKey::Small)
}

pub fn action_summary(context: &ActionContext, automorphisms: &PermutationGroup) -> ActionSummary {
    let mut kernel_order = 0;
    let mut image = HashSet::new();
    for p in automorphisms.elements() {
        let m = context.matrix(p);
        if m.is_identity() {
            kernel_order += 1;
        }
        image.insert(matrix_key(&m));
    }
    ActionSummary { aut_order: automorphisms.order(), kernel_order, image_order: image.len() }
}

/// One automorphism with the two kernel-membership verdicts being compared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelEntry {
    pub automorphism: Permutation,
    pub by_matrix: bool,
    pub by_structure: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelReport {
    pub entries: Vec<KernelEntry>,
    pub kernel_order: usize,
    pub image_order: usize,
}

impl KernelReport {
    pub fn agree(&self) -> bool {
        self.entries.iter().all(|e| e.by_matrix == e.by_structure)
    }
}

fn kernel_report(action: &InducedActionGroup, structural: impl Fn(&Permutation) -> bool) -> KernelReport {
    let entries = action
        .elements()
        .map(|(p, m)| KernelEntry { automorphism: p.clone(), by_matrix: m.is_identity(), by_structure: structural(p) })
        .collect();
    KernelReport { entries, kernel_order: action.kernel_order(), image_order: action.image_order() }
}

/// Compares `g ∈ ker(φ⁰)` with "g maps every vertex into its own component".
pub fn kernel_characterization_h0(g: &Graph) -> KernelReport {
    let action = induced_action(g, Degree::Zero);
    let comps = connected_components(g);
    kernel_report(&action, |p| (0..g.vertex_count()).all(|v| comps.label(p.apply(v)) == comps.label(v)))
}

/// Whether `g` maps the cycle `vertices` (in traversal order) onto itself by a cyclic shift
/// that keeps the traversal direction.
pub fn is_rotation_of(g: &Permutation, vertices: &[usize]) -> bool {
    let k = vertices.len();
    let Some(shift) = vertices.iter().position(|&v| v == g.apply(vertices[0])) else {
        return false;
    };
    (0..k).all(|i| g.apply(vertices[i]) == vertices[(i + shift) % k])
}

/// Compares `g ∈ ker(φ¹)` with "g rotates every basis cycle".
pub fn kernel_characterization_h1(g: &Graph) -> Result<KernelReport> {
    if betti_numbers(g).b1 == 0 {
        return Err(Error::Precondition("b1 >= 1 required".into()));
    }
    let action = induced_action(g, Degree::One);
    let supports = action.space().supports().to_vec();
    Ok(kernel_report(&action, |p| supports.iter().all(|s| is_rotation_of(p, &s.vertices))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum B1OneGroup {
    Z2,
    Trivial,
}

/// Which of the known sufficient conditions for `𝓗¹ ≅ ℤ/2` a graph with `b₁ = 1` meets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum B1OneCondition {
    /// the contractible forest is empty
    EmptyForest,
    /// the contractible forest is connected
    ConnectedForest,
    /// two forest components attached at antipodal vertices of an even cycle
    AntipodalPair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct B1OneClassification {
    pub group: B1OneGroup,
    pub order: usize,
    pub condition: Option<B1OneCondition>,
}

pub fn classify_b1_one(g: &Graph) -> Result<B1OneClassification> {
    let betti = betti_numbers(g);
    if betti.b0 != 1 || betti.b1 != 1 {
        return Err(Error::Precondition("connected graph with b1 = 1 required".into()));
    }
    let order = induced_action(g, Degree::One).image_order();
    let group = if order == 2 { B1OneGroup::Z2 } else { B1OneGroup::Trivial };

    let d = cycle_forest(g);
    let forest_components = if d.forest.is_empty() { 0 } else { connected_components(&d.forest.extract().graph).count() };
    let condition = if forest_components == 0 {
        Some(B1OneCondition::EmptyForest)
    } else if forest_components == 1 {
        Some(B1OneCondition::ConnectedForest)
    } else if forest_components == 2 && d.intersection.len() == 2 {
        let cyc = d.cycle_retract.extract();
        let len = cyc.graph.vertex_count();
        let local = |v: usize| cyc.vertex_map.binary_search(&v).expect("intersection vertex lies on the cycle");
        let dist = cycle_distance(&cyc.graph, local(d.intersection[0]), local(d.intersection[1]));
        (len.is_multiple_of(2) && dist == len / 2).then_some(B1OneCondition::AntipodalPair)
    } else {
        None
    };
    Ok(B1OneClassification { group, order, condition })
}

fn cycle_distance(g: &Graph, a: usize, b: usize) -> usize {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    let mut queue = std::collections::VecDeque::from([a]);
    dist[a] = 0;
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist[b]
}

/// Histogram of induced-group orders over many graphs, keyed by order.
pub fn order_histogram(orders: impl IntoIterator<Item = usize>) -> HashMap<usize, usize> {
    let mut h = HashMap::new();
    for o in orders {
        *h.entry(o).or_insert(0) += 1;
    }
    h
}
