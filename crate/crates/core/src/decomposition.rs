//! Cycle-forest decomposition `Γ = F(Γ) ∪ Cyc(Γ)`, the retraction onto `Cyc(Γ)`, and the
//! group-theoretic consequences: restriction of automorphisms, the kernel interpretation and the
//! splitting `Aut(Γ) = ker(φ¹) × Y`.
//!
//! Leaves are stripped in rounds. A round removes every remaining vertex of current degree at
//! most one, which covers ordinary leaves and the last vertex of a tree component. The forest
//! `F(Γ)` consists of the stripped vertices, every edge with a stripped endpoint, and the
//! unstripped endpoints of those edges (the intersection vertices). `Cyc(Γ)` is induced on the
//! unstripped vertices.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::aut::{automorphism_group, automorphisms_preserving, induced_action, ActionContext, Permutation};
use crate::cochain::Degree;
use crate::error::{Error, Result};
use crate::graph::{betti_numbers, connected_components, Betti, Extracted, Graph, OrientedGraph, Subgraph};
use crate::morphism::GraphHomomorphism;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition<'g> {
    pub forest: Subgraph<'g>,
    pub cycle_retract: Subgraph<'g>,
    /// Vertices of `F(Γ) ∩ Cyc(Γ)`, ascending.
    pub intersection: Vec<usize>,
    /// `layers[j]` is the set stripped in round `j + 1`, ascending.
    pub layers: Vec<Vec<usize>>,
}

pub fn cycle_forest(g: &Graph) -> Decomposition<'_> {
    let n = g.vertex_count();
    let mut stripped = vec![false; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut layers = Vec::new();
    loop {
        let layer: Vec<usize> = (0..n).filter(|&v| !stripped[v] && degree[v] <= 1).collect();
        if layer.is_empty() {
            break;
        }
        for &v in &layer {
            stripped[v] = true;
        }
        for &v in &layer {
            for w in g.neighbors(v) {
                if !stripped[w] {
                    degree[w] -= 1;
                }
            }
        }
        layers.push(layer);
    }

    let forest_edges: Vec<usize> =
        (0..g.edge_count()).filter(|&e| { let (u, v) = g.edge(e); stripped[u] || stripped[v] }).collect();
    let mut forest_vertices: BTreeSet<usize> = (0..n).filter(|&v| stripped[v]).collect();
    let mut intersection = BTreeSet::new();
    for &e in &forest_edges {
        let (u, v) = g.edge(e);
        for x in [u, v] {
            if !stripped[x] {
                intersection.insert(x);
                forest_vertices.insert(x);
            }
        }
    }
    let forest = Subgraph::new(g, forest_vertices, forest_edges).expect("forest edges carry their endpoints");
    let cycle_retract = Subgraph::induced(g, (0..n).filter(|&v| !stripped[v]));
    Decomposition { forest, cycle_retract, intersection: intersection.into_iter().collect(), layers }
}

impl<'g> Decomposition<'g> {
    pub fn graph(&self) -> &'g Graph {
        self.forest.parent()
    }

    /// `F ∪ Cyc = Γ`, no shared edges, `F` a forest, `Cyc` empty or of minimum valency two,
    /// and the layers re-derive from the definition.
    pub fn is_valid(&self) -> bool {
        let g = self.graph();
        let union_is_all = self.forest.union(&self.cycle_retract).is_ok_and(|u| u.same_as(&Subgraph::full(g)));
        let edge_disjoint = self.forest.edges().all(|e| !self.cycle_retract.contains_edge(e));
        let forest_ok = self.forest.extract().graph.is_forest();
        let cyc_ok = self.cycle_retract.vertices().all(|v| self.cycle_retract.degree(v) >= 2);
        let meets = self
            .intersection
            .iter()
            .all(|&v| self.forest.contains_vertex(v) && self.cycle_retract.contains_vertex(v));
        union_is_all && edge_disjoint && forest_ok && cyc_ok && meets && self.layers_are_leaf_sets()
    }

    fn layers_are_leaf_sets(&self) -> bool {
        let g = self.graph();
        let mut removed = vec![false; g.vertex_count()];
        for layer in &self.layers {
            let current_degree = |v: usize| g.neighbors(v).filter(|&w| !removed[w]).count();
            let leaves: Vec<usize> = (0..g.vertex_count()).filter(|&v| !removed[v] && current_degree(v) <= 1).collect();
            if &leaves != layer {
                return false;
            }
            for &v in layer {
                removed[v] = true;
            }
        }
        let layered: usize = self.layers.iter().map(Vec::len).sum();
        layered + self.intersection.len() == self.forest.vertex_count()
    }

    /// Vertex sets of the connected components of `F(Γ)`, each with its intersection vertex if
    /// it has one. Components without one are tree components of `Γ`.
    pub fn forest_components(&self) -> Vec<(Vec<usize>, Option<usize>)> {
        let ex = self.forest.extract();
        connected_components(&ex.graph)
            .members()
            .into_iter()
            .map(|local| {
                let vs: Vec<usize> = local.iter().map(|&i| ex.vertex_map[i]).collect();
                let hit = vs.iter().copied().find(|v| self.intersection.binary_search(v).is_ok());
                (vs, hit)
            })
            .collect()
    }
}

/// The folding homomorphism `Γ → Cyc(Γ)` together with the inclusion it retracts.
#[derive(Clone, Debug)]
pub struct Retraction {
    /// `Cyc(Γ)` as a standalone graph.
    pub cycle: Extracted,
    pub retraction: GraphHomomorphism,
    pub inclusion: GraphHomomorphism,
}

impl Retraction {
    /// Image of `v` named by its label in `Γ`.
    pub fn vertex_image(&self, v: usize) -> usize {
        self.cycle.vertex_map[self.retraction.vertex_map()[v]]
    }

    /// `retraction ∘ inclusion = id`.
    pub fn is_retraction(&self) -> bool {
        self.inclusion
            .then(&self.retraction)
            .is_ok_and(|h| h.vertex_map().iter().enumerate().all(|(i, &j)| i == j))
    }
}

pub fn retract_homomorphism(d: &Decomposition<'_>) -> Result<Retraction> {
    let g = d.graph();
    if d.cycle_retract.is_empty() {
        return Err(Error::Precondition("cycle retract is empty".into()));
    }
    let mut image: Vec<usize> = (0..g.vertex_count()).collect();
    let first_cyc_edge = d.cycle_retract.edges().next().map(|e| g.edge(e)).expect("nonempty core has edges");
    let fparent = d.forest.extract();
    let local = |v: usize| fparent.vertex_map.binary_search(&v).expect("forest vertex");
    for (vertices, anchor) in d.forest_components() {
        let (root, (even, odd)) = match anchor {
            Some(v) => {
                let w = g.neighbors(v).find(|&w| d.cycle_retract.contains_vertex(w)).expect("core vertex has core neighbors");
                (v, (v, w))
            }
            None => (vertices[0], first_cyc_edge),
        };
        let dist = bfs_distances(&fparent.graph, local(root));
        for v in vertices {
            image[v] = if dist[local(v)].is_multiple_of(2) { even } else { odd };
        }
    }
    let cycle = d.cycle_retract.extract();
    let to_local = |v: usize| cycle.vertex_map.binary_search(&v).expect("image lies in the core");
    let source = OrientedGraph::standard(g.clone());
    let target = OrientedGraph::standard(cycle.graph.clone());
    let retraction = GraphHomomorphism::new(source.clone(), target.clone(), image.iter().map(|&v| to_local(v)).collect())?;
    let inclusion = GraphHomomorphism::new(target, source, cycle.vertex_map.clone())?;
    Ok(Retraction { cycle, retraction, inclusion })
}

fn bfs_distances(g: &Graph, root: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityCertificate {
    pub betti: Betti,
    pub cycle_betti: Betti,
    /// Components of `Γ` that contain a cycle; tree components leave nothing in `Cyc(Γ)`.
    pub cyclic_components: usize,
    /// `(edge of Γ, Betti numbers of Cyc(Γ) without it)` for every core edge.
    pub removals: Vec<(usize, Betti)>,
}

impl MinimalityCertificate {
    pub fn cohomology_matches(&self) -> bool {
        self.cycle_betti.b1 == self.betti.b1 && self.cycle_betti.b0 == self.cyclic_components
    }

    pub fn edge_minimal(&self) -> bool {
        self.removals.iter().all(|(_, b)| *b != self.cycle_betti)
    }

    pub fn holds(&self) -> bool {
        self.cohomology_matches() && self.edge_minimal()
    }
}

pub fn verify_minimality(g: &Graph) -> MinimalityCertificate {
    let d = cycle_forest(g);
    let core = d.cycle_retract.extract();
    let comps = connected_components(g);
    let mut cyclic: HashSet<usize> = HashSet::new();
    for v in d.cycle_retract.vertices() {
        cyclic.insert(comps.label(v));
    }
    let removals = (0..core.graph.edge_count())
        .map(|e| (core.edge_map[e], betti_numbers(&core.graph.without_edge(e))))
        .collect();
    MinimalityCertificate {
        betti: betti_numbers(g),
        cycle_betti: betti_numbers(&core.graph),
        cyclic_components: cyclic.len(),
        removals,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionCertificate {
    pub checked: usize,
    /// Automorphisms that fail to preserve `F(Γ)`, `Cyc(Γ)` or the intersection.
    pub failures: Vec<Permutation>,
}

impl RestrictionCertificate {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn maps_subgraph_onto_itself(g: &Graph, p: &Permutation, s: &Subgraph<'_>) -> bool {
    s.vertices().all(|v| s.contains_vertex(p.apply(v)))
        && s.edges().all(|e| {
            let (u, v) = g.edge(e);
            g.edge_index(p.apply(u), p.apply(v)).is_some_and(|f| s.contains_edge(f))
        })
}

pub fn aut_restriction_check(g: &Graph) -> RestrictionCertificate {
    let d = cycle_forest(g);
    let group = automorphism_group(g);
    let failures = group
        .elements()
        .iter()
        .filter(|p| {
            !(maps_subgraph_onto_itself(g, p, &d.forest)
                && maps_subgraph_onto_itself(g, p, &d.cycle_retract)
                && d.intersection.iter().all(|&v| d.intersection.binary_search(&p.apply(v)).is_ok()))
        })
        .cloned()
        .collect();
    RestrictionCertificate { checked: group.order(), failures }
}

/// Every element of `ker(φ¹_Γ)` restricts to an element of `ker(φ¹_Cyc(Γ))`.
pub fn kernel_restriction_check(g: &Graph) -> bool {
    let d = cycle_forest(g);
    let core = d.cycle_retract.extract();
    if core.graph.vertex_count() == 0 {
        return true;
    }
    let ctx = ActionContext::new(&core.graph, Degree::One);
    induced_action(g, Degree::One).kernel().iter().all(|k| {
        let images = core
            .vertex_map
            .iter()
            .map(|&v| core.vertex_map.binary_search(&k.apply(v)).expect("automorphisms preserve the core"))
            .collect();
        ctx.matrix(&Permutation::new(images).expect("restriction is a bijection")).is_identity()
    })
}

/// The map `η: S → ker(φ¹)` extending automorphisms of the forest by the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelInterpretation {
    /// Automorphisms of `F(Γ)` fixing every intersection vertex, in the labels of `Γ`
    /// restricted to the forest's vertices.
    pub forest_group_order: usize,
    /// `η(s)` for every `s ∈ S`, as permutations of `V(Γ)`.
    pub images: Vec<Permutation>,
    pub kernel: Vec<Permutation>,
    pub lands_in_aut: bool,
    pub injective: bool,
    pub surjective: bool,
    pub homomorphism: bool,
}

impl KernelInterpretation {
    pub fn is_isomorphism(&self) -> bool {
        self.lands_in_aut && self.injective && self.surjective && self.homomorphism
    }
}

fn is_automorphism(g: &Graph, p: &Permutation) -> bool {
    g.edges().iter().all(|&(u, v)| g.has_edge(p.apply(u), p.apply(v)))
}

pub fn kernel_interpretation(g: &Graph) -> Result<KernelInterpretation> {
    let betti = betti_numbers(g);
    if betti.b0 != 1 || betti.b1 < 2 {
        return Err(Error::Precondition("connected graph with b1 >= 2 required".into()));
    }
    let d = cycle_forest(g);
    let forest = d.forest.extract();
    let colors: Vec<usize> = forest
        .vertex_map
        .iter()
        .map(|v| d.intersection.binary_search(v).map_or(0, |i| i + 1))
        .collect();
    let s_group = automorphisms_preserving(&forest.graph, &colors);
    let eta = |s: &Permutation| {
        let mut images: Vec<usize> = (0..g.vertex_count()).collect();
        for (i, &v) in forest.vertex_map.iter().enumerate() {
            images[v] = forest.vertex_map[s.apply(i)];
        }
        Permutation::new(images).expect("extension of a bijection by the identity")
    };
    let images: Vec<Permutation> = s_group.elements().iter().map(eta).collect();
    let mut kernel = induced_action(g, Degree::One).kernel();
    kernel.sort();

    let lands_in_aut = images.iter().all(|p| is_automorphism(g, p));
    let distinct: BTreeSet<&Permutation> = images.iter().collect();
    let injective = distinct.len() == images.len();
    let surjective = distinct.into_iter().cloned().collect::<Vec<_>>() == kernel;
    let elems = s_group.elements();
    let partners: &[Permutation] = if elems.len() <= 64 { elems } else { s_group.generators() };
    let homomorphism = elems
        .iter()
        .all(|a| partners.iter().all(|b| eta(&a.compose(b)) == eta(a).compose(&eta(b))));
    Ok(KernelInterpretation {
        forest_group_order: s_group.order(),
        images,
        kernel,
        lands_in_aut,
        injective,
        surjective,
        homomorphism,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplittingHypothesis {
    Connected,
    BettiAtLeastTwo,
    ForestH0Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingCertificate {
    pub aut_order: usize,
    pub kernel: Vec<Permutation>,
    /// Automorphisms fixing every vertex of `F(Γ)`.
    pub complement: Vec<Permutation>,
    pub image_order: usize,
    pub trivial_intersection: bool,
    pub product_is_aut: bool,
    pub commute: bool,
    /// `φ` restricted to the complement is injective with image all of `𝓗¹(Γ)`.
    pub theta_bijective: bool,
}

impl SplittingCertificate {
    pub fn holds(&self) -> bool {
        self.trivial_intersection
            && self.product_is_aut
            && self.commute
            && self.theta_bijective
            && self.aut_order == self.kernel.len() * self.image_order
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplittingOutcome {
    Certified(SplittingCertificate),
    HypothesesNotMet(Vec<SplittingHypothesis>),
}

/// Failed splitting hypotheses, in the order connected, `b₁ ≥ 2`, `𝓗⁰(F(Γ))` trivial.
pub fn splitting_hypotheses(g: &Graph) -> Vec<SplittingHypothesis> {
    let betti = betti_numbers(g);
    let mut failed = Vec::new();
    if betti.b0 != 1 {
        failed.push(SplittingHypothesis::Connected);
    }
    if betti.b1 < 2 {
        failed.push(SplittingHypothesis::BettiAtLeastTwo);
    }
    let forest = cycle_forest(g).forest.extract().graph;
    if forest.vertex_count() > 0 && induced_action(&forest, Degree::Zero).image_order() != 1 {
        failed.push(SplittingHypothesis::ForestH0Trivial);
    }
    failed
}

pub fn splitting_verification(g: &Graph) -> SplittingOutcome {
    let failed = splitting_hypotheses(g);
    if !failed.is_empty() {
        return SplittingOutcome::HypothesesNotMet(failed);
    }
    let d = cycle_forest(g);
    let action = induced_action(g, Degree::One);
    let aut = action.automorphisms();
    let kernel = action.kernel();
    let complement: Vec<Permutation> =
        aut.elements().iter().filter(|p| d.forest.vertices().all(|v| p.fixes(v))).cloned().collect();

    let trivial_intersection = kernel.iter().filter(|k| complement.contains(k)).all(|k| k.is_identity());
    let products: HashSet<Permutation> =
        kernel.iter().flat_map(|k| complement.iter().map(move |y| k.compose(y))).collect();
    let product_is_aut = products.len() == aut.order() && aut.elements().iter().all(|p| products.contains(p));
    let commute = kernel.iter().all(|k| complement.iter().all(|y| k.compose(y) == y.compose(k)));
    let theta_images: HashSet<_> = complement.iter().map(|y| action.matrix_of(y)).collect();
    let theta_bijective = theta_images.len() == complement.len() && theta_images.len() == action.image_order();
    SplittingOutcome::Certified(SplittingCertificate {
        aut_order: aut.order(),
        kernel,
        complement,
        image_order: action.image_order(),
        trivial_intersection,
        product_is_aut,
        commute,
        theta_bijective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lollipop() -> Graph {
        Graph::new(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]).unwrap()
    }

    fn theta() -> Graph {
        // 0 and 1 joined by paths 0-2-1, 0-3-1, 0-4-5-1
        Graph::new(6, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 5), (5, 1)]).unwrap()
    }

    fn theta_with_pendants() -> Graph {
        // two pendants 6, 7 on the degree-2 vertex 2
        let mut edges = theta().edges().to_vec();
        edges.extend([(2, 6), (2, 7)]);
        Graph::new(8, &edges).unwrap()
    }

    #[test]
    fn lollipop_layers() {
        let g = lollipop();
        let d = cycle_forest(&g);
        assert_eq!(d.layers, vec![vec![4], vec![3]]);
        assert_eq!(d.forest.vertices().collect::<Vec<_>>(), vec![2, 3, 4]);
        let fe: Vec<_> = d.forest.edges().map(|e| g.edge(e)).collect();
        assert_eq!(fe, vec![(2, 3), (3, 4)]);
        assert_eq!(d.cycle_retract.vertices().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(d.intersection, vec![2]);
        assert!(d.is_valid());
    }

    #[test]
    fn trees_and_cycles() {
        let t = Graph::new(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let d = cycle_forest(&t);
        assert!(d.forest.same_as(&Subgraph::full(&t)));
        assert!(d.cycle_retract.is_empty());
        assert!(d.is_valid());
        let c = Graph::cycle(5);
        let d = cycle_forest(&c);
        assert!(d.forest.is_empty());
        assert_eq!(d.cycle_retract.vertex_count(), 5);
        assert!(retract_homomorphism(&cycle_forest(&t)).is_err());
    }

    #[test]
    fn retraction_folds_by_parity() {
        let g = lollipop();
        let r = retract_homomorphism(&cycle_forest(&g)).unwrap();
        assert_eq!(r.vertex_image(4), 2);
        assert_eq!(r.vertex_image(3), 0);
        assert!((0..3).all(|v| r.vertex_image(v) == v));
        assert!(r.is_retraction());

        let c = Graph::cycle(4);
        let r = retract_homomorphism(&cycle_forest(&c)).unwrap();
        assert!((0..4).all(|v| r.vertex_image(v) == v));

        let two = Graph::new(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (0, 4)]).unwrap();
        let r = retract_homomorphism(&cycle_forest(&two)).unwrap();
        assert_eq!(r.vertex_image(3), r.vertex_image(4));
    }

    #[test]
    fn minimality() {
        let c = verify_minimality(&theta());
        assert!(c.holds());
        assert!(c.removals.iter().all(|(_, b)| b.b1 < c.cycle_betti.b1));

        let bridge = Graph::new(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap();
        let c = verify_minimality(&bridge);
        assert!(c.holds());
        let bridge_edge = bridge.edge_index(2, 3).unwrap();
        let (_, b) = c.removals.iter().find(|(e, _)| *e == bridge_edge).unwrap();
        assert_eq!(b.b0, 2);

        let tree = verify_minimality(&Graph::path(4));
        assert!(tree.holds() && tree.removals.is_empty());
    }

    #[test]
    fn automorphisms_restrict() {
        let c = aut_restriction_check(&lollipop());
        assert_eq!(c.checked, 2);
        assert!(c.holds());
        let claw = Graph::new(6, &[(0, 1), (1, 2), (2, 0), (0, 3), (0, 4), (0, 5)]).unwrap();
        let c = aut_restriction_check(&claw);
        assert_eq!(c.checked, 12);
        assert!(c.holds());
        assert!(kernel_restriction_check(&claw));
    }

    #[test]
    fn kernel_interpretation_examples() {
        let k = kernel_interpretation(&theta_with_pendants()).unwrap();
        assert_eq!(k.forest_group_order, 2);
        assert_eq!(k.kernel.len(), 2);
        assert!(k.is_isomorphism());

        let k = kernel_interpretation(&theta()).unwrap();
        assert_eq!((k.forest_group_order, k.kernel.len()), (1, 1));
        assert!(k.is_isomorphism());

        // triangle 0-1-2 sharing vertex 0 with square 0-3-4-5, path 4-6-7
        let g = Graph::new(8, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5), (5, 0), (4, 6), (6, 7)]).unwrap();
        let k = kernel_interpretation(&g).unwrap();
        assert_eq!((k.forest_group_order, k.kernel.len()), (1, 1));
        assert!(k.is_isomorphism());

        assert!(kernel_interpretation(&lollipop()).is_err());
    }

    #[test]
    fn splitting_examples() {
        // bowtie plus a pendant on vertex 1
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (1, 5)]).unwrap();
        let SplittingOutcome::Certified(c) = splitting_verification(&g) else { panic!("hypotheses hold") };
        assert!(c.holds());
        assert_eq!(c.kernel.len(), 1);
        assert_eq!(c.aut_order, c.complement.len());
        assert_eq!(c.aut_order, 2);

        let SplittingOutcome::Certified(c) = splitting_verification(&theta_with_pendants()) else { panic!() };
        assert!(c.holds());
        assert_eq!(c.kernel.len(), 2);
        assert_eq!(c.aut_order, c.kernel.len() * c.complement.len());

        let two = Graph::cycle(3).disjoint_union(&Graph::cycle(3));
        assert_eq!(
            splitting_verification(&two),
            SplittingOutcome::HypothesesNotMet(vec![SplittingHypothesis::Connected])
        );
        let sym = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 4), (3, 5)]).unwrap();
        assert_eq!(
            splitting_verification(&sym),
            SplittingOutcome::HypothesesNotMet(vec![SplittingHypothesis::ForestH0Trivial])
        );
    }
}
