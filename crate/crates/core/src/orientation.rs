//! Natural orientations: an orientation for which `H¹` has a basis of 0/1 forms, each supported
//! on a cycle whose edges all point the same way around.
//!
//! The searcher enumerates simple cycles (shortest first, then lexicographic by edge set) and
//! backtracks over families of `b₁` cycles that are independent in the cycle space and can be
//! directed consistently at once. If it runs out of budget it falls back to an ear
//! decomposition, which always produces a witness: orient each ear along itself and close it
//! with a directed path through the part already built. [`verify_witness`] checks any witness
//! from scratch.

use std::collections::VecDeque;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::cochain::{self, EdgeForm, Support};
use crate::enumerate::connected_graphs;
use crate::error::{Error, Result};
use crate::graph::{Graph, Orientation, OrientedGraph};
use crate::linalg::{self, rat, Rational, RationalMatrix, Vector};

/// Largest edge count accepted by the search.
pub const MAX_EDGES: usize = 128;
/// Largest vertex count accepted by [`conjecture_sweep`].
pub const MAX_SWEEP_VERTICES: usize = 8;
/// Largest edge count accepted by [`count_natural_orientations`].
pub const MAX_COUNT_EDGES: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalOrientationWitness {
    pub orientation: Orientation,
    pub basis: Vec<EdgeForm>,
    /// Vertices in the direction of the edges, `edges[i]` joining `vertices[i]` to `vertices[i+1]`.
    pub supports: Vec<Support>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessSource {
    CycleSearch,
    EarDecomposition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// `None` enumerates every simple cycle.
    pub cycle_cap: Option<usize>,
    /// Backtracking nodes before giving up on the cycle search.
    pub node_budget: usize,
    pub ear_fallback: bool,
}

impl SearchConfig {
    /// All cycles up to 20 edges, 10000 beyond; budget of one million nodes; fallback on.
    pub fn for_graph(g: &Graph) -> Self {
        SearchConfig {
            cycle_cap: (g.edge_count() > 20).then_some(10_000),
            node_budget: 1_000_000,
            ear_fallback: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub witness: Option<(NaturalOrientationWitness, WitnessSource)>,
    pub cycles_enumerated: usize,
    pub cycle_cap_hit: bool,
    pub nodes_visited: usize,
    /// The cycle search explored its whole space without finding a family.
    pub exhausted: bool,
}

/// A simple cycle: vertices in traversal order and, per edge, `+1` when the traversal runs
/// from the smaller to the larger endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Cycle {
    vertices: Vec<usize>,
    edges: Vec<usize>,
    signs: Vec<i8>,
}

impl Cycle {
    fn from_walk(g: &Graph, vertices: Vec<usize>) -> Cycle {
        let k = vertices.len();
        let mut edges = Vec::with_capacity(k);
        let mut signs = Vec::with_capacity(k);
        for i in 0..k {
            let (a, b) = (vertices[i], vertices[(i + 1) % k]);
            let e = g.edge_index(a, b).expect("consecutive cycle vertices are adjacent");
            edges.push(e);
            signs.push(if a < b { 1 } else { -1 });
        }
        Cycle { vertices, edges, signs }
    }

    fn sorted_edges(&self) -> Vec<usize> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }

    /// Signed vector relative to the standard orientation.
    fn vector(&self, m: usize) -> Vector {
        let mut v = linalg::zero_vector(m);
        for (&e, &s) in self.edges.iter().zip(&self.signs) {
            v[e] = rat(i64::from(s));
        }
        v
    }
}

/// Simple cycles in (length, edge set) order, and whether `cap` cut the enumeration short.
/// Each cycle is found once, from its smallest vertex, in the direction whose second vertex is
/// smaller than its last.
fn simple_cycles(g: &Graph, cap: Option<usize>) -> (Vec<Cycle>, bool) {
    struct Walk<'a> {
        g: &'a Graph,
        cap: Option<usize>,
        path: Vec<usize>,
        on_path: Vec<bool>,
        out: Vec<Cycle>,
    }
    impl Walk<'_> {
        /// `false` once the cap is reached.
        fn extend(&mut self, s: usize) -> bool {
            let v = *self.path.last().expect("path starts at s");
            for w in self.g.neighbors(v) {
                if w < s || self.on_path[w] {
                    continue;
                }
                self.path.push(w);
                self.on_path[w] = true;
                if self.path.len() >= 3 && self.g.has_edge(w, s) && self.path[1] < w {
                    self.out.push(Cycle::from_walk(self.g, self.path.clone()));
                    if self.cap.is_some_and(|c| self.out.len() >= c) {
                        return false;
                    }
                }
                let go_on = self.extend(s);
                self.on_path[w] = false;
                self.path.pop();
                if !go_on {
                    return false;
                }
            }
            true
        }
    }
    let n = g.vertex_count();
    let mut walk = Walk { g, cap, path: Vec::new(), on_path: vec![false; n], out: Vec::new() };
    let mut complete = true;
    for s in 0..n {
        walk.path = vec![s];
        walk.on_path[s] = true;
        complete = walk.extend(s);
        walk.on_path[s] = false;
        if !complete {
            break;
        }
    }
    let mut out = walk.out;
    out.sort_by_cached_key(|c| (c.edges.len(), c.sorted_edges()));
    (out, !complete)
}

/// Incremental row-echelon basis for independence tests.
#[derive(Clone)]
struct Echelon {
    rows: Vec<(usize, Vector)>,
}

impl Echelon {
    fn reduce(&self, mut v: Vector) -> Vector {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone() / &row[*p];
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        v
    }

    fn try_push(&mut self, v: Vector) -> bool {
        let r = self.reduce(v);
        match r.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push((p, r));
                true
            }
            None => false,
        }
    }
}

/// Traversal directions `d_c ∈ {±1}` making every chosen cycle consistently directed, i.e.
/// `d_a s_a(e) = d_b s_b(e)` on every shared edge, or `None`.
fn directions(chosen: &[&Cycle], m: usize) -> Option<Vec<i8>> {
    let mut users: Vec<Vec<(usize, i8)>> = vec![Vec::new(); m];
    for (i, c) in chosen.iter().enumerate() {
        for (&e, &s) in c.edges.iter().zip(&c.signs) {
            users[e].push((i, s));
        }
    }
    let mut dir = vec![0i8; chosen.len()];
    for start in 0..chosen.len() {
        if dir[start] != 0 {
            continue;
        }
        dir[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for &e in &chosen[i].edges {
                let own = users[e].iter().find(|(c, _)| *c == i).expect("edge of cycle i").1;
                for &(j, s) in &users[e] {
                    let need = dir[i] * own * s;
                    if dir[j] == 0 {
                        dir[j] = need;
                        queue.push_back(j);
                    } else if dir[j] != need {
                        return None;
                    }
                }
            }
        }
    }
    Some(dir)
}

struct Search<'a> {
    cycles: &'a [Cycle],
    m: usize,
    target: usize,
    budget: usize,
    nodes: usize,
    chosen: Vec<usize>,
}

impl Search<'_> {
    /// `Some(true)` found, `Some(false)` exhausted below this node, `None` out of budget.
    fn run(&mut self, start: usize, basis: &Echelon) -> Option<bool> {
        if self.chosen.len() == self.target {
            return Some(true);
        }
        let remaining = self.target - self.chosen.len();
        for i in start..self.cycles.len() {
            if self.cycles.len() - i < remaining {
                break;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            let mut next = basis.clone();
            if !next.try_push(self.cycles[i].vector(self.m)) {
                continue;
            }
            self.chosen.push(i);
            let family: Vec<&Cycle> = self.chosen.iter().map(|&c| &self.cycles[c]).collect();
            if directions(&family, self.m).is_some() && self.run(i + 1, &next)? {
                return Some(true);
            }
            self.chosen.pop();
        }
        Some(false)
    }
}

fn witness_from_cycles(g: &Graph, family: &[&Cycle]) -> NaturalOrientationWitness {
    let m = g.edge_count();
    let dir = directions(family, m).expect("family is consistent");
    let mut signs = vec![1i64; m];
    let mut basis = Vec::new();
    let mut supports = Vec::new();
    for (c, &d) in family.iter().zip(&dir) {
        for (&e, &s) in c.edges.iter().zip(&c.signs) {
            signs[e] = i64::from(d * s);
        }
        let mut v = linalg::zero_vector(m);
        for &e in &c.edges {
            v[e] = Rational::one();
        }
        basis.push(EdgeForm(v));
        let (mut vertices, mut edges) = (c.vertices.clone(), c.edges.clone());
        if d < 0 {
            vertices.reverse();
            vertices.rotate_right(1);
            edges.reverse();
        }
        supports.push(Support { vertices, edges });
    }
    NaturalOrientationWitness { orientation: Orientation::from_signs(g, &signs).expect("signs are ±1"), basis, supports }
}

fn b1(g: &Graph) -> usize {
    crate::graph::betti_numbers(g).b1
}

pub fn find_natural_orientation(g: &Graph) -> Result<SearchOutcome> {
    find_natural_orientation_with(g, SearchConfig::for_graph(g))
}

pub fn find_natural_orientation_with(g: &Graph, config: SearchConfig) -> Result<SearchOutcome> {
    if g.edge_count() > MAX_EDGES {
        return Err(Error::Precondition(format!("at most {MAX_EDGES} edges supported")));
    }
    let target = b1(g);
    if target == 0 {
        let w = NaturalOrientationWitness { orientation: Orientation::standard(g), basis: Vec::new(), supports: Vec::new() };
        return Ok(SearchOutcome {
            witness: Some((w, WitnessSource::CycleSearch)),
            cycles_enumerated: 0,
            cycle_cap_hit: false,
            nodes_visited: 0,
            exhausted: false,
        });
    }
    let (cycles, cycle_cap_hit) = simple_cycles(g, config.cycle_cap);
    let mut search =
        Search { cycles: &cycles, m: g.edge_count(), target, budget: config.node_budget, nodes: 0, chosen: Vec::new() };
    let result = search.run(0, &Echelon { rows: Vec::new() });
    let mut outcome = SearchOutcome {
        witness: None,
        cycles_enumerated: cycles.len(),
        cycle_cap_hit,
        nodes_visited: search.nodes,
        exhausted: result == Some(false),
    };
    if result == Some(true) {
        let family: Vec<&Cycle> = search.chosen.iter().map(|&i| &cycles[i]).collect();
        outcome.witness = Some((witness_from_cycles(g, &family), WitnessSource::CycleSearch));
    } else if config.ear_fallback {
        outcome.witness = Some((ear_witness(g), WitnessSource::EarDecomposition));
    }
    Ok(outcome)
}

/// Witness built from an ear decomposition of the bridgeless part of `g`.
pub fn ear_witness(g: &Graph) -> NaturalOrientationWitness {
    let n = g.vertex_count();
    let m = g.edge_count();
    let bridges = bridges(g);
    let mut signs = vec![1i64; m];
    let mut oriented = vec![false; m];
    let mut in_structure = vec![false; n];
    let mut basis = Vec::new();
    let mut supports = Vec::new();

    while let Some(ear) = next_ear(g, &oriented, &in_structure, &bridges) {
        let ear_edges: Vec<usize> =
            ear.windows(2).map(|p| g.edge_index(p[0], p[1]).expect("ear edge")).collect();
        let (start, end) = (ear[0], ear[ear.len() - 1]);
        let mut walk = ear.clone();
        if start == end {
            walk.pop();
        } else {
            let back = directed_path(g, &oriented, &signs, end, start).expect("structure is strongly connected");
            walk.extend(&back[1..back.len() - 1]);
        }
        for (p, &e) in ear.windows(2).zip(&ear_edges) {
            signs[e] = if p[0] < p[1] { 1 } else { -1 };
            oriented[e] = true;
        }
        for &v in &ear {
            in_structure[v] = true;
        }
        let k = walk.len();
        let edges: Vec<usize> =
            (0..k).map(|i| g.edge_index(walk[i], walk[(i + 1) % k]).expect("cycle edge")).collect();
        let mut v = linalg::zero_vector(m);
        for &e in &edges {
            v[e] = Rational::one();
        }
        basis.push(EdgeForm(v));
        supports.push(Support { vertices: walk, edges });
    }
    NaturalOrientationWitness { orientation: Orientation::from_signs(g, &signs).expect("signs are ±1"), basis, supports }
}

/// Shortest path `from → to` along oriented edges, as a vertex list.
fn directed_path(g: &Graph, oriented: &[bool], signs: &[i64], from: usize, to: usize) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; g.vertex_count()];
    prev[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for &(w, e) in g.incident(v) {
            let (a, _) = g.edge(e);
            let outgoing = oriented[e] && (signs[e] > 0) == (a == v);
            if outgoing && prev[w] == usize::MAX {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    if prev[to] == usize::MAX {
        return None;
    }
    let mut path = vec![to];
    while *path.last().unwrap() != from {
        path.push(prev[*path.last().unwrap()]);
    }
    path.reverse();
    Some(path)
}

/// Next ear as a vertex walk: from the structure back to it through new vertices, or a fresh
/// closed walk (first vertex repeated at the end) when no usable edge touches the structure.
fn next_ear(g: &Graph, oriented: &[bool], in_structure: &[bool], bridges: &[bool]) -> Option<Vec<usize>> {
    let usable = |e: usize| !oriented[e] && !bridges[e];
    for v in (0..g.vertex_count()).filter(|&v| in_structure[v]) {
        for &(w, e) in g.incident(v) {
            if !usable(e) {
                continue;
            }
            if in_structure[w] {
                return Some(vec![v, w]);
            }
            let tail = path_avoiding(g, w, e, &usable, |y| in_structure[y]).expect("non-bridge edges lie on cycles");
            return Some(std::iter::once(v).chain(tail).collect());
        }
    }
    let e = (0..g.edge_count()).find(|&e| usable(e))?;
    let (a, b) = g.edge(e);
    let tail = path_avoiding(g, b, e, &usable, |y| y == a).expect("non-bridge edges lie on cycles");
    Some(std::iter::once(a).chain(tail).collect())
}

/// BFS path from `start` to the nearest vertex satisfying `stop`, over usable edges other than
/// `skip`, through vertices not satisfying `stop`.
fn path_avoiding(
    g: &Graph,
    start: usize,
    skip: usize,
    usable: &dyn Fn(usize) -> bool,
    stop: impl Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; g.vertex_count()];
    prev[start] = start;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &(y, f) in g.incident(x) {
            if f == skip || !usable(f) {
                continue;
            }
            if stop(y) {
                let mut path = vec![y, x];
                while *path.last().unwrap() != start {
                    path.push(prev[*path.last().unwrap()]);
                }
                path.reverse();
                return Some(path);
            }
            if prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

/// Bridge flags per edge, by removing each edge and testing connectivity of its endpoints.
fn bridges(g: &Graph) -> Vec<bool> {
    (0..g.edge_count())
        .map(|e| {
            let (a, b) = g.edge(e);
            let mut seen = vec![false; g.vertex_count()];
            seen[a] = true;
            let mut queue = VecDeque::from([a]);
            while let Some(x) = queue.pop_front() {
                for &(y, f) in g.incident(x) {
                    if f != e && !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            !seen[b]
        })
        .collect()
}

/// Checks every witness invariant from the definitions: `b₁` basis forms with entries in
/// `{0, 1}`, each in `ker D*`, jointly independent, each supported on a cycle that its stated
/// vertex sequence traverses along the orientation.
pub fn verify_witness(g: &Graph, w: &NaturalOrientationWitness) -> bool {
    let Ok(og) = OrientedGraph::new(g.clone(), w.orientation.clone()) else { return false };
    let m = g.edge_count();
    let b1 = m - linalg::rank(&cochain::incidence_matrix(&og));
    if w.basis.len() != b1 || w.supports.len() != b1 {
        return false;
    }
    let zero_one = |x: &Rational| x.is_zero() || x.is_one();
    for (form, support) in w.basis.iter().zip(&w.supports) {
        if form.0.len() != m || !form.0.iter().all(zero_one) {
            return false;
        }
        let Ok(div) = cochain::adjoint_coboundary(&og, form) else { return false };
        if !div.0.iter().all(Zero::is_zero) {
            return false;
        }
        if !traverses_cycle(&og, support, form) {
            return false;
        }
    }
    let rows: Vec<Vector> = w.basis.iter().map(|f| f.0.clone()).collect();
    linalg::rank(&RationalMatrix::from_rows_with_cols(&rows, m)) == b1
}

fn traverses_cycle(og: &OrientedGraph, s: &Support, form: &EdgeForm) -> bool {
    let k = s.vertices.len();
    if k < 3 || s.edges.len() != k {
        return false;
    }
    let mut seen = vec![false; og.vertex_count()];
    for &v in &s.vertices {
        if v >= seen.len() || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    let mut on_support = vec![false; og.edge_count()];
    for i in 0..k {
        let (a, b) = (s.vertices[i], s.vertices[(i + 1) % k]);
        let e = s.edges[i];
        if e >= og.edge_count() || og.directed_edge(e) != (a, b) {
            return false;
        }
        on_support[e] = true;
    }
    form.0.iter().zip(&on_support).all(|(x, &on)| x.is_one() == on)
}

/// Number of orientations that are natural, by full enumeration.
pub fn count_natural_orientations(g: &Graph) -> Result<u64> {
    let m = g.edge_count();
    if m > MAX_COUNT_EDGES {
        return Err(Error::Precondition(format!("counting supports at most {MAX_COUNT_EDGES} edges")));
    }
    let target = b1(g);
    let (cycles, _) = simple_cycles(g, None);
    let vectors: Vec<Vector> = cycles.iter().map(|c| c.vector(m)).collect();
    let mut count = 0;
    for bits in 0u32..(1 << m) {
        // bit e set: edge e runs against the standard orientation
        let directed: Vec<Vector> = cycles
            .iter()
            .zip(&vectors)
            .filter(|(c, _)| {
                let along = |(&e, &s): (&usize, &i8)| (bits >> e & 1 == 0) == (s > 0);
                let all_along = c.edges.iter().zip(&c.signs).all(along);
                let all_against = c.edges.iter().zip(&c.signs).all(|p| !along(p));
                all_along || all_against
            })
            .map(|(_, v)| v.clone())
            .collect();
        if linalg::rank(&RationalMatrix::from_rows_with_cols(&directed, m)) == target {
            count += 1;
        }
    }
    Ok(count)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepEntry {
    pub vertex_count: usize,
    pub graphs: usize,
    pub verified: usize,
    pub by_search: usize,
    pub by_ears: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub rows: Vec<SweepEntry>,
    /// Graphs without a verified witness, with the search statistics.
    pub failures: Vec<(Graph, SearchOutcome)>,
}

impl SweepReport {
    pub fn all_verified(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn total(&self) -> usize {
        self.rows.iter().map(|r| r.graphs).sum()
    }
}

pub fn conjecture_sweep(max_vertices: usize) -> Result<SweepReport> {
    if max_vertices > MAX_SWEEP_VERTICES {
        return Err(Error::Precondition(format!("sweep supports at most {MAX_SWEEP_VERTICES} vertices")));
    }
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for n in 1..=max_vertices {
        let graphs = connected_graphs(n);
        let results: Vec<(SearchOutcome, bool)> = graphs
            .par_iter()
            .map(|g| {
                let outcome = find_natural_orientation(g).expect("enumerated graphs are small");
                let ok = outcome.witness.as_ref().is_some_and(|(w, _)| verify_witness(g, w));
                (outcome, ok)
            })
            .collect();
        let mut entry = SweepEntry { vertex_count: n, graphs: graphs.len(), verified: 0, by_search: 0, by_ears: 0 };
        for (g, (outcome, ok)) in graphs.iter().zip(results) {
            if ok {
                entry.verified += 1;
                match outcome.witness.as_ref().map(|(_, s)| *s) {
                    Some(WitnessSource::CycleSearch) => entry.by_search += 1,
                    _ => entry.by_ears += 1,
                }
            } else {
                failures.push((g.clone(), outcome));
            }
        }
        rows.push(entry);
    }
    Ok(SweepReport { rows, failures })
}
