use std::collections::{BTreeMap, HashSet, VecDeque};
use std::hash::Hash;

use crate::linalg::RationalMatrix;

/// A vertex permutation, `images[i]` being the image of vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// `None` unless `images` is a bijection of `0..images.len()`.
    pub fn new(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, v: usize) -> usize {
        self.images[v]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn fixes(&self, v: usize) -> bool {
        self.images[v] == v
    }
}

/// Elements that can be multiplied and compared, for order and structure computations.
pub trait GroupElement: Clone + Eq + Hash {
    fn compose(&self, other: &Self) -> Self;
    fn is_identity(&self) -> bool;
}

impl GroupElement for Permutation {
    fn compose(&self, other: &Self) -> Self {
        Permutation::compose(self, other)
    }
    fn is_identity(&self) -> bool {
        Permutation::is_identity(self)
    }
}

impl GroupElement for RationalMatrix {
    fn compose(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn is_identity(&self) -> bool {
        RationalMatrix::is_identity(self)
    }
}

/// Order of a single element of a finite group.
pub fn element_order<T: GroupElement>(x: &T) -> usize {
    let mut k = 1;
    let mut y = x.clone();
    while !y.is_identity() {
        y = y.compose(x);
        k += 1;
    }
    k
}

/// Closure of `generators` under composition, starting from `identity`.
pub fn closure<T: GroupElement>(identity: &T, generators: &[T]) -> HashSet<T> {
    let mut set = HashSet::new();
    set.insert(identity.clone());
    let mut queue = VecDeque::from([identity.clone()]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.compose(g);
            if set.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    set
}

/// Generators chosen greedily: walk `elements` in order and keep each one not yet generated.
pub fn greedy_generators<T: GroupElement>(identity: &T, elements: &[T]) -> Vec<T> {
    let mut generators = Vec::new();
    let mut span = closure(identity, &generators);
    for x in elements {
        if !span.contains(x) {
            generators.push(x.clone());
            span = closure(identity, &generators);
        }
    }
    generators
}

/// A finite permutation group with all of its elements listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationGroup {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
}

impl PermutationGroup {
    /// Sorts the elements and picks generators. The caller guarantees closure.
    pub fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        elements.dedup();
        let generators = greedy_generators(&Permutation::identity(degree), &elements);
        PermutationGroup { degree, elements, generators }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_elements(degree, vec![Permutation::identity(degree)])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_closed(&self) -> bool {
        let id = Permutation::identity(self.degree);
        self.contains(&id)
            && self.elements.iter().all(|g| self.contains(&g.inverse()))
            && self.generators.iter().all(|s| self.elements.iter().all(|g| self.contains(&g.compose(s))))
    }

    pub fn profile(&self) -> GroupProfile<Permutation> {
        profile_of(&self.elements, &self.generators)
    }
}

/// Summary used in reports in place of an isomorphism-type name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupProfile<T> {
    pub order: usize,
    pub abelian: bool,
    pub cyclic: bool,
    /// element order → number of elements of that order
    pub element_orders: BTreeMap<usize, usize>,
    pub generators: Vec<T>,
}

pub fn profile_of<T: GroupElement>(elements: &[T], generators: &[T]) -> GroupProfile<T> {
    let abelian = generators
        .iter()
        .enumerate()
        .all(|(i, a)| generators[i + 1..].iter().all(|b| a.compose(b) == b.compose(a)));
    let mut element_orders = BTreeMap::new();
    for x in elements {
        *element_orders.entry(element_order(x)).or_insert(0) += 1;
    }
    let order = elements.len();
    GroupProfile {
        order,
        abelian,
        cyclic: element_orders.contains_key(&order),
        element_orders,
        generators: generators.to_vec(),
    }
}
