//! Ordered-partition refinement and the two searches built on it: enumerating every
//! automorphism, and computing a canonical relabeling.
//!
//! Refinement splits each cell by the number of neighbors its vertices have in every cell and
//! orders the pieces by that count vector, iterating to an equitable partition. Nothing in the
//! procedure looks at vertex labels, so it commutes with relabeling; an automorphism that maps
//! one individualized partition onto another also maps their refinements onto each other.

use std::collections::BTreeMap;

use super::group::{Permutation, PermutationGroup};
use crate::graph::Graph;

type Partition = Vec<Vec<usize>>;

fn cell_index(p: &Partition, n: usize) -> Vec<usize> {
    let mut idx = vec![0; n];
    for (c, cell) in p.iter().enumerate() {
        for &v in cell {
            idx[v] = c;
        }
    }
    idx
}

fn signature(g: &Graph, idx: &[usize], cells: usize, v: usize) -> Vec<u32> {
    let mut sig = vec![0; cells];
    for w in g.neighbors(v) {
        sig[idx[w]] += 1;
    }
    sig
}

/// Refines to an equitable partition.
fn refine(g: &Graph, mut p: Partition) -> Partition {
    let n = g.vertex_count();
    loop {
        let idx = cell_index(&p, n);
        let cells = p.len();
        let mut next: Partition = Vec::with_capacity(cells);
        let mut split = false;
        for cell in &p {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> =
                cell.iter().map(|&v| (signature(g, &idx, cells, v), v)).collect();
            keyed.sort();
            let before = next.len();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
            split |= next.len() - before > 1;
        }
        p = next;
        if !split {
            return p;
        }
    }
}

fn individualize(p: &Partition, cell: usize, v: usize) -> Partition {
    let mut out = Vec::with_capacity(p.len() + 1);
    for (i, c) in p.iter().enumerate() {
        if i == cell {
            out.push(vec![v]);
            out.push(c.iter().copied().filter(|&w| w != v).collect());
        } else {
            out.push(c.clone());
        }
    }
    out
}

/// Counts of neighbors from a representative of each cell into every cell.
fn quotient(g: &Graph, p: &Partition) -> Vec<Vec<u32>> {
    let idx = cell_index(p, g.vertex_count());
    p.iter().map(|cell| signature(g, &idx, p.len(), cell[0])).collect()
}

fn same_shape(a: &Partition, b: &Partition) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.len() == y.len())
}

fn target_cell(p: &Partition) -> Option<usize> {
    p.iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|&(i, c)| (c.len(), i))
        .map(|(i, _)| i)
}

fn initial(g: &Graph) -> Partition {
    refine(g, vec![(0..g.vertex_count()).collect()])
}

fn is_automorphism(g: &Graph, map: &[usize]) -> bool {
    g.edges().iter().all(|&(u, v)| g.has_edge(map[u], map[v]))
}

fn search_automorphisms(g: &Graph, src: &Partition, tgt: &Partition, out: &mut Vec<Permutation>) {
    let Some(ci) = target_cell(src) else {
        let mut map = vec![0; g.vertex_count()];
        for (a, b) in src.iter().zip(tgt) {
            map[a[0]] = b[0];
        }
        if is_automorphism(g, &map) {
            out.push(Permutation::new(map).expect("cells give a bijection"));
        }
        return;
    };
    let v = src[ci][0];
    let src_next = refine(g, individualize(src, ci, v));
    let src_quotient = quotient(g, &src_next);
    for &w in &tgt[ci] {
        let tgt_next = refine(g, individualize(tgt, ci, w));
        if same_shape(&src_next, &tgt_next) && quotient(g, &tgt_next) == src_quotient {
            search_automorphisms(g, &src_next, &tgt_next, out);
        }
    }
}

/// Every automorphism of `g`, sorted lexicographically by image list.
pub fn automorphism_group(g: &Graph) -> PermutationGroup {
    automorphisms_preserving(g, &vec![0; g.vertex_count()])
}

/// Automorphisms `p` of `g` with `colors[p(v)] == colors[v]` for every vertex.
pub fn automorphisms_preserving(g: &Graph, colors: &[usize]) -> PermutationGroup {
    let n = g.vertex_count();
    assert_eq!(colors.len(), n, "one color per vertex");
    if n == 0 {
        return PermutationGroup::trivial(0);
    }
    let mut by_color: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colors.iter().enumerate() {
        by_color.entry(c).or_default().push(v);
    }
    let root = refine(g, by_color.into_values().collect());
    let mut out = Vec::new();
    search_automorphisms(g, &root, &root, &mut out);
    PermutationGroup::from_elements(n, out)
}

/// Relabeling `labels[v]` giving the canonical form of `g`, together with that form.
/// Isomorphic graphs have equal canonical forms.
pub fn canonical_form(g: &Graph) -> (Graph, Vec<usize>) {
    let n = g.vertex_count();
    if n == 0 {
        return (g.clone(), Vec::new());
    }
    let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
    canon_search(g, &initial(g), &mut best);
    let (_, labels) = best.expect("search reaches at least one leaf");
    (g.relabel(&labels).expect("labels are a permutation"), labels)
}

fn adjacency_code(g: &Graph, labels: &[usize]) -> Vec<u64> {
    let n = g.vertex_count();
    let bits = n * n.saturating_sub(1) / 2;
    let mut code = vec![0u64; bits.div_ceil(64).max(1)];
    // pair index for (i, j), i < j, in row-major upper-triangle order
    let pos = |i: usize, j: usize| i * (2 * n - i - 1) / 2 + (j - i - 1);
    for &(u, v) in g.edges() {
        let (a, b) = (labels[u].min(labels[v]), labels[u].max(labels[v]));
        let k = pos(a, b);
        // most significant first so Vec comparison is lexicographic in pair order
        code[k / 64] |= 1u64 << (63 - (k % 64));
    }
    code
}

fn canon_search(g: &Graph, p: &Partition, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    let Some(ci) = target_cell(p) else {
        let mut labels = vec![0; g.vertex_count()];
        for (i, cell) in p.iter().enumerate() {
            labels[cell[0]] = i;
        }
        let code = adjacency_code(g, &labels);
        if best.as_ref().is_none_or(|(b, _)| code > *b) {
            *best = Some((code, labels));
        }
        return;
    };
    for &v in &p[ci] {
        canon_search(g, &refine(g, individualize(p, ci, v)), best);
    }
}
