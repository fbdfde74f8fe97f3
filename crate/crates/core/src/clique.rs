//! Compatibility graphs over candidate subgraphs and exact maximum clique.
//!
//! A clique in the compatibility graph of `(host, target)` is a family of
//! subgraphs of the host whose pairwise intersections all contain `target`;
//! the largest one is the densest target-intersecting family on that host.

use crate::density::DyadicDensity;
use crate::detect::Pattern;
use crate::enumerate::{candidate_subgraphs, HostEdges};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Dense adjacency-bitset graph, the solver's input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitGraph {
    size: usize,
    stride: usize,
    rows: Vec<u64>,
}

impl BitGraph {
    pub fn new(size: usize) -> Self {
        let stride = size.div_ceil(64);
        BitGraph { size, stride, rows: vec![0; size * stride] }
    }

    pub fn complete(size: usize) -> Self {
        let mut g = BitGraph::new(size);
        for v in 0..size {
            for u in 0..v {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Ignores loops.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.size && v < self.size, "vertex out of range");
        if u == v {
            return;
        }
        self.rows[u * self.stride + v / 64] |= 1 << (v % 64);
        self.rows[v * self.stride + u / 64] |= 1 << (u % 64);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.stride + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.stride..(v + 1) * self.stride]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.size).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(k, &u)| vertices[k + 1..].iter().all(|&v| u != v && self.has_edge(u, v)))
    }

    fn full_set(&self) -> Vec<u64> {
        let mut set = vec![u64::MAX; self.stride];
        if !self.size.is_multiple_of(64) {
            set[self.stride - 1] = (1 << (self.size % 64)) - 1;
        }
        if self.size == 0 {
            set.clear();
        }
        set
    }

    /// Copy with vertex `order[i]` renamed to `i`.
    fn relabeled(&self, order: &[usize]) -> BitGraph {
        let mut g = BitGraph::new(self.size);
        for (i, &u) in order.iter().enumerate() {
            for (j, &v) in order.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }
}

fn ones(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(k, &w)| {
        let mut rest = w;
        std::iter::from_fn(move || {
            (rest != 0).then(|| {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                k * 64 + b
            })
        })
    })
}

fn first_one(set: &[u64]) -> Option<usize> {
    set.iter()
        .position(|&w| w != 0)
        .map(|k| k * 64 + set[k].trailing_zeros() as usize)
}

fn count(set: &[u64]) -> usize {
    set.iter().map(|w| w.count_ones() as usize).sum()
}

/// Greedy sequential coloring of `cands` in ascending vertex order.
///
/// Returns the vertices in color-class order with the color of each, so
/// `colors[k]` bounds the clique size inside `order[..=k]`.
fn color_sort(g: &BitGraph, cands: &[u64]) -> (Vec<usize>, Vec<usize>) {
    let mut uncolored = cands.to_vec();
    let mut order = Vec::with_capacity(count(cands));
    let mut colors = Vec::with_capacity(order.capacity());
    let mut color = 0;
    let mut q = vec![0u64; cands.len()];
    while uncolored.iter().any(|&w| w != 0) {
        color += 1;
        q.copy_from_slice(&uncolored);
        while let Some(v) = first_one(&q) {
            uncolored[v / 64] &= !(1 << (v % 64));
            q[v / 64] &= !(1 << (v % 64));
            for (w, r) in q.iter_mut().zip(g.row(v)) {
                *w &= !r;
            }
            order.push(v);
            colors.push(color);
        }
    }
    (order, colors)
}

/// Number of colors greedy sequential coloring uses on `cands`; an upper bound
/// on any clique inside `cands`.
pub fn coloring_bound(g: &BitGraph, cands: &[usize]) -> usize {
    let mut set = vec![0u64; g.stride];
    for &v in cands {
        set[v / 64] |= 1 << (v % 64);
    }
    color_sort(g, &set).1.last().copied().unwrap_or(0)
}

/// A maximum clique: its size and the lexicographically smallest sorted witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clique {
    pub size: usize,
    pub witness: Vec<usize>,
}

/// Exact maximum clique by branch and bound with greedy-coloring bounds.
///
/// A first pass over vertices renumbered by descending degree finds the clique
/// number. A second pass walks original indices in ascending order and stops at
/// the first clique of that size, which is the lexicographically smallest one.
pub fn max_clique(g: &BitGraph) -> Clique {
    if g.size == 0 {
        return Clique { size: 0, witness: Vec::new() };
    }
    let mut order: Vec<usize> = (0..g.size).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let sorted = g.relabeled(&order);

    let mut best = 0;
    let mut cur = 0;
    expand(&sorted, sorted.full_set(), &mut cur, &mut best);

    let mut witness = Vec::with_capacity(best);
    let found = first_clique_of_size(g, &g.full_set(), &mut witness, best);
    debug_assert!(found, "a clique of size {best} exists");
    Clique { size: best, witness }
}

fn expand(g: &BitGraph, mut cands: Vec<u64>, cur: &mut usize, best: &mut usize) {
    let (order, colors) = color_sort(g, &cands);
    for k in (0..order.len()).rev() {
        if *cur + colors[k] <= *best {
            return;
        }
        let v = order[k];
        *cur += 1;
        let next: Vec<u64> = cands.iter().zip(g.row(v)).map(|(a, b)| a & b).collect();
        if next.iter().all(|&w| w == 0) {
            *best = (*best).max(*cur);
        } else {
            expand(g, next, cur, best);
        }
        *cur -= 1;
        cands[v / 64] &= !(1 << (v % 64));
    }
}

fn first_clique_of_size(g: &BitGraph, cands: &[u64], cur: &mut Vec<usize>, target: usize) -> bool {
    if cur.len() == target {
        return true;
    }
    let mut rest = cands.to_vec();
    for v in ones(cands) {
        if cur.len() + count(&rest) < target {
            return false;
        }
        let (_, colors) = color_sort(g, &rest);
        if cur.len() + colors.last().copied().unwrap_or(0) < target {
            return false;
        }
        rest[v / 64] &= !(1 << (v % 64));
        let next: Vec<u64> = rest.iter().zip(g.row(v)).map(|(a, b)| a & b).collect();
        cur.push(v);
        if first_clique_of_size(g, &next, cur, target) {
            return true;
        }
        cur.pop();
    }
    false
}

/// Clique number by enumerating every clique. Test oracle only.
pub fn brute_force_clique(g: &BitGraph) -> Result<usize> {
    if g.size > 25 {
        return Err(Error::UnsupportedSize(format!(
            "brute-force clique limited to 25 vertices, got {}",
            g.size
        )));
    }
    let adj: Vec<u32> = (0..g.size)
        .map(|v| (0..g.size).filter(|&u| g.has_edge(v, u)).fold(0, |m, u| m | 1 << u))
        .collect();
    fn grow(adj: &[u32], from: usize, common: u32, len: usize, best: &mut usize) {
        *best = (*best).max(len);
        for v in from..adj.len() {
            if common >> v & 1 == 1 {
                grow(adj, v + 1, common & adj[v], len + 1, best);
            }
        }
    }
    let mut best = 0;
    let all = if g.size == 32 { u32::MAX } else { (1u32 << g.size) - 1 };
    grow(&adj, 0, all, 0, &mut best);
    Ok(best)
}

/// Candidate subgraphs of a host and their pairwise target-containment relation.
#[derive(Clone, Debug)]
pub struct CompatibilityGraph {
    host: Graph,
    host_edges: HostEdges,
    labels: Vec<u32>,
    graph: BitGraph,
}

impl CompatibilityGraph {
    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    /// Host-relative edge mask of each vertex.
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn graph(&self) -> &BitGraph {
        &self.graph
    }

    /// The subgraph of the host labeling vertex `v`.
    pub fn member(&self, v: usize) -> Graph {
        self.host_edges.subgraph(self.labels[v])
    }

    pub fn max_clique(&self) -> CliqueResult {
        let Clique { size, witness } = max_clique(&self.graph);
        let density = DyadicDensity::new(size as u64, self.host.edge_count() as u64);
        let members = witness.iter().map(|&v| self.member(v)).collect();
        CliqueResult { size, witness, density, members }
    }
}

/// Vertices: subgraphs of `host` that contain `target`. Edges: pairs whose
/// intersection contains `target`.
pub fn build_compatibility(host: &Graph, target: &Graph) -> Result<CompatibilityGraph> {
    let pattern = Pattern::new(target);
    let host_edges = HostEdges::new(host);
    let candidates = candidate_subgraphs(host, pattern.edge_count())?;

    // Containment memo over host-relative masks: 0 unknown, 1 absent, 2 present.
    let mut memo = vec![0u8; 1usize << host_edges.len()];
    let mut contains = |mask: u32| -> bool {
        let slot = &mut memo[mask as usize];
        if *slot == 0 {
            *slot = if pattern.is_contained_in(&host_edges.subgraph(mask)) { 2 } else { 1 };
        }
        *slot == 2
    };

    let labels: Vec<u32> = candidates.into_iter().filter(|&m| contains(m)).collect();
    let mut graph = BitGraph::new(labels.len());
    for (i, &a) in labels.iter().enumerate() {
        for (j, &b) in labels.iter().enumerate().skip(i + 1) {
            if (a & b).count_ones() as usize >= pattern.edge_count() && contains(a & b) {
                graph.add_edge(i, j);
            }
        }
    }
    Ok(CompatibilityGraph { host: host.clone(), host_edges, labels, graph })
}

/// Maximum clique of a compatibility graph with its density on the host.
#[derive(Clone, Debug)]
pub struct CliqueResult {
    pub size: usize,
    /// Compatibility-graph vertices, ascending.
    pub witness: Vec<usize>,
    /// `size / 2^e(host)`, unreduced.
    pub density: DyadicDensity,
    /// The witness as subgraphs of the host.
    pub members: Vec<Graph>,
}
