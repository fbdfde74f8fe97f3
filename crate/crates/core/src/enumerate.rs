//! Host graph classes and candidate subgraphs.

use crate::error::{invalid, Error, Result};
use crate::graph::{is_canonical_mask, pair_count, Graph, MAX_CANONICAL_VERTICES};

/// Graphs on `n` vertices with exactly `m` edges, optionally connected only.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HostClass {
    pub n: usize,
    pub m: usize,
    pub connected_only: bool,
}

impl HostClass {
    pub fn new(n: usize, m: usize, connected_only: bool) -> Self {
        HostClass { n, m, connected_only }
    }

    /// False when no graph can belong to the class.
    pub fn is_feasible(&self) -> bool {
        self.n >= 1
            && self.m <= pair_count(self.n)
            && (!self.connected_only || self.m + 1 >= self.n)
    }
}

/// Whether all `n` vertices lie in one component. Isolated vertices count.
pub fn is_connected(g: &Graph) -> bool {
    let adj = g.adjacency();
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[v] & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen == all
}

/// One representative per isomorphism class, ascending by canonical key.
///
/// Representatives are the canonical graphs themselves, so `g.mask()` of each
/// output equals its key.
pub fn connected_graphs(class: HostClass) -> Result<Vec<Graph>> {
    if class.n > MAX_CANONICAL_VERTICES {
        return Err(Error::UnsupportedSize(format!(
            "host enumeration needs n <= {MAX_CANONICAL_VERTICES}, got {}",
            class.n
        )));
    }
    if class.n == 0 {
        return invalid("host class with zero vertices");
    }
    if !class.is_feasible() {
        return Ok(Vec::new());
    }
    let pairs = pair_count(class.n);
    let mut reps = Vec::new();
    for mask in masks_with_popcount(pairs, class.m) {
        let g = Graph::from_mask(class.n, mask)?;
        if class.connected_only && !is_connected(&g) {
            continue;
        }
        if is_canonical_mask(class.n, mask) {
            reps.push(g);
        }
    }
    Ok(reps)
}

/// All `bits`-bit masks with exactly `ones` set bits, ascending.
fn masks_with_popcount(bits: usize, ones: usize) -> impl Iterator<Item = u64> {
    let first = if ones == 0 { 0 } else { (1u64 << ones) - 1 };
    let limit = 1u64 << bits;
    let mut next = (ones <= bits).then_some(first);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack.
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let n = (((r ^ cur) >> 2) / c) | r;
            (n < limit).then_some(n)
        };
        Some(cur)
    })
}

/// Subsets of the host's edges with at least `min_edges` edges, as masks over
/// the host's edge list (bit `k` = `k`-th edge in bit order), ascending.
pub fn candidate_subgraphs(host: &Graph, min_edges: usize) -> Result<Vec<u32>> {
    let e = host.edge_count();
    if e > 20 {
        return Err(Error::UnsupportedSize(format!(
            "host has {e} edges; candidate enumeration is limited to 20"
        )));
    }
    Ok((0u32..1 << e).filter(|s| s.count_ones() as usize >= min_edges).collect())
}

/// Translates between host-relative subset masks and graphs on the host's vertices.
#[derive(Clone, Debug)]
pub struct HostEdges {
    n: usize,
    positions: Vec<usize>,
}

impl HostEdges {
    pub fn new(host: &Graph) -> Self {
        HostEdges { n: host.n(), positions: host.edge_set().ones().collect() }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// The subgraph of the host keeping the edges selected by `mask`.
    pub fn subgraph(&self, mask: u32) -> Graph {
        let mut edges = crate::graph::EdgeSet::with_len(pair_count(self.n));
        for (k, &pos) in self.positions.iter().enumerate() {
            if mask >> k & 1 == 1 {
                edges.insert(pos);
            }
        }
        Graph::from_edge_set(self.n, edges).expect("host positions are valid")
    }

    /// Inverse of [`HostEdges::subgraph`]; `None` if `g` is not a subgraph of the host.
    pub fn mask_of(&self, g: &Graph) -> Option<u32> {
        if g.n() != self.n {
            return None;
        }
        let mut mask = 0u32;
        let mut covered = 0;
        for (k, &pos) in self.positions.iter().enumerate() {
            if g.edge_set().contains(pos) {
                mask |= 1 << k;
                covered += 1;
            }
        }
        (covered == g.edge_count()).then_some(mask)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{christofides_host, complete, path};

    #[test]
    fn connectivity() {
        assert!(is_connected(&path(4).unwrap()));
        let k3_plus = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(!is_connected(&k3_plus));
        assert!(is_connected(&christofides_host()));
        assert!(is_connected(&Graph::empty(1).unwrap()));
    }

    #[test]
    fn small_classes() {
        assert_eq!(connected_graphs(HostClass::new(2, 1, true)).unwrap().len(), 1);
        let trees = connected_graphs(HostClass::new(4, 3, true)).unwrap();
        assert_eq!(trees.len(), 2);
        assert!(trees.windows(2).all(|w| w[0].mask() < w[1].mask()));
        assert!(connected_graphs(HostClass::new(5, 2, true)).unwrap().is_empty());
        assert!(connected_graphs(HostClass::new(3, 4, false)).unwrap().is_empty());
        assert!(connected_graphs(HostClass::new(9, 8, true)).is_err());
    }

    #[test]
    fn gosper_matches_filter() {
        for bits in 0..=10 {
            for ones in 0..=bits + 1 {
                let fast: Vec<u64> = masks_with_popcount(bits, ones).collect();
                let slow: Vec<u64> =
                    (0..1u64 << bits).filter(|m| m.count_ones() as usize == ones).collect();
                assert_eq!(fast, slow, "bits={bits} ones={ones}");
            }
        }
    }

    #[test]
    fn candidate_counts() {
        let seven = christofides_host();
        assert_eq!(candidate_subgraphs(&seven, 3).unwrap().len(), 99);
        let mut eight = seven.clone();
        eight.add_edge(0, 2).unwrap();
        assert_eq!(candidate_subgraphs(&eight, 3).unwrap().len(), 219);
        assert_eq!(candidate_subgraphs(&seven, 0).unwrap().len(), 128);
        let list = candidate_subgraphs(&seven, 3).unwrap();
        assert!(list.windows(2).all(|w| w[0] < w[1]));
        assert!(candidate_subgraphs(&complete(7).unwrap(), 3).is_err());
    }

    #[test]
    fn host_edge_masks() {
        let host = christofides_host();
        let he = HostEdges::new(&host);
        assert_eq!(he.len(), 7);
        assert_eq!(he.subgraph(0x7f), host);
        for mask in [0u32, 1, 0x15, 0x60] {
            assert_eq!(he.mask_of(&he.subgraph(mask)), Some(mask));
        }
        let mut outside = Graph::empty(6).unwrap();
        outside.add_edge(0, 5).unwrap();
        assert_eq!(he.mask_of(&outside), None);
    }
}
