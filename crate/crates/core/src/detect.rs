//! Non-induced subgraph containment.
//!
//! Targets are matched on their non-isolated vertices only: families are edge
//! subsets of a shared vertex set, so isolated target vertices carry no
//! information and the host does not need `target.n()` vertices.

use crate::error::{invalid, Result};
use crate::graph::{complete_multipartite, Graph};

/// Edge intersection of two graphs on the same labeled vertex set.
pub fn intersection(f: &Graph, g: &Graph) -> Result<Graph> {
    if f.n() != g.n() {
        return invalid(format!("intersection of graphs on {} and {} vertices", f.n(), g.n()));
    }
    f.with_edges(f.edge_set().and(g.edge_set()))
}

/// Whether `g` contains a subgraph isomorphic to `h` (not necessarily induced).
pub fn contains_subgraph(g: &Graph, h: &Graph) -> bool {
    if h.edge_count() > g.edge_count() {
        return false;
    }
    let h_adj = h.adjacency();
    let core: Vec<usize> = (0..h.n()).filter(|&v| h_adj[v] != 0).collect();
    if core.is_empty() {
        return true;
    }
    if core.len() > g.n() {
        return false;
    }

    // Highest degree first; ties go to the vertex with more already-placed neighbors.
    let mut order = Vec::with_capacity(core.len());
    let mut placed = 0u64;
    let mut left = core.clone();
    while !left.is_empty() {
        let (pos, _) = left
            .iter()
            .enumerate()
            .max_by_key(|&(_, &v)| {
                (h_adj[v].count_ones(), (h_adj[v] & placed).count_ones(), std::cmp::Reverse(v))
            })
            .expect("non-empty");
        let v = left.remove(pos);
        placed |= 1 << v;
        order.push(v);
    }

    let g_adj = g.adjacency();
    let g_deg: Vec<u32> = g_adj.iter().map(|a| a.count_ones()).collect();
    // For each position in `order`, the earlier positions adjacent to it in h.
    let back: Vec<Vec<usize>> = order
        .iter()
        .enumerate()
        .map(|(k, &v)| (0..k).filter(|&p| h_adj[v] >> order[p] & 1 == 1).collect())
        .collect();
    let min_deg: Vec<u32> = order.iter().map(|&v| h_adj[v].count_ones()).collect();
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };

    let matcher = Matcher { g_adj: &g_adj, g_deg: &g_deg, back: &back, min_deg: &min_deg };
    let mut image = vec![0usize; order.len()];
    matcher.extend(0, all, &mut image)
}

struct Matcher<'a> {
    g_adj: &'a [u64],
    g_deg: &'a [u32],
    back: &'a [Vec<usize>],
    min_deg: &'a [u32],
}

impl Matcher<'_> {
    fn extend(&self, k: usize, free: u64, image: &mut [usize]) -> bool {
        if k == image.len() {
            return true;
        }
        let mut cands = free;
        for &p in &self.back[k] {
            cands &= self.g_adj[image[p]];
        }
        while cands != 0 {
            let v = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            if self.g_deg[v] < self.min_deg[k] {
                continue;
            }
            image[k] = v;
            if self.extend(k + 1, free & !(1 << v), image) {
                return true;
            }
        }
        false
    }
}

/// Whether `g` contains a path on four vertices.
///
/// Some edge `{u, v}` must have a neighbor `a` of `u` and a neighbor `b` of `v`,
/// both outside `{u, v}` and distinct from each other.
pub fn contains_p4(g: &Graph) -> bool {
    let adj = g.adjacency();
    g.edges().any(|(u, v)| {
        let a = adj[u] & !(1 << v);
        let b = adj[v] & !(1 << u);
        a != 0 && b != 0 && !(a == b && a.count_ones() == 1)
    })
}

/// Part sizes of a complete multipartite target `K_{s_1,...,s_k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultipartiteTarget {
    parts: Vec<usize>,
}

impl MultipartiteTarget {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return invalid("empty part list");
        }
        if parts.contains(&0) {
            return invalid("zero-sized part");
        }
        Ok(MultipartiteTarget { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn vertex_count(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn edge_count(&self) -> usize {
        let total = self.vertex_count();
        self.parts.iter().map(|&p| p * (total - p)).sum::<usize>() / 2
    }

    pub fn to_graph(&self) -> Result<Graph> {
        complete_multipartite(&self.parts)
    }

    /// Recognizes a complete multipartite graph (ignoring isolated vertices)
    /// with at least two parts.
    pub fn recognize(h: &Graph) -> Option<Self> {
        let adj = h.adjacency();
        let core: u64 = (0..h.n()).filter(|&v| adj[v] != 0).fold(0, |m, v| m | 1 << v);
        if core == 0 {
            return None;
        }
        let mut parts = Vec::new();
        let mut seen = 0u64;
        for v in 0..h.n() {
            if core >> v & 1 == 0 || seen >> v & 1 == 1 {
                continue;
            }
            let class = core & !adj[v];
            let mut rest = class;
            while rest != 0 {
                let w = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if core & !adj[w] != class {
                    return None;
                }
            }
            seen |= class;
            parts.push(class.count_ones() as usize);
        }
        Some(MultipartiteTarget { parts })
    }
}

/// Whether `g` contains `K_{parts}`: disjoint vertex sets of the given sizes
/// with every cross pair adjacent.
pub fn contains_multipartite(g: &Graph, target: &MultipartiteTarget) -> bool {
    if target.parts.len() < 2 {
        return true;
    }
    if target.vertex_count() > g.n() || target.edge_count() > g.edge_count() {
        return false;
    }
    let mut parts = target.parts.clone();
    // Smaller parts are chosen explicitly; the largest is settled by a count.
    parts.sort_unstable();
    let total = target.vertex_count();
    let adj = g.adjacency();
    let deg_ok: Vec<u64> = parts
        .iter()
        .map(|&p| {
            (0..g.n())
                .filter(|&v| adj[v].count_ones() as usize >= total - p)
                .fold(0u64, |m, v| m | 1 << v)
        })
        .collect();
    let suffix: Vec<usize> = (0..=parts.len()).map(|i| parts[i..].iter().sum()).collect();
    let search = PartSearch { adj: &adj, parts: &parts, deg_ok: &deg_ok, suffix: &suffix };
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    search.start(0, all)
}

struct PartSearch<'a> {
    adj: &'a [u64],
    parts: &'a [usize],
    deg_ok: &'a [u64],
    suffix: &'a [usize],
}

impl PartSearch<'_> {
    /// `common`: unchosen vertices adjacent to every vertex chosen so far.
    fn start(&self, part: usize, common: u64) -> bool {
        if part + 1 == self.parts.len() {
            return common.count_ones() as usize >= self.parts[part];
        }
        self.pick(part, self.parts[part], common & self.deg_ok[part], common)
    }

    fn pick(&self, part: usize, need: usize, mut cands: u64, later: u64) -> bool {
        if need == 0 {
            return self.start(part + 1, later);
        }
        if (cands.count_ones() as usize) < need {
            return false;
        }
        while cands != 0 {
            let v = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            let next_later = later & self.adj[v];
            if (next_later.count_ones() as usize) < self.suffix[part + 1] {
                continue;
            }
            if self.pick(part, need - 1, cands, next_later) {
                return true;
            }
        }
        false
    }
}

/// A target graph with the fastest applicable containment test attached.
#[derive(Clone, Debug)]
pub enum Pattern {
    /// No edges: contained in everything.
    Empty,
    P4,
    Multipartite(MultipartiteTarget),
    General(Graph),
}

impl Pattern {
    pub fn new(h: &Graph) -> Pattern {
        if h.edge_count() == 0 {
            return Pattern::Empty;
        }
        let mut deg: Vec<usize> = h.degrees().into_iter().filter(|&d| d > 0).collect();
        deg.sort_unstable();
        if deg == [1, 1, 2, 2] {
            return Pattern::P4;
        }
        match MultipartiteTarget::recognize(h) {
            Some(t) => Pattern::Multipartite(t),
            None => Pattern::General(h.clone()),
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            Pattern::Empty => 0,
            Pattern::P4 => 3,
            Pattern::Multipartite(t) => t.edge_count(),
            Pattern::General(h) => h.edge_count(),
        }
    }

    pub fn is_contained_in(&self, g: &Graph) -> bool {
        match self {
            Pattern::Empty => true,
            Pattern::P4 => contains_p4(g),
            Pattern::Multipartite(t) => contains_multipartite(g, t),
            Pattern::General(h) => contains_subgraph(g, h),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path};

    fn star(k: usize) -> Graph {
        complete_multipartite(&[1, k]).unwrap()
    }

    #[test]
    fn intersection_examples() {
        let g = crate::graph::christofides_host();
        assert_eq!(intersection(&g, &g).unwrap(), g);
        let e = Graph::empty(6).unwrap();
        assert_eq!(intersection(&g, &e).unwrap(), e);
        assert!(intersection(&g, &Graph::empty(5).unwrap()).is_err());

        // K_{1,4}: center 0, leaves 1..=4; G_w drops the edge at leaf w.
        let host = star(4);
        let g_w = |w: usize| {
            let mut h = host.clone();
            h.remove_edge(0, w).unwrap();
            h
        };
        let i = intersection(&g_w(1), &g_w(3)).unwrap();
        assert_eq!(i.edge_count(), 2);
        let cherry = Graph::from_edges(5, &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(i.canonical_key().unwrap(), cherry.canonical_key().unwrap());
        assert!(contains_subgraph(&i, &star(2)));
    }

    #[test]
    fn subgraph_examples() {
        let p4 = path(4).unwrap();
        assert!(contains_subgraph(&complete(4).unwrap(), &p4));
        assert!(!contains_subgraph(&star(3), &p4));
        assert!(contains_subgraph(&cycle(6).unwrap(), &star(2)));
        assert!(contains_subgraph(&p4, &Graph::empty(9).unwrap()));
    }

    #[test]
    fn isolated_target_vertices_are_ignored() {
        // P4 padded to 8 vertices still fits in a 4-vertex host.
        let padded = Graph::from_edges(8, &[(4, 5), (5, 6), (6, 7)]).unwrap();
        assert!(contains_subgraph(&path(4).unwrap(), &padded));
    }

    #[test]
    fn p4_examples() {
        assert!(contains_p4(&path(4).unwrap()));
        assert!(!contains_p4(&complete(3).unwrap()));
        assert!(!contains_p4(&star(5)));
        assert!(contains_p4(&crate::graph::christofides_host()));
        // Triangle plus pendant edge.
        assert!(contains_p4(&Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap()));
    }

    #[test]
    fn multipartite_examples() {
        let k26 = complete_multipartite(&[2, 6]).unwrap();
        let t24 = MultipartiteTarget::new(vec![2, 4]).unwrap();
        assert!(contains_multipartite(&k26, &t24));
        let matching = Graph::from_edges(6, &[(0, 1), (2, 3), (4, 5)]).unwrap();
        assert!(!contains_multipartite(&matching, &MultipartiteTarget::new(vec![1, 2]).unwrap()));

        // Two distinct G_w in K_{2,6}: W = vertices 2..8.
        let g_w = |w: usize| {
            let mut h = k26.clone();
            for v in 0..2 {
                h.remove_edge(v, w).unwrap();
            }
            h
        };
        let i = intersection(&g_w(2), &g_w(7)).unwrap();
        assert!(contains_multipartite(&i, &t24));
        assert!(!contains_multipartite(&i, &MultipartiteTarget::new(vec![2, 5]).unwrap()));
    }

    #[test]
    fn target_validation() {
        assert!(MultipartiteTarget::new(vec![]).is_err());
        assert!(MultipartiteTarget::new(vec![1, 0]).is_err());
        let t = MultipartiteTarget::new(vec![2, 2, 16]).unwrap();
        assert_eq!(t.edge_count(), 68);
    }

    #[test]
    fn recognizes_multipartite_shapes() {
        let t = MultipartiteTarget::recognize(&complete_multipartite(&[1, 1, 4]).unwrap()).unwrap();
        let mut parts = t.parts().to_vec();
        parts.sort();
        assert_eq!(parts, vec![1, 1, 4]);
        assert!(MultipartiteTarget::recognize(&path(4).unwrap()).is_none());
        assert!(matches!(Pattern::new(&path(4).unwrap()), Pattern::P4));
        assert!(matches!(Pattern::new(&cycle(5).unwrap()), Pattern::General(_)));
        assert!(matches!(Pattern::new(&cycle(4).unwrap()), Pattern::Multipartite(_)));
    }

    #[test]
    fn k38_in_thirteen_vertices() {
        let g = complete_multipartite(&[3, 10]).unwrap();
        assert!(contains_multipartite(&g, &MultipartiteTarget::new(vec![3, 8]).unwrap()));
        assert!(!contains_multipartite(&g, &MultipartiteTarget::new(vec![4, 8]).unwrap()));
    }
}
