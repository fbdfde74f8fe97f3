//! Small labeled graphs stored as an edge bitset.
//!
//! Unordered pairs `{i, j}` with `i < j` are indexed column by column through the
//! upper triangle, `j(j-1)/2 + i`. This is the bit order graph6 uses, so
//! serialization is a straight copy of the bitset.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{invalid, Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

/// Largest vertex count accepted by [`Graph::canonical_key`].
pub const MAX_CANONICAL_VERTICES: usize = 8;

/// Number of unordered pairs on `n` vertices.
pub const fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Bit position of the unordered pair `{i, j}` in a graph on `n` vertices.
pub fn edge_index(i: usize, j: usize, n: usize) -> Result<usize> {
    if i == j {
        return invalid(format!("loop at vertex {i}"));
    }
    if i >= n || j >= n {
        return invalid(format!("pair ({i}, {j}) out of range for {n} vertices"));
    }
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    Ok(pair_index(lo, hi))
}

#[inline]
pub(crate) fn pair_index(lo: usize, hi: usize) -> usize {
    hi * (hi - 1) / 2 + lo
}

/// Fixed-width bitset over edge positions.
///
/// Ordering compares the sets as unsigned integers (bit 0 least significant),
/// which is the order used for canonical keys and deterministic output.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct EdgeSet {
    words: Vec<u64>,
}

impl EdgeSet {
    pub fn with_len(bits: usize) -> Self {
        EdgeSet { words: vec![0; bits.div_ceil(64)] }
    }

    pub fn from_words(words: Vec<u64>) -> Self {
        EdgeSet { words }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, bit: usize) -> bool {
        self.words
            .get(bit / 64)
            .is_some_and(|w| w >> (bit % 64) & 1 == 1)
    }

    #[inline]
    pub fn insert(&mut self, bit: usize) {
        self.words[bit / 64] |= 1 << (bit % 64);
    }

    #[inline]
    pub fn remove(&mut self, bit: usize) {
        self.words[bit / 64] &= !(1 << (bit % 64));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Positions of set bits in ascending order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(k * 64 + b)
            })
        })
    }

    pub fn and(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn or(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(k, &w)| w & !other.words.get(k).copied().unwrap_or(0) == 0)
    }

    /// Lower-case hexadecimal rendering of the set read as an integer.
    pub fn to_hex(&self) -> String {
        let mut hi = self.words.len();
        while hi > 0 && self.words[hi - 1] == 0 {
            hi -= 1;
        }
        if hi == 0 {
            return "0".to_string();
        }
        let mut s = format!("{:x}", self.words[hi - 1]);
        for w in self.words[..hi - 1].iter().rev() {
            s.push_str(&format!("{w:016x}"));
        }
        s
    }

    /// Parses a hexadecimal integer (optional `0x` prefix) into a set of `bits` positions.
    pub fn from_hex(text: &str, bits: usize) -> Result<EdgeSet> {
        let digits = text.trim().trim_start_matches("0x");
        if digits.is_empty() {
            return Err(Error::Parse("empty hex bitmask".into()));
        }
        let mut set = EdgeSet::with_len(bits);
        for (pos, c) in digits.chars().rev().enumerate() {
            let v = c
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("bad hex digit {c:?}")))?;
            for b in 0..4 {
                if v >> b & 1 == 1 {
                    let bit = pos * 4 + b;
                    if bit >= bits {
                        return Err(Error::Parse(format!(
                            "bitmask {text} exceeds {bits} edge positions"
                        )));
                    }
                    set.insert(bit);
                }
            }
        }
        Ok(set)
    }
}

impl Ord for EdgeSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let len = self.words.len().max(other.words.len());
        for k in (0..len).rev() {
            let a = self.words.get(k).copied().unwrap_or(0);
            let b = other.words.get(k).copied().unwrap_or(0);
            match a.cmp(&b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for EdgeSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeSet(0x{})", self.to_hex())
    }
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: EdgeSet,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        if n == 0 || n > MAX_VERTICES {
            return invalid(format!("vertex count {n} outside 1..={MAX_VERTICES}"));
        }
        Ok(Graph { n, edges: EdgeSet::with_len(pair_count(n)) })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    /// Wraps an edge bitset; every set bit must address a pair on `n` vertices.
    pub fn from_edge_set(n: usize, edges: EdgeSet) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        let pairs = pair_count(n);
        if let Some(bad) = edges.ones().find(|&b| b >= pairs) {
            return invalid(format!("edge bit {bad} out of range for {n} vertices"));
        }
        for b in edges.ones() {
            g.edges.insert(b);
        }
        Ok(g)
    }

    /// Graph on `n <= 8` vertices from the integer form of its edge bitset.
    pub fn from_mask(n: usize, mask: u64) -> Result<Graph> {
        Graph::from_edge_set(n, EdgeSet::from_words(vec![mask]))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.count()
    }

    pub fn edge_set(&self) -> &EdgeSet {
        &self.edges
    }

    /// Low 64 bits of the edge bitset; the whole set when `n <= 11`.
    pub fn mask(&self) -> u64 {
        self.edges.words().first().copied().unwrap_or(0)
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        let e = edge_index(i, j, self.n)?;
        self.edges.insert(e);
        Ok(())
    }

    pub fn remove_edge(&mut self, i: usize, j: usize) -> Result<()> {
        let e = edge_index(i, j, self.n)?;
        self.edges.remove(e);
        Ok(())
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && i < self.n && j < self.n && self.edges.contains(pair_index(i.min(j), i.max(j)))
    }

    /// Edges as `(i, j)` with `i < j`, in bit order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.n).flat_map(move |j| {
            (0..j).filter_map(move |i| self.edges.contains(pair_index(i, j)).then_some((i, j)))
        })
    }

    /// Neighborhood of each vertex as a bitmask.
    pub fn adjacency(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.n];
        for (i, j) in self.edges() {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency().iter().map(|a| a.count_ones() as usize).collect()
    }

    /// True when every edge of `self` is also an edge of `other`.
    pub fn is_edge_subset_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.edges.is_subset(&other.edges)
    }

    /// Same vertex set, edge bitset replaced.
    pub fn with_edges(&self, edges: EdgeSet) -> Result<Graph> {
        Graph::from_edge_set(self.n, edges)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn apply_permutation(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return invalid(format!(
                "permutation of length {} for {} vertices",
                perm.len(),
                self.n
            ));
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen >> p & 1 == 1 {
                return invalid(format!("{perm:?} is not a permutation"));
            }
            seen |= 1 << p;
        }
        let mut out = Graph::empty(self.n)?;
        for (i, j) in self.edges() {
            out.add_edge(perm[i], perm[j])?;
        }
        Ok(out)
    }

    /// Minimum edge bitset over all vertex relabelings.
    pub fn canonical_key(&self) -> Result<CanonicalKey> {
        if self.n > MAX_CANONICAL_VERTICES {
            return Err(Error::UnsupportedSize(format!(
                "canonical key needs n <= {MAX_CANONICAL_VERTICES}, got {}",
                self.n
            )));
        }
        Ok(CanonicalKey { n: self.n, key: canonical_mask(self.n, self.mask()) })
    }

    /// Plain edge-list text: a `n m` header line then one `i j` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edge_count());
        for (i, j) in self.edges() {
            s.push_str(&format!("{i} {j}\n"));
        }
        s
    }

    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty edge list".into()))?;
        let [n, m] = parse_pair(header)?;
        let mut g = Graph::empty(n).map_err(|e| Error::Parse(e.to_string()))?;
        let mut count = 0;
        for line in lines {
            let [i, j] = parse_pair(line)?;
            g.add_edge(i, j).map_err(|e| Error::Parse(e.to_string()))?;
            count += 1;
        }
        if count != m {
            return Err(Error::Parse(format!("header declares {m} edges, found {count}")));
        }
        Ok(g)
    }
}

fn parse_pair(line: &str) -> Result<[usize; 2]> {
    let nums: Vec<usize> = line
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad integer {t:?}"))))
        .collect::<Result<_>>()?;
    match nums[..] {
        [a, b] => Ok([a, b]),
        _ => Err(Error::Parse(format!("expected two integers, got {line:?}"))),
    }
}

/// Isomorphism-class representative: the smallest permuted edge bitset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    pub n: usize,
    pub key: u64,
}

impl CanonicalKey {
    pub fn to_graph(&self) -> Graph {
        Graph::from_mask(self.n, self.key).expect("canonical key addresses valid pairs")
    }
}

/// Edge-position images under every permutation of `0..n`, flattened.
struct PermTable {
    pairs: usize,
    images: Vec<u8>,
}

fn perm_table(n: usize) -> &'static PermTable {
    static TABLES: [OnceLock<PermTable>; MAX_CANONICAL_VERTICES + 1] =
        [const { OnceLock::new() }; MAX_CANONICAL_VERTICES + 1];
    TABLES[n].get_or_init(|| {
        let pairs = pair_count(n);
        let mut images = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            for j in 1..n {
                for i in 0..j {
                    let (a, b) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
                    images.push(pair_index(a, b) as u8);
                }
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        PermTable { pairs, images }
    })
}

fn canonical_mask(n: usize, mask: u64) -> u64 {
    let table = perm_table(n);
    if table.pairs == 0 {
        return 0;
    }
    let set: Vec<usize> = EdgeSet::from_words(vec![mask]).ones().collect();
    table
        .images
        .chunks_exact(table.pairs)
        .map(|img| set.iter().fold(0u64, |acc, &e| acc | 1 << img[e]))
        .min()
        .unwrap_or(0)
}

/// Whether `mask` is already the minimum over all relabelings; stops at the
/// first smaller image.
pub(crate) fn is_canonical_mask(n: usize, mask: u64) -> bool {
    let table = perm_table(n);
    if table.pairs == 0 {
        return true;
    }
    let set: Vec<usize> = EdgeSet::from_words(vec![mask]).ones().collect();
    table
        .images
        .chunks_exact(table.pairs)
        .all(|img| set.iter().fold(0u64, |acc, &e| acc | 1 << img[e]) >= mask)
}

/// Advances to the next permutation in lexicographic order.
pub fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Complete multipartite graph; parts occupy consecutive vertex ranges in argument order.
pub fn complete_multipartite(parts: &[usize]) -> Result<Graph> {
    if parts.is_empty() {
        return invalid("empty part list");
    }
    if parts.contains(&0) {
        return invalid("zero-sized part");
    }
    let n: usize = parts.iter().sum();
    if n > MAX_VERTICES {
        return Err(Error::UnsupportedSize(format!(
            "{n} vertices exceeds the {MAX_VERTICES}-vertex limit"
        )));
    }
    let mut label = Vec::with_capacity(n);
    for (p, &size) in parts.iter().enumerate() {
        label.extend(std::iter::repeat_n(p, size));
    }
    let mut g = Graph::empty(n)?;
    for j in 1..n {
        for i in 0..j {
            if label[i] != label[j] {
                g.edges.insert(pair_index(i, j));
            }
        }
    }
    Ok(g)
}

pub fn path(k: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..k).map(|v| (v - 1, v)).collect();
    Graph::from_edges(k, &edges)
}

pub fn cycle(k: usize) -> Result<Graph> {
    if k < 3 {
        return invalid(format!("cycle needs at least 3 vertices, got {k}"));
    }
    let edges: Vec<_> = (0..k).map(|v| (v, (v + 1) % k)).collect();
    Graph::from_edges(k, &edges)
}

pub fn complete(k: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..k).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    Graph::from_edges(k, &edges)
}

/// The 6-vertex, 7-edge host carrying the 17-member P4-intersecting family.
///
/// Vertex labels: `a=0` (top row), `b=1, c=2` (middle row), `d=3, e=4, f=5`
/// (bottom row). It is `K_{2,3}` on `{b,c} x {d,e,f}` with a pendant `a` at `b`.
pub fn christofides_host() -> Graph {
    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;
    const D: usize = 3;
    const E: usize = 4;
    const F: usize = 5;
    Graph::from_edges(6, &[(A, B), (B, D), (D, C), (E, B), (E, C), (F, B), (F, C)])
        .expect("fixed host is well formed")
}

/// Resolves a built-in graph name: `p<k>`, `c<k>`, `k<k>`, `k<a,b,...>`,
/// `star<k>` (k leaves) or `christofides`.
pub fn builtin(name: &str) -> Option<Graph> {
    let lower = name.trim().to_ascii_lowercase();
    if lower == "christofides" {
        return Some(christofides_host());
    }
    let num = |rest: &str| rest.parse::<usize>().ok();
    if let Some(rest) = lower.strip_prefix("star") {
        return num(rest).and_then(|k| complete_multipartite(&[1, k]).ok());
    }
    if let Some(rest) = lower.strip_prefix('p') {
        return num(rest).and_then(|k| path(k).ok());
    }
    if let Some(rest) = lower.strip_prefix('c') {
        return num(rest).and_then(|k| cycle(k).ok());
    }
    if let Some(rest) = lower.strip_prefix('k') {
        let rest = rest.trim_start_matches('{').trim_end_matches('}');
        if rest.contains(',') {
            let parts: Option<Vec<usize>> = rest.split(',').map(|p| p.trim().parse().ok()).collect();
            return parts.and_then(|p| complete_multipartite(&p).ok());
        }
        return num(rest).and_then(|k| complete(k).ok());
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_index_examples() {
        assert_eq!(edge_index(0, 1, 4), Ok(0));
        assert_eq!(edge_index(2, 3, 4), Ok(5));
        assert_eq!(edge_index(0, 3, 6), Ok(3));
        assert_eq!(edge_index(3, 0, 6), Ok(3));
        assert!(matches!(edge_index(2, 2, 4), Err(Error::InvalidArgument(_))));
        assert!(matches!(edge_index(1, 4, 4), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn edge_index_is_bijective() {
        for n in 1..=10 {
            let mut hit = vec![false; pair_count(n)];
            for j in 0..n {
                for i in 0..j {
                    let e = edge_index(i, j, n).unwrap();
                    assert!(!hit[e], "collision at {e}");
                    hit[e] = true;
                }
            }
            assert!(hit.iter().all(|&h| h));
        }
    }

    #[test]
    fn permutation_examples() {
        let g = christofides_host();
        assert_eq!(g.apply_permutation(&[0, 1, 2, 3, 4, 5]).unwrap(), g);

        let single = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let swapped = single.apply_permutation(&[0, 2, 1]).unwrap();
        assert_eq!(swapped, Graph::from_edges(3, &[(0, 2)]).unwrap());

        let p = path(3).unwrap();
        let rotated = p.apply_permutation(&[1, 2, 0]).unwrap();
        assert_eq!(rotated, Graph::from_edges(3, &[(1, 2), (2, 0)]).unwrap());
        assert_eq!(rotated.canonical_key(), p.canonical_key());

        assert!(g.apply_permutation(&[0, 0, 1, 2, 3, 4]).is_err());
        assert!(g.apply_permutation(&[0, 1, 2]).is_err());
    }

    #[test]
    fn canonical_key_examples() {
        let p = path(4).unwrap();
        let q = Graph::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(p.canonical_key().unwrap(), q.canonical_key().unwrap());
        let star = complete_multipartite(&[1, 3]).unwrap();
        assert_ne!(p.canonical_key().unwrap(), star.canonical_key().unwrap());
        assert!(matches!(Graph::empty(9).unwrap().canonical_key(), Err(Error::UnsupportedSize(_))));
    }

    #[test]
    fn canonical_key_is_a_relabeling() {
        let g = christofides_host();
        let key = g.canonical_key().unwrap();
        let back = key.to_graph();
        assert_eq!(back.edge_count(), 7);
        assert_eq!(back.canonical_key().unwrap(), key);
    }

    #[test]
    fn multipartite_examples() {
        let g = complete_multipartite(&[2, 6]).unwrap();
        assert_eq!((g.n(), g.edge_count()), (8, 12));
        let g = complete_multipartite(&[1, 1, 1, 10]).unwrap();
        assert_eq!((g.n(), g.edge_count()), (13, 33));
        let g = complete_multipartite(&[5]).unwrap();
        assert_eq!((g.n(), g.edge_count()), (5, 0));
        assert!(complete_multipartite(&[]).is_err());
        assert!(complete_multipartite(&[2, 0]).is_err());
        let big = complete_multipartite(&[5, 34]).unwrap();
        assert_eq!((big.n(), big.edge_count()), (39, 170));
    }

    #[test]
    fn bipartite_edge_counts() {
        for s in 1..=8 {
            for t in 1..=8 {
                let g = complete_multipartite(&[s, t]).unwrap();
                assert_eq!(g.edge_count(), s * t);
                let adj = g.adjacency();
                for (i, j) in g.edges() {
                    assert_eq!(adj[i] & adj[j], 0, "triangle through {i}-{j}");
                }
            }
        }
    }

    #[test]
    fn christofides_degrees() {
        let g = christofides_host();
        assert_eq!((g.n(), g.edge_count()), (6, 7));
        let mut d = g.degrees();
        d.sort();
        assert_eq!(d, vec![1, 2, 2, 2, 3, 4]);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = christofides_host();
        let text = g.to_edge_list();
        assert!(text.starts_with("6 7\n"));
        assert_eq!(Graph::parse_edge_list(&text).unwrap(), g);
        assert!(Graph::parse_edge_list("3 2\n0 1\n").is_err());
        assert!(Graph::parse_edge_list("3 1\n0 3\n").is_err());
        assert!(Graph::parse_edge_list("").is_err());
    }

    #[test]
    fn hex_round_trip() {
        let g = complete_multipartite(&[5, 34]).unwrap();
        let hex = g.edge_set().to_hex();
        let back = EdgeSet::from_hex(&hex, pair_count(39)).unwrap();
        assert_eq!(&back, g.edge_set());
        assert_eq!(EdgeSet::with_len(15).to_hex(), "0");
        assert!(EdgeSet::from_hex("ffff", 15).is_err());
        assert!(EdgeSet::from_hex("0xzz", 15).is_err());
    }

    #[test]
    fn builtin_names() {
        assert_eq!(builtin("p4").unwrap(), path(4).unwrap());
        assert_eq!(builtin("K3").unwrap().edge_count(), 3);
        assert_eq!(builtin("k2,4").unwrap().edge_count(), 8);
        assert_eq!(builtin("star3").unwrap(), complete_multipartite(&[1, 3]).unwrap());
        assert_eq!(builtin("christofides").unwrap(), christofides_host());
        assert!(builtin("q7").is_none());
    }
}
