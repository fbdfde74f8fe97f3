//! Multipartite constructions of intersecting families and their densities.
//!
//! For `H = K_{s_1,...,s_{k-1},t}` the host is `G = K_{s_1,...,s_{k-1},t+2}`.
//! Each `w` in the last part gives `G_w`, the host with every edge at `w`
//! removed; two distinct `G_w` meet in a copy of `H`. The family keeps `G`
//! plus every proper supergraph of each `G_w` inside `G`.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use crate::density::DyadicDensity;
use crate::detect::Pattern;
use crate::error::{invalid, Error, Result};
use crate::graph::{complete_multipartite, pair_count, EdgeSet, Graph, MAX_VERTICES};

/// Upper limit on materialized family members.
pub const MAX_MEMBERS: usize = 1 << 20;

/// Part sizes `s_1..s_{k-1}` and the final part size `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionSpec {
    s: Vec<usize>,
    t: usize,
}

impl ConstructionSpec {
    pub fn new(s: Vec<usize>, t: usize) -> Result<Self> {
        if s.is_empty() {
            return invalid("need at least one part before the final part");
        }
        if s.contains(&0) || t == 0 {
            return invalid("part sizes must be positive");
        }
        Ok(ConstructionSpec { s, t })
    }

    pub fn s(&self) -> &[usize] {
        &self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// `m = s_1 + ... + s_{k-1}`.
    pub fn m(&self) -> usize {
        self.s.iter().sum()
    }

    /// Whether `t >= 2^m`, the condition under which the family beats the trivial bound.
    pub fn meets_threshold(&self) -> bool {
        BigUint::from(self.t) >= BigUint::one() << self.m()
    }

    pub fn target_parts(&self) -> Vec<usize> {
        self.with_last(self.t)
    }

    pub fn host_parts(&self) -> Vec<usize> {
        self.with_last(self.t + 2)
    }

    fn with_last(&self, last: usize) -> Vec<usize> {
        let mut p = self.s.clone();
        p.push(last);
        p
    }

    /// `K_{s_1,...,s_{k-1},t}`.
    pub fn target(&self) -> Result<Graph> {
        complete_multipartite(&self.target_parts())
    }

    pub fn host(&self) -> Result<Graph> {
        complete_multipartite(&self.host_parts())
    }

    /// `e(K_{s_1,...,s_{k-1},t+2})`, computed without building the graph.
    pub fn host_edge_count(&self) -> usize {
        multipartite_edges(&self.host_parts())
    }

    pub fn target_edge_count(&self) -> usize {
        multipartite_edges(&self.target_parts())
    }

    /// `(t+2)(2^m - 1) + 1`.
    pub fn family_size(&self) -> BigUint {
        BigUint::from(self.t + 2) * ((BigUint::one() << self.m()) - 1u32) + 1u32
    }

    pub fn density(&self) -> DyadicDensity {
        DyadicDensity::new(self.family_size(), self.host_edge_count() as u64)
    }

    /// The subgraphs `G_w`, one per vertex `w` of the last host part, in vertex order.
    pub fn deleted_vertex_subgraphs(&self) -> Result<Vec<Graph>> {
        let host = self.host()?;
        let m = self.m();
        (m..host.n())
            .map(|w| {
                let mut g = host.clone();
                for v in 0..m {
                    g.remove_edge(v, w)?;
                }
                Ok(g)
            })
            .collect()
    }
}

fn multipartite_edges(parts: &[usize]) -> usize {
    let total: usize = parts.iter().sum();
    parts.iter().map(|&p| p * (total - p)).sum::<usize>() / 2
}

/// Distinct edge subsets of one host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgraphFamily {
    host: Graph,
    members: Vec<Graph>,
}

impl SubgraphFamily {
    pub fn new(host: Graph, members: Vec<Graph>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(members.len());
        for (i, g) in members.iter().enumerate() {
            if !g.is_edge_subset_of(&host) {
                return invalid(format!("member {i} is not a subgraph of the host"));
            }
            if !seen.insert(g.edge_set()) {
                return invalid(format!("member {i} repeats an earlier member"));
            }
        }
        Ok(SubgraphFamily { host, members })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn members(&self) -> &[Graph] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn density(&self) -> DyadicDensity {
        DyadicDensity::new(self.members.len() as u64, self.host.edge_count() as u64)
    }
}

/// A generated family together with its host and density.
#[derive(Clone, Debug)]
pub struct Construction {
    pub spec: ConstructionSpec,
    pub family: SubgraphFamily,
    pub density: DyadicDensity,
}

/// Materializes the multipartite family for `spec`.
///
/// Members: the host first, then for each `w` in vertex order every `G_w`
/// plus a proper subset of the `m` edges at `w`, subsets ascending.
pub fn multipartite_family(spec: &ConstructionSpec) -> Result<Construction> {
    if spec.host_parts().iter().sum::<usize>() > MAX_VERTICES {
        return Err(Error::UnsupportedSize(format!(
            "host K_{:?} exceeds {MAX_VERTICES} vertices",
            spec.host_parts()
        )));
    }
    if spec.family_size() > BigUint::from(MAX_MEMBERS) {
        return Err(Error::UnsupportedSize(format!(
            "family of {} members exceeds the {MAX_MEMBERS} limit",
            spec.family_size()
        )));
    }
    let host = spec.host()?;
    let m = spec.m();
    let mut seen: HashSet<EdgeSet> = HashSet::new();
    let mut members = vec![host.clone()];
    seen.insert(host.edge_set().clone());
    for (k, g_w) in spec.deleted_vertex_subgraphs()?.into_iter().enumerate() {
        let w = m + k;
        for subset in 0u64..(1 << m) - 1 {
            let mut g = g_w.clone();
            for v in 0..m {
                if subset >> v & 1 == 1 {
                    g.add_edge(v, w)?;
                }
            }
            if seen.insert(g.edge_set().clone()) {
                members.push(g);
            }
        }
    }
    let family = SubgraphFamily::new(host, members)?;
    let density = family.density();
    Ok(Construction { spec: spec.clone(), family, density })
}

/// `1 / 2^e(target)`.
pub fn trivial_density(target: &Graph) -> DyadicDensity {
    DyadicDensity::unit_fraction(target.edge_count() as u64)
}

/// Both sides of `(t+2)(2^m - 1) + 1 > 2^{2m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Margin {
    pub lhs: BigUint,
    pub rhs: BigUint,
}

impl Margin {
    pub fn improves(&self) -> bool {
        self.lhs > self.rhs
    }
}

pub fn improvement_margin(spec: &ConstructionSpec) -> Margin {
    Margin { lhs: spec.family_size(), rhs: BigUint::one() << (2 * spec.m()) }
}

/// Members `i <= j` whose intersection misses the target.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FailingPair {
    pub first: usize,
    pub second: usize,
}

impl fmt::Display for FailingPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.first == self.second {
            write!(f, "member {} does not contain the target", self.first)
        } else {
            write!(f, "members {} and {} do not share a copy of the target", self.first, self.second)
        }
    }
}

/// Checks every pair of distinct members (and each member alone when
/// `require_self`) for a copy of `target` in the intersection. Returns the
/// first failure in `(first, second)` lexicographic order.
pub fn verify_intersecting(
    family: &SubgraphFamily,
    target: &Graph,
    require_self: bool,
) -> std::result::Result<(), FailingPair> {
    let pattern = Pattern::new(target);
    let members = family.members();
    let failure = (0..members.len()).into_par_iter().find_map_first(|i| {
        let start = if require_self { i } else { i + 1 };
        (start..members.len()).find_map(|j| {
            let common = members[i].with_edges(members[i].edge_set().and(members[j].edge_set()));
            let ok = common.map(|g| pattern.is_contained_in(&g)).unwrap_or(false);
            (!ok).then_some(FailingPair { first: i, second: j })
        })
    });
    match failure {
        Some(pair) => Err(pair),
        None => Ok(()),
    }
}

/// Outcome of checking a list of subgraphs `H_1..H_N` of a host for the
/// pairwise-intersection and pairwise-covering conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecipeReport {
    /// Every `H_i ∩ H_j`, including `i = j`, contains the target.
    pub intersection_property: bool,
    /// Every `E(H_i) ∪ E(H_j)` with `i != j` is the whole host edge set.
    pub disjoint_complement: bool,
    /// `1 + Σ (2^{e(G) - e(H_i)} - 1)`, present only when both conditions hold.
    pub family_size: Option<BigUint>,
}

pub fn recipe_check(host: &Graph, subgraphs: &[Graph], target: &Graph) -> Result<RecipeReport> {
    // Rejects duplicates and non-subgraphs.
    let family = SubgraphFamily::new(host.clone(), subgraphs.to_vec())?;
    let intersection_property = verify_intersecting(&family, target, true).is_ok();
    let disjoint_complement = subgraphs.iter().enumerate().all(|(i, a)| {
        subgraphs[i + 1..].iter().all(|b| a.edge_set().or(b.edge_set()) == *host.edge_set())
    });
    let family_size = (intersection_property && disjoint_complement).then(|| {
        let e = host.edge_count();
        subgraphs.iter().fold(BigUint::one(), |acc, h| {
            acc + (BigUint::one() << (e - h.edge_count())) - 1u32
        })
    });
    Ok(RecipeReport { intersection_property, disjoint_complement, family_size })
}

/// Size of the lifted family on `K_n`: `k · 2^(C(n,2) - e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedCount {
    pub family_size: BigUint,
    pub exponent: u64,
    /// Written out when `C(n,2) <= 128`.
    pub exact: Option<BigUint>,
}

impl fmt::Display for LiftedCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family_size.is_one() {
            write!(f, "2^{}", self.exponent)?;
        } else {
            write!(f, "{} · 2^{}", self.family_size, self.exponent)?;
        }
        if let Some(exact) = &self.exact {
            write!(f, " = {exact}")?;
        }
        Ok(())
    }
}

pub fn lifted_count(family_size: impl Into<BigUint>, host_edges: usize, n: usize) -> Result<LiftedCount> {
    let pairs = pair_count(n);
    if pairs < host_edges {
        return invalid(format!("K_{n} has {pairs} edges, fewer than the host's {host_edges}"));
    }
    let family_size = family_size.into();
    let exponent = (pairs - host_edges) as u64;
    let exact = (pairs <= 128).then(|| &family_size << exponent);
    Ok(LiftedCount { family_size, exponent, exact })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, path};

    fn spec(s: &[usize], t: usize) -> ConstructionSpec {
        ConstructionSpec::new(s.to_vec(), t).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(ConstructionSpec::new(vec![], 3).is_err());
        assert!(ConstructionSpec::new(vec![1, 0], 3).is_err());
        assert!(ConstructionSpec::new(vec![1], 0).is_err());
        assert!(spec(&[2], 4).meets_threshold());
        assert!(!spec(&[2], 3).meets_threshold());
    }

    #[test]
    fn family_examples() {
        let c = multipartite_family(&spec(&[2], 4)).unwrap();
        assert_eq!(c.family.len(), 19);
        assert_eq!(c.family.host().edge_count(), 12);
        assert_eq!(c.density, DyadicDensity::new(19u32, 12));

        let c = multipartite_family(&spec(&[1], 2)).unwrap();
        assert_eq!(c.family.len(), 5);
        assert_eq!(c.density.to_string(), "5/2^4");
        assert!(verify_intersecting(&c.family, &path(3).unwrap(), true).is_ok());

        let c = multipartite_family(&spec(&[5], 32)).unwrap();
        assert_eq!(c.family.len(), 1055);
        assert_eq!(c.family.host().edge_count(), 170);
    }

    #[test]
    fn oversize_is_rejected() {
        assert!(matches!(
            multipartite_family(&spec(&[10], 60)),
            Err(Error::UnsupportedSize(_))
        ));
        assert!(matches!(
            multipartite_family(&spec(&[21], 1)),
            Err(Error::UnsupportedSize(_))
        ));
    }

    #[test]
    fn recipe_examples() {
        let s = spec(&[1], 2);
        let report =
            recipe_check(&s.host().unwrap(), &s.deleted_vertex_subgraphs().unwrap(), &s.target().unwrap())
                .unwrap();
        assert!(report.intersection_property && report.disjoint_complement);
        assert_eq!(report.family_size, Some(BigUint::from(5u32)));

        let k3 = complete(3).unwrap();
        let two = |a, b| Graph::from_edges(3, &[a, b]).unwrap();
        let edge = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let report = recipe_check(&k3, &[two((0, 1), (1, 2)), two((0, 1), (0, 2))], &edge).unwrap();
        assert_eq!(
            report,
            RecipeReport {
                intersection_property: true,
                disjoint_complement: true,
                family_size: Some(BigUint::from(3u32)),
            }
        );

        let p4 = path(4).unwrap();
        let split = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let report = recipe_check(&p4, &[p4.clone(), split], &p4).unwrap();
        assert!(!report.intersection_property);
        assert_eq!(report.family_size, None);

        assert!(recipe_check(&k3, &[k3.clone(), k3.clone()], &edge).is_err());
    }

    #[test]
    fn verify_reports_first_failure() {
        let k3 = complete(3).unwrap();
        let lone = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let edge = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let fam = SubgraphFamily::new(k3.clone(), vec![k3.clone(), lone]).unwrap();
        assert!(verify_intersecting(&fam, &edge, false).is_ok());

        let other = Graph::from_edges(3, &[(1, 2)]).unwrap();
        let empty = Graph::empty(3).unwrap();
        let fam = SubgraphFamily::new(k3, vec![other.clone(), empty, Graph::from_edges(3, &[(0, 2)]).unwrap()])
            .unwrap();
        assert_eq!(
            verify_intersecting(&fam, &edge, false),
            Err(FailingPair { first: 0, second: 1 })
        );
        assert_eq!(
            verify_intersecting(&fam, &edge, true),
            Err(FailingPair { first: 0, second: 1 })
        );
    }

    #[test]
    fn trivial_densities() {
        assert_eq!(trivial_density(&path(4).unwrap()).to_string(), "1/2^3");
        let k24 = complete_multipartite(&[2, 4]).unwrap();
        assert_eq!(trivial_density(&k24), DyadicDensity::new(16u32, 12));
        assert_eq!(trivial_density(&Graph::empty(3).unwrap()), DyadicDensity::new(1u32, 0));
    }

    #[test]
    fn margins() {
        let m = improvement_margin(&spec(&[1], 2));
        assert_eq!((m.lhs, m.rhs), (BigUint::from(5u32), BigUint::from(4u32)));
        let m = improvement_margin(&spec(&[1, 1], 4));
        assert_eq!((m.lhs, m.rhs), (BigUint::from(19u32), BigUint::from(16u32)));
        let m = improvement_margin(&spec(&[5], 32));
        assert_eq!((m.lhs.clone(), m.rhs.clone()), (BigUint::from(1055u32), BigUint::from(1024u32)));
        assert!(m.improves());
    }

    #[test]
    fn lifted_counts() {
        let l = lifted_count(17u32, 7, 6).unwrap();
        assert_eq!(l.to_string(), "17 · 2^8 = 4352");
        let l = lifted_count(1u32, 3, 4).unwrap();
        assert_eq!(l.to_string(), "2^3 = 8");
        let l = lifted_count(19u32, 12, 8).unwrap();
        assert_eq!((l.exponent, l.exact), (16, Some(BigUint::from(19u32 << 16))));
        let l = lifted_count(1055u32, 170, 39).unwrap();
        assert_eq!(l.exponent, 741 - 170);
        assert_eq!(l.exact, None);
        assert!(lifted_count(17u32, 7, 4).is_err());
    }
}
