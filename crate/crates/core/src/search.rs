//! Exhaustive search over host classes and its JSONL persistence.
//!
//! Every host is built and solved independently, so hosts are spread over a
//! worker pool; records are sorted by canonical key before writing, which
//! makes the output independent of the worker count.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clique::build_compatibility;
use crate::construct::{verify_intersecting, SubgraphFamily};
use crate::density::DyadicDensity;
use crate::enumerate::{connected_graphs, HostClass};
use crate::error::{Error, Result};
use crate::graph::{pair_count, CanonicalKey, EdgeSet, Graph};
use crate::graph6::{emit_graph6, parse_graph6};

/// Environment variable holding the default worker count.
pub const JOBS_ENV: &str = "HFAM_JOBS";

/// One solved host.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub host_graph6: String,
    pub n: usize,
    pub m: usize,
    pub clique_size: usize,
    /// `clique_size/2^m`.
    pub density: String,
    /// Edge bitsets of the witness members, ascending by compatibility vertex.
    pub witness_hex: Vec<String>,
    /// Zero unless timings were requested.
    pub elapsed_ms: u64,
}

impl SearchRecord {
    pub fn host(&self) -> Result<Graph> {
        parse_graph6(&self.host_graph6)
    }

    pub fn members(&self) -> Result<Vec<Graph>> {
        let host = self.host()?;
        self.witness_hex
            .iter()
            .map(|h| Graph::from_edge_set(host.n(), EdgeSet::from_hex(h, pair_count(host.n()))?))
            .collect()
    }

    /// Re-checks the record: header fields, density string, and that the
    /// witness is a `target`-intersecting family whose members contain `target`.
    pub fn verify(&self, target: &Graph) -> Result<()> {
        let violation = |msg: String| Err(Error::Violation(format!("{}: {msg}", self.host_graph6)));
        let host = self.host()?;
        if host.n() != self.n || host.edge_count() != self.m {
            return violation(format!("header says n={} m={}", self.n, self.m));
        }
        let density: DyadicDensity = self.density.parse()?;
        if density.numerator() != &self.clique_size.into() || density.exponent() != self.m as u64 {
            return violation(format!("density {} does not match clique size", self.density));
        }
        if self.witness_hex.len() != self.clique_size {
            return violation(format!(
                "{} witness members for clique size {}",
                self.witness_hex.len(),
                self.clique_size
            ));
        }
        let family = match SubgraphFamily::new(host, self.members()?) {
            Ok(f) => f,
            Err(e) => return violation(e.to_string()),
        };
        match verify_intersecting(&family, target, true) {
            Ok(()) => Ok(()),
            Err(pair) => violation(pair.to_string()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub n: usize,
    pub edge_counts: Vec<usize>,
    pub target: Graph,
    pub connected: bool,
    pub jobs: usize,
    /// Fill `elapsed_ms`; output is then no longer reproducible byte for byte.
    pub timings: bool,
}

#[derive(Clone, Debug)]
pub struct SearchSummary {
    pub hosts: usize,
    pub hosts_by_edges: BTreeMap<usize, usize>,
    pub max_clique_by_edges: BTreeMap<usize, usize>,
    /// Highest density over all hosts, in its stored `k/2^m` form.
    pub max_density: Option<DyadicDensity>,
    /// graph6 of every host attaining `max_density`.
    pub argmax: Vec<String>,
}

impl SearchSummary {
    pub fn from_records(records: &[SearchRecord]) -> Result<Self> {
        let mut hosts_by_edges = BTreeMap::new();
        let mut max_clique_by_edges = BTreeMap::new();
        let mut max_density: Option<DyadicDensity> = None;
        let mut argmax = Vec::new();
        for r in records {
            *hosts_by_edges.entry(r.m).or_insert(0) += 1;
            let best = max_clique_by_edges.entry(r.m).or_insert(0);
            *best = (*best).max(r.clique_size);
            let d: DyadicDensity = r.density.parse()?;
            match &max_density {
                Some(cur) if d < *cur => {}
                Some(cur) if d == *cur => argmax.push(r.host_graph6.clone()),
                _ => {
                    max_density = Some(d);
                    argmax = vec![r.host_graph6.clone()];
                }
            }
        }
        Ok(SearchSummary {
            hosts: records.len(),
            hosts_by_edges,
            max_clique_by_edges,
            max_density,
            argmax,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let by_edges: BTreeMap<String, serde_json::Value> = self
            .hosts_by_edges
            .iter()
            .map(|(m, count)| {
                (
                    m.to_string(),
                    serde_json::json!({
                        "hosts": count,
                        "max_clique": self.max_clique_by_edges.get(m),
                    }),
                )
            })
            .collect();
        serde_json::json!({
            "hosts": self.hosts,
            "by_edges": by_edges,
            "max_density": self.max_density.as_ref().map(|d| d.normalized().to_string()),
            "max_density_ratio": self.max_density.as_ref().map(|d| d.to_ratio_string()),
            "argmax": self.argmax,
        })
    }
}

/// Builds and solves the compatibility graph of one host.
pub fn solve_host(host: &Graph, target: &Graph, timings: bool) -> Result<SearchRecord> {
    let start = Instant::now();
    let result = build_compatibility(host, target)?.max_clique();
    let elapsed_ms = if timings { start.elapsed().as_millis() as u64 } else { 0 };
    Ok(SearchRecord {
        host_graph6: emit_graph6(host),
        n: host.n(),
        m: host.edge_count(),
        clique_size: result.size,
        density: result.density.to_string(),
        witness_hex: result.members.iter().map(|g| g.edge_set().to_hex()).collect(),
        elapsed_ms,
    })
}

/// Hosts of the configured classes, each with its canonical key.
pub fn search_hosts(config: &SearchConfig) -> Result<Vec<(CanonicalKey, Graph)>> {
    let mut hosts = Vec::new();
    for &m in &config.edge_counts {
        for g in connected_graphs(HostClass::new(config.n, m, config.connected))? {
            hosts.push((g.canonical_key()?, g));
        }
    }
    hosts.sort_by_key(|(k, _)| *k);
    hosts.dedup_by_key(|(k, _)| *k);
    Ok(hosts)
}

pub fn run_search(config: &SearchConfig) -> Result<(Vec<SearchRecord>, SearchSummary)> {
    let hosts = search_hosts(config)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .map_err(|e| Error::Io(e.to_string()))?;
    let solved: Result<Vec<(CanonicalKey, SearchRecord)>> = pool.install(|| {
        hosts
            .par_iter()
            .map(|(key, g)| Ok((*key, solve_host(g, &config.target, config.timings)?)))
            .collect()
    });
    let mut solved = solved?;
    solved.sort_by_key(|(k, _)| *k);
    let records: Vec<SearchRecord> = solved.into_iter().map(|(_, r)| r).collect();
    let summary = SearchSummary::from_records(&records)?;
    Ok((records, summary))
}

pub fn write_jsonl(records: &[SearchRecord], path: &Path) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    for r in records {
        let line = serde_json::to_string(r).map_err(|e| Error::Io(e.to_string()))?;
        writeln!(out, "{line}")?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_jsonl(path: &Path) -> Result<Vec<SearchRecord>> {
    let reader = BufReader::new(File::open(path)?);
    let mut records = Vec::new();
    for (k, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let r = serde_json::from_str(&line)
            .map_err(|e| Error::Parse(format!("line {}: {e}", k + 1)))?;
        records.push(r);
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{christofides_host, path};

    fn config(n: usize, edges: Vec<usize>, jobs: usize) -> SearchConfig {
        SearchConfig {
            n,
            edge_counts: edges,
            target: path(4).unwrap(),
            connected: true,
            jobs,
            timings: false,
        }
    }

    #[test]
    fn four_vertex_trees() {
        let (records, summary) = run_search(&config(4, vec![3], 2)).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(summary.hosts, 2);
        assert_eq!(summary.max_density.unwrap().to_string(), "1/2^3");
        assert_eq!(summary.argmax, vec![emit_graph6(&path(4).unwrap().canonical_key().unwrap().to_graph())]);
        let sizes: Vec<usize> = records.iter().map(|r| r.clique_size).collect();
        assert_eq!(sizes.iter().sum::<usize>(), 1);
        for r in &records {
            r.verify(&path(4).unwrap()).unwrap();
        }
    }

    #[test]
    fn record_round_trip_and_tamper() {
        let rec = solve_host(&christofides_host(), &path(4).unwrap(), false).unwrap();
        assert_eq!(rec.clique_size, 17);
        assert_eq!(rec.density, "17/2^7");
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("out.jsonl");
        write_jsonl(std::slice::from_ref(&rec), &file).unwrap();
        let back = read_jsonl(&file).unwrap();
        assert_eq!(back, vec![rec.clone()]);
        back[0].verify(&path(4).unwrap()).unwrap();

        let mut bad = rec.clone();
        bad.density = "17/2^8".into();
        assert!(matches!(bad.verify(&path(4).unwrap()), Err(Error::Violation(_))));
        let mut bad = rec.clone();
        bad.witness_hex[0] = "1".into();
        assert!(bad.verify(&path(4).unwrap()).is_err());
        let mut bad = rec;
        bad.witness_hex.pop();
        assert!(bad.verify(&path(4).unwrap()).is_err());
    }

    #[test]
    fn unwritable_output() {
        let dir = tempfile::tempdir().unwrap();
        let missing = dir.path().join("no/such/dir/out.jsonl");
        assert!(matches!(write_jsonl(&[], &missing), Err(Error::Io(_))));
    }
}
