//! Resolving graph arguments given on the command line.

use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{builtin, Graph};
use crate::graph6::parse_graph6;

/// A graph argument: a built-in name, `-` for graph6 on stdin, a file holding
/// an edge list or graph6, or an inline graph6 string, tried in that order.
pub fn parse_graph_arg(arg: &str) -> Result<Graph> {
    if let Some(g) = builtin(arg) {
        return Ok(g);
    }
    if arg == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        return parse_graph_text(&text);
    }
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        return parse_graph_text(&text);
    }
    parse_graph6(arg)
}

/// Edge list when the first non-empty line holds two integers, graph6 otherwise.
pub fn parse_graph_text(text: &str) -> Result<Graph> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| Error::Parse("no graph in input".into()))?;
    let looks_numeric = first.split_whitespace().count() == 2
        && first.split_whitespace().all(|t| t.parse::<usize>().is_ok());
    if looks_numeric {
        Graph::parse_edge_list(text)
    } else {
        parse_graph6(first)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::christofides_host;
    use crate::graph6::emit_graph6;

    #[test]
    fn resolves_each_form() {
        let h = christofides_host();
        assert_eq!(parse_graph_arg("christofides").unwrap(), h);
        assert_eq!(parse_graph_arg(&emit_graph6(&h)).unwrap(), h);

        let dir = tempfile::tempdir().unwrap();
        let edges = dir.path().join("host.txt");
        std::fs::write(&edges, h.to_edge_list()).unwrap();
        assert_eq!(parse_graph_arg(edges.to_str().unwrap()).unwrap(), h);
        let g6 = dir.path().join("host.g6");
        std::fs::write(&g6, format!("{}\n", emit_graph6(&h))).unwrap();
        assert_eq!(parse_graph_arg(g6.to_str().unwrap()).unwrap(), h);

        assert!(matches!(parse_graph_arg("not a graph"), Err(Error::Parse(_))));
    }
}
