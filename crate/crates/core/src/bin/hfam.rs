use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use hfamilies::construct::{
    improvement_margin, lifted_count, multipartite_family, trivial_density, verify_intersecting,
    ConstructionSpec, SubgraphFamily,
};
use hfamilies::density::DyadicDensity;
use hfamilies::enumerate::{connected_graphs, HostClass};
use hfamilies::graph::{pair_count, EdgeSet, Graph};
use hfamilies::graph6::emit_graph6;
use hfamilies::input::parse_graph_arg;
use hfamilies::search::{read_jsonl, run_search, write_jsonl, SearchConfig, JOBS_ENV};
use hfamilies::{build_compatibility, Error};

macro_rules! say {
    ($($arg:tt)*) => {
        emit(format_args!($($arg)*))
    };
}

/// Writes one line to stdout; a closed pipe ends the process quietly.
fn emit(args: std::fmt::Arguments) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{args}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("hfam: {e}");
        std::process::exit(1);
    }
}

/// Search and construction tools for H-intersecting graph families.
#[derive(Parser, Debug)]
#[command(name = "hfam", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve every host of the given classes and write one JSONL record per host.
    Search(SearchArgs),
    /// Largest target-intersecting family on one host.
    Clique(CliqueArgs),
    /// Build the multipartite family for K_{parts, t} and compare with the trivial bound.
    Construct(ConstructArgs),
    /// Re-check stored search records or an explicit family.
    Verify(VerifyArgs),
    /// Print one graph6 line per isomorphism class.
    Enumerate(EnumerateArgs),
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    vertices: usize,
    /// Edge counts, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    edges: Vec<usize>,
    /// Built-in name (p4, k3, k2,4, ...) or graph6.
    #[arg(long, default_value = "p4")]
    target: String,
    /// Only connected hosts.
    #[arg(long)]
    connected: bool,
    #[arg(long, env = JOBS_ENV, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    out: PathBuf,
    /// Record per-host solve times (output is then not reproducible).
    #[arg(long)]
    timings: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct CliqueArgs {
    /// Built-in name, graph6, or a file with graph6 or an edge list.
    #[arg(long)]
    host: String,
    #[arg(long, default_value = "p4")]
    target: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    /// Sizes s_1,...,s_{k-1} of the fixed parts.
    #[arg(long, value_delimiter = ',', required = true)]
    parts: Vec<usize>,
    /// Size of the last part of the target.
    #[arg(long)]
    t: usize,
    /// Materialize the family and check it pairwise.
    #[arg(long)]
    verify: bool,
    /// Check against K_{parts, T0} instead of K_{parts, t}.
    #[arg(long, requires = "verify")]
    target_t: Option<usize>,
    /// Expected density k/2^e; a mismatch is reported and exits with 1.
    #[arg(long)]
    expect: Option<String>,
    /// Vertex count for the lifted family size; defaults to the host's.
    #[arg(long)]
    lift_n: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// JSONL file written by `search`.
    #[arg(long, conflicts_with_all = ["host", "members"])]
    records: Option<PathBuf>,
    #[arg(long, requires = "members")]
    host: Option<String>,
    /// Member edge bitsets in hex, comma separated.
    #[arg(long, value_delimiter = ',')]
    members: Vec<String>,
    #[arg(long, default_value = "p4")]
    target: String,
    /// Also require each member to contain the target.
    #[arg(long)]
    require_self: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    vertices: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    edges: Vec<usize>,
    #[arg(long)]
    connected: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Search(a) => search(a),
        Command::Clique(a) => clique(a),
        Command::Construct(a) => construct(a),
        Command::Verify(a) => verify(a),
        Command::Enumerate(a) => enumerate(a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("hfam: {e}");
            match e {
                Error::Violation(_) => ExitCode::from(1),
                Error::Io(_) => ExitCode::FAILURE,
                _ => ExitCode::from(2),
            }
        }
    }
}

fn search(a: SearchArgs) -> Result<ExitCode, Error> {
    let target = parse_graph_arg(&a.target)?;
    let config = SearchConfig {
        n: a.vertices,
        edge_counts: a.edges,
        target,
        connected: a.connected,
        jobs: a.jobs,
        timings: a.timings,
    };
    let (records, summary) = run_search(&config)?;
    write_jsonl(&records, &a.out)?;
    if a.json {
        say!("{}", summary.to_json());
        return Ok(ExitCode::SUCCESS);
    }
    say!("hosts: {}", summary.hosts);
    for (m, count) in &summary.hosts_by_edges {
        say!(
            "  m={m}: {count} hosts, max clique {}",
            summary.max_clique_by_edges.get(m).copied().unwrap_or(0)
        );
    }
    match &summary.max_density {
        Some(d) => {
            say!("max density: {} ({})", d.normalized(), d.to_ratio_string());
            say!("attained by: {}", summary.argmax.join(" "));
        }
        None => say!("max density: none (no hosts)"),
    }
    Ok(ExitCode::SUCCESS)
}

fn clique(a: CliqueArgs) -> Result<ExitCode, Error> {
    let host = parse_graph_arg(&a.host)?;
    let target = parse_graph_arg(&a.target)?;
    let result = build_compatibility(&host, &target)?.max_clique();
    let witness: Vec<String> = result.members.iter().map(|g| format!("0x{}", g.edge_set().to_hex())).collect();
    if a.json {
        let out = json!({
            "host_graph6": emit_graph6(&host),
            "size": result.size,
            "density": result.density.to_string(),
            "density_ratio": result.density.to_ratio_string(),
            "witness_hex": witness,
        });
        say!("{out}");
    } else {
        say!("size: {}", result.size);
        say!("density: {} ({})", result.density, result.density.to_ratio_string());
        say!("witness:");
        for w in &witness {
            say!("  {w}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn construct(a: ConstructArgs) -> Result<ExitCode, Error> {
    let spec = ConstructionSpec::new(a.parts, a.t)?;
    let host = spec.host()?;
    let target = spec.target()?;
    let density = spec.density();
    let trivial = trivial_density(&target)
        .with_exponent(density.exponent())
        .expect("host has at least as many edges as the target");
    let margin = improvement_margin(&spec);
    let improved = density > trivial;
    let lift_n = a.lift_n.unwrap_or(host.n());
    let lifted = lifted_count(spec.family_size(), spec.host_edge_count(), lift_n)?;

    let verified = if a.verify {
        let check_spec = ConstructionSpec::new(spec.s().to_vec(), a.target_t.unwrap_or(spec.t()))?;
        let check_target = check_spec.target()?;
        let built = multipartite_family(&spec)?;
        Some(verify_intersecting(&built.family, &check_target, true).map_err(|p| p.to_string()))
    } else {
        None
    };
    let expected = a.expect.as_deref().map(str::parse::<DyadicDensity>).transpose()?;
    let mismatch = expected.as_ref().is_some_and(|e| *e != density);

    if a.json {
        let out = json!({
            "host_graph6": emit_graph6(&host),
            "host_parts": spec.host_parts(),
            "family_size": spec.family_size().to_string(),
            "density": density.to_string(),
            "trivial_density": trivial.to_string(),
            "improved": improved,
            "margin": { "lhs": margin.lhs.to_string(), "rhs": margin.rhs.to_string() },
            "lifted": { "n": lift_n, "count": lifted.to_string() },
            "verified": verified.as_ref().map(|v| v.is_ok()),
            "verify_failure": verified.as_ref().and_then(|v| v.as_ref().err().cloned()),
            "expected": expected.as_ref().map(|e| e.to_string()),
            "expected_matches": expected.as_ref().map(|_| !mismatch),
        });
        say!("{out}");
    } else {
        say!("host: {} (K_{:?})", emit_graph6(&host), spec.host_parts());
        say!("family size: {}", spec.family_size());
        say!("density: {density}");
        say!("trivial density: {trivial}");
        let cmp = match density.cmp(&trivial) {
            std::cmp::Ordering::Greater => ">",
            std::cmp::Ordering::Equal => "=",
            std::cmp::Ordering::Less => "<",
        };
        let verdict = if improved { "improved" } else { "not improved" };
        say!("{density} {cmp} {trivial}: {verdict}");
        say!("lifted size on K_{lift_n}: {lifted}");
        match &verified {
            Some(Ok(())) => say!("verify: ok"),
            Some(Err(why)) => say!("verify: FAILED ({why})"),
            None => {}
        }
        if let Some(e) = &expected {
            if mismatch {
                say!("expected {e}: MISMATCH (computed {density})");
            } else {
                say!("expected {e}: matches");
            }
        }
    }
    let failed = mismatch || matches!(verified, Some(Err(_)));
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn verify(a: VerifyArgs) -> Result<ExitCode, Error> {
    let target = parse_graph_arg(&a.target)?;
    if let Some(path) = a.records {
        let records = read_jsonl(&path)?;
        let mut failures = Vec::new();
        for r in &records {
            if let Err(e) = r.verify(&target) {
                failures.push(e.to_string());
            }
        }
        if a.json {
            say!("{}", json!({ "records": records.len(), "failures": failures }));
        } else {
            say!("records: {}, failures: {}", records.len(), failures.len());
            for f in &failures {
                say!("  {f}");
            }
        }
        return Ok(if failures.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(1) });
    }
    let Some(host) = a.host else {
        return Err(Error::InvalidArgument("pass --records or --host with --members".into()));
    };
    let host = parse_graph_arg(&host)?;
    let members = a
        .members
        .iter()
        .map(|h| Graph::from_edge_set(host.n(), EdgeSet::from_hex(h, pair_count(host.n()))?))
        .collect::<Result<Vec<_>, _>>()?;
    let family = SubgraphFamily::new(host, members)?;
    let outcome = verify_intersecting(&family, &target, a.require_self);
    if a.json {
        say!(
            "{}",
            json!({
                "members": family.len(),
                "ok": outcome.is_ok(),
                "counterexample": outcome.err().map(|p| [p.first, p.second]),
            })
        );
    } else {
        match outcome {
            Ok(()) => say!("ok: {} members", family.len()),
            Err(p) => say!("counterexample: {p}"),
        }
    }
    Ok(if outcome.is_ok() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn enumerate(a: EnumerateArgs) -> Result<ExitCode, Error> {
    for m in a.edges {
        for g in connected_graphs(HostClass::new(a.vertices, m, a.connected))? {
            say!("{}", emit_graph6(&g));
        }
    }
    Ok(ExitCode::SUCCESS)
}
