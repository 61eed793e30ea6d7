//! Command-line front end.
//!
//! Exit codes: 0 success, 2 bad arguments or input, 3 I/O failure, 4 input
//! outside the required family, 5 a proven invariant failed.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bounds::{self, BoundParams};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::{parse_edge_list, serialize_edge_list, to_dot};
use crate::matching::{maximum_matching, nu};
use crate::star::{is_factor_critical, star_set};
use crate::transform::{transform_with, DegreePolicy};
use crate::verify::{self, is_member_f};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "degmatch", version, about = "Edge bounds for graphs with bounded degree and matching number")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print e(d, m), the optimal component profile and whether the extremal graph is unique.
    Bound {
        d: usize,
        m: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build an extremal graph.
    Construct {
        d: usize,
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// text writes the edge-list format.
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Degree, matching and star-vertex report for a graph file (`-` for stdin).
    Analyze {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Rewrite a member of F(d, m) into claws and factor-critical components.
    Transform {
        path: PathBuf,
        d: usize,
        m: usize,
        /// Destination of the final graph in edge-list format.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Destination of the JSON-lines step log.
        #[arg(long)]
        log: Option<PathBuf>,
        /// Attach the full pool even when the chosen vertex has degree below d - 1.
        #[arg(long)]
        attach_full_pool: bool,
    },
    /// Check e(d, m) against exhaustive search or random sampling.
    Verify {
        d: usize,
        m: usize,
        #[arg(long = "nmax", default_value_t = verify::EXHAUSTIVE_VERTEX_CAP)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Worker threads for the search (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Emit a random member of F(d, m) on n vertices.
    Random {
        d: usize,
        m: usize,
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Streams<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

fn read_graph(path: &Path, stdin: &mut dyn Read) -> Result<Graph> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        stdin.read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path)?
    };
    parse_edge_list(&text)
}

fn emit(path: Option<&Path>, text: &str, io: &mut Streams<'_>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => io.out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_bound(d: usize, m: usize, format: Format, io: &mut Streams<'_>) -> Result<i32> {
    let p = BoundParams::new(d, m)?;
    let r = bounds::e_bound(p);
    let unique = bounds::is_extremal_unique(p);
    let text = match format {
        Format::Json => {
            let v = json!({
                "d": d,
                "m": m,
                "value": r.value,
                "t": r.profile.t,
                "J": r.profile.j_size,
                "unique": unique,
                "trivial_bound": bounds::trivial_bound(p),
            });
            format!("{v}\n")
        }
        _ => format!(
            "e({d},{m}) = {}\nt = {}\n|J| = {}\nunique = {unique}\ntrivial bound = {}\n",
            r.value,
            r.profile.t,
            r.profile.j_size,
            bounds::trivial_bound(p)
        ),
    };
    io.out.write_all(text.as_bytes())?;
    Ok(0)
}

fn cmd_construct(d: usize, m: usize, out: Option<&Path>, format: Format, io: &mut Streams<'_>) -> Result<i32> {
    let p = BoundParams::new(d, m)?;
    let g = bounds::construct_extremal(p)?;
    let member = is_member_f(&g, d, m).is_member();
    let body = match format {
        Format::Text => serialize_edge_list(&g),
        Format::Dot => to_dot(&g, Some(&maximum_matching(&g))),
        Format::Json => {
            let edges: Vec<[usize; 2]> = g.edges().map(|e| [e.u, e.v]).collect();
            format!("{}\n", json!({"n": g.n(), "edges": edges}))
        }
    };
    emit(out, &body, io)?;
    let mut summary = format!("edges = {}\nmember = {member}\n", g.edge_count());
    if !bounds::is_extremal_unique(p) {
        summary.push_str("unique = false (other extremal graphs exist)\n");
    }
    // keep stdout clean when it carries the graph
    if out.is_some() {
        io.out.write_all(summary.as_bytes())?;
    } else {
        io.err.write_all(summary.as_bytes())?;
    }
    Ok(0)
}

fn cmd_analyze(path: &Path, format: Format, stdin: &mut dyn Read, io: &mut Streams<'_>) -> Result<i32> {
    let g = read_graph(path, stdin)?;
    let mt = maximum_matching(&g);
    let star = star_set(&g, &mt)?;
    let unsaturated: Vec<usize> = (0..g.n()).filter(|&v| !mt.covers(v)).collect();
    let components: Vec<(Vec<usize>, bool)> = g
        .components()
        .iter()
        .map(|c| (c.to_vec(), is_factor_critical(&g.induced_subgraph(c).graph)))
        .collect();
    let text = match format {
        Format::Json => {
            let comps: Vec<_> = components
                .iter()
                .map(|(vs, fc)| json!({"vertices": vs, "factor_critical": fc}))
                .collect();
            let matching: Vec<[usize; 2]> = mt.edges().map(|e| [e.u, e.v]).collect();
            let v = json!({
                "n": g.n(),
                "edges": g.edge_count(),
                "max_degree": g.max_degree(),
                "nu": mt.len(),
                "matching": matching,
                "components": comps,
                "star": star.vertices(),
                "unsaturated": unsaturated,
            });
            format!("{v}\n")
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "n = {}", g.n());
            let _ = writeln!(s, "edges = {}", g.edge_count());
            let _ = writeln!(s, "max degree = {}", g.max_degree());
            let _ = writeln!(s, "nu = {}", mt.len());
            let matched: Vec<String> = mt.edges().map(|e| e.to_string()).collect();
            let _ = writeln!(s, "matching = {{{}}}", matched.join(", "));
            for (vs, fc) in &components {
                let _ = writeln!(s, "component {vs:?} factor-critical = {fc}");
            }
            let _ = writeln!(s, "star = {:?}", star.vertices());
            let _ = writeln!(s, "unsaturated = {unsaturated:?}");
            if star.covers_all() && g.is_connected() {
                let _ = writeln!(s, "|V| = {} = 2*nu + 1", g.n());
            }
            s
        }
        Format::Dot => to_dot(&g, Some(&mt)),
    };
    io.out.write_all(text.as_bytes())?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_transform(
    path: &Path,
    d: usize,
    m: usize,
    out: Option<&Path>,
    log: Option<&Path>,
    policy: DegreePolicy,
    stdin: &mut dyn Read,
    io: &mut Streams<'_>,
) -> Result<i32> {
    let g = read_graph(path, stdin)?;
    let result = transform_with(&g, d, m, policy)?;
    if let Some(p) = out {
        std::fs::write(p, serialize_edge_list(&result.graph))?;
    }
    let lines: String = result.steps.iter().map(|s| s.to_json_line() + "\n").collect();
    if let Some(p) = log {
        std::fs::write(p, &lines)?;
    }
    let dec = &result.decomposition;
    let rs: Vec<usize> = dec.factor_components.iter().map(|c| c.r).collect();
    let mut s = String::new();
    let _ = writeln!(s, "steps = {}", result.steps.len());
    let _ = writeln!(s, "nu = {}", nu(&result.graph));
    let _ = writeln!(s, "edges = {} (input {})", result.graph.edge_count(), g.edge_count());
    let _ = writeln!(s, "claws t = {}", dec.t);
    let _ = writeln!(s, "factor-critical r = {rs:?}");
    let _ = writeln!(s, "isolated = {}", dec.isolated);
    if out.is_none() {
        s.push_str(&serialize_edge_list(&result.graph));
    }
    if log.is_none() {
        s.push_str(&lines);
    }
    io.out.write_all(s.as_bytes())?;
    Ok(0)
}

fn cmd_verify(d: usize, m: usize, n_max: usize, format: Format, jobs: Option<usize>, io: &mut Streams<'_>) -> Result<i32> {
    let run = || verify::verify_bound(d, m, n_max);
    let report = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::argument(format!("cannot start {j} workers: {e}")))?
            .install(run)?,
        None => run()?,
    };
    let text = match format {
        Format::Json | Format::Dot => report.to_json() + "\n",
        Format::Text => format!(
            "d = {d}, m = {m}\nformula = {}\nsearch = {}\nregime = {}\nvariants = {}\nconsistent = {}\n",
            report.formula,
            report.search.map_or("-".into(), |s| s.to_string()),
            match report.regime {
                verify::Regime::Exact => "exact",
                verify::Regime::Sampled => "sampled",
            },
            report.variants.map_or("-".into(), |v| v.to_string()),
            report.is_consistent()
        ),
    };
    io.out.write_all(text.as_bytes())?;
    if report.is_consistent() {
        Ok(0)
    } else {
        io.err.write_all(b"verification found a violation\n")?;
        Ok(5)
    }
}

fn cmd_random(d: usize, m: usize, n: usize, seed: u64, out: Option<&Path>, io: &mut Streams<'_>) -> Result<i32> {
    let g = verify::random_maximal_graph(d, m, n, seed)?;
    let report = serde_json::to_string(&is_member_f(&g, d, m)).expect("report serializes") + "\n";
    emit(out, &serialize_edge_list(&g), io)?;
    if out.is_some() {
        io.out.write_all(report.as_bytes())?;
    } else {
        io.err.write_all(report.as_bytes())?;
    }
    Ok(0)
}

fn dispatch(cfg: CliConfig, stdin: &mut dyn Read, io: &mut Streams<'_>) -> Result<i32> {
    match cfg.command {
        Command::Bound { d, m, format } => cmd_bound(d, m, format, io),
        Command::Construct { d, m, out, format } => cmd_construct(d, m, out.as_deref(), format, io),
        Command::Analyze { path, format } => cmd_analyze(&path, format, stdin, io),
        Command::Transform {
            path,
            d,
            m,
            out,
            log,
            attach_full_pool,
        } => {
            let policy = if attach_full_pool {
                DegreePolicy::AttachFullPool
            } else {
                DegreePolicy::Strict
            };
            cmd_transform(&path, d, m, out.as_deref(), log.as_deref(), policy, stdin, io)
        }
        Command::Verify {
            d,
            m,
            n_max,
            format,
            jobs,
        } => cmd_verify(d, m, n_max, format, jobs, io),
        Command::Random { d, m, n, seed, out } => cmd_random(d, m, n, seed, out.as_deref(), io),
    }
}

/// Parses `args` (program name first), runs the command, and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match CliConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let mut io = Streams { out, err };
    match dispatch(cfg, stdin, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            if let Error::NotMember { report, .. } = &e {
                let _ = writeln!(io.err, "{}", serde_json::to_string(report).expect("report serializes"));
            }
            e.exit_code()
        }
    }
}
