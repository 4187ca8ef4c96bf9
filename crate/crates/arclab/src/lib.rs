//! Command-line front end and file formats for `arclab-core`.
//!
//! Every command reads JSON (or the plain-text bonding format) and writes a
//! JSON report tagged `"schema": "arclab/1"`. Failures produce an error
//! object and a nonzero exit code: 2 for usage, 3 for invalid input, 4 when a
//! numerical method does not converge.

pub mod error;
pub mod formats;
pub mod json;
pub mod svg;

mod commands;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::error::{CliError, CliResult};
use crate::json::SCHEMA;

/// Environment variable overriding the default solver tolerance.
pub const TOLERANCE_ENV: &str = "ARCLAB_TOLERANCE";

#[derive(Debug, Parser)]
#[command(name = "arclab", version, about = "Lambda lengths, arc complexes, fatgraphs, arc operad and RNA band surfaces")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Solver constraint tolerance (the energy tolerance is 1e-4 times it).
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Worker threads for sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Svg,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ptolemy flips along a sequence of edges.
    Flip(FlipArgs),
    /// Simplicial coordinates of a decorated triangulation.
    Coords(InputArg),
    /// Lambda lengths from simplicial coordinates.
    Solve(InputArg),
    /// Convex-hull cell of points on the light cone.
    Hull(HullArgs),
    /// Flip to the convex-hull cell of a decoration.
    Delaunay(InputArg),
    /// Arc complexes of polygons or of a complex given by facets.
    ArcComplex(ArcComplexArgs),
    /// Tableaux on {1..s}.
    Tableaux(TableauxArgs),
    /// The cell complex of tableaux on three punctures.
    Example5,
    /// Boundary cycles, recurrent part and Whitehead moves.
    Fatgraph(FatgraphArgs),
    /// Weighted arc diagrams and their composition.
    #[command(subcommand)]
    Operad(OperadCommand),
    /// Band surfaces of bondings.
    #[command(subcommand)]
    Rna(RnaCommand),
    /// The integer two-form on edges.
    WpForm(InputArg),
}

#[derive(Debug, Args)]
pub struct InputArg {
    /// Input file, or `-` for standard input.
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct FlipArgs {
    pub input: PathBuf,
    /// Edge to flip; repeat for a sequence.
    #[arg(long = "edge", short, required = true)]
    pub edges: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct HullArgs {
    /// Points file; omit with `--random`.
    pub input: Option<PathBuf>,
    /// Use this many random points in cyclic order instead.
    #[arg(long)]
    pub random: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ArcComplexArgs {
    /// Arc complex of the n-gon.
    #[arg(long, conflicts_with_all = ["input", "range"])]
    pub polygon: Option<usize>,
    /// Polygons `a..b` (inclusive), reported in order.
    #[arg(long, conflicts_with = "input")]
    pub range: Option<String>,
    /// Complex file with facets.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub homology: bool,
    /// Face whose link to report: vertex ids, or chords `i-j` for polygons.
    #[arg(long)]
    pub link: Option<String>,
    #[arg(long)]
    pub suspend: bool,
    /// Include the facets.
    #[arg(long)]
    pub facets: bool,
}

#[derive(Debug, Args)]
pub struct TableauxArgs {
    #[arg(long, short)]
    pub s: u32,
    /// Largest number of edges (default 2s + 2).
    #[arg(long)]
    pub max_edges: Option<usize>,
    /// List the tableaux.
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FatgraphAction {
    Boundaries,
    Recurrent,
    Whitehead,
}

#[derive(Debug, Args)]
pub struct FatgraphArgs {
    #[arg(value_enum)]
    pub action: FatgraphAction,
    pub input: PathBuf,
    /// Edge for a Whitehead move.
    #[arg(long)]
    pub edge: Option<usize>,
    /// Restrict the recurrent search to these edges (comma separated).
    #[arg(long)]
    pub subset: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum OperadCommand {
    /// Canonical form and topological type of a diagram.
    Show(InputArg),
    /// Compose: plug `y` into boundary `i` of `x`.
    Glue { x: PathBuf, i: usize, y: PathBuf },
    /// Check unit, associativity, equivariance and seam balance on random diagrams.
    Axioms {
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
    /// Emit a named diagram: identity, bv, dot, star.
    Named { name: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    /// Achiral when the file tags any bond with a side, chiral otherwise.
    Auto,
    Chiral,
    Achiral,
}

#[derive(Debug, Subcommand)]
pub enum RnaCommand {
    /// Genus, boundary cycles and pseudo-knots of one bonding.
    Analyze {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Model::Auto)]
        model: Model,
    },
    /// Planarity and helix invariance over all binary bondings up to `max-m`.
    Sweep {
        #[arg(long, default_value_t = 8)]
        max_m: usize,
        #[arg(long, default_value_t = 1)]
        min_gap: usize,
    },
}

/// Settings shared by all commands.
#[derive(Debug, Clone)]
pub struct Context {
    pub seed: u64,
    pub jobs: usize,
    pub env_tolerance: Option<f64>,
    pub flag_tolerance: Option<f64>,
}

impl Context {
    pub fn pool(&self) -> CliResult<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs.max(1))
            .build()
            .map_err(|e| CliError::usage(format!("cannot start {} workers: {e}", self.jobs)))
    }
}

/// What a command produced.
pub struct Report {
    pub json: Value,
    pub svg: Option<String>,
}

impl Report {
    pub fn json(json: Value) -> Self {
        Self { json, svg: None }
    }
}

pub fn read_text(path: &Path) -> CliResult<String> {
    let mut s = String::new();
    if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::usage(format!("cannot read stdin: {e}")))?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    }
    Ok(s)
}

pub fn read_json(path: &Path) -> CliResult<Value> {
    serde_json::from_str(&read_text(path)?).map_err(|e| CliError::validation(format!("{}: {e}", path.display())))
}

fn parse_tolerance(s: &str, what: &str) -> CliResult<f64> {
    match s.trim().parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        _ => Err(CliError::usage(format!("{what} must be a positive number, got {s:?}"))),
    }
}

/// Flattens a report into `path = value` lines.
fn text_lines(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                text_lines(x, &p, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (k, x) in a.iter().enumerate() {
                text_lines(x, &format!("{prefix}[{k}]"), out);
            }
        }
        _ => {
            out.push_str(prefix);
            out.push_str(" = ");
            out.push_str(&v.to_string());
            out.push('\n');
        }
    }
}

fn render(report: Report, format: Format) -> CliResult<String> {
    let mut json = serde_json::Map::new();
    json.insert("schema".into(), Value::from(SCHEMA));
    match report.json {
        Value::Object(o) => json.extend(o),
        other => {
            json.insert("result".into(), other);
        }
    }
    let json = Value::Object(json);
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&json)? + "\n"),
        Format::Svg => report.svg.ok_or_else(|| CliError::usage("this command has no SVG output")),
        Format::Text => {
            let mut s = String::new();
            text_lines(&json, "", &mut s);
            Ok(s)
        }
    }
}

fn execute(cli: &Cli) -> CliResult<String> {
    let env_tolerance = match std::env::var(TOLERANCE_ENV) {
        Ok(s) => Some(parse_tolerance(&s, TOLERANCE_ENV)?),
        Err(_) => None,
    };
    let flag_tolerance = cli.tolerance.map(|t| parse_tolerance(&t.to_string(), "--tolerance")).transpose()?;
    let ctx = Context { seed: cli.seed, jobs: cli.jobs, env_tolerance, flag_tolerance };
    let report = commands::dispatch(&cli.command, &ctx)?;
    render(report, cli.format)
}

/// Runs the tool on `args` (including the program name), writing the report
/// or error object to `out`. Returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind as K;
            if matches!(e.kind(), K::DisplayHelp | K::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let err = CliError::usage(e.render().to_string().trim().to_string());
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&err.to_json()).unwrap_or_default());
            return err.kind.exit_code();
        }
    };
    let result = execute(&cli).and_then(|text| match &cli.output {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::usage(format!("cannot write {}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| CliError::usage(format!("cannot write output: {e}"))),
    });
    match result {
        Ok(()) => 0,
        Err(err) => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&err.to_json()).unwrap_or_default());
            err.kind.exit_code()
        }
    }
}

/// Runs the tool on the process arguments, writing to standard output.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    run_with(args, &mut lock)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_flattening() {
        let mut s = String::new();
        text_lines(&json!({"a": {"b": [1, 2]}, "c": [{"d": true}]}), "", &mut s);
        assert_eq!(s, "a.b = [1,2]\nc[0].d = true\n");
    }

    #[test]
    fn tolerance_must_be_positive() {
        assert!(parse_tolerance("1e-8", "t").is_ok());
        assert!(parse_tolerance("-1", "t").is_err());
        assert!(parse_tolerance("abc", "t").is_err());
    }
}
