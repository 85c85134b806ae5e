//! Command-line front end: `rank`, `topk`, `compare` and `spectrum`.
//!
//! Every command renders its whole output into a string before anything is
//! written, so a failure never leaves partial output behind. Node ids are
//! printed in the index base of the input.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufReader, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::analysis::{compare_methods, estrada_index, ritz_values, spectral_gap, symmetry_fraction};
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::io::{load_edge_list, load_matrix_market, EdgeListOptions, IndexBase};
use crate::linalg::DENSE_LIMIT;
use crate::rankers::{rank, Method, RankOptions, ScoreVector, Side};
use crate::topk::{rank_in_top_m, TopKOptions, TopKReport};

#[derive(Debug, Parser)]
#[command(name = "hubauth", version, about = "Hub and authority rankings of directed networks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score every node with one method.
    Rank(RankArgs),
    /// Certified top-k hubs or authorities from quadrature bounds.
    Topk(TopkArgs),
    /// Rank correlation and top-k overlap of two methods.
    Compare(CompareArgs),
    /// Leading singular values, spectral gap and related summaries.
    Spectrum(SpectrumArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Edgelist,
    Mtx,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Precision {
    /// Four decimals.
    Short,
    /// Twelve significant digits.
    Full,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Graph file; `-` reads standard input.
    #[arg(long)]
    pub input: PathBuf,
    /// Input format; inferred from a `.mtx` extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<InputFormat>,
    /// Index base of node ids in an edge list (Matrix Market is always 1).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub base: u8,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Emit JSON instead of CSV.
    #[arg(long)]
    pub json: bool,
    #[arg(long, value_enum, default_value_t = Precision::Short)]
    pub precision: Precision,
    /// Worker threads for per-node quadrature.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct MethodArgs {
    /// Katz or resolvent parameter.
    #[arg(long)]
    pub c: Option<f64>,
    /// PageRank damping factor.
    #[arg(long, default_value_t = 0.85)]
    pub alpha: f64,
    /// Tolerance of the iterative methods.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    pub max_iter: usize,
    /// Largest Lanczos order for quadrature methods.
    #[arg(long, default_value_t = 64)]
    pub pmax: usize,
    /// Relative bracket width accepted by exp-quadrature.
    #[arg(long, default_value_t = 1e-10)]
    pub width_tol: f64,
    /// Number of spectral terms for the truncated method.
    #[arg(long, default_value_t = 1)]
    pub terms: usize,
}

impl MethodArgs {
    fn options(&self) -> Result<RankOptions> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidParameter(format!("--alpha {} must lie in (0, 1)", self.alpha)));
        }
        if let Some(tol) = self.tol {
            if !(tol > 0.0) {
                return Err(Error::InvalidParameter(format!("--tol {tol} must be positive")));
            }
        }
        if let Some(c) = self.c {
            if !(c > 0.0 && c.is_finite()) {
                return Err(Error::InvalidParameter(format!("--c {c} must be positive")));
            }
        }
        if self.pmax == 0 || self.max_iter == 0 || self.terms == 0 {
            return Err(Error::InvalidParameter("--pmax, --max-iter and --terms must be at least 1".into()));
        }
        Ok(RankOptions {
            c: self.c,
            alpha: self.alpha,
            tol: self.tol,
            max_iter: self.max_iter,
            p_max: self.pmax,
            width_tol: self.width_tol,
            terms: self.terms,
        })
    }
}

#[derive(Debug, Args)]
pub struct RankArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, value_enum)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t = Side::Hub)]
    pub side: Side,
    /// Print only the first N rows.
    #[arg(long)]
    pub top: Option<usize>,
    /// Same as `--terms`.
    #[arg(long, conflicts_with = "terms")]
    pub k: Option<usize>,
    #[command(flatten)]
    pub params: MethodArgs,
}

#[derive(Debug, Args)]
pub struct TopkArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Number of nodes to certify.
    #[arg(long)]
    pub k: usize,
    /// Relaxed target: certify the k nodes within the top m.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, value_enum, default_value_t = Side::Hub)]
    pub side: Side,
    #[arg(long, default_value_t = 64)]
    pub pmax: usize,
    /// Skip nodes whose in-degree and out-degree are both 1.
    #[arg(long)]
    pub exclude_degree_one: bool,
    /// Stop once the set is certified, without ordering its members.
    #[arg(long)]
    pub unordered: bool,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Give exactly two methods.
    #[arg(long, value_enum, num_args = 1, required = true)]
    pub method: Vec<Method>,
    #[arg(long, value_enum, default_value_t = Side::Hub)]
    pub side: Side,
    /// Overlap sizes; defaults to 10 (or n when smaller).
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<usize>,
    #[command(flatten)]
    pub params: MethodArgs,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Also list the Ritz values after this many Lanczos steps.
    #[arg(long)]
    pub ritz: Option<usize>,
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code. Output goes to `stdout` or the `--out`
/// file; error messages go to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ =
                if code == 0 { stdout.write_all(rendered.as_bytes()) } else { stderr.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let (output, result) = match &cli.command {
        Command::Rank(a) => (&a.output, with_threads(&a.output, || cmd_rank(a))),
        Command::Topk(a) => (&a.output, with_threads(&a.output, || cmd_topk(a))),
        Command::Compare(a) => (&a.output, with_threads(&a.output, || cmd_compare(a))),
        Command::Spectrum(a) => (&a.output, with_threads(&a.output, || cmd_spectrum(a))),
    };
    let written = result.and_then(|text| match &output.out {
        Some(path) => std::fs::write(path, text).map_err(Error::from),
        None => stdout.write_all(text.as_bytes()).map_err(Error::from),
    });
    match written {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn with_threads(output: &OutputArgs, work: impl FnOnce() -> Result<String> + Send) -> Result<String> {
    match output.threads {
        None => work(),
        Some(0) => Err(Error::InvalidParameter("--threads must be at least 1".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("cannot start {t} threads: {e}")))?
            .install(work),
    }
}

/// Loaded graph together with the base used to print node ids.
struct Loaded {
    graph: DirectedGraph,
    base: usize,
}

fn load(args: &InputArgs) -> Result<Loaded> {
    let format = args.format.unwrap_or_else(|| {
        if args.input.extension().is_some_and(|e| e.eq_ignore_ascii_case("mtx")) {
            InputFormat::Mtx
        } else {
            InputFormat::Edgelist
        }
    });
    let reader: Box<dyn Read> =
        if args.input.as_os_str() == "-" { Box::new(std::io::stdin()) } else { Box::new(File::open(&args.input)?) };
    let reader = BufReader::new(reader);
    match format {
        InputFormat::Mtx => Ok(Loaded { graph: load_matrix_market(reader)?, base: 1 }),
        InputFormat::Edgelist => {
            let base = if args.base == 0 { IndexBase::Zero } else { IndexBase::One };
            Ok(Loaded { graph: load_edge_list(reader, EdgeListOptions::with_base(base))?, base: base.offset() })
        }
    }
}

/// Formats with four decimals, or twelve significant digits for `Full`.
/// Magnitudes of 1e15 and above switch to scientific notation.
pub fn format_score(x: f64, precision: Precision) -> String {
    match precision {
        Precision::Short if x.abs() >= 1e15 => format!("{x:.4e}"),
        Precision::Short => format!("{x:.4}"),
        Precision::Full => {
            if x == 0.0 {
                return "0".into();
            }
            let exponent = x.abs().log10().floor() as i32;
            if (-5..15).contains(&exponent) {
                let decimals = (11 - exponent).max(0) as usize;
                format!("{x:.decimals$}")
            } else {
                format!("{x:.11e}")
            }
        }
    }
}

fn shift_ids(ids: &[usize], base: usize) -> Vec<usize> {
    ids.iter().map(|i| i + base).collect()
}

fn diagnostics_json(scores: &ScoreVector, base: usize) -> Value {
    let mut d = scores.diagnostics.clone();
    for b in d.bounds.iter_mut() {
        b.node += base;
    }
    serde_json::to_value(d).expect("diagnostics serialize")
}

fn cmd_rank(args: &RankArgs) -> Result<String> {
    let mut opts = args.params.options()?;
    if let Some(k) = args.k {
        if k == 0 {
            return Err(Error::InvalidParameter("--k must be at least 1".into()));
        }
        opts.terms = k;
    }
    if args.top == Some(0) {
        return Err(Error::InvalidParameter("--top must be at least 1".into()));
    }
    let Loaded { graph, base } = load(&args.input)?;
    let scores = rank(&graph, args.method, args.side, &opts)?;
    let table = scores.rank_table();
    let rows = args.top.unwrap_or(graph.n()).min(graph.n());
    let mut out = String::new();
    if args.output.json {
        let nodes: Vec<Value> = table.order()[..rows]
            .iter()
            .map(|&v| json!({ "node": v + base, "score": scores.scores[v], "rank": table.ranks()[v] }))
            .collect();
        let doc = json!({
            "method": args.method.as_str(),
            "parameters": scores.method.params,
            "side": args.side.as_str(),
            "base": base,
            "n": graph.n(),
            "m": graph.edge_count(),
            "self_loops_dropped": graph.self_loops_dropped(),
            "nodes": nodes,
            "diagnostics": diagnostics_json(&scores, base),
        });
        out.push_str(&serde_json::to_string_pretty(&doc).expect("json"));
        out.push('\n');
    } else {
        out.push_str("node,score,rank\n");
        for &v in &table.order()[..rows] {
            let _ = writeln!(
                out,
                "{},{},{}",
                v + base,
                format_score(scores.scores[v], args.output.precision),
                table.ranks()[v]
            );
        }
    }
    Ok(out)
}

fn iteration_histogram(report: &TopKReport) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for &p in report.iterations.iter().filter(|&&p| p > 0) {
        *hist.entry(p).or_insert(0) += 1;
    }
    hist
}

fn cmd_topk(args: &TopkArgs) -> Result<String> {
    if args.pmax == 0 {
        return Err(Error::InvalidParameter("--pmax must be at least 1".into()));
    }
    let Loaded { graph, base } = load(&args.input)?;
    let opts =
        TopKOptions { p_max: args.pmax, exclude_degree_one: args.exclude_degree_one, order_members: !args.unordered };
    let report = rank_in_top_m(&graph, args.k, args.m.unwrap_or(args.k), args.side, &opts)?;
    let hist = iteration_histogram(&report);
    let precision = args.output.precision;
    let mut out = String::new();
    if args.output.json {
        let members: Vec<Value> = report
            .member_bounds
            .iter()
            .map(|b| {
                json!({
                    "node": b.node + base,
                    "lower": b.lower,
                    "upper": b.upper,
                    "iterations": b.p,
                    "exact": b.exact,
                })
            })
            .collect();
        let doc = json!({
            "k": report.k,
            "m": report.m,
            "side": report.side.as_str(),
            "base": base,
            "certified": report.certified,
            "fully_ordered": report.fully_ordered,
            "members": members,
            "max_iterations": report.max_iterations,
            "iteration_histogram": hist,
            "rounds": report.rounds,
            "excluded_zero_degree": report.excluded_zero_degree,
            "excluded_degree_one": report.excluded_degree_one,
            "ties": report.ties.iter().map(|t| shift_ids(t, base)).collect::<Vec<_>>(),
        });
        out.push_str(&serde_json::to_string_pretty(&doc).expect("json"));
        out.push('\n');
    } else {
        let _ = writeln!(
            out,
            "# k={} m={} side={} certified={} fully_ordered={} max_iterations={} rounds={}",
            report.k,
            report.m,
            report.side.as_str(),
            report.certified,
            report.fully_ordered,
            report.max_iterations,
            report.rounds
        );
        let dist: Vec<String> = hist.iter().map(|(p, c)| format!("{p}:{c}")).collect();
        let _ = writeln!(out, "# iterations {}", dist.join(" "));
        let _ = writeln!(
            out,
            "# excluded zero_degree={} degree_one={}",
            report.excluded_zero_degree, report.excluded_degree_one
        );
        for t in &report.ties {
            let ids: Vec<String> = shift_ids(t, base).iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "# tie {}", ids.join(" "));
        }
        out.push_str("node,lower,upper,iterations,exact\n");
        for b in &report.member_bounds {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                b.node + base,
                format_score(b.lower, precision),
                format_score(b.upper, precision),
                b.p,
                b.exact
            );
        }
    }
    Ok(out)
}

fn cmd_compare(args: &CompareArgs) -> Result<String> {
    if args.method.len() != 2 {
        return Err(Error::InvalidParameter(format!(
            "compare needs exactly two --method values, got {}",
            args.method.len()
        )));
    }
    let opts = args.params.options()?;
    let Loaded { graph, base } = load(&args.input)?;
    let ks = if args.k.is_empty() { vec![10.min(graph.n())] } else { args.k.clone() };
    let a = rank(&graph, args.method[0], args.side, &opts)?;
    let b = rank(&graph, args.method[1], args.side, &opts)?;
    let report = compare_methods(&a, &b, &ks)?;
    let precision = args.output.precision;
    let mut out = String::new();
    if args.output.json {
        let top: Vec<Value> = report
            .top_k
            .iter()
            .map(|(k, ta, tb)| json!({ "k": k, "a": shift_ids(ta, base), "b": shift_ids(tb, base) }))
            .collect();
        let doc = json!({
            "methods": [args.method[0].as_str(), args.method[1].as_str()],
            "side": args.side.as_str(),
            "base": base,
            "kendall_tau_b": report.kendall_tau_b,
            "overlap_at_k": report.overlap_at_k.iter().map(|(k, o)| json!({ "k": k, "overlap": o })).collect::<Vec<_>>(),
            "top_k": top,
        });
        out.push_str(&serde_json::to_string_pretty(&doc).expect("json"));
        out.push('\n');
    } else {
        let _ =
            writeln!(out, "# {} vs {} side={}", args.method[0].as_str(), args.method[1].as_str(), args.side.as_str());
        out.push_str("metric,k,value\n");
        let _ = writeln!(out, "kendall_tau_b,,{}", format_score(report.kendall_tau_b, precision));
        for (k, o) in &report.overlap_at_k {
            let _ = writeln!(out, "overlap,{k},{}", format_score(*o, precision));
        }
        for (k, ta, tb) in &report.top_k {
            let join = |v: &[usize]| shift_ids(v, base).iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
            let _ = writeln!(out, "top_a,{k},{}", join(ta));
            let _ = writeln!(out, "top_b,{k},{}", join(tb));
        }
    }
    Ok(out)
}

fn cmd_spectrum(args: &SpectrumArgs) -> Result<String> {
    if args.ritz == Some(0) {
        return Err(Error::InvalidParameter("--ritz must be at least 1".into()));
    }
    let Loaded { graph, .. } = load(&args.input)?;
    let gap = spectral_gap(&graph);
    let symmetry = symmetry_fraction(&graph);
    let estrada = if graph.n() <= DENSE_LIMIT { Some(estrada_index(&graph)?) } else { None };
    let ritz = args.ritz.map(|p| ritz_values(&graph, p)).transpose()?;
    let precision = args.output.precision;
    let annotation = serde_json::to_value(gap.annotation).expect("json");
    let mut out = String::new();
    if args.output.json {
        let doc = json!({
            "n": graph.n(),
            "m": graph.edge_count(),
            "sigma1": gap.sigma1,
            "sigma2": gap.sigma2,
            "relative_gap": gap.relative_gap,
            "annotation": annotation,
            "converged": gap.converged,
            "symmetry_fraction": symmetry,
            "estrada_index": estrada,
            "ritz_values": ritz,
        });
        out.push_str(&serde_json::to_string_pretty(&doc).expect("json"));
        out.push('\n');
    } else {
        out.push_str("quantity,value\n");
        let _ = writeln!(out, "n,{}", graph.n());
        let _ = writeln!(out, "m,{}", graph.edge_count());
        let _ = writeln!(out, "sigma1,{}", format_score(gap.sigma1, precision));
        let _ = writeln!(out, "sigma2,{}", format_score(gap.sigma2, precision));
        let _ = writeln!(out, "relative_gap,{}", format_score(gap.relative_gap, precision));
        let _ = writeln!(out, "annotation,{}", annotation.as_str().unwrap_or_default());
        let _ = writeln!(out, "symmetry_fraction,{}", format_score(symmetry, precision));
        if let Some(e) = estrada {
            let _ = writeln!(out, "estrada_index,{}", format_score(e, precision));
        }
        for t in ritz.iter().flatten() {
            let _ = writeln!(out, "ritz,{}", format_score(*t, precision));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn score_formatting() {
        assert_eq!(format_score(2.33190123, Precision::Short), "2.3319");
        assert_eq!(format_score(4.341077e29, Precision::Short), "4.3411e29");
        assert_eq!(format_score(2.331901234567891, Precision::Full), "2.33190123457");
        assert_eq!(format_score(0.0965, Precision::Full), "0.0965000000000");
        assert_eq!(format_score(1.0e20, Precision::Full), "1.00000000000e20");
        assert_eq!(format_score(0.0, Precision::Full), "0");
    }

    #[test]
    fn parse_errors_exit_with_two() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        assert_eq!(run(["hubauth", "rank"], &mut out, &mut err), 2);
        assert!(out.is_empty());
        assert_eq!(run(["hubauth", "--help"], &mut out, &mut err), 0);
    }
}
