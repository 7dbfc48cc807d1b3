//! Thin command line adapter over the blockerlab library. Every subcommand
//! maps onto one library call and serializes its result by a fixed schema:
//! JSON Lines for streams, a single JSON object for scalar results. Exit
//! status 0 on success, 1 on domain rejection, 2 on usage errors.

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::anyhow;
use blockerlab::blocker_families::{classify, generate};
use blockerlab::exhaustive_search::{
    check_characterization_with, enumerate_blockers_bruteforce_with, enumerate_blockers_parametric,
    enumerate_blockers_pruned_with, SearchOptions,
};
use blockerlab::ham_paths::{enumerate_shps, shp_count};
use blockerlab::proof_witnesses::{find_structured_witness, WitnessMethod};
use blockerlab::{
    BlockerDescriptor, ClassAParams, ClassBParams, ClassificationResult, EdgeSet, Error,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Largest n whose SHP count n * 2^(n-3) fits the 128 bit output type.
const MAX_COUNT_ORDER: usize = 124;

#[derive(Parser)]
#[command(name = "blockerlab", version, about = "Blockers for simple Hamiltonian paths in convex position", max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the number of simple Hamiltonian paths of order n.
    ShpCount {
        #[arg(long)]
        n: usize,
    },
    /// List all simple Hamiltonian paths, one JSON vertex array per line.
    ShpList {
        #[arg(long)]
        n: usize,
    },
    /// Check whether an edge set blocks every simple Hamiltonian path.
    Verify {
        /// Order of the convex position, odd.
        #[arg(long)]
        n: usize,
        /// Comma separated edge list, e.g. "1-2,2-3".
        #[arg(long)]
        edges: String,
    },
    /// Build a family member edge set from a descriptor.
    Generate(GenerateArgs),
    /// Match a candidate edge set against the two families.
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        edges: String,
    },
    /// List all blockers of order n, one JSON object per line on stdout,
    /// with a summary object on stderr.
    EnumerateBlockers {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Pruned)]
        method: Method,
        /// Parallel worker count, overriding BLOCKERLAB_WORKERS.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Compare the exhaustive blocker list with the parametric families.
    CheckTheorem {
        #[arg(long)]
        n: usize,
        /// Parallel worker count, overriding BLOCKERLAB_WORKERS.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Draw an edge set on the convex polygon as a deterministic SVG.
    Render {
        #[arg(long)]
        n: usize,
        /// Comma separated edge list; empty draws the polygon only.
        #[arg(long, default_value = "")]
        edges: String,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GenerateArgs {
    /// Full descriptor as JSON, e.g. '{"class":"A","m":8,...}'.
    #[arg(long, conflicts_with_all = [
        "class", "m", "k", "alpha", "delta", "beta", "gamma", "eta", "eps", "xi",
    ])]
    params_json: Option<String>,
    /// Family class, A or B, for the flag form.
    #[arg(long)]
    class: Option<String>,
    #[arg(long)]
    m: Option<usize>,
    /// Rotation offset, 0 when omitted.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    alpha: Option<usize>,
    #[arg(long)]
    delta: Option<usize>,
    #[arg(long)]
    beta: Option<usize>,
    #[arg(long)]
    gamma: Option<usize>,
    #[arg(long)]
    eta: Option<usize>,
    /// Comma separated upper beam reaches, longest first.
    #[arg(long)]
    eps: Option<String>,
    /// Comma separated lower beam reaches, longest first.
    #[arg(long)]
    xi: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Pruned,
    Parametric,
}

impl Method {
    fn as_str(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Pruned => "pruned",
            Method::Parametric => "parametric",
        }
    }
}

/// Failure carrying the exit status: usage problems exit 2, domain
/// rejections and I/O failures exit 1.
enum Failure {
    Usage(anyhow::Error),
    Domain(anyhow::Error),
}

fn usage<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Usage(e.into())
}

fn domain<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Domain(e.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::ShpCount { n } => shp_count_cmd(n),
        Command::ShpList { n } => shp_list_cmd(n),
        Command::Verify { n, edges } => verify_cmd(n, &edges),
        Command::Generate(args) => generate_cmd(args),
        Command::Classify { n, edges } => classify_cmd(n, &edges),
        Command::EnumerateBlockers { n, method, workers } => {
            enumerate_blockers_cmd(n, method, workers)
        }
        Command::CheckTheorem { n, workers } => check_theorem_cmd(n, workers),
        Command::Render { n, edges, out } => render_cmd(n, &edges, out.as_deref()),
    }
}

/// Swallows a broken pipe so that piping into head is clean, and reports
/// any other stream failure.
fn stream_result(r: io::Result<()>) -> Result<(), Failure> {
    match r {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(domain(e)),
    }
}

fn shp_count_cmd(n: usize) -> Result<(), Failure> {
    if n > MAX_COUNT_ORDER {
        return Err(domain(anyhow!(
            "the SHP count of order {n} exceeds the 128 bit output range (max n = {MAX_COUNT_ORDER})"
        )));
    }
    // Formatted by hand: the count may exceed what a u64 JSON field holds.
    println!("{{\"n\":{n},\"count\":{}}}", shp_count(n));
    Ok(())
}

fn shp_list_cmd(n: usize) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    stream_result((|| {
        for p in enumerate_shps(n) {
            let line = serde_json::to_string(p.vertices()).expect("vertex lists serialize");
            writeln!(out, "{line}")?;
        }
        out.flush()
    })())
}

#[derive(Serialize)]
struct VerifyOut<'a> {
    blocks: bool,
    is_blocker: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a [usize]>,
    method: &'a str,
}

fn verify_cmd(n: usize, edges: &str) -> Result<(), Failure> {
    if n % 2 == 0 {
        return Err(domain(Error::EvenOrder { n }));
    }
    let s = EdgeSet::parse_edge_list(n, edges).map_err(domain)?;
    let m = (n + 1) / 2;
    let out = match find_structured_witness(&s) {
        Some((witness, method)) => serde_json::to_string(&VerifyOut {
            blocks: false,
            is_blocker: false,
            witness: Some(witness.vertices()),
            method: method.as_str(),
        }),
        None => serde_json::to_string(&VerifyOut {
            blocks: true,
            is_blocker: s.len() == m,
            witness: None,
            method: WitnessMethod::Generic.as_str(),
        }),
    };
    println!("{}", out.expect("verification output serializes"));
    Ok(())
}

fn parse_reaches(field: &str, text: Option<&str>) -> Result<Vec<usize>, Failure> {
    let mut out = Vec::new();
    for token in text.unwrap_or("").split(',') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        let value = token
            .parse::<usize>()
            .map_err(|_| usage(anyhow!("--{field} expects comma separated integers, got {token:?}")))?;
        out.push(value);
    }
    Ok(out)
}

fn require(field: &str, value: Option<usize>) -> Result<usize, Failure> {
    value.ok_or_else(|| usage(anyhow!("--{field} is required with the flag form of generate")))
}

fn descriptor_from_args(args: &GenerateArgs) -> Result<BlockerDescriptor, Failure> {
    if let Some(text) = &args.params_json {
        return serde_json::from_str(text).map_err(usage);
    }
    let class = args
        .class
        .as_deref()
        .ok_or_else(|| usage(anyhow!("generate needs --params-json or --class with parameter flags")))?;
    let m = require("m", args.m)?;
    let k = args.k.unwrap_or(0);
    let alpha = require("alpha", args.alpha)?;
    let delta = require("delta", args.delta)?;
    let eps = parse_reaches("eps", args.eps.as_deref())?;
    let xi = parse_reaches("xi", args.xi.as_deref())?;
    match class {
        "A" | "a" => Ok(BlockerDescriptor::A(ClassAParams { m, k, alpha, delta, eps, xi })),
        "B" | "b" => Ok(BlockerDescriptor::B(ClassBParams {
            m,
            k,
            alpha,
            delta,
            beta: require("beta", args.beta)?,
            gamma: require("gamma", args.gamma)?,
            eta: require("eta", args.eta)?,
            eps,
            xi,
        })),
        other => Err(usage(anyhow!("--class must be A or B, got {other:?}"))),
    }
}

fn generate_cmd(args: GenerateArgs) -> Result<(), Failure> {
    let descriptor = descriptor_from_args(&args)?;
    let s = generate(&descriptor).map_err(domain)?;
    println!("{}", serde_json::to_string(&s).expect("edge sets serialize"));
    Ok(())
}

#[derive(Serialize)]
struct WitnessOut<'a> {
    witness: &'a [usize],
}

fn classify_cmd(n: usize, edges: &str) -> Result<(), Failure> {
    let s = EdgeSet::parse_edge_list(n, edges).map_err(domain)?;
    let out = match classify(&s).map_err(domain)? {
        ClassificationResult::Matched(d) => {
            serde_json::to_string(&d).expect("descriptors serialize")
        }
        ClassificationResult::NotBlocker { witness } => {
            serde_json::to_string(&WitnessOut { witness: witness.vertices() })
                .expect("witness output serializes")
        }
    };
    println!("{out}");
    Ok(())
}

fn search_options(workers: Option<usize>) -> SearchOptions {
    let mut opts = SearchOptions::from_env();
    if let Some(w) = workers {
        opts.workers = w.max(1);
    }
    opts
}

#[derive(Serialize)]
struct EnumerationSummary<'a> {
    n: usize,
    method: &'a str,
    count: usize,
}

fn enumerate_blockers_cmd(n: usize, method: Method, workers: Option<usize>) -> Result<(), Failure> {
    let opts = search_options(workers);
    let blockers = match method {
        Method::Brute => enumerate_blockers_bruteforce_with(n, &opts),
        Method::Pruned => enumerate_blockers_pruned_with(n, &opts),
        Method::Parametric => enumerate_blockers_parametric(n),
    }
    .map_err(domain)?;
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    stream_result((|| {
        for s in &blockers {
            let line = serde_json::to_string(s).expect("edge sets serialize");
            writeln!(out, "{line}")?;
        }
        out.flush()
    })())?;
    let summary = EnumerationSummary { n, method: method.as_str(), count: blockers.len() };
    eprintln!("{}", serde_json::to_string(&summary).expect("summaries serialize"));
    Ok(())
}

fn check_theorem_cmd(n: usize, workers: Option<usize>) -> Result<(), Failure> {
    let opts = search_options(workers);
    let report = check_characterization_with(n, &opts).map_err(domain)?;
    println!("{}", serde_json::to_string(&report).expect("reports serialize"));
    Ok(())
}

fn render_cmd(n: usize, edges: &str, out: Option<&std::path::Path>) -> Result<(), Failure> {
    if n < 3 {
        return Err(domain(Error::OrderTooSmall { n, min: 3 }));
    }
    let s = EdgeSet::parse_edge_list(n, edges).map_err(domain)?;
    let svg = render_svg(&s);
    match out {
        Some(path) => std::fs::write(path, svg).map_err(domain),
        None => stream_result(io::stdout().lock().write_all(svg.as_bytes())),
    }
}

/// Vertex v of the order n polygon on a circle of radius r around (cx, cy),
/// vertex 0 at twelve o'clock, clockwise.
fn vertex_position(v: usize, n: usize, cx: f64, cy: f64, r: f64) -> (f64, f64) {
    let theta = 2.0 * std::f64::consts::PI * v as f64 / n as f64;
    (cx + r * theta.sin(), cy - r * theta.cos())
}

/// Deterministic SVG figure: light boundary polygon, bold edges of s,
/// clockwise vertex labels. Byte identical output for identical input.
fn render_svg(s: &EdgeSet) -> String {
    let n = s.n();
    let (cx, cy, r) = (200.0, 200.0, 170.0);
    let mut svg = String::new();
    svg.push_str(concat!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" ",
        "viewBox=\"0 0 400 400\">\n",
    ));
    let mut points = String::new();
    for v in 0..n {
        let (x, y) = vertex_position(v, n, cx, cy, r);
        if v > 0 {
            points.push(' ');
        }
        points.push_str(&format!("{x:.4},{y:.4}"));
    }
    svg.push_str(&format!(
        "  <polygon points=\"{points}\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n"
    ));
    for e in s.iter() {
        let (x1, y1) = vertex_position(e.a(), n, cx, cy, r);
        let (x2, y2) = vertex_position(e.b(), n, cx, cy, r);
        svg.push_str(&format!(
            "  <line x1=\"{x1:.4}\" y1=\"{y1:.4}\" x2=\"{x2:.4}\" y2=\"{y2:.4}\" \
             stroke=\"#111111\" stroke-width=\"2.5\"/>\n"
        ));
    }
    for v in 0..n {
        let (x, y) = vertex_position(v, n, cx, cy, 186.0);
        svg.push_str(&format!(
            "  <text x=\"{x:.4}\" y=\"{y:.4}\" font-family=\"sans-serif\" font-size=\"11\" \
             fill=\"#333333\" text-anchor=\"middle\" dominant-baseline=\"middle\">{v}</text>\n"
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
