//! Command-line front end: generate / find / verify / spectral / certify /
//! oracle / ramsey / bench over the stable edge-list and JSON formats.
//!
//! Exit codes: 0 success (a failing certificate or condition check is still a
//! successful run), 1 domain failure, 2 malformed input or flags.

use std::io::{Read, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ipath::certify::{certify_spectral, certify_upper_uniformity};
use ipath::dfs::{run, run_traced, run_with_invariant_checks, verify_induced_path, AlgParams};
use ipath::generators;
use ipath::graph::{parse_edge_list, parse_pair, write_edge_list, Graph, GraphPair};
use ipath::oracle::{check_conditions_exact, check_conditions_sampled, longest_induced_path_exact};
use ipath::ramsey::{run_ramsey_pipeline, ColorStrategy, RamseyParams};
use ipath::spectral::compute_lambda;
use ipath::RunReport;

#[derive(Parser)]
#[command(name = "ipath", version, about = "Induced-path search toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph and print it in edge-list format.
    Gen(GenArgs),
    /// Run the search on a graph or pair file and print a JSON report.
    Find(FindArgs),
    /// Check that a vertex sequence is a path in G' induced in G.
    Verify(VerifyArgs),
    /// Eigenvalue statistics of a regular graph.
    Spectral(SpectralArgs),
    /// Arithmetic or sampled certificates.
    #[command(subcommand)]
    Certify(CertifyCmd),
    /// Exact brute-force oracles (small graphs only).
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Colour a random host graph and search the densest class.
    Ramsey(RamseyArgs),
    /// Work-counter and wall-clock scaling across instance sizes.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    RandomRegular,
    Gnp,
    Cycle,
    Path,
    Complete,
    Petersen,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[arg(long, default_value_t = 0)]
    n: usize,
    /// Degree for random-regular.
    #[arg(long)]
    d: Option<usize>,
    /// Edge probability for gnp.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Superimpose vertex-disjoint cliques: "count,size".
    #[arg(long, value_parser = parse_two)]
    with_cliques: Option<(usize, usize)>,
    /// Where to write the clique partition JSON sidecar.
    #[arg(long, default_value = "-")]
    cliques_out: String,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct FindArgs {
    /// Pair file ("-" for stdin); a file without a "---" block sets G' = G.
    #[arg(default_value = "-")]
    input: String,
    /// Shuffle the vertex ordering with this seed (default: identity).
    #[arg(long)]
    sigma_seed: Option<u64>,
    /// Stop as soon as the path reaches this many edges.
    #[arg(long)]
    target: Option<usize>,
    /// Check every partition invariant after every round.
    #[arg(long)]
    checked: bool,
    /// Include the per-round event trace in the report.
    #[arg(long)]
    trace: bool,
    /// Also print the witness as a whitespace-separated vertex line.
    #[arg(long)]
    witness: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Pair file ("-" for stdin).
    input: String,
    /// Whitespace-separated vertex ids; "-" reads them from stdin.
    path: String,
}

#[derive(Args)]
struct SpectralArgs {
    #[arg(default_value = "-")]
    input: String,
}

#[derive(Subcommand)]
enum CertifyCmd {
    /// Pure arithmetic over (n, d, λ); λ can be measured from a graph.
    Spectral(CertifySpectralArgs),
    /// Sampled edge-distribution certificate over a graph.
    Uniformity(CertifyUniformityArgs),
}

#[derive(Args)]
struct CertifySpectralArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    lambda: Option<f64>,
    /// Measure n, d, λ from this graph instead of taking them as flags.
    #[arg(long)]
    graph: Option<String>,
}

#[derive(Args)]
struct CertifyUniformityArgs {
    #[arg(default_value = "-")]
    input: String,
    #[arg(long)]
    c: f64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Exact longest induced path.
    Longest(OracleLongestArgs),
    /// Exhaustive or sampled check of the two edge-distribution conditions.
    Conditions(OracleConditionsArgs),
}

#[derive(Args)]
struct OracleLongestArgs {
    #[arg(default_value = "-")]
    input: String,
    #[arg(long, default_value_t = ipath::oracle::PATH_ORACLE_MAX_N)]
    max_n: usize,
}

#[derive(Args)]
struct OracleConditionsArgs {
    #[arg(default_value = "-")]
    input: String,
    #[arg(long)]
    l: usize,
    #[arg(long)]
    s1: usize,
    #[arg(long)]
    s2: usize,
    /// Switch to sampled mode with this many random X per condition.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct RamseyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    c: f64,
    /// Override the derived edge probability c·ln(k)/n.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, value_enum, default_value_t = Strategy::UniformRandom)]
    strategy: Strategy,
    /// Seed range "start..end" (end exclusive).
    #[arg(long, value_parser = parse_seed_range, default_value = "0..1")]
    seeds: (u64, u64),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    UniformRandom,
    AdversarialBalanced,
}

impl From<Strategy> for ColorStrategy {
    fn from(s: Strategy) -> Self {
        match s {
            Strategy::UniformRandom => ColorStrategy::UniformRandom,
            Strategy::AdversarialBalanced => ColorStrategy::AdversarialBalanced,
        }
    }
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum, default_value_t = Model::RandomRegular)]
    model: Model,
    #[arg(long, default_value_t = 10)]
    d: usize,
    /// Edge probability for gnp; interpreted as p = <this>/n when --scaled.
    #[arg(long)]
    p: Option<f64>,
    /// Treat --p as an expected degree, using p = value / n at each size.
    #[arg(long)]
    scaled: bool,
    /// Comma-separated vertex counts.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn parse_two(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| "expected \"count,size\"".to_string())?;
    Ok((
        a.trim().parse().map_err(|e| format!("{e}"))?,
        b.trim().parse().map_err(|e| format!("{e}"))?,
    ))
}

fn parse_seed_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| "expected \"start..end\"".to_string())?;
    let a: u64 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: u64 = b.trim().parse().map_err(|e| format!("{e}"))?;
    if b < a {
        return Err("empty seed range".into());
    }
    Ok((a, b))
}

/// Errors mapped to exit codes: `Input` -> 2, `Domain` -> 1.
enum CliError {
    Input(String),
    Domain(String),
}

impl CliError {
    fn code(&self) -> ExitCode {
        match self {
            CliError::Input(_) => ExitCode::from(2),
            CliError::Domain(_) => ExitCode::from(1),
        }
    }
    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Domain(m) => m,
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn domain_err(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn read_text(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(input_err)?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| input_err(format!("{path}: {e}")))
    }
}

fn write_text(path: &str, text: &str) -> Result<(), CliError> {
    if path == "-" {
        std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(input_err)
    } else {
        std::fs::write(path, text).map_err(|e| input_err(format!("{path}: {e}")))
    }
}

fn load_graph(path: &str) -> Result<Graph, CliError> {
    parse_edge_list(&read_text(path)?).map_err(input_err)
}

fn load_pair(path: &str) -> Result<GraphPair, CliError> {
    parse_pair(&read_text(path)?).map_err(input_err)
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report serialises")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Gen(a) => cmd_gen(a),
        Cmd::Find(a) => cmd_find(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Spectral(a) => cmd_spectral(a),
        Cmd::Certify(c) => cmd_certify(c),
        Cmd::Oracle(o) => cmd_oracle(o),
        Cmd::Ramsey(a) => cmd_ramsey(a),
        Cmd::Bench(a) => cmd_bench(a),
    }
}

fn generate(model: Model, n: usize, d: Option<usize>, p: Option<f64>, seed: u64) -> Result<Graph, CliError> {
    match model {
        Model::RandomRegular => {
            let d = d.ok_or_else(|| CliError::Input("random-regular needs --d".into()))?;
            generators::gen_random_regular(n, d, seed).map_err(domain_err)
        }
        Model::Gnp => {
            let p = p.ok_or_else(|| CliError::Input("gnp needs --p".into()))?;
            generators::gen_gnp(n, p, seed).map_err(domain_err)
        }
        Model::Cycle => generators::cycle(n).map_err(input_err),
        Model::Path => generators::path(n).map_err(input_err),
        Model::Complete => generators::complete(n).map_err(input_err),
        Model::Petersen => Ok(generators::petersen()),
    }
}

fn cmd_gen(a: GenArgs) -> Result<(), CliError> {
    let base = generate(a.model, a.n, a.d, a.p, a.seed)?;
    let (g, cliques) = match a.with_cliques {
        Some((count, size)) => {
            let (g, cliques) =
                generators::gen_clique_superimposed(&base, count, size, a.seed).map_err(domain_err)?;
            (g, Some(cliques))
        }
        None => (base, None),
    };
    write_text(&a.out, &write_edge_list(&g))?;
    if let Some(cliques) = cliques {
        write_text(&a.cliques_out, &(json(&cliques) + "\n"))?;
    }
    Ok(())
}

fn cmd_find(a: FindArgs) -> Result<(), CliError> {
    let pair = load_pair(&a.input)?;
    let n = pair.vertex_count();
    let mut params = match a.sigma_seed {
        Some(seed) => AlgParams::shuffled(n, seed),
        None => AlgParams::identity(n),
    };
    if let Some(t) = a.target {
        params = params.with_target(t).map_err(input_err)?;
    }
    let result = if a.checked {
        run_with_invariant_checks(&pair, &params)
    } else if a.trace {
        run_traced(&pair, &params)
    } else {
        run(&pair, &params)
    }
    .map_err(domain_err)?;
    if !verify_induced_path(&pair, &result.best_path) {
        return Err(CliError::Domain(
            "internal error: witness failed verification".into(),
        ));
    }
    let mut report = RunReport::new(&pair, &result, a.sigma_seed);
    report.target_len = a.target;
    if !a.trace {
        report.trace = None;
    }
    println!("{}", json(&report));
    if a.witness {
        let line: Vec<String> = result.best_path.iter().map(|v| v.to_string()).collect();
        println!("{}", line.join(" "));
    }
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> Result<(), CliError> {
    let pair = load_pair(&a.input)?;
    let text = read_text(&a.path)?;
    let path: Vec<u32> = text
        .split_whitespace()
        .map(|t| t.parse().map_err(input_err))
        .collect::<Result<_, _>>()?;
    let induced = verify_induced_path(&pair, &path);
    println!("{}", json(&serde_json::json!({ "induced": induced })));
    Ok(())
}

fn cmd_spectral(a: SpectralArgs) -> Result<(), CliError> {
    let g = load_graph(&a.input)?;
    let report = compute_lambda::<f64>(&g).map_err(domain_err)?;
    println!("{}", json(&report));
    Ok(())
}

fn cmd_certify(c: CertifyCmd) -> Result<(), CliError> {
    match c {
        CertifyCmd::Spectral(a) => {
            let (n, d, lambda) = match a.graph {
                Some(path) => {
                    let g = load_graph(&path)?;
                    let rep = compute_lambda::<f64>(&g).map_err(domain_err)?;
                    (rep.n, rep.d, rep.lambda)
                }
                None => {
                    let missing = || CliError::Input("need --n, --d, --lambda or --graph".into());
                    (
                        a.n.ok_or_else(missing)?,
                        a.d.ok_or_else(missing)?,
                        a.lambda.ok_or_else(missing)?,
                    )
                }
            };
            println!("{}", json(&certify_spectral(n, d, lambda)));
        }
        CertifyCmd::Uniformity(a) => {
            let g = load_graph(&a.input)?;
            let cert =
                certify_upper_uniformity(&g, a.c, a.samples, a.seed).map_err(domain_err)?;
            println!("{}", json(&cert));
        }
    }
    Ok(())
}

fn cmd_oracle(o: OracleCmd) -> Result<(), CliError> {
    match o {
        OracleCmd::Longest(a) => {
            let g = load_graph(&a.input)?;
            let (length, path) = longest_induced_path_exact(&g, a.max_n).map_err(domain_err)?;
            println!(
                "{}",
                json(&serde_json::json!({ "length": length, "path": path }))
            );
        }
        OracleCmd::Conditions(a) => {
            let pair = load_pair(&a.input)?;
            let report = match a.samples {
                Some(samples) => {
                    check_conditions_sampled(&pair, a.l, a.s1, a.s2, samples, a.seed)
                }
                None => check_conditions_exact(&pair, a.l, a.s1, a.s2),
            }
            .map_err(domain_err)?;
            println!("{}", json(&report));
        }
    }
    Ok(())
}

fn cmd_ramsey(a: RamseyArgs) -> Result<(), CliError> {
    let params = match a.p {
        Some(p) => RamseyParams::with_probability(a.n, a.k, a.c, p),
        None => RamseyParams::new(a.n, a.k, a.c),
    }
    .map_err(input_err)?;
    for seed in a.seeds.0..a.seeds.1 {
        let report =
            run_ramsey_pipeline(&params, a.strategy.into(), seed).map_err(domain_err)?;
        println!("{}", json(&report));
    }
    Ok(())
}

fn cmd_bench(a: BenchArgs) -> Result<(), CliError> {
    if a.repeats == 0 {
        return Err(CliError::Input("--repeats must be at least 1".into()));
    }
    println!("n,m,medianNanos,workCounter");
    for &n in &a.sizes {
        let p = a.p.map(|p| if a.scaled { p / n as f64 } else { p });
        let g = generate(a.model, n, Some(a.d), p, a.seed)?;
        let pair = GraphPair::identical(g);
        let params = AlgParams::identity(n);
        let mut nanos: Vec<u128> = Vec::with_capacity(a.repeats);
        let mut work = 0u64;
        for _ in 0..a.repeats {
            let start = Instant::now();
            let result = run(&pair, &params).map_err(domain_err)?;
            nanos.push(start.elapsed().as_nanos());
            work = result.work;
        }
        nanos.sort_unstable();
        let median = nanos[nanos.len() / 2];
        println!("{},{},{},{}", n, pair.g().edge_count(), median, work);
    }
    Ok(())
}
