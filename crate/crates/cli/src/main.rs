use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "coherence", version, about = "Performance measures, fundamental limits and audits for linear consensus networks")]
struct Cli {
    /// Worker threads (defaults to available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All applicable measures for a graph.
    Analyze(AnalyzeArgs),
    /// Every applicable bound report for a graph.
    Bounds(BoundsArgs),
    /// Emit a named family graph.
    Family(FamilyArgs),
    /// Count (or list) connected labeled graphs.
    Enumerate(EnumerateArgs),
    /// Check bounds on every connected graph of a size.
    Audit(AuditArgs),
    /// Monte-Carlo estimate of a measure.
    Simulate(SimulateArgs),
    /// Expected resistive loss of a power network.
    Powerloss(PowerlossArgs),
}

#[derive(Args, Debug, Clone)]
struct SystemArgs {
    /// Graph file (edge list, or JSON if it ends in `.json`).
    #[arg(long)]
    graph: String,
    /// Position output: `centering`, `none` or a graph file.
    #[arg(long, default_value = "centering")]
    output_graph: String,
    /// Velocity output for second-order networks: `centering`, `none` or a graph file.
    #[arg(long, default_value = "none")]
    velocity_output: String,
    /// Damping for second-order networks.
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[arg(long, short)]
    output: Option<String>,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long)]
    graph: String,
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    #[arg(long, short)]
    output: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Edges,
    Json,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// complete, star, cycle, path, complete-bipartite, star-like-clique, star-like-k3, path-like-k3
    name: String,
    /// Size parameters: `n`, or `n1 n2` / `n k` for two-parameter families.
    #[arg(required = true, num_args = 1..=2)]
    params: Vec<usize>,
    #[arg(long, value_enum, default_value = "edges")]
    format: GraphFormat,
    #[arg(long, short)]
    output: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    /// all, trees, unicyclic or bipartite
    #[arg(long, default_value = "all")]
    filter: String,
    /// Also list every graph id (edge bitmask).
    #[arg(long)]
    list: bool,
    #[arg(long, short)]
    output: Option<String>,
}

#[derive(Args, Debug)]
struct AuditArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "all")]
    filter: String,
    /// Comma-separated bound names or aliases (`all` for every bound).
    #[arg(long, default_value = "all")]
    bounds: String,
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
    /// Row output (stdout if omitted).
    #[arg(long, short)]
    output: Option<String>,
    /// Summary JSON with violations and extremes.
    #[arg(long)]
    summary: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Order {
    First,
    Type1,
    Type2,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// `first` for first-order networks, or a second-order type.
    #[arg(long, value_enum, default_value = "first")]
    soc_type: Order,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    horizon: Option<f64>,
    #[arg(long)]
    burn_in: Option<f64>,
    #[arg(long)]
    trajectories: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, short)]
    output: Option<String>,
}

#[derive(Args, Debug)]
struct PowerlossArgs {
    /// Power network JSON.
    #[arg(long)]
    network: String,
    /// Declare the topology edge-transitive (cycle, complete, complete-bipartite, star).
    #[arg(long)]
    edge_transitive: Option<String>,
    #[arg(long, short)]
    output: Option<String>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(workers) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", format!("{e:#}").replace('\n', " "));
            ExitCode::from(1)
        }
    }
}
