use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{Context, Result};
use serde::Serialize;

use coherence::applications::{edge_transitive_loss, power_loss, tree_loss, LossReport, PowerNetwork};
use coherence::bounds::{BoundId, BoundReport, GraphFacts};
use coherence::graph::{
    graph_stats, parse_edge_list, parse_graph_json, sparsity_measures, to_edge_list, to_graph_json, Family, GraphStats,
    Sparsity,
};
use coherence::measures::{foc_measure, formation_energy, soc_measure, OutputGraph, SocMeasure, SocSystem, SocType};
use coherence::oracle::{
    enumerate_connected, exhaustive_audit, monte_carlo_measure, AuditConfig, AuditRow, ConsensusSystem, GraphFilter,
    MonteCarloEstimate, SimConfig,
};
use coherence::spectral::graph_spectrum;
use coherence::WeightedGraph;

use crate::{
    AnalyzeArgs, AuditArgs, BoundsArgs, Command, EnumerateArgs, FamilyArgs, GraphFormat, Order, PowerlossArgs,
    SimulateArgs, SystemArgs, TableFormat,
};

pub fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Analyze(args) => analyze(args),
        Command::Bounds(args) => bounds(args),
        Command::Family(args) => family(args),
        Command::Enumerate(args) => enumerate(args),
        Command::Audit(args) => audit(args),
        Command::Simulate(args) => simulate(args),
        Command::Powerloss(args) => powerloss(args),
    }
    .map(|code| code.unwrap_or(ExitCode::SUCCESS))
}

fn read_graph(path: &str) -> Result<WeightedGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let parsed = if path.ends_with(".json") || text.trim_start().starts_with('{') {
        parse_graph_json(&text)
    } else {
        parse_edge_list(&text)
    };
    parsed.with_context(|| format!("parsing {path}"))
}

fn read_output(spec: &str, n: usize) -> Result<OutputGraph> {
    Ok(match spec {
        "centering" => OutputGraph::centering(n),
        "none" => OutputGraph::zero(n),
        path => OutputGraph::from_graph(&read_graph(path)?),
    })
}

fn sink(path: Option<&str>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {p}"))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit(path: Option<&str>, text: &str) -> Result<()> {
    let mut out = sink(path)?;
    out.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

fn emit_json(path: Option<&str>, value: &impl Serialize) -> Result<()> {
    emit(path, &serde_json::to_string_pretty(value)?)
}

#[derive(Serialize)]
struct Analysis {
    n: usize,
    m: usize,
    weight_sum: f64,
    unweighted: bool,
    output_graph: String,
    velocity_output: String,
    rho_foc: f64,
    eigenvalues: Vec<f64>,
    zeta_1: f64,
    zeta_2: f64,
    r_total: f64,
    stats: GraphStats,
    sparsity: Sparsity,
    beta: f64,
    soc_type1: SocMeasure,
    soc_type2: SocMeasure,
    formation_energy: f64,
}

fn analyze(args: AnalyzeArgs) -> Result<Option<ExitCode>> {
    let sys = &args.system;
    let g = read_graph(&sys.graph)?;
    let n = g.n();
    let q_x = read_output(&sys.output_graph, n)?;
    let q_v = read_output(&sys.velocity_output, n)?;
    let spectrum = graph_spectrum(&g)?;
    let soc = |t| SocSystem::new(g.clone(), t, sys.beta, q_x.clone(), q_v.clone());
    let type2 = soc(SocType::Type2)?;
    let analysis = Analysis {
        n,
        m: g.m(),
        weight_sum: g.weight_sum(),
        unweighted: g.is_unweighted(),
        output_graph: sys.output_graph.clone(),
        velocity_output: sys.velocity_output.clone(),
        rho_foc: foc_measure(&g, &q_x)?,
        eigenvalues: spectrum.eigenvalues().to_vec(),
        zeta_1: spectrum.zeta(1)?,
        zeta_2: spectrum.zeta(2)?,
        r_total: spectrum.effective_resistance()?.total(),
        stats: graph_stats(&g)?,
        sparsity: sparsity_measures(&g),
        beta: sys.beta,
        soc_type1: soc_measure(&soc(SocType::Type1)?)?,
        soc_type2: soc_measure(&type2)?,
        formation_energy: formation_energy(&type2)?,
    };
    emit_json(args.output.as_deref(), &analysis)?;
    Ok(None)
}

fn bounds(args: BoundsArgs) -> Result<Option<ExitCode>> {
    let g = read_graph(&args.graph)?;
    let reports: Vec<BoundReport> = GraphFacts::compute(&g, args.beta)?.all_reports();
    emit_json(args.output.as_deref(), &reports)?;
    Ok(None)
}

fn family(args: FamilyArgs) -> Result<Option<ExitCode>> {
    let g = Family::from_str(&args.name)?.build(&args.params)?;
    let text = match args.format {
        GraphFormat::Edges => to_edge_list(&g),
        GraphFormat::Json => to_graph_json(&g),
    };
    emit(args.output.as_deref(), &text)?;
    Ok(None)
}

#[derive(Serialize)]
struct EnumerationSummary {
    n: usize,
    filter: GraphFilter,
    count: u64,
}

fn enumerate(args: EnumerateArgs) -> Result<Option<ExitCode>> {
    let filter = GraphFilter::from_str(&args.filter)?;
    let stream = enumerate_connected(args.n, filter)?;
    if args.list {
        let mut out = sink(args.output.as_deref())?;
        let mut stream = stream;
        writeln!(out, "graph_id,m")?;
        while let Some(mask) = stream.next_mask() {
            writeln!(out, "{},{}", mask, mask.count_ones())?;
        }
        out.flush()?;
    } else {
        let count = stream.count_parallel();
        emit_json(args.output.as_deref(), &EnumerationSummary { n: args.n, filter, count })?;
    }
    Ok(None)
}

fn audit(args: AuditArgs) -> Result<Option<ExitCode>> {
    let cfg = AuditConfig {
        n: args.n,
        filter: GraphFilter::from_str(&args.filter)?,
        bounds: BoundId::parse_list(&args.bounds)?,
        beta: args.beta,
    };
    let mut out = sink(args.output.as_deref())?;
    let mut first = true;
    match args.format {
        TableFormat::Csv => writeln!(out, "{}", AuditRow::CSV_HEADER)?,
        TableFormat::Json => write!(out, "[")?,
    }
    let report = exhaustive_audit(&cfg, |row| {
        let written = match args.format {
            TableFormat::Csv => writeln!(out, "{}", row.csv_line()),
            TableFormat::Json => {
                let sep = if first { "\n" } else { ",\n" };
                first = false;
                serde_json::to_string(row)
                    .map_err(io::Error::other)
                    .and_then(|s| write!(out, "{sep}{s}"))
            }
        };
        written.map_err(|e| coherence::Error::Json(e.to_string()))
    })?;
    if args.format == TableFormat::Json {
        writeln!(out, "\n]")?;
    }
    out.flush()?;
    drop(out);
    if let Some(path) = args.summary.as_deref() {
        emit_json(Some(path), &report)?;
    }
    eprintln!(
        "audited {} graphs (n = {}, filter = {}): {} violations",
        report.graphs, report.n, report.filter, report.violation_count
    );
    Ok((report.violation_count > 0).then(|| ExitCode::from(2)))
}

#[derive(Serialize)]
struct Simulation {
    config: SimConfig,
    #[serde(flatten)]
    estimate: MonteCarloEstimate,
    within_3_stderr: bool,
}

fn build_system(sys: &SystemArgs, order: Order) -> Result<ConsensusSystem> {
    let g = read_graph(&sys.graph)?;
    let n = g.n();
    let q_x = read_output(&sys.output_graph, n)?;
    let soc_type = match order {
        Order::First => return Ok(ConsensusSystem::Foc { coupling: g, output: q_x }),
        Order::Type1 => SocType::Type1,
        Order::Type2 => SocType::Type2,
    };
    let q_v = read_output(&sys.velocity_output, n)?;
    Ok(ConsensusSystem::Soc(SocSystem::new(g, soc_type, sys.beta, q_x, q_v)?))
}

fn simulate(args: SimulateArgs) -> Result<Option<ExitCode>> {
    let system = build_system(&args.system, args.soc_type)?;
    let defaults = SimConfig::for_system(&system)?;
    let config = SimConfig {
        dt: args.dt.unwrap_or(defaults.dt),
        horizon: args.horizon.unwrap_or(defaults.horizon),
        burn_in: args.burn_in.unwrap_or(defaults.burn_in),
        trajectories: args.trajectories.unwrap_or(defaults.trajectories),
        seed: args.seed,
        noise: 1.0,
    };
    let estimate = monte_carlo_measure(&system, &config)?;
    emit_json(
        args.output.as_deref(),
        &Simulation { config, within_3_stderr: estimate.within(3.0), estimate },
    )?;
    Ok(None)
}

#[derive(Serialize)]
struct PowerLoss {
    n: usize,
    beta: f64,
    #[serde(flatten)]
    report: LossReport,
    nu_sum: f64,
    tree_loss: Option<f64>,
    edge_transitive_loss: Option<f64>,
}

fn powerloss(args: PowerlossArgs) -> Result<Option<ExitCode>> {
    let text = fs::read_to_string(&args.network).with_context(|| format!("reading {}", args.network))?;
    let pn = PowerNetwork::from_json(&text).with_context(|| format!("parsing {}", args.network))?;
    let report = power_loss(&pn)?;
    let edge_transitive = match args.edge_transitive.as_deref() {
        Some(name) => Some(edge_transitive_loss(&pn, Family::from_str(name)?)?),
        None => None,
    };
    let out = PowerLoss {
        n: pn.n(),
        beta: pn.beta(),
        nu_sum: report.nu_sum(),
        tree_loss: tree_loss(&pn).ok(),
        edge_transitive_loss: edge_transitive,
        report,
    };
    emit_json(args.output.as_deref(), &out)?;
    Ok(None)
}
