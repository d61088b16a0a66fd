//! `qroute`: scenario generation, kernel execution, comparisons, sweeps, and
//! walk profiles over the hybrid routing laboratory.
//!
//! Exit codes: 0 when the solved decision is feasible (or the command
//! succeeded), 1 when a solve came back infeasible, 2 on usage, parse, or
//! I/O errors.
//!
//! All outputs are seeded and reproducible. Decision JSON on stdout and
//! every CSV column are byte-stable per seed, except measured wall-clock
//! columns, which are always suffixed `_wall` (stdout includes them only
//! under `--timings`).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qroute_core::encoding::build_total_hamiltonian;
use qroute_core::hybrid::{
    run_pipeline, Kernel, PenaltySpec, PipelineConfig, QaoaSettings, RoutingDecision,
};
use qroute_core::qaoa::OptimizerKind;
use qroute_core::qwalk::{hitting_profile, WalkKind};
use qroute_core::scenario::{generate, GenParams, Scenario};
use qroute_core::QaoaParams64;

#[derive(Parser)]
#[command(
    name = "qroute",
    version,
    about = "Hybrid classical/quantum routing laboratory"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded random scenario file.
    Gen(GenArgs),
    /// Solve one scenario and print the decision as JSON.
    Solve(SolveArgs),
    /// Run every kernel over a set of seeds and write a comparison CSV.
    Compare(CompareArgs),
    /// Sweep one configuration axis and write a CSV of outcomes.
    Sweep(SweepArgs),
    /// Write a quantum-versus-classical hitting profile CSV.
    Walk(WalkArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Number of nodes (source is 0, destination is nodes - 1).
    #[arg(long, default_value_t = 4)]
    nodes: usize,
    /// Independent probability of each directed edge.
    #[arg(long, default_value_t = 0.5)]
    edge_prob: f64,
    /// Independent probability of a coupling on each edge pair.
    #[arg(long, default_value_t = 0.2)]
    coupling_prob: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output path for the scenario JSON.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Clone)]
struct KernelArgs {
    #[arg(long, value_enum, default_value_t = KernelChoice::Qaoa)]
    kernel: KernelChoice,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 2048)]
    shots: u64,
    #[arg(long, default_value_t = 0.0)]
    noise_p: f64,
    /// Ansatz depth p.
    #[arg(long, default_value_t = 2)]
    depth: usize,
    /// Flow-penalty multiplier; omitted means the automatic safe scale.
    #[arg(long)]
    lambda_flow: Option<f64>,
    /// Interference multiplier; omitted means one.
    #[arg(long)]
    lambda_int: Option<f64>,
    /// Hop bound for candidate enumeration; omitted means nodes - 1.
    #[arg(long)]
    max_hops: Option<usize>,
    /// Wall-clock budget in seconds before falling back.
    #[arg(long)]
    latency_budget: Option<f64>,
}

impl KernelArgs {
    fn to_config(&self) -> PipelineConfig {
        PipelineConfig {
            kernel: self.kernel.into(),
            penalties: PenaltySpec {
                flow: self.lambda_flow,
                connect: None,
                degree: None,
                interference: self.lambda_int,
            },
            qaoa: QaoaSettings {
                depth: self.depth.max(1),
                optimizer: OptimizerKind::NelderMead,
                ..Default::default()
            },
            qaoa_init: None,
            max_hops: self.max_hops,
            shots: self.shots.max(1),
            noise_p: self.noise_p,
            seed: self.seed,
            latency_budget: self.latency_budget,
            tau_gate: 1.0,
            top_k: 16,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    scenario: PathBuf,
    #[command(flatten)]
    kernel: KernelArgs,
    /// Include measured wall-clock fields in the JSON (not byte-stable).
    #[arg(long)]
    timings: bool,
    /// Also write the assembled Hamiltonian as JSON to this path.
    #[arg(long)]
    dump_qubo: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    scenario: PathBuf,
    /// Seeds to run each kernel on.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    seeds: Vec<u64>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 2048)]
    shots: u64,
    #[arg(long, default_value_t = 0.0)]
    noise_p: f64,
    #[arg(long, default_value_t = 2)]
    depth: usize,
}

#[derive(ValueEnum, Clone, Copy)]
#[value(rename_all = "snake_case")]
enum SweepAxis {
    LambdaFlow,
    DepthP,
    NoiseP,
}

#[derive(Args)]
struct SweepArgs {
    scenario: PathBuf,
    #[arg(long, value_enum)]
    axis: SweepAxis,
    /// Axis values, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    values: Vec<f64>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 2048)]
    shots: u64,
}

#[derive(ValueEnum, Clone, Copy)]
#[value(rename_all = "snake_case")]
enum WalkKindChoice {
    Adjacency,
    Laplacian,
    WeightedAdjacency,
}

impl From<WalkKindChoice> for WalkKind {
    fn from(value: WalkKindChoice) -> Self {
        match value {
            WalkKindChoice::Adjacency => WalkKind::Adjacency,
            WalkKindChoice::Laplacian => WalkKind::Laplacian,
            WalkKindChoice::WeightedAdjacency => WalkKind::WeightedAdjacency,
        }
    }
}

#[derive(Args)]
struct WalkArgs {
    scenario: PathBuf,
    #[arg(long, value_enum, default_value_t = WalkKindChoice::Adjacency)]
    kind: WalkKindChoice,
    /// End of the uniform time grid.
    #[arg(long, default_value_t = 10.0)]
    t_max: f64,
    /// Number of grid points (rows).
    #[arg(long, default_value_t = 50)]
    steps: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(ValueEnum, Clone, Copy)]
#[value(rename_all = "snake_case")]
enum KernelChoice {
    Qaoa,
    Grover,
    ClassicalOnly,
}

impl From<KernelChoice> for Kernel {
    fn from(value: KernelChoice) -> Self {
        match value {
            KernelChoice::Qaoa => Kernel::Qaoa,
            KernelChoice::Grover => Kernel::Grover,
            KernelChoice::ClassicalOnly => Kernel::ClassicalOnly,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::Gen(args) => cmd_gen(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Walk(args) => cmd_walk(args),
    }
}

fn load_scenario(path: &PathBuf) -> Result<Scenario, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Scenario::from_json(&text).map_err(|e| e.to_string())
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), String> {
    std::fs::write(path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn cmd_gen(args: GenArgs) -> Result<u8, String> {
    if args.nodes < 2 {
        return Err("need at least two nodes".into());
    }
    if !(0.0..=1.0).contains(&args.edge_prob) || !(0.0..=1.0).contains(&args.coupling_prob) {
        return Err("probabilities must lie in [0, 1]".into());
    }
    let params = GenParams {
        nodes: args.nodes,
        edge_prob: args.edge_prob,
        coupling_prob: args.coupling_prob,
        ..Default::default()
    };
    let scenario = generate(&params, args.seed).map_err(|e| e.to_string())?;
    write_file(&args.out, &scenario.to_json())?;
    Ok(0)
}

fn cmd_solve(args: SolveArgs) -> Result<u8, String> {
    let scenario = load_scenario(&args.scenario)?;
    let config = args.kernel.to_config();
    if let Some(path) = &args.dump_qubo {
        let (graph, weights, demand) = scenario.build().map_err(|e| e.to_string())?;
        let penalties = config.penalties.resolve(&graph, &weights);
        let model = build_total_hamiltonian(&graph, &weights, &demand, &penalties);
        write_file(path, &model.export_json())?;
    }
    let decision = run_pipeline(&scenario, &config).map_err(|e| e.to_string())?;
    let json = if args.timings {
        decision.to_json()
    } else {
        decision.to_canonical_json()
    };
    println!("{json}");
    Ok(if decision.feasible { 0 } else { 1 })
}

/// Fixed-precision scientific notation: 12 significant digits, locale-free.
fn fmt_f(value: f64) -> String {
    format!("{value:.11e}")
}

fn decision_row(kernel: &str, seed: u64, decision: &RoutingDecision) -> String {
    let ledger = &decision.ledger;
    format!(
        "{kernel},{seed},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        decision.feasible,
        decision.cost.map(fmt_f).unwrap_or_default(),
        decision.ratio.map(fmt_f).unwrap_or_default(),
        fmt_f(decision.feasibility_rate),
        decision.fallback_used,
        ledger.n_s,
        ledger.d_u,
        fmt_f(ledger.t_quantum_model),
        fmt_f(ledger.total),
        fmt_f(ledger.t_prep_wall),
        fmt_f(ledger.t_map_wall),
        fmt_f(ledger.t_quantum_wall),
        fmt_f(ledger.t_class_opt_wall),
        fmt_f(ledger.t_post_wall),
    )
}

const COMPARE_HEADER: &str = "kernel,seed,feasible,cost,ratio,feasibility_rate,fallback,\
n_s,d_u,t_quantum_model,total,t_prep_wall,t_map_wall,t_quantum_wall,t_class_opt_wall,t_post_wall";

fn cmd_compare(args: CompareArgs) -> Result<u8, String> {
    let scenario = load_scenario(&args.scenario)?;
    let mut csv = String::new();
    writeln!(csv, "{COMPARE_HEADER}").expect("string write");
    for kernel in [
        KernelChoice::Qaoa,
        KernelChoice::Grover,
        KernelChoice::ClassicalOnly,
    ] {
        for &seed in &args.seeds {
            let config = PipelineConfig {
                kernel: kernel.into(),
                seed,
                shots: args.shots.max(1),
                noise_p: args.noise_p,
                qaoa: QaoaSettings {
                    depth: args.depth.max(1),
                    ..Default::default()
                },
                ..Default::default()
            };
            let decision = run_pipeline(&scenario, &config).map_err(|e| e.to_string())?;
            let kernel_name: Kernel = kernel.into();
            writeln!(csv, "{}", decision_row(kernel_name.name(), seed, &decision))
                .expect("string write");
        }
    }
    write_file(&args.out, &csv)?;
    Ok(0)
}

fn cmd_sweep(args: SweepArgs) -> Result<u8, String> {
    if args.values.is_empty() {
        return Err("need at least one axis value".into());
    }
    let scenario = load_scenario(&args.scenario)?;
    let mut csv = String::new();
    writeln!(csv, "axis,value,f_opt,feasibility_rate,ratio,fallback").expect("string write");
    let axis_name = match args.axis {
        SweepAxis::LambdaFlow => "lambda_flow",
        SweepAxis::DepthP => "depth_p",
        SweepAxis::NoiseP => "noise_p",
    };
    // Depth sweeps warm-start each depth from the previous best schedule
    // padded with an identity layer, so the optimized objective can only
    // improve along the axis.
    let mut warm: Option<QaoaParams64> = None;
    for &value in &args.values {
        let mut config = PipelineConfig {
            kernel: Kernel::Qaoa,
            seed: args.seed,
            shots: args.shots.max(1),
            ..Default::default()
        };
        match args.axis {
            SweepAxis::LambdaFlow => {
                if value < 0.0 {
                    return Err("lambda_flow values must be nonnegative".into());
                }
                config.penalties.flow = Some(value);
            }
            SweepAxis::DepthP => {
                let depth = value.round();
                if depth < 1.0 || (depth - value).abs() > 1e-9 {
                    return Err("depth_p values must be positive integers".into());
                }
                config.qaoa.depth = depth as usize;
                if let Some(prev) = &warm {
                    let mut padded = prev.clone();
                    while padded.depth() < config.qaoa.depth {
                        padded = padded.padded();
                    }
                    if padded.depth() == config.qaoa.depth {
                        config.qaoa_init = Some(padded);
                    }
                }
            }
            SweepAxis::NoiseP => {
                if !(0.0..=1.0).contains(&value) {
                    return Err("noise_p values must lie in [0, 1]".into());
                }
                config.noise_p = value;
            }
        }
        let decision = run_pipeline(&scenario, &config).map_err(|e| e.to_string())?;
        if matches!(args.axis, SweepAxis::DepthP) {
            if let (Some(gammas), Some(betas)) = (&decision.qaoa_gammas, &decision.qaoa_betas) {
                warm = QaoaParams64::new(gammas.clone(), betas.clone()).ok();
            }
        }
        writeln!(
            csv,
            "{axis_name},{},{},{},{},{}",
            fmt_f(value),
            decision.objective.map(fmt_f).unwrap_or_default(),
            fmt_f(decision.feasibility_rate),
            decision.ratio.map(fmt_f).unwrap_or_default(),
            decision.fallback_used
        )
        .expect("string write");
    }
    write_file(&args.out, &csv)?;
    Ok(0)
}

fn cmd_walk(args: WalkArgs) -> Result<u8, String> {
    if args.steps == 0 {
        return Err("need at least one grid point".into());
    }
    if !(args.t_max.is_finite() && args.t_max >= 0.0) {
        return Err("t_max must be finite and nonnegative".into());
    }
    let scenario = load_scenario(&args.scenario)?;
    let (graph, weights, demand) = scenario.build().map_err(|e| e.to_string())?;
    let times: Vec<f64> = if args.steps == 1 {
        vec![0.0]
    } else {
        (0..args.steps)
            .map(|i| args.t_max * i as f64 / (args.steps - 1) as f64)
            .collect()
    };
    let profile = hitting_profile(
        &graph,
        &weights,
        demand.source,
        demand.dest,
        args.kind.into(),
        &times,
    )
    .map_err(|e| e.to_string())?;
    let mut csv = String::from("t,quantum_p,classical_p\n");
    for point in profile {
        writeln!(
            csv,
            "{},{},{}",
            fmt_f(point.t),
            fmt_f(point.quantum),
            fmt_f(point.classical)
        )
        .expect("string write");
    }
    write_file(&args.out, &csv)?;
    Ok(0)
}
