//! qeclab: catalogue inspection, single decodes, Monte Carlo sweeps,
//! threshold estimation, and Clifford circuit runs.
//!
//! Exit codes: 0 success, 1 usage error, 2 runtime error. All randomized
//! commands require an explicit --seed.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qeclab::codes::{build_named_code, catalogue, Family, StabilizerCode};
use qeclab::decode::{Decoder, DecoderKind};
use qeclab::mc::{
    self, estimate_threshold, run_trials, to_csv, ExperimentConfig, SweepRow,
};
use qeclab::noise::{sample_history, DefectRecord, ErrorModel, NoiseKind};
use qeclab::tableau::{CliffordCircuit, Gate, Tableau};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::io::Read as _;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "qeclab", version, about = "Stabilizer-code laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect the code catalogue.
    Codes {
        #[command(subcommand)]
        command: CodesCommand,
    },
    /// Decode one defect record (sampled or from a fixture file).
    Decode(DecodeArgs),
    /// Monte Carlo sweep over a (size, error-rate) grid.
    Sweep(SweepArgs),
    /// Estimate the threshold crossing from sweep results.
    Threshold(ThresholdArgs),
    /// Run Clifford circuits.
    Circuit {
        #[command(subcommand)]
        command: CircuitCommand,
    },
}

#[derive(Subcommand)]
enum CodesCommand {
    /// List the fixed-size catalogue members.
    List,
    /// Print a code's catalogue entry (checks, gauge generators, logicals).
    Show(CodeSelect),
    /// Check every code invariant; failures are reported with witnesses.
    Validate(CodeSelect),
    /// Exact code distance by weight search.
    Distance(DistanceArgs),
}

#[derive(Args, Clone)]
struct CodeSelect {
    /// Family name: rep-z, rep-x, two-qubit, c4, c6, c6c4, shor9, steane7,
    /// five-one-three, surface, toric, bacon-shor, subsystem-surface.
    #[arg(long)]
    family: String,
    /// Lattice size for surface/toric/subsystem-surface.
    #[arg(long = "L")]
    l: Option<usize>,
    /// Side length for bacon-shor, length for repetition codes.
    #[arg(long)]
    n: Option<usize>,
}

impl CodeSelect {
    fn resolve(&self) -> Result<(Family, StabilizerCode)> {
        let family = Family::parse(&self.family, self.l, self.n)?;
        let code = build_named_code(&family)?;
        Ok((family, code))
    }
}

#[derive(Args)]
struct DistanceArgs {
    #[command(flatten)]
    select: CodeSelect,
    /// Weight cap for the search; a bound is reported when exceeded.
    #[arg(long, default_value_t = 6)]
    cap: usize,
}

#[derive(Args)]
struct DecodeArgs {
    #[command(flatten)]
    select: CodeSelect,
    /// Decoder: ml, minweight, mwpm, rg, bs1d.
    #[arg(long)]
    decoder: String,
    /// Defect-record fixture file (deterministic decode).
    #[arg(long)]
    record: Option<std::path::PathBuf>,
    /// Physical error rate (per qubit per round).
    #[arg(long, default_value_t = 0.0)]
    p: f64,
    /// Measurement error rate (per check per round).
    #[arg(long, default_value_t = 0.0)]
    q: f64,
    /// Error model: bitflip, depolarizing, independent-xz.
    #[arg(long, default_value = "depolarizing")]
    model: String,
    /// Measurement rounds (defaults to 1, or L when q > 0).
    #[arg(long)]
    rounds: Option<usize>,
    /// Seed for sampling a fresh record (required without --record).
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    format: OutputFormat,
}

#[derive(Args)]
struct SweepArgs {
    /// Family name (surface, toric, bacon-shor, ...).
    #[arg(long)]
    family: String,
    /// Comma-separated lattice sizes, e.g. `8,12,16`.
    #[arg(long = "L")]
    l: Option<String>,
    /// Comma-separated bacon-shor/repetition sizes.
    #[arg(long)]
    n: Option<String>,
    /// Decoder name.
    #[arg(long)]
    decoder: String,
    /// Error-rate grid: a single value, comma list, or `a:b:n` for n
    /// points linearly spaced over [a, b].
    #[arg(long)]
    p: String,
    /// Measurement error rate (single value).
    #[arg(long, default_value_t = 0.0)]
    q: f64,
    /// Error model: bitflip, depolarizing, independent-xz.
    #[arg(long, default_value = "bitflip")]
    model: String,
    /// Measurement rounds: a number, or `auto` (1 when q = 0, else L).
    #[arg(long, default_value = "auto")]
    rounds: String,
    /// Trials per grid point.
    #[arg(long)]
    trials: u64,
    /// Base seed (required: sweeps are always randomized).
    #[arg(long)]
    seed: u64,
    /// Worker cap; defaults to QECLAB_JOBS or all cores.
    #[arg(long)]
    jobs: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Record wall time per point in the CSV (off by default so reruns are
    /// byte-identical).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct ThresholdArgs {
    /// Sweep CSV file ('-' or omitted reads stdin).
    #[arg(long)]
    input: Option<String>,
}

#[derive(Subcommand)]
enum CircuitCommand {
    /// Run a circuit file against the all-zeros state.
    Run(CircuitRunArgs),
}

#[derive(Args)]
struct CircuitRunArgs {
    /// Circuit text file: one gate per line (`H 3`, `CNOT 0 4`, `MEAS XXII`).
    #[arg(long)]
    file: std::path::PathBuf,
    /// Qubit count (inferred from the circuit when omitted).
    #[arg(long)]
    qubits: Option<usize>,
    /// Seed (required: measurements are randomized).
    #[arg(long)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Human,
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help/version requests are successes; anything else is a
            // usage error.
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Codes { command } => run_codes(command),
        Command::Decode(args) => run_decode(args),
        Command::Sweep(args) => run_sweep(args),
        Command::Threshold(args) => run_threshold(args),
        Command::Circuit {
            command: CircuitCommand::Run(args),
        } => run_circuit(args),
    }
}

fn run_codes(command: CodesCommand) -> Result<()> {
    match command {
        CodesCommand::List => {
            println!("{:<24} {:>5} {:>3}  checks  gauge", "family", "n", "k");
            for family in catalogue() {
                let code = build_named_code(&family)?;
                println!(
                    "{:<24} {:>5} {:>3}  {:>6}  {:>5}",
                    family.to_string(),
                    code.n(),
                    code.k(),
                    code.stabilizer_gens().len(),
                    code.gauge_gens().len(),
                );
            }
            Ok(())
        }
        CodesCommand::Show(select) => {
            let (_, code) = select.resolve()?;
            print!("{}", code.to_catalogue_text());
            Ok(())
        }
        CodesCommand::Validate(select) => {
            let (family, code) = select.resolve()?;
            let report = code.validate();
            if report.passed() {
                println!("{family}: ok");
                Ok(())
            } else {
                bail!("{family}: invariants violated\n{report}")
            }
        }
        CodesCommand::Distance(args) => {
            let (family, code) = args.select.resolve()?;
            println!("{family}: d {}", match code.distance(args.cap) {
                qeclab::codes::Distance::Exact(d) => format!("= {d}"),
                bound => format!("{bound}"),
            });
            Ok(())
        }
    }
}

fn parse_model(name: &str, p: f64) -> Result<NoiseKind> {
    Ok(match name {
        "bitflip" => NoiseKind::BitFlip { p },
        "depolarizing" => NoiseKind::Depolarizing { p },
        "independent-xz" | "xz" => NoiseKind::IndependentXZ { p },
        other => bail!("unknown error model '{other}'"),
    })
}

fn run_decode(args: DecodeArgs) -> Result<()> {
    let (family, code) = args.select.resolve()?;
    let kind = DecoderKind::from_str(&args.decoder)?;
    let model = ErrorModel::new(parse_model(&args.model, args.p)?, args.q)?;
    let decoder = Decoder::new(kind, &code, &model)?;
    let default_rounds = if args.q > 0.0 {
        args.select.l.or(args.select.n).unwrap_or(1)
    } else {
        1
    };
    let rounds = args.rounds.unwrap_or(default_rounds);
    let (record, truth_known) = match &args.record {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            (DefectRecord::parse(&text, code.n())?, false)
        }
        None => {
            let seed = args
                .seed
                .ok_or_else(|| anyhow!("--seed is required when sampling a record"))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (
                sample_history(&code, &model, rounds, true, &mut rng),
                true,
            )
        }
    };
    let correction = decoder.decode(&record)?;
    let success = if truth_known {
        let residual = record.true_final_error().mul(&correction.pauli)?;
        let class = qeclab::noise::logical_class(&code, &residual)?;
        Some(!correction.decoder_failure && class.is_trivial())
    } else {
        None
    };
    match args.format {
        OutputFormat::Json => {
            let value = serde_json::json!({
                "family": family.to_string(),
                "decoder": kind.name(),
                "events": record.events().len(),
                "class": correction.class.to_string(),
                "correction": correction.pauli.to_string(),
                "decoder_failure": correction.decoder_failure,
                "success_against_truth": success,
            });
            println!("{}", serde_json::to_string_pretty(&value)?);
        }
        _ => {
            println!("family:     {family}");
            println!("decoder:    {}", kind.name());
            println!("events:     {}", record.events().len());
            println!("class:      {}", correction.class);
            println!("correction: {}", correction.pauli);
            if correction.decoder_failure {
                println!("decoder reported failure (residual defects)");
            }
            if let Some(ok) = success {
                println!("against sampled truth: {}", if ok { "success" } else { "logical failure" });
            }
        }
    }
    Ok(())
}

/// Parse `a:b:n` (n points, inclusive endpoints), a comma list, or a single
/// value.
fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            bail!("range must be a:b:n, got '{spec}'");
        }
        let a: f64 = parts[0].parse().context("bad range start")?;
        let b: f64 = parts[1].parse().context("bad range end")?;
        let n: usize = parts[2].parse().context("bad range count")?;
        if n < 1 {
            bail!("range needs at least 1 point");
        }
        if n == 1 {
            return Ok(vec![a]);
        }
        Ok((0..n)
            .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
            .collect())
    } else {
        spec.split(',')
            .map(|t| t.trim().parse::<f64>().with_context(|| format!("bad value '{t}'")))
            .collect()
    }
}

fn parse_sizes(spec: &str) -> Result<Vec<usize>> {
    spec.split(',')
        .map(|t| t.trim().parse::<usize>().with_context(|| format!("bad size '{t}'")))
        .collect()
}

fn run_sweep(args: SweepArgs) -> Result<()> {
    let sizes: Vec<(Option<usize>, Option<usize>)> = match (&args.l, &args.n) {
        (Some(ls), None) => parse_sizes(ls)?.into_iter().map(|l| (Some(l), None)).collect(),
        (None, Some(ns)) => parse_sizes(ns)?.into_iter().map(|n| (None, Some(n))).collect(),
        (None, None) => vec![(None, None)],
        (Some(_), Some(_)) => bail!("pass either --L or --n, not both"),
    };
    let ps = parse_grid(&args.p)?;
    let kind = DecoderKind::from_str(&args.decoder)?;
    let jobs = args
        .jobs
        .or_else(|| {
            std::env::var("QECLAB_JOBS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(0);
    let mut rows: Vec<SweepRow> = Vec::new();
    for &(l, n) in &sizes {
        let family = Family::parse(&args.family, l, n)?;
        let rounds = match args.rounds.as_str() {
            "auto" => {
                if args.q > 0.0 {
                    l.or(n).ok_or_else(|| {
                        anyhow!("--rounds auto with q > 0 needs a sized family (--L/--n)")
                    })?
                } else {
                    1
                }
            }
            text => text.parse().context("bad --rounds")?,
        };
        for &p in &ps {
            let model = ErrorModel::new(parse_model(&args.model, p)?, args.q)?;
            let cfg = ExperimentConfig {
                family: family.clone(),
                model,
                decoder: kind,
                trials: args.trials,
                rounds,
                base_seed: args.seed,
                jobs,
            };
            let t0 = Instant::now();
            let stats = run_trials(&cfg)?;
            let wall = t0.elapsed().as_secs_f64();
            let (fam, params) = mc::family_columns(&family);
            rows.push(SweepRow {
                family: fam,
                params,
                decoder: kind.name().into(),
                p,
                q: args.q,
                rounds,
                stats,
                seed: args.seed,
                wall_time_s: args.timing.then_some(wall),
            });
        }
    }
    let output = match args.format {
        OutputFormat::Csv => to_csv(&rows),
        OutputFormat::Json => {
            let value = serde_json::json!({
                "schema": 1,
                "family": args.family,
                "decoder": kind.name(),
                "model": args.model,
                "q": args.q,
                "trials": args.trials,
                "seed": args.seed,
                "rows": rows,
            });
            serde_json::to_string_pretty(&value)? + "\n"
        }
        OutputFormat::Human => {
            let mut s = format!(
                "{:<20} {:>9} {:>8} {:>10} {:>12}\n",
                "code", "p", "trials", "failures", "p_logical"
            );
            for r in &rows {
                s += &format!(
                    "{:<20} {:>9.5} {:>8} {:>10} {:>12.5e}\n",
                    format!("{} {}", r.family, r.params),
                    r.p,
                    r.stats.trials,
                    r.stats.failures,
                    r.stats.estimate
                );
            }
            s
        }
    };
    match &args.out {
        Some(path) => std::fs::write(path, output)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{output}"),
    }
    Ok(())
}

fn run_threshold(args: ThresholdArgs) -> Result<()> {
    let text = match args.input.as_deref() {
        None | Some("-") => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            buf
        }
        Some(path) => std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?,
    };
    let curves = mc::curves_from_csv(&text)?;
    let est = estimate_threshold(&curves)?;
    for (a, b, p) in &est.crossings {
        println!("crossing {a} / {b}: p = {p:.5}");
    }
    println!(
        "p_c = {:.5} (spread {:.5} .. {:.5}, {} curves)",
        est.median,
        est.spread_low,
        est.spread_high,
        curves.len()
    );
    Ok(())
}

fn run_circuit(args: CircuitRunArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.file)
        .with_context(|| format!("reading {}", args.file.display()))?;
    let circuit = CliffordCircuit::parse(&text)?;
    let needed = circuit
        .gates
        .iter()
        .map(|g| match g {
            Gate::H(q) | Gate::S(q) | Gate::X(q) | Gate::Z(q) => q + 1,
            Gate::Cnot(c, t) => c.max(t) + 1,
            Gate::Measure(p) => p.n(),
        })
        .max()
        .unwrap_or(0);
    let qubits = args.qubits.unwrap_or(needed);
    let mut tableau = Tableau::zero_state(qubits);
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let outcomes = circuit.run(&mut tableau, &mut rng)?;
    for (i, o) in outcomes.iter().enumerate() {
        println!(
            "measurement {i}: {}{}",
            if o.value > 0 { "+1" } else { "-1" },
            if o.deterministic { " (deterministic)" } else { "" }
        );
    }
    Ok(())
}
