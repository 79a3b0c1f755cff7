//! Thin command-line front end over the `hyperfn` library.
//!
//! Exit codes: 0 success, 2 validation/usage error (single machine-parsable
//! line on stderr), 3 I/O error. Every run emits a JSON manifest line on
//! stderr; `--manifest PATH` additionally writes it to a file.

use clap::{Args, Parser, Subcommand};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use hyperfn::inflation::{self, MarketConfig};
use hyperfn::manifest::RunManifest;
use hyperfn::preference::{build_preference, choose, PreferenceSpec};
use hyperfn::production::{abandonment_order, bb_triangle, ProcessGraph};
use hyperfn::risk::{project_revenue, MixedDatum, RevenueModel};
use hyperfn::switch::SwitchExpr;
use hyperfn::{ComplexScalar, EvalConfig, Hyperfunction};

#[derive(Parser)]
#[command(name = "hyperfn", version, about = "Boundary-value calculus and market experiments")]
struct Cli {
    /// Also write the run manifest to this path.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hyperfunction operations.
    Hyper {
        #[command(subcommand)]
        cmd: HyperCmd,
    },
    /// Switch circuit operations.
    Switch {
        #[command(subcommand)]
        cmd: SwitchCmd,
    },
    /// Preference hierarchy operations.
    Pref {
        #[command(subcommand)]
        cmd: PrefCmd,
    },
    /// Production structure operations.
    Prod {
        #[command(subcommand)]
        cmd: ProdCmd,
    },
    /// Inflation experiment operations.
    Inflate {
        #[command(subcommand)]
        cmd: InflateCmd,
    },
    /// Interval-data revenue operations.
    Risk {
        #[command(subcommand)]
        cmd: RiskCmd,
    },
}

#[derive(Subcommand)]
enum HyperCmd {
    /// Evaluate a hyperfunction at a real point.
    Eval(HyperEvalArgs),
}

#[derive(Args)]
struct HyperEvalArgs {
    /// Catalog term, repeatable: const:C | step:A | delta:A | interval:A,B
    /// (an optional *W suffix scales the term).
    #[arg(long = "term")]
    terms: Vec<String>,
    /// JSON hyperfunction file used instead of --term.
    #[arg(long)]
    hf: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    x: f64,
    /// numeric (extrapolated boundary limit) or closed (exact piecewise).
    #[arg(long, default_value = "numeric")]
    mode: String,
}

#[derive(Subcommand)]
enum SwitchCmd {
    /// Evaluate a switch expression file against an input vector.
    Eval {
        #[arg(long)]
        expr: PathBuf,
        /// Comma-separated input vector bound to {"var": k} operands.
        #[arg(long, default_value = "")]
        inputs: String,
    },
}

#[derive(Subcommand)]
enum PrefCmd {
    /// Choose between two labels under a preference spec.
    Choose {
        #[arg(long)]
        spec: PathBuf,
        /// Two labels: A,B
        #[arg(long)]
        pair: String,
    },
}

#[derive(Subcommand)]
enum ProdCmd {
    /// Structure-of-production triangle data as CSV.
    Triangle {
        #[arg(long)]
        graph: PathBuf,
        /// Strictly increasing order cutpoints: 1,2,3
        #[arg(long)]
        bins: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Abandonment schedule under a rising rate path as CSV.
    Abandon {
        #[arg(long)]
        graph: PathBuf,
        /// Strictly increasing rates: 0.01,0.02
        #[arg(long)]
        rates: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum InflateCmd {
    /// Welfare sensitivity sweep over inflation impulses.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Ascending epsilons starting at 0: 0,0.001,...
        #[arg(long)]
        epsilons: String,
        /// CSV output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for the per-point JSON welfare reports.
        #[arg(long = "report-dir")]
        report_dir: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum RiskCmd {
    /// Project revenue over mixed point/interval/event data.
    Project {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        data: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        rate: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        now: f64,
    },
}

enum CliError {
    Usage(String),
    Io(String),
}

impl CliError {
    fn usage(code: &str, msg: impl std::fmt::Display) -> CliError {
        CliError::Usage(format!("error: {code}: {msg}"))
    }
}

trait IntoUsage<T> {
    fn usage(self) -> Result<T, CliError>;
}

macro_rules! impl_into_usage {
    ($($err:ty),+) => {$(
        impl<T> IntoUsage<T> for Result<T, $err> {
            fn usage(self) -> Result<T, CliError> {
                self.map_err(|e| CliError::usage(e.code(), e))
            }
        }
    )+};
}

impl_into_usage!(
    hyperfn::HyperError,
    hyperfn::switch::SwitchError,
    hyperfn::preference::PreferenceError,
    hyperfn::production::ProductionError,
    hyperfn::inflation::MarketError,
    hyperfn::risk::RiskError
);

fn main() -> ExitCode {
    // HYPERFN_THREADS caps the sweep fan-out.
    if let Ok(threads) = std::env::var("HYPERFN_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(manifest) => {
            eprintln!("{}", manifest.to_json());
            if let Some(path) = &cli.manifest {
                if std::fs::write(path, manifest.to_json()).is_err() {
                    eprintln!("error: IO: cannot write manifest {}", path.display());
                    return ExitCode::from(3);
                }
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: IO: {msg}");
            ExitCode::from(3)
        }
    }
}

fn read_file(path: &PathBuf) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write_file(path: &PathBuf, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(bytes: &[u8], what: &str) -> Result<T, CliError> {
    serde_json::from_slice(bytes).map_err(|e| CliError::usage("BAD_JSON", format!("{what}: {e}")))
}

fn parse_f64_list(s: &str, what: &str) -> Result<Vec<f64>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|e| CliError::usage("BAD_NUMBER", format!("{what}: {p}: {e}")))
        })
        .collect()
}

/// `kind:params` with an optional `*weight` suffix.
fn parse_term(spec: &str) -> Result<Hyperfunction, CliError> {
    let (body, weight) = match spec.split_once('*') {
        Some((b, w)) => (
            b,
            w.parse::<f64>()
                .map_err(|e| CliError::usage("BAD_TERM", format!("{spec}: {e}")))?,
        ),
        None => (spec, 1.0),
    };
    let (kind, params) = body
        .split_once(':')
        .ok_or_else(|| CliError::usage("BAD_TERM", format!("{spec}: expected kind:params")))?;
    let nums = parse_f64_list(params, "term params")?;
    let hf = match (kind, nums.as_slice()) {
        ("const", [c]) => Hyperfunction::constant(ComplexScalar::new(*c, 0.0).usage()?),
        ("const", [re, im]) => Hyperfunction::constant(ComplexScalar::new(*re, *im).usage()?),
        ("step", [a]) => Hyperfunction::step(*a).usage()?,
        ("delta", [a]) => Hyperfunction::delta(*a).usage()?,
        ("interval", [a, b]) => Hyperfunction::interval(*a, *b).usage()?,
        _ => {
            return Err(CliError::usage(
                "BAD_TERM",
                format!("{spec}: unknown kind or wrong arity"),
            ))
        }
    };
    Ok(hf.scale(ComplexScalar::new(weight, 0.0).usage()?))
}

fn round_sig(v: f64, digits: i32) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    let mag = v.abs().log10().floor() as i32;
    let factor = 10f64.powi(digits - 1 - mag);
    (v * factor).round() / factor
}

fn format_value(v: ComplexScalar) -> String {
    // Residue below the default evaluation tolerance is numeric dust.
    let snap = |x: f64| if x.abs() < 1e-9 { 0.0 } else { x };
    let re = round_sig(snap(v.re()), 12);
    let im = round_sig(snap(v.im()), 12);
    if im == 0.0 {
        format!("{re}")
    } else if im > 0.0 {
        format!("{re}+{im}i")
    } else {
        format!("{re}{im}i")
    }
}

fn run(cli: &Cli) -> Result<RunManifest, CliError> {
    match &cli.command {
        Command::Hyper { cmd } => match cmd {
            HyperCmd::Eval(args) => hyper_eval(args),
        },
        Command::Switch { cmd } => match cmd {
            SwitchCmd::Eval { expr, inputs } => switch_eval(expr, inputs),
        },
        Command::Pref { cmd } => match cmd {
            PrefCmd::Choose { spec, pair } => pref_choose(spec, pair),
        },
        Command::Prod { cmd } => match cmd {
            ProdCmd::Triangle { graph, bins, out } => prod_triangle(graph, bins, out.as_ref()),
            ProdCmd::Abandon { graph, rates, out } => prod_abandon(graph, rates, out.as_ref()),
        },
        Command::Inflate { cmd } => match cmd {
            InflateCmd::Sweep {
                config,
                epsilons,
                out,
                report_dir,
            } => inflate_sweep(config, epsilons, out.as_ref(), report_dir.as_ref()),
        },
        Command::Risk { cmd } => match cmd {
            RiskCmd::Project {
                model,
                data,
                rate,
                now,
            } => risk_project(model, data, *rate, *now),
        },
    }
}

fn hyper_eval(args: &HyperEvalArgs) -> Result<RunManifest, CliError> {
    let mut parts: Vec<Vec<u8>> = vec![format!("{}|{}", args.x, args.mode).into_bytes()];
    let hf = if let Some(path) = &args.hf {
        let bytes = read_file(path)?;
        parts.push(bytes.clone());
        parse_json::<Hyperfunction>(&bytes, "hyperfunction")?
    } else {
        if args.terms.is_empty() {
            return Err(CliError::usage("USAGE", "need --term or --hf"));
        }
        let mut hf = Hyperfunction::zero();
        for spec in &args.terms {
            parts.push(spec.clone().into_bytes());
            hf = hf.add(&parse_term(spec)?);
        }
        hf
    };
    let value = match args.mode.as_str() {
        "numeric" => hf.eval_numeric(args.x, &EvalConfig::default()).usage()?,
        "closed" => hf.eval_closed_value(args.x).usage()?,
        other => return Err(CliError::usage("USAGE", format!("unknown mode {other}"))),
    };
    println!("{}", format_value(value));
    let part_refs: Vec<&[u8]> = parts.iter().map(|p| p.as_slice()).collect();
    Ok(RunManifest::new("hyper eval", &part_refs, None))
}

fn switch_eval(expr_path: &PathBuf, inputs: &str) -> Result<RunManifest, CliError> {
    let bytes = read_file(expr_path)?;
    let expr: SwitchExpr = parse_json(&bytes, "switch expression")?;
    let input_vec = parse_f64_list(inputs, "--inputs")?;
    let value = expr.eval(&input_vec).usage()?;
    println!("{value}");
    Ok(RunManifest::new(
        "switch eval",
        &[&bytes, inputs.as_bytes()],
        None,
    ))
}

fn pref_choose(spec_path: &PathBuf, pair: &str) -> Result<RunManifest, CliError> {
    let bytes = read_file(spec_path)?;
    let spec: PreferenceSpec = parse_json(&bytes, "preference spec")?;
    let labels = parse_f64_list(pair, "--pair")?;
    if labels.len() != 2 {
        return Err(CliError::usage("USAGE", "--pair expects exactly two labels"));
    }
    let pref = build_preference(&spec).usage()?;
    let winner = choose(&pref, labels[0], labels[1]).usage()?;
    println!("{winner}");
    Ok(RunManifest::new(
        "pref choose",
        &[&bytes, pair.as_bytes()],
        None,
    ))
}

fn prod_triangle(
    graph_path: &PathBuf,
    bins: &str,
    out: Option<&PathBuf>,
) -> Result<RunManifest, CliError> {
    let bytes = read_file(graph_path)?;
    let graph: ProcessGraph = parse_json(&bytes, "process graph")?;
    let cutpoints = parse_f64_list(bins, "--bins")?;
    let rows = bb_triangle(&graph, &cutpoints).usage()?;
    let mut csv = String::from("# hyperfn:triangle:v1\norder_lo,order_hi,frequency\n");
    for row in &rows {
        csv.push_str(&format!(
            "{},{},{}\n",
            row.order_lo, row.order_hi, row.total_frequency
        ));
    }
    let mut manifest = RunManifest::new("prod triangle", &[&bytes, bins.as_bytes()], None);
    emit_csv(&csv, out, &mut manifest)?;
    Ok(manifest)
}

fn prod_abandon(
    graph_path: &PathBuf,
    rates: &str,
    out: Option<&PathBuf>,
) -> Result<RunManifest, CliError> {
    let bytes = read_file(graph_path)?;
    let graph: ProcessGraph = parse_json(&bytes, "process graph")?;
    let rate_path = parse_f64_list(rates, "--rates")?;
    let events = abandonment_order(graph.tasks(), &rate_path).usage()?;
    let mut csv = String::from("# hyperfn:abandon:v1\ntask_label,rate_index,rate\n");
    for e in &events {
        csv.push_str(&format!("{},{},{}\n", e.label, e.rate_index, e.rate));
    }
    let mut manifest = RunManifest::new("prod abandon", &[&bytes, rates.as_bytes()], None);
    emit_csv(&csv, out, &mut manifest)?;
    Ok(manifest)
}

fn inflate_sweep(
    config_path: &PathBuf,
    epsilons: &str,
    out: Option<&PathBuf>,
    report_dir: Option<&PathBuf>,
) -> Result<RunManifest, CliError> {
    let bytes = read_file(config_path)?;
    let config: MarketConfig = parse_json(&bytes, "market config")?;
    let eps = parse_f64_list(epsilons, "--epsilons")?;
    let points = inflation::sensitivity_sweep(&config, &eps).usage()?;
    let mut csv = String::from("# hyperfn:sweep:v1\nepsilon,welfare,drop_ratio,nonproportional_flag\n");
    for p in &points {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            p.epsilon, p.welfare, p.drop_ratio, p.nonproportional as u8
        ));
    }
    let mut manifest = RunManifest::new(
        "inflate sweep",
        &[&bytes, epsilons.as_bytes()],
        Some(config.seed),
    );
    emit_csv(&csv, out, &mut manifest)?;
    if let Some(dir) = report_dir {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        for (i, p) in points.iter().enumerate() {
            let path = dir.join(format!("report_{i:03}.json"));
            let json = serde_json::to_string_pretty(&p.report)
                .map_err(|e| CliError::Io(e.to_string()))?;
            write_file(&path, json.as_bytes())?;
            manifest.record_output(&path.display().to_string());
        }
    }
    Ok(manifest)
}

fn risk_project(
    model_path: &PathBuf,
    data_path: &PathBuf,
    rate: f64,
    now: f64,
) -> Result<RunManifest, CliError> {
    let model_bytes = read_file(model_path)?;
    let data_bytes = read_file(data_path)?;
    let model: RevenueModel = parse_json(&model_bytes, "revenue model")?;
    let data: BTreeMap<String, MixedDatum> = parse_json(&data_bytes, "data map")?;
    let projection = project_revenue(&model, &data, rate, now).usage()?;
    println!(
        "{}",
        serde_json::json!({"lo": projection.lo(), "hi": projection.hi()})
    );
    Ok(RunManifest::new(
        "risk project",
        &[
            &model_bytes,
            &data_bytes,
            format!("{rate}|{now}").as_bytes(),
        ],
        None,
    ))
}

fn emit_csv(
    csv: &str,
    out: Option<&PathBuf>,
    manifest: &mut RunManifest,
) -> Result<(), CliError> {
    match out {
        Some(path) => {
            write_file(path, csv.as_bytes())?;
            manifest.record_output(&path.display().to_string());
        }
        None => print!("{csv}"),
    }
    Ok(())
}
