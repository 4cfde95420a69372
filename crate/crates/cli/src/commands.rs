use std::fs::File;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qent4::entanglement::{
    avg_entropy_e1, avg_entropy_e2, cut_spectrum, entropy_with_unit, single_qubit_spectrum,
    tangle_summary, EntropyMeasure, EntropyUnit,
};
use qent4::invariants::{four_tangle, invariant_vector, Cut, InvariantVector};
use qent4::search::{
    identify, optimize_e2, predicted_winner, Direction, SearchConfig, SearchFamily,
};
use qent4::states::{
    haar_random, sample_class_a, sample_class_c, sample_class_m, sample_t_min, PureState4, Qubit,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::document::{read_documents, Accepted, StateDocument, StateLabel};
use crate::error::{CliError, CliResult};
use crate::figure::{figure_rows, to_csv, AlphaGrid, CurveFamily};
use crate::verify::{e1_evidence, format_report, run_suite, Suite};

/// Tolerance for matching an optimizer result to the predicted winner.
const WINNER_TOL: f64 = 1e-5;

#[derive(Debug, Parser)]
#[command(name = "qent4", version, about = "Entanglement invariants, tangles and entropies of four-qubit pure states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Polynomial invariants E0..E3, f0..f6 and the four-tangle.
    Invariants(InputArgs),
    /// Per-cut tangles, tau1, tau2 and the four-tangle.
    Tangles(InputArgs),
    /// Entropies of every cut and their averages.
    Entropy(EntropyArgs),
    /// Reduced-state spectra, sorted descending.
    Spectra(InputArgs),
    /// Run the randomized property suites.
    Verify(VerifyArgs),
    /// Write average-entropy curves over an alpha grid as CSV.
    Figure(FigureArgs),
    /// Search for extremal average 2-vs-2 entropy.
    Optimize(OptimizeArgs),
    /// Draw random states from a family as state documents.
    Sample(SampleArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// File of newline-delimited state documents, or `-` for stdin.
    #[arg(required_unless_present = "state", conflicts_with = "state")]
    pub input: Option<String>,
    /// Use a built-in state instead (GHZ4, C1, C2, C3, L, M or eqlast:<theta>).
    #[arg(long)]
    pub state: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum EntropyFamilyArg {
    Tsallis,
    Renyi,
    Vn,
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum)]
    pub family: EntropyFamilyArg,
    /// Entropy order; ignored for `vn`.
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SuiteArg {
    Fast,
    Full,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "fast")]
    pub suite: SuiteArg,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Samples per randomized property; defaults to 1000 (fast) or 100000 (full).
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Comma-separated state labels.
    #[arg(long, value_delimiter = ',', default_value = "M,L,C1")]
    pub states: Vec<String>,
    /// Comma-separated curve families: tsallis, renyi.
    #[arg(long, value_delimiter = ',', default_value = "tsallis")]
    pub family: Vec<String>,
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    pub alpha_min: f64,
    #[arg(long, default_value_t = 6.0, allow_negative_numbers = true)]
    pub alpha_max: f64,
    #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
    pub alpha_step: f64,
    /// Output path; stdout when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    /// `tsallis:<alpha>`, `renyi:<alpha>` or `vn`.
    #[arg(long)]
    pub objective: String,
    /// classA, classM or eqLastTheta.
    #[arg(long, default_value = "classA")]
    pub family: String,
    /// maximize or minimize.
    #[arg(long, default_value = "maximize")]
    pub direction: String,
    #[arg(long, default_value_t = SearchConfig::DEFAULT_RESTARTS)]
    pub restarts: usize,
    #[arg(long, default_value_t = SearchConfig::DEFAULT_MAX_ITERS)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = SearchConfig::DEFAULT_TOLERANCE)]
    pub tolerance: f64,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    /// A (class A), M (class M), C (class C) or Tmin; also `haar`.
    #[arg(long)]
    pub family: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Output path; stdout when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// Where a command's data and diagnostics go.
pub struct Io<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

fn load_states(args: &InputArgs, io: &mut Io) -> CliResult<Vec<PureState4>> {
    if let Some(label) = &args.state {
        return Ok(vec![label.parse::<StateLabel>()?.state()]);
    }
    let path = args.input.as_deref().unwrap_or("-");
    let docs: Vec<Accepted> = if path == "-" {
        read_documents(&mut *io.stdin)?
    } else {
        let file = File::open(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
        read_documents(file)?
    };
    let mut states = Vec::with_capacity(docs.len());
    for d in docs {
        if let Some(w) = d.warning {
            writeln!(io.stderr, "warning: {w}")?;
        }
        states.push(d.state);
    }
    Ok(states)
}

fn emit(io: &mut Io, v: &Value) -> CliResult<()> {
    writeln!(io.stdout, "{v}")?;
    Ok(())
}

fn pair(c: num_complex::Complex64) -> Value {
    json!([c.re, c.im])
}

fn invariants_json(iv: &InvariantVector, four: f64) -> Value {
    json!({
        "E": iv.e.iter().map(|c| pair(*c)).collect::<Vec<_>>(),
        "f": iv.f,
        "four_tangle": four,
    })
}

fn per_cut<T: Into<Value> + Copy>(values: [T; 3]) -> Value {
    let mut m = Map::new();
    for (cut, v) in Cut::ALL.iter().zip(values) {
        m.insert(cut.label().to_string(), v.into());
    }
    Value::Object(m)
}

fn per_qubit<T: Into<Value> + Copy>(values: [T; 4]) -> Value {
    let mut m = Map::new();
    for (q, v) in Qubit::ALL.iter().zip(values) {
        m.insert(q.to_string(), v.into());
    }
    Value::Object(m)
}

fn cmd_invariants(args: &InputArgs, io: &mut Io) -> CliResult<()> {
    for s in load_states(args, io)? {
        let v = invariants_json(&invariant_vector(&s)?, four_tangle(&s)?);
        emit(io, &v)?;
    }
    Ok(())
}

fn cmd_tangles(args: &InputArgs, io: &mut Io) -> CliResult<()> {
    for s in load_states(args, io)? {
        let t = tangle_summary(&s)?;
        let v = json!({
            "per_cut": per_cut(t.per_cut),
            "one_vs_three": per_qubit(t.one_vs_three),
            "tau1": t.tau1,
            "tau2": t.tau2,
            "four_tangle": t.four_tangle,
        });
        emit(io, &v)?;
    }
    Ok(())
}

fn unit_label(u: EntropyUnit) -> &'static str {
    match u {
        EntropyUnit::Bits => "bits",
        EntropyUnit::Nats => "nats",
        EntropyUnit::Dimensionless => "dimensionless",
    }
}

fn cmd_entropy(args: &EntropyArgs, io: &mut Io) -> CliResult<()> {
    let m = match args.family {
        EntropyFamilyArg::Tsallis => EntropyMeasure::tsallis(args.alpha),
        EntropyFamilyArg::Renyi => EntropyMeasure::renyi(args.alpha),
        EntropyFamilyArg::Vn => EntropyMeasure::von_neumann(),
    };
    m.validate()?;
    for s in load_states(&args.input, io)? {
        let mut cuts = [0.0; 3];
        let mut unit = EntropyUnit::Bits;
        for (slot, cut) in cuts.iter_mut().zip(Cut::ALL) {
            let (v, u) = entropy_with_unit(&cut_spectrum(&s, cut)?, &m)?;
            *slot = v;
            unit = u;
        }
        let mut singles = [0.0; 4];
        for (slot, q) in singles.iter_mut().zip(Qubit::ALL) {
            *slot = entropy_with_unit(&single_qubit_spectrum(&s, q)?, &m)?.0;
        }
        let v = json!({
            "measure": m.to_string(),
            "unit": unit_label(unit),
            "per_cut": per_cut(cuts),
            "E2": avg_entropy_e2(&s, &m)?,
            "one_vs_three": per_qubit(singles),
            "E1": avg_entropy_e1(&s, &m)?,
        });
        emit(io, &v)?;
    }
    Ok(())
}

fn cmd_spectra(args: &InputArgs, io: &mut Io) -> CliResult<()> {
    for s in load_states(args, io)? {
        let mut cuts = Map::new();
        for cut in Cut::ALL {
            cuts.insert(cut.label().into(), json!(cut_spectrum(&s, cut)?.values));
        }
        let mut singles = Map::new();
        for q in Qubit::ALL {
            singles.insert(q.to_string(), json!(single_qubit_spectrum(&s, q)?.values));
        }
        emit(io, &json!({ "two_vs_two": cuts, "one_vs_three": singles }))?;
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs, io: &mut Io) -> CliResult<()> {
    let suite = match args.suite {
        SuiteArg::Fast => Suite::Fast,
        SuiteArg::Full => Suite::Full,
    };
    let samples = args.samples.unwrap_or_else(|| suite.default_samples());
    if samples == 0 {
        return Err(CliError::Config("samples must be positive".into()));
    }
    let results = run_suite(suite, args.seed, samples)?;
    write!(io.stdout, "{}", format_report(&results))?;
    for line in e1_evidence(args.seed, samples.div_ceil(10))? {
        writeln!(io.stdout, "{line}")?;
    }
    let failed: Vec<&str> = results.iter().filter(|r| !r.passed()).map(|r| r.name).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verify(format!("failed properties: {}", failed.join("; "))))
    }
}

fn write_output(path: &Option<PathBuf>, content: &str, io: &mut Io) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            io.stdout.write_all(content.as_bytes())?;
            Ok(())
        }
    }
}

fn cmd_figure(args: &FigureArgs, io: &mut Io) -> CliResult<()> {
    let states = args
        .states
        .iter()
        .map(|s| s.parse::<StateLabel>())
        .collect::<CliResult<Vec<_>>>()?;
    let families = args
        .family
        .iter()
        .map(|s| s.parse::<CurveFamily>())
        .collect::<CliResult<Vec<_>>>()?;
    if states.is_empty() || families.is_empty() {
        return Err(CliError::Config("at least one state and one family are required".into()));
    }
    let grid = AlphaGrid::new(args.alpha_min, args.alpha_max, args.alpha_step)?;
    let rows = figure_rows(&states, &families, &grid)?;
    write_output(&args.output, &to_csv(&rows), io)
}

fn cmd_optimize(args: &OptimizeArgs, io: &mut Io) -> CliResult<()> {
    let cfg = SearchConfig {
        restarts: args.restarts,
        max_iters: args.max_iters,
        seed: args.seed,
        tolerance: args.tolerance,
        family: args.family.parse::<SearchFamily>()?,
        objective: args.objective.parse::<EntropyMeasure>()?,
        direction: args.direction.parse::<Direction>()?,
    };
    cfg.validate()?;
    let result = optimize_e2(&cfg)?;
    let winner = predicted_winner(&cfg);
    let matched = match winner {
        Some(w) => identify(&result.best_state, w, WINNER_TOL)?,
        None => None,
    };
    let verdict = match (winner, matched) {
        (Some(_), Some(label)) => format!("equivalent to {label}"),
        (Some(w), None) => format!("not shown equivalent to {w}"),
        (None, _) => "no predicted winner".to_string(),
    };
    let v = json!({
        "family": cfg.family.label(),
        "objective": cfg.objective.to_string(),
        "direction": cfg.direction.label(),
        "seed": cfg.seed,
        "restarts": cfg.restarts,
        "best_value": result.best_value,
        "best_params": result.best_params,
        "trace": result.trace,
        "best_state": StateDocument::from_state(&result.best_state),
        "invariants": invariants_json(&invariant_vector(&result.best_state)?, four_tangle(&result.best_state)?),
        "predicted_winner": winner.map(|w| w.label()),
        "matched": matched,
        "verdict": verdict,
    });
    emit(io, &v)
}

const SAMPLE_FAMILIES: [&str; 5] = ["A", "M", "C", "Tmin", "haar"];

fn draw(family: &str, rng: &mut ChaCha8Rng) -> CliResult<PureState4> {
    Ok(match family {
        "A" => sample_class_a(rng),
        "M" => sample_class_m(rng)?.0,
        "Tmin" => sample_t_min(rng),
        "haar" => haar_random(rng),
        "C" => {
            let p = 0.5 + 0.5 * rng.random::<f64>();
            let c = ((1.0 - p) / (3.0 * p)).sqrt() * (2.0 * rng.random::<f64>() - 1.0);
            let theta = if rng.random::<bool>() { c.acos() } else { -c.acos() };
            sample_class_c(p, theta)?
        }
        other => return Err(CliError::Config(format!("unknown sample family `{other}`"))),
    })
}

fn cmd_sample(args: &SampleArgs, io: &mut Io) -> CliResult<()> {
    if !SAMPLE_FAMILIES.contains(&args.family.as_str()) {
        return Err(CliError::Config(format!("unknown sample family `{}`", args.family)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut out = String::new();
    for _ in 0..args.count {
        let s = draw(&args.family, &mut rng)?;
        let line = serde_json::to_string(&StateDocument::from_state(&s))
            .map_err(|e| CliError::Io(e.to_string()))?;
        out.push_str(&line);
        out.push('\n');
    }
    write_output(&args.output, &out, io)
}

pub fn execute(cli: &Cli, io: &mut Io) -> CliResult<()> {
    match &cli.command {
        Command::Invariants(a) => cmd_invariants(a, io),
        Command::Tangles(a) => cmd_tangles(a, io),
        Command::Entropy(a) => cmd_entropy(a, io),
        Command::Spectra(a) => cmd_spectra(a, io),
        Command::Verify(a) => cmd_verify(a, io),
        Command::Figure(a) => cmd_figure(a, io),
        Command::Optimize(a) => cmd_optimize(a, io),
        Command::Sample(a) => cmd_sample(a, io),
    }
}

/// Reads `QENT4_THREADS` and sizes the global thread pool accordingly.
pub fn configure_threads(value: Option<&str>) -> CliResult<()> {
    let Some(raw) = value else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Config(format!("QENT4_THREADS must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(e.to_string()))
}

/// Parses arguments and runs the command, returning the exit code.
pub fn run<I, T>(args: I, io: &mut Io) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 4,
            };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(io.stdout, "{text}")
            } else {
                write!(io.stderr, "{text}")
            };
            return code;
        }
    };
    match execute(&cli, io) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(io.stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run_process() -> i32 {
    let stdin = io::stdin();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut io = Io {
        stdin: &mut stdin.lock(),
        stdout: &mut stdout.lock(),
        stderr: &mut stderr.lock(),
    };
    let threads = match std::env::var("QENT4_THREADS") {
        Ok(v) => Some(v),
        Err(std::env::VarError::NotPresent) => None,
        Err(std::env::VarError::NotUnicode(raw)) => Some(raw.to_string_lossy().into_owned()),
    };
    if let Err(e) = configure_threads(threads.as_deref()) {
        let _ = writeln!(io.stderr, "error: {e}");
        return e.exit_code();
    }
    run(std::env::args_os(), &mut io)
}
