//! The `sparsity` command line.
//!
//! Exit codes: 0 on success, 1 when `table` disagrees with the published
//! table outside the disputed cell, 2 on usage, input or output errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::compliance::{self, CellVerdict, ComplianceReport, Verdict};
use crate::experiments::{
    self, BernoulliConfig, DistributionSpec, ExperimentResult, PoissonConfig,
    DEFAULT_QUADRATURE_TOLERANCE,
};
use crate::measures::{
    evaluate, lorenz_curve, CoefficientVector, MeasureId, MeasureParams, MeasureSpec,
};
use crate::transforms::CriterionId;

/// Environment variable that overrides the default seed.
pub const SEED_ENV: &str = "SPARSITY_SEED";

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "sparsity",
    version,
    about = "Sparsity measures and axiomatic criteria"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one measure on a vector.
    Measure {
        #[arg(long)]
        measure: MeasureId,
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Evaluate all fifteen measures on a vector.
    MeasureAll {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Print the Lorenz curve of a vector.
    Lorenz {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Check one measure against one criterion.
    Check {
        #[arg(long)]
        measure: MeasureId,
        #[arg(long)]
        criterion: CriterionId,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Reproduce the full measure-by-criterion table.
    Table {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Run a numerical study.
    Experiment {
        #[arg(value_enum)]
        name: ExperimentName,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        overrides: ExperimentArgs,
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Format {
    Tabular,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ExperimentName {
    Poisson,
    Bernoulli,
    Contributions,
    DistributionalGini,
}

#[derive(Debug, Clone, Args)]
struct IoArgs {
    /// Input file; standard input when omitted or `-`.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Read one `re,im` pair per line and use its magnitude.
    #[arg(long)]
    complex: bool,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Clone, Args)]
struct OutArgs {
    /// Output file; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Clone, Args)]
struct RunArgs {
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Clone, Args, Default)]
struct ParamArgs {
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long = "p")]
    p_frac: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    p_neg: Option<f64>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
}

impl ParamArgs {
    fn apply(&self, base: MeasureParams) -> MeasureParams {
        MeasureParams {
            epsilon: self.epsilon.unwrap_or(base.epsilon),
            p_frac: self.p_frac.unwrap_or(base.p_frac),
            p_neg: self.p_neg.unwrap_or(base.p_neg),
            a: self.a.unwrap_or(base.a),
            b: self.b.unwrap_or(base.b),
            theta: self.theta.unwrap_or(base.theta),
        }
    }
}

#[derive(Debug, Clone, Args, Default)]
struct ExperimentArgs {
    #[arg(long)]
    repeats: Option<usize>,
    /// Poisson rate.
    #[arg(long)]
    lambda: Option<f64>,
    /// Comma-separated vector lengths for `poisson`.
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    /// Vector length for `bernoulli`.
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated zero probabilities (`bernoulli`) or amplitudes
    /// (`contributions`).
    #[arg(long, value_delimiter = ',')]
    grid: Option<Vec<f64>>,
    /// Measures for `contributions`; all separable measures by default.
    #[arg(long = "measures", value_delimiter = ',')]
    measures: Option<Vec<MeasureId>>,
    /// `uniform:LO:HI`, `exponential:RATE`, `poisson:LAMBDA` or
    /// `bernoulli:P` for `distributional-gini`.
    #[arg(long)]
    distribution: Option<String>,
    #[arg(long, default_value_t = DEFAULT_QUADRATURE_TOLERANCE)]
    tolerance: f64,
    /// Also report the Gini index of this many seeded draws.
    #[arg(long)]
    samples: Option<usize>,
}

/// Echo of the effective configuration, defaults included.
#[derive(Debug, Serialize)]
struct RunConfig {
    command: &'static str,
    input: Option<String>,
    output: Option<String>,
    format: Option<Format>,
    complex: bool,
    measure: Option<MeasureId>,
    params: Option<MeasureParams>,
    criterion: Option<CriterionId>,
    trials: Option<usize>,
    seed: Option<u64>,
    experiment: Option<ExperimentName>,
    experiment_overrides: Option<serde_json::Value>,
}

impl RunConfig {
    fn new(command: &'static str) -> Self {
        Self {
            command,
            input: None,
            output: None,
            format: None,
            complex: false,
            measure: None,
            params: None,
            criterion: None,
            trials: None,
            seed: None,
            experiment: None,
            experiment_overrides: None,
        }
    }

    fn with_io(mut self, io: &IoArgs) -> Self {
        self.input = io.input.as_ref().map(|p| p.display().to_string());
        self.complex = io.complex;
        self.with_out(&io.out)
    }

    fn with_out(mut self, out: &OutArgs) -> Self {
        self.output = out.output.as_ref().map(|p| p.display().to_string());
        self.format = out.format;
        self
    }
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

/// A malformed token in vector input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReadError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl std::fmt::Display for ReadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.line == 0 {
            f.write_str(&self.message)
        } else {
            write!(
                f,
                "line {}, column {}: {}",
                self.line, self.column, self.message
            )
        }
    }
}

impl std::error::Error for ReadError {}

fn parse_number(token: &str, line: usize, column: usize) -> Result<f64, ReadError> {
    match token.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(ReadError {
            line,
            column,
            message: format!("`{token}` is not a finite number"),
        }),
    }
}

/// Tokens of one line with their 1-based columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        let sep = ch == ',' || ch.is_whitespace();
        match (sep, start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(move |(byte, tok)| (line[..byte].chars().count() + 1, tok))
}

/// Parses numbers separated by commas, whitespace or newlines. In complex
/// mode every non-blank line must hold exactly one `re,im` pair.
pub fn parse_vector(text: &str, complex: bool) -> Result<CoefficientVector, ReadError> {
    let mut reals = Vec::new();
    let mut pairs = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let toks: Vec<(usize, &str)> = tokens(line).collect();
        if complex {
            match toks.as_slice() {
                [] => {}
                [(c1, re), (c2, im)] => pairs.push((
                    parse_number(re, lineno, *c1)?,
                    parse_number(im, lineno, *c2)?,
                )),
                [(c, _), ..] => {
                    return Err(ReadError {
                        line: lineno,
                        column: *c,
                        message: format!("expected exactly two numbers, found {}", toks.len()),
                    })
                }
            }
        } else {
            for (col, tok) in toks {
                reals.push(parse_number(tok, lineno, col)?);
            }
        }
    }
    let built = if complex {
        CoefficientVector::from_complex(&pairs)
    } else {
        CoefficientVector::new(reals)
    };
    built.map_err(|e| ReadError {
        line: 0,
        column: 0,
        message: e.to_string(),
    })
}

/// Reads a vector from `path`, or from `stdin` when `path` is `None` or `-`.
pub fn read_vector(
    path: Option<&std::path::Path>,
    complex: bool,
    stdin: &mut dyn Read,
) -> Result<CoefficientVector, String> {
    let (text, source) = match path {
        Some(p) if p.as_os_str() != "-" => (
            fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))?,
            p.display().to_string(),
        ),
        _ => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| format!("cannot read standard input: {e}"))?;
            (s, "<stdin>".to_string())
        }
    };
    parse_vector(&text, complex).map_err(|e| format!("{source}: {e}"))
}

/// Shortest representation that parses back to the same `f64`.
fn num(x: f64) -> String {
    format!("{x:?}")
}

fn join(values: &[f64]) -> String {
    values.iter().map(|&v| num(v)).collect::<Vec<_>>().join(";")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn structured(config: &RunConfig, result: impl Serialize) -> Result<String, Failure> {
    let doc = json!({
        "tool": "sparsity",
        "version": env!("CARGO_PKG_VERSION"),
        "config": config,
        "seed": config.seed,
        "result": result,
    });
    serde_json::to_string_pretty(&doc)
        .map(|s| s + "\n")
        .map_err(|e| Failure::input(format!("cannot serialize report: {e}")))
}

fn emit(out: &OutArgs, body: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match &out.output {
        Some(path) => fs::write(path, body)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(body.as_bytes())
            .map_err(|e| Failure::input(format!("cannot write output: {e}"))),
    }
}

fn measure_value(spec: &MeasureSpec, c: &CoefficientVector) -> Result<f64, Failure> {
    evaluate(spec, c).map_err(|e| Failure::input(e.to_string()))
}

fn verdict_fields(cell: &CellVerdict) -> (String, String, String, String, String, String) {
    match &cell.verdict {
        Verdict::NoViolationFound { trials } => (
            "no_violation_found".into(),
            trials.to_string(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
        ),
        Verdict::Violated {
            witness,
            before_value,
            after_value,
        } => (
            "violated".into(),
            String::new(),
            num(*before_value),
            num(*after_value),
            join(witness.before.values()),
            join(witness.after.values()),
        ),
    }
}

const CELL_HEADER: &str =
    "measure,criterion,status,source,trials,skipped,before_value,after_value,witness_before,witness_after";

fn cell_row(cell: &CellVerdict) -> String {
    let (status, trials, bv, av, wb, wa) = verdict_fields(cell);
    let source = match cell.source {
        compliance::VerdictSource::Catalog => "catalog",
        compliance::VerdictSource::Search => "search",
    };
    format!(
        "{},{},{status},{source},{trials},{},{bv},{av},{wb},{wa}",
        cell.measure, cell.criterion, cell.skipped
    )
}

fn human_cell(cell: &CellVerdict) -> String {
    match &cell.verdict {
        Verdict::NoViolationFound { trials } => format!(
            "{} {}: no violation found in {trials} trials ({} skipped)\n",
            cell.measure, cell.criterion, cell.skipped
        ),
        Verdict::Violated {
            witness,
            before_value,
            after_value,
        } => format!(
            "{} {}: violated\n  before {:?} -> {before_value:.6}\n  after  {:?} -> {after_value:.6}\n",
            cell.measure,
            cell.criterion,
            witness.before.values(),
            witness.after.values()
        ),
    }
}

fn table_tabular(report: &ComplianceReport) -> String {
    let mut s = format!("{CELL_HEADER},expected_satisfied,produced_satisfied,disputed\n");
    for cell in &report.cells {
        let (m, c) = (cell.measure, cell.criterion);
        let _ = writeln!(
            s,
            "{},{},{},{}",
            cell_row(cell),
            report.expected.expects(m, c),
            report.produced.get(m, c),
            report.expected.is_disputed(m, c)
        );
    }
    s
}

fn table_human(report: &ComplianceReport) -> String {
    let mut s = String::from("measure      D1 D2 D3 D4 P1 P2\n");
    for m in MeasureId::ALL {
        let _ = write!(s, "{:<12}", m.name());
        for c in CriterionId::ALL {
            let mark = if report.produced.get(m, c) {
                "ok"
            } else {
                "--"
            };
            let flag = if report.expected.is_disputed(m, c) {
                "*"
            } else if report.expected.expects(m, c) != report.produced.get(m, c) {
                "!"
            } else {
                " "
            };
            let _ = write!(s, " {mark}{flag}");
        }
        s.push('\n');
    }
    let _ = writeln!(
        s,
        "\nok = no violation found in {} trials (evidence, not proof); -- = violated",
        report.trials
    );
    let _ = writeln!(s, "* disputed: {}", report.disputed.note);
    if report.diff.is_empty() {
        s.push_str("all non-disputed cells match the published table\n");
    } else {
        let _ = writeln!(
            s,
            "! {} cell(s) differ from the published table:",
            report.diff.len()
        );
        for d in &report.diff {
            let _ = writeln!(
                s,
                "  {} {}: published {}, produced {}",
                d.measure,
                d.criterion,
                if d.expected_satisfied {
                    "satisfied"
                } else {
                    "violated"
                },
                if d.produced_satisfied {
                    "no violation found"
                } else {
                    "violated"
                }
            );
        }
    }
    s
}

fn experiment_tabular(result: &ExperimentResult) -> String {
    let mut s = String::from("sweep,measure,mean,std,normalized_mean\n");
    for r in &result.summary {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            num(r.sweep),
            r.measure,
            num(r.mean),
            num(r.std),
            num(r.normalized_mean)
        );
    }
    s
}

fn parse_distribution(text: &str) -> Result<DistributionSpec, Failure> {
    let parts: Vec<&str> = text.split(':').collect();
    let arg = |i: usize| -> Result<f64, Failure> {
        parts
            .get(i)
            .and_then(|s| s.parse::<f64>().ok())
            .ok_or_else(|| Failure::input(format!("malformed distribution `{text}`")))
    };
    let dist = match (parts[0], parts.len()) {
        ("uniform", 3) => DistributionSpec::Uniform {
            lo: arg(1)?,
            hi: arg(2)?,
        },
        ("exponential", 2) => DistributionSpec::Exponential { rate: arg(1)? },
        ("poisson", 2) => DistributionSpec::Poisson { lambda: arg(1)? },
        ("bernoulli", 2) => DistributionSpec::Bernoulli01 { p: arg(1)? },
        _ => return Err(Failure::input(format!("unknown distribution `{text}`"))),
    };
    dist.validate().map_err(|e| Failure::input(e.to_string()))?;
    Ok(dist)
}

fn run_experiment(
    name: ExperimentName,
    run: &RunArgs,
    ov: &ExperimentArgs,
    params: &ParamArgs,
    stdout: &mut dyn Write,
) -> Result<i32, Failure> {
    let mut config = RunConfig::new("experiment").with_out(&run.out);
    config.seed = Some(run.seed);
    config.experiment = Some(name);
    let fail = |e: experiments::ExperimentError| Failure::input(e.to_string());
    let format = run.out.format;
    let body = match name {
        ExperimentName::Poisson => {
            let mut cfg = PoissonConfig {
                seed: run.seed,
                ..PoissonConfig::default()
            };
            cfg.params = params.apply(cfg.params);
            cfg.lambda = ov.lambda.unwrap_or(cfg.lambda);
            cfg.repeats = ov.repeats.unwrap_or(cfg.repeats);
            if let Some(sizes) = &ov.sizes {
                cfg.sizes = sizes.clone();
            }
            config.params = Some(cfg.params);
            config.experiment_overrides = Some(json!({
                "lambda": cfg.lambda, "sizes": cfg.sizes, "repeats": cfg.repeats,
            }));
            let result = experiments::poisson_convergence(&cfg).map_err(fail)?;
            match format {
                Some(Format::Structured) => structured(&config, &result)?,
                _ => experiment_tabular(&result),
            }
        }
        ExperimentName::Bernoulli => {
            let mut cfg = BernoulliConfig {
                seed: run.seed,
                ..BernoulliConfig::default()
            };
            cfg.params = params.apply(cfg.params);
            cfg.n = ov.n.unwrap_or(cfg.n);
            cfg.repeats = ov.repeats.unwrap_or(cfg.repeats);
            if let Some(grid) = &ov.grid {
                cfg.grid = grid.clone();
            }
            config.params = Some(cfg.params);
            config.experiment_overrides = Some(json!({
                "grid": cfg.grid, "n": cfg.n, "repeats": cfg.repeats,
            }));
            let result = experiments::bernoulli_sweep(&cfg).map_err(fail)?;
            match format {
                Some(Format::Structured) => structured(&config, &result)?,
                _ => experiment_tabular(&result),
            }
        }
        ExperimentName::Contributions => {
            let p = params.apply(experiments::experiment_params());
            let grid = ov
                .grid
                .clone()
                .unwrap_or_else(|| (0..=100).map(|k| f64::from(k) / 20.0).collect());
            let ids = ov.measures.clone().unwrap_or_else(|| {
                MeasureId::ALL
                    .into_iter()
                    .filter(|m| m.is_separable())
                    .collect()
            });
            let specs: Vec<MeasureSpec> = ids.iter().map(|&m| MeasureSpec::new(m, p)).collect();
            config.params = Some(p);
            config.experiment_overrides = Some(json!({ "grid": grid, "measures": ids }));
            let rows = experiments::contribution_curves(&grid, &specs).map_err(fail)?;
            match format {
                Some(Format::Structured) => structured(&config, &rows)?,
                _ => {
                    let mut s = String::from("measure,x,term\n");
                    for r in &rows {
                        let _ = writeln!(s, "{},{},{}", r.measure, num(r.x), num(r.term));
                    }
                    s
                }
            }
        }
        ExperimentName::DistributionalGini => {
            let text = ov.distribution.as_deref().unwrap_or("exponential:1");
            let dist = parse_distribution(text)?;
            let value = experiments::distributional_gini(&dist, ov.tolerance).map_err(fail)?;
            let sample = match ov.samples {
                Some(n) => {
                    let c = experiments::sample_vector(&dist, n, run.seed).map_err(fail)?;
                    Some(crate::measures::gini(&c).map_err(|e| Failure::input(e.to_string()))?)
                }
                None => None,
            };
            config.experiment_overrides = Some(json!({
                "distribution": dist, "tolerance": ov.tolerance, "samples": ov.samples,
            }));
            let result = json!({ "distribution": dist, "gini": value, "sample_gini": sample });
            match format {
                Some(Format::Structured) => structured(&config, &result)?,
                _ => format!(
                    "distribution,tolerance,gini,samples,sample_gini\n{},{},{},{},{}\n",
                    csv_field(text),
                    num(ov.tolerance),
                    num(value),
                    ov.samples.map(|n| n.to_string()).unwrap_or_default(),
                    sample.map(num).unwrap_or_default()
                ),
            }
        }
    };
    emit(&run.out, &body, stdout)?;
    Ok(EXIT_OK)
}

fn dispatch(cli: Cli, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Measure {
            measure,
            io,
            params,
        } => {
            let c = read_vector(io.input.as_deref(), io.complex, stdin).map_err(Failure::input)?;
            let spec = MeasureSpec::new(measure, params.apply(MeasureParams::default()));
            let value = measure_value(&spec, &c)?;
            let mut config = RunConfig::new("measure").with_io(&io);
            config.measure = Some(measure);
            config.params = Some(spec.params);
            let body = match io.out.format {
                None => format!("{value:.6}\n"),
                Some(Format::Tabular) => format!("measure,value\n{measure},{}\n", num(value)),
                Some(Format::Structured) => {
                    structured(&config, json!({ "measure": measure, "value": value }))?
                }
            };
            emit(&io.out, &body, stdout)?;
            Ok(EXIT_OK)
        }
        Command::MeasureAll { io, params } => {
            let c = read_vector(io.input.as_deref(), io.complex, stdin).map_err(Failure::input)?;
            let p = params.apply(MeasureParams::default());
            let values: Vec<(MeasureId, Result<f64, String>)> = MeasureId::ALL
                .into_iter()
                .map(|m| {
                    (
                        m,
                        evaluate(&MeasureSpec::new(m, p), &c).map_err(|e| e.to_string()),
                    )
                })
                .collect();
            let mut config = RunConfig::new("measure-all").with_io(&io);
            config.params = Some(p);
            let body = match io.out.format {
                None => values
                    .iter()
                    .map(|(m, v)| match v {
                        Ok(x) => format!("{:<12}{x:.6}\n", m.name()),
                        Err(e) => format!("{:<12}undefined ({e})\n", m.name()),
                    })
                    .collect(),
                Some(Format::Tabular) => {
                    let mut s = String::from("measure,value\n");
                    for (m, v) in &values {
                        let _ =
                            writeln!(s, "{m},{}", v.as_ref().map(|&x| num(x)).unwrap_or_default());
                    }
                    s
                }
                Some(Format::Structured) => {
                    let rows: Vec<_> = values
                        .iter()
                        .map(|(m, v)| match v {
                            Ok(x) => json!({ "measure": m, "value": x }),
                            Err(e) => json!({ "measure": m, "value": null, "error": e }),
                        })
                        .collect();
                    structured(&config, rows)?
                }
            };
            emit(&io.out, &body, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Lorenz { io } => {
            let c = read_vector(io.input.as_deref(), io.complex, stdin).map_err(Failure::input)?;
            let curve = lorenz_curve(&c).map_err(|e| Failure::input(e.to_string()))?;
            let config = RunConfig::new("lorenz").with_io(&io);
            let body = match io.out.format {
                Some(Format::Structured) => structured(
                    &config,
                    json!({ "points": curve.points, "twice_area": curve.twice_area() }),
                )?,
                _ => {
                    let mut s = String::from("population_fraction,value_fraction\n");
                    for &(x, y) in &curve.points {
                        let _ = writeln!(s, "{},{}", num(x), num(y));
                    }
                    s
                }
            };
            emit(&io.out, &body, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Check {
            measure,
            criterion,
            trials,
            run,
            params,
        } => {
            if trials == 0 {
                return Err(Failure::input("--trials must be at least 1"));
            }
            let spec = MeasureSpec::new(measure, params.apply(MeasureParams::default()));
            let cell = compliance::resolve_cell(&spec, criterion, trials, run.seed)
                .map_err(|e| Failure::input(e.to_string()))?;
            let mut config = RunConfig::new("check").with_out(&run.out);
            config.measure = Some(measure);
            config.params = Some(spec.params);
            config.criterion = Some(criterion);
            config.trials = Some(trials);
            config.seed = Some(run.seed);
            let body = match run.out.format {
                None => human_cell(&cell),
                Some(Format::Tabular) => format!("{CELL_HEADER}\n{}\n", cell_row(&cell)),
                Some(Format::Structured) => structured(&config, &cell)?,
            };
            emit(&run.out, &body, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Table {
            trials,
            run,
            params,
        } => {
            if trials == 0 {
                return Err(Failure::input("--trials must be at least 1"));
            }
            let p = params.apply(MeasureParams::default());
            let report = compliance::full_table_with(&p, trials, run.seed)
                .map_err(|e| Failure::input(e.to_string()))?;
            let mut config = RunConfig::new("table").with_out(&run.out);
            config.params = Some(p);
            config.trials = Some(trials);
            config.seed = Some(run.seed);
            let body = match run.out.format {
                None => table_human(&report),
                Some(Format::Tabular) => table_tabular(&report),
                Some(Format::Structured) => structured(&config, &report)?,
            };
            emit(&run.out, &body, stdout)?;
            Ok(if report.matches_expected() {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            })
        }
        Command::Experiment {
            name,
            run,
            overrides,
            params,
        } => run_experiment(name, &run, &overrides, &params, stdout),
    }
}

/// Runs the CLI against the given streams and returns the exit code.
pub fn run<I, T>(
    argv: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match dispatch(cli, stdin, stdout) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

/// Entry point for the binary, wired to the process's standard streams.
pub fn parse_and_dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdin = io::stdin();
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(
        argv,
        &mut stdin.lock(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}
