//! `biortho` — run the verification suites, or apply one of the operators
//! to a vector, emitting deterministic JSON/CSV/text reports.
//!
//! Exit codes: 0 success, 1 at least one PASS-contract check failed,
//! 2 usage error, 3 I/O failure, 4 internal numerical defect.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use biortho::families::{
    apply_gauss_operator, ex1_pair, ex2_pair, ex3_pair, ref_e_gauss_family, BiorthPair,
    GaussOperator,
};
use biortho::multipliers::{LadderOperator, MetricOperator, MultiplierOperator, TailDiagnostics};
use biortho::verify::{
    dense_definedness_probe, ex1_suite, ex2_suite, ex3_suite, full_suite, Classification,
    ProbeExample, ProbeOperator, SuiteConfig, VerificationReport,
};
use biortho::{AmbientVector, CoeffVector, Error, GaussPolyVector, ScalarSequence, C64};

#[derive(Parser)]
#[command(
    name = "biortho",
    version,
    about = "Biorthogonal family and multiplier-operator verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite for one example (or all of them).
    Verify(VerifyArgs),
    /// Apply an operator to a vector and print the result with tail
    /// diagnostics.
    Apply(ApplyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ExampleArg {
    Ex1,
    Ex2,
    Ex3,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which example's suite to run.
    #[arg(long, value_enum)]
    example: ExampleArg,
    /// Generic probe truncation (contractual truncations are fixed).
    #[arg(long, default_value_t = 128)]
    n: usize,
    /// Settle tolerance for tail diagnostics.
    #[arg(long, default_value_t = 1e-9)]
    settle_tol: f64,
    /// Seed for the randomized checks.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Random (f, g) pairs per quasi-basis check.
    #[arg(long, default_value_t = 200)]
    quasi_cases: usize,
    /// Random cases per randomized identity check.
    #[arg(long, default_value_t = 100)]
    random_cases: usize,
    /// Skip the exact-rational paths.
    #[arg(long)]
    no_exact: bool,
    /// Probe mode: run only the dense-definedness probe for this sequence
    /// (requires --op; divergence is a finding, not a failure).
    #[arg(long)]
    seq: Option<String>,
    /// Probe mode operator: Hyx or Sx.
    #[arg(long)]
    op: Option<String>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include a timestamp in the metadata (off by default so outputs are
    /// byte-reproducible).
    #[arg(long)]
    timestamp: bool,
}

#[derive(Args)]
struct ApplyArgs {
    /// Which example's families the operator is built on.
    #[arg(long, value_enum)]
    example: ExampleArg,
    /// Operator: Hxy, Hyx, Sx, Sy, A, B, H1, H2, T, Tinv, hosc.
    #[arg(long)]
    op: String,
    /// Scalar sequence for Hxy/Hyx/A/B (presets: inv_n, inv_n2, geom:R,
    /// const:C, pow:P, n_minus_1, or an inline list "a,b,c").
    #[arg(long)]
    seq: Option<String>,
    /// Weight sequence for Sx/Sy (same presets; default const:1).
    #[arg(long)]
    weights: Option<String>,
    /// Vector: a family member like "x:3", "y:0", "e:2", or an inline
    /// coefficient list "1,0.5,-2" against the reference basis.
    #[arg(long)]
    vec: String,
    /// Series truncation.
    #[arg(long, default_value_t = 64)]
    n: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum CliError {
    Usage(String),
    Io(std::io::Error),
    Numerical(String),
    ChecksFailed(usize),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::ChecksFailed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Io(e) => write!(f, "i/o failure: {e}"),
            CliError::Numerical(m) => write!(f, "numerical defect: {m}"),
            CliError::ChecksFailed(n) => write!(f, "{n} check(s) failed"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::EigenFailure { .. } | Error::IndefiniteMatrix { .. } => {
                CliError::Numerical(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Apply(args) => cmd_apply(args),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct Meta {
    version: &'static str,
    config: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<String>,
}

#[derive(Serialize)]
struct VerifyOutput {
    meta: Meta,
    reports: Vec<VerificationReport>,
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    if args.n < 16 {
        return Err(CliError::Usage("--n must be at least 16".into()));
    }
    if args.settle_tol <= 0.0 {
        return Err(CliError::Usage("--settle-tol must be positive".into()));
    }
    let cfg = SuiteConfig {
        truncation: args.n,
        settle_tol: args.settle_tol,
        seed: args.seed,
        exact: !args.no_exact,
        quasi_cases: args.quasi_cases,
        random_cases: args.random_cases,
    };

    let reports = if args.seq.is_some() || args.op.is_some() {
        probe_mode(&args, &cfg)?
    } else {
        let mut reports = match args.example {
            ExampleArg::Ex1 => ex1_suite(&cfg)?,
            ExampleArg::Ex2 => ex2_suite(&cfg)?,
            ExampleArg::Ex3 => ex3_suite(&cfg)?,
            ExampleArg::All => full_suite(&cfg)?,
        };
        reports.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        reports
    };

    let mut config_echo = BTreeMap::new();
    config_echo.insert(
        "example".into(),
        format!("{:?}", args.example).to_lowercase(),
    );
    config_echo.insert("n".into(), cfg.truncation.to_string());
    config_echo.insert("settle_tol".into(), format!("{:e}", cfg.settle_tol));
    config_echo.insert("seed".into(), cfg.seed.to_string());
    config_echo.insert("quasi_cases".into(), cfg.quasi_cases.to_string());
    config_echo.insert("random_cases".into(), cfg.random_cases.to_string());
    config_echo.insert("exact".into(), cfg.exact.to_string());
    if let Some(seq) = &args.seq {
        config_echo.insert("seq".into(), seq.clone());
    }
    if let Some(op) = &args.op {
        config_echo.insert("op".into(), op.clone());
    }
    let meta = Meta {
        version: env!("CARGO_PKG_VERSION"),
        config: config_echo,
        timestamp: args.timestamp.then(|| {
            std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| format!("{}Z", d.as_secs()))
                .unwrap_or_default()
        }),
    };

    let failed = reports
        .iter()
        .filter(|r| r.classification == Classification::Fail)
        .count();

    let rendered = match args.format {
        FormatArg::Json => {
            let out = VerifyOutput { meta, reports };
            serde_json::to_string_pretty(&out).expect("report serialization") + "\n"
        }
        FormatArg::Csv => render_csv(&reports),
        FormatArg::Text => render_text(&reports),
    };
    write_output(args.out.as_deref(), &rendered)?;

    if failed > 0 {
        return Err(CliError::ChecksFailed(failed));
    }
    Ok(())
}

fn probe_mode(args: &VerifyArgs, cfg: &SuiteConfig) -> Result<Vec<VerificationReport>, CliError> {
    let seq_spec = args
        .seq
        .as_deref()
        .ok_or_else(|| CliError::Usage("probe mode needs --seq".into()))?;
    let op_spec = args
        .op
        .as_deref()
        .ok_or_else(|| CliError::Usage("probe mode needs --op".into()))?;
    let example = match args.example {
        ExampleArg::Ex1 => ProbeExample::Ex1,
        ExampleArg::Ex2 => ProbeExample::Ex2,
        _ => {
            return Err(CliError::Usage(
                "dense-definedness probes are defined for ex1 and ex2".into(),
            ))
        }
    };
    let op = match op_spec {
        "Hyx" | "hyx" => ProbeOperator::HamiltonianYx,
        "Sx" | "sx" => ProbeOperator::MetricX,
        other => {
            return Err(CliError::Usage(format!(
                "unknown probe operator '{other}' (expected Hyx or Sx)"
            )))
        }
    };
    let s = parse_sequence(seq_spec)?;
    let n = cfg.truncation.clamp(64, 4096);
    let outcome = dense_definedness_probe(example, op, &s, n, cfg.settle_tol)?;
    Ok(vec![outcome.report])
}

// ---------------------------------------------------------------------------
// apply
// ---------------------------------------------------------------------------

#[derive(Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum VectorOutput {
    Coefficients { values: Vec<(f64, f64)> },
    GaussPoly { poly: Vec<(f64, f64)>, rate: f64 },
}

#[derive(Serialize)]
struct ApplyOutput {
    example: String,
    operator: String,
    vector: VectorOutput,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagnostics: Option<TailDiagnostics>,
}

fn cmd_apply(args: ApplyArgs) -> Result<(), CliError> {
    if args.n < 2 {
        return Err(CliError::Usage("--n must be at least 2".into()));
    }
    let out = match args.example {
        ExampleArg::Ex1 => apply_coeff(&args, ex1_pair(0), "ex1")?,
        ExampleArg::Ex2 => apply_coeff(&args, ex2_pair(0), "ex2")?,
        ExampleArg::Ex3 => apply_gauss(&args)?,
        ExampleArg::All => {
            return Err(CliError::Usage("apply needs a single example".into()));
        }
    };
    let rendered = match args.format {
        FormatArg::Json => serde_json::to_string_pretty(&out).expect("serialization") + "\n",
        FormatArg::Csv | FormatArg::Text => render_apply_text(&out),
    };
    write_output(args.out.as_deref(), &rendered)?;
    Ok(())
}

fn sequence_for(args: &ApplyArgs) -> Result<ScalarSequence, CliError> {
    match &args.seq {
        Some(spec) => parse_sequence(spec),
        None => Err(CliError::Usage(format!("operator {} needs --seq", args.op))),
    }
}

fn weights_for(args: &ApplyArgs) -> Result<ScalarSequence, CliError> {
    match &args.weights {
        Some(spec) => parse_sequence(spec),
        None => Ok(ScalarSequence::constant(1.0)),
    }
}

fn apply_coeff(
    args: &ApplyArgs,
    pair: BiorthPair<CoeffVector>,
    label: &str,
) -> Result<ApplyOutput, CliError> {
    let vector = parse_coeff_vector(&args.vec, &pair)?;
    let (result, diag) = match args.op.as_str() {
        "Hxy" => MultiplierOperator::h_xy(&pair, sequence_for(args)?, args.n).apply(&vector)?,
        "Hyx" => MultiplierOperator::h_yx(&pair, sequence_for(args)?, args.n).apply(&vector)?,
        "Sx" => MetricOperator::s_x(&pair, weights_for(args)?, args.n)?.apply(&vector)?,
        "Sy" => MetricOperator::s_y(&pair, weights_for(args)?, args.n)?.apply(&vector)?,
        "A" => LadderOperator::a_xy(&pair, &sequence_for(args)?, args.n)?.apply(&vector)?,
        "B" => LadderOperator::b_xy(&pair, &sequence_for(args)?, args.n)?.apply(&vector)?,
        other => {
            return Err(CliError::Usage(format!(
                "operator '{other}' is not defined on the coefficient examples"
            )))
        }
    };
    Ok(ApplyOutput {
        example: label.into(),
        operator: args.op.clone(),
        vector: VectorOutput::Coefficients {
            values: result.coeffs().iter().map(|c| (c.re, c.im)).collect(),
        },
        diagnostics: Some(diag),
    })
}

fn apply_gauss(args: &ApplyArgs) -> Result<ApplyOutput, CliError> {
    let pair = ex3_pair();
    let vector = parse_gauss_vector(&args.vec, &pair)?;
    let gauss_op = match args.op.as_str() {
        "H1" => Some(GaussOperator::H1),
        "H2" => Some(GaussOperator::H2),
        "hosc" => Some(GaussOperator::Hosc),
        "T" => Some(GaussOperator::TMult),
        "Tinv" => Some(GaussOperator::TMultInv),
        _ => None,
    };
    let (result, diag) = if let Some(op) = gauss_op {
        (apply_gauss_operator(op, &vector)?, None)
    } else {
        let (v, d) = match args.op.as_str() {
            "Hxy" => MultiplierOperator::h_xy(&pair, sequence_for(args)?, args.n).apply(&vector)?,
            "Hyx" => MultiplierOperator::h_yx(&pair, sequence_for(args)?, args.n).apply(&vector)?,
            "Sx" => MetricOperator::s_x(&pair, weights_for(args)?, args.n)?.apply(&vector)?,
            "Sy" => MetricOperator::s_y(&pair, weights_for(args)?, args.n)?.apply(&vector)?,
            "A" => LadderOperator::a_xy(&pair, &sequence_for(args)?, args.n)?.apply(&vector)?,
            "B" => LadderOperator::b_xy(&pair, &sequence_for(args)?, args.n)?.apply(&vector)?,
            other => {
                return Err(CliError::Usage(format!("unknown operator '{other}'")));
            }
        };
        (v, Some(d))
    };
    Ok(ApplyOutput {
        example: "ex3".into(),
        operator: args.op.clone(),
        vector: VectorOutput::GaussPoly {
            poly: result.poly_coeffs().iter().map(|c| (c.re, c.im)).collect(),
            rate: result.rate(),
        },
        diagnostics: diag,
    })
}

// ---------------------------------------------------------------------------
// parsing and rendering
// ---------------------------------------------------------------------------

fn parse_sequence(spec: &str) -> Result<ScalarSequence, CliError> {
    let bad = |m: String| CliError::Usage(m);
    if let Some(rest) = spec.strip_prefix("geom:") {
        let r: f64 = rest
            .parse()
            .map_err(|_| bad(format!("bad geometric ratio '{rest}'")))?;
        if r <= 0.0 {
            return Err(bad("geometric ratio must be positive".into()));
        }
        return Ok(ScalarSequence::geometric(r));
    }
    if let Some(rest) = spec.strip_prefix("const:") {
        let c: f64 = rest
            .parse()
            .map_err(|_| bad(format!("bad constant '{rest}'")))?;
        return Ok(ScalarSequence::constant(c));
    }
    if let Some(rest) = spec.strip_prefix("pow:") {
        let p: f64 = rest
            .parse()
            .map_err(|_| bad(format!("bad exponent '{rest}'")))?;
        return Ok(ScalarSequence::inv_n_pow(p));
    }
    if let Some(rest) = spec.strip_prefix("list:") {
        let values = parse_float_list(rest)?;
        return Ok(ScalarSequence::from_values(
            format!("list:{rest}"),
            values.into_iter().map(|v| C64::new(v, 0.0)).collect(),
        ));
    }
    match spec {
        "inv_n" => Ok(ScalarSequence::inv_n()),
        "inv_n2" => Ok(ScalarSequence::inv_n_sq()),
        "n_minus_1" => Ok(ScalarSequence::n_minus_one()),
        other if other.contains(',') => {
            let values = parse_float_list(other)?;
            Ok(ScalarSequence::from_values(
                format!("list:{other}"),
                values.into_iter().map(|v| C64::new(v, 0.0)).collect(),
            ))
        }
        other => Err(bad(format!("unknown sequence '{other}'"))),
    }
}

fn parse_float_list(spec: &str) -> Result<Vec<f64>, CliError> {
    spec.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("bad number '{t}' in list")))
        })
        .collect()
}

fn parse_member_ref(spec: &str) -> Option<(char, usize)> {
    let (kind, idx) = spec.split_once(':')?;
    let kind = kind.trim();
    if kind.len() != 1 {
        return None;
    }
    idx.trim()
        .parse()
        .ok()
        .map(|n| (kind.chars().next().unwrap(), n))
}

fn parse_coeff_vector(spec: &str, pair: &BiorthPair<CoeffVector>) -> Result<CoeffVector, CliError> {
    if let Some((kind, n)) = parse_member_ref(spec) {
        return Ok(match kind {
            'x' => pair.x.member(n)?,
            'y' => pair.y.member(n)?,
            'e' => {
                if n == 0 {
                    return Err(CliError::Usage("reference basis is 1-indexed here".into()));
                }
                CoeffVector::basis(n, n)
            }
            other => {
                return Err(CliError::Usage(format!("unknown family '{other}'")));
            }
        });
    }
    let values = parse_float_list(spec)?;
    Ok(CoeffVector::new(
        values.into_iter().map(|v| C64::new(v, 0.0)).collect(),
    ))
}

fn parse_gauss_vector(
    spec: &str,
    pair: &BiorthPair<GaussPolyVector>,
) -> Result<GaussPolyVector, CliError> {
    let refs = ref_e_gauss_family();
    if let Some((kind, n)) = parse_member_ref(spec) {
        return Ok(match kind {
            'x' => pair.x.member(n)?,
            'y' => pair.y.member(n)?,
            'e' => refs.member(n)?,
            other => {
                return Err(CliError::Usage(format!("unknown family '{other}'")));
            }
        });
    }
    // inline list = combination of reference-basis members from index 0
    let values = parse_float_list(spec)?;
    let mut acc = refs.member(0)?.scaled(C64::new(0.0, 0.0));
    for (k, v) in values.into_iter().enumerate() {
        if v != 0.0 {
            acc = acc.try_add(&refs.member(k)?.scaled(C64::new(v, 0.0)))?;
        }
    }
    Ok(acc)
}

fn render_csv(reports: &[VerificationReport]) -> String {
    let mut out = String::from("check_id,classification,residual,tolerance,measured,notes\n");
    for r in reports {
        let measured = r
            .measured
            .iter()
            .map(|m| format!("{}={:e}", m.name, m.value))
            .collect::<Vec<_>>()
            .join(";");
        let fmt_opt = |v: Option<f64>| v.map(|x| format!("{x:e}")).unwrap_or_default();
        out.push_str(&format!(
            "{},{:?},{},{},\"{}\",\"{}\"\n",
            r.check_id,
            r.classification,
            fmt_opt(r.residual),
            fmt_opt(r.tolerance),
            measured,
            r.notes.replace('"', "'"),
        ));
    }
    out
}

fn render_text(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let status = match r.classification {
            Classification::Pass => "PASS  ",
            Classification::Fail => "FAIL  ",
            Classification::ReportOnly => "REPORT",
        };
        match (r.residual, r.tolerance) {
            (Some(res), Some(tol)) => {
                out.push_str(&format!(
                    "{status} {:<42} residual {res:.3e} (tol {tol:.1e})\n",
                    r.check_id
                ));
            }
            _ => {
                out.push_str(&format!("{status} {:<42}\n", r.check_id));
            }
        }
    }
    out
}

fn render_apply_text(out: &ApplyOutput) -> String {
    let mut s = format!("{} {} ->\n", out.example, out.operator);
    match &out.vector {
        VectorOutput::Coefficients { values } => {
            for (k, (re, im)) in values.iter().enumerate() {
                if re.abs() > 1e-15 || im.abs() > 1e-15 {
                    s.push_str(&format!("  e_{}: {re:.12e} {im:+.12e}i\n", k + 1));
                }
            }
        }
        VectorOutput::GaussPoly { poly, rate } => {
            s.push_str(&format!("  rate: {rate}\n"));
            for (k, (re, im)) in poly.iter().enumerate() {
                if re.abs() > 1e-15 || im.abs() > 1e-15 {
                    s.push_str(&format!("  x^{k}: {re:.12e} {im:+.12e}i\n"));
                }
            }
        }
    }
    if let Some(d) = &out.diagnostics {
        s.push_str(&format!(
            "  tail: {} at N={} (norms {:.6e}, {:.6e}, {:.6e})\n",
            d.classification,
            d.checkpoints[2],
            d.partial_norms[0],
            d.partial_norms[1],
            d.partial_norms[2]
        ));
    }
    s
}

fn write_output(path: Option<&std::path::Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let mut f = std::fs::File::create(p)?;
            f.write_all(content.as_bytes())?;
        }
        None => {
            std::io::stdout().write_all(content.as_bytes())?;
        }
    }
    Ok(())
}
