//! Command-line front end: `pdf`, `sample`, `verify` and `tables`.
//!
//! Exit codes: 0 success, 1 domain or parameter error (including usage
//! errors), 2 verification failure, 3 I/O error or malformed JSON.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::Algebra;
use crate::distribution::{DistributionSpec, Family, MatrixJson};
use crate::error::Error;
use crate::samplers::rng_from_seed;
use crate::special::{lgamma_m, lgamma_m_weighted, log_c_beta, log_k_beta, log_stiefel_volume, pochhammer_weighted, WeightSign};
use crate::verify::{run_suite, Suite, VerifyConfig};
use crate::weights::WeightVector;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("malformed JSON in {origin} at {path}: {message}")]
    Json { origin: String, path: String, message: String },
    #[error("{failed} of {total} checks failed")]
    Verification { failed: usize, total: usize },
    #[error("CSV output: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Model(_) | CliError::Usage(_) => 1,
            CliError::Verification { .. } => 2,
            CliError::Io { .. } | CliError::Json { .. } | CliError::Csv(_) => 3,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "riesz-matvar", version, about = "Matrix-variate Riesz-family densities, samplers and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the log-density at one or more points.
    Pdf(PdfArgs),
    /// Draw samples, one matrix JSON per line.
    Sample(SampleArgs),
    /// Run verification suites and write a JSON report array.
    Verify(VerifyArgs),
    /// Write CSV tables of special-function values.
    Tables(TablesArgs),
}

#[derive(Args, Debug)]
struct DistArgs {
    /// riesz, kotz_riesz, pearson2_riesz, pearson2_riesz_transposed or beta_riesz.
    #[arg(long)]
    family: Option<String>,
    /// I or II; c or k for beta_riesz.
    #[arg(long)]
    variant: Option<String>,
    #[arg(long)]
    beta: Option<u32>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Parameter JSON, inline or as a file path.
    #[arg(long)]
    params: Option<String>,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("input").required(true).args(["point", "points"])))]
struct PdfArgs {
    #[command(flatten)]
    dist: DistArgs,
    /// A matrix JSON, inline or as a file path.
    #[arg(long)]
    point: Option<String>,
    /// File with one matrix JSON per line.
    #[arg(long)]
    points: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[command(flatten)]
    dist: DistArgs,
    #[arg(long, default_value_t = 1)]
    count: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// normalization, jacobians, theorem1, properties or all.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Algebras to check; repeat or separate with commas.
    #[arg(long, value_delimiter = ',', default_values_t = [1u32, 2, 4])]
    beta: Vec<u32>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include wall-clock times in the report.
    #[arg(long)]
    timings: bool,
    #[arg(long)]
    mc_samples: Option<u64>,
    #[arg(long)]
    ks_samples: Option<u64>,
    #[arg(long)]
    jacobian_samples: Option<u64>,
    #[arg(long)]
    instances: Option<u64>,
    /// Quadrature normalization tolerance.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Table {
    /// ln Γ_m[a], ln Γ_m[a, κ] and ln Γ_m[a, -κ] over a grid of a.
    Gamma,
    /// The generalized Pochhammer symbol [a]_κ over a grid of a.
    Pochhammer,
    /// ln c-beta and ln k-beta over a grid of a at fixed b.
    Beta,
    /// ln Vol of the Stiefel manifolds for m ≤ n ≤ n-max.
    Stiefel,
}

#[derive(Args, Debug)]
struct TablesArgs {
    #[arg(long, value_enum)]
    table: Table,
    #[arg(long, default_value_t = 1)]
    beta: u32,
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Comma-separated weights; zero by default.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    kappa: Option<Vec<f64>>,
    /// Second weight vector of the beta functions; zero by default.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    tau: Option<Vec<f64>>,
    /// Second argument of the beta functions.
    #[arg(long, default_value_t = 3.0)]
    b: f64,
    #[arg(long, default_value_t = 1.0)]
    a_from: f64,
    #[arg(long, default_value_t = 6.0)]
    a_to: f64,
    #[arg(long, default_value_t = 11)]
    steps: usize,
    #[arg(long, default_value_t = 5)]
    n_max: usize,
    /// CSV destination; stdout by default.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Pdf(a) => pdf(a),
        Command::Sample(a) => sample(a),
        Command::Verify(a) => verify(a),
        Command::Tables(a) => tables(a),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.display().to_string(), source }
}

fn parse_json<T: DeserializeOwned>(text: &str, origin: &str) -> CliResult<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| CliError::Json {
        origin: origin.to_string(),
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

/// JSON given inline (leading `{`) or as a file path.
fn load_json<T: DeserializeOwned>(arg: &str, what: &str) -> CliResult<T> {
    if arg.trim_start().starts_with('{') {
        parse_json(arg, &format!("inline {what}"))
    } else {
        let path = Path::new(arg);
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        parse_json(&text, &path.display().to_string())
    }
}

fn merge<T: PartialEq + std::fmt::Debug>(name: &str, slot: &mut Option<T>, flag: Option<T>) -> CliResult<()> {
    if let Some(v) = flag {
        match slot {
            Some(old) if *old != v => return Err(CliError::Usage(format!("--{name} {v:?} conflicts with {name} = {old:?} in --params"))),
            _ => *slot = Some(v),
        }
    }
    Ok(())
}

impl DistArgs {
    fn spec(&self) -> CliResult<DistributionSpec> {
        let mut spec: DistributionSpec = match &self.params {
            Some(p) => load_json(p, "--params")?,
            None => DistributionSpec::default(),
        };
        let family = match &self.family {
            Some(f) => Some(
                serde_json::from_value::<Family>(serde_json::Value::String(f.clone()))
                    .map_err(|_| CliError::Usage(format!("unknown family {f:?}")))?,
            ),
            None => None,
        };
        merge("family", &mut spec.family, family)?;
        merge("variant", &mut spec.variant, self.variant.clone())?;
        merge("beta", &mut spec.beta, self.beta)?;
        merge("m", &mut spec.m, self.m)?;
        merge("n", &mut spec.n, self.n)?;
        Ok(spec)
    }
}

fn open_out(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(io_err(p))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_line<T: Serialize>(w: &mut dyn Write, value: &T, path: Option<&Path>) -> CliResult<()> {
    let text = serde_json::to_string(value).expect("serializable value");
    writeln!(w, "{text}").map_err(io_err(path.unwrap_or(Path::new("<stdout>"))))
}

fn finish(mut w: Box<dyn Write>, path: Option<&Path>) -> CliResult<()> {
    w.flush().map_err(io_err(path.unwrap_or(Path::new("<stdout>"))))
}

#[derive(Serialize)]
struct PdfOutput {
    logpdf: Option<f64>,
    in_support: bool,
}

fn pdf(args: PdfArgs) -> CliResult<()> {
    let dist = args.dist.spec()?.build()?;
    let points: Vec<MatrixJson> = match (&args.point, &args.points) {
        (Some(p), _) => vec![load_json(p, "--point")?],
        (None, Some(path)) => {
            let file = File::open(path).map_err(io_err(path))?;
            let mut out = Vec::new();
            for (i, line) in BufReader::new(file).lines().enumerate() {
                let line = line.map_err(io_err(path))?;
                if line.trim().is_empty() {
                    continue;
                }
                out.push(parse_json(&line, &format!("{} line {}", path.display(), i + 1))?);
            }
            out
        }
        (None, None) => return Err(CliError::Usage("give --point or --points".into())),
    };
    let out_path = args.out.as_deref();
    let mut w = open_out(out_path)?;
    for p in &points {
        let ld = dist.log_pdf(&p.to_matvar()?)?;
        let record = PdfOutput { logpdf: ld.in_support.then_some(ld.value), in_support: ld.in_support };
        write_line(&mut *w, &record, out_path)?;
    }
    finish(w, out_path)
}

fn sample(args: SampleArgs) -> CliResult<()> {
    let dist = args.dist.spec()?.build()?;
    let mut rng = rng_from_seed(args.seed);
    let out_path = args.out.as_deref();
    let mut w = open_out(out_path)?;
    for _ in 0..args.count {
        let x = dist.sample(&mut rng)?;
        write_line(&mut *w, &MatrixJson::from_matvar(&x), out_path)?;
    }
    finish(w, out_path)
}

fn verify(args: VerifyArgs) -> CliResult<()> {
    let suite: Suite = args.suite.parse()?;
    let mut algebras = Vec::new();
    for &b in &args.beta {
        let alg = Algebra::from_beta(b)?;
        alg.require_associative().map_err(|_| CliError::Usage("verify runs matrix checks, which need beta 1, 2 or 4".into()))?;
        if !algebras.contains(&alg) {
            algebras.push(alg);
        }
    }
    let defaults = VerifyConfig::default();
    let cfg = VerifyConfig {
        algebras,
        seed: args.seed,
        mc_samples: args.mc_samples.unwrap_or(defaults.mc_samples),
        ks_samples: args.ks_samples.unwrap_or(defaults.ks_samples),
        jacobian_samples: args.jacobian_samples.unwrap_or(defaults.jacobian_samples),
        identity_instances: args.instances.unwrap_or(defaults.identity_instances),
        quadrature_tol: args.tol.unwrap_or(defaults.quadrature_tol),
        timings: args.timings,
    };
    let reports = run_suite(suite, &cfg);
    for r in &reports {
        log::info!("{} {} statistic {:e} threshold {:e}", if r.pass { "PASS" } else { "FAIL" }, r.check, r.statistic, r.threshold);
        if !r.pass {
            eprintln!("FAIL {}: statistic {:e} > threshold {:e} ({})", r.check, r.statistic, r.threshold, r.detail);
        }
    }
    let out_path = args.out.as_deref();
    let mut w = open_out(out_path)?;
    let text = serde_json::to_string_pretty(&reports).expect("serializable reports");
    writeln!(w, "{text}").map_err(io_err(out_path.unwrap_or(Path::new("<stdout>"))))?;
    finish(w, out_path)?;
    let failed = reports.iter().filter(|r| !r.pass).count();
    if failed > 0 {
        return Err(CliError::Verification { failed, total: reports.len() });
    }
    Ok(())
}

fn weight_arg(v: &Option<Vec<f64>>, m: usize, name: &str) -> CliResult<WeightVector> {
    match v {
        None => Ok(WeightVector::zeros(m)),
        Some(k) if k.len() == m => Ok(WeightVector::new(k.clone())?),
        Some(k) => Err(CliError::Usage(format!("--{name} has {} entries but m = {m}", k.len()))),
    }
}

fn opt(v: crate::error::Result<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn tables(args: TablesArgs) -> CliResult<()> {
    let alg = Algebra::from_beta(args.beta)?;
    if args.m == 0 {
        return Err(CliError::Usage("--m must be at least 1".into()));
    }
    let kappa = weight_arg(&args.kappa, args.m, "kappa")?;
    let tau = weight_arg(&args.tau, args.m, "tau")?;
    let grid: Vec<f64> = match args.steps {
        0 => Vec::new(),
        1 => vec![args.a_from],
        s => (0..s).map(|i| args.a_from + (args.a_to - args.a_from) * i as f64 / (s - 1) as f64).collect(),
    };
    let kstr = format!("{:?}", kappa.as_slice());
    let out_path = args.out.as_deref();
    let mut w = csv::Writer::from_writer(open_out(out_path)?);
    let beta = args.beta.to_string();
    let m = args.m.to_string();
    match args.table {
        Table::Gamma => {
            w.write_record(["a", "beta", "m", "kappa", "ln_gamma_m", "ln_gamma_m_plus_kappa", "ln_gamma_m_minus_kappa"])?;
            for &a in &grid {
                w.write_record([
                    a.to_string(),
                    beta.clone(),
                    m.clone(),
                    kstr.clone(),
                    opt(lgamma_m(a, args.m, alg)),
                    opt(lgamma_m_weighted(a, &kappa, alg, WeightSign::Plus)),
                    opt(lgamma_m_weighted(a, &kappa, alg, WeightSign::Minus)),
                ])?;
            }
        }
        Table::Pochhammer => {
            w.write_record(["a", "beta", "m", "kappa", "sign", "ln_abs"])?;
            for &a in &grid {
                let (sign, ln_abs) = match pochhammer_weighted(a, &kappa, alg) {
                    Ok(p) => (p.sign.to_string(), p.ln_abs.to_string()),
                    Err(_) => (String::new(), String::new()),
                };
                w.write_record([a.to_string(), beta.clone(), m.clone(), kstr.clone(), sign, ln_abs])?;
            }
        }
        Table::Beta => {
            let tstr = format!("{:?}", tau.as_slice());
            w.write_record(["a", "b", "beta", "m", "kappa", "tau", "ln_c_beta", "ln_k_beta"])?;
            for &a in &grid {
                w.write_record([
                    a.to_string(),
                    args.b.to_string(),
                    beta.clone(),
                    m.clone(),
                    kstr.clone(),
                    tstr.clone(),
                    opt(log_c_beta(a, &kappa, args.b, &tau, alg)),
                    opt(log_k_beta(a, &kappa, args.b, &tau, alg)),
                ])?;
            }
        }
        Table::Stiefel => {
            w.write_record(["m", "n", "beta", "ln_volume"])?;
            for mm in 1..=args.m {
                for n in mm..=args.n_max {
                    w.write_record([mm.to_string(), n.to_string(), beta.clone(), opt(log_stiefel_volume(mm, n, alg))])?;
                }
            }
        }
    }
    w.flush().map_err(io_err(out_path.unwrap_or(Path::new("<stdout>"))))?;
    Ok(())
}
