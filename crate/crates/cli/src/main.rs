//! `linnik`: evaluate, tabulate, sample and verify generalized Linnik laws.

mod args;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use linnik::density::{self, MellinConfig, DEFAULT_SERIES_LEN};
use linnik::params::{classify_lambda, rationalize, LambdaInfo};
use linnik::sampling::{empirical_cf, linnik_cf, sample_linnik, RngState};
use linnik::verify::{run_property_suite, to_json_lines, SuiteConfig};
use linnik::{EvalResult, Params};

use args::{build_params, parse_grid, parse_vector, Range, Real, Scale};

#[derive(Parser)]
#[command(
    name = "linnik",
    version,
    about = "Generalized multivariate Linnik laws"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct LawArgs {
    /// Stability index in (0, 2]; decimal or exact a/b.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Real,
    /// Shape ν > 0; decimal or exact e/f.
    #[arg(long, allow_hyphen_values = true)]
    nu: Real,
    /// Dimension.
    #[arg(long)]
    n: u32,
}

impl LawArgs {
    fn params(&self) -> Result<Params, Failure> {
        build_params(&self.alpha, &self.nu, self.n).map_err(|e| Failure::Usage(e.to_string()))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EvalMethod {
    Auto,
    Closed2,
    Integral,
    MellinBarnes,
    SmallR,
    LargeR,
    Entire,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Density at a single radius.
    Eval {
        #[command(flatten)]
        law: LawArgs,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = EvalMethod::Auto)]
        method: EvalMethod,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Density on a grid of radii.
    Table {
        #[command(flatten)]
        law: LawArgs,
        /// start:stop:count
        #[arg(long)]
        r: Range,
        #[arg(long, value_enum, default_value_t = Scale::Log)]
        scale: Scale,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Random draws, one point per row.
    Sample {
        #[command(flatten)]
        law: LawArgs,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Empirical characteristic function against (1 + ‖t‖^α)^{−ν}.
    Cf {
        #[command(flatten)]
        law: LawArgs,
        /// Frequency vector, comma separated, of length n.
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, default_value_t = 100_000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Pole-collision classification as JSON.
    Classify {
        #[command(flatten)]
        law: LawArgs,
        /// Denominator cap when rationalizing decimal input.
        #[arg(long, default_value_t = linnik::params::DEFAULT_MAX_DENOMINATOR)]
        max_den: u64,
    },
    /// Property battery; exit status 1 if any check fails.
    Check {
        /// `default` or `alpha,nu,n` triples separated by `;`.
        #[arg(long, default_value = "default")]
        grid: String,
        /// Relative agreement required between representations.
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(String),
    ChecksFailed(usize),
}

impl From<linnik::Error> for Failure {
    fn from(e: linnik::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

#[derive(Serialize)]
struct EvalRecord<'a> {
    alpha: &'a str,
    nu: &'a str,
    n: u32,
    r: f64,
    value: f64,
    method: &'static str,
    err_est: f64,
    terms: usize,
}

#[derive(Serialize)]
struct Classification<'a> {
    #[serde(flatten)]
    info: LambdaInfo,
    alpha: &'a str,
    nu: &'a str,
    n: u32,
    exact: bool,
}

#[derive(Serialize)]
struct CfRecord {
    t: Vec<f64>,
    t_norm: f64,
    count: usize,
    seed: u64,
    re: f64,
    re_se: f64,
    im: f64,
    im_se: f64,
    exact: f64,
}

fn sink(output: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn evaluate(p: &Params, r: f64, tol: f64, method: EvalMethod) -> linnik::Result<EvalResult> {
    match method {
        EvalMethod::Auto => linnik::eval_auto(p, r, tol),
        EvalMethod::Closed2 => density::eval_closed2(p, r),
        EvalMethod::Integral => density::eval_integral(p, r, tol),
        EvalMethod::MellinBarnes => {
            density::eval_mellin_barnes(p, r, &MellinConfig::default_for(p, tol))
        }
        EvalMethod::SmallR => density::eval_small_r_series_auto(p, r, tol),
        EvalMethod::LargeR => {
            let mut best: Option<EvalResult> = None;
            let mut last_err = None;
            for k in 1..=40 {
                match density::eval_large_r_asym(p, r, k) {
                    Ok(v) if best.is_none_or(|b| v.err_est < b.err_est) => best = Some(v),
                    Ok(_) => {}
                    Err(e) => last_err = Some(e),
                }
            }
            best.ok_or_else(|| last_err.expect("at least one attempt"))
        }
        EvalMethod::Entire => {
            let s = density::build_entire_series(p, &p.lambda(), DEFAULT_SERIES_LEN)?;
            density::eval_entire_series(&s, p, r)
        }
    }
}

fn write_record(out: &mut dyn Write, format: Format, rec: &EvalRecord) -> io::Result<()> {
    match format {
        Format::Csv => writeln!(
            out,
            "{:.16e},{:.16e},{},{:.16e},{}",
            rec.r, rec.value, rec.method, rec.err_est, rec.terms
        ),
        Format::Json => writeln!(out, "{}", serde_json::to_string(rec).expect("record")),
    }
}

const CSV_HEADER: &str = "r,value,method,err_est,terms";

fn record<'a>(law: &'a LawArgs, r: f64, v: &EvalResult) -> EvalRecord<'a> {
    EvalRecord {
        alpha: &law.alpha.text,
        nu: &law.nu.text,
        n: law.n,
        r,
        value: v.value,
        method: v.method.as_str(),
        err_est: v.err_est,
        terms: v.terms_used,
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Eval {
            law,
            r,
            tol,
            method,
            format,
        } => {
            let p = law.params()?;
            let v = evaluate(&p, r, tol, method)?;
            let mut out = sink(&None)?;
            if format == Format::Csv {
                writeln!(out, "{CSV_HEADER}")?;
            }
            write_record(&mut out, format, &record(&law, r, &v))?;
            out.flush()?;
        }
        Command::Table {
            law,
            r,
            scale,
            tol,
            format,
            output,
        } => {
            let p = law.params()?;
            let radii = r.points(scale);
            let rows = linnik::par::map(linnik::par::Exec::Auto, &radii, |&r| {
                linnik::eval_auto(&p, r, tol)
            });
            let mut out = sink(&output)?;
            if format == Format::Csv {
                writeln!(out, "{CSV_HEADER}")?;
            }
            for (&r, v) in radii.iter().zip(rows) {
                write_record(&mut out, format, &record(&law, r, &v?))?;
            }
            out.flush()?;
        }
        Command::Sample {
            law,
            count,
            seed,
            output,
        } => {
            let p = law.params()?;
            if count == 0 {
                return Err(Failure::Usage("--count must be at least 1".into()));
            }
            let batch = sample_linnik(&p, &mut RngState::new(seed), count);
            let mut out = sink(&output)?;
            let header: Vec<String> = (1..=p.n).map(|i| format!("x{i}")).collect();
            writeln!(out, "{}", header.join(","))?;
            for row in batch.rows() {
                let cells: Vec<String> = row.iter().map(|x| format!("{x:.16e}")).collect();
                writeln!(out, "{}", cells.join(","))?;
            }
            out.flush()?;
        }
        Command::Cf {
            law,
            t,
            count,
            seed,
        } => {
            let p = law.params()?;
            let t = parse_vector(&t).map_err(Failure::Usage)?;
            if t.len() != p.n as usize {
                return Err(Failure::Usage(format!("--t needs {} components", p.n)));
            }
            if count == 0 {
                return Err(Failure::Usage("--count must be at least 1".into()));
            }
            let batch = sample_linnik(&p, &mut RngState::new(seed), count);
            let est = empirical_cf(&batch, &t)?;
            let t_norm = t.iter().map(|x| x * x).sum::<f64>().sqrt();
            let rec = CfRecord {
                exact: linnik_cf(&p, t_norm),
                t,
                t_norm,
                count,
                seed,
                re: est.re,
                re_se: est.re_se,
                im: est.im,
                im_se: est.im_se,
            };
            println!("{}", serde_json::to_string(&rec).expect("record"));
        }
        Command::Classify { law, max_den } => {
            let p = law.params()?;
            let form = p
                .exact_form()
                .or_else(|| rationalize(p.alpha, p.nu, max_den));
            let rec = Classification {
                info: classify_lambda(&p, form.as_ref()),
                alpha: &law.alpha.text,
                nu: &law.nu.text,
                n: law.n,
                exact: p.exact_form().is_some(),
            };
            println!("{}", serde_json::to_string(&rec).expect("record"));
        }
        Command::Check { grid, tol, output } => {
            let grid = parse_grid(&grid).map_err(Failure::Usage)?;
            let cfg = SuiteConfig {
                cross_floor: tol,
                ..SuiteConfig::default()
            };
            let reports = run_property_suite(&grid, &cfg);
            let mut out = sink(&output)?;
            out.write_all(to_json_lines(&reports).as_bytes())?;
            out.flush()?;
            let failed = reports.iter().filter(|r| !r.pass).count();
            eprintln!("{} checks, {} failed", reports.len(), failed);
            if failed > 0 {
                return Err(Failure::ChecksFailed(failed));
            }
        }
    }
    Ok(())
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("LINNIK_THREADS") else {
        return Ok(());
    };
    let k: usize = v.parse().ok().filter(|&k| k > 0).ok_or_else(|| {
        Failure::Usage(format!(
            "LINNIK_THREADS must be a positive integer, got {v:?}"
        ))
    })?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(k)
        .build_global()
        .map_err(|e| Failure::Runtime(e.to_string()))?;
    #[cfg(not(feature = "parallel"))]
    let _ = k;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match configure_threads().and_then(|()| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::ChecksFailed(k)) => {
            eprintln!("{k} check(s) failed");
            ExitCode::from(1)
        }
    }
}
