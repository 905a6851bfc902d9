// `!(x > a)` validation guards reject NaN as well; `x <= a` would let it through
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use zml::cache::{read_zero_cache, write_zero_cache};
use zml::report::{to_csv, to_json, Value};
use zml::sums::{
    critical_line_shifted_meansq, dirichlet_double_sum, discrete_mean_square,
    gamma_shift_partial_sum, landau_report, uniform_bound_ratio,
};
use zml::verify::run_verification_with_determinism;
use zml::zeros::{find_zeros, ZeroTable};
use zml::{Error, EvalConfig};

#[derive(Parser)]
#[command(
    name = "zml",
    version,
    about = "Discrete sums of the Riemann zeta function over its zero ordinates: \
             compute them, compare them against their explicit main terms, verify the lot."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Upper end T of the ordinate range (0, T]
    #[arg(long = "t-max", default_value_t = 1000.0)]
    t_max: f64,
    /// Zero-cache file (default: $ZML_CACHE_DIR or ./.zml-cache, one file per T)
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Write the report to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
    /// Worker threads for the parallel reductions (0 = all cores)
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Localize all zero ordinates in (0, t_max] and write the cache
    Zeros {
        #[command(flatten)]
        common: Common,
    },
    /// Sum of x^{i gamma} against the Landau main term and its envelope
    Landau {
        /// Evaluation point x > 1
        #[arg(long)]
        x: f64,
        /// Implied constant C of the error envelope
        #[arg(long = "envelope-c", default_value_t = 5.0)]
        envelope_c: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Discrete mean square sum |zeta(sigma + i(t + gamma))|^2 vs its main term
    Meansq {
        #[arg(long)]
        sigma: f64,
        /// Fixed shift t of the evaluation height
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        t: f64,
        /// Also report the uniform-bound ratio S/(T log T + |t|^eps)
        #[arg(long)]
        eps: Option<f64>,
        /// Cross-check S against the double-sum route at this cutoff exponent
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long = "envelope-c", default_value_t = 5.0)]
        envelope_c: f64,
        #[command(flatten)]
        common: Common,
    },
    /// A1 + 2 Re A2 double-sum decomposition with the measured remainder
    Doublesum {
        #[arg(long)]
        sigma: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        t: f64,
        /// Dirichlet cutoff exponent
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Critical-line shifted mean square vs the sinc-factor main term
    Gonek {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Partial sums (gamma + t)^{-2 lambda} against T |T+t|^{-2lambda} log T
    Gammabound {
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, default_value_t = 0.25)]
        lambda: f64,
        #[arg(long = "envelope-c", default_value_t = 5.0)]
        envelope_c: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Run the full verification battery; exit 0 iff every check passes
    Verify {
        #[command(flatten)]
        common: Common,
    },
}

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::InvalidConfig { .. }
        | Error::DomainViolation { .. }
        | Error::AlphaOutOfRange { .. }
        | Error::CacheFormat { .. }
        | Error::Io(_) => EXIT_VALIDATION,
        Error::PoleAtOne { .. }
        | Error::RangeExceeded { .. }
        | Error::NearSingularity { .. }
        | Error::Unresolved { .. }
        | Error::MissedZero { .. }
        | Error::ShiftOutOfRange { .. }
        | Error::CutoffTooLarge { .. } => EXIT_NUMERICAL,
    }
}

fn validation_error(detail: String) -> Error {
    Error::InvalidConfig { detail }
}

fn default_cache_path(t_max: f64) -> PathBuf {
    let dir = std::env::var_os("ZML_CACHE_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(".zml-cache"));
    dir.join(format!("zeros_t{t_max}.txt"))
}

/// Load the zero table for (0, t_max] from the cache, or build it (with a
/// warning) when the cache is absent or too short.
fn load_or_build(
    t_max: f64,
    cache: &Option<PathBuf>,
    cfg: &EvalConfig,
) -> Result<ZeroTable, Error> {
    let path = cache.clone().unwrap_or_else(|| default_cache_path(t_max));
    if path.exists() {
        let table = read_zero_cache(&path)?;
        if table.t_max() >= t_max {
            return Ok(table.truncated(t_max));
        }
        eprintln!(
            "warning: cache {} covers T={} < requested {}; rebuilding",
            path.display(),
            table.t_max(),
            t_max
        );
    } else {
        eprintln!("warning: cache {} absent; building", path.display());
    }
    let table = find_zeros(0.0, t_max, cfg)?;
    write_zero_cache(&path, &table)?;
    // serve the freshly written file, not the in-memory table: ordinates are
    // persisted at 15 significant digits and every later run will read those,
    // so the first run must compute from the same rounded values
    read_zero_cache(&path)
}

fn check_row(name: &str, observed: f64, threshold: f64, pass: bool) -> Value {
    Value::Obj(vec![
        ("name", Value::Str(name.to_string())),
        ("observed", Value::Num(observed)),
        ("threshold", Value::Num(threshold)),
        ("pass", Value::Bool(pass)),
    ])
}

struct Report {
    command: &'static str,
    config: Vec<(&'static str, Value)>,
    result: Vec<(&'static str, Value)>,
    checks: Vec<Value>,
    csv_header: Vec<&'static str>,
    csv_rows: Vec<Vec<Value>>,
}

impl Report {
    fn render(&self, format: OutFormat) -> String {
        match format {
            OutFormat::Json => {
                let v = Value::Obj(vec![
                    ("command", Value::Str(self.command.to_string())),
                    ("config", Value::Obj(self.config.clone())),
                    ("result", Value::Obj(self.result.clone())),
                    ("checks", Value::Arr(self.checks.clone())),
                ]);
                let mut s = to_json(&v);
                s.push('\n');
                s
            }
            OutFormat::Csv => to_csv(&self.csv_header, &self.csv_rows),
        }
    }
}

// The thread count is a runtime hint with no effect on any computed value
// (reductions are block-deterministic), so it is deliberately absent from
// the serialized config: reports must be bit-identical across thread counts.
fn common_config(common: &Common, cache_path: &Path) -> Vec<(&'static str, Value)> {
    vec![
        ("t_max", Value::Num(common.t_max)),
        ("cache_path", Value::Str(cache_path.display().to_string())),
    ]
}

fn validate_common(common: &Common, cfg: &EvalConfig) -> Result<(), Error> {
    if !(common.t_max > 0.0 && common.t_max <= cfg.max_t) {
        return Err(validation_error(format!(
            "t-max = {} outside (0, {}]",
            common.t_max, cfg.max_t
        )));
    }
    if common.threads > 1024 {
        return Err(validation_error(format!(
            "threads = {} is unreasonable",
            common.threads
        )));
    }
    Ok(())
}

fn run() -> Result<u8, Error> {
    let cli = Cli::parse();
    let cfg = EvalConfig::default();

    let common = match &cli.command {
        Command::Zeros { common }
        | Command::Landau { common, .. }
        | Command::Meansq { common, .. }
        | Command::Doublesum { common, .. }
        | Command::Gonek { common, .. }
        | Command::Gammabound { common, .. }
        | Command::Verify { common } => common,
    };
    validate_common(common, &cfg)?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(common.threads)
        .build_global()
        .ok();

    let cache_path = common
        .cache
        .clone()
        .unwrap_or_else(|| default_cache_path(common.t_max));

    let (report, exit) = match &cli.command {
        Command::Zeros { common } => {
            let table = find_zeros(0.0, common.t_max, &cfg)?;
            write_zero_cache(&cache_path, &table)?;
            let consistent = table.len() == table.count_check();
            let report = Report {
                command: "zeros",
                config: common_config(common, &cache_path),
                result: vec![
                    ("t_max", Value::Num(table.t_max())),
                    ("count", Value::Int(table.len() as i64)),
                    ("tol", Value::Num(table.tol())),
                    ("z_residual_bound", Value::Num(table.z_residual_bound())),
                ],
                checks: vec![check_row(
                    "census_match",
                    (table.len() as f64) - (table.count_check() as f64),
                    0.0,
                    consistent,
                )],
                csv_header: vec!["t_max", "count", "tol", "z_residual_bound"],
                csv_rows: vec![vec![
                    Value::Num(table.t_max()),
                    Value::Int(table.len() as i64),
                    Value::Num(table.tol()),
                    Value::Num(table.z_residual_bound()),
                ]],
            };
            (report, 0)
        }
        Command::Landau {
            x,
            envelope_c,
            common,
        } => {
            if !(*x > 1.0) {
                return Err(validation_error(format!("x = {x} must exceed 1")));
            }
            if !(*envelope_c > 0.0) {
                return Err(validation_error(format!(
                    "envelope-c = {envelope_c} must be positive"
                )));
            }
            let table = load_or_build(common.t_max, &common.cache, &cfg)?;
            let r = landau_report(*x, &table, *envelope_c);
            let dev = (r.observed - r.main_term).norm();
            let mut config = vec![
                ("x", Value::Num(*x)),
                ("envelope_c", Value::Num(*envelope_c)),
            ];
            config.extend(common_config(common, &cache_path));
            let report = Report {
                command: "landau",
                config,
                result: vec![
                    ("x", Value::Num(r.x)),
                    ("T", Value::Num(r.t_max)),
                    (
                        "observed",
                        Value::Obj(vec![
                            ("re", Value::Num(r.observed.re)),
                            ("im", Value::Num(r.observed.im)),
                        ]),
                    ),
                    ("main_term", Value::Num(r.main_term)),
                    ("envelope", Value::Num(r.envelope)),
                    ("ratio", Value::Num(r.ratio)),
                ],
                checks: vec![check_row(
                    "deviation_within_envelope",
                    dev,
                    r.envelope,
                    dev <= r.envelope,
                )],
                csv_header: vec![
                    "x",
                    "T",
                    "observed_re",
                    "observed_im",
                    "main_term",
                    "envelope",
                    "ratio",
                ],
                csv_rows: vec![vec![
                    Value::Num(r.x),
                    Value::Num(r.t_max),
                    Value::Num(r.observed.re),
                    Value::Num(r.observed.im),
                    Value::Num(r.main_term),
                    Value::Num(r.envelope),
                    Value::Num(r.ratio),
                ]],
            };
            (report, 0)
        }
        Command::Meansq {
            sigma,
            t,
            eps,
            delta,
            envelope_c,
            common,
        } => {
            if !(*sigma > 0.5 + 1e-3) {
                return Err(validation_error(format!(
                    "sigma = {sigma} must exceed 1/2 + 1e-3"
                )));
            }
            if let Some(e) = eps {
                if !(*e > 0.0 && *e < 1.0) {
                    return Err(validation_error(format!("eps = {e} outside (0, 1)")));
                }
            }
            if let Some(d) = delta {
                if !(*d > 0.0 && *d <= 0.9) {
                    return Err(validation_error(format!("delta = {d} outside (0, 0.9]")));
                }
            }
            let table = load_or_build(common.t_max, &common.cache, &cfg)?;
            let mut r = discrete_mean_square(*sigma, *t, &table, &cfg)?;
            let mut checks = vec![check_row(
                "rel_dev_within_0.2",
                r.rel_dev,
                0.2,
                r.rel_dev <= 0.2,
            )];
            if let Some(e) = eps {
                let ratio = uniform_bound_ratio(*sigma, *t, *e, &table, &cfg)?;
                checks.push(check_row(
                    "uniform_bound_ratio",
                    ratio,
                    *envelope_c,
                    ratio <= *envelope_c,
                ));
            }
            if let Some(d) = delta {
                let b = dirichlet_double_sum(*sigma, *t, *d, &table, &cfg)?;
                r.delta = Some(*d);
                let gap = if r.observed_s > 0.0 {
                    b.r_est / r.observed_s
                } else {
                    f64::NAN
                };
                checks.push(check_row(
                    "doublesum_cross_check_gap",
                    gap,
                    0.05,
                    gap <= 0.05,
                ));
            }
            let mut config = vec![
                ("sigma", Value::Num(*sigma)),
                ("t", Value::Num(*t)),
                ("eps", eps.map(Value::Num).unwrap_or(Value::Null)),
                ("delta", delta.map(Value::Num).unwrap_or(Value::Null)),
                ("envelope_c", Value::Num(*envelope_c)),
            ];
            config.extend(common_config(common, &cache_path));
            let report = Report {
                command: "meansq",
                config,
                result: vec![
                    ("sigma", Value::Num(r.sigma)),
                    ("t", Value::Num(r.t)),
                    ("T", Value::Num(r.t_max)),
                    ("observed_S", Value::Num(r.observed_s)),
                    ("main_M", Value::Num(r.main_m)),
                    ("rel_dev", Value::Num(r.rel_dev)),
                    ("n_zeros", Value::Int(r.n_zeros as i64)),
                    ("delta", r.delta.map(Value::Num).unwrap_or(Value::Null)),
                ],
                checks,
                csv_header: vec![
                    "sigma",
                    "t",
                    "T",
                    "observed_S",
                    "main_M",
                    "rel_dev",
                    "n_zeros",
                    "delta",
                ],
                csv_rows: vec![vec![
                    Value::Num(r.sigma),
                    Value::Num(r.t),
                    Value::Num(r.t_max),
                    Value::Num(r.observed_s),
                    Value::Num(r.main_m),
                    Value::Num(r.rel_dev),
                    Value::Int(r.n_zeros as i64),
                    r.delta.map(Value::Num).unwrap_or(Value::Null),
                ]],
            };
            (report, 0)
        }
        Command::Doublesum {
            sigma,
            t,
            delta,
            common,
        } => {
            if !(*sigma > 0.5 + 1e-3) {
                return Err(validation_error(format!(
                    "sigma = {sigma} must exceed 1/2 + 1e-3"
                )));
            }
            if !(*delta > 0.0 && *delta <= 0.9) {
                return Err(validation_error(format!(
                    "delta = {delta} outside (0, 0.9]"
                )));
            }
            let table = load_or_build(common.t_max, &common.cache, &cfg)?;
            let b = dirichlet_double_sum(*sigma, *t, *delta, &table, &cfg)?;
            let s = discrete_mean_square(*sigma, *t, &table, &cfg)?.observed_s;
            let gap = if s > 0.0 { b.r_est / s } else { f64::NAN };
            let mut config = vec![
                ("sigma", Value::Num(*sigma)),
                ("t", Value::Num(*t)),
                ("delta", Value::Num(*delta)),
            ];
            config.extend(common_config(common, &cache_path));
            let report = Report {
                command: "doublesum",
                config,
                result: vec![
                    ("A1", Value::Num(b.a1)),
                    (
                        "A2",
                        Value::Obj(vec![
                            ("re", Value::Num(b.a2.re)),
                            ("im", Value::Num(b.a2.im)),
                        ]),
                    ),
                    ("A", Value::Num(b.a)),
                    ("R_est", Value::Num(b.r_est)),
                ],
                checks: vec![check_row(
                    "remainder_within_5_percent",
                    gap,
                    0.05,
                    gap <= 0.05,
                )],
                csv_header: vec![
                    "sigma", "t", "delta", "T", "A1", "A2_re", "A2_im", "A", "R_est",
                ],
                csv_rows: vec![vec![
                    Value::Num(*sigma),
                    Value::Num(*t),
                    Value::Num(*delta),
                    Value::Num(common.t_max),
                    Value::Num(b.a1),
                    Value::Num(b.a2.re),
                    Value::Num(b.a2.im),
                    Value::Num(b.a),
                    Value::Num(b.r_est),
                ]],
            };
            (report, 0)
        }
        Command::Gonek { alpha, common } => {
            let limit =
                (common.t_max / (2.0 * std::f64::consts::PI)).ln() / (4.0 * std::f64::consts::PI);
            if alpha.abs() > limit {
                return Err(validation_error(format!(
                    "alpha = {alpha} outside the admissible |alpha| <= {limit:.4}"
                )));
            }
            let table = load_or_build(common.t_max, &common.cache, &cfg)?;
            let (observed, main) = critical_line_shifted_meansq(*alpha, &table, &cfg)?;
            let checks = if *alpha == 0.0 {
                let bound = 1e-8 * table.len() as f64;
                vec![check_row(
                    "alpha0_degeneracy",
                    observed,
                    bound,
                    observed <= bound,
                )]
            } else {
                let ratio = observed / main;
                vec![check_row(
                    "observed_over_main_in_window",
                    ratio,
                    1.6,
                    (0.5..=1.6).contains(&ratio),
                )]
            };
            let mut config = vec![("alpha", Value::Num(*alpha))];
            config.extend(common_config(common, &cache_path));
            let report = Report {
                command: "gonek",
                config,
                result: vec![
                    ("alpha", Value::Num(*alpha)),
                    ("T", Value::Num(common.t_max)),
                    ("observed", Value::Num(observed)),
                    ("main", Value::Num(main)),
                ],
                checks,
                csv_header: vec!["alpha", "T", "observed", "main"],
                csv_rows: vec![vec![
                    Value::Num(*alpha),
                    Value::Num(common.t_max),
                    Value::Num(observed),
                    Value::Num(main),
                ]],
            };
            (report, 0)
        }
        Command::Gammabound {
            t,
            lambda,
            envelope_c,
            common,
        } => {
            if !(*lambda > 0.0 && *lambda < 0.5) {
                return Err(validation_error(format!(
                    "lambda = {lambda} outside (0, 1/2)"
                )));
            }
            let table = load_or_build(common.t_max, &common.cache, &cfg)?;
            let (sum, ratio) = gamma_shift_partial_sum(*t, *lambda, &table)?;
            let mut config = vec![("t", Value::Num(*t)), ("lambda", Value::Num(*lambda))];
            config.extend(common_config(common, &cache_path));
            let report = Report {
                command: "gammabound",
                config,
                result: vec![
                    ("t", Value::Num(*t)),
                    ("lambda", Value::Num(*lambda)),
                    ("T", Value::Num(common.t_max)),
                    ("sum", Value::Num(sum)),
                    ("bound_ratio", Value::Num(ratio)),
                ],
                checks: vec![check_row(
                    "ratio_within_constant",
                    ratio,
                    *envelope_c,
                    ratio <= *envelope_c,
                )],
                csv_header: vec!["t", "lambda", "T", "sum", "bound_ratio"],
                csv_rows: vec![vec![
                    Value::Num(*t),
                    Value::Num(*lambda),
                    Value::Num(common.t_max),
                    Value::Num(sum),
                    Value::Num(ratio),
                ]],
            };
            (report, 0)
        }
        Command::Verify { common } => {
            let report = run_verification_with_determinism(common.t_max, &cfg)?;
            for line in report.table_lines() {
                eprintln!("{line}");
            }
            eprintln!(
                "verify: {} checks, {} failed, census took {:.1}s",
                report.checks.len(),
                report.checks.iter().filter(|c| !c.pass).count(),
                report.census_seconds
            );
            // freshly built table doubles as the cache for later commands
            write_zero_cache(&cache_path, &report.table).ok();
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|c| {
                    Value::Obj(vec![
                        ("name", Value::Str(c.name.clone())),
                        (
                            "observed",
                            c.observed.map(Value::Num).unwrap_or(Value::Null),
                        ),
                        ("threshold", Value::Num(c.threshold)),
                        ("pass", Value::Bool(c.pass)),
                    ])
                })
                .collect();
            let csv_rows: Vec<Vec<Value>> = report
                .checks
                .iter()
                .map(|c| {
                    vec![
                        Value::Str(c.name.clone()),
                        c.observed.map(Value::Num).unwrap_or(Value::Null),
                        Value::Num(c.threshold),
                        Value::Bool(c.pass),
                    ]
                })
                .collect();
            let all_pass = report.all_pass();
            let out = Report {
                command: "verify",
                config: common_config(common, &cache_path),
                result: vec![
                    ("t_max", Value::Num(report.t_max)),
                    ("all_pass", Value::Bool(all_pass)),
                ],
                checks,
                csv_header: vec!["name", "observed", "threshold", "pass"],
                csv_rows,
            };
            (out, if all_pass { 0 } else { EXIT_VERIFY_FAILED })
        }
    };

    let rendered = report.render(common.format);
    match &common.out {
        Some(path) => std::fs::write(path, rendered).map_err(Error::from)?,
        None => print!("{rendered}"),
    }
    Ok(exit)
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
