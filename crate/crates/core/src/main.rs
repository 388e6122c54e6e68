//! Command-line front end: every computation plus the full formula audit,
//! with JSON output by default and plain text via --text.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use multipartition::analytic::{format_real, zak_product_check, Real};
use multipartition::audit::run_full_audit;
use multipartition::barnes::{
    bernoulli_barnes, bernoulli_barnes_grouped, delta_matrix, determinant, scaled_delta_matrix,
};
use multipartition::density::density_mod;
use multipartition::error::Error;
use multipartition::oracle::{count_series, PartitionSpec};
use multipartition::quasipoly::{build_quasipolynomial, count_closed_form, BuildMethod};
use multipartition::report::AuditEntry;
use multipartition::waves::{decompose_waves, polynomial_part_teo4, polynomial_part_teo5};
use multipartition::Rational;

#[derive(Parser)]
#[command(
    name = "multipartition",
    version,
    about = "Exact restricted multipartition counts, quasi-polynomial tables, waves, \
             Bernoulli-Barnes numbers, densities, zeta checks, and the formula audit"
)]
struct Cli {
    /// Print plain text instead of JSON.
    #[arg(long, global = true)]
    text: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count at one index and/or print the series prefix.
    Count {
        /// Comma-separated parts, e.g. --a 1,2
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
        /// Multiplicity k >= 1
        #[arg(long)]
        k: u32,
        /// Index to count at (cross-checked against the closed form)
        #[arg(long)]
        n: Option<u64>,
        /// Also print the series values for n = 0..=N_MAX
        #[arg(long, value_name = "N_MAX")]
        series: Option<u64>,
    },
    /// Per-residue quasi-polynomial coefficient table.
    Coeffs {
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
        #[arg(long)]
        k: u32,
        /// Use the binomial exactly as printed instead of the corrected one
        #[arg(long)]
        literal: bool,
    },
    /// Polynomial part (the order-1 wave).
    Polypart {
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = PolyMethod::Both)]
        method: PolyMethod,
    },
    /// Full wave decomposition with the sum identity check.
    Waves {
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
        #[arg(long)]
        k: u32,
        /// Verify the wave sum against the oracle for n < this bound
        /// (default 2D)
        #[arg(long = "n-check")]
        n_check: Option<u64>,
    },
    /// Bernoulli-Barnes number of the expanded parts, both evaluations.
    Bbnum {
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        j: usize,
    },
    /// The rkD x rkD block Bernoulli determinant, plain and scaled.
    Delta {
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
        #[arg(long)]
        k: u32,
    },
    /// Density of non-zero counts modulo m over a horizon.
    Density {
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
        #[arg(long)]
        k: u32,
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long = "N")]
        horizon: u64,
    },
    /// Product-identity checks for the zeta layer.
    Zeta {
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        s: f64,
        /// Comma-separated shifts, one per copy, e.g. --w 1,1
        #[arg(long, value_delimiter = ',', required = true)]
        w: Vec<f64>,
        #[arg(long, default_value_t = 2000)]
        cutoff: u64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Run the full formula-audit registry.
    Audit {
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
        #[arg(long)]
        k: u32,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolyMethod {
    Teo4,
    Teo5,
    Both,
}

#[derive(Serialize)]
struct CountOutput {
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    series: Option<Vec<String>>,
}

#[derive(Serialize)]
struct CoeffsOutput {
    period: u64,
    degree: usize,
    literal: bool,
    /// rows[residue][power], constant term first
    rows: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct PolypartOutput {
    method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    teo4: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    teo5: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agree: Option<bool>,
}

#[derive(Serialize)]
struct WaveOutput {
    j: u64,
    period: u64,
    rows: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct WavesOutput {
    indices: Vec<u64>,
    n_checked: u64,
    sum_matches_oracle: bool,
    waves: Vec<WaveOutput>,
}

#[derive(Serialize)]
struct BbnumOutput {
    j: usize,
    direct: String,
    grouped: String,
    agree: bool,
}

#[derive(Serialize)]
struct DeltaOutput {
    dimension: usize,
    delta: String,
    delta_scaled: String,
}

#[derive(Serialize)]
struct DensityOutput {
    modulus: u64,
    horizon: u64,
    hits: u64,
    density: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    density_over_horizon: Option<String>,
    bound: String,
    violation: bool,
}

#[derive(Serialize)]
struct ZetaOutput {
    s: String,
    w: Vec<String>,
    cutoff: u64,
    tol: String,
    product: String,
    corrected: String,
    literal_p1: String,
    literal_p2: String,
    entries: Vec<AuditEntry>,
}

/// Write to stdout, treating a closed pipe as a normal early exit.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).is_err() || out.flush().is_err() {
        std::process::exit(0);
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                emit(&e.to_string());
                std::process::exit(0);
            }
            _ => {
                eprint!("{e}");
                std::process::exit(1);
            }
        },
    };
    let text = cli.text;
    match run(cli.command) {
        Ok(value) => {
            if text {
                emit(&render_text(&value, 0));
            } else {
                let mut json = serde_json::to_string_pretty(&value).expect("serializable");
                json.push('\n');
                emit(&json);
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::Consistency(_) | Error::Singular { .. } => 2,
                _ => 1,
            };
            std::process::exit(code);
        }
    }
}

fn spec_from_flags(a: Vec<u64>, k: u32) -> Result<PartitionSpec, Error> {
    PartitionSpec::new(a, k).map_err(|e| match e {
        Error::InvalidInput(msg) if msg.contains("multiplicity") => {
            Error::InvalidInput(format!("--k: {msg}"))
        }
        Error::InvalidInput(msg) => Error::InvalidInput(format!("--a: {msg}")),
        other => other,
    })
}

fn rationals_to_strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(|v| v.to_string()).collect()
}

const HORIZON_CAP: u64 = 10_000_000;

fn check_horizon(flag: &str, value: u64) -> Result<(), Error> {
    if value > HORIZON_CAP {
        return Err(Error::InvalidInput(format!(
            "{flag}: {value} is past desk scale (max {HORIZON_CAP})"
        )));
    }
    Ok(())
}

fn run(command: Command) -> Result<serde_json::Value, Error> {
    let value = match command {
        Command::Count { a, k, n, series } => {
            let spec = spec_from_flags(a, k)?;
            if n.is_none() && series.is_none() {
                return Err(Error::InvalidInput(
                    "count requires --n and/or --series".into(),
                ));
            }
            let horizon = n.unwrap_or(0).max(series.unwrap_or(0));
            check_horizon("--n/--series", horizon)?;
            let table = count_series(&spec, horizon as usize);
            let value = match n {
                Some(n) => {
                    let oracle = table.value(n as usize).clone();
                    // the closed form must reproduce the oracle exactly
                    let closed = count_closed_form(&spec, n)?;
                    if closed != oracle {
                        return Err(Error::Consistency(format!(
                            "closed form {closed} disagrees with series {oracle} at n={n}"
                        )));
                    }
                    Some(oracle.to_string())
                }
                None => None,
            };
            let series = series.map(|n_max| {
                table.values()[..=n_max as usize]
                    .iter()
                    .map(|v| v.to_string())
                    .collect()
            });
            serde_json::to_value(CountOutput { value, series })
        }
        Command::Coeffs { a, k, literal } => {
            let spec = spec_from_flags(a, k)?;
            let method = if literal {
                BuildMethod::Teo1Literal
            } else {
                BuildMethod::Teo1
            };
            let qp = build_quasipolynomial(&spec, method)?;
            serde_json::to_value(CoeffsOutput {
                period: qp.period(),
                degree: qp.degree(),
                literal,
                rows: qp.rows().iter().map(|r| rationals_to_strings(r)).collect(),
            })
        }
        Command::Polypart { a, k, method } => {
            let spec = spec_from_flags(a, k)?;
            let (teo4, teo5) = match method {
                PolyMethod::Teo4 => (Some(polynomial_part_teo4(&spec, false)?), None),
                PolyMethod::Teo5 => (None, Some(polynomial_part_teo5(&spec))),
                PolyMethod::Both => (
                    Some(polynomial_part_teo4(&spec, false)?),
                    Some(polynomial_part_teo5(&spec)),
                ),
            };
            let agree = match (&teo4, &teo5) {
                (Some(x), Some(y)) => Some(x == y),
                _ => None,
            };
            serde_json::to_value(PolypartOutput {
                method: match method {
                    PolyMethod::Teo4 => "teo4",
                    PolyMethod::Teo5 => "teo5",
                    PolyMethod::Both => "both",
                }
                .to_string(),
                teo4: teo4.as_deref().map(rationals_to_strings),
                teo5: teo5.as_deref().map(rationals_to_strings),
                agree,
            })
        }
        Command::Waves { a, k, n_check } => {
            let spec = spec_from_flags(a, k)?;
            let ws = decompose_waves(&spec)?;
            let n_checked = n_check.unwrap_or(2 * spec.period());
            check_horizon("--n-check", n_checked)?;
            let table = count_series(&spec, n_checked.saturating_sub(1) as usize);
            let mut matches = true;
            for n in 0..n_checked {
                let expect = Rational::from_integer(table.value(n as usize).clone().into());
                if ws.sum_at(n) != expect {
                    matches = false;
                    break;
                }
            }
            serde_json::to_value(WavesOutput {
                indices: ws.indices(),
                n_checked,
                sum_matches_oracle: matches,
                waves: ws
                    .waves()
                    .iter()
                    .map(|(j, w)| WaveOutput {
                        j: *j,
                        period: w.period(),
                        rows: w.rows().iter().map(|r| rationals_to_strings(r)).collect(),
                    })
                    .collect(),
            })
        }
        Command::Bbnum { a, k, j } => {
            let spec = spec_from_flags(a, k)?;
            let direct = bernoulli_barnes(&spec.expand(), j);
            let grouped = bernoulli_barnes_grouped(&spec, j);
            serde_json::to_value(BbnumOutput {
                j,
                agree: direct == grouped,
                direct: direct.to_string(),
                grouped: grouped.to_string(),
            })
        }
        Command::Delta { a, k } => {
            let spec = spec_from_flags(a, k)?;
            let matrix = delta_matrix(&spec);
            let delta = determinant(&matrix)?;
            let delta_scaled = determinant(&scaled_delta_matrix(&spec))?;
            serde_json::to_value(DeltaOutput {
                dimension: matrix.rows(),
                delta: delta.to_string(),
                delta_scaled: delta_scaled.to_string(),
            })
        }
        Command::Density {
            a,
            k,
            modulus,
            horizon,
        } => {
            let spec = spec_from_flags(a, k)?;
            check_horizon("--N", horizon)?;
            let result = density_mod(&spec, modulus, horizon).map_err(|e| match e {
                Error::InvalidInput(msg) => Error::InvalidInput(format!("--mod: {msg}")),
                other => other,
            })?;
            serde_json::to_value(DensityOutput {
                modulus: result.modulus,
                horizon: result.horizon,
                hits: result.hits,
                density: result.density.to_string(),
                density_over_horizon: result.density_over_horizon.map(|d| d.to_string()),
                bound: result.bound.to_string(),
                violation: result.violation,
            })
        }
        Command::Zeta {
            a,
            k,
            s,
            w,
            cutoff,
            tol,
        } => {
            let spec = spec_from_flags(a, k)?;
            if tol <= 0.0 {
                return Err(Error::InvalidInput("--tol must be positive".into()));
            }
            let w_real: Vec<Real> = w.iter().map(|&x| Real::from(x)).collect();
            let check = zak_product_check(&spec, Real::from(s), &w_real, cutoff, Real::from(tol))
                .map_err(|e| match e {
                Error::InvalidInput(msg) => Error::InvalidInput(format!("--w: {msg}")),
                Error::Domain(msg) => Error::InvalidInput(format!("--s: {msg}")),
                other => other,
            })?;
            serde_json::to_value(ZetaOutput {
                s: format!("{s}"),
                w: w.iter().map(|x| format!("{x}")).collect(),
                cutoff,
                tol: format!("{tol:.3e}"),
                product: format_real(check.product),
                corrected: format_real(check.corrected),
                literal_p1: format_real(check.literal_p1),
                literal_p2: format_real(check.literal_p2),
                entries: check.entries,
            })
        }
        Command::Audit { a, k } => {
            let spec = spec_from_flags(a, k)?;
            let report = run_full_audit(&spec)?;
            serde_json::to_value(report)
        }
    };
    value.map_err(|e| Error::Consistency(format!("serialization failed: {e}")))
}

/// Plain-text rendering: indented key/value lines mirroring the JSON tree.
fn render_text(value: &serde_json::Value, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    match value {
        serde_json::Value::Object(map) => {
            let mut out = String::new();
            for (key, val) in map {
                match val {
                    serde_json::Value::Object(_) | serde_json::Value::Array(_) => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        out.push_str(&render_text(val, indent + 1));
                    }
                    _ => out.push_str(&format!("{pad}{key}: {}\n", scalar_text(val))),
                }
            }
            out
        }
        serde_json::Value::Array(items) => {
            let mut out = String::new();
            for item in items {
                match item {
                    serde_json::Value::Object(_) | serde_json::Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        out.push_str(&render_text(item, indent + 1));
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", scalar_text(item))),
                }
            }
            out
        }
        other => format!("{pad}{}\n", scalar_text(other)),
    }
}

fn scalar_text(value: &serde_json::Value) -> String {
    match value {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
