//! Command-line front end. `run` is the whole program minus process exit, so
//! it can be driven from tests.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use crate::error::{Error, Result};
use crate::fit::{fit_least_squares, fit_projection, SampleSet};
use crate::polyrep::json::bipoly_to_json;
use crate::quadrature::disk_rule;
use crate::scalar::{Param, Rational};
use crate::sobolev::{gram_matrix, GramKind};
use crate::verify::{
    default_alpha_beta, default_mus, parse_rational_list, run_verification, Family, Fault, VerifyConfig,
};
use crate::zernike::{build_q, build_q_param};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_UNDERDETERMINED: i32 = 4;
pub const EXIT_IO: i32 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "diskladder",
    version,
    about = "Generalized Zernike polynomials on the unit disk"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableMode {
    Rational,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GramWhich {
    Weight,
    Sobolev1,
    Sobolev2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Projection,
    LeastSquares,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate Q^mu_{k,j} at a point or on an N x N grid over the disk.
    Eval {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        j: u32,
        /// "p/q" for exact, otherwise a float.
        #[arg(long, allow_hyphen_values = true)]
        mu: Param,
        #[arg(long, conflicts_with = "grid", allow_hyphen_values = true)]
        at: Option<String>,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the coefficients of Q^mu_{k,j} as JSON.
    Table {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        j: u32,
        #[arg(long, allow_hyphen_values = true)]
        mu: Param,
        #[arg(long, value_enum, default_value = "rational")]
        mode: TableMode,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check ladder identities and relations exactly; writes a JSON report.
    Verify {
        /// ladder1..ladder6, Z1..Z8, relations, sobolev, operators or all.
        #[arg(long, default_value = "all")]
        family: Vec<String>,
        #[arg(long, default_value_t = 8)]
        kmax: u32,
        #[arg(long, default_value_t = 8)]
        jmax: u32,
        #[arg(long, default_value_t = 12)]
        nmax: u32,
        /// Repeatable; each value may be a comma separated list.
        #[arg(long, allow_hyphen_values = true)]
        mu: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Vec<String>,
        /// Report path; the report goes to stdout when omitted.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
    /// Gram matrix of a weighted or Sobolev-orthogonal basis.
    Gram {
        #[arg(long, value_enum)]
        which: GramWhich,
        #[arg(long)]
        cap: u32,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<Param>,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        mu: Param,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Export a disk quadrature rule.
    Quad {
        #[arg(long, allow_hyphen_values = true)]
        mu: Param,
        #[arg(long)]
        radial: usize,
        #[arg(long)]
        angular: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Expand sampled data in Q^mu_{k,j}, k + j <= degree.
    Fit {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        degree: u32,
        #[arg(long, allow_hyphen_values = true)]
        mu: Param,
        #[arg(long, value_enum, default_value = "projection")]
        method: MethodArg,
        /// Radial nodes of the projection grid (default degree + 1).
        #[arg(long)]
        radial: Option<usize>,
        /// Angular nodes of the projection grid (default 2 degree + 1).
        #[arg(long)]
        angular: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => EXIT_USAGE,
        Error::Underdetermined { .. } => EXIT_UNDERDETERMINED,
        Error::Io(_) => EXIT_IO,
        _ => EXIT_DOMAIN,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(text: &str, path: Option<&PathBuf>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn parse_point(s: &str) -> Result<Complex64> {
    let bad = || Error::Parse(format!("expected \"x,y\", got {s:?}"));
    let (x, y) = s.split_once(',').ok_or_else(bad)?;
    let x: f64 = x.trim().parse().map_err(|_| bad())?;
    let y: f64 = y.trim().parse().map_err(|_| bad())?;
    Ok(Complex64::new(x, y))
}

fn format_value(v: Complex64) -> String {
    if v.im == 0.0 {
        format!("{}", v.re)
    } else {
        format!("{},{}", v.re, v.im)
    }
}

fn collect_rationals(values: &[String], default: Vec<Rational>) -> Result<Vec<Rational>> {
    if values.is_empty() {
        return Ok(default);
    }
    let mut out = Vec::new();
    for v in values {
        out.extend(parse_rational_list(v)?);
    }
    Ok(out)
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Eval {
            k,
            j,
            mu,
            at,
            grid,
            output,
        } => {
            if mu.to_f64().is_nan() || mu.to_f64() <= -1.0 {
                return Err(Error::Domain(format!("eval needs mu > -1 (got {mu})")));
            }
            let p = build_q_param(k, j, &mu)?;
            let text = match (at, grid) {
                (Some(at), _) => {
                    let z = parse_point(&at)?;
                    format!("{}\n", format_value(p.eval(z)))
                }
                (None, Some(n)) => {
                    if n < 2 {
                        return Err(Error::Parse("--grid needs N >= 2".into()));
                    }
                    let mut s = String::from("x,y,Re,Im\n");
                    for r in 0..n {
                        for c in 0..n {
                            let x = -1.0 + 2.0 * c as f64 / (n - 1) as f64;
                            let y = -1.0 + 2.0 * r as f64 / (n - 1) as f64;
                            if x * x + y * y > 1.0 + 1e-12 {
                                continue;
                            }
                            let v = p.eval(Complex64::new(x, y));
                            s.push_str(&format!("{x:e},{y:e},{:e},{:e}\n", v.re, v.im));
                        }
                    }
                    s
                }
                (None, None) => return Err(Error::Parse("eval needs --at or --grid".into())),
            };
            emit(&text, output.as_ref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Table { k, j, mu, mode, output } => {
            let text = match mode {
                TableMode::Rational => {
                    let m = mu
                        .to_rational()
                        .ok_or_else(|| Error::Domain(format!("mu {mu} has no exact value")))?;
                    bipoly_to_json(&build_q(k, j, &m)?)
                }
                TableMode::Float => bipoly_to_json(&build_q(k, j, &mu.to_f64())?),
            };
            emit(&(text + "\n"), output.as_ref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            family,
            kmax,
            jmax,
            nmax,
            mu,
            alpha,
            beta,
            json,
            inject_fault,
        } => {
            let families = family
                .iter()
                .flat_map(|f| f.split(','))
                .map(|f| f.parse::<Family>())
                .collect::<Result<Vec<_>>>()?;
            let cfg = VerifyConfig {
                families,
                kmax,
                jmax,
                nmax,
                mus: collect_rationals(&mu, default_mus())?,
                alphas: collect_rationals(&alpha, default_alpha_beta())?,
                betas: collect_rationals(&beta, default_alpha_beta())?,
                fault: inject_fault.as_deref().map(str::parse::<Fault>).transpose()?,
            };
            let report = run_verification(&cfg);
            let text = report.to_json() + "\n";
            match &json {
                Some(p) => {
                    std::fs::write(p, &text)?;
                    let s = &report.summary;
                    writeln!(out, "{} passed, {} failed, {} skipped", s.passed, s.failed, s.skipped)?;
                    for f in report.failures().take(5) {
                        writeln!(out, "FAIL {} {}", f.identity, serde_json::to_string(&f.params)?)?;
                    }
                }
                None => out.write_all(text.as_bytes())?,
            }
            Ok(if report.all_pass() { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::Gram {
            which,
            cap,
            lambda,
            mu,
            format,
            output,
        } => {
            let kind = match which {
                GramWhich::Weight => GramKind::Weight { mu: mu.to_f64() },
                GramWhich::Sobolev1 => {
                    let l = lambda.map(|l| l.to_f64()).unwrap_or(1.0);
                    if l.is_nan() || l <= 0.0 {
                        return Err(Error::Domain(format!("lambda must be positive (got {l})")));
                    }
                    GramKind::Sobolev1 { lambda: l }
                }
                GramWhich::Sobolev2 => GramKind::Sobolev2,
            };
            let g = gram_matrix(&kind, cap)?;
            let text = match format {
                Format::Csv => g.to_csv(),
                Format::Json => serde_json::to_string_pretty(&g)? + "\n",
            };
            emit(&text, output.as_ref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Quad {
            mu,
            radial,
            angular,
            format,
            output,
        } => {
            let rule = disk_rule(mu.to_f64(), radial, angular)?;
            let text = match format {
                Format::Csv => {
                    let mut s = String::from("node_x,node_y,weight\n");
                    for n in &rule.nodes {
                        s.push_str(&format!("{:e},{:e},{:e}\n", n.x, n.y, n.weight));
                    }
                    s
                }
                Format::Json => {
                    let v = json!({
                        "mu": rule.mu,
                        "radial": radial,
                        "angular": angular,
                        "nodes": rule.nodes,
                    });
                    serde_json::to_string_pretty(&v)? + "\n"
                }
            };
            emit(&text, output.as_ref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Fit {
            input,
            degree,
            mu,
            method,
            radial,
            angular,
            output,
        } => {
            let samples = SampleSet::from_csv_path(&input)?;
            let result = match method {
                MethodArg::Projection => {
                    let rule = disk_rule(
                        mu.to_f64(),
                        radial.unwrap_or(degree as usize + 1),
                        angular.unwrap_or(2 * degree as usize + 1),
                    )?;
                    fit_projection(&samples, degree, &mu, &rule)?
                }
                MethodArg::LeastSquares => fit_least_squares(&samples, degree, &mu)?,
            };
            emit(&(result.to_json() + "\n"), output.as_ref(), out)?;
            Ok(EXIT_OK)
        }
    }
}
