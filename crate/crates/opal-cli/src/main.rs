//! Command-line front end for the operator-algebra toolkit.
//!
//! Exit codes: 0 all checks passed, 1 some check failed, 2 configuration
//! or I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use opal_core::blockalg::{WeightKind, WeightSeq, cai_element};
use opal_core::cones::cone_report;
use opal_core::error::Error;
use opal_core::ideals::{urysohn_verify, ws_report};
use opal_core::io;
use opal_core::linalg::gen_spectrum;
use opal_core::numrange::nr_boundary;
use opal_core::suites::{SuiteConfig, SuiteName, render_lines, run_suite};
use opal_core::transforms::{QuadratureScheme, frac_power, frac_power_spectral};

#[derive(Parser)]
#[command(name = "opal", version, about = "operator-algebra positivity toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Quad,
    Spec,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightsArg {
    Linear,
    Geometric,
}

impl From<WeightsArg> for WeightKind {
    fn from(w: WeightsArg) -> Self {
        match w {
            WeightsArg::Linear => WeightKind::Linear,
            WeightsArg::Geometric => WeightKind::Geometric,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Fractional power of an accretive matrix.
    Power {
        #[arg(long)]
        alpha: f64,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Cone membership report for a matrix.
    Cones {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Numerical-range utilities.
    Nr {
        #[command(subcommand)]
        sub: NrCommand,
    },
    /// Principal-ideal predicate report for an accretive matrix.
    Ws {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Urysohn-style interpolation checks.
    Urysohn {
        #[command(subcommand)]
        sub: UrysohnCommand,
    },
    /// Block-algebra verification harness.
    Cx {
        #[command(subcommand)]
        sub: CxCommand,
    },
    /// Verification suites.
    Suite {
        #[command(subcommand)]
        sub: SuiteCommand,
    },
    /// Convert a matrix file between JSON and CSV.
    Convert {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "out")]
        output: PathBuf,
        /// Force the output format (otherwise taken from the extension).
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
}

#[derive(Subcommand)]
enum NrCommand {
    /// Emit boundary samples as CSV: theta,support,re,im.
    Plot {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 720)]
        angles: usize,
        #[arg(long)]
        csv_out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum UrysohnCommand {
    /// Verify an interpolating element against projections q <= u.
    Verify {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        q: PathBuf,
        #[arg(long)]
        u: PathBuf,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        strict_u: bool,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

#[derive(Args)]
struct CommonSuiteArgs {
    #[arg(long, default_value_t = 12345)]
    seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 128)]
    nmax: usize,
    #[arg(long, value_enum, default_value = "linear")]
    weights: WeightsArg,
    #[arg(long, default_value_t = 0.2)]
    eps: f64,
    #[arg(long)]
    json_out: Option<PathBuf>,
    #[arg(long)]
    csv_out: Option<PathBuf>,
}

impl CommonSuiteArgs {
    fn config(&self) -> SuiteConfig {
        SuiteConfig {
            seed: self.seed,
            tol: self.tol,
            nmax: self.nmax,
            weights: self.weights.into(),
            eps: self.eps,
        }
    }
}

#[derive(Subcommand)]
enum CxCommand {
    /// Run the full block-algebra check suite and write a report.
    Verify {
        #[command(flatten)]
        common: CommonSuiteArgs,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Dump block spectra of the averaged-shift element u_k.
    Spectrum {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 32)]
        nmax: usize,
        #[arg(long, value_enum, default_value = "linear")]
        weights: WeightsArg,
        #[arg(long)]
        csv_out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SuiteCommand {
    /// Run a named suite: powers | cones | ideals | counterexample | all.
    Run {
        name: String,
        #[command(flatten)]
        common: CommonSuiteArgs,
    },
}

fn write_or_print(path: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => {
            std::fs::write(p, text)?;
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run() -> Result<bool, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Power {
            alpha,
            input,
            method,
            tol,
            json_out,
        } => {
            let x = io::read_matrix(&input)?;
            let scheme = QuadratureScheme::with_tol(tol);
            let (value, out) = match method {
                MethodArg::Quad => {
                    let r = frac_power(&x, alpha, &scheme)?;
                    let obj = serde_json::json!({
                        "alpha": alpha,
                        "method": "quadrature",
                        "est_error": r.est_error,
                    });
                    (r.value, obj)
                }
                MethodArg::Spec => {
                    let r = frac_power_spectral(&x, alpha)?;
                    let obj = serde_json::json!({
                        "alpha": alpha,
                        "method": "spectral",
                        "est_error": r.est_error,
                    });
                    (r.value, obj)
                }
                MethodArg::Both => {
                    let q = frac_power(&x, alpha, &scheme)?;
                    let s = frac_power_spectral(&x, alpha)?;
                    let delta =
                        opal_core::linalg::op_norm(&(&q.value - &s.value));
                    let consistent = delta <= (q.est_error + s.est_error).max(1e-8);
                    let obj = serde_json::json!({
                        "alpha": alpha,
                        "method": "both",
                        "est_error": q.est_error.max(s.est_error),
                        "cross_delta": delta,
                        "consistent": consistent,
                    });
                    (q.value, obj)
                }
            };
            let mut obj = out;
            obj["result"] =
                serde_json::from_str(&io::matrix_to_json(&value)).expect("matrix json");
            let text = serde_json::to_string_pretty(&obj).expect("report json");
            match &json_out {
                Some(p) => std::fs::write(p, text)?,
                None => println!("{text}"),
            }
            Ok(true)
        }
        Command::Cones { input, tol } => {
            let x = io::read_matrix(&input)?;
            let report = cone_report(&x, tol)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report json")
            );
            Ok(true)
        }
        Command::Nr {
            sub: NrCommand::Plot {
                input,
                angles,
                csv_out,
            },
        } => {
            let x = io::read_matrix(&input)?;
            let b = nr_boundary(&x, angles)?;
            let mut text = String::from("theta,support,re,im\n");
            for s in &b.samples {
                text.push_str(&format!(
                    "{},{},{},{}\n",
                    s.theta, s.support, s.point.re, s.point.im
                ));
            }
            write_or_print(&csv_out, &text)?;
            Ok(true)
        }
        Command::Ws { input, tol } => {
            let x = io::read_matrix(&input)?;
            let report = ws_report(&x, tol)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report json")
            );
            Ok(report.all_agree)
        }
        Command::Urysohn {
            sub:
                UrysohnCommand::Verify {
                    a,
                    q,
                    u,
                    eps,
                    strict_u,
                    tol,
                },
        } => {
            let am = io::read_matrix(&a)?;
            let qm = io::read_matrix(&q)?;
            let um = io::read_matrix(&u)?;
            let rec = urysohn_verify(&am, &qm, &um, eps, strict_u, tol)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&rec).expect("record json")
            );
            Ok(rec.pass)
        }
        Command::Cx { sub } => match sub {
            CxCommand::Verify { common, report } => {
                let cfg = common.config();
                let suite_report = run_suite(SuiteName::Counterexample, &cfg)?;
                print!("{}", render_lines(&suite_report));
                let json =
                    serde_json::to_string_pretty(&suite_report).expect("report json");
                if let Some(p) = report.as_ref().or(common.json_out.as_ref()) {
                    std::fs::write(p, &json)?;
                }
                if let Some(p) = &common.csv_out {
                    std::fs::write(p, suite_report.to_csv())?;
                }
                Ok(suite_report.all_pass())
            }
            CxCommand::Spectrum {
                k,
                nmax,
                weights,
                csv_out,
            } => {
                let w = WeightSeq {
                    kind: weights.into(),
                };
                let u = cai_element(k, nmax, &w)?;
                let mut text = String::from("block,re,im\n");
                for n in 1..=u.n_max() {
                    let spec = gen_spectrum(u.block(n))?;
                    for v in &spec.values {
                        text.push_str(&format!("{},{},{}\n", n, v.re, v.im));
                    }
                }
                write_or_print(&csv_out, &text)?;
                Ok(true)
            }
        },
        Command::Suite {
            sub: SuiteCommand::Run { name, common },
        } => {
            let suite: SuiteName = name.parse()?;
            let cfg = common.config();
            let report = run_suite(suite, &cfg)?;
            print!("{}", render_lines(&report));
            println!("content hash: {}", report.content_hash);
            if let Some(p) = &common.json_out {
                std::fs::write(
                    p,
                    serde_json::to_string_pretty(&report).expect("report json"),
                )?;
            }
            if let Some(p) = &common.csv_out {
                std::fs::write(p, report.to_csv())?;
            }
            Ok(report.all_pass())
        }
        Command::Convert {
            input,
            output,
            format,
        } => {
            match format {
                None => io::convert(&input, &output)?,
                Some(f) => {
                    let m = io::read_matrix(&input)?;
                    let text = match f {
                        FormatArg::Json => io::matrix_to_json(&m),
                        FormatArg::Csv => io::matrix_to_csv(&m),
                    };
                    std::fs::write(&output, text)?;
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
