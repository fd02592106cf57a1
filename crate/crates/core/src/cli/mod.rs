//! The `matargs` command line.
//!
//! Exit codes: 0 success or pass, 1 verification failure, 2 usage or domain
//! error (one-line diagnostic on stderr), 3 inconclusive.

mod matrix;
mod selftest;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::SpdMatrix;
use crate::partitions::{enumerate, Partition};
use crate::randmat::DEFAULT_SEED;
use crate::specfun::{
    gen_pochhammer, multivariate_gamma, pochhammer_falling, pochhammer_rising,
    theorem1_constant, theorem1_ratio, ConstantVariant, GammaForm,
};
use crate::verify::{
    verify_corollary1, verify_gamma_integral, verify_lemma2, verify_theorem1, CoeffReport,
    MCReport, McConfig, Thresholds, Verdict, DEFAULT_QUAD_POINTS, DEFAULT_Z_PASS,
    DEFAULT_Z_REJECT,
};
use crate::zonal::{build_table, eval_eigs, ZonalTable};

pub use matrix::{parse_list, MatrixSpec, RANDOM_CONDITION_CAP};
pub use selftest::Check;

#[derive(Parser, Debug)]
#[command(
    name = "matargs",
    version,
    about = "Zonal polynomials, multivariate gamma functions and Laplace-integral checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FormArg {
    Ascending,
    Descending,
}

#[derive(Args, Debug)]
struct Output {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct Sampling {
    /// Random seed; every random choice derives from it.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Number of Monte Carlo samples.
    #[arg(long, default_value_t = 200_000)]
    samples: u64,
    /// Samples per chunk; chunk `c` uses RNG stream `c`.
    #[arg(long, default_value_t = 10_000)]
    chunk_size: u64,
    /// Accept the corrected constant when |z_correct| <= this.
    #[arg(long, default_value_t = DEFAULT_Z_PASS)]
    z_pass: f64,
    /// Reject the incorrect constant when |z_incorrect| >= this.
    #[arg(long, default_value_t = DEFAULT_Z_REJECT)]
    z_reject: f64,
}

impl Sampling {
    fn config(&self) -> McConfig {
        McConfig {
            n_samples: self.samples,
            seed: self.seed,
            chunk_size: self.chunk_size,
            threads: None,
        }
    }

    fn thresholds(&self) -> Thresholds {
        Thresholds {
            z_pass: self.z_pass,
            z_reject: self.z_reject,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the partitions of k with at most `max_parts` parts.
    Partitions {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_parts: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Zonal polynomial coefficients in the monomial basis, degrees 0..=max.
    ZonalTable {
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Evaluate C_κ at eigenvalues or at a symmetric matrix.
    ZonalEval {
        #[arg(long)]
        kappa: Partition,
        /// Comma-separated eigenvalues.
        #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
        eigs: Option<String>,
        /// Matrix specifier (needs --m).
        #[arg(long, requires = "m")]
        matrix: Option<MatrixSpec>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Multivariate gamma function Γ_m[a].
    GammaMv {
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, value_enum, default_value_t = FormArg::Ascending)]
        form: FormArg,
        /// Print ln Γ_m[a] instead.
        #[arg(long)]
        log: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Rising (or falling) factorial.
    Pochhammer {
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        falling: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Generalised Pochhammer symbol (b)_κ.
    GenPochhammer {
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long)]
        kappa: Partition,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Constant of the Laplace integral of C_κ(X⁻¹).
    Constant {
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long)]
        kappa: Partition,
        /// corrected | muirhead_incorrect
        #[arg(long, default_value = "corrected")]
        variant: ConstantVariant,
        /// Print the constant with Γ_m[a] divided out.
        #[arg(long)]
        ratio: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Monte Carlo check of E[C_κ(X⁻¹)] under the matching Wishart law.
    VerifyTheorem1 {
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long)]
        kappa: Partition,
        #[arg(long, default_value = "identity")]
        z: MatrixSpec,
        #[command(flatten)]
        sampling: Sampling,
        #[command(flatten)]
        out: Output,
    },
    /// Monte Carlo check with a positive definite V and a symmetric T.
    VerifyCorollary1 {
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long)]
        kappa: Partition,
        #[arg(long, default_value = "identity")]
        v: MatrixSpec,
        #[arg(long, default_value = "identity")]
        t: MatrixSpec,
        #[command(flatten)]
        sampling: Sampling,
        #[command(flatten)]
        out: Output,
    },
    /// Highest-weight coefficient of C_κ(Y⁻¹ diag(z)).
    VerifyLemma2 {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        kappa: Partition,
        #[arg(long, default_value = "random")]
        y: MatrixSpec,
        /// Interpolation nodes per axis (default k + 1).
        #[arg(long)]
        grid_size: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Quadrature of the defining integral of Γ_m, m ∈ {1, 2}.
    VerifyGammaQuad {
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, default_value_t = DEFAULT_QUAD_POINTS)]
        quad_points: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Run the built-in property suite.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
}

/// What a subcommand produced: rendered text and an exit code.
struct Rendered {
    text: String,
    code: i32,
}

impl Rendered {
    fn ok(text: String) -> Self {
        Rendered { text, code: 0 }
    }
}

/// Parses `argv` (including the program name), runs the command and writes
/// its output. Returns the process exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let line = text.lines().next().unwrap_or("usage error");
                let _ = writeln!(err, "{line}");
            }
            return code;
        }
    };
    match execute(cli.command) {
        Ok(r) => {
            let _ = write!(out, "{}", r.text);
            if !r.text.ends_with('\n') {
                let _ = writeln!(out);
            }
            r.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// [`run_with`] on the process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

fn number(x: f64) -> String {
    // `{:?}` prints the shortest round-tripping representation.
    format!("{x:?}")
}

fn scalar(name: &str, x: f64, fmt: Format) -> Rendered {
    Rendered::ok(match fmt {
        Format::Json | Format::Text => number(x),
        Format::Csv => format!("{name}\n{}", number(x)),
    })
}

fn table_for(kappa: &Partition) -> Result<ZonalTable> {
    build_table(kappa.weight())
}

fn execute(cmd: Command) -> Result<Rendered> {
    match cmd {
        Command::Partitions { k, max_parts, out } => {
            let parts = enumerate(k, max_parts.unwrap_or(k));
            let labels: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
            Ok(Rendered::ok(match out.format {
                Format::Json => serde_json::to_string(&labels).map_err(json_err)?,
                Format::Text => labels.join("\n"),
                Format::Csv => {
                    let mut s = String::from("partition\n");
                    for l in &labels {
                        s.push_str(&format!("\"{l}\"\n"));
                    }
                    s
                }
            }))
        }
        Command::ZonalTable { max_degree, out } => {
            let table = build_table(max_degree)?;
            Ok(Rendered::ok(match out.format {
                Format::Json => table.to_json(),
                Format::Csv => table.to_csv(),
                Format::Text => render_table(&table)?,
            }))
        }
        Command::ZonalEval {
            kappa,
            eigs,
            matrix,
            m,
            seed,
            out,
        } => {
            let table = table_for(&kappa)?;
            let eigs = match (eigs, matrix, m) {
                (Some(e), _, _) => parse_list(&e)?,
                (None, Some(spec), Some(m)) => spec.symmetric(m, seed, 0)?.eigenvalues(),
                _ => return Err(Error::Domain("requires --eigs or --matrix with --m".into())),
            };
            Ok(scalar("value", eval_eigs(&table, &kappa, &eigs)?, out.format))
        }
        Command::GammaMv {
            m,
            a,
            form,
            log,
            out,
        } => {
            let form = match form {
                FormArg::Ascending => GammaForm::Ascending,
                FormArg::Descending => GammaForm::Descending,
            };
            let v = multivariate_gamma(a, m, form, log)?;
            Ok(scalar(if log { "ln_gamma_m" } else { "gamma_m" }, v, out.format))
        }
        Command::Pochhammer { x, q, falling, out } => {
            let v = if falling {
                pochhammer_falling(x, q)
            } else {
                pochhammer_rising(x, q)
            };
            Ok(scalar("value", v, out.format))
        }
        Command::GenPochhammer { b, kappa, m, out } => {
            Ok(scalar("value", gen_pochhammer(b, &kappa, m)?, out.format))
        }
        Command::Constant {
            m,
            a,
            kappa,
            variant,
            ratio,
            out,
        } => {
            let v = if ratio {
                theorem1_ratio(a, m, &kappa, variant)?
            } else {
                theorem1_constant(a, m, &kappa, variant)?
            };
            Ok(scalar(variant.name(), v, out.format))
        }
        Command::VerifyTheorem1 {
            m,
            a,
            kappa,
            z,
            sampling,
            out,
        } => {
            let table = table_for(&kappa)?;
            let z = z.spd(m, sampling.seed, 0)?;
            let report = verify_theorem1(
                &table,
                a,
                &kappa,
                &z,
                &sampling.config(),
                sampling.thresholds(),
            )?;
            render_mc(&report, out.format)
        }
        Command::VerifyCorollary1 {
            m,
            a,
            kappa,
            v,
            t,
            sampling,
            out,
        } => {
            let table = table_for(&kappa)?;
            let v = v.spd(m, sampling.seed, 0)?;
            let t = t.symmetric(m, sampling.seed, 1)?;
            let report = verify_corollary1(
                &table,
                a,
                &kappa,
                &v,
                &t,
                &sampling.config(),
                sampling.thresholds(),
            )?;
            render_mc(&report, out.format)
        }
        Command::VerifyLemma2 {
            m,
            kappa,
            y,
            grid_size,
            seed,
            out,
        } => {
            let table = table_for(&kappa)?;
            let y: SpdMatrix = y.spd(m, seed, 0)?;
            let report = verify_lemma2(&table, &kappa, &y, grid_size.unwrap_or(kappa.weight() + 1))?;
            render_lemma2(&report, out.format)
        }
        Command::VerifyGammaQuad {
            m,
            a,
            quad_points,
            out,
        } => {
            let (quad, closed) = verify_gamma_integral(m, a, quad_points)?;
            let rel_error = (quad - closed).abs() / closed.abs();
            let pass = rel_error <= crate::verify::GAMMA_QUAD_TOLERANCE;
            let report = GammaQuadReport {
                claim: "gamma_integral",
                m,
                a,
                quad_points,
                quadrature: quad,
                closed_form: closed,
                rel_error,
                verdict: if pass { Verdict::Pass } else { Verdict::Fail },
            };
            Ok(Rendered {
                text: render_record(&report, out.format)?,
                code: report.verdict.exit_code(),
            })
        }
        Command::Selftest { seed, out } => {
            let checks = selftest::run(seed)?;
            let pass = checks.iter().all(|c| c.pass);
            let text = match out.format {
                Format::Json => serde_json::to_string_pretty(&SelftestReport {
                    checks: &checks,
                    pass,
                })
                .map_err(json_err)?,
                Format::Text => {
                    let mut s = String::new();
                    for c in &checks {
                        let tag = if c.pass { "PASS" } else { "FAIL" };
                        s.push_str(&format!("{tag}  {}: {}\n", c.name, c.detail));
                    }
                    s.push_str(if pass { "all checks passed" } else { "some checks failed" });
                    s
                }
                Format::Csv => {
                    let mut s = String::from("name,pass,detail\n");
                    for c in &checks {
                        s.push_str(&format!("\"{}\",{},\"{}\"\n", c.name, c.pass, c.detail));
                    }
                    s
                }
            };
            Ok(Rendered {
                text,
                code: if pass { 0 } else { 1 },
            })
        }
    }
}

#[derive(Serialize)]
struct GammaQuadReport {
    claim: &'static str,
    m: usize,
    a: f64,
    quad_points: usize,
    quadrature: f64,
    closed_form: f64,
    rel_error: f64,
    verdict: Verdict,
}

#[derive(Serialize)]
struct SelftestReport<'a> {
    checks: &'a [Check],
    pass: bool,
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Internal(e.to_string())
}

fn render_mc(report: &MCReport, fmt: Format) -> Result<Rendered> {
    Ok(Rendered {
        text: render_record(report, fmt)?,
        code: report.verdict.exit_code(),
    })
}

fn render_lemma2(report: &CoeffReport, fmt: Format) -> Result<Rendered> {
    let verdict = if report.pass {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(Rendered {
        text: render_record(report, fmt)?,
        code: verdict.exit_code(),
    })
}

/// Renders a flat record as pretty JSON, `key: value` lines, or a one-row CSV.
fn render_record<T: Serialize>(record: &T, fmt: Format) -> Result<String> {
    let value = serde_json::to_value(record).map_err(json_err)?;
    if fmt == Format::Json {
        return serde_json::to_string_pretty(&value).map_err(json_err);
    }
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Internal("record is not an object".into()))?;
    let cell = |v: &serde_json::Value| match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    Ok(match fmt {
        Format::Text => obj
            .iter()
            .map(|(k, v)| format!("{k}: {}", cell(v)))
            .collect::<Vec<_>>()
            .join("\n"),
        _ => {
            let header: Vec<&str> = obj.keys().map(String::as_str).collect();
            let row: Vec<String> = obj
                .values()
                .map(|v| format!("\"{}\"", cell(v).replace('"', "\"\"")))
                .collect();
            format!("{}\n{}", header.join(","), row.join(","))
        }
    })
}

fn render_table(table: &ZonalTable) -> Result<String> {
    let mut s = String::new();
    for k in 0..=table.max_degree() {
        for kappa in table.partitions_of(k) {
            // Leading (dominant) monomial first.
            let mut terms: Vec<String> = table
                .poly(&kappa)?
                .terms()
                .map(|(lambda, c)| format!("{c}·m_({lambda})"))
                .collect();
            terms.reverse();
            s.push_str(&format!("C_({kappa}) = {}\n", terms.join(" + ")));
        }
    }
    Ok(s)
}
