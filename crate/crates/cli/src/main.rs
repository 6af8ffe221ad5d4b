//! `sfx`: evaluate, tabulate and verify.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 invalid input.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use simplex_fourier::classical_poly::{hahn_eval, jacobi_eval, HahnParams, JacobiParams};
use simplex_fourier::fourier_xform::{ft_closed_form_with, g_eval, Form, GParams};
use simplex_fourier::hypergeom::pfq;
use simplex_fourier::numerics::c;
use simplex_fourier::recurrences::RelationId;
use simplex_fourier::sfamily::{s_eval, SParams};
use simplex_fourier::simplex_poly::simplex_poly_eval;
use simplex_fourier::verify::{run, Suite, VerifyConfig};
use simplex_fourier::{Complex, MultiIndex, ParamVector};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "sfx", version, about = "Simplex polynomials, their Fourier transforms and the S family")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one value as `(re, im)`.
    Eval {
        #[command(subcommand)]
        target: EvalTarget,
        /// Digits after the decimal point; shortest round-trip form if omitted.
        #[arg(long, global = true)]
        precision: Option<usize>,
    },
    /// Run a verification suite and stream JSON lines to stdout.
    Verify(VerifyArgs),
    /// Tabulate values over a lattice.
    Table {
        #[command(subcommand)]
        target: TableTarget,
        #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, global = true)]
        precision: Option<usize>,
        /// Write to a file instead of stdout.
        #[arg(long, short, global = true)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum EvalTarget {
    /// Jacobi polynomial `P_n^(alpha, beta)(x)`.
    Jacobi {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        /// Imaginary part of the argument.
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        y: f64,
    },
    /// Continuous Hahn polynomial `p_n(x; a, b, c, d)` with real parameters.
    Hahn {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        #[arg(long, allow_negative_numbers = true)]
        d: f64,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        y: f64,
    },
    /// Terminating `pFq(num; den; z)`.
    Hyper {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        num: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        den: Vec<f64>,
        #[arg(long, allow_negative_numbers = true)]
        z: f64,
    },
    /// Simplex basis polynomial `P_n^(alpha)(x)`.
    Simplex {
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alpha: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x: Vec<f64>,
    },
    /// `g_r(x)`, or its Fourier transform at `--xi`.
    G {
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alpha: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required_unless_present = "xi")]
        x: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "x")]
        xi: Vec<f64>,
        #[arg(long, value_enum, default_value_t = FormArg::Hyper)]
        form: FormArg,
    },
    /// `_rS_n(x; a, b)` at a complex point `x + i y`.
    Sfun {
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        b: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        y: Vec<f64>,
        #[arg(long, value_enum, default_value_t = FormArg::Hyper)]
        form: FormArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Hyper,
    Hahn,
}

impl From<FormArg> for Form {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Hyper => Form::Hypergeometric,
            FormArg::Hahn => Form::Hahn,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct LineGrid {
    #[arg(long, allow_negative_numbers = true, default_value_t = -2.0)]
    x_min: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 2.0)]
    x_max: f64,
    #[arg(long, default_value_t = 1.0)]
    step: f64,
}

#[derive(Subcommand)]
enum TableTarget {
    /// Every basis polynomial of total degree `<= max-degree` on the simplex
    /// lattice of the given spacing.
    Simplex {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 0.1)]
        spacing: f64,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        /// Weight exponents; zeros when omitted.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alpha: Vec<f64>,
    },
    /// Continuous Hahn polynomials of degree `<= max-degree` on a real grid.
    Hahn {
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        #[arg(long, allow_negative_numbers = true)]
        d: f64,
        #[command(flatten)]
        grid: LineGrid,
    },
    /// `g_r` on the product grid.
    G {
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alpha: Vec<f64>,
        #[command(flatten)]
        grid: LineGrid,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// numerics, orthogonality, fourier, sfamily, recurrence or all.
    suite: Suite,
    /// Seed of the ChaCha8 generator behind all sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Overrides every default tolerance of the suite.
    #[arg(long, env = "SFX_TOLERANCE")]
    tolerance: Option<f64>,
    /// Restrict the recurrence sweep to one relation.
    #[arg(long)]
    id: Option<RelationId>,
    /// Random draws per check family.
    #[arg(long)]
    samples: Option<usize>,
    /// Add the least-squares coefficient fit for each relation.
    #[arg(long)]
    brute_force: bool,
    /// Record wall-clock time per task (output is then not reproducible).
    #[arg(long)]
    timings: bool,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    max_degree: Option<usize>,
}

/// Invalid input; reported with exit code 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn fmt_real(v: f64, precision: Option<usize>) -> String {
    // avoid printing "-0"
    let v = if v == 0.0 { 0.0 } else { v };
    match precision {
        Some(p) => format!("{v:.p$}"),
        None => format!("{v}"),
    }
}

fn fmt_complex(z: Complex, precision: Option<usize>) -> String {
    format!("({}, {})", fmt_real(z.re, precision), fmt_real(z.im, precision))
}

fn sparams(n: &[usize], a: &[f64], b: &[f64]) -> Result<SParams, Usage> {
    Ok(SParams::new(MultiIndex::new(n), ParamVector::new(a), ParamVector::new(b))?)
}

fn gparams(n: &[usize], a: &[f64], alpha: &[f64]) -> Result<GParams, Usage> {
    Ok(GParams::new(MultiIndex::new(n), ParamVector::new(a), ParamVector::new(alpha))?)
}

fn eval(target: EvalTarget) -> Result<Complex, Usage> {
    Ok(match target {
        EvalTarget::Jacobi { n, alpha, beta, x, y } => {
            if alpha <= -1.0 || beta <= -1.0 {
                return Err(Usage(format!("alpha and beta must exceed -1, got ({alpha}, {beta})")));
            }
            jacobi_eval(&JacobiParams::new(n, alpha, beta), Complex::new(x, y))
        }
        EvalTarget::Hahn { n, a, b, c, d, x, y } => hahn_eval(&HahnParams::real(n, a, b, c, d), Complex::new(x, y))?,
        EvalTarget::Hyper { num, den, z } => {
            let num: Vec<Complex> = num.into_iter().map(c).collect();
            let den: Vec<Complex> = den.into_iter().map(c).collect();
            pfq(&num, &den, c(z))?
        }
        EvalTarget::Simplex { n, alpha, x } => {
            c(simplex_poly_eval(&MultiIndex::new(&n), &ParamVector::new(&alpha), &x)?)
        }
        EvalTarget::G { n, a, alpha, x, xi, form } => {
            let p = gparams(&n, &a, &alpha)?;
            if xi.is_empty() {
                c(g_eval(&p, &x)?)
            } else {
                ft_closed_form_with(&p, &xi, form.into())?
            }
        }
        EvalTarget::Sfun { r, n, a, b, x, y, form } => {
            if let Some(r) = r {
                if r != n.len() {
                    return Err(Usage(format!("--r {r} but --n has {} entries", n.len())));
                }
            }
            if !y.is_empty() && y.len() != x.len() {
                return Err(Usage("--y must have as many entries as --x".into()));
            }
            let p = sparams(&n, &a, &b)?;
            let pts: Vec<Complex> = x
                .iter()
                .enumerate()
                .map(|(i, &re)| Complex::new(re, y.get(i).copied().unwrap_or(0.0)))
                .collect();
            s_eval(&p, &pts, form.into())?
        }
    })
}

/// Column names and rows of string cells.
struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
}

fn line_points(g: &LineGrid) -> Result<Vec<f64>, Usage> {
    if !(g.step > 0.0) || !(g.x_max >= g.x_min) || !g.x_min.is_finite() || !g.x_max.is_finite() {
        return Err(Usage(format!(
            "invalid grid: need step > 0 and x-max >= x-min, got [{}, {}] step {}",
            g.x_min, g.x_max, g.step
        )));
    }
    let count = ((g.x_max - g.x_min) / g.step + 1e-9).floor() as usize + 1;
    if count > 1_000_000 {
        return Err(Usage(format!("invalid grid: {count} points")));
    }
    Ok((0..count).map(|i| g.x_min + i as f64 * g.step).collect())
}

fn label(n: &[usize]) -> String {
    let parts: Vec<String> = n.iter().map(|k| k.to_string()).collect();
    format!("P[{}]", parts.join(";"))
}

fn simplex_lattice(r: usize, spacing: f64) -> Result<Vec<Vec<f64>>, Usage> {
    let k = (1.0 / spacing).round();
    if !(spacing > 0.0) || k < 1.0 || (k * spacing - 1.0).abs() > 1e-9 {
        return Err(Usage(format!("invalid grid: spacing {spacing} must be 1/k for a positive integer k")));
    }
    let k = k as usize;
    Ok(MultiIndex::up_to_total(r, k)
        .into_iter()
        .map(|m| m.entries().iter().map(|&i| i as f64 / k as f64).collect())
        .collect())
}

fn table(target: TableTarget, precision: Option<usize>) -> Result<Table, Usage> {
    let f = |v: f64| fmt_real(v, precision);
    match target {
        TableTarget::Simplex {
            r,
            spacing,
            max_degree,
            alpha,
        } => {
            if r == 0 {
                return Err(Usage("r must be at least 1".into()));
            }
            let alpha = if alpha.is_empty() { vec![0.0; r + 1] } else { alpha };
            let alpha = ParamVector::new(&alpha);
            let basis = MultiIndex::up_to_total(r, max_degree);
            let mut columns: Vec<String> = (1..=r).map(|i| format!("x{i}")).collect();
            columns.extend(basis.iter().map(|n| label(n.entries())));
            let mut rows = Vec::new();
            for x in simplex_lattice(r, spacing)? {
                let mut row: Vec<String> = x.iter().map(|&v| f(v)).collect();
                for n in &basis {
                    row.push(f(simplex_poly_eval(n, &alpha, &x)?));
                }
                rows.push(row);
            }
            Ok(Table { columns, rows })
        }
        TableTarget::Hahn {
            max_degree,
            a,
            b,
            c: cc,
            d,
            grid,
        } => {
            let mut columns = vec!["x".to_string()];
            for n in 0..=max_degree {
                columns.push(format!("p{n}_re"));
                columns.push(format!("p{n}_im"));
            }
            let mut rows = Vec::new();
            for x in line_points(&grid)? {
                let mut row = vec![f(x)];
                for n in 0..=max_degree {
                    let v = hahn_eval(&HahnParams::real(n, a, b, cc, d), c(x))?;
                    row.push(f(v.re));
                    row.push(f(v.im));
                }
                rows.push(row);
            }
            Ok(Table { columns, rows })
        }
        TableTarget::G { n, a, alpha, grid } => {
            let p = gparams(&n, &a, &alpha)?;
            let r = n.len();
            let axis = line_points(&grid)?;
            let mut columns: Vec<String> = (1..=r).map(|i| format!("x{i}")).collect();
            columns.push("g".into());
            let mut pts: Vec<Vec<f64>> = vec![vec![]];
            for _ in 0..r {
                pts = pts
                    .into_iter()
                    .flat_map(|p| {
                        axis.iter().map(move |&x| {
                            let mut q = p.clone();
                            q.push(x);
                            q
                        })
                    })
                    .collect();
            }
            let mut rows = Vec::new();
            for x in pts {
                let mut row: Vec<String> = x.iter().map(|&v| f(v)).collect();
                row.push(f(g_eval(&p, &x)?));
                rows.push(row);
            }
            Ok(Table { columns, rows })
        }
    }
}

fn write_table(t: &Table, format: Format, mut w: impl Write) -> io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(w, "{}", t.columns.join(","))?;
            for row in &t.rows {
                writeln!(w, "{}", row.join(","))?;
            }
        }
        Format::Json => {
            // cells stay strings so the JSON carries exactly the CSV digits
            let v = json!({ "columns": t.columns, "rows": t.rows });
            writeln!(w, "{v}")?;
        }
    }
    Ok(())
}

fn open_output(path: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval { target, precision } => match eval(target) {
            Ok(v) => {
                println!("{}", fmt_complex(v, precision));
                ExitCode::SUCCESS
            }
            Err(Usage(msg)) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
        },
        Command::Table {
            target,
            format,
            precision,
            output,
        } => {
            let t = match table(target, precision) {
                Ok(t) => t,
                Err(Usage(msg)) => {
                    eprintln!("error: {msg}");
                    return ExitCode::from(2);
                }
            };
            let written = open_output(output.as_ref()).and_then(|mut w| {
                write_table(&t, format, &mut w)?;
                w.flush()
            });
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Command::Verify(args) => {
            if args.tolerance.is_some_and(|t| !(t >= 0.0)) {
                eprintln!("error: tolerance must be a non-negative number");
                return ExitCode::from(2);
            }
            if args.r == Some(0) {
                eprintln!("error: --r must be at least 1");
                return ExitCode::from(2);
            }
            let cfg = VerifyConfig {
                seed: args.seed,
                tolerance: args.tolerance,
                samples: args.samples,
                id: args.id,
                brute_force: args.brute_force,
                timings: args.timings,
                r: args.r,
                max_degree: args.max_degree,
            };
            let out = run(args.suite, &cfg);
            let stdout = io::stdout().lock();
            let mut w = BufWriter::new(stdout);
            if let Err(e) = out.write_json_lines(&mut w).and_then(|_| w.flush()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if out.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
