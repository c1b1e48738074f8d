//! `ptcs`: evaluate Pöschl–Teller coherent states and run the oracle suites.
//!
//! Exit status: 0 on success, 1 for failed checks or other errors, 2 for
//! invalid arguments or parameters, 3 for numerical non-convergence. Errors
//! are reported as one JSON record on stderr.

mod parse;
mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use ptcs::epscs::{
    cs_coefficients, normalization_integral, normalization_limit, normalization_series, overlap,
    overlap_series, series_length, CoherentState, Params, PhasePoint,
};
use ptcs::identity::convergence_study;
use ptcs::laghankel::{hankel_representation, laguerre_function, LaguerreFunctionSpec};
use ptcs::spt::{eigenstate, eigenstate_grid, SptConfig};
use ptcs::verify::Suite;
use ptcs::{GridSpec, WavefunctionGrid};

use parse::RealList;
use table::{Format, Table};

#[derive(Debug, Parser)]
#[command(
    name = "ptcs",
    version,
    about = "Epsilon coherent states of the symmetric Pöschl–Teller oscillator"
)]
struct Cli {
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,

    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenstate φ_n on a grid.
    #[command(allow_negative_numbers = true)]
    Eigenstate {
        #[arg(long, value_parser = parse::real)]
        nu: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse::grid)]
        grid: GridSpec,
        /// Well width L.
        #[arg(long, value_parser = parse::real, default_value = "pi")]
        width: f64,
        /// Energy scale E0.
        #[arg(long, value_parser = parse::real, default_value = "1")]
        e0: f64,
    },
    /// Coherent-state wavefunction on a grid.
    #[command(allow_negative_numbers = true)]
    CsEval {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, value_parser = parse::grid)]
        grid: GridSpec,
        #[arg(long, value_enum, default_value_t = Wavefunction::Closed)]
        method: Wavefunction,
    },
    /// Normalization factor, or with `--terms` its leading terms |c_n|².
    #[command(allow_negative_numbers = true)]
    CsNorm {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        point: PointArgs,
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Normalized overlap <z|w>.
    #[command(allow_negative_numbers = true)]
    Overlap {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_parser = parse::real)]
        r2: f64,
        #[arg(long, value_parser = parse::real, default_value = "0")]
        theta2: f64,
    },
    /// Distance between the smoothed and the original function along ε.
    #[command(allow_negative_numbers = true)]
    IdentityCheck {
        #[arg(long, value_parser = parse::real)]
        nu: f64,
        /// Decreasing ε schedule.
        #[arg(long, value_parser = parse::real_list, default_value = "0.4,0.2,0.1,0.05")]
        eps: RealList,
        #[arg(long, value_parser = parse::grid, default_value = "0:pi:2001")]
        grid: GridSpec,
        /// `bump` for x(π-x)e^{cos x}, or an eigenstate index.
        #[arg(long, default_value = "bump")]
        function: String,
    },
    /// Hankel-type representation against direct evaluation.
    #[command(allow_negative_numbers = true)]
    HankelCheck {
        /// Largest degree.
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[arg(long, value_parser = parse::real_list, default_value = "0.5,1,2")]
        nu: RealList,
        #[arg(long, value_parser = parse::real_list, default_value = "0.5,2,8,20")]
        x: RealList,
        #[arg(long, value_parser = parse::real, default_value = "1e-7")]
        tol: f64,
    },
    /// Oracle suites as a pass/fail table.
    #[command(allow_negative_numbers = true)]
    Verify {
        /// Suite name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Replaces every pinned tolerance.
        #[arg(long, value_parser = parse::real)]
        tol: Option<f64>,
    },
}

#[derive(Debug, Args)]
struct PointArgs {
    #[arg(long, value_parser = parse::real)]
    r: f64,
    #[arg(long, value_parser = parse::real, default_value = "0")]
    theta: f64,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(long, value_parser = parse::real, default_value = "0")]
    nu: f64,
    /// Defaults to 2(ν+1).
    #[arg(long, value_parser = parse::real)]
    gamma: Option<f64>,
    #[arg(long, value_parser = parse::real)]
    eps: f64,
}

#[derive(Debug, Args)]
struct StateArgs {
    #[arg(long, value_parser = parse::real)]
    nu: f64,
    #[command(flatten)]
    point: PointArgs,
    #[arg(long, value_parser = parse::real)]
    eps: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Wavefunction {
    Closed,
    Series,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Numeric(ptcs::Error),
    Io(io::Error),
    Checks(usize),
}

impl From<ptcs::Error> for Failure {
    fn from(e: ptcs::Error) -> Self {
        Failure::Numeric(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Numeric(ptcs::Error::Domain { .. }) => 2,
            Failure::Numeric(ptcs::Error::NonConvergence { .. }) => 3,
            _ => 1,
        }
    }

    fn record(&self) -> serde_json::Value {
        let mut rec = serde_json::json!({ "exit_code": self.code() });
        let (kind, message) = match self {
            Failure::Usage(m) => ("usage", m.clone()),
            Failure::Numeric(e) => (e.kind(), e.to_string()),
            Failure::Io(e) => ("io", e.to_string()),
            Failure::Checks(n) => ("checks_failed", format!("{n} checks failed")),
        };
        rec["kind"] = kind.into();
        rec["message"] = message.into();
        if let Failure::Numeric(ptcs::Error::NonConvergence {
            op,
            estimate,
            error_bound,
            work,
        }) = self
        {
            rec["op"] = (*op).into();
            rec["estimate"] = table::format_num(*estimate).into();
            rec["error_bound"] = table::format_num(*error_bound).into();
            rec["work"] = (*work).into();
        }
        serde_json::json!({ "error": rec })
    }
}

fn family(f: &FamilyArgs) -> Result<Params, Failure> {
    Ok(Params::new(
        f.gamma.unwrap_or(2.0 * (f.nu + 1.0)),
        f.nu,
        f.eps,
    )?)
}

fn grid_table(g: &WavefunctionGrid) -> Table {
    let mut t = Table::new(&["x", "re", "im"]);
    for (x, v) in g.xs.iter().zip(&g.values) {
        t.push(vec![(*x).into(), v.re.into(), v.im.into()]);
    }
    t
}

fn run(cmd: &Command) -> Result<(Table, usize), Failure> {
    let table = match cmd {
        Command::Eigenstate {
            nu,
            n,
            grid,
            width,
            e0,
        } => {
            let cfg = SptConfig::new(*nu, *width, *e0)?;
            grid_table(&eigenstate_grid(&cfg, *n, grid)?)
        }
        Command::CsEval {
            state,
            grid,
            method,
        } => {
            let p = Params::matched(state.nu, state.eps)?;
            let z = PhasePoint::new(state.point.r, state.point.theta)?;
            let st = CoherentState::new(p, z)?;
            grid_table(&match method {
                Wavefunction::Closed => st.closed_form_grid(grid)?,
                Wavefunction::Series => st.series_grid(grid)?,
            })
        }
        Command::CsNorm {
            family: f,
            point,
            terms,
        } => {
            let p = family(f)?;
            let z = PhasePoint::new(point.r, point.theta)?;
            match terms {
                Some(k) => {
                    let mut t = Table::new(&["n", "value"]);
                    for c in cs_coefficients(&p, &z, *k)? {
                        t.push(vec![c.n.into(), c.value.norm_sqr().into()]);
                    }
                    t
                }
                None => {
                    let mut t = Table::new(&["method", "value", "error_bound"]);
                    let s = normalization_series(&p, &z)?;
                    t.push(vec![
                        "series".into(),
                        s.value.re.into(),
                        s.tail_estimate.into(),
                    ]);
                    if z.r > 0.0 {
                        let q = normalization_integral(&p, &z)?;
                        t.push(vec![
                            "integral".into(),
                            q.value.re.into(),
                            q.abs_error.into(),
                        ]);
                        if p.gamma > 1.0 {
                            let l = normalization_limit(p.gamma, &z)?;
                            t.push(vec!["limit".into(), l.into(), f64::NAN.into()]);
                        }
                    }
                    t
                }
            }
        }
        Command::Overlap {
            family: f,
            point,
            r2,
            theta2,
        } => {
            let p = family(f)?;
            let z = PhasePoint::new(point.r, point.theta)?;
            let w = PhasePoint::new(*r2, *theta2)?;
            let mut t = Table::new(&["method", "re", "im", "modulus"]);
            let row = |name: &str, v: Complex64| {
                vec![name.into(), v.re.into(), v.im.into(), v.norm().into()]
            };
            t.push(row("integral", overlap(&p, &z, &w)?));
            t.push(row("series", overlap_series(&p, &z, &w)?));
            log::info!(
                "series terms: {}",
                series_length(&p, &z).max(series_length(&p, &w))
            );
            t
        }
        Command::IdentityCheck {
            nu,
            eps,
            grid,
            function,
        } => {
            let rows = if function == "bump" {
                convergence_study(
                    *nu,
                    |x: f64| x * (std::f64::consts::PI - x) * x.cos().exp(),
                    &eps.0,
                    grid,
                )?
            } else {
                let m: usize = function.parse().map_err(|_| {
                    Failure::Usage(format!(
                        "--function must be 'bump' or an index, got '{function}'"
                    ))
                })?;
                let cfg = SptConfig::standard(*nu)?;
                convergence_study(
                    *nu,
                    |x: f64| eigenstate(&cfg, m, x).unwrap_or(f64::NAN),
                    &eps.0,
                    grid,
                )?
            };
            let mut t = Table::new(&["epsilon", "sup_error", "l2_error"]);
            for r in rows {
                t.push(vec![
                    r.epsilon.into(),
                    r.sup_error.into(),
                    r.l2_error.into(),
                ]);
            }
            t
        }
        Command::HankelCheck { n, nu, x, tol } => {
            if tol.is_nan() || *tol <= 0.0 {
                return Err(Failure::Usage(format!("--tol must be positive, got {tol}")));
            }
            let mut t = Table::new(&["n", "nu", "x", "direct", "integral", "abs_error", "pass"]);
            let mut failed = 0;
            for k in 0..=*n {
                for &v in &nu.0 {
                    for &xv in &x.0 {
                        let s = LaguerreFunctionSpec::new(k, v, xv)?;
                        let d = laguerre_function(&s)?;
                        let q = hankel_representation(&s, 1e-2 * tol)?;
                        let pass = (q.value.re - d).abs() <= tol.max(tol * d.abs());
                        failed += usize::from(!pass);
                        t.push(vec![
                            k.into(),
                            v.into(),
                            xv.into(),
                            d.into(),
                            q.value.re.into(),
                            q.abs_error.into(),
                            pass.into(),
                        ]);
                    }
                }
            }
            return Ok((t, failed));
        }
        Command::Verify { suite, tol } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse()?]
            };
            let mut t = Table::new(&["name", "measured", "expected", "tol", "pass"]);
            let mut failed = 0;
            for s in suites {
                for c in s.run(*tol)? {
                    let pass = c.pass();
                    failed += usize::from(!pass);
                    t.push(vec![
                        c.name.into(),
                        c.measured.into(),
                        c.expected.into(),
                        c.tol.into(),
                        pass.into(),
                    ]);
                }
            }
            return Ok((t, failed));
        }
    };
    Ok((table, 0))
}

fn emit(cli: &Cli, table: &Table) -> io::Result<()> {
    match &cli.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            table.write(cli.format, &mut w)?;
            w.flush()
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            table.write(cli.format, &mut w)?;
            w.flush()
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&Failure::Usage(e.render().to_string())),
    };
    let result = run(&cli.command).and_then(|(table, failed)| {
        emit(&cli, &table)?;
        if failed > 0 {
            Err(Failure::Checks(failed))
        } else {
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => fail(&f),
    }
}

fn fail(f: &Failure) -> ExitCode {
    eprintln!("{}", f.record());
    ExitCode::from(f.code())
}
