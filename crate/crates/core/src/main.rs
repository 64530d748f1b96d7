use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ctxsd::bounds::{self, Figure, Scheme, Theory};
use ctxsd::harness::{self, FigureId, SweepSpec, Target, Variable};
use ctxsd::{Error, Result, Tolerances};

#[derive(Parser)]
#[command(name = "ctxsd", version, about = "Quantum versus noncontextual bounds for binary state discrimination")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print closed-form bounds at one parameter point.
    Bounds {
        #[arg(long, default_value_t = 0.5)]
        c: f64,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0.5)]
        omega: f64,
        /// Cells to print as scheme:figure:theory; all cells when omitted.
        targets: Vec<String>,
    },
    /// Tabulate bounds over a grid of one parameter as CSV.
    Sweep {
        /// Swept parameter: c, p or omega.
        variable: String,
        /// Cells as scheme:figure:theory, e.g. mesd:pg:q.
        #[arg(long = "target", required = true)]
        targets: Vec<String>,
        #[arg(long, default_value_t = 0.0)]
        from: f64,
        #[arg(long, default_value_t = 1.0)]
        to: f64,
        #[arg(long, default_value_t = 101)]
        points: usize,
        #[arg(long, default_value_t = 0.5)]
        c: f64,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0.5)]
        omega: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the CSV of fig2, fig3a, fig3b or fig4.
    Figure {
        id: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the scheme by figure-of-merit table with gaps.
    Table {
        #[arg(long, default_value_t = 0.5)]
        c: f64,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0.5)]
        omega: f64,
    },
    /// Run every cross-check; exits 1 if any fails.
    Verify {
        #[arg(long, default_value_t = 21)]
        points: usize,
    },
}

fn write_out(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(Error::from),
    }
}

fn all_targets() -> Vec<Target> {
    let mut out = Vec::new();
    for scheme in Scheme::ALL {
        for figure in [Figure::Pg, Figure::P0, Figure::Confidence(1), Figure::Confidence(2)] {
            for theory in [Theory::Quantum, Theory::Noncontextual] {
                out.push(Target::new(scheme, figure, theory));
            }
        }
    }
    out
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Bounds { c, p, omega, targets } => {
            let targets = if targets.is_empty() {
                all_targets()
            } else {
                targets.iter().map(|t| t.parse()).collect::<Result<_>>()?
            };
            let mut text = String::new();
            for t in targets {
                let value = bounds::eval_bound(&t.at(c, p, omega)?);
                let shown = match value {
                    Ok(v) => harness::fmt_sig9(v),
                    Err(e) => format!("unavailable ({e})"),
                };
                text.push_str(&format!("{t} {shown}\n"));
            }
            write_out(&text, None)?;
            Ok(0)
        }
        Command::Sweep {
            variable,
            targets,
            from,
            to,
            points,
            c,
            p,
            omega,
            out,
        } => {
            let variable: Variable = variable.parse()?;
            let targets = targets.iter().map(|t| t.parse()).collect::<Result<Vec<Target>>>()?;
            let mut spec = SweepSpec::new(variable, points, targets);
            spec.start = from;
            spec.stop = to;
            spec.c = c;
            spec.p = p;
            spec.omega = omega;
            write_out(&harness::run_sweep(&spec)?.to_csv(), out.as_ref())?;
            Ok(0)
        }
        Command::Figure { id, out } => {
            let id: FigureId = id.parse()?;
            match out {
                Some(path) => harness::emit_figure(id, &path)?,
                None => write_out(&id.table()?.to_csv(), None)?,
            }
            Ok(0)
        }
        Command::Table { c, p, omega } => {
            write_out(&harness::table_cmd(c, p, omega)?, None)?;
            Ok(0)
        }
        Command::Verify { points } => {
            let tol = Tolerances::from_env()?;
            let report = harness::verify_all(points, &tol)?;
            write_out(&report.render(), None)?;
            Ok(report.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("ctxsd: {e}");
            ExitCode::from(2)
        }
    }
}
