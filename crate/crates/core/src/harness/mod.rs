//! Sweeps, figure CSVs, the table report and the verification run behind the CLI.

pub mod csv;
pub mod figure;
pub mod sweep;
pub mod verify;

pub use csv::{fmt_sig9, Table};
pub use figure::{emit_figure, FigureId, FIGURE_POINTS};
pub use sweep::{run_sweep, SweepSpec, Target, Variable};
pub use verify::{verify_all, CheckResult, VerifyReport, CHECK_NAMES};

use crate::bounds;
use crate::error::Result;

/// Rendered table report at one parameter point.
pub fn table_cmd(c: f64, p: f64, omega: f64) -> Result<String> {
    Ok(bounds::render_table(&bounds::table1_report(c, p, omega)?))
}
