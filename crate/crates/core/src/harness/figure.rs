use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::csv::Table;
use super::sweep::{run_sweep, SweepSpec, Target, Variable};

pub const FIGURE_POINTS: usize = 201;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    /// MESD confidences against ω at c = ½.
    Fig2,
    /// MCM inconclusive rate against p at c = ½.
    Fig3a,
    /// MCM inconclusive rate against c at p = ¾.
    Fig3b,
    /// MCM guessing probability against c at p = ½.
    Fig4,
}

impl FigureId {
    pub const ALL: [FigureId; 4] = [FigureId::Fig2, FigureId::Fig3a, FigureId::Fig3b, FigureId::Fig4];

    pub fn name(self) -> &'static str {
        match self {
            FigureId::Fig2 => "fig2",
            FigureId::Fig3a => "fig3a",
            FigureId::Fig3b => "fig3b",
            FigureId::Fig4 => "fig4",
        }
    }

    pub fn sweep(self) -> SweepSpec {
        let t = |s: &str| s.parse::<Target>().expect("static target");
        let (variable, targets, labels, c, p): (_, Vec<Target>, &[&str], f64, f64) = match self {
            FigureId::Fig2 => (
                Variable::Omega,
                vec![t("mesd:c1:q"), t("mesd:c1:nc"), t("mesd:c2:nc")],
                &["C_Q", "C_NC_1", "C_NC_2"],
                0.5,
                0.5,
            ),
            FigureId::Fig3a => (Variable::P, vec![t("mcm:p0:q"), t("mcm:p0:nc")], &["P0_Q", "P0_NC"], 0.5, 0.5),
            FigureId::Fig3b => (Variable::C, vec![t("mcm:p0:q"), t("mcm:p0:nc")], &["P0_Q", "P0_NC"], 0.5, 0.75),
            FigureId::Fig4 => (Variable::C, vec![t("mcm:pg:q"), t("mcm:pg:nc")], &["Pg_Q", "Pg_NC"], 0.5, 0.5),
        };
        let mut spec = SweepSpec::new(variable, FIGURE_POINTS, targets);
        spec.c = c;
        spec.p = p;
        spec.labels = Some(labels.iter().map(|s| s.to_string()).collect());
        spec
    }

    pub fn table(self) -> Result<Table> {
        run_sweep(&self.sweep())
    }
}

impl FromStr for FigureId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .into_iter()
            .find(|f| f.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Usage(format!("unknown figure {s:?} (fig2, fig3a, fig3b, fig4)")))
    }
}

/// Writes the figure's CSV to `out`.
pub fn emit_figure(id: FigureId, out: &Path) -> Result<()> {
    let csv = id.table()?.to_csv();
    fs::write(out, csv).map_err(|e| Error::Io(format!("{}: {e}", out.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn headers() {
        assert_eq!(FigureId::Fig2.table().unwrap().header, ["omega", "C_Q", "C_NC_1", "C_NC_2"]);
        assert_eq!(FigureId::Fig3a.table().unwrap().header, ["p", "P0_Q", "P0_NC"]);
        assert_eq!(FigureId::Fig3b.table().unwrap().header, ["c", "P0_Q", "P0_NC"]);
        assert_eq!(FigureId::Fig4.table().unwrap().header, ["c", "Pg_Q", "Pg_NC"]);
    }

    #[test]
    fn fig2_crossings() {
        let t = FigureId::Fig2.table().unwrap();
        let q = t.column("C_Q").unwrap();
        assert!(q.iter().all(|v| (v - 0.853_553_390_593_273_8).abs() < 1e-12));
        let w = t.column("omega").unwrap();
        let n1 = t.column("C_NC_1").unwrap();
        let n2 = t.column("C_NC_2").unwrap();
        let first = |col: &[f64], above: bool| {
            (0..w.len()).find(|&k| (col[k] <= q[k]) == above).map(|k| w[k]).unwrap()
        };
        // arm 1 drops below Helstrom just after 0.2071, arm 2 rises above it just after 0.7929
        assert!((first(&n1, true) - 0.2071).abs() < 0.005);
        assert!((first(&n2, false) - 0.7929).abs() < 0.005);
    }

    #[test]
    fn endpoints() {
        let t = FigureId::Fig3b.table().unwrap();
        let last = t.rows.last().unwrap();
        assert_eq!(last[0], 1.0);
        assert!((last[1] - 0.25).abs() < 1e-15 && (last[2] - 0.625).abs() < 1e-15);
        let t = FigureId::Fig4.table().unwrap();
        assert!((t.rows[0][1] - 0.75).abs() < 1e-15 && (t.rows[0][2] - 0.375).abs() < 1e-15);
    }

    #[test]
    fn all_values_are_probabilities() {
        for id in FigureId::ALL {
            let t = id.table().unwrap();
            assert_eq!(t.rows.len(), FIGURE_POINTS);
            assert!(t.rows.iter().flatten().all(|v| v.is_finite() && (0.0..=1.0).contains(v)), "{id:?}");
        }
    }

    #[test]
    fn unwritable_path_is_io_error() {
        let r = emit_figure(FigureId::Fig2, Path::new("/nonexistent-dir/x.csv"));
        assert!(matches!(r, Err(Error::Io(_))));
    }
}
