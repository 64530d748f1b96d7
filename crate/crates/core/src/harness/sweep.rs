use std::fmt;
use std::str::FromStr;

use crate::bounds::{eval_bound, BoundSpec, Figure, Scheme, Theory};
use crate::error::{Error, Result};

use super::csv::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variable {
    C,
    P,
    Omega,
}

impl Variable {
    pub fn name(self) -> &'static str {
        match self {
            Variable::C => "c",
            Variable::P => "p",
            Variable::Omega => "omega",
        }
    }
}

impl FromStr for Variable {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "c" => Ok(Variable::C),
            "p" => Ok(Variable::P),
            "omega" | "w" => Ok(Variable::Omega),
            _ => Err(Error::Usage(format!("unknown sweep variable {s:?} (c, p, omega)"))),
        }
    }
}

/// A table cell in one theory, written `scheme:figure:theory`, e.g. `mesd:pg:q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Target {
    pub scheme: Scheme,
    pub figure: Figure,
    pub theory: Theory,
}

impl Target {
    pub fn new(scheme: Scheme, figure: Figure, theory: Theory) -> Self {
        Target { scheme, figure, theory }
    }

    /// The bound at one parameter point, passing only the parameters that apply.
    pub fn at(&self, c: f64, p: f64, omega: f64) -> Result<BoundSpec> {
        let p = (self.scheme == Scheme::Mcm).then_some(p);
        let omega = (self.scheme == Scheme::Mesd && matches!(self.figure, Figure::Confidence(_))).then_some(omega);
        BoundSpec::new(self.scheme, self.figure, self.theory, c, p, omega)
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.scheme, self.figure, self.theory)
    }
}

impl FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [scheme, figure, theory] = parts[..] else {
            return Err(Error::Usage(format!("target {s:?} is not scheme:figure:theory")));
        };
        Ok(Target {
            scheme: scheme.parse()?,
            figure: figure.parse()?,
            theory: theory.parse()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: Variable,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    /// Values of the parameters not being swept.
    pub c: f64,
    pub p: f64,
    pub omega: f64,
    pub targets: Vec<Target>,
    /// Column names; defaults to the target strings.
    pub labels: Option<Vec<String>>,
}

impl SweepSpec {
    pub fn new(variable: Variable, points: usize, targets: Vec<Target>) -> Self {
        SweepSpec {
            variable,
            start: 0.0,
            stop: 1.0,
            points,
            c: 0.5,
            p: 0.5,
            omega: 0.5,
            targets,
            labels: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.points == 0 {
            return Err(Error::Usage("a sweep needs at least one point".into()));
        }
        if self.targets.is_empty() {
            return Err(Error::Usage("a sweep needs at least one target".into()));
        }
        for (name, v) in [("start", self.start), ("stop", self.stop), ("c", self.c), ("p", self.p), ("omega", self.omega)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Usage(format!("{name} = {v} is outside [0, 1]")));
            }
        }
        if let Some(labels) = &self.labels {
            if labels.len() != self.targets.len() {
                return Err(Error::Usage("one label per target".into()));
            }
        }
        Ok(())
    }

    fn step(&self) -> f64 {
        if self.points < 2 {
            0.0
        } else {
            (self.stop - self.start) / (self.points - 1) as f64
        }
    }

    fn grid_value(&self, k: usize) -> f64 {
        if k + 1 == self.points && self.points > 1 {
            self.stop
        } else {
            self.start + k as f64 * self.step()
        }
    }

    fn evaluate_row(&self, x: f64) -> Result<Vec<f64>> {
        let (mut c, mut p, mut omega) = (self.c, self.p, self.omega);
        match self.variable {
            Variable::C => c = x,
            Variable::P => p = x,
            Variable::Omega => omega = x,
        }
        let mut row = Vec::with_capacity(self.targets.len() + 1);
        row.push(x);
        for t in &self.targets {
            row.push(eval_bound(&t.at(c, p, omega)?)?);
        }
        Ok(row)
    }
}

fn is_singular(e: &Error) -> bool {
    matches!(
        e,
        Error::Singular(_) | Error::UsdImpossible | Error::UndefinedConfidence { .. }
    )
}

/// One row per grid point, first column the swept variable.
///
/// A grid endpoint where some target is singular is moved half a step inward
/// for the whole row; singular interior points are an error.
pub fn run_sweep(spec: &SweepSpec) -> Result<Table> {
    spec.validate()?;
    let mut header = vec![spec.variable.name().to_string()];
    match &spec.labels {
        Some(l) => header.extend(l.iter().cloned()),
        None => header.extend(spec.targets.iter().map(|t| t.to_string())),
    }
    let last = spec.points - 1;
    let half = 0.5 * spec.step();
    let mut rows = Vec::with_capacity(spec.points);
    for k in 0..spec.points {
        let x = spec.grid_value(k);
        let row = match spec.evaluate_row(x) {
            Ok(r) => r,
            Err(e) if is_singular(&e) && (k == 0 || k == last) && half != 0.0 => {
                let inward = if k == 0 { x + half } else { x - half };
                spec.evaluate_row(inward)?
            }
            Err(e) => return Err(e),
        };
        rows.push(row);
    }
    Ok(Table { header, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_round_trip() {
        for s in ["mesd:pg:q", "usd:p0:nc", "mcm:c2:q"] {
            assert_eq!(s.parse::<Target>().unwrap().to_string(), s);
        }
        assert!("mesd:pg".parse::<Target>().is_err());
        assert!("mesd:xx:q".parse::<Target>().is_err());
    }

    #[test]
    fn mesd_guessing_sweep() {
        let targets = vec!["mesd:pg:q".parse().unwrap(), "mesd:pg:nc".parse().unwrap()];
        let t = run_sweep(&SweepSpec::new(Variable::C, 11, targets)).unwrap();
        assert_eq!(t.rows.len(), 11);
        assert_eq!(t.header, ["c", "mesd:pg:q", "mesd:pg:nc"]);
        for col in 1..3 {
            assert!(t.rows.windows(2).all(|w| w[1][col] < w[0][col]));
        }
    }

    #[test]
    fn single_point_sweep() {
        let mut s = SweepSpec::new(Variable::C, 1, vec!["mesd:pg:nc".parse().unwrap()]);
        s.start = 0.5;
        let t = run_sweep(&s).unwrap();
        assert_eq!(t.rows, vec![vec![0.5, 0.75]]);
    }

    #[test]
    fn omega_sweep_crosses_at_half() {
        let targets = vec!["mesd:c1:nc".parse().unwrap(), "mesd:c2:nc".parse().unwrap()];
        let t = run_sweep(&SweepSpec::new(Variable::Omega, 11, targets)).unwrap();
        let mid = &t.rows[5];
        assert_eq!(mid[0], 0.5);
        assert!((mid[1] - 0.75).abs() < 1e-15 && (mid[2] - 0.75).abs() < 1e-15);
        assert!(t.rows[0][1] > t.rows[0][2] && t.rows[10][1] < t.rows[10][2]);
    }

    #[test]
    fn singular_endpoint_moves_inward() {
        let mut s = SweepSpec::new(Variable::C, 11, vec!["mcm:c1:q".parse().unwrap(), "usd:p0:q".parse().unwrap()]);
        s.p = 0.0;
        let t = run_sweep(&s).unwrap();
        assert_eq!(t.rows[10][0], 0.95);
        assert!(t.rows.iter().flatten().all(|v| v.is_finite()));
    }

    #[test]
    fn invalid_specs() {
        let mut s = SweepSpec::new(Variable::C, 0, vec!["mesd:pg:q".parse().unwrap()]);
        assert!(matches!(run_sweep(&s), Err(Error::Usage(_))));
        s.points = 3;
        s.stop = 1.5;
        assert!(matches!(run_sweep(&s), Err(Error::Usage(_))));
        assert!(matches!(run_sweep(&SweepSpec::new(Variable::C, 3, vec![])), Err(Error::Usage(_))));
    }
}
