//! Closed forms for every cell of the scheme × figure table, in both theories,
//! and certificates comparing them.

use std::fmt;
use std::str::FromStr;

use crate::error::{check_unit, Error, Result};
use crate::ncmodel;
use crate::qtheory::{self, OutcomeLabel};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Mesd,
    Usd,
    Mcm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Figure {
    Pg,
    P0,
    /// Confidence of conclusive outcome 1 or 2.
    Confidence(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theory {
    Quantum,
    Noncontextual,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::Mesd, Scheme::Usd, Scheme::Mcm];
}

impl Figure {
    /// Table column order.
    pub const COLUMNS: [Figure; 3] = [Figure::Pg, Figure::P0, Figure::Confidence(1)];
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Mesd => "mesd",
            Scheme::Usd => "usd",
            Scheme::Mcm => "mcm",
        })
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Figure::Pg => f.write_str("pg"),
            Figure::P0 => f.write_str("p0"),
            Figure::Confidence(i) => write!(f, "c{i}"),
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::Quantum => "q",
            Theory::Noncontextual => "nc",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mesd" => Ok(Scheme::Mesd),
            "usd" => Ok(Scheme::Usd),
            "mcm" => Ok(Scheme::Mcm),
            _ => Err(Error::Usage(format!("unknown scheme {s:?} (mesd, usd, mcm)"))),
        }
    }
}

impl FromStr for Figure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pg" => Ok(Figure::Pg),
            "p0" => Ok(Figure::P0),
            "c" | "c1" => Ok(Figure::Confidence(1)),
            "c2" => Ok(Figure::Confidence(2)),
            _ => Err(Error::Usage(format!("unknown figure {s:?} (pg, p0, c1, c2)"))),
        }
    }
}

impl FromStr for Theory {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "q" | "quantum" => Ok(Theory::Quantum),
            "nc" | "noncontextual" => Ok(Theory::Noncontextual),
            _ => Err(Error::Usage(format!("unknown theory {s:?} (q, nc)"))),
        }
    }
}

/// One cell of the table in one theory, with its parameters.
///
/// `p` applies to MCM only and is required there. `omega` applies to MESD
/// confidences only and is required for the noncontextual one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundSpec {
    pub scheme: Scheme,
    pub figure: Figure,
    pub theory: Theory,
    pub c: f64,
    pub p: Option<f64>,
    pub omega: Option<f64>,
}

impl BoundSpec {
    pub fn new(scheme: Scheme, figure: Figure, theory: Theory, c: f64, p: Option<f64>, omega: Option<f64>) -> Result<Self> {
        let spec = BoundSpec {
            scheme,
            figure,
            theory,
            c,
            p,
            omega,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Same cell in the other theory.
    pub fn counterpart(&self) -> BoundSpec {
        BoundSpec {
            theory: match self.theory {
                Theory::Quantum => Theory::Noncontextual,
                Theory::Noncontextual => Theory::Quantum,
            },
            ..*self
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_unit("c", self.c)?;
        if let Figure::Confidence(i) = self.figure {
            if i != 1 && i != 2 {
                return Err(Error::Contract(format!("confidence arm {i} does not exist")));
            }
        }
        match (self.scheme, self.p) {
            (Scheme::Mcm, None) => return Err(Error::Contract("mcm bounds need the noise p".into())),
            (Scheme::Mcm, Some(p)) => {
                check_unit("p", p)?;
            }
            (_, Some(_)) => return Err(Error::Contract(format!("p does not apply to {}", self.scheme))),
            (_, None) => {}
        }
        let mesd_conf = self.scheme == Scheme::Mesd && matches!(self.figure, Figure::Confidence(_));
        match self.omega {
            Some(w) if mesd_conf => {
                check_unit("omega", w)?;
            }
            Some(_) => {
                return Err(Error::Contract(format!(
                    "omega does not apply to {}:{}",
                    self.scheme, self.figure
                )))
            }
            None if mesd_conf && self.theory == Theory::Noncontextual => {
                return Err(Error::Contract("noncontextual mesd confidences need omega".into()))
            }
            None => {}
        }
        Ok(())
    }

    /// Whether the cell is fixed by the definition of the scheme.
    pub fn is_definitional(&self) -> bool {
        matches!(
            (self.scheme, self.figure),
            (Scheme::Mesd, Figure::P0) | (Scheme::Usd, Figure::Confidence(_))
        )
    }

    /// Whether smaller values are better.
    pub fn lower_is_better(&self) -> bool {
        self.figure == Figure::P0
    }
}

impl fmt::Display for BoundSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{} c={}", self.scheme, self.figure, self.theory, self.c)?;
        if let Some(p) = self.p {
            write!(f, " p={p}")?;
        }
        if let Some(w) = self.omega {
            write!(f, " omega={w}")?;
        }
        Ok(())
    }
}

/// Helstrom value `½(1 + √(1−c))`.
pub fn helstrom(c: f64) -> f64 {
    0.5 * (1.0 + (1.0 - c).sqrt())
}

/// Quantum maximum confidence on the depolarized pair.
pub fn mcm_confidence_q(c: f64, p: f64) -> Result<f64> {
    let k = 1.0 - p;
    let x = qtheory::overlap_from_confusability(c);
    let den = 1.0 - k * k * x * x;
    if den <= 0.0 {
        return Err(Error::Singular("maximum confidence is 0/0 at p = 0, c = 1".into()));
    }
    Ok(0.5 * (1.0 + k * (1.0 - x * x).sqrt() / den.sqrt()))
}

/// Noncontextual maximum confidence on the depolarized pair.
pub fn mcm_confidence_nc(c: f64, p: f64) -> Result<f64> {
    let k = 1.0 - p;
    let den = 1.0 - k * c;
    if den <= 0.0 {
        return Err(Error::Singular("maximum confidence is 0/0 at p = 0, c = 1".into()));
    }
    Ok(0.5 * (1.0 + k * (1.0 - c) / den))
}

/// Quantum guessing probability of the optimal maximum-confidence measurement.
pub fn mcm_guessing_q(c: f64, p: f64) -> f64 {
    let k = 1.0 - p;
    let x = qtheory::overlap_from_confusability(c);
    let kx = k * x;
    0.5 * (1.0 - kx + k * ((1.0 - kx) / (1.0 + kx)).sqrt() * (1.0 - x * x).sqrt())
}

/// Closed-form value of one cell.
pub fn eval_bound(spec: &BoundSpec) -> Result<f64> {
    spec.validate()?;
    let c = spec.c;
    let p = spec.p.unwrap_or(0.0);
    use Figure::*;
    use Scheme::*;
    use Theory::*;
    let v = match (spec.scheme, spec.figure, spec.theory) {
        (Mesd, Pg, Quantum) | (Mesd, Confidence(_), Quantum) => helstrom(c),
        (Mesd, Pg, Noncontextual) => 1.0 - 0.5 * c,
        (Mesd, P0, _) => 0.0,
        (Mesd, Confidence(i), Noncontextual) => {
            let (a, b) = ncmodel::nc_mesd_confidences(c, spec.omega.expect("validated"))?;
            if i == 1 {
                a
            } else {
                b
            }
        }
        (Usd, _, Quantum) if 1.0 - c <= Tolerances::DEFAULT.normalization => return Err(Error::UsdImpossible),
        (Usd, Confidence(_), _) => 1.0,
        (Usd, P0, Quantum) => qtheory::overlap_from_confusability(c),
        (Usd, Pg, Quantum) => 1.0 - qtheory::overlap_from_confusability(c),
        (Usd, P0, Noncontextual) => 0.5 * (1.0 + c),
        (Usd, Pg, Noncontextual) => 0.5 * (1.0 - c),
        (Mcm, Confidence(_), Quantum) => mcm_confidence_q(c, p)?,
        (Mcm, Confidence(_), Noncontextual) => mcm_confidence_nc(c, p)?,
        (Mcm, P0, Quantum) => (1.0 - p) * qtheory::overlap_from_confusability(c),
        (Mcm, P0, Noncontextual) => 0.5 * (1.0 + (1.0 - p) * c),
        (Mcm, Pg, Quantum) => mcm_guessing_q(c, p),
        (Mcm, Pg, Noncontextual) => ncmodel::nc_mcm_guessing(c, p)?,
    };
    Ok(v)
}

/// Value of a quantum cell obtained by building the measurement and evaluating it.
pub fn quantum_construction(spec: &BoundSpec) -> Result<f64> {
    spec.validate()?;
    if spec.theory != Theory::Quantum {
        return Err(Error::Contract(format!("{spec} is not a quantum bound")));
    }
    let theta = qtheory::theta_from_confusability(spec.c)?;
    let (ens, povm) = match spec.scheme {
        Scheme::Mesd => {
            let ens = qtheory::noisy_ensemble(theta, 0.0)?;
            let m = qtheory::helstrom_povm(&ens)?;
            (ens, m)
        }
        Scheme::Usd => {
            let ens = qtheory::noisy_ensemble(theta, 0.0)?;
            let (m, _) = qtheory::usd_optimal(&ens)?;
            (ens, m)
        }
        Scheme::Mcm => {
            let p = spec.p.expect("validated");
            let ens = qtheory::noisy_ensemble(theta, p)?;
            let (m, _) = qtheory::mcm_optimal(theta, p)?;
            (ens, m)
        }
    };
    match spec.figure {
        Figure::Pg => qtheory::guessing_probability(&ens, &povm),
        Figure::P0 => Ok(qtheory::outcome_probability(&ens, &povm, OutcomeLabel::Inconclusive)),
        Figure::Confidence(i) => qtheory::confidence(&ens, &povm, i),
    }
}

/// Value of a noncontextual cell obtained from the four-region model.
///
/// Optimized cells come from the vertex oracles; MESD confidences come from
/// evaluating the ω-mixed strategy.
pub fn nc_oracle(spec: &BoundSpec) -> Result<f64> {
    spec.validate()?;
    if spec.theory != Theory::Noncontextual {
        return Err(Error::Contract(format!("{spec} is not a noncontextual bound")));
    }
    let p = spec.p.unwrap_or(0.0);
    let scn = ncmodel::canonical_scenario(spec.c, p)?;
    match (spec.scheme, spec.figure) {
        (Scheme::Mesd, Figure::Confidence(i)) => {
            let rs = ncmodel::mesd_mixed_strategy(spec.omega.expect("validated"))?;
            ncmodel::nc_figures(&scn, &rs, false).confidence(i)
        }
        (Scheme::Mesd, fig) => {
            let (rs, pg) = ncmodel::oracle_max_pg(&scn, false);
            Ok(if fig == Figure::Pg {
                pg
            } else {
                ncmodel::nc_figures(&scn, &rs, false).p0
            })
        }
        (Scheme::Mcm, Figure::Confidence(i)) => Ok(ncmodel::oracle_max_confidence(&scn, i, true)?.1),
        (_, fig) => {
            // USD is the noiseless case of the same optimization.
            let (rs, p0) = ncmodel::oracle_min_p0_at_max_confidence(&scn)?;
            let figs = ncmodel::nc_figures(&scn, &rs, true);
            match fig {
                Figure::Pg => Ok(figs.pg),
                Figure::P0 => Ok(p0),
                Figure::Confidence(i) => figs.confidence(i),
            }
        }
    }
}

/// Signed comparison of a quantum cell with its noncontextual counterpart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapCertificate {
    pub quantum: BoundSpec,
    pub noncontextual: BoundSpec,
    pub quantum_value: f64,
    pub noncontextual_value: f64,
    /// `quantum − noncontextual`.
    pub gap: f64,
    /// Quantum strictly better, beyond the tolerance, in the figure's own direction.
    pub advantage: bool,
}

/// Certificate at the default gap tolerance.
pub fn gap(quantum: &BoundSpec, noncontextual: &BoundSpec) -> Result<GapCertificate> {
    gap_with(quantum, noncontextual, Tolerances::DEFAULT.gap)
}

pub fn gap_with(quantum: &BoundSpec, noncontextual: &BoundSpec, tol: f64) -> Result<GapCertificate> {
    if quantum.theory != Theory::Quantum || noncontextual.theory != Theory::Noncontextual {
        return Err(Error::Contract("gap needs a quantum spec and a noncontextual spec, in that order".into()));
    }
    let same_cell = quantum.scheme == noncontextual.scheme && quantum.figure == noncontextual.figure;
    let same_params = quantum.c == noncontextual.c && quantum.p == noncontextual.p;
    let omega_ok = quantum.omega.is_none() || quantum.omega == noncontextual.omega;
    if !(same_cell && same_params && omega_ok) {
        return Err(Error::Contract(format!("mismatched specs: {quantum} vs {noncontextual}")));
    }
    let q = eval_bound(quantum)?;
    let nc = eval_bound(noncontextual)?;
    let g = q - nc;
    let advantage = if quantum.lower_is_better() { g < -tol } else { g > tol };
    Ok(GapCertificate {
        quantum: *quantum,
        noncontextual: *noncontextual,
        quantum_value: q,
        noncontextual_value: nc,
        gap: g,
        advantage,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Gap(GapCertificate),
    /// MESD confidences, which differ per arm in the noncontextual model.
    Arms([GapCertificate; 2]),
    /// Fixed by the scheme's definition; identical in both theories.
    Definitional(f64),
    /// No value at this parameter point, with the reason.
    Unavailable(String),
}

impl Cell {
    /// Certificates carried by the cell.
    pub fn certificates(&self) -> Vec<&GapCertificate> {
        match self {
            Cell::Gap(g) => vec![g],
            Cell::Arms(a) => a.iter().collect(),
            _ => Vec::new(),
        }
    }

    /// True for cells with at least one certificate, all showing advantage.
    pub fn shows_advantage(&self) -> bool {
        let certs = self.certificates();
        !certs.is_empty() && certs.iter().all(|g| g.advantage)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table1Report {
    pub c: f64,
    pub p: f64,
    pub omega: f64,
    /// Rows in [`Scheme::ALL`] order, columns in [`Figure::COLUMNS`] order.
    pub cells: [[Cell; 3]; 3],
}

impl Table1Report {
    pub fn cell(&self, scheme: Scheme, figure: Figure) -> &Cell {
        let r = Scheme::ALL.iter().position(|s| *s == scheme).unwrap();
        let col = match figure {
            Figure::Pg => 0,
            Figure::P0 => 1,
            Figure::Confidence(_) => 2,
        };
        &self.cells[r][col]
    }
}

fn build_cell(scheme: Scheme, figure: Figure, c: f64, p: f64, omega: f64) -> Cell {
    let p_opt = (scheme == Scheme::Mcm).then_some(p);
    let q = |fig: Figure, w: Option<f64>| BoundSpec::new(scheme, fig, Theory::Quantum, c, p_opt, w);
    let result = (|| -> Result<Cell> {
        let spec = q(figure, None)?;
        if spec.is_definitional() {
            return Ok(Cell::Definitional(eval_bound(&spec.counterpart())?));
        }
        if scheme == Scheme::Mesd && matches!(figure, Figure::Confidence(_)) {
            let mut arms = Vec::with_capacity(2);
            for i in 1..=2 {
                let qs = q(Figure::Confidence(i), Some(omega))?;
                arms.push(gap(&qs, &qs.counterpart())?);
            }
            return Ok(Cell::Arms([arms[0], arms[1]]));
        }
        Ok(Cell::Gap(gap(&spec, &spec.counterpart())?))
    })();
    result.unwrap_or_else(|e| match e {
        Error::UsdImpossible => Cell::Unavailable("USD impossible".into()),
        other => Cell::Unavailable(other.to_string()),
    })
}

/// All nine cells at one parameter point.
pub fn table1_report(c: f64, p: f64, omega: f64) -> Result<Table1Report> {
    check_unit("c", c)?;
    check_unit("p", p)?;
    check_unit("omega", omega)?;
    let cells = Scheme::ALL.map(|s| Figure::COLUMNS.map(|f| build_cell(s, f, c, p, omega)));
    Ok(Table1Report { c, p, omega, cells })
}

fn render_cert(g: &GapCertificate) -> String {
    format!(
        "Q={:.7} NC={:.7} gap={:+.7} {}",
        g.quantum_value,
        g.noncontextual_value,
        g.gap,
        if g.advantage { "advantage" } else { "no advantage" }
    )
}

/// Plain-text rendering, one line per cell.
pub fn render_table(report: &Table1Report) -> String {
    let mut out = format!(
        "c = {}, p = {} (mcm only), omega = {} (mesd confidences only)\n",
        report.c, report.p, report.omega
    );
    let col_names = ["P_g", "P_0", "C(i)"];
    for (r, scheme) in Scheme::ALL.iter().enumerate() {
        for (k, name) in col_names.iter().enumerate() {
            let body = match &report.cells[r][k] {
                Cell::Gap(g) => render_cert(g),
                Cell::Arms(a) => format!("[1] {} | [2] {}", render_cert(&a[0]), render_cert(&a[1])),
                Cell::Definitional(v) => format!("{v} (definitional)"),
                Cell::Unavailable(why) => why.clone(),
            };
            out.push_str(&format!("{:<5} {:<5} {}\n", scheme.to_string().to_uppercase(), name, body));
        }
    }
    out
}
