//! One-shot cross-check of every closed form against its construction or oracle.

use std::fmt;

use crate::bounds::{self, BoundSpec, Cell, Figure, Scheme, Theory};
use crate::error::{Error, Result};
use crate::ncmodel::{self, Region};
use crate::qtheory::{self, OutcomeLabel};
use crate::tolerance::Tolerances;

use super::figure::FigureId;
use super::sweep::{run_sweep, SweepSpec, Target, Variable};

/// Every check run by [`verify_all`], in report order.
pub const CHECK_NAMES: &[&str] = &[
    "qtheory.pure_pair",
    "qtheory.mirror",
    "qtheory.helstrom",
    "qtheory.usd_optimal",
    "qtheory.mcm_confidence",
    "qtheory.mcm_inconclusive",
    "qtheory.mcm_alpha_invariance",
    "ncmodel.preparation_equivalence",
    "ncmodel.confusability",
    "ncmodel.oracle_max_pg",
    "ncmodel.mesd_confidences",
    "ncmodel.omega_star",
    "ncmodel.oracle_max_confidence",
    "ncmodel.oracle_min_p0",
    "ncmodel.hand_integrals",
    "bounds.construction_consistency",
    "bounds.oracle_consistency",
    "bounds.inequality_suite",
    "bounds.mesd_window",
    "bounds.factorization",
    "bounds.table1_report",
    "harness.sweep",
    "harness.figures",
];

/// Parameter point at which a check deviated most.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub c: Option<f64>,
    pub p: Option<f64>,
    pub omega: Option<f64>,
}

impl Point {
    fn c(c: f64) -> Self {
        Point { c: Some(c), ..Point::default() }
    }
    fn cp(c: f64, p: f64) -> Self {
        Point { c: Some(c), p: Some(p), omega: None }
    }
    fn cw(c: f64, w: f64) -> Self {
        Point { c: Some(c), p: None, omega: Some(w) }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x}"));
        write!(f, "(c={}, p={}, omega={})", show(self.c), show(self.p), show(self.omega))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub tolerance: f64,
    pub max_deviation: f64,
    pub worst: Option<Point>,
    pub evaluations: usize,
    /// First hard failure (error or violated flag), if any.
    pub failure: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none() && self.max_deviation <= self.tolerance && self.evaluations > 0
    }
}

struct Check {
    result: CheckResult,
}

impl Check {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Check {
            result: CheckResult {
                name,
                tolerance,
                max_deviation: 0.0,
                worst: None,
                evaluations: 0,
                failure: None,
            },
        }
    }

    /// Records an absolute deviation; fails when above tolerance.
    fn deviation(&mut self, dev: f64, at: Point) {
        let r = &mut self.result;
        r.evaluations += 1;
        let dev = if dev.is_nan() { f64::INFINITY } else { dev };
        if (dev > r.max_deviation || r.worst.is_none()) && r.failure.is_none() {
            r.max_deviation = dev;
            r.worst = Some(at);
        } else if dev > r.max_deviation {
            r.max_deviation = dev;
        }
    }

    fn close(&mut self, a: f64, b: f64, at: Point) {
        self.deviation((a - b).abs(), at);
    }

    /// Records a boolean condition; `magnitude` is reported as the deviation.
    fn holds(&mut self, ok: bool, magnitude: f64, at: Point, what: impl FnOnce() -> String) {
        self.deviation(if ok { 0.0 } else { magnitude.abs() }, at);
        if !ok {
            self.fail(what(), at);
        }
    }

    fn fail(&mut self, msg: String, at: Point) {
        if self.result.failure.is_none() {
            self.result.failure = Some(format!("{msg} at {at}"));
            self.result.worst = Some(at);
        }
    }

    /// Unwraps a result, turning errors into a failure.
    fn ok<T>(&mut self, r: Result<T>, at: Point) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.result.evaluations += 1;
                self.fail(e.to_string(), at);
                None
            }
        }
    }

    fn finish(self) -> CheckResult {
        self.result
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub density: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.checks {
            out.push_str(&format!(
                "{} {:<34} max_dev={:.3e} tol={:.1e} n={} worst={}",
                if r.passed() { "PASS" } else { "FAIL" },
                r.name,
                r.max_deviation,
                r.tolerance,
                r.evaluations,
                r.worst.map_or("-".to_string(), |p| p.to_string()),
            ));
            if let Some(f) = &r.failure {
                out.push_str(&format!("  [{f}]"));
            }
            out.push('\n');
        }
        let passed = self.checks.iter().filter(|r| r.passed()).count();
        out.push_str(&format!(
            "{passed}/{} checks passed at {} points per axis\n",
            self.checks.len(),
            self.density
        ));
        out
    }
}

fn grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| k as f64 / (n - 1) as f64).collect()
}

fn interior(v: f64) -> bool {
    v > 0.0 && v < 1.0
}

/// Runs every check on an `n`-point grid per axis.
pub fn verify_all(density: usize, tol: &Tolerances) -> Result<VerifyReport> {
    if density < 5 {
        return Err(Error::Usage(format!("grid density must be at least 5, got {density}")));
    }
    let g = grid(density);
    let checks = vec![
        pure_pair(&g, tol),
        mirror(&g, tol),
        helstrom(&g, tol),
        usd_optimal(&g, tol),
        mcm_confidence(&g, tol),
        mcm_inconclusive(&g, tol),
        mcm_alpha_invariance(&g, tol),
        preparation_equivalence(&g, tol),
        confusability(&g, tol),
        oracle_max_pg(&g, tol),
        mesd_confidences(&g, tol),
        omega_star(&g, tol),
        oracle_max_confidence(&g, tol),
        oracle_min_p0(&g, tol),
        hand_integrals(&g, tol),
        construction_consistency(&g, tol),
        oracle_consistency(&g, tol),
        inequality_suite(&g, tol),
        mesd_window(&g, tol),
        factorization(&g, tol),
        table1(&g, tol),
        sweep(density, tol),
        figures(tol),
    ];
    debug_assert_eq!(checks.iter().map(|c| c.name).collect::<Vec<_>>(), CHECK_NAMES);
    Ok(VerifyReport { density, checks })
}

fn pure_pair(g: &[f64], tol: &Tolerances) -> CheckResult {
    let mut ch = Check::new("qtheory.pure_pair", tol.identity);
    for &c in g {
        let at = Point::c(c);
        let Some(theta) = ch.ok(qtheory::theta_from_confusability(c), at) else { continue };
        let Some((a, b)) = ch.ok(qtheory::make_pure_pair(theta), at) else { continue };
        ch.close(a.overlap_sq(&b), c, at);
        ch.close(a.inner(&b).re, theta.cos(), at);
        ch.close(qtheory::overlap_from_confusability(c), c.sqrt(), at);
    }
    ch.finish()
}

fn mirror(g: &[f64], tol: &Tolerances) -> CheckResult {
    let mut ch = Check::new("qtheory.mirror", tol.identity);
    for &c in g {
        let at = Point::c(c);
        let Some((a, b)) = qtheory::theta_from_confusability(c)
            .and_then(qtheory::make_pure_pair)
            .map_or_else(|e| ch.ok(Err(e), at), Some)
        else {
            continue;
        };
        for s in [a, b] {
            let m = qtheory::mirror(&s);
            ch.deviation(s.overlap_sq(&m), at);
            ch.holds(qtheory::mirror(&m).same_ray(&s, tol.identity), 1.0, at, || "mirror is not an involution".into());
        }
    }
    ch.finish()
}

fn helstrom(g: &[f64], tol: &Tolerances) -> CheckResult {
    let mut ch = Check::new("qtheory.helstrom", tol.construction);
    for &c in g {
        let at = Point::c(c);
        let Some(ens) = ch.ok(qtheory::theta_from_confusability(c).and_then(|t| qtheory::noisy_ensemble(t, 0.0)), at) else {
            continue;
        };
        let Some(m) = ch.ok(qtheory::helstrom_povm(&ens), at) else { continue };
        if let Some(pg) = ch.ok(qtheory::guessing_probability(&ens, &m), at) {
            ch.close(pg, bounds::helstrom(c), at);
        }
        ch.deviation(qtheory::inconclusive_rate(&ens, &m), at);
        if c < 1.0 {
            let p11 = qtheory::conditional_probability(&ens, &m, OutcomeLabel::Conclusive(1), 1);
            let p22 = qtheory::conditional_probability(&ens, &m, OutcomeLabel::Conclusive(2), 2);
            ch.close(p11, p22, at);
        }
    }
    ch.finish()
}

fn usd_optimal(g: &[f64], tol: &Tolerances) -> CheckResult {
    let mut ch = Check::new("qtheory.usd_optimal", tol.construction);
    for &c in g {
        let at = Point::c(c);
        let Some(ens) = ch.ok(qtheory::theta_from_confusability(c).and_then(|t| qtheory::noisy_ensemble(t, 0.0)), at) else {
            continue;
        };
        match qtheory::usd_optimal(&ens) {
            Ok((m, rate)) => {
                ch.close(rate, c.sqrt(), at);
                for i in 1..=2 {
                    if let Some(conf) = ch.ok(qtheory::confidence(&ens, &m, i), at) {
                        ch.close(conf, 1.0, at);
                    }
                }
            }
            Err(Error::UsdImpossible) => ch.holds(c == 1.0, 1.0, at, || "USD reported impossible".into()),
            Err(e) => ch.fail(e.to_string(), at),
        }
    }
    ch.finish()
}

/// Grid points where the maximum-confidence construction is defined.
fn mcm_points(g: &[f64]) -> impl Iterator<Item = (f64, f64)> + '_ {
    g.iter()
        .flat_map(move |&c| g.iter().map(move |&p| (c, p)))
        .filter(|&(c, p)| !(c == 1.0 && p == 0.0))
}

fn mcm_confidence(g: &[f64], tol: &Tolerances) -> CheckResult {
    let mut ch = Check::new("qtheory.mcm_confidence", tol.construction);
    for (c, p) in mcm_points(g) {
        let at = Point::cp(c, p);
        let Some(theta) = ch.ok(qtheory::theta_from_confusability(c), at) else { continue };
        let Some(ens) = ch.ok(qtheory::noisy_ensemble(theta, p), at) else { continue };
        let Some((m, _)) = ch.ok(qtheory::mcm_optimal(theta, p), at) else { continue };
        let Some(want) = ch.ok(bounds::mcm_confidence_q(c, p), at) else { continue };
        for i in 1..=2 {
            if let Some(conf) = ch.ok(qtheory::confidence(&ens, &m, i), at) {
                ch.close(conf, want, at);
            }
        }
    }
    ch.finish()
}

fn mcm_inconclusive(g: &[f64], tol: &Tolerances) -> CheckResult {
    let mut ch = Check::new("qtheory.mcm_inconclusive", tol.construction);
    for (c, p) in mcm_points(g) {
        let at = Point::cp(c, p);
        let Some(theta) = ch.ok(qtheory::theta_from_confusability(c), at) else { continue };
        if let Some((_, rate)) = ch.ok(qtheory::mcm_optimal(theta, p), at) {
            ch.close(rate, (1.0 - p) * c.sqrt(), at);
        }
    }
    ch.finish()
}

fn mcm_alpha_invariance(g: &[f64], tol: &Tolerances) -> CheckResult {
    let mut ch = Check::new("qtheory.mcm_alpha_invariance", tol.identity);
    for (c, p) in mcm_points(g) {
        let at = Point::cp(c, p);
        let Some(theta) = ch.ok(qtheory::theta_from_confusability(c), at) else { continue };
        let Some(ens) = ch.ok(qtheory::noisy_ensemble(theta, p), at) else { continue };
        let Some(amax) = ch.ok(qtheory::mcm_alpha_max(theta, p), at) else { continue };
        let confs = |alpha: f64| -> Result<[f64; 2]> {
            let m = qtheory::mcm_povm(theta, p, alpha)?;
            Ok([qtheory::confidence(&ens, &m, 1)?, qtheory::confidence(&ens, &m, 2)?])
        };
        let Some(base) = ch.ok(confs(amax), at) else { continue };
        for frac in [0.25, 0.5] {
            if let Some(v) = ch.ok(confs(frac * amax), at) {
                ch.close(v[0], base[0], at);
                ch.close(v[1], base[1], at);
            }
        }
    }
    ch.finish()
}

fn preparation_equivalence(g: &[f64], tol: &Tolerances) -> CheckResult {
    let mut ch = Check::new("ncmodel.preparation_equivalence", tol.identity);
    for (c, p) in g.iter().flat_map(|&c| g.iter().map(move |&p| (c, p))) {
        let at = Point::cp(c, p);
        let Some(s) = ch.ok(ncmodel::canonical_scenario(c, p), at) else { continue };
        for r in Region::ALL {
            let a = 0.5 * (s.mu[0].weight(r) + s.mirror[0].weight(r));
            let b = 0.5 * (s.mu[1].weight(r) + s.mirror[1].weight(r));
            ch.close(a, b, at);
            ch.close(a, s.maximally_mixed.weight(r), at);
        }
        for st in s.noisy {
            ch.close(st.weights().iter().sum(), 1.0, at);
        }
    }
    ch.finish()
}

fn confusability(g: &[f64], tol: &Tolerances) -> CheckResult {
    let mut ch = Check::new("ncmodel.confusability", tol.identity);
    for &c in g {
        let at = Point::c(c);
        let Some(s) = ch.ok(ncmodel::canonical_scenario(c, 0.0), at) else { continue };
        ch.close(ncmodel::confusability(&s.mu[0], &s.mu[1]), c, at);
        ch.close(ncmodel::confusability(&s.mu[1], &s.mu[0]), c, at);
        ch.close(ncmodel::confusability(&s.mu[0], &s.mirror[1]), 1.0 - c, at);
        ch.close(ncmodel::confusability(&s.mu[0], &s.mirror[0]), 0.0, at);
    }
    ch.finish()
}

fn oracle_max_pg(g: &[f64], tol: &Tolerances) -> CheckResult {
    let mut ch = Check::new("ncmodel.oracle_max_pg", tol.construction);
    for &c in g {
        let at = Point::c(c);
        let Some(s) = ch.ok(ncmodel::canonical_scenario(c, 0.0), at) else { continue };
        let (rs, pg) = ncmodel::oracle_max_pg(&s, false);
        ch.close(pg, 1.0 - 0.5 * c, at);
        ch.close(ncmodel::nc_figures(&s, &rs, false).pg, pg, at);
    }
    ch.finish()
}

fn mesd_confidences(g: &[f64], tol: &Tolerances) -> CheckResult {
    let mut ch = Check::new("ncmodel.mesd_confidences", tol.identity);
    for &c in g {
        let Some(s) = ch.ok(ncmodel::canonical_scenario(c, 0.0), Point::c(c)) else { continue };
        for &w in g {
            let at = Point::cw(c, w);
            let Some(rs) = ch.ok(ncmodel::mesd_mixed_strategy(w), at) else { continue };
            let Some((a, b)) = ch.ok(ncmodel::nc_mesd_confidences(c, w), at) else { continue };
            let f = ncmodel::nc_figures(&s, &rs, false);
            ch.close(f.pg, 1.0 - 0.5 * c, at);
            for (got, want) in f.confidence.iter().zip([a, b]) {
                if let Some(got) = got {
                    ch.close(*got, want, at);
                }
            }
        }
    }
    ch.finish()
}

fn omega_star(g: &[f64], tol: &Tolerances) -> CheckResult {
    let mut ch = Check::new("ncmodel.omega_star", tol.construction);
    // at c = 0 arm 1 and Helstrom coincide at 1 for every omega
    for &c in g.iter().filter(|c| interior(**c)) {
        let at = Point::c(c);
        let Some(ws) = ch.ok(ncmodel::omega_star(c), at) else { continue };
        let h = bounds::helstrom(c);
        let below = |w: f64| ncmodel::nc_mesd_confidences(c, w).map(|(a, _)| a <= h).unwrap_or(false);
        let hit = qtheory::bisect_max_feasible(|x| !below(x), tol);
        ch.close(hit, ws, at);
        // arm 2 crosses at the mirror point
        let hit2 = qtheory::bisect_max_feasible(|x| ncmodel::nc_mesd_confidences(c, x).map(|(_, b)| b <= h).unwrap_or(false), tol);
        ch.close(hit2, 1.0 - ws, at);
    }
    ch.finish()
}

fn oracle_max_confidence(g: &[f64], tol: &Tolerances) -> CheckResult {
    let mut ch = Check::new("ncmodel.oracle_max_confidence", tol.identity);
    for (c, p) in mcm_points(g) {
        let at = Point::cp(c, p);
        let Some(s) = ch.ok(ncmodel::canonical_scenario(c, p), at) else { continue };
        let Some(want) = ch.ok(bounds::mcm_confidence_nc(c, p), at) else { continue };
        for i in 1..=2 {
            if let Some((_, got)) = ch.ok(ncmodel::oracle_max_confidence(&s, i, true), at) {
                ch.close(got, want, at);
            }
        }
    }
    ch.finish()
}

fn oracle_min_p0(g: &[f64], tol: &Tolerances) -> CheckResult {
    let mut ch = Check::new("ncmodel.oracle_min_p0", tol.construction);
    for (c, p) in g.iter().flat_map(|&c| g.iter().map(move |&p| (c, p))) {
        let at = Point::cp(c, p);
        let Some(s) = ch.ok(ncmodel::canonical_scenario(c, p), at) else { continue };
        if let Some((rs, p0)) = ch.ok(ncmodel::oracle_min_p0_at_max_confidence(&s), at) {
            ch.close(p0, 0.5 * (1.0 + (1.0 - p) * c), at);
            ch.deviation(rs.normalization_defect(), at);
        }
    }
    ch.finish()
}

fn hand_integrals(g: &[f64], tol: &Tolerances) -> CheckResult {
    let mut ch = Check::new("ncmodel.hand_integrals", tol.identity);
    for &c in g {
        let Some(s) = ch.ok(ncmodel::canonical_scenario(c, 0.0), Point::c(c)) else { continue };
        ch.close(ncmodel::confusability(&s.mu[0], &s.mirror[1]), 1.0 - c, Point::c(c));
        for &g1 in g {
            for &g2 in g.iter().filter(|g2| g1 + **g2 <= 1.0) {
                let at = Point::c(c);
                let Some(rs) = ch.ok(ncmodel::usd_response(g1, g2), at) else { continue };
                let xi0 = rs.inconclusive();
                ch.close(ncmodel::nc_prob(&s.mu[0], &xi0), 1.0 - g1 + g1 * c, at);
                ch.close(ncmodel::nc_prob(&s.mu[1], &xi0), 1.0 - g2 + g2 * c, at);
                ch.close(ncmodel::nc_prob(&s.maximally_mixed, &xi0), 1.0 - 0.5 * (g1 + g2), at);
            }
        }
    }
    ch.finish()
}

/// Every (cell, theory) pair at every grid point, with its point label.
fn all_specs(g: &[f64], theory: Theory) -> Vec<(BoundSpec, Point)> {
    let figs = [Figure::Pg, Figure::P0, Figure::Confidence(1), Figure::Confidence(2)];
    let mut out = Vec::new();
    for &c in g {
        for scheme in Scheme::ALL {
            for fig in figs {
                let t = Target::new(scheme, fig, theory);
                match (scheme, fig) {
                    (Scheme::Mcm, _) => {
                        // the pure identical pair has no maximum-confidence measurement
                        for &p in g.iter().filter(|&&p| !(c == 1.0 && p == 0.0)) {
                            out.push((t.at(c, p, 0.5).expect("grid is in range"), Point::cp(c, p)));
                        }
                    }
                    (Scheme::Mesd, Figure::Confidence(_)) => {
                        for &w in g {
                            out.push((t.at(c, 0.0, w).expect("grid is in range"), Point::cw(c, w)));
                        }
                    }
                    _ => out.push((t.at(c, 0.0, 0.0).expect("grid is in range"), Point::c(c))),
                }
            }
        }
    }
    out
}

/// Compares a closed form with an independent route, skipping points where
/// the closed form is singular or the route's outcome never fires.
fn compare_routes(ch: &mut Check, spec: &BoundSpec, at: Point, route: impl Fn(&BoundSpec) -> Result<f64>) {
    match (bounds::eval_bound(spec), route(spec)) {
        (Ok(a), Ok(b)) => ch.close(a, b, at),
        (Err(Error::UsdImpossible), Err(Error::UsdImpossible)) => {}
        (Err(Error::Singular(_)), _) => {}
        (Ok(_), Err(Error::UndefinedConfidence { .. })) => {}
        (Ok(_), Err(e)) | (Err(e), _) => ch.fail(format!("{spec}: {e}"), at),
    }
}

fn construction_consistency(g: &[f64], tol: &Tolerances) -> CheckResult {
    let mut ch = Check::new("bounds.construction_consistency", tol.construction);
    for (spec, at) in all_specs(g, Theory::Quantum) {
        compare_routes(&mut ch, &spec, at, bounds::quantum_construction);
    }
    ch.finish()
}

fn oracle_consistency(g: &[f64], tol: &Tolerances) -> CheckResult {
    let mut ch = Check::new("bounds.oracle_consistency", tol.construction);
    for (spec, at) in all_specs(g, Theory::Noncontextual) {
        compare_routes(&mut ch, &spec, at, bounds::nc_oracle);
    }
    ch.finish()
}

fn inequality_suite(g: &[f64], tol: &Tolerances) -> CheckResult {
    let mut ch = Check::new("bounds.inequality_suite", tol.gap);
    let cells = [
        (Scheme::Mesd, Figure::Pg),
        (Scheme::Usd, Figure::Pg),
        (Scheme::Usd, Figure::P0),
        (Scheme::Mcm, Figure::Pg),
        (Scheme::Mcm, Figure::P0),
        (Scheme::Mcm, Figure::Confidence(1)),
        (Scheme::Mcm, Figure::Confidence(2)),
    ];
    for &c in g.iter().filter(|c| interior(**c)) {
        for &p in g.iter().filter(|p| **p < 1.0) {
            let at = Point::cp(c, p);
            for (scheme, fig) in cells {
                let Some(q) = ch.ok(Target::new(scheme, fig, Theory::Quantum).at(c, p, 0.5), at) else { continue };
                let Some(cert) = ch.ok(bounds::gap_with(&q, &q.counterpart(), tol.gap), at) else { continue };
                let margin = if q.lower_is_better() { -cert.gap } else { cert.gap };
                // Noiseless maximum confidences coincide at 1; everything else is strict.
                let strict = !(scheme == Scheme::Mcm && matches!(fig, Figure::Confidence(_)) && p == 0.0);
                ch.deviation((-margin).max(0.0), at);
                if strict {
                    ch.holds(cert.advantage, margin, at, || format!("{q}: no strict advantage"));
                }
            }
        }
    }
    ch.finish()
}

fn mesd_window(g: &[f64], tol: &Tolerances) -> CheckResult {
    let mut ch = Check::new("bounds.mesd_window", tol.gap);
    for &c in g.iter().filter(|c| interior(**c)) {
        let Some(ws) = ch.ok(ncmodel::omega_star(c), Point::c(c)) else { continue };
        for &w in g {
            let at = Point::cw(c, w);
            if (w - ws).abs() <= tol.construction || (w - (1.0 - ws)).abs() <= tol.construction {
                continue;
            }
            let mut both = true;
            for i in 1..=2 {
                let Some(q) = ch.ok(Target::new(Scheme::Mesd, Figure::Confidence(i), Theory::Quantum).at(c, 0.0, w), at) else {
                    continue;
                };
                match bounds::gap_with(&q, &q.counterpart(), tol.gap) {
                    Ok(cert) => both &= cert.advantage,
                    Err(e) => ch.fail(e.to_string(), at),
                }
            }
            let inside = w >= ws && w <= 1.0 - ws;
            ch.holds(both == inside, 1.0, at, || {
                format!("advantage on both arms = {both} but omega in window = {inside}")
            });
        }
    }
    ch.finish()
}

fn factorization(g: &[f64], tol: &Tolerances) -> CheckResult {
    let mut ch = Check::new("bounds.factorization", tol.identity);
    for (c, p) in mcm_points(g) {
        let at = Point::cp(c, p);
        for theory in [Theory::Quantum, Theory::Noncontextual] {
            let val = |f: Figure| Target::new(Scheme::Mcm, f, theory).at(c, p, 0.5).and_then(|s| bounds::eval_bound(&s));
            let Some(pg) = ch.ok(val(Figure::Pg), at) else { continue };
            let Some(p0) = ch.ok(val(Figure::P0), at) else { continue };
            let Some(conf) = ch.ok(val(Figure::Confidence(1)), at) else { continue };
            ch.close(pg, (1.0 - p0) * conf, at);
        }
    }
    ch.finish()
}

fn table1(g: &[f64], tol: &Tolerances) -> CheckResult {
    let mut ch = Check::new("bounds.table1_report", tol.identity);
    for (c, p) in g.iter().flat_map(|&c| g.iter().map(move |&p| (c, p))) {
        let at = Point { c: Some(c), p: Some(p), omega: Some(0.5) };
        let Some(t) = ch.ok(bounds::table1_report(c, p, 0.5), at) else { continue };
        match t.cell(Scheme::Mesd, Figure::P0) {
            Cell::Definitional(v) => ch.close(*v, 0.0, at),
            other => ch.fail(format!("mesd p0 cell is {other:?}"), at),
        }
        match t.cell(Scheme::Usd, Figure::Confidence(1)) {
            Cell::Definitional(v) => ch.close(*v, 1.0, at),
            other => ch.fail(format!("usd confidence cell is {other:?}"), at),
        }
        for (r, scheme) in Scheme::ALL.iter().enumerate() {
            for cell in &t.cells[r] {
                let expected_gap = match scheme {
                    Scheme::Usd => c < 1.0,
                    Scheme::Mcm => !(c == 1.0 && p == 0.0),
                    Scheme::Mesd => true,
                };
                if let Cell::Unavailable(why) = cell {
                    ch.holds(!expected_gap, 1.0, at, || format!("{scheme} cell unavailable: {why}"));
                }
                for cert in cell.certificates() {
                    ch.close(cert.gap, cert.quantum_value - cert.noncontextual_value, at);
                }
            }
        }
        let rendered = bounds::render_table(&t);
        ch.holds(rendered.lines().count() == 10, 1.0, at, || "rendered table is not nine cells".into());
    }
    ch.finish()
}

fn sweep(density: usize, tol: &Tolerances) -> CheckResult {
    let mut ch = Check::new("harness.sweep", tol.identity);
    let targets: Vec<Target> = ["mesd:pg:q", "mesd:pg:nc", "usd:p0:q", "usd:p0:nc", "mcm:c1:q", "mcm:c1:nc"]
        .iter()
        .map(|s| s.parse().expect("static target"))
        .collect();
    for p in [0.0, 0.5] {
        let mut spec = SweepSpec::new(Variable::C, density, targets.clone());
        spec.p = p;
        let at = Point { c: None, p: Some(p), omega: None };
        let Some(a) = ch.ok(run_sweep(&spec), at) else { continue };
        let Some(b) = ch.ok(run_sweep(&spec), at) else { continue };
        ch.holds(a.to_csv() == b.to_csv(), 1.0, at, || "sweep output is not deterministic".into());
        ch.holds(a.rows.len() == density, 1.0, at, || "wrong row count".into());
        for row in &a.rows {
            for v in &row[1..] {
                ch.holds(v.is_finite() && (0.0..=1.0).contains(v), 1.0, Point { c: Some(row[0]), ..at }, || {
                    format!("value {v} is not a probability")
                });
            }
        }
    }
    ch.finish()
}

fn figures(tol: &Tolerances) -> CheckResult {
    let mut ch = Check::new("harness.figures", tol.identity);
    for id in FigureId::ALL {
        let at = Point::default();
        let Some(a) = ch.ok(id.table(), at) else { continue };
        let Some(b) = ch.ok(id.table(), at) else { continue };
        ch.holds(a.to_csv() == b.to_csv(), 1.0, at, || format!("{} is not deterministic", id.name()));
        let finite = a.rows.iter().flatten().all(|v| v.is_finite() && (0.0..=1.0).contains(v));
        ch.holds(finite, 1.0, at, || format!("{} has a non-probability value", id.name()));
    }
    ch.finish()
}
