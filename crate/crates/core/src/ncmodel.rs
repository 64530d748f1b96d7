//! Noncontextual side: the four-region ontological model.
//!
//! The ontic space is partitioned by the supports of the two epistemic states
//! and their mirrors. Preparation noncontextuality applied to the two
//! decompositions of the maximally mixed state, `½μ₁ + ½μ̄₁ = ½μ₂ + ½μ̄₂`,
//! pins the weights to
//!
//! ```text
//!            S12    S1m2   Sm12   Sm1m2
//!   μ₁        c     1−c     0      0
//!   μ₂        c      0     1−c     0
//!   μ̄₁        0      0     1−c     c
//!   μ̄₂        0     1−c     0      c
//! ```
//!
//! Every integral over Λ is piecewise constant on these regions, so the
//! model is exact at this resolution.
//!
//! Responses are restricted to those a measurement-noncontextual model can
//! assign to effects in the span of the four projectors: since
//! `P₁ + P̄₁ = P₂ + P̄₂`, linearity forces
//! `ξ(S12) + ξ(Sm1m2) = ξ(S1m2) + ξ(Sm12)`. Without this the box `[0,1]⁴`
//! contains responses that beat quantum theory.

use crate::error::{check_unit, Error, Result};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    /// supp μ₁ ∩ supp μ₂
    S12,
    /// supp μ₁ ∩ supp μ̄₂
    S1m2,
    /// supp μ̄₁ ∩ supp μ₂
    Sm12,
    /// supp μ̄₁ ∩ supp μ̄₂
    Sm1m2,
}

/// Which of the four pure preparations a support refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preparation {
    Psi1,
    Psi2,
    Mirror1,
    Mirror2,
}

impl Region {
    pub const ALL: [Region; 4] = [Region::S12, Region::S1m2, Region::Sm12, Region::Sm1m2];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Whether the region lies in the support of `prep` by construction.
    pub fn in_support(self, prep: Preparation) -> bool {
        use Preparation::*;
        use Region::*;
        matches!(
            (self, prep),
            (S12 | S1m2, Psi1) | (S12 | Sm12, Psi2) | (Sm12 | Sm1m2, Mirror1) | (S1m2 | Sm1m2, Mirror2)
        )
    }
}

/// Coefficients of the linearity constraint `ξ(S12) − ξ(S1m2) − ξ(Sm12) + ξ(Sm1m2) = 0`.
pub const LINEARITY: [f64; 4] = [1.0, -1.0, -1.0, 1.0];

/// Probability distribution over the four regions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpistemicState {
    weights: [f64; 4],
}

impl EpistemicState {
    pub fn new(weights: [f64; 4]) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if weights.iter().any(|w| w.is_nan() || *w < 0.0) || (total - 1.0).abs() > Tolerances::DEFAULT.normalization {
            return Err(Error::Invalid {
                what: "epistemic state",
                detail: format!("{weights:?}"),
            });
        }
        Ok(EpistemicState { weights })
    }

    pub fn weights(&self) -> [f64; 4] {
        self.weights
    }

    pub fn weight(&self, r: Region) -> f64 {
        self.weights[r.index()]
    }

    /// `a·self + b·other`, unchecked.
    fn mix(&self, a: f64, other: &EpistemicState, b: f64) -> EpistemicState {
        let mut weights = [0.0; 4];
        for (k, w) in weights.iter_mut().enumerate() {
            *w = a * self.weights[k] + b * other.weights[k];
        }
        EpistemicState { weights }
    }
}

/// Response function of one outcome, valued in `[0, 1]` per region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Response(pub [f64; 4]);

impl Response {
    pub const ZERO: Response = Response([0.0; 4]);
    pub const ONE: Response = Response([1.0; 4]);

    pub fn new(values: [f64; 4]) -> Result<Self> {
        let tol = Tolerances::DEFAULT.normalization;
        if values.iter().any(|v| !(*v >= -tol && *v <= 1.0 + tol)) {
            return Err(Error::Invalid {
                what: "response",
                detail: format!("{values:?} leaves [0, 1]"),
            });
        }
        Ok(Response(values.map(|v| v.clamp(0.0, 1.0))))
    }

    pub fn indicator(pred: impl Fn(Region) -> bool) -> Self {
        Response(Region::ALL.map(|r| if pred(r) { 1.0 } else { 0.0 }))
    }

    pub fn value(&self, r: Region) -> f64 {
        self.0[r.index()]
    }

    pub fn scaled(&self, k: f64) -> Response {
        Response(self.0.map(|v| v * k))
    }

    /// Residual of the linearity constraint; zero for admissible responses.
    pub fn linearity_defect(&self) -> f64 {
        self.0.iter().zip(LINEARITY).map(|(v, a)| v * a).sum()
    }
}

/// Responses for outcomes 1, 2 and the inconclusive outcome 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResponseSet {
    conclusive: [Response; 2],
    inconclusive: Response,
}

impl ResponseSet {
    /// Completes `ξ₀ = 1 − ξ₁ − ξ₂`; fails when that goes negative.
    pub fn from_conclusive(xi1: Response, xi2: Response) -> Result<Self> {
        let tol = Tolerances::DEFAULT.normalization;
        let mut xi0 = [0.0; 4];
        for (k, slot) in xi0.iter_mut().enumerate() {
            let rest = 1.0 - xi1.0[k] - xi2.0[k];
            if rest < -tol {
                return Err(Error::InfeasibleWeights(format!(
                    "inconclusive response {rest} < 0 on {:?}",
                    Region::ALL[k]
                )));
            }
            *slot = rest.clamp(0.0, 1.0);
        }
        Ok(ResponseSet {
            conclusive: [xi1, xi2],
            inconclusive: Response(xi0),
        })
    }

    pub fn new(xi1: Response, xi2: Response, xi0: Response) -> Result<Self> {
        let rs = ResponseSet {
            conclusive: [xi1, xi2],
            inconclusive: xi0,
        };
        let dev = rs.normalization_defect();
        if dev > Tolerances::DEFAULT.normalization {
            return Err(Error::Invalid {
                what: "response set",
                detail: format!("outcomes sum to 1 only within {dev:e}"),
            });
        }
        Ok(rs)
    }

    /// ξᵢ for `i ∈ {1, 2}`.
    pub fn conclusive(&self, i: usize) -> Response {
        self.conclusive[i - 1]
    }

    pub fn inconclusive(&self) -> Response {
        self.inconclusive
    }

    /// Largest pointwise deviation of `ξ₁ + ξ₂ + ξ₀` from 1.
    pub fn normalization_defect(&self) -> f64 {
        (0..4)
            .map(|k| (self.conclusive[0].0[k] + self.conclusive[1].0[k] + self.inconclusive.0[k] - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// The canonical states of the four-region model at confusability `c` and noise `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NcScenario {
    pub c: f64,
    pub p: f64,
    pub mu: [EpistemicState; 2],
    pub mirror: [EpistemicState; 2],
    /// Representation of 𝟙/2, identical for both decompositions.
    pub maximally_mixed: EpistemicState,
    /// `(1−p)μᵢ + p·μ_{𝟙/2}`.
    pub noisy: [EpistemicState; 2],
}

impl NcScenario {
    /// The two states being discriminated.
    pub fn ensemble(&self, noisy: bool) -> [EpistemicState; 2] {
        if noisy {
            self.noisy
        } else {
            self.mu
        }
    }
}

pub fn canonical_scenario(c: f64, p: f64) -> Result<NcScenario> {
    check_unit("c", c)?;
    check_unit("p", p)?;
    let d = 1.0 - c;
    let mu1 = EpistemicState::new([c, d, 0.0, 0.0])?;
    let mu2 = EpistemicState::new([c, 0.0, d, 0.0])?;
    let bar1 = EpistemicState::new([0.0, 0.0, d, c])?;
    let bar2 = EpistemicState::new([0.0, d, 0.0, c])?;
    let half = mu1.mix(0.5, &bar1, 0.5);
    let noisy = [mu1.mix(1.0 - p, &half, p), mu2.mix(1.0 - p, &half, p)];
    Ok(NcScenario {
        c,
        p,
        mu: [mu1, mu2],
        mirror: [bar1, bar2],
        maximally_mixed: half,
        noisy,
    })
}

/// ∫ dλ μ(λ) ξ(λ).
pub fn nc_prob(mu: &EpistemicState, xi: &Response) -> f64 {
    mu.weights.iter().zip(xi.0).map(|(w, x)| w * x).sum()
}

/// Mass of `b` on the support of `a`.
pub fn confusability(a: &EpistemicState, b: &EpistemicState) -> f64 {
    a.weights
        .iter()
        .zip(b.weights)
        .filter(|(wa, _)| **wa > 0.0)
        .map(|(_, wb)| wb)
        .sum()
}

/// Mixture `ω M₁ + (1−ω) M₂` of the two minimum-error strategies, where `M₁`
/// answers 1 exactly on supp μ₁ and `M₂` answers 2 exactly on supp μ₂.
pub fn mesd_mixed_strategy(omega: f64) -> Result<ResponseSet> {
    check_unit("omega", omega)?;
    let xi1 = Response::new([omega, 1.0, 0.0, 1.0 - omega])?;
    let xi2 = Response::new([1.0 - omega, 0.0, 1.0, omega])?;
    ResponseSet::new(xi1, xi2, Response::ZERO)
}

/// `ξ₁ = γ₁` on supp μ̄₂, `ξ₂ = γ₂` on supp μ̄₁, zero elsewhere.
pub fn usd_response(gamma1: f64, gamma2: f64) -> Result<ResponseSet> {
    check_unit("gamma1", gamma1)?;
    check_unit("gamma2", gamma2)?;
    if gamma1 + gamma2 > 1.0 + Tolerances::DEFAULT.normalization {
        return Err(Error::InfeasibleWeights(format!(
            "gamma1 + gamma2 = {} exceeds 1",
            gamma1 + gamma2
        )));
    }
    ResponseSet::from_conclusive(usd_form_direction(1).scaled(gamma1), usd_form_direction(2).scaled(gamma2))
}

/// Indicator of the mirror support opposite to outcome `i`: supp μ̄₂ for 1, supp μ̄₁ for 2.
pub fn usd_form_direction(i: usize) -> Response {
    let target = if i == 1 {
        Preparation::Mirror2
    } else {
        Preparation::Mirror1
    };
    Response::indicator(|r| r.in_support(target))
}

/// Figures of merit for an equiprobable binary ensemble.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NcFigures {
    pub pg: f64,
    pub p0: f64,
    /// `None` when the outcome never occurs.
    pub confidence: [Option<f64>; 2],
}

impl NcFigures {
    pub fn confidence(&self, i: usize) -> Result<f64> {
        self.confidence[i - 1].ok_or(Error::UndefinedConfidence { outcome: i })
    }
}

/// Confidence of outcome `i` for response `xi`, or `None` if it never fires.
fn confidence_of(states: &[EpistemicState; 2], i: usize, xi: &Response) -> Option<f64> {
    let own = 0.5 * nc_prob(&states[i - 1], xi);
    let total = own + 0.5 * nc_prob(&states[2 - i], xi);
    (total > Tolerances::DEFAULT.zero_probability).then(|| own / total)
}

pub fn nc_figures(scn: &NcScenario, rs: &ResponseSet, noisy: bool) -> NcFigures {
    let st = scn.ensemble(noisy);
    let pg = 0.5 * (nc_prob(&st[0], &rs.conclusive(1)) + nc_prob(&st[1], &rs.conclusive(2)));
    let xi0 = rs.inconclusive();
    let p0 = 0.5 * (nc_prob(&st[0], &xi0) + nc_prob(&st[1], &xi0));
    NcFigures {
        pg,
        p0,
        confidence: [
            confidence_of(&st, 1, &rs.conclusive(1)),
            confidence_of(&st, 2, &rs.conclusive(2)),
        ],
    }
}

/// Closed-form confidences of the ω-mixed minimum-error strategy.
///
/// At `c = 1` both arms equal ½ (the canonical-model value for every ω with
/// both outcomes occurring).
pub fn nc_mesd_confidences(c: f64, omega: f64) -> Result<(f64, f64)> {
    check_unit("c", c)?;
    check_unit("omega", omega)?;
    if c == 1.0 {
        return Ok((0.5, 0.5));
    }
    let c1 = (1.0 - (1.0 - omega) * c) / (1.0 - (1.0 - 2.0 * omega) * c);
    let c2 = (1.0 - omega * c) / (1.0 + (1.0 - 2.0 * omega) * c);
    Ok((c1, c2))
}

/// Smallest ω for which the Helstrom confidence beats arm 1 of the mixed strategy:
/// `(1−c)(1−√(1−c)) / (2c√(1−c))`, evaluated as `√(1−c) / (2(1+√(1−c)))`,
/// which also covers the `c → 0` limit of ¼.
pub fn omega_star(c: f64) -> Result<f64> {
    check_unit("c", c)?;
    if c >= 1.0 {
        return Err(Error::Singular("omega* is undefined at c = 1: every confidence equals 1/2".into()));
    }
    let s = (1.0 - c).sqrt();
    Ok(s / (2.0 * (1.0 + s)))
}

/// `½(1 − p/2 − (1−p)c)`.
pub fn nc_mcm_guessing(c: f64, p: f64) -> Result<f64> {
    check_unit("c", c)?;
    check_unit("p", p)?;
    Ok(0.5 * (1.0 - 0.5 * p - (1.0 - p) * c))
}

/// Maximum guessing probability over the box `{ξ ≥ 0, ξ₁ + ξ₂ ≤ 1}`.
///
/// Linear objective, so the optimum sits at a vertex: each region independently
/// answers 1, answers 2 or abstains, `3⁴ = 81` assignments. The first maximizer
/// in enumeration order is returned.
pub fn oracle_max_pg(scn: &NcScenario, noisy: bool) -> (ResponseSet, f64) {
    const CHOICES: [(f64, f64); 3] = [(1.0, 0.0), (0.0, 1.0), (0.0, 0.0)];
    let st = scn.ensemble(noisy);
    let mut best: Option<([f64; 4], [f64; 4], f64)> = None;
    for code in 0..81usize {
        let mut xi1 = [0.0; 4];
        let mut xi2 = [0.0; 4];
        let mut rest = code;
        for k in 0..4 {
            let (a, b) = CHOICES[rest % 3];
            rest /= 3;
            xi1[k] = a;
            xi2[k] = b;
        }
        let pg = 0.5 * (nc_prob(&st[0], &Response(xi1)) + nc_prob(&st[1], &Response(xi2)));
        if best.is_none_or(|(_, _, b)| pg > b) {
            best = Some((xi1, xi2, pg));
        }
    }
    let (xi1, xi2, pg) = best.expect("81 candidates");
    let rs = ResponseSet::from_conclusive(Response(xi1), Response(xi2)).expect("vertex is normalized");
    (rs, pg)
}

/// Vertices of `[0,1]⁴ ∩ {ξ : LINEARITY·ξ = 0}`, zero vector first.
///
/// A vertex has at least three active box constraints; each choice of free
/// coordinate and 0/1 pattern on the others is solved for the free value and
/// kept if it lands in `[0, 1]`.
pub fn response_polytope_vertices() -> Vec<Response> {
    let mut out: Vec<Response> = Vec::new();
    for free in 0..4 {
        for pattern in 0..8u32 {
            let mut x = [0.0; 4];
            let mut bit = 0;
            let mut partial = 0.0;
            for (k, xk) in x.iter_mut().enumerate() {
                if k == free {
                    continue;
                }
                *xk = f64::from((pattern >> bit) & 1);
                bit += 1;
                partial += LINEARITY[k] * *xk;
            }
            let v = -partial / LINEARITY[free];
            if !(-1e-12..=1.0 + 1e-12).contains(&v) {
                continue;
            }
            x[free] = v.clamp(0.0, 1.0);
            if !out.iter().any(|r| r.0.iter().zip(x).all(|(a, b)| (a - b).abs() < 1e-12)) {
                out.push(Response(x));
            }
        }
    }
    out.sort_by(|a, b| {
        let ka: f64 = a.0.iter().sum();
        let kb: f64 = b.0.iter().sum();
        ka.total_cmp(&kb).then_with(|| b.0.partial_cmp(&a.0).unwrap())
    });
    out
}

/// Confidence of outcome `i` at each admissible vertex with nonzero outcome probability,
/// paired with that probability.
fn vertex_confidences(scn: &NcScenario, outcome: usize, noisy: bool) -> Vec<(Response, f64, f64)> {
    let st = scn.ensemble(noisy);
    response_polytope_vertices()
        .into_iter()
        .filter_map(|v| {
            let prob = 0.5 * (nc_prob(&st[0], &v) + nc_prob(&st[1], &v));
            confidence_of(&st, outcome, &v).map(|c| (v, c, prob))
        })
        .collect()
}

fn check_outcome(outcome: usize) -> Result<()> {
    if outcome == 1 || outcome == 2 {
        Ok(())
    } else {
        Err(Error::Contract(format!("outcome {outcome} is not conclusive")))
    }
}

/// Maximum confidence of one outcome over all admissible responses.
///
/// The confidence is linear-fractional in ξ with a positive denominator, so
/// it is maximized at a vertex of the response polytope. Ties within
/// [`Tolerances::face`] go to the vertex with the larger outcome probability,
/// then to enumeration order.
pub fn oracle_max_confidence(scn: &NcScenario, outcome: usize, noisy: bool) -> Result<(Response, f64)> {
    check_outcome(outcome)?;
    let face_tol = Tolerances::DEFAULT.face;
    let cands = vertex_confidences(scn, outcome, noisy);
    let best = cands.iter().map(|(_, c, _)| *c).fold(f64::NEG_INFINITY, f64::max);
    let (v, c, _) = cands
        .into_iter()
        .filter(|(_, c, _)| best - c <= face_tol)
        .fold(None::<(Response, f64, f64)>, |acc, cand| match acc {
            Some(a) if a.2 >= cand.2 => Some(a),
            _ => Some(cand),
        })
        .expect("the all-ones vertex always fires");
    Ok((v, c))
}

/// Vertices attaining the maximum confidence of `outcome` within [`Tolerances::face`].
pub fn maximizer_face(scn: &NcScenario, outcome: usize, noisy: bool) -> Result<Vec<Response>> {
    let (_, best) = oracle_max_confidence(scn, outcome, noisy)?;
    let tol = Tolerances::DEFAULT.face;
    Ok(vertex_confidences(scn, outcome, noisy)
        .into_iter()
        .filter(|(_, c, _)| best - c <= tol)
        .map(|(v, _, _)| v)
        .collect())
}

/// Maximizes `obj·γ` over `{γ : aₖ·γ ≤ bₖ}` by enumerating pairwise
/// intersections of constraint lines. Returns the optimum and the centroid of
/// all optimal vertices.
fn maximize_2d(obj: [f64; 2], cons: &[([f64; 2], f64)]) -> Option<([f64; 2], f64)> {
    let feasible = |g: [f64; 2]| cons.iter().all(|(a, b)| a[0] * g[0] + a[1] * g[1] <= b + 1e-12);
    let mut verts: Vec<[f64; 2]> = Vec::new();
    for (i, (a, b)) in cons.iter().enumerate() {
        for (c, d) in &cons[i + 1..] {
            let det = a[0] * c[1] - a[1] * c[0];
            if det.abs() < 1e-14 {
                continue;
            }
            let g = [(b * c[1] - a[1] * d) / det, (a[0] * d - b * c[0]) / det];
            if feasible(g) && !verts.iter().any(|v| (v[0] - g[0]).abs() < 1e-12 && (v[1] - g[1]).abs() < 1e-12) {
                verts.push(g);
            }
        }
    }
    let value = |g: &[f64; 2]| obj[0] * g[0] + obj[1] * g[1];
    let best = verts.iter().map(value).fold(f64::NEG_INFINITY, f64::max);
    let opt: Vec<&[f64; 2]> = verts.iter().filter(|g| best - value(g) <= 1e-12).collect();
    if opt.is_empty() {
        return None;
    }
    let n = opt.len() as f64;
    let centroid = [
        opt.iter().map(|g| g[0]).sum::<f64>() / n,
        opt.iter().map(|g| g[1]).sum::<f64>() / n,
    ];
    Some((centroid, best))
}

/// Minimum inconclusive rate among response sets whose conclusive confidences
/// both attain their noncontextual maximum, on the noisy states.
///
/// Each ξᵢ is restricted to multiples `γᵢ·uᵢ` of its unambiguous-form
/// direction `uᵢ` ([`usd_form_direction`]), which is first checked to lie on
/// the maximizer face. The remaining problem, `min P₀(γ₁, γ₂)` subject to
/// `0 ≤ γ ≤ 1` and `ξ₀ ≥ 0` on every region, is a two-variable LP solved by
/// vertex enumeration. When the optimum is an edge its midpoint is returned,
/// so both outcomes occur.
pub fn oracle_min_p0_at_max_confidence(scn: &NcScenario) -> Result<(ResponseSet, f64)> {
    let st = scn.ensemble(true);
    let tol = Tolerances::DEFAULT;
    let dirs = [usd_form_direction(1), usd_form_direction(2)];
    // Outcomes whose direction never fires (c = 1, p = 0) carry no confidence to match.
    let mut best_conf = [None; 2];
    for i in 1..=2 {
        let Some(c) = confidence_of(&st, i, &dirs[i - 1]) else {
            continue;
        };
        let (_, best) = oracle_max_confidence(scn, i, true)?;
        if best - c > tol.face {
            return Err(Error::Contract(format!(
                "unambiguous-form direction of outcome {i} is not confidence-maximal ({c} < {best})"
            )));
        }
        best_conf[i - 1] = Some(best);
    }
    // P₀ = 1 − γ₁ w₁ − γ₂ w₂ with wᵢ the average-state mass of uᵢ.
    let avg = |d: &Response| 0.5 * (nc_prob(&st[0], d) + nc_prob(&st[1], d));
    let w = [avg(&dirs[0]), avg(&dirs[1])];
    let mut cons = vec![
        ([-1.0, 0.0], 0.0),
        ([0.0, -1.0], 0.0),
        ([1.0, 0.0], 1.0),
        ([0.0, 1.0], 1.0),
    ];
    for r in Region::ALL {
        let a = [dirs[0].value(r), dirs[1].value(r)];
        if a != [0.0, 0.0] {
            cons.push((a, 1.0));
        }
    }
    let (g, _) = maximize_2d(w, &cons).ok_or_else(|| Error::Contract("empty weight polygon".into()))?;
    let rs = ResponseSet::from_conclusive(dirs[0].scaled(g[0]), dirs[1].scaled(g[1]))?;
    let figs = nc_figures(scn, &rs, true);
    for i in 1..=2 {
        match (figs.confidence[i - 1], best_conf[i - 1]) {
            (_, None) => {}
            (Some(c), Some(best)) if (c - best).abs() <= tol.face => {}
            (other, _) => {
                return Err(Error::Contract(format!(
                    "optimal response loses the maximal confidence on outcome {i}: {other:?}"
                )))
            }
        }
    }
    Ok((rs, figs.p0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn mcnc(c: f64, p: f64) -> f64 {
        let k = 1.0 - p;
        0.5 * (1.0 + k * (1.0 - c) / (1.0 - k * c))
    }

    #[test]
    fn canonical_examples() {
        let s = canonical_scenario(0.0, 0.0).unwrap();
        assert_eq!(s.mu[0].weights(), [0.0, 1.0, 0.0, 0.0]);
        assert_eq!(s.mu[1].weights(), [0.0, 0.0, 1.0, 0.0]);
        let s = canonical_scenario(1.0, 0.0).unwrap();
        assert_eq!(s.mu[0].weights(), [1.0, 0.0, 0.0, 0.0]);
        assert_eq!(s.mu[0], s.mu[1]);
        let s = canonical_scenario(0.5, 0.0).unwrap();
        assert_eq!(s.maximally_mixed.weights(), [0.25; 4]);
        assert!(canonical_scenario(1.2, 0.0).is_err());
    }

    #[test]
    fn mirror_equivalence_is_exact() {
        for k in 0..=100 {
            let c = k as f64 / 100.0;
            let s = canonical_scenario(c, 0.3).unwrap();
            let a = s.mu[0].mix(0.5, &s.mirror[0], 0.5);
            let b = s.mu[1].mix(0.5, &s.mirror[1], 0.5);
            assert_eq!(a, b);
            // μ₁ = μ₂ on the overlap region
            assert_eq!(s.mu[0].weight(Region::S12), s.mu[1].weight(Region::S12));
        }
    }

    #[test]
    fn supports_match_weights() {
        let s = canonical_scenario(0.4, 0.0).unwrap();
        let states = [
            (Preparation::Psi1, s.mu[0]),
            (Preparation::Psi2, s.mu[1]),
            (Preparation::Mirror1, s.mirror[0]),
            (Preparation::Mirror2, s.mirror[1]),
        ];
        for (prep, st) in states {
            for r in Region::ALL {
                assert_eq!(r.in_support(prep), st.weight(r) > 0.0, "{prep:?} {r:?}");
            }
        }
    }

    #[test]
    fn nc_prob_examples() {
        let s = canonical_scenario(0.3, 0.0).unwrap();
        assert!(close(nc_prob(&s.mu[0], &Response::ONE), 1.0, 1e-15));
        assert_eq!(nc_prob(&s.mu[0], &Response::ZERO), 0.0);
        let supp1 = Response::indicator(|r| r.in_support(Preparation::Psi1));
        assert!(close(nc_prob(&s.mu[1], &supp1), 0.3, 1e-15));
    }

    #[test]
    fn confusability_examples() {
        for k in 0..=100 {
            let c = k as f64 / 100.0;
            let s = canonical_scenario(c, 0.0).unwrap();
            assert!(close(confusability(&s.mu[0], &s.mu[1]), c, 1e-15));
            assert!(close(confusability(&s.mu[1], &s.mu[0]), c, 1e-15));
            assert_eq!(confusability(&s.mu[0], &s.mirror[0]), 0.0);
            assert!(close(confusability(&s.mu[0], &s.mirror[1]), 1.0 - c, 1e-15));
        }
    }

    #[test]
    fn mixed_strategy_examples() {
        let m1 = mesd_mixed_strategy(1.0).unwrap();
        assert_eq!(m1.conclusive(1), Response::indicator(|r| r.in_support(Preparation::Psi1)));
        let m2 = mesd_mixed_strategy(0.0).unwrap();
        assert_eq!(m2.conclusive(2), Response::indicator(|r| r.in_support(Preparation::Psi2)));
        let half = mesd_mixed_strategy(0.5).unwrap();
        assert_eq!(half.conclusive(1).0, [0.5, 1.0, 0.0, 0.5]);
        assert!(mesd_mixed_strategy(1.1).is_err());
        for k in 0..=10 {
            let rs = mesd_mixed_strategy(k as f64 / 10.0).unwrap();
            assert_eq!(rs.normalization_defect(), 0.0);
            assert_eq!(rs.conclusive(1).linearity_defect(), 0.0);
        }
    }

    #[test]
    fn usd_response_examples() {
        let rs = usd_response(0.5, 0.5).unwrap();
        assert_eq!(rs.inconclusive().0, [1.0, 0.5, 0.5, 0.0]);
        let rs = usd_response(1.0, 0.0).unwrap();
        assert_eq!(rs.conclusive(1).0, [0.0, 1.0, 0.0, 1.0]);
        assert!(matches!(usd_response(0.7, 0.6), Err(Error::InfeasibleWeights(_))));
        for c in [0.0, 0.25, 0.5, 0.9] {
            let s = canonical_scenario(c, 0.0).unwrap();
            let f = nc_figures(&s, &usd_response(0.5, 0.5).unwrap(), false);
            assert!(close(f.p0, 0.5 * (1.0 + c), 1e-15));
        }
    }

    #[test]
    fn nc_figures_examples() {
        for c in [0.0, 0.2, 0.5, 0.8] {
            let s = canonical_scenario(c, 0.0).unwrap();
            for k in 0..=100 {
                let f = nc_figures(&s, &mesd_mixed_strategy(k as f64 / 100.0).unwrap(), false);
                assert!(close(f.pg, 1.0 - c / 2.0, 1e-12));
            }
            let f = nc_figures(&s, &mesd_mixed_strategy(1.0).unwrap(), false);
            assert!(close(f.confidence(1).unwrap(), 1.0 / (1.0 + c), 1e-12));
            assert!(close(f.confidence(2).unwrap(), 1.0, 1e-12));
        }
        let s = canonical_scenario(0.5, 0.75).unwrap();
        let f = nc_figures(&s, &usd_response(0.5, 0.5).unwrap(), true);
        assert!(close(f.p0, 0.5 * (1.0 + 0.25 * 0.5), 1e-15));
        // outcome that never fires
        let s = canonical_scenario(1.0, 0.0).unwrap();
        let f = nc_figures(&s, &mesd_mixed_strategy(0.0).unwrap(), false);
        assert_eq!(f.confidence[0], None);
        assert_eq!(f.confidence(1), Err(Error::UndefinedConfidence { outcome: 1 }));
    }

    #[test]
    fn mesd_confidence_closed_forms() {
        for c in [0.0, 0.3, 0.5, 0.99] {
            let (a, b) = nc_mesd_confidences(c, 0.5).unwrap();
            assert!(close(a, 1.0 - c / 2.0, 1e-15) && close(b, 1.0 - c / 2.0, 1e-15));
            let (a, b) = nc_mesd_confidences(c, 0.0).unwrap();
            assert!(close(a, 1.0, 1e-15) && close(b, 1.0 / (1.0 + c), 1e-15));
        }
        let (a, _) = nc_mesd_confidences(0.5, 0.2071).unwrap();
        assert!(close(a, 0.85355, 1e-5));
        assert_eq!(nc_mesd_confidences(1.0, 0.3).unwrap(), (0.5, 0.5));
    }

    #[test]
    fn omega_star_examples() {
        assert!(close(omega_star(0.5).unwrap(), 0.207_106_781_186_547_5, 1e-12));
        // the unsimplified form, away from the endpoint
        let c: f64 = 0.5;
        let direct = (1.0 - c) * (1.0 - (1.0 - c).sqrt()) / (2.0 * c * (1.0 - c).sqrt());
        assert!(close(omega_star(c).unwrap(), direct, 1e-15));
        assert!(close(omega_star(1e-6).unwrap(), 0.25, 1e-4));
        assert_eq!(omega_star(0.0).unwrap(), 0.25);
        assert!(omega_star(1.0).is_err());
        for k in 1..100 {
            assert!(omega_star(k as f64 / 100.0).unwrap() <= 0.5);
        }
    }

    #[test]
    fn omega_star_matches_bisection_crossing() {
        for c in [0.1f64, 0.5, 0.9] {
            let helstrom = 0.5 * (1.0 + (1.0 - c).sqrt());
            let (mut lo, mut hi) = (0.0, 1.0);
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if nc_mesd_confidences(c, mid).unwrap().0 <= helstrom {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            assert!(close(hi, omega_star(c).unwrap(), 1e-10));
        }
    }

    #[test]
    fn vertex_enumeration_finds_the_projector_responses() {
        let v = response_polytope_vertices();
        let want: Vec<[f64; 4]> = vec![
            [0.0, 0.0, 0.0, 0.0],
            [1.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 1.0],
            [1.0, 1.0, 1.0, 1.0],
        ];
        assert_eq!(v.len(), want.len());
        for w in want {
            assert!(v.iter().any(|r| r.0 == w), "{w:?} missing");
        }
        assert!(v.iter().all(|r| r.linearity_defect() == 0.0));
    }

    #[test]
    fn oracle_max_pg_examples() {
        for (c, want) in [(0.5, 0.75), (0.0, 1.0), (1.0, 0.5)] {
            let s = canonical_scenario(c, 0.0).unwrap();
            let (rs, pg) = oracle_max_pg(&s, false);
            assert!(close(pg, want, 1e-12));
            assert!(close(nc_figures(&s, &rs, false).pg, pg, 1e-15));
        }
    }

    #[test]
    fn oracle_max_confidence_examples() {
        let s = canonical_scenario(0.4, 0.0).unwrap();
        let (v, c) = oracle_max_confidence(&s, 1, false).unwrap();
        assert!(close(c, 1.0, 1e-12));
        assert_eq!(v, usd_form_direction(1));
        let s = canonical_scenario(0.5, 0.75).unwrap();
        for i in 1..=2 {
            let (_, c) = oracle_max_confidence(&s, i, true).unwrap();
            assert!(close(c, 4.0 / 7.0, 1e-12));
        }
        let s = canonical_scenario(0.5, 1.0).unwrap();
        let (_, c) = oracle_max_confidence(&s, 1, true).unwrap();
        assert!(close(c, 0.5, 1e-12));
        assert!(oracle_max_confidence(&s, 0, true).is_err());
    }

    #[test]
    fn bare_box_would_overshoot_the_bound() {
        // Indicator of S1m2 alone is outside the admissible polytope and beats the noncontextual bound.
        let s = canonical_scenario(0.5, 0.75).unwrap();
        let lone = Response([0.0, 1.0, 0.0, 0.0]);
        let c = confidence_of(&s.noisy, 1, &lone).unwrap();
        assert!(close(c, 0.625, 1e-12));
        assert!(c > mcnc(0.5, 0.75));
        assert!(lone.linearity_defect() != 0.0);
    }

    #[test]
    fn oracle_min_p0_examples() {
        let s = canonical_scenario(0.5, 0.75).unwrap();
        let (rs, p0) = oracle_min_p0_at_max_confidence(&s).unwrap();
        assert!(close(p0, 0.5625, 1e-9));
        assert!(rs.normalization_defect() < 1e-12);
        for c in [0.0, 0.3, 0.99, 1.0] {
            let s = canonical_scenario(c, 0.0).unwrap();
            let (_, p0) = oracle_min_p0_at_max_confidence(&s).unwrap();
            assert!(close(p0, 0.5 * (1.0 + c), 1e-9), "c = {c}: {p0}");
        }
        let s = canonical_scenario(0.0, 0.6).unwrap();
        let (_, p0) = oracle_min_p0_at_max_confidence(&s).unwrap();
        assert!(close(p0, 0.5, 1e-9));
    }

    #[test]
    fn hand_integrals() {
        for (c, g1, g2) in [(0.3, 0.2, 0.5), (0.7, 0.9, 0.1), (0.0, 0.4, 0.4)] {
            let s = canonical_scenario(c, 0.0).unwrap();
            let xi0 = usd_response(g1, g2).unwrap().inconclusive();
            assert!(close(nc_prob(&s.mu[0], &xi0), 1.0 - g1 + g1 * c, 1e-12));
            assert!(close(nc_prob(&s.mu[1], &xi0), 1.0 - g2 + g2 * c, 1e-12));
            assert!(close(nc_prob(&s.maximally_mixed, &xi0), 1.0 - 0.5 * (g1 + g2), 1e-12));
        }
    }

    #[test]
    fn mcm_guessing_examples() {
        assert!(close(nc_mcm_guessing(0.5, 0.5).unwrap(), 0.25, 1e-15));
        for c in [0.0, 0.4, 1.0] {
            assert!(close(nc_mcm_guessing(c, 0.0).unwrap(), 0.5 * (1.0 - c), 1e-15));
        }
        for p in [0.0, 0.5, 1.0] {
            let pg = nc_mcm_guessing(0.0, p).unwrap();
            assert!(close(pg, 0.5 * (1.0 - p / 2.0), 1e-15));
            let p0 = 0.5;
            assert!(close(pg, (1.0 - p0) * mcnc(0.0, p), 1e-12));
        }
    }
}
