//! Quantum side: qubit states, the depolarized binary ensemble, optimal
//! discrimination measurements and the three figures of merit.
//!
//! Figures of merit for an ensemble `{qᵢ, ρᵢ}` and POVM `{πⱼ}`:
//!
//! ```text
//! P_g  = Σᵢ qᵢ Tr[ρᵢ πᵢ]
//! P_0  = Tr[ρ π₀],            ρ = Σᵢ qᵢ ρᵢ
//! C(i) = qᵢ Tr[ρᵢ πᵢ] / Tr[ρ πᵢ]
//! ```

use std::fmt;

use num_complex::Complex64 as C64;

use crate::error::{check_unit, Error, Result};
use crate::linalg::{braket, canonical, norm_sqr, Operator2, Vec2};
use crate::tolerance::Tolerances;

/// Normalized qubit ray `amp0|0⟩ + amp1|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState {
    amp0: C64,
    amp1: C64,
}

impl PureState {
    pub fn new(amp0: C64, amp1: C64) -> Result<Self> {
        let n = norm_sqr(&[amp0, amp1]);
        if (n - 1.0).abs() > Tolerances::DEFAULT.normalization {
            return Err(Error::Invalid {
                what: "pure state",
                detail: format!("|amp0|² + |amp1|² = {n}"),
            });
        }
        Ok(PureState { amp0, amp1 })
    }

    /// `cos(half)|0⟩ + sign·sin(half)|1⟩` with real amplitudes.
    pub fn real(half: f64, sign: f64) -> Self {
        PureState {
            amp0: C64::new(half.cos(), 0.0),
            amp1: C64::new(sign * half.sin(), 0.0),
        }
    }

    pub fn zero() -> Self {
        PureState {
            amp0: C64::new(1.0, 0.0),
            amp1: C64::new(0.0, 0.0),
        }
    }

    pub fn one() -> Self {
        PureState {
            amp0: C64::new(0.0, 0.0),
            amp1: C64::new(1.0, 0.0),
        }
    }

    pub(crate) fn from_vec(v: Vec2) -> Self {
        let v = canonical(v);
        PureState { amp0: v[0], amp1: v[1] }
    }

    pub fn amplitudes(&self) -> Vec2 {
        [self.amp0, self.amp1]
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &PureState) -> C64 {
        braket(&self.amplitudes(), &other.amplitudes())
    }

    pub fn overlap_sq(&self, other: &PureState) -> f64 {
        self.inner(other).norm_sqr()
    }

    pub fn projector(&self) -> Operator2 {
        Operator2::outer(&self.amplitudes())
    }

    /// Equality of rays, i.e. up to a global phase.
    pub fn same_ray(&self, other: &PureState, tol: f64) -> bool {
        (1.0 - self.overlap_sq(other)).abs() <= tol
    }
}

/// The pair `cos(θ/2)|0⟩ ∓ sin(θ/2)|1⟩`, whose inner product is `cos θ`.
pub fn make_pure_pair(theta: f64) -> Result<(PureState, PureState)> {
    check_theta(theta)?;
    let half = 0.5 * theta;
    Ok((PureState::real(half, -1.0), PureState::real(half, 1.0)))
}

/// The state orthogonal to `state`, phase-fixed so its first nonzero amplitude
/// is real and nonnegative.
pub fn mirror(state: &PureState) -> PureState {
    let a = state.amplitudes();
    PureState::from_vec([-a[1].conj(), a[0].conj()])
}

/// Half-angle `θ` such that `cos²θ = c`, on `[0, π/2]`.
pub fn theta_from_confusability(c: f64) -> Result<f64> {
    check_unit("c", c)?;
    Ok(overlap_from_confusability(c).acos())
}

/// `|⟨ψ₁|ψ₂⟩|` from the confusability `c = |⟨ψ₁|ψ₂⟩|²`.
///
/// Every quantum closed form written in terms of the overlap modulus goes
/// through this conversion.
pub fn overlap_from_confusability(c: f64) -> f64 {
    c.max(0.0).sqrt()
}

fn check_theta(theta: f64) -> Result<f64> {
    if theta.is_finite() && (0.0..=std::f64::consts::PI).contains(&theta) {
        Ok(theta)
    } else {
        Err(Error::Domain {
            name: "theta",
            value: theta,
            range: "[0, π]",
        })
    }
}

/// Prior-weighted set of density operators built from a pure pair under
/// depolarizing noise.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    priors: Vec<f64>,
    states: Vec<Operator2>,
    pure: Vec<PureState>,
    noise: f64,
    overlap_sq: f64,
    theta: Option<f64>,
}

impl Ensemble {
    /// `ρᵢ = (1−p)|ψᵢ⟩⟨ψᵢ| + p·𝟙/2` with the given priors.
    pub fn depolarized(priors: Vec<f64>, pure: Vec<PureState>, p: f64) -> Result<Self> {
        check_unit("p", p)?;
        if priors.len() != pure.len() || priors.len() < 2 {
            return Err(Error::Contract(format!(
                "{} priors for {} states",
                priors.len(),
                pure.len()
            )));
        }
        let tol = Tolerances::DEFAULT;
        let total: f64 = priors.iter().sum();
        if priors.iter().any(|q| !(0.0..=1.0).contains(q)) || (total - 1.0).abs() > tol.normalization {
            return Err(Error::Invalid {
                what: "priors",
                detail: format!("{priors:?} do not form a distribution"),
            });
        }
        let half_id = Operator2::IDENTITY * 0.5;
        let states: Vec<Operator2> = pure
            .iter()
            .map(|s| s.projector() * (1.0 - p) + half_id * p)
            .collect();
        for rho in &states {
            if rho.min_eigenvalue() < -tol.psd || (rho.trace() - 1.0).abs() > tol.normalization {
                return Err(Error::Invalid {
                    what: "density operator",
                    detail: format!("{rho:?}"),
                });
            }
        }
        let overlap_sq = pure[0].overlap_sq(&pure[1]);
        Ok(Ensemble {
            priors,
            states,
            pure,
            noise: p,
            overlap_sq,
            theta: None,
        })
    }

    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    pub fn states(&self) -> &[Operator2] {
        &self.states
    }

    pub fn pure_states(&self) -> &[PureState] {
        &self.pure
    }

    pub fn noise(&self) -> f64 {
        self.noise
    }

    /// `c = |⟨ψ₁|ψ₂⟩|²` of the underlying pure pair.
    pub fn overlap_sq(&self) -> f64 {
        self.overlap_sq
    }

    /// The `θ` of [`make_pure_pair`] when the ensemble was built from it.
    pub fn theta(&self) -> Option<f64> {
        self.theta
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn is_pure(&self) -> bool {
        self.noise == 0.0
    }

    pub fn is_equiprobable(&self) -> bool {
        let q = 1.0 / self.len() as f64;
        self.priors.iter().all(|x| (x - q).abs() <= Tolerances::DEFAULT.normalization)
    }

    /// ρ = Σ qᵢ ρᵢ.
    pub fn average_state(&self) -> Operator2 {
        self.priors
            .iter()
            .zip(&self.states)
            .map(|(q, rho)| *rho * *q)
            .sum()
    }
}

/// Equiprobable pair from [`make_pure_pair`] with depolarizing noise `p`.
pub fn noisy_ensemble(theta: f64, p: f64) -> Result<Ensemble> {
    let (a, b) = make_pure_pair(theta)?;
    let mut ens = Ensemble::depolarized(vec![0.5, 0.5], vec![a, b], p)?;
    ens.theta = Some(theta);
    Ok(ens)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OutcomeLabel {
    /// Guess state `i` (1-based).
    Conclusive(usize),
    Inconclusive,
}

impl fmt::Display for OutcomeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutcomeLabel::Conclusive(i) => write!(f, "conclusive-{i}"),
            OutcomeLabel::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// A validated POVM: positive elements summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    outcomes: Vec<(OutcomeLabel, Operator2)>,
}

impl Povm {
    pub fn new(outcomes: Vec<(OutcomeLabel, Operator2)>) -> Result<Self> {
        let tol = Tolerances::DEFAULT;
        for (k, (label, el)) in outcomes.iter().enumerate() {
            if matches!(label, OutcomeLabel::Conclusive(0)) {
                return Err(Error::Contract("conclusive labels are 1-based".into()));
            }
            if outcomes[..k].iter().any(|(l, _)| l == label) {
                return Err(Error::Contract(format!("duplicate outcome {label}")));
            }
            let lo = el.min_eigenvalue();
            if lo < -tol.psd {
                return Err(Error::Invalid {
                    what: "POVM element",
                    detail: format!("{label} has eigenvalue {lo:e}"),
                });
            }
        }
        let total: Operator2 = outcomes.iter().map(|(_, e)| *e).sum();
        let dev = total.max_abs_diff(&Operator2::IDENTITY);
        if dev > tol.completeness {
            return Err(Error::Invalid {
                what: "POVM",
                detail: format!("elements sum to identity only within {dev:e}"),
            });
        }
        Ok(Povm { outcomes })
    }

    pub fn outcomes(&self) -> &[(OutcomeLabel, Operator2)] {
        &self.outcomes
    }

    pub fn element(&self, label: OutcomeLabel) -> Option<&Operator2> {
        self.outcomes.iter().find(|(l, _)| *l == label).map(|(_, e)| e)
    }

    /// πᵢ, or the zero operator when the outcome is absent.
    pub fn conclusive(&self, i: usize) -> Operator2 {
        self.element(OutcomeLabel::Conclusive(i))
            .copied()
            .unwrap_or(Operator2::ZERO)
    }

    /// π₀, or the zero operator when the outcome is absent.
    pub fn inconclusive(&self) -> Operator2 {
        self.element(OutcomeLabel::Inconclusive)
            .copied()
            .unwrap_or(Operator2::ZERO)
    }

    fn check_labels(&self, ens: &Ensemble) -> Result<()> {
        for (label, _) in &self.outcomes {
            if let OutcomeLabel::Conclusive(i) = label {
                if *i > ens.len() {
                    return Err(Error::Contract(format!(
                        "outcome {label} has no state in a {}-state ensemble",
                        ens.len()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// P_M(i) = Tr[ρ πᵢ].
pub fn outcome_probability(ens: &Ensemble, m: &Povm, label: OutcomeLabel) -> f64 {
    m.element(label)
        .map(|e| ens.average_state().trace_product(e))
        .unwrap_or(0.0)
}

/// P_{M|P}(j|i) = Tr[ρᵢ πⱼ] for 1-based `i`.
pub fn conditional_probability(ens: &Ensemble, m: &Povm, label: OutcomeLabel, prepared: usize) -> f64 {
    m.element(label)
        .map(|e| ens.states[prepared - 1].trace_product(e))
        .unwrap_or(0.0)
}

pub fn guessing_probability(ens: &Ensemble, m: &Povm) -> Result<f64> {
    m.check_labels(ens)?;
    Ok(ens
        .priors
        .iter()
        .zip(&ens.states)
        .enumerate()
        .map(|(k, (q, rho))| q * rho.trace_product(&m.conclusive(k + 1)))
        .sum())
}

pub fn inconclusive_rate(ens: &Ensemble, m: &Povm) -> f64 {
    ens.average_state().trace_product(&m.inconclusive())
}

/// Retrodictive probability that state `i` was prepared given outcome `i`.
pub fn confidence(ens: &Ensemble, m: &Povm, i: usize) -> Result<f64> {
    m.check_labels(ens)?;
    if i == 0 || i > ens.len() {
        return Err(Error::Contract(format!("no state {i} in a {}-state ensemble", ens.len())));
    }
    let pi = m.conclusive(i);
    let total = ens.average_state().trace_product(&pi);
    if total <= Tolerances::DEFAULT.zero_probability {
        return Err(Error::UndefinedConfidence { outcome: i });
    }
    Ok(ens.priors[i - 1] * ens.states[i - 1].trace_product(&pi) / total)
}

fn require_binary(ens: &Ensemble) -> Result<()> {
    if ens.len() != 2 {
        return Err(Error::Contract(format!("binary ensemble required, got {} states", ens.len())));
    }
    Ok(())
}

/// Projective measurement onto the positive and non-positive eigenspaces of
/// `q₁ρ₁ − q₂ρ₂`.
///
/// When that operator vanishes the computational basis is returned.
pub fn helstrom_povm(ens: &Ensemble) -> Result<Povm> {
    require_binary(ens)?;
    let gamma = ens.states[0] * ens.priors[0] - ens.states[1] * ens.priors[1];
    let pi1 = if gamma.max_abs() <= 1e-14 {
        PureState::zero().projector()
    } else {
        let e = gamma.eigh();
        e.values
            .iter()
            .zip(&e.vectors)
            .filter(|(v, _)| **v > 0.0)
            .map(|(_, vec)| Operator2::outer(vec))
            .sum()
    };
    Povm::new(vec![
        (OutcomeLabel::Conclusive(1), pi1),
        (OutcomeLabel::Conclusive(2), Operator2::IDENTITY - pi1),
    ])
}

fn with_inconclusive(pi1: Operator2, pi2: Operator2) -> Result<Povm> {
    let pi0 = Operator2::IDENTITY - pi1 - pi2;
    let lo = pi0.min_eigenvalue();
    if lo < -Tolerances::DEFAULT.psd {
        return Err(Error::InfeasibleWeights(format!(
            "inconclusive element has eigenvalue {lo:e}"
        )));
    }
    Povm::new(vec![
        (OutcomeLabel::Conclusive(1), pi1),
        (OutcomeLabel::Conclusive(2), pi2),
        (OutcomeLabel::Inconclusive, pi0),
    ])
}

/// πᵢ = γᵢ |ψ̄ⱼ⟩⟨ψ̄ⱼ| (j ≠ i) on a pure binary ensemble.
pub fn usd_povm(ens: &Ensemble, gamma1: f64, gamma2: f64) -> Result<Povm> {
    require_binary(ens)?;
    if !ens.is_pure() {
        return Err(Error::Contract("unambiguous discrimination needs a pure ensemble (p = 0)".into()));
    }
    check_unit("gamma1", gamma1)?;
    check_unit("gamma2", gamma2)?;
    let [m1, m2] = usd_directions(ens);
    with_inconclusive(m1.projector() * gamma1, m2.projector() * gamma2)
}

/// Directions of the unambiguous elements: `|ψ̄₂⟩` for outcome 1, `|ψ̄₁⟩` for outcome 2.
pub fn usd_directions(ens: &Ensemble) -> [PureState; 2] {
    [mirror(&ens.pure[1]), mirror(&ens.pure[0])]
}

/// Largest `x` in `[0, 1]` with `feasible(x)`, assuming feasibility is
/// monotone and `feasible(0)` holds.
pub fn bisect_max_feasible(feasible: impl Fn(f64) -> bool, tol: &Tolerances) -> f64 {
    if feasible(1.0) {
        return 1.0;
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..tol.bisection_max_iter {
        if hi - lo <= tol.bisection {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if feasible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Weight scale `w` maximal subject to `𝟙 − w·sum ⪰ 0`.
fn max_scale(sum: &Operator2) -> f64 {
    let tol = Tolerances::DEFAULT;
    bisect_max_feasible(|w| (Operator2::IDENTITY - *sum * w).min_eigenvalue() >= 0.0, &tol)
}

/// Minimum-inconclusive unambiguous measurement for an equiprobable pure pair.
///
/// The symmetric weight is pushed up by bisection on the smallest eigenvalue
/// of π₀. Returns the POVM and its inconclusive rate.
pub fn usd_optimal(ens: &Ensemble) -> Result<(Povm, f64)> {
    require_binary(ens)?;
    if !ens.is_pure() {
        return Err(Error::Contract("unambiguous discrimination needs a pure ensemble (p = 0)".into()));
    }
    if !ens.is_equiprobable() {
        return Err(Error::Contract("optimal weights are only provided for equal priors".into()));
    }
    if 1.0 - ens.overlap_sq <= Tolerances::DEFAULT.normalization {
        return Err(Error::UsdImpossible);
    }
    let [m1, m2] = usd_directions(ens);
    let gamma = max_scale(&(m1.projector() + m2.projector()));
    let povm = usd_povm(ens, gamma, gamma)?;
    let rate = inconclusive_rate(ens, &povm);
    Ok((povm, rate))
}

/// How the conclusive directions of a maximum-confidence measurement are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirectionRule {
    /// `ρ^{-1/2}` applied to the top eigenvector of `ρ^{-1/2} ρᵢ ρ^{-1/2}`.
    Eigen,
    /// `cos(φ/2)|0⟩ ± sin(φ/2)|1⟩` with
    /// `tan φ = p cos θ √((1 − p² cos²θ)/(1 − cos²θ))`. Kept only for comparison:
    /// as `p → 0` it tends to `φ = 0` rather than the unambiguous directions.
    TanPhi,
}

/// The angle of the [`DirectionRule::TanPhi`] formula.
pub fn tan_phi_angle(theta: f64, p: f64) -> f64 {
    let c = theta.cos();
    let tan = p * c * ((1.0 - p * p * c * c) / (1.0 - c * c)).sqrt();
    tan.atan()
}

fn top_direction(op: &Operator2, s: &Operator2) -> Option<PureState> {
    let t = op.congruence(s);
    let e = t.eigh();
    if e.gap() <= 1e-12 * t.max_abs().max(1.0) {
        return None;
    }
    Some(PureState::from_vec(s.apply(&e.max().1)))
}

/// Conclusive directions `|φ₁⟩, |φ₂⟩` of the maximum-confidence measurement.
///
/// Where `ρ^{-1/2}ρᵢρ^{-1/2}` is a multiple of the identity (`p = 1`, or
/// identical states) the direction is taken from the limit: the top eigenvector
/// of `ρ^{-1/2}(Pᵢ − Pⱼ)ρ^{-1/2}`, and for coinciding pure states the
/// θ-derivative `∓σx` of `P₁ − P₂` in the [`make_pure_pair`] family.
pub fn mcm_directions(ens: &Ensemble, rule: DirectionRule) -> Result<[PureState; 2]> {
    require_binary(ens)?;
    match rule {
        DirectionRule::TanPhi => {
            let theta = ens
                .theta
                .ok_or_else(|| Error::Contract("the angle formula needs a θ-parameterized ensemble".into()))?;
            let half = 0.5 * tan_phi_angle(theta, ens.noise);
            Ok([PureState::real(half, -1.0), PureState::real(half, 1.0)])
        }
        DirectionRule::Eigen => {
            let rho = ens.average_state();
            if rho.det() <= 1e-14 {
                return Err(Error::DegenerateEnsemble("average state is singular".into()));
            }
            let s = rho.inv_sqrt()?;
            let mut out = [PureState::zero(); 2];
            for (i, slot) in out.iter_mut().enumerate() {
                let j = 1 - i;
                let sign = if i == 0 { -1.0 } else { 1.0 };
                let diff = ens.pure[i].projector() - ens.pure[j].projector();
                let dir = top_direction(&ens.states[i], &s)
                    .or_else(|| top_direction(&diff, &s))
                    .or_else(|| {
                        ens.theta
                            .and_then(|_| top_direction(&(Operator2::pauli_x() * sign), &s))
                    })
                    .ok_or_else(|| {
                        Error::DegenerateEnsemble("identical states carry no preferred direction".into())
                    })?;
                *slot = dir;
            }
            Ok(out)
        }
    }
}

fn mcm_ensemble(theta: f64, p: f64) -> Result<Ensemble> {
    check_theta(theta)?;
    check_unit("p", p)?;
    let ens = noisy_ensemble(theta, p)?;
    if ens.average_state().det() <= 1e-14 {
        return Err(Error::DegenerateEnsemble(format!(
            "average state is singular at theta = {theta}, p = {p}"
        )));
    }
    Ok(ens)
}

/// Maximum-confidence POVM `πᵢ = α|φᵢ⟩⟨φᵢ|`, `π₀ = 𝟙 − π₁ − π₂`.
pub fn mcm_povm(theta: f64, p: f64, alpha: f64) -> Result<Povm> {
    mcm_povm_with(theta, p, alpha, DirectionRule::Eigen)
}

pub fn mcm_povm_with(theta: f64, p: f64, alpha: f64, rule: DirectionRule) -> Result<Povm> {
    let ens = mcm_ensemble(theta, p)?;
    check_unit("alpha", alpha)?;
    let [a, b] = mcm_directions(&ens, rule)?;
    with_inconclusive(a.projector() * alpha, b.projector() * alpha)
}

/// Largest feasible `α` for the maximum-confidence directions.
pub fn mcm_alpha_max(theta: f64, p: f64) -> Result<f64> {
    let ens = mcm_ensemble(theta, p)?;
    let [a, b] = mcm_directions(&ens, DirectionRule::Eigen)?;
    Ok(max_scale(&(a.projector() + b.projector())))
}

/// Maximum-confidence measurement with the inconclusive rate minimized over `α`.
pub fn mcm_optimal(theta: f64, p: f64) -> Result<(Povm, f64)> {
    let ens = mcm_ensemble(theta, p)?;
    let alpha = mcm_alpha_max(theta, p)?;
    let povm = mcm_povm(theta, p, alpha)?;
    let rate = inconclusive_rate(&ens, &povm);
    Ok((povm, rate))
}
