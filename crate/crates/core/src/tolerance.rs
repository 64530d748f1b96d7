//! Central tolerance record.
//!
//! Library constructors validate against [`Tolerances::DEFAULT`]. The
//! verification harness takes a runtime copy, which the `CTXSD_TOL`
//! environment variable may override.

use crate::error::{Error, Result};

pub const ENV_VAR: &str = "CTXSD_TOL";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Normalization of states, epistemic states and response sets.
    pub normalization: f64,
    /// Hermiticity of 2×2 operators.
    pub hermitian: f64,
    /// Smallest admissible eigenvalue of a POVM element or density operator (negated).
    pub psd: f64,
    /// Entrywise deviation of a POVM sum from the identity.
    pub completeness: f64,
    /// Interval width at which feasibility bisection stops.
    pub bisection: f64,
    pub bisection_max_iter: usize,
    /// Strictness threshold for advantage flags.
    pub gap: f64,
    /// Membership of a vertex in the maximizer face of a linear-fractional objective.
    pub face: f64,
    /// Outcome probabilities at or below this are treated as zero.
    pub zero_probability: f64,
    /// Agreement between a numerical construction and its closed form.
    pub construction: f64,
    /// Agreement between algebraically identical routes.
    pub identity: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        normalization: 1e-12,
        hermitian: 1e-12,
        psd: 1e-10,
        completeness: 1e-10,
        bisection: 1e-12,
        bisection_max_iter: 200,
        gap: 1e-12,
        face: 1e-10,
        zero_probability: 1e-15,
        construction: 1e-9,
        identity: 1e-12,
    };

    /// Reads `CTXSD_TOL`, falling back to the defaults when unset.
    pub fn from_env() -> Result<Self> {
        match std::env::var(ENV_VAR) {
            Ok(s) => Self::DEFAULT.with_overrides(&s),
            Err(std::env::VarError::NotPresent) => Ok(Self::DEFAULT),
            Err(e) => Err(Error::Usage(format!("{ENV_VAR}: {e}"))),
        }
    }

    /// Applies an override string.
    ///
    /// A bare number replaces every comparison threshold; otherwise the string is a
    /// comma-separated list of `field=value` pairs.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Ok(self);
        }
        if let Ok(v) = spec.parse::<f64>() {
            let v = nonneg(ENV_VAR, v)?;
            self.normalization = v;
            self.hermitian = v;
            self.psd = v;
            self.completeness = v;
            self.gap = v;
            self.face = v;
            self.construction = v;
            self.identity = v;
            return Ok(self);
        }
        for pair in spec.split(',') {
            let (key, val) = pair
                .split_once('=')
                .ok_or_else(|| Error::Usage(format!("{ENV_VAR}: expected key=value, got {pair:?}")))?;
            let key = key.trim();
            let val = val.trim();
            if key == "bisection_max_iter" {
                self.bisection_max_iter = val
                    .parse()
                    .map_err(|_| Error::Usage(format!("{ENV_VAR}: bad integer {val:?}")))?;
                continue;
            }
            let v: f64 = val
                .parse()
                .map_err(|_| Error::Usage(format!("{ENV_VAR}: bad number {val:?}")))?;
            let v = nonneg(ENV_VAR, v)?;
            let slot = match key {
                "normalization" => &mut self.normalization,
                "hermitian" => &mut self.hermitian,
                "psd" => &mut self.psd,
                "completeness" => &mut self.completeness,
                "bisection" => &mut self.bisection,
                "gap" => &mut self.gap,
                "face" => &mut self.face,
                "zero_probability" => &mut self.zero_probability,
                "construction" => &mut self.construction,
                "identity" => &mut self.identity,
                other => return Err(Error::Usage(format!("{ENV_VAR}: unknown field {other:?}"))),
            };
            *slot = v;
        }
        Ok(self)
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}

fn nonneg(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(Error::Usage(format!("{name}: tolerance must be a finite non-negative number, got {v}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_number_overrides_comparisons_only() {
        let t = Tolerances::DEFAULT.with_overrides("1e-3").unwrap();
        assert_eq!(t.construction, 1e-3);
        assert_eq!(t.identity, 1e-3);
        assert_eq!(t.bisection, Tolerances::DEFAULT.bisection);
        assert_eq!(t.bisection_max_iter, 200);
    }

    #[test]
    fn keyed_overrides() {
        let t = Tolerances::DEFAULT
            .with_overrides("gap=0.5, bisection_max_iter=10")
            .unwrap();
        assert_eq!(t.gap, 0.5);
        assert_eq!(t.bisection_max_iter, 10);
        assert_eq!(t.face, 1e-10);
    }

    #[test]
    fn rejects_garbage() {
        assert!(Tolerances::DEFAULT.with_overrides("gap").is_err());
        assert!(Tolerances::DEFAULT.with_overrides("nope=1").is_err());
        assert!(Tolerances::DEFAULT.with_overrides("-1").is_err());
    }
}
