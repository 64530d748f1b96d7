//! 2×2 complex Hermitian operators and their closed-form eigendecomposition.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// A column vector in ℂ².
pub type Vec2 = [C64; 2];

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

pub(crate) fn norm_sqr(v: &Vec2) -> f64 {
    v[0].norm_sqr() + v[1].norm_sqr()
}

/// ⟨a|b⟩, conjugate-linear in the first argument.
pub(crate) fn braket(a: &Vec2, b: &Vec2) -> C64 {
    a[0].conj() * b[0] + a[1].conj() * b[1]
}

/// Rescales `v` to unit norm and fixes the global phase so that the first
/// nonzero amplitude is real and nonnegative.
pub(crate) fn canonical(v: Vec2) -> Vec2 {
    let n = norm_sqr(&v).sqrt();
    let mut out = [v[0] / n, v[1] / n];
    let lead = if out[0].norm() > 1e-15 { out[0] } else { out[1] };
    let phase = lead.conj() / lead.norm();
    out[0] *= phase;
    out[1] *= phase;
    // remove signed-zero / rounding residue in the imaginary part of the lead
    if out[0].norm() > 1e-15 {
        out[0] = C64::new(out[0].re, 0.0);
    } else {
        out[1] = C64::new(out[1].re, 0.0);
    }
    out
}

/// Spectral data of a 2×2 Hermitian operator; eigenvalues ascending.
#[derive(Debug, Clone, Copy)]
pub struct Eigen2 {
    pub values: [f64; 2],
    pub vectors: [Vec2; 2],
}

impl Eigen2 {
    pub fn max(&self) -> (f64, Vec2) {
        (self.values[1], self.vectors[1])
    }

    pub fn min(&self) -> (f64, Vec2) {
        (self.values[0], self.vectors[0])
    }

    pub fn gap(&self) -> f64 {
        self.values[1] - self.values[0]
    }
}

/// 2×2 complex Hermitian matrix.
///
/// The diagonal is stored as reals and the lower off-diagonal entry is implied,
/// so every value of this type is Hermitian by construction.
#[derive(Clone, Copy, PartialEq)]
pub struct Operator2 {
    d0: f64,
    d1: f64,
    off: C64,
}

impl Operator2 {
    pub const ZERO: Operator2 = Operator2 {
        d0: 0.0,
        d1: 0.0,
        off: ZERO,
    };
    pub const IDENTITY: Operator2 = Operator2 {
        d0: 1.0,
        d1: 1.0,
        off: ZERO,
    };

    pub fn diag(d0: f64, d1: f64) -> Self {
        Operator2 { d0, d1, off: ZERO }
    }

    pub fn pauli_x() -> Self {
        Operator2 {
            d0: 0.0,
            d1: 0.0,
            off: ONE,
        }
    }

    /// Builds an operator from four entries, checking Hermiticity.
    pub fn from_entries(m: [[C64; 2]; 2]) -> Result<Self> {
        let tol = Tolerances::DEFAULT.hermitian;
        let skew = (m[1][0] - m[0][1].conj()).norm();
        if m[0][0].im.abs() > tol || m[1][1].im.abs() > tol || skew > tol {
            return Err(Error::Invalid {
                what: "operator",
                detail: format!("not Hermitian (off-diagonal skew {skew:e})"),
            });
        }
        Ok(Operator2 {
            d0: m[0][0].re,
            d1: m[1][1].re,
            off: 0.5 * (m[0][1] + m[1][0].conj()),
        })
    }

    /// |v⟩⟨v| for any (not necessarily normalized) vector.
    pub fn outer(v: &Vec2) -> Self {
        Operator2 {
            d0: v[0].norm_sqr(),
            d1: v[1].norm_sqr(),
            off: v[0] * v[1].conj(),
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        match (row, col) {
            (0, 0) => C64::new(self.d0, 0.0),
            (1, 1) => C64::new(self.d1, 0.0),
            (0, 1) => self.off,
            (1, 0) => self.off.conj(),
            _ => panic!("Operator2 index ({row}, {col}) out of range"),
        }
    }

    pub fn entries(&self) -> [[C64; 2]; 2] {
        [
            [self.entry(0, 0), self.entry(0, 1)],
            [self.entry(1, 0), self.entry(1, 1)],
        ]
    }

    pub fn trace(&self) -> f64 {
        self.d0 + self.d1
    }

    pub fn det(&self) -> f64 {
        self.d0 * self.d1 - self.off.norm_sqr()
    }

    /// Tr[self · other], real for Hermitian factors.
    pub fn trace_product(&self, other: &Operator2) -> f64 {
        self.d0 * other.d0 + self.d1 * other.d1 + 2.0 * (self.off * other.off.conj()).re
    }

    /// ⟨v|self|v⟩.
    pub fn expectation(&self, v: &Vec2) -> f64 {
        self.d0 * v[0].norm_sqr() + self.d1 * v[1].norm_sqr() + 2.0 * (v[0].conj() * self.off * v[1]).re
    }

    pub fn apply(&self, v: &Vec2) -> Vec2 {
        [
            self.d0 * v[0] + self.off * v[1],
            self.off.conj() * v[0] + self.d1 * v[1],
        ]
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.d0.abs().max(self.d1.abs()).max(self.off.norm())
    }

    /// Largest entrywise deviation from `other`.
    pub fn max_abs_diff(&self, other: &Operator2) -> f64 {
        (*self - *other).max_abs()
    }

    /// Closed-form eigendecomposition.
    ///
    /// Eigenvalues are `m ± r` with `m` the mean of the diagonal and
    /// `r = sqrt(((d0 - d1)/2)² + |b|²)`. The top eigenvector is read off
    /// whichever row of `A − λ₊` is better conditioned; the bottom one is its
    /// orthogonal complement so the pair is exactly orthonormal. A multiple of
    /// the identity returns the computational basis.
    pub fn eigh(&self) -> Eigen2 {
        let mean = 0.5 * (self.d0 + self.d1);
        let half_diff = 0.5 * (self.d0 - self.d1);
        let r = half_diff.hypot(self.off.norm());
        if r == 0.0 {
            return Eigen2 {
                values: [mean, mean],
                vectors: [[ONE, ZERO], [ZERO, ONE]],
            };
        }
        let hi = mean + r;
        // Row 0 of (A - hi): (d0 - hi) v0 + b v1 = 0  =>  v = (b, hi - d0)
        // Row 1 of (A - hi): b* v0 + (d1 - hi) v1 = 0 =>  v = (hi - d1, b*)
        let cand0: Vec2 = [self.off, C64::new(hi - self.d0, 0.0)];
        let cand1: Vec2 = [C64::new(hi - self.d1, 0.0), self.off.conj()];
        let top = if norm_sqr(&cand0) >= norm_sqr(&cand1) {
            cand0
        } else {
            cand1
        };
        let top = canonical(top);
        let bottom = canonical([-top[1].conj(), top[0].conj()]);
        Eigen2 {
            values: [mean - r, hi],
            vectors: [bottom, top],
        }
    }

    pub fn min_eigenvalue(&self) -> f64 {
        0.5 * (self.d0 + self.d1) - (0.5 * (self.d0 - self.d1)).hypot(self.off.norm())
    }

    pub fn max_eigenvalue(&self) -> f64 {
        0.5 * (self.d0 + self.d1) + (0.5 * (self.d0 - self.d1)).hypot(self.off.norm())
    }

    /// Applies `f` to the spectrum.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> Operator2 {
        let e = self.eigh();
        Operator2::outer(&e.vectors[0]) * f(e.values[0]) + Operator2::outer(&e.vectors[1]) * f(e.values[1])
    }

    /// A^{-1/2} for a positive definite operator.
    pub fn inv_sqrt(&self) -> Result<Operator2> {
        let lo = self.min_eigenvalue();
        if lo <= 0.0 || !lo.is_finite() {
            return Err(Error::DegenerateEnsemble(format!(
                "operator is not positive definite (min eigenvalue {lo:e})"
            )));
        }
        Ok(self.map_spectrum(|x| 1.0 / x.sqrt()))
    }

    /// S·self·S for Hermitian S; the result is Hermitian.
    pub fn congruence(&self, s: &Operator2) -> Operator2 {
        let a = self.entries();
        let m = s.entries();
        let mut sa = [[ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                sa[i][j] = m[i][0] * a[0][j] + m[i][1] * a[1][j];
            }
        }
        let mut out = [[ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = sa[i][0] * m[0][j] + sa[i][1] * m[1][j];
            }
        }
        Operator2 {
            d0: out[0][0].re,
            d1: out[1][1].re,
            off: 0.5 * (out[0][1] + out[1][0].conj()),
        }
    }
}

impl fmt::Debug for Operator2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{:.6}, {:.6}{:+.6}i], [{:.6}{:+.6}i, {:.6}]]",
            self.d0, self.off.re, self.off.im, self.off.re, -self.off.im, self.d1
        )
    }
}

impl Add for Operator2 {
    type Output = Operator2;
    fn add(self, o: Operator2) -> Operator2 {
        Operator2 {
            d0: self.d0 + o.d0,
            d1: self.d1 + o.d1,
            off: self.off + o.off,
        }
    }
}

impl Sub for Operator2 {
    type Output = Operator2;
    fn sub(self, o: Operator2) -> Operator2 {
        Operator2 {
            d0: self.d0 - o.d0,
            d1: self.d1 - o.d1,
            off: self.off - o.off,
        }
    }
}

impl Neg for Operator2 {
    type Output = Operator2;
    fn neg(self) -> Operator2 {
        Operator2 {
            d0: -self.d0,
            d1: -self.d1,
            off: -self.off,
        }
    }
}

impl Mul<f64> for Operator2 {
    type Output = Operator2;
    fn mul(self, k: f64) -> Operator2 {
        Operator2 {
            d0: self.d0 * k,
            d1: self.d1 * k,
            off: self.off * k,
        }
    }
}

impl std::iter::Sum for Operator2 {
    fn sum<I: Iterator<Item = Operator2>>(iter: I) -> Operator2 {
        iter.fold(Operator2::ZERO, |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn op(d0: f64, d1: f64, re: f64, im: f64) -> Operator2 {
        Operator2 {
            d0,
            d1,
            off: C64::new(re, im),
        }
    }

    #[test]
    fn identity_is_degenerate_computational_basis() {
        let e = Operator2::IDENTITY.eigh();
        assert_eq!(e.values, [1.0, 1.0]);
        assert_eq!(e.vectors[0], [ONE, ZERO]);
    }

    #[test]
    fn pauli_x_spectrum() {
        let e = Operator2::pauli_x().eigh();
        assert!((e.values[0] + 1.0).abs() < 1e-15);
        assert!((e.values[1] - 1.0).abs() < 1e-15);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((e.vectors[1][0].re - s).abs() < 1e-15);
        assert!((e.vectors[1][1].re - s).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = [[ONE, C64::new(0.0, 1.0)], [C64::new(0.0, 1.0), ONE]];
        assert!(Operator2::from_entries(m).is_err());
        let m = [[ONE, C64::new(0.0, 1.0)], [C64::new(0.0, -1.0), ONE]];
        assert!(Operator2::from_entries(m).is_ok());
    }

    #[test]
    fn inv_sqrt_of_diagonal() {
        let s = Operator2::diag(4.0, 0.25).inv_sqrt().unwrap();
        assert!((s.entry(0, 0).re - 0.5).abs() < 1e-15);
        assert!((s.entry(1, 1).re - 2.0).abs() < 1e-15);
        assert!(Operator2::diag(1.0, 0.0).inv_sqrt().is_err());
    }

    proptest! {
        // Independent route: roots of the characteristic polynomial λ² − tλ + det.
        #[test]
        fn eigenvalues_match_characteristic_roots(
            d0 in -2.0f64..2.0, d1 in -2.0f64..2.0, re in -2.0f64..2.0, im in -2.0f64..2.0
        ) {
            let a = op(d0, d1, re, im);
            let t = a.trace();
            let disc = (t * t - 4.0 * a.det()).max(0.0).sqrt();
            let e = a.eigh();
            prop_assert!((e.values[0] - 0.5 * (t - disc)).abs() < 1e-9);
            prop_assert!((e.values[1] - 0.5 * (t + disc)).abs() < 1e-9);
        }

        #[test]
        fn eigenpairs_have_small_residual_and_are_orthonormal(
            d0 in -2.0f64..2.0, d1 in -2.0f64..2.0, re in -2.0f64..2.0, im in -2.0f64..2.0
        ) {
            let a = op(d0, d1, re, im);
            let e = a.eigh();
            for k in 0..2 {
                let v = e.vectors[k];
                let av = a.apply(&v);
                let res = ((av[0] - e.values[k] * v[0]).norm_sqr() + (av[1] - e.values[k] * v[1]).norm_sqr()).sqrt();
                prop_assert!(res < 1e-12, "residual {res}");
                prop_assert!((norm_sqr(&v) - 1.0).abs() < 1e-12);
            }
            prop_assert!(braket(&e.vectors[0], &e.vectors[1]).norm() < 1e-12);
            // spectral reconstruction
            let rebuilt = Operator2::outer(&e.vectors[0]) * e.values[0] + Operator2::outer(&e.vectors[1]) * e.values[1];
            prop_assert!(rebuilt.max_abs_diff(&a) < 1e-12);
        }

        #[test]
        fn congruence_matches_trace_identity(
            d0 in 0.1f64..2.0, d1 in 0.1f64..2.0, re in -0.05f64..0.05, im in -0.05f64..0.05,
            e0 in -1.0f64..1.0, e1 in -1.0f64..1.0, ere in -1.0f64..1.0, eim in -1.0f64..1.0
        ) {
            // Tr[S A S] = Tr[A S²]
            let s = op(d0, d1, re, im);
            let a = op(e0, e1, ere, eim);
            let lhs = a.congruence(&s).trace();
            let s2 = s.map_spectrum(|x| x * x);
            prop_assert!((lhs - a.trace_product(&s2)).abs() < 1e-12);
        }
    }
}
