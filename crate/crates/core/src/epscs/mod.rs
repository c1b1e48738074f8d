//! Epsilon coherent states `|z; ν; ε>` of the symmetric Pöschl–Teller
//! oscillator on `[0, π]`.
//!
//! A state family is fixed by [`Params`] `(γ, ν, ε)`. The state labelled by
//! `z = r e^{iθ}` has coefficients
//! `c_n(z) = e^{-inθ} L_n^{(γ-1)}(r²) / sqrt(σ_{γ,ε}(n))` on the eigenbasis
//! `φ_n^ν`, and inner products are antilinear in the first slot.

mod measure;
mod norm;
mod overlap;
mod transform;
mod wavefunction;

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{ensure_finite, Error, Result};
use crate::specfun::{laguerre_fill, ln_factorial, ln_gamma};

pub use measure::{measure_density, target_measure_density};
pub use norm::{
    extrapolate_to_zero, normalization_integral, normalization_limit, normalization_series,
};
pub use overlap::{hille_hardy, hille_hardy_series, overlap, overlap_kernel, overlap_series};
pub use transform::{cs_transform, transform_limit};
pub use wavefunction::{
    closed_form_wavefunction, series_wavefunction, square_well_wavefunction, BranchPolicy,
    CoherentState,
};

/// Largest `ln σ` accepted before reporting overflow.
const LOG_MAX: f64 = 709.0;

/// Number of terms beyond which series states are cut off.
pub const MAX_SERIES_TERMS: usize = 2000;

/// The triple `(γ, ν, ε)` of a coherent-state family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    pub gamma: f64,
    pub nu: f64,
    pub epsilon: f64,
}

impl Params {
    pub fn new(gamma: f64, nu: f64, epsilon: f64) -> Result<Self> {
        ensure_finite("params", "gamma", gamma)?;
        ensure_finite("params", "nu", nu)?;
        ensure_finite("params", "epsilon", epsilon)?;
        if gamma <= 0.0 {
            return Err(Error::domain(
                "params",
                format!("requires gamma > 0, got {gamma}"),
            ));
        }
        if nu <= -1.0 {
            return Err(Error::domain(
                "params",
                format!("requires nu > -1, got {nu}"),
            ));
        }
        if epsilon < 0.0 {
            return Err(Error::domain(
                "params",
                format!("requires epsilon >= 0, got {epsilon}"),
            ));
        }
        Ok(Params { gamma, nu, epsilon })
    }

    /// The family with `γ = 2(ν+1)`, the one with a closed-form wavefunction.
    pub fn matched(nu: f64, epsilon: f64) -> Result<Self> {
        Self::new(2.0 * (nu + 1.0), nu, epsilon)
    }

    pub fn is_matched(&self) -> bool {
        (self.gamma - 2.0 * (self.nu + 1.0)).abs() <= 1e-12 * self.gamma
    }

    pub fn with_epsilon(self, epsilon: f64) -> Result<Self> {
        Self::new(self.gamma, self.nu, epsilon)
    }

    pub(crate) fn require_positive_epsilon(&self, op: &'static str) -> Result<()> {
        if self.epsilon > 0.0 {
            Ok(())
        } else {
            Err(Error::domain(
                op,
                format!("requires epsilon > 0, got {}", self.epsilon),
            ))
        }
    }
}

/// A label `z = r e^{iθ}` with `r >= 0` and `θ` in `[0, 2π)`; `θ = 0` when
/// `r = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub r: f64,
    pub theta: f64,
}

impl PhasePoint {
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        ensure_finite("phase_point", "r", r)?;
        ensure_finite("phase_point", "theta", theta)?;
        if r < 0.0 {
            return Err(Error::domain(
                "phase_point",
                format!("requires r >= 0, got {r}"),
            ));
        }
        if r == 0.0 {
            return Ok(PhasePoint { r, theta: 0.0 });
        }
        let mut theta = theta.rem_euclid(TAU);
        if theta >= TAU {
            theta = 0.0;
        }
        Ok(PhasePoint { r, theta })
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Self::new(z.norm(), z.arg())
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(self.r, self.theta)
    }

    /// `z z̄ = r²`.
    pub fn modulus_sqr(&self) -> f64 {
        self.r * self.r
    }
}

/// One coefficient `c_n(z)` of a state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsCoefficient {
    pub n: usize,
    pub value: Complex64,
}

/// `ln σ_{γ,ε}(n)`, unchecked.
pub(crate) fn ln_sigma(p: &Params, n: usize) -> f64 {
    let nf = n as f64;
    ln_gamma(p.gamma + nf) - ln_gamma(p.gamma) - ln_factorial(n)
        + (0.5 * p.gamma + nf).ln()
        + nf * p.epsilon
}

/// `ln σ_{γ,ε}(n)` where `σ(n) = Γ(γ+n) (γ/2+n) e^{nε} / (n! Γ(γ))`.
pub fn log_sigma(p: &Params, n: usize) -> f64 {
    ln_sigma(p, n)
}

/// `σ_{γ,ε}(n)`, reporting overflow instead of returning infinity.
pub fn sigma(p: &Params, n: usize) -> Result<f64> {
    let l = ln_sigma(p, n);
    if l > LOG_MAX {
        return Err(Error::Overflow {
            op: "sigma",
            n,
            log_value: l,
        });
    }
    Ok(l.exp())
}

/// `|c_0|², |c_1|², ...` magnitudes and Laguerre values for `count` terms.
fn weights(p: &Params, r2: f64, count: usize) -> (Vec<f64>, Vec<f64>) {
    let mut lag = vec![0.0; count];
    laguerre_fill(p.gamma - 1.0, r2, &mut lag);
    let inv_sqrt_sigma = (0..count).map(|n| (-0.5 * ln_sigma(p, n)).exp()).collect();
    (lag, inv_sqrt_sigma)
}

/// The first `count` coefficients of the state `|z>`.
pub fn cs_coefficients(p: &Params, z: &PhasePoint, count: usize) -> Result<Vec<CsCoefficient>> {
    p.require_positive_epsilon("cs_coefficients")?;
    let (lag, inv) = weights(p, z.modulus_sqr(), count);
    Ok((0..count)
        .map(|n| CsCoefficient {
            n,
            value: Complex64::from_polar(lag[n] * inv[n], -(n as f64) * z.theta),
        })
        .collect())
}

/// Number of terms after which `|L_N(r²)|²/σ(N)` has stayed below
/// `cutoff` times the partial norm for eight consecutive terms. Capped at
/// [`MAX_SERIES_TERMS`] with a warning.
pub fn series_length_with(p: &Params, z: &PhasePoint, cutoff: f64) -> usize {
    const QUIET: usize = 8;
    let r2 = z.modulus_sqr();
    let alpha = p.gamma - 1.0;
    let (mut l0, mut l1) = (1.0, alpha + 1.0 - r2);
    let mut partial = 0.0;
    let mut quiet = 0;
    for n in 0..MAX_SERIES_TERMS {
        let ln = if n == 0 { l0 } else { l1 };
        let w = ln * ln * (-ln_sigma(p, n)).exp();
        partial += w;
        if w < cutoff * partial {
            quiet += 1;
            if quiet >= QUIET {
                return n + 1;
            }
        } else {
            quiet = 0;
        }
        if n >= 1 {
            let k = n as f64;
            let next = ((2.0 * k + alpha + 1.0 - r2) * l1 - (k + alpha) * l0) / (k + 1.0);
            l0 = l1;
            l1 = next;
        }
    }
    log::warn!(
        "series state truncated at {MAX_SERIES_TERMS} terms (gamma={}, epsilon={}, r={})",
        p.gamma,
        p.epsilon,
        z.r
    );
    MAX_SERIES_TERMS
}

/// [`series_length_with`] at the default cutoff `1e-18`.
pub fn series_length(p: &Params, z: &PhasePoint) -> usize {
    series_length_with(p, z, 1e-18)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{laguerre, pochhammer};
    use std::f64::consts::PI;

    #[test]
    fn sigma_values() {
        let p = Params::new(2.0, 0.0, 0.0).unwrap();
        assert!((sigma(&p, 3).unwrap() - 16.0).abs() < 1e-12);
        for &g in &[0.5, 1.0, 3.7] {
            let p = Params::new(g, 0.0, 0.3).unwrap();
            assert!((sigma(&p, 0).unwrap() - g / 2.0).abs() < 1e-15);
            for n in 0..50 {
                let nf = n as f64;
                let ratio = sigma(&p, n + 1).unwrap() / sigma(&p, n).unwrap();
                let want =
                    (g + nf) * (g / 2.0 + nf + 1.0) * 0.3f64.exp() / ((nf + 1.0) * (g / 2.0 + nf));
                assert!((ratio - want).abs() < 1e-12 * want);
            }
        }
    }

    #[test]
    fn sigma_overflow_is_reported() {
        let p = Params::new(2.0, 0.0, 5.0).unwrap();
        match sigma(&p, 500) {
            Err(Error::Overflow { n, log_value, .. }) => {
                assert_eq!(n, 500);
                assert!(log_value > 709.0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn phase_point_convention() {
        let z = PhasePoint::new(0.0, 1.3).unwrap();
        assert_eq!(z.theta, 0.0);
        let z = PhasePoint::new(1.0, -PI / 2.0).unwrap();
        assert!((z.theta - 1.5 * PI).abs() < 1e-15);
        assert!(PhasePoint::new(-1.0, 0.0).is_err());
        let w = PhasePoint::from_complex(Complex64::new(0.0, 2.0)).unwrap();
        assert!((w.r - 2.0).abs() < 1e-15 && (w.theta - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn params_guards() {
        assert!(Params::new(0.0, 0.0, 0.1).is_err());
        assert!(Params::new(1.0, -1.0, 0.1).is_err());
        assert!(Params::new(1.0, 0.0, -0.1).is_err());
        assert!(Params::matched(1.0, 0.1).unwrap().is_matched());
        let p = Params::new(3.0, 0.0, 0.0).unwrap();
        assert!(cs_coefficients(&p, &PhasePoint::new(1.0, 0.0).unwrap(), 3).is_err());
    }

    #[test]
    fn coefficients_at_origin() {
        let p = Params::new(3.0, 1.0, 0.2).unwrap();
        let z = PhasePoint::new(0.0, 0.0).unwrap();
        let c = cs_coefficients(&p, &z, 10).unwrap();
        assert!((c[0].value.re - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        for (n, cn) in c.iter().enumerate() {
            let want = pochhammer(3.0, n) / pochhammer(1.0, n) / sigma(&p, n).unwrap().sqrt();
            assert!((cn.value.re - want).abs() < 1e-13 * want && cn.value.im == 0.0);
        }
    }

    #[test]
    fn coefficient_phase_covariance() {
        let p = Params::new(2.5, 0.0, 0.1).unwrap();
        let a = cs_coefficients(&p, &PhasePoint::new(1.7, 0.4).unwrap(), 20).unwrap();
        let b = cs_coefficients(&p, &PhasePoint::new(1.7, 0.4 + 0.9).unwrap(), 20).unwrap();
        for n in 0..20 {
            let shifted = a[n].value * Complex64::from_polar(1.0, -(n as f64) * 0.9);
            assert!((shifted - b[n].value).norm() < 1e-13 * a[n].value.norm().max(1e-300));
            let l = laguerre(n, 1.5, 1.7 * 1.7).unwrap();
            assert!((a[n].value.norm() - l.abs() / sigma(&p, n).unwrap().sqrt()).abs() < 1e-13);
        }
    }

    #[test]
    fn truncation_grows_as_epsilon_shrinks() {
        let z = PhasePoint::new(2.0, 0.0).unwrap();
        let a = series_length(&Params::new(2.0, 0.0, 0.5).unwrap(), &z);
        let b = series_length(&Params::new(2.0, 0.0, 0.1).unwrap(), &z);
        assert!(a < b && b < MAX_SERIES_TERMS, "{a} {b}");
        let c = series_length(&Params::new(2.0, 0.0, 1e-4).unwrap(), &z);
        assert_eq!(c, MAX_SERIES_TERMS);
    }
}
