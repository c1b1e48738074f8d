//! The coherent-state transform `φ ↦ sqrt(N_ε(z)) <φ|z; ν; ε>` along a
//! decreasing sequence of `ε`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::wavefunction::{amplitude, BranchPolicy};
use super::{Params, PhasePoint};
use crate::error::{Error, Result};
use crate::quad::Quad;
use crate::specfun::{laguerre, ln_factorial, ln_gamma};

/// `sqrt(N_{2(ν+1),ε}(z)) ∫_0^π conj(φ(x)) <x|z; ν; ε> dx` for each `ε` of
/// the schedule. The normalization cancels against the closed form, so no
/// normalization is evaluated.
pub fn cs_transform<F, V>(
    nu: f64,
    phi: F,
    z: &PhasePoint,
    eps_schedule: &[f64],
) -> Result<Vec<Complex64>>
where
    F: Fn(f64) -> V,
    V: Into<Complex64>,
{
    if eps_schedule.is_empty() {
        return Err(Error::domain("cs_transform", "empty epsilon schedule"));
    }
    if eps_schedule.iter().any(|e| !(*e > 0.0) || !e.is_finite()) {
        return Err(Error::domain(
            "cs_transform",
            "epsilon values must be positive",
        ));
    }
    if eps_schedule.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::domain(
            "cs_transform",
            "epsilon schedule must be strictly decreasing",
        ));
    }
    if nu < 0.0 {
        return Err(Error::domain(
            "cs_transform",
            format!("requires nu >= 0, got {nu}"),
        ));
    }
    eps_schedule
        .iter()
        .map(|&eps| {
            let p = Params::matched(nu, eps)?;
            let f = |x: f64| match amplitude(&p, z, x, BranchPolicy::Consistent) {
                Ok((m, s)) => phi(x).into().conj() * m * s.exp(),
                Err(_) => Complex64::new(f64::NAN, f64::NAN),
            };
            Quad::with_tol(1e-12, 0.0)
                .integrate(f, 0.0, PI)
                .map(|r| r.value)
        })
        .collect()
}

/// The `ε -> 0+` image of `φ_n^ν`:
/// `sqrt(n! Γ(2ν+2) / (Γ(n+2ν+2)(n+ν+1))) e^{-inθ} L_n^{(2ν+1)}(r²)`.
pub fn transform_limit(nu: f64, n: usize, z: &PhasePoint) -> Result<Complex64> {
    let nf = n as f64;
    let l = laguerre(n, 2.0 * nu + 1.0, z.modulus_sqr())?;
    let k = 0.5
        * (ln_factorial(n) + ln_gamma(2.0 * nu + 2.0)
            - ln_gamma(nf + 2.0 * nu + 2.0)
            - (nf + nu + 1.0).ln());
    Ok(Complex64::from_polar(k.exp() * l, -nf * z.theta))
}
