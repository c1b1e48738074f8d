//! The normalization factor `N_{γ,ε}(z) = <z|z>` of the unnormalized state.

use num_complex::Complex64;

use super::{series_length, weights, Params, PhasePoint};
use crate::error::{Error, Result};
use crate::quad::{Quad, QuadResult, SeriesResult};
use crate::specfun::{bessel_i_scaled, bessel_k_scaled, ln_gamma};

/// `sum_n |c_n(z)|²` truncated by [`series_length`]. Valid at `r = 0`.
pub fn normalization_series(p: &Params, z: &PhasePoint) -> Result<SeriesResult> {
    p.require_positive_epsilon("normalization_series")?;
    let count = series_length(p, z);
    let (lag, inv) = weights(p, z.modulus_sqr(), count);
    let terms: Vec<f64> = lag
        .iter()
        .zip(&inv)
        .map(|(l, s)| (l * s) * (l * s))
        .collect();
    let value: f64 = terms.iter().sum();
    let last = terms.iter().rev().take(8).fold(0.0_f64, |m, v| m.max(*v));
    Ok(SeriesResult {
        value: Complex64::new(value, 0.0),
        terms_used: count,
        tail_estimate: last / (1.0 - (-p.epsilon).exp()),
    })
}

/// `N_{γ,ε}(z)` as a single integral over `t = s²`:
///
/// `N = Γ(γ) e^{γε/2} x^{1-γ} e^x ∫_0^{e^{-ε/2}} 2/(1-s²) e^{2xs/(1+s) - x} Ĩ_{γ-1}(2xs/(1-s²)) ds`
///
/// with `x = r²` and `Ĩ_μ(y) = e^{-y} I_μ(y)`. The exponent never exceeds
/// `x`, so nothing overflows before the final prefactor. Requires `r > 0`.
pub fn normalization_integral(p: &Params, z: &PhasePoint) -> Result<QuadResult> {
    p.require_positive_epsilon("normalization_integral")?;
    if z.r <= 0.0 {
        return Err(Error::domain(
            "normalization_integral",
            "the integral form is singular at r = 0; use normalization_series",
        ));
    }
    let x = z.modulus_sqr();
    let mu = p.gamma - 1.0;
    let upper = (-0.5 * p.epsilon).exp();
    let f = |s: f64| {
        let one_minus = (1.0 - s) * (1.0 + s);
        let y = 2.0 * x * s / one_minus;
        let e = (2.0 * x * s / (1.0 + s) - x).exp();
        2.0 / one_minus * e * bessel_i_scaled(mu, y).unwrap_or(f64::NAN)
    };
    let r = Quad::with_tol(0.0, 1e-13).integrate(f, 0.0, upper)?;
    let scale =
        (ln_gamma(p.gamma) + 0.5 * p.gamma * p.epsilon + (1.0 - p.gamma) * x.ln() + x).exp();
    Ok(QuadResult {
        value: r.value * scale,
        abs_error: r.abs_error * scale,
        evaluations: r.evaluations,
    })
}

/// `N_{γ,0+}(z) = Γ(γ) e^x x^{1-γ} I_μ(x/2) K_μ(x/2)`, `μ = (γ-1)/2`,
/// `x = r²`: the pointwise limit of [`normalization_integral`] as `ε -> 0+`.
pub fn normalization_limit(gamma: f64, z: &PhasePoint) -> Result<f64> {
    if !(gamma > 1.0) || !gamma.is_finite() {
        return Err(Error::domain(
            "normalization_limit",
            format!("requires gamma > 1, got {gamma}"),
        ));
    }
    if z.r <= 0.0 {
        return Err(Error::domain("normalization_limit", "requires r > 0"));
    }
    let x = z.modulus_sqr();
    let mu = 0.5 * (gamma - 1.0);
    let ik = bessel_i_scaled(mu, 0.5 * x)? * bessel_k_scaled(mu, 0.5 * x)?;
    Ok((ln_gamma(gamma) + x + (1.0 - gamma) * x.ln()).exp() * ik)
}

/// Value at `0` of the interpolating polynomial through `(s_i, v_i)`
/// (Neville's scheme).
pub fn extrapolate_to_zero(points: &[(f64, Complex64)]) -> Complex64 {
    let s: Vec<f64> = points.iter().map(|p| p.0).collect();
    let mut v: Vec<Complex64> = points.iter().map(|p| p.1).collect();
    let n = v.len();
    for m in 1..n {
        for i in 0..n - m {
            v[i] = (s[i + m] * v[i] - s[i] * v[i + 1]) / (s[i + m] - s[i]);
        }
    }
    v.first().copied().unwrap_or_default()
}
