//! Position-space wavefunctions `<x|z; ν; ε>` on `[0, π]`.
//!
//! For `γ = 2(ν+1)` the series `sum_n c_n φ_n^ν(x)` has the closed form
//!
//! `sqrt(N) ψ(x) = sqrt(Γ(2ν+2)) 2^{-(ν+1/2)} (sin x)^{ν+1} D^{-(ν+1)}
//!                 exp(-r²τ(cos x - τ)/D) G_{ν+1/2}(i r²τ sin x / D)`
//!
//! with `τ = e^{-(iθ+ε/2)}`, `D = (1 - τe^{ix})(1 - τe^{-ix})` and
//! `G_μ(y) = (y/2)^{-μ} I_μ(y)`. Taking `D^{-(ν+1)}` as the product of the
//! principal powers of its two factors, each with positive real part, gives
//! the branch that continues the series from `τ = 0`. Splitting
//! `G_μ` into `(y/2)^{-μ}` and `I_μ` with principal powers instead
//! ([`BranchPolicy::Principal`]) picks the wrong sheet for part of the phase
//! plane; it is kept as a diagnostic.

use std::f64::consts::{FRAC_2_PI, PI};

use num_complex::Complex64;
use rayon::prelude::*;

use super::{
    cs_coefficients, normalization_integral, normalization_series, series_length, Params,
    PhasePoint,
};
use crate::error::{ensure_finite, Error, Result};
use crate::grid::{GridSpec, WavefunctionGrid};
use crate::quad::{Quad, QuadResult, SeriesResult};
use crate::specfun::{bessel_g_scaled, bessel_i_complex_scaled, ln_gamma};
use crate::spt::{Eigenbasis, SptConfig};

/// Branch handling for the closed-form wavefunction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchPolicy {
    /// Entire-function form; agrees with the series everywhere.
    Consistent,
    /// Principal branch for every complex power, factor by factor.
    Principal,
}

/// A normalized coherent state with its normalization and coefficients
/// computed once.
#[derive(Debug, Clone)]
pub struct CoherentState {
    p: Params,
    z: PhasePoint,
    ln_norm: f64,
    coefficients: Vec<Complex64>,
    ln_norm_series: f64,
}

fn check_x(op: &'static str, x: f64) -> Result<()> {
    ensure_finite(op, "x", x)?;
    if !(0.0..=PI).contains(&x) {
        return Err(Error::domain(op, format!("requires 0 <= x <= pi, got {x}")));
    }
    Ok(())
}

/// `sin(w)/w`, with `e^{-|Im w|}` factored out; returns the log of that factor.
fn sinc_scaled(w: Complex64) -> (Complex64, f64) {
    if w.norm() < 1e-4 {
        return (1.0 - w * w / 6.0, 0.0);
    }
    let s = w.im.abs();
    let i = Complex64::new(0.0, 1.0);
    let sin = ((i * w - s).exp() - (-i * w - s).exp()) / (2.0 * i);
    (sin / w, s)
}

/// `sqrt(N) ψ(x)` as `(m, s)` meaning `m e^s`.
pub(crate) fn amplitude(
    p: &Params,
    z: &PhasePoint,
    x: f64,
    policy: BranchPolicy,
) -> Result<(Complex64, f64)> {
    let zero = (Complex64::new(0.0, 0.0), 0.0);
    if x == 0.0 || x == PI {
        return Ok(zero);
    }
    let nu = p.nu;
    let r2 = z.modulus_sqr();
    let tau = Complex64::from_polar((-0.5 * p.epsilon).exp(), -z.theta);
    let eix = Complex64::from_polar(1.0, x);
    let f1 = 1.0 - tau * eix;
    let f2 = 1.0 - tau * eix.conj();
    let d = f1 * f2;
    let (s, c) = x.sin_cos();
    let a = -r2 * tau * (c - tau) / d;
    let phase_a = Complex64::from_polar(1.0, a.im);
    match policy {
        BranchPolicy::Consistent if nu == 0.0 => {
            let w = r2 * tau * s / d;
            let (sinc, ls) = sinc_scaled(w);
            Ok((FRAC_2_PI.sqrt() * s / d * phase_a * sinc, a.re + ls))
        }
        BranchPolicy::Consistent => {
            let y = Complex64::new(0.0, r2) * tau * s / d;
            let g = bessel_g_scaled(nu + 0.5, y)?;
            let pre = (0.5 * ln_gamma(2.0 * nu + 2.0) - (nu + 0.5) * std::f64::consts::LN_2).exp();
            let pw = f1.powf(-(nu + 1.0)) * f2.powf(-(nu + 1.0));
            Ok((pre * s.powf(nu + 1.0) * pw * phase_a * g, a.re + y.re.abs()))
        }
        BranchPolicy::Principal => {
            if r2 == 0.0 {
                return Err(Error::domain(
                    "closed_form_wavefunction",
                    "principal form is singular at r = 0",
                ));
            }
            let iz = Complex64::new(0.0, r2) * tau;
            let y = iz * s / d;
            let i = bessel_i_complex_scaled(nu + 0.5, y)?;
            let pre = (0.5 * ln_gamma(2.0 * nu + 2.0)).exp();
            let m = pre * iz.powf(-(nu + 0.5)) * s.sqrt() * d.powf(-0.5) * phase_a * i;
            Ok((m, a.re + y.re.abs()))
        }
    }
}

impl CoherentState {
    pub fn new(p: Params, z: PhasePoint) -> Result<Self> {
        p.require_positive_epsilon("coherent_state")?;
        let series = normalization_series(&p, &z)?.value.re;
        let ln_norm = if z.r > 0.0 {
            normalization_integral(&p, &z)?.value.re.ln()
        } else {
            series.ln()
        };
        let count = series_length(&p, &z);
        let coefficients = cs_coefficients(&p, &z, count)?
            .into_iter()
            .map(|c| c.value)
            .collect();
        Ok(CoherentState {
            p,
            z,
            ln_norm,
            coefficients,
            ln_norm_series: series.ln(),
        })
    }

    pub fn params(&self) -> &Params {
        &self.p
    }

    pub fn point(&self) -> &PhasePoint {
        &self.z
    }

    /// `N_{γ,ε}(z)`.
    pub fn normalization(&self) -> f64 {
        self.ln_norm.exp()
    }

    fn require_closed_form(&self) -> Result<()> {
        if !self.p.is_matched() {
            return Err(Error::domain(
                "closed_form_wavefunction",
                format!(
                    "requires gamma = 2(nu+1), got gamma = {}, nu = {}",
                    self.p.gamma, self.p.nu
                ),
            ));
        }
        if self.p.nu < 0.0 {
            return Err(Error::domain(
                "closed_form_wavefunction",
                "closed form is not available for nu < 0",
            ));
        }
        Ok(())
    }

    fn amplitude(&self, x: f64, policy: BranchPolicy) -> Result<(Complex64, f64)> {
        amplitude(&self.p, &self.z, x, policy)
    }

    /// `ψ(x)` from the closed form.
    pub fn closed_form(&self, x: f64) -> Result<Complex64> {
        self.closed_form_with(x, BranchPolicy::Consistent)
    }

    pub fn closed_form_with(&self, x: f64, policy: BranchPolicy) -> Result<Complex64> {
        check_x("closed_form_wavefunction", x)?;
        self.require_closed_form()?;
        let (m, s) = self.amplitude(x, policy)?;
        Ok(m * (s - 0.5 * self.ln_norm).exp())
    }

    /// Closed form checked against the series; a disagreement above `tol`
    /// is reported as [`Error::BranchMismatch`].
    pub fn checked(&self, x: f64, policy: BranchPolicy, tol: f64) -> Result<Complex64> {
        let closed = self.closed_form_with(x, policy)?;
        let series = self.series(x)?.value;
        let difference = (closed - series).norm();
        if difference > tol {
            return Err(Error::BranchMismatch { x, difference, tol });
        }
        Ok(closed)
    }

    /// `sqrt(N) ψ(x)` from the closed form, free of the normalization.
    pub fn unnormalized(&self, x: f64) -> Result<Complex64> {
        check_x("closed_form_wavefunction", x)?;
        self.require_closed_form()?;
        let (m, s) = self.amplitude(x, BranchPolicy::Consistent)?;
        Ok(m * s.exp())
    }

    /// `ψ(x) = sum_n c_n φ_n^ν(x) / sqrt(N)` truncated at the series length.
    /// Works for any `(γ, ν)`.
    pub fn series(&self, x: f64) -> Result<SeriesResult> {
        check_x("series_wavefunction", x)?;
        let basis = Eigenbasis::new(SptConfig::standard(self.p.nu)?, self.coefficients.len());
        Ok(self.series_with(&basis, x))
    }

    fn series_with(&self, basis: &Eigenbasis, x: f64) -> SeriesResult {
        let phi = basis.values(x);
        let scale = (-0.5 * self.ln_norm_series).exp();
        let mut sum = Complex64::new(0.0, 0.0);
        for (c, f) in self.coefficients.iter().zip(&phi) {
            sum += c * f;
        }
        let tail = self
            .coefficients
            .iter()
            .zip(&phi)
            .rev()
            .take(8)
            .fold(0.0_f64, |m, (c, f)| m.max((c * f).norm()));
        SeriesResult {
            value: sum * scale,
            terms_used: self.coefficients.len(),
            tail_estimate: tail * scale / (1.0 - (-0.5 * self.p.epsilon).exp()),
        }
    }

    fn provenance(&self) -> Vec<(String, f64)> {
        vec![
            ("gamma".to_string(), self.p.gamma),
            ("nu".to_string(), self.p.nu),
            ("epsilon".to_string(), self.p.epsilon),
            ("r".to_string(), self.z.r),
            ("theta".to_string(), self.z.theta),
        ]
    }

    /// Closed form sampled on a grid inside `[0, π]`.
    pub fn closed_form_grid(&self, grid: &GridSpec) -> Result<WavefunctionGrid> {
        let xs = grid.points();
        let values = xs
            .par_iter()
            .map(|&x| self.closed_form(x))
            .collect::<Result<Vec<_>>>()?;
        WavefunctionGrid::from_points(xs, values, self.provenance())
    }

    /// Truncated series sampled on a grid inside `[0, π]`.
    pub fn series_grid(&self, grid: &GridSpec) -> Result<WavefunctionGrid> {
        let xs = grid.points();
        for &x in &xs {
            check_x("series_wavefunction", x)?;
        }
        let basis = Eigenbasis::new(SptConfig::standard(self.p.nu)?, self.coefficients.len());
        let values = xs
            .par_iter()
            .map(|&x| self.series_with(&basis, x).value)
            .collect();
        WavefunctionGrid::from_points(xs, values, self.provenance())
    }

    /// `∫_0^π |ψ(x)|² dx` by quadrature of the closed form.
    pub fn position_norm(&self) -> Result<QuadResult> {
        self.require_closed_form()?;
        let f = |x: f64| match self.amplitude(x, BranchPolicy::Consistent) {
            Ok((m, s)) => m.norm_sqr() * (2.0 * s - self.ln_norm).exp(),
            Err(_) => f64::NAN,
        };
        Quad::with_tol(1e-13, 0.0).integrate(f, 0.0, PI)
    }
}

/// `ψ(x)` from the closed form for `γ = 2(ν+1)`, `ν >= 0`.
pub fn closed_form_wavefunction(p: &Params, z: &PhasePoint, x: f64) -> Result<Complex64> {
    CoherentState::new(*p, *z)?.closed_form(x)
}

/// `ψ(x)` for the infinite square well (`ν = 0`, `γ = 2`).
pub fn square_well_wavefunction(z: &PhasePoint, epsilon: f64, x: f64) -> Result<Complex64> {
    CoherentState::new(Params::matched(0.0, epsilon)?, *z)?.closed_form(x)
}

/// `ψ(x)` from the truncated coefficient series.
pub fn series_wavefunction(p: &Params, z: &PhasePoint, x: f64) -> Result<SeriesResult> {
    CoherentState::new(*p, *z)?.series(x)
}
