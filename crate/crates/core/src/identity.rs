//! Resolution of the identity as `ε -> 0+`: the Gegenbauer Poisson kernel
//! and the smoothing operator
//!
//! `O_ε[φ](x) = sum_n e^{-nε} <φ_n|φ> φ_n(x)
//!            = (sin x)^{ν+1} ∫_0^π P_ν(e^{-ε}; x, y) (sin y)^{ν+1} φ(y) dy`
//!
//! with `P_ν(r; x, y) = sum_n r^n ω_n C_n^{ν+1}(cos x) C_n^{ν+1}(cos y)`.
//! Both routes are truncated at the same number of terms,
//! `N(ε) = ceil(40/ε)` capped at 5000.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{ensure_finite, Error, Result};
use crate::grid::GridSpec;
use crate::quad::{CompositeRule, Quad, SeriesResult};
use crate::specfun::{gegenbauer_fill, ln_factorial, ln_gamma};
use crate::spt::{Eigenbasis, SptConfig};

/// Largest kernel truncation.
pub const MAX_TRUNCATION: usize = 5000;

/// Tail tolerance of the kernel series, relative to `max(1, Σ|terms|)`.
const KERNEL_TAIL_TOL: f64 = 1e-8;

fn check_nu(op: &'static str, nu: f64) -> Result<()> {
    ensure_finite(op, "nu", nu)?;
    if nu <= -1.0 {
        return Err(Error::domain(op, format!("requires nu > -1, got {nu}")));
    }
    Ok(())
}

fn check_epsilon(op: &'static str, epsilon: f64) -> Result<()> {
    ensure_finite(op, "epsilon", epsilon)?;
    if epsilon <= 0.0 {
        return Err(Error::domain(
            op,
            format!("requires epsilon > 0, got {epsilon}"),
        ));
    }
    Ok(())
}

fn ln_omega(nu: f64, n: usize) -> f64 {
    let nf = n as f64;
    2.0 * ln_gamma(nu + 1.0) + (2.0 * nu + 1.0) * LN_2 + ln_factorial(n) + (nf + nu + 1.0).ln()
        - PI.ln()
        - ln_gamma(nf + 2.0 * nu + 2.0)
}

/// `ω_n = Γ(ν+1)² 2^{2ν+1} n! (n+ν+1) / (π Γ(n+2ν+2))`, the squared
/// normalization of `φ_n^ν` relative to `(sin x)^{ν+1} C_n^{ν+1}(cos x)`.
pub fn omega(nu: f64, n: usize) -> Result<f64> {
    check_nu("omega", nu)?;
    Ok(ln_omega(nu, n).exp())
}

/// `ω_0 .. ω_{count-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelWeights {
    pub omega: Vec<f64>,
}

impl KernelWeights {
    pub fn new(nu: f64, count: usize) -> Result<Self> {
        check_nu("kernel_weights", nu)?;
        Ok(KernelWeights {
            omega: (0..count).map(|n| ln_omega(nu, n).exp()).collect(),
        })
    }
}

/// `N(ε) = ceil(40/ε)`, capped at [`MAX_TRUNCATION`].
pub fn default_truncation(epsilon: f64) -> usize {
    ((40.0 / epsilon).ceil() as usize).clamp(1, MAX_TRUNCATION)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonKernelSpec {
    pub nu: f64,
    pub epsilon: f64,
    pub truncation: usize,
}

impl PoissonKernelSpec {
    pub fn new(nu: f64, epsilon: f64) -> Result<Self> {
        Self::with_truncation(nu, epsilon, default_truncation(epsilon))
    }

    pub fn with_truncation(nu: f64, epsilon: f64, truncation: usize) -> Result<Self> {
        check_nu("poisson_kernel", nu)?;
        check_epsilon("poisson_kernel", epsilon)?;
        if truncation == 0 {
            return Err(Error::domain(
                "poisson_kernel",
                "truncation must be at least 1",
            ));
        }
        Ok(PoissonKernelSpec {
            nu,
            epsilon,
            truncation,
        })
    }
}

fn check_angle(op: &'static str, x: f64) -> Result<()> {
    ensure_finite(op, "x", x)?;
    if !(0.0..=PI).contains(&x) {
        return Err(Error::domain(op, format!("requires 0 <= x <= pi, got {x}")));
    }
    Ok(())
}

/// `P_ν(e^{-ε}; x, y)` truncated at `spec.truncation` terms. The tail is
/// estimated as geometric in `e^{-ε}` from the largest of the last `N/8`
/// terms, at most 16.
pub fn poisson_kernel(spec: &PoissonKernelSpec, x: f64, y: f64) -> Result<SeriesResult> {
    check_angle("poisson_kernel", x)?;
    check_angle("poisson_kernel", y)?;
    let n = spec.truncation;
    let w = KernelWeights::new(spec.nu, n)?;
    let mut cx = vec![0.0; n];
    let mut cy = vec![0.0; n];
    gegenbauer_fill(spec.nu + 1.0, x.cos(), &mut cx);
    gegenbauer_fill(spec.nu + 1.0, y.cos(), &mut cy);
    let r = (-spec.epsilon).exp();
    let mut rn = 1.0;
    let mut sum = 0.0;
    let mut abs = 0.0;
    let mut terms = Vec::with_capacity(n);
    for k in 0..n {
        let t = rn * w.omega[k] * cx[k] * cy[k];
        sum += t;
        abs += t.abs();
        terms.push(t.abs());
        rn *= r;
    }
    let last = terms
        .iter()
        .rev()
        .take((n / 8).clamp(1, 16))
        .fold(0.0_f64, |m, v| m.max(*v));
    let tail = last * r / (1.0 - r);
    if tail > KERNEL_TAIL_TOL * abs.max(1.0) {
        return Err(Error::NonConvergence {
            op: "poisson_kernel",
            estimate: sum,
            error_bound: tail,
            work: n,
        });
    }
    Ok(SeriesResult {
        value: Complex64::new(sum, 0.0),
        terms_used: n,
        tail_estimate: tail,
    })
}

/// How [`apply_smoothing`] evaluates `O_ε[φ]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Damped eigen-expansion with projections by composite Gauss–Legendre.
    Spectral,
    /// Adaptive quadrature of the Poisson kernel against `φ`.
    Kernel,
}

/// The operator `O_ε` for one `(ν, ε)`.
#[derive(Debug, Clone)]
pub struct Smoother {
    nu: f64,
    epsilon: f64,
    basis: Eigenbasis,
    damping: Vec<f64>,
    omega: Vec<f64>,
    rule: CompositeRule,
}

impl Smoother {
    pub fn new(nu: f64, epsilon: f64) -> Result<Self> {
        Self::with_truncation(nu, epsilon, default_truncation(epsilon))
    }

    pub fn with_truncation(nu: f64, epsilon: f64, truncation: usize) -> Result<Self> {
        let spec = PoissonKernelSpec::with_truncation(nu, epsilon, truncation)?;
        let basis = Eigenbasis::new(SptConfig::standard(nu)?, spec.truncation);
        let damping = (0..spec.truncation)
            .map(|n| (-(n as f64) * epsilon).exp())
            .collect();
        let omega = KernelWeights::new(nu, spec.truncation)?.omega;
        // about eight nodes per oscillation of the highest mode
        let panels = spec.truncation / 8 + 16;
        let rule = CompositeRule::new(0.0, PI, panels, 20)?;
        Ok(Smoother {
            nu,
            epsilon,
            basis,
            damping,
            omega,
            rule,
        })
    }

    pub fn truncation(&self) -> usize {
        self.basis.len()
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// `<φ_n|φ> = ∫ φ_n φ dx` for `n < truncation`.
    pub fn coefficients<F, V>(&self, phi: F) -> Vec<Complex64>
    where
        F: Fn(f64) -> V + Sync,
        V: Into<Complex64>,
    {
        let n = self.truncation();
        let chunk = 64;
        let partial: Vec<Vec<Complex64>> = self
            .rule
            .nodes
            .par_chunks(chunk)
            .zip(self.rule.weights.par_chunks(chunk))
            .map(|(xs, ws)| {
                let mut acc = vec![Complex64::new(0.0, 0.0); n];
                let mut buf = vec![0.0; n];
                for (&x, &w) in xs.iter().zip(ws) {
                    let f: Complex64 = phi(x).into() * w;
                    self.basis.fill(x, &mut buf);
                    for (a, b) in acc.iter_mut().zip(&buf) {
                        *a += f * b;
                    }
                }
                acc
            })
            .collect();
        // fixed-order reduction over chunks
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for p in partial {
            for (o, v) in out.iter_mut().zip(p) {
                *o += v;
            }
        }
        out
    }

    /// `sum_n e^{-nε} a_n φ_n(x)` for given projections `a_n`.
    pub fn synthesize(&self, coefficients: &[Complex64], x: f64) -> Complex64 {
        let phi = self.basis.values(x);
        coefficients
            .iter()
            .zip(&self.damping)
            .zip(&phi)
            .fold(Complex64::new(0.0, 0.0), |s, ((a, d), f)| s + a * (d * f))
    }

    /// Spectral route at many points, sharing the projections.
    pub fn spectral<F, V>(&self, phi: F, xs: &[f64]) -> Vec<Complex64>
    where
        F: Fn(f64) -> V + Sync,
        V: Into<Complex64>,
    {
        let a = self.coefficients(phi);
        xs.par_iter().map(|&x| self.synthesize(&a, x)).collect()
    }

    /// `P_ν(e^{-ε}; x, y)` with this smoother's truncation.
    fn kernel_row(&self, x: f64) -> Vec<f64> {
        let n = self.truncation();
        let mut cx = vec![0.0; n];
        gegenbauer_fill(self.nu + 1.0, x.cos(), &mut cx);
        cx.iter()
            .zip(&self.omega)
            .zip(&self.damping)
            .map(|((c, w), d)| c * w * d)
            .collect()
    }

    /// Kernel route at one point.
    pub fn kernel<F, V>(&self, phi: F, x: f64) -> Result<Complex64>
    where
        F: Fn(f64) -> V,
        V: Into<Complex64>,
    {
        check_angle("apply_smoothing", x)?;
        if x == 0.0 || x == PI {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let row = self.kernel_row(x);
        let lambda = self.nu + 1.0;
        let integrand = |y: f64| {
            let mut cy = vec![0.0; row.len()];
            gegenbauer_fill(lambda, y.cos(), &mut cy);
            let p: f64 = row.iter().zip(&cy).map(|(a, b)| a * b).sum();
            phi(y).into() * (p * y.sin().powf(lambda))
        };
        let q = Quad::with_tol(1e-11, 0.0).max_subdivisions(4000);
        let left = q.integrate(integrand, 0.0, x)?;
        let right = q.integrate(integrand, x, PI)?;
        Ok((left.value + right.value) * x.sin().powf(lambda))
    }
}

/// `O_{ν,ε}[φ](x)` by the chosen route.
pub fn apply_smoothing<F, V>(
    nu: f64,
    epsilon: f64,
    phi: F,
    x: f64,
    route: Route,
) -> Result<Complex64>
where
    F: Fn(f64) -> V + Sync,
    V: Into<Complex64>,
{
    check_angle("apply_smoothing", x)?;
    let s = Smoother::new(nu, epsilon)?;
    match route {
        Route::Spectral => Ok(s.spectral(phi, &[x])[0]),
        Route::Kernel => s.kernel(phi, x),
    }
}

/// Distance between `O_ε[φ]` and `φ` for one `ε`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub epsilon: f64,
    /// Largest `|O_ε[φ] - φ|` over grid points in `[0.1, π-0.1]`.
    pub sup_error: f64,
    /// Trapezoid `L²` norm of `O_ε[φ] - φ` over the whole grid.
    pub l2_error: f64,
}

/// `‖O_ε[φ] - φ‖` along a decreasing schedule, by the spectral route.
pub fn convergence_study<F, V>(
    nu: f64,
    phi: F,
    eps_schedule: &[f64],
    grid: &GridSpec,
) -> Result<Vec<ConvergenceRow>>
where
    F: Fn(f64) -> V + Sync,
    V: Into<Complex64>,
{
    if eps_schedule.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::domain(
            "convergence_study",
            "epsilon schedule must be strictly decreasing",
        ));
    }
    let xs = grid.points();
    if xs.iter().any(|x| !(0.0..=PI).contains(x)) {
        return Err(Error::domain(
            "convergence_study",
            "grid must lie inside [0, pi]",
        ));
    }
    let exact: Vec<Complex64> = xs.iter().map(|&x| phi(x).into()).collect();
    eps_schedule
        .iter()
        .map(|&eps| {
            let s = Smoother::new(nu, eps)?;
            let smoothed = s.spectral(&phi, &xs);
            let diff: Vec<f64> = smoothed
                .iter()
                .zip(&exact)
                .map(|(a, b)| (a - b).norm())
                .collect();
            let sup_error = xs
                .iter()
                .zip(&diff)
                .filter(|(x, _)| **x >= 0.1 && **x <= PI - 0.1)
                .fold(0.0_f64, |m, (_, d)| m.max(*d));
            let l2 = xs
                .windows(2)
                .zip(diff.windows(2))
                .map(|(x, d)| 0.5 * (x[1] - x[0]) * (d[0] * d[0] + d[1] * d[1]))
                .sum::<f64>();
            Ok(ConvergenceRow {
                epsilon: eps,
                sup_error,
                l2_error: l2.sqrt(),
            })
        })
        .collect()
}
