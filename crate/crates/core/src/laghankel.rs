//! The Laguerre function `𝓛_n^{(2ν+1)}(x) = x^{ν+1/2} e^{-x/2} L_n^{(2ν+1)}(x)`,
//! its Hankel-type integral representation
//!
//! `𝓛_n(x) = 2^{2ν+2}/sqrt(π) Γ(ν+1) (n+ν+1)
//!     ∫_0^∞ J_{ν+1/2}(xs/2) C_n^{ν+1}((s²-1)/(s²+1)) s^{ν+3/2} / (s²+1)^{ν+2} ds`
//!
//! and the generating-function identities behind it.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{ensure_finite, Error, Result};
use crate::quad::{sum_series, Quad, QuadResult};
use crate::specfun::{bessel_j, bessel_k, gegenbauer_fill, laguerre, ln_gamma};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreFunctionSpec {
    pub n: usize,
    pub nu: f64,
    pub x: f64,
}

impl LaguerreFunctionSpec {
    pub fn new(n: usize, nu: f64, x: f64) -> Result<Self> {
        ensure_finite("laguerre_function", "nu", nu)?;
        ensure_finite("laguerre_function", "x", x)?;
        if nu <= -0.5 {
            return Err(Error::domain(
                "laguerre_function",
                format!("requires nu > -1/2, got {nu}"),
            ));
        }
        if x < 0.0 {
            return Err(Error::domain(
                "laguerre_function",
                format!("requires x >= 0, got {x}"),
            ));
        }
        Ok(LaguerreFunctionSpec { n, nu, x })
    }
}

/// `𝓛_n^{(2ν+1)}(x)` by direct evaluation.
pub fn laguerre_function(spec: &LaguerreFunctionSpec) -> Result<f64> {
    let LaguerreFunctionSpec { n, nu, x } = *spec;
    if x == 0.0 {
        return Ok(0.0);
    }
    let l = laguerre(n, 2.0 * nu + 1.0, x)?;
    Ok(((nu + 0.5) * x.ln() - 0.5 * x).exp() * l)
}

/// Number of half-period panels in the oscillatory tail.
const TAIL_PANELS: usize = 60;
/// Partial sums entering the iterated averaging.
const AVERAGED: usize = 30;
/// End of the non-oscillatory head.
const HEAD_END: f64 = 30.0;

/// `∫_0^∞ f` for `f` oscillating like `J_β(u s)` with algebraic decay.
///
/// The head `[0, 30]` is split into short panels. Beyond it the integral is
/// cut into half periods `π/u`; the partial sums then alternate around the
/// limit and are accelerated by iterated averaging of the last 30. The error
/// combines the panel errors with the change between the last two averaging
/// results.
fn oscillatory_integral<F>(op: &'static str, f: F, u: f64, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    let half = PI / u;
    let width = (0.5 * half).min(0.5);
    let panels = (HEAD_END / width).ceil() as usize;
    let q = Quad::with_tol(1e-3 * tol, 1e-13).max_subdivisions(200);
    let mut head = 0.0;
    let mut abs_error = 0.0;
    let mut evaluations = 0;
    for k in 0..panels {
        let a = HEAD_END * k as f64 / panels as f64;
        let b = HEAD_END * (k + 1) as f64 / panels as f64;
        let r = q.integrate(&f, a, b)?;
        head += r.value.re;
        abs_error += r.abs_error;
        evaluations += r.evaluations;
    }
    let mut partial = Vec::with_capacity(TAIL_PANELS);
    let mut acc = head;
    for k in 0..TAIL_PANELS {
        let a = HEAD_END + half * k as f64;
        let r = q.integrate(&f, a, a + half)?;
        acc += r.value.re;
        abs_error += r.abs_error;
        evaluations += r.evaluations;
        partial.push(acc);
    }
    let average = |sums: &[f64]| {
        let mut v = sums.to_vec();
        while v.len() > 1 {
            v = v.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        }
        v[0]
    };
    let value = average(&partial[TAIL_PANELS - AVERAGED..]);
    let previous = average(&partial[TAIL_PANELS - AVERAGED - 1..TAIL_PANELS - 1]);
    abs_error += (value - previous).abs();
    if !value.is_finite() || abs_error > tol.max(tol * value.abs()) {
        return Err(Error::NonConvergence {
            op,
            estimate: value,
            error_bound: abs_error,
            work: evaluations,
        });
    }
    Ok(QuadResult {
        value: Complex64::new(value, 0.0),
        abs_error,
        evaluations,
    })
}

/// The right-hand side of the Hankel-type representation by quadrature,
/// accurate to `max(tol, tol·|value|)`. Requires `ν > 0`.
pub fn hankel_representation(spec: &LaguerreFunctionSpec, tol: f64) -> Result<QuadResult> {
    let LaguerreFunctionSpec { n, nu, x } = *spec;
    if nu <= 0.0 {
        return Err(Error::domain(
            "hankel_representation",
            format!("requires nu > 0, got {nu}"),
        ));
    }
    if !(tol > 0.0) {
        return Err(Error::domain(
            "hankel_representation",
            "tolerance must be positive",
        ));
    }
    if x == 0.0 {
        return Ok(QuadResult {
            value: Complex64::new(0.0, 0.0),
            abs_error: 0.0,
            evaluations: 0,
        });
    }
    let pre = ((2.0 * nu + 2.0) * std::f64::consts::LN_2 - 0.5 * PI.ln() + ln_gamma(nu + 1.0))
        .exp()
        * (n as f64 + nu + 1.0);
    let lambda = nu + 1.0;
    let u = 0.5 * x;
    let f = |s: f64| {
        if s == 0.0 {
            return 0.0;
        }
        let s2 = s * s;
        let mut c = vec![0.0; n + 1];
        gegenbauer_fill(lambda, (s2 - 1.0) / (s2 + 1.0), &mut c);
        let j = bessel_j(nu + 0.5, u * s).unwrap_or(f64::NAN);
        j * c[n] * ((nu + 1.5) * s.ln() - (nu + 2.0) * (s2 + 1.0).ln()).exp()
    };
    let r = oscillatory_integral("hankel_representation", f, u, tol / pre)?;
    Ok(QuadResult {
        value: r.value * pre,
        abs_error: r.abs_error * pre,
        evaluations: r.evaluations,
    })
}

/// A generating function by its closed form and by direct summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratingSum {
    pub closed: f64,
    pub series: f64,
    pub terms: usize,
}

const SERIES_TOL: f64 = 1e-16;
const SERIES_MAX: usize = 100_000;

fn check_t(op: &'static str, t: f64) -> Result<()> {
    ensure_finite(op, "t", t)?;
    if !(t.abs() < 1.0) {
        return Err(Error::domain(op, format!("requires |t| < 1, got {t}")));
    }
    Ok(())
}

fn check_y(op: &'static str, y: f64) -> Result<()> {
    ensure_finite(op, "y", y)?;
    if y.abs() > 1.0 {
        return Err(Error::domain(op, format!("requires |y| <= 1, got {y}")));
    }
    Ok(())
}

fn check_lambda(op: &'static str, lambda: f64) -> Result<()> {
    ensure_finite(op, "lambda", lambda)?;
    if lambda <= 0.0 {
        return Err(Error::domain(
            op,
            format!("requires lambda > 0, got {lambda}"),
        ));
    }
    Ok(())
}

/// `sum_n t^n w(n) P_n` with `P_n` from a three-term recurrence
/// `P_{n+1} = a(n) P_n - b(n) P_{n-1}`.
fn recurrence_sum<W, A, B>(
    p0: f64,
    p1: f64,
    t: f64,
    weight: W,
    a: A,
    b: B,
    scale: f64,
) -> Result<(f64, usize)>
where
    W: Fn(f64) -> f64,
    A: Fn(f64) -> f64,
    B: Fn(f64) -> f64,
{
    let mut p = [p0, p1];
    let mut tn = 1.0;
    let r = sum_series(
        |n| {
            let k = n as f64;
            let term = tn * weight(k) * p[0];
            let next = a(k + 1.0) * p[1] - b(k + 1.0) * p[0];
            p = [p[1], next];
            tn *= t;
            term
        },
        SERIES_TOL * scale.max(1e-300),
        SERIES_MAX,
    )?;
    Ok((r.value.re, r.terms_used))
}

/// `sum_n t^n L_n^α(x) = (1-t)^{-α-1} exp(-xt/(1-t))`.
pub fn laguerre_generating_sum(alpha: f64, t: f64, x: f64) -> Result<GeneratingSum> {
    let op = "laguerre_generating_sum";
    check_t(op, t)?;
    ensure_finite(op, "x", x)?;
    if alpha <= -1.0 || x < 0.0 {
        return Err(Error::domain(op, "requires alpha > -1 and x >= 0"));
    }
    let closed = (1.0 - t).powf(-alpha - 1.0) * (-x * t / (1.0 - t)).exp();
    let (series, terms) = recurrence_sum(
        1.0,
        alpha + 1.0 - x,
        t,
        |_| 1.0,
        |k| (2.0 * k + alpha + 1.0 - x) / (k + 1.0),
        |k| (k + alpha) / (k + 1.0),
        closed.abs(),
    )?;
    Ok(GeneratingSum {
        closed,
        series,
        terms,
    })
}

/// `sum_n t^n 𝓛_n^{(2ν+1)}(x) = (1-t)^{-2ν-2} x^{ν+1/2} exp(-(x/2)(1+t)/(1-t))`.
pub fn laguerre_function_generating_sum(nu: f64, t: f64, x: f64) -> Result<GeneratingSum> {
    let spec = LaguerreFunctionSpec::new(0, nu, x)?;
    let g = laguerre_generating_sum(2.0 * nu + 1.0, t, x)?;
    let w = laguerre_function(&spec)?;
    Ok(GeneratingSum {
        closed: laguerre_function_generating_closed(nu, Complex64::new(t, 0.0), x).re,
        series: g.series * w,
        terms: g.terms,
    })
}

/// The closed form of [`laguerre_function_generating_sum`] at complex `t`.
fn laguerre_function_generating_closed(nu: f64, t: Complex64, x: f64) -> Complex64 {
    if x == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let one = Complex64::new(1.0, 0.0);
    (one - t).powf(-2.0 * nu - 2.0) * ((nu + 0.5) * x.ln() - 0.5 * x * (one + t) / (one - t)).exp()
}

/// The `t`-coefficients `𝓛_0 .. 𝓛_{count-1}` recovered from the closed
/// generating function by discrete Cauchy integration on `|t| = 1/2`.
pub fn laguerre_function_coefficients(nu: f64, x: f64, count: usize) -> Result<Vec<f64>> {
    LaguerreFunctionSpec::new(0, nu, x)?;
    let rho = 0.5;
    let m = 128.max(4 * count);
    let samples: Vec<Complex64> = (0..m)
        .map(|k| {
            laguerre_function_generating_closed(
                nu,
                Complex64::from_polar(rho, 2.0 * PI * k as f64 / m as f64),
                x,
            )
        })
        .collect();
    Ok((0..count)
        .map(|n| {
            let s = samples
                .iter()
                .enumerate()
                .fold(Complex64::new(0.0, 0.0), |acc, (k, v)| {
                    acc + v * Complex64::from_polar(1.0, -2.0 * PI * (n * k % m) as f64 / m as f64)
                });
            s.re / m as f64 / rho.powi(n as i32)
        })
        .collect())
}

fn gegenbauer_series<W: Fn(f64) -> f64>(
    lambda: f64,
    t: f64,
    y: f64,
    weight: W,
    scale: f64,
) -> Result<(f64, usize)> {
    recurrence_sum(
        1.0,
        2.0 * lambda * y,
        t,
        weight,
        |k| 2.0 * (k + lambda) * y / (k + 1.0),
        |k| (k + 2.0 * lambda - 1.0) / (k + 1.0),
        scale,
    )
}

fn check_gegenbauer_sum(op: &'static str, lambda: f64, t: f64, y: f64) -> Result<()> {
    check_lambda(op, lambda)?;
    check_t(op, t)?;
    check_y(op, y)
}

/// `sum_n t^n C_n^λ(y) = (1-2yt+t²)^{-λ}`.
pub fn gegenbauer_generating_sum(lambda: f64, t: f64, y: f64) -> Result<GeneratingSum> {
    check_gegenbauer_sum("gegenbauer_generating_sum", lambda, t, y)?;
    let closed = (1.0 - 2.0 * y * t + t * t).powf(-lambda);
    let (series, terms) = gegenbauer_series(lambda, t, y, |_| 1.0, closed.abs())?;
    Ok(GeneratingSum {
        closed,
        series,
        terms,
    })
}

/// `sum_n (n+2λ) t^n C_n^λ(y) = 2λ(1-ty) / (1-2yt+t²)^{λ+1}`.
pub fn gegenbauer_shifted_generating_sum(lambda: f64, t: f64, y: f64) -> Result<GeneratingSum> {
    check_gegenbauer_sum("gegenbauer_shifted_generating_sum", lambda, t, y)?;
    let closed = 2.0 * lambda * (1.0 - t * y) / (1.0 - 2.0 * y * t + t * t).powf(lambda + 1.0);
    let (series, terms) = gegenbauer_series(lambda, t, y, |k| k + 2.0 * lambda, closed.abs())?;
    Ok(GeneratingSum {
        closed,
        series,
        terms,
    })
}

/// `sum_n (n+λ) t^n C_n^λ(y) = λ(1-t²) / (1-2yt+t²)^{λ+1}`, the shifted sum
/// minus `λ` times the plain one.
pub fn gegenbauer_weighted_generating_sum(lambda: f64, t: f64, y: f64) -> Result<GeneratingSum> {
    check_gegenbauer_sum("gegenbauer_weighted_generating_sum", lambda, t, y)?;
    let closed = lambda * (1.0 - t * t) / (1.0 - 2.0 * y * t + t * t).powf(lambda + 1.0);
    let (series, terms) = gegenbauer_series(lambda, t, y, |k| k + lambda, closed.abs())?;
    Ok(GeneratingSum {
        closed,
        series,
        terms,
    })
}

/// The weighted sum at `λ = ν+1`, `y = (s²-1)/(s²+1)`:
/// `(ν+1)(1-t²)(s²+1)^{ν+2} / ((1-t)²s² + (1+t)²)^{ν+2}`.
pub fn gegenbauer_kernel_identity(nu: f64, t: f64, s: f64) -> Result<GeneratingSum> {
    let op = "gegenbauer_kernel_identity";
    ensure_finite(op, "s", s)?;
    check_lambda(op, nu + 1.0)?;
    check_t(op, t)?;
    let s2 = s * s;
    let closed = (nu + 1.0)
        * (1.0 - t * t)
        * ((nu + 2.0) * ((s2 + 1.0).ln() - ((1.0 - t).powi(2) * s2 + (1.0 + t).powi(2)).ln()))
            .exp();
    let (series, terms) = gegenbauer_series(
        nu + 1.0,
        t,
        (s2 - 1.0) / (s2 + 1.0),
        |k| k + nu + 1.0,
        closed.abs(),
    )?;
    Ok(GeneratingSum {
        closed,
        series,
        terms,
    })
}

/// Both sides of
/// `∫_0^∞ J_β(yu) y^{β+1}/(y²+a²)^{η+1} dy = u^η a^{β-η} K_{β-η}(ua) / (2^η Γ(η+1))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WatsonIntegral {
    pub quadrature: QuadResult,
    pub closed_form: f64,
}

/// Quadrature and closed form of the Bessel–rational integral above.
/// Requires `-1 < β < 2η + 3/2`, `u > 0`, `a > 0`.
pub fn watson_integral(beta: f64, eta: f64, u: f64, a: f64, tol: f64) -> Result<WatsonIntegral> {
    let op = "watson_integral";
    for (name, v) in [("beta", beta), ("eta", eta), ("u", u), ("a", a)] {
        ensure_finite(op, name, v)?;
    }
    if !(beta > -1.0 && beta < 2.0 * eta + 1.5) {
        return Err(Error::domain(
            op,
            format!("requires -1 < beta < 2 eta + 3/2, got beta={beta}, eta={eta}"),
        ));
    }
    if !(u > 0.0 && a > 0.0) {
        return Err(Error::domain(op, "requires u > 0 and a > 0"));
    }
    if !(tol > 0.0) {
        return Err(Error::domain(op, "tolerance must be positive"));
    }
    let closed_form =
        (eta * u.ln() + (beta - eta) * a.ln() - eta * std::f64::consts::LN_2 - ln_gamma(eta + 1.0))
            .exp()
            * bessel_k(beta - eta, u * a)?;
    let f = |y: f64| {
        if y == 0.0 {
            return 0.0;
        }
        let j = bessel_j(beta, y * u).unwrap_or(f64::NAN);
        j * ((beta + 1.0) * y.ln() - (eta + 1.0) * (y * y + a * a).ln()).exp()
    };
    let quadrature = oscillatory_integral(op, f, u, tol)?;
    Ok(WatsonIntegral {
        quadrature,
        closed_form,
    })
}

/// `sum_n t^n` times the Hankel-type right-hand side, with the Gegenbauer
/// sum under the integral replaced by its closed form:
///
/// `2^{2ν+2}/sqrt(π) Γ(ν+2) (1-t²)/(1-t)^{2ν+4} ∫_0^∞ J_{ν+1/2}(xs/2) s^{ν+3/2} / (s²+a_t²)^{ν+2} ds`
///
/// with `a_t = (1+t)/(1-t)`. The integral is evaluated both ways by
/// [`watson_integral`] with `β = ν+1/2`, `η = ν+1`, `u = x/2`.
pub fn hankel_generating_sum(nu: f64, t: f64, x: f64, tol: f64) -> Result<WatsonIntegral> {
    let op = "hankel_generating_sum";
    check_t(op, t)?;
    if nu <= 0.0 || !(x > 0.0) {
        return Err(Error::domain(op, "requires nu > 0 and x > 0"));
    }
    let pre = ((2.0 * nu + 2.0) * std::f64::consts::LN_2 - 0.5 * PI.ln() + ln_gamma(nu + 2.0))
        .exp()
        * (1.0 - t * t)
        / (1.0 - t).powf(2.0 * nu + 4.0);
    let w = watson_integral(
        nu + 0.5,
        nu + 1.0,
        0.5 * x,
        (1.0 + t) / (1.0 - t),
        tol / pre,
    )?;
    Ok(WatsonIntegral {
        quadrature: QuadResult {
            value: w.quadrature.value * pre,
            abs_error: w.quadrature.abs_error * pre,
            evaluations: w.quadrature.evaluations,
        },
        closed_form: w.closed_form * pre,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::laguerre_explicit;

    fn spec(n: usize, nu: f64, x: f64) -> LaguerreFunctionSpec {
        LaguerreFunctionSpec::new(n, nu, x).unwrap()
    }

    #[test]
    fn laguerre_function_values() {
        let v = laguerre_function(&spec(0, 0.7, 2.0)).unwrap();
        assert!((v - 2f64.powf(1.2) * (-1.0f64).exp()).abs() < 1e-15);
        assert_eq!(laguerre_function(&spec(5, 0.7, 0.0)).unwrap(), 0.0);
        let v = laguerre_function(&spec(3, 1.0, 2.5)).unwrap();
        assert!((v - -1.5336068154097349).abs() < 1e-14, "{v}");
        let e = laguerre_explicit(3, 3.0, 2.5).unwrap() * 2.5f64.powf(1.5) * (-1.25f64).exp();
        assert!((v - e).abs() < 1e-14);
        assert!(LaguerreFunctionSpec::new(1, -0.5, 1.0).is_err());
        assert!(LaguerreFunctionSpec::new(1, 0.5, -1.0).is_err());
    }

    #[test]
    fn hankel_ground_state_and_origin() {
        for &nu in &[0.5, 1.3] {
            for &x in &[0.5, 3.0, 12.0] {
                let s = spec(0, nu, x);
                let got = hankel_representation(&s, 1e-10).unwrap().value.re;
                let want = x.powf(nu + 0.5) * (-0.5 * x).exp();
                assert!(
                    (got - want).abs() < 1e-9 * want.max(1.0),
                    "nu={nu} x={x}: {got} vs {want}"
                );
            }
        }
        assert_eq!(
            hankel_representation(&spec(3, 1.0, 0.0), 1e-8)
                .unwrap()
                .value
                .re,
            0.0
        );
        assert!(hankel_representation(&spec(3, 0.0, 1.0), 1e-8).is_err());
    }

    #[test]
    fn hankel_matches_direct_evaluation() {
        let s = spec(4, 0.8, 3.0);
        let want = laguerre_function(&s).unwrap();
        let got = hankel_representation(&s, 1e-9).unwrap();
        assert!(
            (got.value.re - want).abs() < 1e-7,
            "{} vs {want}",
            got.value.re
        );
        assert!(got.abs_error < 1e-7);
    }

    #[test]
    fn laguerre_generating_sums() {
        let g = laguerre_generating_sum(2.5, 0.0, 1.0).unwrap();
        assert_eq!(g.closed, 1.0);
        assert!((g.series - 1.0).abs() < 1e-15);
        let g = laguerre_generating_sum(1.5, 0.6, 0.0).unwrap();
        assert!((g.closed - 0.4f64.powf(-2.5)).abs() < 1e-13);
        let g = laguerre_generating_sum(3.0, 0.4, 1.7).unwrap();
        assert!((g.closed - g.series).abs() < 1e-10 * g.closed.abs());
        let g = laguerre_function_generating_sum(1.0, -0.7, 4.0).unwrap();
        assert!((g.closed - g.series).abs() < 1e-10 * g.closed.abs());
        assert!(laguerre_generating_sum(1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn coefficients_from_the_generating_function() {
        for &(nu, x) in &[(0.5, 2.0), (1.0, 8.0), (2.0, 0.5)] {
            let c = laguerre_function_coefficients(nu, x, 7).unwrap();
            for (n, v) in c.iter().enumerate() {
                let want = laguerre_function(&spec(n, nu, x)).unwrap();
                assert!(
                    (v - want).abs() < 1e-12 * want.abs().max(1.0),
                    "n={n}: {v} vs {want}"
                );
            }
        }
    }

    #[test]
    fn gegenbauer_generating_sums() {
        let lam = 1.7;
        let g = gegenbauer_weighted_generating_sum(lam, 0.0, 0.3).unwrap();
        assert_eq!(g.closed, lam);
        let g = gegenbauer_shifted_generating_sum(lam, 0.0, 0.3).unwrap();
        assert_eq!(g.closed, 2.0 * lam);
        let g = gegenbauer_generating_sum(lam, 0.45, 1.0).unwrap();
        assert!((g.closed - 0.55f64.powf(-2.0 * lam)).abs() < 1e-13);
        for &(t, y) in &[(0.3, 0.2), (-0.8, -0.9), (0.9, 0.99)] {
            for g in [
                gegenbauer_generating_sum(lam, t, y).unwrap(),
                gegenbauer_shifted_generating_sum(lam, t, y).unwrap(),
                gegenbauer_weighted_generating_sum(lam, t, y).unwrap(),
            ] {
                assert!(
                    (g.closed - g.series).abs() < 1e-11 * g.closed.abs().max(1.0),
                    "t={t} y={y}: {g:?}"
                );
            }
        }
        assert!(gegenbauer_generating_sum(lam, 0.2, 1.2).is_err());
        assert!(gegenbauer_generating_sum(0.0, 0.2, 0.5).is_err());
    }

    #[test]
    fn kernel_identity() {
        let g = gegenbauer_kernel_identity(1.0, 0.3, 2.0).unwrap();
        assert!((g.closed - g.series).abs() < 1e-10, "{g:?}");
        let w = gegenbauer_weighted_generating_sum(1.5, -0.6, (0.49 - 1.0) / 1.49).unwrap();
        let k = gegenbauer_kernel_identity(0.5, -0.6, 0.7).unwrap();
        assert!((w.closed - k.closed).abs() < 1e-13 * w.closed.abs());
    }

    #[test]
    fn watson_formula() {
        let w = watson_integral(1.5, 2.0, 1.0, 1.5, 1e-11).unwrap();
        assert!(
            (w.quadrature.value.re - w.closed_form).abs() < 1e-8,
            "{w:?}"
        );
        // β = ν+1/2, η = ν+1: K_{-1/2}(z) = sqrt(π/(2z)) e^{-z}
        let (nu, u, a) = (0.8, 1.3, 1.0);
        let w = watson_integral(nu + 0.5, nu + 1.0, u, a, 1e-11).unwrap();
        let k = (PI / (2.0 * u * a)).sqrt() * (-u * a).exp();
        let want =
            u.powf(nu + 1.0) * a.powf(-0.5) * k / (2f64.powf(nu + 1.0) * ln_gamma(nu + 2.0).exp());
        assert!((w.closed_form - want).abs() < 1e-14);
        assert!((w.quadrature.value.re - want).abs() < 1e-8);
        let small = watson_integral(1.0, 1.0, 1e-3, 1.0, 1e-10).unwrap();
        // u K_0(u) / 2 -> 0
        assert!(small.closed_form.abs() < 4e-3);
        assert!((small.quadrature.value.re - small.closed_form).abs() < 1e-8);
        assert!(watson_integral(4.0, 1.0, 1.0, 1.0, 1e-8).is_err());
    }

    #[test]
    fn generating_sum_through_watson() {
        for &(nu, t, x) in &[(0.5, 0.3, 2.0), (1.0, -0.4, 5.0), (2.0, 0.6, 1.0)] {
            let h = hankel_generating_sum(nu, t, x, 1e-12).unwrap();
            let g = laguerre_function_generating_sum(nu, t, x).unwrap();
            assert!((h.closed_form - g.closed).abs() < 1e-12 * g.closed.abs().max(1.0));
            assert!(
                (h.quadrature.value.re - g.closed).abs() < 1e-9,
                "nu={nu} t={t} x={x}: {h:?} vs {}",
                g.closed
            );
        }
    }
}
