//! Overlaps `<z|w>` through the Hille–Hardy bilinear generating function
//!
//! `sum_n n! u^n L_n^α(ξ) L_n^α(ζ) / Γ(n+α+1)
//!     = (1-u)^{-1-α} exp(-(ξ+ζ) u/(1-u)) G_α(2 sqrt(ξζu)/(1-u))`
//!
//! with `G_α(y) = (y/2)^{-α} I_α(y)`. `G_α` is entire and even, so the right
//! hand side needs no branch for `sqrt(ξζu)`; the only power is
//! `(1-u)^{-1-α}` with `Re(1-u) > 0`.

use num_complex::Complex64;

use super::{cs_coefficients, series_length, Params, PhasePoint};
use crate::error::{ensure_finite, Error, Result};
use crate::quad::{sum_series, Quad, QuadResult, SeriesResult};
use crate::specfun::{bessel_g_scaled, ln_gamma};

/// Right-hand side times `e^{-shift}`; no checks.
fn hh_scaled(alpha: f64, xi: f64, zeta: f64, u: Complex64, shift: f64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let d = one - u;
    let e = -(xi + zeta) * u / d;
    let y = 2.0 * (xi * zeta * u).sqrt() / d;
    let g = bessel_g_scaled(alpha, y).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
    d.powf(-1.0 - alpha) * (e + y.re.abs() - shift).exp() * g
}

fn check_hh(op: &'static str, alpha: f64, xi: f64, zeta: f64, u: Complex64) -> Result<()> {
    ensure_finite(op, "alpha", alpha)?;
    ensure_finite(op, "xi", xi)?;
    ensure_finite(op, "zeta", zeta)?;
    if alpha <= -1.0 {
        return Err(Error::domain(
            op,
            format!("requires alpha > -1, got {alpha}"),
        ));
    }
    if xi < 0.0 || zeta < 0.0 {
        return Err(Error::domain(op, "requires xi, zeta >= 0"));
    }
    if !(u.norm() < 1.0) {
        return Err(Error::domain(
            op,
            format!("requires |u| < 1, got {}", u.norm()),
        ));
    }
    Ok(())
}

/// Closed form of the Hille–Hardy sum.
pub fn hille_hardy(alpha: f64, xi: f64, zeta: f64, u: Complex64) -> Result<Complex64> {
    check_hh("hille_hardy", alpha, xi, zeta, u)?;
    Ok(hh_scaled(alpha, xi, zeta, u, 0.0))
}

/// The Hille–Hardy sum by direct summation to absolute tolerance `tol`.
pub fn hille_hardy_series(
    alpha: f64,
    xi: f64,
    zeta: f64,
    u: Complex64,
    tol: f64,
) -> Result<SeriesResult> {
    check_hh("hille_hardy_series", alpha, xi, zeta, u)?;
    // two Laguerre recurrences and the weight n!/Γ(n+α+1), advanced in step
    let mut a = [1.0, alpha + 1.0 - xi];
    let mut b = [1.0, alpha + 1.0 - zeta];
    let mut weight = (-ln_gamma(alpha + 1.0)).exp();
    let mut un = Complex64::new(1.0, 0.0);
    sum_series(
        |n| {
            let t = un * (weight * a[0] * b[0]);
            let k = n as f64;
            let next = |l: &mut [f64; 2], x: f64| {
                let l2 =
                    ((2.0 * k + alpha + 3.0 - x) * l[1] - (k + alpha + 1.0) * l[0]) / (k + 2.0);
                *l = [l[1], l2];
            };
            next(&mut a, xi);
            next(&mut b, zeta);
            weight *= (k + 1.0) / (k + alpha + 1.0);
            un *= u;
            t
        },
        tol,
        100_000,
    )
}

/// `e^{-shift} <z|w>_unnormalized` by quadrature, `shift = (r_z² + r_w²)/2`.
fn kernel_scaled(
    p: &Params,
    z: &PhasePoint,
    w: &PhasePoint,
    abs_tol: f64,
) -> Result<(QuadResult, f64)> {
    p.require_positive_epsilon("overlap")?;
    let (xi, zeta) = (z.modulus_sqr(), w.modulus_sqr());
    let shift = 0.5 * (xi + zeta);
    let alpha = p.gamma - 1.0;
    let phase = Complex64::from_polar(1.0, z.theta - w.theta);
    let upper = (-0.5 * p.epsilon).exp();
    // t = s², t^{γ/2-1} dt = 2 s^{γ-1} ds
    let f = |s: f64| 2.0 * s.powf(alpha) * hh_scaled(alpha, xi, zeta, phase * (s * s), shift);
    let r = Quad::with_tol(abs_tol, 1e-13).integrate(f, 0.0, upper)?;
    let pre = (ln_gamma(p.gamma) + 0.5 * p.gamma * p.epsilon).exp();
    Ok((
        QuadResult {
            value: r.value * pre,
            abs_error: r.abs_error * pre,
            evaluations: r.evaluations,
        },
        shift,
    ))
}

/// Unnormalized overlap `sum_n conj(c_n(z)) c_n(w)` as the integral
/// `Γ(γ) e^{γε/2} ∫_0^{e^{-ε}} t^{γ/2-1} HH(r_z², r_w², t e^{i(θ_z-θ_w)}) dt`.
pub fn overlap_kernel(p: &Params, z: &PhasePoint, w: &PhasePoint) -> Result<QuadResult> {
    let (r, shift) = kernel_scaled(p, z, w, 0.0)?;
    let s = shift.exp();
    Ok(QuadResult {
        value: r.value * s,
        abs_error: r.abs_error * s,
        evaluations: r.evaluations,
    })
}

/// Normalized overlap `<z|w>` from the integral kernel.
pub fn overlap(p: &Params, z: &PhasePoint, w: &PhasePoint) -> Result<Complex64> {
    let (zz, _) = kernel_scaled(p, z, z, 0.0)?;
    let (ww, _) = kernel_scaled(p, w, w, 0.0)?;
    let scale = (zz.value.re * ww.value.re).sqrt();
    let (zw, _) = kernel_scaled(p, z, w, 1e-14 * scale)?;
    Ok(zw.value / scale)
}

/// Normalized overlap `<z|w>` by direct summation of the coefficients.
pub fn overlap_series(p: &Params, z: &PhasePoint, w: &PhasePoint) -> Result<Complex64> {
    let count = series_length(p, z).max(series_length(p, w));
    let cz = cs_coefficients(p, z, count)?;
    let cw = cs_coefficients(p, w, count)?;
    let mut zw = Complex64::new(0.0, 0.0);
    let (mut nz, mut nw) = (0.0, 0.0);
    for (a, b) in cz.iter().zip(&cw) {
        zw += a.value.conj() * b.value;
        nz += a.value.norm_sqr();
        nw += b.value.norm_sqr();
    }
    Ok(zw / (nz * nw).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epscs::normalization_series;
    use crate::specfun::laguerre_sequence;

    fn laguerre_table(alpha: f64, x: f64, count: usize) -> Vec<f64> {
        laguerre_sequence(count - 1, alpha, x).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hille_hardy_closed_form_matches_sum() {
        for &alpha in &[-0.5, 1.0, 2.5] {
            for &xi in &[0.3, 2.0, 6.0] {
                for &zeta in &[0.5, 3.0, 8.0] {
                    for u in [c(0.3, 0.0), c(-0.6, 0.0), Complex64::from_polar(0.9, 0.8)] {
                        let rhs = hille_hardy(alpha, xi, zeta, u).unwrap();
                        let lhs =
                            hille_hardy_series(alpha, xi, zeta, u, 1e-14 * rhs.norm()).unwrap();
                        let err = (lhs.value - rhs).norm() / rhs.norm();
                        assert!(err < 1e-9, "a={alpha} xi={xi} zeta={zeta} u={u}: {err:e}");
                    }
                }
            }
        }
    }

    #[test]
    fn hille_hardy_at_origin() {
        let v = hille_hardy(1.5, 2.0, 3.0, c(0.0, 0.0)).unwrap();
        assert!((v.re - (-ln_gamma(2.5)).exp()).abs() < 1e-15 && v.im == 0.0);
        assert!(hille_hardy(1.0, 1.0, 1.0, c(1.0, 0.0)).is_err());
        assert!(hille_hardy(-1.0, 1.0, 1.0, c(0.5, 0.0)).is_err());
    }

    #[test]
    fn kernel_diagonal_is_normalization() {
        let p = Params::new(3.0, 0.0, 0.2).unwrap();
        for &r in &[0.0, 0.7, 2.0] {
            let z = PhasePoint::new(r, 0.4).unwrap();
            let k = overlap_kernel(&p, &z, &z).unwrap().value;
            let n = normalization_series(&p, &z).unwrap().value.re;
            assert!(
                (k.re - n).abs() < 1e-11 * n && k.im.abs() < 1e-11 * n,
                "r={r}"
            );
        }
    }

    #[test]
    fn reference_overlap() {
        let p = Params::new(3.0, 0.0, 0.2).unwrap();
        let z = PhasePoint::new(1.0, 0.7).unwrap();
        let w = PhasePoint::new(2.0, 0.0).unwrap();
        let a = overlap(&p, &z, &w).unwrap();
        let b = overlap_series(&p, &z, &w).unwrap();
        assert!((a.norm() - b.norm()).abs() < 1e-8);
        assert!((a - b).norm() < 1e-10, "{a} {b}");
        assert!((overlap(&p, &z, &z).unwrap() - 1.0).norm() < 1e-14);
        let ba = overlap(&p, &w, &z).unwrap();
        assert!((ba - a.conj()).norm() < 1e-12);
    }

    #[test]
    fn common_phase_shift_keeps_modulus() {
        let p = Params::new(2.0, 0.0, 0.3).unwrap();
        let a = overlap(
            &p,
            &PhasePoint::new(1.2, 0.3).unwrap(),
            &PhasePoint::new(0.8, 2.0).unwrap(),
        )
        .unwrap();
        let b = overlap(
            &p,
            &PhasePoint::new(1.2, 1.3).unwrap(),
            &PhasePoint::new(0.8, 3.0).unwrap(),
        )
        .unwrap();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn series_coefficients_are_hille_hardy_terms() {
        // conj(c_n(z)) c_n(w) = Γ(γ) n!/(Γ(γ+n)(γ/2+n)) e^{-nε} u^n L_n L_n
        let p = Params::new(2.5, 0.0, 0.4).unwrap();
        let z = PhasePoint::new(1.1, 0.5).unwrap();
        let w = PhasePoint::new(0.6, 2.1).unwrap();
        let cz = cs_coefficients(&p, &z, 10).unwrap();
        let cw = cs_coefficients(&p, &w, 10).unwrap();
        let lz = laguerre_table(1.5, z.modulus_sqr(), 10);
        let lw = laguerre_table(1.5, w.modulus_sqr(), 10);
        for n in 0..10 {
            let nf = n as f64;
            let k = (ln_gamma(2.5) + ln_gamma(nf + 1.0) - ln_gamma(2.5 + nf) - nf * 0.4).exp()
                / (1.25 + nf);
            let want = k * lz[n] * lw[n] * Complex64::from_polar(1.0, nf * (z.theta - w.theta));
            let got = cz[n].value.conj() * cw[n].value;
            assert!((got - want).norm() < 1e-13 * want.norm().max(1e-300));
        }
    }
}
