//! Modified Bessel function `I_mu(w)` of complex argument, principal branch.
//!
//! Everything is routed through the reduced function
//! `R(w) = e^{-w} (w/2)^{-mu} I_mu(w)` on `Re w >= 0`, which is bounded there
//! and needs no branch choice in the Miller region. Left half-plane values
//! follow from `I_mu(w) = e^{±i mu pi} I_mu(-w)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::ln_gamma;
use crate::error::{ensure_finite, Error, Result};

const SERIES_RADIUS: f64 = 2.0;

fn asymptotic_radius(mu: f64) -> f64 {
    25.0 + mu * mu
}

/// Ascending series of `(w/2)^{-mu} I_mu(w)` in `w^2/4`.
fn series_g(mu: f64, w: Complex64) -> Complex64 {
    let q = 0.25 * w * w;
    let mut term = Complex64::new((-ln_gamma(mu + 1.0)).exp(), 0.0);
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (mu + k));
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() || k > 200.0 {
            break;
        }
    }
    sum
}

/// `R(w)` for `Re w >= 0`, `w != 0`.
fn reduced(mu: f64, w: Complex64) -> Complex64 {
    let r = w.norm();
    if r <= SERIES_RADIUS {
        return (-w).exp() * series_g(mu, w);
    }
    if r > asymptotic_radius(mu) {
        return reduced_asymptotic(mu, w);
    }
    reduced_miller(mu, w)
}

fn reduced_asymptotic(mu: f64, w: Complex64) -> Complex64 {
    let m = 4.0 * mu * mu;
    let inv = 1.0 / w;
    let mut t = Complex64::new(1.0, 0.0);
    let mut alt = t;
    let mut all = t;
    for k in 1..80 {
        let odd = (2 * k - 1) as f64;
        let next = t * inv * ((m - odd * odd) / (8.0 * k as f64));
        if next.norm() >= t.norm() || next.norm() == 0.0 {
            break;
        }
        t = next;
        if k % 2 == 0 {
            alt += t;
        } else {
            alt -= t;
        }
        all += t;
        if t.norm() < 1e-17 {
            break;
        }
    }
    // second exponential, sign chosen by the half-plane of Im w
    let s = if w.im >= 0.0 { 1.0 } else { -1.0 };
    let phase = Complex64::from_polar(1.0, s * mu * PI);
    let second = Complex64::new(0.0, s) * phase * (-2.0 * w).exp() * all;
    (0.5 * w).powf(-mu) / (2.0 * PI * w).sqrt() * (alt + second)
}

/// Miller's backward recurrence normalized by
/// `sum_k c_k I_{mu+k}(w) = e^w (w/2)^mu`.
fn reduced_miller(mu: f64, w: Complex64) -> Complex64 {
    let n = (2.0 * w.norm()).ceil() as usize + 40;
    // c_k / Γ(mu+1)
    let mut c = Vec::with_capacity(n + 1);
    c.push(1.0);
    c.push(2.0 * (mu + 1.0));
    for k in 1..n {
        let kf = k as f64;
        let next = c[k] * (mu + kf + 1.0) / (mu + kf) * (2.0 * mu + kf) / (kf + 1.0);
        c.push(next);
    }
    let inv = 1.0 / w;
    let mut f_next = Complex64::new(0.0, 0.0);
    let mut f = Complex64::new(1e-30, 0.0);
    let mut sum = c[n] * f;
    for k in (1..=n).rev() {
        let f_prev = f_next + 2.0 * (mu + k as f64) * inv * f;
        f_next = f;
        f = f_prev;
        sum += c[k - 1] * f;
        if f.norm() > 1e250 {
            f *= 1e-250;
            f_next *= 1e-250;
            sum *= 1e-250;
        }
    }
    f / sum * (-ln_gamma(mu + 1.0)).exp()
}

fn check(op: &'static str, mu: f64, w: Complex64) -> Result<()> {
    ensure_finite(op, "mu", mu)?;
    ensure_finite(op, "Re w", w.re)?;
    ensure_finite(op, "Im w", w.im)?;
    if mu <= -1.0 {
        return Err(Error::domain(op, format!("requires mu > -1, got {mu}")));
    }
    Ok(())
}

fn at_origin(op: &'static str, mu: f64) -> Result<Complex64> {
    if mu == 0.0 {
        Ok(Complex64::new(1.0, 0.0))
    } else if mu > 0.0 {
        Ok(Complex64::new(0.0, 0.0))
    } else {
        Err(Error::domain(op, "I_mu(0) is infinite for mu < 0"))
    }
}

/// `e^{-|Re w|} I_mu(w)`, principal branch of `w^mu`, `mu > -1`.
pub fn bessel_i_complex_scaled(mu: f64, w: Complex64) -> Result<Complex64> {
    check("bessel_i_complex", mu, w)?;
    if w.norm() == 0.0 {
        return at_origin("bessel_i_complex", mu);
    }
    let (v, phase) = if w.re >= 0.0 {
        (w, Complex64::new(1.0, 0.0))
    } else {
        let s = if w.im >= 0.0 { 1.0 } else { -1.0 };
        (-w, Complex64::from_polar(1.0, s * mu * PI))
    };
    let osc = Complex64::from_polar(1.0, v.im);
    Ok(phase * osc * (0.5 * v).powf(mu) * reduced(mu, v))
}

/// `I_mu(w)`, principal branch of `w^mu`, `mu > -1`.
pub fn bessel_i_complex(mu: f64, w: Complex64) -> Result<Complex64> {
    bessel_i_complex_scaled(mu, w).map(|v| v * w.re.abs().exp())
}

/// `e^{-|Re y|} (y/2)^{-mu} I_mu(y)`. The unscaled function is entire and
/// even in `y`, so no branch enters; at `y = 0` it equals `1/Γ(mu+1)`.
pub fn bessel_g_scaled(mu: f64, y: Complex64) -> Result<Complex64> {
    check("bessel_g", mu, y)?;
    let v = if y.re >= 0.0 { y } else { -y };
    if v.norm() <= SERIES_RADIUS {
        return Ok(series_g(mu, v) * (-v.re).exp());
    }
    Ok(Complex64::from_polar(1.0, v.im) * reduced(mu, v))
}
