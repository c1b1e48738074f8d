//! Confluent hypergeometric limit function `0F1(; c; w)`.

use num_complex::Complex64;

use super::bessel_complex::bessel_g_scaled;
use super::gamma::ln_gamma;
use crate::error::{ensure_finite, Error, Result};

const MAX_TERMS: usize = 10_000;

/// `0F1(; c; w) = sum_k w^k / ((c)_k k!)`.
///
/// For `c > 0` and `|w| > 16` the value is taken from
/// `Γ(c) (y/2)^{1-c} I_{c-1}(y)` with `y = 2 sqrt(w)`; otherwise the
/// ascending series is summed until the tail, bounded geometrically once the
/// term ratio drops below 1/2, is negligible.
pub fn hyp0f1(c: f64, w: Complex64) -> Result<Complex64> {
    ensure_finite("hyp0f1", "c", c)?;
    ensure_finite("hyp0f1", "Re w", w.re)?;
    ensure_finite("hyp0f1", "Im w", w.im)?;
    if c <= 0.0 && c.fract() == 0.0 {
        return Err(Error::domain(
            "hyp0f1",
            format!("c = {c} is a pole of 1/Γ(c+k)"),
        ));
    }
    if c > 0.0 && w.norm() > 16.0 {
        let y = 2.0 * w.sqrt();
        let g = bessel_g_scaled(c - 1.0, y)?;
        return Ok(g * (ln_gamma(c) + y.re.abs()).exp());
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut quiet = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let ratio = w / ((c + kf) * (kf + 1.0));
        term *= ratio;
        sum += term;
        if ratio.norm() < 0.5 && term.norm() < 1e-16 * sum.norm() {
            quiet += 1;
            if quiet == 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
        if term.norm() == 0.0 {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        op: "hyp0f1",
        estimate: sum.norm(),
        error_bound: term.norm(),
        work: MAX_TERMS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{bessel_i, gamma};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trivial_and_poles() {
        assert_eq!(hyp0f1(2.5, c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert!(hyp0f1(0.0, c(1.0, 0.0)).is_err());
        assert!(hyp0f1(-3.0, c(1.0, 0.0)).is_err());
    }

    // reference values from 50-digit arithmetic
    #[test]
    fn reference_values() {
        let cases = [
            (2.5, 1.3, 0.0, 1.6264430433366084, 0.0),
            (2.5, -40.0, 0.0, -1.8563349070437904e-2, 0.0),
            (0.5, 25.0, 0.0, 1.1013232920103323e4, 0.0),
            (-1.5, 2.0, 0.0, 7.2829642844383885, 0.0),
            (
                3.0,
                -5.0,
                12.0,
                -8.7633421735549413e-1,
                -6.4595563974266227e-1,
            ),
        ];
        for (cc, wr, wi, vr, vi) in cases {
            let got = hyp0f1(cc, c(wr, wi)).unwrap();
            let want = c(vr, vi);
            assert!(
                (got - want).norm() <= 1e-13 * want.norm(),
                "c={cc}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn bessel_consistency() {
        // (y/2)^mu 0F1(mu+1; y^2/4) = Γ(mu+1) I_mu(y)
        for &mu in &[0.5, 1.5, 2.5] {
            let mut y: f64 = 0.05;
            while y <= 10.0 {
                let lhs = (0.5 * y).powf(mu) * hyp0f1(mu + 1.0, c(0.25 * y * y, 0.0)).unwrap().re;
                let rhs = gamma(mu + 1.0).unwrap() * bessel_i(mu, y).unwrap();
                assert!(((lhs - rhs) / rhs).abs() < 1e-10, "mu={mu} y={y}");
                y += 0.05;
            }
        }
    }
}
