//! Bessel functions `J`, `Y`, `I`, `K` of real order and positive argument.
//!
//! Small arguments (`x < 2`) use Temme's series for the pair at the reduced
//! order `|mu| <= 1/2`, larger ones Steed's continued fraction; Miller-type
//! CF1 ratios and the Wronskian fix the regular solution, recurrences move to
//! the requested order. Large arguments switch to the Hankel expansions.
//! `I` and `K` are computed in scaled form (`e^{-x} I`, `e^{x} K`).

use std::f64::consts::PI;

use super::gamma::{ln_gamma, temme_gammas};
use crate::error::{ensure_finite, Error, Result};

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const MAXIT: usize = 100_000;

/// Coefficients `a_k(nu)` of the Hankel expansions, `a_0 = 1`, up to the
/// point where `a_k / x^k` stops decreasing or drops below `1e-17`.
fn hankel_terms(nu: f64, x: f64) -> Vec<f64> {
    let m = 4.0 * nu * nu;
    let mut out = vec![1.0];
    let mut t = 1.0;
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        let next = t * (m - odd * odd) / (8.0 * k as f64 * x);
        if next.abs() >= t.abs() || next == 0.0 {
            break;
        }
        t = next;
        out.push(t);
        if t.abs() < 1e-17 {
            break;
        }
    }
    out
}

/// `(e^{-x} I_nu(x), e^{x} K_nu(x))` from the large-argument expansions.
fn ik_asymptotic_scaled(nu: f64, x: f64) -> (f64, f64) {
    let terms = hankel_terms(nu, x);
    let mut si = 0.0;
    let mut sk = 0.0;
    for (k, t) in terms.iter().enumerate().rev() {
        si += if k % 2 == 0 { *t } else { -*t };
        sk += t;
    }
    (si / (2.0 * PI * x).sqrt(), sk * (PI / (2.0 * x)).sqrt())
}

/// `(J_nu(x), Y_nu(x))` from the large-argument expansions.
fn jy_asymptotic(nu: f64, x: f64) -> (f64, f64) {
    let terms = hankel_terms(nu, x);
    let mut p = 0.0;
    let mut q = 0.0;
    for (k, t) in terms.iter().enumerate().rev() {
        let s = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += s * t;
        } else {
            q += s * t;
        }
    }
    let chi = x - (0.5 * nu + 0.25) * PI;
    let (s, c) = chi.sin_cos();
    let amp = (2.0 / (PI * x)).sqrt();
    (amp * (p * c - q * s), amp * (p * s + q * c))
}

fn use_asymptotic(nu: f64, x: f64) -> bool {
    x > 25.0 + nu * nu
}

/// `(J_nu(x), Y_nu(x))` for `nu >= 0`, `x > 0`.
fn bessjy(nu: f64, x: f64) -> (f64, f64) {
    if use_asymptotic(nu, x) {
        return jy_asymptotic(nu, x);
    }
    let nl = if x < 2.0 {
        (nu + 0.5) as usize
    } else {
        (nu - x + 1.5).max(0.0) as usize
    };
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: J'_nu / J_nu
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() <= EPS {
            break;
        }
    }
    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let t = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * t - rjl;
        rjl = t;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let (rjmu, mut rymu, mut ry1);
    if x < 2.0 {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS {
            1.0
        } else {
            pimu / pimu.sin()
        };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = 2.0 / PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let e = e.exp();
        let mut p = e / (gampl * PI);
        let mut q = 1.0 / (e * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS {
            1.0
        } else {
            pimu2.sin() / pimu2
        };
        let r = PI * pimu2 * fact3 * fact3;
        let mut c = 1.0;
        let d = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * (ff + r * q);
            sum += del;
            sum1 += c * p - fi * del;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                break;
            }
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        // CF2: p + iq = (J' + iY') / (J + iY), Steed's algorithm
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        for i in 1..MAXIT {
            a += (2 * i) as f64;
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() <= EPS {
                break;
            }
        }
        let gam = (p - f) / q;
        rjmu = (w / ((p - f) * gam + q)).sqrt().copysign(rjl);
        rymu = rjmu * gam;
        let rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }
    let fact = rjmu / rjl;
    let rj = rjl1 * fact;
    for i in 1..=nl {
        let t = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = t;
    }
    (rj, rymu)
}

/// `(e^{x} K_nu(x), e^{x} K_{nu+1}(x))` for `nu >= 0`, `x > 0`, computed at the
/// reduced order and recurred upward.
fn k_pair_scaled(nu: f64, x: f64) -> (f64, f64) {
    let nl = (nu + 0.5) as usize;
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let (mut rkmu, mut rk1);
    if x < 2.0 {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS {
            1.0
        } else {
            pimu / pimu.sin()
        };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let e = e.exp();
        let mut p = 0.5 * e / gampl;
        let mut q = 0.5 / (e * gammi);
        let mut c = 1.0;
        let d = x2 * x2;
        let mut sum1 = p;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * ff;
            sum += del;
            sum1 += c * (p - fi * ff);
            if del.abs() < sum.abs() * EPS {
                break;
            }
        }
        let ex = x.exp();
        rkmu = sum * ex;
        rk1 = sum1 * xi2 * ex;
    } else {
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut h = d;
        let mut delh = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - xmu2;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        for i in 1..MAXIT {
            a -= (2 * i) as f64;
            c = -a * c / (i as f64 + 1.0);
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= b * d - 1.0;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < EPS {
                break;
            }
        }
        h *= a1;
        rkmu = (PI / (2.0 * x)).sqrt() / s;
        rk1 = rkmu * (xmu + x + 0.5 - h) * xi;
    }
    for i in 1..=nl {
        let t = (xmu + i as f64) * xi2 * rk1 + rkmu;
        rkmu = rk1;
        rk1 = t;
    }
    (rkmu, rk1)
}

/// `e^{-x} I_nu(x)` for `nu >= 0`, `x > 0`, from CF1 and the Wronskian.
fn i_scaled_cf(nu: f64, x: f64) -> f64 {
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    for _ in 0..MAXIT {
        b += xi2;
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    // f = I'_nu / I_nu; Wronskian I K' - I' K = -1/x
    let (k, k1) = k_pair_scaled(nu, x);
    let kp = nu * xi * k - k1;
    xi / (h * k - kp)
}

/// `e^{-x} I_mu(x)` by the ascending series, any `mu > -1`, `x > 0`.
fn i_series_scaled(mu: f64, x: f64) -> f64 {
    let mut term = (mu * (0.5 * x).ln() - ln_gamma(mu + 1.0) - x).exp();
    let q = 0.25 * x * x;
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (mu + k));
        sum += term;
        if term <= 1e-17 * sum || term == 0.0 {
            break;
        }
    }
    sum
}

fn i_scaled_nonneg(nu: f64, x: f64) -> f64 {
    if x <= 12.0 {
        i_series_scaled(nu, x)
    } else if x > 30.0_f64.max(nu * nu) {
        ik_asymptotic_scaled(nu, x).0
    } else {
        i_scaled_cf(nu, x)
    }
}

fn k_scaled_nonneg(nu: f64, x: f64) -> f64 {
    k_pair_scaled(nu, x).0
}

fn check_arg(op: &'static str, order: f64, x: f64) -> Result<()> {
    ensure_finite(op, "order", order)?;
    ensure_finite(op, "x", x)?;
    if x < 0.0 {
        return Err(Error::domain(op, format!("requires x >= 0, got {x}")));
    }
    Ok(())
}

/// `J_beta(x)` for `beta >= -1/2`, `x >= 0`.
pub fn bessel_j(beta: f64, x: f64) -> Result<f64> {
    check_arg("bessel_j", beta, x)?;
    if beta < -0.5 {
        return Err(Error::domain(
            "bessel_j",
            format!("requires beta >= -1/2, got {beta}"),
        ));
    }
    if x == 0.0 {
        if beta < 0.0 {
            return Err(Error::domain(
                "bessel_j",
                "J_beta(0) is infinite for beta < 0",
            ));
        }
        return Ok(if beta == 0.0 { 1.0 } else { 0.0 });
    }
    if beta >= 0.0 {
        return Ok(bessjy(beta, x).0);
    }
    if beta == -0.5 {
        return Ok((2.0 / (PI * x)).sqrt() * x.cos());
    }
    let nu = -beta;
    let (j, y) = bessjy(nu, x);
    Ok((nu * PI).cos() * j - (nu * PI).sin() * y)
}

/// `e^{-x} I_mu(x)` for `mu > -1`, `x >= 0`.
pub fn bessel_i_scaled(mu: f64, x: f64) -> Result<f64> {
    check_arg("bessel_i", mu, x)?;
    if mu <= -1.0 {
        return Err(Error::domain(
            "bessel_i",
            format!("requires mu > -1, got {mu}"),
        ));
    }
    if x == 0.0 {
        if mu < 0.0 {
            return Err(Error::domain("bessel_i", "I_mu(0) is infinite for mu < 0"));
        }
        return Ok(if mu == 0.0 { 1.0 } else { 0.0 });
    }
    if mu >= 0.0 || x <= 12.0 {
        return Ok(if mu >= 0.0 {
            i_scaled_nonneg(mu, x)
        } else {
            i_series_scaled(mu, x)
        });
    }
    // I_{-nu} = I_nu + (2/pi) sin(nu pi) K_nu
    let nu = -mu;
    let k = k_scaled_nonneg(nu, x) * (-2.0 * x).exp();
    Ok(i_scaled_nonneg(nu, x) + 2.0 / PI * (nu * PI).sin() * k)
}

/// `I_mu(x)` for `mu > -1`, `x >= 0`. Overflows to `inf` beyond `x ≈ 709`;
/// use [`bessel_i_scaled`] there.
pub fn bessel_i(mu: f64, x: f64) -> Result<f64> {
    bessel_i_scaled(mu, x).map(|v| v * x.exp())
}

/// `e^{x} K_mu(x)` for `x > 0`; `K` is even in `mu`.
pub fn bessel_k_scaled(mu: f64, x: f64) -> Result<f64> {
    check_arg("bessel_k", mu, x)?;
    if x == 0.0 {
        return Err(Error::domain("bessel_k", "requires x > 0"));
    }
    Ok(k_scaled_nonneg(mu.abs(), x))
}

/// `K_mu(x)` for `x > 0`.
pub fn bessel_k(mu: f64, x: f64) -> Result<f64> {
    bessel_k_scaled(mu, x).map(|v| v * (-x).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    // reference values from 50-digit arithmetic
    const J_REF: &[(f64, f64, f64)] = &[
        (1.5, 2.0, 4.9129377868716235e-1),
        (0.0, 1.0, 7.6519768655796655e-1),
        (0.0, 30.0, -8.6367983581040211e-2),
        (2.5, 0.1, 1.6808871900334129e-4),
        (3.5, 8.0, -2.3256798563458326e-1),
        (1.5, 49.5, -8.33588817481383e-2),
        (0.25, 5.0, -2.8097206576137601e-1),
        (-0.25, 3.0, -3.8750665401061038e-1),
        (2.0, 45.0, -1.1455872158985968e-1),
    ];

    const I_REF: &[(f64, f64, f64)] = &[
        (1.0, 3.0, 3.9533702174026094),
        (0.0, 0.5, 1.0634833707413235),
        (2.5, 20.0, 3.7112382428607806e7),
        (0.3, 1.7, 1.7507017862878437),
        (-0.5, 2.0, 2.1225916201776372),
        (-0.7, 14.0, 1.2708758079451143e5),
        (4.0, 40.0, 1.2165686635546883e16),
    ];

    const K_REF: &[(f64, f64, f64)] = &[
        (1.0, 2.0, 1.3986588181652243e-1),
        (0.0, 0.1, 2.4270690247020166),
        (2.0, 0.5, 7.5501835512408694),
        (0.3, 5.0, 3.7216693288734255e-3),
        (1.5, 35.0, 1.3738948833636848e-16),
        (4.0, 1.2, 2.0596272028265564e1),
    ];

    #[test]
    fn j_reference_values() {
        for &(nu, x, want) in J_REF {
            let got = bessel_j(nu, x).unwrap();
            assert!(
                (got - want).abs() < 1e-14 * want.abs().max(1.0),
                "J_{nu}({x}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn i_reference_values() {
        for &(nu, x, want) in I_REF {
            let got = bessel_i(nu, x).unwrap();
            assert!(rel(got, want) < 1e-13, "I_{nu}({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn k_reference_values() {
        for &(nu, x, want) in K_REF {
            let got = bessel_k(nu, x).unwrap();
            assert!(rel(got, want) < 1e-13, "K_{nu}({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn edge_values() {
        assert_eq!(bessel_j(0.7, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_j(0.0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_i(2.0, 0.0).unwrap(), 0.0);
        assert!(bessel_j(-0.6, 1.0).is_err());
        assert!(bessel_j(-0.3, 0.0).is_err());
        assert!(bessel_i(-1.0, 1.0).is_err());
        assert!(bessel_k(1.0, 0.0).is_err());
        assert!(bessel_k(1.0, -1.0).is_err());
    }

    #[test]
    fn half_integer_closed_forms() {
        let mut x = 0.01;
        while x < 60.0 {
            let s = (2.0 / (PI * x)).sqrt();
            let j = bessel_j(0.5, x).unwrap();
            assert!((j - s * x.sin()).abs() <= 1e-12 * s, "J x={x}");
            let jm = bessel_j(-0.5, x).unwrap();
            assert!((jm - s * x.cos()).abs() <= 1e-12 * s, "J- x={x}");
            let i = bessel_i_scaled(0.5, x).unwrap();
            let want = s * 0.5 * (1.0 - (-2.0 * x).exp());
            assert!(rel(i, want) < 1e-12, "I x={x}");
            let im = bessel_i_scaled(-0.5, x).unwrap();
            let want = s * 0.5 * (1.0 + (-2.0 * x).exp());
            assert!(rel(im, want) < 1e-12, "I- x={x}");
            let kk = (PI / (2.0 * x)).sqrt();
            assert!(rel(bessel_k_scaled(0.5, x).unwrap(), kk) < 1e-12, "K x={x}");
            assert!(
                rel(bessel_k_scaled(-0.5, x).unwrap(), kk) < 1e-12,
                "K- x={x}"
            );
            x *= 1.3;
        }
    }

    #[test]
    fn regimes_join_continuously() {
        for &nu in &[0.0, 0.5, 1.0, 2.5, 4.0] {
            for &x in &[2.0, 12.0, 25.0 + nu * nu, 30.0_f64.max(nu * nu)] {
                for &dx in &[-1e-14, 1e-14] {
                    let a = bessel_i_scaled(nu, x).unwrap();
                    let b = bessel_i_scaled(nu, x + dx).unwrap();
                    assert!(rel(a, b) < 1e-12, "I nu={nu} x={x}");
                    let a = bessel_k_scaled(nu, x).unwrap();
                    let b = bessel_k_scaled(nu, x + dx).unwrap();
                    assert!(rel(a, b) < 1e-12, "K nu={nu} x={x}");
                    let a = bessel_j(nu, x).unwrap();
                    let b = bessel_j(nu, x + dx).unwrap();
                    assert!((a - b).abs() < 1e-12, "J nu={nu} x={x}");
                }
            }
        }
    }

    #[test]
    fn ik_product_positive_decreasing() {
        for &nu in &[0.0, 0.5, 1.0, 1.5, 3.0] {
            let mut prev = f64::INFINITY;
            let mut x = 0.05;
            while x < 80.0 {
                let p = bessel_i_scaled(nu, x).unwrap() * bessel_k_scaled(nu, x).unwrap();
                assert!(p > 0.0 && p < prev, "nu={nu} x={x}");
                prev = p;
                x *= 1.2;
            }
        }
    }

    proptest! {
        #[test]
        fn wronskian_ik(nu in 0.0f64..5.0, x in 0.05f64..200.0) {
            // I_nu K_{nu+1} + I_{nu+1} K_nu = 1/x
            let w = bessel_i_scaled(nu, x).unwrap() * bessel_k_scaled(nu + 1.0, x).unwrap()
                + bessel_i_scaled(nu + 1.0, x).unwrap() * bessel_k_scaled(nu, x).unwrap();
            prop_assert!(rel(w * x, 1.0) < 1e-12);
        }

        #[test]
        fn wronskian_jy(nu in 0.0f64..4.0, x in 0.05f64..100.0) {
            // J_{nu+1} Y_nu - J_nu Y_{nu+1} = 2/(pi x)
            let (j0, y0) = bessjy(nu, x);
            let (j1, y1) = bessjy(nu + 1.0, x);
            let w = j1 * y0 - j0 * y1;
            prop_assert!(rel(w * PI * x / 2.0, 1.0) < 1e-11);
        }

        #[test]
        fn i_recurrence(nu in 0.0f64..4.0, x in 0.1f64..100.0) {
            // I_{nu-1} - I_{nu+1} = (2 nu / x) I_nu, for nu >= 1 to keep orders nonnegative
            let nu = nu + 1.0;
            let lhs = bessel_i_scaled(nu - 1.0, x).unwrap() - bessel_i_scaled(nu + 1.0, x).unwrap();
            let rhs = 2.0 * nu / x * bessel_i_scaled(nu, x).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * bessel_i_scaled(nu - 1.0, x).unwrap());
        }
    }
}
