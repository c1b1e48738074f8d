//! Laguerre and Gegenbauer polynomials by forward three-term recurrence.
//!
//! Both recurrences are forward stable for the regime used here: degrees up
//! to a few thousand and `x` of order 10² for Laguerre, `|u| <= 1` for
//! Gegenbauer. Outside that regime accuracy is not claimed.

use crate::error::{ensure_finite, Error, Result};

/// `L_0 .. L_{len-1}` of order `alpha` at `x` into `out`. No checks.
pub(crate) fn laguerre_fill(alpha: f64, x: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    out[0] = 1.0;
    if out.len() == 1 {
        return;
    }
    out[1] = alpha + 1.0 - x;
    for n in 1..out.len() - 1 {
        let k = n as f64;
        out[n + 1] = ((2.0 * k + alpha + 1.0 - x) * out[n] - (k + alpha) * out[n - 1]) / (k + 1.0);
    }
}

/// `C_0 .. C_{len-1}` of parameter `lambda` at `u` into `out`. No checks.
pub(crate) fn gegenbauer_fill(lambda: f64, u: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    out[0] = 1.0;
    if out.len() == 1 {
        return;
    }
    out[1] = 2.0 * lambda * u;
    for n in 1..out.len() - 1 {
        let k = n as f64;
        out[n + 1] =
            (2.0 * (k + lambda) * u * out[n] - (k + 2.0 * lambda - 1.0) * out[n - 1]) / (k + 1.0);
    }
}

fn check_laguerre(alpha: f64, x: f64) -> Result<()> {
    ensure_finite("laguerre", "alpha", alpha)?;
    ensure_finite("laguerre", "x", x)?;
    if alpha <= -1.0 {
        return Err(Error::domain(
            "laguerre",
            format!("requires alpha > -1, got {alpha}"),
        ));
    }
    Ok(())
}

fn check_gegenbauer(lambda: f64, u: f64) -> Result<()> {
    ensure_finite("gegenbauer", "lambda", lambda)?;
    ensure_finite("gegenbauer", "u", u)?;
    if lambda <= 0.0 {
        return Err(Error::domain(
            "gegenbauer",
            format!("requires lambda > 0, got {lambda}"),
        ));
    }
    if u.abs() > 1.0 {
        return Err(Error::domain(
            "gegenbauer",
            format!("requires |u| <= 1, got {u}"),
        ));
    }
    Ok(())
}

/// Generalized Laguerre polynomial `L_n^{(alpha)}(x)`, `alpha > -1`.
pub fn laguerre(n: usize, alpha: f64, x: f64) -> Result<f64> {
    check_laguerre(alpha, x)?;
    let mut buf = vec![0.0; n + 1];
    laguerre_fill(alpha, x, &mut buf);
    Ok(buf[n])
}

/// `[L_0^{(alpha)}(x), ..., L_nmax^{(alpha)}(x)]`.
pub fn laguerre_sequence(nmax: usize, alpha: f64, x: f64) -> Result<Vec<f64>> {
    check_laguerre(alpha, x)?;
    let mut buf = vec![0.0; nmax + 1];
    laguerre_fill(alpha, x, &mut buf);
    Ok(buf)
}

/// Gegenbauer polynomial `C_n^{lambda}(u)`, `lambda > 0`, `|u| <= 1`.
pub fn gegenbauer(n: usize, lambda: f64, u: f64) -> Result<f64> {
    check_gegenbauer(lambda, u)?;
    let mut buf = vec![0.0; n + 1];
    gegenbauer_fill(lambda, u, &mut buf);
    Ok(buf[n])
}

/// `[C_0^{lambda}(u), ..., C_nmax^{lambda}(u)]`.
pub fn gegenbauer_sequence(nmax: usize, lambda: f64, u: f64) -> Result<Vec<f64>> {
    check_gegenbauer(lambda, u)?;
    let mut buf = vec![0.0; nmax + 1];
    gegenbauer_fill(lambda, u, &mut buf);
    Ok(buf)
}

/// Unevaluated sum of two doubles, enough to carry the explicit Laguerre sum
/// through its cancellation.
#[derive(Clone, Copy, Debug)]
struct Dd(f64, f64);

impl Dd {
    fn from(x: f64) -> Self {
        Dd(x, 0.0)
    }

    fn two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        Dd(s, (a - (s - bb)) + (b - bb))
    }

    fn add(self, o: Dd) -> Dd {
        let s = Dd::two_sum(self.0, o.0);
        let t = Dd::two_sum(self.1, o.1);
        let hi = Dd::two_sum(s.0, s.1 + t.0);
        Dd::two_sum(hi.0, hi.1 + t.1)
    }

    fn mul(self, o: Dd) -> Dd {
        let p = self.0 * o.0;
        let e = self.0.mul_add(o.0, -p);
        Dd::two_sum(p, e + self.0 * o.1 + self.1 * o.0)
    }

    fn div(self, o: Dd) -> Dd {
        let q1 = self.0 / o.0;
        let r = self.add(o.mul(Dd::from(-q1)));
        let q2 = r.0 / o.0;
        let r = r.add(o.mul(Dd::from(-q2)));
        let q3 = r.0 / o.0;
        Dd::two_sum(q1, q2).add(Dd::from(q3))
    }
}

/// `L_n^{(alpha)}(x)` from the explicit sum
/// `sum_k (-1)^k binom(n+alpha, n-k) x^k / k!`, accumulated in double-double
/// arithmetic. Independent of the recurrence; meant as an oracle.
pub fn laguerre_explicit(n: usize, alpha: f64, x: f64) -> Result<f64> {
    check_laguerre(alpha, x)?;
    let mut term = Dd::from(1.0);
    for j in 1..=n {
        term = term
            .mul(Dd::two_sum(alpha, j as f64))
            .div(Dd::from(j as f64));
    }
    let mut sum = term;
    for k in 0..n {
        let num = Dd::from(-x).mul(Dd::from((n - k) as f64));
        let den = Dd::two_sum(alpha, (k + 1) as f64).mul(Dd::from((k + 1) as f64));
        term = term.mul(num).div(den);
        sum = sum.add(term);
    }
    Ok(sum.0 + sum.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::pochhammer;
    use proptest::prelude::*;

    #[test]
    fn low_degree_closed_forms() {
        assert_eq!(laguerre(0, 2.3, 7.0).unwrap(), 1.0);
        assert_eq!(laguerre(1, 0.5, 0.25).unwrap(), 1.25);
        let x: f64 = 1.7;
        let a = 0.3;
        let l2 = 0.5 * x * x - (a + 2.0) * x + 0.5 * (a + 1.0) * (a + 2.0);
        assert!((laguerre(2, a, x).unwrap() - l2).abs() < 1e-15);
        assert_eq!(gegenbauer(0, 1.5, 0.3).unwrap(), 1.0);
        assert_eq!(gegenbauer(1, 1.5, 0.3).unwrap(), 2.0 * 1.5 * 0.3);
    }

    #[test]
    fn laguerre_at_origin_is_binomial() {
        for n in 0..40 {
            for &a in &[-0.5, 0.0, 1.0, 2.5] {
                let want = pochhammer(a + 1.0, n) / pochhammer(1.0, n);
                let got = laguerre(n, a, 0.0).unwrap();
                assert!((got - want).abs() <= 1e-12 * want.abs(), "n={n} a={a}");
            }
        }
    }

    #[test]
    fn recurrence_matches_explicit_sum() {
        for &a in &[0.5, 1.0, 3.0] {
            for n in 0..=30 {
                let mut x = 0.0;
                while x <= 20.0 {
                    let rec = laguerre(n, a, x).unwrap();
                    let exp = laguerre_explicit(n, a, x).unwrap();
                    // scale by the local size of the recurrence terms
                    let seq = laguerre_sequence(n, a, x).unwrap();
                    let scale = seq.iter().fold(exp.abs(), |m, v| m.max(v.abs()));
                    assert!((rec - exp).abs() <= 1e-10 * scale, "n={n} a={a} x={x}");
                    x += 0.37;
                }
            }
        }
    }

    #[test]
    fn chebyshev_second_kind() {
        for n in 0..=40 {
            let mut t = 0.05;
            while t < std::f64::consts::PI - 0.05 {
                let want = ((n + 1) as f64 * t).sin() / t.sin();
                let got = gegenbauer(n, 1.0, t.cos()).unwrap();
                assert!((got - want).abs() < 1e-11, "n={n} t={t}");
                t += 0.013;
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(laguerre(3, -1.0, 0.5).is_err());
        assert!(gegenbauer(3, 0.0, 0.5).is_err());
        assert!(gegenbauer(3, 1.0, 1.0 + 1e-12).is_err());
        assert!(laguerre(3, 1.0, f64::NAN).is_err());
    }

    proptest! {
        #[test]
        fn gegenbauer_endpoint_value(n in 0usize..60, lam in 0.05f64..4.0) {
            // C_n^lambda(1) = (2 lambda)_n / n!
            let want = pochhammer(2.0 * lam, n) / pochhammer(1.0, n);
            let got = gegenbauer(n, lam, 1.0).unwrap();
            prop_assert!((got - want).abs() <= 1e-11 * want.abs());
        }

        #[test]
        fn gegenbauer_parity(n in 0usize..60, lam in 0.05f64..4.0, u in -1.0f64..1.0) {
            let s = if n % 2 == 0 { 1.0 } else { -1.0 };
            let a = gegenbauer(n, lam, u).unwrap();
            let b = gegenbauer(n, lam, -u).unwrap();
            prop_assert!((a - s * b).abs() <= 1e-12 * a.abs().max(1.0));
        }

        #[test]
        fn laguerre_derivative_relation(n in 1usize..40, a in -0.9f64..4.0, x in 0.0f64..15.0) {
            // L_n^{a}(x) = L_n^{a+1}(x) - L_{n-1}^{a+1}(x)
            let lhs = laguerre(n, a, x).unwrap();
            let rhs = laguerre(n, a + 1.0, x).unwrap() - laguerre(n - 1, a + 1.0, x).unwrap();
            let scale = laguerre(n, a + 1.0, x).unwrap().abs().max(1.0);
            prop_assert!((lhs - rhs).abs() <= 1e-11 * scale);
        }
    }
}
