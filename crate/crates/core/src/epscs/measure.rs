//! Densities of the measures on `ℂ` attached to the states.
//!
//! Both densities are taken with respect to Lebesgue measure `dA = ρ dρ dθ`
//! on the plane. With these densities the states resolve the identity
//! against `dA/(2π)`: for instance
//! `∫ |c_n(z)|²/N(z) · density(z) dA/(2π) = e^{-nε}`.

use super::{normalization_integral, Params, PhasePoint};
use crate::error::{ensure_finite, Error, Result};
use crate::specfun::ln_gamma;

/// Density of `dμ_{γ,ε}`: `N_{γ,ε}(z) (r²)^γ e^{-r²} / Γ(γ)`. Vanishes at
/// `z = 0`.
pub fn measure_density(p: &Params, z: &PhasePoint) -> Result<f64> {
    p.require_positive_epsilon("measure_density")?;
    if z.r == 0.0 {
        return Ok(0.0);
    }
    let x = z.modulus_sqr();
    let n = normalization_integral(p, z)?.value.re;
    Ok((n.ln() + p.gamma * x.ln() - x - ln_gamma(p.gamma)).exp())
}

/// Density of `dλ_ν`: `(r²)^{2(ν+1)} e^{-r²} / Γ(2ν+2)`.
pub fn target_measure_density(nu: f64, z: &PhasePoint) -> Result<f64> {
    ensure_finite("target_measure_density", "nu", nu)?;
    if nu <= -1.0 {
        return Err(Error::domain(
            "target_measure_density",
            format!("requires nu > -1, got {nu}"),
        ));
    }
    if z.r == 0.0 {
        return Ok(0.0);
    }
    let x = z.modulus_sqr();
    let k = 2.0 * (nu + 1.0);
    Ok((k * x.ln() - x - ln_gamma(k)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epscs::cs_coefficients;
    use crate::quad::Quad;
    use crate::specfun::{laguerre, pochhammer};

    #[test]
    fn radial_laguerre_moment() {
        // ∫_0^∞ L_n^{γ-1}(x)² x^γ e^{-x} dx = Γ(γ)(γ)_n(2n+γ)/n!
        for &g in &[1.0, 2.5, 4.0] {
            for n in [0usize, 1, 4, 9] {
                let f = |x: f64| laguerre(n, g - 1.0, x).unwrap().powi(2) * x.powf(g) * (-x).exp();
                let got = Quad::with_tol(0.0, 1e-12)
                    .integrate_from(f, 0.0)
                    .unwrap()
                    .value
                    .re;
                let want = ln_gamma(g).exp() * pochhammer(g, n) * (2.0 * n as f64 + g)
                    / pochhammer(1.0, n);
                assert!((got - want).abs() < 1e-9 * want, "g={g} n={n}");
            }
        }
    }

    #[test]
    fn diagonal_resolution() {
        // ∫ |c_n|²/N · density dA/(2π) = ∫_0^∞ |c_n|²/N · density · r dr
        let p = Params::new(2.0, 0.0, 0.3).unwrap();
        for n in [0usize, 2, 5] {
            let f = |r: f64| {
                if r == 0.0 {
                    return 0.0;
                }
                let z = PhasePoint::new(r, 0.0).unwrap();
                let c = cs_coefficients(&p, &z, n + 1).unwrap()[n].value.norm_sqr();
                let n_z = normalization_integral(&p, &z).unwrap().value.re;
                c / n_z * measure_density(&p, &z).unwrap() * r
            };
            let got = Quad::with_tol(1e-11, 0.0)
                .integrate(f, 0.0, 12.0)
                .unwrap()
                .value
                .re;
            let want = (-(n as f64) * 0.3).exp();
            assert!((got - want).abs() < 1e-8, "n={n}: {got} vs {want}");
        }
    }

    #[test]
    fn densities_are_radial_and_nonnegative() {
        let p = Params::new(3.0, 0.5, 0.2).unwrap();
        for &r in &[0.0, 0.4, 2.0, 5.0] {
            let a = measure_density(&p, &PhasePoint::new(r, 0.0).unwrap()).unwrap();
            let b = measure_density(&p, &PhasePoint::new(r, 2.0).unwrap()).unwrap();
            assert!(a >= 0.0 && (a - b).abs() <= 1e-12 * a.max(1e-300));
        }
        assert_eq!(
            target_measure_density(1.0, &PhasePoint::new(0.0, 0.0).unwrap()).unwrap(),
            0.0
        );
    }

    #[test]
    fn target_measure_total_mass() {
        // ∫ density dA = π Γ(2ν+3)/Γ(2ν+2) ... with dA = 2π r dr, x = r²: π ∫ x^k e^{-x} dx / Γ(k)
        let nu = 0.75;
        let f = |r: f64| {
            target_measure_density(nu, &PhasePoint::new(r, 0.0).unwrap()).unwrap()
                * 2.0
                * std::f64::consts::PI
                * r
        };
        let got = Quad::with_tol(1e-12, 0.0)
            .integrate(f, 0.0, 20.0)
            .unwrap()
            .value
            .re;
        let k = 2.0 * (nu + 1.0);
        let want = std::f64::consts::PI * k;
        assert!((got - want).abs() < 1e-9, "{got} vs {want}");
    }
}
