//! Oracle suites. Each suite returns one [`Check`] per comparison, in a
//! fixed order, so repeated runs produce identical reports.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::epscs::{
    cs_transform, extrapolate_to_zero, hille_hardy, hille_hardy_series, normalization_integral,
    normalization_limit, normalization_series, square_well_wavefunction, transform_limit,
    CoherentState, Params, PhasePoint,
};
use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::identity::{convergence_study, Smoother};
use crate::laghankel::{
    hankel_representation, laguerre_function, watson_integral, LaguerreFunctionSpec,
};
use crate::quad::CompositeRule;
use crate::spt::{eigenstate, eigenvalue, spt_potential, Eigenbasis, SptConfig};

/// How `measured` is held against `expected`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    /// `|measured - expected| <= tol`
    Absolute,
    /// `|measured - expected| <= tol |expected|`
    Relative,
    /// `|measured - expected| <= max(tol, tol |expected|)`
    Mixed,
    /// `measured <= expected + tol`; a slack for rounding, kept under `--tol`.
    AtMost,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub expected: f64,
    pub tol: f64,
    pub comparison: Comparison,
}

impl Check {
    fn new(
        name: impl Into<String>,
        measured: f64,
        expected: f64,
        tol: f64,
        comparison: Comparison,
    ) -> Self {
        Check {
            name: name.into(),
            measured,
            expected,
            tol,
            comparison,
        }
    }

    /// A failed computation, reported as a failing row.
    fn failed(name: impl Into<String>, expected: f64, tol: f64, comparison: Comparison) -> Self {
        Check::new(name, f64::NAN, expected, tol, comparison)
    }

    pub fn pass(&self) -> bool {
        let d = (self.measured - self.expected).abs();
        match self.comparison {
            Comparison::Absolute => d <= self.tol,
            Comparison::Relative => d <= self.tol * self.expected.abs(),
            Comparison::Mixed => d <= self.tol.max(self.tol * self.expected.abs()),
            Comparison::AtMost => self.measured <= self.expected + self.tol,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Eigenbasis,
    HilleHardy,
    Normalization,
    ClosedForm,
    Identity,
    Hankel,
    Transform,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Eigenbasis,
        Suite::HilleHardy,
        Suite::Normalization,
        Suite::ClosedForm,
        Suite::Identity,
        Suite::Hankel,
        Suite::Transform,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Eigenbasis => "eigenbasis",
            Suite::HilleHardy => "hille-hardy",
            Suite::Normalization => "normalization",
            Suite::ClosedForm => "closed-form",
            Suite::Identity => "identity",
            Suite::Hankel => "hankel",
            Suite::Transform => "transform",
        }
    }

    /// Runs the suite. `tol` replaces the pinned tolerance of every
    /// tolerance-based row.
    pub fn run(&self, tol: Option<f64>) -> Result<Vec<Check>> {
        if let Some(t) = tol {
            if !(t > 0.0) || !t.is_finite() {
                return Err(Error::domain(
                    "verify",
                    format!("tolerance must be positive, got {t}"),
                ));
            }
        }
        let mut checks = match self {
            Suite::Eigenbasis => eigenbasis(),
            Suite::HilleHardy => hille_hardy_suite(),
            Suite::Normalization => normalization(),
            Suite::ClosedForm => closed_form(),
            Suite::Identity => identity()?,
            Suite::Hankel => hankel(),
            Suite::Transform => transform()?,
        };
        if let Some(t) = tol {
            for c in checks
                .iter_mut()
                .filter(|c| c.comparison != Comparison::AtMost)
            {
                c.tol = t;
            }
        }
        Ok(checks)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .iter()
            .copied()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::domain("verify", format!("unknown suite '{s}'")))
    }
}

fn eigenbasis() -> Vec<Check> {
    let rule = CompositeRule::new(0.0, PI, 32, 20).expect("static rule");
    let mut out: Vec<Check> = [0.0, 0.5, 1.0, 2.5]
        .par_iter()
        .map(|&nu| {
            let basis = Eigenbasis::new(SptConfig::standard(nu).expect("valid nu"), 16);
            let table: Vec<Vec<f64>> = rule.nodes.iter().map(|&x| basis.values(x)).collect();
            let mut worst: f64 = 0.0;
            for n in 0..16 {
                for m in 0..=n {
                    let s: Vec<f64> = table.iter().map(|v| v[n] * v[m]).collect();
                    let want = if n == m { 1.0 } else { 0.0 };
                    worst = worst.max((rule.apply(&s) - want).abs());
                }
            }
            Check::new(
                format!("eigenbasis/orthonormality/nu={nu}"),
                worst,
                0.0,
                1e-9,
                Comparison::Absolute,
            )
        })
        .collect();
    let cases: Vec<(f64, usize)> = [0.5, 1.5]
        .iter()
        .flat_map(|&nu| (0..=8).map(move |n| (nu, n)))
        .collect();
    let h = PI / 4000.0;
    out.par_extend(cases.par_iter().map(|&(nu, n)| {
        let s = SptConfig::standard(nu).expect("valid nu");
        let f = |t: f64| eigenstate(&s, n, t).unwrap_or(f64::NAN);
        let worst = (0..=59)
            .map(|i| 0.1 + (PI - 0.2) * i as f64 / 59.0)
            .map(|x| {
                let d2 = (-f(x - 2.0 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h)
                    - f(x + 2.0 * h))
                    / (12.0 * h * h);
                let v = spt_potential(&s, x).unwrap_or(f64::NAN);
                (-d2 + v * f(x) - eigenvalue(&s, n) * f(x)).abs()
            })
            .fold(0.0, f64::max);
        Check::new(
            format!("eigenbasis/residual/nu={nu}/n={n}"),
            worst,
            0.0,
            1e-4,
            Comparison::Absolute,
        )
    }));
    out
}

fn hille_hardy_suite() -> Vec<Check> {
    let us = [
        Complex64::new(0.3, 0.0),
        Complex64::new(-0.6, 0.0),
        Complex64::from_polar(0.9, 0.8),
    ];
    let mut cases = Vec::new();
    for alpha in [-0.5, 1.0, 2.5] {
        for xi in [0.3, 2.0, 6.0] {
            for zeta in [0.5, 3.0, 8.0] {
                for u in us {
                    cases.push((alpha, xi, zeta, u));
                }
            }
        }
    }
    cases
        .par_iter()
        .map(|&(alpha, xi, zeta, u)| {
            let name = format!(
                "hille-hardy/alpha={alpha}/xi={xi}/zeta={zeta}/u={:.4}{:+.4}i",
                u.re, u.im
            );
            let rhs = hille_hardy(alpha, xi, zeta, u);
            let lhs = rhs
                .as_ref()
                .map_err(Clone::clone)
                .and_then(|r| hille_hardy_series(alpha, xi, zeta, u, 1e-14 * r.norm()));
            match (lhs, rhs) {
                (Ok(l), Ok(r)) => Check::new(
                    name,
                    (l.value - r).norm() / r.norm(),
                    0.0,
                    1e-9,
                    Comparison::Absolute,
                ),
                _ => Check::failed(name, 0.0, 1e-9, Comparison::Absolute),
            }
        })
        .collect()
}

fn normalization() -> Vec<Check> {
    let mut cases = Vec::new();
    for gamma in [1.0, 2.0, 3.0, 5.0] {
        for eps in [0.5, 0.1] {
            for r in [0.3, 1.0, 2.5, 4.0] {
                cases.push((gamma, eps, r));
            }
        }
    }
    let mut out: Vec<Check> = cases
        .par_iter()
        .map(|&(gamma, eps, r)| {
            let name = format!("normalization/integral/gamma={gamma}/eps={eps}/r={r}");
            let run = || -> Result<(f64, f64)> {
                let p = Params::new(gamma, 0.0, eps)?;
                let z = PhasePoint::new(r, 1.0)?;
                Ok((
                    normalization_integral(&p, &z)?.value.re,
                    normalization_series(&p, &z)?.value.re,
                ))
            };
            match run() {
                Ok((a, b)) => Check::new(name, a, b, 1e-8, Comparison::Relative),
                Err(_) => Check::failed(name, 0.0, 1e-8, Comparison::Relative),
            }
        })
        .collect();
    let mut limits = Vec::new();
    for gamma in [2.0, 3.0, 5.0] {
        for r in [0.5, 1.0, 2.0, 4.0] {
            limits.push((gamma, r));
        }
    }
    out.par_extend(limits.par_iter().map(|&(gamma, r)| {
        let name = format!("normalization/limit/gamma={gamma}/r={r}");
        let run = || -> Result<(f64, f64)> {
            let z = PhasePoint::new(r, 0.0)?;
            let pts = [1e-2_f64, 4e-3, 2e-3, 1e-3]
                .iter()
                .map(|&e| {
                    Ok((
                        e.sqrt(),
                        normalization_integral(&Params::new(gamma, 0.0, e)?, &z)?.value,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((
                extrapolate_to_zero(&pts).re,
                normalization_limit(gamma, &z)?,
            ))
        };
        match run() {
            Ok((a, b)) => Check::new(name, a, b, 1e-4, Comparison::Relative),
            Err(_) => Check::failed(name, 0.0, 1e-4, Comparison::Relative),
        }
    }));
    out
}

fn closed_form() -> Vec<Check> {
    let mut cases = Vec::new();
    for nu in [0.5, 1.0, 2.0] {
        for r in [0.5, 1.5, 3.0] {
            for theta in [0.0, 0.9, 2.5] {
                for eps in [0.5, 0.2, 0.05] {
                    cases.push((nu, r, theta, eps));
                }
            }
        }
    }
    let xs: Vec<f64> = (0..=40).map(|i| PI * i as f64 / 40.0).collect();
    let sup = |st: &CoherentState, f: &dyn Fn(f64) -> Result<Complex64>| -> Result<f64> {
        xs.iter()
            .map(|&x| Ok((f(x)? - st.series(x)?.value).norm()))
            .try_fold(0.0_f64, |m, v: Result<f64>| Ok(m.max(v?)))
    };
    let mut out: Vec<Check> = cases
        .par_iter()
        .map(|&(nu, r, theta, eps)| {
            let name = format!("closed-form/series/nu={nu}/r={r}/theta={theta}/eps={eps}");
            let run = || -> Result<f64> {
                let st = CoherentState::new(Params::matched(nu, eps)?, PhasePoint::new(r, theta)?)?;
                sup(&st, &|x| st.closed_form(x))
            };
            Check::new(
                name,
                run().unwrap_or(f64::NAN),
                0.0,
                1e-7,
                Comparison::Absolute,
            )
        })
        .collect();
    let wells: Vec<(f64, f64, f64)> = cases
        .iter()
        .filter(|c| c.0 == 0.5)
        .map(|c| (c.1, c.2, c.3))
        .collect();
    out.par_extend(wells.par_iter().map(|&(r, theta, eps)| {
        let name = format!("closed-form/square-well/r={r}/theta={theta}/eps={eps}");
        let run = || -> Result<f64> {
            let z = PhasePoint::new(r, theta)?;
            let st = CoherentState::new(Params::matched(0.0, eps)?, z)?;
            sup(&st, &|x| square_well_wavefunction(&z, eps, x))
        };
        Check::new(
            name,
            run().unwrap_or(f64::NAN),
            0.0,
            1e-7,
            Comparison::Absolute,
        )
    }));
    out.par_extend(cases.par_iter().map(|&(nu, r, theta, eps)| {
        let name = format!("closed-form/unit-norm/nu={nu}/r={r}/theta={theta}/eps={eps}");
        let run = || -> Result<f64> {
            let st = CoherentState::new(Params::matched(nu, eps)?, PhasePoint::new(r, theta)?)?;
            Ok(st.position_norm()?.value.re)
        };
        Check::new(
            name,
            run().unwrap_or(f64::NAN),
            1.0,
            1e-6,
            Comparison::Absolute,
        )
    }));
    out
}

/// Smooth test function vanishing at the walls.
fn bump(x: f64) -> f64 {
    x * (PI - x) * x.cos().exp()
}

const L2_COEFFS: [f64; 6] = [1.0, -0.5, 0.3, 0.2, -0.1, 0.05];

fn identity() -> Result<Vec<Check>> {
    let eps = 0.1;
    let interior: Vec<f64> = (0..=400)
        .map(|i| PI * i as f64 / 400.0)
        .filter(|x| *x >= 0.1 && *x <= PI - 0.1)
        .collect();
    let mut cases = Vec::new();
    for nu in [0.5, 1.5] {
        for m in 0..=6usize {
            cases.push((nu, m));
        }
    }
    let mut out: Vec<Check> = cases
        .par_iter()
        .map(|&(nu, m)| {
            let name = format!("identity/eigen-action/nu={nu}/eps={eps}/m={m}");
            let run = || -> Result<f64> {
                let cfg = SptConfig::standard(nu)?;
                let s = Smoother::new(nu, eps)?;
                let phi = |x: f64| eigenstate(&cfg, m, x).unwrap_or(f64::NAN);
                let got = s.spectral(phi, &interior);
                let damp = (-(m as f64) * eps).exp();
                Ok(interior
                    .iter()
                    .zip(&got)
                    .map(|(&x, g)| (g - damp * phi(x)).norm())
                    .fold(0.0, f64::max))
            };
            Check::new(
                name,
                run().unwrap_or(f64::NAN),
                0.0,
                1e-7,
                Comparison::Absolute,
            )
        })
        .collect();
    let mut routes = Vec::new();
    for nu in [0.5, 1.5] {
        for x in [0.3, 1.0, 1.7, 2.5] {
            routes.push((nu, x));
        }
    }
    out.par_extend(routes.par_iter().map(|&(nu, x)| {
        let name = format!("identity/routes/nu={nu}/eps={eps}/x={x}");
        let run = || -> Result<f64> {
            let s = Smoother::new(nu, eps)?;
            Ok((s.spectral(bump, &[x])[0] - s.kernel(bump, x)?).norm())
        };
        Check::new(
            name,
            run().unwrap_or(f64::NAN),
            0.0,
            1e-7,
            Comparison::Absolute,
        )
    }));

    let nu = 1.0;
    let cfg = SptConfig::standard(nu)?;
    let combo = |x: f64| -> f64 {
        L2_COEFFS
            .iter()
            .enumerate()
            .map(|(n, a)| a * eigenstate(&cfg, n, x).unwrap_or(f64::NAN))
            .sum()
    };
    let schedule = [0.4, 0.2, 0.1, 0.05];
    let grid = GridSpec::new(0.0, PI, 2001)?;
    let rows = convergence_study(nu, combo, &schedule, &grid)?;
    for r in &rows {
        let want = L2_COEFFS
            .iter()
            .enumerate()
            .map(|(n, a)| (a * (1.0 - (-(n as f64) * r.epsilon).exp())).powi(2))
            .sum::<f64>()
            .sqrt();
        out.push(Check::new(
            format!("identity/l2-error/nu={nu}/eps={}", r.epsilon),
            r.l2_error,
            want,
            1e-6,
            Comparison::Absolute,
        ));
    }
    let bump_rows = convergence_study(nu, bump, &schedule, &grid)?;
    for (family, rows) in [("combination", &rows), ("bump", &bump_rows)] {
        for w in rows.windows(2) {
            out.push(Check::new(
                format!("identity/monotone/{family}/eps={}", w[1].epsilon),
                w[1].l2_error,
                w[0].l2_error,
                0.0,
                Comparison::AtMost,
            ));
        }
    }
    Ok(out)
}

fn hankel() -> Vec<Check> {
    let mut cases = Vec::new();
    for n in 0..=12usize {
        for nu in [0.5, 1.0, 2.0] {
            for x in [0.5, 2.0, 8.0, 20.0] {
                cases.push((n, nu, x));
            }
        }
    }
    let mut out: Vec<Check> = cases
        .par_iter()
        .map(|&(n, nu, x)| {
            let name = format!("hankel/representation/n={n}/nu={nu}/x={x}");
            let run = || -> Result<(f64, f64)> {
                let s = LaguerreFunctionSpec::new(n, nu, x)?;
                let want = laguerre_function(&s)?;
                let got = hankel_representation(&s, 1e-9)?;
                Ok((got.value.re, want))
            };
            match run() {
                Ok((a, b)) => Check::new(name, a, b, 1e-7, Comparison::Mixed),
                Err(_) => Check::failed(name, 0.0, 1e-7, Comparison::Mixed),
            }
        })
        .collect();
    let draws = [
        (1.5, 2.0, 1.0, 1.5),
        (0.5, 1.0, 2.0, 1.0),
        (1.3, 0.8, 0.7, 2.0),
        (0.0, 0.5, 3.0, 0.5),
        (2.5, 1.5, 1.2, 0.8),
    ];
    out.par_extend(draws.par_iter().map(|&(beta, eta, u, a)| {
        let name = format!("hankel/watson/beta={beta}/eta={eta}/u={u}/a={a}");
        match watson_integral(beta, eta, u, a, 1e-11) {
            Ok(w) => Check::new(
                name,
                w.quadrature.value.re,
                w.closed_form,
                1e-8,
                Comparison::Absolute,
            ),
            Err(_) => Check::failed(name, 0.0, 1e-8, Comparison::Absolute),
        }
    }));
    out
}

/// Schedule along which the transform is followed.
pub const TRANSFORM_SCHEDULE: [f64; 4] = [0.2, 0.1, 0.05, 0.02];

fn transform() -> Result<Vec<Check>> {
    let nu = 1.0;
    let cfg = SptConfig::standard(nu)?;
    let mut cases = Vec::new();
    for n in 0..=4usize {
        for (r, theta) in [(0.5, 0.3), (1.0, 1.1), (1.8, 2.0)] {
            cases.push((n, r, theta));
        }
    }
    let results: Vec<Result<(Vec<Complex64>, Complex64)>> = cases
        .par_iter()
        .map(|&(n, r, theta)| {
            let z = PhasePoint::new(r, theta)?;
            let t = cs_transform(
                nu,
                |x| eigenstate(&cfg, n, x).unwrap_or(f64::NAN),
                &z,
                &TRANSFORM_SCHEDULE,
            )?;
            Ok((t, transform_limit(nu, n, &z)?))
        })
        .collect();
    let mut out = Vec::new();
    let last = TRANSFORM_SCHEDULE.len() - 1;
    for (&(n, r, theta), res) in cases.iter().zip(&results) {
        let tag = format!("nu={nu}/n={n}/r={r}/theta={theta}");
        let (t, lim) = match res {
            Ok(v) => v.clone(),
            Err(e) => return Err(e.clone()),
        };
        let gap = |v: Complex64| (v - lim).norm() / lim.norm();
        out.push(Check::new(
            format!("transform/gap/{tag}/eps={}", TRANSFORM_SCHEDULE[last]),
            gap(t[last]),
            0.0,
            1e-3,
            Comparison::Absolute,
        ));
        let exact = t
            .iter()
            .zip(TRANSFORM_SCHEDULE)
            .map(|(v, e)| gap(v * (0.5 * n as f64 * e).exp()))
            .fold(0.0, f64::max);
        out.push(Check::new(
            format!("transform/damping/{tag}"),
            exact,
            0.0,
            1e-9,
            Comparison::Absolute,
        ));
        for k in 1..t.len() {
            out.push(Check::new(
                format!("transform/monotone/{tag}/eps={}", TRANSFORM_SCHEDULE[k]),
                gap(t[k]),
                gap(t[k - 1]),
                1e-12,
                Comparison::AtMost,
            ));
        }
        let pts: Vec<(f64, Complex64)> = TRANSFORM_SCHEDULE
            .iter()
            .copied()
            .zip(t.iter().copied())
            .collect();
        out.push(Check::new(
            format!("transform/extrapolated/{tag}"),
            gap(extrapolate_to_zero(&pts)),
            0.0,
            1e-3,
            Comparison::Absolute,
        ));
    }
    Ok(out)
}
