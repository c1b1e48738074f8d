//! Error estimates of the integrators on integrals with known values.

use std::f64::consts::{E, LN_2, PI};

use num_complex::Complex64;
use ptcs::quad::{Quad, QuadResult};
use ptcs::specfun::{bessel_i, gamma, laguerre, pochhammer};
use ptcs::Result;

const TOL: f64 = 1e-10;

type Integrator = Box<dyn Fn(&Quad) -> Result<QuadResult>>;

type Case = (&'static str, Integrator, Complex64);

fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

fn finite(f: impl Fn(f64) -> f64 + 'static, a: f64, b: f64) -> Integrator {
    Box::new(move |q| q.integrate(&f, a, b))
}

fn infinite(f: impl Fn(f64) -> f64 + 'static) -> Integrator {
    Box::new(move |q| q.integrate_from(&f, 0.0))
}

fn cases() -> Vec<Case> {
    let beta = gamma(0.7).unwrap() * gamma(1.6).unwrap() / gamma(2.3).unwrap();
    let (g, n) = (2.5, 3);
    let lag_norm = gamma(g).unwrap() * pochhammer(g, n) * (2.0 * n as f64 + g) / 6.0;
    let damped =
        |t: f64, a: f64| (a - (-t).exp() * ((a * t).sin() + a * (a * t).cos())) / (1.0 + a * a);
    vec![
        ("sin", finite(f64::sin, 0.0, PI), real(2.0)),
        (
            "inverse sqrt",
            finite(|t| t.powf(-0.5), 0.0, 1.0),
            real(2.0),
        ),
        ("log", finite(f64::ln, 0.0, 1.0), real(-1.0)),
        (
            "lorentzian",
            finite(|x| 1.0 / (1.0 + x * x), 0.0, 1.0),
            real(PI / 4.0),
        ),
        ("exp", finite(f64::exp, 0.0, 1.0), real(E - 1.0)),
        (
            "cos squared",
            finite(|x| (5.0 * x).cos().powi(2), 0.0, 2.0 * PI),
            real(PI),
        ),
        (
            "beta",
            finite(|x| x.powf(-0.3) * (1.0 - x).powf(0.6), 0.0, 1.0),
            real(beta),
        ),
        ("sqrt", finite(f64::sqrt, 0.0, 1.0), real(2.0 / 3.0)),
        (
            "runge",
            finite(|x| 1.0 / (1.0 + 25.0 * x * x), -1.0, 1.0),
            real(0.4 * 5f64.atan()),
        ),
        (
            "exp cos",
            finite(|x| x.cos().exp(), 0.0, PI),
            real(PI * bessel_i(0.0, 1.0).unwrap()),
        ),
        (
            "damped sine",
            finite(|x| (-x).exp() * (10.0 * x).sin(), 0.0, 10.0),
            real(damped(10.0, 10.0)),
        ),
        (
            "complex phase",
            Box::new(|q: &Quad| q.integrate(|x: f64| Complex64::from_polar(1.0, x), 0.0, 1.0)),
            Complex64::new(1f64.sin(), 1.0 - 1f64.cos()),
        ),
        (
            "log sine",
            finite(|x| x.sin().ln(), 0.0, PI / 2.0),
            real(-PI / 2.0 * LN_2),
        ),
        (
            "arcsine density",
            finite(|x| 1.0 / (x * (2.0 - x)).sqrt(), 0.0, 1.0),
            real(PI / 2.0),
        ),
        ("exponential", infinite(|r| (-r).exp()), real(1.0)),
        (
            "cauchy tail",
            infinite(|x| 1.0 / (1.0 + x * x)),
            real(PI / 2.0),
        ),
        (
            "gaussian moment",
            infinite(|x| x * x * (-x * x).exp()),
            real(PI.sqrt() / 4.0),
        ),
        (
            "laguerre norm",
            infinite(move |r| r.powf(g) * (-r).exp() * laguerre(n, g - 1.0, r).unwrap().powi(2)),
            real(lag_norm),
        ),
        (
            "gamma half",
            infinite(|x| (-x).exp() / x.sqrt()),
            real(PI.sqrt()),
        ),
        (
            "damped cosine",
            infinite(|x| (-2.0 * x).exp() * (3.0 * x).cos()),
            real(2.0 / 13.0),
        ),
    ]
}

#[test]
fn reported_error_bounds_the_true_error() {
    let q = Quad::with_tol(TOL, 0.0);
    let cases = cases();
    assert_eq!(cases.len(), 20);
    let mut covered = 0;
    for (name, run, exact) in &cases {
        let r = run(&q).unwrap_or_else(|e| panic!("{name}: {e}"));
        let err = (r.value - exact).norm();
        assert!(err < 100.0 * TOL, "{name}: error {err:e}");
        assert!(r.abs_error >= 0.0 && r.evaluations >= 1);
        if err <= r.abs_error {
            covered += 1;
        } else {
            println!("{name}: error {err:e} above estimate {:e}", r.abs_error);
        }
    }
    assert!(covered >= 19, "estimate covers only {covered}/20");
}

#[test]
fn doubling_the_budget_does_not_hurt() {
    let cases = cases();
    for budget in [8, 32, 128, 512] {
        let small = Quad::with_tol(TOL, 0.0).max_subdivisions(budget);
        let large = Quad::with_tol(TOL, 0.0).max_subdivisions(2 * budget);
        for (name, run, exact) in &cases {
            let err = |q: &Quad| {
                run(q)
                    .map(|r| (r.value - exact).norm())
                    .unwrap_or(f64::INFINITY)
            };
            let (a, b) = (err(&small), err(&large));
            assert!(b <= a, "{name} at budget {budget}: {a:e} -> {b:e}");
        }
    }
}
