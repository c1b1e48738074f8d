//! Adaptive quadrature and series summation.
//!
//! Finite intervals use a globally adaptive Gauss–Kronrod (10, 21) scheme in
//! the style of QUADPACK's QAG. The rule never samples the endpoints, so
//! integrable endpoint singularities such as `t^{-1/2}` need no special
//! handling. Complex integrands are integrated component-wise.
//!
//! `[a, ∞)` is covered by doubling panels; the tail beyond the last panel is
//! bounded from the observed decay of `∫|f|` per panel.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Value of a numerical integral with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub abs_error: f64,
    pub evaluations: usize,
}

/// Value of a truncated series with the estimated size of the neglected tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: Complex64,
    pub terms_used: usize,
    pub tail_estimate: f64,
}

#[rustfmt::skip]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[rustfmt::skip]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[rustfmt::skip]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// One application of the 21-point rule.
#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    resabs: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        // largest error first; ties broken by position for determinism
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// QUADPACK error scaling for one real component.
fn component_error(kronrod: f64, gauss: f64, resabs: f64, resasc: f64, half: f64) -> f64 {
    let mut err = ((kronrod - gauss) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    err
}

fn gk21<F, V>(f: &F, a: f64, b: f64) -> Segment
where
    F: Fn(f64) -> V,
    V: Into<Complex64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut fv = [Complex64::new(0.0, 0.0); 21];
    fv[10] = f(center).into();
    for j in 0..10 {
        let dx = half * XGK[j];
        fv[j] = f(center - dx).into();
        fv[20 - j] = f(center + dx).into();
    }
    let mut kr = fv[10] * WGK[10];
    let mut ga = Complex64::new(0.0, 0.0);
    let mut abs_re = WGK[10] * fv[10].re.abs();
    let mut abs_im = WGK[10] * fv[10].im.abs();
    for j in 0..10 {
        let s = fv[j] + fv[20 - j];
        kr += WGK[j] * s;
        if j % 2 == 1 {
            ga += WG[j / 2] * s;
        }
        abs_re += WGK[j] * (fv[j].re.abs() + fv[20 - j].re.abs());
        abs_im += WGK[j] * (fv[j].im.abs() + fv[20 - j].im.abs());
    }
    let mean = kr * 0.5;
    let mut asc_re = WGK[10] * (fv[10].re - mean.re).abs();
    let mut asc_im = WGK[10] * (fv[10].im - mean.im).abs();
    for j in 0..10 {
        asc_re += WGK[j] * ((fv[j].re - mean.re).abs() + (fv[20 - j].re - mean.re).abs());
        asc_im += WGK[j] * ((fv[j].im - mean.im).abs() + (fv[20 - j].im - mean.im).abs());
    }
    let h = half.abs();
    let err = component_error(kr.re, ga.re, abs_re * h, asc_re * h, half)
        + component_error(kr.im, ga.im, abs_im * h, asc_im * h, half);
    Segment {
        a,
        b,
        value: kr * half,
        error: err,
        resabs: (abs_re + abs_im) * h,
    }
}

/// Tolerances and work limits for the integrators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quad {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of subintervals per finite integral.
    pub max_subdivisions: usize,
    /// Width of the first panel on `[a, ∞)`.
    pub first_panel: f64,
    /// Maximum number of doubling panels on `[a, ∞)`.
    pub max_panels: usize,
}

impl Default for Quad {
    fn default() -> Self {
        Quad {
            abs_tol: 1e-10,
            rel_tol: 0.0,
            max_subdivisions: 2000,
            first_panel: 1.0,
            max_panels: 64,
        }
    }
}

impl Quad {
    pub fn with_tol(abs_tol: f64, rel_tol: f64) -> Self {
        Quad {
            abs_tol,
            rel_tol,
            ..Quad::default()
        }
    }

    pub fn max_subdivisions(mut self, n: usize) -> Self {
        self.max_subdivisions = n;
        self
    }

    pub fn first_panel(mut self, width: f64) -> Self {
        self.first_panel = width;
        self
    }

    fn target(&self, value: Complex64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.norm())
    }

    /// `∫_a^b f`, `a < b`.
    pub fn integrate<F, V>(&self, f: F, a: f64, b: f64) -> Result<QuadResult>
    where
        F: Fn(f64) -> V,
        V: Into<Complex64>,
    {
        self.integrate_with_abs(&f, a, b).map(|(r, _)| r)
    }

    /// Adaptive integration also returning `∫|Re f| + |Im f|` over the interval.
    fn integrate_with_abs<F, V>(&self, f: &F, a: f64, b: f64) -> Result<(QuadResult, f64)>
    where
        F: Fn(f64) -> V,
        V: Into<Complex64>,
    {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::domain(
                "integrate_finite",
                format!("requires finite a < b, got [{a}, {b}]"),
            ));
        }
        if !(self.abs_tol > 0.0 || self.rel_tol > 0.0) {
            return Err(Error::domain(
                "integrate_finite",
                "tolerance must be positive",
            ));
        }
        let first = gk21(f, a, b);
        let mut evaluations = 21;
        let mut value = first.value;
        let mut error = first.error;
        let mut heap = BinaryHeap::new();
        heap.push(first);
        // segments whose error sits at the roundoff floor are not split again
        let mut settled: Vec<Segment> = Vec::new();
        while error > self.target(value) {
            if heap.len() + settled.len() >= self.max_subdivisions {
                return Err(Error::NonConvergence {
                    op: "integrate_finite",
                    estimate: value.norm(),
                    error_bound: error,
                    work: evaluations,
                });
            }
            let Some(worst) = heap.pop() else { break };
            let mid = 0.5 * (worst.a + worst.b);
            // below this width interior nodes round onto the endpoints
            let floor = 1024.0 * f64::EPSILON * worst.a.abs().max(worst.b.abs());
            if !(mid > worst.a && mid < worst.b) || worst.b - worst.a <= floor {
                settled.push(worst);
                continue;
            }
            let left = gk21(f, worst.a, mid);
            let right = gk21(f, mid, worst.b);
            evaluations += 42;
            value += left.value + right.value - worst.value;
            error += left.error + right.error - worst.error;
            for s in [left, right] {
                if s.error <= 50.0 * f64::EPSILON * s.resabs {
                    settled.push(s);
                } else {
                    heap.push(s);
                }
            }
            if heap.is_empty() {
                break;
            }
        }
        // re-sum in positional order so the result does not depend on heap history
        let mut all: Vec<Segment> = heap.into_vec();
        all.extend(settled);
        all.sort_by(|p, q| p.a.total_cmp(&q.a));
        let value = all
            .iter()
            .fold(Complex64::new(0.0, 0.0), |s, seg| s + seg.value);
        let error = all.iter().map(|s| s.error).sum::<f64>();
        let resabs = all.iter().map(|s| s.resabs).sum::<f64>();
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::NonConvergence {
                op: "integrate_finite",
                estimate: f64::NAN,
                error_bound: f64::INFINITY,
                work: evaluations,
            });
        }
        Ok((
            QuadResult {
                value,
                abs_error: error,
                evaluations,
            },
            resabs,
        ))
    }

    /// `∫_a^∞ f` over doubling panels `[a, a+w], [a+w, a+3w], ...`.
    ///
    /// After each panel the ratio `ρ` of successive `∫|f|` values bounds the
    /// remaining tail by `m ρ/(1-ρ)`, `m` being the last panel's `∫|f|`; the
    /// loop ends once that bound is below half the tolerance.
    pub fn integrate_from<F, V>(&self, f: F, a: f64) -> Result<QuadResult>
    where
        F: Fn(f64) -> V,
        V: Into<Complex64>,
    {
        let mut lo = a;
        let mut width = self.first_panel;
        let mut value = Complex64::new(0.0, 0.0);
        let mut error = 0.0;
        let mut evaluations = 0;
        let mut prev_mass: Option<f64> = None;
        let mut tail = f64::INFINITY;
        for panel in 0..self.max_panels {
            let hi = lo + width;
            let inner = Quad {
                abs_tol: 0.25 * self.abs_tol,
                ..*self
            };
            let (r, mass) = inner.integrate_with_abs(&f, lo, hi)?;
            value += r.value;
            error += r.abs_error;
            evaluations += r.evaluations;
            let target = self.target(value);
            tail = match prev_mass {
                Some(p) if mass == 0.0 && p == 0.0 && panel >= 6 => 0.0,
                Some(p) if mass < p => {
                    let rho = mass / p;
                    mass * rho / (1.0 - rho)
                }
                _ => f64::INFINITY,
            };
            if tail < 0.5 * target && error < target {
                return Ok(QuadResult {
                    value,
                    abs_error: error + tail,
                    evaluations,
                });
            }
            prev_mass = Some(mass);
            lo = hi;
            width *= 2.0;
        }
        Err(Error::NonConvergence {
            op: "integrate_semi_infinite",
            estimate: value.norm(),
            error_bound: error + tail,
            work: evaluations,
        })
    }
}

/// `∫_a^b f` to absolute tolerance `tol` with default work limits.
pub fn integrate_finite<F, V>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> V,
    V: Into<Complex64>,
{
    Quad::with_tol(tol, 0.0).integrate(f, a, b)
}

/// `∫_0^∞ f` to absolute tolerance `tol` with default work limits.
pub fn integrate_semi_infinite<F, V>(f: F, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> V,
    V: Into<Complex64>,
{
    Quad::with_tol(tol, 0.0).integrate_from(f, 0.0)
}

const WINDOW: usize = 8;
const STALL_LIMIT: usize = 50;

/// `sum_{n>=0} term(n)` until the estimated tail drops below `tol`.
///
/// The tail is estimated from the decay of the term envelope: with `E1`,
/// `E0` the largest `|term|` over the last two windows of eight terms,
/// `ρ = (E1/E0)^{1/8}` and the tail is `E1 ρ/(1-ρ)`. Oscillating or sign
/// changing terms therefore do not stop the sum early.
pub fn sum_series<T, V>(mut term: T, tol: f64, max_terms: usize) -> Result<SeriesResult>
where
    T: FnMut(usize) -> V,
    V: Into<Complex64>,
{
    if !(tol > 0.0) {
        return Err(Error::domain("sum_series", "tolerance must be positive"));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut mags: Vec<f64> = Vec::new();
    let mut stalled = 0;
    let mut tail = f64::INFINITY;
    for n in 0..max_terms {
        let t: Complex64 = term(n).into();
        if !t.re.is_finite() || !t.im.is_finite() {
            return Err(Error::NonConvergence {
                op: "sum_series",
                estimate: sum.norm(),
                error_bound: f64::INFINITY,
                work: n,
            });
        }
        sum += t;
        mags.push(t.norm());
        let len = mags.len();
        if len < 2 * WINDOW {
            continue;
        }
        let e1 = mags[len - WINDOW..].iter().fold(0.0_f64, |m, v| m.max(*v));
        let e0 = mags[len - 2 * WINDOW..len - WINDOW]
            .iter()
            .fold(0.0_f64, |m, v| m.max(*v));
        if e1 == 0.0 {
            tail = 0.0;
        } else if e1 < e0 {
            let rho = (e1 / e0).powf(1.0 / WINDOW as f64);
            tail = e1 * rho / (1.0 - rho);
            stalled = 0;
        } else {
            tail = f64::INFINITY;
            stalled += 1;
            if stalled >= STALL_LIMIT {
                return Err(Error::NonConvergence {
                    op: "sum_series",
                    estimate: sum.norm(),
                    error_bound: tail,
                    work: n + 1,
                });
            }
        }
        if tail < tol {
            return Ok(SeriesResult {
                value: sum,
                terms_used: n + 1,
                tail_estimate: tail,
            });
        }
    }
    Err(Error::NonConvergence {
        op: "sum_series",
        estimate: sum.norm(),
        error_bound: tail,
        work: max_terms,
    })
}

/// Gauss–Legendre nodes and weights of order `n` on `[-1, 1]`, by Newton
/// iteration on the Legendre recurrence. Nodes are returned in increasing order.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p0 = 1.0;
                p1 = x;
            }
            dp = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Fixed composite Gauss–Legendre rule: `panels` equal panels of `order`
/// nodes each on `[a, b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl CompositeRule {
    pub fn new(a: f64, b: f64, panels: usize, order: usize) -> Result<Self> {
        if !(a < b) || !a.is_finite() || !b.is_finite() || panels == 0 || order == 0 {
            return Err(Error::domain(
                "composite_rule",
                format!("bad rule [{a}, {b}], {panels} x {order}"),
            ));
        }
        let (x, w) = gauss_legendre(order);
        let h = (b - a) / panels as f64;
        let mut nodes = Vec::with_capacity(panels * order);
        let mut weights = Vec::with_capacity(panels * order);
        for p in 0..panels {
            let mid = a + (p as f64 + 0.5) * h;
            for (xi, wi) in x.iter().zip(&w) {
                nodes.push(mid + 0.5 * h * xi);
                weights.push(0.5 * h * wi);
            }
        }
        Ok(CompositeRule { nodes, weights })
    }

    /// `sum_i w_i f(x_i)` for samples already taken at the nodes.
    pub fn apply(&self, samples: &[f64]) -> f64 {
        self.weights.iter().zip(samples).map(|(w, f)| w * f).sum()
    }
}
