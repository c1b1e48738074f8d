//! The symmetric Pöschl–Teller oscillator on `[0, L]`: potential, spectrum
//! and the Gegenbauer eigenbasis, in units where `ħ = 2m = 1`.
//!
//! `ν = 0` is the infinite square well and is evaluated through the sine
//! form directly. Normalization constants are kept as logarithms so that
//! degrees in the thousands stay finite.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{ensure_finite, Error, Result};
use crate::grid::{GridSpec, WavefunctionGrid};
use crate::specfun::{gegenbauer_fill, ln_factorial, ln_gamma};

/// Symmetric well `E0 ν(ν+1) / sin²(πx/L)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SptConfig {
    pub nu: f64,
    pub l: f64,
    pub e0: f64,
}

impl SptConfig {
    pub fn new(nu: f64, l: f64, e0: f64) -> Result<Self> {
        ensure_finite("spt_config", "nu", nu)?;
        ensure_finite("spt_config", "L", l)?;
        ensure_finite("spt_config", "E0", e0)?;
        if nu <= -1.0 {
            return Err(Error::domain(
                "spt_config",
                format!("requires nu > -1, got {nu}"),
            ));
        }
        if l <= 0.0 || e0 <= 0.0 {
            return Err(Error::domain(
                "spt_config",
                format!("requires L > 0 and E0 > 0, got {l}, {e0}"),
            ));
        }
        Ok(SptConfig { nu, l, e0 })
    }

    /// `L = π`, `E0 = 1`.
    pub fn standard(nu: f64) -> Result<Self> {
        Self::new(nu, PI, 1.0)
    }
}

/// General two-parameter well
/// `E0/4 [η(η-1)/cos²(πx/2L) + δ(δ-1)/sin²(πx/2L)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtConfig {
    pub eta: f64,
    pub delta: f64,
    pub l: f64,
    pub e0: f64,
}

impl PtConfig {
    pub fn new(eta: f64, delta: f64, l: f64, e0: f64) -> Result<Self> {
        for (name, v) in [("eta", eta), ("delta", delta), ("L", l), ("E0", e0)] {
            ensure_finite("pt_config", name, v)?;
            if v <= 0.0 {
                return Err(Error::domain(
                    "pt_config",
                    format!("requires {name} > 0, got {v}"),
                ));
            }
        }
        Ok(PtConfig { eta, delta, l, e0 })
    }
}

fn check_interior(op: &'static str, l: f64, x: f64) -> Result<()> {
    ensure_finite(op, "x", x)?;
    if !(x > 0.0 && x < l) {
        return Err(Error::domain(
            op,
            format!("potential diverges outside (0, {l}), got x = {x}"),
        ));
    }
    Ok(())
}

pub fn pt_potential(cfg: &PtConfig, x: f64) -> Result<f64> {
    check_interior("pt_potential", cfg.l, x)?;
    let a = PI * x / (2.0 * cfg.l);
    let c = a.cos();
    let s = a.sin();
    let (eta, delta) = (cfg.eta, cfg.delta);
    Ok(0.25 * cfg.e0 * (eta * (eta - 1.0) / (c * c) + delta * (delta - 1.0) / (s * s)))
}

pub fn spt_potential(cfg: &SptConfig, x: f64) -> Result<f64> {
    check_interior("spt_potential", cfg.l, x)?;
    if cfg.nu == 0.0 {
        return Ok(0.0);
    }
    let s = (PI * x / cfg.l).sin();
    Ok(cfg.e0 * cfg.nu * (cfg.nu + 1.0) / (s * s))
}

/// `E0 (n+ν+1)²`.
pub fn eigenvalue(cfg: &SptConfig, n: usize) -> f64 {
    let k = n as f64 + cfg.nu + 1.0;
    cfg.e0 * k * k
}

/// `ln` of the normalization constant of `φ_n` for the well `[0, L]`.
fn log_norm(nu: f64, l: f64, n: usize) -> f64 {
    ln_gamma(nu + 1.0)
        + (nu + 0.5) * std::f64::consts::LN_2
        + 0.5
            * (ln_factorial(n) + (n as f64 + nu + 1.0).ln()
                - l.ln()
                - ln_gamma(n as f64 + 2.0 * nu + 2.0))
}

/// The first `count` eigenstates of one well, with normalizations cached.
#[derive(Debug, Clone)]
pub struct Eigenbasis {
    cfg: SptConfig,
    norms: Vec<f64>,
}

impl Eigenbasis {
    pub fn new(cfg: SptConfig, count: usize) -> Self {
        let norms = (0..count)
            .map(|n| log_norm(cfg.nu, cfg.l, n).exp())
            .collect();
        Eigenbasis { cfg, norms }
    }

    pub fn len(&self) -> usize {
        self.norms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.norms.is_empty()
    }

    pub fn config(&self) -> &SptConfig {
        &self.cfg
    }

    /// `φ_0(x), ..., φ_{len-1}(x)` into `out`, which must have length
    /// `len()`. Exactly zero at both walls. No domain checks.
    pub fn fill(&self, x: f64, out: &mut [f64]) {
        let cfg = &self.cfg;
        if x <= 0.0 || x >= cfg.l {
            out.iter_mut().for_each(|v| *v = 0.0);
            return;
        }
        let a = PI * x / cfg.l;
        if cfg.nu == 0.0 {
            let c = (2.0 / cfg.l).sqrt();
            for (n, v) in out.iter_mut().enumerate() {
                *v = c * ((n + 1) as f64 * a).sin();
            }
            return;
        }
        gegenbauer_fill(cfg.nu + 1.0, a.cos(), out);
        let envelope = a.sin().powf(cfg.nu + 1.0);
        for (v, c) in out.iter_mut().zip(&self.norms) {
            *v *= c * envelope;
        }
    }

    pub fn values(&self, x: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.len()];
        self.fill(x, &mut out);
        out
    }
}

fn check_point(cfg: &SptConfig, x: f64) -> Result<()> {
    ensure_finite("eigenstate", "x", x)?;
    if !(0.0..=cfg.l).contains(&x) {
        return Err(Error::domain(
            "eigenstate",
            format!("requires 0 <= x <= {}, got {x}", cfg.l),
        ));
    }
    Ok(())
}

/// `φ_n^ν(x)` on `[0, L]`.
pub fn eigenstate(cfg: &SptConfig, n: usize, x: f64) -> Result<f64> {
    check_point(cfg, x)?;
    if x == 0.0 || x == cfg.l {
        return Ok(0.0);
    }
    let a = PI * x / cfg.l;
    if cfg.nu == 0.0 {
        return Ok((2.0 / cfg.l).sqrt() * ((n + 1) as f64 * a).sin());
    }
    let mut buf = vec![0.0; n + 1];
    gegenbauer_fill(cfg.nu + 1.0, a.cos(), &mut buf);
    Ok(log_norm(cfg.nu, cfg.l, n).exp() * a.sin().powf(cfg.nu + 1.0) * buf[n])
}

/// `φ_n^ν` sampled on a grid inside `[0, L]`.
pub fn eigenstate_grid(cfg: &SptConfig, n: usize, grid: &GridSpec) -> Result<WavefunctionGrid> {
    let xs = grid.points();
    let values = xs
        .par_iter()
        .map(|&x| eigenstate(cfg, n, x).map(|v| Complex64::new(v, 0.0)))
        .collect::<Result<Vec<_>>>()?;
    let params = vec![
        ("nu".to_string(), cfg.nu),
        ("L".to_string(), cfg.l),
        ("E0".to_string(), cfg.e0),
        ("n".to_string(), n as f64),
    ];
    WavefunctionGrid::from_points(xs, values, params)
}
