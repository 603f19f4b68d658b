//! Adaptive integration over boundary circles, end bands and whole ends,
//! plus limit extrapolation for sequences indexed by truncation height.
//!
//! Every integral sign in the curvature functionals lands here: boundary
//! circles are 1D integrals over `theta in [0, 2*pi]`, truncated end bands are
//! tensor-product integrals over `[t_lo, t_hi] x [0, 2*pi]`, and full ends are
//! improper integrals over doubling windows in `t`.

mod improper;
mod kronrod;
mod tail;

use std::f64::consts::TAU;

use crate::curvature::POLE_GUARD;
use crate::error::DomainError;

pub use improper::{
    integrate_from_pole, integrate_improper, Divergence, ImproperOutcome, WindowStep,
};
pub use kronrod::{gk15, integrate_interval, Panel, KRONROD_DEGREE, PANEL_EVALS};
pub use tail::{comparison_slack, estimate_tail_limit, extrapolate_limit, TailError, TailEstimate};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_evaluations: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs_tol: 1e-9,
            rel_tol: 1e-8,
            max_evaluations: 2_000_000,
        }
    }
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Result<Self, String> {
        let tol = Self {
            abs_tol,
            rel_tol,
            ..Self::default()
        };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<(), String> {
        let unit = |x: f64| x > 0.0 && x < 1.0;
        if !unit(self.abs_tol) {
            return Err(format!("abs_tol must lie in (0, 1), got {}", self.abs_tol));
        }
        if !unit(self.rel_tol) {
            return Err(format!("rel_tol must lie in (0, 1), got {}", self.rel_tol));
        }
        if self.max_evaluations < 100 {
            return Err(format!(
                "max_evaluations must be >= 100, got {}",
                self.max_evaluations
            ));
        }
        Ok(())
    }

    /// Acceptance threshold for a quantity of size `magnitude`.
    pub fn threshold(&self, magnitude: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * magnitude.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl QuadResult {
    /// Combines two disjoint pieces of one integral.
    pub fn merge(self, other: QuadResult) -> QuadResult {
        QuadResult {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            evaluations: self.evaluations + other.evaluations,
            converged: self.converged && other.converged,
        }
    }

    pub fn zero() -> QuadResult {
        QuadResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 1,
            converged: true,
        }
    }
}

/// `int_0^{2 pi} f(theta) dtheta`.
pub fn integrate_circle<F>(f: F, tol: &Tolerance) -> Result<QuadResult, DomainError>
where
    F: FnMut(f64) -> Result<f64, DomainError>,
{
    integrate_interval(f, 0.0, TAU, 2, tol)
}

/// `int_{t_lo}^{t_hi} int_0^{2 pi} f(t, theta) dtheta dt` as an adaptive outer
/// integral in `t` of adaptive circle integrals.
pub fn integrate_annulus<F>(
    f: F,
    t_lo: f64,
    t_hi: f64,
    tol: &Tolerance,
) -> Result<QuadResult, DomainError>
where
    F: Fn(f64, f64) -> Result<f64, DomainError>,
{
    let width = t_hi - t_lo;
    if !(width > 0.0) {
        return Err(DomainError::NonFinite("empty annulus"));
    }
    let inner_tol = Tolerance {
        abs_tol: 0.1 * tol.abs_tol / width.max(1.0),
        rel_tol: 0.1 * tol.rel_tol,
        max_evaluations: tol.max_evaluations,
    };
    let mut inner_err_density = 0.0f64;
    let mut inner_evals = 0usize;
    let mut inner_converged = true;
    let outer = integrate_interval(
        |t| {
            let ring = integrate_circle(|theta| f(t, theta), &inner_tol)?;
            inner_err_density = inner_err_density.max(ring.error_estimate);
            inner_evals += ring.evaluations;
            inner_converged &= ring.converged;
            Ok(ring.value)
        },
        t_lo,
        t_hi,
        1,
        tol,
    )?;
    Ok(QuadResult {
        value: outer.value,
        error_estimate: outer.error_estimate + inner_err_density * width,
        evaluations: inner_evals,
        converged: outer.converged && inner_converged,
    })
}

/// Integral over `[POLE_GUARD, t_hi] x [0, 2 pi]` for a chart that closes up
/// at a pole `t = 0`. The inner cutoff shrinks geometrically until two
/// consecutive slivers fall below tolerance.
pub(crate) fn annulus_above_pole<F>(
    f: F,
    t_hi: f64,
    tol: &Tolerance,
) -> Result<QuadResult, DomainError>
where
    F: Fn(f64, f64) -> Result<f64, DomainError>,
{
    if t_hi <= 2.0 * POLE_GUARD {
        return Ok(QuadResult::zero());
    }
    let mut cut = (0.5 * t_hi).min(1.0);
    let mut acc = integrate_annulus(&f, cut, t_hi, tol)?;
    let mut quiet = 0;
    while cut > POLE_GUARD {
        let next = (0.5 * cut).max(POLE_GUARD);
        let sliver = integrate_annulus(&f, next, cut, tol)?;
        acc = acc.merge(sliver);
        cut = next;
        if sliver.value.abs() <= tol.threshold(acc.value) {
            quiet += 1;
            if quiet == 2 {
                // the remaining cap is no larger than the last sliver
                acc.error_estimate += sliver.value.abs();
                break;
            }
        } else {
            quiet = 0;
        }
    }
    Ok(acc)
}
