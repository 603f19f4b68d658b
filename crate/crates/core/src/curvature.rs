//! Pointwise curvature of end metrics `dt^2 + G(t, theta) dtheta^2`.
//!
//! With `f = sqrt(G)` the Gaussian curvature is `K = -f''/f`, the area element
//! is `dA = f dt dtheta`, and the parallel circle `t = h`, traversed with
//! increasing `theta`, has geodesic curvature density `f'(h)` per unit
//! `theta`. Only `t`-derivatives enter, so `theta`-dependent coefficients
//! need no extra machinery.
//!
//! The symbol `K` is commonly overloaded for both the Gaussian curvature and
//! the boundary geodesic curvature; here the latter is always called
//! `geodesic_kappa`.

use crate::error::DomainError;
use crate::model::EndChart;

/// Curvature is never evaluated closer than this to a polar-cap pole.
pub const POLE_GUARD: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureSample {
    pub t: f64,
    pub theta: f64,
    pub gauss_k: f64,
    pub geodesic_kappa: f64,
    pub area_density: f64,
}

fn positive_sqrt_jet(end: &EndChart, t: f64, theta: f64) -> Result<crate::dsl::Jet2, DomainError> {
    let f = end.sqrt_g_jet(t, theta)?;
    if !(f.value > 0.0) {
        return Err(DomainError::NonPositiveMetric {
            t,
            theta,
            value: f.value * f.value,
        });
    }
    f.finite("sqrt(G) jet")
}

pub fn sample(end: &EndChart, t: f64, theta: f64) -> Result<CurvatureSample, DomainError> {
    let f = positive_sqrt_jet(end, t, theta)?;
    let gauss_k = -f.d2 / f.value;
    if !gauss_k.is_finite() {
        return Err(DomainError::NonFinite("Gaussian curvature"));
    }
    Ok(CurvatureSample {
        t,
        theta,
        gauss_k,
        geodesic_kappa: f.d1,
        area_density: f.value,
    })
}

/// `K = -(d^2/dt^2 sqrt(G)) / sqrt(G)`.
pub fn gauss_curvature(end: &EndChart, t: f64, theta: f64) -> Result<f64, DomainError> {
    sample(end, t, theta).map(|s| s.gauss_k)
}

/// Geodesic curvature density `d/dt sqrt(G)` of the positively oriented
/// boundary circle at height `h`.
pub fn geodesic_curvature(end: &EndChart, h: f64, theta: f64) -> Result<f64, DomainError> {
    positive_sqrt_jet(end, h, theta).map(|f| f.d1)
}

/// Same quantity through the other algebraic form, `G_t / (2 sqrt(G))`.
/// Loses accuracy where `G` is tiny; kept as a cross-check.
pub fn geodesic_curvature_from_g(end: &EndChart, h: f64, theta: f64) -> Result<f64, DomainError> {
    let g = end.g_jet(h, theta)?;
    if !(g.value > 0.0) {
        return Err(DomainError::NonPositiveMetric {
            t: h,
            theta,
            value: g.value,
        });
    }
    let k = g.d1 / (2.0 * g.value.sqrt());
    if k.is_finite() {
        Ok(k)
    } else {
        Err(DomainError::NonFinite("geodesic curvature"))
    }
}

/// `K sqrt(G)`: the integrand of `int K dA` in end coordinates.
pub fn curvature_density(end: &EndChart, t: f64, theta: f64) -> Result<f64, DomainError> {
    let s = sample(end, t, theta)?;
    Ok(s.gauss_k * s.area_density)
}

/// Splits `K` into its positive and negative parts, `K = K+ - K-`.
pub fn curvature_split(k: f64) -> (f64, f64) {
    (k.max(0.0), (-k).max(0.0))
}
