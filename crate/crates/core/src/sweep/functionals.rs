//! The truncation functionals `mu(h)`, `lambda(h)`, `c(Sigma_h)` and the
//! total curvature of the whole surface by direct improper integration.

use crate::curvature::{
    curvature_density, curvature_split, geodesic_curvature, sample, POLE_GUARD,
};
use crate::error::{DomainError, SweepError};
use crate::model::{CoreDescriptor, EndChart, SurfaceModel};
use crate::quadrature::{
    annulus_above_pole, integrate_annulus, integrate_circle, integrate_from_pole,
    integrate_improper, Divergence, ImproperOutcome, QuadResult, Tolerance,
};

/// Lowest height at which curvature is sampled: the largest chart `t_min`,
/// kept off the pole for polar caps.
pub fn height_origin(model: &SurfaceModel) -> f64 {
    let m = model.min_height();
    if model.is_polar_cap() {
        m.max(POLE_GUARD)
    } else {
        m
    }
}

pub(crate) fn check_height(model: &SurfaceModel, h: f64) -> Result<(), SweepError> {
    if !h.is_finite() {
        return Err(SweepError::Schedule(format!("height {h} is not finite")));
    }
    if model.is_polar_cap() && h <= 0.0 {
        return Err(SweepError::Schedule(format!(
            "polar-cap heights must be positive, got {h}"
        )));
    }
    if let Some(end) = model.ends.iter().find(|e| h < e.t_min) {
        return Err(SweepError::Schedule(format!(
            "height {h} lies below chart t_min {}",
            end.t_min
        )));
    }
    Ok(())
}

fn sum_over_ends<F>(model: &SurfaceModel, mut per_end: F) -> Result<QuadResult, SweepError>
where
    F: FnMut(&EndChart) -> Result<QuadResult, DomainError>,
{
    let mut acc: Option<QuadResult> = None;
    for end in &model.ends {
        let r = per_end(end)?;
        acc = Some(acc.map_or(r, |a| a.merge(r)));
    }
    acc.ok_or_else(|| {
        SweepError::Model(crate::error::ModelError::Invalid(
            "model has no ends".into(),
        ))
    })
}

/// `mu(h)` with its quadrature error.
pub fn mu_quad(model: &SurfaceModel, h: f64, tol: &Tolerance) -> Result<QuadResult, SweepError> {
    check_height(model, h)?;
    let r = sum_over_ends(model, |end| {
        integrate_circle(|theta| Ok(end.sqrt_g_jet(h, theta)?.value), tol)
    })?;
    if !(r.value > 0.0) {
        return Err(SweepError::NonPositiveMu { h, mu: r.value });
    }
    Ok(r)
}

/// Total length of the boundary circles at height `h`.
pub fn mu(model: &SurfaceModel, h: f64, tol: &Tolerance) -> Result<f64, SweepError> {
    mu_quad(model, h, tol).map(|r| r.value)
}

/// `lambda(h)` with its quadrature error.
pub fn lambda_quad(
    model: &SurfaceModel,
    h: f64,
    tol: &Tolerance,
) -> Result<QuadResult, SweepError> {
    check_height(model, h)?;
    sum_over_ends(model, |end| {
        integrate_circle(|theta| geodesic_curvature(end, h, theta), tol)
    })
}

/// Total geodesic curvature of the boundary of the truncation at height `h`.
pub fn lambda_total(model: &SurfaceModel, h: f64, tol: &Tolerance) -> Result<f64, SweepError> {
    lambda_quad(model, h, tol).map(|r| r.value)
}

/// `c(Sigma_h)` with its quadrature error.
pub fn truncated_total_curvature_quad(
    model: &SurfaceModel,
    h: f64,
    tol: &Tolerance,
) -> Result<QuadResult, SweepError> {
    check_height(model, h)?;
    match &model.core {
        CoreDescriptor::PolarCap => sum_over_ends(model, |end| {
            annulus_above_pole(|t, theta| curvature_density(end, t, theta), h, tol)
        }),
        CoreDescriptor::AnalyticCore {
            core_total_curvature,
            ..
        } => {
            let ends = sum_over_ends(model, |end| {
                if h > end.t_min {
                    integrate_annulus(
                        |t, theta| curvature_density(end, t, theta),
                        end.t_min,
                        h,
                        tol,
                    )
                } else {
                    Ok(QuadResult::zero())
                }
            })?;
            Ok(QuadResult {
                value: core_total_curvature + ends.value,
                ..ends
            })
        }
    }
}

/// Total curvature of the truncation `Sigma_h`: the core plus the end bands
/// below `h`.
pub fn truncated_total_curvature(
    model: &SurfaceModel,
    h: f64,
    tol: &Tolerance,
) -> Result<f64, SweepError> {
    truncated_total_curvature_quad(model, h, tol).map(|r| r.value)
}

/// Value of a curvature integral over the whole surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RouteValue {
    Finite { value: f64, error: f64 },
    Divergent(Divergence),
}

impl RouteValue {
    fn combine(self, other: RouteValue) -> RouteValue {
        use RouteValue::*;
        match (self, other) {
            (
                Finite {
                    value: a,
                    error: ea,
                },
                Finite {
                    value: b,
                    error: eb,
                },
            ) => Finite {
                value: a + b,
                error: ea + eb,
            },
            (Finite { .. }, d @ Divergent(_)) | (d @ Divergent(_), Finite { .. }) => d,
            (Divergent(a), Divergent(b)) if a == b => Divergent(a),
            _ => Divergent(Divergence::Oscillatory),
        }
    }

    fn from_outcome(outcome: &ImproperOutcome) -> RouteValue {
        match outcome {
            ImproperOutcome::Converged { result, .. } => RouteValue::Finite {
                value: result.value,
                error: result.error_estimate,
            },
            ImproperOutcome::NoConvergence { direction, .. } => RouteValue::Divergent(*direction),
        }
    }
}

fn whole_surface<F>(
    model: &SurfaceModel,
    core_lump: f64,
    integrand: F,
    tol: &Tolerance,
) -> Result<RouteValue, SweepError>
where
    F: Fn(&EndChart, f64, f64) -> Result<f64, DomainError>,
{
    let mut acc = RouteValue::Finite {
        value: core_lump,
        error: 0.0,
    };
    for end in &model.ends {
        let g = |t: f64, theta: f64| integrand(end, t, theta);
        let outcome = if model.is_polar_cap() {
            integrate_from_pole(g, tol)?
        } else {
            integrate_improper(g, end.t_min, tol)?
        };
        acc = acc.combine(RouteValue::from_outcome(&outcome));
    }
    Ok(acc)
}

fn core_value(model: &SurfaceModel) -> f64 {
    match &model.core {
        CoreDescriptor::PolarCap => 0.0,
        CoreDescriptor::AnalyticCore {
            core_total_curvature,
            ..
        } => *core_total_curvature,
    }
}

/// `int K dA` over the whole surface: the core plus an improper integral
/// over each end.
pub fn total_curvature_direct(
    model: &SurfaceModel,
    tol: &Tolerance,
) -> Result<RouteValue, SweepError> {
    whole_surface(model, core_value(model), curvature_density, tol)
}

/// `(int K+ dA, int K- dA)` over the whole surface. An analytic core is only
/// known through its total, so it enters whichever part matches its sign.
pub fn curvature_split_integrals(
    model: &SurfaceModel,
    tol: &Tolerance,
) -> Result<(RouteValue, RouteValue), SweepError> {
    let core = core_value(model);
    let plus = whole_surface(
        model,
        core.max(0.0),
        |end, t, theta| {
            let s = sample(end, t, theta)?;
            Ok(curvature_split(s.gauss_k).0 * s.area_density)
        },
        tol,
    )?;
    let minus = whole_surface(
        model,
        (-core).max(0.0),
        |end, t, theta| {
            let s = sample(end, t, theta)?;
            Ok(curvature_split(s.gauss_k).1 * s.area_density)
        },
        tol,
    )?;
    Ok((plus, minus))
}
