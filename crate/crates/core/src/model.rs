//! Topological and metric data model for finitely connected surfaces whose
//! noncompact part is a finite union of cylindrical ends.
//!
//! Each end carries coordinates `(t, theta)` with `theta` of period `2*pi`
//! and metric `dt^2 + G(t, theta) dtheta^2`. Ends that need a different
//! circumference absorb it into `G`.
//!
//! Note on argument order: the boundary-length functional is sometimes
//! written with the coefficient as `G(theta, t)`. Here the coefficient is
//! always `G(t, theta)`, `t` first.

use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use crate::curvature::POLE_GUARD;
use crate::dsl::{Jet2, MetricExpr};
use crate::error::{DomainError, ModelError};

/// A metric coefficient `G(t, theta)` with exact `t`-jets.
pub trait MetricField: Send + Sync + fmt::Debug {
    /// `G` and its first two `t`-derivatives.
    fn g_jet(&self, t: f64, theta: f64) -> Result<Jet2, DomainError>;

    /// `sqrt(G)` and its first two `t`-derivatives. Fields that know `sqrt(G)`
    /// in closed form should override this; the default loses accuracy where
    /// `G` is tiny.
    fn sqrt_g_jet(&self, t: f64, theta: f64) -> Result<Jet2, DomainError> {
        let g = self.g_jet(t, theta)?;
        if g.value <= 0.0 {
            return Err(DomainError::NonPositiveMetric {
                t,
                theta,
                value: g.value,
            });
        }
        g.sqrt()
    }

    fn describe(&self) -> String;
}

impl MetricField for MetricExpr {
    fn g_jet(&self, t: f64, theta: f64) -> Result<Jet2, DomainError> {
        self.eval_jet(t, theta)
    }

    fn describe(&self) -> String {
        self.source.clone()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Topology {
    /// Genus of the closed surface the ends are punctured from.
    pub genus: u32,
    /// Number of punctures, i.e. cylindrical ends.
    pub ends: u32,
    pub orientable: bool,
}

impl Topology {
    pub fn new(genus: u32, ends: u32) -> Self {
        Self {
            genus,
            ends,
            orientable: true,
        }
    }

    pub fn euler_char(&self) -> i64 {
        euler_char(self)
    }
}

/// Euler characteristic of a closed genus-`g` surface with `p` points removed.
pub fn euler_char(topology: &Topology) -> i64 {
    2 - 2 * i64::from(topology.genus) - i64::from(topology.ends)
}

/// One cylindrical end `[t_min, inf) x S^1`.
#[derive(Debug, Clone)]
pub struct EndChart {
    pub field: Arc<dyn MetricField>,
    pub t_min: f64,
    /// Number of exact `t`-derivatives the field provides.
    pub derivative_order: u32,
}

impl EndChart {
    pub fn new(field: Arc<dyn MetricField>, t_min: f64) -> Self {
        Self {
            field,
            t_min,
            derivative_order: 2,
        }
    }

    pub fn from_expr(expr: MetricExpr, t_min: f64) -> Self {
        Self::new(Arc::new(expr), t_min)
    }

    pub fn g_jet(&self, t: f64, theta: f64) -> Result<Jet2, DomainError> {
        self.field.g_jet(t, theta)
    }

    pub fn sqrt_g_jet(&self, t: f64, theta: f64) -> Result<Jet2, DomainError> {
        self.field.sqrt_g_jet(t, theta)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoreDescriptor {
    /// The single end's chart closes up smoothly at a pole `t = 0` with
    /// `sqrt(G) -> 0` and `d/dt sqrt(G) -> 1`.
    PolarCap,
    /// The compact core is not modelled pointwise; only its total curvature
    /// and the heights where it meets each end are known.
    AnalyticCore {
        core_total_curvature: f64,
        core_boundary_heights: Vec<f64>,
    },
}

impl CoreDescriptor {
    pub fn analytic(core_total_curvature: f64, heights: Vec<f64>) -> Self {
        CoreDescriptor::AnalyticCore {
            core_total_curvature,
            core_boundary_heights: heights,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SurfaceModel {
    pub name: String,
    pub topology: Topology,
    pub ends: Vec<EndChart>,
    pub core: CoreDescriptor,
    /// Claimed height beyond which `K >= 0`. Only used for cross-checking;
    /// the verifier always re-detects it.
    pub hypothesis_hint: Option<f64>,
}

impl SurfaceModel {
    pub fn new(
        name: impl Into<String>,
        topology: Topology,
        ends: Vec<EndChart>,
        core: CoreDescriptor,
    ) -> Self {
        Self {
            name: name.into(),
            topology,
            ends,
            core,
            hypothesis_hint: None,
        }
    }

    pub fn chi(&self) -> i64 {
        euler_char(&self.topology)
    }

    /// Lowest height at which every end is defined.
    pub fn min_height(&self) -> f64 {
        self.ends
            .iter()
            .map(|e| e.t_min)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn is_polar_cap(&self) -> bool {
        matches!(self.core, CoreDescriptor::PolarCap)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
    /// Points that could not be evaluated because `G` overflowed; not a model
    /// error by themselves.
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Heights used for positivity sampling: geometric spacing from `start` out
/// to `start + 1023`.
fn sample_heights(start: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| {
        let x = 10.0 * i as f64 / (n - 1) as f64;
        start + (x.exp2() - 1.0)
    })
}

/// Checks every model invariant that can be checked by sampling. An empty
/// report means the model is accepted.
pub fn validate_surface(
    model: &SurfaceModel,
    samples_per_axis: usize,
) -> Result<ValidationReport, ModelError> {
    if samples_per_axis < 4 {
        return Err(ModelError::InvalidParameter(format!(
            "samples_per_axis must be >= 4, got {samples_per_axis}"
        )));
    }
    let mut report = ValidationReport::default();
    let v = &mut report.violations;
    let topo = model.topology;

    if !topo.orientable {
        v.push(
            "nonorientable surfaces are not supported; supply the orientable double cover instead"
                .into(),
        );
    }
    if topo.ends == 0 {
        v.push("surface must have at least one end (ends >= 1)".into());
    }
    if model.ends.len() != topo.ends as usize {
        v.push(format!(
            "end count mismatch: topology declares {} ends, model has {} charts",
            topo.ends,
            model.ends.len()
        ));
    }

    match &model.core {
        CoreDescriptor::PolarCap => {
            if topo.ends != 1 || model.ends.len() != 1 {
                v.push("PolarCap requires single end".into());
            }
            if topo.genus != 0 {
                v.push("PolarCap requires genus 0".into());
            }
            if let Some(end) = model.ends.first() {
                if end.t_min != 0.0 {
                    v.push(format!("PolarCap requires t_min = 0, got {}", end.t_min));
                }
                match end.sqrt_g_jet(POLE_GUARD, 0.0) {
                    Ok(j) if (j.value / POLE_GUARD - 1.0).abs() < 1e-3 && (j.d1 - 1.0).abs() < 1e-3 => {}
                    Ok(j) => v.push(format!(
                        "PolarCap requires sqrt(G) -> 0 and d/dt sqrt(G) -> 1 at the pole, got sqrt(G) = {:e}, d/dt sqrt(G) = {}",
                        j.value, j.d1
                    )),
                    Err(e) => v.push(format!("PolarCap pole could not be evaluated: {e}")),
                }
            }
        }
        CoreDescriptor::AnalyticCore {
            core_total_curvature,
            core_boundary_heights,
        } => {
            if !core_total_curvature.is_finite() {
                v.push("core total curvature must be finite".into());
            }
            if core_boundary_heights.len() != model.ends.len() {
                v.push(format!(
                    "core boundary heights ({}) do not match end count ({})",
                    core_boundary_heights.len(),
                    model.ends.len()
                ));
            }
            for (j, (h, end)) in core_boundary_heights.iter().zip(&model.ends).enumerate() {
                if *h != end.t_min {
                    v.push(format!(
                        "core boundary height {h} of end {j} differs from chart t_min {}",
                        end.t_min
                    ));
                }
            }
        }
    }

    let start_offset = if model.is_polar_cap() {
        POLE_GUARD
    } else {
        0.0
    };
    for (j, end) in model.ends.iter().enumerate() {
        if !end.t_min.is_finite() {
            v.push(format!("end {j}: t_min must be finite"));
            continue;
        }
        if end.derivative_order < 2 {
            v.push(format!(
                "end {j}: at least two exact t-derivatives are required"
            ));
        }
        // smallest G seen at the previous sampled height
        let mut prev_min = f64::INFINITY;
        'sampling: for t in sample_heights(end.t_min + start_offset, samples_per_axis) {
            let mut row_min = f64::INFINITY;
            for k in 0..samples_per_axis {
                let theta = TAU * k as f64 / samples_per_axis as f64;
                match end.g_jet(t, theta) {
                    Ok(g) if g.value > 0.0 => row_min = row_min.min(g.value),
                    Ok(g) if g.value == 0.0 && prev_min < 1e-200 => {
                        report.warnings.push(format!(
                            "end {j}: G underflows to 0 near t = {t}; sampling stopped there"
                        ));
                        break 'sampling;
                    }
                    Ok(g) => {
                        v.push(format!(
                            "end {j}: G <= 0 at sampled point (t = {t}, theta = {theta}, G = {})",
                            g.value
                        ));
                        break 'sampling;
                    }
                    Err(DomainError::NonFinite(_)) => {
                        report.warnings.push(format!(
                            "end {j}: G not finite at t = {t}; sampling stopped there"
                        ));
                        break 'sampling;
                    }
                    Err(e) => {
                        v.push(format!(
                            "end {j}: G evaluation failed at (t = {t}, theta = {theta}): {e}"
                        ));
                        break 'sampling;
                    }
                }
            }
            prev_min = row_min;
        }
    }
    Ok(report)
}

/// Like [`validate_surface`] but fails with the first violated invariant.
pub fn validate_strict(model: &SurfaceModel, samples_per_axis: usize) -> Result<(), ModelError> {
    let report = validate_surface(model, samples_per_axis)?;
    match report.violations.into_iter().next() {
        Some(first) => Err(ModelError::Invalid(first)),
        None => Ok(()),
    }
}
