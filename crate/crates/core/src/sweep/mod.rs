//! The truncation procedure end to end: sample `mu`, `lambda` and
//! `c(Sigma_h)` along a height schedule, locate `h1`, estimate
//! `L = lim lambda(h)`, and check every identity and inequality that links
//! them.

mod checks;
mod functionals;
mod h1;

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{DomainError, ModelError, SweepError};
use crate::model::{validate_surface, SurfaceModel};
use crate::quadrature::{
    estimate_tail_limit, extrapolate_limit, Divergence, TailEstimate, Tolerance,
};

pub use checks::{
    check_gauss_bonnet_truncated, check_lambda_is_mu_prime, gauss_bonnet_bound, VERDICT_ORDER,
};
pub use functionals::{
    curvature_split_integrals, height_origin, lambda_quad, lambda_total, mu, mu_quad,
    total_curvature_direct, truncated_total_curvature, truncated_total_curvature_quad, RouteValue,
};
pub use h1::{detect_h1, probe_h1, H1Probe, DEFAULT_H1_GRID, K_SLACK};

/// `mu`, `lambda` and `c(Sigma_h)` at one truncation height.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationSample {
    pub h: f64,
    pub mu: f64,
    pub lambda: f64,
    pub c_trunc: f64,
    /// Sum of the quadrature error estimates of the three values.
    pub quad_error: f64,
}

/// A number, or a label where no finite number applies
/// (`"not found"`, `"divergent"`, `"+inf"`, `"does not converge (..)"`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Reported {
    Value(f64),
    Label(String),
}

impl Reported {
    pub fn value(&self) -> Option<f64> {
        match self {
            Reported::Value(v) => Some(*v),
            Reported::Label(_) => None,
        }
    }
}

impl fmt::Display for Reported {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reported::Value(v) => write!(f, "{v}"),
            Reported::Label(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "not-applicable")]
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not-applicable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub residual: Option<f64>,
    pub bound: Option<f64>,
    pub note: String,
}

impl Verdict {
    pub fn new(status: Status, residual: f64, bound: f64, note: impl Into<String>) -> Self {
        let finite = |x: f64| x.is_finite().then_some(x);
        Self {
            status,
            residual: finite(residual),
            bound: finite(bound),
            note: note.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub surface: String,
    pub chi: i64,
    pub h1: Reported,
    #[serde(rename = "L")]
    pub l_estimate: Reported,
    #[serde(rename = "L_error")]
    pub l_error: Option<f64>,
    pub c_total: Reported,
    pub samples: Vec<TruncationSample>,
    pub verdicts: BTreeMap<String, Verdict>,
    /// Diagnostics that are not part of the serialized report.
    #[serde(skip)]
    pub notes: Vec<String>,
}

impl SweepReport {
    pub fn any_failure(&self) -> bool {
        self.verdicts.values().any(|v| v.status == Status::Fail)
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.get(name)
    }

    pub fn gb_residual(&self, sample: &TruncationSample) -> f64 {
        check_gauss_bonnet_truncated(sample, self.chi)
    }
}

/// Total curvature `2 pi chi - L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TotalCurvature {
    Finite { value: f64, error: f64 },
    PlusInfinity,
    NoConvergence(Divergence),
}

impl TotalCurvature {
    fn from_limit(chi: i64, l: &TailEstimate) -> TotalCurvature {
        match *l {
            TailEstimate::Finite { limit, error_bound } => TotalCurvature::Finite {
                value: TAU * chi as f64 - limit,
                error: error_bound,
            },
            TailEstimate::Divergent(Divergence::NegativeInfinity) => TotalCurvature::PlusInfinity,
            TailEstimate::Divergent(Divergence::PositiveInfinity) => {
                TotalCurvature::NoConvergence(Divergence::NegativeInfinity)
            }
            TailEstimate::Divergent(Divergence::Oscillatory) => {
                TotalCurvature::NoConvergence(Divergence::Oscillatory)
            }
        }
    }

    pub fn reported(&self) -> Reported {
        match self {
            TotalCurvature::Finite { value, .. } => Reported::Value(*value),
            TotalCurvature::PlusInfinity => Reported::Label("+inf".into()),
            TotalCurvature::NoConvergence(d) => Reported::Label(format!("does not converge ({d})")),
        }
    }
}

/// Default schedule: 8 uniform points below `h1` (when it lies above the
/// origin), then `h1 + 2^k` for `k = 0..=10`. Without an `h1` the geometric
/// part starts at the origin.
pub fn default_schedule(model: &SurfaceModel, h_probe_max: f64) -> Vec<f64> {
    let probe = probe_h1(model, h_probe_max, DEFAULT_H1_GRID);
    let base = probe.h1.unwrap_or(probe.origin);
    let mut schedule: Vec<f64> = Vec::new();
    if base > probe.origin {
        schedule.extend((0..8).map(|i| probe.origin + (base - probe.origin) * f64::from(i) / 8.0));
    }
    schedule.extend((0..=10).map(|k| base + f64::from(1 << k)));
    schedule
}

/// `steps` heights from `h_min` to `h_max`: geometric when `h_min > 0`,
/// linear otherwise.
pub fn spaced_schedule(h_min: f64, h_max: f64, steps: usize) -> Result<Vec<f64>, SweepError> {
    if !(h_min.is_finite() && h_max.is_finite() && h_min < h_max) {
        return Err(SweepError::Schedule(format!(
            "need finite h_min < h_max, got {h_min} and {h_max}"
        )));
    }
    if steps < 3 {
        return Err(SweepError::Schedule(format!(
            "need at least 3 steps, got {steps}"
        )));
    }
    let n = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            let x = i as f64 / n;
            if i + 1 == steps {
                h_max
            } else if h_min > 0.0 {
                h_min * (h_max / h_min).powf(x)
            } else {
                h_min + (h_max - h_min) * x
            }
        })
        .collect())
}

fn compute_sample(
    model: &SurfaceModel,
    h: f64,
    tol: &Tolerance,
) -> Result<TruncationSample, SweepError> {
    let m = mu_quad(model, h, tol)?;
    let l = lambda_quad(model, h, tol)?;
    let c = truncated_total_curvature_quad(model, h, tol)?;
    Ok(TruncationSample {
        h,
        mu: m.value,
        lambda: l.value,
        c_trunc: c.value,
        quad_error: m.error_estimate + l.error_estimate + c.error_estimate,
    })
}

/// Overflow or underflow of the metric: the model is fine, the height is out
/// of floating-point reach.
fn out_of_range(e: &SweepError) -> bool {
    match e {
        SweepError::Domain(DomainError::NonFinite(_)) => true,
        SweepError::Domain(DomainError::NonPositiveMetric { value, .. }) => {
            *value == 0.0 || !value.is_finite()
        }
        _ => false,
    }
}

fn validate_schedule(model: &SurfaceModel, schedule: &[f64]) -> Result<(), SweepError> {
    if schedule.is_empty() {
        return Err(SweepError::Schedule("empty schedule".into()));
    }
    if let Some(w) = schedule.windows(2).find(|w| !(w[1] > w[0])) {
        return Err(SweepError::Schedule(format!(
            "heights must increase strictly ({} then {})",
            w[0], w[1]
        )));
    }
    for &h in schedule {
        functionals::check_height(model, h)?;
    }
    Ok(())
}

fn limit_estimate(
    samples: &[TruncationSample],
    probe: &H1Probe,
    notes: &mut Vec<String>,
) -> TailEstimate {
    let max_err = |s: &[TruncationSample]| s.iter().map(|x| x.quad_error).fold(0.0, f64::max);
    let all_values: Vec<f64> = samples.iter().map(|s| s.lambda).collect();
    let Some(h1) = probe.h1 else {
        notes.push("h1 not found: L extrapolated over the whole schedule".into());
        return extrapolate_limit(&all_values, max_err(samples));
    };
    let tail: Vec<TruncationSample> = samples.iter().copied().filter(|s| s.h > h1).collect();
    let pairs: Vec<(f64, f64)> = tail.iter().map(|s| (s.h, s.lambda)).collect();
    match estimate_tail_limit(&pairs, h1, max_err(&tail)) {
        Ok(est) => est,
        Err(e) => {
            notes.push(format!(
                "tail limit beyond h1: {e}; extrapolating without the monotonicity check"
            ));
            if tail.len() >= 2 {
                let values: Vec<f64> = tail.iter().map(|s| s.lambda).collect();
                extrapolate_limit(&values, max_err(&tail))
            } else {
                extrapolate_limit(&all_values, max_err(samples))
            }
        }
    }
}

/// Runs the truncation procedure over `schedule` and renders all verdicts.
///
/// Samples are computed concurrently. A height at which the metric leaves
/// floating-point range ends the schedule there, with a note; every other
/// numeric failure aborts.
pub fn run_sweep(
    model: &SurfaceModel,
    schedule: &[f64],
    tol: &Tolerance,
) -> Result<SweepReport, SweepError> {
    tol.validate().map_err(SweepError::Tolerance)?;
    let report = validate_surface(model, 16)?;
    if !report.is_empty() {
        return Err(ModelError::Invalid(report.violations.join("; ")).into());
    }
    validate_schedule(model, schedule)?;

    let computed: Vec<Result<TruncationSample, SweepError>> = schedule
        .par_iter()
        .map(|&h| compute_sample(model, h, tol))
        .collect();
    let mut notes = Vec::new();
    let mut samples = Vec::with_capacity(schedule.len());
    for (h, r) in schedule.iter().zip(computed) {
        match r {
            Ok(s) => samples.push(s),
            Err(e) if out_of_range(&e) && !samples.is_empty() => {
                notes.push(format!("schedule truncated at h = {h}: {e}"));
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let h_top = samples.last().map_or(schedule[0], |s| s.h);

    let probe = probe_h1(model, h_top, DEFAULT_H1_GRID);
    let l = limit_estimate(&samples, &probe, &mut notes);
    let c_total = TotalCurvature::from_limit(model.chi(), &l);

    let ctx = checks::Context {
        model,
        chi: model.chi(),
        tol,
        samples: &samples,
        probe: &probe,
        limit: &l,
        c_total: &c_total,
    };
    let verdicts = checks::all_verdicts(&ctx, &mut notes)?;

    let (l_estimate, l_error) = match l {
        TailEstimate::Finite { limit, error_bound } => (Reported::Value(limit), Some(error_bound)),
        TailEstimate::Divergent(_) => (Reported::Label("divergent".into()), None),
    };
    Ok(SweepReport {
        surface: model.name.clone(),
        chi: model.chi(),
        h1: probe
            .h1
            .map_or_else(|| Reported::Label("not found".into()), Reported::Value),
        l_estimate,
        l_error: l_error.filter(|e| e.is_finite()),
        c_total: c_total.reported(),
        samples,
        verdicts,
        notes,
    })
}
