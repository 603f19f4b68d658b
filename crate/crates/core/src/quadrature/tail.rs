//! Limits of sequences sampled along a height schedule.
//!
//! Along a geometric schedule `h_k`, a quantity that approaches its limit
//! like a power of `h` is close to a geometric sequence in `k`, so two rounds
//! of Aitken's delta-squared process remove most of the remaining tail. The
//! reported error bound is the last Cauchy difference of the most
//! accelerated sequence, floored by the accumulated quadrature error. It is
//! an engineering estimate under that decay assumption, not a certificate.

use thiserror::Error;

use super::Divergence;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailEstimate {
    Finite { limit: f64, error_bound: f64 },
    Divergent(Divergence),
}

impl TailEstimate {
    pub fn limit(&self) -> Option<f64> {
        match self {
            TailEstimate::Finite { limit, .. } => Some(*limit),
            TailEstimate::Divergent(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TailError {
    #[error("need at least 3 samples beyond the monotone range, found {found}")]
    InsufficientSamples { found: usize },
    #[error("sequence increases by {increase:e} at h = {h} (allowed {allowed:e})")]
    NotMonotone { h: f64, increase: f64, allowed: f64 },
}

/// Combined error bar for comparing neighbouring samples.
pub fn comparison_slack(quad_error: f64) -> f64 {
    10.0 * quad_error + 1e-9
}

fn aitken(values: &[f64], noise: f64) -> Vec<f64> {
    values
        .windows(3)
        .map(|w| {
            let d1 = w[1] - w[0];
            let d2 = w[2] - w[1];
            if d2.abs() <= noise || d1 == 0.0 {
                return w[2];
            }
            let q = d2 / d1;
            if q > 0.0 && q < 1.0 {
                w[2] + d2 * q / (1.0 - q)
            } else {
                w[2]
            }
        })
        .collect()
}

/// Limit of `values` (ordered by increasing height) with no monotonicity
/// requirement.
pub fn extrapolate_limit(values: &[f64], quad_error: f64) -> TailEstimate {
    let noise = comparison_slack(quad_error);
    let n = values.len();
    match n {
        0 => {
            return TailEstimate::Finite {
                limit: f64::NAN,
                error_bound: f64::INFINITY,
            }
        }
        1 => {
            return TailEstimate::Finite {
                limit: values[0],
                error_bound: f64::INFINITY,
            }
        }
        _ => {}
    }
    let last = values[n - 1];
    let d_last = last - values[n - 2];
    if n >= 3 {
        let d_prev = values[n - 2] - values[n - 3];
        let same_sign = d_last.signum() == d_prev.signum();
        if same_sign && d_last.abs() > noise && d_last.abs() >= d_prev.abs() {
            return TailEstimate::Divergent(if d_last > 0.0 {
                Divergence::PositiveInfinity
            } else {
                Divergence::NegativeInfinity
            });
        }
    }
    let mut level = values.to_vec();
    for _ in 0..2 {
        if level.len() < 4 {
            break;
        }
        level = aitken(&level, noise);
    }
    let m = level.len();
    let limit = level[m - 1];
    let cauchy = if m >= 2 {
        (level[m - 1] - level[m - 2]).abs()
    } else {
        d_last.abs()
    };
    TailEstimate::Finite {
        limit,
        error_bound: cauchy.max(quad_error),
    }
}

/// Estimates `lim_{h -> inf}` of a sequence that is nonincreasing beyond
/// `monotone_from`. Samples at or below `monotone_from` are ignored, so their
/// order does not matter.
pub fn estimate_tail_limit(
    samples: &[(f64, f64)],
    monotone_from: f64,
    quad_error: f64,
) -> Result<TailEstimate, TailError> {
    let mut tail: Vec<(f64, f64)> = samples
        .iter()
        .copied()
        .filter(|(h, _)| *h > monotone_from)
        .collect();
    if tail.len() < 3 {
        return Err(TailError::InsufficientSamples { found: tail.len() });
    }
    tail.sort_by(|a, b| a.0.total_cmp(&b.0));
    let allowed = comparison_slack(quad_error);
    for w in tail.windows(2) {
        let increase = w[1].1 - w[0].1;
        if increase > allowed {
            return Err(TailError::NotMonotone {
                h: w[1].0,
                increase,
                allowed,
            });
        }
    }
    let values: Vec<f64> = tail.iter().map(|s| s.1).collect();
    Ok(extrapolate_limit(&values, quad_error))
}
