use std::fmt;

use serde::{Deserialize, Serialize};

use super::{annulus_above_pole, integrate_annulus, QuadResult, Tolerance};
use crate::error::DomainError;

const FIRST_WINDOW: f64 = 1.0;
const MAX_WINDOWS: usize = 100;
// windows out to t_lo + 32 are always visited
const MIN_WINDOWS: usize = 6;
// growing increments are only read as divergence once the windows reach
// t_lo + 2^11; before that they may just be a bump being crossed
const RUNAWAY_FROM: usize = 12;

/// Why an improper integral failed to settle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Divergence {
    #[serde(rename = "+inf")]
    PositiveInfinity,
    #[serde(rename = "-inf")]
    NegativeInfinity,
    #[serde(rename = "oscillatory")]
    Oscillatory,
}

impl Divergence {
    fn from_sign(x: f64) -> Divergence {
        if x > 0.0 {
            Divergence::PositiveInfinity
        } else {
            Divergence::NegativeInfinity
        }
    }
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Divergence::PositiveInfinity => "+inf",
            Divergence::NegativeInfinity => "-inf",
            Divergence::Oscillatory => "oscillatory",
        })
    }
}

/// One doubling window `[.., t_hi]` of an improper integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowStep {
    pub t_hi: f64,
    pub increment: f64,
    pub partial_sum: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ImproperOutcome {
    Converged {
        result: QuadResult,
        trace: Vec<WindowStep>,
    },
    NoConvergence {
        direction: Divergence,
        trace: Vec<WindowStep>,
        evaluations: usize,
    },
}

impl ImproperOutcome {
    pub fn value(&self) -> Option<f64> {
        match self {
            ImproperOutcome::Converged { result, .. } => Some(result.value),
            ImproperOutcome::NoConvergence { .. } => None,
        }
    }

    pub fn result(&self) -> Option<&QuadResult> {
        match self {
            ImproperOutcome::Converged { result, .. } => Some(result),
            ImproperOutcome::NoConvergence { .. } => None,
        }
    }

    pub fn trace(&self) -> &[WindowStep] {
        match self {
            ImproperOutcome::Converged { trace, .. }
            | ImproperOutcome::NoConvergence { trace, .. } => trace,
        }
    }

    pub fn divergence(&self) -> Option<Divergence> {
        match self {
            ImproperOutcome::Converged { .. } => None,
            ImproperOutcome::NoConvergence { direction, .. } => Some(*direction),
        }
    }

    /// Adds a finite leading piece (e.g. a polar cap) to the outcome.
    fn offset_by(self, head: QuadResult) -> ImproperOutcome {
        match self {
            ImproperOutcome::Converged { result, trace } => ImproperOutcome::Converged {
                result: head.merge(result),
                trace,
            },
            ImproperOutcome::NoConvergence {
                direction,
                trace,
                evaluations,
            } => ImproperOutcome::NoConvergence {
                direction,
                trace,
                evaluations: evaluations + head.evaluations,
            },
        }
    }
}

/// Growing same-sign increments over the last three windows.
fn runaway(trace: &[WindowStep], threshold: f64) -> Option<Divergence> {
    let n = trace.len();
    if n < RUNAWAY_FROM {
        return None;
    }
    let (a, b, c) = (
        trace[n - 3].increment,
        trace[n - 2].increment,
        trace[n - 1].increment,
    );
    let same_sign = a.signum() == b.signum() && b.signum() == c.signum() && a != 0.0;
    if same_sign && c.abs() >= b.abs() && b.abs() >= a.abs() && c.abs() > threshold {
        Some(Divergence::from_sign(c))
    } else {
        None
    }
}

fn classify_unsettled(trace: &[WindowStep]) -> Divergence {
    let incs: Vec<f64> = trace.iter().rev().take(4).map(|w| w.increment).collect();
    let alternating = incs.len() >= 3 && incs.windows(2).all(|p| p[0] * p[1] < 0.0);
    if alternating {
        Divergence::Oscillatory
    } else {
        Divergence::from_sign(incs.first().copied().unwrap_or(0.0))
    }
}

/// `int_{t_lo}^inf int_0^{2 pi} f dtheta dt` over windows
/// `[t_lo, t_lo + 1], [t_lo + 1, t_lo + 2], [t_lo + 2, t_lo + 4], ...`.
///
/// Converged once at least six windows are done and two consecutive window
/// increments fall below tolerance; the error estimate then includes a
/// geometric bound on the unvisited tail.
/// Increments that keep growing past `t_lo + 2^11`, or overflow after a
/// growing trend, are reported as divergence rather than as an error.
pub fn integrate_improper<F>(
    f: F,
    t_lo: f64,
    tol: &Tolerance,
) -> Result<ImproperOutcome, DomainError>
where
    F: Fn(f64, f64) -> Result<f64, DomainError>,
{
    let mut trace: Vec<WindowStep> = Vec::new();
    let mut acc: Option<QuadResult> = None;
    let mut lo = t_lo;
    let mut width = FIRST_WINDOW;
    for _ in 0..MAX_WINDOWS {
        let hi = t_lo + width;
        let piece = match integrate_annulus(&f, lo, hi, tol) {
            Ok(p) => p,
            Err(DomainError::NonFinite(_)) if !trace.is_empty() => {
                let n = trace.len();
                let (a, b) = if n >= 2 {
                    (trace[n - 2].increment, trace[n - 1].increment)
                } else {
                    (0.0, 0.0)
                };
                let growing = a != 0.0 && a.signum() == b.signum() && b.abs() > a.abs();
                if growing {
                    return Ok(ImproperOutcome::NoConvergence {
                        direction: Divergence::from_sign(trace[n - 1].increment),
                        evaluations: acc.map_or(0, |a| a.evaluations),
                        trace,
                    });
                }
                return Err(DomainError::NonFinite("improper integrand"));
            }
            Err(e) => return Err(e),
        };
        let total = acc.map_or(piece, |a| a.merge(piece));
        acc = Some(total);
        trace.push(WindowStep {
            t_hi: hi,
            increment: piece.value,
            partial_sum: total.value,
        });

        let threshold = tol.threshold(total.value);
        let n = trace.len();
        if n >= MIN_WINDOWS {
            let prev = trace[n - 2].increment;
            let last = trace[n - 1].increment;
            if prev.abs() <= threshold && last.abs() <= threshold {
                let q = if prev != 0.0 { last / prev } else { 0.0 };
                let tail = if q > 0.0 && q < 1.0 {
                    (last * q / (1.0 - q)).abs()
                } else {
                    last.abs()
                };
                let mut result = total;
                result.error_estimate += tail;
                return Ok(ImproperOutcome::Converged { result, trace });
            }
        }
        if let Some(direction) = runaway(&trace, threshold) {
            return Ok(ImproperOutcome::NoConvergence {
                direction,
                evaluations: total.evaluations,
                trace,
            });
        }
        lo = hi;
        width *= 2.0;
    }
    Ok(ImproperOutcome::NoConvergence {
        direction: classify_unsettled(&trace),
        evaluations: acc.map_or(0, |a| a.evaluations),
        trace,
    })
}

/// Improper integral over a whole polar-capped end: the cap `[0, 1]` with a
/// shrinking inner cutoff, then doubling windows from `t = 1`.
pub fn integrate_from_pole<F>(f: F, tol: &Tolerance) -> Result<ImproperOutcome, DomainError>
where
    F: Fn(f64, f64) -> Result<f64, DomainError>,
{
    let cap = annulus_above_pole(&f, 1.0, tol)?;
    Ok(integrate_improper(&f, 1.0, tol)?.offset_by(cap))
}
