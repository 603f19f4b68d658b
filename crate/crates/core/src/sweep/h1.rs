//! Locating the height beyond which the Gaussian curvature is nonnegative.

use std::f64::consts::TAU;

use super::functionals::height_origin;
use crate::curvature::gauss_curvature;
use crate::model::{EndChart, SurfaceModel};

/// Smallest `K` that counts as strictly positive for the corollary check.
pub const K_SLACK: f64 = 1e-10;

/// Multiple of the unit round-off in the bound on the error of a computed
/// `K`; a sample is negative only below minus that bound.
const ROUNDOFF_FACTOR: f64 = 8.0;

pub const DEFAULT_H1_GRID: usize = 256;

const THETA_PROBES: usize = 16;

/// Bisection stops at `h_probe_max / 2^12`.
const REFINE_LEVELS: i32 = 12;

/// Outcome of a curvature scan over `[origin, h_probe_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct H1Probe {
    pub h1: Option<f64>,
    pub origin: f64,
    /// Largest sampled `K`.
    pub max_k: f64,
    /// Some sample exceeds `K_SLACK` plus its round-off bound.
    pub positive_somewhere: bool,
    pub resolution: f64,
}

impl H1Probe {
    /// `K >= 0` at every sampled point.
    pub fn nonnegative_everywhere(&self) -> bool {
        self.h1 == Some(self.origin)
    }
}

/// Round-off bound for `K` evaluated from the jet of `G`: the chain rule
/// for `sqrt` combines `G'^2 / G^2` and `G'' / G`, each carrying a relative
/// error of a few ulps.
fn k_noise(end: &EndChart, t: f64, theta: f64) -> f64 {
    match end.g_jet(t, theta) {
        Ok(g) if g.value > 0.0 => {
            let r1 = g.d1 / g.value;
            ROUNDOFF_FACTOR * f64::EPSILON * (r1 * r1 + (g.d2 / g.value).abs())
        }
        _ => 0.0,
    }
}

struct Scan {
    max_k: f64,
    negative: bool,
    positive: bool,
}

/// Largest sampled `K` and whether some sample is negative (or positive)
/// beyond round-off. A point where `K` cannot be evaluated counts as
/// negative: nonnegativity is unproven there.
fn k_scan(model: &SurfaceModel, t: f64) -> Scan {
    let mut hi = f64::NEG_INFINITY;
    let mut negative = false;
    let mut positive = false;
    for end in &model.ends {
        for k in 0..THETA_PROBES {
            let theta = TAU * k as f64 / THETA_PROBES as f64;
            match gauss_curvature(end, t, theta) {
                Ok(v) => {
                    let noise = k_noise(end, t, theta);
                    hi = hi.max(v);
                    negative |= v < -noise;
                    positive |= v > noise + K_SLACK;
                }
                Err(_) => negative = true,
            }
        }
    }
    Scan {
        max_k: hi,
        negative,
        positive,
    }
}

fn is_bad(model: &SurfaceModel, t: f64) -> bool {
    k_scan(model, t).negative
}

/// Scans `grid + 1` equally spaced heights from the model's origin to
/// `h_probe_max`, then bisects the cell containing the last negative sample.
pub fn probe_h1(model: &SurfaceModel, h_probe_max: f64, grid: usize) -> H1Probe {
    let grid = grid.max(8);
    let origin = height_origin(model);
    let span = (h_probe_max - origin).max(0.0);
    let resolution = h_probe_max.abs().max(1.0) / 2f64.powi(REFINE_LEVELS);
    let heights: Vec<f64> = (0..=grid)
        .map(|i| origin + span * i as f64 / grid as f64)
        .collect();
    let mut max_k = f64::NEG_INFINITY;
    let mut positive_somewhere = false;
    let mut last_bad: Option<usize> = None;
    for (i, &t) in heights.iter().enumerate() {
        let scan = k_scan(model, t);
        max_k = max_k.max(scan.max_k);
        positive_somewhere |= scan.positive;
        if scan.negative {
            last_bad = Some(i);
        }
    }
    let h1 = match last_bad {
        None => Some(origin),
        Some(i) if i == grid => None,
        Some(i) => {
            let (mut bad, mut good) = (heights[i], heights[i + 1]);
            while good - bad > resolution {
                let mid = 0.5 * (bad + good);
                if is_bad(model, mid) {
                    bad = mid;
                } else {
                    good = mid;
                }
            }
            Some(good)
        }
    };
    H1Probe {
        h1,
        origin,
        max_k,
        positive_somewhere,
        resolution,
    }
}

/// Smallest sampled height beyond which `K >= 0` up to round-off, or `None`.
pub fn detect_h1(model: &SurfaceModel, h_probe_max: f64, grid: usize) -> Option<f64> {
    probe_h1(model, h_probe_max, grid).h1
}
