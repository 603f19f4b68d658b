//! Globally adaptive Gauss-Kronrod (7/15) integration on a finite interval.

use super::{QuadResult, Tolerance};
use crate::error::DomainError;

// 15-point Kronrod abscissae on [-1, 1]; odd indices are the 7-point Gauss
// nodes, the last entry is the centre.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Evaluations per panel.
pub const PANEL_EVALS: usize = 15;

/// Degree of polynomial exactness of the 15-point Kronrod rule.
pub const KRONROD_DEGREE: usize = 22;

#[derive(Debug, Clone, Copy)]
pub struct Panel {
    pub a: f64,
    pub b: f64,
    /// Kronrod estimate.
    pub value: f64,
    /// Embedded Gauss estimate.
    pub gauss: f64,
    /// Kronrod estimate of `int |f|`, used for the round-off floor.
    pub abs_value: f64,
}

impl Panel {
    pub fn error(&self) -> f64 {
        (self.value - self.gauss).abs()
    }
}

/// Applies the embedded 7/15 pair on `[a, b]`.
pub fn gk15<F>(f: &mut F, a: f64, b: f64) -> Result<Panel, DomainError>
where
    F: FnMut(f64) -> Result<f64, DomainError>,
{
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre)?;
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    let mut resabs = WGK[7] * fc.abs();
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(centre - dx)?;
        let f2 = f(centre + dx)?;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let panel = Panel {
        a,
        b,
        value: resk * half,
        gauss: resg * half,
        abs_value: resabs * half.abs(),
    };
    if panel.value.is_finite() && panel.gauss.is_finite() {
        Ok(panel)
    } else {
        Err(DomainError::NonFinite("quadrature panel"))
    }
}

/// Adaptive integration of `f` over `[a, b]`, starting from `initial_panels`
/// equal panels and repeatedly bisecting the panel with the largest error
/// estimate. Running out of evaluations is not an error: the result comes
/// back with `converged = false`.
pub fn integrate_interval<F>(
    mut f: F,
    a: f64,
    b: f64,
    initial_panels: usize,
    tol: &Tolerance,
) -> Result<QuadResult, DomainError>
where
    F: FnMut(f64) -> Result<f64, DomainError>,
{
    let n0 = initial_panels.max(1);
    let mut panels = Vec::with_capacity(n0 * 4);
    for i in 0..n0 {
        let lo = a + (b - a) * i as f64 / n0 as f64;
        let hi = if i + 1 == n0 {
            b
        } else {
            a + (b - a) * (i + 1) as f64 / n0 as f64
        };
        panels.push(gk15(&mut f, lo, hi)?);
    }
    let mut evaluations = n0 * PANEL_EVALS;
    // panels too narrow to split further keep their error estimate
    let min_width = 64.0 * f64::EPSILON * a.abs().max(b.abs()).max(f64::MIN_POSITIVE);

    loop {
        let total: f64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(Panel::error).sum();
        let abs_total: f64 = panels.iter().map(|p| p.abs_value).sum();
        let target = tol
            .abs_tol
            .max(tol.rel_tol * total.abs())
            .max(50.0 * f64::EPSILON * abs_total);
        let converged = err <= target;
        let out_of_budget = evaluations + 2 * PANEL_EVALS > tol.max_evaluations;

        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| (p.b - p.a).abs() > min_width)
            .max_by(|x, y| x.1.error().total_cmp(&y.1.error()))
            .map(|(i, _)| i);

        if converged || out_of_budget || worst.is_none() {
            panels.sort_by(|x, y| x.a.total_cmp(&y.a));
            return Ok(QuadResult {
                value: panels.iter().map(|p| p.value).sum(),
                error_estimate: err,
                evaluations,
                converged,
            });
        }
        let p = panels.swap_remove(worst.unwrap_or(0));
        let mid = 0.5 * (p.a + p.b);
        panels.push(gk15(&mut f, p.a, mid)?);
        panels.push(gk15(&mut f, mid, p.b)?);
        evaluations += 2 * PANEL_EVALS;
    }
}
