//! Verdicts on the identities and inequalities linking the sampled
//! functionals.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use rayon::prelude::*;

use super::functionals::{curvature_split_integrals, mu_quad, total_curvature_direct, RouteValue};
use super::{H1Probe, Status, TotalCurvature, TruncationSample, Verdict};
use crate::error::SweepError;
use crate::model::SurfaceModel;
use crate::quadrature::{comparison_slack, Divergence, TailEstimate, Tolerance};

/// Verdict names in presentation order.
pub const VERDICT_ORDER: [&str; 8] = [
    "gauss-bonnet-truncated",
    "lambda-mu-prime",
    "lambda-monotone",
    "L-nonneg",
    "theorem",
    "total-curvature-routes",
    "curvature-split",
    "corollary",
];

/// Finite-difference steps for the `lambda = mu'` order measurement, before
/// scaling by the local length `mu / |lambda|`.
const MU_PRIME_STEP: f64 = 0.1;
const MIN_ORDER: f64 = 1.9;

/// `|2 pi chi - c(Sigma_h) - lambda(h)|`.
pub fn check_gauss_bonnet_truncated(sample: &TruncationSample, chi: i64) -> f64 {
    (TAU * chi as f64 - sample.c_trunc - sample.lambda).abs()
}

/// Allowed Gauss-Bonnet residual for a sample.
pub fn gauss_bonnet_bound(sample: &TruncationSample) -> f64 {
    comparison_slack(sample.quad_error)
}

/// Worst `|lambda(h_k) - (mu(h_{k+1}) - mu(h_{k-1})) / (h_{k+1} - h_{k-1})|`
/// over interior samples; `0` when there is no interior sample.
pub fn check_lambda_is_mu_prime(samples: &[TruncationSample]) -> f64 {
    samples
        .windows(3)
        .map(|w| (w[1].lambda - (w[2].mu - w[0].mu) / (w[2].h - w[0].h)).abs())
        .fold(0.0, f64::max)
}

pub(super) struct Context<'a> {
    pub model: &'a SurfaceModel,
    pub chi: i64,
    pub tol: &'a Tolerance,
    pub samples: &'a [TruncationSample],
    pub probe: &'a H1Probe,
    pub limit: &'a TailEstimate,
    pub c_total: &'a TotalCurvature,
}

impl Context<'_> {
    fn hypothesis(&self) -> bool {
        self.probe.h1.is_some()
    }
}

fn fmt6(x: f64) -> String {
    crate::report::sig6(x)
}

fn gauss_bonnet(ctx: &Context) -> Verdict {
    let mut worst: Option<(f64, f64, f64)> = None;
    for s in ctx.samples {
        let r = check_gauss_bonnet_truncated(s, ctx.chi);
        let b = gauss_bonnet_bound(s);
        if worst.is_none_or(|(_, _, q)| r / b > q) {
            worst = Some((r, b, r / b));
        }
    }
    let (r, b, q) = worst.unwrap_or((0.0, comparison_slack(0.0), 0.0));
    let status = if q <= 1.0 { Status::Pass } else { Status::Fail };
    Verdict::new(
        status,
        r,
        b,
        format!("worst of {} samples", ctx.samples.len()),
    )
}

struct MuPrimeProbe {
    h: f64,
    dev: f64,
    dev_half: f64,
    floor_half: f64,
}

fn mu_prime_probe(ctx: &Context, s: &TruncationSample) -> Result<Option<MuPrimeProbe>, SweepError> {
    let scale = if s.lambda != 0.0 {
        (s.mu / s.lambda.abs()).min(1.0)
    } else {
        1.0
    };
    let delta = MU_PRIME_STEP * scale;
    if s.h - delta < ctx.probe.origin {
        return Ok(None);
    }
    let cd = |d: f64| -> Result<(f64, f64), SweepError> {
        let up = mu_quad(ctx.model, s.h + d, ctx.tol)?;
        let down = mu_quad(ctx.model, s.h - d, ctx.tol)?;
        let dev = ((up.value - down.value) / (2.0 * d) - s.lambda).abs();
        let noise = (up.error_estimate + down.error_estimate).max(1e-11 * s.mu.max(1.0));
        Ok((dev, noise / d))
    };
    let (dev, _) = cd(delta)?;
    let (dev_half, floor_half) = cd(0.5 * delta)?;
    Ok(Some(MuPrimeProbe {
        h: s.h,
        dev,
        dev_half,
        floor_half,
    }))
}

fn lambda_mu_prime(ctx: &Context) -> Result<Verdict, SweepError> {
    let probes: Vec<Result<Option<MuPrimeProbe>, SweepError>> = ctx
        .samples
        .par_iter()
        .map(|s| mu_prime_probe(ctx, s))
        .collect();
    let mut worst_dev = 0.0f64;
    let mut min_order = f64::INFINITY;
    let mut failed: Option<(f64, f64)> = None;
    let mut count = 0;
    for p in probes {
        let Some(p) = p? else { continue };
        count += 1;
        worst_dev = worst_dev.max(p.dev_half);
        if p.dev_half <= p.floor_half {
            continue;
        }
        let order = (p.dev / p.dev_half).log2();
        min_order = min_order.min(order);
        if !(order >= MIN_ORDER) && failed.is_none() {
            failed = Some((p.h, order));
        }
    }
    if count == 0 {
        return Ok(Verdict::new(
            Status::NotApplicable,
            f64::NAN,
            f64::NAN,
            "no schedule height leaves room for a central difference",
        ));
    }
    let on_schedule = check_lambda_is_mu_prime(ctx.samples);
    let order_note = if min_order.is_finite() {
        format!("min order {:.3}", min_order)
    } else {
        "all deviations at round-off".to_string()
    };
    let note = format!(
        "{count} probes, {order_note}; schedule central difference deviates by {}",
        fmt6(on_schedule)
    );
    Ok(match failed {
        None => Verdict::new(Status::Pass, worst_dev, f64::NAN, note),
        Some((h, order)) => Verdict::new(
            Status::Fail,
            worst_dev,
            f64::NAN,
            format!(
                "order {:.3} < {MIN_ORDER} at h = {}; {note}",
                order,
                fmt6(h)
            ),
        ),
    })
}

fn lambda_monotone(ctx: &Context) -> Verdict {
    let from = ctx.probe.h1.unwrap_or(f64::NEG_INFINITY);
    let tail: Vec<&TruncationSample> = ctx.samples.iter().filter(|s| s.h > from).collect();
    let mut worst: Option<(f64, f64, f64)> = None;
    for w in tail.windows(2) {
        let increase = w[1].lambda - w[0].lambda;
        let allowed = comparison_slack(w[0].quad_error + w[1].quad_error);
        if worst.is_none_or(|(inc, al, _)| increase - allowed > inc - al) {
            worst = Some((increase, allowed, w[1].h));
        }
    }
    let Some((increase, allowed, h)) = worst else {
        return Verdict::new(
            Status::NotApplicable,
            f64::NAN,
            f64::NAN,
            "fewer than two samples",
        );
    };
    let monotone = increase <= allowed;
    let scope = if ctx.hypothesis() {
        format!("beyond h1 = {}", fmt6(from))
    } else {
        "over the whole schedule (h1 not found)".into()
    };
    if monotone {
        if ctx.hypothesis() {
            Verdict::new(
                Status::Pass,
                increase.max(0.0),
                allowed,
                format!("nonincreasing {scope}"),
            )
        } else {
            Verdict::new(
                Status::NotApplicable,
                increase.max(0.0),
                allowed,
                format!("nonincreasing {scope}, not implied without the hypothesis"),
            )
        }
    } else {
        Verdict::new(
            Status::Fail,
            increase,
            allowed,
            format!("NotMonotone: lambda increases at h = {} {scope}", fmt6(h)),
        )
    }
}

fn l_nonneg(ctx: &Context) -> Verdict {
    match *ctx.limit {
        TailEstimate::Finite { limit, error_bound } => {
            let note = format!("L = {}", fmt6(limit));
            if !ctx.hypothesis() {
                Verdict::new(
                    Status::NotApplicable,
                    limit,
                    error_bound,
                    format!("{note}, hypothesis fails"),
                )
            } else if limit >= -error_bound {
                Verdict::new(Status::Pass, limit, error_bound, note)
            } else {
                Verdict::new(Status::Fail, limit, error_bound, note)
            }
        }
        TailEstimate::Divergent(d) => {
            let status = if !ctx.hypothesis() {
                Status::NotApplicable
            } else if d == Divergence::PositiveInfinity {
                Status::Pass
            } else {
                Status::Fail
            };
            Verdict::new(status, f64::NAN, f64::NAN, format!("L divergent ({d})"))
        }
    }
}

fn theorem(ctx: &Context) -> Verdict {
    let two_pi_chi = TAU * ctx.chi as f64;
    let (status, residual, bound, mut note) = match *ctx.c_total {
        TotalCurvature::Finite { value, error } => {
            let margin = two_pi_chi - value;
            let bound = comparison_slack(error);
            let ok = margin >= -bound;
            (
                if ok { Status::Pass } else { Status::Fail },
                margin,
                bound,
                format!("2 pi chi - c_total = {}", fmt6(margin)),
            )
        }
        TotalCurvature::PlusInfinity => (
            Status::Fail,
            f64::NAN,
            f64::NAN,
            "c_total = +inf".to_string(),
        ),
        TotalCurvature::NoConvergence(d) => (
            Status::Fail,
            f64::NAN,
            f64::NAN,
            format!("total curvature does not converge ({d})"),
        ),
    };
    if !ctx.hypothesis() {
        let observed = if status == Status::Pass {
            "holds"
        } else {
            "fails"
        };
        note = format!(
            "{note}; inequality {observed} as an observation, not certified (hypothesis fails)"
        );
        return Verdict::new(Status::NotApplicable, residual, bound, note);
    }
    Verdict::new(status, residual, bound, note)
}

fn route_note(r: &RouteValue) -> String {
    match r {
        RouteValue::Finite { value, error } => format!("{} +- {}", fmt6(*value), fmt6(*error)),
        RouteValue::Divergent(d) => format!("does not converge ({d})"),
    }
}

fn routes(ctx: &Context, direct: &RouteValue) -> Verdict {
    let via_l = match ctx.c_total {
        TotalCurvature::Finite { value, error } => format!("{} +- {}", fmt6(*value), fmt6(*error)),
        TotalCurvature::PlusInfinity => "+inf".into(),
        TotalCurvature::NoConvergence(d) => format!("does not converge ({d})"),
    };
    let note = format!("2 pi chi - L: {via_l}; direct: {}", route_note(direct));
    match (ctx.c_total, direct) {
        (
            TotalCurvature::Finite {
                value: a,
                error: ea,
            },
            RouteValue::Finite {
                value: b,
                error: eb,
            },
        ) => {
            let diff = (a - b).abs();
            let bound = comparison_slack(ea + eb);
            let status = if diff <= bound {
                Status::Pass
            } else {
                Status::Fail
            };
            Verdict::new(status, diff, bound, note)
        }
        (TotalCurvature::NoConvergence(a), RouteValue::Divergent(b)) if a == b => {
            Verdict::new(Status::Pass, f64::NAN, f64::NAN, note)
        }
        (TotalCurvature::PlusInfinity, RouteValue::Divergent(Divergence::PositiveInfinity)) => {
            Verdict::new(Status::Pass, f64::NAN, f64::NAN, note)
        }
        _ => Verdict::new(Status::Fail, f64::NAN, f64::NAN, note),
    }
}

fn split(ctx: &Context, plus: &RouteValue, minus: &RouteValue) -> Verdict {
    let note = format!(
        "int K+ = {}; int K- = {}",
        route_note(plus),
        route_note(minus)
    );
    if !ctx.hypothesis() {
        return Verdict::new(
            Status::NotApplicable,
            f64::NAN,
            f64::NAN,
            format!("{note}; hypothesis fails"),
        );
    }
    match (plus, minus, ctx.c_total) {
        (
            RouteValue::Finite {
                value: p,
                error: ep,
            },
            RouteValue::Finite {
                value: m,
                error: em,
            },
            TotalCurvature::Finite {
                value: c,
                error: ec,
            },
        ) => {
            let diff = (c - (p - m)).abs();
            let bound = comparison_slack(ep + em + ec);
            let status = if diff <= bound {
                Status::Pass
            } else {
                Status::Fail
            };
            Verdict::new(status, diff, bound, note)
        }
        (
            RouteValue::Divergent(Divergence::PositiveInfinity),
            RouteValue::Finite { .. },
            TotalCurvature::PlusInfinity,
        ) => Verdict::new(Status::Pass, f64::NAN, f64::NAN, note),
        (_, RouteValue::Divergent(_), _) => Verdict::new(
            Status::Fail,
            f64::NAN,
            f64::NAN,
            format!("{note}; int K- must be finite"),
        ),
        _ => Verdict::new(Status::Fail, f64::NAN, f64::NAN, note),
    }
}

fn corollary(ctx: &Context) -> Verdict {
    let p = ctx.probe;
    let note = format!("max sampled K = {}, chi = {}", fmt6(p.max_k), ctx.chi);
    if !(p.nonnegative_everywhere() && p.positive_somewhere) {
        let why = if !p.nonnegative_everywhere() {
            "K < 0 somewhere"
        } else {
            "K vanishes at every sample"
        };
        return Verdict::new(
            Status::NotApplicable,
            f64::NAN,
            f64::NAN,
            format!("{note}; {why}"),
        );
    }
    let status = if ctx.chi >= 1 {
        Status::Pass
    } else {
        Status::Fail
    };
    Verdict::new(
        status,
        ctx.chi as f64,
        1.0,
        format!("{note}; K >= 0 everywhere and K > 0 somewhere"),
    )
}

/// Status of a check whose integrals could not be evaluated: a failure
/// under the hypothesis, otherwise outside the certified scope.
fn unavailable(ctx: &Context) -> Status {
    if ctx.hypothesis() {
        Status::Fail
    } else {
        Status::NotApplicable
    }
}

pub(super) fn all_verdicts(
    ctx: &Context,
    notes: &mut Vec<String>,
) -> Result<BTreeMap<String, Verdict>, SweepError> {
    let mut v = BTreeMap::new();
    v.insert("gauss-bonnet-truncated".to_string(), gauss_bonnet(ctx));
    v.insert("lambda-mu-prime".to_string(), lambda_mu_prime(ctx)?);
    v.insert("lambda-monotone".to_string(), lambda_monotone(ctx));
    v.insert("L-nonneg".to_string(), l_nonneg(ctx));
    v.insert("theorem".to_string(), theorem(ctx));

    let (direct, parts) = rayon::join(
        || total_curvature_direct(ctx.model, ctx.tol),
        || curvature_split_integrals(ctx.model, ctx.tol),
    );
    match direct {
        Ok(d) => {
            v.insert("total-curvature-routes".to_string(), routes(ctx, &d));
        }
        Err(e) => {
            notes.push(format!("direct total curvature failed: {e}"));
            v.insert(
                "total-curvature-routes".to_string(),
                Verdict::new(
                    unavailable(ctx),
                    f64::NAN,
                    f64::NAN,
                    format!("direct route failed: {e}"),
                ),
            );
        }
    }
    match parts {
        Ok((plus, minus)) => {
            v.insert("curvature-split".to_string(), split(ctx, &plus, &minus));
        }
        Err(e) => {
            notes.push(format!("curvature split failed: {e}"));
            v.insert(
                "curvature-split".to_string(),
                Verdict::new(
                    unavailable(ctx),
                    f64::NAN,
                    f64::NAN,
                    format!("split integrals failed: {e}"),
                ),
            );
        }
    }
    v.insert("corollary".to_string(), corollary(ctx));
    Ok(v)
}
