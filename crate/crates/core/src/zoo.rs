//! Built-in surfaces with closed forms for every quantity a sweep computes.
//!
//! | name            | chi | ends | hypothesis | total curvature |
//! |-----------------|-----|------|------------|-----------------|
//! | `flat-cylinder` | 0   | 2    | yes        | 0               |
//! | `polar-plane`   | 1   | 1    | yes        | 0               |
//! | `paraboloid`    | 1   | 1    | yes        | 2 pi            |
//! | `capped-cone`   | 1   | 1    | yes        | 2 pi (1 - s)    |
//! | `catenoid`      | 0   | 2    | no         | -4 pi           |
//! | `cusp-cap`      | 1   | 1    | no         | 2 pi            |
//!
//! "Hypothesis" means the Gaussian curvature is nonnegative outside a compact
//! set. The catenoid and the cusp are negatively curved on their ends and
//! serve as controls.

use std::f64::consts::TAU;
use std::sync::Arc;

use crate::dsl::{parse_metric, Jet2};
use crate::error::{DomainError, ModelError};
use crate::model::{CoreDescriptor, EndChart, MetricField, SurfaceModel, Topology};

pub const ZOO_NAMES: [&str; 6] = [
    "flat-cylinder",
    "polar-plane",
    "paraboloid",
    "capped-cone",
    "catenoid",
    "cusp-cap",
];

/// Slant used when the capped cone is requested by name.
pub const DEFAULT_SLANT: f64 = 0.5;

/// Length of the smooth cap in front of the exact cone.
pub const CONE_CAP_LENGTH: f64 = 10.0;

/// Meridian arc length of `z = r^2 / 2` from the vertex.
pub fn paraboloid_arc_length(r: f64) -> f64 {
    0.5 * (r * (1.0 + r * r).sqrt() + r.asinh())
}

/// Parallel radius of the paraboloid at arc length `t`: Newton on the arc
/// length, started from the upper bound `min(t, sqrt(2t))` where it
/// converges monotonically.
fn paraboloid_radius_newton(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let mut r = t.min((2.0 * t).sqrt());
    for _ in 0..64 {
        let step = (paraboloid_arc_length(r) - t) / (1.0 + r * r).sqrt();
        r -= step;
        if step.abs() <= 4.0 * f64::EPSILON * r {
            break;
        }
    }
    r
}

/// `z = r^2/2` reparametrized by meridian arc length: `sqrt(G)(t) = r(t)`.
#[derive(Debug, Clone, Copy)]
pub struct ParaboloidField;

impl MetricField for ParaboloidField {
    fn g_jet(&self, t: f64, theta: f64) -> Result<Jet2, DomainError> {
        let f = self.sqrt_g_jet(t, theta)?;
        Ok(f * f)
    }

    fn sqrt_g_jet(&self, t: f64, _theta: f64) -> Result<Jet2, DomainError> {
        let r = paraboloid_radius_newton(t);
        let w = 1.0 + r * r;
        // r' = cos(slope angle), r'' = -r / (1 + r^2)^2
        Jet2::new(r, 1.0 / w.sqrt(), -r / (w * w)).finite("paraboloid profile")
    }

    fn describe(&self) -> String {
        "paraboloid z = r^2/2 by arc length".into()
    }
}

/// Smootherstep `6u^5 - 15u^4 + 10u^3` and its antiderivative and first two
/// derivatives on `[0, 1]`.
fn smootherstep(u: f64) -> (f64, f64, f64, f64) {
    let p = u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
    let integral = u * u * u * u * (2.5 + u * (-3.0 + u));
    let dp = 30.0 * u * u * (1.0 - u) * (1.0 - u);
    let d2p = 60.0 * u * (1.0 - u) * (1.0 - 2.0 * u);
    (p, integral, dp, d2p)
}

/// Profile `(f, f', f'')` of a cone of slant `s` whose tip is replaced by a
/// smooth convex cap of length `cap`: `f' = s + (1 - s)(1 - P(t/cap))` with
/// `P` the smootherstep, so `f` is exactly `s t + (1 - s) cap / 2` beyond
/// the cap.
fn capped_cone_profile(slant: f64, cap: f64, t: f64) -> (f64, f64, f64) {
    if t >= cap {
        return (slant * t + 0.5 * (1.0 - slant) * cap, slant, 0.0);
    }
    let u = t / cap;
    let (p, ip, dp, _) = smootherstep(u);
    let f = slant * t + (1.0 - slant) * cap * (u - ip);
    let df = slant + (1.0 - slant) * (1.0 - p);
    let d2f = -(1.0 - slant) * dp / cap;
    (f, df, d2f)
}

#[derive(Debug, Clone, Copy)]
pub struct CappedConeField {
    pub slant: f64,
    pub cap: f64,
}

impl MetricField for CappedConeField {
    fn g_jet(&self, t: f64, theta: f64) -> Result<Jet2, DomainError> {
        let f = self.sqrt_g_jet(t, theta)?;
        Ok(f * f)
    }

    fn sqrt_g_jet(&self, t: f64, _theta: f64) -> Result<Jet2, DomainError> {
        let (f, df, d2f) = capped_cone_profile(self.slant, self.cap, t);
        Jet2::new(f, df, d2f).finite("capped cone profile")
    }

    fn describe(&self) -> String {
        format!(
            "cone of slant {} with smooth cap of length {}",
            self.slant, self.cap
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZooKind {
    FlatCylinder,
    PolarPlane,
    Paraboloid,
    CappedCone { slant: f64 },
    Catenoid,
    CuspCap,
}

/// Closed forms for one zoo surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Oracle {
    pub kind: ZooKind,
    pub chi: i64,
    pub hypothesis_holds: bool,
}

/// Paraboloid radius by bisection on the arc length; independent of the
/// Newton iteration the chart uses.
fn paraboloid_radius_bisect(t: f64) -> f64 {
    let (mut lo, mut hi) = (
        0.0f64,
        t.max(0.0).min((2.0 * t.max(0.0)).sqrt()).max(1e-300),
    );
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if paraboloid_arc_length(mid) < t {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

impl Oracle {
    pub fn gauss_k(&self, t: f64, _theta: f64) -> f64 {
        match self.kind {
            ZooKind::FlatCylinder | ZooKind::PolarPlane => 0.0,
            ZooKind::Paraboloid => {
                let r = paraboloid_radius_bisect(t);
                1.0 / (1.0 + r * r).powi(2)
            }
            ZooKind::CappedCone { slant } => {
                let (f, _, d2f) = capped_cone_profile(slant, CONE_CAP_LENGTH, t);
                -d2f / f
            }
            ZooKind::Catenoid => -1.0 / (1.0 + t * t).powi(2),
            ZooKind::CuspCap => -1.0,
        }
    }

    /// Geodesic curvature density of one boundary circle at height `h`.
    pub fn kappa_g(&self, h: f64) -> f64 {
        match self.kind {
            ZooKind::FlatCylinder => 0.0,
            ZooKind::PolarPlane => 1.0,
            ZooKind::Paraboloid => {
                let r = paraboloid_radius_bisect(h);
                1.0 / (1.0 + r * r).sqrt()
            }
            ZooKind::CappedCone { slant } => capped_cone_profile(slant, CONE_CAP_LENGTH, h).1,
            ZooKind::Catenoid => h / (1.0 + h * h).sqrt(),
            ZooKind::CuspCap => -(-h).exp(),
        }
    }

    pub fn mu(&self, h: f64) -> f64 {
        match self.kind {
            ZooKind::FlatCylinder => 2.0 * TAU,
            ZooKind::PolarPlane => TAU * h,
            ZooKind::Paraboloid => TAU * paraboloid_radius_bisect(h),
            ZooKind::CappedCone { slant } => TAU * capped_cone_profile(slant, CONE_CAP_LENGTH, h).0,
            ZooKind::Catenoid => 2.0 * TAU * (1.0 + h * h).sqrt(),
            ZooKind::CuspCap => TAU * (-h).exp(),
        }
    }

    pub fn lambda(&self, h: f64) -> f64 {
        let ends = match self.kind {
            ZooKind::FlatCylinder | ZooKind::Catenoid => 2.0,
            _ => 1.0,
        };
        ends * TAU * self.kappa_g(h)
    }

    /// Total curvature of the truncation at height `h`, from
    /// `2 pi chi = c(h) + lambda(h)`.
    pub fn c_trunc(&self, h: f64) -> f64 {
        match self.kind {
            ZooKind::FlatCylinder | ZooKind::PolarPlane => 0.0,
            ZooKind::Paraboloid => {
                let r = paraboloid_radius_bisect(h);
                TAU * (1.0 - 1.0 / (1.0 + r * r).sqrt())
            }
            ZooKind::CappedCone { slant } => {
                TAU * (1.0 - capped_cone_profile(slant, CONE_CAP_LENGTH, h).1)
            }
            ZooKind::Catenoid => -2.0 * TAU * h / (1.0 + h * h).sqrt(),
            ZooKind::CuspCap => TAU * (1.0 + (-h).exp()),
        }
    }

    /// Limit of `lambda(h)`.
    pub fn limit(&self) -> f64 {
        match self.kind {
            ZooKind::FlatCylinder | ZooKind::Paraboloid | ZooKind::CuspCap => 0.0,
            ZooKind::PolarPlane => TAU,
            ZooKind::CappedCone { slant } => TAU * slant,
            ZooKind::Catenoid => 2.0 * TAU,
        }
    }

    pub fn c_total(&self) -> f64 {
        TAU * self.chi as f64 - self.limit()
    }
}

#[derive(Debug, Clone)]
pub struct ZooEntry {
    pub model: SurfaceModel,
    pub oracle: Oracle,
    pub provenance_note: &'static str,
}

fn dsl_chart(src: &str, t_min: f64) -> EndChart {
    let expr = parse_metric(src).unwrap_or_else(|e| panic!("built-in metric `{src}`: {e}"));
    EndChart::from_expr(expr, t_min)
}

pub fn make_flat_cylinder() -> ZooEntry {
    let model = SurfaceModel::new(
        "flat-cylinder",
        Topology::new(0, 2),
        vec![dsl_chart("1", 0.0), dsl_chart("1", 0.0)],
        CoreDescriptor::analytic(0.0, vec![0.0, 0.0]),
    );
    ZooEntry {
        model,
        oracle: Oracle {
            kind: ZooKind::FlatCylinder,
            chi: 0,
            hypothesis_holds: true,
        },
        provenance_note:
            "S^1 x R with the product metric, split at t = 0 into two ends with G = 1. \
            The core is the circle t = 0 (zero area, zero curvature). Every boundary circle is a \
            geodesic, so lambda = 0, mu = 2 * 2pi, c = 0, and chi = 2 - 2 = 0.",
    }
}

pub fn make_polar_plane() -> ZooEntry {
    let model = SurfaceModel::new(
        "polar-plane",
        Topology::new(0, 1),
        vec![dsl_chart("t^2", 0.0)],
        CoreDescriptor::PolarCap,
    );
    ZooEntry {
        model,
        oracle: Oracle {
            kind: ZooKind::PolarPlane,
            chi: 1,
            hypothesis_holds: true,
        },
        provenance_note: "Euclidean plane in polar coordinates, G = t^2. sqrt(G) = t so K = 0, \
            kappa = 1, mu(h) = 2 pi h, lambda = 2 pi, c = 0, and the limit of lambda is 2 pi.",
    }
}

pub fn make_paraboloid() -> ZooEntry {
    let mut model = SurfaceModel::new(
        "paraboloid",
        Topology::new(0, 1),
        vec![EndChart::new(Arc::new(ParaboloidField), 0.0)],
        CoreDescriptor::PolarCap,
    );
    model.hypothesis_hint = Some(0.0);
    ZooEntry {
        model,
        oracle: Oracle {
            kind: ZooKind::Paraboloid,
            chi: 1,
            hypothesis_holds: true,
        },
        provenance_note: "Surface of revolution z = r^2/2 with meridian arc length t = \
            (r sqrt(1 + r^2) + asinh r)/2. sqrt(G) = r(t), r' = cos(phi) = (1 + r^2)^(-1/2), \
            K = (1 + r^2)^-2 > 0. lambda(h) = 2pi cos(phi), c(h) = 2pi (1 - cos(phi)) (area of the \
            Gauss image, a polar cap of the sphere), so the limit of lambda is 0 and the total \
            curvature is 2pi: the Gauss image is an open hemisphere.",
    }
}

pub fn make_capped_cone(slant: f64) -> Result<ZooEntry, ModelError> {
    if !(slant > 0.0 && slant < 1.0) {
        return Err(ModelError::InvalidParameter(format!(
            "cone slant must lie in (0, 1), got {slant}"
        )));
    }
    let field = CappedConeField {
        slant,
        cap: CONE_CAP_LENGTH,
    };
    let mut model = SurfaceModel::new(
        "capped-cone",
        Topology::new(0, 1),
        vec![EndChart::new(Arc::new(field), 0.0)],
        CoreDescriptor::PolarCap,
    );
    model.hypothesis_hint = Some(0.0);
    Ok(ZooEntry {
        model,
        oracle: Oracle {
            kind: ZooKind::CappedCone { slant },
            chi: 1,
            hypothesis_holds: true,
        },
        provenance_note: "Cone of slant s = sin(half-angle), G = (s t + b)^2 with b = (1 - s) L/2 \
            beyond the cap length L = 10; inside the cap sqrt(G)' falls from 1 to s along a \
            smootherstep, so K >= 0 everywhere and K > 0 inside the cap. lambda = 2pi s beyond \
            the cap, hence total curvature 2pi (1 - s), the cone-angle deficit.",
    })
}

pub fn make_catenoid() -> ZooEntry {
    let model = SurfaceModel::new(
        "catenoid",
        Topology::new(0, 2),
        vec![dsl_chart("1 + t^2", 0.0), dsl_chart("1 + t^2", 0.0)],
        CoreDescriptor::analytic(0.0, vec![0.0, 0.0]),
    );
    ZooEntry {
        model,
        oracle: Oracle {
            kind: ZooKind::Catenoid,
            chi: 0,
            hypothesis_holds: false,
        },
        provenance_note:
            "Catenoid r = cosh(z); arc length from the waist is sinh(z), so G = 1 + t^2 \
            on each half, glued along the waist circle (the core). K = -(1 + t^2)^-2 < 0, \
            lambda(h) = 4pi h / sqrt(1 + h^2) -> 4pi, total curvature -4pi.",
    }
}

pub fn make_hyperbolic_cusp_cap() -> ZooEntry {
    let model = SurfaceModel::new(
        "cusp-cap",
        Topology::new(0, 1),
        vec![dsl_chart("exp(-2*t)", 0.0)],
        CoreDescriptor::analytic(2.0 * TAU, vec![0.0]),
    );
    ZooEntry {
        model,
        oracle: Oracle {
            kind: ZooKind::CuspCap,
            chi: 1,
            hypothesis_holds: false,
        },
        provenance_note:
            "Hyperbolic cusp G = e^(-2t) (K = -1) closed by a disc whose boundary has \
            geodesic curvature -1 seen from the cusp side; Gauss-Bonnet on the disc forces its \
            curvature to be 2pi - (-2pi) = 4pi. The end contributes -2pi, so the total is 2pi. \
            lambda(h) = -2pi e^-h increases, mu(h) = 2pi e^-h stays positive.",
    }
}

pub fn zoo_entry(name: &str) -> Result<ZooEntry, ModelError> {
    match name {
        "flat-cylinder" => Ok(make_flat_cylinder()),
        "polar-plane" => Ok(make_polar_plane()),
        "paraboloid" => Ok(make_paraboloid()),
        "capped-cone" => make_capped_cone(DEFAULT_SLANT),
        "catenoid" => Ok(make_catenoid()),
        "cusp-cap" => Ok(make_hyperbolic_cusp_cap()),
        other => Err(ModelError::UnknownSurface(other.to_string())),
    }
}

pub fn all_entries() -> Vec<ZooEntry> {
    ZOO_NAMES
        .iter()
        .map(|n| zoo_entry(n).expect("zoo names are valid"))
        .collect()
}
