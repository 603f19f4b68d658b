//! Numerical toolkit for complete surfaces with cylindrical ends.
//!
//! A surface is a compact core plus finitely many ends, each carrying a
//! metric `dt^2 + G(t, theta) dtheta^2` with `G` written in a small
//! expression language. Cutting every end at height `h` leaves a compact
//! truncation `Sigma_h`; the crate computes the length `mu(h)` and total
//! geodesic curvature `lambda(h)` of its boundary and its total curvature
//! `c(Sigma_h)`, estimates `L = lim lambda(h)`, and checks the truncated
//! Gauss-Bonnet identity, `lambda = mu'`, `L >= 0` and
//! `2 pi chi >= c(Sigma)`.
//!
//! ```
//! use cvlab::{quadrature::Tolerance, sweep, zoo};
//!
//! let entry = zoo::zoo_entry("polar-plane").unwrap();
//! let tol = Tolerance::default();
//! let lambda = sweep::lambda_total(&entry.model, 3.0, &tol).unwrap();
//! assert!((lambda - std::f64::consts::TAU).abs() < 1e-12);
//! ```

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod curvature;
pub mod dsl;
pub mod error;
pub mod model;
pub mod quadrature;
pub mod report;
pub mod sweep;
pub mod zoo;
