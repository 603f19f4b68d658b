//! Gaussian and geodesic curvature of a user metric along a meridian.
//!
//! cargo run --example curvature_probe -- "1 + t^2"

use cvlab::curvature::{gauss_curvature, geodesic_curvature};
use cvlab::dsl::parse_metric;
use cvlab::model::EndChart;

fn main() {
    let src = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "1 + t^2".to_string());
    let expr = match parse_metric(&src) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    };
    let end = EndChart::from_expr(expr, 0.0);
    println!("G = {src}, theta = 0");
    println!("{:>8} {:>14} {:>14}", "t", "K", "kappa");
    for t in [0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0] {
        let k =
            gauss_curvature(&end, t, 0.0).map_or_else(|e| e.to_string(), |v| format!("{v:.6e}"));
        let kappa =
            geodesic_curvature(&end, t, 0.0).map_or_else(|e| e.to_string(), |v| format!("{v:.6e}"));
        println!("{t:>8} {k:>14} {kappa:>14}");
    }
}
