//! The flat cylinder is the equality case with chi = 0, and the capped
//! cone shows the strict inequality: the gap 2 pi chi - c is the limit of
//! lambda, here the cone-angle deficit.

use cvlab::quadrature::Tolerance;
use cvlab::report::sig6;
use cvlab::sweep::{default_schedule, run_sweep};
use cvlab::zoo::{make_capped_cone, make_flat_cylinder};

fn main() {
    let tol = Tolerance::default();
    let mut entries = vec![make_flat_cylinder()];
    for slant in [0.25, 0.5, 0.75] {
        entries.push(make_capped_cone(slant).expect("slant in (0, 1)"));
    }
    for entry in entries {
        let m = &entry.model;
        let r = run_sweep(m, &default_schedule(m, 1024.0), &tol).expect("sweep runs");
        let theorem = r.verdict("theorem").expect("theorem verdict");
        println!(
            "{:<14} chi = {}  L = {:<8}  c_total = {:<8}  margin = {:<8} ({})  oracle c_total = {}",
            m.name,
            r.chi,
            r.l_estimate
                .value()
                .map_or_else(|| r.l_estimate.to_string(), sig6),
            r.c_total
                .value()
                .map_or_else(|| r.c_total.to_string(), sig6),
            theorem.residual.map_or_else(|| "-".into(), sig6),
            theorem.status,
            sig6(entry.oracle.c_total())
        );
    }
}
