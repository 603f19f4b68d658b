//! Every built-in surface: its topology, closed forms, and the computed
//! truncation functionals beside them.

use cvlab::quadrature::Tolerance;
use cvlab::sweep::{lambda_total, mu, truncated_total_curvature};
use cvlab::zoo::all_entries;

fn main() {
    let tol = Tolerance::default();
    for entry in all_entries() {
        let m = &entry.model;
        let o = entry.oracle;
        println!(
            "{} (chi = {}, hypothesis holds: {}, c_total = {:.6})",
            m.name,
            o.chi,
            o.hypothesis_holds,
            o.c_total()
        );
        println!("  {}", entry.provenance_note);
        for h in [1.0, 4.0, 16.0] {
            let got = (
                mu(m, h, &tol).unwrap(),
                lambda_total(m, h, &tol).unwrap(),
                truncated_total_curvature(m, h, &tol).unwrap(),
            );
            println!(
                "  h = {h:>4}: mu {:>12.6} ({:>12.6})  lambda {:>10.6} ({:>10.6})  c {:>10.6} ({:>10.6})",
                got.0,
                o.mu(h),
                got.1,
                o.lambda(h),
                got.2,
                o.c_trunc(h)
            );
        }
    }
}
