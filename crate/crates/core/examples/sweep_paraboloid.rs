//! Full sweep of the paraboloid: samples, the limit of lambda, and the
//! verdict table.

use cvlab::quadrature::Tolerance;
use cvlab::report::{render_csv, render_verdict_table};
use cvlab::sweep::{default_schedule, run_sweep};
use cvlab::zoo::make_paraboloid;

fn main() {
    let model = make_paraboloid().model;
    let schedule = default_schedule(&model, 1024.0);
    let report = run_sweep(&model, &schedule, &Tolerance::default()).expect("paraboloid sweeps");
    print!("{}", render_csv(&report));
    println!();
    print!("{}", render_verdict_table(&report));
}
