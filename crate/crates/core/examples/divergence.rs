//! An end with G = e^(t^2) flares out so fast that lambda grows without
//! bound: the total curvature does not converge, and the sweep says so
//! instead of failing.

use cvlab::dsl::parse_metric;
use cvlab::model::{CoreDescriptor, EndChart, SurfaceModel, Topology};
use cvlab::quadrature::Tolerance;
use cvlab::report::render_verdict_table;
use cvlab::sweep::{run_sweep, spaced_schedule, total_curvature_direct};

fn main() {
    let end = EndChart::from_expr(parse_metric("exp(t^2)").unwrap(), 0.0);
    let model = SurfaceModel::new(
        "gaussian-end",
        Topology::new(0, 1),
        vec![end],
        CoreDescriptor::analytic(std::f64::consts::TAU, vec![0.0]),
    );
    let tol = Tolerance::default();
    println!(
        "direct integral: {:?}",
        total_curvature_direct(&model, &tol).unwrap()
    );
    let schedule = spaced_schedule(1.0, 1024.0, 11).unwrap();
    let report = run_sweep(&model, &schedule, &tol).unwrap();
    print!("{}", render_verdict_table(&report));
}
