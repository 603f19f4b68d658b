//! The integration layer on its own: an adaptive interval integral, a
//! convergent improper integral and a divergent one with its window trace.

use cvlab::quadrature::{integrate_improper, integrate_interval, Tolerance};

fn main() {
    let tol = Tolerance::default();

    let r =
        integrate_interval(|x| Ok((x * x).sin()), 0.0, 10.0, 4, &tol).expect("finite integrand");
    println!(
        "int_0^10 sin(x^2) dx = {:.12} (error {:.1e}, {} evaluations)",
        r.value, r.error_estimate, r.evaluations
    );

    // int over t >= 0 and a full circle of e^-t is 2 pi
    let conv = integrate_improper(|t, _| Ok((-t).exp()), 0.0, &tol).expect("finite integrand");
    println!(
        "int e^-t dt dtheta = {:?} (2 pi = {:.12})",
        conv.value(),
        std::f64::consts::TAU
    );

    let div = integrate_improper(|t, _| Ok(-t), 0.0, &tol).expect("finite integrand");
    println!("int -t dt dtheta: divergence {:?}", div.divergence());
    for w in div.trace().iter().take(8) {
        println!(
            "  up to t = {:>6}: increment {:>14.6e}, partial sum {:>14.6e}",
            w.t_hi, w.increment, w.partial_sum
        );
    }
}
