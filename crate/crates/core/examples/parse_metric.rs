//! Parse metric expressions, print them back in canonical form and evaluate
//! `G` with its first two `t`-derivatives.
//!
//! cargo run --example parse_metric -- "cosh(t)^2 * (1.5 + sin(theta))"

use cvlab::dsl::parse_metric;

fn main() {
    let sources: Vec<String> = std::env::args().skip(1).collect();
    let sources = if sources.is_empty() {
        vec![
            "exp(-2*t)".to_string(),
            "1 + t^2".to_string(),
            "((2 + tanh(t - 5)) * (1.5 + sin(theta)))^2".to_string(),
            "t^".to_string(),
        ]
    } else {
        sources
    };
    for src in &sources {
        match parse_metric(src) {
            Ok(expr) => {
                println!("{src}\n  canonical: {}", expr.serialize());
                for t in [0.0, 1.0, 5.0] {
                    match expr.eval_jet(t, 0.5) {
                        Ok(j) => println!(
                            "  t = {t}: G = {:.6}, G_t = {:.6}, G_tt = {:.6}",
                            j.value, j.d1, j.d2
                        ),
                        Err(e) => println!("  t = {t}: {e}"),
                    }
                }
            }
            Err(e) => println!("{src}\n  parse error: {e}"),
        }
    }
}
