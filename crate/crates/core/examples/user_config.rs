//! Load surfaces from TOML files and verify them. Without arguments, runs
//! every file in `examples/configs`.
//!
//! cargo run --example user_config -- path/to/surface.toml

use std::path::PathBuf;

use cvlab::config::load_model;
use cvlab::quadrature::Tolerance;
use cvlab::report::render_verdict_table;
use cvlab::sweep::{run_sweep, spaced_schedule};

fn main() {
    let mut paths: Vec<PathBuf> = std::env::args().skip(1).map(PathBuf::from).collect();
    if paths.is_empty() {
        let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/configs");
        paths = std::fs::read_dir(dir)
            .expect("configs directory")
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "toml"))
            .collect();
        paths.sort();
    }
    let schedule = spaced_schedule(1.0, 1024.0, 11).unwrap();
    for path in paths {
        println!("== {}", path.display());
        match load_model(&path) {
            Ok(model) => match run_sweep(&model, &schedule, &Tolerance::default()) {
                Ok(report) => print!("{}", render_verdict_table(&report)),
                Err(e) => println!("sweep failed: {e}"),
            },
            Err(e) => println!("invalid config: {e}"),
        }
    }
}
