//! Runs the built-in invariant suite and prints its report.
//!
//!     cargo run --release --example selftest [-- --json]

use nodalcount::selftest::run_selftest;

fn main() {
    let report = run_selftest();
    if std::env::args().any(|a| a == "--json") {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if !report.passed {
        std::process::exit(1);
    }
}
