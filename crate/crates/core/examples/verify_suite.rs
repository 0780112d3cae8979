//! Runs the default verification suite, prints the worst residual per
//! (identity, kernel, n) cell, and writes the full report as JSON.
//!
//! ```text
//! cargo run --release --example verify_suite -- [report.json]
//! ```

use elliptic_cauchy::verify::{all_passed, run_suite, summarize, SuiteConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SuiteConfig::default();
    let reports = run_suite(&cfg)?;

    println!("{:<14} {:<15} {:>3} {:>7} {:>11} {:>7}", "identity", "kernel", "n", "passed", "worst_rel", "tol");
    for row in summarize(&reports) {
        println!(
            "{:<14} {:<15} {:>3} {:>7} {:>11.2e} {:>7.0e}",
            row.identity_name,
            row.kernel,
            row.n,
            format!("{}/{}", row.passed, row.trials),
            row.worst_rel_residual,
            row.tolerance
        );
    }
    for r in reports.iter().filter(|r| !r.passed) {
        println!("FAILED {} {} n={} seed={}", r.identity_name, r.kernel, r.n, r.seed);
        if let Some(dump) = &r.instance {
            println!("  {dump}");
        }
    }

    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, serde_json::to_string_pretty(&reports)?)?;
        println!("wrote {} reports to {path}", reports.len());
    }
    println!("all passed: {}", all_passed(&reports));
    Ok(())
}
