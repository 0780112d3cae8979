//! Limits between kernels: rational `G` tends to `K` as lambda grows, and the
//! sin kernel on points scaled by eps tends to the rational kernel.

use elliptic_cauchy::cauchy::Kernel;
use elliptic_cauchy::verify::{
    check_degeneration, random_instance, rational_limit_residual, trig_scaling_residual, SuiteConfig,
};
use elliptic_cauchy::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SuiteConfig::default();
    let inst = random_instance(&cfg, &Kernel::Rational, 5, 1, false)?;
    let (x, y) = (inst.x(), inst.y());

    println!("{:>8} {:>14}", "lambda", "|G - K|/|K|");
    for lambda in [1e3, 1e4, 1e5, 1e6, 1e7] {
        let r = rational_limit_residual(x, y, Complex64::new(lambda, 0.0))?;
        println!("{lambda:>8.0e} {r:>14.3e}");
    }
    println!("\n{:>8} {:>14}", "eps", "trig vs rat");
    for eps in [1e-2, 1e-3, 1e-4, 1e-5] {
        println!("{eps:>8.0e} {:>14.3e}", trig_scaling_residual(x, y, inst.lambda(), eps)?);
    }

    let r = check_degeneration(&cfg)?;
    println!("\nsuite check passed: {}", r.passed);
    for (k, v) in &r.metrics {
        println!("  {k:<22} {v:.4e}");
    }
    Ok(())
}
