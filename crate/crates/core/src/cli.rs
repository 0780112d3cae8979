//! Command-line front end over [`crate::verify`].
//!
//! ```text
//! elliptic-cauchy verify-all [--n 1..=8] [--trials 10] [--seed 42] [--tau 0.3+0.7i]
//! elliptic-cauchy verify gauss --n 6 --seed 7 --format json --out report.json
//! elliptic-cauchy degeneration | bench | list
//! ```
//!
//! Exit codes: 0 when every report passed, 1 on any failed check, 2 on usage errors.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::cauchy::{Kernel, KernelTag};
use crate::verify::{
    check_degeneration, check_determinant, check_factorization, check_gauss, check_inverse,
    check_monodromy, check_product_identity, check_transposed_identity, random_instance,
    run_selected, summarize, Identity, Report, Selection, SuiteConfig,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelChoice {
    Elliptic,
    Trig,
    Rational,
    All,
}

impl KernelChoice {
    fn tags(self) -> Option<Vec<KernelTag>> {
        match self {
            KernelChoice::Elliptic => Some(vec![KernelTag::Elliptic]),
            KernelChoice::Trig => Some(vec![KernelTag::Trigonometric]),
            KernelChoice::Rational => Some(vec![KernelTag::Rational]),
            KernelChoice::All => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Run every identity check over the instance grid.
    VerifyAll,
    /// Run a single identity check.
    Verify {
        #[arg(value_parser = parse_checkable)]
        identity: Identity,
    },
    /// Run the large-lambda and small-argument limit checks.
    Degeneration,
    /// Time sigma evaluation and each check at N = 4, 8, 16, 32.
    Bench,
    /// Print the identity names and what each one checks.
    List,
}

/// Parsed command line.
#[derive(Debug, Clone, PartialEq, Parser)]
#[command(name = "elliptic-cauchy", version, about = "Numerical checks of elliptic Cauchy matrix identities")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Matrix sizes: comma list of values or ranges `a..b`, `a..=b`.
    #[arg(long, global = true, value_parser = parse_n_list, default_value = "1..=8")]
    pub n: NList,
    #[arg(long, global = true, default_value_t = 10)]
    pub trials: usize,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Overrides the per-identity tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Period ratio as `a+bi`.
    #[arg(long, global = true, value_parser = parse_complex, default_value = "0.3+0.7i")]
    pub tau: Complex64,
    #[arg(long, global = true, value_enum, default_value_t = KernelChoice::All)]
    pub kernel: KernelChoice,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Record per-check wall time in `elapsed_ms`.
    #[arg(long, global = true)]
    pub timing: bool,
}

/// Sizes list; a newtype so clap treats it as one value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NList(pub Vec<usize>);

/// Bad command line, carrying the rendered message. Help and version
/// requests also land here with `is_help` set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError {
    pub message: String,
    pub is_help: bool,
}

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for UsageError {}

fn parse_checkable(s: &str) -> Result<Identity, String> {
    let id: Identity = s.parse()?;
    if Identity::CHECKABLE.contains(&id) {
        Ok(id)
    } else {
        Err(format!("'{s}' has its own subcommand"))
    }
}

/// `"4"`, `"1,3,5"`, `"1..4"` (exclusive), `"2..=6"`, or mixes like `"1..=3,8"`.
pub fn parse_n_list(s: &str) -> Result<NList, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim) {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad size '{t}' in '{s}'"))
        };
        if let Some((a, b)) = part.split_once("..=") {
            out.extend(num(a)?..=num(b)?);
        } else if let Some((a, b)) = part.split_once("..") {
            out.extend(num(a)?..num(b)?);
        } else {
            out.push(num(part)?);
        }
    }
    if out.is_empty() || out.contains(&0) {
        return Err(format!("sizes must be nonempty and positive: '{s}'"));
    }
    Ok(NList(out))
}

/// Complex literal `a+bi`, `a-bi`, `a`, `bi` or `i`; no spaces.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let bad = || format!("malformed complex literal '{s}' (expected a+bi)");
    if s.is_empty() || s.contains(char::is_whitespace) {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not the leading one or part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        t => t,
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = im.parse().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

/// Parses `argv` without the program name.
pub fn parse_args<I, S>(argv: I) -> Result<CliConfig, UsageError>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = std::iter::once(std::ffi::OsString::from("elliptic-cauchy"))
        .chain(argv.into_iter().map(Into::into));
    CliConfig::try_parse_from(args).map_err(|e| {
        use clap::error::ErrorKind;
        UsageError {
            message: e.render().to_string(),
            is_help: matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion),
        }
    })
}

impl CliConfig {
    pub fn suite_config(&self) -> SuiteConfig {
        SuiteConfig {
            n_values: self.n.0.clone(),
            trials_per_n: self.trials,
            base_seed: self.seed,
            tolerance: self.tol,
            lattice_tau: self.tau,
            record_timing: self.timing,
            ..SuiteConfig::default()
        }
    }

    fn selection(&self) -> Option<Selection> {
        let identities = match self.command {
            Command::VerifyAll => None,
            Command::Verify { identity } => Some(vec![identity]),
            Command::Degeneration => Some(vec![Identity::Degeneration]),
            Command::Bench | Command::List => return None,
        };
        // the limit checks span two kernels, so a kernel filter does not apply
        let kernels = match self.command {
            Command::Degeneration => None,
            _ => self.kernel.tags(),
        };
        Some(Selection { identities, kernels })
    }
}

/// Exit code for a list of reports.
pub fn exit_code(reports: &[Report]) -> i32 {
    if reports.iter().all(|r| r.passed) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

pub fn render_text(reports: &[Report]) -> String {
    let mut s = format!(
        "{:<14} {:<15} {:>3} {:>8} {:>12} {:>9}\n",
        "identity", "kernel", "n", "passed", "worst_rel", "tol"
    );
    for row in summarize(reports) {
        s += &format!(
            "{:<14} {:<15} {:>3} {:>8} {:>12.3e} {:>9.1e}\n",
            row.identity_name.as_str(),
            row.kernel.as_str(),
            row.n,
            format!("{}/{}", row.passed, row.trials),
            row.worst_rel_residual,
            row.tolerance,
        );
    }
    let failed: Vec<&Report> = reports.iter().filter(|r| !r.passed).collect();
    for r in &failed {
        s += &format!(
            "FAILED {} {} n={} seed={} rel={:e}\n",
            r.identity_name, r.kernel, r.n, r.seed, r.rel_residual
        );
        if let Some(dump) = &r.instance {
            s += &format!("  {dump}\n");
        }
    }
    s += &format!(
        "{} of {} checks passed\n",
        reports.len() - failed.len(),
        reports.len()
    );
    s
}

pub fn render_json(reports: &[Report]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

const CSV_COLUMNS: [&str; 9] = [
    "identity_name",
    "kernel",
    "n",
    "seed",
    "abs_residual",
    "rel_residual",
    "tolerance",
    "passed",
    "elapsed_ms",
];

pub fn render_csv(reports: &[Report]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_COLUMNS).expect("in-memory write");
    for r in reports {
        w.write_record([
            r.identity_name.to_string(),
            r.kernel.to_string(),
            r.n.to_string(),
            r.seed.to_string(),
            format!("{:e}", r.abs_residual),
            format!("{:e}", r.rel_residual),
            format!("{:e}", r.tolerance),
            r.passed.to_string(),
            format!("{:e}", r.elapsed_ms),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

pub fn render(reports: &[Report], format: Format) -> String {
    match format {
        Format::Text => render_text(reports),
        Format::Json => render_json(reports),
        Format::Csv => render_csv(reports),
    }
}

const DESCRIPTIONS: [(Identity, &str); 8] = [
    (Identity::Determinant, "det C(x, y; lambda) = sigma(lambda + X - Y)/sigma(lambda) * prod_{a<b} sigma(x_a - x_b) sigma(y_b - y_a) / prod_{a,b} sigma(x_a - y_b); rational kernel: classic 1/(x - y) determinant"),
    (Identity::Inverse, "C^{-1} in closed form with prefactor sigma(y_i - x_j + lambda + X - Y)/sigma(lambda + X - Y); rational kernel: classic Cauchy inverse"),
    (Identity::Product, "G_{lambda+Y}(x, y) G_{lambda+Z}(y, z) = G_{lambda+Z}(x, z) for sigma, sin and x kernels; rational_limit: K(x, y) K(y, z) = K(x, z)"),
    (Identity::Transposed, "H_{lambda-X}(x, y) H_{lambda-Y}(y, z) = -H_{lambda-X}(x, z), with H_lambda(x, y) = -G_{-lambda}(y, x)^T"),
    (Identity::Factorization, "G_{lambda+Y}(x, y) = g_lambda(x) g_lambda(y)^{-1}, unchanged under g -> g S; rational_limit: K(x, y) = W(x) W(y)^{-1}"),
    (Identity::Gauss, "C = U D L with unit upper U, diagonal D, unit lower L built on the lambda ladder; prod D_jj = det C"),
    (Identity::Monodromy, "sigma and sigma^(k) quasi-periodicity under both periods; Bloch multipliers exp(2 eta lambda), exp(2 eta' lambda)"),
    (Identity::Degeneration, "rational G_lambda -> K as lambda -> infinity (rate 1/lambda); sin kernel at scale eps -> rational (rate eps^2)"),
];

pub fn render_list() -> String {
    DESCRIPTIONS
        .iter()
        .map(|(id, d)| format!("{:<14} {d}\n", id.as_str()))
        .collect()
}

fn time_ms<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64() * 1e3)
}

/// Timing table for sigma evaluation and each elliptic check. No assertions.
pub fn render_bench(cfg: &SuiteConfig) -> String {
    let mut s = format!("{:<14} {:>4} {:>12} {:>12}\n", "check", "n", "ms", "rel_residual");
    let lattice = match cfg.lattice() {
        Ok(l) => l,
        Err(e) => return format!("bench: {e}\n"),
    };
    let kernel = Kernel::Elliptic(lattice.clone());
    type Check = fn(&crate::cauchy::Instance) -> crate::error::Result<Report>;
    let checks: [(&str, Check); 7] = [
        ("determinant", check_determinant),
        ("inverse", check_inverse),
        ("product", check_product_identity),
        ("transposed", check_transposed_identity),
        ("factorization", check_factorization),
        ("gauss", check_gauss),
        ("monodromy", check_monodromy),
    ];
    for n in [4usize, 8, 16, 32] {
        let inst = match random_instance(cfg, &kernel, n, cfg.base_seed, true) {
            Ok(i) => i,
            Err(e) => {
                s += &format!("{:<14} {n:>4} sampling failed: {e}\n", "-");
                continue;
            }
        };
        let points: Vec<Complex64> = inst.x().iter().chain(inst.y().iter()).copied().collect();
        let reps = 1000 / n;
        let (_, ms) = time_ms(|| {
            for _ in 0..reps {
                for &p in &points {
                    std::hint::black_box(lattice.sigma(p));
                }
            }
        });
        s += &format!(
            "{:<14} {n:>4} {:>12.4} {:>12}\n",
            "sigma",
            ms / (reps * points.len()) as f64,
            "-"
        );
        for (name, check) in checks {
            let (r, ms) = time_ms(|| check(&inst));
            let rel = match r {
                Ok(r) => format!("{:.2e}", r.rel_residual),
                Err(e) => format!("error: {e}"),
            };
            s += &format!("{name:<14} {n:>4} {ms:>12.3} {rel:>12}\n");
        }
    }
    let (_, ms) = time_ms(|| check_degeneration(cfg));
    s += &format!("{:<14} {:>4} {ms:>12.3} {:>12}\n", "degeneration", 5, "-");
    s
}

fn emit(cfg: &CliConfig, text: &str) -> io::Result<()> {
    match &cfg.out {
        Some(path) => fs::write(path, text),
        None => match io::stdout().lock().write_all(text.as_bytes()) {
            // a closed pipe (`| head`) is the reader's choice, not a failure
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
            r => r,
        },
    }
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cfg: &CliConfig) -> i32 {
    let suite = cfg.suite_config();
    let text = match cfg.command {
        Command::List => render_list(),
        Command::Bench => {
            if let Err(e) = suite.validate() {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
            render_bench(&suite)
        }
        _ => {
            let selection = cfg.selection().expect("suite command");
            let reports = match run_selected(&suite, &selection) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_USAGE;
                }
            };
            if let Err(e) = emit(cfg, &render(&reports, cfg.format)) {
                eprintln!("error: cannot write output: {e}");
                return EXIT_USAGE;
            }
            return exit_code(&reports);
        }
    };
    match emit(cfg, &text) {
        Ok(()) => EXIT_PASS,
        Err(e) => {
            eprintln!("error: cannot write output: {e}");
            EXIT_USAGE
        }
    }
}

/// Parses and runs; the whole binary.
pub fn main_with_args<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match parse_args(argv) {
        Ok(cfg) => run(&cfg),
        Err(e) if e.is_help => {
            print!("{e}");
            EXIT_PASS
        }
        Err(e) => {
            eprint!("{e}");
            EXIT_USAGE
        }
    }
}
