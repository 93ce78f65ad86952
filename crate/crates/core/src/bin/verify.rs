use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::Parser;

use tckit::suites::{default_surfaces, run_suite, IntRange, Suite, SuiteOptions};
use tckit::surface::SurfaceKind;

/// Runs the verification suites and reports one line per check.
#[derive(Parser, Debug)]
#[command(name = "verify", version)]
struct Args {
    /// cocycles | so3-homology | char-classes | surface-ko | all
    suite: Suite,

    /// Index range of the standard cocycles, `lo..hi` inclusive.
    #[arg(long, default_value = "-5..5", allow_hyphen_values = true)]
    k_range: IntRange,

    /// Power range, `lo..hi` inclusive.
    #[arg(long, default_value = "-5..5", allow_hyphen_values = true)]
    n_range: IntRange,

    /// `sphere`, `genus:<g>` or `rp:<n>`; repeatable. Defaults to a fixed list.
    #[arg(long)]
    surface: Vec<SurfaceKind>,

    /// Truncation degree of the characteristic-class algebras.
    #[arg(long, default_value_t = 6)]
    degree_cap: u32,

    /// Write the structured JSON report here.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let opts = SuiteOptions {
        k_range: args.k_range,
        n_range: args.n_range,
        surfaces: if args.surface.is_empty() {
            default_surfaces()
        } else {
            args.surface.clone()
        },
        degree_cap: args.degree_cap,
    };
    if let Err(e) = opts.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }

    let started = Instant::now();
    let report = run_suite(args.suite, &opts);
    print!("{}", report.to_text());
    eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());

    if let Some(path) = &args.out {
        let written = std::fs::write(path, report.to_json())
            .with_context(|| format!("writing report to {}", path.display()));
        if let Err(e) = written {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
