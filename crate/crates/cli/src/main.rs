//! `polyquant`: exact checks, lattice classification, dimension counting, and
//! the quantization-vs-reduction experiment over JSON model files.
//!
//! Exit codes: 0 when every verdict passes, 1 on a mathematical verdict
//! failure, 2 on unreadable or malformed input.

use clap::{Args, Parser, Subcommand};
use polyquant_core::commands::{cmd_check, cmd_classify, cmd_qr, cmd_quantize, CommandContext};
use polyquant_core::report::RunReport;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "polyquant",
    about = "Vector-valued symplectic models: checks, classification, dimension counts, reduction experiments",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Model file (JSON).
    file: PathBuf,
    /// Emit the result table as CSV instead of the aligned text table.
    #[arg(long)]
    csv: bool,
    /// Write the full report as JSON to this path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RangeArgs {
    /// Level range, inclusive: "1..10", "4", or "2..=8".
    #[arg(long, default_value = "1..10", value_parser = parse_range)]
    k: KRange,
}

#[derive(Clone, Debug)]
struct KRange(Vec<i64>);

fn parse_range(s: &str) -> Result<KRange, String> {
    let s = s.trim();
    let parse_i64 = |t: &str| -> Result<i64, String> {
        t.trim()
            .parse::<i64>()
            .map_err(|_| format!("invalid level {t:?}"))
    };
    let (lo, hi) = if let Some((a, b)) = s.split_once("..=") {
        (parse_i64(a)?, parse_i64(b)?)
    } else if let Some((a, b)) = s.split_once("..") {
        (parse_i64(a)?, parse_i64(b)?)
    } else {
        let v = parse_i64(s)?;
        (v, v)
    };
    if lo > hi {
        return Err(format!("empty level range {s:?}"));
    }
    if lo < 1 {
        return Err("levels must be positive".into());
    }
    Ok(KRange((lo..=hi).collect()))
}

#[derive(Subcommand)]
enum Command {
    /// Verify the structural invariants of any model file.
    Check(CommonArgs),
    /// Period span, quantizability, principal lattice, and the weight-basis
    /// classification for a lattice file.
    Classify(CommonArgs),
    /// Adapted volume, index table, and growth verdict for a presentation.
    Quantize {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Invariant counts against the reduced model for a toric configuration.
    Qr {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        range: RangeArgs,
    },
}

fn finish(report: RunReport, args: &CommonArgs) -> ExitCode {
    if args.csv {
        print!("{}", report.render_csv());
        for v in &report.verdicts {
            let mark = if v.pass { "PASS" } else { "FAIL" };
            eprintln!("{mark} {}{}", v.label, if v.detail.is_empty() {
                String::new()
            } else {
                format!(": {}", v.detail)
            });
        }
    } else {
        print!("{}", report.render_text());
    }
    if let Some(path) = &args.out {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("error: failed to write report: {e}");
            return ExitCode::from(2);
        }
    }
    eprintln!("completed in {} ms", report.timing_ms);
    ExitCode::from(u8::try_from(report.exit_code()).unwrap_or(1))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = std::env::var("POLYQUANT_SEED")
        .ok()
        .and_then(|s| s.parse::<u64>().ok())
        .unwrap_or(CommandContext::default().seed);
    let ctx = CommandContext { seed };
    let result = match &cli.command {
        Command::Check(common) => cmd_check(&common.file, &ctx).map(|r| (r, common)),
        Command::Classify(common) => cmd_classify(&common.file, &ctx).map(|r| (r, common)),
        Command::Quantize { common, range } => {
            cmd_quantize(&common.file, &range.k.0, &ctx).map(|r| (r, common))
        }
        Command::Qr { common, range } => {
            cmd_qr(&common.file, &range.k.0, &ctx).map(|r| (r, common))
        }
    };
    match result {
        Ok((report, common)) => finish(report, common),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
