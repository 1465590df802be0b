use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use charprod::constructions::{example1, theorem_a};
use charprod::verify::{
    check_golden_dir, suite_reports, to_tsv, verify_diag_cyclic, verify_diag_wreath,
    verify_product, verify_restriction, Mode, VerificationReport,
};
use charprod::EngineConfig;

#[derive(Parser)]
#[command(
    name = "charprod",
    about = "Exact verification of irreducible-character product decompositions in finite p-groups"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct ParamArgs {
    /// The prime p.
    #[arg(long)]
    p: u64,
    /// Exponent r: the acting cyclic factor has order p^r.
    #[arg(long)]
    r: u32,
    /// Exponent t: the base coordinates have order p^t.
    #[arg(long)]
    t: u32,
    /// Comma-separated multiplicities n_1..n_{k-1}; omit for k = 1.
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<u64>>,
    /// Verification tier: structural, full, or auto (full iff |G| fits).
    #[arg(long, default_value = "auto")]
    mode: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Largest group enumerated element by element.
    #[arg(long, default_value_t = 200_000)]
    max_enum: u128,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format; tsv is a lossy view of the JSON.
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify the wreath-product restriction decomposition.
    Example1(ParamArgs),
    /// Verify the semidirect-product character construction.
    TheoremB(ParamArgs),
    /// Verify the full chain: restriction example feeding the product
    /// construction.
    TheoremA(ParamArgs),
    /// Verify the diagonal-restriction identity on the built-in groups.
    DiagCheck {
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the regression corpus and compare against golden certificates.
    Suite {
        /// Directory of golden certificates to re-derive and diff.
        #[arg(long, default_value = "golden")]
        golden: PathBuf,
        /// Rewrite the golden certificates from the current run.
        #[arg(long)]
        update_golden: bool,
        /// Also run the experimental order-27 probe.
        #[arg(long)]
        edith1_spotcheck: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn emit(reports: &[VerificationReport], output: &OutputArgs) -> Result<(), String> {
    let text = match output.format.as_str() {
        "json" => {
            let mut t = if reports.len() == 1 {
                serde_json::to_string_pretty(&reports[0])
            } else {
                serde_json::to_string_pretty(&reports)
            }
            .map_err(|e| e.to_string())?;
            t.push('\n');
            t
        }
        "tsv" => reports.iter().map(to_tsv).collect::<Vec<_>>().join("\n"),
        other => return Err(format!("unknown format '{}' (expected json|tsv)", other)),
    };
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(|e| e.to_string()),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn exit_for(reports: &[VerificationReport]) -> ExitCode {
    if reports.iter().all(|r| r.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {}", msg);
    ExitCode::from(2)
}

fn run_params(
    args: &ParamArgs,
    f: impl FnOnce(u64, u32, u32, &[u64], Mode, &EngineConfig) -> charprod::Result<VerificationReport>,
) -> ExitCode {
    let mode: Mode = match args.mode.parse() {
        Ok(m) => m,
        Err(e) => return usage_error(e),
    };
    let cfg = EngineConfig { max_enum: args.output.max_enum, ..EngineConfig::default() };
    let n = args.n.clone().unwrap_or_default();
    match f(args.p, args.r, args.t, &n, mode, &cfg) {
        Ok(report) => {
            if let Err(e) = emit(std::slice::from_ref(&report), &args.output) {
                return usage_error(e);
            }
            exit_for(&[report])
        }
        Err(e) => usage_error(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.cmd {
        Cmd::Example1(args) => run_params(args, |p, r, t, n, _mode, cfg| {
            let ex = example1(p, r, t, n, cfg)?;
            for w in &ex.warnings {
                eprintln!("warning: {}", w);
            }
            verify_restriction(&ex, cfg)
        }),
        Cmd::TheoremB(args) => run_params(args, |p, r, t, n, mode, cfg| {
            let (ex, tb) = theorem_a(p, r, t, n, cfg)?;
            for w in &ex.warnings {
                eprintln!("warning: {}", w);
            }
            let params = charprod::verify::Params { p, r, t, n: n.to_vec() };
            verify_product(&tb, "theorem-b", params, mode, cfg)
        }),
        Cmd::TheoremA(args) => run_params(args, |p, r, t, n, mode, cfg| {
            let (ex, tb) = theorem_a(p, r, t, n, cfg)?;
            for w in &ex.warnings {
                eprintln!("warning: {}", w);
            }
            let params = charprod::verify::Params { p, r, t, n: n.to_vec() };
            verify_product(&tb, "theorem-a", params, mode, cfg)
        }),
        Cmd::DiagCheck { output } => {
            let cfg = EngineConfig { max_enum: output.max_enum, ..EngineConfig::default() };
            let reports = match verify_diag_wreath(&cfg)
                .and_then(|a| verify_diag_cyclic(&cfg).map(|b| vec![a, b]))
            {
                Ok(r) => r,
                Err(e) => return usage_error(e),
            };
            if let Err(e) = emit(&reports, output) {
                return usage_error(e);
            }
            exit_for(&reports)
        }
        Cmd::Suite { golden, update_golden, edith1_spotcheck, output } => {
            let cfg = EngineConfig { max_enum: output.max_enum, ..EngineConfig::default() };
            let reports = match suite_reports(&cfg, *edith1_spotcheck) {
                Ok(r) => r,
                Err(e) => return usage_error(e),
            };
            for r in &reports {
                println!(
                    "{} {} p={} r={} t={} n={:?} tier={}",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.construction,
                    r.params.p,
                    r.params.r,
                    r.params.t,
                    r.params.n,
                    r.tier
                );
            }
            if let Some(_) = &output.out {
                if let Err(e) = emit(&reports, output) {
                    return usage_error(e);
                }
            }
            let mut failed = reports.iter().any(|r| !r.pass);
            if *update_golden {
                if let Err(e) = charprod::verify::write_goldens(golden, &reports) {
                    return usage_error(e);
                }
                println!("wrote {} golden certificates to {}", reports.len(), golden.display());
            } else if golden.is_dir() {
                match check_golden_dir(golden, &cfg) {
                    Ok(mismatches) => {
                        if mismatches.is_empty() {
                            println!("golden certificates verified: {}", golden.display());
                        } else {
                            for m in &mismatches {
                                println!("GOLDEN MISMATCH {}", m);
                            }
                            failed = true;
                        }
                    }
                    Err(e) => return usage_error(e),
                }
            }
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}
