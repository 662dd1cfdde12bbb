use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use invar_core::analysis::{
    analyze, invariants_report, parse_spec, to_json, to_text, AnalysisError, AnalyzeOptions, FailureKind, GroupSpec,
    MethodChoice, DEFAULT_CLOSURE_CAP,
};

/// Hilbert ideals of finite p-group representations over finite fields.
#[derive(Parser, Debug)]
#[command(name = "invar", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full pipeline: closure, flag basis, sequence, both Hilbert ideals, verdicts.
    Analyze {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        #[command(flatten)]
        common: Common,
        /// Write wall-clock stage timings into the report.
        #[arg(long)]
        timing: bool,
    },
    /// Basis of the invariants of one degree.
    Invariants {
        spec: PathBuf,
        #[arg(long)]
        degree: u32,
        #[command(flatten)]
        output: Output,
    },
    /// One Hilbert ideal computation.
    Hilbert {
        spec: PathBuf,
        #[arg(long, value_enum)]
        method: HilbertMethod,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(clap::Args, Debug)]
struct Common {
    /// Sequence i0,i1,... to verify instead of searching.
    #[arg(long, value_delimiter = ',')]
    sequence: Option<Vec<usize>>,
    #[arg(long)]
    degree_bound: Option<u32>,
    #[arg(long, value_enum, default_value_t = Switch::On)]
    verify: Switch,
    #[command(flatten)]
    output: Output,
}

#[derive(clap::Args, Debug)]
struct Output {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MethodArg {
    Both,
    Constructive,
    Bruteforce,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum HilbertMethod {
    Constructive,
    Bruteforce,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Switch {
    On,
    Off,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    Json,
    Text,
}

const EXIT_REFUSAL: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_ASSERTION: u8 = 4;

fn closure_cap() -> Result<usize, String> {
    match std::env::var("INVAR_CLOSURE_CAP") {
        Ok(v) => v.trim().parse().map_err(|_| format!("INVAR_CLOSURE_CAP: not a count: {v}")),
        Err(_) => Ok(DEFAULT_CLOSURE_CAP),
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn failure_code(e: &AnalysisError) -> u8 {
    match e.kind {
        FailureKind::Refusal => EXIT_REFUSAL,
        FailureKind::Assertion => EXIT_ASSERTION,
    }
}

fn load(path: &Path) -> Result<GroupSpec, ExitCode> {
    parse_spec(path).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(EXIT_PARSE)
    })
}

fn options(common: &Common, method: MethodChoice, cap: usize, timing: bool) -> AnalyzeOptions {
    AnalyzeOptions {
        method,
        sequence: common.sequence.clone(),
        degree_bound: common.degree_bound,
        verify: matches!(common.verify, Switch::On),
        closure_cap: cap,
        timing,
    }
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    let cap = closure_cap().map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(EXIT_PARSE)
    })?;
    let fail = |e: AnalysisError| {
        eprintln!("error: {e}");
        ExitCode::from(failure_code(&e))
    };
    let write = |text: String, out: &Option<PathBuf>| {
        emit(&text, out).map_err(|e| {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        })
    };
    match cli.command {
        Command::Analyze { spec, method, common, timing } => {
            let spec = load(&spec)?;
            let method = match method {
                MethodArg::Both => MethodChoice::Both,
                MethodArg::Constructive => MethodChoice::Constructive,
                MethodArg::Bruteforce => MethodChoice::Bruteforce,
            };
            let report = analyze(&spec, &options(&common, method, cap, timing)).map_err(fail)?;
            let text = match common.output.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            write(text, &common.output.out)?;
            Ok(ExitCode::from(report.exit_code(method) as u8))
        }
        Command::Hilbert { spec, method, common } => {
            let spec = load(&spec)?;
            let method = match method {
                HilbertMethod::Constructive => MethodChoice::Constructive,
                HilbertMethod::Bruteforce => MethodChoice::Bruteforce,
            };
            let report = analyze(&spec, &options(&common, method, cap, false)).map_err(fail)?;
            let stage = match method {
                MethodChoice::Constructive => &report.constructive,
                _ => &report.bruteforce,
            };
            let text = match common.output.format {
                Format::Json => to_json(stage),
                Format::Text => to_text(stage),
            };
            write(text, &common.output.out)?;
            Ok(ExitCode::from(report.exit_code(method) as u8))
        }
        Command::Invariants { spec, degree, output } => {
            let spec = load(&spec)?;
            let report = invariants_report(&spec, degree, cap).map_err(fail)?;
            let text = match output.format {
                Format::Json => to_json(&report),
                Format::Text => to_text(&report),
            };
            write(text, &output.out)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_PARSE) } else { ExitCode::SUCCESS };
        }
    };
    run(cli).unwrap_or_else(|code| code)
}
