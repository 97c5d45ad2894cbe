//! `qg`: analyse the rational group algebra and integral unit group of a
//! finite group from the catalog or a JSON file.
//!
//! Exit codes: 0 success, 2 invalid input, 3 a configured bound was
//! exceeded, 1 internal invariant failure.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use qgalg::group::{catalog_names, catalog_with, GroupInput, GroupOptions};
use qgalg::report::{build_report, InputEcho, ReportOptions, Sections};
use qgalg::{Error, ErrorKind, FiniteGroup};

#[derive(Parser)]
#[command(name = "qg", version, about = "Rational group algebras and units of integral group rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report.
    Analyze(GroupArgs),
    /// Primitive central idempotents.
    Idempotents(GroupArgs),
    /// Wedderburn components.
    Wedderburn(GroupArgs),
    /// Bass and bicyclic units, free pairs, Jespers-Parmenter obstruction.
    Units(GroupArgs),
    /// Central unit rank and averaged Bass units.
    Central(GroupArgs),
    /// Structure predicates.
    Predicates(GroupArgs),
    /// Names accepted by --group.
    CatalogList(OutputArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GroupArgs {
    /// Catalog name such as D8, Q8xC2 or S4.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    group: Option<String>,
    /// JSON file with {"order", "table"} or {"degree", "generators"} (cycles).
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = GroupOptions::default().max_order)]
    max_order: usize,
    /// Seed for randomised cross-checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Include per-section timings.
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    output: OutputArgs,
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    kind: &'static str,
    variant: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match e.kind() {
            ErrorKind::Input => (2, "INPUT"),
            ErrorKind::Bound => (3, "BOUND"),
            ErrorKind::Internal => (1, "INTERNAL"),
        };
        let debug = format!("{e:?}");
        let variant = debug
            .split(|c: char| !c.is_alphanumeric())
            .next()
            .unwrap_or_default()
            .to_string();
        Failure {
            code,
            kind,
            variant,
            message: e.to_string(),
        }
    }
}

fn io_failure(e: anyhow::Error) -> Failure {
    Failure {
        code: 2,
        kind: "INPUT",
        variant: "Io".into(),
        message: format!("{e:#}"),
    }
}

fn load_group(args: &GroupArgs) -> Result<(Arc<FiniteGroup>, InputEcho), Failure> {
    let opts = GroupOptions {
        max_order: args.max_order,
        seed: args.seed,
        ..GroupOptions::default()
    };
    let (g, source, name) = match (&args.group, &args.input) {
        (Some(name), _) => (catalog_with(name, &opts)?, "catalog", name.clone()),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))
                .map_err(io_failure)?;
            let g = GroupInput::from_json(&text)?.build(&opts)?;
            (g, "file", path.display().to_string())
        }
        (None, None) => unreachable!("clap requires --group or --input"),
    };
    let echo = InputEcho {
        source: source.into(),
        name,
        seed: args.seed,
        max_order: args.max_order,
    };
    Ok((Arc::new(g), echo))
}

fn emit(output: &OutputArgs, body: &str) -> Result<(), Failure> {
    match &output.out {
        Some(path) => std::fs::write(path, body)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(io_failure),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())
                .and_then(|_| out.flush())
                .context("writing stdout")
                .map_err(io_failure)
        }
    }
}

fn run_report(args: &GroupArgs, sections: Sections) -> Result<(), Failure> {
    let (g, echo) = load_group(args)?;
    let opts = ReportOptions {
        sections,
        seed: args.seed,
        timings: args.timings,
        strict: !(sections == Sections::all()),
    };
    let report = build_report(&g, echo, &opts)?;
    let body = match args.output.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    emit(&args.output, &body)
}

fn only(f: impl FnOnce(&mut Sections)) -> Sections {
    let mut s = Sections::none();
    f(&mut s);
    s
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze(a) => run_report(&a, Sections::all()),
        Command::Idempotents(a) => run_report(&a, only(|s| s.idempotents = true)),
        Command::Wedderburn(a) => run_report(&a, only(|s| s.wedderburn = true)),
        Command::Units(a) => run_report(&a, only(|s| s.units = true)),
        Command::Central(a) => run_report(&a, only(|s| s.central = true)),
        Command::Predicates(a) => run_report(&a, only(|s| s.predicates = true)),
        Command::CatalogList(o) => {
            let names = catalog_names();
            let body = match o.format {
                Format::Json => serde_json::to_string_pretty(&names).expect("strings serialise") + "\n",
                Format::Text => names.join("\n") + "\n",
            };
            emit(&o, &body)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = std::panic::catch_unwind(|| run(cli)).unwrap_or_else(|p| {
        let message = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(Failure {
            code: 1,
            kind: "INTERNAL",
            variant: "Panic".into(),
            message,
        })
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let diag = serde_json::json!({
                "error": { "kind": f.kind, "variant": f.variant, "message": f.message }
            });
            eprintln!("{diag}");
            ExitCode::from(f.code)
        }
    }
}
