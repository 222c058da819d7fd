use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gysin::commands::{self, CliError, ComputeArgs, Format, ReportKind, Source};
use gysin::registry::PresetParams;
use gysin_core::engine::Mode;
use gysin_core::{Ring, Window};

#[derive(Parser)]
#[command(
    name = "gysin",
    version,
    about = "Rabinowitz Floer homology from Floer Gysin sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute SH groups for a preset or a problem file.
    Compute {
        #[command(flatten)]
        source: SourceArgs,
        /// Inclusive degree window `a..b`.
        #[arg(long, value_parser = commands::parse_window, allow_hyphen_values = true)]
        window: Option<Window>,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
        /// Defaults to les, or cone when the problem has a boundary.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Comma-separated: vanishing, divisibility, invertibility, euler.
        #[arg(long, value_delimiter = ',', value_parser = ReportKind::parse)]
        report: Vec<ReportKind>,
    },
    /// Run golden tables and property suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// List the presets and their parameter ranges.
    Presets,
    /// Smith normal form of an integer matrix given as a JSON array of rows.
    Snf {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Write a preset (or re-normalize a file) as a problem file.
    Export {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_parser = commands::parse_window, allow_hyphen_values = true)]
        window: Option<Window>,
    },
}

#[derive(Args)]
struct SourceArgs {
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    preset: Option<String>,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    euler: Option<i64>,
    #[arg(long, value_enum)]
    ring: Option<RingArg>,
}

impl SourceArgs {
    fn into_source(self) -> Source {
        match (self.preset, self.input) {
            (Some(name), _) => Source::Preset {
                name,
                params: PresetParams {
                    k: self.k,
                    n: self.n,
                    d: self.d,
                    euler: self.euler,
                    ring: self.ring.map(Into::into),
                },
            },
            (None, Some(path)) => Source::Input(path),
            (None, None) => unreachable!("clap requires one of --preset, --input"),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RingArg {
    #[value(name = "Z", alias = "z")]
    Z,
    #[value(name = "Q", alias = "q")]
    Q,
}

impl From<RingArg> for Ring {
    fn from(r: RingArg) -> Ring {
        match r {
            RingArg::Z => Ring::Integers,
            RingArg::Q => Ring::Rationals,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Les,
    Cone,
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    match cli.command {
        Command::Compute {
            source,
            window,
            format,
            mode,
            report,
        } => {
            let args = ComputeArgs {
                source: source.into_source(),
                window,
                format: match format {
                    FormatArg::Table => Format::Table,
                    FormatArg::Json => Format::Json,
                },
                mode: mode.map(|m| match m {
                    ModeArg::Les => Mode::LongExactSequence,
                    ModeArg::Cone => Mode::MappingCone,
                }),
                reports: report,
            };
            commands::compute(&args).map(|s| (s, true))
        }
        Command::Verify { suite } => commands::verify(&suite),
        Command::Presets => Ok((commands::presets_listing(), true)),
        Command::Snf { matrix } => commands::snf(&matrix).map(|s| (s, true)),
        Command::Export { source, window } => commands::export(&source.into_source(), window).map(|s| (s, true)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, ok)) => {
            let _ = std::io::stdout().write_all(out.as_bytes());
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
