mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{render_json, render_text, Report};

#[derive(Parser, Debug)]
#[command(
    name = "hkdiag",
    version,
    about = "Characteristic and annulus diagrams of genus-2 handlebody-knots"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Use the opposite crossing sign convention for rings and family codes.
    #[arg(long, global = true)]
    mirror: bool,
    /// Worker threads for multi-file runs and the enumeration sweeps.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the valid characteristic diagrams up to isomorphism.
    Enumerate {
        /// Disable one constraint (e.g. C-vi) and list only the extra classes.
        #[arg(long, value_name = "CODE")]
        without: Option<String>,
        #[arg(long)]
        sequential: bool,
    },
    /// Check diagrams, annulus diagrams or graph codes for violations.
    Validate { files: Vec<PathBuf> },
    /// Type, derived facts and 4_1 verdict of (annulus) diagrams.
    Classify { files: Vec<PathBuf> },
    /// Symmetry-group bounds of annulus diagrams.
    Symmetry { files: Vec<PathBuf> },
    /// Loop a θ or handcuff code at a vertex.
    Loop(LoopArgs),
    /// Print a member of a built-in family of codes.
    Family(FamilyArgs),
    /// Linking numbers of constituent links.
    Linking {
        /// Code file, or `-` for standard input.
        file: PathBuf,
        /// Two component ids, `a,b`.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        components: Vec<String>,
    },
    /// Certificates, homology, classification and looping predictions.
    Analyze(AnalyzeArgs),
}

#[derive(Args, Debug)]
pub struct LoopArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub vertex: String,
    /// Two edge ends at the vertex, `e1.0,e2.1`.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    pub pair: Vec<String>,
    /// Loop at the other vertex too.
    #[arg(long)]
    pub double: bool,
    #[arg(long, value_enum)]
    pub kind: Option<KindArg>,
    /// Facts used to name the looping, `key=value`.
    #[arg(long = "assert", value_name = "KEY=VALUE")]
    pub asserts: Vec<String>,
    /// Write the looped code here instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Tunnel,
    Knot,
    Plain,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    #[arg(value_enum)]
    pub name: FamilyName,
    #[arg(long, short, default_value_t = 3)]
    pub n: i64,
    #[arg(long)]
    pub tunnel: bool,
    #[arg(long, value_enum, default_value_t = RingArg::Both)]
    pub ring: RingArg,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    TorusLink,
    TorusLooped,
    Ringed,
    RingedLooped,
    FiveTwo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RingArg {
    One,
    Both,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    pub files: Vec<PathBuf>,
    #[arg(long = "assert", value_name = "KEY=VALUE")]
    pub asserts: Vec<String>,
    /// The code a looped input was made from; its facts are certified.
    #[arg(long)]
    pub source: Option<PathBuf>,
}

/// Exit status 1 for domain failures, 2 for usage and input errors.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    pub fn domain(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

pub enum Output {
    Reports(Vec<Report>),
    /// Raw text (codes written by `loop` and `family`).
    Raw(String),
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let ctx = commands::Context {
        format: cli.format,
        mirror: cli.mirror,
        jobs: cli.jobs,
    };
    match &cli.command {
        Command::Enumerate {
            without,
            sequential,
        } => commands::enumerate(&ctx, without.as_deref(), *sequential),
        Command::Validate { files } => commands::batch(&ctx, files, commands::validate),
        Command::Classify { files } => commands::batch(&ctx, files, commands::classify),
        Command::Symmetry { files } => commands::batch(&ctx, files, commands::symmetry),
        Command::Loop(args) => commands::looping(&ctx, args),
        Command::Family(args) => commands::family(&ctx, args),
        Command::Linking { file, components } => commands::linking(file, components),
        Command::Analyze(args) => commands::analyze(&ctx, args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Output::Raw(s)) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Ok(Output::Reports(reports)) => {
            let text = match cli.format {
                Format::Json => render_json(&reports),
                Format::Text => render_text(&reports),
            };
            print!("{text}");
            if reports.iter().any(|r| r.failed) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
