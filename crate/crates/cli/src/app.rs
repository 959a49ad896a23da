//! Command-line surface of the `rpforge` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rpforge_core::geometry::{DEFAULT_EPS, DEFAULT_PRECISION};

use crate::bounds::{bound_table, render_text, KPolicy};
use crate::config::{parse_eps, FamilySpec, Format, PipelineConfig, Stage};
use crate::error::{CliError, Result};
use crate::pipeline;

#[derive(Debug, Parser)]
#[command(
    name = "rpforge",
    version,
    about = "Subset polytopes and the projective-space triangulations they induce"
)]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a grouped family and write family.json.
    Generate(RunArgs),
    /// Check singletons, downward closure and the exchange condition.
    Verify(RunArgs),
    /// Run the stages up to --stage (default: all).
    Pipeline {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value = "all")]
        stage: Stage,
    },
    /// Family sizes against the bound and the single-group baseline.
    BoundTable {
        #[arg(long)]
        n_max: usize,
        /// Fixed group count instead of ⌈√n⌉.
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Ground set size.
    #[arg(long, required_unless_present = "family")]
    pub n: Option<usize>,
    /// Number of groups (default ⌈√n⌉).
    #[arg(long)]
    pub k: Option<usize>,
    /// One group: every nonempty subset.
    #[arg(long)]
    pub single_group: bool,
    /// Read the family from a JSON file instead of generating it.
    #[arg(long, conflicts_with_all = ["n", "k", "single_group"])]
    pub family: Option<PathBuf>,
    /// Hull working precision in bits.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    pub precision: usize,
    /// Hull tolerance, e.g. 2^-64 or 1e-20.
    #[arg(long, value_parser = parse_eps, default_value_t = DEFAULT_EPS)]
    pub eps: f64,
    /// Directory for the output files.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl RunArgs {
    pub fn config(&self, stage: Stage) -> PipelineConfig {
        let family = match (&self.family, self.n) {
            (Some(path), _) => FamilySpec::File(path.clone()),
            (None, n) => FamilySpec::Generated {
                n: n.unwrap_or(0),
                k: self.k,
                single_group: self.single_group,
            },
        };
        PipelineConfig {
            family,
            precision: self.precision,
            eps: self.eps,
            out: self.out.clone(),
            stage,
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(CliError::io("<stdout>"))
}

fn json<T: serde::Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Internal(e.to_string()))
}

/// Runs a parsed command; returns the exit status.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        // Fails only if a global pool already exists, as in repeated
        // in-process calls; the existing pool is then kept.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    let (args, stage) = match &cli.command {
        Command::Generate(a) => (a, Stage::Family),
        Command::Verify(a) => (a, Stage::Verify),
        Command::Pipeline { run, stage } => (run, *stage),
        Command::BoundTable { n_max, k } => {
            let rows = bound_table(*n_max, k.map_or(KPolicy::SquareRoot, KPolicy::Fixed))?;
            let text = match cli.format {
                Format::Json => json(&rows)?,
                Format::Text => render_text(&rows),
            };
            emit(out, &text)?;
            return Ok(0);
        }
    };
    let summary = pipeline::run(&args.config(stage))?;
    let text = match cli.format {
        Format::Json => json(&summary)?,
        Format::Text => summary.to_text(),
    };
    emit(out, &text)?;
    Ok(summary.exit_code())
}

/// Parses `args` and runs; usage errors from parsing exit with 2.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "rpforge: {e}");
            e.exit_code()
        }
    }
}
