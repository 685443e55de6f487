//! Command-line front end for the heterogeneous-map pipeline.
//!
//! Settings come from four layers merged in order — built-in defaults,
//! a JSON config file, a named preset, then individual flags — so a
//! flag always beats the preset, which beats the file.

mod config;
mod run;

use clap::{Args, Parser, Subcommand};
use config::{parse_classes, parse_formats, CliError, Preset, RunConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(
    name = "heteromap",
    version,
    about = "Heterogeneous maps of a bibliographic corpus",
    long_about = "Parses tagged-field bibliographic exports and maps the \
                  co-occurrence structure of authors, title words, and \
                  journals as positioned similarity graphs."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse the input and report corpus statistics
    Inspect(CommonArgs),
    /// Build one map over the whole corpus and write it
    Map(CommonArgs),
    /// Build one map per time window and write an animation manifest
    Slice(CommonArgs),
    /// Summarize the occurrence matrix with its leading factors
    Factors(FactorsArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Tagged-field export to read
    #[arg(long, value_name = "FILE")]
    input: PathBuf,

    /// JSON config file applied over the defaults
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Named settings bundle applied over the config file
    #[arg(long, value_enum)]
    preset: Option<Preset>,

    /// Minimum cosine similarity for an edge, in [0, 1]
    #[arg(long, value_name = "T")]
    cosine_threshold: Option<f64>,

    /// Attribute classes to map (comma-separated: author, word, journal)
    #[arg(long, value_delimiter = ',', value_name = "CLASS,...")]
    classes: Option<Vec<String>>,

    /// Keep a title word only if at least this many documents use it
    #[arg(long, value_name = "N")]
    word_min: Option<usize>,

    /// Keep an author only if at least this many documents carry them
    #[arg(long, value_name = "N")]
    author_min: Option<usize>,

    /// Keep a journal only if at least this many documents appear in it
    #[arg(long, value_name = "N")]
    journal_min: Option<usize>,

    /// Drop this author everywhere (repeatable; normalized before matching)
    #[arg(long = "exclude-author", value_name = "NAME")]
    exclude_author: Vec<String>,

    /// First year of the first time window
    #[arg(long, value_name = "YEAR")]
    period_start: Option<i32>,

    /// Window width in years
    #[arg(long, value_name = "YEARS")]
    period_width: Option<i32>,

    /// End of the last window, exclusive
    #[arg(long, value_name = "YEAR")]
    period_end: Option<i32>,

    /// Output formats (comma-separated: net, clu, graphml, svg, json)
    #[arg(long, value_delimiter = ',', value_name = "FMT,...")]
    formats: Option<Vec<String>>,

    /// Directory for generated files
    #[arg(long, value_name = "DIR")]
    out_dir: Option<PathBuf>,

    /// Seed for the layout's initial placement
    #[arg(long, value_name = "N")]
    seed: Option<u64>,

    /// Replacement stopword list, one word per line
    #[arg(long, value_name = "FILE")]
    stopwords: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FactorsArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Number of factors to retain
    #[arg(long, value_name = "K")]
    factors: Option<usize>,
}

impl CommonArgs {
    /// Defaults, then config file, then preset, then flags.
    fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.config {
            let file = config::load_config_file(path)?;
            cfg.apply_config_file(&file)?;
        }
        if let Some(preset) = self.preset {
            cfg.apply_preset(preset);
        }
        if let Some(v) = self.cosine_threshold {
            cfg.cosine_threshold = v;
        }
        if let Some(tokens) = &self.classes {
            cfg.classes = parse_classes(tokens)?;
        }
        if let Some(v) = self.word_min {
            cfg.word_min = v;
        }
        if let Some(v) = self.author_min {
            cfg.author_min = v;
        }
        if let Some(v) = self.journal_min {
            cfg.journal_min = v;
        }
        if !self.exclude_author.is_empty() {
            cfg.exclude_authors = self.exclude_author.clone();
        }
        if let Some(v) = self.period_start {
            cfg.period_start = Some(v);
        }
        if let Some(v) = self.period_width {
            cfg.period_width = v;
        }
        if let Some(v) = self.period_end {
            cfg.period_end = Some(v);
        }
        if let Some(tokens) = &self.formats {
            cfg.formats = parse_formats(tokens)?;
        }
        if let Some(v) = &self.out_dir {
            cfg.out_dir = v.clone();
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = &self.stopwords {
            cfg.stopwords = Some(v.clone());
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Inspect(args) => run::cmd_inspect(&args.resolve()?, &args.input),
        Command::Map(args) => run::cmd_map(&args.resolve()?, &args.input),
        Command::Slice(args) => run::cmd_slice(&args.resolve()?, &args.input),
        Command::Factors(args) => {
            let mut cfg = args.common.resolve()?;
            if let Some(k) = args.factors {
                cfg.factors = k;
                cfg.validate()?;
            }
            run::cmd_factors(&cfg, &args.common.input)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // --help and --version arrive as "errors" but are successes
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
