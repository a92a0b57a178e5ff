//! Command-line pipeline for trend-manipulation analytics: synthesize
//! corpora, validate ingestion, extract features, train and apply
//! classifiers, and produce analysis reports.
//!
//! Exit codes: 0 success, 1 data error (the message carries the failing
//! module's error name), 2 usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod analyze;
mod classify;
mod config;
mod evaluate;
mod features;
mod ingest;
mod output;
mod pipeline;
mod synth;
mod train;

use config::RunConfig;

fn version_string() -> String {
    format!(
        "{} (schema_version {})",
        env!("CARGO_PKG_VERSION"),
        manipify::ml::SCHEMA_VERSION
    )
}

#[derive(Parser)]
#[command(
    name = "manipify",
    version = version_string(),
    about = "Trend-manipulation, bot, and hashtag-topic analytics for tweet corpora"
)]
struct Cli {
    /// Optional key=value file supplying defaults for the global flags
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Country whose trends are analyzed
    #[arg(long, global = true, value_name = "NAME")]
    target_country: Option<String>,

    /// Seed for everything randomized
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    /// Train share for evaluate splits, in (0, 1)
    #[arg(long, global = true, value_name = "F")]
    train_fraction: Option<f64>,

    /// Minimum tweet volume before a hashtag is classified
    #[arg(long, global = true, value_name = "N")]
    min_hashtag_tweets: Option<usize>,

    /// Time-series bin width in seconds
    #[arg(long, global = true, value_name = "SECONDS")]
    bin_width_s: Option<i64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a labelled synthetic corpus directory
    Synth(SynthArgs),
    /// Load a corpus directory and report what it contains
    IngestValidate(CorpusArg),
    /// Write feature tables as CSV
    #[command(subcommand)]
    Features(FeaturesCmd),
    /// Train a model from a corpus and its truth.json labels
    #[command(subcommand)]
    Train(TrainCmd),
    /// Apply a trained model
    #[command(subcommand)]
    Classify(ClassifyCmd),
    /// Produce analysis reports
    #[command(subcommand)]
    Analyze(AnalyzeCmd),
    /// Split a labelled corpus, train, and score the held-out part
    Evaluate(EvaluateArgs),
}

#[derive(Args)]
struct CorpusArg {
    /// Corpus directory with tweets.jsonl, users.jsonl, trends.jsonl
    #[arg(long, value_name = "DIR")]
    corpus: PathBuf,
}

#[derive(Args)]
struct SynthArgs {
    /// Directory to write the corpus into
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    #[arg(long, default_value_t = 50)]
    manipulators: usize,
    #[arg(long, default_value_t = 50)]
    organic: usize,
    #[arg(long, default_value_t = 100)]
    bots: usize,
    #[arg(long, default_value_t = 100)]
    humans: usize,
    #[arg(long, default_value_t = 3)]
    hashtags_per_category: usize,
    #[arg(long, default_value_t = 30)]
    tweets_per_hashtag: usize,
}

#[derive(Subcommand)]
enum FeaturesCmd {
    /// Per-user manipulation features for one hashtag
    Manip {
        #[arg(long, value_name = "DIR")]
        corpus: PathBuf,
        /// Hashtag to extract for; defaults to the corpus's first trend
        #[arg(long)]
        hashtag: Option<String>,
        /// Output file; stdout when absent
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Per-user profile features for the bot classifier
    Bot {
        #[arg(long, value_name = "DIR")]
        corpus: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TrainCmd {
    /// Logistic regression over manipulation features
    Manip {
        #[arg(long, value_name = "DIR")]
        corpus: PathBuf,
        #[arg(long)]
        hashtag: Option<String>,
        /// Model file to write
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Logistic regression over profile features
    Bot {
        #[arg(long, value_name = "DIR")]
        corpus: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// One-vs-all topic classifiers over hashtag documents
    Hashcat {
        #[arg(long, value_name = "DIR")]
        corpus: PathBuf,
        #[arg(long, value_enum, default_value_t = LangArg::En)]
        language: LangArg,
        /// Bundle directory to write
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
    },
    /// Decision tree over trend locality features
    Locality {
        #[arg(long, value_name = "DIR")]
        corpus: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum ClassifyCmd {
    /// Label each user of a hashtag as manipulator or organic
    Manip {
        #[arg(long, value_name = "DIR")]
        corpus: PathBuf,
        #[arg(long, value_name = "FILE")]
        model: PathBuf,
        #[arg(long)]
        hashtag: Option<String>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Emit CSV instead of JSON
        #[arg(long)]
        csv: bool,
    },
    /// Label each profiled user as bot or human
    Bot {
        #[arg(long, value_name = "DIR")]
        corpus: PathBuf,
        #[arg(long, value_name = "FILE")]
        model: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[arg(long)]
        csv: bool,
    },
    /// Assign one hashtag a topic category
    Hashcat {
        #[arg(long, value_name = "DIR")]
        corpus: PathBuf,
        /// Bundle directory (English when --model-ur is also given)
        #[arg(long, value_name = "DIR")]
        model: PathBuf,
        /// Urdu bundle directory; enables bilingual classification
        #[arg(long, value_name = "DIR")]
        model_ur: Option<PathBuf>,
        #[arg(long)]
        hashtag: String,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[arg(long)]
        csv: bool,
    },
    /// Label trends as local or global
    Locality {
        #[arg(long, value_name = "DIR")]
        corpus: PathBuf,
        #[arg(long, value_name = "FILE")]
        model: PathBuf,
        /// Classify just this trend; defaults to every trend
        #[arg(long)]
        hashtag: Option<String>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long, value_name = "DIR")]
    corpus: PathBuf,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Emit CSV instead of JSON
    #[arg(long)]
    csv: bool,
}

#[derive(Subcommand)]
enum AnalyzeCmd {
    /// Unique users plus their follower sum for one hashtag
    Reach {
        #[command(flatten)]
        report: ReportArgs,
        #[arg(long)]
        hashtag: String,
    },
    /// Tweet counts per language
    Langdist {
        #[command(flatten)]
        report: ReportArgs,
        /// Restrict to one hashtag; defaults to the whole corpus
        #[arg(long)]
        hashtag: Option<String>,
    },
    /// Hashtag and tweet shares per topic category
    Catdist {
        #[command(flatten)]
        report: ReportArgs,
        /// JSON file mapping hashtags to categories; defaults to the
        /// corpus truth.json
        #[arg(long, value_name = "FILE")]
        labels: Option<PathBuf>,
    },
    /// Tweet counts over contiguous time bins
    Timeseries {
        #[command(flatten)]
        report: ReportArgs,
        #[arg(long)]
        hashtag: String,
        #[arg(long, value_enum, default_value_t = GroupBy::All)]
        group_by: GroupBy,
    },
    /// Bot and manipulator percentages from truth.json
    Usermix {
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Timing check for an original/response hashtag pair
    Pairs {
        #[command(flatten)]
        report: ReportArgs,
        #[arg(long)]
        orig: String,
        #[arg(long)]
        resp: String,
    },
    /// Mean tweets per distinct user over time bins
    TweetsPerUser {
        #[command(flatten)]
        report: ReportArgs,
        #[arg(long)]
        hashtag: String,
        #[arg(long, value_enum, default_value_t = GroupBy::All)]
        group_by: GroupBy,
    },
}

#[derive(Args)]
struct EvaluateArgs {
    /// Which classifier to train and score
    #[arg(value_enum)]
    task: Task,
    #[arg(long, value_name = "DIR")]
    corpus: PathBuf,
    /// Hashtag for the manip task; defaults to the corpus's first trend
    #[arg(long)]
    hashtag: Option<String>,
    /// Language for the hashcat task
    #[arg(long, value_enum, default_value_t = LangArg::En)]
    language: LangArg,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Task {
    Manip,
    Bot,
    Hashcat,
    Locality,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LangArg {
    En,
    Ur,
}

impl LangArg {
    fn language(self) -> manipify::hashcat::Language {
        match self {
            Self::En => manipify::hashcat::Language::English,
            Self::Ur => manipify::hashcat::Language::Urdu,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupBy {
    /// One series covering every tweet
    All,
    /// One series per language tag
    Lang,
    /// Manipulators vs organic users, from truth.json
    Role,
}

enum CliError {
    Usage(String),
    Data(anyhow::Error),
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        Self::Data(e)
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let run_config = RunConfig::resolve(&cli)?;
    match cli.command {
        Command::Synth(args) => synth::run(&run_config, &args)?,
        Command::IngestValidate(args) => ingest::run(&args.corpus)?,
        Command::Features(cmd) => features::run(&run_config, &cmd)?,
        Command::Train(cmd) => train::run(&run_config, &cmd)?,
        Command::Classify(cmd) => classify::run(&run_config, &cmd)?,
        Command::Analyze(cmd) => analyze::run(&run_config, &cmd)?,
        Command::Evaluate(args) => evaluate::run(&run_config, &args)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Data(error)) => {
            eprintln!("error: {error:#}");
            ExitCode::from(1)
        }
    }
}
