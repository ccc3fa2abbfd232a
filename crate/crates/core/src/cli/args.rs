use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::{Command, OutputFormat, RunConfig};

#[derive(Debug, Parser)]
#[command(
    name = "symgraph",
    version,
    about = "Exact word counting and growth analysis for graph-generated symbolic systems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
    #[command(flatten)]
    pub options: CliOptions,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum CliCommand {
    /// Counts, characteristic polynomial, closed form, growth class and entropy of one graph
    Analyze,
    /// Scheduled combination of two or more graphs over one alphabet
    Combine,
    /// Exhaustive growth classification of small connected digraphs
    Scan,
    /// Fit H(n) = n h + g n^mu (ln n)^nu + e to a graph or combined system
    EntropyFit,
    /// Run the built-in reference experiments with no external inputs
    PaperExamples,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CliFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct CliOptions {
    /// Graph file, or a preset name (G1, G2, K3, C2, CHAIN); repeatable
    #[arg(long = "graph", global = true)]
    pub graphs: Vec<String>,
    /// `paper` or a schedule file
    #[arg(long, global = true)]
    pub schedule: Option<String>,
    #[arg(long, global = true)]
    pub n_max: Option<u64>,
    #[arg(long, global = true)]
    pub t_max: Option<u64>,
    #[arg(long, global = true)]
    pub k_max: Option<usize>,
    /// Cross-check counts by explicit word enumeration
    #[arg(long, global = true)]
    pub enumerate: bool,
    /// Output directory; stdout when omitted
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: CliFormat,
    /// Exit nonzero when any bound report fails
    #[arg(long, global = true)]
    pub strict: bool,
    /// Tail fraction used by the entropy-rate estimator
    #[arg(long, global = true)]
    pub window: Option<f64>,
}

impl Cli {
    pub fn into_config(self) -> RunConfig {
        let o = self.options;
        RunConfig {
            command: match self.command {
                CliCommand::Analyze => Command::Analyze,
                CliCommand::Combine => Command::Combine,
                CliCommand::Scan => Command::Scan,
                CliCommand::EntropyFit => Command::EntropyFit,
                CliCommand::PaperExamples => Command::PaperExamples,
            },
            graphs: o.graphs,
            schedule: o.schedule,
            n_max: o.n_max,
            t_max: o.t_max,
            k_max: o.k_max,
            enumerate: o.enumerate,
            out: o.out,
            format: match o.format {
                CliFormat::Csv => OutputFormat::Csv,
                CliFormat::Json => OutputFormat::Json,
            },
            strict: o.strict,
            window: o.window,
        }
    }
}
