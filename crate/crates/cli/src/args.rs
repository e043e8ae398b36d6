use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use reqforge_core::Level;

#[derive(Debug, Parser)]
#[command(name = "reqforge", version, about = "Requirements models: validation, traceability analyses and document generation")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Allow traces between requirements of the same level (the trace graph
    /// must then be acyclic).
    #[arg(long, global = true)]
    pub relaxed_levels: bool,

    /// Treat warnings as errors.
    #[arg(long, global = true)]
    pub strict_warnings: bool,

    /// ANSI colour in text output. REQFORGE_NO_COLOR turns it off regardless.
    #[arg(long, value_enum, default_value_t = ColorChoice::Auto, global = true)]
    pub color: ColorChoice,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ColorChoice {
    Auto,
    Always,
    Never,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Srs,
    Roadmap,
    Diagrams,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a model.
    Validate {
        /// `.req` files or directories of them.
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Gap analysis: case-study requirements not covered by satisfied tool
    /// requirements. Exits 1 when any is uncovered.
    Check {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Count only tool requirements whose status is `done`.
        #[arg(long)]
        strict: bool,
    },
    /// Generate the SRS, the roadmap and the diagrams.
    Gen {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Output directory, created when missing.
        #[arg(long)]
        out: PathBuf,
        /// What to generate; repeatable.
        #[arg(long = "target", value_enum, default_values_t = [Target::All])]
        targets: Vec<Target>,
    },
    /// Element counts.
    Stats {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Traceability matrix between two requirement levels.
    Matrix {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long, value_parser = parse_level)]
        from: Level,
        #[arg(long, value_parser = parse_level)]
        to: Level,
    },
    /// Merge a CSV table into a requirements container.
    ImportCsv {
        /// CSV file with header `id,definition,criticality,release,status,comments`.
        csv: PathBuf,
        /// Target container id.
        #[arg(long)]
        container: String,
        /// Model files or directories.
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Rewrite the file declaring the container instead of printing the
        /// updated model.
        #[arg(long)]
        in_place: bool,
    },
    /// Rewrite files in canonical form.
    Fmt {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Report files that are not canonical instead of rewriting them.
        #[arg(long)]
        check: bool,
    },
}

fn parse_level(text: &str) -> Result<Level, String> {
    text.parse().map_err(|e| format!("{e}"))
}
