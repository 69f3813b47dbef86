use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bandix::bands::DEFAULT_BUDGET;
use bandix::braid::parse_braid;
use bandix::conway::{conway_from_seifert, seifert_matrix_from_braid};
use bandix::pretzel::parse_pretzel;
use bandix::report::{analyze_braid, analyze_graph, analyze_pretzel, render, render_error, AnalysisOptions, Format};
use bandix::seifert_graph::parse_graph;
use bandix::Error;

/// Band index and flat band index bounds for links.
#[derive(Parser)]
#[command(name = "bandix", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Format {
        match f {
            OutputFormat::Text => Format::Text,
            OutputFormat::Json => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Analyze the closure of a braid word, e.g. "-1 2 -1 2".
    Braid {
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        strands: Option<usize>,
        /// Genus of the link, if known.
        #[arg(long)]
        genus: Option<u64>,
        /// Largest spanning-tree count searched exhaustively.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Analyze a pretzel link given as comma-separated parameters, e.g. "4,4,4".
    Pretzel {
        #[arg(allow_hyphen_values = true)]
        params: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Analyze a signed Seifert graph read from a file.
    Graph {
        file: PathBuf,
        /// Number of boundary components.
        #[arg(long)]
        components: usize,
        #[arg(long)]
        genus: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Print the Conway polynomial of a braid closure.
    Conway {
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        strands: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
}

fn nonblank(text: &str) -> Result<&str, Error> {
    if text.trim().is_empty() {
        Err(Error::Syntax("empty input".into()))
    } else {
        Ok(text)
    }
}

fn run(command: Command) -> (Format, Result<String, Error>) {
    match command {
        Command::Braid { word, strands, genus, budget, format } => {
            let opts = AnalysisOptions { known_genus: genus, budget };
            let out = nonblank(&word)
                .and_then(|word| parse_braid(word, strands))
                .and_then(|w| analyze_braid(&w, &opts))
                .map(|r| render(&r, format.into()));
            (format.into(), out)
        }
        Command::Pretzel { params, budget, format } => {
            let opts = AnalysisOptions { known_genus: None, budget };
            let out = nonblank(&params)
                .and_then(parse_pretzel)
                .and_then(|spec| analyze_pretzel(&spec, &opts))
                .map(|r| render(&r, format.into()));
            (format.into(), out)
        }
        Command::Graph { file, components, genus, budget, format } => {
            let opts = AnalysisOptions { known_genus: genus, budget };
            let out = std::fs::read_to_string(&file)
                .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", file.display())))
                .and_then(|text| parse_graph(&text))
                .and_then(|g| analyze_graph(&g, components, &opts))
                .map(|r| render(&r, format.into()));
            (format.into(), out)
        }
        Command::Conway { word, strands, format } => {
            let out = nonblank(&word)
                .and_then(|word| parse_braid(word, strands))
                .and_then(|w| seifert_matrix_from_braid(&w))
                .and_then(|m| conway_from_seifert(&m))
                .map(|p| match format {
                    OutputFormat::Text => format!("{p}\n"),
                    OutputFormat::Json => format!("{}\n", serde_json::json!({ "coeffs": p.coeffs() })),
                });
            (format.into(), out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        (_, Ok(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        (format, Err(err)) => {
            let text = render_error(&err, format);
            match format {
                Format::Json => print!("{text}"),
                Format::Text => eprint!("{text}"),
            }
            ExitCode::from(if err.is_internal() { 2 } else { 1 })
        }
    }
}
