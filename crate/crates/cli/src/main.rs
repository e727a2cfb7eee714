//! `pclab`: command-line driver for the polynomial calculus colouring lab.
//!
//! Every subcommand prints one JSON document (or CSV with `--csv`). Errors
//! are printed as `{"kind": ..., "message": ...}` and map to exit codes:
//! 2 for bad input, 3 for an exhausted budget, 4 for a broken internal
//! invariant.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pclab::graph::{parse_ratio, VertexOrder};
use pclab::harness::{self, CrossCheck, EncodeFormat, Model, PipelineConfig};
use pclab::resgame::Prover;
use pclab::{Error, Field, Graph};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "pclab", version, about = "Polynomial calculus lower-bound laboratory for graph colouring")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print a CSV table instead of JSON.
    #[arg(long, global = true)]
    csv: bool,
    /// Write the main output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Gnp,
    Regular,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Dimacs,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProverArg {
    Random,
    Greedy,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a random graph and write it in the graph file format.
    Sample {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long)]
        n: usize,
        /// Expected average degree (gnp) or exact degree (regular).
        #[arg(long)]
        d: f64,
        #[arg(long)]
        seed: u64,
    },
    /// Encode the colouring formula as DIMACS CNF or polynomial JSON.
    Encode {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "2")]
        field: String,
        #[arg(long, value_enum, default_value = "dimacs")]
        format: FormatArg,
    },
    /// Check (ℓ, ε)-sparsity.
    Sparsity {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        ell: usize,
        /// ε as a fraction or decimal, e.g. 1/18 or 0.25.
        #[arg(long)]
        epsilon: String,
        /// Maximum number of candidate sets examined.
        #[arg(long, default_value_t = pclab::graph::SPARSITY_BUDGET)]
        budget: u64,
    },
    /// Closure of a vertex set with its hop/lasso trace.
    Closure {
        #[arg(long)]
        graph: PathBuf,
        /// Comma-separated vertex ids.
        #[arg(long, value_delimiter = ',')]
        set: Vec<usize>,
        /// Vertex order file (line i: rank of vertex i); identity if absent.
        #[arg(long)]
        order: Option<PathBuf>,
    },
    /// The set T_Δ of removed high-degree vertices.
    Tdelta {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        delta: usize,
    },
    /// Smallest polynomial calculus refutation degree up to --dmax.
    Mindegree {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "2")]
        field: String,
        #[arg(long)]
        dmax: usize,
    },
    /// Run the full lower-bound pipeline and report every condition.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "2")]
        field: String,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = pclab::framework::DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        /// Sparsity parameter ℓ, used for the predicted degree.
        #[arg(long)]
        ell: Option<usize>,
    },
    /// Play the resolution width game.
    Resgame {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        width: usize,
        #[arg(long, value_enum, default_value = "greedy")]
        prover: ProverArg,
        #[arg(long, default_value_t = 10_000)]
        rounds: u64,
        #[arg(long)]
        seed: u64,
        /// Write one JSON line per round to this file.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
}

enum Output {
    Json(Value),
    Text(String),
}

fn read_graph(path: &Path) -> pclab::Result<Graph> {
    Graph::parse(&fs::read_to_string(path)?)
}

fn run(cli: &Cli) -> pclab::Result<(Output, u8)> {
    let out = match &cli.command {
        Command::Sample { model, n, d, seed } => {
            let model = match model {
                ModelArg::Gnp => Model::Gnp,
                ModelArg::Regular => Model::Regular,
            };
            let (g, summary) = harness::sample(model, *n, *d, *seed)?;
            if let Some(path) = &cli.out {
                fs::write(path, g.to_text())?;
                return Ok((Output::Json(summary), 0));
            }
            if cli.csv {
                Output::Json(summary)
            } else {
                Output::Text(g.to_text())
            }
        }
        Command::Encode { graph, k, field, format } => {
            let g = read_graph(graph)?;
            let format = match format {
                FormatArg::Dimacs => EncodeFormat::Dimacs,
                FormatArg::Json => EncodeFormat::Json,
            };
            Output::Text(harness::encode(&g, *k, Field::parse(field)?, format)?)
        }
        Command::Sparsity {
            graph,
            ell,
            epsilon,
            budget,
        } => Output::Json(harness::sparsity(&read_graph(graph)?, *ell, parse_ratio(epsilon)?, *budget)?),
        Command::Closure { graph, set, order } => {
            let g = read_graph(graph)?;
            let order = match order {
                Some(p) => Some(VertexOrder::parse(&fs::read_to_string(p)?)?),
                None => None,
            };
            let u: BTreeSet<usize> = set.iter().copied().collect();
            Output::Json(harness::closure(&g, order.as_ref(), &u)?)
        }
        Command::Tdelta { graph, delta } => Output::Json(harness::tdelta(&read_graph(graph)?, *delta)?),
        Command::Mindegree { graph, k, field, dmax } => {
            Output::Json(harness::mindegree(&read_graph(graph)?, *k, Field::parse(field)?, *dmax)?)
        }
        Command::Verify {
            graph,
            k,
            field,
            delta,
            degree,
            samples,
            seed,
            ell,
        } => {
            let cfg = PipelineConfig {
                k: *k,
                field: Field::parse(field)?,
                delta: *delta,
                degree: *degree,
                samples: *samples,
                seed: *seed,
                ell: *ell,
            };
            let rep = harness::pipeline(&read_graph(graph)?, &cfg)?;
            let code = if rep.cross_check == CrossCheck::Violated { 4 } else { 0 };
            return Ok((Output::Json(serde_json::to_value(&rep)?), code));
        }
        Command::Resgame {
            graph,
            k,
            width,
            prover,
            rounds,
            seed,
            transcript,
        } => {
            let g = read_graph(graph)?;
            let prover = match prover {
                ProverArg::Random => Prover::Random,
                ProverArg::Greedy => Prover::GreedyConflict,
            };
            let mut file = match transcript {
                Some(p) => Some(std::io::BufWriter::new(fs::File::create(p)?)),
                None => None,
            };
            let sink = file.as_mut().map(|f| f as &mut dyn std::io::Write);
            Output::Json(harness::resgame(&g, *k, *width, prover, *rounds, *seed, sink)?)
        }
    };
    Ok((out, 0))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resource { .. } => 3,
        Error::Invariant(_) => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((output, code)) => {
            let text = match output {
                Output::Json(v) if cli.csv => harness::to_csv(&v),
                Output::Json(v) => serde_json::to_string_pretty(&v).expect("JSON values serialise") + "\n",
                Output::Text(t) => t,
            };
            let written = match (&cli.out, &cli.command) {
                (Some(path), cmd) if !matches!(cmd, Command::Sample { .. }) => fs::write(path, &text),
                _ => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                return fail(&Error::from(e));
            }
            ExitCode::from(code)
        }
        Err(e) => fail(&e),
    }
}

fn fail(e: &Error) -> ExitCode {
    println!("{}", json!({"kind": e.kind(), "message": e.to_string()}));
    ExitCode::from(exit_code(e))
}
