use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use walkforge::interleave::PrefetchLevel;
use walkforge::sampler::SamplerKind;

#[derive(Debug, Parser)]
#[command(name = "walkforge", version, about = "In-memory graph random walks with step interleaving")]
pub struct Cli {
    /// Log progress to stderr (repeat for more detail).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert a text edge list to the binary WFG1 format.
    Convert(ConvertArgs),
    /// Run walk queries and write their paths.
    Run(RunArgs),
    /// Sweep ring sizes and recommend k and k'.
    Tune(TuneArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WeightSource {
    /// No weights.
    None,
    /// Third column of the edge list.
    File,
    /// Uniform in [1, 5), fixed per seed and edge.
    Random,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    /// Edge list: `src dst [weight] [label]` per line, `#` comments.
    pub input: PathBuf,
    /// Output WFG1 file.
    pub output: PathBuf,
    /// Store every line as two directed edges.
    #[arg(long)]
    pub undirected: bool,
    #[arg(long, value_enum, default_value_t = WeightSource::None)]
    pub weights: WeightSource,
    /// `file` to read labels from the edge list, or a count k for random
    /// labels in 0..k.
    #[arg(long)]
    pub labels: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Compact arbitrary vertex ids to 0..n in ascending order.
    #[arg(long)]
    pub remap_ids: bool,
    /// Where to write `dense_id<TAB>original_id` lines when remapping.
    #[arg(long, requires = "remap_ids")]
    pub id_map: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum QueryMode {
    /// One query from every vertex.
    OnePerVertex,
    /// `--count` queries from `--source`.
    FromSource,
    /// `source [count]` lines from `--query-file`.
    FromFile,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Binary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Weighted {
    /// deepwalk uses weights when the graph has them; node2vec does not.
    Auto,
    On,
    Off,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// ppr, deepwalk, node2vec, metapath or custom-uniform.
    pub algorithm: String,
    /// WFG1 file, or a directed text edge list.
    #[arg(long)]
    pub graph: PathBuf,
    /// naive, its, alias, rej or orej; defaults to the algorithm's choice.
    #[arg(long, value_parser = parse_sampler)]
    pub sampler: Option<SamplerKind>,
    #[arg(long, value_enum, default_value_t = Switch::On)]
    pub interleave: Switch,
    /// Walkers in flight per thread.
    #[arg(long, default_value_t = 64)]
    pub k: usize,
    /// Search ring size, at most k.
    #[arg(long = "k-prime", default_value_t = 32)]
    pub k_prime: usize,
    /// Worker threads; defaults to the available cores.
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// ppr stop probability after each move.
    #[arg(long = "termination-prob", alias = "termination", default_value_t = 0.2)]
    pub termination_prob: f64,
    /// Walk length in vertices (deepwalk, node2vec, custom-uniform).
    #[arg(long, default_value_t = 80)]
    pub length: usize,
    /// node2vec return parameter.
    #[arg(long, default_value_t = 2.0)]
    pub a: f64,
    /// node2vec in-out parameter.
    #[arg(long, default_value_t = 0.5)]
    pub b: f64,
    /// metapath labels, comma separated; five random graph labels if omitted.
    #[arg(long, value_delimiter = ',')]
    pub schema: Vec<u32>,
    #[arg(long, value_enum, default_value_t = Weighted::Auto)]
    pub weighted: Weighted,
    /// Defaults to from-source (vertex 0, |V| queries) for ppr and
    /// one-per-vertex otherwise.
    #[arg(long, value_enum)]
    pub queries: Option<QueryMode>,
    #[arg(long, default_value_t = 0)]
    pub source: u32,
    /// Queries for from-source; defaults to |V|.
    #[arg(long)]
    pub count: Option<u64>,
    #[arg(long)]
    pub query_file: Option<PathBuf>,
    /// Walk output file, `-` for stdout. Walks are discarded if omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Size of each of the two output buffers.
    #[arg(long, default_value_t = 8 << 20)]
    pub buffer_bytes: usize,
    /// off, l1, l2, l3 or nta.
    #[arg(long, default_value = "l1", value_parser = parse_prefetch)]
    pub prefetch: PrefetchLevel,
    /// Gather weights at every step even for static programs.
    #[arg(long)]
    pub no_preprocess: bool,
}

#[derive(Debug, Args)]
pub struct TuneArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Time budget in seconds.
    #[arg(long, default_value_t = 240.0)]
    pub budget: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Largest k in the sweep.
    #[arg(long, default_value_t = 1024)]
    pub max_k: usize,
    #[arg(long, default_value = "l1", value_parser = parse_prefetch)]
    pub prefetch: PrefetchLevel,
}

fn parse_sampler(s: &str) -> Result<SamplerKind, String> {
    s.parse()
}

fn parse_prefetch(s: &str) -> Result<PrefetchLevel, String> {
    s.parse()
}
