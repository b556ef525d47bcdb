use std::fs::{self, File};
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;
use std::thread;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use log::info;
use walkforge::algorithms::{MetaPathSchema, ProgramParams, ProgramRegistry};
use walkforge::engine::{Engine, EngineOptions, Execution, QuerySpec, RunOptions, RunStats};
use walkforge::graph::{
    load_edge_list, read_binary, write_binary, Directedness, Graph, LabelMode, LoadOptions, WeightMode, MAGIC,
};
use walkforge::interleave::{tune_ring_sizes, RingConfig, TuneOptions, TuneReport};

use crate::args::{ConvertArgs, Format, QueryMode, RunArgs, Switch, TuneArgs, WeightSource, Weighted};
use crate::writer::{OutputFormat, WalkWriter};

/// Reads a WFG1 file, or a directed, unweighted text edge list otherwise.
pub fn load_graph(path: &Path) -> Result<Graph> {
    let mut magic = [0u8; 4];
    let is_binary = File::open(path)
        .with_context(|| format!("cannot open {}", path.display()))?
        .read_exact(&mut magic)
        .is_ok()
        && magic == MAGIC;
    let start = Instant::now();
    let graph = if is_binary {
        read_binary(path)?
    } else {
        load_edge_list(path, &LoadOptions::default())?.graph
    };
    info!(
        "loaded {} ({} vertices, {} edges) in {:.3} s",
        path.display(),
        graph.vertex_count(),
        graph.edge_count(),
        start.elapsed().as_secs_f64()
    );
    Ok(graph)
}

fn default_threads(threads: Option<usize>) -> usize {
    threads.unwrap_or_else(|| thread::available_parallelism().map_or(1, |n| n.get()))
}

pub fn convert(args: &ConvertArgs, out: &mut impl Write) -> Result<()> {
    let label_mode = match args.labels.as_deref() {
        None => LabelMode::None,
        Some("file") => LabelMode::FromFile,
        Some(k) => match k.parse::<u32>() {
            Ok(k) if k > 0 => LabelMode::RandomK(k),
            _ => bail!("--labels expects `file` or a positive label count, got `{k}`"),
        },
    };
    let opts = LoadOptions {
        directedness: if args.undirected { Directedness::Undirected } else { Directedness::Directed },
        weight_mode: match args.weights {
            WeightSource::None => WeightMode::None,
            WeightSource::File => WeightMode::FromFile,
            WeightSource::Random => WeightMode::UniformRandom,
        },
        label_mode,
        seed: args.seed,
        remap_ids: args.remap_ids,
    };
    let loaded = load_edge_list(&args.input, &opts).with_context(|| format!("reading {}", args.input.display()))?;
    write_binary(&loaded.graph, &args.output).with_context(|| format!("writing {}", args.output.display()))?;
    if let (Some(path), Some(map)) = (&args.id_map, &loaded.id_map) {
        let mut w = BufWriter::new(File::create(path)?);
        for (dense, original) in map.iter().enumerate() {
            writeln!(w, "{dense}\t{original}")?;
        }
        w.flush()?;
    }
    let g = &loaded.graph;
    let stats = g.stats();
    writeln!(out, "V={} E={}", g.vertex_count(), g.edge_count())?;
    writeln!(out, "d_avg={:.2} d_max={}", stats.d_avg, stats.d_max)?;
    Ok(())
}

/// What `run` reports besides the walks.
#[derive(Clone, Debug)]
pub struct RunSummary {
    pub algorithm: String,
    pub stats: RunStats,
}

pub fn run(args: &RunArgs, out: &mut impl Write) -> Result<RunSummary> {
    let graph = load_graph(&args.graph)?;
    let mut params = ProgramParams {
        termination: args.termination_prob,
        length: args.length,
        a: args.a,
        b: args.b,
        weighted: match args.weighted {
            Weighted::Auto => None,
            Weighted::On => Some(true),
            Weighted::Off => Some(false),
        },
        schema: args.schema.clone(),
    };
    if args.algorithm == "metapath" && params.schema.is_empty() {
        params.schema = MetaPathSchema::random(&graph, 5, args.seed)?.labels().to_vec();
        info!("metapath schema {:?}", params.schema);
    }
    let program = ProgramRegistry::builtin().build(&args.algorithm, &graph, &params)?;
    let spec = match args.queries.unwrap_or(if args.algorithm == "ppr" {
        QueryMode::FromSource
    } else {
        QueryMode::OnePerVertex
    }) {
        QueryMode::OnePerVertex => QuerySpec::OnePerVertex,
        QueryMode::FromSource => QuerySpec::FromSource {
            source: args.source,
            count: args.count.unwrap_or(graph.vertex_count() as u64),
        },
        QueryMode::FromFile => {
            let path = args.query_file.as_ref().context("--queries from-file needs --query-file")?;
            QuerySpec::read_file(path).with_context(|| format!("reading {}", path.display()))?
        }
    };
    let queries = spec.resolve(&graph)?;
    let ring = RingConfig { k: args.k, k_prime: args.k_prime, prefetch: args.prefetch };
    let execution = match args.interleave {
        Switch::On => Execution::Interleaved(ring),
        Switch::Off => Execution::Sequential,
    };
    let options = RunOptions { threads: default_threads(args.threads), seed: args.seed, execution };
    if let Execution::Interleaved(ring) = execution {
        ring.validate()?;
    }
    if options.threads == 0 {
        bail!("--threads must be at least 1");
    }
    let engine = Engine::new(
        &graph,
        program.as_ref(),
        EngineOptions { sampler: args.sampler, static_preprocessing: !args.no_preprocess },
    )?;

    let format = match args.format {
        Format::Text => OutputFormat::Text,
        Format::Binary => OutputFormat::Binary,
    };
    let sink: Option<Box<dyn Write + Send>> = match &args.output {
        None => None,
        Some(p) if p.as_os_str() == "-" => Some(Box::new(io::stdout())),
        Some(p) => Some(Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
    };
    let stats = match sink {
        Some(sink) => {
            let mut writer = WalkWriter::new(sink, format, args.buffer_bytes)?;
            let stats = engine.run(&queries, &options, |chunk| writer.write_records(chunk))?;
            writer.finish().context("writing walks")?;
            stats
        }
        None => engine.run(&queries, &options, |_| Ok(()))?,
    };

    let interleave = match execution {
        Execution::Interleaved(r) => format!("on (k={}, k'={}, prefetch={})", r.k, r.k_prime, r.prefetch),
        Execution::Sequential => "off".into(),
    };
    writeln!(out, "algorithm: {}", args.algorithm)?;
    writeln!(out, "sampler: {}", engine.sampler())?;
    writeln!(out, "flow: {:?}", engine.flow())?;
    writeln!(out, "interleave: {interleave}")?;
    writeln!(out, "threads: {}", options.threads)?;
    writeln!(out, "preprocessing time: {:.6} s", stats.preprocess_time.as_secs_f64())?;
    writeln!(out, "execution time: {:.6} s", stats.execution_time.as_secs_f64())?;
    writeln!(out, "queries: {}", stats.queries)?;
    writeln!(out, "total steps: {}", stats.total_steps)?;
    writeln!(out, "dead ends: {}", stats.dead_ends)?;
    writeln!(out, "mean steps: {:.4}", stats.mean_steps())?;
    writeln!(out, "throughput: {:.0} steps/s", stats.throughput())?;
    Ok(RunSummary { algorithm: args.algorithm.clone(), stats })
}

pub fn tune(args: &TuneArgs, out: &mut impl Write) -> Result<TuneReport> {
    if !(args.budget.is_finite() && args.budget >= 0.0) {
        bail!("--budget must be a non-negative number of seconds");
    }
    if args.max_k == 0 {
        bail!("--max-k must be at least 1");
    }
    let graph = load_graph(&args.graph)?;
    let options = TuneOptions {
        threads: default_threads(args.threads),
        budget: Duration::from_secs_f64(args.budget),
        seed: args.seed,
        max_k: args.max_k,
        prefetch: args.prefetch,
        ..TuneOptions::default()
    };
    let report = tune_ring_sizes(&graph, &options)?;
    writeln!(out, "{report}")?;
    writeln!(out, "tuning time: {:.3} s", report.elapsed.as_secs_f64())?;
    Ok(report)
}

/// Reads a text walk file back into `(id, status, path)` triples.
pub fn read_text_walks(path: &Path) -> Result<Vec<(u64, String, Vec<u32>)>> {
    let text = fs::read_to_string(path)?;
    text.lines()
        .map(|line| {
            let mut cols = line.split('\t');
            let id = cols.next().context("missing id")?.parse()?;
            let status = cols.next().context("missing status")?.to_string();
            let path = cols
                .next()
                .context("missing path")?
                .split(' ')
                .map(|v| v.parse::<u32>().map_err(Into::into))
                .collect::<Result<Vec<_>>>()?;
            Ok((id, status, path))
        })
        .collect()
}
