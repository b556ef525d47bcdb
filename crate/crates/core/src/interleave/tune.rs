//! Empirical ring-size tuning.
//!
//! The probe workload starts one query of ten vertices from every vertex.
//! Phase one sweeps `k` over powers of two under NAIVE and ALIAS, which have
//! no cycle stages. Phase two fixes the best `k` and sweeps `k'` over powers
//! of two under ITS, REJ and O-REJ.

use std::fmt;
use std::thread;
use std::time::{Duration, Instant};

use log::{info, warn};

use crate::algorithms::{DeepWalk, UniformWalk};
use crate::engine::{Engine, EngineError, EngineOptions, Execution, Queries, RunOptions, WalkProgram};
use crate::graph::{Graph, VertexId};
use crate::sampler::SamplerKind;

use super::{PrefetchLevel, RingConfig};

#[derive(Clone, Copy, Debug)]
pub struct TuneOptions {
    pub threads: usize,
    pub budget: Duration,
    pub seed: u64,
    /// Probe walk length in vertices.
    pub length: usize,
    pub max_k: usize,
    pub prefetch: PrefetchLevel,
}

impl Default for TuneOptions {
    fn default() -> Self {
        Self {
            threads: thread::available_parallelism().map_or(1, |n| n.get()),
            budget: Duration::from_secs(240),
            seed: 1,
            length: 10,
            max_k: 1024,
            prefetch: PrefetchLevel::L1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TuneRow {
    pub size: usize,
    /// Steps per second over all probe runs at this size.
    pub throughput: f64,
}

#[derive(Clone, Debug)]
pub struct TuneReport {
    pub k_sweep: Vec<TuneRow>,
    pub k_prime_sweep: Vec<TuneRow>,
    pub k_star: usize,
    pub k_prime_star: usize,
    /// The budget ran out before both sweeps finished.
    pub budget_exhausted: bool,
    pub elapsed: Duration,
}

impl TuneReport {
    pub fn recommended(&self) -> RingConfig {
        RingConfig::new(self.k_star, self.k_prime_star)
    }
}

impl fmt::Display for TuneReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# phase 1: k sweep (naive, alias)")?;
        writeln!(f, "k\tthroughput_steps_per_sec")?;
        for r in &self.k_sweep {
            writeln!(f, "{}\t{:.0}", r.size, r.throughput)?;
        }
        writeln!(f, "# phase 2: k' sweep at k = {} (its, rej, orej)", self.k_star)?;
        writeln!(f, "k'\tthroughput_steps_per_sec")?;
        for r in &self.k_prime_sweep {
            writeln!(f, "{}\t{:.0}", r.size, r.throughput)?;
        }
        if self.budget_exhausted {
            writeln!(f, "# warning: budget exhausted, result is the best so far")?;
        }
        write!(f, "recommended k={} k'={}", self.k_star, self.k_prime_star)
    }
}

fn powers_of_two(max: usize) -> impl Iterator<Item = usize> {
    std::iter::successors(Some(1usize), |&k| k.checked_mul(2)).take_while(move |&k| k <= max)
}

fn best(rows: &[TuneRow]) -> Option<usize> {
    rows.iter().max_by(|a, b| a.throughput.total_cmp(&b.throughput)).map(|r| r.size)
}

/// Sweeps ring sizes on `graph` and recommends `(k*, k'*)` with `k'* <= k*`.
pub fn tune_ring_sizes(graph: &Graph, options: &TuneOptions) -> Result<TuneReport, EngineError> {
    let start = Instant::now();
    let queries = Queries::from_sources((0..graph.vertex_count() as VertexId).collect());
    let uniform = UniformWalk::new(options.length)?;
    let deepwalk = DeepWalk::new(graph, options.length, graph.weights().is_some())?;
    fn engine<'a>(graph: &'a Graph, program: &'a dyn WalkProgram, kind: SamplerKind) -> Result<Engine<'a>, EngineError> {
        Engine::new(graph, program, EngineOptions { sampler: Some(kind), static_preprocessing: true })
    }
    let phase1 = [engine(graph, &uniform, SamplerKind::Naive)?, engine(graph, &deepwalk, SamplerKind::Alias)?];
    let phase2 = [
        engine(graph, &deepwalk, SamplerKind::Its)?,
        engine(graph, &deepwalk, SamplerKind::Rej)?,
        engine(graph, &deepwalk, SamplerKind::ORej)?,
    ];

    let mut exhausted = false;
    let mut measure = |engines: &[Engine<'_>], ring: RingConfig| -> Result<Option<f64>, EngineError> {
        if start.elapsed() >= options.budget {
            exhausted = true;
            return Ok(None);
        }
        let run = RunOptions { threads: options.threads, seed: options.seed, execution: Execution::Interleaved(ring) };
        let (mut steps, mut secs) = (0u64, 0.0);
        for e in engines {
            let stats = e.run(&queries, &run, |_| Ok(()))?;
            steps += stats.total_steps;
            secs += stats.execution_time.as_secs_f64();
        }
        Ok(Some(steps as f64 / secs.max(1e-9)))
    };

    let mut k_sweep = Vec::new();
    for k in powers_of_two(options.max_k.max(1)) {
        let ring = RingConfig { k, k_prime: k, prefetch: options.prefetch };
        match measure(&phase1, ring)? {
            Some(throughput) => {
                info!("k={k}: {throughput:.0} steps/s");
                k_sweep.push(TuneRow { size: k, throughput });
            }
            None => break,
        }
    }
    let k_star = best(&k_sweep).unwrap_or(1);

    let mut k_prime_sweep = Vec::new();
    for k_prime in powers_of_two(k_star) {
        let ring = RingConfig { k: k_star, k_prime, prefetch: options.prefetch };
        match measure(&phase2, ring)? {
            Some(throughput) => {
                info!("k'={k_prime}: {throughput:.0} steps/s");
                k_prime_sweep.push(TuneRow { size: k_prime, throughput });
            }
            None => break,
        }
    }
    let k_prime_star = best(&k_prime_sweep).unwrap_or(1).min(k_star);
    if exhausted {
        warn!("tuning budget of {:?} exhausted; reporting the best sizes so far", options.budget);
    }
    Ok(TuneReport {
        k_sweep,
        k_prime_sweep,
        k_star,
        k_prime_star,
        budget_exhausted: exhausted,
        elapsed: start.elapsed(),
    })
}
