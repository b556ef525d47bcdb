//! Flow selection and the parallel executors.

use std::collections::VecDeque;
use std::io;
use std::ops::Range;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use crate::graph::{Graph, VertexId};
use crate::interleave::{
    strategy_for, MoveStrategy, PrefetchLevel, RingConfig, RingStats, SearchRing, SlotOutcome, StepEnv, TaskRing,
    TaskSlot,
};
use crate::sampler::SamplerKind;

use super::context::{gather_into, preprocess_static, StaticTable, TransitionContext};
use super::query::{Queries, QuerySpec};
use super::{EngineError, StepOutcome, WalkProgram, WalkRecord, WalkSet, WalkStatus, Walker, WalkerType};

/// Records handed from a worker to the output side at a time.
const CHUNK: usize = 4096;

#[derive(Clone, Copy, Debug)]
pub struct EngineOptions {
    /// Overrides the program's sampling method.
    pub sampler: Option<SamplerKind>,
    /// Preprocess unbiased and static programs once instead of gathering at
    /// every step.
    pub static_preprocessing: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        Self { sampler: None, static_preprocessing: true }
    }
}

/// How a step obtains its transition distribution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flow {
    /// NAIVE: no weights at all.
    Uniform,
    /// O-REJ: weights evaluated lazily under `max_weight`.
    OnDemand,
    /// Tables built once before any walk starts.
    Static,
    /// Gather and initialize at every step.
    Dynamic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Interleaved(RingConfig),
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub threads: usize,
    pub seed: u64,
    pub execution: Execution,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            threads: thread::available_parallelism().map_or(1, |n| n.get()),
            seed: 0,
            execution: Execution::Interleaved(RingConfig::default()),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RunStats {
    pub preprocess_time: Duration,
    /// From the start of the first worker to the end of the last one.
    pub execution_time: Duration,
    pub queries: u64,
    pub total_steps: u64,
    pub dead_ends: u64,
    pub ring: RingStats,
}

impl RunStats {
    /// Steps per second of execution time.
    pub fn throughput(&self) -> f64 {
        self.total_steps as f64 / self.execution_time.as_secs_f64().max(1e-9)
    }

    pub fn mean_steps(&self) -> f64 {
        if self.queries == 0 {
            0.0
        } else {
            self.total_steps as f64 / self.queries as f64
        }
    }
}

#[derive(Clone, Debug)]
pub struct WalkOutput {
    pub walks: WalkSet,
    pub stats: RunStats,
}

/// A program bound to a graph and a sampling method, with any preprocessing
/// already done.
pub struct Engine<'a> {
    graph: &'a Graph,
    program: &'a dyn WalkProgram,
    kind: SamplerKind,
    flow: Flow,
    strategy: &'static dyn MoveStrategy,
    table: Option<StaticTable>,
    max_weight: f64,
    preprocess_time: Duration,
}

impl<'a> Engine<'a> {
    pub fn new(graph: &'a Graph, program: &'a dyn WalkProgram, options: EngineOptions) -> Result<Self, EngineError> {
        let kind = options.sampler.unwrap_or_else(|| program.sampler());
        let walker_type = program.walker_type();
        let mut max_weight = f64::INFINITY;
        let flow = match kind {
            SamplerKind::Naive if walker_type != WalkerType::Unbiased => {
                return Err(EngineError::Config(format!(
                    "naive sampling needs an unbiased program, but {} is {walker_type:?}",
                    program.name()
                )));
            }
            SamplerKind::Naive => Flow::Uniform,
            SamplerKind::ORej => {
                max_weight = match program.max_weight() {
                    Some(m) if m.is_finite() && m > 0.0 => m,
                    Some(m) => {
                        return Err(EngineError::Config(format!(
                            "{} declares max_weight {m}; o-rej needs a positive finite bound",
                            program.name()
                        )));
                    }
                    None => {
                        return Err(EngineError::Config(format!(
                            "o-rej needs max_weight, which {} does not provide",
                            program.name()
                        )));
                    }
                };
                Flow::OnDemand
            }
            _ if walker_type != WalkerType::Dynamic && options.static_preprocessing => Flow::Static,
            _ => Flow::Dynamic,
        };
        let start = Instant::now();
        let table = if flow == Flow::Static { preprocess_static(graph, program, kind)? } else { None };
        let preprocess_time = start.elapsed();
        Ok(Self { graph, program, kind, flow, strategy: strategy_for(kind), table, max_weight, preprocess_time })
    }

    pub fn graph(&self) -> &'a Graph {
        self.graph
    }

    pub fn program(&self) -> &'a dyn WalkProgram {
        self.program
    }

    pub fn sampler(&self) -> SamplerKind {
        self.kind
    }

    pub fn flow(&self) -> Flow {
        self.flow
    }

    pub fn table(&self) -> Option<&StaticTable> {
        self.table.as_ref()
    }

    pub fn preprocess_time(&self) -> Duration {
        self.preprocess_time
    }

    pub fn env(&self, prefetch: PrefetchLevel) -> StepEnv<'_> {
        StepEnv {
            graph: self.graph,
            program: self.program,
            table: self.table.as_ref(),
            max_weight: self.max_weight,
            prefetch,
        }
    }

    /// Gathers if the flow needs it and selects the walker's next edge,
    /// without extending the path.
    pub fn move_walker(&self, walker: &mut Walker, ctx: &mut TransitionContext) -> Result<StepOutcome, EngineError> {
        self.move_with(&self.env(PrefetchLevel::Off), walker, ctx)
    }

    fn move_with(
        &self,
        env: &StepEnv<'_>,
        walker: &mut Walker,
        ctx: &mut TransitionContext,
    ) -> Result<StepOutcome, EngineError> {
        if self.flow == Flow::Dynamic {
            gather_into(self.graph, walker, self.program, ctx)?;
        }
        self.strategy.move_one(env, walker, ctx)
    }

    /// Runs one query to completion.
    pub fn walk(&self, id: u64, source: VertexId, global_seed: u64) -> Result<WalkRecord, EngineError> {
        let mut ctx = TransitionContext::new(self.kind);
        self.walk_with(&self.env(PrefetchLevel::Off), Walker::new(id, source, global_seed), &mut ctx)
    }

    fn walk_with(
        &self,
        env: &StepEnv<'_>,
        mut walker: Walker,
        ctx: &mut TransitionContext,
    ) -> Result<WalkRecord, EngineError> {
        let status = if self.program.finished_at_start(&walker) {
            WalkStatus::Complete
        } else {
            loop {
                match self.move_with(env, &mut walker, ctx)? {
                    StepOutcome::DeadEnd => break WalkStatus::DeadEnd,
                    StepOutcome::Moved(e) => {
                        walker.push(e.dst);
                        if self.program.update(self.graph, &mut walker, e) {
                            break WalkStatus::Complete;
                        }
                    }
                }
            }
        };
        Ok(WalkRecord { id: walker.id(), status, path: walker.into_path() })
    }

    /// Executes all queries and hands records to `sink` in query-id order.
    pub fn run(
        &self,
        queries: &Queries,
        options: &RunOptions,
        mut sink: impl FnMut(&[WalkRecord]) -> io::Result<()>,
    ) -> Result<RunStats, EngineError> {
        if options.threads == 0 {
            return Err(EngineError::Config("thread count must be at least 1".into()));
        }
        if let Execution::Interleaved(cfg) = options.execution {
            cfg.validate()?;
        }
        let workers = options.threads;
        let cancel = AtomicBool::new(false);
        let mut stats = RunStats { preprocess_time: self.preprocess_time, ..RunStats::default() };
        let start = Instant::now();
        let mut failure: Option<EngineError> = None;
        let mut finished = vec![None; workers];

        thread::scope(|scope| {
            let (tx, rx) = mpsc::sync_channel::<Message>(2 * workers);
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let tx = tx.clone();
                    let cancel = &cancel;
                    scope.spawn(move || {
                        let ids = queries.block(w, workers);
                        let mut send = |chunk: Vec<WalkRecord>| {
                            !cancel.load(Ordering::Relaxed) && tx.send(Message::Chunk(w, chunk)).is_ok()
                        };
                        let mut out = Reorder::new(ids.start, &mut send);
                        let result = match options.execution {
                            Execution::Sequential => self.sequential_worker(queries, ids, options.seed, &mut out),
                            Execution::Interleaved(cfg) => {
                                self.interleaved_worker(queries, ids, options.seed, cfg, &mut out)
                            }
                        };
                        let result = result.map(|ring| {
                            out.flush();
                            (Instant::now(), ring)
                        });
                        drop(out);
                        if result.is_err() {
                            cancel.store(true, Ordering::Relaxed);
                        }
                        let _ = tx.send(Message::Done(w, result));
                    })
                })
                .collect();
            drop(tx);

            let mut pending: Vec<VecDeque<Vec<WalkRecord>>> = vec![VecDeque::new(); workers];
            let mut done = vec![false; workers];
            let mut cur = 0;
            let mut emit = |chunk: &[WalkRecord], stats: &mut RunStats, failure: &mut Option<EngineError>| {
                if failure.is_some() {
                    return;
                }
                for r in chunk {
                    stats.queries += 1;
                    stats.total_steps += r.steps() as u64;
                    stats.dead_ends += u64::from(r.status == WalkStatus::DeadEnd);
                }
                if let Err(e) = sink(chunk) {
                    *failure = Some(EngineError::Output(e));
                    cancel.store(true, Ordering::Relaxed);
                }
            };
            for msg in rx.iter() {
                match msg {
                    Message::Chunk(w, chunk) if w == cur => emit(&chunk, &mut stats, &mut failure),
                    Message::Chunk(w, chunk) => pending[w].push_back(chunk),
                    Message::Done(w, result) => {
                        done[w] = true;
                        match result {
                            Ok((end, ring)) => {
                                finished[w] = Some(end);
                                stats.ring.merge(ring);
                            }
                            Err(e) => {
                                failure.get_or_insert(e);
                            }
                        }
                    }
                }
                while cur < workers && done[cur] {
                    cur += 1;
                    if cur < workers {
                        for chunk in std::mem::take(&mut pending[cur]) {
                            emit(&chunk, &mut stats, &mut failure);
                        }
                    }
                }
            }
            for h in handles {
                if h.join().is_err() {
                    failure.get_or_insert(EngineError::WorkerPanic);
                }
            }
        });

        if let Some(e) = failure {
            return Err(e);
        }
        if finished.iter().any(Option::is_none) {
            return Err(EngineError::WorkerPanic);
        }
        let last = finished.into_iter().flatten().max().unwrap_or(start);
        stats.execution_time = last.saturating_duration_since(start);
        Ok(stats)
    }

    /// Executes all queries and keeps every record in memory.
    pub fn collect(&self, queries: &Queries, options: &RunOptions) -> Result<WalkOutput, EngineError> {
        let mut records = Vec::with_capacity(queries.len());
        let stats = self.run(queries, options, |chunk| {
            records.extend_from_slice(chunk);
            Ok(())
        })?;
        Ok(WalkOutput { walks: WalkSet { records }, stats })
    }

    fn sequential_worker(
        &self,
        queries: &Queries,
        ids: Range<u64>,
        seed: u64,
        out: &mut Reorder<'_>,
    ) -> Result<RingStats, EngineError> {
        let env = self.env(PrefetchLevel::Off);
        let mut ctx = TransitionContext::new(self.kind);
        for id in ids {
            let record = self.walk_with(&env, Walker::new(id, queries.source(id), seed), &mut ctx)?;
            if !out.put(record) {
                break;
            }
        }
        Ok(RingStats::default())
    }

    /// Next admitted walker of the block; walkers that are finished before
    /// their first move go straight to the output.
    fn admit(&self, queries: &Queries, next: &mut Range<u64>, seed: u64, out: &mut Reorder<'_>) -> Option<Walker> {
        for id in next.by_ref() {
            let walker = Walker::new(id, queries.source(id), seed);
            if !self.program.finished_at_start(&walker) {
                return Some(walker);
            }
            out.put(WalkRecord { id, status: WalkStatus::Complete, path: walker.into_path() });
        }
        None
    }

    fn interleaved_worker(
        &self,
        queries: &Queries,
        mut ids: Range<u64>,
        seed: u64,
        cfg: RingConfig,
        out: &mut Reorder<'_>,
    ) -> Result<RingStats, EngineError> {
        let env = self.env(cfg.prefetch);
        let mut ring = TaskRing::new(cfg.k);
        let mut search = SearchRing::new(cfg.k_prime);
        while !ring.is_full() {
            match self.admit(queries, &mut ids, seed, out) {
                Some(w) => ring.push(TaskSlot::new(w, self.kind)),
                None => break,
            }
        }
        while !ring.is_empty() && out.is_open() {
            ring.begin_round();
            if self.flow == Flow::Dynamic {
                for s in ring.slots_mut() {
                    gather_into(self.graph, &s.walker, self.program, &mut s.ctx)?;
                }
            }
            self.strategy.move_group(&env, &mut ring, &mut search)?;
            let mut i = 0;
            while i < ring.len() {
                let slot = &mut ring.slots_mut()[i];
                let status = match slot.outcome {
                    SlotOutcome::Moved(e) => {
                        slot.walker.push(e.dst);
                        if !self.program.update(self.graph, &mut slot.walker, e) {
                            i += 1;
                            continue;
                        }
                        WalkStatus::Complete
                    }
                    SlotOutcome::DeadEnd => WalkStatus::DeadEnd,
                    SlotOutcome::Pending => unreachable!("move_group leaves no slot pending"),
                };
                let retired = match self.admit(queries, &mut ids, seed, out) {
                    Some(w) => {
                        i += 1;
                        ring.replace(i - 1, w)
                    }
                    None => ring.swap_remove(i).walker,
                };
                out.put(WalkRecord { id: retired.id(), status, path: retired.into_path() });
            }
        }
        Ok(RingStats { max_task_ring: ring.max_len(), max_search_ring: search.max_len() })
    }
}

type WorkerResult = Result<(Instant, RingStats), EngineError>;

enum Message {
    Chunk(usize, Vec<WalkRecord>),
    Done(usize, WorkerResult),
}

/// Restores query-id order within a worker's block and forwards records in
/// chunks.
struct Reorder<'s> {
    base: u64,
    window: VecDeque<Option<WalkRecord>>,
    chunk: Vec<WalkRecord>,
    send: &'s mut dyn FnMut(Vec<WalkRecord>) -> bool,
    open: bool,
}

impl<'s> Reorder<'s> {
    fn new(base: u64, send: &'s mut dyn FnMut(Vec<WalkRecord>) -> bool) -> Self {
        Self { base, window: VecDeque::new(), chunk: Vec::with_capacity(CHUNK), send, open: true }
    }

    fn is_open(&self) -> bool {
        self.open
    }

    /// Returns `false` once the receiving side is gone.
    fn put(&mut self, record: WalkRecord) -> bool {
        let i = (record.id - self.base) as usize;
        if i >= self.window.len() {
            self.window.resize(i + 1, None);
        }
        self.window[i] = Some(record);
        while matches!(self.window.front(), Some(Some(_))) {
            let r = self.window.pop_front().flatten().unwrap();
            self.base += 1;
            self.chunk.push(r);
            if self.chunk.len() >= CHUNK {
                self.flush();
            }
        }
        self.open
    }

    fn flush(&mut self) {
        if self.open && !self.chunk.is_empty() {
            let chunk = std::mem::replace(&mut self.chunk, Vec::with_capacity(CHUNK));
            self.open = (self.send)(chunk);
        }
    }
}

/// Runs every query with plain per-walker moves.
pub fn run_sequential(
    graph: &Graph,
    spec: &QuerySpec,
    program: &dyn WalkProgram,
    threads: usize,
    global_seed: u64,
) -> Result<WalkSet, EngineError> {
    let engine = Engine::new(graph, program, EngineOptions::default())?;
    let options = RunOptions { threads, seed: global_seed, execution: Execution::Sequential };
    Ok(engine.collect(&spec.resolve(graph)?, &options)?.walks)
}

/// Runs every query with stage-interleaved moves over rings of `ring.k` and
/// `ring.k_prime` slots.
pub fn run_interleaved(
    graph: &Graph,
    spec: &QuerySpec,
    program: &dyn WalkProgram,
    threads: usize,
    global_seed: u64,
    ring: RingConfig,
) -> Result<WalkSet, EngineError> {
    let engine = Engine::new(graph, program, EngineOptions::default())?;
    let options = RunOptions { threads, seed: global_seed, execution: Execution::Interleaved(ring) };
    Ok(engine.collect(&spec.resolve(graph)?, &options)?.walks)
}
