//! The stepped parallel SSSP solver.
//!
//! A solve walks through consecutive distance bands `[lb, ub)`. When a band
//! starts, every vertex closer than `lb` already has its final distance; the
//! band's rounds create exactly the shortest paths whose lengths fall inside
//! it. Each band has a selection threshold `st <= lb`:
//!
//! * settled vertices in `[lb - maxW, st]` *push*: they relax their arcs that
//!   land inside the band;
//! * settled vertices in `[st, lb)` are reached by *pull*: every unsettled vertex
//!   scans its arcs lighter than `ub - st` and relaxes itself from a neighbor in
//!   that range.
//!
//! Frontier vertices then relax, round by round, only the arcs whose new path
//! length falls inside the band. Adjacency lists are weight-sorted, so that
//! window is found with two binary searches.
//!
//! The first band is `[0, +inf)` with its upper end lowered after every round
//! to the tentative distance of the closest high-degree vertex. Later bands
//! are `[ub, ub + gap(ub))` with `gap` from [`StepSchedule::gap`] and the next
//! `st` from [`StepSchedule::compute_st`].

mod classify;
mod metrics;
mod state;

pub use classify::{classify_arc, classify_edges, EdgeClass};
pub use metrics::RunMetrics;
pub use state::{Frontier, FrontierMarks, SsspState};

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, PreparedGraph, VertexId, WeightQuantizer, DEFAULT_RATIO_NUM};
use crate::heuristics::{StepParams, StepSchedule};

pub const DEFAULT_FUSED: usize = 1 << 8;

/// Solver configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct EicConfig {
    pub params: StepParams,
    /// Quantile cells used when this config prepares a graph.
    pub ratio_num: usize,
    /// Rounds a worker may run on its own frontier between barriers while a
    /// band spans the full weight range. `1` disables fusion.
    pub fused: usize,
    pub workers: usize,
}

impl Default for EicConfig {
    fn default() -> Self {
        EicConfig {
            params: StepParams::default(),
            ratio_num: DEFAULT_RATIO_NUM,
            fused: DEFAULT_FUSED,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl EicConfig {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if self.workers == 0 {
            return Err(Error::Argument("workers must be positive".into()));
        }
        if self.fused == 0 {
            return Err(Error::Argument("fused must be positive".into()));
        }
        if self.ratio_num < 2 {
            return Err(Error::Argument("ratio_num must be at least 2".into()));
        }
        Ok(())
    }
}

/// One processed band.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepRecord {
    pub st: f64,
    pub lb: f64,
    /// Upper end after the band finished (the first band lowers it while running).
    pub ub: f64,
    /// `gap(lb)`; for the first band this is `gap(0)` even though its `ub` is
    /// found by the high-degree rule.
    pub gap: f64,
    pub synchronizations: u64,
}

impl StepRecord {
    /// True when the band ran a pull phase.
    pub fn pulled(&self) -> bool {
        self.st < self.lb
    }
}

/// Result of a solve.
#[derive(Clone, Debug)]
pub struct SolveOutput {
    pub dist: Vec<f64>,
    pub parent: Vec<Option<VertexId>>,
    pub metrics: RunMetrics,
    pub steps: Vec<StepRecord>,
}

/// What an observer sees at the end of every band.
pub struct Boundary<'a> {
    pub step: &'a StepRecord,
    pub state: &'a SsspState,
    pub schedule: &'a StepSchedule,
}

/// Solves from `source` with a throwaway worker pool.
pub fn solve(prepared: &PreparedGraph, source: VertexId, config: &EicConfig) -> Result<SolveOutput> {
    EicSolver::new(prepared, config.clone())?.solve(source)
}

/// A solver bound to one prepared graph and one worker pool, reusable across
/// sources.
pub struct EicSolver<'g> {
    prepared: &'g PreparedGraph,
    config: EicConfig,
    pool: rayon::ThreadPool,
}

impl<'g> EicSolver<'g> {
    pub fn new(prepared: &'g PreparedGraph, config: EicConfig) -> Result<Self> {
        config.validate()?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Error::Argument(format!("cannot start worker pool: {e}")))?;
        Ok(EicSolver {
            prepared,
            config,
            pool,
        })
    }

    pub fn config(&self) -> &EicConfig {
        &self.config
    }

    pub fn solve(&self, source: VertexId) -> Result<SolveOutput> {
        self.solve_observed(source, |_| {})
    }

    /// Solves and calls `observer` after every band, when no worker is running.
    pub fn solve_observed(
        &self,
        source: VertexId,
        observer: impl FnMut(&Boundary<'_>) + Send,
    ) -> Result<SolveOutput> {
        let n = self.prepared.graph.vertex_count();
        if source as usize >= n {
            return Err(Error::Argument(format!(
                "source {source} out of range for {n} vertices"
            )));
        }
        let mut run = Run::new(self, source);
        self.pool.install(|| run.execute(observer))?;
        Ok(SolveOutput {
            dist: run.state.distances(),
            parent: run.state.parents(),
            metrics: run.metrics,
            steps: run.steps,
        })
    }
}

type PathEntry = (VertexId, f64, Option<VertexId>);

/// Per-worker results of a round.
struct Local {
    next: Vec<VertexId>,
    scratch: Vec<VertexId>,
    reached: Vec<VertexId>,
    traversals: u64,
    attempts: u64,
    successes: u64,
    extended: u64,
    /// Smallest new distance written to a high-degree vertex.
    hub: f64,
}

impl Local {
    fn new() -> Self {
        Local {
            next: Vec::new(),
            scratch: Vec::new(),
            reached: Vec::new(),
            traversals: 0,
            attempts: 0,
            successes: 0,
            extended: 0,
            hub: f64::INFINITY,
        }
    }

    fn merge(mut self, mut other: Local) -> Local {
        if self.next.len() < other.next.len() {
            std::mem::swap(&mut self.next, &mut other.next);
        }
        self.next.append(&mut other.next);
        self.reached.append(&mut other.reached);
        self.traversals += other.traversals;
        self.attempts += other.attempts;
        self.successes += other.successes;
        self.extended += other.extended;
        self.hub = self.hub.min(other.hub);
        self
    }
}

#[derive(Clone, Copy)]
enum Sink {
    /// Claim the vertex in the shared frontier marks.
    Shared,
    /// Keep it in the worker's own list (fused rounds).
    Own,
}

struct Run<'s> {
    graph: &'s Graph,
    quantizer: &'s WeightQuantizer,
    fused: usize,
    workers: usize,
    source: VertexId,
    high_d0: u32,
    state: SsspState,
    marks: FrontierMarks,
    reached: Vec<AtomicBool>,
    last_extended: Vec<AtomicU64>,
    /// Reached but not yet settled.
    pending: Vec<VertexId>,
    /// Settled `(dist, vertex)`, ascending.
    settled: Vec<(f64, VertexId)>,
    is_settled: Vec<bool>,
    /// Unsettled vertices that have arcs; the pull phase scans these.
    unsettled: Vec<VertexId>,
    schedule: StepSchedule,
    metrics: RunMetrics,
    steps: Vec<StepRecord>,
}

impl<'s> Run<'s> {
    fn new(solver: &'s EicSolver<'_>, source: VertexId) -> Self {
        let prepared = solver.prepared;
        let graph = &prepared.graph;
        let n = graph.vertex_count();
        let state = SsspState::new(n);
        state.init_source(source);
        let reached: Vec<AtomicBool> = (0..n).map(|_| AtomicBool::new(false)).collect();
        reached[source as usize].store(true, Ordering::Relaxed);
        Run {
            graph,
            quantizer: &prepared.quantizer,
            fused: solver.config.fused,
            workers: solver.config.workers,
            source,
            high_d0: prepared.degrees.high_d0,
            state,
            marks: FrontierMarks::new(n),
            reached,
            last_extended: (0..n).map(|_| AtomicU64::new(u64::MAX)).collect(),
            pending: vec![source],
            settled: Vec::new(),
            is_settled: vec![false; n],
            unsettled: (0..n as VertexId).filter(|&u| graph.degree(u) > 0).collect(),
            schedule: StepSchedule::new(&prepared.degrees, solver.config.params),
            metrics: RunMetrics::default(),
            steps: Vec::new(),
        }
    }

    fn execute(&mut self, mut observer: impl FnMut(&Boundary<'_>)) -> Result<()> {
        let max_w = self.quantizer.max_weight();
        let (mut st, mut lb, mut ub) = (0.0, 0.0, f64::INFINITY);
        let mut gap_lb = self.schedule.gap(self.quantizer, 0.0).unwrap_or(max_w);
        let mut first = true;
        loop {
            self.metrics.steps += 1;
            let syncs_before = self.metrics.synchronizations;
            let frontier = self.init_frontiers(st, lb, ub);
            ub = self.run_step(frontier, lb, ub, first, gap_lb == max_w);
            self.settle(ub);
            if first {
                let st0 = if self.graph.degree(self.source) as u32 >= self.high_d0 {
                    0.0
                } else {
                    ub
                };
                self.schedule.set_st0(st0);
            }
            let record = StepRecord {
                st,
                lb,
                ub,
                gap: gap_lb,
                synchronizations: self.metrics.synchronizations - syncs_before,
            };
            self.steps.push(record);
            observer(&Boundary {
                step: &record,
                state: &self.state,
                schedule: &self.schedule,
            });

            // Anything still unreached would be at least `ub` away, but no
            // vertex can be more than one edge beyond the farthest reached one.
            if self.max_finite_dist() + max_w < ub || self.schedule.unsettled_degree_sum() == 0 {
                return Ok(());
            }
            let next_st = self.schedule.compute_st(lb, ub, self.quantizer)?;
            let gap_ub = match self.schedule.recorded_gap(ub) {
                Some(g) => g,
                None => self.schedule.gap(self.quantizer, ub)?,
            };
            (st, lb, ub) = (next_st, ub, ub + gap_ub);
            gap_lb = gap_ub;
            first = false;
        }
    }

    fn max_finite_dist(&self) -> f64 {
        let settled = self.settled.last().map_or(0.0, |&(d, _)| d);
        self.pending
            .iter()
            .map(|&v| self.state.dist(v))
            .fold(settled, f64::max)
    }

    /// Builds the band's first frontier and, when `st < lb`, runs the pull phase.
    fn init_frontiers(&mut self, st: f64, lb: f64, ub: f64) -> Vec<VertexId> {
        // `d + maxW < lb` rather than `d < lb - maxW`: the window in `extend`
        // adds, and a subtraction rounded the other way can drop the last pusher
        let max_w = self.quantizer.max_weight();
        let lo = self.settled.partition_point(|&(d, _)| d + max_w < lb);
        let hi = self.settled.partition_point(|&(d, _)| d <= st).max(lo);
        let mut frontier: Vec<VertexId> = self.settled[lo..hi].iter().map(|&(_, v)| v).collect();
        if st < lb {
            self.pull(st, lb, ub);
        }
        let state = &self.state;
        frontier.extend(self.pending.iter().copied().filter(|&v| {
            let d = state.dist(v);
            d >= lb && d < ub
        }));
        frontier
    }

    /// Every unsettled vertex asks its light neighbors settled in `[st, lb)`
    /// for a path into the band.
    fn pull(&mut self, st: f64, lb: f64, ub: f64) {
        let (graph, state, reached) = (self.graph, &self.state, &self.reached);
        let local = self
            .unsettled
            .par_iter()
            .with_min_len(64)
            .fold(Local::new, |mut local, &u| {
                if state.dist(u) <= lb {
                    return local;
                }
                let weights = graph.arc_weights(u);
                let targets = graph.neighbors(u);
                let k = weights.partition_point(|&w| st + w < ub);
                local.traversals += k as u64;
                for i in 0..k {
                    let dv = state.dist(targets[i]);
                    let candidate = dv + weights[i];
                    if st <= dv && dv < lb && candidate < ub {
                        local.attempts += 1;
                        if state.relax_min(u, candidate, targets[i]) {
                            local.successes += 1;
                        }
                    }
                }
                if state.dist(u) < f64::INFINITY && !reached[u as usize].swap(true, Ordering::AcqRel) {
                    local.reached.push(u);
                }
                local
            })
            .reduce(Local::new, Local::merge);
        self.metrics.synchronizations += 1;
        self.absorb(local);
    }

    fn absorb(&mut self, mut local: Local) -> Vec<VertexId> {
        self.metrics.traversals += local.traversals;
        self.metrics.relax_attempts += local.attempts;
        self.metrics.relax_successes += local.successes;
        self.metrics.extended_paths += local.extended;
        self.pending.append(&mut local.reached);
        local.next
    }

    /// Rounds of relaxation until the band's frontier runs dry. Returns the
    /// band's final upper end.
    fn run_step(&mut self, frontier: Vec<VertexId>, lb: f64, mut ub: f64, first: bool, fuse: bool) -> f64 {
        let mut current = frontier;
        while !current.is_empty() {
            let paths = self.snapshot_paths(&current);
            if paths.is_empty() {
                break;
            }
            self.marks.next_round();
            let local = if fuse && self.fused > 1 {
                self.fused_round(&paths, lb, ub, first)
            } else {
                self.round(&paths, lb, ub, first)
            };
            self.metrics.synchronizations += 1;
            if first {
                ub = ub.min(local.hub);
            }
            current = self.absorb(local);
        }
        ub
    }

    /// Reads `(dist, parent)` of each frontier vertex before the round starts,
    /// dropping vertices whose paths cannot go anywhere new: isolated ones and
    /// non-source leaves (their only arc leads back to their parent).
    fn snapshot_paths(&mut self, frontier: &[VertexId]) -> Vec<PathEntry> {
        let (graph, state, last) = (self.graph, &self.state, &self.last_extended);
        let (paths, extended): (Vec<PathEntry>, Vec<bool>) = frontier
            .par_iter()
            .with_min_len(256)
            .filter_map(|&u| snapshot_one(graph, state, last, u))
            .unzip();
        self.metrics.extended_paths += extended.iter().filter(|&&e| e).count() as u64;
        paths
    }

    fn round(&self, paths: &[PathEntry], lb: f64, ub: f64, track_hubs: bool) -> Local {
        paths
            .par_iter()
            .with_min_len(32)
            .fold(Local::new, |mut local, &(u, du, parent)| {
                self.extend(u, du, parent, lb, ub, track_hubs, Sink::Shared, &mut local);
                local
            })
            .reduce(Local::new, Local::merge)
    }

    /// Bucket fusion: each worker keeps extending the paths it created itself,
    /// up to `fused` rounds, before meeting the others at a barrier.
    fn fused_round(&self, paths: &[PathEntry], lb: f64, ub: f64, track_hubs: bool) -> Local {
        let chunk = paths.len().div_ceil(self.workers).max(1);
        paths
            .par_chunks(chunk)
            .map(|chunk| {
                let mut local = Local::new();
                let mut current = chunk.to_vec();
                let mut local_ub = ub;
                for iteration in 0..self.fused {
                    for &(u, du, parent) in &current {
                        self.extend(u, du, parent, lb, local_ub, track_hubs, Sink::Own, &mut local);
                    }
                    if track_hubs {
                        local_ub = local_ub.min(local.hub);
                    }
                    let mut produced = std::mem::take(&mut local.scratch);
                    if iteration + 1 == self.fused {
                        local
                            .next
                            .extend(produced.into_iter().filter(|&v| self.marks.insert(v)));
                        break;
                    }
                    produced.sort_unstable();
                    produced.dedup();
                    current.clear();
                    for v in produced {
                        if let Some((entry, new)) =
                            snapshot_one(self.graph, &self.state, &self.last_extended, v)
                        {
                            local.extended += new as u64;
                            current.push(entry);
                        }
                    }
                    if current.is_empty() {
                        break;
                    }
                }
                local
            })
            .reduce(Local::new, Local::merge)
    }

    /// Relaxes the arcs of `u` whose new path length lands in `[lb, ub)`.
    #[allow(clippy::too_many_arguments)]
    #[inline]
    fn extend(
        &self,
        u: VertexId,
        du: f64,
        parent: Option<VertexId>,
        lb: f64,
        ub: f64,
        track_hubs: bool,
        sink: Sink,
        local: &mut Local,
    ) {
        let weights = self.graph.arc_weights(u);
        let targets = self.graph.neighbors(u);
        let lo = weights.partition_point(|&w| du + w < lb);
        let hi = if ub == f64::INFINITY {
            weights.len()
        } else {
            lo + weights[lo..].partition_point(|&w| du + w < ub)
        };
        local.traversals += (hi - lo) as u64;
        for i in lo..hi {
            let v = targets[i];
            if Some(v) == parent {
                continue;
            }
            let candidate = du + weights[i];
            local.attempts += 1;
            if !self.state.relax_min(v, candidate, u) {
                continue;
            }
            local.successes += 1;
            if !self.reached[v as usize].swap(true, Ordering::AcqRel) {
                local.reached.push(v);
            }
            if track_hubs && v != self.source && self.graph.degree(v) as u32 >= self.high_d0 {
                local.hub = local.hub.min(candidate);
            }
            match sink {
                Sink::Shared => {
                    if self.marks.insert(v) {
                        local.next.push(v);
                    }
                }
                Sink::Own => local.scratch.push(v),
            }
        }
    }

    /// Moves every pending vertex closer than `ub` into the settled list.
    fn settle(&mut self, ub: f64) {
        let state = &self.state;
        let mut band = Vec::new();
        self.pending.retain(|&v| {
            let d = state.dist(v);
            if d < ub {
                band.push((d, v));
                false
            } else {
                true
            }
        });
        band.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        for &(_, v) in &band {
            self.is_settled[v as usize] = true;
        }
        let masses = band
            .iter()
            .map(|&(d, v)| (d, self.graph.degree(v) as u32))
            .collect();
        self.schedule.settle(masses, ub);
        self.settled.extend(band);
        let is_settled = &self.is_settled;
        self.unsettled.retain(|&v| !is_settled[v as usize]);
    }
}

/// Snapshot of one frontier vertex; the flag says whether this distance has
/// not been extended before.
#[inline]
fn snapshot_one(
    graph: &Graph,
    state: &SsspState,
    last_extended: &[AtomicU64],
    u: VertexId,
) -> Option<(PathEntry, bool)> {
    let degree = graph.degree(u);
    let (du, parent) = state.entry(u);
    if degree == 0 || (degree == 1 && du > 0.0) {
        return None;
    }
    let bits = du.to_bits();
    let new = last_extended[u as usize].swap(bits, Ordering::AcqRel) != bits;
    Some(((u, du, parent), new))
}

#[cfg(test)]
mod tests;
