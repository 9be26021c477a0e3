//! Trial runner, normalized metrics and CSV output.

use std::io::{Read, Write};
use std::str::FromStr;
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, PreparedGraph, VertexId};
use crate::reference::{bellman_ford, delta_stepping, dijkstra, min_hop_counts, OracleResult};
use crate::solver::{EicConfig, EicSolver};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Algo {
    Eic,
    Dijkstra,
    BellmanFord,
    /// Delta-stepping; `None` picks half the largest weight.
    Delta(Option<f64>),
}

impl Algo {
    pub fn name(&self) -> &'static str {
        match self {
            Algo::Eic => "eic",
            Algo::Dijkstra => "dijkstra",
            Algo::BellmanFord => "bf",
            Algo::Delta(_) => "delta",
        }
    }

    fn is_baseline(&self) -> bool {
        !matches!(self, Algo::Eic)
    }
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eic" => Ok(Algo::Eic),
            "dijkstra" => Ok(Algo::Dijkstra),
            "bf" | "bellman-ford" | "bellman_ford" => Ok(Algo::BellmanFord),
            "delta" => Ok(Algo::Delta(None)),
            _ => Err(Error::Argument(format!("unknown algorithm {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct BenchConfig {
    pub eic: EicConfig,
    /// Check every trial against Dijkstra.
    pub verify: bool,
}

/// One trial, or (with `source == None`) the average of several. Counters
/// are kept as floats so averages fit in the same shape.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialReport {
    pub graph: String,
    pub source: Option<VertexId>,
    pub algorithm: String,
    pub workers: usize,
    pub wall_ms: f64,
    pub preprocess_ms: f64,
    pub extended_paths: f64,
    pub synchronizations: f64,
    pub traversals: f64,
    pub reachable_count: f64,
    pub reachable_nonleaf_count: f64,
    pub n_frontier: f64,
    pub n_sync: f64,
    pub n_trav: f64,
    pub dist_checksum: f64,
    pub reached_count: f64,
}

pub const CSV_COLUMNS: [&str; 16] = [
    "graph",
    "source",
    "algorithm",
    "workers",
    "wall_ms",
    "preprocess_ms",
    "extended_paths",
    "synchronizations",
    "traversals",
    "reachable_count",
    "reachable_nonleaf_count",
    "n_frontier",
    "n_sync",
    "n_trav",
    "dist_checksum",
    "reached_count",
];

impl TrialReport {
    fn numbers(&self) -> [f64; 12] {
        [
            self.wall_ms,
            self.preprocess_ms,
            self.extended_paths,
            self.synchronizations,
            self.traversals,
            self.reachable_count,
            self.reachable_nonleaf_count,
            self.n_frontier,
            self.n_sync,
            self.n_trav,
            self.dist_checksum,
            self.reached_count,
        ]
    }

    fn set_numbers(&mut self, x: [f64; 12]) {
        [
            self.wall_ms,
            self.preprocess_ms,
            self.extended_paths,
            self.synchronizations,
            self.traversals,
            self.reachable_count,
            self.reachable_nonleaf_count,
            self.n_frontier,
            self.n_sync,
            self.n_trav,
            self.dist_checksum,
            self.reached_count,
        ] = x;
    }

    /// Column-wise arithmetic mean; `None` for an empty slice.
    pub fn average(reports: &[TrialReport]) -> Option<TrialReport> {
        let first = reports.first()?;
        let mut sums = [0.0; 12];
        for r in reports {
            for (s, x) in sums.iter_mut().zip(r.numbers()) {
                *s += x;
            }
        }
        let mut avg = first.clone();
        avg.source = None;
        avg.set_numbers(sums.map(|s| s / reports.len() as f64));
        Some(avg)
    }
}

/// Trials of one algorithm and their average.
#[derive(Clone, Debug)]
pub struct TrialSet {
    pub trials: Vec<TrialReport>,
    pub average: Option<TrialReport>,
    /// Set when the graph had fewer non-isolated vertices than trials.
    pub with_replacement: bool,
}

/// `log2 |V|` with `|V|` the declared vertex count, at least 1.
pub fn sync_normalizer(graph: &Graph) -> f64 {
    (graph.vertex_count() as f64).log2().max(1.0)
}

/// Largest number of edges on a shortest path (the fewest-edge one per
/// vertex), over `log2 |V|`. No round-synchronous solver can finish in fewer
/// normalized synchronizations.
pub fn normalized_max_edge_count(graph: &Graph, source: VertexId, dist: &[f64]) -> f64 {
    let hops = min_hop_counts(graph, source, dist);
    hops.into_iter().flatten().max().unwrap_or(0) as f64 / sync_normalizer(graph)
}

/// Draws `count` sources among vertices with at least one edge: distinct
/// when possible, with replacement otherwise.
pub fn sample_sources(graph: &Graph, count: usize, seed: u64) -> (Vec<VertexId>, bool) {
    let candidates: Vec<VertexId> = (0..graph.vertex_count() as VertexId)
        .filter(|&u| graph.degree(u) > 0)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if candidates.is_empty() {
        return (Vec::new(), false);
    }
    if candidates.len() >= count {
        let picks = sample(&mut rng, candidates.len(), count);
        (picks.into_iter().map(|i| candidates[i]).collect(), false)
    } else {
        let picks = (0..count)
            .map(|_| candidates[rng.gen_range(0..candidates.len())])
            .collect();
        (picks, true)
    }
}

fn distances_match(a: f64, b: f64, exact: bool) -> bool {
    if a == b {
        return true;
    }
    !exact && a.is_finite() && b.is_finite() && (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}

/// First vertex where `got` and `expected` disagree: exact comparison on
/// integer-weight graphs, 1e-12 relative otherwise.
pub fn first_mismatch(graph: &Graph, got: &[f64], expected: &[f64]) -> Option<(VertexId, f64, f64)> {
    let exact = graph.has_integer_weights();
    got.iter()
        .zip(expected)
        .position(|(&a, &b)| !distances_match(a, b, exact))
        .map(|i| (i as VertexId, got[i], expected[i]))
}

/// Runs algorithms over shared sources on one prepared graph.
pub struct Runner<'g> {
    prepared: &'g PreparedGraph,
    graph_id: String,
    config: BenchConfig,
    solver: EicSolver<'g>,
}

struct Measured {
    dist: Vec<f64>,
    wall_ms: f64,
    extended: u64,
    syncs: u64,
    traversals: u64,
}

impl<'g> Runner<'g> {
    pub fn new(prepared: &'g PreparedGraph, graph_id: impl Into<String>, config: BenchConfig) -> Result<Self> {
        let solver = EicSolver::new(prepared, config.eic.clone())?;
        Ok(Runner {
            prepared,
            graph_id: graph_id.into(),
            config,
            solver,
        })
    }

    fn measure(&self, algo: Algo, source: VertexId) -> Result<Measured> {
        let graph = &self.prepared.graph;
        let from_oracle = |r: OracleResult, wall_ms: f64| Measured {
            dist: r.dist,
            wall_ms,
            extended: r.pops,
            syncs: r.rounds,
            traversals: r.traversals,
        };
        let start = Instant::now();
        Ok(match algo {
            Algo::Eic => {
                let out = self.solver.solve(source)?;
                let wall_ms = start.elapsed().as_secs_f64() * 1e3;
                Measured {
                    dist: out.dist,
                    wall_ms,
                    extended: out.metrics.extended_paths,
                    syncs: out.metrics.synchronizations,
                    traversals: out.metrics.traversals,
                }
            }
            Algo::Dijkstra => {
                let r = dijkstra(graph, source);
                from_oracle(r, start.elapsed().as_secs_f64() * 1e3)
            }
            Algo::BellmanFord => {
                let r = bellman_ford(graph, source);
                from_oracle(r, start.elapsed().as_secs_f64() * 1e3)
            }
            Algo::Delta(delta) => {
                let delta = delta.unwrap_or(0.5 * self.prepared.quantizer.max_weight());
                let start = Instant::now();
                let r = delta_stepping(graph, source, delta)?;
                from_oracle(r, start.elapsed().as_secs_f64() * 1e3)
            }
        })
    }

    fn verify(&self, source: VertexId, dist: &[f64], expected: &[f64]) -> Result<()> {
        match first_mismatch(&self.prepared.graph, dist, expected) {
            None => Ok(()),
            Some((vertex, got, expected)) => Err(Error::Verification {
                graph: self.graph_id.clone(),
                source_vertex: source,
                vertex,
                got,
                expected,
            }),
        }
    }

    /// One solve plus its report and distances.
    pub fn trial(&self, algo: Algo, source: VertexId) -> Result<(TrialReport, Vec<f64>)> {
        let graph = &self.prepared.graph;
        if source as usize >= graph.vertex_count() {
            return Err(Error::Argument(format!("source {source} out of range")));
        }
        let m = self.measure(algo, source)?;
        if self.config.verify {
            self.verify(source, &m.dist, &dijkstra(graph, source).dist)?;
        }
        let reached: Vec<VertexId> = (0..graph.vertex_count() as VertexId)
            .filter(|&v| m.dist[v as usize].is_finite())
            .collect();
        let nonleaf = reached
            .iter()
            .filter(|&&v| v == source || graph.degree(v) >= 2)
            .count() as f64;
        let reachable = reachable_count(graph, source) as f64;
        let report = TrialReport {
            graph: self.graph_id.clone(),
            source: Some(source),
            algorithm: algo.name().to_string(),
            workers: if algo == Algo::Eic { self.config.eic.workers } else { 1 },
            wall_ms: m.wall_ms,
            preprocess_ms: if algo == Algo::Eic {
                self.prepared.preprocess_time.as_secs_f64() * 1e3
            } else {
                0.0
            },
            extended_paths: m.extended as f64,
            synchronizations: m.syncs as f64,
            traversals: m.traversals as f64,
            reachable_count: reachable,
            reachable_nonleaf_count: nonleaf,
            n_frontier: m.extended as f64 / nonleaf.max(1.0),
            n_sync: m.syncs as f64 / sync_normalizer(graph),
            n_trav: m.traversals as f64 / reachable.max(1.0),
            dist_checksum: m.dist.iter().filter(|d| d.is_finite()).sum(),
            reached_count: reached.len() as f64,
        };
        Ok((report, m.dist))
    }

    /// Runs `trial_count` trials one after another from seeded random sources.
    pub fn run_trials(&self, algo: Algo, trial_count: usize, seed: u64) -> Result<TrialSet> {
        let (sources, with_replacement) = sample_sources(&self.prepared.graph, trial_count, seed);
        let trials = sources
            .into_iter()
            .map(|s| self.trial(algo, s).map(|(r, _)| r))
            .collect::<Result<Vec<_>>>()?;
        Ok(TrialSet {
            average: TrialReport::average(&trials),
            trials,
            with_replacement,
        })
    }

    /// Runs every algorithm from the same sources, failing if any two disagree
    /// on a distance.
    pub fn compare(&self, algos: &[Algo], trial_count: usize, seed: u64) -> Result<Vec<ComparisonRow>> {
        let (sources, _) = sample_sources(&self.prepared.graph, trial_count, seed);
        let mut per_algo: Vec<Vec<TrialReport>> = vec![Vec::new(); algos.len()];
        for &source in &sources {
            let mut first: Option<Vec<f64>> = None;
            for (k, &algo) in algos.iter().enumerate() {
                let (report, dist) = self.trial(algo, source)?;
                match &first {
                    None => first = Some(dist),
                    Some(expected) => self.verify(source, &dist, expected)?,
                }
                per_algo[k].push(report);
            }
        }
        let averages: Vec<TrialReport> = per_algo
            .iter()
            .filter_map(|r| TrialReport::average(r))
            .collect();
        let best = |baselines_only: bool| {
            averages
                .iter()
                .zip(algos)
                .filter(|(_, a)| !baselines_only || a.is_baseline())
                .map(|(r, _)| r.wall_ms)
                .fold(f64::INFINITY, f64::min)
        };
        let reference = if algos.iter().any(Algo::is_baseline) { best(true) } else { best(false) };
        Ok(averages
            .into_iter()
            .map(|avg| ComparisonRow {
                speedup: if avg.wall_ms > 0.0 { reference / avg.wall_ms } else { 1.0 },
                trials: sources.len(),
                average: avg,
            })
            .collect())
    }
}

/// Vertices reachable from `source`, by breadth-first search.
pub fn reachable_count(graph: &Graph, source: VertexId) -> usize {
    let mut seen = vec![false; graph.vertex_count()];
    seen[source as usize] = true;
    let mut stack = vec![source];
    let mut count = 0;
    while let Some(u) = stack.pop() {
        count += 1;
        for &v in graph.neighbors(u) {
            if !seen[v as usize] {
                seen[v as usize] = true;
                stack.push(v);
            }
        }
    }
    count
}

/// Averaged results of one algorithm in a comparison.
#[derive(Clone, Debug)]
pub struct ComparisonRow {
    pub average: TrialReport,
    pub trials: usize,
    /// Best baseline wall time over this algorithm's wall time.
    pub speedup: f64,
}

/// Formats a float with 6 significant digits; integral values below 2^53
/// are written in full.
pub fn format_number(x: f64) -> String {
    if x.is_nan() || x.is_infinite() {
        return format!("{x}");
    }
    if x.fract() == 0.0 && x.abs() < 9_007_199_254_740_992.0 {
        return format!("{}", x as i64);
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        s.to_string()
    } else {
        format!("{x:.5e}")
    }
}

/// Writes a header, one row per trial, and an `AVG` row when there are trials.
pub fn emit_csv<W: Write>(reports: &[TrialReport], writer: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(writer);
    out.write_record(CSV_COLUMNS)?;
    let average = TrialReport::average(reports);
    for r in reports.iter().chain(average.as_ref()) {
        let mut record = vec![
            r.graph.clone(),
            r.source.map_or("AVG".to_string(), |s| s.to_string()),
            r.algorithm.clone(),
            r.workers.to_string(),
        ];
        record.extend(r.numbers().iter().map(|&x| format_number(x)));
        out.write_record(&record)?;
    }
    out.flush()?;
    Ok(())
}

/// Reads rows written by [`emit_csv`], including the `AVG` row.
pub fn parse_csv<R: Read>(reader: R) -> Result<Vec<TrialReport>> {
    let mut input = csv::Reader::from_reader(reader);
    let header = input.headers()?.clone();
    if header.iter().ne(CSV_COLUMNS) {
        return Err(Error::parse("header", "unexpected columns"));
    }
    let mut reports = Vec::new();
    for (i, record) in input.records().enumerate() {
        let record = record?;
        let row = format!("row {}", i + 2);
        let number = |k: usize| -> Result<f64> {
            record[k]
                .parse()
                .map_err(|_| Error::parse(row.clone(), format!("bad number {:?}", &record[k])))
        };
        let mut numbers = [0.0; 12];
        for (j, x) in numbers.iter_mut().enumerate() {
            *x = number(4 + j)?;
        }
        let mut report = TrialReport {
            graph: record[0].to_string(),
            source: match &record[1] {
                "AVG" => None,
                s => Some(s.parse().map_err(|_| Error::parse(row.clone(), "bad source"))?),
            },
            algorithm: record[2].to_string(),
            workers: record[3].parse().map_err(|_| Error::parse(row.clone(), "bad workers"))?,
            wall_ms: 0.0,
            preprocess_ms: 0.0,
            extended_paths: 0.0,
            synchronizations: 0.0,
            traversals: 0.0,
            reachable_count: 0.0,
            reachable_nonleaf_count: 0.0,
            n_frontier: 0.0,
            n_sync: 0.0,
            n_trav: 0.0,
            dist_checksum: 0.0,
            reached_count: 0.0,
        };
        report.set_numbers(numbers);
        reports.push(report);
    }
    Ok(reports)
}

pub const COMPARISON_COLUMNS: [&str; 10] = [
    "graph",
    "algorithm",
    "trials",
    "wall_ms",
    "preprocess_ms",
    "n_frontier",
    "n_sync",
    "n_trav",
    "dist_checksum",
    "speedup",
];

pub fn emit_comparison_csv<W: Write>(rows: &[ComparisonRow], writer: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(writer);
    out.write_record(COMPARISON_COLUMNS)?;
    for row in rows {
        let a = &row.average;
        let mut record = vec![a.graph.clone(), a.algorithm.clone(), row.trials.to_string()];
        record.extend(
            [a.wall_ms, a.preprocess_ms, a.n_frontier, a.n_sync, a.n_trav, a.dist_checksum, row.speedup]
                .iter()
                .map(|&x| format_number(x)),
        );
        out.write_record(&record)?;
    }
    out.flush()?;
    Ok(())
}
