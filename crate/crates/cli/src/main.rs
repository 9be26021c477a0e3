//! `eic`: generate graphs, solve, benchmark and compare.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use eic_sssp::bench::{emit_comparison_csv, emit_csv, Algo, BenchConfig, Runner, TrialReport};
use eic_sssp::heuristics::{StepParams, DEFAULT_ALPHA, DEFAULT_BETA, DEFAULT_ST_NUM};
use eic_sssp::reference::{dijkstra, nlt_chain};
use eic_sssp::solver::DEFAULT_FUSED;
use eic_sssp::{
    converge_weights, discretize_weights, generate, load_graph, preprocess, store_graph, EicConfig, Error, GenKind,
    GenSpec, PreparedGraph, DEFAULT_RATIO_NUM,
};

#[derive(Parser)]
#[command(name = "eic", version, about = "Parallel single-source shortest paths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a synthetic graph.
    Generate {
        #[arg(long, default_value = "rmat")]
        kind: GenKind,
        #[arg(long)]
        scale: u32,
        #[arg(long, default_value_t = 16)]
        edge_factor: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// rmat quadrant probabilities a,b,c,d
        #[arg(long, value_delimiter = ',', num_args = 4)]
        probs: Option<Vec<f64>>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rewrite the weights of a graph with weights in (0, 1].
    Transform {
        /// Round weights onto 1..=2^power-1.
        #[arg(long, conflicts_with = "pivot", required_unless_present = "pivot")]
        power: Option<u32>,
        /// Bend weights toward this value.
        #[arg(long)]
        pivot: Option<f64>,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve from one source and print the metrics.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        source: u32,
        #[arg(long, default_value = "eic")]
        algo: String,
        #[arg(long)]
        verify: bool,
        /// Write `vertex distance` lines here.
        #[arg(long)]
        dist_out: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Run trials from random sources and write one CSV row per trial.
    Bench {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 16)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "eic")]
        algo: String,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Run several algorithms from the same sources side by side.
    Compare {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "eic,dijkstra,bf,delta")]
        algos: Vec<String>,
        #[arg(long, default_value_t = 16)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Print the threshold chain t -> nlt(t) from 0.
    AnalyzeNlt {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        source: u32,
        #[arg(long, default_value_t = 1_000_000)]
        max_len: usize,
    },
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, env = "EIC_WORKERS")]
    workers: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    alpha: u32,
    #[arg(long, default_value_t = DEFAULT_BETA)]
    beta: f64,
    #[arg(long, default_value_t = DEFAULT_RATIO_NUM)]
    ratio_num: usize,
    #[arg(long, default_value_t = DEFAULT_ST_NUM)]
    st_num: usize,
    #[arg(long, default_value_t = DEFAULT_FUSED)]
    fused: usize,
    /// Bucket width for delta-stepping; half the largest weight if omitted.
    #[arg(long)]
    delta: Option<f64>,
}

impl SolverArgs {
    fn bench_config(&self, verify: bool) -> BenchConfig {
        let mut eic = EicConfig {
            params: StepParams {
                alpha: self.alpha,
                beta: self.beta,
                st_num: self.st_num,
                ..StepParams::default()
            },
            ratio_num: self.ratio_num,
            fused: self.fused,
            ..EicConfig::default()
        };
        if let Some(w) = self.workers {
            eic.workers = w;
        }
        BenchConfig { eic, verify }
    }

    fn algo(&self, name: &str) -> Result<Algo, Error> {
        Ok(match name.parse()? {
            Algo::Delta(_) => Algo::Delta(self.delta),
            a => a,
        })
    }
}

fn prepare(path: &Path, ratio_num: usize) -> Result<PreparedGraph, Error> {
    preprocess(load_graph(path, None)?, ratio_num)
}

fn create(path: &Path) -> Result<BufWriter<File>, Error> {
    Ok(BufWriter::new(File::create(path)?))
}

fn print_report(r: &TrialReport) {
    let rows: [(&str, String); 13] = [
        ("algorithm", r.algorithm.clone()),
        ("workers", r.workers.to_string()),
        ("wall_ms", format!("{:.3}", r.wall_ms)),
        ("preprocess_ms", format!("{:.3}", r.preprocess_ms)),
        ("reached", r.reached_count.to_string()),
        ("extended_paths", r.extended_paths.to_string()),
        ("synchronizations", r.synchronizations.to_string()),
        ("traversals", r.traversals.to_string()),
        ("n_frontier", format!("{:.4}", r.n_frontier)),
        ("n_sync", format!("{:.4}", r.n_sync)),
        ("n_trav", format!("{:.4}", r.n_trav)),
        ("dist_checksum", format!("{}", r.dist_checksum)),
        ("source", r.source.map_or("AVG".into(), |s| s.to_string())),
    ];
    for (k, v) in rows {
        println!("{k:>18}  {v}");
    }
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Generate {
            kind,
            scale,
            edge_factor,
            seed,
            probs,
            out,
        } => {
            let mut spec = GenSpec::new(kind, scale, edge_factor, seed);
            if let Some(p) = probs {
                spec = spec.with_probs([p[0], p[1], p[2], p[3]]);
            }
            let graph = generate(&spec)?;
            store_graph(&graph, &out, None)?;
            eprintln!("wrote {} vertices, {} edges to {}", graph.vertex_count(), graph.edge_count(), out.display());
        }
        Command::Transform {
            power,
            pivot,
            input,
            out,
        } => {
            let graph = load_graph(&input, None)?;
            let graph = match (power, pivot) {
                (Some(p), _) => discretize_weights(&graph, p)?,
                (None, Some(v)) => converge_weights(&graph, v)?,
                (None, None) => unreachable!("clap requires one of them"),
            };
            store_graph(&graph, &out, None)?;
        }
        Command::Solve {
            graph,
            source,
            algo,
            verify,
            dist_out,
            solver,
        } => {
            let prepared = prepare(&graph, solver.ratio_num)?;
            let algo = solver.algo(&algo)?;
            let runner = Runner::new(&prepared, graph.display().to_string(), solver.bench_config(verify))?;
            let (report, dist) = runner.trial(algo, source)?;
            print_report(&report);
            if verify {
                println!("{:>18}  ok", "verified");
            }
            if let Some(path) = dist_out {
                let mut w = create(&path)?;
                for (v, d) in dist.iter().enumerate() {
                    writeln!(w, "{v} {d}")?;
                }
                w.flush()?;
            }
        }
        Command::Bench {
            graph,
            trials,
            seed,
            algo,
            verify,
            out,
            solver,
        } => {
            let prepared = prepare(&graph, solver.ratio_num)?;
            let algo = solver.algo(&algo)?;
            let runner = Runner::new(&prepared, graph.display().to_string(), solver.bench_config(verify))?;
            let set = runner.run_trials(algo, trials, seed)?;
            if set.with_replacement {
                eprintln!("note: fewer vertices with edges than trials, sources drawn with replacement");
            }
            emit_csv(&set.trials, create(&out)?)?;
            if let Some(avg) = &set.average {
                print_report(avg);
            }
        }
        Command::Compare {
            graph,
            algos,
            trials,
            seed,
            out,
            solver,
        } => {
            let prepared = prepare(&graph, solver.ratio_num)?;
            let algos = algos.iter().map(|a| solver.algo(a)).collect::<Result<Vec<_>, _>>()?;
            let runner = Runner::new(&prepared, graph.display().to_string(), solver.bench_config(false))?;
            let rows = runner.compare(&algos, trials, seed)?;
            emit_comparison_csv(&rows, create(&out)?)?;
            emit_comparison_csv(&rows, io::stdout().lock())?;
        }
        Command::AnalyzeNlt { graph, source, max_len } => {
            let graph = load_graph(&graph, None)?;
            if source as usize >= graph.vertex_count() {
                return Err(Error::Argument(format!("source {source} out of range")));
            }
            let truth = dijkstra(&graph, source).dist;
            let chain = nlt_chain(&graph, source, &truth, max_len)?;
            for pair in chain.windows(2) {
                println!("{} -> {}", pair[0], pair[1]);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("eic: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 2 for a failed verification, 1 for anything else.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Verification { .. } => 2,
        _ => 1,
    }
}
