use eic_sssp::bench::{emit_comparison_csv, emit_csv, parse_csv, Algo, BenchConfig, Runner, TrialReport};
use eic_sssp::{generate, preprocess, EicConfig, GenSpec, PreparedGraph, DEFAULT_RATIO_NUM};

fn prepared() -> PreparedGraph {
    preprocess(generate(&GenSpec::rmat(8, 8, 21)).unwrap(), DEFAULT_RATIO_NUM).unwrap()
}

fn runner(p: &PreparedGraph) -> Runner<'_> {
    let config = BenchConfig {
        eic: EicConfig::default().with_workers(2),
        verify: true,
    };
    Runner::new(p, "rmat-8", config).unwrap()
}

fn close6(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= 5e-6 * a.abs().max(b.abs())
}

#[test]
fn empty_report_list_is_header_only() {
    let mut out = Vec::new();
    emit_csv(&[], &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("graph,source,algorithm,workers,wall_ms"));
}

#[test]
fn single_trial_average_equals_trial() {
    let p = prepared();
    let set = runner(&p).run_trials(Algo::Eic, 1, 3).unwrap();
    let mut out = Vec::new();
    emit_csv(&set.trials, &mut out).unwrap();
    let rows = parse_csv(&out[..]).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1].source, None);
    assert_eq!(rows[0].dist_checksum, rows[1].dist_checksum);
    assert!(set.trials[0].n_frontier >= 1.0 - 1e-9);
}

#[test]
fn round_trip_and_average_row() {
    let p = prepared();
    let set = runner(&p).run_trials(Algo::Eic, 3, 5).unwrap();
    let mut out = Vec::new();
    emit_csv(&set.trials, &mut out).unwrap();
    let rows = parse_csv(&out[..]).unwrap();
    assert_eq!(rows.len(), 4);
    for (parsed, original) in rows.iter().zip(&set.trials) {
        assert_eq!(parsed.source, original.source);
        assert_eq!(parsed.extended_paths, original.extended_paths);
        assert_eq!(parsed.traversals, original.traversals);
        assert_eq!(parsed.reached_count, original.reached_count);
        assert!(close6(parsed.n_sync, original.n_sync));
        assert!(close6(parsed.dist_checksum, original.dist_checksum));
    }
    // mean recomputed here from the unrounded trials
    let mean = |f: fn(&TrialReport) -> f64| set.trials.iter().map(f).sum::<f64>() / 3.0;
    let avg = &rows[3];
    assert!(close6(avg.traversals, mean(|r| r.traversals)));
    assert!(close6(avg.n_frontier, mean(|r| r.n_frontier)));
    assert!(close6(avg.wall_ms, mean(|r| r.wall_ms)));
}

#[test]
fn seeded_trials_repeat() {
    let p = prepared();
    let r = runner(&p);
    let a = r.run_trials(Algo::Eic, 4, 77).unwrap();
    let b = r.run_trials(Algo::Eic, 4, 77).unwrap();
    let key = |s: &eic_sssp::bench::TrialSet| {
        s.trials.iter().map(|t| (t.source, t.dist_checksum.to_bits())).collect::<Vec<_>>()
    };
    assert_eq!(key(&a), key(&b));
}

#[test]
fn exact_baselines_agree_and_eic_matches_delta() {
    let p = prepared();
    let r = runner(&p);
    let rows = r.compare(&[Algo::Dijkstra, Algo::BellmanFord], 3, 1).unwrap();
    assert_eq!(rows[0].average.dist_checksum, rows[1].average.dist_checksum);

    let rows = r.compare(&[Algo::Eic, Algo::Delta(None)], 3, 1).unwrap();
    assert!(close6(rows[0].average.dist_checksum, rows[1].average.dist_checksum));
    assert_ne!(rows[0].average.traversals, rows[1].average.traversals);
    let mut out = Vec::new();
    emit_comparison_csv(&rows, &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().next().unwrap().ends_with(",speedup"));
}
