use gradroute::config::RunConfig;
use gradroute::ga_router::widest_path_oracle;
use gradroute::harness::{self, Mode, RunOptions, REPORT_HEADER};
use gradroute::knowledge_base;
use gradroute::topology::load_topology;

#[test]
fn one_small_size_gives_two_rows() {
    let cells = harness::run_comparison(&[4], &[7], &RunConfig::default(), &RunOptions::default()).unwrap();
    let rows = harness::records(&cells);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0].mode, Mode::Graded);
    assert!(rows.iter().all(|r| r.nodes_selected <= 4));
}

#[test]
fn sizes_below_four_are_rejected() {
    let err = harness::run_comparison(&[3], &[1], &RunConfig::default(), &RunOptions::default()).unwrap_err();
    assert!(matches!(err, harness::HarnessError::InvalidArgument(_)));
}

#[test]
fn report_round_trips_and_is_sorted() {
    let cells = harness::run_comparison(&[16, 8], &[1, 2, 3], &RunConfig::default(), &RunOptions::default()).unwrap();
    let rows = harness::records(&cells);
    let keys: Vec<_> = rows.iter().map(|r| (r.total_nodes, r.mode)).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    let text = harness::report_string(&rows).unwrap();
    assert_eq!(text.lines().next().unwrap(), REPORT_HEADER.join(","));
    assert_eq!(text.lines().count(), rows.len() + 1);
    assert_eq!(harness::parse_report(&text).unwrap(), rows);
    assert!(harness::report_string(&[]).is_err());
}

#[test]
fn graded_bandwidth_never_exceeds_nongraded_when_both_are_optimal() {
    let cfg = RunConfig::default();
    let mut compared = 0;
    for seed in 1..=20 {
        for size in [8, 16, 32] {
            let t = harness::topology_for(size, seed, &cfg).unwrap();
            let (s, d) = harness::endpoints(&t);
            let ga = harness::ga_config_for(seed, &cfg);
            let (graded, _) = harness::run_graded(&t, s, d, &cfg, &ga);
            let (full, _) = harness::run_nongraded(&t, s, d, &ga);
            if graded.is_failed() || full.is_failed() {
                continue;
            }
            let survivors = gradroute::level1_select(&t, &cfg.grading).unwrap();
            let g_best = widest_path_oracle(&survivors.route_graph_with(&t, &[s, d]), s, d).unwrap();
            let f_best = widest_path_oracle(&t.route_graph(), s, d).unwrap();
            assert!(g_best.raw_bandwidth <= f_best.raw_bandwidth);
            if graded.best_bandwidth == g_best.raw_bandwidth && full.best_bandwidth == f_best.raw_bandwidth {
                assert!(graded.best_bandwidth <= full.best_bandwidth);
                compared += 1;
            }
        }
    }
    assert!(compared >= 30, "only {compared} comparable cells");
}

#[test]
fn shared_topology_and_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let kb = dir.path().join("store.kb");
    let topo_dir = dir.path().join("topologies");
    let options = RunOptions { timing: false, topology_dir: Some(topo_dir.clone()), kb: Some(kb.clone()) };
    let cells = harness::run_comparison(&[8, 16], &[1, 2], &RunConfig::default(), &options).unwrap();
    for c in &cells {
        assert_eq!(c.graded_fingerprint, c.nongraded_fingerprint);
        let saved = load_topology(&topo_dir.join(format!("topology_{}_{}.txt", c.size, c.seed))).unwrap();
        assert_eq!(saved.fingerprint(), c.graded_fingerprint);
        if let Some(path) = &c.graded_path {
            let hit = knowledge_base::lookup(c.graded_fingerprint, c.source, c.dest, &kb).unwrap().unwrap();
            assert_eq!(&hit.best_path, path);
        }
    }
    let before = std::fs::read(&kb).unwrap();
    harness::run_comparison(&[8, 16], &[1, 2], &RunConfig::default(), &options).unwrap();
    assert_eq!(std::fs::read(&kb).unwrap(), before);
}

#[test]
fn timing_is_opt_in() {
    let quiet = harness::run_comparison(&[8], &[1], &RunConfig::default(), &RunOptions::default()).unwrap();
    assert!(harness::records(&quiet).iter().all(|r| r.wall_time_ms.is_none()));
    let timed = RunOptions { timing: true, ..RunOptions::default() };
    let loud = harness::run_comparison(&[8], &[1], &RunConfig::default(), &timed).unwrap();
    assert!(harness::records(&loud).iter().filter(|r| !r.is_failed()).all(|r| r.wall_time_ms.is_some()));
}

#[test]
fn seed_lists() {
    assert_eq!(harness::parse_list("1..4").unwrap(), vec![1, 2, 3, 4]);
    assert_eq!(harness::parse_list("4,8, 16").unwrap(), vec![4, 8, 16]);
    assert!(harness::parse_list("5..1").is_err());
    assert!(harness::parse_list("x").is_err());
}
