use std::path::PathBuf;

use gradroute::config::RunConfig;
use gradroute::grading::{grade_topology, level1_select, mean_grade, write_grade_csv, GradingConfig, GradingError};
use gradroute::harness;
use gradroute::topology::load_topology;
use gradroute::{NodeAttributes, NodeId, Topology};
use proptest::prelude::*;

fn fixture() -> Topology {
    load_topology(&PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/four_node.txt")).unwrap()
}

#[test]
fn fixture_grades() {
    let grades = grade_topology(&fixture(), &GradingConfig::default());
    let summary: Vec<(u8, i8)> = grades.iter().map(|g| (g.report.priority, g.report.grade)).collect();
    assert_eq!(summary, vec![(1, 0), (6, -3), (3, 2), (4, 3)]);
    assert_eq!(grades[1].report.reasons_string(), "NL=fail");
    assert_eq!(grades[3].report.reasons_string(), "NL=pass;ND=pass;TC=fail");
}

#[test]
fn fixture_survivors() {
    let s = level1_select(&fixture(), &GradingConfig::default()).unwrap();
    assert_eq!(s.kept_nodes, vec![NodeId(0), NodeId(2)]);
    assert_eq!(s.kept_edges.len(), 2);
    assert_eq!(mean_grade(&s).unwrap(), 1.0);
    assert_eq!(s.region_summaries[1].dropped, 1);
}

#[test]
fn fixture_graded_route_is_narrower_than_full_route() {
    let t = fixture();
    let cfg = RunConfig::default();
    let ga = harness::ga_config_for(1, &cfg);
    let (graded, g) = harness::run_graded(&t, NodeId(0), NodeId(3), &cfg, &ga);
    let (full, f) = harness::run_nongraded(&t, NodeId(0), NodeId(3), &ga);
    assert_eq!(g.unwrap().best_path.path, vec![NodeId(0), NodeId(2), NodeId(3)]);
    assert_eq!(f.unwrap().best_path.path, vec![NodeId(0), NodeId(1), NodeId(3)]);
    assert_eq!(graded.best_bandwidth, 30.0);
    assert_eq!(full.best_bandwidth, 50.0);
    assert_eq!(graded.nodes_selected, 3);
}

#[test]
fn dead_region_starves() {
    let mut t = fixture().to_text();
    t = t.replace("node 2 1 100.0 0.9", "node 2 1 100.0 0.0").replace("node 3 1 100.0 0.9", "node 3 1 100.0 0.0");
    let t = Topology::parse(&t).unwrap();
    assert_eq!(level1_select(&t, &GradingConfig::default()).unwrap_err(), GradingError::RegionStarvation(1));
}

#[test]
fn grade_csv_lists_every_node() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grades.csv");
    write_grade_csv(&grade_topology(&fixture(), &GradingConfig::default()), &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.starts_with("node,region,priority,grade,reasons\n"));
}

#[test]
fn unstable_queue_counts_as_delay_failure() {
    let attrs = NodeAttributes {
        bandwidth_mbps: 50.0,
        network_lifetime: 0.9,
        resource_allocated: 0.9,
        arrival_rate_lambda: 200.0,
        service_rate_mu: 100.0,
        capacity: 1.0,
        current_traffic: 1.0,
    };
    let r = gradroute::priority_of(&attrs, 1, &GradingConfig::default());
    assert_eq!((r.priority, r.grade), (2, 1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn survivors_form_an_induced_subgraph(size in 8usize..80, seed in any::<u64>()) {
        let cfg = RunConfig::default();
        let t = harness::topology_for(size, seed, &cfg).unwrap();
        let Ok(s) = level1_select(&t, &cfg.grading) else { return Ok(()) };
        let grades = grade_topology(&t, &cfg.grading);
        for g in &grades {
            let kept = s.contains(g.node);
            prop_assert_eq!(kept, s.kept_nodes.contains(&g.node));
            if kept {
                prop_assert!((0..=2).contains(&g.report.grade));
            }
        }
        let expected: Vec<_> = t.links().iter().filter(|l| s.contains(l.from) && s.contains(l.to)).copied().collect();
        prop_assert_eq!(&s.kept_edges, &expected);
        prop_assert_eq!(s.graph().edge_count(), expected.len());
        for r in &s.region_summaries {
            prop_assert!(r.kept > 0);
            prop_assert_eq!(r.kept + r.dropped, t.region_members(r.region).len());
        }
    }
}
