//! Two-level routing for region-based networks.
//!
//! Level 1 grades every node from its queueing and resource state and keeps
//! the productive ones region by region. Level 2 runs a genetic algorithm over
//! the surviving subgraph to find a high-bandwidth source to destination path.
//! The [`harness`] module compares that pipeline against the same genetic
//! algorithm run on the unfiltered topology.

pub mod config;
pub mod ga_router;
pub mod grading;
pub mod graph;
pub mod harness;
pub mod knowledge_base;
pub mod queueing;
pub mod rng;
pub mod topology;

pub use ga_router::{
    crossover_paths, enumerate_initial_population, evolve, fitness_assign, mutate_path,
    widest_path_oracle, Chromosome, GaConfig, GaError, GaResult, GenerationStats,
};
pub use grading::{
    level1_select, mean_grade, priority_of, GradeReport, GradingConfig, GradingError,
    SurvivorGraph,
};
pub use graph::{NodeId, RouteGraph};
pub use queueing::{congestion_score, mm1_state, network_delay, DelayBreakdown, QueueState};
pub use topology::{generate_topology, Link, NodeAttributes, Topology, TopologyError};
