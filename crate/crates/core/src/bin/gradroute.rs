use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gradroute::config::RunConfig;
use gradroute::ga_router::widest_path_oracle;
use gradroute::grading::{grade_topology, level1_select, mean_grade, write_grade_csv};
use gradroute::graph::NodeId;
use gradroute::harness::{self, Mode, RunOptions};
use gradroute::knowledge_base::{self, fingerprint_bytes, KnowledgeEntry};
use gradroute::topology::{generate_with, load_topology, save_topology, GeneratorConfig};

#[derive(Parser, Debug)]
#[command(name = "gradroute", version, about = "Graded node selection and GA routing experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graded vs. non-graded comparison over topology sizes and seeds.
    Run {
        #[arg(long, default_value = "4,8,16,32,64,128,256")]
        sizes: String,
        #[arg(long, default_value = "1..10")]
        seeds: String,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        kb: Option<PathBuf>,
        #[arg(long)]
        topology_dir: Option<PathBuf>,
        /// Fill wall_time_ms (makes the report non-reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Level-1 grade report for a topology file.
    Grade {
        #[arg(long)]
        topology: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// GA route between two nodes.
    Route {
        #[arg(long)]
        topology: PathBuf,
        #[arg(long)]
        source: u32,
        #[arg(long)]
        dest: u32,
        #[arg(long, default_value = "graded")]
        mode: Mode,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        kb: Option<PathBuf>,
        /// Write the per-generation history CSV here.
        #[arg(long)]
        history: Option<PathBuf>,
    },
    /// Exact widest path between two nodes.
    Oracle {
        #[arg(long)]
        topology: PathBuf,
        #[arg(long)]
        source: u32,
        #[arg(long)]
        dest: u32,
    },
    /// Generate a topology file.
    Generate {
        #[arg(long)]
        nodes: usize,
        #[arg(long, default_value_t = 1)]
        regions: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Cap on sampled node degree.
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn runtime<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Runtime(e.to_string())
}

fn load_config(path: &Option<PathBuf>) -> Result<RunConfig, Failure> {
    match path {
        Some(p) => RunConfig::load(p).map_err(usage),
        None => Ok(RunConfig::default()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn execute(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Run { sizes, seeds, config, out, kb, topology_dir, timing } => {
            let sizes: Vec<usize> = harness::parse_list(&sizes).map_err(usage)?.into_iter().map(|s| s as usize).collect();
            let seeds = harness::parse_list(&seeds).map_err(usage)?;
            let cfg = load_config(&config)?;
            let options = RunOptions { timing, topology_dir, kb };
            let cells = harness::run_comparison(&sizes, &seeds, &cfg, &options).map_err(|e| match e {
                harness::HarnessError::InvalidArgument(_) => usage(e),
                other => runtime(other),
            })?;
            let records = harness::records(&cells);
            harness::emit_report(&records, &out).map_err(runtime)?;
            let failed = records.iter().filter(|r| r.is_failed()).count();
            println!("{} rows written to {} ({} failed)", records.len(), out.display(), failed);
            Ok(if failed > 0 { 2 } else { 0 })
        }
        Command::Grade { topology, out, config } => {
            let cfg = load_config(&config)?;
            let t = load_topology(&topology).map_err(usage)?;
            let grades = grade_topology(&t, &cfg.grading);
            write_grade_csv(&grades, &out).map_err(runtime)?;
            match level1_select(&t, &cfg.grading) {
                Ok(s) => println!(
                    "{} of {} nodes kept, mean grade {:.3}",
                    s.len(),
                    t.node_count(),
                    mean_grade(&s).unwrap_or(f64::NAN)
                ),
                Err(e) => println!("level-1 selection failed: {e}"),
            }
            Ok(0)
        }
        Command::Route { topology, source, dest, mode, config, kb, history } => {
            let cfg = load_config(&config)?;
            let bytes = std::fs::read(&topology).map_err(|e| usage(format!("{}: {}", topology.display(), e)))?;
            let t = load_topology(&topology).map_err(usage)?;
            let (s, d) = (NodeId(source), NodeId(dest));
            let fingerprint = fingerprint_bytes(&bytes);
            if let (Some(store), Mode::Graded) = (&kb, mode) {
                if let Some(hit) = knowledge_base::lookup(fingerprint, s, d, store).map_err(runtime)? {
                    print_path("knowledge base", &hit.best_path, hit.raw_bandwidth);
                    return Ok(0);
                }
            }
            let ga = cfg.ga.clone();
            let (record, result) = match mode {
                Mode::Graded => harness::run_graded(&t, s, d, &cfg, &ga),
                Mode::Nongraded => harness::run_nongraded(&t, s, d, &ga),
            };
            let Some(result) = result else {
                eprintln!("route failed: {}", record.error.unwrap_or_default());
                return Ok(2);
            };
            print_path(&mode.to_string(), &result.best_path.path, result.best_path.raw_bandwidth);
            println!(
                "generations {} converged {} nodes_selected {}",
                result.generations_used, result.converged, record.nodes_selected
            );
            match harness::route_delay(&t, &result.best_path.path) {
                Ok(delay) => println!("network delay {:.6} s", delay.total_delay_s),
                Err(e) => println!("network delay unavailable: {e}"),
            }
            if let Some(h) = history {
                std::fs::write(&h, result.history_csv()).map_err(|e| runtime(format!("{}: {}", h.display(), e)))?;
            }
            if let (Some(store), Mode::Graded) = (&kb, mode) {
                let entry = KnowledgeEntry {
                    topology_fingerprint: fingerprint,
                    source: s,
                    dest: d,
                    best_path: result.best_path.path.clone(),
                    raw_bandwidth: result.best_path.raw_bandwidth,
                    mean_grade: record.mean_grade.unwrap_or(0.0),
                    recorded_at: knowledge_base::next_run_counter(store).map_err(runtime)?,
                };
                knowledge_base::record(&entry, store).map_err(runtime)?;
            }
            Ok(0)
        }
        Command::Oracle { topology, source, dest } => {
            let t = load_topology(&topology).map_err(usage)?;
            match widest_path_oracle(&t.route_graph(), NodeId(source), NodeId(dest)) {
                Ok(c) => {
                    print_path("oracle", &c.path, c.raw_bandwidth);
                    Ok(0)
                }
                Err(e) => {
                    eprintln!("oracle failed: {e}");
                    Ok(2)
                }
            }
        }
        Command::Generate { nodes, regions, density, seed, max_degree, out } => {
            let mut g = GeneratorConfig::new(nodes, regions, density);
            g.max_degree = max_degree;
            let t = generate_with(&g, seed).map_err(usage)?;
            save_topology(&t, &out).map_err(runtime)?;
            println!("{} nodes, {} links written to {}", t.node_count(), t.links().len(), out.display());
            Ok(0)
        }
    }
}

fn print_path(label: &str, path: &[NodeId], bandwidth: f64) {
    let ids: Vec<String> = path.iter().map(|n| n.to_string()).collect();
    println!("{label}: {} (bandwidth {bandwidth}, {} hops)", ids.join("-"), path.len().saturating_sub(1));
}
