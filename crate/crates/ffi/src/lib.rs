//! C ABI over the `gradroute` library.
//!
//! Objects cross the boundary as opaque handles created by `gr_*` constructors
//! and released by the matching `gr_*_free`. Every fallible call returns a
//! [`GrStatus`]; on failure `gr_last_error_message` describes the error for
//! the calling thread. Panics are caught and reported as `GR_STATUS_PANIC`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use gradroute::config::RunConfig;
use gradroute::ga_router::{widest_path_oracle, Chromosome, GaConfig, GaError};
use gradroute::grading::{level1_select, mean_grade, GradingError, SurvivorGraph};
use gradroute::graph::NodeId;
use gradroute::harness;
use gradroute::queueing::{mm1_state, QueueError};
use gradroute::topology::{generate_topology, load_topology, save_topology, Topology, TopologyError};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Io = 3,
    Parse = 4,
    UnstableQueue = 5,
    RegionStarvation = 6,
    NoPath = 7,
    BufferTooSmall = 8,
    Panic = 99,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrMode {
    Graded = 0,
    Nongraded = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrQueueState {
    pub rho: f64,
    pub mean_jobs: f64,
    pub mean_delay_s: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrGaParams {
    pub population_size: u32,
    pub generations: u32,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub acceptance_threshold: f64,
    pub seed: u64,
}

/// Opaque topology handle.
pub struct GrTopology {
    inner: Topology,
}

/// Opaque Level-1 survivor set.
pub struct GrSurvivors {
    inner: SurvivorGraph,
}

/// Opaque routing result.
pub struct GrRoute {
    path: Vec<u32>,
    bandwidth: f64,
    generations: u32,
    converged: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: GrStatus, message: impl Into<String>) -> GrStatus {
    set_error(message);
    status
}

fn guard<F: FnOnce() -> GrStatus>(f: F) -> GrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(GrStatus::Panic, "internal panic"),
    }
}

fn topology_status(e: &TopologyError) -> GrStatus {
    match e {
        TopologyError::Io { .. } => GrStatus::Io,
        TopologyError::InvalidParameter(_) => GrStatus::InvalidArgument,
        _ => GrStatus::Parse,
    }
}

fn ga_status(e: &GaError) -> GrStatus {
    match e {
        GaError::NoPath { .. } => GrStatus::NoPath,
        _ => GrStatus::InvalidArgument,
    }
}

unsafe fn path_arg(path: *const c_char) -> Result<PathBuf, GrStatus> {
    if path.is_null() {
        return Err(fail(GrStatus::NullPointer, "path is null"));
    }
    CStr::from_ptr(path)
        .to_str()
        .map(PathBuf::from)
        .map_err(|_| fail(GrStatus::InvalidArgument, "path is not valid UTF-8"))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> GrStatus {
    *out = Box::into_raw(Box::new(value));
    GrStatus::Ok
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

#[no_mangle]
pub extern "C" fn gr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub extern "C" fn gr_ga_params_default() -> GrGaParams {
    let d = GaConfig::default();
    GrGaParams {
        population_size: d.population_size as u32,
        generations: d.generations as u32,
        crossover_rate: d.crossover_rate,
        mutation_rate: d.mutation_rate,
        acceptance_threshold: d.acceptance_threshold,
        seed: d.seed,
    }
}

#[no_mangle]
pub unsafe extern "C" fn gr_mm1_state(lambda: f64, mu: f64, capacity: f64, out: *mut GrQueueState) -> GrStatus {
    guard(|| {
        if out.is_null() {
            return fail(GrStatus::NullPointer, "out is null");
        }
        match mm1_state(lambda, mu, capacity) {
            Ok(s) => {
                *out = GrQueueState { rho: s.rho, mean_jobs: s.mean_jobs, mean_delay_s: s.mean_delay_s };
                GrStatus::Ok
            }
            Err(e @ QueueError::Unstable { .. }) => fail(GrStatus::UnstableQueue, e.to_string()),
            Err(e) => fail(GrStatus::InvalidArgument, e.to_string()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn gr_topology_generate(
    node_count: usize,
    region_count: usize,
    edge_density: f64,
    seed: u64,
    out: *mut *mut GrTopology,
) -> GrStatus {
    guard(|| {
        if out.is_null() {
            return fail(GrStatus::NullPointer, "out is null");
        }
        match generate_topology(node_count, region_count, edge_density, seed) {
            Ok(t) => store(out, GrTopology { inner: t }),
            Err(e) => fail(topology_status(&e), e.to_string()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn gr_topology_load(path: *const c_char, out: *mut *mut GrTopology) -> GrStatus {
    guard(|| {
        if out.is_null() {
            return fail(GrStatus::NullPointer, "out is null");
        }
        let path = match path_arg(path) {
            Ok(p) => p,
            Err(s) => return s,
        };
        match load_topology(&path) {
            Ok(t) => store(out, GrTopology { inner: t }),
            Err(e) => fail(topology_status(&e), e.to_string()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn gr_topology_save(topology: *const GrTopology, path: *const c_char) -> GrStatus {
    guard(|| {
        let Some(t) = topology.as_ref() else {
            return fail(GrStatus::NullPointer, "topology is null");
        };
        let path = match path_arg(path) {
            Ok(p) => p,
            Err(s) => return s,
        };
        match save_topology(&t.inner, &path) {
            Ok(()) => GrStatus::Ok,
            Err(e) => fail(topology_status(&e), e.to_string()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn gr_topology_free(topology: *mut GrTopology) {
    if !topology.is_null() {
        drop(Box::from_raw(topology));
    }
}

/// Zero for a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn gr_topology_node_count(topology: *const GrTopology) -> usize {
    topology.as_ref().map_or(0, |t| t.inner.node_count())
}

#[no_mangle]
pub unsafe extern "C" fn gr_topology_link_count(topology: *const GrTopology) -> usize {
    topology.as_ref().map_or(0, |t| t.inner.links().len())
}

#[no_mangle]
pub unsafe extern "C" fn gr_topology_fingerprint(topology: *const GrTopology) -> u64 {
    topology.as_ref().map_or(0, |t| t.inner.fingerprint())
}

/// In-degree of `node`.
#[no_mangle]
pub unsafe extern "C" fn gr_topology_node_density(
    topology: *const GrTopology,
    node: u32,
    out: *mut usize,
) -> GrStatus {
    guard(|| {
        let Some(t) = topology.as_ref() else {
            return fail(GrStatus::NullPointer, "topology is null");
        };
        if out.is_null() {
            return fail(GrStatus::NullPointer, "out is null");
        }
        match t.inner.node_density(NodeId(node)) {
            Ok(d) => {
                *out = d;
                GrStatus::Ok
            }
            Err(e) => fail(GrStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Level-1 selection with default grading thresholds.
#[no_mangle]
pub unsafe extern "C" fn gr_level1_select(topology: *const GrTopology, out: *mut *mut GrSurvivors) -> GrStatus {
    guard(|| {
        let Some(t) = topology.as_ref() else {
            return fail(GrStatus::NullPointer, "topology is null");
        };
        if out.is_null() {
            return fail(GrStatus::NullPointer, "out is null");
        }
        match level1_select(&t.inner, &RunConfig::default().grading) {
            Ok(s) => store(out, GrSurvivors { inner: s }),
            Err(e @ GradingError::RegionStarvation(_)) => fail(GrStatus::RegionStarvation, e.to_string()),
            Err(e) => fail(GrStatus::InvalidArgument, e.to_string()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn gr_survivors_kept_count(survivors: *const GrSurvivors) -> usize {
    survivors.as_ref().map_or(0, |s| s.inner.len())
}

/// Copies kept node ids into `buffer`. `out_len` always receives the number
/// of kept nodes; `GR_STATUS_BUFFER_TOO_SMALL` when `capacity` is short.
#[no_mangle]
pub unsafe extern "C" fn gr_survivors_kept_nodes(
    survivors: *const GrSurvivors,
    buffer: *mut u32,
    capacity: usize,
    out_len: *mut usize,
) -> GrStatus {
    guard(|| {
        let Some(s) = survivors.as_ref() else {
            return fail(GrStatus::NullPointer, "survivors is null");
        };
        let ids: Vec<u32> = s.inner.kept_nodes.iter().map(|n| n.0).collect();
        copy_out(&ids, buffer, capacity, out_len)
    })
}

#[no_mangle]
pub unsafe extern "C" fn gr_survivors_mean_grade(survivors: *const GrSurvivors, out: *mut f64) -> GrStatus {
    guard(|| {
        let Some(s) = survivors.as_ref() else {
            return fail(GrStatus::NullPointer, "survivors is null");
        };
        if out.is_null() {
            return fail(GrStatus::NullPointer, "out is null");
        }
        match mean_grade(&s.inner) {
            Ok(g) => {
                *out = g;
                GrStatus::Ok
            }
            Err(e) => fail(GrStatus::InvalidArgument, e.to_string()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn gr_survivors_free(survivors: *mut GrSurvivors) {
    if !survivors.is_null() {
        drop(Box::from_raw(survivors));
    }
}

/// Runs the GA between `source` and `dest`. `params` may be NULL for the
/// defaults.
#[no_mangle]
pub unsafe extern "C" fn gr_route(
    topology: *const GrTopology,
    source: u32,
    dest: u32,
    mode: GrMode,
    params: *const GrGaParams,
    out: *mut *mut GrRoute,
) -> GrStatus {
    guard(|| {
        let Some(t) = topology.as_ref() else {
            return fail(GrStatus::NullPointer, "topology is null");
        };
        if out.is_null() {
            return fail(GrStatus::NullPointer, "out is null");
        }
        let p = params.as_ref().copied().unwrap_or_else(|| gr_ga_params_default());
        let ga = GaConfig {
            population_size: p.population_size as usize,
            generations: p.generations as usize,
            crossover_rate: p.crossover_rate,
            mutation_rate: p.mutation_rate,
            acceptance_threshold: p.acceptance_threshold,
            seed: p.seed,
        };
        if let Err(e) = ga.validate() {
            return fail(GrStatus::InvalidArgument, e.to_string());
        }
        let (s, d) = (NodeId(source), NodeId(dest));
        let (record, result) = match mode {
            GrMode::Graded => harness::run_graded(&t.inner, s, d, &RunConfig::default(), &ga),
            GrMode::Nongraded => harness::run_nongraded(&t.inner, s, d, &ga),
        };
        match result {
            Some(r) => store(
                out,
                GrRoute {
                    path: r.best_path.path.iter().map(|n| n.0).collect(),
                    bandwidth: r.best_path.raw_bandwidth,
                    generations: r.generations_used as u32,
                    converged: r.converged,
                },
            ),
            None => {
                let tag = record.error.unwrap_or_default();
                let status = match tag.as_str() {
                    "region_starvation" => GrStatus::RegionStarvation,
                    "no_path" => GrStatus::NoPath,
                    _ => GrStatus::InvalidArgument,
                };
                fail(status, tag)
            }
        }
    })
}

/// Exact widest path over the full topology.
#[no_mangle]
pub unsafe extern "C" fn gr_oracle(
    topology: *const GrTopology,
    source: u32,
    dest: u32,
    out: *mut *mut GrRoute,
) -> GrStatus {
    guard(|| {
        let Some(t) = topology.as_ref() else {
            return fail(GrStatus::NullPointer, "topology is null");
        };
        if out.is_null() {
            return fail(GrStatus::NullPointer, "out is null");
        }
        match widest_path_oracle(&t.inner.route_graph(), NodeId(source), NodeId(dest)) {
            Ok(Chromosome { path, raw_bandwidth, .. }) => store(
                out,
                GrRoute {
                    path: path.iter().map(|n| n.0).collect(),
                    bandwidth: raw_bandwidth,
                    generations: 0,
                    converged: true,
                },
            ),
            Err(e) => fail(ga_status(&e), e.to_string()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn gr_route_path(
    route: *const GrRoute,
    buffer: *mut u32,
    capacity: usize,
    out_len: *mut usize,
) -> GrStatus {
    guard(|| {
        let Some(r) = route.as_ref() else {
            return fail(GrStatus::NullPointer, "route is null");
        };
        copy_out(&r.path, buffer, capacity, out_len)
    })
}

#[no_mangle]
pub unsafe extern "C" fn gr_route_bandwidth(route: *const GrRoute) -> f64 {
    route.as_ref().map_or(0.0, |r| r.bandwidth)
}

#[no_mangle]
pub unsafe extern "C" fn gr_route_generations(route: *const GrRoute) -> u32 {
    route.as_ref().map_or(0, |r| r.generations)
}

#[no_mangle]
pub unsafe extern "C" fn gr_route_converged(route: *const GrRoute) -> bool {
    route.as_ref().is_some_and(|r| r.converged)
}

#[no_mangle]
pub unsafe extern "C" fn gr_route_free(route: *mut GrRoute) {
    if !route.is_null() {
        drop(Box::from_raw(route));
    }
}

unsafe fn copy_out(ids: &[u32], buffer: *mut u32, capacity: usize, out_len: *mut usize) -> GrStatus {
    if out_len.is_null() {
        return fail(GrStatus::NullPointer, "out_len is null");
    }
    *out_len = ids.len();
    if capacity < ids.len() {
        return fail(GrStatus::BufferTooSmall, format!("need {} slots, have {}", ids.len(), capacity));
    }
    if buffer.is_null() && !ids.is_empty() {
        return fail(GrStatus::NullPointer, "buffer is null");
    }
    ptr::copy_nonoverlapping(ids.as_ptr(), buffer, ids.len());
    GrStatus::Ok
}
