use std::ffi::{CStr, CString};
use std::ptr;

use gradroute_ffi::*;

fn fixture() -> CString {
    let p = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/fixtures/four_node.txt");
    CString::new(p).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(gr_last_error_message()) }.to_string_lossy().into_owned()
}

unsafe fn load_fixture() -> *mut GrTopology {
    let mut t = ptr::null_mut();
    assert_eq!(gr_topology_load(fixture().as_ptr(), &mut t), GrStatus::Ok);
    t
}

unsafe fn path_of(route: *const GrRoute) -> Vec<u32> {
    let mut len = 0usize;
    assert_eq!(gr_route_path(route, ptr::null_mut(), 0, &mut len), GrStatus::BufferTooSmall);
    let mut buf = vec![0u32; len];
    assert_eq!(gr_route_path(route, buf.as_mut_ptr(), buf.len(), &mut len), GrStatus::Ok);
    buf
}

#[test]
fn version_and_queue() {
    let v = unsafe { CStr::from_ptr(gr_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
    let mut q = GrQueueState { rho: 0.0, mean_jobs: 0.0, mean_delay_s: 0.0 };
    unsafe {
        assert_eq!(gr_mm1_state(50.0, 100.0, 1.0, &mut q), GrStatus::Ok);
        assert_eq!(q.rho, 0.5);
        assert_eq!(q.mean_jobs, 1.0);
        assert_eq!(gr_mm1_state(150.0, 100.0, 1.0, &mut q), GrStatus::UnstableQueue);
        assert!(last_error().contains("unstable"));
        assert_eq!(gr_mm1_state(1.0, 1.0, 1.0, ptr::null_mut()), GrStatus::NullPointer);
    }
}

#[test]
fn topology_handle_lifecycle() {
    unsafe {
        let t = load_fixture();
        assert_eq!(gr_topology_node_count(t), 4);
        assert_eq!(gr_topology_link_count(t), 10);
        let mut d = 0usize;
        assert_eq!(gr_topology_node_density(t, 2, &mut d), GrStatus::Ok);
        assert_eq!(d, 3);
        assert_eq!(gr_topology_node_density(t, 9, &mut d), GrStatus::InvalidArgument);

        let dir = tempfile::tempdir().unwrap();
        let out = CString::new(dir.path().join("copy.txt").to_str().unwrap()).unwrap();
        assert_eq!(gr_topology_save(t, out.as_ptr()), GrStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(gr_topology_load(out.as_ptr(), &mut back), GrStatus::Ok);
        assert_eq!(gr_topology_fingerprint(back), gr_topology_fingerprint(t));
        gr_topology_free(back);
        gr_topology_free(t);
        gr_topology_free(ptr::null_mut());
    }
}

#[test]
fn load_errors_map_to_codes() {
    unsafe {
        let mut t = ptr::null_mut();
        let missing = CString::new("/nonexistent/t.txt").unwrap();
        assert_eq!(gr_topology_load(missing.as_ptr(), &mut t), GrStatus::Io);
        assert!(last_error().contains("/nonexistent/t.txt"));
        assert!(t.is_null());
        assert_eq!(gr_topology_load(ptr::null(), &mut t), GrStatus::NullPointer);
        assert_eq!(gr_topology_generate(4, 9, 0.5, 1, &mut t), GrStatus::InvalidArgument);
    }
}

#[test]
fn survivors_and_routes() {
    unsafe {
        let t = load_fixture();
        let mut s = ptr::null_mut();
        assert_eq!(gr_level1_select(t, &mut s), GrStatus::Ok);
        assert_eq!(gr_survivors_kept_count(s), 2);
        let mut ids = [0u32; 4];
        let mut len = 0usize;
        assert_eq!(gr_survivors_kept_nodes(s, ids.as_mut_ptr(), ids.len(), &mut len), GrStatus::Ok);
        assert_eq!(&ids[..len], &[0, 2]);
        let mut g = f64::NAN;
        assert_eq!(gr_survivors_mean_grade(s, &mut g), GrStatus::Ok);
        assert_eq!(g, 1.0);
        gr_survivors_free(s);

        let mut r = ptr::null_mut();
        assert_eq!(gr_route(t, 0, 3, GrMode::Graded, ptr::null(), &mut r), GrStatus::Ok);
        assert_eq!(path_of(r), vec![0, 2, 3]);
        assert_eq!(gr_route_bandwidth(r), 30.0);
        assert!(gr_route_generations(r) >= 1);
        gr_route_free(r);

        let mut params = gr_ga_params_default();
        params.seed = 11;
        assert_eq!(gr_route(t, 0, 3, GrMode::Nongraded, &params, &mut r), GrStatus::Ok);
        assert_eq!(path_of(r), vec![0, 1, 3]);
        gr_route_free(r);

        assert_eq!(gr_oracle(t, 0, 3, &mut r), GrStatus::Ok);
        assert_eq!(gr_route_bandwidth(r), 50.0);
        assert!(gr_route_converged(r));
        gr_route_free(r);

        params.mutation_rate = 0.5;
        assert_eq!(gr_route(t, 0, 3, GrMode::Graded, &params, &mut r), GrStatus::InvalidArgument);
        assert_eq!(gr_oracle(t, 0, 0, &mut r), GrStatus::InvalidArgument);
        gr_topology_free(t);
    }
}

#[test]
fn generated_topology_routes() {
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(gr_topology_generate(24, 3, 0.5, 9, &mut t), GrStatus::Ok);
        let mut r = ptr::null_mut();
        assert_eq!(gr_route(t, 0, 23, GrMode::Nongraded, ptr::null(), &mut r), GrStatus::Ok);
        let path = path_of(r);
        assert_eq!((path[0], *path.last().unwrap()), (0, 23));
        gr_route_free(r);
        gr_topology_free(t);
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/gradroute.h");
    for name in [
        "gr_version",
        "gr_last_error_message",
        "gr_mm1_state",
        "gr_topology_generate",
        "gr_topology_load",
        "gr_level1_select",
        "gr_route",
        "gr_oracle",
        "gr_route_free",
        "GR_STATUS_BUFFER_TOO_SMALL",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
