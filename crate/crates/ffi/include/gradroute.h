#ifndef GRADROUTE_H
#define GRADROUTE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum GrStatus {
  GR_STATUS_OK = 0,
  GR_STATUS_NULL_POINTER = 1,
  GR_STATUS_INVALID_ARGUMENT = 2,
  GR_STATUS_IO = 3,
  GR_STATUS_PARSE = 4,
  GR_STATUS_UNSTABLE_QUEUE = 5,
  GR_STATUS_REGION_STARVATION = 6,
  GR_STATUS_NO_PATH = 7,
  GR_STATUS_BUFFER_TOO_SMALL = 8,
  GR_STATUS_PANIC = 99,
} GrStatus;

typedef enum GrMode {
  GR_MODE_GRADED = 0,
  GR_MODE_NONGRADED = 1,
} GrMode;

/**
 * Opaque routing result.
 */
typedef struct GrRoute GrRoute;

/**
 * Opaque Level-1 survivor set.
 */
typedef struct GrSurvivors GrSurvivors;

/**
 * Opaque topology handle.
 */
typedef struct GrTopology GrTopology;

typedef struct GrGaParams {
  uint32_t population_size;
  uint32_t generations;
  double crossover_rate;
  double mutation_rate;
  double acceptance_threshold;
  uint64_t seed;
} GrGaParams;

typedef struct GrQueueState {
  double rho;
  double mean_jobs;
  double mean_delay_s;
} GrQueueState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *gr_last_error_message(void);

const char *gr_version(void);

struct GrGaParams gr_ga_params_default(void);

enum GrStatus gr_mm1_state(double lambda, double mu, double capacity, struct GrQueueState *out);

enum GrStatus gr_topology_generate(size_t node_count,
                                   size_t region_count,
                                   double edge_density,
                                   uint64_t seed,
                                   struct GrTopology **out);

enum GrStatus gr_topology_load(const char *path, struct GrTopology **out);

enum GrStatus gr_topology_save(const struct GrTopology *topology, const char *path);

void gr_topology_free(struct GrTopology *topology);

/**
 * Zero for a NULL handle.
 */
size_t gr_topology_node_count(const struct GrTopology *topology);

size_t gr_topology_link_count(const struct GrTopology *topology);

uint64_t gr_topology_fingerprint(const struct GrTopology *topology);

/**
 * In-degree of `node`.
 */
enum GrStatus gr_topology_node_density(const struct GrTopology *topology,
                                       uint32_t node,
                                       size_t *out);

/**
 * Level-1 selection with default grading thresholds.
 */
enum GrStatus gr_level1_select(const struct GrTopology *topology, struct GrSurvivors **out);

size_t gr_survivors_kept_count(const struct GrSurvivors *survivors);

/**
 * Copies kept node ids into `buffer`. `out_len` always receives the number
 * of kept nodes; `GR_STATUS_BUFFER_TOO_SMALL` when `capacity` is short.
 */
enum GrStatus gr_survivors_kept_nodes(const struct GrSurvivors *survivors,
                                      uint32_t *buffer,
                                      size_t capacity,
                                      size_t *out_len);

enum GrStatus gr_survivors_mean_grade(const struct GrSurvivors *survivors, double *out);

void gr_survivors_free(struct GrSurvivors *survivors);

/**
 * Runs the GA between `source` and `dest`. `params` may be NULL for the
 * defaults.
 */
enum GrStatus gr_route(const struct GrTopology *topology,
                       uint32_t source,
                       uint32_t dest,
                       enum GrMode mode,
                       const struct GrGaParams *params,
                       struct GrRoute **out);

/**
 * Exact widest path over the full topology.
 */
enum GrStatus gr_oracle(const struct GrTopology *topology,
                        uint32_t source,
                        uint32_t dest,
                        struct GrRoute **out);

enum GrStatus gr_route_path(const struct GrRoute *route,
                            uint32_t *buffer,
                            size_t capacity,
                            size_t *out_len);

double gr_route_bandwidth(const struct GrRoute *route);

uint32_t gr_route_generations(const struct GrRoute *route);

bool gr_route_converged(const struct GrRoute *route);

void gr_route_free(struct GrRoute *route);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRADROUTE_H */
