#ifndef LNP_H
#define LNP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LnpStatus {
  LNP_STATUS_OK = 0,
  LNP_STATUS_INVALID_ARGUMENT = 1,
  LNP_STATUS_IO_ERROR = 2,
  LNP_STATUS_PARSE_ERROR = 3,
  LNP_STATUS_UNSOLVABLE = 4,
  LNP_STATUS_LIMIT_REACHED = 5,
  LNP_STATUS_GROUNDING_CAP = 6,
  LNP_STATUS_INVALID_PLAN = 7,
  LNP_STATUS_PANIC = 8,
} LnpStatus;

/**
 * Values for [`LnpOptions::strategy`].
 */
typedef enum LnpStrategy {
  LNP_STRATEGY_NUMERIC = 0,
  LNP_STRATEGY_PROPOSITIONAL = 1,
  LNP_STRATEGY_EXHAUSTIVE = 2,
  LNP_STRATEGY_GROUNDED = 3,
} LnpStrategy;

/**
 * A plan found by [`lnp_solve`].
 */
typedef struct LnpPlan LnpPlan;

/**
 * A parsed planning task.
 */
typedef struct LnpTask LnpTask;

/**
 * Generator and search settings. Zero means the default or no limit.
 */
typedef struct LnpOptions {
  /**
   * One of the `LnpStrategy` values.
   */
  int32_t strategy;
  uint32_t degree;
  uint64_t ground_cap;
  double time_limit_seconds;
  uint64_t node_cap;
  uint64_t memory_limit_bytes;
} LnpOptions;

typedef struct LnpSearchStats {
  uint64_t expansions;
  uint64_t generated;
  /**
   * Candidates before the final applicability filter, summed over
   * expansions.
   */
  uint64_t candidates;
  uint64_t applicable;
  double wall_time_seconds;
} LnpSearchStats;

typedef struct LnpCandidateCounts {
  uint64_t candidates;
  uint64_t applicable;
} LnpCandidateCounts;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string.
 */
const char *lnp_version(void);

/**
 * Message of the last failed call on this thread, or null.
 */
const char *lnp_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void lnp_string_free(char *s);

struct LnpOptions lnp_options_default(void);

/**
 * Reads a domain and a problem file.
 *
 * # Safety
 * Paths must be nul-terminated strings; `out` must be writable.
 */
enum LnpStatus lnp_task_load(const char *domain_path,
                             const char *problem_path,
                             struct LnpTask **out);

/**
 * Parses domain and problem text.
 *
 * # Safety
 * Texts must be nul-terminated strings; `out` must be writable.
 */
enum LnpStatus lnp_task_parse(const char *domain_text,
                              const char *problem_text,
                              struct LnpTask **out);

/**
 * # Safety
 * `task` must be null or a handle from this library, not yet freed.
 */
void lnp_task_free(struct LnpTask *task);

/**
 * # Safety
 * `task` must be null or a live handle.
 */
size_t lnp_task_num_objects(const struct LnpTask *task);

/**
 * # Safety
 * `task` must be null or a live handle.
 */
size_t lnp_task_num_schemas(const struct LnpTask *task);

/**
 * Searches for a shortest plan. On `LNP_STATUS_OK` `*out_plan` receives a
 * plan; otherwise it is set to null. `opts` and `out_stats` may be null.
 *
 * # Safety
 * `task` must be a live handle, `out_plan` writable, `out_stats` null or
 * writable.
 */
enum LnpStatus lnp_solve(const struct LnpTask *task,
                         const struct LnpOptions *opts,
                         struct LnpPlan **out_plan,
                         struct LnpSearchStats *out_stats);

/**
 * # Safety
 * `plan` must be null or a live handle.
 */
size_t lnp_plan_len(const struct LnpPlan *plan);

/**
 * Action `i` as `(name arg ...)`, or null if out of range. Borrowed from
 * the plan.
 *
 * # Safety
 * `plan` must be null or a live handle.
 */
const char *lnp_plan_action(const struct LnpPlan *plan, size_t i);

/**
 * The whole plan in the text format accepted by [`lnp_validate`].
 * Borrowed from the plan.
 *
 * # Safety
 * `plan` must be null or a live handle.
 */
const char *lnp_plan_text(const struct LnpPlan *plan);

/**
 * # Safety
 * `plan` must be null or a handle from this library, not yet freed.
 */
void lnp_plan_free(struct LnpPlan *plan);

/**
 * Applicable actions in the state reached by `plan_prefix` (the initial
 * state if null), one `(name arg ...)` per line. `*out_text` must be
 * released with [`lnp_string_free`]; `out_counts` may be null.
 *
 * # Safety
 * `task` must be a live handle, `plan_prefix` null or a nul-terminated
 * string, `out_text` writable, `out_counts` null or writable.
 */
enum LnpStatus lnp_applicable(const struct LnpTask *task,
                              const struct LnpOptions *opts,
                              const char *plan_prefix,
                              char **out_text,
                              struct LnpCandidateCounts *out_counts);

/**
 * Replays a plan. On success `*out_cost` (if not null) receives its unit
 * cost; an inapplicable step or an unreached goal gives
 * `LNP_STATUS_INVALID_PLAN`.
 *
 * # Safety
 * `task` must be a live handle, `plan_text` a nul-terminated string,
 * `out_cost` null or writable.
 */
enum LnpStatus lnp_validate(const struct LnpTask *task, const char *plan_text, size_t *out_cost);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LNP_H */
