/* C interface to the pdgeom verification toolkit. */

#ifndef PDGEOM_H
#define PDGEOM_H

/* Generated by cbindgen from pdgeom-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible entry point.
typedef enum PdgeomStatus {
  // success
  PDGEOM_STATUS_OK = 0,
  // a pointer argument was null or otherwise unusable
  PDGEOM_STATUS_INVALID_ARGUMENT = 1,
  // the configuration does not describe a runnable verification
  PDGEOM_STATUS_CONFIG_ERROR = 2,
  // the verification machinery failed to build its objects
  PDGEOM_STATUS_VERIFICATION_ERROR = 3,
  // an internal panic was caught at the boundary
  PDGEOM_STATUS_PANIC = 4,
} PdgeomStatus;

// Opaque verification report.
typedef struct PdgeomReport PdgeomReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Run the full verification described by `config_json` (the CLI's config
// format) with default statistical budgets. On success `*out_report`
// receives an owned handle.
//
// # Safety
// `config_json` must point to a NUL-terminated string and `out_report`
// to writable storage for one pointer.
enum PdgeomStatus pdgeom_report_run(const char *config_json,
                                    uint64_t seed,
                                    struct PdgeomReport **out_report);

// Same as `pdgeom_report_run` with explicit statistical budgets
// (survey samples, optimizer restarts, radial directions), for callers
// that want faster, coarser runs.
//
// # Safety
// See `pdgeom_report_run`.
enum PdgeomStatus pdgeom_report_run_with_budget(const char *config_json,
                                                uint64_t seed,
                                                uint64_t samples,
                                                uint64_t restarts,
                                                uint64_t directions,
                                                struct PdgeomReport **out_report);

// 1 when every check passed, 0 when any failed, -1 on a null handle.
//
// # Safety
// `report` must be a live handle from `pdgeom_report_run*` or null.
int32_t pdgeom_report_overall_pass(const struct PdgeomReport *report);

// Total number of recorded checks across all sections; 0 on null.
//
// # Safety
// `report` must be a live handle or null.
uint64_t pdgeom_report_check_count(const struct PdgeomReport *report);

// Number of sections in the report; 0 on null.
//
// # Safety
// `report` must be a live handle or null.
uint64_t pdgeom_report_section_count(const struct PdgeomReport *report);

// The canonical JSON serialization of the report (identical bytes for
// identical config and seed). Returns null on a null handle; the caller
// frees the string with `pdgeom_string_free`.
//
// # Safety
// `report` must be a live handle or null.
char *pdgeom_report_to_json(const struct PdgeomReport *report);

// Release a report handle. Null is ignored.
//
// # Safety
// `report` must be a handle from `pdgeom_report_run*` that has not been
// freed already, or null.
void pdgeom_report_free(struct PdgeomReport *report);

// Release a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from a pdgeom function and not be freed twice.
void pdgeom_string_free(char *s);

// The most recent error message on this thread, or null when none was
// recorded. The caller frees it with `pdgeom_string_free`.
char *pdgeom_last_error_message(void);

// Library version as a caller-owned string.
char *pdgeom_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PDGEOM_H */
