/* C interface to the torific library. */

#ifndef TORIFIC_H
#define TORIFIC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status of a completed call. Matches the command-line exit codes for
 * input and domain failures.
 */
typedef enum TorificStatus {
  TORIFIC_STATUS_OK = 0,
  TORIFIC_STATUS_NULL_POINTER = 1,
  TORIFIC_STATUS_INVALID_INPUT = 2,
  TORIFIC_STATUS_DOMAIN_ERROR = 3,
} TorificStatus;

/**
 * Opaque result handle: owns the output JSON (on success) or the error
 * message (on failure).
 */
typedef struct TorificResult TorificResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Runs `command` on the JSON document `input_json` and returns an owned
 * result handle. Never returns null.
 *
 * # Safety
 * Both pointers must be valid NUL-terminated C strings (or null, which
 * yields a `NullPointer` status).
 */
struct TorificResult *torific_run(const char *command, const char *input_json);

/**
 * Status of a result handle.
 *
 * # Safety
 * `result` must be a handle returned by `torific_run` that has not been
 * freed.
 */
enum TorificStatus torific_result_status(const struct TorificResult *result);

/**
 * Output JSON of a successful call, or null. The string is owned by the
 * handle and freed with it.
 *
 * # Safety
 * `result` must be a live handle returned by `torific_run`.
 */
const char *torific_result_output(const struct TorificResult *result);

/**
 * Error message of a failed call, or null. The string is owned by the
 * handle and freed with it.
 *
 * # Safety
 * `result` must be a live handle returned by `torific_run`.
 */
const char *torific_result_error(const struct TorificResult *result);

/**
 * Frees a result handle. Null is accepted and ignored.
 *
 * # Safety
 * `result` must be a handle returned by `torific_run`, freed at most
 * once.
 */
void torific_result_free(struct TorificResult *result);

/**
 * Version of the underlying library, as a static string.
 */
const char *torific_version(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TORIFIC_H */
