#ifndef RATMAPS_H
#define RATMAPS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. The first four match the exit codes of the command-line tool.
 */
typedef enum RmStatus {
  RM_STATUS_OK = 0,
  /**
   * Parse or validation error.
   */
  RM_STATUS_INVALID = 1,
  /**
   * A negative answer that prevents the command from finishing, such as
   * inverting a map that is not birational.
   */
  RM_STATUS_NEGATIVE = 2,
  RM_STATUS_STEP_LIMIT = 3,
  RM_STATUS_NULL_ARGUMENT = 4,
  RM_STATUS_BAD_UTF8 = 5,
  /**
   * The library panicked; this is a bug.
   */
  RM_STATUS_INTERNAL = 6,
} RmStatus;

/**
 * Opaque handle to a parsed script.
 */
typedef struct RmSession RmSession;

/**
 * Parses `script` and stores a new session in `*out`.
 *
 * # Safety
 * `script` must be a NUL-terminated string and `out` a valid pointer.
 */
enum RmStatus rm_session_new(const char *script, struct RmSession **out);

/**
 * Releases a session. Null is ignored.
 *
 * # Safety
 * `session` must come from [`rm_session_new`] and not be used afterwards.
 */
void rm_session_free(struct RmSession *session);

/**
 * Runs one command line against the session. The report and the
 * diagnostics are stored in `*out_text` and `*err_text`; either pointer may be
 * null when that text is not wanted.
 *
 * # Safety
 * `session` must be live, `command` NUL-terminated, and the output
 * pointers valid or null.
 */
enum RmStatus rm_run_command(const struct RmSession *session,
                             const char *command,
                             char **out_text,
                             char **err_text);

/**
 * Runs the command statements of the script in order, stopping at the
 * first failure.
 *
 * # Safety
 * As for [`rm_run_command`].
 */
enum RmStatus rm_run_script(const struct RmSession *session,
                            bool verbose,
                            char **out_text,
                            char **err_text);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void rm_string_free(char *s);

/**
 * Message for the last failed call on this thread, or an empty string.
 * The pointer stays valid until the next call on the same thread.
 */
const char *rm_last_error(void);

#endif  /* RATMAPS_H */
