#ifndef CHERLAB_H
#define CHERLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  CHERLAB_STATUS_OK = 0,
  CHERLAB_STATUS_NULL_ARGUMENT = 1,
  CHERLAB_STATUS_INVALID_UTF8 = 2,
  CHERLAB_STATUS_MALFORMED_INPUT = 3,
  CHERLAB_STATUS_DOMAIN_ERROR = 4,
  CHERLAB_STATUS_BUFFER_TOO_SMALL = 5,
  CHERLAB_STATUS_PANIC = 6,
} CherlabStatus;

/**
 * Opaque handle to an enumerated finite matrix group.
 */
typedef struct CherlabGroup CherlabGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL.
 *
 * The pointer stays valid until the next library call on the same thread.
 */
const char *cherlab_last_error(void);

/**
 * Build a group from descriptor text (`dim`, `conductor`, `gen` blocks).
 *
 * # Safety
 * `descriptor` must be a valid NUL-terminated string and `out` a writable pointer.
 */
CherlabStatus cherlab_group_from_text(const char *descriptor, size_t order_cap, CherlabGroup **out);

/**
 * # Safety
 * `group` must be NULL or a handle from [`cherlab_group_from_text`] not yet freed.
 */
void cherlab_group_free(CherlabGroup *group);

/**
 * Group order, dimension and number of conjugacy classes.
 *
 * # Safety
 * `group` must be a live handle; each output pointer must be writable or NULL.
 */
CherlabStatus cherlab_group_sizes(const CherlabGroup *group,
                                  size_t *order,
                                  size_t *dim,
                                  size_t *classes);

/**
 * Write `a_0..a_{2n}` into `buf`. `needed` always receives `2n + 1`.
 *
 * # Safety
 * `group` must be a live handle, `buf` must hold `len` values (or be NULL when `len` is 0),
 * and `needed` must be writable.
 */
CherlabStatus cherlab_group_profile(const CherlabGroup *group,
                                    size_t *buf,
                                    size_t len,
                                    size_t *needed);

/**
 * Reflection report as `key=value` lines; free with [`cherlab_string_free`].
 *
 * # Safety
 * `group` must be a live handle and `out` writable.
 */
CherlabStatus cherlab_group_report(const CherlabGroup *group, char **out);

/**
 * Index density lines `coeff * monomial * hbar^k`, newline separated.
 *
 * `tangent_roots` and `moments` are comma separated; `theta` is `0` or a linear form in symbols.
 *
 * # Safety
 * String arguments must be valid NUL-terminated strings and `out` writable.
 */
CherlabStatus cherlab_index_density(size_t n,
                                    size_t l,
                                    const char *tangent_roots,
                                    const char *theta,
                                    const char *moments,
                                    char **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void cherlab_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHERLAB_H */
