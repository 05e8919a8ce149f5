#ifndef MUSTAFIN_H
#define MUSTAFIN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes.
 */
typedef enum MustafinStatus {
  MUSTAFIN_STATUS_OK = 0,
  MUSTAFIN_STATUS_NULL_POINTER = 1,
  MUSTAFIN_STATUS_INVALID_UTF8 = 2,
  MUSTAFIN_STATUS_PARSE_ERROR = 3,
  MUSTAFIN_STATUS_INVALID_INPUT = 4,
  MUSTAFIN_STATUS_COMPUTATION_FAILED = 5,
  MUSTAFIN_STATUS_PANIC = 6,
} MustafinStatus;

/*
 A labeled decomposition of a special fiber.
 */
typedef struct MustafinClassification MustafinClassification;

/*
 A configuration together with its degeneration.
 */
typedef struct MustafinDegeneration MustafinDegeneration;

/*
 Component counts by kind.
 */
typedef struct MustafinCounts {
  size_t total;
  size_t primary;
  size_t secondary;
  size_t mixed;
  size_t unresolved;
} MustafinCounts;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failure on this thread, or NULL. The pointer stays
 valid until the next call into this library on the same thread.
 */
const char *mustafin_last_error(void);

/*
 Releases a string returned by this library. NULL is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void mustafin_string_free(char *s);

/*
 Parses a run configuration in the line format and builds its
 degeneration.

 # Safety
 `config_text` must be a valid NUL-terminated string and `out` a valid
 pointer.
 */
enum MustafinStatus mustafin_degeneration_new(const char *config_text,
                                              struct MustafinDegeneration **out);

/*
 # Safety
 `h` must come from [`mustafin_degeneration_new`] and not have been
 freed. NULL is ignored.
 */
void mustafin_degeneration_free(struct MustafinDegeneration *h);

/*
 Generators of the special fiber ideal, one per line.

 # Safety
 `h` must be a live handle and `out` a valid pointer.
 */
enum MustafinStatus mustafin_degeneration_fiber(const struct MustafinDegeneration *h, char **out);

/*
 Decomposes and labels the special fiber. `max_candidates` bounds the
 secondary-vertex search; 0 selects the default.

 # Safety
 `h` must be a live handle and `out` a valid pointer.
 */
enum MustafinStatus mustafin_classify(const struct MustafinDegeneration *h,
                                      size_t max_candidates,
                                      struct MustafinClassification **out);

/*
 # Safety
 `h` must come from [`mustafin_classify`] and not have been freed. NULL
 is ignored.
 */
void mustafin_classification_free(struct MustafinClassification *h);

/*
 # Safety
 `h` must be a live handle and `out` a valid pointer.
 */
enum MustafinStatus mustafin_classification_counts(const struct MustafinClassification *h,
                                                   struct MustafinCounts *out);

/*
 One-line summary such as `8 components: 3 primary, ...`.

 # Safety
 `h` must be a live handle and `out` a valid pointer.
 */
enum MustafinStatus mustafin_classification_summary(const struct MustafinClassification *h,
                                                    char **out);

/*
 Full report as a JSON document.

 # Safety
 `h` must be a live handle and `out` a valid pointer.
 */
enum MustafinStatus mustafin_classification_json(const struct MustafinClassification *h,
                                                 char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MUSTAFIN_H */
