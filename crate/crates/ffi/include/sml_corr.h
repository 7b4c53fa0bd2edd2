#ifndef SML_CORR_H
#define SML_CORR_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum SmlFormat {
  SML_FORMAT_TEXT = 0,
  SML_FORMAT_JSON = 1,
  SML_FORMAT_TPTP = 2,
} SmlFormat;

typedef enum SmlStatus {
  SML_STATUS_OK = 0,
  SML_STATUS_NULL_POINTER = 1,
  SML_STATUS_INVALID_UTF8 = 2,
  SML_STATUS_PARSE_ERROR = 3,
  SML_STATUS_NOT_SAHLQVIST = 4,
  SML_STATUS_ALBA_FAILURE = 5,
  SML_STATUS_INVALID_ARGUMENT = 6,
  SML_STATUS_OUT_OF_RANGE = 7,
  SML_STATUS_PANIC = 99,
} SmlStatus;

// The result of a successful correspondence run.
typedef struct SmlCorrespondence SmlCorrespondence;

// A parsed inequality `φ ≤ ψ`.
typedef struct SmlInequality SmlInequality;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. The pointer
// stays valid until the next call into this library from the same thread.
const char *sml_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *sml_version(void);

// # Safety
// `s` must be NULL or a string returned by this library, not yet freed.
void sml_string_free(char *s);

// Parse `text` (`φ <= ψ`, `φ -> ψ` or a single formula).
//
// # Safety
// `text` must be a NUL-terminated string and `out` a writable pointer.
enum SmlStatus sml_inequality_parse(const char *text, struct SmlInequality **out);

// # Safety
// `h` must be NULL or a handle from [`sml_inequality_parse`], not yet freed.
void sml_inequality_free(struct SmlInequality *h);

// Canonical printed form of the inequality.
//
// # Safety
// `h` must be a live inequality handle and `out` a writable pointer.
enum SmlStatus sml_inequality_to_string(const struct SmlInequality *h, char **out);

// Whether the inequality is ε-Sahlqvist. With a non-empty `order_type`
// (e.g. `"p=1,q=d"`) only that order-type is tried, and NULL or `""`
// searches all of them. The witnessing order-type is written to
// `witness` when it is non-NULL and the answer is yes; otherwise NULL
// is written there.
//
// # Safety
// `h` must be a live handle; `order_type` NULL or a NUL-terminated string;
// `is_sahlqvist` writable; `witness` NULL or writable.
enum SmlStatus sml_classify(const struct SmlInequality *h,
                            const char *order_type,
                            bool *is_sahlqvist,
                            char **witness);

// Run the rewriting procedure and compute the first-order correspondent.
//
// # Safety
// As for [`sml_classify`]; `out` must be writable.
enum SmlStatus sml_correspond(const struct SmlInequality *h,
                              const char *order_type,
                              struct SmlCorrespondence **out);

// # Safety
// `h` must be NULL or a handle from [`sml_correspond`], not yet freed.
void sml_correspondence_free(struct SmlCorrespondence *h);

// The first-order correspondent in the requested format.
//
// # Safety
// `h` must be a live correspondence handle and `out` writable.
enum SmlStatus sml_correspondence_first_order(const struct SmlCorrespondence *h,
                                              enum SmlFormat format,
                                              char **out);

// Number of pure quasi-inequalities produced.
//
// # Safety
// `h` must be a live correspondence handle and `out` writable.
enum SmlStatus sml_correspondence_output_count(const struct SmlCorrespondence *h, size_t *out);

// The `index`-th pure quasi-inequality, printed.
//
// # Safety
// `h` must be a live correspondence handle and `out` writable.
enum SmlStatus sml_correspondence_output(const struct SmlCorrespondence *h,
                                         size_t index,
                                         char **out);

// Compare frame validity of the inequality with truth of the correspondent
// on every frame of `1..=max_worlds` worlds. `frames` receives the number
// of frames examined (up to the first disagreement, if any).
//
// # Safety
// Both handles must be live; `passed` and `frames` writable.
enum SmlStatus sml_verify(const struct SmlInequality *h,
                          const struct SmlCorrespondence *c,
                          uint32_t max_worlds,
                          bool *passed,
                          size_t *frames);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SML_CORR_H */
