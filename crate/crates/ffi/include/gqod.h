#ifndef GQOD_H
#define GQOD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of a library call.
typedef enum GqodStatus {
  GQOD_STATUS_OK = 0,
  // A required pointer argument was null.
  GQOD_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  GQOD_STATUS_INVALID_UTF8 = 2,
  // The order specification could not be loaded, or a preset or index
  // name is unknown.
  GQOD_STATUS_ORDER = 3,
  // A term could not be parsed.
  GQOD_STATUS_PARSE = 4,
  // Two handles belong to different orders.
  GQOD_STATUS_ORDER_MISMATCH = 5,
  // The embedding search rejected its input.
  GQOD_STATUS_EMBED = 6,
  // A game could not be played.
  GQOD_STATUS_GAME = 7,
  // A trace failed verification.
  GQOD_STATUS_TRACE = 8,
  // The library panicked; this is a bug.
  GQOD_STATUS_INTERNAL = 9,
} GqodStatus;

// How a hydra game ended.
typedef enum GqodOutcome {
  // No move applies to the final hydra.
  GQOD_OUTCOME_TERMINAL = 0,
  GQOD_OUTCOME_STEP_LIMIT = 1,
  GQOD_OUTCOME_SIZE_LIMIT = 2,
  // A player declined to move.
  GQOD_OUTCOME_STOPPED = 3,
} GqodOutcome;

// A loaded label order.
typedef struct GqodOrder GqodOrder;

// A term over a particular order.
typedef struct GqodTerm GqodTerm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message of the last failed call on this thread, or null. The pointer
// stays valid until the next library call on the same thread.
const char *gqod_last_error(void);

// Releases a string returned by the library. Null is ignored.
//
// # Safety
// `s` must come from this library and must not be used afterwards.
void gqod_string_free(char *s);

// Loads an order from the text of an order specification.
//
// # Safety
// `spec` must be a NUL-terminated string and `out` a writable pointer.
enum GqodStatus gqod_order_load(const char *spec, struct GqodOrder **out);

// Loads a built-in order: `hydra`, `two-chain`, `counterexample` or
// `two-element`.
//
// # Safety
// `name` must be a NUL-terminated string and `out` a writable pointer.
enum GqodStatus gqod_order_preset(const char *name, struct GqodOrder **out);

// Releases an order. Terms parsed over it stay valid. Null is ignored.
//
// # Safety
// `order` must come from this library and must not be used afterwards.
void gqod_order_free(struct GqodOrder *order);

// Parses a term over `order`.
//
// # Safety
// `order` must be a live handle, `text` a NUL-terminated string and `out`
// a writable pointer.
enum GqodStatus gqod_term_parse(const struct GqodOrder *order,
                                const char *text,
                                struct GqodTerm **out);

// The canonical text of a term, to be released with [`gqod_string_free`].
// Returns null if `term` is null.
//
// # Safety
// `term` must be a live handle or null.
char *gqod_term_print(const struct GqodTerm *term);

// Releases a term. Null is ignored.
//
// # Safety
// `term` must come from this library and must not be used afterwards.
void gqod_term_free(struct GqodTerm *term);

// Decides `a ≤ b` at the index named `index`; a null index means the
// level above every index.
//
// # Safety
// `a` and `b` must be live handles, `index` null or a NUL-terminated
// string, and `out` a writable pointer.
enum GqodStatus gqod_leq(const struct GqodTerm *a,
                         const struct GqodTerm *b,
                         const char *index,
                         bool *out);

// Decides whether `a` is strictly below `b` in the combined order `⋘`.
//
// # Safety
// `a` and `b` must be live handles and `out` a writable pointer.
enum GqodStatus gqod_lll(const struct GqodTerm *a, const struct GqodTerm *b, bool *out);

// Decides whether `src` gap-embeds into `tgt`. Connected terms are
// embedded as trees, anything else as forests.
//
// # Safety
// `src` and `tgt` must be live handles and `out` a writable pointer.
enum GqodStatus gqod_embeds(const struct GqodTerm *src, const struct GqodTerm *tgt, bool *out);

// Plays a seeded random hydra game from `initial`, writing the outcome and
// the trace text (release with [`gqod_string_free`]). Hitting a limit is
// not an error; it is reported through `outcome`. `trace` may be null.
//
// # Safety
// `initial` must be a live handle, `outcome` a writable pointer and
// `trace` null or a writable pointer.
enum GqodStatus gqod_hydra_play(const struct GqodTerm *initial,
                                uint64_t seed,
                                size_t limit_steps,
                                size_t limit_size,
                                enum GqodOutcome *outcome,
                                char **trace);

// Re-verifies a recorded trace against `order`, writing the number of
// steps it contains.
//
// # Safety
// `order` must be a live handle, `text` a NUL-terminated string and
// `steps` a writable pointer.
enum GqodStatus gqod_hydra_replay(const struct GqodOrder *order, const char *text, size_t *steps);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GQOD_H */
