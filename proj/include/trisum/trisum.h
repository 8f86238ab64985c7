#ifndef TRISUM_TRISUM_H
#define TRISUM_TRISUM_H

/*
 * C interface to the trisum verification library.
 *
 * Every call that can fail returns a trisum_status and leaves a message in the
 * context (trisum_last_error). Results are owned by the caller and released
 * with trisum_result_destroy. Result items are NUL-terminated strings: one
 * JSON check report per item for verification and exploration calls, one
 * decimal value per item for trisum_sequence and trisum_minimal_multiplier.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define TRISUM_API __attribute__((visibility("default")))
#else
#define TRISUM_API
#endif

typedef enum trisum_status {
  TRISUM_OK = 0,
  TRISUM_E_INVALID_ARGUMENT = 1,
  TRISUM_E_DOMAIN = 2,
  TRISUM_E_IO = 3,
  TRISUM_E_CHECKPOINT_MISMATCH = 4,
  TRISUM_E_ARITHMETIC = 5,
  TRISUM_E_INTERNAL = 6
} trisum_status;

typedef struct trisum_context trisum_context;
typedef struct trisum_result trisum_result;

TRISUM_API const char* trisum_version(void);
TRISUM_API const char* trisum_status_name(trisum_status status);

TRISUM_API trisum_status trisum_context_create(trisum_context** out);
TRISUM_API void trisum_context_destroy(trisum_context* ctx);
/* 0 selects the hardware concurrency. */
TRISUM_API trisum_status trisum_context_set_workers(trisum_context* ctx, unsigned workers);
/* Message for the most recent failing call on ctx; "" if none. */
TRISUM_API const char* trisum_last_error(const trisum_context* ctx);

TRISUM_API size_t trisum_result_size(const trisum_result* result);
/* NULL when index is out of range. */
TRISUM_API const char* trisum_result_item(const trisum_result* result, size_t index);
/* Number of items whose status is not "pass" (always 0 for value lists). */
TRISUM_API size_t trisum_result_failures(const trisum_result* result);
TRISUM_API void trisum_result_destroy(trisum_result* result);

/* Values of a sequence for n = from .. from+count-1. name is one of
 * R, W, Rg (uses r >= 1), X, Z, Y. Rational values are written num/den. */
TRISUM_API trisum_status trisum_sequence(trisum_context* ctx, const char* name, unsigned r,
                                         unsigned from, unsigned count, trisum_result** out);

/* Parameters for trisum_verify. Fields a check does not use are ignored.
 * Prime-indexed checks use the explicit primes list when prime_count > 0,
 * otherwise every prime of the check's domain in [min_p, max_n]. */
typedef struct trisum_check_args {
  unsigned long max_n;
  unsigned long min_p;
  const unsigned long* primes;
  size_t prime_count;
  const long* bounds; /* identity parameter bounds; NULL selects defaults */
  size_t bound_count;
  unsigned long max_d; /* floor inequalities; 0 selects 2 * max_n */
  unsigned trials;     /* operator combinations */
  uint64_t seed;
} trisum_check_args;

TRISUM_API void trisum_check_args_init(trisum_check_args* args);

/* family: "theorem", "lemma", "identity", "recurrence" or "step".
 * Range checks yield every failing case followed by one summary report;
 * prime-indexed theorems and lemmas yield one report per prime. */
TRISUM_API trisum_status trisum_verify(trisum_context* ctx, const char* family, const char* id,
                                       const trisum_check_args* args, trisum_result** out);

/* Space-separated list of the ids accepted for a family, or NULL. */
TRISUM_API const char* trisum_valid_ids(const char* family);

typedef struct trisum_sweep_args {
  const char* conjecture; /* C1, C2, C3 */
  unsigned r;             /* C3 only */
  unsigned from;
  unsigned to;
  const char* output;     /* JSONL record file */
  const char* checkpoint; /* NULL selects output + ".ckpt" */
  int resume;
  unsigned batch; /* 0 selects the default */
} trisum_sweep_args;

/* Runs or resumes a persistent sweep. The result holds one summary report. */
TRISUM_API trisum_status trisum_explore_conjecture(trisum_context* ctx, const trisum_sweep_args* args,
                                                   trisum_result** out);

/* Least a >= 1 with a * sum_{k<n} (2k+1) R_{k,r}^2 divisible by n for every
 * n <= max_n, as one decimal item. */
TRISUM_API trisum_status trisum_minimal_multiplier(trisum_context* ctx, unsigned r, unsigned max_n,
                                                   trisum_result** out);

#ifdef __cplusplus
}
#endif

#endif /* TRISUM_TRISUM_H */
