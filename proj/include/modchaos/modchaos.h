#ifndef MODCHAOS_H
#define MODCHAOS_H

/*
 * C API of the modchaos shared library.
 *
 * All objects are opaque handles created and destroyed through these
 * functions. Every call returns an mdc_status; MDC_OK means success and any
 * other value leaves outputs untouched. mdc_last_error() returns a
 * thread-local message for the most recent failure on the calling thread.
 *
 * Strings returned through char** outputs are heap-allocated and must be
 * released with mdc_string_free().
 *
 * Command-level entry points (mdc_run_*) take the same JSON configuration
 * documents the modchaos CLI consumes and produce a result bundle holding the
 * JSON report, optional CSV path data, optional SVG, and the CLI exit code
 * semantics (0 verdict true / witnesses found, 1 otherwise).
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mdc_status {
  MDC_OK = 0,
  MDC_ERR_INVALID_ARGUMENT = 1,
  MDC_ERR_HORIZON_EXCEEDED = 2,
  MDC_ERR_ALPHABET_MISMATCH = 3,
  MDC_ERR_SYMBOL_OUT_OF_RANGE = 4,
  MDC_ERR_EMPTY_BLOCK = 5,
  MDC_ERR_DEPTH_EXCEEDED = 6,
  MDC_ERR_BUDGET_EXCEEDED = 7,
  MDC_ERR_INCOMPATIBLE_DESCRIPTORS = 8,
  MDC_ERR_MODULE_MISMATCH = 9,
  MDC_ERR_INVALID_OFFSET = 10,
  MDC_ERR_RANGES_OVERLAP = 11,
  MDC_ERR_NOT_FOUND = 12,
  MDC_ERR_PARSE = 13,
  MDC_ERR_INTERNAL = 14,
  MDC_ERR_NULL_ARGUMENT = 100,
  MDC_ERR_OUT_OF_MEMORY = 101
} mdc_status;

const char* mdc_status_name(mdc_status status);
const char* mdc_version(void);
const char* mdc_last_error(void);
void mdc_string_free(char* s);

/* ---- symbol sequences -------------------------------------------------- */

typedef struct mdc_seq mdc_seq;

/* Periodic repetitions of a nonempty block over the alphabet {1..m}. */
mdc_status mdc_seq_periodic(int m, const int* block, size_t block_len, mdc_seq** out);

/* Prefix followed by periodic repetitions of a block. */
mdc_status mdc_seq_eventually_periodic(int m, const int* prefix, size_t prefix_len,
                                       const int* block, size_t block_len,
                                       mdc_seq** out);

/* Exactly the given symbols; reads past the horizon fail. */
mdc_status mdc_seq_finite(int m, const int* symbols, size_t len, mdc_seq** out);

/* Concatenation of all words of length 1, 2, 3, ... in lexicographic order. */
mdc_status mdc_seq_universal(int m, mdc_seq** out);

/* Symbol at 1-based position k. */
mdc_status mdc_seq_at(const mdc_seq* seq, uint64_t k, int* out_symbol);

/* Bernoulli shift applied n times. */
mdc_status mdc_seq_shift(const mdc_seq* seq, uint64_t n, mdc_seq** out);

/* Sigma metric bounds truncated at `horizon` terms; lo == hi when exact. */
mdc_status mdc_seq_sigma_distance(const mdc_seq* a, const mdc_seq* b,
                                  uint64_t horizon, double* lo, double* hi);

/* Smallest 1-based start of `word` within `horizon`; MDC_ERR_NOT_FOUND when
 * absent. */
mdc_status mdc_seq_find_word(const mdc_seq* seq, const int* word, size_t word_len,
                             uint64_t horizon, uint64_t* out_position);

void mdc_seq_destroy(mdc_seq* seq);

/* ---- structures and certificates --------------------------------------- */

typedef struct mdc_structure mdc_structure;

/* Builds a structure from a JSON description: {"kind":"plus-minus-t"},
 * {"kind":"interval-functions","i_lo":..,"i_hi":..},
 * {"kind":"function-family",...}, or {"kind":"inline",...}. */
mdc_status mdc_structure_create(const char* structure_json, mdc_structure** out);

/* Runs the modular (or strong) certificate. options_json may be NULL for
 * defaults ({"depth":3,"degree":1,"threshold":1e-9} over the full range).
 * out_verdict receives 1 when every checked condition holds. */
mdc_status mdc_structure_certify(const mdc_structure* structure,
                                 const char* options_json, char** out_report_json,
                                 int* out_verdict);

void mdc_structure_destroy(mdc_structure* structure);

/* ---- command execution -------------------------------------------------- */

typedef struct mdc_result mdc_result;

mdc_status mdc_run_certify(const char* config_json, mdc_result** out);
mdc_status mdc_run_witness(const char* config_json, mdc_result** out);
mdc_status mdc_run_simulate(const char* config_json, int want_svg, mdc_result** out);
mdc_status mdc_run_example(int example_id, uint64_t seed, int want_svg,
                           mdc_result** out);

/* Views into the result bundle; valid until mdc_result_destroy. CSV and SVG
 * return NULL when the command produced none. */
const char* mdc_result_report_json(const mdc_result* result);
const char* mdc_result_csv(const mdc_result* result);
const char* mdc_result_svg(const mdc_result* result);
int mdc_result_exit_code(const mdc_result* result);

void mdc_result_destroy(mdc_result* result);

#ifdef __cplusplus
}
#endif

#endif /* MODCHAOS_H */
