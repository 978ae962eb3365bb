#ifndef SHANNON_H
#define SHANNON_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call. Values 2–4 coincide with the exit codes of
 * the `shannon` command-line tool.
 */
typedef enum ShannonStatus {
  SHANNON_STATUS_OK = 0,
  SHANNON_STATUS_NULL_POINTER = 1,
  SHANNON_STATUS_INVALID_ARGUMENT = 2,
  SHANNON_STATUS_NOT_CONVERGED = 3,
  SHANNON_STATUS_BUDGET_EXCEEDED = 4,
  SHANNON_STATUS_PANIC = 5,
} ShannonStatus;

/**
 * Opaque discrete memoryless channel.
 */
typedef struct ShannonChannel ShannonChannel;

/**
 * Opaque binary block code.
 */
typedef struct ShannonCode ShannonCode;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on the calling thread, or NULL.
 * The pointer stays valid until the next failing call on this thread.
 */
const char *shannon_last_error_message(void);

/**
 * Static name of a status value; `"unknown"` for values outside the enum.
 */
const char *shannon_status_name(int status);

/**
 * Entropy of the `len` probabilities at `probs` in logarithm base `base`.
 *
 * # Safety
 * `probs` must point to `len` readable doubles; `out` must be writable.
 */
enum ShannonStatus shannon_entropy(const double *probs, size_t len, double base, double *out);

/**
 * The Shannon function `H2(p)` in bits.
 *
 * # Safety
 * `out` must be writable.
 */
enum ShannonStatus shannon_binary_entropy(double p, double *out);

/**
 * Capacity `1 - H2(p)` of the binary symmetric channel, in base `base`.
 *
 * # Safety
 * `out` must be writable.
 */
enum ShannonStatus shannon_bsc_capacity(double p, double base, double *out);

/**
 * Creates a channel from a row-major `inputs x outputs` matrix of forward
 * probabilities.
 *
 * # Safety
 * `forward` must point to `inputs * outputs` readable doubles; `out` must be
 * writable.
 */
enum ShannonStatus shannon_channel_new(const double *forward,
                                       size_t inputs,
                                       size_t outputs,
                                       struct ShannonChannel **out);

/**
 * Creates a binary symmetric channel with crossover probability `p`.
 *
 * # Safety
 * `out` must be writable.
 */
enum ShannonStatus shannon_channel_new_bsc(double p, struct ShannonChannel **out);

/**
 * Releases a channel. NULL is ignored.
 *
 * # Safety
 * `channel` must be NULL or a handle from `shannon_channel_new*` that has
 * not been freed.
 */
void shannon_channel_free(struct ShannonChannel *channel);

/**
 * Number of input and output symbols.
 *
 * # Safety
 * `channel` must be a live handle; the out-pointers must be writable.
 */
enum ShannonStatus shannon_channel_shape(const struct ShannonChannel *channel,
                                         size_t *inputs,
                                         size_t *outputs);

/**
 * Mutual information `H(R) - H(R|S)` for the input distribution `input`.
 *
 * # Safety
 * `channel` must be a live handle; `input` must point to `len` readable
 * doubles; `out` must be writable.
 */
enum ShannonStatus shannon_channel_mutual_information(const struct ShannonChannel *channel,
                                                      const double *input,
                                                      size_t len,
                                                      double base,
                                                      double *out);

/**
 * Channel capacity by Blahut–Arimoto.
 *
 * Writes the capacity, the maximizing input distribution (into
 * `optimal_input`, which must hold `inputs` doubles) and the iteration count.
 * `optimal_input` and `iterations` may be NULL. Returns
 * `SHANNON_STATUS_NOT_CONVERGED` with the best iterate when `max_iterations`
 * is reached first.
 *
 * # Safety
 * `channel` must be a live handle; non-NULL out-pointers must be writable
 * for the stated sizes.
 */
enum ShannonStatus shannon_channel_capacity(const struct ShannonChannel *channel,
                                            double tolerance,
                                            size_t max_iterations,
                                            double base,
                                            double *capacity,
                                            double *optimal_input,
                                            size_t *iterations);

/**
 * Creates a code from `count` codewords of `length` symbols each.
 *
 * # Safety
 * `words` must point to `count` readable `uint64_t`; `out` must be writable.
 */
enum ShannonStatus shannon_code_new(const uint64_t *words,
                                    size_t count,
                                    uint32_t length,
                                    struct ShannonCode **out);

/**
 * Creates the repetition code `{0^n, 1^n}`.
 *
 * # Safety
 * `out` must be writable.
 */
enum ShannonStatus shannon_code_new_repetition(uint32_t length, struct ShannonCode **out);

/**
 * Creates a code of `count` distinct uniformly random words of `length`
 * symbols, determined by `seed`.
 *
 * # Safety
 * `out` must be writable.
 */
enum ShannonStatus shannon_code_new_random(uint32_t length,
                                           uint64_t count,
                                           uint64_t seed,
                                           struct ShannonCode **out);

/**
 * Releases a code. NULL is ignored.
 *
 * # Safety
 * `code` must be NULL or a handle from `shannon_code_new*` that has not
 * been freed.
 */
void shannon_code_free(struct ShannonCode *code);

/**
 * Block length and number of codewords.
 *
 * # Safety
 * `code` must be a live handle; the out-pointers must be writable.
 */
enum ShannonStatus shannon_code_shape(const struct ShannonCode *code,
                                      uint32_t *length,
                                      size_t *count);

/**
 * Nearest-codeword decoding. Writes the codeword index (lowest on ties) and
 * its Hamming distance to `received`; `distance` may be NULL.
 *
 * # Safety
 * `code` must be a live handle; out-pointers must be writable.
 */
enum ShannonStatus shannon_code_decode(const struct ShannonCode *code,
                                       uint64_t received,
                                       size_t *index,
                                       uint32_t *distance);

/**
 * Exact probability of correct nearest-codeword decoding over a BSC with
 * crossover `p`, codewords equiprobable.
 *
 * # Safety
 * `code` must be a live handle; `out` must be writable.
 */
enum ShannonStatus shannon_code_exact_correct_probability(const struct ShannonCode *code,
                                                          double p,
                                                          double *out);

/**
 * Monte Carlo estimate of the correct-decoding probability and its
 * binomial standard error; `standard_error` may be NULL.
 *
 * # Safety
 * `code` must be a live handle; out-pointers must be writable.
 */
enum ShannonStatus shannon_code_estimate_correct_probability(const struct ShannonCode *code,
                                                             double p,
                                                             uint64_t trials,
                                                             uint64_t seed,
                                                             double *estimate,
                                                             double *standard_error);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SHANNON_H */
