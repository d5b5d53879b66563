#ifndef NUMSEMI_H
#define NUMSEMI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum NumsemiStatus {
  NUMSEMI_STATUS_OK = 0,
  NUMSEMI_STATUS_NULL_POINTER = 1,
  NUMSEMI_STATUS_INVALID_GENERATOR = 2,
  NUMSEMI_STATUS_NOT_COFINITE = 3,
  NUMSEMI_STATUS_NOT_A_MEMBER = 4,
  NUMSEMI_STATUS_INVALID_ARGUMENT = 5,
  NUMSEMI_STATUS_BUFFER_TOO_SMALL = 6,
  NUMSEMI_STATUS_ITERATION_CAP = 7,
  NUMSEMI_STATUS_INVARIANT_VIOLATION = 8,
  NUMSEMI_STATUS_PANIC = 9,
} NumsemiStatus;

// Opaque generator set.
typedef struct NumsemiGenerators NumsemiGenerators;

// Opaque invariant bundle.
typedef struct NumsemiInvariants NumsemiInvariants;

// Closed-form bounds at one probability.
typedef struct NumsemiBounds {
  double p;
  double e_lower;
  double e_upper;
  double g_lower;
  double g_upper;
  double frobenius_lower;
  double frobenius_upper;
  double f_of_p;
  double u_of_p;
  double frobenius_square_bound;
} NumsemiBounds;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static, NUL-terminated description of a status code.
const char *numsemi_status_message(enum NumsemiStatus status);

// Builds a canonical generator set from `len` values (sorted, deduplicated).
//
// # Safety
// `values` must point to `len` readable `uint64_t` (may be NULL when `len`
// is 0); `out` must be writable.
enum NumsemiStatus numsemi_generators_new(const uint64_t *values,
                                          size_t len,
                                          struct NumsemiGenerators **out);

// # Safety
// `gens` must be NULL or a handle from this library not yet freed.
void numsemi_generators_free(struct NumsemiGenerators *gens);

// Number of generators; 0 for NULL.
//
// # Safety
// `gens` must be NULL or a live handle.
size_t numsemi_generators_len(const struct NumsemiGenerators *gens);

// gcd of the generators (0 for the empty set or NULL).
//
// # Safety
// `gens` must be NULL or a live handle.
uint64_t numsemi_generators_gcd(const struct NumsemiGenerators *gens);

// Copies the sorted generators into `buf`.
//
// # Safety
// `gens` must be a live handle, `buf` writable for `cap` values, `written`
// writable.
enum NumsemiStatus numsemi_generators_copy(const struct NumsemiGenerators *gens,
                                           uint64_t *buf,
                                           size_t cap,
                                           size_t *written);

// Frobenius number; −1 when the semigroup is all of ℕ.
//
// # Safety
// `gens` must be a live handle and `out` writable.
enum NumsemiStatus numsemi_frobenius(const struct NumsemiGenerators *gens, int64_t *out);

// Apéry table of `m`: entry `i` is the least element congruent to `i`
// modulo `m`. Needs `m` entries of room.
//
// # Safety
// `gens` must be a live handle, `buf` writable for `cap` values, `written`
// writable.
enum NumsemiStatus numsemi_apery_set(const struct NumsemiGenerators *gens,
                                     uint64_t m,
                                     uint64_t *buf,
                                     size_t cap,
                                     size_t *written);

// Computes Frobenius number, genus and minimal generators together.
//
// # Safety
// `gens` must be a live handle and `out` writable.
enum NumsemiStatus numsemi_invariants_new(const struct NumsemiGenerators *gens,
                                          struct NumsemiInvariants **out);

// # Safety
// `inv` must be NULL or a live handle.
void numsemi_invariants_free(struct NumsemiInvariants *inv);

// # Safety
// `inv` must be a live handle.
int64_t numsemi_invariants_frobenius(const struct NumsemiInvariants *inv);

// # Safety
// `inv` must be a live handle.
uint64_t numsemi_invariants_genus(const struct NumsemiInvariants *inv);

// # Safety
// `inv` must be a live handle.
size_t numsemi_invariants_embedding_dimension(const struct NumsemiInvariants *inv);

// Whether Wilf's inequality holds (true for ℕ by convention).
//
// # Safety
// `inv` must be a live handle.
bool numsemi_invariants_wilf_holds(const struct NumsemiInvariants *inv);

// # Safety
// `inv` must be a live handle, `buf` writable for `cap` values, `written`
// writable.
enum NumsemiStatus numsemi_invariants_minimal_generators(const struct NumsemiInvariants *inv,
                                                         uint64_t *buf,
                                                         size_t cap,
                                                         size_t *written);

// One draw from the bounded model on `{1, …, bound}`.
//
// # Safety
// `out` must be writable.
enum NumsemiStatus numsemi_sample_bounded(double p,
                                          uint64_t bound,
                                          uint64_t seed,
                                          uint64_t trial,
                                          struct NumsemiGenerators **out);

// One draw from the unconstrained model; `stop_index` may be NULL.
//
// # Safety
// `out` must be writable; `stop_index` NULL or writable.
enum NumsemiStatus numsemi_sample_unconstrained(double p,
                                                uint64_t seed,
                                                uint64_t trial,
                                                struct NumsemiGenerators **out,
                                                uint64_t *stop_index);

// # Safety
// `out` must be writable.
enum NumsemiStatus numsemi_theoretical_bounds(double p, struct NumsemiBounds *out);

bool numsemi_is_prime(uint64_t n);

// Runs `trials` coverage trials at `(q, b)`; writes the failure count and
// the closed-form failure bound. `bound` may be NULL.
//
// # Safety
// `failures` must be writable; `bound` NULL or writable.
enum NumsemiStatus numsemi_coverage_experiment(uint64_t q,
                                               double b,
                                               uint64_t trials,
                                               uint64_t seed,
                                               uint64_t *failures,
                                               double *bound);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NUMSEMI_H */
