#ifndef BWCONTACT_H
#define BWCONTACT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum BwStatus {
  BW_STATUS_OK = 0,
  BW_STATUS_NULL_POINTER = 1,
  BW_STATUS_INVALID_UTF8 = 2,
  BW_STATUS_MALFORMED_JSON = 3,
  BW_STATUS_INVALID_DESCRIPTOR = 4,
  BW_STATUS_INVALID_ARGUMENT = 5,
  BW_STATUS_OVERFLOW = 6,
  BW_STATUS_INTERNAL = 7,
} BwStatus;

/**
 * Opaque Boothby-Wang total space with its contact invariants.
 */
typedef struct BwContact BwContact;

/**
 * Opaque validated descriptor of a symplectic 4-manifold.
 */
typedef struct BwDescriptor BwDescriptor;

typedef struct BwContactInfo {
  uint32_t b2_x;
  bool spin;
  uint64_t level;
  uint64_t delta;
  uint64_t dk;
} BwContactInfo;

typedef struct BwDecision {
  bool isomorphic;
  /**
   * Residue class with mismatched status, or -1.
   */
  int64_t distinguisher_b;
  /**
   * Lowest generator degrees at level 0 when they differ; zero otherwise.
   */
  int64_t lowest;
  int64_t lowest_prime;
} BwDecision;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next call into this library on the same thread.
 */
const char *bw_last_error_message(void);

/**
 * Parse and validate a descriptor in the JSON interchange format.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum BwStatus bw_descriptor_from_json(const char *json, struct BwDescriptor **out);

/**
 * Build and validate a descriptor from coefficient arrays of length `b2`.
 *
 * # Safety
 * `name` must be NUL-terminated; `c1` and `omega` must point to `b2` values.
 */
enum BwStatus bw_descriptor_new(const char *name,
                                uint32_t b2,
                                uint32_t b2_plus,
                                const int64_t *c1,
                                const int64_t *omega,
                                bool spin,
                                struct BwDescriptor **out);

/**
 * # Safety
 * `desc` must come from this library and not be used afterwards.
 */
void bw_descriptor_free(struct BwDescriptor *desc);

/**
 * Compute the total space and contact invariants of a descriptor.
 *
 * # Safety
 * `desc` must be a live descriptor handle; `out` must be writable.
 */
enum BwStatus bw_classify(const struct BwDescriptor *desc, struct BwContact **out);

/**
 * # Safety
 * `contact` must come from this library and not be used afterwards.
 */
void bw_contact_free(struct BwContact *contact);

/**
 * # Safety
 * `contact` must be a live handle; `out` must be writable.
 */
enum BwStatus bw_contact_info(const struct BwContact *contact, struct BwContactInfo *out);

/**
 * Diffeomorphism type of the total space, e.g. `#21 S²×S³`. Free with
 * [`bw_string_free`].
 *
 * # Safety
 * `contact` must be a live handle; `out` must be writable.
 */
enum BwStatus bw_contact_manifold_name(const struct BwContact *contact, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void bw_string_free(char *s);

/**
 * Decide whether contact homology distinguishes two structures at level `d`
 * with canonical divisibilities `dk` and `dk_prime`.
 *
 * # Safety
 * `out` must be writable.
 */
enum BwStatus bw_decide(uint64_t d, uint64_t dk, uint64_t dk_prime, struct BwDecision *out);

/**
 * Full comparison report as JSON, the same document `bwcontact compare
 * --format json` prints. Free with [`bw_string_free`].
 *
 * # Safety
 * `first` and `second` must be live handles; `out` must be writable.
 */
enum BwStatus bw_compare_json(const struct BwDescriptor *first,
                              const struct BwDescriptor *second,
                              uint64_t k_max,
                              char **out);

/**
 * Degree spectrum and residue table as JSON. Free with [`bw_string_free`].
 *
 * # Safety
 * `desc` must be a live handle; `out` must be writable.
 */
enum BwStatus bw_spectrum_json(const struct BwDescriptor *desc, uint64_t k_max, char **out);

/**
 * Counting report for base Betti number `b2` and level `level` against the
 * built-in catalog, as JSON. Free with [`bw_string_free`].
 *
 * # Safety
 * `out` must be writable.
 */
enum BwStatus bw_count_report_json(uint32_t b2, uint64_t level, char **out);

/**
 * Number of divisors `k >= 4` of `d`.
 *
 * # Safety
 * `out` must be writable.
 */
enum BwStatus bw_count_n(uint64_t d, uint64_t *out);

/**
 * Number of odd divisors `k >= 4` of `d`.
 *
 * # Safety
 * `out` must be writable.
 */
enum BwStatus bw_count_n_prime(uint64_t d, uint64_t *out);

/**
 * gcd of the entries of `c`.
 *
 * # Safety
 * `c` must point to `len` values; `out` must be writable.
 */
enum BwStatus bw_divisibility(const int64_t *c, size_t len, uint64_t *out);

/**
 * Divisibility of `c` in the quotient by the indivisible class `w`.
 *
 * # Safety
 * `c` and `w` must point to `len` values; `out` must be writable.
 */
enum BwStatus bw_quotient_divisibility(const int64_t *c,
                                       const int64_t *w,
                                       size_t len,
                                       uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BWCONTACT_H */
