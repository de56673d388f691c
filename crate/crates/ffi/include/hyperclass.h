#ifndef HYPERCLASS_H
#define HYPERCLASS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible function.
typedef enum HcStatus {
  HC_STATUS_OK = 0,
  HC_STATUS_NULL_POINTER = 1,
  HC_STATUS_INVALID_ARGUMENT = 2,
  HC_STATUS_INVALID_FIELD = 3,
  HC_STATUS_PARSE = 4,
  HC_STATUS_NOT_IRREDUCIBLE = 5,
  HC_STATUS_SQUARE_MULTIPLIER = 6,
  HC_STATUS_SEARCH_EXHAUSTED = 7,
  HC_STATUS_CAP_EXCEEDED = 8,
  HC_STATUS_CHECK_FAILED = 9,
  HC_STATUS_BUFFER_TOO_SMALL = 10,
  HC_STATUS_PANIC = 11,
} HcStatus;

// Class group, class number and L-polynomial of one discriminant `e·𝔭`.
typedef struct HcClassData HcClassData;

// A base field `F_q` with its quadratic extension.
typedef struct HcField HcField;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Last error message on this thread, or null. Owned by the library.
const char *hc_last_error(void);

// Builds `F_{p^n}` with its canonical modulus.
//
// # Safety
// `out` must be a valid pointer.
enum HcStatus hc_field_new(uint32_t p, uint32_t n, struct HcField **out);

// # Safety
// `field` must come from [`hc_field_new`] or be null.
void hc_field_free(struct HcField *field);

// # Safety
// `field` and `q_out` must be valid pointers.
enum HcStatus hc_field_size(const struct HcField *field, uint32_t *q_out);

// Least non-square of the base field, as an element index.
//
// # Safety
// `field` and `e_out` must be valid pointers.
enum HcStatus hc_field_least_non_square(const struct HcField *field, uint32_t *e_out);

// Computes the class group of `F_q[T, √(e·𝔭)]`.
//
// `poly` is the monic irreducible `𝔭` in text form, e.g. `"1+0T+1T^2"` for `T² + 1`.
// `count_cap` bounds point counting; 0 selects the default.
//
// # Safety
// `field`, `poly` and `out` must be valid pointers; `poly` NUL-terminated.
enum HcStatus hc_class_data_new(const struct HcField *field,
                                uint32_t e,
                                const char *poly,
                                uint64_t count_cap,
                                struct HcClassData **out);

// # Safety
// `data` must come from [`hc_class_data_new`] or be null.
void hc_class_data_free(struct HcClassData *data);

// # Safety
// `data` and `h_out` must be valid pointers.
enum HcStatus hc_class_number(const struct HcClassData *data, uint64_t *h_out);

// # Safety
// `data` and `g_out` must be valid pointers.
enum HcStatus hc_genus(const struct HcClassData *data, uint32_t *g_out);

// Invariant factors `d_1 | d_2 | …` of the class group.
//
// Writes at most `cap` entries; `len_out` always receives the full count.
//
// # Safety
// `data` and `len_out` must be valid; `buf` must hold `cap` entries.
enum HcStatus hc_divisors(const struct HcClassData *data,
                          uint64_t *buf,
                          size_t cap,
                          size_t *len_out);

// Coefficients `a_0, …, a_{2g}` of the L-polynomial.
//
// # Safety
// `data` and `len_out` must be valid; `buf` must hold `cap` entries.
enum HcStatus hc_l_polynomial(const struct HcClassData *data,
                              int64_t *buf,
                              size_t cap,
                              size_t *len_out);

// Rank `s` of the 2-Sylow subgroup's exponent `2^s`, and whether it is cyclic.
//
// # Safety
// All pointers must be valid.
enum HcStatus hc_two_sylow(const struct HcClassData *data, uint32_t *s_out, bool *cyclic_out);

// Searches for a degree-`k` witness pair whose class numbers differ mod 8
// and returns its certificate as JSON. Free the string with [`hc_string_free`].
//
// # Safety
// `field` and `json_out` must be valid pointers.
enum HcStatus hc_witness_json(const struct HcField *field,
                              uint32_t k,
                              uint64_t count_cap,
                              char **json_out);

// # Safety
// `s` must come from this library or be null.
void hc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERCLASS_H */
