#ifndef PBRACKET_H
#define PBRACKET_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Outcome of a call.
 */
typedef enum {
  PB_STATUS_OK = 0,
  /*
   A required pointer argument was null.
   */
  PB_STATUS_NULL_POINTER = 1,
  /*
   A string argument was not valid UTF-8.
   */
  PB_STATUS_INVALID_UTF8 = 2,
  /*
   Polynomial or configuration text did not parse.
   */
  PB_STATUS_PARSE_ERROR = 3,
  /*
   Polynomials from rings with different numbers of variables.
   */
  PB_STATUS_NVARS_MISMATCH = 4,
  /*
   Parameters violate a documented constraint.
   */
  PB_STATUS_INVALID_PARAMETERS = 5,
  /*
   An exact division required by the computation failed.
   */
  PB_STATUS_NON_DIVISIBLE = 6,
  /*
   Any other mathematical precondition failed.
   */
  PB_STATUS_DOMAIN_ERROR = 7,
  /*
   The input exceeds a resource cap.
   */
  PB_STATUS_TOO_LARGE = 8,
  /*
   Internal failure; the message describes it.
   */
  PB_STATUS_INTERNAL = 9,
} PbStatus;

/*
 Opaque validated family specification.
 */
typedef struct PbFamily PbFamily;

/*
 Opaque polynomial with rational coefficients.
 */
typedef struct PbPoly PbPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message describing the last failure on this thread; empty if none. The
 pointer stays valid until the next failing call on the same thread.
 */
const char *pb_last_error(void);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void pb_string_free(char *s);

/*
 Parses `text` as a polynomial in `nvars` variables `x1..xn`.

 # Safety
 `text` must be a NUL-terminated string; `out` must be writable.
 */
PbStatus pb_poly_parse(const char *text, uintptr_t nvars, PbPoly **out);

/*
 Releases a polynomial handle. Null is ignored.

 # Safety
 `p` must come from this library and not have been freed.
 */
void pb_poly_free(PbPoly *p);

/*
 Canonical text of `p` (graded-lex order, highest term first).

 # Safety
 `p` must be a live handle; `out` must be writable.
 */
PbStatus pb_poly_to_string(const PbPoly *p, char **out);

/*
 Total degree of `p`; `-1` for the zero polynomial.

 # Safety
 `p` must be a live handle; `out` must be writable.
 */
PbStatus pb_poly_degree(const PbPoly *p, int64_t *out);

/*
 Degree of the Poisson bracket `[f, g]`; `-1` when it vanishes.

 # Safety
 `f`, `g` must be live handles; `out` must be writable.
 */
PbStatus pb_bracket_degree(const PbPoly *f, const PbPoly *g, int64_t *out);

/*
 The bracket `[f, g]` as JSON: a list of `{"i", "j", "poly"}` entries
 with 1-based variable indices.

 # Safety
 `f`, `g` must be live handles; `out` must be writable.
 */
PbStatus pb_bracket_json(const PbPoly *f, const PbPoly *g, char **out);

/*
 Writes a homogeneous `p` commuting with the homogeneous non-power `h` as
 `a h^k`; `a` is returned as text `"p/q"`.

 # Safety
 `h`, `p` must be live handles; `out_a`, `out_k` must be writable.
 */
PbStatus pb_h_reduce(const PbPoly *h, const PbPoly *p, char **out_a, uint32_t *out_k);

/*
 Parses and validates a family specification in the TOML file format.

 # Safety
 `text` must be a NUL-terminated string; `out` must be writable.
 */
PbStatus pb_family_parse(const char *text, PbFamily **out);

/*
 Releases a family handle. Null is ignored.

 # Safety
 `f` must come from this library and not have been freed.
 */
void pb_family_free(PbFamily *f);

/*
 The polynomial `F` of the family.

 # Safety
 `fam` must be a live handle; `out` must be writable.
 */
PbStatus pb_family_f(const PbFamily *fam, PbPoly **out);

/*
 Smallest `i` for which the components `G_i, ..., G_N` are polynomials.

 # Safety
 `fam` must be a live handle; `out` must be writable.
 */
PbStatus pb_family_lowest_threshold(const PbFamily *fam, uint32_t *out);

/*
 `G = G_i + ... + G_N` from the closed-form components; fails with
 `NonDivisible` when some component has a pole along `h`.

 # Safety
 `fam` must be a live handle; `out` must be writable.
 */
PbStatus pb_family_build_g(const PbFamily *fam, uint32_t i, PbPoly **out);

/*
 Minimum of `alpha_0 + k alpha_s` over the index set for `(j, N, d, t)`,
 by exhaustive search, as JSON `{"value", "argmins"}`.

 # Safety
 `out` must be writable.
 */
PbStatus pb_lattice_min_json(uint32_t d,
                             uint32_t n,
                             uint32_t j,
                             uint32_t t,
                             uint32_t k,
                             char **out);

/*
 Library version, a static string.
 */
const char *pb_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PBRACKET_H */
