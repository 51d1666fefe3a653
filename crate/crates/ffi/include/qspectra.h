#ifndef QSPECTRA_H
#define QSPECTRA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible function.
typedef enum QsStatus {
  QS_STATUS_OK = 0,
  QS_STATUS_INVALID = 1,
  QS_STATUS_DOMAIN = 2,
  QS_STATUS_RANGE = 3,
  QS_STATUS_POLE = 4,
  QS_STATUS_CONTRACT = 5,
  QS_STATUS_NUMERIC = 6,
  QS_STATUS_IO = 7,
  QS_STATUS_NULL_POINTER = 8,
  QS_STATUS_BUFFER_TOO_SMALL = 9,
  QS_STATUS_PANIC = 10,
} QsStatus;

// Normalized bound-state handle.
typedef struct QsBoundState QsBoundState;

// Potential specification handle.
typedef struct QsSpec QsSpec;

// Computed spectrum handle.
typedef struct QsSpectrum QsSpectrum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the last error message of this thread into `buf` (NUL-terminated,
// truncated to `cap`). Returns the full message length without the NUL.
//
// # Safety
// `buf` must be null or valid for `cap` bytes.
size_t qs_last_error_message(char *buf, size_t cap);

// Creates a specification from a kind name (`"V1"`..`"V8p"`) and its
// parameters in the kind's canonical order (V1: nu; V2: eta, nu; V3:
// alpha, lambda; V4: beta, lambda; V5/V6: V0, V1, V2; V7/V7p: A, B, C;
// V8/V8p: f, h1, C).
//
// # Safety
// `kind` must be a NUL-terminated string, `params` valid for `n_params`
// values, `out` a valid pointer.
enum QsStatus qs_spec_new(const char *kind,
                          const double *params,
                          size_t n_params,
                          double q,
                          double hbar,
                          double mass,
                          struct QsSpec **out);

// Creates a specification from its JSON form, e.g.
// `{"kind": "V1", "q": 1, "nu": 2.5}`.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum QsStatus qs_spec_from_json(const char *json, struct QsSpec **out);

// Writes the continuum threshold.
//
// # Safety
// `spec` and `out` must be valid pointers.
enum QsStatus qs_spec_threshold(const struct QsSpec *spec, double *out);

// # Safety
// `spec` must be null or a handle from `qs_spec_new` / `qs_spec_from_json`
// that has not been freed.
void qs_spec_free(struct QsSpec *spec);

// Computes the bound-state spectrum.
//
// # Safety
// `spec` and `out` must be valid pointers.
enum QsStatus qs_spectrum_new(const struct QsSpec *spec, struct QsSpectrum **out);

// Number of levels; 0 for a null handle.
//
// # Safety
// `spectrum` must be null or a live handle.
size_t qs_spectrum_len(const struct QsSpectrum *spectrum);

// Copies the level energies, ascending.
//
// # Safety
// `spectrum` must be a live handle, `buf` valid for `cap` values and `len`
// a valid pointer.
enum QsStatus qs_spectrum_energies(const struct QsSpectrum *spectrum,
                                   double *buf,
                                   size_t cap,
                                   size_t *len);

// # Safety
// `spectrum` must be null or a live handle.
void qs_spectrum_free(struct QsSpectrum *spectrum);

// Builds the normalized `n`-th bound state (V1-V6).
//
// # Safety
// `spec` and `out` must be valid pointers.
enum QsStatus qs_bound_state_new(const struct QsSpec *spec, uint32_t n, struct QsBoundState **out);

// Energy of a bound state.
//
// # Safety
// `state` and `out` must be valid pointers.
enum QsStatus qs_bound_state_energy(const struct QsBoundState *state, double *out);

// Evaluates the normalized wave function at a raw-frame point.
//
// # Safety
// `state` and `out` must be valid pointers.
enum QsStatus qs_bound_state_psi(const struct QsBoundState *state, double x, double *out);

// # Safety
// `state` must be null or a live handle.
void qs_bound_state_free(struct QsBoundState *state);

// Evaluates `G(x1, x2; E)` at complex `E = e_re + i e_im`.
//
// # Safety
// `spec`, `out_re` and `out_im` must be valid pointers.
enum QsStatus qs_green(const struct QsSpec *spec,
                       double x1,
                       double x2,
                       double e_re,
                       double e_im,
                       double *out_re,
                       double *out_im);

// Poles of the Green function in `[lo, hi]`, scanned at `resolution`
// energies.
//
// # Safety
// `spec` must be a live handle, `buf` valid for `cap` values and `len` a
// valid pointer.
enum QsStatus qs_pole_scan(const struct QsSpec *spec,
                           double lo,
                           double hi,
                           size_t resolution,
                           double *buf,
                           size_t cap,
                           size_t *len);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* QSPECTRA_H */
