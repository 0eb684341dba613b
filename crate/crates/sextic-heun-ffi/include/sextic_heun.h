#ifndef SEXTIC_HEUN_H
#define SEXTIC_HEUN_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status code of every fallible call.
typedef enum ShStatus {
  SH_OK = 0,
  // a pointer argument was null
  SH_NULL_POINTER = 1,
  // arguments violate a precondition (bad level, index, sign, ...)
  SH_INVALID_ARGUMENT = 2,
  // parameters are outside the mapped domain (V6 <= 0, complex root, ...)
  SH_DOMAIN_ERROR = 3,
  // a special-function or root-finding evaluation failed
  SH_EVAL_ERROR = 4,
} ShStatus;

// Opaque bound-state wavefunction sampler.
typedef struct ShWavefunction ShWavefunction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Closed-form energies of hierarchy level `level` for the potential with
// the level's inverse-square strength. Writes at most `cap` ascending
// energies and stores the real-root count in `*out_len`.
//
// # Safety
// `out` must point to at least `cap` doubles; `out_len` must be valid.
enum ShStatus sh_energies_for_level(uint32_t level,
                                    double v2,
                                    double v4,
                                    double v6,
                                    double v0,
                                    double hbar,
                                    double mass,
                                    double *out,
                                    uintptr_t cap,
                                    uintptr_t *out_len);

// One point of the (xi0, w) branch curve `branch_n` of level `level`.
// `energy_sign` must be -1 or +1 (ignored for level 0).
//
// # Safety
// `out_w` must be a valid pointer.
enum ShStatus sh_curve_point(uint32_t level,
                             uint32_t branch_n,
                             int energy_sign,
                             double xi0,
                             double *out_w);

// Create a bound-state sampler for the `root_index`-th (ascending) energy
// of the level. On success `*out` owns the handle; release it with
// sh_wavefunction_free.
//
// # Safety
// `out` must be a valid pointer; the handle must be freed exactly once.
enum ShStatus sh_wavefunction_create(uint32_t level,
                                     uintptr_t root_index,
                                     double v2,
                                     double v4,
                                     double v6,
                                     double v0,
                                     double hbar,
                                     double mass,
                                     struct ShWavefunction **out);

// Evaluate psi(r).
//
// # Safety
// `wf` must be a live handle from sh_wavefunction_create; `out` valid.
enum ShStatus sh_wavefunction_eval(const struct ShWavefunction *wf, double r, double *out);

// The energy the handle was built at.
//
// # Safety
// `wf` must be a live handle; `out` valid.
enum ShStatus sh_wavefunction_energy(const struct ShWavefunction *wf, double *out);

// Release a wavefunction handle. Null is a no-op.
//
// # Safety
// `wf` must come from sh_wavefunction_create and not be freed twice.
void sh_wavefunction_free(struct ShWavefunction *wf);

// The M+1 quasi-exactly-solvable energies for parameters (a, b, s, M),
// ascending. `out` must hold at least M+1 doubles.
//
// # Safety
// `out` must point to at least `m_degree + 1` doubles.
enum ShStatus sh_qes_energies(double a, double b, double s, uint32_t m_degree, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEXTIC_HEUN_H */
