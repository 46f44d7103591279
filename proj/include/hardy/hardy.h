// Copyright 2026 The Hardy Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * C interface to the hardy library.
 *
 * All objects are opaque handles created by hardy_*_create / hardy_*_build /
 * hardy_run_* and released with the matching *_destroy function (passing
 * NULL to a destroy function is a no-op). Every fallible call returns a
 * hardy_status; on failure hardy_last_error() describes the problem for the
 * calling thread until its next failing call.
 *
 * Sites are 1-based. Outcome arrays of length 2^n are indexed so that the
 * binary expansion of the index, written with n digits, is the bitstring
 * with site 1 leftmost.
 */
#ifndef HARDY_HARDY_H_
#define HARDY_HARDY_H_

#include <stddef.h>
#include <stdint.h>

#if defined(HARDY_BUILDING_LIBRARY)
#define HARDY_API __attribute__((visibility("default")))
#else
#define HARDY_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hardy_status {
  HARDY_OK = 0,
  HARDY_ERR_INVALID_ARGUMENT = 1, /* bad size, site, angle, tolerance ... */
  HARDY_ERR_OUT_OF_RANGE = 2,     /* site or index outside the register */
  HARDY_ERR_DEGENERATE = 3,       /* some |A_k| is exactly 0 or 1 */
  HARDY_ERR_POSTSELECTION = 4,    /* post-selected branch has zero weight */
  HARDY_ERR_BUFFER_TOO_SMALL = 5, /* caller buffer shorter than required */
  HARDY_ERR_INTERNAL = 6
} hardy_status;

HARDY_API const char* hardy_last_error(void);
HARDY_API const char* hardy_status_name(hardy_status status);

/* Caps worker threads for the batch functions; 0 restores the default. */
HARDY_API void hardy_set_max_threads(size_t cap);

/* ---- transform coefficients ------------------------------------------ */

typedef struct hardy_coeffs hardy_coeffs;

/* Complex A_k, B_k; requires n >= 2 and |A_k|^2 + |B_k|^2 = 1 within 1e-12. */
HARDY_API hardy_status hardy_coeffs_create(size_t n, const double* a_re, const double* a_im,
                                           const double* b_re, const double* b_im,
                                           hardy_coeffs** out);
/* Real A_k, B_k = sqrt(1 - A_k^2). */
HARDY_API hardy_status hardy_coeffs_create_real(size_t n, const double* a, hardy_coeffs** out);
/* A_k = a for every site. */
HARDY_API hardy_status hardy_coeffs_create_equal(size_t n, double a, hardy_coeffs** out);
HARDY_API void hardy_coeffs_destroy(hardy_coeffs* coeffs);
HARDY_API size_t hardy_coeffs_size(const hardy_coeffs* coeffs);

/* ---- analytic state ---------------------------------------------------- */

typedef enum hardy_frame {
  HARDY_FRAME_UV = 0,    /* bit 1 = u, bit 0 = v */
  HARDY_FRAME_MIXED = 1, /* site k: bit 1 = d, bit 0 = c; others as UV */
  HARDY_FRAME_CD = 2     /* bit 1 = d, bit 0 = c */
} hardy_frame;

typedef struct hardy_state hardy_state;

/* mixed_site is used only for HARDY_FRAME_MIXED. */
HARDY_API hardy_status hardy_state_create(const hardy_coeffs* coeffs, hardy_frame frame,
                                          size_t mixed_site, hardy_state** out);
HARDY_API void hardy_state_destroy(hardy_state* state);
HARDY_API size_t hardy_state_dimension(const hardy_state* state);
HARDY_API double hardy_state_normalization(const hardy_state* state);
HARDY_API hardy_status hardy_state_amplitudes(const hardy_state* state, double* re, double* im,
                                              size_t len);
HARDY_API hardy_status hardy_state_probabilities(const hardy_state* state, double* out,
                                                 size_t len);

/* ---- circuits ---------------------------------------------------------- */

typedef enum hardy_mode {
  HARDY_MODE_PREPARE = 0,
  HARDY_MODE_MIXED = 1,
  HARDY_MODE_FULL_CD = 2
} hardy_mode;

typedef struct hardy_circuit hardy_circuit;
typedef struct hardy_histogram hardy_histogram;

/* theta = 2 asin(a), a in (0, 1). */
HARDY_API hardy_status hardy_theta_of_a(double a, double* theta);

/* thetas has n entries in (0, pi); mixed_site is used only for HARDY_MODE_MIXED. */
HARDY_API hardy_status hardy_circuit_build(size_t n, const double* thetas, hardy_mode mode,
                                           size_t mixed_site, hardy_circuit** out);
HARDY_API void hardy_circuit_destroy(hardy_circuit* circuit);
HARDY_API size_t hardy_circuit_gate_count(const hardy_circuit* circuit);
/* Writes a human-readable gate listing (NUL-terminated). *needed receives the
 * required size including the terminator. */
HARDY_API hardy_status hardy_circuit_describe(const hardy_circuit* circuit, char* buf,
                                              size_t len, size_t* needed);

HARDY_API hardy_status hardy_run_exact(const hardy_circuit* circuit, hardy_histogram** out);
HARDY_API hardy_status hardy_sample_shots(const hardy_histogram* exact, uint64_t shots,
                                          uint64_t seed, uint64_t stream,
                                          hardy_histogram** out);
HARDY_API void hardy_histogram_destroy(hardy_histogram* hist);
HARDY_API size_t hardy_histogram_sites(const hardy_histogram* hist);
HARDY_API double hardy_histogram_postselect_success(const hardy_histogram* hist);
/* 0 for exact histograms. */
HARDY_API uint64_t hardy_histogram_shots(const hardy_histogram* hist);
HARDY_API hardy_status hardy_histogram_probabilities(const hardy_histogram* hist, double* out,
                                                     size_t len);
/* Sampled histograms only. */
HARDY_API hardy_status hardy_histogram_counts(const hardy_histogram* hist, uint64_t* out,
                                              size_t len);
/* Probability mass on outcomes with two or more 1 bits. */
HARDY_API double hardy_histogram_nonlocal_sum(const hardy_histogram* hist);

/* ---- analytics --------------------------------------------------------- */

typedef enum hardy_result_kind {
  HARDY_RESULT_P_NONLOCAL = 0,
  HARDY_RESULT_OPTIMUM = 1,
  HARDY_RESULT_INTEGRAL = 2,
  HARDY_RESULT_ENTROPY = 3,
  HARDY_RESULT_NEGATIVITY = 4,
  HARDY_RESULT_ASYMPTOTE = 5
} hardy_result_kind;

typedef struct hardy_analytics_result {
  hardy_result_kind kind;
  size_t n;
  double value;
  double secondary_value; /* argmax for OPTIMUM / ASYMPTOTE */
  int has_secondary;
  double tolerance;
} hardy_analytics_result;

typedef enum hardy_bipartition {
  HARDY_BIPARTITION_HALF_CHAIN = 0, /* left = {1 .. floor(n/2)} */
  HARDY_BIPARTITION_ONE_VS_REST = 1 /* left = {site} */
} hardy_bipartition;

HARDY_API hardy_status hardy_p_nonlocal_general(const hardy_coeffs* coeffs,
                                                hardy_analytics_result* out);
HARDY_API hardy_status hardy_p_nonlocal_equal(size_t n, double a, hardy_analytics_result* out);
/* value = P*, secondary_value = A*. */
HARDY_API hardy_status hardy_optimize_a(size_t n, hardy_analytics_result* out);
/* value = P_inf, secondary_value = x* (= A^(2n) at the optimum). */
HARDY_API hardy_status hardy_asymptote(hardy_analytics_result* out);
HARDY_API hardy_status hardy_integrate_p(size_t n, double abs_tol, hardy_analytics_result* out);
HARDY_API hardy_status hardy_entropy(const hardy_coeffs* coeffs, hardy_bipartition part,
                                     size_t site, hardy_analytics_result* out);
HARDY_API hardy_status hardy_negativity(const hardy_coeffs* coeffs, hardy_bipartition part,
                                        size_t site, hardy_analytics_result* out);

/* ---- batch (parallel, results in input order) --------------------------- */

/* p_out[i] = P_nonlocal(n, a[i]) for equal coefficients. */
HARDY_API hardy_status hardy_batch_p_nonlocal_equal(size_t n, const double* a, size_t count,
                                                    double* p_out);
/* Sampled FULL_CD nonlocal-sum estimate at each a[i] with equal coefficients;
 * point i draws from stream first_stream + i of the given seed. */
HARDY_API hardy_status hardy_batch_sampled_nonlocal(size_t n, const double* a, size_t count,
                                                    uint64_t shots, uint64_t seed,
                                                    uint64_t first_stream, double* p_out);
/* Entropy and negativity of equal-coefficient states at each a[i]. */
HARDY_API hardy_status hardy_batch_entanglement(size_t n, const double* a, size_t count,
                                                hardy_bipartition part, size_t site,
                                                double* entropy_out, double* negativity_out);

/* ---- verification ------------------------------------------------------ */

typedef struct hardy_report hardy_report;

HARDY_API hardy_status hardy_certify(const hardy_coeffs* coeffs, double tol,
                                     hardy_report** out);
HARDY_API void hardy_report_destroy(hardy_report* report);
HARDY_API int hardy_report_certified(const hardy_report* report);
HARDY_API double hardy_report_condition3_total(const hardy_report* report);
/* JSON object (NUL-terminated); *needed receives the size including the terminator. */
HARDY_API hardy_status hardy_report_json(const hardy_report* report, char* buf, size_t len,
                                         size_t* needed);

/* passed = 1 iff every circuit distribution matches its analytic frame with
 * max deviation < tol. */
HARDY_API hardy_status hardy_cross_validate(const hardy_coeffs* coeffs, double tol,
                                            int* passed, double* max_deviation);

#ifdef __cplusplus
}
#endif

#endif /* HARDY_HARDY_H_ */
