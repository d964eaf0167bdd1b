/* Copyright 2026 The homsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of the homsim shared library.
 *
 * Every function returns a homsim_status; results travel through out
 * parameters.  On failure homsim_last_error() returns a thread-local message
 * describing the most recent error in the calling thread.  The only stateful
 * object is the opaque homsim_config handle holding a validated key-value run
 * configuration.
 */

#ifndef HOMSIM_CAPI_H_
#define HOMSIM_CAPI_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HOMSIM_API __declspec(dllexport)
#else
#define HOMSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum homsim_status {
    HOMSIM_OK = 0,
    HOMSIM_ERR_INVALID_ARGUMENT = 1,
    HOMSIM_ERR_TRUNCATION = 2,
    HOMSIM_ERR_NOT_NORMALIZED = 3,
    HOMSIM_ERR_PARSE = 4,
    HOMSIM_ERR_NO_CONVERGENCE = 5,
    HOMSIM_ERR_IO = 6,
    HOMSIM_ERR_INTERNAL = 7,
} homsim_status;

HOMSIM_API const char* homsim_version(void);
HOMSIM_API const char* homsim_status_name(homsim_status status);
HOMSIM_API const char* homsim_last_error(void);

/* -------- configuration handle -------- */

typedef struct homsim_config homsim_config;

HOMSIM_API homsim_config* homsim_config_new(void);
HOMSIM_API homsim_config* homsim_config_clone(const homsim_config* cfg);
HOMSIM_API void homsim_config_free(homsim_config* cfg);
HOMSIM_API homsim_status homsim_config_load(homsim_config* cfg, const char* path);
HOMSIM_API homsim_status homsim_config_set(homsim_config* cfg, const char* key,
                                           const char* value);
HOMSIM_API homsim_status homsim_config_get_string(const homsim_config* cfg, const char* key,
                                                  char* buffer, size_t buffer_size);
HOMSIM_API homsim_status homsim_config_get_double(const homsim_config* cfg, const char* key,
                                                  double* out);
/* Validates the whole configuration without running anything. */
HOMSIM_API homsim_status homsim_config_check(const homsim_config* cfg);

/* -------- closed-form surfaces -------- */

HOMSIM_API homsim_status homsim_fwm_visibility(double sigma, double sigma_p, double* out);
HOMSIM_API homsim_status homsim_pdc_visibility(double sigma, double sigma_p, double* out);
HOMSIM_API homsim_status homsim_visibility_by_quadrature(double sigma, double sigma_p,
                                                         double abs_tol, double* out_value,
                                                         double* out_error);
HOMSIM_API homsim_status homsim_dip_profile(double delta_t, double sigma, double sigma_p,
                                            double t, double r, double n_bar, double* out);
HOMSIM_API homsim_status homsim_wavelength_filter_to_sigma(double center_m, double fwhm_m,
                                                           double* out);
HOMSIM_API homsim_status homsim_pump_sigma_from_duration(double duration_fwhm_s, double* out);
HOMSIM_API homsim_status homsim_energy_check(double lambda_p_m, double lambda_s_m,
                                             double lambda_i_m, double rel_tol, int* out_pass,
                                             double* out_mismatch);
HOMSIM_API homsim_status homsim_multipair_visibility(double n_bar, double gamma,
                                                     double gamma_prime, double* out_exact,
                                                     double* out_first_order);
HOMSIM_API homsim_status homsim_fourfold_rate(double rep_rate, double n_bar, double eta_s,
                                              double eta_i, double* out);
HOMSIM_API homsim_status homsim_multifold_rate(double rep_rate, double n_bar, double eta_s,
                                               double eta_i, int k_pairs, double* out);

/* -------- exact experiment model -------- */

typedef struct homsim_report {
    double p_fourfold;
    double rate_hz;
    double blocked_a;
    double blocked_b;
    double visibility_raw;
    double visibility_net;
} homsim_report;

HOMSIM_API homsim_status homsim_run_exact(const homsim_config* cfg, homsim_report* out);

/* -------- Monte Carlo -------- */

/* singles order: i1, i2, s3, s4.
 * twofold order: (i1,i2), (i1,s3), (i1,s4), (i2,s3), (i2,s4), (s3,s4). */
typedef struct homsim_counts {
    uint64_t pulses;
    uint64_t singles[4];
    uint64_t twofolds[6];
    uint64_t fourfold;
    uint64_t blocked_a_fourfold;
    uint64_t blocked_b_fourfold;
} homsim_counts;

HOMSIM_API homsim_status homsim_simulate(const homsim_config* cfg, homsim_counts* out);

typedef struct homsim_visibility_estimate {
    double raw;
    double net;
    double raw_err;
    double net_err;
} homsim_visibility_estimate;

HOMSIM_API homsim_status homsim_estimate_visibility(const homsim_counts* at_zero,
                                                    const homsim_counts* at_far,
                                                    homsim_visibility_estimate* out);

/* -------- dip fitting -------- */

typedef struct homsim_fit_result {
    double visibility;
    double sigma_dip;
    double baseline;
    double center;
    double visibility_err;
    double sigma_dip_err;
    double baseline_err;
    double center_err;
    double residual_norm;
    int iterations;
    int converged;
} homsim_fit_result;

/* errors_or_null may be NULL (Poisson weights are used then). */
HOMSIM_API homsim_status homsim_fit_dip(const double* delays, const double* counts,
                                        const double* errors_or_null, size_t n_samples,
                                        double t, double r, homsim_fit_result* out);
HOMSIM_API homsim_status homsim_fit_model(const homsim_fit_result* fit, double t, double r,
                                          double delay, double* out);
HOMSIM_API homsim_status homsim_coupler_corrected_visibility(double observed_depth, double t,
                                                             double r, double* out);

#ifdef __cplusplus
}
#endif

#endif /* HOMSIM_CAPI_H_ */
