// Copyright 2026 The homsim Authors
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

#include "homsim/capi.h"

#include <cstring>
#include <new>
#include <string>

#include "homsim/config.hpp"
#include "homsim/dipfit.hpp"

struct homsim_config {
    homsim::RunConfig cfg;
};

namespace {

thread_local std::string g_last_error;

homsim_status status_of(homsim::ErrorCode code) {
    switch (code) {
        case homsim::ErrorCode::invalid_argument: return HOMSIM_ERR_INVALID_ARGUMENT;
        case homsim::ErrorCode::truncation_overflow: return HOMSIM_ERR_TRUNCATION;
        case homsim::ErrorCode::not_normalized: return HOMSIM_ERR_NOT_NORMALIZED;
        case homsim::ErrorCode::parse_error: return HOMSIM_ERR_PARSE;
        case homsim::ErrorCode::no_convergence: return HOMSIM_ERR_NO_CONVERGENCE;
        case homsim::ErrorCode::io_error: return HOMSIM_ERR_IO;
    }
    return HOMSIM_ERR_INTERNAL;
}

template <typename Fn>
homsim_status guarded(Fn&& fn) {
    try {
        fn();
        return HOMSIM_OK;
    } catch (const homsim::Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return HOMSIM_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return HOMSIM_ERR_INTERNAL;
    }
}

homsim_status require_c(bool ok, const char* message) {
    if (ok) {
        return HOMSIM_OK;
    }
    g_last_error = message;
    return HOMSIM_ERR_INVALID_ARGUMENT;
}

homsim::CountRecord to_record(const homsim_counts& c) {
    homsim::CountRecord rec;
    rec.pulses = c.pulses;
    for (int i = 0; i < 4; ++i) {
        rec.singles[i] = c.singles[i];
    }
    for (int i = 0; i < 6; ++i) {
        rec.twofolds[i] = c.twofolds[i];
    }
    rec.fourfold = c.fourfold;
    rec.blocked_a_fourfold = c.blocked_a_fourfold;
    rec.blocked_b_fourfold = c.blocked_b_fourfold;
    return rec;
}

}  // namespace

extern "C" {

const char* homsim_version(void) {
    return "0.1.0";
}

const char* homsim_status_name(homsim_status status) {
    switch (status) {
        case HOMSIM_OK: return "ok";
        case HOMSIM_ERR_INVALID_ARGUMENT: return "invalid argument";
        case HOMSIM_ERR_TRUNCATION: return "truncation overflow";
        case HOMSIM_ERR_NOT_NORMALIZED: return "state not normalized";
        case HOMSIM_ERR_PARSE: return "parse error";
        case HOMSIM_ERR_NO_CONVERGENCE: return "no convergence";
        case HOMSIM_ERR_IO: return "io error";
        case HOMSIM_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* homsim_last_error(void) {
    return g_last_error.c_str();
}

homsim_config* homsim_config_new(void) {
    return new (std::nothrow) homsim_config{};
}

homsim_config* homsim_config_clone(const homsim_config* cfg) {
    if (cfg == nullptr) {
        return nullptr;
    }
    return new (std::nothrow) homsim_config{cfg->cfg};
}

void homsim_config_free(homsim_config* cfg) {
    delete cfg;
}

homsim_status homsim_config_load(homsim_config* cfg, const char* path) {
    if (auto st = require_c(cfg != nullptr && path != nullptr, "null argument")) {
        return st;
    }
    return guarded([&] { cfg->cfg = homsim::RunConfig::from_file(path); });
}

homsim_status homsim_config_set(homsim_config* cfg, const char* key, const char* value) {
    if (auto st = require_c(cfg != nullptr && key != nullptr && value != nullptr,
                            "null argument")) {
        return st;
    }
    return guarded([&] { cfg->cfg.set(key, value); });
}

homsim_status homsim_config_get_string(const homsim_config* cfg, const char* key, char* buffer,
                                       size_t buffer_size) {
    if (auto st = require_c(cfg != nullptr && key != nullptr && buffer != nullptr &&
                                buffer_size > 0,
                            "null argument")) {
        return st;
    }
    return guarded([&] {
        const std::string& value = cfg->cfg.get(key);
        homsim::require(value.size() + 1 <= buffer_size, homsim::ErrorCode::invalid_argument,
                        "buffer too small for value of '" + std::string(key) + "'");
        std::memcpy(buffer, value.c_str(), value.size() + 1);
    });
}

homsim_status homsim_config_get_double(const homsim_config* cfg, const char* key, double* out) {
    if (auto st = require_c(cfg != nullptr && key != nullptr && out != nullptr,
                            "null argument")) {
        return st;
    }
    return guarded([&] { *out = cfg->cfg.get_double(key); });
}

homsim_status homsim_config_check(const homsim_config* cfg) {
    if (auto st = require_c(cfg != nullptr, "null argument")) {
        return st;
    }
    return guarded([&] { cfg->cfg.trial_plan(); });
}

homsim_status homsim_fwm_visibility(double sigma, double sigma_p, double* out) {
    if (auto st = require_c(out != nullptr, "null output")) {
        return st;
    }
    return guarded([&] { *out = homsim::fwm_visibility(sigma, sigma_p); });
}

homsim_status homsim_pdc_visibility(double sigma, double sigma_p, double* out) {
    if (auto st = require_c(out != nullptr, "null output")) {
        return st;
    }
    return guarded([&] { *out = homsim::pdc_visibility(sigma, sigma_p); });
}

homsim_status homsim_visibility_by_quadrature(double sigma, double sigma_p, double abs_tol,
                                              double* out_value, double* out_error) {
    if (auto st = require_c(out_value != nullptr, "null output")) {
        return st;
    }
    return guarded([&] {
        const homsim::QuadratureResult q = homsim::visibility_by_quadrature(sigma, sigma_p, abs_tol);
        *out_value = q.value;
        if (out_error != nullptr) {
            *out_error = q.error_estimate;
        }
    });
}

homsim_status homsim_dip_profile(double delta_t, double sigma, double sigma_p, double t,
                                 double r, double n_bar, double* out) {
    if (auto st = require_c(out != nullptr, "null output")) {
        return st;
    }
    return guarded([&] {
        *out = homsim::dip_profile(delta_t, sigma, sigma_p,
                                   homsim::BeamSplitter::from_ratio(t, r), n_bar);
    });
}

homsim_status homsim_wavelength_filter_to_sigma(double center_m, double fwhm_m, double* out) {
    if (auto st = require_c(out != nullptr, "null output")) {
        return st;
    }
    return guarded([&] { *out = homsim::wavelength_filter_to_sigma(center_m, fwhm_m); });
}

homsim_status homsim_pump_sigma_from_duration(double duration_fwhm_s, double* out) {
    if (auto st = require_c(out != nullptr, "null output")) {
        return st;
    }
    return guarded([&] { *out = homsim::pump_sigma_from_duration(duration_fwhm_s); });
}

homsim_status homsim_energy_check(double lambda_p_m, double lambda_s_m, double lambda_i_m,
                                  double rel_tol, int* out_pass, double* out_mismatch) {
    if (auto st = require_c(out_pass != nullptr && out_mismatch != nullptr, "null output")) {
        return st;
    }
    return guarded([&] {
        const homsim::EnergyCheckResult res = homsim::check_energy_conservation(
            homsim::WavelengthTriple(lambda_p_m, lambda_s_m, lambda_i_m), rel_tol);
        *out_pass = res.passed ? 1 : 0;
        *out_mismatch = res.relative_mismatch;
    });
}

homsim_status homsim_multipair_visibility(double n_bar, double gamma, double gamma_prime,
                                          double* out_exact, double* out_first_order) {
    if (auto st = require_c(out_exact != nullptr && out_first_order != nullptr, "null output")) {
        return st;
    }
    return guarded([&] {
        const homsim::MultipairVisibility v =
            homsim::visibility_multipair(n_bar, gamma, gamma_prime);
        *out_exact = v.exact_ratio;
        *out_first_order = v.first_order;
    });
}

homsim_status homsim_fourfold_rate(double rep_rate, double n_bar, double eta_s, double eta_i,
                                   double* out) {
    if (auto st = require_c(out != nullptr, "null output")) {
        return st;
    }
    return guarded([&] { *out = homsim::fourfold_rate(rep_rate, n_bar, eta_s, eta_i); });
}

homsim_status homsim_multifold_rate(double rep_rate, double n_bar, double eta_s, double eta_i,
                                    int k_pairs, double* out) {
    if (auto st = require_c(out != nullptr, "null output")) {
        return st;
    }
    return guarded([&] { *out = homsim::multifold_rate(rep_rate, n_bar, eta_s, eta_i, k_pairs); });
}

homsim_status homsim_run_exact(const homsim_config* cfg, homsim_report* out) {
    if (auto st = require_c(cfg != nullptr && out != nullptr, "null argument")) {
        return st;
    }
    return guarded([&] {
        const homsim::CoincidenceReport rep = homsim::run_exact(cfg->cfg.experiment());
        out->p_fourfold = rep.p_fourfold;
        out->rate_hz = rep.rate;
        out->blocked_a = rep.blocked_a;
        out->blocked_b = rep.blocked_b;
        out->visibility_raw = rep.visibility_raw;
        out->visibility_net = rep.visibility_net;
    });
}

homsim_status homsim_simulate(const homsim_config* cfg, homsim_counts* out) {
    if (auto st = require_c(cfg != nullptr && out != nullptr, "null argument")) {
        return st;
    }
    return guarded([&] {
        const homsim::CountRecord rec = homsim::simulate(cfg->cfg.trial_plan());
        out->pulses = rec.pulses;
        for (int i = 0; i < 4; ++i) {
            out->singles[i] = rec.singles[i];
        }
        for (int i = 0; i < 6; ++i) {
            out->twofolds[i] = rec.twofolds[i];
        }
        out->fourfold = rec.fourfold;
        out->blocked_a_fourfold = rec.blocked_a_fourfold;
        out->blocked_b_fourfold = rec.blocked_b_fourfold;
    });
}

homsim_status homsim_estimate_visibility(const homsim_counts* at_zero, const homsim_counts* at_far,
                                         homsim_visibility_estimate* out) {
    if (auto st = require_c(at_zero != nullptr && at_far != nullptr && out != nullptr,
                            "null argument")) {
        return st;
    }
    return guarded([&] {
        const homsim::VisibilityEstimate est =
            homsim::estimate_visibility(to_record(*at_zero), to_record(*at_far));
        out->raw = est.raw;
        out->net = est.net;
        out->raw_err = est.raw_err;
        out->net_err = est.net_err;
    });
}

homsim_status homsim_fit_dip(const double* delays, const double* counts,
                             const double* errors_or_null, size_t n_samples, double t, double r,
                             homsim_fit_result* out) {
    if (auto st = require_c(delays != nullptr && counts != nullptr && out != nullptr,
                            "null argument")) {
        return st;
    }
    return guarded([&] {
        homsim::DipData data;
        data.samples.reserve(n_samples);
        for (size_t i = 0; i < n_samples; ++i) {
            data.samples.push_back(
                {delays[i], counts[i], errors_or_null != nullptr ? errors_or_null[i] : 0.0});
        }
        const homsim::DipFitResult fit = homsim::fit_dip(data, homsim::CouplerSplit(t, r));
        out->visibility = fit.visibility;
        out->sigma_dip = fit.sigma_dip;
        out->baseline = fit.baseline;
        out->center = fit.center;
        out->visibility_err = fit.visibility_err;
        out->sigma_dip_err = fit.sigma_dip_err;
        out->baseline_err = fit.baseline_err;
        out->center_err = fit.center_err;
        out->residual_norm = fit.residual_norm;
        out->iterations = fit.iterations;
        out->converged = fit.converged ? 1 : 0;
    });
}

homsim_status homsim_fit_model(const homsim_fit_result* fit, double t, double r, double delay,
                               double* out) {
    if (auto st = require_c(fit != nullptr && out != nullptr, "null argument")) {
        return st;
    }
    return guarded([&] {
        homsim::DipFitResult f;
        f.visibility = fit->visibility;
        f.sigma_dip = fit->sigma_dip;
        f.baseline = fit->baseline;
        f.center = fit->center;
        *out = homsim::dip_model(f, homsim::CouplerSplit(t, r), delay);
    });
}

homsim_status homsim_coupler_corrected_visibility(double observed_depth, double t, double r,
                                                  double* out) {
    if (auto st = require_c(out != nullptr, "null output")) {
        return st;
    }
    return guarded([&] {
        *out = homsim::coupler_corrected_visibility(observed_depth, homsim::CouplerSplit(t, r));
    });
}

}  // extern "C"
