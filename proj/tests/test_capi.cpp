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

#include <cmath>
#include <cstring>
#include <string>

#include "doctest.h"
#include "homsim/capi.h"

TEST_CASE("version and status names") {
    CHECK(std::strlen(homsim_version()) > 0);
    CHECK(std::string(homsim_status_name(HOMSIM_OK)) == "ok");
    CHECK(std::string(homsim_status_name(HOMSIM_ERR_PARSE)) == "parse error");
}

TEST_CASE("closed forms through the C surface") {
    double v = 0.0;
    REQUIRE(homsim_fwm_visibility(0.8, 1.0, &v) == HOMSIM_OK);
    CHECK(v == doctest::Approx(0.9701703390).epsilon(1e-9));

    double quad = 0.0;
    double err = 0.0;
    REQUIRE(homsim_visibility_by_quadrature(0.8, 1.0, 1e-6, &quad, &err) == HOMSIM_OK);
    CHECK(std::abs(quad - v) <= 1e-4);

    double rate = 0.0;
    REQUIRE(homsim_fourfold_rate(8.2e7, 0.025, 0.034, 0.05, &rate) == HOMSIM_OK);
    CHECK(rate * 60.0 == doctest::Approx(4.443375).epsilon(1e-9));

    double six = 0.0;
    REQUIRE(homsim_multifold_rate(1.64e8, 0.1, 0.1, 0.1, 3, &six) == HOMSIM_OK);
    CHECK(six == doctest::Approx(0.164).epsilon(1e-9));

    int pass = 0;
    double mismatch = 0.0;
    REQUIRE(homsim_energy_check(708e-9, 583e-9, 900e-9, 1e-3, &pass, &mismatch) == HOMSIM_OK);
    CHECK(pass == 1);
    CHECK(mismatch == doctest::Approx(5.37e-4).epsilon(1e-2));
}

TEST_CASE("errors map to status codes and messages") {
    double v = 0.0;
    CHECK(homsim_fwm_visibility(-1.0, 1.0, &v) == HOMSIM_ERR_INVALID_ARGUMENT);
    CHECK(std::strlen(homsim_last_error()) > 0);
    CHECK(homsim_fwm_visibility(1.0, 1.0, nullptr) == HOMSIM_ERR_INVALID_ARGUMENT);

    homsim_config* cfg = homsim_config_new();
    REQUIRE(cfg != nullptr);
    CHECK(homsim_config_set(cfg, "bogus.key", "1") == HOMSIM_ERR_PARSE);
    CHECK(homsim_config_load(cfg, "/nonexistent.ini") == HOMSIM_ERR_IO);
    homsim_config_free(cfg);
}

TEST_CASE("config handle drives the exact model and the simulator") {
    homsim_config* cfg = homsim_config_new();
    REQUIRE(cfg != nullptr);
    REQUIRE(homsim_config_set(cfg, "source.n_bar", "0.01") == HOMSIM_OK);
    REQUIRE(homsim_config_set(cfg, "detector.eta_i1", "0.8") == HOMSIM_OK);
    REQUIRE(homsim_config_set(cfg, "detector.eta_i2", "0.8") == HOMSIM_OK);
    REQUIRE(homsim_config_set(cfg, "detector.eta_s3", "0.8") == HOMSIM_OK);
    REQUIRE(homsim_config_set(cfg, "detector.eta_s4", "0.8") == HOMSIM_OK);
    REQUIRE(homsim_config_set(cfg, "spectral.v_max", "1.0") == HOMSIM_OK);
    REQUIRE(homsim_config_set(cfg, "run.pulses", "400000") == HOMSIM_OK);
    REQUIRE(homsim_config_set(cfg, "run.seed", "12345") == HOMSIM_OK);
    REQUIRE(homsim_config_check(cfg) == HOMSIM_OK);

    double n_bar = 0.0;
    REQUIRE(homsim_config_get_double(cfg, "source.n_bar", &n_bar) == HOMSIM_OK);
    CHECK(n_bar == doctest::Approx(0.01));
    char buf[16];
    REQUIRE(homsim_config_get_string(cfg, "source.statistics", buf, sizeof(buf)) == HOMSIM_OK);
    CHECK(std::string(buf) == "gaussian");

    homsim_report report{};
    REQUIRE(homsim_run_exact(cfg, &report) == HOMSIM_OK);
    CHECK(report.visibility_raw > 0.9);
    CHECK(report.visibility_net >= report.visibility_raw);
    CHECK(report.p_fourfold > 0.0);
    CHECK(report.rate_hz == doctest::Approx(report.p_fourfold * 8.2e7).epsilon(1e-12));

    homsim_counts a{};
    homsim_counts b{};
    REQUIRE(homsim_simulate(cfg, &a) == HOMSIM_OK);
    REQUIRE(homsim_simulate(cfg, &b) == HOMSIM_OK);
    CHECK(a.pulses == 400000);
    CHECK(a.fourfold == b.fourfold);
    CHECK(a.singles[0] == b.singles[0]);
    CHECK(a.twofolds[5] == b.twofolds[5]);

    // a far-delay clone for the visibility estimate
    homsim_config* far = homsim_config_clone(cfg);
    REQUIRE(far != nullptr);
    REQUIRE(homsim_config_set(far, "experiment.delay_s", "1.0") == HOMSIM_OK);
    homsim_counts far_counts{};
    REQUIRE(homsim_simulate(far, &far_counts) == HOMSIM_OK);
    homsim_visibility_estimate est{};
    REQUIRE(homsim_estimate_visibility(&a, &far_counts, &est) == HOMSIM_OK);
    CHECK(est.raw > 0.5);
    CHECK(est.raw_err > 0.0);
    homsim_config_free(far);
    homsim_config_free(cfg);
}

TEST_CASE("dip fit through the C surface") {
    // noiseless model samples, V = 0.9, sigma = 1 ps, centered
    const double t = 0.54;
    const double r = 0.46;
    const double a = r * r * r * r + t * t * t * t;
    const double g = 2.0 * r * r * t * t;
    double delays[31];
    double counts[31];
    for (int i = 0; i < 31; ++i) {
        delays[i] = (i - 15) * 0.4e-12;
        const double e = std::exp(-delays[i] * delays[i] / (2.0 * 1e-12 * 1e-12));
        counts[i] = 800.0 * (a - 0.9 * g * e);
    }
    homsim_fit_result fit{};
    REQUIRE(homsim_fit_dip(delays, counts, nullptr, 31, t, r, &fit) == HOMSIM_OK);
    CHECK(fit.converged == 1);
    CHECK(fit.visibility == doctest::Approx(0.9).epsilon(1e-6));
    CHECK(fit.sigma_dip == doctest::Approx(1e-12).epsilon(1e-6));

    double model = 0.0;
    REQUIRE(homsim_fit_model(&fit, t, r, 0.0, &model) == HOMSIM_OK);
    CHECK(model == doctest::Approx(counts[15]).epsilon(1e-6));

    double corrected = 0.0;
    REQUIRE(homsim_coupler_corrected_visibility(0.5, t, r, &corrected) == HOMSIM_OK);
    CHECK(corrected == doctest::Approx(0.5 * 1.0518617).epsilon(1e-6));

    // malformed input surfaces as a status, not a crash
    CHECK(homsim_fit_dip(nullptr, counts, nullptr, 31, t, r, &fit) ==
          HOMSIM_ERR_INVALID_ARGUMENT);
    CHECK(homsim_fit_dip(delays, counts, nullptr, 3, t, r, &fit) ==
          HOMSIM_ERR_INVALID_ARGUMENT);
}
