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

#include "doctest.h"
#include "homsim/experiment.hpp"

using namespace homsim;

namespace {

constexpr double kEtaI = 0.05;
constexpr double kEtaS = 0.034;

// Both-signal-detectors-click probability from the heralded-state pipeline.
double pipeline_interfering(double n_bar, double eta_i, double eta_s) {
    const HeraldedState h = herald(PairSource(n_bar, PairStatistics::gaussian), eta_i);
    return coincidence_from_distribution(
        coupler_distribution_interfering(h, h, BeamSplitter::balanced()),
        ThresholdDetector(eta_s), ThresholdDetector(eta_s));
}

double pipeline_noninterfering(double n_bar, double eta_i, double eta_s) {
    const HeraldedState h = herald(PairSource(n_bar, PairStatistics::gaussian), eta_i);
    return coincidence_from_distribution(
        coupler_distribution_noninterfering(h, h, BeamSplitter::balanced()),
        ThresholdDetector(eta_s), ThresholdDetector(eta_s));
}

}  // namespace

TEST_CASE("interfering coincidence closed form") {
    CHECK(p_interfering(0.0, kEtaI, kEtaS) == 0.0);
    // direct evaluation at the reference operating point
    const double expected = kEtaS * kEtaS * 0.045693682955899884;
    CHECK(p_interfering(0.025, kEtaI, kEtaS) == doctest::Approx(expected).epsilon(1e-12));
    CHECK_THROWS_AS(p_interfering(0.025, 0.0, kEtaS), Error);
    CHECK_THROWS_AS(p_interfering(-0.1, kEtaI, kEtaS), Error);
    CHECK_THROWS_AS(p_interfering(1.0, kEtaI, kEtaS), Error);
}

TEST_CASE("noninterfering coincidence closed form") {
    CHECK(p_noninterfering(0.0, kEtaI, kEtaS) ==
          doctest::Approx(kEtaS * kEtaS / 2.0).epsilon(1e-12));
    const double expected = kEtaS * kEtaS * 0.6370810488676997;
    CHECK(p_noninterfering(0.025, kEtaI, kEtaS) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("closed forms agree with the Fock pipeline to first order") {
    for (double n_bar : {0.001, 0.005, 0.01}) {
        const double tol = 5.0 * n_bar;

        const double pi_closed = p_interfering(n_bar, kEtaI, kEtaS);
        const double pi_pipe = pipeline_interfering(n_bar, kEtaI, kEtaS);
        CHECK(std::abs(pi_pipe - pi_closed) / pi_closed <= tol);

        const double pn_closed = p_noninterfering(n_bar, kEtaI, kEtaS);
        const double pn_pipe = pipeline_noninterfering(n_bar, kEtaI, kEtaS);
        CHECK(std::abs(pn_pipe - pn_closed) / pn_closed <= tol);
    }
}

TEST_CASE("multipair visibility values") {
    CHECK(visibility_multipair(0.0, 1.0, 1.0).exact_ratio == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(visibility_multipair(0.0, 1.0, 1.0).first_order == doctest::Approx(1.0).epsilon(1e-15));

    // gamma gamma' = 1 reference value 1.2/1.3
    const MultipairVisibility ideal = visibility_multipair(0.025, 1.0, 1.0);
    CHECK(std::abs(ideal.first_order - 1.2 / 1.3) <= 1e-12);

    // reference efficiencies: first-order value near 0.926
    const MultipairVisibility reference = visibility_multipair(0.025, 0.975, 0.983);
    CHECK(reference.first_order == doctest::Approx(0.9255608132641828).epsilon(1e-12));
    CHECK(reference.first_order == doctest::Approx(0.926).epsilon(1e-3));
    // the exact ratio and the first-order form agree to O(n_bar^2)
    CHECK(std::abs(reference.exact_ratio - reference.first_order) <= 10.0 * 0.025 * 0.025);
}

TEST_CASE("multipair visibility is monotone decreasing in n_bar") {
    double prev = 2.0;
    for (double n_bar : {0.0, 0.005, 0.01, 0.05, 0.1, 0.3}) {
        const MultipairVisibility v = visibility_multipair(n_bar, 0.975, 0.983);
        const bool decreasing = v.first_order < prev || n_bar == 0.0;
        CHECK(decreasing);
        CHECK(v.exact_ratio <= 1.0);
        prev = v.first_order;
    }
}

TEST_CASE("visibility from the closed-form coincidence ratio matches the compact form") {
    for (double n_bar : {0.005, 0.025, 0.1}) {
        const double pi = p_interfering(n_bar, kEtaI, kEtaS);
        const double pn = p_noninterfering(n_bar, kEtaI, kEtaS);
        const MultipairVisibility v = visibility_multipair(n_bar, 1.0 - kEtaI / 2.0,
                                                           1.0 - kEtaS / 2.0);
        CHECK((pn - pi) / pn == doctest::Approx(v.exact_ratio).epsilon(1e-12));
    }
}

TEST_CASE("fourfold rate formula and scaling") {
    CHECK(fourfold_rate(8.2e7, 0.0, kEtaS, kEtaI) == 0.0);
    const double c4 = fourfold_rate(8.2e7, 0.025, kEtaS, kEtaI);
    CHECK(c4 * 60.0 == doctest::Approx(4.443375).epsilon(1e-12));
    CHECK(std::abs(c4 * 60.0 - 4.4) <= 0.1);
    // doubling both efficiencies scales by 16
    CHECK(fourfold_rate(8.2e7, 0.025, 2.0 * kEtaS, 2.0 * kEtaI) ==
          doctest::Approx(16.0 * c4).epsilon(1e-12));
    // quartic and quadratic scalings are exact
    CHECK(fourfold_rate(8.2e7, 0.05, kEtaS, kEtaI) == doctest::Approx(4.0 * c4).epsilon(1e-12));
}

TEST_CASE("multifold projections") {
    CHECK(multifold_rate(1.64e8, 0.1, 0.1, 0.1, 3) == doctest::Approx(0.164).epsilon(1e-12));
    CHECK(multifold_rate(1.64e8, 0.1, 0.2, 0.2, 3) ==
          doctest::Approx(64.0 * 0.164).epsilon(1e-12));
    CHECK(multifold_rate(1.64e8, 0.0, 0.1, 0.1, 3) == 0.0);
    // the k = 2 case deliberately differs from fourfold_rate by the factor 1/2
    CHECK(multifold_rate(8.2e7, 0.025, kEtaS, kEtaI, 2) ==
          doctest::Approx(2.0 * fourfold_rate(8.2e7, 0.025, kEtaS, kEtaI)).epsilon(1e-12));
    CHECK_THROWS_AS(multifold_rate(8.2e7, 0.025, kEtaS, kEtaI, 1), Error);
}

TEST_CASE("herald probability") {
    const PairSource src(0.025, PairStatistics::gaussian);
    const ThresholdDetector det(kEtaI);
    // N^2 (n eta + n^2 (2 eta gamma)) with N^2 = 1/(1 + n + n^2)
    const double n = 0.025;
    const double expected =
        (n * kEtaI + n * n * (1.0 - std::pow(1.0 - kEtaI, 2))) / (1.0 + n + n * n);
    CHECK(herald_probability(src, det) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(herald_probability(PairSource(0.0, PairStatistics::gaussian), det) == 0.0);
}

TEST_CASE("run_exact composite model") {
    ExperimentConfig cfg;
    cfg.v_max_override = 1.0;

    SUBCASE("far outside the dip the probability is the non-interfering value") {
        cfg.delay = 1.0;
        const CoincidenceReport rep = run_exact(cfg);
        const double heralds = herald_probability(cfg.source_a, cfg.det_i1) *
                               herald_probability(cfg.source_b, cfg.det_i2);
        const double expected =
            heralds * pipeline_noninterfering(0.025, kEtaI, kEtaS);
        CHECK(rep.p_fourfold == doctest::Approx(expected).epsilon(1e-12));
        CHECK(rep.rate == doctest::Approx(8.2e7 * expected).epsilon(1e-12));
    }

    SUBCASE("scan visibility matches the multipair closed form at first order") {
        const CoincidenceReport rep = run_exact(cfg);
        const MultipairVisibility v =
            visibility_multipair(0.025, 1.0 - kEtaI / 2.0, 1.0 - kEtaS / 2.0);
        // pipeline and closed forms differ at O(n_bar) in the baseline
        CHECK(rep.visibility_raw == doctest::Approx(v.exact_ratio).epsilon(0.01));
        CHECK(rep.visibility_net >= rep.visibility_raw);
    }

    SUBCASE("vanishing pair rate gives perfect suppression and no background") {
        cfg.source_a = PairSource(1e-9, PairStatistics::gaussian, 2);
        cfg.source_b = PairSource(1e-9, PairStatistics::gaussian, 2);
        cfg.delay = 0.0;
        const CoincidenceReport rep = run_exact(cfg);
        CHECK(rep.visibility_raw == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(rep.blocked_a <= 1e-20);
        CHECK(rep.blocked_b <= 1e-20);
        CHECK(rep.p_fourfold <= 1e-12);
    }

    SUBCASE("blocked backgrounds vanish with single pairs only") {
        cfg.source_a = PairSource(0.0, PairStatistics::gaussian, 2);
        cfg.source_b = PairSource(0.0, PairStatistics::gaussian, 2);
        const CoincidenceReport rep = run_exact(cfg);
        CHECK(rep.blocked_a == 0.0);
        CHECK(rep.blocked_b == 0.0);
    }
}

TEST_CASE("net visibility exceeds raw when multi-pair backgrounds are present") {
    ExperimentConfig cfg;
    cfg.source_a = PairSource(0.1, PairStatistics::gaussian, 2);
    cfg.source_b = PairSource(0.1, PairStatistics::gaussian, 2);
    cfg.v_max_override = 1.0;
    const CoincidenceReport rep = run_exact(cfg);
    CHECK(rep.blocked_a > 0.0);
    CHECK(rep.blocked_b > 0.0);
    CHECK(rep.visibility_net > rep.visibility_raw);
    CHECK(rep.visibility_raw > 0.0);
    CHECK(rep.visibility_raw < 1.0);
}

TEST_CASE("asymmetric coupler lowers the observed dip contrast") {
    ExperimentConfig balanced;
    balanced.v_max_override = 1.0;
    ExperimentConfig skew = balanced;
    skew.coupler = BeamSplitter::from_ratio(0.54, 0.46);
    CHECK(run_exact(skew).visibility_raw < run_exact(balanced).visibility_raw);
}

TEST_CASE("config validation") {
    ExperimentConfig cfg;
    cfg.source_b = PairSource(0.025, PairStatistics::poisson, 2);
    CHECK_THROWS_AS(cfg.validate(), Error);

    ExperimentConfig bad_vmax;
    bad_vmax.v_max_override = 1.2;
    CHECK_THROWS_AS(bad_vmax.validate(), Error);

    ExperimentConfig ok;
    CHECK(ok.v_max() == doctest::Approx(fwm_visibility(ok.effective_sigma(), ok.pump.sigma_p))
                            .epsilon(1e-12));
    // the reference filter/pump combination sits near v_max ~ 0.988
    CHECK(ok.v_max() == doctest::Approx(0.988).epsilon(2e-3));
    ok.sigma_eff = 0.80 * ok.pump.sigma_p;
    CHECK(ok.v_max() == doctest::Approx(0.970).epsilon(1e-3));
}
