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
#include <vector>

#include "doctest.h"
#include "homsim/source.hpp"
#include "test_util.hpp"

using namespace homsim;

TEST_CASE("vacuum source emits the vacuum") {
    const PureState s = two_mode_state(PairSource(0.0, PairStatistics::gaussian));
    CHECK(s.amplitude(FockOccupation{0, 0}) == Complex(1.0, 0.0));
    CHECK(s.term_count() == 1);
}

TEST_CASE("gaussian source amplitudes follow (1, alpha, alpha^2)") {
    const PureState s = two_mode_state(PairSource(0.04, PairStatistics::gaussian));
    const double norm = 1.0 / std::sqrt(1.0 + 0.04 + 0.0016);
    CHECK(s.amplitude(FockOccupation{0, 0}).real() == doctest::Approx(norm).epsilon(1e-12));
    CHECK(s.amplitude(FockOccupation{1, 1}).real() == doctest::Approx(0.2 * norm).epsilon(1e-12));
    CHECK(s.amplitude(FockOccupation{2, 2}).real() == doctest::Approx(0.04 * norm).epsilon(1e-12));
}

TEST_CASE("poisson source divides the two-pair term by sqrt(2)") {
    const PureState s = two_mode_state(PairSource(0.04, PairStatistics::poisson));
    const double raw_two = 0.04 / std::sqrt(2.0);
    const double norm = 1.0 / std::sqrt(1.0 + 0.04 + raw_two * raw_two);
    CHECK(s.amplitude(FockOccupation{2, 2}).real() ==
          doctest::Approx(raw_two * norm).epsilon(1e-12));
}

TEST_CASE("source state is normalized across the n_bar range") {
    for (double n_bar = 0.0; n_bar <= 0.5 + 1e-9; n_bar += 0.05) {
        const PureState s = two_mode_state(PairSource(n_bar, PairStatistics::gaussian));
        CHECK(std::abs(s.norm() - 1.0) <= 1e-12);
    }
    CHECK_THROWS_AS(two_mode_state(PairSource(1.0, PairStatistics::gaussian)), Error);
}

TEST_CASE("heralded state amplitudes") {
    // n_bar -> 0 leaves a pure single photon
    const HeraldedState pure = herald(PairSource(0.0, PairStatistics::gaussian), 0.05);
    CHECK(pure.amp_two == 0.0);
    CHECK(pure.amp_one == doctest::Approx(1.0).epsilon(1e-12));

    // reference numbers: n_bar = 0.025, eta_i = 0.05
    const HeraldedState h = herald(PairSource(0.025, PairStatistics::gaussian), 0.05);
    CHECK(h.gamma == doctest::Approx(0.975).epsilon(1e-12));
    CHECK(h.amp_two == doctest::Approx(std::sqrt(0.04875 / 1.04875)).epsilon(1e-12));
    CHECK(h.amp_two == doctest::Approx(0.2156).epsilon(1e-3));
    CHECK(h.amp_one * h.amp_one + h.amp_two * h.amp_two == doctest::Approx(1.0).epsilon(1e-12));

    // unit-efficiency heralding: gamma = 1/2, amp_two^2 = n/(1+n)
    const HeraldedState full = herald(PairSource(0.2, PairStatistics::gaussian), 1.0);
    CHECK(full.gamma == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(full.amp_two == doctest::Approx(std::sqrt(0.2 / 1.2)).epsilon(1e-12));

    CHECK_THROWS_AS(herald(PairSource(0.025, PairStatistics::gaussian), 0.0), Error);
}

TEST_CASE("heralded two-photon weight is monotone in n_bar and eta_i") {
    double prev = -1.0;
    for (double n_bar : {0.01, 0.05, 0.1, 0.2, 0.4}) {
        const HeraldedState h = herald(PairSource(n_bar, PairStatistics::gaussian), 0.05);
        CHECK(h.amp_two > prev);
        prev = h.amp_two;
    }
    double prev_eta = 2.0;
    for (double eta : {0.05, 0.2, 0.5, 1.0}) {
        const HeraldedState h = herald(PairSource(0.1, PairStatistics::gaussian), eta);
        CHECK(h.amp_two < prev_eta);
        prev_eta = h.amp_two;
    }
}

TEST_CASE("pair sampling reproduces the analytic mean") {
    PairSource src(0.1, PairStatistics::gaussian);
    Rng rng(101);
    const int draws = 1000000;
    double sum = 0.0;
    for (int i = 0; i < draws; ++i) {
        sum += sample_pair_count(src, rng);
    }
    const double mean = sum / draws;
    // thermal variance n(1+2n)... use var = n_bar (1 + n_bar) + n_bar^2
    const double var = 0.1 * 1.1 + 0.01;
    const double se = std::sqrt(var / draws);
    CHECK(std::abs(mean - 0.1) <= 3.0 * se);

    Rng rng_zero(7);
    for (int i = 0; i < 100; ++i) {
        CHECK(sample_pair_count(PairSource(0.0, PairStatistics::gaussian), rng_zero) == 0);
    }
}

TEST_CASE("sampled distributions pass a chi-square test against their pmf") {
    const int draws = 1000000;
    for (PairStatistics stats : {PairStatistics::gaussian, PairStatistics::poisson}) {
        PairSource src(0.1, stats);
        Rng rng(stats == PairStatistics::gaussian ? 11 : 13);
        std::vector<double> observed(12, 0.0);
        for (int i = 0; i < draws; ++i) {
            const int n = sample_pair_count(src, rng);
            observed[std::min<std::size_t>(n, observed.size() - 1)] += 1.0;
        }
        // keep leading bins with expectation >= 5, pool the tail
        std::vector<double> obs;
        std::vector<double> expect;
        double kept_obs = 0.0;
        double kept_expect = 0.0;
        for (std::size_t n = 0; n + 1 < observed.size(); ++n) {
            const double e = draws * pair_count_pmf(src, static_cast<int>(n));
            if (e < 5.0) {
                break;
            }
            obs.push_back(observed[n]);
            expect.push_back(e);
            kept_obs += observed[n];
            kept_expect += e;
        }
        obs.push_back(draws - kept_obs);
        expect.push_back(draws - kept_expect);
        const double stat = homsim_test::chi_square_statistic(obs, expect);
        const int dof = static_cast<int>(obs.size()) - 1;
        // accept unless rejected at the 0.1% level
        CHECK(homsim_test::chi_square_cdf(stat, dof) < 0.999);
    }
}

TEST_CASE("thermal bunching roughly doubles the poisson multi-pair odds") {
    PairSource src(0.1, PairStatistics::gaussian);
    Rng rng(19);
    const int draws = 1000000;
    double n1 = 0.0;
    double n2 = 0.0;
    for (int i = 0; i < draws; ++i) {
        const int n = sample_pair_count(src, rng);
        n1 += n == 1 ? 1.0 : 0.0;
        n2 += n >= 2 ? 1.0 : 0.0;
    }
    const double p1 = n1 / draws;
    const double p2 = n2 / draws;
    const double thermal_ratio = p2 / (p1 * p1);
    // analytic thermal value (1 + n_bar)^2; poisson counterpart
    CHECK(thermal_ratio == doctest::Approx(1.21).epsilon(0.05));
    const double poisson_ratio =
        (1.0 - std::exp(-0.1) * 1.1) / std::pow(0.1 * std::exp(-0.1), 2);
    CHECK(thermal_ratio / poisson_ratio == doctest::Approx(2.117).epsilon(0.06));
}
