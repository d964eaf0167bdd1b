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

#include "homsim/source.hpp"

#include <cmath>

namespace homsim {

PairSource::PairSource(double n_bar_in, PairStatistics stats, int truncation_in)
    : n_bar(n_bar_in), statistics(stats), truncation(truncation_in) {
    require(n_bar >= 0.0, ErrorCode::invalid_argument, "mean pair number must be non-negative");
    require(truncation >= 1, ErrorCode::invalid_argument, "truncation must keep at least one pair");
}

double PairSource::pair_coefficient(int n) const {
    require(n >= 0, ErrorCode::invalid_argument, "pair count must be non-negative");
    if (statistics == PairStatistics::gaussian) {
        return 1.0;
    }
    return 1.0 / std::sqrt(factorial(n));
}

PureState two_mode_state(const PairSource& src) {
    require(src.n_bar < 1.0, ErrorCode::invalid_argument,
            "perturbative source state requires n_bar < 1");
    const double alpha = std::sqrt(src.n_bar);
    PureState state(2, 2 * src.truncation);
    for (int n = 0; n <= src.truncation; ++n) {
        const double amp = src.pair_coefficient(n) * std::pow(alpha, n);
        if (amp != 0.0) {
            state.add(FockOccupation{n, n}, amp);
        }
    }
    return state.normalized();
}

HeraldedState herald(const PairSource& src, double eta_i) {
    require(eta_i > 0.0 && eta_i <= 1.0, ErrorCode::invalid_argument,
            "heralding requires idler efficiency in (0, 1]");
    require(src.n_bar < 1.0, ErrorCode::invalid_argument,
            "heralded state requires n_bar < 1");
    const double gamma = 1.0 - eta_i / 2.0;
    const double c2 = src.pair_coefficient(2);
    const double x = 2.0 * c2 * c2 * src.n_bar * gamma;
    const double amp_two = std::sqrt(x / (1.0 + x));
    const double amp_one = std::sqrt(1.0 / (1.0 + x));
    return {amp_one, amp_two, gamma};
}

int sample_pair_count(const PairSource& src, Rng& rng) {
    if (src.statistics == PairStatistics::gaussian) {
        return rng.thermal(src.n_bar);
    }
    return rng.poisson(src.n_bar);
}

double pair_count_pmf(const PairSource& src, int n) {
    require(n >= 0, ErrorCode::invalid_argument, "pair count must be non-negative");
    if (src.statistics == PairStatistics::gaussian) {
        return std::pow(src.n_bar, n) / std::pow(1.0 + src.n_bar, n + 1);
    }
    return std::exp(-src.n_bar) * std::pow(src.n_bar, n) / factorial(n);
}

}  // namespace homsim
