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

#include "homsim/detector.hpp"

#include <cmath>

namespace homsim {

ThresholdDetector::ThresholdDetector(double eta_in, double dark_in)
    : eta(eta_in), dark_rate_per_pulse(dark_in) {
    require(eta >= 0.0 && eta <= 1.0, ErrorCode::invalid_argument,
            "detector efficiency must lie in [0, 1]");
    require(dark_rate_per_pulse >= 0.0 && dark_rate_per_pulse < 1.0, ErrorCode::invalid_argument,
            "dark rate must lie in [0, 1)");
}

double click_probability(int n, const ThresholdDetector& det) {
    require(n >= 0, ErrorCode::invalid_argument, "photon number must be non-negative");
    return 1.0 - std::pow(1.0 - det.eta, n) * (1.0 - det.dark_rate_per_pulse);
}

int thin(int n, const ThresholdDetector& det, Rng& rng) {
    require(n >= 0, ErrorCode::invalid_argument, "photon number must be non-negative");
    return rng.binomial(n, det.eta);
}

bool clicks(int n, const ThresholdDetector& det, Rng& rng) {
    if (thin(n, det, rng) > 0) {
        return true;
    }
    return det.dark_rate_per_pulse > 0.0 && rng.bernoulli(det.dark_rate_per_pulse);
}

}  // namespace homsim
