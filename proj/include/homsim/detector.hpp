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

#pragma once

#include "homsim/rng.hpp"

namespace homsim {

/// Threshold (non-number-resolving) detector with lumped efficiency eta,
/// covering filter and transmission loss, and an uncorrelated per-pulse
/// click probability for darks and background light.
struct ThresholdDetector {
    double eta = 1.0;
    double dark_rate_per_pulse = 0.0;

    ThresholdDetector() = default;
    ThresholdDetector(double eta_in, double dark_in = 0.0);
};

/// 1 - (1 - eta)^n (1 - dark): at least one of n photons survives, or an
/// uncorrelated click fires.  Coincidences are per pump pulse.
double click_probability(int n, const ThresholdDetector& det);

/// Binomial(n, eta) surviving photon count.
int thin(int n, const ThresholdDetector& det, Rng& rng);

/// One stochastic detection: click iff thinning leaves a photon or the
/// uncorrelated background fires.
bool clicks(int n, const ThresholdDetector& det, Rng& rng);

}  // namespace homsim
