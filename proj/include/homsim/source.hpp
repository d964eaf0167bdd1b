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

#include "homsim/fock.hpp"
#include "homsim/rng.hpp"

namespace homsim {

/// Pair-number statistics of the source.  Narrowband-filtered sources follow
/// gaussian (thermal) statistics; poisson models an unfiltered multimode one.
enum class PairStatistics {
    gaussian,
    poisson,
};

/// Photon-pair source emitting into one signal and one idler mode.
///
/// The exact state keeps terms up to `truncation` pairs with amplitudes
/// N * C_n * alpha^n, alpha = sqrt(n_bar) taken real, where C_n = 1 for
/// gaussian statistics and 1/sqrt(n!) for poisson.  Monte Carlo sampling draws
/// from the corresponding untruncated pair-number distribution.
struct PairSource {
    double n_bar = 0.0;
    PairStatistics statistics = PairStatistics::gaussian;
    int truncation = 2;

    PairSource() = default;
    PairSource(double n_bar_in, PairStatistics stats, int truncation_in = 2);

    /// Amplitude coefficient C_n of the n-pair term.
    double pair_coefficient(int n) const;
};

/// Signal state conditioned on an idler detection, truncated to one and two
/// photons:  amp_one |1> + amp_two |2>  with
/// amp_two^2 = 2 C2^2 n_bar gamma / (1 + 2 C2^2 n_bar gamma), gamma = 1 - eta_i/2.
struct HeraldedState {
    double amp_one;
    double amp_two;
    double gamma;
};

/// Exact two-mode source state; modes are (signal, idler).
PureState two_mode_state(const PairSource& src);

HeraldedState herald(const PairSource& src, double eta_i);

/// Untruncated pair count for one pulse: geometric for gaussian statistics,
/// Poisson otherwise.
int sample_pair_count(const PairSource& src, Rng& rng);

/// Analytic pmf of sample_pair_count, for cross-checking.
double pair_count_pmf(const PairSource& src, int n);

}  // namespace homsim
