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

#include <cstdint>
#include <random>

#include "homsim/error.hpp"

namespace homsim {

/// splitmix64 step; used to whiten seeds and derive per-stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Stream-splitting rule for batched runs: stream i of a root seed is
/// splitmix64(root ^ (i + 1) * golden_gamma).  Streams of distinct indices
/// are decorrelated and reproducible independent of execution order.
inline std::uint64_t derive_stream_seed(std::uint64_t root, std::uint64_t index) {
    return splitmix64(root ^ ((index + 1) * 0x9e3779b97f4a7c15ULL));
}

/// Deterministic RNG: mt19937_64 (bit-exact across platforms) plus hand-rolled
/// samplers so results do not depend on the standard library's distribution
/// implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    int binomial(int n, double p) {
        int k = 0;
        for (int i = 0; i < n; ++i) {
            k += bernoulli(p) ? 1 : 0;
        }
        return k;
    }

    /// Knuth's product method; fine for the small means used here.
    int poisson(double mean) {
        require(mean >= 0.0, ErrorCode::invalid_argument, "poisson mean must be non-negative");
        if (mean == 0.0) {
            return 0;
        }
        const double threshold = std::exp(-mean);
        int k = 0;
        double prod = uniform();
        while (prod > threshold) {
            ++k;
            prod *= uniform();
        }
        return k;
    }

    /// Geometric photon-pair count with P(n) = n_bar^n / (1 + n_bar)^(n+1).
    int thermal(double n_bar) {
        require(n_bar >= 0.0, ErrorCode::invalid_argument, "mean must be non-negative");
        if (n_bar == 0.0) {
            return 0;
        }
        const double log_p = std::log(n_bar / (1.0 + n_bar));
        double u = uniform();
        if (u == 0.0) {
            u = 0x1.0p-53;
        }
        return static_cast<int>(std::log(u) / log_p);
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace homsim
