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

#include <array>
#include <cstdint>

#include "homsim/experiment.hpp"

namespace homsim {

/// One stochastic run.  Batches execute on independent derived RNG streams
/// (derive_stream_seed) and merge by summation, so results are reproducible
/// for a fixed root seed regardless of batch scheduling.
struct TrialPlan {
    ExperimentConfig config;
    std::uint64_t pulses = 1000000;
    std::uint64_t seed = 1;
    int batches = 1;
    /// Largest photon number handled by the interfering-mode computation;
    /// pulses exceeding it raise ErrorCode::truncation_overflow.
    int fock_limit = 8;
    /// Also run the two blocked-input background passes.
    bool measure_blocked = true;

    void validate() const;
};

/// Detector indices: 0 = i1, 1 = i2, 2 = s3, 3 = s4.
/// Twofold pair order: (i1,i2), (i1,s3), (i1,s4), (i2,s3), (i2,s4), (s3,s4).
struct CountRecord {
    std::uint64_t pulses = 0;
    std::array<std::uint64_t, 4> singles{};
    std::array<std::uint64_t, 6> twofolds{};
    std::uint64_t fourfold = 0;
    std::uint64_t blocked_a_fourfold = 0;
    std::uint64_t blocked_b_fourfold = 0;

    CountRecord& operator+=(const CountRecord& other);
};

CountRecord simulate(const TrialPlan& plan);

struct VisibilityEstimate {
    double raw;
    double net;
    double raw_err;
    double net_err;
};

/// Dip visibility from records at zero delay and far outside the dip:
/// raw = 1 - f(0)/f(far) on per-pulse fourfold frequencies; net subtracts the
/// blocked-input backgrounds from both before taking the ratio.  Errors are
/// propagated Poisson standard errors.
VisibilityEstimate estimate_visibility(const CountRecord& at_zero, const CountRecord& at_far);

/// Same estimate on the unheralded signal-signal twofold counts.
VisibilityEstimate estimate_twofold_visibility(const CountRecord& at_zero,
                                               const CountRecord& at_far);

}  // namespace homsim
