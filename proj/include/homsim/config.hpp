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

#include <map>
#include <string>

#include "homsim/montecarlo.hpp"

namespace homsim {

/// Flat key-value run configuration.
///
/// Keys are "section.name" and files use INI-style sections:
///
///     [source]
///     n_bar = 0.025
///     statistics = gaussian
///
/// Unknown keys are rejected; every key has a default mirroring the reference
/// experiment.  See RunConfig::known_keys() for the full list.
class RunConfig {
  public:
    RunConfig();

    static RunConfig from_file(const std::string& path);

    /// Sets a dotted key, e.g. "source.n_bar".  Unknown keys raise
    /// ErrorCode::parse_error.
    void set(const std::string& key, const std::string& value);
    const std::string& get(const std::string& key) const;
    double get_double(const std::string& key) const;

    const std::map<std::string, std::string>& entries() const { return values_; }
    static const std::map<std::string, std::string>& known_keys();

    /// Builds and validates the physics configuration.
    ExperimentConfig experiment() const;
    /// Builds the Monte Carlo plan (experiment plus run controls).
    TrialPlan trial_plan() const;

    struct ScanGrid {
        double min_delay;
        double max_delay;
        int points;
    };
    ScanGrid scan() const;

  private:
    std::map<std::string, std::string> values_;
};

}  // namespace homsim
