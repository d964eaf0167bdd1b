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

#include <vector>

#include "homsim/error.hpp"

namespace homsim {

/// Coincidence counts versus coupler delay, ready for fitting.
struct DipData {
    struct Sample {
        double delay;   // s
        double counts;  // non-negative
        double error;   // 1-sigma count error; <= 0 means "not given"
    };

    std::vector<Sample> samples;

    /// At least five samples, strictly increasing delays, counts >= 0.
    void validate() const;
};

/// Coupler splitting ratio for the dip model.  t and r are the raw model
/// coefficients of  baseline * (r^4 + t^4 - 2 V r^2 t^2 exp(...));  the fitted
/// visibility only depends on t/r, so the pair need not be normalized (the
/// reference coupler values t = 0.54, r = 0.46 are accepted as-is).
struct CouplerSplit {
    double t;
    double r;

    CouplerSplit(double t_in, double r_in);
};

struct DipFitResult {
    double visibility = 0.0;
    double sigma_dip = 0.0;  // s
    double baseline = 0.0;   // counts
    double center = 0.0;     // s
    double visibility_err = 0.0;
    double sigma_dip_err = 0.0;
    double baseline_err = 0.0;
    double center_err = 0.0;
    double residual_norm = 0.0;  // sqrt(weighted squared residual sum)
    int iterations = 0;
    bool converged = false;
};

/// Model evaluated at one delay; used for residual reporting.
double dip_model(const DipFitResult& fit, const CouplerSplit& coupler, double delay);

/// Weighted least squares of
///   B (r^4 + t^4 - 2 V r^2 t^2 exp(-(dt - dt0)^2 / (2 sigma^2)))
/// over (B, V, sigma, dt0) by damped Gauss-Newton with the analytic Jacobian.
/// Weights are 1/error^2 where error bars are present, else Poisson
/// 1/max(counts, 1).  Converges on relative parameter change 1e-9 within 200
/// iterations or raises ErrorCode::no_convergence.
DipFitResult fit_dip(const DipData& data, const CouplerSplit& coupler);

/// Undoes the contrast loss of an unbalanced coupler:
///   V = observed_depth (r^4 + t^4) / (2 r^2 t^2).
/// Results above 1.05 are rejected as inconsistent input.
double coupler_corrected_visibility(double observed_depth, const CouplerSplit& coupler);

}  // namespace homsim
