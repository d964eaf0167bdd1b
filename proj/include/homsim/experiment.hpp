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
#include <utility>

#include "homsim/detector.hpp"
#include "homsim/source.hpp"
#include "homsim/spectral.hpp"

namespace homsim {

/// Full dual-source interference setup.  Defaults reproduce the reference
/// experiment: 708 nm / 1.5 ps / 82 MHz pump, 583 nm signal and 900 nm idler
/// filters, n_bar = 0.025 gaussian sources, eta_i = 0.05, eta_s = 0.034.
struct ExperimentConfig {
    PairSource source_a{0.025, PairStatistics::gaussian, 2};
    PairSource source_b{0.025, PairStatistics::gaussian, 2};
    ThresholdDetector det_i1{0.05};
    ThresholdDetector det_i2{0.05};
    ThresholdDetector det_s3{0.034};
    ThresholdDetector det_s4{0.034};
    BeamSplitter coupler = BeamSplitter::balanced();
    PumpPulse pump{wavelength_to_angular_frequency(708e-9), pump_sigma_from_duration(1.5e-12),
                   8.2e7, 1.5e-12};
    GaussianFilter signal_filter{wavelength_to_angular_frequency(583e-9),
                                 wavelength_filter_to_sigma(583e-9, 0.2e-9)};
    GaussianFilter idler_filter{wavelength_to_angular_frequency(900e-9),
                                wavelength_filter_to_sigma(900e-9, 2e-9)};
    double delay = 0.0;  // s

    /// Effective single filter bandwidth entering the overlap weight; 0 means
    /// "use signal_filter.sigma".
    double sigma_eff = 0.0;
    /// Spectral visibility ceiling; negative means "compute from bandwidths".
    double v_max_override = -1.0;

    void validate() const;

    double effective_sigma() const;
    double v_max() const;

    /// Mode-overlap weight w(dt) = v_max * dip_gaussian_weight(dt).
    double overlap_weight(double delta_t) const;
};

struct CoincidenceReport {
    double p_fourfold;      // per pulse, at the configured delay
    double rate;            // counts/s
    double blocked_a;       // fourfold probability with coupler input a blocked
    double blocked_b;
    double visibility_raw;  // from the full-scan extremes
    double visibility_net;  // after subtracting blocked backgrounds
};

/// Heralded-coincidence closed form for overlapped photons at a 50:50 coupler:
///   eta_s^2 * 2 n_bar gamma gamma' / (1 + 2 n_bar gamma)
/// with gamma = 1 - eta_i/2 and gamma' = 1 - eta_s/2.
double p_interfering(double n_bar, double eta_i, double eta_s);

/// Same detection with the photons fully distinguishable:
///   eta_s^2 * (1/2 + 6 n_bar gamma gamma' / (1 + 2 n_bar gamma)).
double p_noninterfering(double n_bar, double eta_i, double eta_s);

struct MultipairVisibility {
    /// (p_noninterfering - p_interfering) / p_noninterfering with the closed
    /// forms above, i.e. (1 + 8x)/(1 + 12x) at x = n gamma gamma'/(1 + 2 n gamma).
    double exact_ratio;
    /// First-order form (1 + 8 n gamma gamma') / (1 + 12 n gamma gamma').
    double first_order;
};

MultipairVisibility visibility_multipair(double n_bar, double gamma, double gamma_prime);

/// Non-interfering fourfold rate R n_bar^2 eta_s^2 eta_i^2 / 2 in counts/s.
double fourfold_rate(double rep_rate, double n_bar, double eta_s, double eta_i);

/// k-pair 2k-fold rate R (n_bar eta_s eta_i)^k before any beamsplitters;
/// note the deliberate absence of the k = 2 combinatorial factor 1/2, so
/// multifold_rate(.., 2) = 2 * fourfold_rate(..).
double multifold_rate(double rep_rate, double n_bar, double eta_s, double eta_i, int k_pairs);

/// Per-pulse idler click probability of one source (heralding rate).
double herald_probability(const PairSource& src, const ThresholdDetector& det_i);

/// Output photon-number distribution over (out_a, out_b) for heralded states
/// at both coupler inputs, fully overlapped (joint Fock interference).
std::map<std::pair<int, int>, double> coupler_distribution_interfering(
    const HeraldedState& a, const HeraldedState& b, const BeamSplitter& bs);

/// Distinguishable photons: each source is split on its own and the output
/// photon numbers add.
std::map<std::pair<int, int>, double> coupler_distribution_noninterfering(
    const HeraldedState& a, const HeraldedState& b, const BeamSplitter& bs);

/// One input blocked; at_second_port selects which coupler port the surviving
/// source feeds.
std::map<std::pair<int, int>, double> coupler_distribution_single(const HeraldedState& s,
                                                                  bool at_second_port,
                                                                  const BeamSplitter& bs);

/// Probability that both signal detectors click given an output distribution.
double coincidence_from_distribution(const std::map<std::pair<int, int>, double>& dist,
                                     const ThresholdDetector& d3, const ThresholdDetector& d4);

/// Exact composite model at the configured delay, plus blocked backgrounds and
/// dip visibilities from the scan extremes.  Idler dark counts enter the
/// herald rate but leave the heralded state untouched.
CoincidenceReport run_exact(const ExperimentConfig& config);

}  // namespace homsim
