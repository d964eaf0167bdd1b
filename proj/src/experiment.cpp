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

#include "homsim/experiment.hpp"

#include <cmath>
#include <limits>

namespace homsim {

namespace {

void require_efficiency(double eta, const char* name) {
    require(eta > 0.0 && eta <= 1.0, ErrorCode::invalid_argument,
            std::string(name) + " must lie in (0, 1]");
}

PureState heralded_pure_state(const HeraldedState& h) {
    PureState s(1, PureState::kDefaultMaxPhotons);
    s.add(FockOccupation{1}, h.amp_one);
    s.add(FockOccupation{2}, h.amp_two);
    return s;
}

std::map<std::pair<int, int>, double> distribution_of(const PureState& out) {
    std::map<std::pair<int, int>, double> dist;
    for (const auto& [occ, amp] : out.terms()) {
        dist[{occ.n[0], occ.n[1]}] += std::norm(amp);
    }
    return dist;
}

}  // namespace

void ExperimentConfig::validate() const {
    require(source_a.statistics == source_b.statistics, ErrorCode::invalid_argument,
            "both sources must share the same pair statistics");
    require(sigma_eff >= 0.0, ErrorCode::invalid_argument,
            "effective bandwidth must be non-negative");
    require(v_max_override <= 1.0, ErrorCode::invalid_argument,
            "spectral visibility ceiling cannot exceed 1");
    require(!std::isnan(delay), ErrorCode::invalid_argument, "delay must not be NaN");
}

double ExperimentConfig::effective_sigma() const {
    return sigma_eff > 0.0 ? sigma_eff : signal_filter.sigma;
}

double ExperimentConfig::v_max() const {
    if (v_max_override >= 0.0) {
        return v_max_override;
    }
    return fwm_visibility(effective_sigma(), pump.sigma_p);
}

double ExperimentConfig::overlap_weight(double delta_t) const {
    return v_max() * dip_gaussian_weight(delta_t, effective_sigma(), pump.sigma_p);
}

double p_interfering(double n_bar, double eta_i, double eta_s) {
    require(n_bar >= 0.0 && n_bar < 1.0, ErrorCode::invalid_argument,
            "mean pair number must lie in [0, 1)");
    require_efficiency(eta_i, "idler efficiency");
    require_efficiency(eta_s, "signal efficiency");
    const double gamma = 1.0 - eta_i / 2.0;
    const double gamma_p = 1.0 - eta_s / 2.0;
    return eta_s * eta_s * (2.0 * n_bar * gamma * gamma_p) / (1.0 + 2.0 * n_bar * gamma);
}

double p_noninterfering(double n_bar, double eta_i, double eta_s) {
    require(n_bar >= 0.0 && n_bar < 1.0, ErrorCode::invalid_argument,
            "mean pair number must lie in [0, 1)");
    require_efficiency(eta_i, "idler efficiency");
    require_efficiency(eta_s, "signal efficiency");
    const double gamma = 1.0 - eta_i / 2.0;
    const double gamma_p = 1.0 - eta_s / 2.0;
    return eta_s * eta_s * (0.5 + (6.0 * n_bar * gamma * gamma_p) / (1.0 + 2.0 * n_bar * gamma));
}

MultipairVisibility visibility_multipair(double n_bar, double gamma, double gamma_prime) {
    require(n_bar >= 0.0, ErrorCode::invalid_argument, "mean pair number must be non-negative");
    require(gamma > 0.0 && gamma <= 1.0, ErrorCode::invalid_argument, "gamma must lie in (0, 1]");
    require(gamma_prime > 0.0 && gamma_prime <= 1.0, ErrorCode::invalid_argument,
            "gamma' must lie in (0, 1]");
    const double gg = gamma * gamma_prime;
    const double x = n_bar * gg / (1.0 + 2.0 * n_bar * gamma);
    return {(1.0 + 8.0 * x) / (1.0 + 12.0 * x),
            (1.0 + 8.0 * n_bar * gg) / (1.0 + 12.0 * n_bar * gg)};
}

double fourfold_rate(double rep_rate, double n_bar, double eta_s, double eta_i) {
    require(rep_rate > 0.0, ErrorCode::invalid_argument, "repetition rate must be positive");
    require(n_bar >= 0.0, ErrorCode::invalid_argument, "mean pair number must be non-negative");
    require(eta_s >= 0.0 && eta_i >= 0.0, ErrorCode::invalid_argument,
            "efficiencies must be non-negative");
    return rep_rate * n_bar * n_bar * eta_s * eta_s * eta_i * eta_i / 2.0;
}

double multifold_rate(double rep_rate, double n_bar, double eta_s, double eta_i, int k_pairs) {
    require(rep_rate > 0.0, ErrorCode::invalid_argument, "repetition rate must be positive");
    require(n_bar >= 0.0, ErrorCode::invalid_argument, "mean pair number must be non-negative");
    require(k_pairs >= 2, ErrorCode::invalid_argument, "multifold rate needs at least two pairs");
    return rep_rate * std::pow(n_bar * eta_s * eta_i, k_pairs);
}

double herald_probability(const PairSource& src, const ThresholdDetector& det_i) {
    require(src.n_bar < 1.0, ErrorCode::invalid_argument, "herald rate requires n_bar < 1");
    const double alpha2 = src.n_bar;
    double norm = 0.0;
    double clicked = 0.0;
    for (int n = 0; n <= src.truncation; ++n) {
        const double c = src.pair_coefficient(n);
        const double weight = c * c * std::pow(alpha2, n);
        norm += weight;
        clicked += weight * click_probability(n, det_i);
    }
    return clicked / norm;
}

std::map<std::pair<int, int>, double> coupler_distribution_interfering(
    const HeraldedState& a, const HeraldedState& b, const BeamSplitter& bs) {
    const PureState joint = tensor(heralded_pure_state(a), heralded_pure_state(b));
    return distribution_of(apply_beamsplitter(joint, 0, 1, bs));
}

std::map<std::pair<int, int>, double> coupler_distribution_single(const HeraldedState& s,
                                                                  bool at_second_port,
                                                                  const BeamSplitter& bs) {
    const PureState one = heralded_pure_state(s);
    const PureState vac = PureState::vacuum(1, PureState::kDefaultMaxPhotons);
    const PureState joint = at_second_port ? tensor(vac, one) : tensor(one, vac);
    return distribution_of(apply_beamsplitter(joint, 0, 1, bs));
}

std::map<std::pair<int, int>, double> coupler_distribution_noninterfering(
    const HeraldedState& a, const HeraldedState& b, const BeamSplitter& bs) {
    const auto dist_a = coupler_distribution_single(a, false, bs);
    const auto dist_b = coupler_distribution_single(b, true, bs);
    std::map<std::pair<int, int>, double> dist;
    for (const auto& [na, pa] : dist_a) {
        for (const auto& [nb, pb] : dist_b) {
            dist[{na.first + nb.first, na.second + nb.second}] += pa * pb;
        }
    }
    return dist;
}

double coincidence_from_distribution(const std::map<std::pair<int, int>, double>& dist,
                                     const ThresholdDetector& d3, const ThresholdDetector& d4) {
    double p = 0.0;
    for (const auto& [occ, prob] : dist) {
        p += prob * click_probability(occ.first, d3) * click_probability(occ.second, d4);
    }
    return p;
}

CoincidenceReport run_exact(const ExperimentConfig& config) {
    config.validate();
    require_efficiency(config.det_s3.eta, "signal efficiency");
    require_efficiency(config.det_s4.eta, "signal efficiency");

    const HeraldedState ha = herald(config.source_a, config.det_i1.eta);
    const HeraldedState hb = herald(config.source_b, config.det_i2.eta);

    const double p_int = coincidence_from_distribution(
        coupler_distribution_interfering(ha, hb, config.coupler), config.det_s3, config.det_s4);
    const double p_noint = coincidence_from_distribution(
        coupler_distribution_noninterfering(ha, hb, config.coupler), config.det_s3, config.det_s4);
    const double bk_a = coincidence_from_distribution(
        coupler_distribution_single(hb, true, config.coupler), config.det_s3, config.det_s4);
    const double bk_b = coincidence_from_distribution(
        coupler_distribution_single(ha, false, config.coupler), config.det_s3, config.det_s4);

    auto p_cc = [&](double w) { return w * p_int + (1.0 - w) * p_noint; };

    const double ph_a = herald_probability(config.source_a, config.det_i1);
    const double ph_b = herald_probability(config.source_b, config.det_i2);
    const double heralds = ph_a * ph_b;

    const double w_here = config.overlap_weight(config.delay);
    const double w_zero = config.overlap_weight(0.0);

    CoincidenceReport report{};
    report.p_fourfold = heralds * p_cc(w_here);
    report.rate = config.pump.rep_rate * report.p_fourfold;
    report.blocked_a = heralds * bk_a;
    report.blocked_b = heralds * bk_b;

    // Herald factors cancel in the visibility ratios.
    const double cc_zero = p_cc(w_zero);
    const double cc_far = p_cc(0.0);
    require(cc_far > 0.0, ErrorCode::invalid_argument,
            "baseline coincidence probability vanished");
    report.visibility_raw = 1.0 - cc_zero / cc_far;
    const double background = bk_a + bk_b;
    const double net_far = cc_far - background;
    require(net_far > 0.0, ErrorCode::invalid_argument,
            "background exceeds the baseline coincidence probability");
    report.visibility_net = 1.0 - (cc_zero - background) / net_far;
    return report;
}

}  // namespace homsim
