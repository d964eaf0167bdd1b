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

#include "homsim/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace homsim {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    require(end != nullptr && *end == '\0' && !v.empty(), ErrorCode::parse_error,
            "key '" + key + "': cannot parse '" + value + "' as a number");
    return x;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    const double x = parse_double(key, value);
    require(x >= 0.0 && x <= 1.8e19 && x == std::floor(x), ErrorCode::parse_error,
            "key '" + key + "': '" + value + "' is not a non-negative integer");
    return static_cast<std::uint64_t>(x);
}

bool parse_bool(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (v == "true" || v == "1" || v == "yes") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no") {
        return false;
    }
    raise(ErrorCode::parse_error, "key '" + key + "': cannot parse '" + value + "' as a bool");
}

}  // namespace

const std::map<std::string, std::string>& RunConfig::known_keys() {
    static const std::map<std::string, std::string> defaults = {
        {"source.n_bar", "0.025"},
        {"source.n_bar_a", "auto"},
        {"source.n_bar_b", "auto"},
        {"source.statistics", "gaussian"},
        {"source.truncation", "2"},
        {"source.background_rate", "0"},
        {"detector.eta_i1", "0.05"},
        {"detector.eta_i2", "0.05"},
        {"detector.eta_s3", "0.034"},
        {"detector.eta_s4", "0.034"},
        {"detector.dark_rate", "0"},
        {"coupler.t", "0.7071067811865476"},
        {"coupler.r", "0.7071067811865476"},
        {"pump.center_nm", "708"},
        {"pump.duration_ps", "1.5"},
        {"pump.rep_rate_hz", "8.2e7"},
        {"filter.signal_center_nm", "583"},
        {"filter.signal_fwhm_nm", "0.2"},
        {"filter.idler_center_nm", "900"},
        {"filter.idler_fwhm_nm", "2.0"},
        {"spectral.sigma_ratio", "0.80"},
        {"spectral.v_max", "auto"},
        {"experiment.delay_s", "0"},
        {"run.pulses", "1000000"},
        {"run.seed", "42"},
        {"run.batches", "1"},
        {"run.fock_limit", "8"},
        {"run.measure_blocked", "true"},
        {"scan.delay_min_s", "-6e-12"},
        {"scan.delay_max_s", "6e-12"},
        {"scan.points", "25"},
    };
    return defaults;
}

RunConfig::RunConfig() : values_(known_keys()) {}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorCode::io_error, "cannot open config file '" + path + "'");

    RunConfig cfg;
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line.substr(0, line.find_first_of("#;")));
        if (text.empty()) {
            continue;
        }
        if (text.front() == '[') {
            require(text.back() == ']' && text.size() > 2, ErrorCode::parse_error,
                    path + ":" + std::to_string(line_no) + ": malformed section header");
            section = trim(text.substr(1, text.size() - 2));
            continue;
        }
        const auto eq = text.find('=');
        require(eq != std::string::npos, ErrorCode::parse_error,
                path + ":" + std::to_string(line_no) + ": expected key = value");
        std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        require(!key.empty(), ErrorCode::parse_error,
                path + ":" + std::to_string(line_no) + ": empty key");
        if (!section.empty() && key.find('.') == std::string::npos) {
            key = section + "." + key;
        }
        try {
            cfg.set(key, value);
        } catch (const Error& e) {
            raise(e.code(), path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return cfg;
}

void RunConfig::set(const std::string& key, const std::string& value) {
    auto it = values_.find(key);
    require(it != values_.end(), ErrorCode::parse_error, "unknown configuration key '" + key + "'");
    it->second = trim(value);
}

const std::string& RunConfig::get(const std::string& key) const {
    auto it = values_.find(key);
    require(it != values_.end(), ErrorCode::parse_error, "unknown configuration key '" + key + "'");
    return it->second;
}

double RunConfig::get_double(const std::string& key) const {
    return parse_double(key, get(key));
}

ExperimentConfig RunConfig::experiment() const {
    ExperimentConfig cfg;

    const std::string stats_name = get("source.statistics");
    PairStatistics stats;
    if (stats_name == "gaussian") {
        stats = PairStatistics::gaussian;
    } else if (stats_name == "poisson") {
        stats = PairStatistics::poisson;
    } else {
        raise(ErrorCode::parse_error,
              "source.statistics must be 'gaussian' or 'poisson', got '" + stats_name + "'");
    }

    const double n_bar = get_double("source.n_bar");
    const std::string na = get("source.n_bar_a");
    const std::string nb = get("source.n_bar_b");
    const int truncation = static_cast<int>(parse_u64("source.truncation", get("source.truncation")));
    cfg.source_a = PairSource(na == "auto" ? n_bar : parse_double("source.n_bar_a", na), stats,
                              truncation);
    cfg.source_b = PairSource(nb == "auto" ? n_bar : parse_double("source.n_bar_b", nb), stats,
                              truncation);

    // Uncorrelated background singles fold into the per-detector dark rate.
    const double dark = get_double("detector.dark_rate");
    const double background = get_double("source.background_rate");
    require(dark >= 0.0 && dark < 1.0 && background >= 0.0 && background < 1.0,
            ErrorCode::invalid_argument, "dark and background rates must lie in [0, 1)");
    const double uncorrelated = 1.0 - (1.0 - dark) * (1.0 - background);
    cfg.det_i1 = ThresholdDetector(get_double("detector.eta_i1"), uncorrelated);
    cfg.det_i2 = ThresholdDetector(get_double("detector.eta_i2"), uncorrelated);
    cfg.det_s3 = ThresholdDetector(get_double("detector.eta_s3"), uncorrelated);
    cfg.det_s4 = ThresholdDetector(get_double("detector.eta_s4"), uncorrelated);

    cfg.coupler = BeamSplitter::from_ratio(get_double("coupler.t"), get_double("coupler.r"));

    const double pump_center = wavelength_to_angular_frequency(get_double("pump.center_nm") * 1e-9);
    const double duration = get_double("pump.duration_ps") * 1e-12;
    cfg.pump = PumpPulse(pump_center, pump_sigma_from_duration(duration),
                         get_double("pump.rep_rate_hz"), duration);

    cfg.signal_filter =
        GaussianFilter(wavelength_to_angular_frequency(get_double("filter.signal_center_nm") * 1e-9),
                       wavelength_filter_to_sigma(get_double("filter.signal_center_nm") * 1e-9,
                                                  get_double("filter.signal_fwhm_nm") * 1e-9));
    cfg.idler_filter =
        GaussianFilter(wavelength_to_angular_frequency(get_double("filter.idler_center_nm") * 1e-9),
                       wavelength_filter_to_sigma(get_double("filter.idler_center_nm") * 1e-9,
                                                  get_double("filter.idler_fwhm_nm") * 1e-9));

    const std::string ratio = get("spectral.sigma_ratio");
    cfg.sigma_eff = ratio == "auto" ? cfg.signal_filter.sigma
                                    : parse_double("spectral.sigma_ratio", ratio) * cfg.pump.sigma_p;

    const std::string v_max = get("spectral.v_max");
    cfg.v_max_override = v_max == "auto" ? -1.0 : parse_double("spectral.v_max", v_max);

    cfg.delay = get_double("experiment.delay_s");
    cfg.validate();
    return cfg;
}

TrialPlan RunConfig::trial_plan() const {
    TrialPlan plan;
    plan.config = experiment();
    plan.pulses = parse_u64("run.pulses", get("run.pulses"));
    plan.seed = parse_u64("run.seed", get("run.seed"));
    plan.batches = static_cast<int>(parse_u64("run.batches", get("run.batches")));
    plan.fock_limit = static_cast<int>(parse_u64("run.fock_limit", get("run.fock_limit")));
    plan.measure_blocked = parse_bool("run.measure_blocked", get("run.measure_blocked"));
    plan.validate();
    return plan;
}

RunConfig::ScanGrid RunConfig::scan() const {
    ScanGrid grid{};
    grid.min_delay = get_double("scan.delay_min_s");
    grid.max_delay = get_double("scan.delay_max_s");
    grid.points = static_cast<int>(parse_u64("scan.points", get("scan.points")));
    require(grid.points >= 2, ErrorCode::invalid_argument, "scan needs at least two points");
    require(grid.max_delay > grid.min_delay, ErrorCode::invalid_argument,
            "scan range must be non-empty");
    return grid;
}

}  // namespace homsim
