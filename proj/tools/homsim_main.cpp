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

// Command-line front end.  Talks to the core exclusively through the C API so
// it doubles as a smoke test of the shared library surface.

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "homsim/capi.h"

namespace {

struct ConfigHandle {
    homsim_config* ptr;
    explicit ConfigHandle(homsim_config* p) : ptr(p) {}
    ~ConfigHandle() { homsim_config_free(ptr); }
    ConfigHandle(const ConfigHandle&) = delete;
    ConfigHandle& operator=(const ConfigHandle&) = delete;
};

[[noreturn]] void fail(homsim_status status) {
    std::cerr << "error: " << homsim_status_name(status) << ": " << homsim_last_error() << "\n";
    std::exit(1);
}

void check(homsim_status status) {
    if (status != HOMSIM_OK) {
        fail(status);
    }
}

std::string fmt(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

// Writes to the given path, or stdout when the path is empty.
class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_.good()) {
                std::cerr << "error: cannot open output file '" << path << "'\n";
                std::exit(1);
            }
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_path;
    std::int64_t seed = -1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "Configuration file (INI-style sections)");
    cmd->add_option("--set", args.overrides, "Override a key, e.g. --set source.n_bar=0.01")
        ->type_name("KEY=VALUE");
    cmd->add_option("--out", args.out_path, "Write CSV here instead of stdout");
    cmd->add_option("--seed", args.seed, "Override run.seed");
}

homsim_config* build_config(const CommonArgs& args) {
    homsim_config* cfg = homsim_config_new();
    if (cfg == nullptr) {
        std::cerr << "error: out of memory\n";
        std::exit(1);
    }
    if (!args.config_path.empty()) {
        check(homsim_config_load(cfg, args.config_path.c_str()));
    }
    for (const std::string& kv : args.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            std::cerr << "error: --set expects KEY=VALUE, got '" << kv << "'\n";
            std::exit(1);
        }
        check(homsim_config_set(cfg, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
    }
    if (args.seed >= 0) {
        check(homsim_config_set(cfg, "run.seed", std::to_string(args.seed).c_str()));
    }
    check(homsim_config_check(cfg));
    return cfg;
}

double config_double(const homsim_config* cfg, const char* key) {
    double value = 0.0;
    check(homsim_config_get_double(cfg, key, &value));
    return value;
}

int run_visibility(const CommonArgs& args) {
    ConfigHandle cfg(build_config(args));

    const double sigma_p = 1.0;
    double sigma_ratio;
    {
        char buf[64];
        check(homsim_config_get_string(cfg.ptr, "spectral.sigma_ratio", buf, sizeof(buf)));
        if (std::string(buf) == "auto") {
            double filter_sigma = 0.0;
            check(homsim_wavelength_filter_to_sigma(
                config_double(cfg.ptr, "filter.signal_center_nm") * 1e-9,
                config_double(cfg.ptr, "filter.signal_fwhm_nm") * 1e-9, &filter_sigma));
            double pump_sigma = 0.0;
            check(homsim_pump_sigma_from_duration(
                config_double(cfg.ptr, "pump.duration_ps") * 1e-12, &pump_sigma));
            sigma_ratio = filter_sigma / pump_sigma;
        } else {
            sigma_ratio = config_double(cfg.ptr, "spectral.sigma_ratio");
        }
    }

    double v_max = 0.0;
    check(homsim_fwm_visibility(sigma_ratio, sigma_p, &v_max));
    double v_pdc = 0.0;
    check(homsim_pdc_visibility(sigma_ratio, sigma_p, &v_pdc));

    const double n_bar = config_double(cfg.ptr, "source.n_bar");
    const double gamma = 1.0 - config_double(cfg.ptr, "detector.eta_i1") / 2.0;
    const double gamma_prime = 1.0 - config_double(cfg.ptr, "detector.eta_s3") / 2.0;
    double v_exact = 0.0;
    double v_first = 0.0;
    check(homsim_multipair_visibility(n_bar, gamma, gamma_prime, &v_exact, &v_first));

    homsim_report report{};
    check(homsim_run_exact(cfg.ptr, &report));

    Output out(args.out_path);
    out.stream() << "quantity,value\n"
                 << "sigma_ratio," << fmt(sigma_ratio) << "\n"
                 << "v_max_fwm," << fmt(v_max) << "\n"
                 << "v_pdc," << fmt(v_pdc) << "\n"
                 << "v_multipair_exact," << fmt(v_exact) << "\n"
                 << "v_multipair_first_order," << fmt(v_first) << "\n"
                 << "v_raw," << fmt(report.visibility_raw) << "\n"
                 << "v_net," << fmt(report.visibility_net) << "\n";
    return 0;
}

int run_dip(const CommonArgs& args, std::uint64_t mc_pulses_override) {
    ConfigHandle cfg(build_config(args));

    const double lo = config_double(cfg.ptr, "scan.delay_min_s");
    const double hi = config_double(cfg.ptr, "scan.delay_max_s");
    const int points = static_cast<int>(config_double(cfg.ptr, "scan.points"));
    if (points < 2 || hi <= lo) {
        std::cerr << "error: invalid scan grid\n";
        return 1;
    }
    if (mc_pulses_override > 0) {
        check(homsim_config_set(cfg.ptr, "run.pulses",
                                std::to_string(mc_pulses_override).c_str()));
    }
    const double base_seed = config_double(cfg.ptr, "run.seed");

    Output out(args.out_path);
    out.stream() << "delay_s,p_exact,mc_fourfold,mc_pulses,mc_err\n";
    for (int i = 0; i < points; ++i) {
        const double delay = lo + (hi - lo) * i / (points - 1);
        ConfigHandle row(homsim_config_clone(cfg.ptr));
        check(homsim_config_set(row.ptr, "experiment.delay_s", fmt(delay).c_str()));
        // One derived seed per row keeps rows independent and the scan
        // reproducible for a fixed run.seed.
        check(homsim_config_set(
            row.ptr, "run.seed",
            std::to_string(static_cast<std::uint64_t>(base_seed) + 1000003ULL * i).c_str()));

        homsim_report report{};
        check(homsim_run_exact(row.ptr, &report));
        homsim_counts counts{};
        check(homsim_simulate(row.ptr, &counts));

        const double err = std::sqrt(static_cast<double>(counts.fourfold));
        out.stream() << fmt(delay) << "," << fmt(report.p_fourfold) << "," << counts.fourfold
                     << "," << counts.pulses << "," << fmt(err) << "\n";
    }
    return 0;
}

int run_rates(const CommonArgs& args) {
    ConfigHandle cfg(build_config(args));
    const double rep = config_double(cfg.ptr, "pump.rep_rate_hz");
    const double n_bar = config_double(cfg.ptr, "source.n_bar");
    const double eta_s = config_double(cfg.ptr, "detector.eta_s3");
    const double eta_i = config_double(cfg.ptr, "detector.eta_i1");

    double c4 = 0.0;
    check(homsim_fourfold_rate(rep, n_bar, eta_s, eta_i, &c4));
    double six = 0.0;
    check(homsim_multifold_rate(rep, n_bar, eta_s, eta_i, 3, &six));

    Output out(args.out_path);
    out.stream() << "quantity,value\n"
                 << "fourfold_per_s," << fmt(c4) << "\n"
                 << "fourfold_per_60s," << fmt(c4 * 60.0) << "\n"
                 << "sixfold_per_s," << fmt(six) << "\n";
    return 0;
}

int run_montecarlo(const CommonArgs& args) {
    ConfigHandle cfg(build_config(args));
    homsim_counts c{};
    check(homsim_simulate(cfg.ptr, &c));

    Output out(args.out_path);
    out.stream() << "pulses,s_i1,s_i2,s_s3,s_s4,c_i1i2,c_i1s3,c_i1s4,c_i2s3,c_i2s4,c_s3s4,"
                    "fourfold,blocked_a_fourfold,blocked_b_fourfold\n";
    out.stream() << c.pulses;
    for (int i = 0; i < 4; ++i) {
        out.stream() << "," << c.singles[i];
    }
    for (int i = 0; i < 6; ++i) {
        out.stream() << "," << c.twofolds[i];
    }
    out.stream() << "," << c.fourfold << "," << c.blocked_a_fourfold << ","
                 << c.blocked_b_fourfold << "\n";
    return 0;
}

int run_fit(const std::string& csv_path, double t, double r, const std::string& out_path,
            const std::string& residuals_path) {
    std::ifstream in(csv_path);
    if (!in.good()) {
        std::cerr << "error: cannot open '" << csv_path << "'\n";
        return 1;
    }
    std::vector<double> delays;
    std::vector<double> counts;
    std::vector<double> errors;
    bool any_error = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (line_no == 1 && line.find_first_not_of("0123456789.,+-eE \t\r") != std::string::npos) {
            continue;  // header row
        }
        std::istringstream row(line);
        std::string cell;
        std::vector<double> cells;
        while (std::getline(row, cell, ',')) {
            try {
                cells.push_back(std::stod(cell));
            } catch (...) {
                std::cerr << "error: " << csv_path << ":" << line_no << ": bad number '" << cell
                          << "'\n";
                return 1;
            }
        }
        if (cells.size() < 2 || cells.size() > 3) {
            std::cerr << "error: " << csv_path << ":" << line_no
                      << ": expected delay_s,counts[,error]\n";
            return 1;
        }
        delays.push_back(cells[0]);
        counts.push_back(cells[1]);
        errors.push_back(cells.size() == 3 ? cells[2] : 0.0);
        any_error = any_error || cells.size() == 3;
    }

    homsim_fit_result fit{};
    check(homsim_fit_dip(delays.data(), counts.data(), any_error ? errors.data() : nullptr,
                         delays.size(), t, r, &fit));

    Output out(out_path);
    out.stream() << "visibility,visibility_err,sigma_dip_s,sigma_dip_err,baseline,baseline_err,"
                    "center_s,center_err,residual_norm,iterations,converged\n";
    out.stream() << fmt(fit.visibility) << "," << fmt(fit.visibility_err) << ","
                 << fmt(fit.sigma_dip) << "," << fmt(fit.sigma_dip_err) << ","
                 << fmt(fit.baseline) << "," << fmt(fit.baseline_err) << "," << fmt(fit.center)
                 << "," << fmt(fit.center_err) << "," << fmt(fit.residual_norm) << ","
                 << fit.iterations << "," << fit.converged << "\n";

    if (!residuals_path.empty()) {
        std::ofstream res(residuals_path);
        if (!res.good()) {
            std::cerr << "error: cannot open '" << residuals_path << "'\n";
            return 1;
        }
        res << "delay_s,counts,model,residual\n";
        for (std::size_t i = 0; i < delays.size(); ++i) {
            double model = 0.0;
            check(homsim_fit_model(&fit, t, r, delays[i], &model));
            res << fmt(delays[i]) << "," << fmt(counts[i]) << "," << fmt(model) << ","
                << fmt(counts[i] - model) << "\n";
        }
    }
    return 0;
}

int run_energy_check(double lp_nm, double ls_nm, double li_nm, double rel_tol) {
    int pass = 0;
    double mismatch = 0.0;
    check(homsim_energy_check(lp_nm * 1e-9, ls_nm * 1e-9, li_nm * 1e-9, rel_tol, &pass,
                              &mismatch));
    std::cout << "relative_mismatch," << fmt(mismatch) << "\n"
              << "tolerance," << fmt(rel_tol) << "\n"
              << "result," << (pass ? "pass" : "fail") << "\n";
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-source heralded-photon interference simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(homsim_version()));

    CommonArgs vis_args;
    CLI::App* vis = app.add_subcommand("visibility", "Spectral and multi-pair visibilities");
    add_common(vis, vis_args);

    CommonArgs dip_args;
    std::uint64_t dip_pulses = 0;
    CLI::App* dip = app.add_subcommand("dip", "Dip scan: exact probability and MC counts per delay");
    add_common(dip, dip_args);
    dip->add_option("--pulses", dip_pulses, "Override run.pulses for the MC column");

    CommonArgs rates_args;
    CLI::App* rates = app.add_subcommand("rates", "Fourfold and projected six-fold rates");
    add_common(rates, rates_args);

    CommonArgs mc_args;
    CLI::App* mc = app.add_subcommand("montecarlo", "Pulse-by-pulse simulation counts");
    add_common(mc, mc_args);

    std::string fit_csv;
    double fit_t = 0.54;
    double fit_r = 0.46;
    std::string fit_out;
    std::string fit_residuals;
    CLI::App* fit = app.add_subcommand("fit", "Least-squares dip fit of a delay/counts CSV");
    fit->add_option("csv", fit_csv, "Input CSV: delay_s,counts[,error]")->required();
    fit->add_option("--t", fit_t, "Coupler transmission coefficient");
    fit->add_option("--r", fit_r, "Coupler reflection coefficient");
    fit->add_option("--out", fit_out, "Fit result CSV (default stdout)");
    fit->add_option("--residuals", fit_residuals, "Residuals CSV path");

    double ec_lp = 0.0;
    double ec_ls = 0.0;
    double ec_li = 0.0;
    double ec_tol = 1e-3;
    CLI::App* energy = app.add_subcommand("energy-check", "Pump/signal/idler energy conservation");
    energy->add_option("lambda_p_nm", ec_lp, "Pump wavelength (nm)")->required();
    energy->add_option("lambda_s_nm", ec_ls, "Signal wavelength (nm)")->required();
    energy->add_option("lambda_i_nm", ec_li, "Idler wavelength (nm)")->required();
    energy->add_option("--rel-tol", ec_tol, "Relative tolerance");

    CLI11_PARSE(app, argc, argv);

    if (vis->parsed()) {
        return run_visibility(vis_args);
    }
    if (dip->parsed()) {
        return run_dip(dip_args, dip_pulses);
    }
    if (rates->parsed()) {
        return run_rates(rates_args);
    }
    if (mc->parsed()) {
        return run_montecarlo(mc_args);
    }
    if (fit->parsed()) {
        return run_fit(fit_csv, fit_t, fit_r, fit_out, fit_residuals);
    }
    if (energy->parsed()) {
        return run_energy_check(ec_lp, ec_ls, ec_li, ec_tol);
    }
    return 1;
}
