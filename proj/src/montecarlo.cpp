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

#include "homsim/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

namespace homsim {

namespace {

enum class Pass { main, blocked_a, blocked_b };

// Lazily cached beamsplitter output distributions for interfering Fock inputs.
class FockRouter {
  public:
    FockRouter(const BeamSplitter& bs, int limit) : bs_(bs), limit_(limit) {}

    void route(int n, int m, Rng& rng, int& out3, int& out4) {
        require(n + m <= limit_, ErrorCode::truncation_overflow,
                "interfering photon number " + std::to_string(n + m) +
                    " exceeds the configured limit " + std::to_string(limit_));
        const auto& cumulative = distribution(n, m);
        const double u = rng.uniform();
        int k = 0;
        while (k + 1 < static_cast<int>(cumulative.size()) && u >= cumulative[k]) {
            ++k;
        }
        out3 = k;
        out4 = n + m - k;
    }

  private:
    const std::vector<double>& distribution(int n, int m) {
        const int key = n * (limit_ + 1) + m;
        auto it = cache_.find(key);
        if (it != cache_.end()) {
            return it->second;
        }
        const PureState out =
            apply_beamsplitter(PureState::fock(FockOccupation{n, m}, limit_), 0, 1, bs_);
        std::vector<double> cumulative(n + m + 1, 0.0);
        for (const auto& [occ, amp] : out.terms()) {
            cumulative[occ.n[0]] += std::norm(amp);
        }
        double acc = 0.0;
        for (double& c : cumulative) {
            acc += c;
            c = acc;
        }
        return cache_.emplace(key, std::move(cumulative)).first->second;
    }

    BeamSplitter bs_;
    int limit_;
    std::map<int, std::vector<double>> cache_;
};

struct PulseContext {
    const ExperimentConfig* config;
    double w;        // overlap weight at the configured delay
    double to3_a;    // port-1 single-photon routing probability to output 3
    double to3_b;    // port-2 routing probability to output 3
    bool has_darks;
};

CountRecord run_pass(const PulseContext& ctx, Pass pass, std::uint64_t pulses,
                     std::uint64_t stream_seed, FockRouter& router) {
    const ExperimentConfig& cfg = *ctx.config;
    Rng rng(stream_seed);
    CountRecord rec{};
    rec.pulses = pulses;

    for (std::uint64_t pulse = 0; pulse < pulses; ++pulse) {
        const int n_a = sample_pair_count(cfg.source_a, rng);
        const int n_b = sample_pair_count(cfg.source_b, rng);
        if (n_a == 0 && n_b == 0 && !ctx.has_darks) {
            continue;
        }

        const bool i1 = clicks(n_a, cfg.det_i1, rng);
        const bool i2 = clicks(n_b, cfg.det_i2, rng);
        if (pass != Pass::main && !(i1 && i2)) {
            continue;
        }

        const int a_photons = pass == Pass::blocked_a ? 0 : n_a;
        const int b_photons = pass == Pass::blocked_b ? 0 : n_b;

        // Source a defines the reference temporal mode; each source-b photon
        // joins it with probability w, the rest stay orthogonal and route
        // classically.
        int b_matched = 0;
        if (a_photons > 0 && b_photons > 0) {
            if (ctx.w >= 1.0) {
                b_matched = b_photons;
            } else if (ctx.w > 0.0) {
                b_matched = rng.binomial(b_photons, ctx.w);
            }
        }

        int out3 = 0;
        int out4 = 0;
        if (a_photons > 0 && b_matched > 0) {
            router.route(a_photons, b_matched, rng, out3, out4);
        } else {
            for (int i = 0; i < a_photons; ++i) {
                rng.bernoulli(ctx.to3_a) ? ++out3 : ++out4;
            }
            for (int i = 0; i < b_matched; ++i) {
                rng.bernoulli(ctx.to3_b) ? ++out3 : ++out4;
            }
        }
        for (int i = 0; i < b_photons - b_matched; ++i) {
            rng.bernoulli(ctx.to3_b) ? ++out3 : ++out4;
        }

        const bool s3 = clicks(out3, cfg.det_s3, rng);
        const bool s4 = clicks(out4, cfg.det_s4, rng);
        const bool four = i1 && i2 && s3 && s4;

        if (pass == Pass::main) {
            const bool flags[4] = {i1, i2, s3, s4};
            for (int d = 0; d < 4; ++d) {
                rec.singles[d] += flags[d] ? 1 : 0;
            }
            int pair = 0;
            for (int d = 0; d < 4; ++d) {
                for (int e = d + 1; e < 4; ++e, ++pair) {
                    rec.twofolds[pair] += (flags[d] && flags[e]) ? 1 : 0;
                }
            }
            rec.fourfold += four ? 1 : 0;
        } else if (pass == Pass::blocked_a) {
            rec.blocked_a_fourfold += four ? 1 : 0;
        } else {
            rec.blocked_b_fourfold += four ? 1 : 0;
        }
    }
    return rec;
}

CountRecord run_batch(const TrialPlan& plan, const PulseContext& ctx, int batch,
                      std::uint64_t pulses) {
    FockRouter router(plan.config.coupler, plan.fock_limit);
    const std::uint64_t base = static_cast<std::uint64_t>(batch) * 3ULL;
    CountRecord rec =
        run_pass(ctx, Pass::main, pulses, derive_stream_seed(plan.seed, base), router);
    if (plan.measure_blocked) {
        rec += run_pass(ctx, Pass::blocked_a, pulses, derive_stream_seed(plan.seed, base + 1),
                        router);
        rec += run_pass(ctx, Pass::blocked_b, pulses, derive_stream_seed(plan.seed, base + 2),
                        router);
    }
    rec.pulses = pulses;
    return rec;
}

VisibilityEstimate ratio_estimates(double c0, double b0, double n0, double cf, double bf,
                                   double nf) {
    require(cf - bf > 0.0, ErrorCode::invalid_argument,
            "visibility estimate has a zero or negative baseline");
    const double x_raw = c0;
    const double y_raw = cf;
    require(y_raw > 0.0, ErrorCode::invalid_argument,
            "visibility estimate has a zero baseline count");

    // Poisson variances floored at one count so empty bins keep a finite error.
    auto ratio_err = [](double x, double var_x, double y, double var_y, double scale) {
        var_x = std::max(var_x, 1.0);
        var_y = std::max(var_y, 1.0);
        return scale * std::sqrt(var_x / (y * y) + x * x * var_y / (y * y * y * y));
    };

    const double scale = nf / n0;
    VisibilityEstimate est{};
    est.raw = 1.0 - scale * x_raw / y_raw;
    est.raw_err = ratio_err(x_raw, c0, y_raw, cf, scale);
    const double x_net = c0 - b0;
    const double y_net = cf - bf;
    est.net = 1.0 - scale * x_net / y_net;
    est.net_err = ratio_err(x_net, c0 + b0, y_net, cf + bf, scale);
    return est;
}

}  // namespace

void TrialPlan::validate() const {
    config.validate();
    require(pulses >= 1, ErrorCode::invalid_argument, "plan needs at least one pulse");
    require(batches >= 1, ErrorCode::invalid_argument, "plan needs at least one batch");
    require(static_cast<std::uint64_t>(batches) <= pulses, ErrorCode::invalid_argument,
            "more batches than pulses");
    require(fock_limit >= 2, ErrorCode::invalid_argument,
            "interference limit must allow at least two photons");
}

CountRecord& CountRecord::operator+=(const CountRecord& other) {
    pulses += other.pulses;
    for (std::size_t i = 0; i < singles.size(); ++i) {
        singles[i] += other.singles[i];
    }
    for (std::size_t i = 0; i < twofolds.size(); ++i) {
        twofolds[i] += other.twofolds[i];
    }
    fourfold += other.fourfold;
    blocked_a_fourfold += other.blocked_a_fourfold;
    blocked_b_fourfold += other.blocked_b_fourfold;
    return *this;
}

CountRecord simulate(const TrialPlan& plan) {
    plan.validate();

    PulseContext ctx{};
    ctx.config = &plan.config;
    ctx.w = plan.config.overlap_weight(plan.config.delay);
    ctx.to3_a = plan.config.coupler.t * plan.config.coupler.t;
    ctx.to3_b = plan.config.coupler.r * plan.config.coupler.r;
    ctx.has_darks = plan.config.det_i1.dark_rate_per_pulse > 0.0 ||
                    plan.config.det_i2.dark_rate_per_pulse > 0.0 ||
                    plan.config.det_s3.dark_rate_per_pulse > 0.0 ||
                    plan.config.det_s4.dark_rate_per_pulse > 0.0;

    const std::uint64_t per_batch = plan.pulses / plan.batches;
    const std::uint64_t remainder = plan.pulses % plan.batches;
    std::vector<CountRecord> partials(plan.batches);

    const unsigned max_threads = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers =
        std::min<unsigned>(static_cast<unsigned>(plan.batches), max_threads);

    std::atomic<int> next_batch{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto work = [&] {
        for (;;) {
            const int b = next_batch.fetch_add(1);
            if (b >= plan.batches) {
                return;
            }
            try {
                const std::uint64_t pulses =
                    per_batch + (static_cast<std::uint64_t>(b) < remainder ? 1 : 0);
                partials[b] = run_batch(plan, ctx, b, pulses);
            } catch (...) {
                std::lock_guard<std::mutex> hold(failure_lock);
                if (!failure) {
                    failure = std::current_exception();
                }
                return;
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) {
            threads.emplace_back(work);
        }
        for (auto& t : threads) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    CountRecord total{};
    for (const CountRecord& rec : partials) {
        total += rec;
    }
    return total;
}

VisibilityEstimate estimate_visibility(const CountRecord& at_zero, const CountRecord& at_far) {
    require(at_zero.pulses > 0 && at_far.pulses > 0, ErrorCode::invalid_argument,
            "visibility estimate needs non-empty records");
    return ratio_estimates(
        static_cast<double>(at_zero.fourfold),
        static_cast<double>(at_zero.blocked_a_fourfold + at_zero.blocked_b_fourfold),
        static_cast<double>(at_zero.pulses), static_cast<double>(at_far.fourfold),
        static_cast<double>(at_far.blocked_a_fourfold + at_far.blocked_b_fourfold),
        static_cast<double>(at_far.pulses));
}

VisibilityEstimate estimate_twofold_visibility(const CountRecord& at_zero,
                                               const CountRecord& at_far) {
    require(at_zero.pulses > 0 && at_far.pulses > 0, ErrorCode::invalid_argument,
            "visibility estimate needs non-empty records");
    // No blocked background is defined for the unheralded twofold dip; net
    // mirrors raw.
    return ratio_estimates(static_cast<double>(at_zero.twofolds[5]), 0.0,
                           static_cast<double>(at_zero.pulses),
                           static_cast<double>(at_far.twofolds[5]), 0.0,
                           static_cast<double>(at_far.pulses));
}

}  // namespace homsim
