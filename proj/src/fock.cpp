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

#include "homsim/fock.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

namespace homsim {

namespace {

constexpr int kMaxFactorial = 170;

const std::array<double, kMaxFactorial + 1>& factorial_table() {
    static const auto table = [] {
        std::array<double, kMaxFactorial + 1> t{};
        t[0] = 1.0;
        for (int i = 1; i <= kMaxFactorial; ++i) {
            t[i] = t[i - 1] * i;
        }
        return t;
    }();
    return table;
}

// i^p for integer p >= 0.
Complex i_power(int p) {
    switch (p & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

double binomial(int n, int k) {
    return factorial(n) / (factorial(k) * factorial(n - k));
}

std::string occ_to_string(const FockOccupation& occ) {
    std::ostringstream out;
    out << "|";
    for (std::size_t i = 0; i < occ.n.size(); ++i) {
        if (i > 0) {
            out << ",";
        }
        out << occ.n[i];
    }
    out << ">";
    return out.str();
}

}  // namespace

double factorial(int n) {
    require(n >= 0 && n <= kMaxFactorial, ErrorCode::invalid_argument,
            "factorial argument out of range");
    return factorial_table()[n];
}

int FockOccupation::total() const {
    return std::accumulate(n.begin(), n.end(), 0);
}

BeamSplitter::BeamSplitter(double t_in, double r_in) : t(t_in), r(r_in) {
    require(t >= 0.0 && r >= 0.0, ErrorCode::invalid_argument,
            "beamsplitter amplitudes must be non-negative");
    require(std::abs(t * t + r * r - 1.0) <= 1e-12, ErrorCode::invalid_argument,
            "beamsplitter amplitudes must satisfy t^2 + r^2 = 1");
}

BeamSplitter BeamSplitter::balanced() {
    const double s = 1.0 / std::sqrt(2.0);
    return BeamSplitter(s, s);
}

BeamSplitter BeamSplitter::from_ratio(double t_in, double r_in) {
    require(t_in >= 0.0 && r_in >= 0.0 && t_in + r_in > 0.0, ErrorCode::invalid_argument,
            "beamsplitter ratio must be non-negative and nonzero");
    const double scale = std::sqrt(t_in * t_in + r_in * r_in);
    return BeamSplitter(t_in / scale, r_in / scale);
}

PureState::PureState(int mode_count, int n_max) : mode_count_(mode_count), n_max_(n_max) {
    require(mode_count >= 1, ErrorCode::invalid_argument, "state needs at least one mode");
    require(n_max >= 0, ErrorCode::invalid_argument, "photon bound must be non-negative");
}

PureState PureState::fock(const FockOccupation& occ, int n_max) {
    PureState s(occ.modes(), n_max);
    s.add(occ, Complex(1.0, 0.0));
    return s;
}

PureState PureState::vacuum(int mode_count, int n_max) {
    return fock(FockOccupation(std::vector<int>(mode_count, 0)), n_max);
}

void PureState::add(const FockOccupation& occ, Complex amp) {
    require(occ.modes() == mode_count_, ErrorCode::invalid_argument,
            "occupation length does not match state mode count");
    for (int k : occ.n) {
        require(k >= 0, ErrorCode::invalid_argument, "negative photon number in " + occ_to_string(occ));
    }
    require(occ.total() <= n_max_, ErrorCode::truncation_overflow,
            "ket " + occ_to_string(occ) + " exceeds the photon bound " + std::to_string(n_max_));
    terms_[occ] += amp;
}

Complex PureState::amplitude(const FockOccupation& occ) const {
    auto it = terms_.find(occ);
    return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

double PureState::norm_squared() const {
    double s = 0.0;
    for (const auto& [occ, amp] : terms_) {
        s += std::norm(amp);
    }
    return s;
}

double PureState::norm() const {
    return std::sqrt(norm_squared());
}

bool PureState::is_normalized(double tol) const {
    return std::abs(norm() - 1.0) <= tol;
}

PureState PureState::normalized() const {
    const double n = norm();
    require(n > 0.0, ErrorCode::invalid_argument, "cannot normalize the zero state");
    PureState out(mode_count_, n_max_);
    for (const auto& [occ, amp] : terms_) {
        out.terms_[occ] = amp / n;
    }
    return out;
}

PureState tensor(const PureState& a, const PureState& b) {
    const int n_max = std::max(a.n_max(), b.n_max());
    PureState out(a.mode_count() + b.mode_count(), n_max);
    for (const auto& [occ_a, amp_a] : a.terms()) {
        for (const auto& [occ_b, amp_b] : b.terms()) {
            FockOccupation occ;
            occ.n.reserve(occ_a.n.size() + occ_b.n.size());
            occ.n.insert(occ.n.end(), occ_a.n.begin(), occ_a.n.end());
            occ.n.insert(occ.n.end(), occ_b.n.begin(), occ_b.n.end());
            out.add(occ, amp_a * amp_b);
        }
    }
    return out;
}

PureState apply_beamsplitter(const PureState& state, int mode_a, int mode_b,
                             const BeamSplitter& bs) {
    require(mode_a >= 0 && mode_a < state.mode_count() && mode_b >= 0 &&
                mode_b < state.mode_count(),
            ErrorCode::invalid_argument, "beamsplitter mode index out of range");
    require(mode_a != mode_b, ErrorCode::invalid_argument,
            "beamsplitter mode indices must be distinct");

    PureState out(state.mode_count(), state.n_max());
    for (const auto& [occ, amp] : state.terms()) {
        const int n = occ.n[mode_a];
        const int m = occ.n[mode_b];
        const double in_norm = std::sqrt(factorial(n) * factorial(m));
        for (int j = 0; j <= n; ++j) {
            for (int k = 0; k <= m; ++k) {
                const int out_a = j + k;
                const int out_b = n + m - j - k;
                const int reflections = n - j + k;
                const double mag = binomial(n, j) * binomial(m, k) *
                                   std::pow(bs.t, j + m - k) * std::pow(bs.r, reflections) *
                                   std::sqrt(factorial(out_a) * factorial(out_b)) / in_norm;
                if (mag == 0.0) {
                    continue;
                }
                FockOccupation occ_out = occ;
                occ_out.n[mode_a] = out_a;
                occ_out.n[mode_b] = out_b;
                out.add(occ_out, amp * mag * i_power(reflections));
            }
        }
    }
    return out;
}

double projection_probability(const PureState& state,
                              const std::function<bool(const FockOccupation&)>& pattern) {
    require(state.is_normalized(), ErrorCode::not_normalized,
            "projection probability requires a normalized state");
    double p = 0.0;
    for (const auto& [occ, amp] : state.terms()) {
        if (pattern(occ)) {
            p += std::norm(amp);
        }
    }
    return p;
}

}  // namespace homsim
