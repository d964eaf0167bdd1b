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

#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "homsim/fock.hpp"
#include "homsim/rng.hpp"

namespace homsim_test {

// All occupations of `modes` modes with total photon number <= max_total.
inline void enumerate_occupations(int modes, int max_total, std::vector<int>& current,
                                  std::vector<std::vector<int>>& out) {
    if (static_cast<int>(current.size()) == modes) {
        out.push_back(current);
        return;
    }
    int used = 0;
    for (int v : current) {
        used += v;
    }
    for (int k = 0; k + used <= max_total; ++k) {
        current.push_back(k);
        enumerate_occupations(modes, max_total, current, out);
        current.pop_back();
    }
}

inline std::vector<std::vector<int>> all_occupations(int modes, int max_total) {
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    enumerate_occupations(modes, max_total, current, out);
    return out;
}

// Random normalized state over occupations with total <= fill_total (defaults
// to the full truncated basis).
inline homsim::PureState random_state(homsim::Rng& rng, int modes, int n_max,
                                      int fill_total = -1) {
    homsim::PureState s(modes, n_max);
    for (const auto& occ : all_occupations(modes, fill_total < 0 ? n_max : fill_total)) {
        s.add(homsim::FockOccupation(occ),
              homsim::Complex(rng.uniform() - 0.5, rng.uniform() - 0.5));
    }
    return s.normalized();
}

// Random normalized state whose kets all carry exactly `total` photons.
inline homsim::PureState random_state_fixed_total(homsim::Rng& rng, int modes, int total) {
    homsim::PureState s(modes, total);
    for (const auto& occ : all_occupations(modes, total)) {
        int sum = 0;
        for (int v : occ) {
            sum += v;
        }
        if (sum == total) {
            s.add(homsim::FockOccupation(occ),
                  homsim::Complex(rng.uniform() - 0.5, rng.uniform() - 0.5));
        }
    }
    return s.normalized();
}

// Independent beamsplitter oracle: brute-force operator expansion of
//   (t a3' + i r a4')^n (i r a3' + t a4')^m |0,0> / sqrt(n! m!)
// as a polynomial in the two creation operators.
using OperatorPoly = std::map<std::pair<int, int>, homsim::Complex>;

inline OperatorPoly poly_mul(const OperatorPoly& p, const OperatorPoly& q) {
    OperatorPoly out;
    for (const auto& [pa, ca] : p) {
        for (const auto& [pb, cb] : q) {
            out[{pa.first + pb.first, pa.second + pb.second}] += ca * cb;
        }
    }
    return out;
}

inline OperatorPoly bs_oracle(int n, int m, double t, double r) {
    OperatorPoly acc{{{0, 0}, {1.0, 0.0}}};
    const OperatorPoly mode_a{{{1, 0}, {t, 0.0}}, {{0, 1}, {0.0, r}}};
    const OperatorPoly mode_b{{{1, 0}, {0.0, r}}, {{0, 1}, {t, 0.0}}};
    for (int i = 0; i < n; ++i) {
        acc = poly_mul(acc, mode_a);
    }
    for (int i = 0; i < m; ++i) {
        acc = poly_mul(acc, mode_b);
    }
    OperatorPoly amplitudes;
    for (const auto& [pq, c] : acc) {
        amplitudes[pq] = c * std::sqrt(homsim::factorial(pq.first) * homsim::factorial(pq.second) /
                                       (homsim::factorial(n) * homsim::factorial(m)));
    }
    return amplitudes;
}

// Regularized lower incomplete gamma P(a, x); series + continued fraction.
inline double gamma_p(double a, double x) {
    if (x <= 0.0) {
        return 0.0;
    }
    const double log_prefactor = a * std::log(x) - x - std::lgamma(a);
    if (x < a + 1.0) {
        double term = 1.0 / a;
        double sum = term;
        for (int k = 1; k < 500; ++k) {
            term *= x / (a + k);
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-15) {
                break;
            }
        }
        return sum * std::exp(log_prefactor);
    }
    // Lentz continued fraction for Q(a, x).
    double b = x + 1.0 - a;
    double c = 1e300;
    double d = 1.0 / b;
    double h = d;
    for (int k = 1; k < 500; ++k) {
        const double an = -k * (k - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) {
            d = 1e-300;
        }
        c = b + an / c;
        if (std::abs(c) < 1e-300) {
            c = 1e-300;
        }
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) {
            break;
        }
    }
    return 1.0 - std::exp(log_prefactor) * h;
}

inline double chi_square_cdf(double x, int dof) {
    return gamma_p(dof / 2.0, x / 2.0);
}

// Pearson statistic of observed counts against expected probabilities; bins
// with tiny expectation are pooled into the last bin by the caller.
inline double chi_square_statistic(const std::vector<double>& observed,
                                   const std::vector<double>& expected) {
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double diff = observed[i] - expected[i];
        stat += diff * diff / expected[i];
    }
    return stat;
}

}  // namespace homsim_test
