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

#include "homsim/dipfit.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace homsim {

namespace {

constexpr int kMaxIterations = 200;
constexpr double kRelativeTolerance = 1e-9;

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<std::array<double, 4>, 4>;

// Solves A x = b in place by Gaussian elimination with partial pivoting.
bool solve4(Mat4 a, Vec4 b, Vec4& x) {
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int row = col + 1; row < 4; ++row) {
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) {
                pivot = row;
            }
        }
        if (std::abs(a[pivot][col]) < 1e-300) {
            return false;
        }
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (int row = col + 1; row < 4; ++row) {
            const double f = a[row][col] / a[col][col];
            for (int k = col; k < 4; ++k) {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    for (int row = 3; row >= 0; --row) {
        double acc = b[row];
        for (int k = row + 1; k < 4; ++k) {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    return true;
}

bool invert4(const Mat4& a, Mat4& inv) {
    for (int col = 0; col < 4; ++col) {
        Vec4 e{};
        e[col] = 1.0;
        Vec4 x{};
        if (!solve4(a, e, x)) {
            return false;
        }
        for (int row = 0; row < 4; ++row) {
            inv[row][col] = x[row];
        }
    }
    return true;
}

struct ModelTerms {
    double value;
    Vec4 gradient;  // d/dB, d/dV, d/dsigma, d/dcenter
};

// params: [0] baseline B, [1] visibility V, [2] width sigma, [3] center dt0
ModelTerms evaluate(const Vec4& p, double coupler_a, double coupler_g, double delay) {
    const double d = delay - p[3];
    const double e = std::exp(-d * d / (2.0 * p[2] * p[2]));
    const double shape = coupler_a - p[1] * coupler_g * e;
    ModelTerms out{};
    out.value = p[0] * shape;
    out.gradient[0] = shape;
    out.gradient[1] = -p[0] * coupler_g * e;
    out.gradient[2] = -p[0] * p[1] * coupler_g * e * d * d / (p[2] * p[2] * p[2]);
    out.gradient[3] = -p[0] * p[1] * coupler_g * e * d / (p[2] * p[2]);
    return out;
}

double chi_squared(const DipData& data, const std::vector<double>& weights, const Vec4& p,
                   double ca, double cg) {
    double chi2 = 0.0;
    for (std::size_t i = 0; i < data.samples.size(); ++i) {
        const double r = evaluate(p, ca, cg, data.samples[i].delay).value - data.samples[i].counts;
        chi2 += weights[i] * r * r;
    }
    return chi2;
}

Vec4 initial_guess(const DipData& data, double ca, double cg) {
    const std::size_t n = data.samples.size();
    const std::size_t edge = std::max<std::size_t>(1, n / 10);

    double outer = 0.0;
    for (std::size_t i = 0; i < edge; ++i) {
        outer += data.samples[i].counts + data.samples[n - 1 - i].counts;
    }
    outer /= static_cast<double>(2 * edge);
    outer = std::max(outer, 1.0);

    std::size_t min_idx = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (data.samples[i].counts < data.samples[min_idx].counts) {
            min_idx = i;
        }
    }
    const double depth = std::max(0.0, 1.0 - data.samples[min_idx].counts / outer);

    Vec4 p{};
    p[0] = outer / ca;
    p[1] = std::clamp(depth * ca / cg, 1e-3, 1.05);
    p[3] = data.samples[min_idx].delay;

    // Half-depth crossing on either side of the minimum.
    const double half_level = data.samples[min_idx].counts + 0.5 * depth * outer;
    double width = 0.0;
    for (std::size_t i = min_idx + 1; i < n; ++i) {
        if (data.samples[i].counts >= half_level) {
            width = data.samples[i].delay - p[3];
            break;
        }
    }
    if (width <= 0.0) {
        for (std::size_t i = min_idx; i-- > 0;) {
            if (data.samples[i].counts >= half_level) {
                width = p[3] - data.samples[i].delay;
                break;
            }
        }
    }
    if (width <= 0.0) {
        width = (data.samples.back().delay - data.samples.front().delay) / 6.0;
    }
    p[2] = width / std::sqrt(2.0 * std::log(2.0));
    return p;
}

}  // namespace

void DipData::validate() const {
    require(samples.size() >= 5, ErrorCode::invalid_argument,
            "dip fit needs at least five samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        require(samples[i].counts >= 0.0, ErrorCode::invalid_argument,
                "counts must be non-negative");
        if (i > 0) {
            require(samples[i].delay > samples[i - 1].delay, ErrorCode::invalid_argument,
                    "delays must be strictly increasing");
        }
    }
}

CouplerSplit::CouplerSplit(double t_in, double r_in) : t(t_in), r(r_in) {
    require(t > 0.0 && r > 0.0, ErrorCode::invalid_argument,
            "coupler coefficients must be positive");
}

double dip_model(const DipFitResult& fit, const CouplerSplit& coupler, double delay) {
    const double t2 = coupler.t * coupler.t;
    const double r2 = coupler.r * coupler.r;
    Vec4 p{fit.baseline, fit.visibility, fit.sigma_dip, fit.center};
    return evaluate(p, t2 * t2 + r2 * r2, 2.0 * r2 * t2, delay).value;
}

DipFitResult fit_dip(const DipData& data, const CouplerSplit& coupler) {
    data.validate();
    const double t2 = coupler.t * coupler.t;
    const double r2 = coupler.r * coupler.r;
    const double ca = t2 * t2 + r2 * r2;
    const double cg = 2.0 * r2 * t2;
    const std::size_t n = data.samples.size();

    std::vector<double> weights(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double err = data.samples[i].error;
        weights[i] = err > 0.0 ? 1.0 / (err * err) : 1.0 / std::max(data.samples[i].counts, 1.0);
    }

    Vec4 p = initial_guess(data, ca, cg);
    // widths below a fraction of the sample spacing are unresolvable and only
    // admit degenerate single-point spikes
    const double sigma_floor = 0.25 * (data.samples.back().delay - data.samples.front().delay) /
                               static_cast<double>(n - 1);
    p[2] = std::max(p[2], sigma_floor);
    double chi2 = chi_squared(data, weights, p, ca, cg);
    double lambda = 1e-3;
    int iter = 0;
    bool converged = false;

    for (; iter < kMaxIterations && !converged; ++iter) {
        Mat4 jtj{};
        Vec4 jtr{};
        for (std::size_t i = 0; i < n; ++i) {
            const ModelTerms m = evaluate(p, ca, cg, data.samples[i].delay);
            const double r = m.value - data.samples[i].counts;
            for (int a = 0; a < 4; ++a) {
                jtr[a] += weights[i] * m.gradient[a] * r;
                for (int b = 0; b < 4; ++b) {
                    jtj[a][b] += weights[i] * m.gradient[a] * m.gradient[b];
                }
            }
        }

        bool stepped = false;
        for (int attempt = 0; attempt < 25 && !stepped; ++attempt) {
            Mat4 damped = jtj;
            for (int a = 0; a < 4; ++a) {
                damped[a][a] += lambda * std::max(jtj[a][a], 1e-300);
            }
            Vec4 delta{};
            Vec4 rhs{-jtr[0], -jtr[1], -jtr[2], -jtr[3]};
            if (!solve4(damped, rhs, delta)) {
                lambda *= 10.0;
                continue;
            }
            Vec4 trial{p[0] + delta[0], p[1] + delta[1], p[2] + delta[2], p[3] + delta[3]};
            if (trial[2] < sigma_floor || trial[0] <= 0.0) {
                lambda *= 10.0;
                continue;
            }
            const double trial_chi2 = chi_squared(data, weights, trial, ca, cg);
            if (trial_chi2 <= chi2 * (1.0 + 1e-14)) {
                double max_rel = 0.0;
                for (int a = 0; a < 4; ++a) {
                    const double scale = std::max(std::abs(p[a]), 1e-30);
                    max_rel = std::max(max_rel, std::abs(delta[a]) / scale);
                }
                const double improvement = chi2 - trial_chi2;
                p = trial;
                chi2 = trial_chi2;
                lambda = std::max(lambda * 0.3, 1e-12);
                stepped = true;
                // stop on parameter stability, or on a chi-square plateau when
                // a parameter is unidentifiable (flat data leaves the width
                // and center unconstrained)
                if (max_rel <= kRelativeTolerance ||
                    improvement <= 1e-12 * std::max(chi2, 1.0)) {
                    converged = true;
                }
            } else {
                lambda *= 10.0;
            }
        }
        if (!stepped) {
            // Damping saturated; the parameters are at a (possibly flat) optimum.
            converged = true;
        }
    }

    require(converged, ErrorCode::no_convergence,
            "dip fit did not converge within " + std::to_string(kMaxIterations) + " iterations");

    Mat4 jtj{};
    for (std::size_t i = 0; i < n; ++i) {
        const ModelTerms m = evaluate(p, ca, cg, data.samples[i].delay);
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                jtj[a][b] += weights[i] * m.gradient[a] * m.gradient[b];
            }
        }
    }
    Mat4 cov{};
    const bool have_cov = invert4(jtj, cov);

    DipFitResult out;
    out.baseline = p[0];
    out.visibility = std::clamp(p[1], 0.0, 1.05);
    out.sigma_dip = p[2];
    out.center = p[3];
    if (have_cov) {
        out.baseline_err = std::sqrt(std::max(0.0, cov[0][0]));
        out.visibility_err = std::sqrt(std::max(0.0, cov[1][1]));
        out.sigma_dip_err = std::sqrt(std::max(0.0, cov[2][2]));
        out.center_err = std::sqrt(std::max(0.0, cov[3][3]));
    }
    out.residual_norm = std::sqrt(chi2);
    out.iterations = iter;
    out.converged = converged;
    return out;
}

double coupler_corrected_visibility(double observed_depth, const CouplerSplit& coupler) {
    require(observed_depth >= 0.0 && observed_depth <= 1.0, ErrorCode::invalid_argument,
            "observed depth must lie in [0, 1]");
    const double t2 = coupler.t * coupler.t;
    const double r2 = coupler.r * coupler.r;
    const double v = observed_depth * (r2 * r2 + t2 * t2) / (2.0 * r2 * t2);
    require(v <= 1.05, ErrorCode::invalid_argument,
            "corrected visibility above 1.05; depth inconsistent with the coupler");
    return v;
}

}  // namespace homsim
