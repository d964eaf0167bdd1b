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

#include "homsim/spectral.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace homsim {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2 = 0.6931471805599453;

void require_bandwidths(double sigma, double sigma_p) {
    require(sigma > 0.0, ErrorCode::invalid_argument, "filter bandwidth must be positive");
    require(sigma_p > 0.0, ErrorCode::invalid_argument, "pump bandwidth must be positive");
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

// Interference-term integrals of the two-source fourfold amplitude, in pump
// units (sigma_p = 1, rho = sigma/sigma_p, delay scaled by sigma_p).
//
// Joint spectral amplitude after eliminating the energy-conservation delta
// against the pump-pump convolution:
//   psi(x, y) = exp(-(x + y)^2 / 2 - (x^2 + y^2) / rho^2)
// with x, y the signal/idler detunings.  The heralded-signal coherence kernel
// is  phi(x, x') = int psi(x, y) psi(x', y) dy,  and
//   numerator(dt) = int phi(x, x')^2 cos((x - x') dt) dx dx'
//   denominator   = [int psi(x, y)^2 dx dy]^2
// whose ratio at dt = 0 is the visibility.
struct OverlapIntegrals {
    double ratio;  // numerator(dt) / denominator
};

OverlapIntegrals overlap_ratio(double rho, double dt_scaled, int n) {
    const double limit = 5.0 * (1.0 + rho);
    std::vector<double> x;
    std::vector<double> w;
    gauss_legendre(n, x, w);
    for (int i = 0; i < n; ++i) {
        x[i] *= limit;
        w[i] *= limit;
    }

    const double inv_rho2 = 1.0 / (rho * rho);
    auto psi = [&](double a, double b) {
        const double s = a + b;
        return std::exp(-0.5 * s * s - (a * a + b * b) * inv_rho2);
    };

    double denom = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double p = psi(x[i], x[j]);
            denom += w[i] * w[j] * p * p;
        }
    }

    // phi on the tensor grid; the y integral reuses the same nodes.
    std::vector<double> phi(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) {
                acc += w[k] * psi(x[i], x[k]) * psi(x[j], x[k]);
            }
            phi[static_cast<std::size_t>(i) * n + j] = acc;
            phi[static_cast<std::size_t>(j) * n + i] = acc;
        }
    }

    double numer = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double f = phi[static_cast<std::size_t>(i) * n + j];
            numer += w[i] * w[j] * f * f * std::cos((x[i] - x[j]) * dt_scaled);
        }
    }
    return {numer / (denom * denom)};
}

QuadratureResult refine_overlap(double sigma, double sigma_p, double dt, double abs_tol) {
    require_bandwidths(sigma, sigma_p);
    require(abs_tol > 0.0, ErrorCode::invalid_argument, "quadrature tolerance must be positive");
    const double rho = sigma / sigma_p;
    const double dt_scaled = dt * sigma_p;
    double prev = overlap_ratio(rho, dt_scaled, 24).ratio;
    double err = 0.0;
    for (int n : {32, 48, 64, 96, 128, 192, 256}) {
        const double cur = overlap_ratio(rho, dt_scaled, n).ratio;
        err = std::abs(cur - prev);
        if (err <= abs_tol) {
            return {cur, err, n};
        }
        prev = cur;
    }
    std::ostringstream msg;
    msg << "quadrature did not reach " << abs_tol << "; achieved error estimate " << err;
    raise(ErrorCode::no_convergence, msg.str());
}

}  // namespace

GaussianFilter::GaussianFilter(double center_in, double sigma_in)
    : center(center_in), sigma(sigma_in) {
    require(center > 0.0, ErrorCode::invalid_argument, "filter center must be positive");
    require(sigma > 0.0, ErrorCode::invalid_argument, "filter sigma must be positive");
}

PumpPulse::PumpPulse(double center_in, double sigma_p_in, double rep_rate_in, double duration_in)
    : center(center_in), sigma_p(sigma_p_in), rep_rate(rep_rate_in), duration(duration_in) {
    require(center > 0.0, ErrorCode::invalid_argument, "pump center must be positive");
    require(sigma_p > 0.0, ErrorCode::invalid_argument, "pump sigma must be positive");
    require(rep_rate > 0.0, ErrorCode::invalid_argument, "repetition rate must be positive");
    if (duration > 0.0) {
        const double fwhm_hz = sigma_p * std::sqrt(2.0 * kLn2) / (2.0 * kPi);
        const double tbp = duration * fwhm_hz;
        require(std::abs(tbp / kGaussianTimeBandwidthProduct - 1.0) <= 0.01,
                ErrorCode::invalid_argument,
                "pump duration and bandwidth are not transform-limited");
    }
}

WavelengthTriple::WavelengthTriple(double lp, double ls, double li)
    : lambda_p(lp), lambda_s(ls), lambda_i(li) {
    require(lp > 0.0 && ls > 0.0 && li > 0.0, ErrorCode::invalid_argument,
            "wavelengths must be positive");
}

double fwm_visibility(double sigma, double sigma_p) {
    require_bandwidths(sigma, sigma_p);
    const double u = (sigma / sigma_p) * (sigma / sigma_p);
    return std::sqrt(1.0 + u) / (1.0 + 0.5 * u);
}

double pdc_visibility(double sigma, double sigma_p) {
    require_bandwidths(sigma, sigma_p);
    const double u = (sigma / sigma_p) * (sigma / sigma_p);
    return std::sqrt(1.0 + 2.0 * u) / (1.0 + u);
}

double dip_gaussian_weight(double delta_t, double sigma, double sigma_p) {
    require_bandwidths(sigma, sigma_p);
    require(!std::isnan(delta_t), ErrorCode::invalid_argument, "delay must not be NaN");
    const double u = (sigma / sigma_p) * (sigma / sigma_p);
    const double arg = delta_t * delta_t * sigma * sigma / (2.0 * (1.0 + 0.5 * u));
    return std::exp(-arg);
}

double dip_fwhm(double sigma, double sigma_p) {
    require_bandwidths(sigma, sigma_p);
    const double u = (sigma / sigma_p) * (sigma / sigma_p);
    return 2.0 * std::sqrt(2.0 * kLn2 * (1.0 + 0.5 * u)) / sigma;
}

double dip_profile(double delta_t, double sigma, double sigma_p, const BeamSplitter& bs,
                   double n_bar) {
    require(n_bar >= 0.0, ErrorCode::invalid_argument, "mean pair number must be non-negative");
    const double v = fwm_visibility(sigma, sigma_p);
    const double g = dip_gaussian_weight(delta_t, sigma, sigma_p);
    const double t2 = bs.t * bs.t;
    const double r2 = bs.r * bs.r;
    return n_bar * n_bar * (r2 * r2 + t2 * t2 - 2.0 * v * r2 * t2 * g);
}

QuadratureResult visibility_by_quadrature(double sigma, double sigma_p, double abs_tol) {
    return refine_overlap(sigma, sigma_p, 0.0, abs_tol);
}

QuadratureResult overlap_envelope_by_quadrature(double sigma, double sigma_p, double delta_t,
                                                double abs_tol) {
    const QuadratureResult at_zero = refine_overlap(sigma, sigma_p, 0.0, abs_tol);
    const QuadratureResult at_dt = refine_overlap(sigma, sigma_p, delta_t, abs_tol);
    return {at_dt.value / at_zero.value,
            (at_dt.error_estimate + at_zero.error_estimate) / at_zero.value, at_dt.nodes};
}

EnergyCheckResult check_energy_conservation(const WavelengthTriple& triple, double rel_tol) {
    require(rel_tol >= 0.0, ErrorCode::invalid_argument, "tolerance must be non-negative");
    const double pump = 2.0 / triple.lambda_p;
    const double mismatch = std::abs(pump - 1.0 / triple.lambda_s - 1.0 / triple.lambda_i) / pump;
    return {mismatch <= rel_tol, mismatch};
}

double wavelength_filter_to_sigma(double center_wavelength, double fwhm_wavelength) {
    require(center_wavelength > 0.0, ErrorCode::invalid_argument,
            "filter center wavelength must be positive");
    require(fwhm_wavelength >= 0.0, ErrorCode::invalid_argument,
            "filter width must be non-negative");
    require(fwhm_wavelength < center_wavelength, ErrorCode::invalid_argument,
            "filter width must be below the center wavelength");
    const double fwhm_hz = kSpeedOfLight * fwhm_wavelength / (center_wavelength * center_wavelength);
    return 2.0 * kPi * fwhm_hz / std::sqrt(2.0 * kLn2);
}

double pump_sigma_from_duration(double duration_fwhm) {
    require(duration_fwhm > 0.0, ErrorCode::invalid_argument, "pulse duration must be positive");
    const double fwhm_hz = kGaussianTimeBandwidthProduct / duration_fwhm;
    return 2.0 * kPi * fwhm_hz / std::sqrt(2.0 * kLn2);
}

double invert_fwm_visibility(double target) {
    require(target > 0.0 && target < 1.0, ErrorCode::invalid_argument,
            "visibility target must lie in (0, 1)");
    double lo = 1e-9;
    double hi = 1.0;
    while (fwm_visibility(hi, 1.0) > target) {
        hi *= 2.0;
        require(hi < 1e12, ErrorCode::no_convergence, "visibility target unreachable");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (fwm_visibility(mid, 1.0) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace homsim
