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

#include "homsim/error.hpp"
#include "homsim/fock.hpp"

namespace homsim {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// Transform-limited Gaussian time-bandwidth product (intensity FWHM times
/// intensity FWHM bandwidth in Hz), 2 ln2 / pi.
inline constexpr double kGaussianTimeBandwidthProduct = 0.4412712003053032;

/// Gaussian bandpass filter with amplitude profile exp(-(w - center)^2 / sigma^2).
///
/// sigma is the amplitude-Gaussian parameter of that expression, not an
/// intensity width; nm-FWHM specifications convert via
/// wavelength_filter_to_sigma().
struct GaussianFilter {
    double center;  // rad/s
    double sigma;   // rad/s

    GaussianFilter(double center_in, double sigma_in);
};

/// Pulsed pump with Gaussian amplitude spectrum exp(-(w - center)^2 / sigma_p^2).
/// duration (intensity FWHM, seconds) is optional; when nonzero it must be
/// transform-limited against sigma_p within 1%.
struct PumpPulse {
    double center;    // rad/s
    double sigma_p;   // rad/s
    double rep_rate;  // pulses/s
    double duration;  // s, 0 = unspecified

    PumpPulse(double center_in, double sigma_p_in, double rep_rate_in, double duration_in = 0.0);
};

struct WavelengthTriple {
    double lambda_p;  // m
    double lambda_s;  // m
    double lambda_i;  // m

    WavelengthTriple(double lp, double ls, double li);
};

struct EnergyCheckResult {
    bool passed;
    double relative_mismatch;
};

struct QuadratureResult {
    double value;
    double error_estimate;
    int nodes;  // points per axis at the accepted refinement level
};

/// Maximum two-source interference visibility for a pair source pumped by two
/// photons per conversion:  sqrt(1 + s^2) / (1 + s^2/2)  with s = sigma/sigma_p.
double fwm_visibility(double sigma, double sigma_p);

/// Single-pump-photon (parametric down-conversion) counterpart:
/// sqrt(1 + 2 s^2) / (1 + s^2).
double pdc_visibility(double sigma, double sigma_p);

/// Gaussian overlap factor exp(-dt^2 sigma^2 / (2 (1 + sigma^2/(2 sigma_p^2)))).
double dip_gaussian_weight(double delta_t, double sigma, double sigma_p);

/// Full width at half depth of the dip_profile() Gaussian, in seconds.
double dip_fwhm(double sigma, double sigma_p);

/// Relative fourfold probability versus delay:
///   n_bar^2 (r^4 + t^4 - 2 V r^2 t^2 g(dt))
/// with V = fwm_visibility and g = dip_gaussian_weight.  The overall
/// normalization factor is fixed to 1 and reported separately by callers.
double dip_profile(double delta_t, double sigma, double sigma_p, const BeamSplitter& bs,
                   double n_bar);

/// Independent evaluation of the visibility by numerical integration of the
/// Gaussian joint spectral amplitude (pump-convolution energy constraint
/// eliminated analytically), refined until the requested absolute error.
QuadratureResult visibility_by_quadrature(double sigma, double sigma_p, double abs_tol = 1e-6);

/// Interference-term envelope N(dt)/N(0) from the same integrals; equals 1 at
/// zero delay and decays with |dt|.
QuadratureResult overlap_envelope_by_quadrature(double sigma, double sigma_p, double delta_t,
                                                double abs_tol = 1e-6);

/// Relative mismatch of 2/lambda_p - 1/lambda_s - 1/lambda_i against 2/lambda_p.
EnergyCheckResult check_energy_conservation(const WavelengthTriple& triple, double rel_tol);

/// Converts an intensity-FWHM bandpass specification (center, FWHM, both in
/// meters) to the amplitude-Gaussian sigma in rad/s:
///   dnu = c dlambda / lambda^2,  sigma = 2 pi dnu / sqrt(2 ln 2).
double wavelength_filter_to_sigma(double center_wavelength, double fwhm_wavelength);

/// Amplitude-Gaussian sigma_p (rad/s) of a transform-limited pulse with the
/// given intensity-FWHM duration in seconds.
double pump_sigma_from_duration(double duration_fwhm);

/// Solves fwm_visibility(s, 1) = target for the bandwidth ratio s by bisection.
double invert_fwm_visibility(double target);

inline double wavelength_to_angular_frequency(double lambda) {
    require(lambda > 0.0, ErrorCode::invalid_argument, "wavelength must be positive");
    return 2.0 * 3.14159265358979323846 * kSpeedOfLight / lambda;
}

}  // namespace homsim
