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

#include <complex>
#include <functional>
#include <map>
#include <vector>

#include "homsim/error.hpp"

namespace homsim {

using Complex = std::complex<double>;

/// Photon number per mode of a multimode Fock basis ket.
struct FockOccupation {
    std::vector<int> n;

    FockOccupation() = default;
    FockOccupation(std::initializer_list<int> init) : n(init) {}
    explicit FockOccupation(std::vector<int> occ) : n(std::move(occ)) {}

    int total() const;
    int modes() const { return static_cast<int>(n.size()); }

    bool operator==(const FockOccupation& other) const { return n == other.n; }
    bool operator<(const FockOccupation& other) const { return n < other.n; }
};

/// Lossless two-port splitter with real amplitude transmission t and
/// reflection r; every reflection carries a phase factor i, so the mode map is
///   in1 -> t out1 + i r out2,   in2 -> i r out1 + t out2.
struct BeamSplitter {
    double t;
    double r;

    BeamSplitter(double t_in, double r_in);

    /// 50:50 splitter, t = r = 1/sqrt(2).
    static BeamSplitter balanced();
    /// Rescales (t, r) onto the unit circle, keeping their ratio.
    static BeamSplitter from_ratio(double t_in, double r_in);
};

/// Sparse superposition of multimode Fock kets with complex amplitudes.
///
/// Every occupation stored has exactly mode_count() entries and total photon
/// number at most n_max(); attempts to exceed the bound raise
/// ErrorCode::truncation_overflow rather than dropping terms.
class PureState {
  public:
    static constexpr int kDefaultMaxPhotons = 4;

    explicit PureState(int mode_count, int n_max = kDefaultMaxPhotons);

    /// Single basis ket |occ> with unit amplitude.
    static PureState fock(const FockOccupation& occ, int n_max = kDefaultMaxPhotons);
    static PureState vacuum(int mode_count, int n_max = kDefaultMaxPhotons);

    int mode_count() const { return mode_count_; }
    int n_max() const { return n_max_; }

    /// Accumulates amp onto the |occ> coefficient.
    void add(const FockOccupation& occ, Complex amp);
    Complex amplitude(const FockOccupation& occ) const;

    double norm_squared() const;
    double norm() const;
    bool is_normalized(double tol = 1e-9) const;
    PureState normalized() const;

    const std::map<FockOccupation, Complex>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

  private:
    int mode_count_;
    int n_max_;
    std::map<FockOccupation, Complex> terms_;
};

/// Kronecker product; output modes are a's modes followed by b's.
PureState tensor(const PureState& a, const PureState& b);

/// Applies the splitter to the (mode_a, mode_b) pair of every ket, expanding
/// |n>|m> -> (t a1' + i r a2')^n (i r a1' + t a2')^m |0>|0> / sqrt(n! m!)
/// by binomial summation.  Exact up to double rounding; norm preserving.
PureState apply_beamsplitter(const PureState& state, int mode_a, int mode_b,
                             const BeamSplitter& bs);

/// Total probability of the kets matching the predicate.  The state must be
/// normalized (within 1e-9) or ErrorCode::not_normalized is raised.
double projection_probability(const PureState& state,
                              const std::function<bool(const FockOccupation&)>& pattern);

/// n! as a double, n in [0, 170].
double factorial(int n);

}  // namespace homsim
