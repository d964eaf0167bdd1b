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

#include <stdexcept>
#include <string>

namespace homsim {

/// Stable error categories, mirrored one-to-one by the C API status codes.
enum class ErrorCode {
    invalid_argument = 1,
    truncation_overflow = 2,
    not_normalized = 3,
    parse_error = 4,
    no_convergence = 5,
    io_error = 6,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& msg) {
    throw Error(code, msg);
}

inline void require(bool cond, ErrorCode code, const std::string& msg) {
    if (!cond) {
        raise(code, msg);
    }
}

}  // namespace homsim
