// Copyright 2026 The aev-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace aev {

/// Invalid arguments or malformed input (bad Pauli string, out-of-range
/// parameter, mismatched dimensions).
class InvalidArgument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Operator or register too large for the configured qubit cap.
class SizeError : public InvalidArgument {
  public:
    using InvalidArgument::InvalidArgument;
};

class DimensionMismatch : public InvalidArgument {
  public:
    using InvalidArgument::InvalidArgument;
};

/// A spectrum has a degenerate level where a non-degenerate one is required.
class DegenerateSpectrum : public InvalidArgument {
  public:
    using InvalidArgument::InvalidArgument;
};

/// Numerical breakdown: non-finite integrator output, quadrature that does not
/// converge, vanishing estimator denominator, violated numerical invariants.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace aev
