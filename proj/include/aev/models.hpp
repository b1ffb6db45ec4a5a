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

// Benchmark Hamiltonians and observables.
//
// The Ising sweep goes from a transverse field H0 = sum_j X_j to the chain
//   HT = hz sum_j Z_j - J sum_j Z_j Z_{j+1}
// with open boundaries (periodic optional). Z|0> = +|0>, qubit 1 is the
// leftmost tensor factor.
#pragma once

#include <bit>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "aev/linalg.hpp"
#include "aev/pauli_text.hpp"

namespace aev {

struct ModelSpec {
    enum class Kind { IsingLz, Custom };

    Kind kind = Kind::IsingLz;
    int n = 5;
    double hz = 0.2;
    double coupling = 1.0;
    bool periodic = false;
    /// Custom models: Pauli sums in text form (see pauli_text.hpp).
    std::string custom_h0;
    std::string custom_ht;

    void validate() const {
        if (n < 1) {
            throw InvalidArgument("model: n must be >= 1");
        }
        if (n > max_qubits()) {
            throw SizeError("model: n = " + std::to_string(n) + " exceeds the qubit cap " +
                            std::to_string(max_qubits()) + " (AEV_MAX_QUBITS)");
        }
        if (kind == Kind::IsingLz) {
            if (n < 2) {
                throw InvalidArgument("model: the Ising chain needs n >= 2");
            }
            if (periodic && n < 3) {
                throw InvalidArgument("model: a periodic chain needs n >= 3");
            }
            if (!std::isfinite(hz) || !std::isfinite(coupling)) {
                throw InvalidArgument("model: fields must be finite");
            }
        } else if (custom_h0.empty() || custom_ht.empty()) {
            throw InvalidArgument("model: custom models need both h0 and ht term lists");
        }
    }
};

inline std::string to_string(ModelSpec::Kind k) {
    return k == ModelSpec::Kind::IsingLz ? "ising-lz" : "custom";
}

inline ModelSpec::Kind model_kind_from_string(const std::string &s) {
    if (s == "ising-lz") {
        return ModelSpec::Kind::IsingLz;
    }
    if (s == "custom") {
        return ModelSpec::Kind::Custom;
    }
    throw InvalidArgument("unknown model '" + s + "' (expected ising-lz|custom)");
}

namespace detail {

inline std::string single_site(char pauli, int site, int n) {
    std::string label(static_cast<std::size_t>(n), 'I');
    label[static_cast<std::size_t>(site)] = pauli;
    return label;
}

inline std::string two_site(char pauli, int a, int b, int n) {
    std::string label(static_cast<std::size_t>(n), 'I');
    label[static_cast<std::size_t>(a)] = pauli;
    label[static_cast<std::size_t>(b)] = pauli;
    return label;
}

} // namespace detail

/// (H0, HT) for the model.
inline std::pair<PauliOperator, PauliOperator> ising_pair(const ModelSpec &spec) {
    spec.validate();
    const int n = spec.n;
    if (spec.kind == ModelSpec::Kind::Custom) {
        return {PauliOperator(n, parse_pauli_sum(spec.custom_h0, n)),
                PauliOperator(n, parse_pauli_sum(spec.custom_ht, n))};
    }
    std::vector<PauliTerm> h0;
    std::vector<PauliTerm> ht;
    for (int j = 0; j < n; ++j) {
        h0.push_back(PauliTerm::from_label(1.0, detail::single_site('X', j, n)));
        ht.push_back(PauliTerm::from_label(spec.hz, detail::single_site('Z', j, n)));
    }
    const int bonds = spec.periodic ? n : n - 1;
    for (int j = 0; j < bonds; ++j) {
        ht.push_back(PauliTerm::from_label(-spec.coupling, detail::two_site('Z', j, (j + 1) % n, n)));
    }
    return {PauliOperator(n, std::move(h0)), PauliOperator(n, std::move(ht))};
}

/// |->^n: amplitude (-1)^popcount(b) / sqrt(2^n), the ground state of sum X_j.
inline PureState transverse_ground_state(int n) {
    if (n < 1 || n > max_qubits()) {
        throw SizeError("transverse_ground_state: n outside 1.." + std::to_string(max_qubits()));
    }
    const Eigen::Index dim = Eigen::Index{1} << n;
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
    Vector v(dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        v(b) = (std::popcount(static_cast<unsigned long long>(b)) % 2 == 0) ? amp : -amp;
    }
    return PureState(std::move(v));
}

/// Initial sweep state: analytic for the Ising model, numerical otherwise.
inline PureState initial_state(const ModelSpec &spec, const PauliOperator &h0) {
    if (spec.kind == ModelSpec::Kind::IsingLz) {
        return transverse_ground_state(spec.n);
    }
    const Spectrum s = eigendecompose(h0.matrix());
    if (!s.ground_nondegenerate()) {
        throw DegenerateSpectrum("custom model: H0 ground level is degenerate");
    }
    return PureState::normalized(s.eigenvector(0));
}

/// 1 - 2 |E_0><E_0|.
inline Matrix reflection_observable(const Spectrum &spectrum) {
    if (!spectrum.ground_nondegenerate()) {
        throw DegenerateSpectrum("reflection_observable: degenerate ground level");
    }
    const Vector e0 = spectrum.vectors.col(0);
    return Matrix::Identity(spectrum.dim(), spectrum.dim()) - 2.0 * e0 * e0.adjoint();
}

/// sum_j Z_j.
inline PauliOperator magnetization(int n) {
    if (n < 1) {
        throw InvalidArgument("magnetization: n must be >= 1");
    }
    std::vector<PauliTerm> terms;
    for (int j = 0; j < n; ++j) {
        terms.push_back(PauliTerm::from_label(1.0, detail::single_site('Z', j, n)));
    }
    return {n, std::move(terms)};
}

} // namespace aev
