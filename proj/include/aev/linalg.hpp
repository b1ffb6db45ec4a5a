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

/**
 * @file linalg.hpp
 * Dense complex linear algebra used by every other part of the simulator:
 * Pauli-string operators, pure and mixed states, Hermitian spectra and
 * expectation values.
 *
 * Conventions (fixed throughout the project):
 *   - qubit 0 is the leftmost label of a Pauli string and the most significant
 *     bit of a computational-basis index;
 *   - Z|0> = +|0>;
 *   - hbar = 1, all energies and times are dimensionless.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "aev/error.hpp"

namespace aev {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Dense operator on the register; plain Eigen matrix, dimension checked at
/// use sites.
using DenseOperator = Matrix;

inline constexpr int kDefaultMaxQubits = 12;

/// Qubit cap: `AEV_MAX_QUBITS` when set to a positive integer, else 12.
inline int max_qubits() {
    if (const char *env = std::getenv("AEV_MAX_QUBITS")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v < 31) {
            return static_cast<int>(v);
        }
    }
    return kDefaultMaxQubits;
}

inline bool is_power_of_two(Eigen::Index d) { return d > 0 && (d & (d - 1)) == 0; }

inline double max_abs(const Matrix &a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline double hermiticity_defect(const Matrix &a) { return max_abs(a - a.adjoint()); }

inline bool is_hermitian(const Matrix &a, double tol = 1e-10) {
    return a.rows() == a.cols() && hermiticity_defect(a) <= tol * std::max(1.0, max_abs(a));
}

inline bool is_unitary(const Matrix &a, double tol = 1e-9) {
    if (a.rows() != a.cols()) {
        return false;
    }
    return max_abs(a.adjoint() * a - Matrix::Identity(a.rows(), a.cols())) <= tol;
}

/// Spectral norm of a Hermitian operator (largest |eigenvalue|).
inline double operator_norm(const Matrix &hermitian) {
    if (hermitian.size() == 0) {
        return 0.0;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

inline void require_same_dim(const Matrix &a, const Matrix &b, const char *what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                                std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ")");
    }
}

// ---------------------------------------------------------------------------
// Pauli operators
// ---------------------------------------------------------------------------

enum class Pauli : std::uint8_t { I, X, Y, Z };

inline char pauli_label(Pauli p) {
    switch (p) {
    case Pauli::I:
        return 'I';
    case Pauli::X:
        return 'X';
    case Pauli::Y:
        return 'Y';
    case Pauli::Z:
        return 'Z';
    }
    return '?';
}

inline Pauli pauli_from_label(char c) {
    switch (c) {
    case 'I':
        return Pauli::I;
    case 'X':
        return Pauli::X;
    case 'Y':
        return Pauli::Y;
    case 'Z':
        return Pauli::Z;
    default:
        throw InvalidArgument(std::string("unknown Pauli label '") + c + "'");
    }
}

inline Matrix pauli_matrix(Pauli p) {
    Matrix m(2, 2);
    switch (p) {
    case Pauli::I:
        m << 1, 0, 0, 1;
        break;
    case Pauli::X:
        m << 0, 1, 1, 0;
        break;
    case Pauli::Y:
        m << 0, Complex(0, -1), Complex(0, 1), 0;
        break;
    case Pauli::Z:
        m << 1, 0, 0, -1;
        break;
    }
    return m;
}

struct PauliTerm {
    double coefficient = 0.0;
    std::vector<Pauli> string; ///< string[q] acts on qubit q (q = 0 is leftmost / MSB)

    /// Builds a term from a label such as "XZI".
    static PauliTerm from_label(double coefficient, const std::string &label) {
        PauliTerm t;
        t.coefficient = coefficient;
        t.string.reserve(label.size());
        for (char c : label) {
            t.string.push_back(pauli_from_label(c));
        }
        return t;
    }

    [[nodiscard]] std::string label() const {
        std::string s;
        s.reserve(string.size());
        for (Pauli p : string) {
            s.push_back(pauli_label(p));
        }
        return s;
    }
};

/// Weighted sum of Pauli strings on n qubits. The dense matrix is built at
/// construction, so a PauliOperator is immutable and can be shared freely.
class PauliOperator {
  public:
    PauliOperator() = default;

    PauliOperator(int n, std::vector<PauliTerm> terms) : n_(n), terms_(std::move(terms)) {
        if (n < 1) {
            throw InvalidArgument("PauliOperator: qubit count must be >= 1");
        }
        if (n > max_qubits()) {
            throw SizeError("PauliOperator: " + std::to_string(n) + " qubits exceeds the cap of " +
                            std::to_string(max_qubits()) + " (AEV_MAX_QUBITS)");
        }
        for (const auto &t : terms_) {
            if (static_cast<int>(t.string.size()) != n) {
                throw InvalidArgument("PauliOperator: term '" + t.label() + "' has length " +
                                      std::to_string(t.string.size()) + ", expected " +
                                      std::to_string(n));
            }
            if (!std::isfinite(t.coefficient)) {
                throw InvalidArgument("PauliOperator: non-finite coefficient on '" + t.label() + "'");
            }
        }
        materialize();
    }

    [[nodiscard]] int qubits() const { return n_; }
    [[nodiscard]] Eigen::Index dim() const { return Eigen::Index{1} << n_; }
    [[nodiscard]] const std::vector<PauliTerm> &terms() const { return terms_; }
    [[nodiscard]] const Matrix &matrix() const { return matrix_; }

    /// True when no term contains Y, i.e. the matrix is real symmetric.
    [[nodiscard]] bool is_real() const { return real_; }

    PauliOperator operator+(const PauliOperator &other) const {
        if (other.n_ != n_) {
            throw DimensionMismatch("PauliOperator +: qubit counts differ");
        }
        auto terms = terms_;
        terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
        return PauliOperator(n_, std::move(terms));
    }

    friend PauliOperator operator*(double a, const PauliOperator &op) {
        auto terms = op.terms_;
        for (auto &t : terms) {
            t.coefficient *= a;
        }
        return PauliOperator(op.n_, std::move(terms));
    }

  private:
    void materialize() {
        const Eigen::Index d = dim();
        matrix_ = Matrix::Zero(d, d);
        real_ = true;
        for (const auto &t : terms_) {
            Matrix kron = pauli_matrix(t.string.front());
            for (std::size_t q = 1; q < t.string.size(); ++q) {
                kron = Matrix(Eigen::kroneckerProduct(kron, pauli_matrix(t.string[q])));
            }
            matrix_ += t.coefficient * kron;
            real_ = real_ && std::none_of(t.string.begin(), t.string.end(),
                                          [](Pauli p) { return p == Pauli::Y; });
        }
    }

    int n_ = 0;
    std::vector<PauliTerm> terms_;
    Matrix matrix_;
    bool real_ = true;
};

/// Convenience: builds the operator and returns it (materialization included).
inline PauliOperator build_operator(std::vector<PauliTerm> terms, int n) {
    return PauliOperator(n, std::move(terms));
}

// ---------------------------------------------------------------------------
// States
// ---------------------------------------------------------------------------

class PureState {
  public:
    static constexpr double kNormTolerance = 1e-10;

    PureState() = default;

    explicit PureState(Vector amplitudes) : amp_(std::move(amplitudes)) {
        if (!is_power_of_two(amp_.size())) {
            throw DimensionMismatch("PureState: dimension " + std::to_string(amp_.size()) +
                                    " is not a power of two");
        }
        if (!amp_.allFinite()) {
            throw NumericalError("PureState: non-finite amplitudes");
        }
        const double norm = amp_.norm();
        if (std::abs(norm - 1.0) > kNormTolerance) {
            throw InvalidArgument("PureState: norm " + std::to_string(norm) + " differs from 1");
        }
    }

    /// Normalizes first; for states that are normalized up to round-off.
    static PureState normalized(Vector v) {
        const double norm = v.norm();
        if (!(norm > 0.0) || !std::isfinite(norm)) {
            throw NumericalError("PureState: cannot normalize a zero or non-finite vector");
        }
        return PureState(v / norm);
    }

    static PureState basis(Eigen::Index dim, Eigen::Index index) {
        Vector v = Vector::Zero(dim);
        v(index) = 1.0;
        return PureState(std::move(v));
    }

    [[nodiscard]] Eigen::Index dim() const { return amp_.size(); }
    [[nodiscard]] const Vector &amplitudes() const { return amp_; }

  private:
    Vector amp_;
};

/// Trace-one positive semidefinite Hermitian matrix. Validated on construction.
class DensityMatrix {
  public:
    static constexpr double kHermitianTolerance = 1e-10;
    static constexpr double kTraceTolerance = 1e-10;
    static constexpr double kEigenTolerance = 1e-9;

    DensityMatrix() = default;

    explicit DensityMatrix(Matrix entries) : m_(std::move(entries)) {
        validate_shape();
        if (hermiticity_defect(m_) > kHermitianTolerance) {
            throw InvalidArgument("DensityMatrix: not Hermitian (defect " +
                                  std::to_string(hermiticity_defect(m_)) + ")");
        }
        const Complex tr = m_.trace();
        if (std::abs(tr - 1.0) > kTraceTolerance) {
            throw InvalidArgument("DensityMatrix: trace " + std::to_string(tr.real()) + " != 1");
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -kEigenTolerance) {
            throw InvalidArgument("DensityMatrix: negative eigenvalue " +
                                  std::to_string(es.eigenvalues().minCoeff()));
        }
    }

    static DensityMatrix from_pure(const PureState &psi) {
        DensityMatrix rho;
        rho.m_ = psi.amplitudes() * psi.amplitudes().adjoint();
        return rho;
    }

    static DensityMatrix maximally_mixed(Eigen::Index dim) {
        DensityMatrix rho;
        rho.m_ = Matrix::Identity(dim, dim) / static_cast<double>(dim);
        return rho;
    }

    [[nodiscard]] Eigen::Index dim() const { return m_.rows(); }
    [[nodiscard]] const Matrix &matrix() const { return m_; }
    [[nodiscard]] double purity() const { return (m_ * m_).trace().real(); }

  private:
    void validate_shape() const {
        if (m_.rows() != m_.cols() || !is_power_of_two(m_.rows())) {
            throw DimensionMismatch("DensityMatrix: must be square with power-of-two dimension");
        }
        if (!m_.allFinite()) {
            throw NumericalError("DensityMatrix: non-finite entries");
        }
    }

    Matrix m_;
};

// ---------------------------------------------------------------------------
// Spectra
// ---------------------------------------------------------------------------

/// Ascending eigenvalues and orthonormal eigenvectors (columns) of a Hermitian
/// operator, with eigenvalues grouped into degenerate blocks.
struct Spectrum {
    RealVector energies;
    Matrix vectors;
    double degeneracy_tol = 0.0;
    /// (first index, size) of each group of degenerate eigenvalues, ascending.
    std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks;
    /// block_of[j] = index into `blocks` containing eigenvalue j.
    std::vector<Eigen::Index> block_of;

    [[nodiscard]] Eigen::Index dim() const { return energies.size(); }
    [[nodiscard]] double ground_energy() const { return energies(0); }

    /// E_1 - E_0 (zero for a degenerate ground level, +inf for dim 1).
    [[nodiscard]] double ground_gap() const {
        return dim() > 1 ? energies(1) - energies(0) : std::numeric_limits<double>::infinity();
    }

    /// Gap between the ground level and the next distinct level.
    [[nodiscard]] double ground_block_gap() const {
        return blocks.size() > 1 ? energies(blocks[1].first) - energies(0)
                                 : std::numeric_limits<double>::infinity();
    }

    [[nodiscard]] bool ground_nondegenerate() const { return blocks.front().second == 1; }
    [[nodiscard]] bool nondegenerate() const {
        return blocks.size() == static_cast<std::size_t>(dim());
    }
    [[nodiscard]] bool same_block(Eigen::Index j, Eigen::Index k) const {
        return block_of[static_cast<std::size_t>(j)] == block_of[static_cast<std::size_t>(k)];
    }

    [[nodiscard]] Vector eigenvector(Eigen::Index j) const { return vectors.col(j); }

    [[nodiscard]] Matrix to_eigenbasis(const Matrix &a) const { return vectors.adjoint() * a * vectors; }
    [[nodiscard]] Matrix from_eigenbasis(const Matrix &a) const { return vectors * a * vectors.adjoint(); }

    [[nodiscard]] Matrix reconstruct() const {
        return vectors * energies.cast<Complex>().asDiagonal() * vectors.adjoint();
    }
};

/// Default grouping tolerance: 1e-9 times the spectral norm.
inline double default_degeneracy_tol(const RealVector &energies) {
    return 1e-9 * energies.cwiseAbs().maxCoeff();
}

/// Hermitian eigendecomposition with degenerate-level grouping. A negative
/// `degeneracy_tol` selects the default 1e-9 * ||op||.
inline Spectrum eigendecompose(const Matrix &op, double degeneracy_tol = -1.0) {
    if (op.rows() != op.cols() || op.rows() == 0) {
        throw DimensionMismatch("eigendecompose: operator must be square and non-empty");
    }
    if (!is_hermitian(op)) {
        throw InvalidArgument("eigendecompose: operator is not Hermitian (defect " +
                              std::to_string(hermiticity_defect(op)) + ")");
    }
    Spectrum s;
    if (op.imag().cwiseAbs().maxCoeff() == 0.0) {
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(op.real());
        s.energies = es.eigenvalues();
        s.vectors = es.eigenvectors().cast<Complex>();
    } else {
        Eigen::SelfAdjointEigenSolver<Matrix> es(op);
        s.energies = es.eigenvalues();
        s.vectors = es.eigenvectors();
    }
    s.degeneracy_tol = degeneracy_tol >= 0.0 ? degeneracy_tol : default_degeneracy_tol(s.energies);

    const Eigen::Index d = s.energies.size();
    s.block_of.assign(static_cast<std::size_t>(d), 0);
    Eigen::Index start = 0;
    for (Eigen::Index j = 1; j <= d; ++j) {
        if (j == d || s.energies(j) - s.energies(j - 1) > s.degeneracy_tol) {
            s.blocks.emplace_back(start, j - start);
            for (Eigen::Index i = start; i < j; ++i) {
                s.block_of[static_cast<std::size_t>(i)] =
                    static_cast<Eigen::Index>(s.blocks.size() - 1);
            }
            start = j;
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Expectation values
// ---------------------------------------------------------------------------

inline constexpr double kImaginaryTraceTolerance = 1e-9;

/// Re Tr[O rho]; throws if the imaginary part of the trace is not negligible.
inline double expectation(const Matrix &observable, const DensityMatrix &rho) {
    require_same_dim(observable, rho.matrix(), "expectation");
    const Complex tr = (observable * rho.matrix()).trace();
    if (std::abs(tr.imag()) >= kImaginaryTraceTolerance * std::max(1.0, max_abs(observable))) {
        throw NumericalError("expectation: Tr[O rho] has imaginary part " +
                             std::to_string(tr.imag()) + "; is O Hermitian?");
    }
    return tr.real();
}

inline double expectation(const Matrix &observable, const PureState &psi) {
    if (observable.rows() != psi.dim() || observable.cols() != psi.dim()) {
        throw DimensionMismatch("expectation: dimension mismatch");
    }
    const Complex v = psi.amplitudes().dot(observable * psi.amplitudes());
    if (std::abs(v.imag()) >= kImaginaryTraceTolerance * std::max(1.0, max_abs(observable))) {
        throw NumericalError("expectation: <psi|O|psi> is not real; is O Hermitian?");
    }
    return v.real();
}

} // namespace aev
