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
 * @file dephasing.hpp
 * Dephasing channels in the eigenbasis of the target Hamiltonian.
 *
 * Random-time evolution exp(-i HT tau) with tau ~ P acts on eigenbasis
 * entries as rho_jk -> F[P](E_j - E_k) rho_jk, where
 *
 *     F[P](gap) = \int_0^{T_d} P(tau) exp(-i gap tau) dtau.
 *
 * The sign of the exponent follows from the conjugation order
 * exp(-i H tau) rho exp(+i H tau).
 *
 * Distributions:
 *   - uniform: P = 1/T_d on [0, T_d] (F is a phase times sinc);
 *   - bump:    P = (2 N / T_d) f(2 tau / T_d - 1), f(x) = exp(-1/(1 - x^2)),
 *              N = 1 / \int_{-1}^{1} f = 2.25228...; smooth with compact
 *              support, so F decays faster than any power;
 *   - none:    tau = 0, the identity channel;
 *   - ideal:   the T_d -> infinity limit, i.e. block-diagonal projection.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/lambert_w.hpp>

#include "aev/linalg.hpp"

namespace aev {

enum class DephasingKind { Uniform, Bump, None, Ideal };

inline std::string to_string(DephasingKind k) {
    switch (k) {
    case DephasingKind::Uniform:
        return "uniform";
    case DephasingKind::Bump:
        return "bump";
    case DephasingKind::None:
        return "none";
    case DephasingKind::Ideal:
        return "ideal";
    }
    return "?";
}

inline DephasingKind dephasing_kind_from_string(const std::string &s) {
    if (s == "uniform") {
        return DephasingKind::Uniform;
    }
    if (s == "bump") {
        return DephasingKind::Bump;
    }
    if (s == "none") {
        return DephasingKind::None;
    }
    if (s == "ideal") {
        return DephasingKind::Ideal;
    }
    throw InvalidArgument("unknown dephasing kind '" + s + "' (expected bump|uniform|none|ideal)");
}

inline constexpr double kQuadratureTolerance = 1e-10;

namespace detail {

inline double bump_profile(double x) {
    if (!(x > -1.0 && x < 1.0)) {
        return 0.0;
    }
    return std::exp(-1.0 / (1.0 - x * x));
}

struct QuadratureResult {
    double value;
    double error;
};

// Adaptive Gauss-Kronrod on [a, b], split into `panels` equal pieces. The
// per-panel tolerance is relative to the panel's L1 norm; for a probability
// density those norms sum to 1, so the total stays below `tol` absolute.
// Much tighter targets stall at the rounding floor of cancelling oscillations.
template <class F>
QuadratureResult integrate(F &&f, double a, double b, std::size_t panels = 1, double tol = 1e-11) {
    using boost::math::quadrature::gauss_kronrod;
    QuadratureResult r{0.0, 0.0};
    const double w = (b - a) / static_cast<double>(panels);
    for (std::size_t i = 0; i < panels; ++i) {
        const double lo = a + w * static_cast<double>(i);
        const double hi = i + 1 == panels ? b : lo + w;
        double err = 0.0;
        r.value += gauss_kronrod<double, 61>::integrate(f, lo, hi, 20, tol, &err);
        r.error += err;
    }
    return r;
}

} // namespace detail

/// \int_{-1}^{1} exp(-1/(1-x^2)) dx, by quadrature, computed once.
inline double bump_integral() {
    static const double value = [] {
        const auto r = detail::integrate(detail::bump_profile, -1.0, 1.0, 4, 1e-13);
        if (r.error > 1e-13) {
            throw NumericalError("bump_integral: quadrature did not converge");
        }
        return r.value;
    }();
    return value;
}

/// Normalization N of the bump density (independent of T_d by scale
/// invariance): N = 1 / bump_integral() = 2.25228...
inline double bump_normalization() { return 1.0 / bump_integral(); }

/// Distribution of the random evolution time tau on [0, T_d].
class RandomTimeDistribution {
  public:
    static RandomTimeDistribution uniform(double t_d) { return {DephasingKind::Uniform, t_d}; }
    static RandomTimeDistribution bump(double t_d) { return {DephasingKind::Bump, t_d}; }
    static RandomTimeDistribution none() { return {DephasingKind::None, 0.0}; }
    static RandomTimeDistribution ideal() {
        return {DephasingKind::Ideal, std::numeric_limits<double>::infinity()};
    }

    [[nodiscard]] DephasingKind kind() const { return kind_; }
    /// T_d; 0 for `none`, +inf for `ideal`.
    [[nodiscard]] double dephasing_time() const { return t_d_; }
    [[nodiscard]] bool has_density() const {
        return kind_ == DephasingKind::Uniform || kind_ == DephasingKind::Bump;
    }

    [[nodiscard]] double density(double tau) const {
        require_density("density");
        if (!(tau >= 0.0 && tau <= t_d_)) {
            return 0.0;
        }
        if (kind_ == DephasingKind::Uniform) {
            return 1.0 / t_d_;
        }
        if (tau == 0.0 || tau == t_d_) {
            return 0.0;
        }
        return 2.0 * bump_normalization() / t_d_ *
               std::exp(t_d_ * t_d_ / (4.0 * tau * (tau - t_d_)));
    }

    [[nodiscard]] double max_density() const {
        require_density("max_density");
        return kind_ == DephasingKind::Uniform ? 1.0 / t_d_ : density(0.5 * t_d_);
    }

    /// F[P](gap). Closed form for uniform, quadrature for bump, exact limits
    /// for none (1) and ideal (1 at gap == 0, else 0).
    [[nodiscard]] Complex fourier(double gap) const {
        if (!std::isfinite(gap)) {
            throw InvalidArgument("fourier: non-finite gap");
        }
        switch (kind_) {
        case DephasingKind::None:
            return {1.0, 0.0};
        case DephasingKind::Ideal:
            return {gap == 0.0 ? 1.0 : 0.0, 0.0};
        case DephasingKind::Uniform: {
            // (1 - e^{-i x}) / (i x) = e^{-i x/2} sin(x/2) / (x/2)
            const double half = 0.5 * gap * t_d_;
            const double sinc = half == 0.0 ? 1.0 : std::sin(half) / half;
            return std::polar(sinc, -half);
        }
        case DephasingKind::Bump:
            return fourier_quadrature(gap);
        }
        return {};
    }

    /// F[P](gap) by adaptive quadrature of the density; absolute tolerance
    /// 1e-10 or a NumericalError.
    [[nodiscard]] Complex fourier_quadrature(double gap) const {
        require_density("fourier_quadrature");
        const double span = std::abs(gap) * t_d_;
        const auto panels = static_cast<std::size_t>(std::max(1.0, std::ceil(span / (4.0 * std::numbers::pi))));
        const auto re = detail::integrate([&](double t) { return density(t) * std::cos(gap * t); }, 0.0,
                                          t_d_, panels);
        const auto im = detail::integrate([&](double t) { return -density(t) * std::sin(gap * t); },
                                          0.0, t_d_, panels);
        if (re.error + im.error > kQuadratureTolerance) {
            throw NumericalError("fourier_quadrature: no convergence for gap " + std::to_string(gap) +
                                 ", T_d " + std::to_string(t_d_) + " (error estimate " +
                                 std::to_string(re.error + im.error) + ")");
        }
        return {re.value, im.value};
    }

    /// Draws tau. Bump uses rejection sampling with a uniform proposal.
    template <class Rng>
    double sample(Rng &rng) const {
        switch (kind_) {
        case DephasingKind::None:
            return 0.0;
        case DephasingKind::Ideal:
            throw InvalidArgument("sample: the ideal (T_d -> inf) channel has no finite sampler");
        case DephasingKind::Uniform:
            return std::uniform_real_distribution<double>(0.0, t_d_)(rng);
        case DephasingKind::Bump: {
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            const double ceiling = max_density();
            for (int attempt = 0; attempt < 1'000'000; ++attempt) {
                const double tau = t_d_ * unit(rng);
                if (unit(rng) * ceiling <= density(tau)) {
                    return tau;
                }
            }
            throw NumericalError("sample: bump rejection sampler failed to accept");
        }
        }
        return 0.0;
    }

  private:
    RandomTimeDistribution(DephasingKind kind, double t_d) : kind_(kind), t_d_(t_d) {
        if ((kind == DephasingKind::Uniform || kind == DephasingKind::Bump) &&
            !(t_d > 0.0 && std::isfinite(t_d))) {
            throw InvalidArgument(to_string(kind) + " distribution needs 0 < T_d < inf");
        }
    }

    void require_density(const char *what) const {
        if (!has_density()) {
            throw InvalidArgument(std::string(what) + ": '" + to_string(kind_) +
                                  "' has no density on a finite support");
        }
    }

    DephasingKind kind_;
    double t_d_;
};

// ---------------------------------------------------------------------------
// Fourier matrix
// ---------------------------------------------------------------------------

struct FourierMatrix {
    Matrix entries;     ///< F_jk = F[P](E_j - E_k), eigenbasis indexed
    double delta = 0.0; ///< max_{j>0} |F_0j|
};

namespace detail {

inline double ground_coherence_bound(const Matrix &f) {
    double d = 0.0;
    for (Eigen::Index j = 1; j < f.cols(); ++j) {
        d = std::max(d, std::abs(f(0, j)));
    }
    return d;
}

} // namespace detail

/// F_jk over all eigenpairs. Pairs inside one degenerate block get F = 1 (the
/// transform at zero gap). Repeated gaps are evaluated once.
inline FourierMatrix fourier_matrix(const RandomTimeDistribution &dist, const Spectrum &spectrum) {
    const Eigen::Index d = spectrum.dim();
    FourierMatrix out;
    out.entries = Matrix::Ones(d, d);
    if (dist.kind() != DephasingKind::None) {
        const double quantum = std::max(1e-13, spectrum.degeneracy_tol);
        std::map<long long, Complex> cache;
        for (Eigen::Index j = 0; j < d; ++j) {
            for (Eigen::Index k = j + 1; k < d; ++k) {
                Complex v{1.0, 0.0};
                if (!spectrum.same_block(j, k)) {
                    if (dist.kind() == DephasingKind::Ideal) {
                        v = 0.0;
                    } else {
                        const double gap = spectrum.energies(j) - spectrum.energies(k);
                        const auto key = std::llround(gap / quantum);
                        auto it = cache.find(key);
                        if (it == cache.end()) {
                            it = cache.emplace(key, dist.fourier(gap)).first;
                        }
                        v = it->second;
                    }
                }
                out.entries(j, k) = v;
                out.entries(k, j) = std::conj(v);
            }
        }
    }
    out.delta = detail::ground_coherence_bound(out.entries);
    return out;
}

/// Monte-Carlo estimate of F: mean of exp(-i (E_j - E_k) tau_i). Positive
/// semidefinite by construction (average of rank-one p p^dagger).
template <class Rng>
Matrix empirical_fourier_matrix(const RandomTimeDistribution &dist, const Spectrum &spectrum,
                                std::size_t samples, Rng &rng) {
    if (samples < 1) {
        throw InvalidArgument("empirical_fourier_matrix: need at least one sample");
    }
    if (dist.kind() == DephasingKind::Ideal) {
        return fourier_matrix(dist, spectrum).entries;
    }
    const Eigen::Index d = spectrum.dim();
    Matrix acc = Matrix::Zero(d, d);
    Vector p(d);
    for (std::size_t i = 0; i < samples; ++i) {
        const double tau = dist.sample(rng);
        for (Eigen::Index j = 0; j < d; ++j) {
            p(j) = std::polar(1.0, -spectrum.energies(j) * tau);
        }
        acc.noalias() += p * p.adjoint();
    }
    return acc / static_cast<double>(samples);
}

// ---------------------------------------------------------------------------
// Channels
// ---------------------------------------------------------------------------

namespace detail {

inline void require_spectrum_dim(const DensityMatrix &rho, const Spectrum &spectrum, const char *what) {
    if (rho.dim() != spectrum.dim()) {
        throw DimensionMismatch(std::string(what) + ": state and spectrum dimensions differ");
    }
}

// Maps an eigenbasis matrix back, symmetrizes round-off, checks the trace.
inline DensityMatrix finish_channel(const Matrix &eigen_out, const DensityMatrix &in,
                                    const Spectrum &spectrum, const char *what) {
    Matrix out = spectrum.from_eigenbasis(eigen_out);
    out = 0.5 * (out + out.adjoint()).eval();
    const double drift = std::abs(out.trace() - in.matrix().trace());
    if (drift > 1e-12) {
        throw NumericalError(std::string(what) + ": trace not preserved (drift " +
                             std::to_string(drift) + ")");
    }
    return DensityMatrix(std::move(out));
}

} // namespace detail

/// Keeps only the eigenbasis diagonal. Requires a non-degenerate spectrum.
inline DensityMatrix ideal_dephase(const DensityMatrix &rho, const Spectrum &spectrum) {
    detail::require_spectrum_dim(rho, spectrum, "ideal_dephase");
    if (!spectrum.nondegenerate()) {
        throw DegenerateSpectrum("ideal_dephase: spectrum is degenerate; use degenerate_dephase "
                                 "(block-diagonal projection onto eigenspaces)");
    }
    const Matrix r = spectrum.to_eigenbasis(rho.matrix());
    const Matrix diag = r.diagonal().asDiagonal();
    return detail::finish_channel(diag, rho, spectrum, "ideal_dephase");
}

/// sum_j Pi_j rho Pi_j over the degenerate eigenspaces.
inline DensityMatrix degenerate_dephase(const DensityMatrix &rho, const Spectrum &spectrum) {
    detail::require_spectrum_dim(rho, spectrum, "degenerate_dephase");
    Matrix r = spectrum.to_eigenbasis(rho.matrix());
    for (Eigen::Index j = 0; j < r.rows(); ++j) {
        for (Eigen::Index k = 0; k < r.cols(); ++k) {
            if (!spectrum.same_block(j, k)) {
                r(j, k) = 0.0;
            }
        }
    }
    return detail::finish_channel(r, rho, spectrum, "degenerate_dephase");
}

/// Eigenbasis entries multiplied by F_jk.
inline DensityMatrix approx_dephase_exact(const DensityMatrix &rho, const FourierMatrix &f,
                                          const Spectrum &spectrum) {
    detail::require_spectrum_dim(rho, spectrum, "approx_dephase_exact");
    require_same_dim(f.entries, rho.matrix(), "approx_dephase_exact");
    const Matrix r = spectrum.to_eigenbasis(rho.matrix()).cwiseProduct(f.entries);
    return detail::finish_channel(r, rho, spectrum, "approx_dephase_exact");
}

struct SampledDephasing {
    DensityMatrix state;
    /// Eigenbasis mean of the sampled conjugations.
    Matrix eigenbasis_mean;
    /// Standard errors of the eigenbasis entries: real part holds the error
    /// of Re, imaginary part the error of Im.
    Matrix eigenbasis_std_error;
};

/// Average of exp(-i HT tau_i) rho exp(i HT tau_i) over `samples` draws, with
/// per-entry standard errors. Conjugations are applied in the eigenbasis of
/// HT, where they are diagonal phase multiplications.
inline SampledDephasing approx_dephase_sampled_detailed(const DensityMatrix &rho,
                                                        const RandomTimeDistribution &dist,
                                                        const Spectrum &spectrum,
                                                        std::size_t samples, std::uint64_t seed) {
    detail::require_spectrum_dim(rho, spectrum, "approx_dephase_sampled");
    if (samples < 1) {
        throw InvalidArgument("approx_dephase_sampled: samples must be >= 1");
    }
    const Eigen::Index d = spectrum.dim();
    const Matrix r = spectrum.to_eigenbasis(rho.matrix());
    if (dist.kind() == DephasingKind::Ideal) {
        DensityMatrix out = degenerate_dephase(rho, spectrum);
        Matrix mean = spectrum.to_eigenbasis(out.matrix());
        return {std::move(out), std::move(mean), Matrix::Zero(d, d)};
    }

    std::mt19937_64 rng(seed);
    RealMatrix sum_re = RealMatrix::Zero(d, d), sum_im = RealMatrix::Zero(d, d);
    RealMatrix sq_re = RealMatrix::Zero(d, d), sq_im = RealMatrix::Zero(d, d);
    Vector p(d);
    for (std::size_t i = 0; i < samples; ++i) {
        const double tau = dist.sample(rng);
        for (Eigen::Index j = 0; j < d; ++j) {
            p(j) = std::polar(1.0, -spectrum.energies(j) * tau);
        }
        for (Eigen::Index k = 0; k < d; ++k) {
            for (Eigen::Index j = 0; j < d; ++j) {
                const Complex x = p(j) * std::conj(p(k)) * r(j, k);
                sum_re(j, k) += x.real();
                sum_im(j, k) += x.imag();
                sq_re(j, k) += x.real() * x.real();
                sq_im(j, k) += x.imag() * x.imag();
            }
        }
    }
    const auto n = static_cast<double>(samples);
    Matrix mean(d, d), err(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index j = 0; j < d; ++j) {
            if (j == k) {
                // Every draw leaves the populations untouched; copying them
                // avoids summation drift in the trace.
                mean(j, j) = r(j, j);
                err(j, j) = 0.0;
                continue;
            }
            const double mr = sum_re(j, k) / n, mi = sum_im(j, k) / n;
            mean(j, k) = {mr, mi};
            if (samples > 1) {
                const double vr = std::max(0.0, (sq_re(j, k) - n * mr * mr) / (n - 1.0));
                const double vi = std::max(0.0, (sq_im(j, k) - n * mi * mi) / (n - 1.0));
                err(j, k) = {std::sqrt(vr / n), std::sqrt(vi / n)};
            } else {
                err(j, k) = 0.0;
            }
        }
    }
    DensityMatrix out = detail::finish_channel(mean, rho, spectrum, "approx_dephase_sampled");
    return {std::move(out), std::move(mean), std::move(err)};
}

inline DensityMatrix approx_dephase_sampled(const DensityMatrix &rho, const RandomTimeDistribution &dist,
                                            const Spectrum &spectrum, std::size_t samples,
                                            std::uint64_t seed) {
    return approx_dephase_sampled_detailed(rho, dist, spectrum, samples, seed).state;
}

// ---------------------------------------------------------------------------
// Bump envelope and dephasing time
// ---------------------------------------------------------------------------

/// sqrt(8 pi / sqrt(e)) (T_d gap)^(-3/4) exp(-sqrt(T_d gap / 2)): the
/// saddle-point envelope of the bump transform beyond the gap.
inline double bump_delta_bound(double t_d, double gap) {
    const double x = t_d * gap;
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw InvalidArgument("bump_delta_bound: T_d * gap must be positive and finite");
    }
    const double prefactor = std::sqrt(8.0 * std::numbers::pi / std::sqrt(std::numbers::e));
    return prefactor * std::pow(x, -0.75) * std::exp(-std::sqrt(0.5 * x));
}

/// Smallest T_d with bump_delta_bound(T_d, gap) <= delta_target. Inverts the
/// envelope through the principal Lambert W branch: with
/// w = W0[2 sqrt(2) pi^(1/3) / (3 e^(1/6) delta^(2/3))], T_d gap = 9 w^2 / 2,
/// then steps up by ulps so rounding never lands above the target.
inline double required_dephasing_time(double delta_target, double gap) {
    if (!(delta_target > 0.0 && delta_target < 1.0)) {
        throw InvalidArgument("required_dephasing_time: delta_target must lie in (0, 1)");
    }
    if (!(gap > 0.0) || !std::isfinite(gap)) {
        throw InvalidArgument("required_dephasing_time: gap must be positive and finite");
    }
    const double arg = 2.0 * std::numbers::sqrt2 * std::cbrt(std::numbers::pi) /
                       (3.0 * std::exp(1.0 / 6.0) * std::pow(delta_target, 2.0 / 3.0));
    const double w = boost::math::lambert_w0(arg);
    double t_d = 4.5 * w * w / gap;
    for (int i = 0; i < 64 && bump_delta_bound(t_d, gap) > delta_target; ++i) {
        t_d = std::nextafter(t_d, std::numeric_limits<double>::infinity());
    }
    return t_d;
}

} // namespace aev
