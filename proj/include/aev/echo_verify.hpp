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
 * @file echo_verify.hpp
 * Echo-verified estimators built on an adiabatic sweep pair.
 *
 * The verified Hadamard test prepares rho = U_fwd |psi0><psi0| U_fwd^dagger,
 * dephases, applies controlled-O, dephases again, unprepares with U_bwd and
 * post-selects on |psi0>. Its expectation is Tr[O rt st] where, in the
 * eigenbasis of HT,
 *
 *     rt_jk = F_jk rho_jk,     st_kl = F_lk sigma_kl,
 *
 * with sigma = U_bwd^dagger |psi0><psi0| U_bwd. The echo circuit (O = 1)
 * gives the normalization Tr[rt st].
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>

#include "aev/adiabatic.hpp"
#include "aev/dephasing.hpp"
#include "aev/linalg.hpp"

namespace aev {

inline constexpr double kDefaultDenominatorFloor = 1e-10;

/// Upper end of the infidelity range where the error bound applies:
/// (1-e)^2 - 2e(1-e) - e^2 > 0 for e < sqrt(3/2) - 1.
inline double bound_epsilon_limit() { return std::sqrt(1.5) - 1.0; }

/// Estimator denominator below the floor; carries the sweep diagnostics.
class EstimatorBreakdown : public NumericalError {
  public:
    EstimatorBreakdown(const std::string &what, double epsilon, double delta)
        : NumericalError(what + " (epsilon = " + std::to_string(epsilon) +
                         ", delta = " + std::to_string(delta) + ")"),
          epsilon_(epsilon), delta_(delta) {}

    [[nodiscard]] double epsilon() const { return epsilon_; }
    [[nodiscard]] double delta() const { return delta_; }

  private:
    double epsilon_;
    double delta_;
};

struct EstimatorResult {
    double value = 0.0;
    Complex numerator{0.0, 0.0};
    Complex denominator{1.0, 0.0};
    /// Im(numerator / denominator), kept as a diagnostic.
    double imag_residual = 0.0;
    double epsilon_forward = 0.0;
    double epsilon_backward = 0.0;
    double delta = 0.0;
    std::optional<double> gamma;
    std::optional<double> bound;
    std::optional<double> exact_reference;

    [[nodiscard]] double epsilon() const { return std::max(epsilon_forward, epsilon_backward); }
    [[nodiscard]] std::optional<double> abs_error() const {
        if (!exact_reference) {
            return std::nullopt;
        }
        return std::abs(value - *exact_reference);
    }
};

// ---------------------------------------------------------------------------
// Purification diagnostics
// ---------------------------------------------------------------------------

/// Tr[O rho^k] / Tr[rho^k] through the eigendecomposition of rho.
inline double purified_estimator(const DensityMatrix &rho, const Matrix &observable, int k,
                                 double denominator_floor = kDefaultDenominatorFloor) {
    if (k < 1) {
        throw InvalidArgument("purified_estimator: k must be >= 1");
    }
    require_same_dim(observable, rho.matrix(), "purified_estimator");
    const Spectrum s = eigendecompose(rho.matrix(), 0.0);
    RealVector weights(s.dim());
    for (Eigen::Index j = 0; j < s.dim(); ++j) {
        weights(j) = std::pow(std::max(0.0, s.energies(j)), k);
    }
    const double den = weights.sum();
    if (den <= denominator_floor) {
        throw NumericalError("purified_estimator: Tr[rho^k] = " + std::to_string(den) +
                             " below the floor");
    }
    const Matrix o = s.to_eigenbasis(observable);
    Complex num{0.0, 0.0};
    for (Eigen::Index j = 0; j < s.dim(); ++j) {
        num += weights(j) * o(j, j);
    }
    if (std::abs(num.imag()) > kImaginaryTraceTolerance * std::max(1.0, max_abs(observable))) {
        throw NumericalError("purified_estimator: Tr[O rho^k] is not real; is O Hermitian?");
    }
    return num.real() / den;
}

/// Weight of the excited block in the k-th purified estimator of a dephased
/// state: gamma = X / (X + c0^k), X = Tr[(excited block of rho_d)^k],
/// c0 = <E_0|rho_d|E_0>.
inline double gamma(const DensityMatrix &rho_d, const Spectrum &spectrum, int k) {
    if (k < 1) {
        throw InvalidArgument("gamma: k must be >= 1");
    }
    if (rho_d.dim() != spectrum.dim()) {
        throw DimensionMismatch("gamma: state and spectrum dimensions differ");
    }
    if (!spectrum.ground_nondegenerate()) {
        throw DegenerateSpectrum("gamma: degenerate ground level");
    }
    const Matrix r = spectrum.to_eigenbasis(rho_d.matrix());
    const Eigen::Index d = r.rows();
    for (Eigen::Index j = 1; j < d; ++j) {
        if (std::abs(r(0, j)) > 1e-9) {
            throw InvalidArgument("gamma: state keeps ground-state coherences; dephase it first");
        }
    }
    const double c0 = r(0, 0).real();
    if (!(c0 > 0.0)) {
        throw InvalidArgument("gamma: state has no ground-state support (epsilon = 1)");
    }
    double excited = 0.0;
    if (d > 1) {
        const Matrix block = r.bottomRightCorner(d - 1, d - 1);
        Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (block + block.adjoint()), Eigen::EigenvaluesOnly);
        for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
            excited += std::pow(std::max(0.0, es.eigenvalues()(j)), k);
        }
    }
    return excited / (excited + std::pow(c0, k));
}

// ---------------------------------------------------------------------------
// Error bound
// ---------------------------------------------------------------------------

/// 2||O|| [sqrt((1-e) e) d + e (1-e) d^2 + e^2] / |(1-e)^2 - 2e(1-e) - e^2|.
inline double error_bound(double epsilon, double delta, double observable_norm) {
    if (!(epsilon >= 0.0 && epsilon < bound_epsilon_limit())) {
        throw InvalidArgument("error_bound: epsilon = " + std::to_string(epsilon) +
                              " outside [0, sqrt(3/2) - 1), where the echo denominator "
                              "is not guaranteed positive");
    }
    if (!(delta >= 0.0 && delta <= 1.0)) {
        throw InvalidArgument("error_bound: delta must lie in [0, 1]");
    }
    if (!(observable_norm >= 0.0) || !std::isfinite(observable_norm)) {
        throw InvalidArgument("error_bound: observable norm must be finite and non-negative");
    }
    const double e = epsilon;
    const double num = std::sqrt((1.0 - e) * e) * delta + e * (1.0 - e) * delta * delta + e * e;
    const double den = std::abs((1.0 - e) * (1.0 - e) - 2.0 * e * (1.0 - e) - e * e);
    return 2.0 * observable_norm * num / den;
}

/// Lower bound on |Tr[rt st]| for infidelity epsilon.
inline double denominator_lower_bound(double epsilon) {
    const double e = epsilon;
    return (1.0 - e) * (1.0 - e) - 2.0 * e * (1.0 - e) - e * e;
}

// ---------------------------------------------------------------------------
// Tilde pair
// ---------------------------------------------------------------------------

struct TildePair {
    Matrix rho; ///< rt, eigenbasis indexed
    Matrix sigma; ///< st, eigenbasis indexed
};

/// Eigenbasis operators rt_jk = F_jk rho_jk and st_kl = F_lk sigma_kl.
inline TildePair build_tilde_pair(const DensityMatrix &rho_ad, const DensityMatrix &sigma_ad,
                                  const FourierMatrix &f, const Spectrum &spectrum) {
    require_same_dim(rho_ad.matrix(), sigma_ad.matrix(), "build_tilde_pair");
    require_same_dim(f.entries, rho_ad.matrix(), "build_tilde_pair");
    if (rho_ad.dim() != spectrum.dim()) {
        throw DimensionMismatch("build_tilde_pair: state and spectrum dimensions differ");
    }
    TildePair out;
    out.rho = spectrum.to_eigenbasis(rho_ad.matrix()).cwiseProduct(f.entries);
    out.sigma = spectrum.to_eigenbasis(sigma_ad.matrix()).cwiseProduct(f.entries.transpose());
    return out;
}

// ---------------------------------------------------------------------------
// Sweep pair and estimators
// ---------------------------------------------------------------------------

/// Forward sweep output and the adjoint backward sweep output U_bwd^dagger
/// |psi0>, shared by every observable and dephasing setting of one T_ad.
struct SweepPair {
    SweepResult forward;
    SweepResult backward;
};

inline SweepPair run_sweeps(const AdiabaticProblem &problem) {
    return {evolve_forward(problem), evolve_backward_adjoint(problem)};
}

struct AevOptions {
    /// 0 selects the exact channel; otherwise the number of sampled
    /// evolution times per dephasing application.
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double denominator_floor = kDefaultDenominatorFloor;
};

namespace detail {

inline double ground_expectation(const Matrix &observable, const Spectrum &spectrum) {
    const Vector e0 = spectrum.vectors.col(0);
    return e0.dot(observable * e0).real();
}

// Numerator and denominator from eigenbasis amplitudes a (rho) and b (sigma)
// and the two Fourier matrices of the first and second dephasing.
inline std::pair<Complex, Complex> echo_traces(const Vector &a, const Vector &b, const Matrix &f_first,
                                               const Matrix &f_second, const Matrix &observable_eig) {
    const Matrix rt = (a * a.adjoint()).cwiseProduct(f_first);
    const Matrix st = (b * b.adjoint()).cwiseProduct(f_second.transpose());
    const Matrix prod = rt * st;
    const Complex den = prod.trace();
    const Complex num = (observable_eig * prod).trace();
    return {num, den};
}

} // namespace detail

/// Echo-verified estimator from precomputed sweeps.
inline EstimatorResult aev_from_sweeps(const AdiabaticProblem &problem, const SweepPair &sweeps,
                                       const RandomTimeDistribution &dist, const Matrix &observable,
                                       const AevOptions &options = {}) {
    const Spectrum &spec = problem.target_spectrum();
    require_same_dim(observable, spec.vectors, "aev_estimate");
    if (!is_hermitian(observable)) {
        throw InvalidArgument("aev_estimate: observable is not Hermitian");
    }

    EstimatorResult r;
    r.epsilon_forward = sweeps.forward.infidelity;
    r.epsilon_backward = sweeps.backward.infidelity;
    r.exact_reference = detail::ground_expectation(observable, spec);

    const FourierMatrix exact_f = fourier_matrix(dist, spec);
    r.delta = exact_f.delta;
    Matrix f_first = exact_f.entries;
    Matrix f_second = exact_f.entries;
    if (options.samples > 0 && dist.kind() != DephasingKind::Ideal && dist.kind() != DephasingKind::None) {
        std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32)};
        std::mt19937_64 rng(seq);
        f_first = empirical_fourier_matrix(dist, spec, options.samples, rng);
        f_second = empirical_fourier_matrix(dist, spec, options.samples, rng);
    }

    const Vector a = spec.vectors.adjoint() * sweeps.forward.final_state.amplitudes();
    const Vector b = spec.vectors.adjoint() * sweeps.backward.final_state.amplitudes();
    const Matrix o = spec.to_eigenbasis(observable);
    const auto [num, den] = detail::echo_traces(a, b, f_first, f_second, o);
    r.numerator = num;
    r.denominator = den;
    if (!(std::abs(den) > options.denominator_floor)) {
        throw EstimatorBreakdown("aev_estimate: echo denominator |Tr[rt st]| = " +
                                     std::to_string(std::abs(den)) + " below the floor",
                                 r.epsilon(), r.delta);
    }
    const Complex ratio = num / den;
    r.value = ratio.real();
    r.imag_residual = ratio.imag();
    if (r.epsilon() < bound_epsilon_limit()) {
        r.bound = error_bound(r.epsilon(), std::min(1.0, r.delta), operator_norm(observable));
    }
    if (dist.kind() == DephasingKind::Ideal && spec.nondegenerate()) {
        const Matrix rho_d = (a.cwiseAbs2()).cast<Complex>().asDiagonal();
        r.gamma = gamma(DensityMatrix(spec.from_eigenbasis(rho_d)), spec, 2);
    }
    return r;
}

inline EstimatorResult aev_estimate(const AdiabaticProblem &problem, const RandomTimeDistribution &dist,
                                    const Matrix &observable, const AevOptions &options = {}) {
    return aev_from_sweeps(problem, run_sweeps(problem), dist, observable, options);
}

/// Plain adiabatic estimate <psi_ad|O|psi_ad> from a forward sweep.
inline EstimatorResult qaa_from_sweep(const AdiabaticProblem &problem, const SweepResult &forward,
                                      const Matrix &observable) {
    const Spectrum &spec = problem.target_spectrum();
    require_same_dim(observable, spec.vectors, "qaa_estimate");
    EstimatorResult r;
    r.value = expectation(observable, forward.final_state);
    r.numerator = r.value;
    r.denominator = 1.0;
    r.epsilon_forward = forward.infidelity;
    r.epsilon_backward = 0.0;
    r.delta = 0.0;
    r.exact_reference = detail::ground_expectation(observable, spec);
    return r;
}

inline EstimatorResult qaa_estimate(const AdiabaticProblem &problem, const Matrix &observable) {
    return qaa_from_sweep(problem, evolve_forward(problem), observable);
}

// ---------------------------------------------------------------------------
// Shot-level simulation
// ---------------------------------------------------------------------------

enum class ShotBasis { X, Y, Echo };

/// Outcome counts of one circuit setting. For X and Y, outcome +1/-1 is the
/// control-qubit result after a successful return to |psi0>, and 0 a failed
/// return. For Echo, `plus` counts returns and `zero` failures.
struct ShotRecord {
    ShotBasis basis = ShotBasis::X;
    std::size_t plus = 0;
    std::size_t minus = 0;
    std::size_t zero = 0;
    double p_plus = 0.0;
    double p_minus = 0.0;
    double p_zero = 0.0;

    [[nodiscard]] std::size_t shots() const { return plus + minus + zero; }
    [[nodiscard]] double mean() const {
        return (static_cast<double>(plus) - static_cast<double>(minus)) / static_cast<double>(shots());
    }
    /// Sample variance of the +1/-1/0 outcome variable.
    [[nodiscard]] double variance() const {
        const double n = static_cast<double>(shots());
        const double m = mean();
        const double second = static_cast<double>(plus + minus) / n;
        return n > 1.0 ? std::max(0.0, (second - m * m) * n / (n - 1.0)) : 0.0;
    }
};

struct ShotEstimate {
    ShotRecord x;
    ShotRecord y;
    ShotRecord echo;
    double value = 0.0;
    double imag_value = 0.0;
    double std_error = 0.0;
    EstimatorResult exact;
};

/// Exact outcome probabilities of the three circuit settings.
struct CircuitProbabilities {
    double return_probability = 0.0; ///< VHT success, averaged over control branches
    Complex numerator{0.0, 0.0};
    double echo = 0.0;
};

namespace detail {

inline void draw_counts(ShotRecord &rec, std::size_t shots, std::mt19937_64 &rng) {
    const double total = rec.p_plus + rec.p_minus + rec.p_zero;
    std::binomial_distribution<std::size_t> first(shots, std::clamp(rec.p_plus / total, 0.0, 1.0));
    rec.plus = first(rng);
    const std::size_t rest = shots - rec.plus;
    const double tail = rec.p_minus + rec.p_zero;
    const double q = tail > 0.0 ? std::clamp(rec.p_minus / tail, 0.0, 1.0) : 0.0;
    std::binomial_distribution<std::size_t> second(rest, q);
    rec.minus = second(rng);
    rec.zero = rest - rec.minus;
}

} // namespace detail

inline CircuitProbabilities circuit_probabilities(const AdiabaticProblem &problem, const SweepPair &sweeps,
                                                  const RandomTimeDistribution &dist,
                                                  const Matrix &observable) {
    const Spectrum &spec = problem.target_spectrum();
    const FourierMatrix f = fourier_matrix(dist, spec);
    const Vector a = spec.vectors.adjoint() * sweeps.forward.final_state.amplitudes();
    const Vector b = spec.vectors.adjoint() * sweeps.backward.final_state.amplitudes();
    const Matrix o = spec.to_eigenbasis(observable);
    const Matrix rt = (a * a.adjoint()).cwiseProduct(f.entries);
    const Matrix st = (b * b.adjoint()).cwiseProduct(f.entries.transpose());
    CircuitProbabilities p;
    p.echo = (rt * st).trace().real();
    p.numerator = (o * rt * st).trace();
    const double rotated = (st * o * rt * o.adjoint()).trace().real();
    p.return_probability = 0.5 * (p.echo + rotated);
    return p;
}

/// Samples the VHT circuit in the X and Y control bases and the echo circuit,
/// `shots` repetitions each, and forms the ratio estimator with a delta-method
/// standard error. O must be unitary.
inline ShotEstimate simulate_shots(const AdiabaticProblem &problem, const RandomTimeDistribution &dist,
                                   const Matrix &observable, std::size_t shots, std::uint64_t seed) {
    if (shots < 1) {
        throw InvalidArgument("simulate_shots: shots must be >= 1");
    }
    require_same_dim(observable, problem.target_spectrum().vectors, "simulate_shots");
    if (!is_unitary(observable)) {
        throw InvalidArgument("simulate_shots: observable is not unitary; evaluate it with "
                              "aev_estimate (expectation level) or decompose it into unitaries");
    }
    const SweepPair sweeps = run_sweeps(problem);
    ShotEstimate out;
    out.exact = aev_from_sweeps(problem, sweeps, dist, observable);
    const CircuitProbabilities p = circuit_probabilities(problem, sweeps, dist, observable);

    auto vht = [&](ShotBasis basis, double signal) {
        ShotRecord rec;
        rec.basis = basis;
        rec.p_plus = std::max(0.0, 0.5 * (p.return_probability + signal));
        rec.p_minus = std::max(0.0, 0.5 * (p.return_probability - signal));
        rec.p_zero = std::max(0.0, 1.0 - p.return_probability);
        return rec;
    };
    out.x = vht(ShotBasis::X, p.numerator.real());
    out.y = vht(ShotBasis::Y, p.numerator.imag());
    out.echo.basis = ShotBasis::Echo;
    out.echo.p_plus = std::clamp(p.echo, 0.0, 1.0);
    out.echo.p_zero = 1.0 - out.echo.p_plus;

    std::mt19937_64 rng(seed);
    detail::draw_counts(out.x, shots, rng);
    detail::draw_counts(out.y, shots, rng);
    detail::draw_counts(out.echo, shots, rng);

    const double me = out.echo.mean();
    if (!(me > 0.0)) {
        throw EstimatorBreakdown("simulate_shots: no successful echo returns", out.exact.epsilon(),
                                 out.exact.delta);
    }
    const double mx = out.x.mean();
    const double n = static_cast<double>(shots);
    out.value = mx / me;
    out.imag_value = out.y.mean() / me;
    const double var = out.x.variance() / (me * me) + mx * mx * out.echo.variance() / (me * me * me * me);
    out.std_error = std::sqrt(var / n);
    return out;
}

} // namespace aev
