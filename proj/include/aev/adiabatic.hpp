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
 * @file adiabatic.hpp
 * Quasi-adiabatic sweeps along H(s) = (1 - s) H0 + s HT.
 *
 * The default integrator applies, per step of length h, the exact propagator
 * of the Hamiltonian frozen at the step midpoint,
 *
 *     psi <- exp(-i H(s(t_k + h/2)) h) psi,
 *
 * evaluated through an eigendecomposition of H(s). Every step is unitary, so
 * the norm is preserved to round-off. A first-order Euler integrator
 * (psi <- psi - i H psi h, then renormalize) is available for comparison.
 *
 * The forward sweep U_fwd follows s(t); the backward sweep U_bwd follows
 * s(T - t) with positive time steps. The unpreparation state
 * U_bwd^dagger |psi0> is obtained by applying the adjoints of the backward
 * step propagators in reverse order, so it is exact at the level of the
 * discretized propagators.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "aev/linalg.hpp"

namespace aev {

/// Sweep profile s(t) on [0, T_ad]: linear or a monotone piecewise-linear
/// table of (t / T_ad, s) knots.
class Schedule {
  public:
    Schedule() = default;

    static Schedule linear(double duration) {
        Schedule s;
        s.duration_ = duration;
        s.check_duration();
        return s;
    }

    /// Knots are (u, s) with u = t / T_ad; must start at (0, 0), end at
    /// (1, 1) and be non-decreasing in both coordinates.
    static Schedule table(double duration, std::vector<std::pair<double, double>> knots) {
        Schedule s;
        s.duration_ = duration;
        s.check_duration();
        if (knots.size() < 2) {
            throw InvalidArgument("Schedule: a table needs at least two knots");
        }
        if (knots.front() != std::pair{0.0, 0.0} || knots.back() != std::pair{1.0, 1.0}) {
            throw InvalidArgument("Schedule: table must start at (0,0) and end at (1,1)");
        }
        for (std::size_t i = 1; i < knots.size(); ++i) {
            if (!(knots[i].first > knots[i - 1].first) || knots[i].second < knots[i - 1].second) {
                throw InvalidArgument("Schedule: table must be strictly increasing in t/T and "
                                      "non-decreasing in s");
            }
        }
        s.knots_ = std::move(knots);
        return s;
    }

    [[nodiscard]] double duration() const { return duration_; }
    [[nodiscard]] bool is_linear() const { return knots_.empty(); }
    [[nodiscard]] const std::vector<std::pair<double, double>> &knots() const { return knots_; }

    /// Same profile, different total time.
    [[nodiscard]] Schedule with_duration(double duration) const {
        Schedule s = *this;
        s.duration_ = duration;
        s.check_duration();
        return s;
    }

    /// s(t), with t clamped to [0, T_ad].
    [[nodiscard]] double at(double t) const {
        const double u = std::clamp(t / duration_, 0.0, 1.0);
        if (knots_.empty()) {
            return u;
        }
        auto it = std::upper_bound(knots_.begin(), knots_.end(), u,
                                   [](double v, const auto &k) { return v < k.first; });
        if (it == knots_.end()) {
            return 1.0;
        }
        const auto &hi = *it;
        const auto &lo = *(it - 1);
        const double w = (u - lo.first) / (hi.first - lo.first);
        return lo.second + w * (hi.second - lo.second);
    }

  private:
    void check_duration() const {
        if (!(duration_ > 0.0) || !std::isfinite(duration_)) {
            throw InvalidArgument("Schedule: duration must be positive and finite");
        }
    }

    double duration_ = 1.0;
    std::vector<std::pair<double, double>> knots_;
};

enum class Integrator { Midpoint, Euler };

/// Ground state of an operator with a non-degenerate ground level.
inline PureState ground_state(const Matrix &h) {
    const Spectrum s = eigendecompose(h);
    if (!s.ground_nondegenerate()) {
        throw DegenerateSpectrum("ground_state: ground level is degenerate");
    }
    return PureState::normalized(s.eigenvector(0));
}

/// Everything a sweep needs. Spectra of H0 and HT are computed once here.
class AdiabaticProblem {
  public:
    AdiabaticProblem(PauliOperator h0, PauliOperator ht, Schedule schedule, double dt,
                     PureState initial_state, Integrator integrator = Integrator::Midpoint)
        : h0_(std::move(h0)), ht_(std::move(ht)), schedule_(std::move(schedule)), dt_(dt),
          initial_(std::move(initial_state)), integrator_(integrator) {
        if (h0_.qubits() != ht_.qubits()) {
            throw DimensionMismatch("AdiabaticProblem: H0 and HT act on different qubit counts");
        }
        if (initial_.dim() != h0_.dim()) {
            throw DimensionMismatch("AdiabaticProblem: initial state dimension mismatch");
        }
        if (!(dt_ > 0.0) || dt_ > schedule_.duration()) {
            throw InvalidArgument("AdiabaticProblem: need 0 < dt <= T_ad (dt = " +
                                  std::to_string(dt_) + ", T_ad = " +
                                  std::to_string(schedule_.duration()) + ")");
        }
        h0_spectrum_ = eigendecompose(h0_.matrix());
        ht_spectrum_ = eigendecompose(ht_.matrix());
    }

    /// Initial state taken as the (numerically computed) ground state of H0.
    static AdiabaticProblem with_ground_start(PauliOperator h0, PauliOperator ht, Schedule schedule,
                                              double dt, Integrator integrator = Integrator::Midpoint) {
        PureState psi0 = ground_state(h0.matrix());
        return {std::move(h0), std::move(ht), std::move(schedule), dt, std::move(psi0), integrator};
    }

    [[nodiscard]] const PauliOperator &h0() const { return h0_; }
    [[nodiscard]] const PauliOperator &ht() const { return ht_; }
    [[nodiscard]] const Schedule &schedule() const { return schedule_; }
    [[nodiscard]] double duration() const { return schedule_.duration(); }
    [[nodiscard]] double dt() const { return dt_; }
    [[nodiscard]] const PureState &initial_state() const { return initial_; }
    [[nodiscard]] Integrator integrator() const { return integrator_; }
    [[nodiscard]] const Spectrum &h0_spectrum() const { return h0_spectrum_; }
    [[nodiscard]] const Spectrum &target_spectrum() const { return ht_spectrum_; }
    [[nodiscard]] Eigen::Index dim() const { return h0_.dim(); }

    /// Number of integrator steps; the actual step is T_ad / steps() <= dt.
    [[nodiscard]] std::size_t steps() const {
        const double n = std::ceil(duration() / dt_ - 1e-9);
        return static_cast<std::size_t>(std::max(1.0, n));
    }
    [[nodiscard]] double step() const { return duration() / static_cast<double>(steps()); }

    [[nodiscard]] AdiabaticProblem with_duration(double duration) const {
        AdiabaticProblem p = *this;
        p.schedule_ = schedule_.with_duration(duration);
        if (p.dt_ > duration) {
            throw InvalidArgument("AdiabaticProblem: dt exceeds the new duration");
        }
        return p;
    }

    [[nodiscard]] AdiabaticProblem with_integrator(Integrator integrator) const {
        AdiabaticProblem p = *this;
        p.integrator_ = integrator;
        return p;
    }

  private:
    PauliOperator h0_;
    PauliOperator ht_;
    Schedule schedule_;
    double dt_;
    PureState initial_;
    Integrator integrator_;
    Spectrum h0_spectrum_;
    Spectrum ht_spectrum_;
};

struct SweepResult {
    PureState final_state;
    double infidelity = 0.0;
    std::size_t step_count = 0;
};

/// H(s) = (1 - s) H0 + s HT.
inline Matrix interpolated_hamiltonian(const AdiabaticProblem &problem, double s) {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw InvalidArgument("interpolated_hamiltonian: s = " + std::to_string(s) +
                              " outside [0, 1]");
    }
    return (1.0 - s) * problem.h0().matrix() + s * problem.ht().matrix();
}

/// 1 - |<E_0|state>|^2; requires a non-degenerate ground level.
inline double infidelity(const PureState &state, const Spectrum &spectrum) {
    if (state.dim() != spectrum.dim()) {
        throw DimensionMismatch("infidelity: state and spectrum dimensions differ");
    }
    if (!spectrum.ground_nondegenerate()) {
        throw DegenerateSpectrum("infidelity: degenerate ground space; the overlap with a single "
                                 "ground vector is ill-defined (project onto the ground block "
                                 "with degenerate_dephase instead)");
    }
    const double overlap = std::norm(spectrum.vectors.col(0).dot(state.amplitudes()));
    return std::clamp(1.0 - overlap, 0.0, 1.0);
}

namespace detail {

enum class SweepDirection { Forward, Backward };

// Schedule parameters of each step in application order. Midpoint rule uses
// the step midpoint, Euler the left end of the step.
inline std::vector<double> step_parameters(const AdiabaticProblem &p, SweepDirection dir) {
    const std::size_t n = p.steps();
    const double h = p.step();
    const double T = p.duration();
    const double offset = p.integrator() == Integrator::Midpoint ? 0.5 : 0.0;
    std::vector<double> s(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = (static_cast<double>(k) + offset) * h;
        s[k] = p.schedule().at(dir == SweepDirection::Forward ? t : T - t);
    }
    return s;
}

// Applies prod_k exp(-i sign H(s_k) h) to psi, in order of `s_values`.
inline Vector propagate(const AdiabaticProblem &p, Vector psi, const std::vector<double> &s_values,
                        double sign) {
    const double h = p.step();
    if (p.integrator() == Integrator::Euler) {
        const Matrix &a = p.h0().matrix();
        const Matrix &b = p.ht().matrix();
        const Complex factor(0.0, -sign * h);
        for (double s : s_values) {
            Vector hpsi = (1.0 - s) * (a * psi) + s * (b * psi);
            psi += factor * hpsi;
            psi /= psi.norm();
        }
    } else if (p.h0().is_real() && p.ht().is_real()) {
        const RealMatrix a = p.h0().matrix().real();
        const RealMatrix b = p.ht().matrix().real();
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(a.rows());
        RealMatrix hs(a.rows(), a.cols());
        RealVector re(psi.size()), im(psi.size());
        for (double s : s_values) {
            hs.noalias() = (1.0 - s) * a + s * b;
            es.compute(hs);
            const RealMatrix &v = es.eigenvectors();
            re.noalias() = v.transpose() * psi.real();
            im.noalias() = v.transpose() * psi.imag();
            for (Eigen::Index j = 0; j < psi.size(); ++j) {
                const Complex phase = std::polar(1.0, -sign * es.eigenvalues()(j) * h);
                const Complex c = phase * Complex(re(j), im(j));
                re(j) = c.real();
                im(j) = c.imag();
            }
            psi.real() = v * re;
            psi.imag() = v * im;
        }
    } else {
        const Matrix &a = p.h0().matrix();
        const Matrix &b = p.ht().matrix();
        Eigen::SelfAdjointEigenSolver<Matrix> es(a.rows());
        Matrix hs(a.rows(), a.cols());
        Vector tmp(psi.size());
        for (double s : s_values) {
            hs.noalias() = (1.0 - s) * a + s * b;
            es.compute(hs);
            const Matrix &v = es.eigenvectors();
            tmp.noalias() = v.adjoint() * psi;
            for (Eigen::Index j = 0; j < psi.size(); ++j) {
                tmp(j) *= std::polar(1.0, -sign * es.eigenvalues()(j) * h);
            }
            psi.noalias() = v * tmp;
        }
    }
    if (!psi.allFinite()) {
        throw NumericalError("integrator produced non-finite amplitudes (dt = " +
                             std::to_string(p.dt()) + " too large?)");
    }
    return psi;
}

} // namespace detail

/// Largest accepted |norm - 1| of a sweep output before renormalization.
inline constexpr double kSweepNormTolerance = 1e-8;

namespace detail {

inline PureState sweep_output(Vector psi, const char *what) {
    const double drift = std::abs(psi.norm() - 1.0);
    if (drift > kSweepNormTolerance) {
        throw NumericalError(std::string(what) + ": norm drift " + std::to_string(drift) +
                             " exceeds " + std::to_string(kSweepNormTolerance));
    }
    return PureState::normalized(std::move(psi));
}

} // namespace detail

/// Forward sweep from the initial state; infidelity against the ground state
/// of HT.
inline SweepResult evolve_forward(const AdiabaticProblem &problem) {
    const Spectrum &h0s = problem.h0_spectrum();
    const double e0 = expectation(problem.h0().matrix(), problem.initial_state());
    if (std::abs(e0 - h0s.ground_energy()) > 1e-8 * std::max(1.0, std::abs(h0s.ground_energy()))) {
        throw InvalidArgument("evolve_forward: initial state is not a ground state of H0 (<H0> = " +
                              std::to_string(e0) + ", E0 = " + std::to_string(h0s.ground_energy()) +
                              ")");
    }
    const auto s = detail::step_parameters(problem, detail::SweepDirection::Forward);
    Vector psi = detail::propagate(problem, problem.initial_state().amplitudes(), s, 1.0);
    SweepResult r{detail::sweep_output(std::move(psi), "evolve_forward"), 0.0, s.size()};
    r.infidelity = infidelity(r.final_state, problem.target_spectrum());
    return r;
}

/// Backward sweep U_bwd (schedule s(T_ad - t), positive time) applied to
/// `start`; infidelity against the ground state of H0.
inline SweepResult evolve_backward(const AdiabaticProblem &problem, const PureState &start) {
    if (start.dim() != problem.dim()) {
        throw DimensionMismatch("evolve_backward: start state dimension mismatch");
    }
    const auto s = detail::step_parameters(problem, detail::SweepDirection::Backward);
    Vector psi = detail::propagate(problem, start.amplitudes(), s, 1.0);
    SweepResult r{detail::sweep_output(std::move(psi), "evolve_backward"), 0.0, s.size()};
    r.infidelity = infidelity(r.final_state, problem.h0_spectrum());
    return r;
}

/// U_bwd^dagger |psi0>, the state whose projector is sigma_ad. Its infidelity
/// against the ground state of HT equals 1 - |<psi0|U_bwd|E_0>|^2.
inline SweepResult evolve_backward_adjoint(const AdiabaticProblem &problem) {
    auto s = detail::step_parameters(problem, detail::SweepDirection::Backward);
    std::reverse(s.begin(), s.end());
    Vector phi = detail::propagate(problem, problem.initial_state().amplitudes(), s, -1.0);
    SweepResult r{detail::sweep_output(std::move(phi), "evolve_backward_adjoint"), 0.0, s.size()};
    r.infidelity = infidelity(r.final_state, problem.target_spectrum());
    return r;
}

} // namespace aev
