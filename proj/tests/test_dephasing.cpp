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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "aev/adiabatic.hpp"
#include "aev/dephasing.hpp"
#include "aev/models.hpp"
#include "aev/pauli_text.hpp"
#include "oracles.hpp"

namespace {

using aev::Complex;
using aev::DensityMatrix;
using aev::Matrix;
using aev::RandomTimeDistribution;
using aev::Spectrum;

constexpr std::uint64_t kSeed = 20261017;

Spectrum spectrum_of(const char *text, int n) {
    return aev::eigendecompose(aev::PauliOperator(n, aev::parse_pauli_sum(text, n)).matrix());
}

// Nondegenerate 2-qubit target with incommensurate gaps.
Spectrum generic_spectrum() { return spectrum_of("0.7*Z1 - 0.31*Z2 - Z1Z2 + 0.2*X1 + 0.15*Y2", 2); }

// rho_ad of the default Ising sweep at T_ad = 40.
DensityMatrix ising_rho_ad(Spectrum *target) {
    aev::ModelSpec spec;
    auto [h0, ht] = aev::ising_pair(spec);
    const aev::AdiabaticProblem p(h0, ht, aev::Schedule::linear(40.0), 0.01, aev::initial_state(spec, h0));
    *target = p.target_spectrum();
    return DensityMatrix::from_pure(aev::evolve_forward(p).final_state);
}

double max_abs(const Matrix &m) { return m.cwiseAbs().maxCoeff(); }

TEST(Distribution, DensityExamples) {
    const double t_d = 7.0;
    const auto bump = RandomTimeDistribution::bump(t_d);
    const double n = 1.0 / oracle::bump_mass();
    EXPECT_EQ(bump.density(0.0), 0.0);
    EXPECT_EQ(bump.density(t_d), 0.0);
    EXPECT_EQ(bump.density(-1.0), 0.0);
    EXPECT_EQ(bump.density(t_d + 1.0), 0.0);
    EXPECT_NEAR(bump.density(t_d / 2), 2.0 * n / t_d * std::exp(-1.0), 1e-12);
    EXPECT_NEAR(bump.density(1.3), oracle::bump_density(1.3, t_d), 1e-12);
    const auto uni = RandomTimeDistribution::uniform(t_d);
    EXPECT_DOUBLE_EQ(uni.density(t_d / 2), 1.0 / t_d);
    EXPECT_EQ(uni.density(t_d * 1.01), 0.0);
    EXPECT_THROW(RandomTimeDistribution::bump(0.0), aev::InvalidArgument);
    EXPECT_THROW(RandomTimeDistribution::uniform(-1.0), aev::InvalidArgument);
    EXPECT_THROW((void)RandomTimeDistribution::ideal().density(1.0), aev::InvalidArgument);
}

TEST(Distribution, DensitiesIntegrateToOne) {
    for (double t_d : {0.5, 10.0, 300.0}) {
        for (const auto &dist : {RandomTimeDistribution::bump(t_d), RandomTimeDistribution::uniform(t_d)}) {
            const double mass = oracle::trapezoid([&](double t) { return dist.density(t); }, 0.0, t_d, 20000);
            // The trapezoid rule is exact up to the jump of the uniform density at the ends.
            EXPECT_NEAR(mass, 1.0, 1e-8) << aev::to_string(dist.kind()) << " T_d=" << t_d;
        }
    }
}

TEST(Distribution, BumpNormalizationMatchesIndependentQuadrature) {
    // Mass of exp(-1/(1-x^2)) on (-1, 1), frozen from an independent adaptive quadrature.
    EXPECT_NEAR(aev::bump_integral(), 0.4439938161680793, 1e-12);
    EXPECT_NEAR(aev::bump_normalization(), 2.2522836210435817, 1e-11);
    EXPECT_NEAR(aev::bump_integral(), oracle::bump_mass(), 1e-12);
}

TEST(Fourier, ZeroGapIsOne) {
    for (const auto &dist : {RandomTimeDistribution::bump(3.0), RandomTimeDistribution::uniform(3.0),
                             RandomTimeDistribution::none(), RandomTimeDistribution::ideal()}) {
        const Complex f = dist.fourier(0.0);
        EXPECT_NEAR(f.real(), 1.0, 1e-10) << aev::to_string(dist.kind());
        EXPECT_NEAR(f.imag(), 0.0, 1e-10) << aev::to_string(dist.kind());
    }
}

TEST(Fourier, UniformSincZero) {
    const double t_d = 4.0;
    EXPECT_LT(std::abs(RandomTimeDistribution::uniform(t_d).fourier(2.0 * std::numbers::pi / t_d)), 1e-9);
}

TEST(Fourier, UniformClosedFormMatchesQuadrature) {
    const auto uni = RandomTimeDistribution::uniform(6.0);
    for (double gap : {-3.0, -0.2, 0.01, 0.7, 2.5, 11.0}) {
        EXPECT_LT(std::abs(uni.fourier(gap) - uni.fourier_quadrature(gap)), 1e-9) << gap;
    }
}

TEST(Fourier, BumpMatchesTrapezoidOracle) {
    for (double t_d : {1.0, 10.0, 40.0}) {
        const auto bump = RandomTimeDistribution::bump(t_d);
        for (double gap : {0.05, 0.4, 1.0, 2.0, 3.7}) {
            EXPECT_LT(std::abs(bump.fourier(gap) - oracle::bump_fourier(gap, t_d)), 1e-10)
                << "T_d=" << t_d << " gap=" << gap;
        }
    }
}

TEST(Fourier, ConjugateSymmetry) {
    for (const auto &dist : {RandomTimeDistribution::bump(5.0), RandomTimeDistribution::uniform(5.0)}) {
        for (double gap : {0.3, 1.7, 9.0}) {
            EXPECT_LT(std::abs(dist.fourier(-gap) - std::conj(dist.fourier(gap))), 1e-10);
        }
    }
}

TEST(Fourier, BumpBelowEnvelopeAtTen) {
    const double t_d = 5.0, gap = 2.0;
    const double f = std::abs(RandomTimeDistribution::bump(t_d).fourier(gap));
    EXPECT_LT(f, aev::bump_delta_bound(t_d, gap));
    // Regression value from an independent adaptive quadrature of the normalized density.
    EXPECT_NEAR(f, 0.0004780470058555355, 1e-10);
}

TEST(FourierMatrix, StructuralInvariants) {
    const auto s = spectrum_of("0.2*Z1 + 0.2*Z2 + 0.2*Z3 - Z1Z2 - Z2Z3 + 0.3*X2", 3);
    for (const auto &dist : {RandomTimeDistribution::bump(4.0), RandomTimeDistribution::uniform(2.5)}) {
        const auto f = aev::fourier_matrix(dist, s);
        for (Eigen::Index j = 0; j < s.dim(); ++j) {
            EXPECT_EQ(f.entries(j, j), Complex(1.0));
            for (Eigen::Index k = 0; k < s.dim(); ++k) {
                EXPECT_LT(std::abs(f.entries(k, j) - std::conj(f.entries(j, k))), 1e-14);
                EXPECT_LE(std::abs(f.entries(j, k)), 1.0 + 1e-12);
                EXPECT_LT(std::abs(f.entries(j, k) - dist.fourier(s.energies(j) - s.energies(k))), 1e-10);
            }
        }
        double delta = 0.0;
        for (Eigen::Index j = 1; j < s.dim(); ++j) {
            delta = std::max(delta, std::abs(f.entries(0, j)));
        }
        EXPECT_DOUBLE_EQ(f.delta, delta);
    }
}

TEST(FourierMatrix, LimitingPatterns) {
    const auto s = spectrum_of("Z1 + Z2", 2);
    EXPECT_EQ(aev::fourier_matrix(RandomTimeDistribution::none(), s).entries, Matrix::Ones(4, 4));
    const auto ideal = aev::fourier_matrix(RandomTimeDistribution::ideal(), s);
    for (Eigen::Index j = 0; j < 4; ++j) {
        for (Eigen::Index k = 0; k < 4; ++k) {
            EXPECT_EQ(ideal.entries(j, k), Complex(s.same_block(j, k) ? 1.0 : 0.0));
        }
    }
    EXPECT_EQ(ideal.delta, 0.0);
    EXPECT_EQ(aev::fourier_matrix(RandomTimeDistribution::none(), s).delta, 1.0);
}

TEST(FourierMatrix, IsingDeltaMatchesPerGapOracle) {
    aev::ModelSpec spec;
    const auto ht = aev::ising_pair(spec).second;
    const auto s = aev::eigendecompose(ht.matrix());
    const auto f = aev::fourier_matrix(RandomTimeDistribution::bump(10.0), s);
    double delta = 0.0;
    for (Eigen::Index j = 1; j < s.dim(); ++j) {
        const double gap = s.energies(0) - s.energies(j);
        delta = std::max(delta, s.same_block(0, j) ? 1.0 : std::abs(oracle::bump_fourier(gap, 10.0)));
    }
    EXPECT_NEAR(f.delta, delta, 1e-10);
}

TEST(IdealDephase, Examples) {
    const auto z = spectrum_of("Z1", 1);
    Matrix plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    EXPECT_LT(max_abs(aev::ideal_dephase(DensityMatrix(plus), z).matrix() - Matrix::Identity(2, 2) / 2.0), 1e-15);

    const auto s = generic_spectrum();
    std::mt19937_64 rng(31);
    const Matrix rho = oracle::random_density(4, rng);
    const Matrix diag_in_basis = s.from_eigenbasis(Matrix(s.to_eigenbasis(rho).diagonal().asDiagonal()));
    const DensityMatrix d(0.5 * (diag_in_basis + diag_in_basis.adjoint()));
    EXPECT_LT(max_abs(aev::ideal_dephase(d, s).matrix() - d.matrix()), 1e-12);

    const auto out = aev::ideal_dephase(DensityMatrix(rho), s);
    const Matrix eig = s.to_eigenbasis(out.matrix());
    EXPECT_LT(max_abs(eig - Matrix(eig.diagonal().asDiagonal())), 1e-13);
    EXPECT_LT(max_abs(eig.diagonal() - s.to_eigenbasis(rho).diagonal()), 1e-13);
    EXPECT_LT(std::abs(out.matrix().trace() - rho.trace()), 1e-14);
    EXPECT_LT(max_abs(oracle::ideal_channel(s.reconstruct(), rho) - out.matrix()), 1e-12);

    EXPECT_THROW(aev::ideal_dephase(DensityMatrix(plus), spectrum_of("0*Z1", 1)), aev::DegenerateSpectrum);
    EXPECT_THROW(aev::ideal_dephase(DensityMatrix(rho), z), aev::DimensionMismatch);
}

TEST(IdealDephase, IsingStateKeepsDiagonalAndLosesPurity) {
    // The Ising target has degenerate levels, so the block projection is the
    // applicable channel.
    Spectrum s;
    const DensityMatrix rho = ising_rho_ad(&s);
    ASSERT_FALSE(s.nondegenerate());
    EXPECT_THROW(aev::ideal_dephase(rho, s), aev::DegenerateSpectrum);
    const auto out = aev::degenerate_dephase(rho, s);
    EXPECT_LT(max_abs(s.to_eigenbasis(out.matrix()).diagonal() - s.to_eigenbasis(rho.matrix()).diagonal()), 1e-12);
    EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_LT(out.purity(), rho.purity());
}

TEST(IdealDephase, IdempotentAndCommutesWithEvolution) {
    const auto s = generic_spectrum();
    const Matrix h = s.reconstruct();
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 5; ++trial) {
        const DensityMatrix rho(oracle::random_density(4, rng));
        const auto once = aev::ideal_dephase(rho, s);
        EXPECT_LT(max_abs(aev::ideal_dephase(once, s).matrix() - once.matrix()), 1e-12);
        for (double t : {0.3, 4.1}) {
            const Matrix u = (Complex(0.0, -t) * h).exp();
            const DensityMatrix evolved(u * rho.matrix() * u.adjoint());
            const Matrix lhs = aev::ideal_dephase(evolved, s).matrix();
            const Matrix rhs = u * once.matrix() * u.adjoint();
            EXPECT_LT(max_abs(lhs - rhs), 1e-10);
        }
    }
}

TEST(DegenerateDephase, BlockProjection) {
    const auto generic = generic_spectrum();
    std::mt19937_64 rng(33);
    const DensityMatrix rho(oracle::random_density(4, rng));
    EXPECT_LT(max_abs(aev::degenerate_dephase(rho, generic).matrix() - aev::ideal_dephase(rho, generic).matrix()),
              1e-14);

    // Z x I: hand-built projectors onto the +1 (|00>, |01>) and -1 (|10>, |11>) spaces.
    const auto zi = spectrum_of("Z1", 2);
    Matrix p_plus = Matrix::Zero(4, 4), p_minus = Matrix::Zero(4, 4);
    p_plus(0, 0) = p_plus(1, 1) = 1.0;
    p_minus(2, 2) = p_minus(3, 3) = 1.0;
    const Matrix expected = p_plus * rho.matrix() * p_plus + p_minus * rho.matrix() * p_minus;
    EXPECT_LT(max_abs(aev::degenerate_dephase(rho, zi).matrix() - expected), 1e-13);

    EXPECT_LT(max_abs(aev::degenerate_dephase(rho, spectrum_of("0*Z1", 2)).matrix() - rho.matrix()), 1e-13);
}

TEST(ApproxDephaseExact, LimitsAndOracle) {
    const auto s = generic_spectrum();
    std::mt19937_64 rng(34);
    const DensityMatrix rho(oracle::random_density(4, rng));
    const auto none = aev::fourier_matrix(RandomTimeDistribution::none(), s);
    EXPECT_LT(max_abs(aev::approx_dephase_exact(rho, none, s).matrix() - rho.matrix()), 1e-13);
    const auto ideal = aev::fourier_matrix(RandomTimeDistribution::ideal(), s);
    EXPECT_LT(max_abs(aev::approx_dephase_exact(rho, ideal, s).matrix() - aev::ideal_dephase(rho, s).matrix()),
              1e-14);

    // Direct time integral of exp(-iHt) rho exp(iHt) against the bump density.
    const double t_d = 3.0;
    const auto bump = aev::fourier_matrix(RandomTimeDistribution::bump(t_d), s);
    const Matrix expected = oracle::bump_channel(s.reconstruct(), rho.matrix(), t_d);
    const auto out = aev::approx_dephase_exact(rho, bump, s);
    EXPECT_LT(max_abs(out.matrix() - expected), 1e-9);
    EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_GE(aev::eigendecompose(out.matrix()).energies.minCoeff(), -1e-12);
}

// Choi matrix of the exact bump/uniform channel through the public API.
Matrix choi_matrix(const aev::FourierMatrix &f, const Spectrum &s) {
    return oracle::choi_by_polarization(s.dim(), [&](const aev::Vector &v) {
        return aev::approx_dephase_exact(DensityMatrix(v * v.adjoint()), f, s).matrix();
    });
}

TEST(ApproxDephaseExact, ChoiMatrixIsPositive) {
    const std::vector<Spectrum> spectra = {
        spectrum_of("0.3*Z1 + X1", 1), generic_spectrum(),
        spectrum_of("0.2*Z1 + 0.2*Z2 + 0.2*Z3 - Z1Z2 - Z2Z3", 3),
        spectrum_of("0.4*Z1 - 0.7*Z2 + 0.2*Z3 + 0.9*Z4 - Z1Z2 + 0.3*X3 + 0.1*Y1Y4", 4)};
    for (const auto &s : spectra) {
        for (const auto &dist : {RandomTimeDistribution::bump(2.0), RandomTimeDistribution::uniform(1.3),
                                 RandomTimeDistribution::ideal(), RandomTimeDistribution::none()}) {
            const Matrix choi = choi_matrix(aev::fourier_matrix(dist, s), s);
            ASSERT_TRUE(aev::is_hermitian(choi, 1e-12));
            const double min_eig = aev::eigendecompose(0.5 * (choi + choi.adjoint())).energies.minCoeff();
            EXPECT_GE(min_eig, -1e-9) << "dim " << s.dim() << " " << aev::to_string(dist.kind());
        }
    }
}

TEST(ApproxDephaseSampled, TrivialCases) {
    const auto s = generic_spectrum();
    std::mt19937_64 rng(35);
    const DensityMatrix rho(oracle::random_density(4, rng));
    EXPECT_LT(max_abs(aev::approx_dephase_sampled(rho, RandomTimeDistribution::none(), s, 1, 1).matrix() -
                      rho.matrix()),
              1e-14);
    EXPECT_LT(max_abs(aev::approx_dephase_sampled(rho, RandomTimeDistribution::none(), s, 500, 9).matrix() -
                      rho.matrix()),
              1e-13);
    const auto a = aev::approx_dephase_sampled(rho, RandomTimeDistribution::bump(2.0), s, 300, 77);
    const auto b = aev::approx_dephase_sampled(rho, RandomTimeDistribution::bump(2.0), s, 300, 77);
    EXPECT_EQ(a.matrix(), b.matrix());
    EXPECT_TRUE(aev::is_hermitian(a.matrix(), 0.0));
    EXPECT_NEAR(a.matrix().trace().real(), 1.0, 1e-13);
    EXPECT_THROW(aev::approx_dephase_sampled(rho, RandomTimeDistribution::bump(2.0), s, 0, 1), aev::InvalidArgument);
}

// |mean - exact| <= 3 SE for real and imaginary parts of every eigenbasis entry.
int count_outliers(const aev::SampledDephasing &sampled, const Matrix &exact_eig) {
    int outliers = 0;
    for (Eigen::Index j = 0; j < exact_eig.rows(); ++j) {
        for (Eigen::Index k = 0; k < exact_eig.cols(); ++k) {
            const Complex diff = sampled.eigenbasis_mean(j, k) - exact_eig(j, k);
            const Complex se = sampled.eigenbasis_std_error(j, k);
            outliers += std::abs(diff.real()) > 3.0 * se.real() + 1e-12;
            outliers += std::abs(diff.imag()) > 3.0 * se.imag() + 1e-12;
        }
    }
    return outliers;
}

TEST(ApproxDephaseSampled, AgreesWithExactOnIsingState) {
    Spectrum s;
    const DensityMatrix rho = ising_rho_ad(&s);
    const auto dist = RandomTimeDistribution::bump(10.0);
    const auto f = aev::fourier_matrix(dist, s);
    const Matrix exact = s.to_eigenbasis(rho.matrix()).cwiseProduct(f.entries);
    const auto sampled = aev::approx_dephase_sampled_detailed(rho, dist, s, 100000, kSeed);
    EXPECT_EQ(count_outliers(sampled, exact), 0);
}

TEST(ApproxDephaseSampled, AgreesWithExactForAllKinds) {
    const auto s = generic_spectrum();
    std::mt19937_64 rng(36);
    const DensityMatrix rho(oracle::random_density(4, rng));
    for (const auto &dist : {RandomTimeDistribution::bump(3.0), RandomTimeDistribution::uniform(3.0),
                             RandomTimeDistribution::none(), RandomTimeDistribution::ideal()}) {
        const Matrix exact = s.to_eigenbasis(rho.matrix()).cwiseProduct(aev::fourier_matrix(dist, s).entries);
        const auto sampled = aev::approx_dephase_sampled_detailed(rho, dist, s, 20000, kSeed);
        EXPECT_EQ(count_outliers(sampled, exact), 0) << aev::to_string(dist.kind());
    }
}

TEST(ApproxDephaseSampled, ErrorScalesAsInverseSquareRoot) {
    const auto s = generic_spectrum();
    std::mt19937_64 rng(37);
    const DensityMatrix rho(oracle::random_density(4, rng));
    const auto dist = RandomTimeDistribution::bump(3.0);
    const Matrix exact = aev::approx_dephase_exact(rho, aev::fourier_matrix(dist, s), s).matrix();
    const std::vector<std::size_t> counts = {100, 1000, 10000};
    std::vector<double> log_err(counts.size(), 0.0);
    const int seeds = 30;
    for (int seed = 0; seed < seeds; ++seed) {
        for (std::size_t i = 0; i < counts.size(); ++i) {
            const auto out = aev::approx_dephase_sampled(rho, dist, s, counts[i], kSeed + static_cast<unsigned>(seed));
            log_err[i] += std::log((out.matrix() - exact).norm()) / seeds;
        }
    }
    const double slope = (log_err.back() - log_err.front()) / (std::log(1e4) - std::log(1e2));
    EXPECT_NEAR(slope, -0.5, 0.15);
}

TEST(Sampler, BumpSamplesFollowDensity) {
    const double t_d = 8.0;
    const auto bump = RandomTimeDistribution::bump(t_d);
    std::mt19937_64 rng(kSeed);
    const int n = 200000;
    double sum = 0.0;
    int low = 0;
    for (int i = 0; i < n; ++i) {
        const double tau = bump.sample(rng);
        ASSERT_GT(tau, 0.0);
        ASSERT_LT(tau, t_d);
        sum += tau;
        low += tau < t_d / 4;
    }
    const double p_low =
        oracle::trapezoid([&](double t) { return oracle::bump_density(t, t_d); }, 0.0, t_d / 4, 20000);
    EXPECT_NEAR(sum / n, t_d / 2, 4.0 * t_d * 0.2 / std::sqrt(n));
    EXPECT_NEAR(static_cast<double>(low) / n, p_low, 4.0 * std::sqrt(p_low * (1 - p_low) / n));
    EXPECT_THROW(RandomTimeDistribution::ideal().sample(rng), aev::InvalidArgument);
    EXPECT_EQ(RandomTimeDistribution::none().sample(rng), 0.0);
}

TEST(Envelope, Monotone) {
    for (double x = 0.05; x < 400.0; x *= 1.37) {
        EXPECT_LT(aev::bump_delta_bound(x * 2.0, 1.0), aev::bump_delta_bound(x, 1.0)) << x;
    }
    EXPECT_THROW(aev::bump_delta_bound(0.0, 1.0), aev::InvalidArgument);
    EXPECT_THROW(aev::bump_delta_bound(1.0, -2.0), aev::InvalidArgument);
}

TEST(Envelope, RegressionAtTen) {
    // sqrt(8 pi / sqrt(e)) 10^(-3/4) e^(-sqrt 5), evaluated independently.
    EXPECT_NEAR(aev::bump_delta_bound(10.0, 1.0), 0.07420519754537451, 1e-15);
    EXPECT_NEAR(aev::bump_delta_bound(2.5, 4.0), 0.07420519754537451, 1e-15);
}

TEST(DephasingTime, ScalesInverselyWithGap) {
    for (double delta : {1e-2, 1e-5}) {
        const double t1 = aev::required_dephasing_time(delta, 1.0);
        EXPECT_NEAR(aev::required_dephasing_time(delta, 0.5), 2.0 * t1, 1e-12 * t1);
    }
}

TEST(DephasingTime, GrowsAsLogSquared) {
    const double t3 = aev::required_dephasing_time(1e-3, 1.0);
    const double t6 = aev::required_dephasing_time(1e-6, 1.0);
    const double expected = std::pow(std::log(1e6) / std::log(1e3), 2);
    EXPECT_NEAR(t6 / t3, expected, 0.2 * expected);
}

TEST(DephasingTime, RoundTrip) {
    const double t = aev::required_dephasing_time(1e-4, 1.0);
    EXPECT_LE(aev::bump_delta_bound(t, 1.0), 1e-4);
    EXPECT_NEAR(aev::bump_delta_bound(t, 1.0), 1e-4, 1e-15);
    for (double delta : {0.3, 1e-2, 1e-8, 1e-12}) {
        for (double gap : {0.1, 3.0}) {
            const double back = aev::bump_delta_bound(aev::required_dephasing_time(delta, gap), gap);
            EXPECT_LE(back, 1.05 * delta);
            EXPECT_NEAR(back / delta, 1.0, 1e-9);
        }
    }
    EXPECT_THROW(aev::required_dephasing_time(0.0, 1.0), aev::InvalidArgument);
    EXPECT_THROW(aev::required_dephasing_time(1.0, 1.0), aev::InvalidArgument);
    EXPECT_THROW(aev::required_dephasing_time(0.1, 0.0), aev::InvalidArgument);
}

} // namespace
