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

#include <array>
#include <cmath>

#include <gtest/gtest.h>

#include "aev/models.hpp"
#include "oracles.hpp"

namespace {

using aev::Complex;
using aev::Matrix;
using aev::ModelSpec;

// Diagonal of the default five-site target, enumerated independently
// (index = basis state, qubit 0 most significant, z = +1 for bit 0).
constexpr std::array<double, 32> kFiveSiteDiagonal = {
    -3,   -1.4, 0.6,  -1.8, 0.6,  2.2,  0.2,  -2.2, 0.6,  2.2,  4.2,  1.8,  0.2,  1.8,  -0.2, -2.6,
    -1.4, 0.2,  2.2,  -0.2, 2.2,  3.8,  1.8,  -0.6, -1.8, -0.2, 1.8,  -0.6, -2.2, -0.6, -2.6, -5};

TEST(IsingPair, FiveSiteDiagonalIsFrozen) {
    const auto ht = aev::ising_pair(ModelSpec{}).second.matrix();
    ASSERT_EQ(ht.rows(), 32);
    EXPECT_TRUE(ht.isDiagonal(0.0));
    for (Eigen::Index b = 0; b < 32; ++b) {
        EXPECT_NEAR(ht(b, b).real(), kFiveSiteDiagonal[static_cast<std::size_t>(b)], 1e-14) << b;
    }
    EXPECT_DOUBLE_EQ(ht(0, 0).real(), -3.0);
    EXPECT_DOUBLE_EQ(ht(31, 31).real(), -5.0);
}

TEST(IsingPair, MatchesClassicalEnergyOracle) {
    for (int n = 2; n <= 6; ++n) {
        for (bool periodic : {false, true}) {
            if (periodic && n < 3) {
                continue;
            }
            ModelSpec spec;
            spec.n = n;
            spec.hz = 0.37;
            spec.coupling = 0.8;
            spec.periodic = periodic;
            const Matrix ht = aev::ising_pair(spec).second.matrix();
            EXPECT_TRUE(ht.isDiagonal(0.0));
            for (unsigned b = 0; b < (1U << n); ++b) {
                EXPECT_NEAR(ht(b, b).real(), oracle::classical_ising_energy(b, n, 0.37, 0.8, periodic), 1e-13)
                    << "n " << n << " periodic " << periodic << " state " << b;
            }
        }
    }
}

TEST(IsingPair, TwoSiteEnumeration) {
    ModelSpec spec;
    spec.n = 2;
    const auto ht = aev::ising_pair(spec).second.matrix();
    const std::array<double, 4> expected = {-0.6, 1.0, 1.0, -1.4};
    for (Eigen::Index b = 0; b < 4; ++b) {
        EXPECT_NEAR(ht(b, b).real(), expected[static_cast<std::size_t>(b)], 1e-15);
    }
}

TEST(IsingPair, TransverseStartAndGroundState) {
    for (int n = 2; n <= 6; ++n) {
        ModelSpec spec;
        spec.n = n;
        const auto h0 = aev::ising_pair(spec).first;
        const auto s = aev::eigendecompose(h0.matrix());
        EXPECT_NEAR(s.ground_energy(), -n, 1e-12);
        EXPECT_TRUE(s.ground_nondegenerate());
        const auto psi = aev::initial_state(spec, h0);
        EXPECT_NEAR(aev::expectation(h0.matrix(), psi), -n, 1e-12);
        EXPECT_LT((h0.matrix() * psi.amplitudes() + n * psi.amplitudes()).norm(), 1e-12);
        // Product of |-> states: alternating signs.
        oracle::Vector minus(2);
        minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
        oracle::Vector product = minus;
        for (int q = 1; q < n; ++q) {
            product = Eigen::kroneckerProduct(product, minus).eval();
        }
        EXPECT_LT((product - psi.amplitudes()).norm(), 1e-14);
    }
}

TEST(IsingPair, RejectsInvalidSpecs) {
    ModelSpec one;
    one.n = 1;
    EXPECT_THROW(aev::ising_pair(one), aev::InvalidArgument);
    ModelSpec ring;
    ring.n = 2;
    ring.periodic = true;
    EXPECT_THROW(aev::ising_pair(ring), aev::InvalidArgument);
    ModelSpec bad_field;
    bad_field.hz = std::nan("");
    EXPECT_THROW(aev::ising_pair(bad_field), aev::InvalidArgument);
    ModelSpec big;
    big.n = 40;
    EXPECT_THROW(aev::ising_pair(big), aev::SizeError);
    ModelSpec custom;
    custom.kind = ModelSpec::Kind::Custom;
    custom.n = 2;
    EXPECT_THROW(aev::ising_pair(custom), aev::InvalidArgument);
}

TEST(IsingPair, CustomModel) {
    ModelSpec spec;
    spec.kind = ModelSpec::Kind::Custom;
    spec.n = 2;
    spec.custom_h0 = "X1 + X2";
    spec.custom_ht = "0.5*Z1Z2 - 0.1*Z1";
    const auto [h0, ht] = aev::ising_pair(spec);
    EXPECT_LT((ht.matrix() - (0.5 * oracle::pauli_string("ZZ") - 0.1 * oracle::pauli_string("ZI"))).norm(), 1e-15);
    EXPECT_NEAR(aev::expectation(h0.matrix(), aev::initial_state(spec, h0)), -2.0, 1e-12);
    EXPECT_EQ(aev::model_kind_from_string("ising-lz"), ModelSpec::Kind::IsingLz);
    EXPECT_EQ(aev::to_string(ModelSpec::Kind::Custom), "custom");
    EXPECT_THROW(aev::model_kind_from_string("heisenberg"), aev::InvalidArgument);
}

TEST(Reflection, ExamplesAndAlgebra) {
    const auto ht = aev::ising_pair(ModelSpec{}).second;
    const auto s = aev::eigendecompose(ht.matrix());
    const Matrix o = aev::reflection_observable(s);
    const Eigen::Index d = s.dim();
    EXPECT_TRUE(aev::is_hermitian(o, 0.0));
    EXPECT_TRUE(aev::is_unitary(o));
    EXPECT_LT((o * o - Matrix::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((o * s.eigenvector(0) + s.eigenvector(0)).norm(), 1e-14);
    for (Eigen::Index j = 1; j < d; ++j) {
        EXPECT_LT((o * s.eigenvector(j) - s.eigenvector(j)).norm(), 1e-13) << j;
    }
    EXPECT_NEAR(o.trace().real(), static_cast<double>(d - 2), 1e-12);
    EXPECT_NEAR(s.eigenvector(0).dot(o * s.eigenvector(0)).real(), -1.0, 1e-14);
    EXPECT_THROW(aev::reflection_observable(aev::eigendecompose(oracle::pauli_string("IZ"))), aev::DegenerateSpectrum);
}

TEST(Magnetization, SpectrumAndExamples) {
    for (int n = 1; n <= 5; ++n) {
        const Matrix m = aev::magnetization(n).matrix();
        const auto s = aev::eigendecompose(m);
        EXPECT_NEAR(s.energies.minCoeff(), -n, 1e-14);
        EXPECT_NEAR(s.energies.maxCoeff(), n, 1e-14);
        EXPECT_NEAR(aev::operator_norm(m), n, 1e-14);
        EXPECT_NEAR(m.trace().real(), 0.0, 1e-14);
        for (const auto &[start, size] : s.blocks) {
            EXPECT_NEAR(std::fmod(s.energies(start) + n, 2.0), 0.0, 1e-12);
            EXPECT_GE(size, 1);
        }
        EXPECT_EQ(s.blocks.size(), static_cast<std::size_t>(n + 1));
        EXPECT_DOUBLE_EQ(m(0, 0).real(), n);
    }
    EXPECT_THROW(aev::magnetization(0), aev::InvalidArgument);
    // The default target's ground state is all spins down: M = -5 there.
    const auto s = aev::eigendecompose(aev::ising_pair(ModelSpec{}).second.matrix());
    EXPECT_NEAR(aev::expectation(aev::magnetization(5).matrix(), aev::PureState::normalized(s.eigenvector(0))), -5.0,
                1e-14);
}

} // namespace
