// Copyright 2026 The Hardy Lab Authors
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

#include "hardy/hardy_state.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "hardy/errors.hpp"
#include "oracles.hpp"

using namespace hardy::state;
using hardy::linalg::Complex;

namespace {

TransformCoefficients to_lib(const oracle::Coeffs& c) { return {c.a, c.b}; }

void expect_amplitudes_match(const Statevector& got, const oracle::Vec& want, double tol) {
  ASSERT_EQ(got.dimension(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    EXPECT_NEAR(std::abs(got[i] - want[i]), 0.0, tol) << "index " << i;
  }
}

}  // namespace

TEST(TransformCoefficients, Validation) {
  EXPECT_THROW(TransformCoefficients::equal_real(1, 0.5), std::invalid_argument);
  EXPECT_THROW(TransformCoefficients({0.9, 0.9}, {0.9, 0.9}), std::invalid_argument);
  EXPECT_THROW(TransformCoefficients({0.6}, {0.8}), std::invalid_argument);
  EXPECT_THROW(TransformCoefficients({0.6, NAN}, {0.8, 0.8}), std::invalid_argument);
  const auto c = TransformCoefficients::equal_real(3, 0.9);
  EXPECT_NEAR(c.b(2).real(), std::sqrt(1 - 0.81), 1e-15);
  EXPECT_NEAR(c.a_omega_sq(), std::pow(0.9, 6), 1e-15);
  EXPECT_TRUE(c.is_nondegenerate());
}

TEST(TransformCoefficients, DegenerateRejectedForParadox) {
  const std::vector<double> a{1.0, 0.5};
  const auto c = TransformCoefficients::from_real(a);
  EXPECT_FALSE(c.is_nondegenerate());
  EXPECT_THROW(uv_amplitudes(c), hardy::DegenerateTransformError);
  EXPECT_THROW(normalization(TransformCoefficients::equal_real(2, 0.0)),
               hardy::DegenerateTransformError);
  // The non-paradox path still yields the product state.
  const auto p = product_state(TransformCoefficients::equal_real(2, 0.0));
  EXPECT_NEAR(std::norm(p[0]), 1.0, 1e-15);  // |v v>
}

TEST(TransformMatrices, UnitaryAndInverse) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = to_lib(oracle::random_coeffs(3, rng));
    for (std::size_t k = 1; k <= 3; ++k) {
      const auto [fwd, inv] = transform_matrices(c, k);
      const auto id = fwd * inv;
      EXPECT_NEAR(std::abs(id(0, 0) - 1.0), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(id(1, 1) - 1.0), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(id(0, 1)), 0.0, 1e-12);
      // Column c is (v, u) = (B, A); column d is (A*, -B*).
      EXPECT_NEAR(std::abs(fwd(0, 0) - c.b(k)), 0.0, 1e-15);
      EXPECT_NEAR(std::abs(fwd(1, 0) - c.a(k)), 0.0, 1e-15);
      EXPECT_NEAR(std::abs(fwd(0, 1) - std::conj(c.a(k))), 0.0, 1e-15);
      EXPECT_NEAR(std::abs(fwd(1, 1) + std::conj(c.b(k))), 0.0, 1e-15);
    }
  }
}

TEST(TransformMatrices, BalancedAndRotationCases) {
  const auto half = TransformCoefficients::equal_real(2, M_SQRT1_2);
  const auto [fwd, inv] = transform_matrices(half, 1);
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t col = 0; col < 2; ++col) EXPECT_NEAR(std::abs(fwd(r, col)), M_SQRT1_2, 1e-15);
  }
  // For real A the matrix is RY(theta) Z with theta = 2 asin A (0.713 pi at A = 0.9).
  const auto c = TransformCoefficients::equal_real(2, 0.9);
  const double theta = 2 * std::asin(0.9);
  EXPECT_NEAR(theta / M_PI, 0.713, 1e-3);
  const auto ryz = SingleQubitGate::ry(theta) * SingleQubitGate(1.0, 0.0, 0.0, -1.0);
  const auto m = transform_matrices(c, 2).first;
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t col = 0; col < 2; ++col) EXPECT_NEAR(std::abs(m(r, col) - ryz(r, col)), 0.0, 1e-15);
  }
}

TEST(HardyState, KnownUvAmplitudes) {
  const auto c = TransformCoefficients::equal_real(3, 0.9);
  const auto s = uv_amplitudes(c);
  EXPECT_NEAR(s.normalization(), 1.46088, 5e-5);
  EXPECT_NEAR(s.normalization(), 1 / std::sqrt(1 - std::pow(0.9, 6)), 1e-12);
  EXPECT_EQ(s.vector()[0b111], Complex(0.0));
  const double b = std::sqrt(1 - 0.81);
  EXPECT_NEAR(s.vector()[0b000].real(), 0.12100, 5e-5);
  EXPECT_NEAR(s.vector()[0b000].real(), s.normalization() * b * b * b, 1e-12);
  // N A^2 B = 0.515798...
  EXPECT_NEAR(s.vector()[0b110].real(), 0.5158, 5e-4);
  EXPECT_NEAR(s.vector()[0b110].real(), s.normalization() * 0.81 * b, 1e-12);
  EXPECT_TRUE(s.vector().is_normalized());
}

TEST(HardyState, KnownMixedAndCdValues) {
  const auto c = TransformCoefficients::equal_real(3, 0.9);
  const auto m = mixed_amplitudes(c, 2);
  EXPECT_NEAR(m.probability(0b111), 0.2155, 5e-4);
  EXPECT_LE(m.probability(0b011), 1e-30);
  const auto d = cd_amplitudes(c);
  EXPECT_NEAR(d.probability(0), 1 - std::pow(0.9, 6), 1e-12);
  double nonlocal = 0;
  for (std::size_t i = 0; i < 8; ++i) {
    if (__builtin_popcountll(i) >= 2) nonlocal += d.probability(i);
  }
  EXPECT_NEAR(nonlocal, 0.107, 5e-4);
}

TEST(HardyState, SeparableLimit) {
  const auto d = cd_amplitudes(TransformCoefficients::equal_real(3, 1e-6));
  EXPECT_NEAR(d.probability(0), 1.0, 1e-6);
}

// Every frame agrees with the state built from its definition and measured
// by explicit projection.
TEST(HardyState, FramesMatchDefinitionOracle) {
  std::mt19937_64 rng(99);
  for (std::size_t n = 2; n <= 7; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto oc = oracle::random_coeffs(n, rng);
      const auto c = to_lib(oc);
      expect_amplitudes_match(uv_amplitudes(c).vector(), oracle::psi_uv(oc), 1e-12);
      expect_amplitudes_match(cd_amplitudes(c).vector(), oracle::psi_cd(oc), 1e-12);
      for (std::size_t k = 1; k <= n; ++k) {
        expect_amplitudes_match(mixed_amplitudes(c, k).vector(), oracle::psi_mixed(oc, k), 1e-12);
      }
    }
  }
}

// Rotating the c/d table site by site with the transform matrices recovers the u/v table.
TEST(HardyState, FrameChangeConsistency) {
  std::mt19937_64 rng(5);
  for (std::size_t n = 2; n <= 10; ++n) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto c = to_lib(oracle::random_coeffs(n, rng));
      Statevector v = cd_amplitudes(c).vector();
      for (std::size_t k = 1; k <= n; ++k) v.apply(transform_matrices(c, k).first, k);
      const auto uv = uv_amplitudes(c).vector();
      for (std::size_t i = 0; i < uv.dimension(); ++i) {
        ASSERT_NEAR(std::abs(v[i] - uv[i]), 0.0, 1e-10) << "n=" << n;
      }
    }
  }
}

TEST(HardyState, ConditionIdentities) {
  std::mt19937_64 rng(17);
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto c = to_lib(oracle::random_coeffs(n, rng));
    const double nn = normalization(c);
    for (std::size_t k = 1; k <= n; ++k) {
      const auto m = mixed_amplitudes(c, k);
      const std::size_t bit = std::size_t{1} << (n - k);
      double p_d = 0, p_d_rest_u = 0;
      for (std::size_t i = 0; i < m.vector().dimension(); ++i) {
        if (!(i & bit)) continue;
        p_d += m.probability(i);
        if ((i | bit) == m.vector().dimension() - 1) p_d_rest_u += m.probability(i);
      }
      EXPECT_NEAR(p_d, nn * nn * std::norm(c.b(k)) * c.a_omega_sq(), 1e-12);
      EXPECT_NEAR(p_d_rest_u / p_d, 1.0, 1e-12);
    }
  }
}

TEST(HardyState, NonzeroNonlocalOutcomeCount) {
  std::mt19937_64 rng(8);
  for (std::size_t n = 2; n <= 10; ++n) {
    const auto d = cd_amplitudes(to_lib(oracle::random_coeffs(n, rng)));
    std::size_t count = 0;
    for (std::size_t i = 0; i < d.vector().dimension(); ++i) {
      if (__builtin_popcountll(i) >= 2 && d.probability(i) > 0) ++count;
    }
    EXPECT_EQ(count, (std::size_t{1} << n) - n - 1);
  }
}
