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

#include "hardy/circuit.hpp"

#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "hardy/errors.hpp"
#include "hardy/hardy_state.hpp"
#include "oracles.hpp"

using namespace hardy::circuit;
namespace st = hardy::state;

namespace {

std::vector<double> thetas_for(const oracle::Coeffs& c) {
  std::vector<double> t;
  for (auto a : c.a) t.push_back(2 * std::asin(std::abs(a)));
  return t;
}

std::size_t count_ry(const CircuitSpec& spec) {
  std::size_t n = 0;
  for (const auto& g : spec.gates) n += std::holds_alternative<RyGate>(g) ? 1 : 0;
  return n;
}

}  // namespace

TEST(Circuit, ThetaOfA) {
  EXPECT_NEAR(theta_of_A(0.9) / M_PI, 0.713, 1e-3);
  EXPECT_NEAR(theta_of_A(0.9), 2.2395, 1e-4);
  EXPECT_NEAR(theta_of_A(M_SQRT1_2), M_PI / 2, 1e-15);
  EXPECT_NEAR(theta_of_A(1 - 1e-12), M_PI, 1e-5);
  EXPECT_THROW(theta_of_A(0.0), std::invalid_argument);
  EXPECT_THROW(theta_of_A(1.0), std::invalid_argument);
}

TEST(Circuit, RyOnZeroGivesBA) {
  hardy::linalg::Statevector s(1);
  s.apply(hardy::linalg::SingleQubitGate::ry(0.713 * M_PI), 1);
  EXPECT_NEAR(s[0].real(), 0.4357, 1e-3);
  EXPECT_NEAR(s[1].real(), 0.9001, 1e-3);
}

TEST(Circuit, Structure) {
  const std::vector<double> t(3, theta_of_A(0.9));
  const auto prep = build_circuit(3, t, Mode::prepare());
  EXPECT_EQ(prep.gates.size(), 4u);
  EXPECT_EQ(count_ry(prep), 3u);
  ASSERT_TRUE(std::holds_alternative<McxGate>(prep.gates[3]));
  EXPECT_EQ(std::get<McxGate>(prep.gates[3]).controls, (hardy::linalg::SiteSet{1, 2, 3}));
  EXPECT_EQ(std::get<McxGate>(prep.gates[3]).target, 4u);
  ASSERT_TRUE(prep.postselect.has_value());
  EXPECT_EQ(prep.postselect->site, 4u);
  EXPECT_EQ(prep.postselect->required_bit, 0);

  const auto mixed = build_circuit(3, t, Mode::mixed(2));
  ASSERT_EQ(mixed.gates.size(), 5u);
  const auto& back = std::get<RyGate>(mixed.gates[4]);
  EXPECT_EQ(back.site, 2u);
  EXPECT_DOUBLE_EQ(back.theta, -t[1]);

  const auto full = build_circuit(2, {1.0, 2.0}, Mode::full_cd());
  EXPECT_EQ(full.gates.size(), 5u);
  EXPECT_EQ(count_ry(full), 4u);
}

TEST(Circuit, BuildRejectsBadInput) {
  EXPECT_THROW(build_circuit(1, {1.0}, Mode::prepare()), std::invalid_argument);
  EXPECT_THROW(build_circuit(2, {1.0}, Mode::prepare()), std::invalid_argument);
  EXPECT_THROW(build_circuit(2, {1.0, 0.0}, Mode::prepare()), std::invalid_argument);
  EXPECT_THROW(build_circuit(2, {1.0, M_PI}, Mode::prepare()), std::invalid_argument);
  EXPECT_THROW(build_circuit(2, {1.0, 1.0}, Mode::mixed(3)), std::invalid_argument);
  CircuitSpec bad;
  bad.num_data_sites = 2;
  bad.has_ancilla = true;
  bad.gates.push_back(RyGate{1.0, 5});
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Circuit, KnownHistograms) {
  const std::vector<double> t(3, theta_of_A(0.9));
  const auto prep = run_exact(build_circuit(3, t, Mode::prepare()));
  EXPECT_LE(prep.probability("111"), 1e-12);
  EXPECT_NEAR(prep.postselect_success, 1 - std::pow(0.9, 6), 1e-12);

  const auto mixed = run_exact(build_circuit(3, t, Mode::mixed(2)));
  EXPECT_NEAR(mixed.probability("111"), 0.2155, 5e-4);
  for (const char* bits : {"011", "110", "010"}) EXPECT_LE(mixed.probability(bits), 1e-12);

  const auto full = run_exact(build_circuit(3, t, Mode::full_cd()));
  EXPECT_NEAR(full.nonlocal_sum(), 0.1073, 5e-4);
}

TEST(Circuit, PostselectionFloor) {
  CircuitSpec spec = build_circuit(2, {1.0, 1.0}, Mode::prepare());
  spec.postselect->required_bit = 1;
  // Keeping the ancilla = 1 branch leaves only |u u>, so this still runs.
  const auto h = run_exact(spec);
  EXPECT_NEAR(h.probability("11"), 1.0, 1e-12);
  // Requiring 1 when the MCX is removed annihilates the state.
  spec.gates.pop_back();
  EXPECT_THROW(run_exact(spec), hardy::PostselectionError);
}

// The post-selected circuit distributions equal the analytic frames.
TEST(Circuit, MatchesAnalyticFrames) {
  std::mt19937_64 rng(2024);
  for (std::size_t n = 2; n <= 12; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto oc = oracle::random_coeffs(n, rng);
      const st::TransformCoefficients c(oc.a, oc.b);
      const auto t = thetas_for(oc);
      const auto check = [&](Mode mode, const st::HardyState& s) {
        const auto h = run_exact(build_circuit(n, t, mode));
        for (std::size_t i = 0; i < h.probabilities.size(); ++i) {
          ASSERT_NEAR(h.probabilities[i], s.probability(i), 1e-10) << "n=" << n;
        }
        EXPECT_NEAR(h.postselect_success, 1 - c.a_omega_sq(), 1e-12);
      };
      check(Mode::prepare(), st::uv_amplitudes(c));
      check(Mode::full_cd(), st::cd_amplitudes(c));
      if (n <= 6) {
        for (std::size_t k = 1; k <= n; ++k) check(Mode::mixed(k), st::mixed_amplitudes(c, k));
      }
    }
  }
}

TEST(Circuit, DiscardedBranchWeight) {
  std::mt19937_64 rng(4);
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto oc = oracle::random_coeffs(n, rng);
    const auto raw = simulate(build_circuit(n, thetas_for(oc), Mode::prepare()));
    double discarded = 0, a_omega = 1;
    for (std::size_t i = 0; i < raw.dimension(); ++i) {
      if (i & 1U) discarded += std::norm(raw[i]);
    }
    for (auto a : oc.a) a_omega *= std::norm(a);
    EXPECT_NEAR(discarded, a_omega, 1e-12);
    EXPECT_NEAR(postselected_state(build_circuit(n, thetas_for(oc), Mode::prepare()))
                    .squared_norm(),
                1.0, 1e-12);
  }
}

TEST(Sampling, DeterministicAndCountsSum) {
  const std::vector<double> t(3, theta_of_A(0.9));
  const auto exact = run_exact(build_circuit(3, t, Mode::full_cd()));
  const auto a = sample_shots(exact, 20000, 42);
  const auto b = sample_shots(exact, 20000, 42);
  EXPECT_EQ(a.counts, b.counts);
  std::uint64_t total = 0;
  for (auto c : a.counts) total += c;
  EXPECT_EQ(total, 20000u);
  EXPECT_NE(sample_shots(exact, 20000, 42, 1).counts, a.counts);
  EXPECT_NE(sample_shots(exact, 20000, 43).counts, a.counts);
  EXPECT_TRUE(a.is_sampled());
  EXPECT_EQ(*a.seed, 42u);
}

TEST(Sampling, PointMass) {
  Histogram h;
  h.n = 2;
  h.probabilities = {0.0, 0.0, 1.0, 0.0};
  const auto s = sample_shots(h, 100, 1);
  EXPECT_EQ(s.counts[2], 100u);
}

TEST(Sampling, NonlocalSumWithinBinomialError) {
  const std::vector<double> t(3, theta_of_A(0.9));
  const auto exact = run_exact(build_circuit(3, t, Mode::full_cd()));
  const std::uint64_t shots = 2'000'000;
  const auto s = sample_shots(exact, shots, 7);
  const double p = exact.nonlocal_sum();
  const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(shots));
  EXPECT_LE(std::abs(s.nonlocal_sum() - 0.1073), 3 * sigma + std::abs(p - 0.1073));
  EXPECT_LE(std::abs(s.nonlocal_sum() - p), 3 * sigma);
}

TEST(Sampling, FrequenciesConverge) {
  const std::vector<double> t(3, theta_of_A(0.9));
  const auto exact = run_exact(build_circuit(3, t, Mode::full_cd()));
  const std::uint64_t shots = 1'000'000;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto s = sample_shots(exact, shots, seed);
    for (std::size_t i = 0; i < 8; ++i) {
      const double p = exact.probabilities[i];
      const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(shots));
      ASSERT_LE(std::abs(s.probabilities[i] - p), 5 * sigma + 1e-15) << seed;
    }
  }
}

TEST(Sampling, DiscardKeepsOnlyPostselected) {
  const std::vector<double> t(3, theta_of_A(0.9));
  const auto spec = build_circuit(3, t, Mode::full_cd());
  const auto s = sample_with_discard(spec, 200000, 42);
  std::uint64_t kept = 0;
  for (auto c : s.counts) kept += c;
  EXPECT_LT(kept, 200000u);
  EXPECT_NEAR(s.postselect_success, static_cast<double>(kept) / 200000.0, 1e-15);
  const double p = 1 - std::pow(0.9, 6);
  EXPECT_NEAR(s.postselect_success, p, 5 * std::sqrt(p * (1 - p) / 200000.0));
  EXPECT_NEAR(s.nonlocal_sum(), 0.1073, 5 * std::sqrt(0.1073 * 0.8927 / kept));
}

TEST(Sampling, CounterRngUniform) {
  CounterRng rng(1, 2);
  double sum = 0;
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 10000, 0.5, 0.02);
  CounterRng a(5, 0), b(5, 0), c(5, 1);
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    seen.insert(x);
    seen.insert(c());
  }
  EXPECT_EQ(seen.size(), 200u);
}
