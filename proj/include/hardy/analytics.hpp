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

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hardy/hardy_state.hpp"

namespace hardy::analytics {

using state::TransformCoefficients;

// Combined probability of every c/d outcome with two or more d results:
//   |A_Omega|^2 - |A_Omega|^4 / (1 - |A_Omega|^2) * sum_k |B_k|^2 / |A_k|^2.
double p_nonlocal_general(const TransformCoefficients& coeffs);

// Equal real coefficients A_k = a:
//   a^(2n) - n a^(4n-2) (1 - a^2) / (1 - a^(2n)).
// Requires n >= 2 and a in (0, 1).
double p_nonlocal_equal(std::size_t n, double a);

// p_nonlocal_equal extended by its limits (0) to a in [0, 1].
double p_nonlocal_equal_closed(std::size_t n, double a);

struct Optimum {
  double a_star = 0.0;
  double p_star = 0.0;
};

// Maximizer of p_nonlocal_equal(n, .) over (0, 1): 10^4-point scan, then
// golden-section refinement on the bracket around the best grid point.
Optimum optimize_A(std::size_t n);

// Large-n limit of the equal-coefficient curve as a function of
// x = a^(2n): f(x) = x + x^2 ln(x) / (1 - x).
double asymptote_functional(double x);

struct Asymptote {
  double x_star = 0.0;
  double p_inf = 0.0;
};
Asymptote asymptote();

// Integral of p_nonlocal_equal(n, a) over a in [0, 1] by adaptive Simpson.
double integrate_P(std::size_t n, double abs_tol = 1e-9);

struct Bipartition {
  enum class Kind { kHalfChain, kOneVsRest };
  Kind kind = Kind::kHalfChain;
  std::size_t site = 0;

  static Bipartition half_chain() { return {Kind::kHalfChain, 0}; }
  static Bipartition one_vs_rest(std::size_t k) { return {Kind::kOneVsRest, k}; }

  // {1..floor(n/2)} or {k}.
  linalg::SiteSet left_sites(std::size_t n) const;
  std::string label() const;
};

// Von Neumann entropy (log2) of the reduced state of |Psi_n> on the left
// part of the bipartition.
double entropy(const TransformCoefficients& coeffs, Bipartition bipartition);

// Negativity of |Psi_n> across the bipartition.
double negativity(const TransformCoefficients& coeffs, Bipartition bipartition);

struct AnalyticsResult {
  enum class Kind { kPNonlocal, kOptimum, kIntegral, kEntropy, kNegativity, kAsymptote };
  Kind kind = Kind::kPNonlocal;
  std::size_t n = 0;
  std::vector<double> a_values;
  std::optional<Bipartition> bipartition;
  double value = 0.0;
  std::optional<double> secondary_value;
  double tolerance = 0.0;
};

std::string kind_name(AnalyticsResult::Kind kind);

namespace numerics {

struct Extremum {
  double x = 0.0;
  double fx = 0.0;
};

// Golden-section search for the maximum of a unimodal f on [lo, hi]; stops
// when the bracket is narrower than x_tol.
Extremum golden_section_maximize(const std::function<double(double)>& f, double lo,
                                 double hi, double x_tol);

// Adaptive Simpson on [a, b]. Each panel is bisected until its Richardson
// error estimate is below abs_tol times the panel's share of [a, b].
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth = 50);

}  // namespace numerics

}  // namespace hardy::analytics
