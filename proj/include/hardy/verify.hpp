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
#include <string>
#include <vector>

#include "hardy/hardy_state.hpp"

namespace hardy::verify {

using state::HardyState;
using state::TransformCoefficients;

inline constexpr double kAnalyticTol = 1e-10;
inline constexpr double kCircuitTol = 1e-9;

// P(U_1 ... U_n) = 0.
struct Condition1Record {
  double p_all_u = 0.0;
  bool pass = false;
};

// P(U_rest | D_k) = 1.
struct Condition2Record {
  std::size_t site = 0;
  double p_d = 0.0;           // P(D_k)
  double p_d_expected = 0.0;  // N^2 |B_k|^2 |A_Omega|^2
  double conditional = 0.0;   // P(all u elsewhere | D_k)
  bool p_d_consistent = false;
  bool pass = false;
};

// P(D_beta) > 0 for one subset beta with |beta| >= 2.
struct Condition3Record {
  linalg::SiteSet beta;
  std::string bitstring;  // d = 1, c = 0, site 1 leftmost
  double probability = 0.0;
  bool positive = false;
};

// P(D_k D_l) - P(U_Omega): positive means the local-hidden-variable chain
// D_k D_l = 1 => U_Omega = 1 is violated.
struct LhvMargin {
  std::size_t k = 0;
  std::size_t l = 0;
  double p_dd = 0.0;
  double p_all_u = 0.0;
  double margin = 0.0;
};

struct Condition3Summary {
  std::vector<Condition3Record> records;
  double total = 0.0;
  double closed_form = 0.0;
  std::size_t expected_count = 0;  // 2^n - n - 1
  std::size_t positive_count = 0;
  bool count_ok = false;
  bool matches_closed_form = false;
  std::vector<LhvMargin> lhv;
  bool pass = false;
};

struct ParadoxReport {
  std::size_t n = 0;
  std::vector<double> abs_a;
  std::vector<double> abs_b;
  double normalization = 0.0;
  double tolerance = 0.0;
  Condition1Record condition1;
  std::vector<Condition2Record> condition2;
  Condition3Summary condition3;

  // condition 1, every condition 2 and condition 3 (all positive, count,
  // closed form, every LHV margin > 0) hold.
  bool certified() const;
};

// Throws std::invalid_argument unless `uv` is in the UV frame.
Condition1Record check_condition1(const HardyState& uv, double tol = kAnalyticTol);

Condition2Record check_condition2(const TransformCoefficients& coeffs, std::size_t k,
                                  double tol = kAnalyticTol);
// Same check on a prepared MIXED(k) state (e.g. a perturbed one).
Condition2Record check_condition2(const HardyState& mixed, double tol = kAnalyticTol);

// Enumerates every beta with |beta| >= 2 in the c/d frame. P(U_Omega) for the
// LHV margins is taken from the UV frame of the same coefficients.
Condition3Summary check_condition3(const TransformCoefficients& coeffs,
                                   double closed_form_tol = 1e-12);

ParadoxReport certify(const TransformCoefficients& coeffs, double tol = kAnalyticTol);

struct CrossValidation {
  bool passed = false;
  double max_deviation = 0.0;
  std::string worst_mode;
};

// Runs the PREPARE, every MIXED(k) and the FULL_CD circuits with
// theta_k = 2 asin|A_k| and compares each exact distribution with the
// analytic frame. Passes iff the largest per-outcome deviation is < tol.
CrossValidation cross_validate(const TransformCoefficients& coeffs, double tol = kCircuitTol);

// JSON object for one report (schema shared with the CLI output files).
std::string to_json(const ParadoxReport& report);

}  // namespace hardy::verify
