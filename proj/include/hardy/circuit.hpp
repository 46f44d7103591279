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
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hardy/linalg.hpp"

namespace hardy::circuit {

using linalg::SiteSet;

// A = sin(theta / 2), so theta = 2 asin(A). Requires A in (0, 1).
double theta_of_A(double a);

struct RyGate {
  double theta = 0.0;
  std::size_t site = 0;
};

struct McxGate {
  SiteSet controls;
  std::size_t target = 0;
};

using Gate = std::variant<RyGate, McxGate>;

struct Postselect {
  std::size_t site = 0;
  int required_bit = 0;
};

// Three protocol circuits:
//   kPrepare: RY(theta_k) on each data site, MCX(data -> ancilla), keep ancilla = 0.
//   kMixed:   kPrepare followed by RY(-theta_k) on one site k.
//   kFullCD:  kPrepare followed by RY(-theta_k) on every data site.
struct Mode {
  enum class Kind { kPrepare, kMixed, kFullCD };
  Kind kind = Kind::kPrepare;
  std::size_t site = 0;

  static Mode prepare() { return {Kind::kPrepare, 0}; }
  static Mode mixed(std::size_t k) { return {Kind::kMixed, k}; }
  static Mode full_cd() { return {Kind::kFullCD, 0}; }

  friend bool operator==(const Mode&, const Mode&) = default;
};

// Data sites are 1..n; the ancilla, when present, is site n + 1.
struct CircuitSpec {
  std::size_t num_data_sites = 0;
  bool has_ancilla = false;
  std::vector<Gate> gates;
  std::optional<Postselect> postselect;

  std::size_t num_sites() const { return num_data_sites + (has_ancilla ? 1 : 0); }
  // Throws std::invalid_argument if any gate or the post-selection rule is malformed.
  void validate() const;
};

CircuitSpec build_circuit(std::size_t n, const std::vector<double>& thetas, Mode mode);

// Outcome distribution over the data sites. Index convention follows
// linalg::Statevector (site 1 is the leftmost character of the bitstring).
struct Histogram {
  std::size_t n = 0;
  std::vector<double> probabilities;      // exact mode: filled; sampled: empirical frequencies
  std::vector<std::uint64_t> counts;      // sampled mode only
  double postselect_success = 1.0;
  std::optional<std::uint64_t> shots;     // sampled mode only
  std::optional<std::uint64_t> seed;      // sampled mode only
  std::optional<std::uint64_t> stream;    // sampled mode only

  bool is_sampled() const { return shots.has_value(); }
  std::string bitstring(std::size_t index) const { return linalg::format_bitstring(index, n); }
  double probability(const std::string& bits) const;
  // Sum over outcomes with at least two 1s (the d_k d_l ... outcomes in FULL_CD).
  double nonlocal_sum() const;
};

// Raw statevector after all gates, before any post-selection.
linalg::Statevector simulate(const CircuitSpec& circuit);

// Post-selected, renormalized statevector over the data sites (the ancilla
// is projected onto the required bit and dropped). Throws PostselectionError
// if the kept branch has weight below 1e-12.
linalg::Statevector postselected_state(const CircuitSpec& circuit);

// Exact post-selected distribution. Throws PostselectionError if the kept
// branch has weight below 1e-12.
Histogram run_exact(const CircuitSpec& circuit);

// Multinomial draw of `shots` outcomes from an exact histogram. The stream
// index separates independent executions sharing one seed.
Histogram sample_shots(const Histogram& exact, std::uint64_t shots, std::uint64_t seed,
                       std::uint64_t stream = 0);

// Shot-level post-selection: draws `shots` raw outcomes over data + ancilla
// and discards the ones failing the post-selection rule. `counts` then sums
// to the number of kept shots and postselect_success is kept / shots.
Histogram sample_with_discard(const CircuitSpec& circuit, std::uint64_t shots,
                              std::uint64_t seed, std::uint64_t stream = 0);

// Counter-based generator: output i is a SplitMix64 finalization of
// (seed, stream, i), so any (seed, stream) pair is an independent,
// reproducible stream. Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();
  // Uniform double in [0, 1) with 53 random bits.
  double uniform();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace hardy::circuit
