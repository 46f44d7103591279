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
#include <span>
#include <utility>
#include <vector>

#include "hardy/linalg.hpp"

namespace hardy::state {

using linalg::Complex;
using linalg::SingleQubitGate;
using linalg::SiteSet;
using linalg::Statevector;

// Per-site coefficients (A_k, B_k) of the basis change
//   |c_k> = A_k |u_k> + B_k |v_k>,   |d_k> = -B_k* |u_k> + A_k* |v_k>.
// Sites are 1-based.
class TransformCoefficients {
 public:
  // Requires n >= 2 and |A_k|^2 + |B_k|^2 = 1 within 1e-12.
  TransformCoefficients(std::vector<Complex> a, std::vector<Complex> b);

  // A_k = a for every site, B_k = sqrt(1 - a^2).
  static TransformCoefficients equal_real(std::size_t n, double a);
  // Real A_k, B_k = sqrt(1 - A_k^2).
  static TransformCoefficients from_real(std::span<const double> a);

  std::size_t size() const { return a_.size(); }
  Complex a(std::size_t site) const { return a_.at(site - 1); }
  Complex b(std::size_t site) const { return b_.at(site - 1); }

  // Products over a site subset; the empty product is 1.
  Complex a_product(const SiteSet& sites) const;
  Complex b_product(const SiteSet& sites) const;
  Complex a_omega() const { return a_product(SiteSet::all(size())); }
  double a_omega_sq() const { return std::norm(a_omega()); }

  // Every |A_k| strictly inside (0, 1).
  bool is_nondegenerate() const;
  // Throws DegenerateTransformError unless is_nondegenerate().
  void require_nondegenerate() const;

 private:
  std::vector<Complex> a_;
  std::vector<Complex> b_;
};

// Which measurement basis the amplitude table is expressed in.
//   UV:       bit 1 = u_k, bit 0 = v_k on every site.
//   MIXED(k): site k uses bit 0 = c_k, bit 1 = d_k; others as UV.
//   CD:       bit 0 = c_k, bit 1 = d_k on every site.
struct Frame {
  enum class Kind { kUV, kMixed, kCD };
  Kind kind = Kind::kUV;
  std::size_t site = 0;  // only meaningful for kMixed

  static Frame uv() { return {Kind::kUV, 0}; }
  static Frame mixed(std::size_t k) { return {Kind::kMixed, k}; }
  static Frame cd() { return {Kind::kCD, 0}; }

  friend bool operator==(const Frame&, const Frame&) = default;
};

// |Psi_n> = N [ |c_1 ... c_n> - A_Omega |u_1 ... u_n> ] in a given frame.
class HardyState {
 public:
  HardyState(TransformCoefficients coeffs, double normalization, Frame frame,
             Statevector vector);

  const TransformCoefficients& coeffs() const { return coeffs_; }
  double normalization() const { return normalization_; }
  Frame frame() const { return frame_; }
  const Statevector& vector() const { return vector_; }
  std::size_t n() const { return coeffs_.size(); }

  double probability(std::size_t index) const { return std::norm(vector_[index]); }
  std::vector<double> probabilities() const { return vector_.probabilities(); }

 private:
  TransformCoefficients coeffs_;
  double normalization_;
  Frame frame_;
  Statevector vector_;
};

// N = (1 - |A_Omega|^2)^(-1/2). Throws DegenerateTransformError if degenerate.
double normalization(const TransformCoefficients& coeffs);

// (cd -> uv, uv -> cd) for site k, in the frame bit conventions above:
// cd_to_uv = [[B, A*], [A, -B*]] (rows v,u; columns c,d).
std::pair<SingleQubitGate, SingleQubitGate> transform_matrices(
    const TransformCoefficients& coeffs, std::size_t k);

HardyState uv_amplitudes(const TransformCoefficients& coeffs);
HardyState mixed_amplitudes(const TransformCoefficients& coeffs, std::size_t k);
HardyState cd_amplitudes(const TransformCoefficients& coeffs);

// |c_1 ... c_n> in the UV frame. Accepts degenerate coefficients; it is what
// |Psi_n> reduces to when some A_k = 0.
Statevector product_state(const TransformCoefficients& coeffs);

}  // namespace hardy::state
